fn main() {
    std::process::exit(convbody_lab::cli::run(std::env::args_os()));
}
