//! Exact convex-polygon geometry: clipping-based covariograms, Minkowski
//! difference bodies, brightness, and the polar projection body volume.

use crate::error::{Error, Result};
use crate::radial::RadialFunction;

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn unit(theta: f64) -> Self {
        Self {
            x: theta.cos(),
            y: theta.sin(),
        }
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Self) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

/// Convex polygon as a CCW vertex list.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Vec2>,
    scale: f64,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon(format!(
                "need at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let scale = vertices
            .iter()
            .map(|v| v.x.abs().max(v.y.abs()))
            .fold(0.0f64, f64::max);
        let eps = 1e-12 * scale * scale;
        let n = vertices.len();
        for i in 0..n {
            let d = vertices[(i + 1) % n] - vertices[i];
            if d.norm() * scale <= eps {
                return Err(Error::InvalidPolygon(format!(
                    "duplicate consecutive vertices at index {i}"
                )));
            }
        }
        if shoelace(&vertices) <= 0.0 {
            return Err(Error::InvalidPolygon(
                "vertices must be in counterclockwise order".into(),
            ));
        }
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            if (b - a).cross(c - b) < -eps {
                return Err(Error::NonConvex {
                    vertex: (i + 1) % n,
                });
            }
        }
        Ok(Self { vertices, scale })
    }

    /// Axis-aligned rectangle with one corner at the origin.
    pub fn rectangle(w: f64, h: f64) -> Result<Self> {
        Self::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(w, 0.0),
            Vec2::new(w, h),
            Vec2::new(0.0, h),
        ])
    }

    /// Regular n-gon of circumradius r centered at the origin.
    pub fn regular(n: usize, r: f64) -> Result<Self> {
        Self::new(
            (0..n)
                .map(|i| Vec2::unit(TAU * i as f64 / n as f64) * r)
                .collect(),
        )
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    pub fn translate(&self, d: Vec2) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&v| v + d).collect(),
            scale: self.scale + d.norm(),
        }
    }

    pub fn rotate(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            vertices: self
                .vertices
                .iter()
                .map(|v| Vec2::new(c * v.x - s * v.y, s * v.x + c * v.y))
                .collect(),
            scale: self.scale,
        }
    }

    /// Support value max ⟨p, dir⟩ over the polygon.
    pub fn support(&self, dir: Vec2) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(dir))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Width in direction u (length of the projection onto the line ℝu).
    pub fn width(&self, u: Vec2) -> f64 {
        self.support(u) + self.support(-u)
    }
}

fn shoelace(vertices: &[Vec2]) -> f64 {
    let n = vertices.len();
    0.5 * (0..n)
        .map(|i| vertices[i].cross(vertices[(i + 1) % n]))
        .sum::<f64>()
}

/// Inscribed polygon with vertices ρ(θ_i)·v_{θ_i} at n equispaced angles.
pub fn polygon_from_radial(f: &RadialFunction, n: usize) -> Result<ConvexPolygon> {
    if let Some((index, &value)) = f.samples().iter().enumerate().find(|(_, &v)| v <= 0.0) {
        return Err(Error::NotRadialBody { index, value });
    }
    ConvexPolygon::new(
        (0..n)
            .map(|i| {
                let t = TAU * i as f64 / n as f64;
                Vec2::unit(t) * f.eval(t)
            })
            .collect(),
    )
}

/// Area of P ∩ Q by Sutherland–Hodgman clipping of P against Q's edges.
pub fn intersection_area(p: &ConvexPolygon, q: &ConvexPolygon) -> f64 {
    let eps = 1e-12 * p.scale.max(q.scale).powi(2);
    let mut subject: Vec<Vec2> = p.vertices.clone();
    let mut next: Vec<Vec2> = Vec::with_capacity(subject.len() + 4);
    let qv = &q.vertices;
    let m = qv.len();
    for i in 0..m {
        if subject.len() < 3 {
            return 0.0;
        }
        let a = qv[i];
        let e = qv[(i + 1) % m] - a;
        next.clear();
        let mut prev = *subject.last().unwrap();
        let mut prev_side = e.cross(prev - a);
        for &cur in &subject {
            let cur_side = e.cross(cur - a);
            if prev_side >= -eps {
                next.push(prev);
            }
            if (prev_side < -eps) != (cur_side < -eps) {
                // Edge crosses the clip line; intersect.
                let t = prev_side / (prev_side - cur_side);
                next.push(prev + (cur - prev) * t);
            }
            prev = cur;
            prev_side = cur_side;
        }
        std::mem::swap(&mut subject, &mut next);
    }
    if subject.len() < 3 {
        return 0.0;
    }
    shoelace(&subject).max(0.0)
}

/// Covariogram g_P(x) = vol(P ∩ (P + x)).
pub fn covariogram(p: &ConvexPolygon, x: Vec2) -> f64 {
    intersection_area(p, &p.translate(x))
}

/// Difference body DP = P ⊕ (−P) by the sorted edge-vector merge.
pub fn difference_body(p: &ConvexPolygon) -> Result<ConvexPolygon> {
    let neg: Vec<Vec2> = p.vertices.iter().map(|&v| -v).collect();
    minkowski_sum(&p.vertices, &neg)
}

/// Minkowski sum of two CCW convex vertex lists.
fn minkowski_sum(a: &[Vec2], b: &[Vec2]) -> Result<ConvexPolygon> {
    let ra = reorder_from_bottom(a);
    let rb = reorder_from_bottom(b);
    let edges =
        |v: &[Vec2]| -> Vec<Vec2> { (0..v.len()).map(|i| v[(i + 1) % v.len()] - v[i]).collect() };
    let ea = edges(&ra);
    let eb = edges(&rb);
    // Starting at the bottom-most vertex, CCW edge angles are increasing in
    // [0, 2π); merge the two sorted runs.
    let ang = |e: &Vec2| -> f64 { e.angle().rem_euclid(TAU) };
    let mut out = Vec::with_capacity(ea.len() + eb.len() + 1);
    let mut cur = ra[0] + rb[0];
    out.push(cur);
    let (mut i, mut j) = (0, 0);
    while i < ea.len() || j < eb.len() {
        let step = if i == ea.len() {
            let e = eb[j];
            j += 1;
            e
        } else if j == eb.len() || ang(&ea[i]) <= ang(&eb[j]) {
            let e = ea[i];
            i += 1;
            e
        } else {
            let e = eb[j];
            j += 1;
            e
        };
        cur = cur + step;
        out.push(cur);
    }
    out.pop(); // closing vertex repeats the start
               // Collinear consecutive edges leave redundant vertices; drop them so the
               // constructor's duplicate check cannot trip on tiny edges.
    let cleaned = drop_collinear(&out);
    ConvexPolygon::new(cleaned)
}

fn reorder_from_bottom(v: &[Vec2]) -> Vec<Vec2> {
    let start = v
        .iter()
        .enumerate()
        .min_by(|(_, p), (_, q)| (p.y, p.x).partial_cmp(&(q.y, q.x)).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    (0..v.len()).map(|k| v[(start + k) % v.len()]).collect()
}

fn drop_collinear(v: &[Vec2]) -> Vec<Vec2> {
    let scale = v
        .iter()
        .map(|p| p.x.abs().max(p.y.abs()))
        .fold(0.0f64, f64::max);
    let eps = 1e-12 * scale * scale;
    let n = v.len();
    (0..n)
        .filter(|&i| {
            let a = v[(i + n - 1) % n];
            let b = v[i];
            let c = v[(i + 1) % n];
            (b - a).cross(c - b).abs() > eps || (b - a).norm() < 1e-15
        })
        .map(|i| v[i])
        .collect()
}

/// Brightness: length of the projection of P onto the line orthogonal to v.
pub fn brightness(p: &ConvexPolygon, v: Vec2) -> f64 {
    p.width(Vec2::new(-v.y, v.x))
}

/// Volume of the polar projection body Π*P = ½ ∫ brightness(v_θ)^{−2} dθ.
///
/// The brightness in direction θ is the support function of DP at v_θ + π/2,
/// which on the angular arc where one vertex d of DP is the maximizer equals
/// |d|·cos(ψ − arg d); each arc integrates in closed form to tan/|d|², so the
/// result is exact (and rotation-invariant) up to rounding.
pub fn polar_projection_volume(p: &ConvexPolygon) -> Result<f64> {
    let dp = difference_body(p)?;
    let v = dp.vertices();
    let n = v.len();
    let mut total = 0.0;
    for i in 0..n {
        let d = v[i];
        // Vertex d supports directions between the outward normals of its
        // two incident edges.
        let e_prev = v[i] - v[(i + n - 1) % n];
        let e_next = v[(i + 1) % n] - v[i];
        let n_prev = Vec2::new(e_prev.y, -e_prev.x).angle();
        let n_next = Vec2::new(e_next.y, -e_next.x).angle();
        let phi = d.angle();
        // Angles relative to the vertex direction; support is positive on
        // the arc, so both offsets stay inside (−π/2, π/2).
        let lo = wrap_to_pi(n_prev - phi);
        let hi = wrap_to_pi(n_next - phi);
        total += (hi.tan() - lo.tan()) / d.dot(d);
    }
    Ok(0.5 * total)
}

fn wrap_to_pi(a: f64) -> f64 {
    let mut a = a.rem_euclid(TAU);
    if a > std::f64::consts::PI {
        a -= TAU;
    }
    a
}
