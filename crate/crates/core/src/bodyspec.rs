//! JSON body specifications shared by the CLI and file-based workflows.

use crate::error::{Error, Result};
use crate::fourier::FourierSeries;
use crate::polygon::{polygon_from_radial, ConvexPolygon, Vec2};
use crate::radial::RadialFunction;

use num_complex::Complex64;
use serde::Deserialize;

/// Radial body spec: {"kind":"constant","c":…} | {"kind":"cos2m","m":…}
/// | {"kind":"fourier","a0":…,"an":[[re,im],…]} | {"kind":"samples","values":[…]}.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RadialSpec {
    Constant { c: f64 },
    Cos2m { m: u32 },
    Fourier { a0: f64, an: Vec<[f64; 2]> },
    Samples { values: Vec<f64> },
}

/// Polygon spec: {"vertices":[[x,y],…]}.
#[derive(Debug, Clone, Deserialize)]
pub struct PolygonSpec {
    pub vertices: Vec<[f64; 2]>,
}

/// Any body the CLI accepts.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum BodySpec {
    Polygon(PolygonSpec),
    Radial(RadialSpec),
}

impl RadialSpec {
    pub fn to_radial(&self, n: usize) -> Result<RadialFunction> {
        match self {
            RadialSpec::Constant { c } => RadialFunction::constant(*c, n),
            RadialSpec::Cos2m { m } => RadialFunction::cos2m(*m, n),
            RadialSpec::Fourier { a0, an } => RadialFunction::from_fourier(
                FourierSeries::new(
                    *a0,
                    an.iter().map(|[re, im]| Complex64::new(*re, *im)).collect(),
                ),
                n,
            ),
            RadialSpec::Samples { values } => RadialFunction::from_samples(values.clone()),
        }
    }
}

impl PolygonSpec {
    pub fn to_polygon(&self) -> Result<ConvexPolygon> {
        ConvexPolygon::new(
            self.vertices
                .iter()
                .map(|[x, y]| Vec2::new(*x, *y))
                .collect(),
        )
    }
}

impl BodySpec {
    /// Parse a spec from JSON text.
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidPolygon(format!("body spec: {e}")))
    }

    /// Polygon view: polygons directly, radial bodies inscribed at n vertices.
    pub fn to_polygon(&self, n: usize) -> Result<ConvexPolygon> {
        match self {
            BodySpec::Polygon(p) => p.to_polygon(),
            BodySpec::Radial(r) => polygon_from_radial(&r.to_radial(n.max(16))?, n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn parses_all_kinds() {
        let disk = BodySpec::parse(r#"{"kind":"constant","c":1.0}"#).unwrap();
        let p = disk.to_polygon(4096).unwrap();
        assert!((p.area() - PI).abs() < 1e-5);

        let cos = BodySpec::parse(r#"{"kind":"cos2m","m":2}"#).unwrap();
        assert!(matches!(cos, BodySpec::Radial(RadialSpec::Cos2m { m: 2 })));

        let four =
            BodySpec::parse(r#"{"kind":"fourier","a0":1.0,"an":[[0.0,0.0],[0.1,0.0]]}"#).unwrap();
        match four {
            BodySpec::Radial(r) => {
                let f = r.to_radial(64).unwrap();
                assert!((f.eval(0.0) - 1.2).abs() < 1e-13);
            }
            _ => panic!("expected radial"),
        }

        let square = BodySpec::parse(r#"{"vertices":[[0,0],[1,0],[1,1],[0,1]]}"#).unwrap();
        assert!((square.to_polygon(0).unwrap().area() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn malformed_spec_is_an_error() {
        assert!(BodySpec::parse("{").is_err());
        assert!(BodySpec::parse(r#"{"kind":"nope"}"#).is_err());
    }
}
