use std::fmt::Write;

use super::cloud::PointCloud;
use crate::complex::SimplicialComplex;
use crate::error::{NerveError, Result};

/// Drawing options for planar figures.
#[derive(Clone, Debug)]
pub struct SvgOptions {
    /// Radius of the balls drawn around each point, if any.
    pub radius: Option<f64>,
    /// Output width in pixels; the height follows the aspect ratio.
    pub width: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { radius: None, width: 480.0 }
    }
}

/// A planar cloud with optional balls and a complex drawn on top of it.
pub fn cloud_svg(cloud: &PointCloud, complex: Option<&SimplicialComplex>, opts: &SvgOptions) -> Result<String> {
    if cloud.dim() != 2 {
        return Err(NerveError::Unsupported(format!("drawing in dimension {}", cloud.dim())));
    }
    let pad = opts.radius.unwrap_or(0.0) + 0.05;
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in cloud.points() {
        x0 = x0.min(p[0] - pad);
        y0 = y0.min(p[1] - pad);
        x1 = x1.max(p[0] + pad);
        y1 = y1.max(p[1] + pad);
    }
    if cloud.is_empty() {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    let s = opts.width / (x1 - x0).max(1e-12);
    let height = (y1 - y0) * s;
    let tx = |p: &[f64]| ((p[0] - x0) * s, (y1 - p[1]) * s);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.1}" height="{:.1}" viewBox="0 0 {:.1} {:.1}">"#,
        opts.width, height, opts.width, height
    );
    if let Some(r) = opts.radius {
        for p in cloud.points() {
            let (x, y) = tx(p);
            let _ = writeln!(
                out,
                r##"<circle cx="{x:.2}" cy="{y:.2}" r="{:.2}" fill="#4a90d9" fill-opacity="0.15" stroke="#4a90d9"/>"##,
                r * s
            );
        }
    }
    if let Some(k) = complex {
        for t in k.simplices_of_dim(2) {
            let pts: Vec<String> = t
                .vertices()
                .iter()
                .map(|&v| {
                    let (x, y) = tx(cloud.point(v));
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            let _ = writeln!(out, r##"<polygon points="{}" fill="#e8a33d" fill-opacity="0.4"/>"##, pts.join(" "));
        }
        for e in k.simplices_of_dim(1) {
            let (a, b) = (tx(cloud.point(e.vertices()[0])), tx(cloud.point(e.vertices()[1])));
            let _ = writeln!(
                out,
                r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#333" stroke-width="1.5"/>"##,
                a.0, a.1, b.0, b.1
            );
        }
    }
    for (i, p) in cloud.points().iter().enumerate() {
        let (x, y) = tx(p);
        let _ = writeln!(out, r##"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="#111"><title>{i}</title></circle>"##);
    }
    out.push_str("</svg>\n");
    Ok(out)
}
