//! Cross-section plot: the vertical plane through the OZ axis and the
//! sphere center, where the pair reduces to a hyperbola and a circle.
//!
//! Geometry is written in plane coordinates `(rho, -z)` directly into the
//! viewBox (the sign flip puts +z up), with fixed 4-decimal formatting so
//! the byte output is deterministic for fixed inputs.

use relpos_core::geom::{Sphere, StdHyperboloid};
use std::fmt::Write as _;

const CURVE_SAMPLES: usize = 256;

fn f(x: f64) -> String {
    format!("{x:.4}")
}

/// Renders the cross-section as an SVG document.
///
/// The view bounds always contain the throat circle and the whole sphere,
/// with a 12% margin.
pub fn cross_section(h: &StdHyperboloid, s: &Sphere, label: &str) -> String {
    let rho_c = s.rho_c();
    let z_c = s.z_c();
    let r = s.r();

    let z_extent = (z_c.abs() + r).max(h.c()).max(1.0) * 1.12;
    let rho_at_z = h.a() * (1.0 + z_extent * z_extent / h.c2()).sqrt();
    let rho_extent = (rho_c + r).max(rho_at_z).max(h.a()) * 1.12;

    let (w, hgt) = (2.0 * rho_extent, 2.0 * z_extent);
    let stroke = 0.004 * w.max(hgt);
    let font = 0.05 * hgt;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        f(-rho_extent),
        f(-z_extent),
        f(w),
        f(hgt)
    );
    let _ = writeln!(
        out,
        r#"  <rect x="{}" y="{}" width="{}" height="{}" fill="white"/>"#,
        f(-rho_extent),
        f(-z_extent),
        f(w),
        f(hgt)
    );
    // symmetry axis
    let _ = writeln!(
        out,
        r##"  <line x1="0.0000" y1="{}" x2="0.0000" y2="{}" stroke="#bbbbbb" stroke-width="{}" stroke-dasharray="{}"/>"##,
        f(-z_extent),
        f(z_extent),
        f(stroke * 0.5),
        f(stroke * 3.0)
    );

    // hyperbola branches rho = +-a sqrt(1 + z^2/c^2)
    for sign in [1.0f64, -1.0] {
        let mut points = String::new();
        for i in 0..=CURVE_SAMPLES {
            let z = -z_extent + 2.0 * z_extent * (i as f64) / (CURVE_SAMPLES as f64);
            let rho = sign * h.a() * (1.0 + z * z / h.c2()).sqrt();
            let _ = write!(points, "{},{} ", f(rho), f(-z));
        }
        let _ = writeln!(
            out,
            r##"  <polyline points="{}" fill="none" stroke="#1f4e8c" stroke-width="{}"/>"##,
            points.trim_end(),
            f(stroke)
        );
    }

    // sphere cross-section
    let _ = writeln!(
        out,
        r##"  <circle cx="{}" cy="{}" r="{}" fill="none" stroke="#b03030" stroke-width="{}"/>"##,
        f(rho_c),
        f(-z_c),
        f(r),
        f(stroke)
    );
    let _ = writeln!(
        out,
        r##"  <circle cx="{}" cy="{}" r="{}" fill="#b03030"/>"##,
        f(rho_c),
        f(-z_c),
        f(stroke * 1.5)
    );

    let _ = writeln!(
        out,
        r##"  <text x="{}" y="{}" font-family="monospace" font-size="{}" fill="#202020">type: {}</text>"##,
        f(-rho_extent + 0.03 * w),
        f(-z_extent + 0.08 * hgt),
        f(font),
        label
    );
    let _ = writeln!(out, "</svg>");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Vector3;

    #[test]
    fn output_is_deterministic_and_contains_the_circle() {
        let h = StdHyperboloid::new(1.5, 1.6).unwrap();
        let s = Sphere::new(Vector3::new(2.1, 2.2, 0.3), 1.4).unwrap();
        let a = cross_section(&h, &s, "E");
        let b = cross_section(&h, &s, "E");
        assert_eq!(a, b);
        // circle center at (rho_c, -z_c) = (3.0414, -0.3)
        assert!(a.contains(r#"cx="3.0414" cy="-0.3000" r="1.4000""#), "{a}");
        assert!(a.contains("type: E"));
    }

    #[test]
    fn bounds_contain_sphere_and_throat() {
        let h = StdHyperboloid::new(1.0, 2.0).unwrap();
        let s = Sphere::new(Vector3::new(5.0, 0.0, 4.0), 0.5).unwrap();
        let svg = cross_section(&h, &s, "E");
        let view: Vec<f64> = svg
            .lines()
            .next()
            .unwrap()
            .split('"')
            .nth(3)
            .unwrap()
            .split_whitespace()
            .map(|v| v.parse().unwrap())
            .collect();
        let (x0, y0, w, hh) = (view[0], view[1], view[2], view[3]);
        // sphere extremes
        assert!(x0 <= 5.0 - 0.5 && x0 + w >= 5.0 + 0.5);
        assert!(y0 <= -4.0 - 0.5 && y0 + hh >= -4.0 + 0.5);
        // throat
        assert!(x0 <= -1.0 && x0 + w >= 1.0);
    }
}
