//! Deterministic SVG rendering of curves and regions.
//!
//! The coordinate frame is y-up (plane coordinates are written with negated
//! y into the SVG's y-down frame). Curves are plain polylines so the file
//! doubles as a data record; best-fit ellipses are drawn dotted.

use num_complex::Complex64;
use numrange::{conic_to_ellipse, ConvexRegion, CurveComponent, EllipseGeometry, RegionKind};

const COLORS: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"];

pub fn color_for(k: usize) -> &'static str {
    COLORS[(k - 1) % COLORS.len()]
}

fn fmt(x: f64) -> String {
    // Fixed notation with enough digits for the plot to double as data;
    // stable across runs because the inputs are deterministic.
    format!("{x:.6}")
}

pub struct SvgCanvas {
    body: String,
    half_width: f64,
}

impl SvgCanvas {
    /// A square canvas covering [-w, w]^2 where w pads the content radius
    /// by 10%.
    pub fn new(content_radius: f64) -> Self {
        let w = 1.1 * content_radius.max(1e-6);
        let mut body = String::new();
        // Light coordinate axes.
        body.push_str(&format!(
            "  <line x1=\"{}\" y1=\"0\" x2=\"{}\" y2=\"0\" stroke=\"#cccccc\" stroke-width=\"{}\"/>\n",
            fmt(-w),
            fmt(w),
            fmt(w / 400.0)
        ));
        body.push_str(&format!(
            "  <line x1=\"0\" y1=\"{}\" x2=\"0\" y2=\"{}\" stroke=\"#cccccc\" stroke-width=\"{}\"/>\n",
            fmt(-w),
            fmt(w),
            fmt(w / 400.0)
        ));
        SvgCanvas { body, half_width: w }
    }

    fn stroke_width(&self) -> f64 {
        self.half_width / 150.0
    }

    pub fn polyline(&mut self, points: &[Complex64], color: &str, close: bool, dotted: bool) {
        if points.is_empty() {
            return;
        }
        let mut coords: Vec<String> =
            points.iter().map(|p| format!("{},{}", fmt(p.re), fmt(-p.im))).collect();
        if close {
            coords.push(coords[0].clone());
        }
        let dash = if dotted {
            format!(" stroke-dasharray=\"{} {}\"", fmt(self.stroke_width() * 2.0), fmt(self.stroke_width() * 2.0))
        } else {
            String::new()
        };
        self.body.push_str(&format!(
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"{}/>\n",
            coords.join(" "),
            color,
            fmt(self.stroke_width()),
            dash
        ));
    }

    pub fn marker(&mut self, p: Complex64, color: &str) {
        self.body.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n",
            fmt(p.re),
            fmt(-p.im),
            fmt(self.stroke_width() * 2.0),
            color
        ));
    }

    pub fn ellipse(&mut self, geo: &EllipseGeometry, color: &str) {
        // The rotation angle flips sign in the y-down frame.
        let deg = -geo.angle.to_degrees();
        self.body.push_str(&format!(
            "  <ellipse cx=\"{}\" cy=\"{}\" rx=\"{}\" ry=\"{}\" transform=\"rotate({} {} {})\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-dasharray=\"{} {}\"/>\n",
            fmt(geo.center.re),
            fmt(-geo.center.im),
            fmt(geo.semi_major),
            fmt(geo.semi_minor),
            fmt(deg),
            fmt(geo.center.re),
            fmt(-geo.center.im),
            color,
            fmt(self.stroke_width()),
            fmt(self.stroke_width() * 2.0),
            fmt(self.stroke_width() * 2.0),
        ));
    }

    pub fn curve(&mut self, component: &CurveComponent) {
        self.polyline(&component.points(), color_for(component.k), component.closed, false);
    }

    pub fn region(&mut self, region: &ConvexRegion, k: usize) {
        let color = color_for(k);
        match &region.kind {
            RegionKind::Empty => {}
            RegionKind::Point(c) => self.marker(*c, color),
            RegionKind::Segment(a, b) => self.polyline(&[*a, *b], color, false, false),
            RegionKind::Polygon(v) => self.polyline(v, color, true, false),
        }
    }

    /// Dotted best-fit overlay from conic coefficients, when elliptical.
    pub fn fit_overlay(&mut self, coefficients: &[f64; 6]) {
        if let Some(geo) = conic_to_ellipse(coefficients) {
            self.ellipse(&geo, "#555555");
        }
    }

    pub fn legend(&mut self, entries: &[(usize, String)]) {
        let w = self.half_width;
        let size = w / 18.0;
        for (row, (k, text)) in entries.iter().enumerate() {
            let y = -w + size * 1.4 * (row as f64 + 1.0);
            self.body.push_str(&format!(
                "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n",
                fmt(-w + size * 0.5),
                fmt(y - size * 0.5),
                fmt(size * 0.8),
                fmt(size * 0.3),
                color_for(*k)
            ));
            self.body.push_str(&format!(
                "  <text x=\"{}\" y=\"{}\" font-size=\"{}\" font-family=\"monospace\" fill=\"#333333\">{}</text>\n",
                fmt(-w + size * 1.6),
                fmt(y),
                fmt(size * 0.7),
                text
            ));
        }
    }

    pub fn finish(self, title: &str) -> String {
        let w = self.half_width;
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"720\" viewBox=\"{} {} {} {}\">\n  <title>{}</title>\n  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n{}</svg>\n",
            fmt(-w),
            fmt(-w),
            fmt(2.0 * w),
            fmt(2.0 * w),
            title,
            fmt(-w),
            fmt(-w),
            fmt(2.0 * w),
            fmt(2.0 * w),
            self.body
        )
    }
}

/// Radius needed to show the given curves.
pub fn curves_radius(curves: &[CurveComponent]) -> f64 {
    curves
        .iter()
        .flat_map(|c| c.samples.iter())
        .map(|(_, p)| p.norm())
        .fold(0.0, f64::max)
}
