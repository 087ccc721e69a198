//! JSON and CSV serializations of regions and curves.

use numrange::{ConvexRegion, CurveComponent, RegionKind};
use serde::Serialize;

/// Region as emitted by the `range` command.
#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RegionJson {
    Empty,
    Point { center: [f64; 2] },
    Segment { endpoints: [[f64; 2]; 2] },
    Polygon { vertices: Vec<[f64; 2]> },
}

impl RegionJson {
    pub fn from_region(region: &ConvexRegion) -> Self {
        match &region.kind {
            RegionKind::Empty => RegionJson::Empty,
            RegionKind::Point(c) => RegionJson::Point { center: [c.re, c.im] },
            RegionKind::Segment(a, b) => {
                RegionJson::Segment { endpoints: [[a.re, a.im], [b.re, b.im]] }
            }
            RegionKind::Polygon(v) => {
                RegionJson::Polygon { vertices: v.iter().map(|p| [p.re, p.im]).collect() }
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct KeyedRegionJson {
    pub k: usize,
    #[serde(flatten)]
    pub region: RegionJson,
}

#[derive(Debug, Serialize)]
pub struct CurveJson {
    pub k: usize,
    pub closed: bool,
    /// Rows [theta, re, im].
    pub samples: Vec<[f64; 3]>,
}

impl CurveJson {
    pub fn from_component(c: &CurveComponent) -> Self {
        CurveJson {
            k: c.k,
            closed: c.closed,
            samples: c.samples.iter().map(|&(t, p)| [t, p.re, p.im]).collect(),
        }
    }
}

/// 17 significant digits: round-trip safe for f64.
fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV with header `theta,k,re,im`, components concatenated in k order.
pub fn curves_csv(curves: &[&CurveComponent]) -> String {
    let mut out = String::from("theta,k,re,im\n");
    for c in curves {
        for &(theta, p) in &c.samples {
            out.push_str(&format!("{},{},{},{}\n", fmt(theta), c.k, fmt(p.re), fmt(p.im)));
        }
    }
    out
}

/// CSV for a region: `k,kind,index,re,im` rows (one per vertex/endpoint).
pub fn regions_csv(regions: &[(usize, &ConvexRegion)]) -> String {
    let mut out = String::from("k,kind,index,re,im\n");
    for (k, region) in regions {
        let kind = match region.kind {
            RegionKind::Empty => "empty",
            RegionKind::Point(_) => "point",
            RegionKind::Segment(..) => "segment",
            RegionKind::Polygon(_) => "polygon",
        };
        let pts = region.points();
        if pts.is_empty() {
            out.push_str(&format!("{k},{kind},,,\n"));
        }
        for (i, p) in pts.iter().enumerate() {
            out.push_str(&format!("{k},{kind},{i},{},{}\n", fmt(p.re), fmt(p.im)));
        }
    }
    out
}
