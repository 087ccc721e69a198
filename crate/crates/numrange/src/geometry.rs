//! Convex planar geometry: half-plane clipping, hulls, and the classified
//! region type. Points live in the complex plane (re = x, im = y).

use num_complex::Complex64;

/// Half-plane `Re(e^{i theta} mu) <= bound`.
#[derive(Debug, Clone, Copy)]
pub struct HalfPlane {
    pub theta: f64,
    pub bound: f64,
}

impl HalfPlane {
    /// Positive outside, negative inside.
    pub fn signed_excess(&self, p: Complex64) -> f64 {
        let (s, c) = self.theta.sin_cos();
        p.re * c - p.im * s - self.bound
    }

    /// Half-plane whose boundary contains the directed edge a -> b of a CCW
    /// polygon, with the polygon interior on the inside.
    pub fn from_ccw_edge(a: Complex64, b: Complex64) -> Self {
        // Outward normal of a CCW edge is the edge direction rotated by -90
        // degrees; Re(e^{i theta} mu) = dot(e^{-i theta}, mu).
        let nu = (b - a) * Complex64::new(0.0, -1.0);
        let nu = nu / nu.norm();
        let theta = -nu.arg();
        HalfPlane { theta, bound: nu.re * a.re + nu.im * a.im }
    }

    /// Four half-planes whose intersection is exactly the point `p`.
    pub fn pinning_point(p: Complex64) -> [HalfPlane; 4] {
        [0.0, std::f64::consts::FRAC_PI_2, std::f64::consts::PI, 3.0 * std::f64::consts::FRAC_PI_2]
            .map(|theta| {
                let (s, c) = theta.sin_cos();
                HalfPlane { theta, bound: p.re * c - p.im * s }
            })
    }

    /// Four half-planes whose intersection is exactly the segment [a, b].
    pub fn pinning_segment(a: Complex64, b: Complex64) -> [HalfPlane; 4] {
        let e = (b - a) / (b - a).norm();
        let nu = e * Complex64::new(0.0, -1.0);
        let plane = |nu: Complex64, anchor: Complex64| {
            let theta = -nu.arg();
            HalfPlane { theta, bound: nu.re * anchor.re + nu.im * anchor.im }
        };
        [plane(nu, a), plane(-nu, a), plane(e, b), plane(-e, a)]
    }
}

pub fn dot(a: Complex64, b: Complex64) -> f64 {
    a.re * b.re + a.im * b.im
}

pub fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Clip a convex polygon against one half-plane (Sutherland-Hodgman step).
/// Points with excess up to `eps` count as inside so zero-width regions
/// survive the sweep.
pub fn clip_polygon(poly: &[Complex64], hp: &HalfPlane, eps: f64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    clip_polygon_into(poly, hp, eps, &mut out);
    out
}

fn clip_polygon_into(poly: &[Complex64], hp: &HalfPlane, eps: f64, out: &mut Vec<Complex64>) {
    out.clear();
    if poly.is_empty() {
        return;
    }
    // One trig evaluation per plane, not per vertex.
    let (sin_t, cos_t) = hp.theta.sin_cos();
    let excess = |p: Complex64| p.re * cos_t - p.im * sin_t - hp.bound;
    if poly.len() == 1 {
        if excess(poly[0]) <= eps {
            out.push(poly[0]);
        }
        return;
    }
    // Merging output vertices at the slack scale keeps dense families of
    // planes through a common point (polygon corners, singleton ranges)
    // from growing one noise-level vertex per plane.
    let push = |out: &mut Vec<Complex64>, p: Complex64| {
        if out.last().is_none_or(|&q| {
            let d = p - q;
            d.re.abs() > eps || d.im.abs() > eps
        }) {
            out.push(p);
        }
    };
    let n = poly.len();
    let mut sc = excess(poly[n - 1]);
    let mut s = poly[n - 1];
    for &e in poly {
        let ec = excess(e);
        match (sc <= eps, ec <= eps) {
            (true, true) => push(out, e),
            (true, false) => {
                let denom = sc - ec;
                if denom.abs() > f64::MIN_POSITIVE {
                    let t = sc / denom;
                    push(out, s + (e - s) * t);
                }
            }
            (false, true) => {
                let denom = sc - ec;
                if denom.abs() > f64::MIN_POSITIVE {
                    let t = sc / denom;
                    push(out, s + (e - s) * t);
                }
                push(out, e);
            }
            (false, false) => {}
        }
        s = e;
        sc = ec;
    }
    while out.len() >= 2 {
        let d = out[0] - *out.last().unwrap();
        if d.re.abs() <= eps && d.im.abs() <= eps {
            out.pop();
        } else {
            break;
        }
    }
}

/// Intersect a seed polygon with a family of half-planes.
pub fn intersect_half_planes(
    seed: Vec<Complex64>,
    planes: impl IntoIterator<Item = HalfPlane>,
    eps: f64,
) -> Vec<Complex64> {
    let mut poly = seed;
    let mut scratch = Vec::with_capacity(poly.len() + 8);
    for hp in planes {
        clip_polygon_into(&poly, &hp, eps, &mut scratch);
        std::mem::swap(&mut poly, &mut scratch);
        if poly.is_empty() {
            return poly;
        }
    }
    poly
}

/// Axis-aligned CCW square centered at `center` with half-width `w`.
pub fn bounding_square(center: Complex64, w: f64) -> Vec<Complex64> {
    vec![
        center + Complex64::new(-w, -w),
        center + Complex64::new(w, -w),
        center + Complex64::new(w, w),
        center + Complex64::new(-w, w),
    ]
}

/// Andrew's monotone chain, strictly convex CCW output.
/// Returns the input unchanged for fewer than three distinct points and the
/// extreme pair when all points are collinear.
pub fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = points.to_vec();
    pts.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    pts.dedup_by(|a, b| a.re == b.re && a.im == b.im);
    let n = pts.len();
    if n < 3 {
        return pts;
    }
    let chain = |iter: &mut dyn Iterator<Item = Complex64>| {
        let mut half: Vec<Complex64> = Vec::new();
        for p in iter {
            while half.len() >= 2 {
                let o = half[half.len() - 2];
                let a = half[half.len() - 1];
                if cross(a - o, p - o) <= 0.0 {
                    half.pop();
                } else {
                    break;
                }
            }
            half.push(p);
        }
        half
    };
    let mut lower = chain(&mut pts.iter().copied());
    let mut upper = chain(&mut pts.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        // All points collinear; report the extreme pair.
        return vec![pts[0], pts[n - 1]];
    }
    lower
}

/// Signed area (positive for CCW).
pub fn polygon_area(poly: &[Complex64]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        acc += cross(a, b);
    }
    acc / 2.0
}

/// Largest pairwise distance and its endpoints.
pub fn diameter(points: &[Complex64]) -> (f64, Complex64, Complex64) {
    let mut best = 0.0;
    let mut pair = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    if let Some(&p0) = points.first() {
        pair = (p0, p0);
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let d = (points[i] - points[j]).norm();
            if d > best {
                best = d;
                pair = (points[i], points[j]);
            }
        }
    }
    (best, pair.0, pair.1)
}

/// Width of a convex polygon: the minimum over edges of the farthest vertex
/// distance to the edge line.
pub fn width(hull: &[Complex64]) -> f64 {
    if hull.len() < 3 {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for i in 0..hull.len() {
        let a = hull[i];
        let b = hull[(i + 1) % hull.len()];
        let e = b - a;
        let len = e.norm();
        if len == 0.0 {
            continue;
        }
        let mut far: f64 = 0.0;
        for &p in hull {
            far = far.max(cross(e, p - a).abs() / len);
        }
        best = best.min(far);
    }
    if best.is_finite() {
        best
    } else {
        0.0
    }
}

pub fn dist_point_segment(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len_sqr = ab.norm_sqr();
    if len_sqr == 0.0 {
        return (p - a).norm();
    }
    let t = (dot(p - a, ab) / len_sqr).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// True when `p` lies inside or on the boundary of the CCW convex polygon,
/// with slack `eps`.
pub fn point_in_convex(p: Complex64, poly: &[Complex64], eps: f64) -> bool {
    if poly.len() < 3 {
        return match poly.len() {
            0 => false,
            1 => (p - poly[0]).norm() <= eps,
            _ => dist_point_segment(p, poly[0], poly[1]) <= eps,
        };
    }
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        let e = b - a;
        if cross(e, p - a) < -eps * e.norm() {
            return false;
        }
    }
    true
}

/// A classified convex set.
#[derive(Debug, Clone, PartialEq)]
pub enum RegionKind {
    Empty,
    Point(Complex64),
    Segment(Complex64, Complex64),
    /// Strictly convex CCW vertex list with no two vertices closer than the
    /// classification tolerance.
    Polygon(Vec<Complex64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexRegion {
    pub kind: RegionKind,
    /// Tolerance the classification was made under.
    pub tol: f64,
}

impl ConvexRegion {
    pub fn empty(tol: f64) -> Self {
        ConvexRegion { kind: RegionKind::Empty, tol }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.kind, RegionKind::Empty)
    }

    /// Representative points: vertices, endpoints, or the center.
    pub fn points(&self) -> Vec<Complex64> {
        match &self.kind {
            RegionKind::Empty => Vec::new(),
            RegionKind::Point(c) => vec![*c],
            RegionKind::Segment(a, b) => vec![*a, *b],
            RegionKind::Polygon(v) => v.clone(),
        }
    }

    /// Distance from a point to this region as a filled convex set.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        match &self.kind {
            RegionKind::Empty => f64::INFINITY,
            RegionKind::Point(c) => (p - c).norm(),
            RegionKind::Segment(a, b) => dist_point_segment(p, *a, *b),
            RegionKind::Polygon(v) => {
                if point_in_convex(p, v, 0.0) {
                    0.0
                } else {
                    let mut best = f64::INFINITY;
                    for i in 0..v.len() {
                        best = best.min(dist_point_segment(p, v[i], v[(i + 1) % v.len()]));
                    }
                    best
                }
            }
        }
    }

    /// True when `p` is inside the region, inflated by `eps`.
    pub fn contains(&self, p: Complex64, eps: f64) -> bool {
        self.distance_to(p) <= eps
    }

    pub fn area(&self) -> f64 {
        match &self.kind {
            RegionKind::Polygon(v) => polygon_area(v),
            _ => 0.0,
        }
    }
}

/// Hausdorff distance between two regions as filled convex sets.
/// Zero when both are empty, infinite when exactly one is.
pub fn region_hausdorff(a: &ConvexRegion, b: &ConvexRegion) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => 0.0,
        (true, false) | (false, true) => f64::INFINITY,
        (false, false) => {
            let d_ab = a.points().iter().map(|&p| b.distance_to(p)).fold(0.0, f64::max);
            let d_ba = b.points().iter().map(|&p| a.distance_to(p)).fold(0.0, f64::max);
            d_ab.max(d_ba)
        }
    }
}

/// Classify a raw clipped vertex set into Empty / Point / Segment / Polygon.
///
/// Empty when no vertices survived; Point when the diameter is below `tol`;
/// Segment when only the width is; otherwise a cleaned convex CCW polygon
/// (vanishing area is a final Empty guard).
pub fn classify_region(vertices: &[Complex64], tol: f64) -> ConvexRegion {
    if vertices.is_empty() {
        return ConvexRegion::empty(tol);
    }
    let (diam, da, db) = diameter(vertices);
    if diam < tol {
        let mut mean = Complex64::new(0.0, 0.0);
        for &p in vertices {
            mean += p;
        }
        mean /= vertices.len() as f64;
        return ConvexRegion { kind: RegionKind::Point(mean), tol };
    }
    let hull = convex_hull(vertices);
    if hull.len() < 3 || width(&hull) < tol {
        return ConvexRegion { kind: RegionKind::Segment(da, db), tol };
    }
    let cleaned = dedup_convex(&hull, tol);
    if cleaned.len() < 3 {
        return ConvexRegion { kind: RegionKind::Segment(da, db), tol };
    }
    if polygon_area(&cleaned) < tol * tol {
        return ConvexRegion::empty(tol);
    }
    ConvexRegion { kind: RegionKind::Polygon(cleaned), tol }
}

/// Merge consecutive hull vertices closer than `tol` and drop vertices that
/// no longer make a strict left turn.
fn dedup_convex(hull: &[Complex64], tol: f64) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = Vec::with_capacity(hull.len());
    for &p in hull {
        if pts.last().is_none_or(|&q| (p - q).norm() >= tol) {
            pts.push(p);
        }
    }
    while pts.len() >= 2 && (pts[0] - *pts.last().unwrap()).norm() < tol {
        pts.pop();
    }
    if pts.len() < 3 {
        return pts;
    }
    // Enforce strict convexity after the merge.
    let mut out: Vec<Complex64> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while out.len() >= 2 {
            let o = out[out.len() - 2];
            let a = out[out.len() - 1];
            if cross(a - o, p - o) <= 0.0 {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }
    // Wrap-around turns.
    loop {
        let m = out.len();
        if m < 3 {
            break;
        }
        if cross(out[m - 1] - out[m - 2], out[0] - out[m - 2]) <= 0.0 {
            out.pop();
            continue;
        }
        if cross(out[0] - out[m - 1], out[1] - out[m - 1]) <= 0.0 {
            out.remove(0);
            continue;
        }
        break;
    }
    out
}

/// Test helper: strict CCW convexity.
pub fn is_ccw_convex(poly: &[Complex64]) -> bool {
    if poly.len() < 3 {
        return false;
    }
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        let c = poly[(i + 2) % poly.len()];
        if cross(b - a, c - b) <= 0.0 {
            return false;
        }
    }
    true
}
