//! Support sampling, half-plane intersections into rank-k ranges, curve
//! tracing, genericity, and the geometric classifiers.

use num_complex::Complex64;
use once_cell::sync::Lazy;
use rayon::prelude::*;

use crate::conic::ellipse_fit;
use crate::eigen::{hermitian_eig_at, rayleigh, HermitianEigenSystem};
use crate::error::{Error, Result};
use crate::geometry::{
    bounding_square, classify_region, convex_hull, intersect_half_planes, ConvexRegion, HalfPlane,
    RegionKind,
};
use crate::matrix::{ComplexMatrix, TOL_EIG};
use crate::spectrum::{DenseSupport, SupportSpectrum};

/// Default absolute eigenvalue-gap threshold after scaling to unit numerical
/// radius.
pub const DEFAULT_GAP_TOL: f64 = 1e-8;

/// One grid angle with the full eigensystem of `Re(e^{i theta} A)`.
#[derive(Debug, Clone)]
pub struct SupportSample {
    pub theta: f64,
    pub spectrum: HermitianEigenSystem,
}

/// Sampled curve component gamma_k as theta sweeps the grid.
#[derive(Debug, Clone)]
pub struct CurveComponent {
    pub k: usize,
    pub samples: Vec<(f64, Complex64)>,
    pub closed: bool,
}

impl CurveComponent {
    pub fn points(&self) -> Vec<Complex64> {
        self.samples.iter().map(|&(_, p)| p).collect()
    }
}

#[derive(Debug, Clone)]
pub struct GenericityReport {
    pub is_generic: bool,
    /// Smallest consecutive eigenvalue gap over the grid.
    pub min_gap: f64,
    /// Angle where the minimum occurs.
    pub argmin_theta: f64,
    /// Numerical radius of the sampled family, the scale the verdict is
    /// relative to.
    pub scale: f64,
    pub gap_tol: f64,
}

/// Cap the rayon pool once from NR_THREADS, when set.
fn init_parallelism() {
    static INIT: Lazy<()> = Lazy::new(|| {
        if let Ok(v) = std::env::var("NR_THREADS") {
            if let Ok(k) = v.trim().parse::<usize>() {
                if k >= 1 {
                    let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
                }
            }
        }
    });
    Lazy::force(&INIT);
}

fn check_grid(n_samples: usize) -> Result<()> {
    if n_samples < 8 {
        return Err(Error::InvalidParameter(format!(
            "the angle grid needs at least 8 samples, got {n_samples}"
        )));
    }
    Ok(())
}

pub fn grid_theta(j: usize, n_samples: usize) -> f64 {
    2.0 * std::f64::consts::PI * j as f64 / n_samples as f64
}

/// Full eigensystems of `Re(e^{i theta_j} A)` on the uniform grid
/// `theta_j = 2 pi j / N`. Per-angle solves run in parallel; the output
/// order is the grid order, so results are deterministic.
pub fn sample_support(a: &ComplexMatrix, n_samples: usize) -> Result<Vec<SupportSample>> {
    check_grid(n_samples)?;
    init_parallelism();
    (0..n_samples)
        .into_par_iter()
        .map(|j| {
            let theta = grid_theta(j, n_samples);
            let spectrum = hermitian_eig_at(&a.rotated_real(theta), theta, TOL_EIG)?;
            Ok(SupportSample { theta, spectrum })
        })
        .collect()
}

/// Support values over the grid for any registered solver (eigenvalues
/// only). Parallel over angles, output in grid order.
pub fn support_values_grid(
    solver: &(impl SupportSpectrum + ?Sized),
    n_samples: usize,
) -> Result<Vec<Vec<f64>>> {
    check_grid(n_samples)?;
    init_parallelism();
    (0..n_samples)
        .into_par_iter()
        .map(|j| solver.support_values(grid_theta(j, n_samples)))
        .collect()
}

/// Largest |eigenvalue| seen on a sampled grid; the numerical radius of the
/// family.
pub fn grid_radius(values: &[Vec<f64>]) -> f64 {
    values
        .iter()
        .flat_map(|v| v.iter())
        .map(|x| x.abs())
        .fold(0.0, f64::max)
}

/// Classification tolerance used by default: 1e-6 relative to the scale of
/// the range.
pub fn default_region_tol(radius: f64) -> f64 {
    1e-6 * (1.0 + radius)
}

/// Lambda_k from precomputed grid support values: the intersection of the
/// half-planes `Re(e^{i theta_j} mu) <= lambda_k(theta_j)`, classified into
/// Empty / Point / Segment / Polygon at tolerance `tol`.
pub fn rank_k_range_from_values(values: &[Vec<f64>], k: usize, tol: f64) -> Result<ConvexRegion> {
    let n_samples = values.len();
    let n = values.first().map_or(0, |v| v.len());
    if k < 1 || k > n {
        return Err(Error::InvalidParameter(format!("k must be in 1..={n}, got {k}")));
    }
    let radius = grid_radius(values);
    // Clip slack and vertex-merge scale: far below the classification
    // tolerance, far above the jitter of near-tangent line intersections.
    let eps = 1e-9 * (1.0 + radius);
    let half_width = 2.0 * radius + 10.0 * tol.abs() + f64::MIN_POSITIVE;
    let seed = bounding_square(Complex64::new(0.0, 0.0), half_width);
    let planes = values
        .iter()
        .enumerate()
        .map(|(j, vals)| HalfPlane { theta: grid_theta(j, n_samples), bound: vals[k - 1] });
    let vertices = intersect_half_planes(seed, planes, eps);
    Ok(classify_region(&vertices, tol))
}

/// Lambda_k through any solver backend.
pub fn rank_k_range_with(
    solver: &(impl SupportSpectrum + ?Sized),
    k: usize,
    n_samples: usize,
    tol: f64,
) -> Result<ConvexRegion> {
    let n = solver.dim();
    if k < 1 || k > n {
        return Err(Error::InvalidParameter(format!("k must be in 1..={n}, got {k}")));
    }
    let values = support_values_grid(solver, n_samples)?;
    rank_k_range_from_values(&values, k, tol)
}

/// [`rank_k_range_with`] on the dense Jacobi backend.
pub fn rank_k_range(a: &ComplexMatrix, k: usize, n_samples: usize, tol: f64) -> Result<ConvexRegion> {
    rank_k_range_with(&DenseSupport::new(a.clone()), k, n_samples, tol)
}

/// Genericity over the grid: the smallest consecutive gap of the sampled
/// eigenvalue curves, compared against `gap_tol` scaled by the numerical
/// radius.
pub fn is_generic_with(
    solver: &(impl SupportSpectrum + ?Sized),
    n_samples: usize,
    gap_tol: f64,
) -> Result<GenericityReport> {
    let values = support_values_grid(solver, n_samples)?;
    let scale = grid_radius(&values);
    let mut min_gap = f64::INFINITY;
    let mut argmin_theta = 0.0;
    for (j, vals) in values.iter().enumerate() {
        for w in vals.windows(2) {
            let gap = w[0] - w[1];
            if gap < min_gap {
                min_gap = gap;
                argmin_theta = grid_theta(j, n_samples);
            }
        }
    }
    if !min_gap.is_finite() {
        // 1x1 matrices have no gaps; a single eigenvalue curve never crosses.
        min_gap = f64::INFINITY;
    }
    let is_generic = scale > 0.0 && min_gap > gap_tol * scale;
    Ok(GenericityReport { is_generic, min_gap, argmin_theta, scale, gap_tol })
}

pub fn is_generic(a: &ComplexMatrix, n_samples: usize, gap_tol: f64) -> Result<GenericityReport> {
    is_generic_with(&DenseSupport::new(a.clone()), n_samples, gap_tol)
}

fn curve_point(
    a: &ComplexMatrix,
    sample: &SupportSample,
    k: usize,
    gap_floor: f64,
) -> Result<Complex64> {
    let vals = &sample.spectrum.eigenvalues;
    let n = vals.len();
    let mut gap = f64::INFINITY;
    if k >= 2 {
        gap = gap.min(vals[k - 2] - vals[k - 1]);
    }
    if k < n {
        gap = gap.min(vals[k - 1] - vals[k]);
    }
    if gap < gap_floor {
        return Err(Error::DegenerateEigenvalue {
            theta: sample.theta,
            k,
            gap,
            gap_tol: gap_floor,
        });
    }
    rayleigh(a, &sample.spectrum.eigenvectors[k - 1])
}

fn close_up(samples: &[(f64, Complex64)], scale: f64) -> bool {
    if samples.len() < 2 {
        return true;
    }
    let mut max_chord: f64 = 0.0;
    for w in samples.windows(2) {
        max_chord = max_chord.max((w[0].1 - w[1].1).norm());
    }
    let wrap = (samples[0].1 - samples[samples.len() - 1].1).norm();
    wrap <= 3.0 * max_chord + 1e-9 * (1.0 + scale)
}

/// gamma_k sampled as Rayleigh quotients of the k-th eigenvector over the
/// grid. Errors with the offending angle when the eigenvalue is not simple
/// enough for the eigenvector to be well defined.
pub fn kippenhahn_component_from_samples(
    a: &ComplexMatrix,
    samples: &[SupportSample],
    k: usize,
    gap_tol: f64,
) -> Result<CurveComponent> {
    let n = a.dim();
    let half = n.div_ceil(2);
    if k < 1 || k > half {
        return Err(Error::InvalidParameter(format!(
            "curve component index must be in 1..={half}, got {k}"
        )));
    }
    let scale = samples
        .iter()
        .flat_map(|s| s.spectrum.eigenvalues.iter())
        .map(|x| x.abs())
        .fold(0.0, f64::max);
    let gap_floor = gap_tol * scale.max(f64::MIN_POSITIVE);
    let mut pts = Vec::with_capacity(samples.len());
    for sample in samples {
        pts.push((sample.theta, curve_point(a, sample, k, gap_floor)?));
    }
    let closed = close_up(&pts, scale);
    Ok(CurveComponent { k, samples: pts, closed })
}

pub fn kippenhahn_component(a: &ComplexMatrix, k: usize, n_samples: usize) -> Result<CurveComponent> {
    let samples = sample_support(a, n_samples)?;
    kippenhahn_component_from_samples(a, &samples, k, DEFAULT_GAP_TOL)
}

/// All components gamma_1 .. gamma_ceil(n/2) from one grid pass.
pub fn curve_components(a: &ComplexMatrix, n_samples: usize) -> Result<Vec<CurveComponent>> {
    let samples = sample_support(a, n_samples)?;
    (1..=a.dim().div_ceil(2))
        .map(|k| kippenhahn_component_from_samples(a, &samples, k, DEFAULT_GAP_TOL))
        .collect()
}

/// Global sign in the envelope formula, fixed once by agreement with the
/// Rayleigh route on a fixed non-normal 2x2 matrix (the closed form of the
/// envelope of the support lines determines it only up to orientation).
static ENVELOPE_SIGN: Lazy<f64> = Lazy::new(|| {
    let b = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 1.0]]).expect("square");
    let mut best = (f64::INFINITY, 1.0);
    for &sign in &[1.0f64, -1.0] {
        let mut worst: f64 = 0.0;
        for &theta in &[0.4, 1.3, 2.9] {
            let sample = SupportSample {
                theta,
                spectrum: hermitian_eig_at(&b.rotated_real(theta), theta, TOL_EIG).expect("2x2 eig"),
            };
            let env = envelope_point_signed(&b, &sample, 1, sign).expect("simple eigenvalue");
            let ray = rayleigh(&b, &sample.spectrum.eigenvectors[0]).expect("unit vector");
            worst = worst.max((env - ray).norm());
        }
        if worst < best.0 {
            best = (worst, sign);
        }
    }
    assert!(best.0 < 1e-9, "envelope self-test failed: deviation {:.3e}", best.0);
    best.1
});

fn envelope_point_signed(
    a: &ComplexMatrix,
    sample: &SupportSample,
    k: usize,
    sign: f64,
) -> Result<Complex64> {
    let vals = &sample.spectrum.eigenvalues;
    let n = vals.len();
    let mut gap = f64::INFINITY;
    if k >= 2 {
        gap = gap.min(vals[k - 2] - vals[k - 1]);
    }
    if k < n {
        gap = gap.min(vals[k - 1] - vals[k]);
    }
    let scale = vals.iter().map(|x| x.abs()).fold(0.0, f64::max);
    if gap < DEFAULT_GAP_TOL * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::DegenerateEigenvalue {
            theta: sample.theta,
            k,
            gap,
            gap_tol: DEFAULT_GAP_TOL * scale.max(f64::MIN_POSITIVE),
        });
    }
    let z = &sample.spectrum.eigenvectors[k - 1];
    // Hellmann-Feynman: d/dtheta lambda_k = <dH/dtheta z, z> with
    // dH/dtheta = -Im(e^{i theta} A).
    let lambda_prime = -rayleigh(&a.rotated_imag(sample.theta), z)?.re;
    let lambda = vals[k - 1];
    let w = Complex64::from_polar(1.0, -sample.theta);
    Ok(w * Complex64::new(lambda, sign * lambda_prime))
}

/// Tangency point of the support line `Re(e^{i theta} mu) = lambda_k(theta)`
/// with gamma_k, from the eigenvalue and its angle derivative. Agrees with
/// the Rayleigh quotient of the k-th eigenvector.
pub fn envelope_point(a: &ComplexMatrix, sample: &SupportSample, k: usize) -> Result<Complex64> {
    envelope_point_signed(a, sample, k, *ENVELOPE_SIGN)
}

/// Lambda_k of a normal matrix: intersection of the convex hulls of all
/// (n-k+1)-subsets of the spectrum, by exact polygon clipping.
pub fn normal_range(eigenvalues: &[Complex64], k: usize, tol: f64) -> Result<ConvexRegion> {
    let n = eigenvalues.len();
    if k < 1 || k > n {
        return Err(Error::InvalidParameter(format!("k must be in 1..={n}, got {k}")));
    }
    let take = n - k + 1;
    let mut center = Complex64::new(0.0, 0.0);
    for &e in eigenvalues {
        center += e;
    }
    center /= n as f64;
    let radius = eigenvalues.iter().map(|&e| (e - center).norm()).fold(0.0, f64::max);
    let eps = 1e-9 * (1.0 + radius + center.norm());
    let mut poly = bounding_square(center, 2.0 * radius + 10.0 * tol.abs() + 1.0);

    let mut subset: Vec<usize> = (0..take).collect();
    loop {
        let pts: Vec<Complex64> = subset.iter().map(|&i| eigenvalues[i]).collect();
        let hull = convex_hull(&pts);
        let planes: Vec<HalfPlane> = match hull.len() {
            0 => Vec::new(),
            1 => HalfPlane::pinning_point(hull[0]).to_vec(),
            2 => HalfPlane::pinning_segment(hull[0], hull[1]).to_vec(),
            _ => (0..hull.len())
                .map(|i| HalfPlane::from_ccw_edge(hull[i], hull[(i + 1) % hull.len()]))
                .collect(),
        };
        poly = intersect_half_planes(poly, planes, eps);
        if poly.is_empty() {
            return Ok(ConvexRegion::empty(tol));
        }
        // Next (n-k+1)-combination in lexicographic order.
        let mut i = take;
        loop {
            if i == 0 {
                return Ok(classify_region(&poly, tol));
            }
            i -= 1;
            if subset[i] != i + n - take {
                subset[i] += 1;
                for j in (i + 1)..take {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Approximate intersection points of two sampled curves by segment-pair
/// tests on their (wrapped) polylines, with endpoints snapped at `tol`.
pub fn curve_intersections(c1: &CurveComponent, c2: &CurveComponent, tol: f64) -> Vec<Complex64> {
    let a = c1.points();
    let b = c2.points();
    if a.len() < 2 || b.len() < 2 {
        return Vec::new();
    }
    let mut found: Vec<Complex64> = Vec::new();
    let mut push = |p: Complex64| {
        if found.iter().all(|&q| (p - q).norm() > tol) {
            found.push(p);
        }
    };
    for i in 0..a.len() {
        let p1 = a[i];
        let p2 = a[(i + 1) % a.len()];
        let d1 = p2 - p1;
        let len1 = d1.norm();
        if len1 == 0.0 {
            continue;
        }
        for j in 0..b.len() {
            let q1 = b[j];
            let q2 = b[(j + 1) % b.len()];
            let d2 = q2 - q1;
            let len2 = d2.norm();
            if len2 == 0.0 {
                continue;
            }
            let denom = crate::geometry::cross(d1, d2);
            if denom.abs() <= 1e-14 * len1 * len2 {
                continue;
            }
            let r = q1 - p1;
            let t = crate::geometry::cross(r, d2) / denom;
            let u = crate::geometry::cross(r, d1) / denom;
            let slack_t = tol / len1;
            let slack_u = tol / len2;
            if t >= -slack_t && t <= 1.0 + slack_t && u >= -slack_u && u <= 1.0 + slack_u {
                push(p1 + d1 * t);
            }
        }
    }
    found
}

/// Snap tolerance for [`curve_intersections`]: the larger median grid chord
/// of the two polylines. The median, not the max, so cusp regions where the
/// parametrization sprints do not widen every segment test.
pub fn intersection_snap_tol(c1: &CurveComponent, c2: &CurveComponent) -> f64 {
    let chord = |c: &CurveComponent| {
        let pts = c.points();
        let mut lens: Vec<f64> =
            (0..pts.len()).map(|i| (pts[(i + 1) % pts.len()] - pts[i]).norm()).collect();
        lens.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if lens.is_empty() {
            0.0
        } else {
            lens[lens.len() / 2]
        }
    };
    chord(c1).max(chord(c2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeClass {
    EllipticalDisk,
    Ovular,
    Other,
}

/// Shape verdict for a 3x3 matrix, with the rank-2 cross-check: the rank-2
/// range is nonempty exactly when the numerical range is an elliptical disk
/// (possibly degenerated to a segment).
#[derive(Debug, Clone)]
pub struct ShapeReport {
    pub class: ShapeClass,
    pub generic: bool,
    pub ellipse_residual: Option<f64>,
    pub lambda2: ConvexRegion,
    pub consistent: bool,
}

/// Classify the numerical-range shape of a 3x3 matrix: elliptical disk when
/// the boundary fits a conic at residual `tol`, ovular when generic but not
/// elliptical, anything else (normal, degenerate) is Other.
pub fn classify_3x3(a: &ComplexMatrix, n_samples: usize, tol: f64) -> Result<ShapeReport> {
    if a.dim() != 3 {
        return Err(Error::InvalidParameter(format!("classify_3x3 needs n = 3, got {}", a.dim())));
    }
    let genericity = is_generic(a, n_samples, DEFAULT_GAP_TOL)?;
    let region_tol = default_region_tol(genericity.scale);
    let lambda2 = rank_k_range(a, 2, n_samples, region_tol)?;

    let mut residual = None;
    let mut segment_boundary = false;
    let class = if genericity.is_generic {
        let gamma1 = kippenhahn_component(a, 1, n_samples)?;
        let fit = ellipse_fit(&gamma1.points())?;
        residual = Some(fit.residual);
        if fit.is_ellipse && fit.residual <= tol {
            ShapeClass::EllipticalDisk
        } else {
            ShapeClass::Ovular
        }
    } else {
        let lambda1 = rank_k_range(a, 1, n_samples, region_tol)?;
        match &lambda1.kind {
            RegionKind::Polygon(vertices) => match ellipse_fit(vertices) {
                Ok(fit) => {
                    residual = Some(fit.residual);
                    if fit.is_ellipse && fit.residual <= tol {
                        ShapeClass::EllipticalDisk
                    } else {
                        ShapeClass::Other
                    }
                }
                Err(_) => ShapeClass::Other,
            },
            RegionKind::Segment(..) => {
                segment_boundary = true;
                ShapeClass::Other
            }
            _ => ShapeClass::Other,
        }
    };

    // Elliptical disks possibly degenerating into segments are exactly the
    // shapes with nonempty rank-2 range.
    let elliptical_like = class == ShapeClass::EllipticalDisk || segment_boundary;
    let consistent = elliptical_like == !lambda2.is_empty();
    Ok(ShapeReport { class, generic: genericity.is_generic, ellipse_residual: residual, lambda2, consistent })
}
