//! Least-squares algebraic conic fitting and residual measurement.

use num_complex::Complex64;

use crate::eigen::hermitian_eig;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Result of fitting `a x^2 + b xy + c y^2 + d x + e y + f = 0`.
#[derive(Debug, Clone)]
pub struct ConicFit {
    /// Unit-norm coefficient vector [a, b, c, d, e, f] in the original frame.
    pub coefficients: [f64; 6],
    /// Max pointwise |algebraic value| of the unit-norm fit, measured in the
    /// centered and scale-normalized frame (scale invariant).
    pub residual: f64,
    /// Discriminant test b^2 - 4ac < 0.
    pub is_ellipse: bool,
}

/// Geometric parameters of an elliptical conic, for rendering overlays.
#[derive(Debug, Clone, Copy)]
pub struct EllipseGeometry {
    pub center: Complex64,
    pub semi_major: f64,
    pub semi_minor: f64,
    /// Angle of the major axis against +x, radians.
    pub angle: f64,
}

/// Fit the best algebraic conic through `points` in the least-squares sense
/// (smallest eigenvector of the 6x6 scatter matrix of monomial rows).
///
/// Points are centered and scaled to unit RMS radius first; the residual is
/// reported in that frame. Coincident or collinear point sets are rejected
/// as segment-like degeneracies.
pub fn ellipse_fit(points: &[Complex64]) -> Result<ConicFit> {
    if points.len() < 6 {
        return Err(Error::InvalidParameter(format!(
            "conic fit needs at least 6 points, got {}",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let mut mean = Complex64::new(0.0, 0.0);
    for &p in points {
        mean += p;
    }
    mean /= n;
    let rms = (points.iter().map(|p| (p - mean).norm_sqr()).sum::<f64>() / n).sqrt();
    if rms < 1e-14 * (1.0 + mean.norm()) {
        return Err(Error::DegeneratePointSet("all points coincide".into()));
    }

    // Collinearity via the 2x2 covariance spread.
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &p in points {
        let q = p - mean;
        sxx += q.re * q.re;
        sxy += q.re * q.im;
        syy += q.im * q.im;
    }
    let tr = sxx + syy;
    let det = sxx * syy - sxy * sxy;
    // Smaller covariance eigenvalue relative to the larger one.
    let disc = ((sxx - syy) * (sxx - syy) + 4.0 * sxy * sxy).sqrt();
    let lam_min = (tr - disc) / 2.0;
    if lam_min <= 1e-18 * tr || det <= 0.0 {
        return Err(Error::DegeneratePointSet("points are collinear within tolerance".into()));
    }

    // Scatter matrix of monomial rows in the normalized frame.
    let mut m = [[0.0f64; 6]; 6];
    let mut rows: Vec<[f64; 6]> = Vec::with_capacity(points.len());
    for &p in points {
        let q = (p - mean) / rms;
        let row = [q.re * q.re, q.re * q.im, q.im * q.im, q.re, q.im, 1.0];
        for i in 0..6 {
            for j in i..6 {
                m[i][j] += row[i] * row[j];
            }
        }
        rows.push(row);
    }
    let mut scatter = ComplexMatrix::zeros(6);
    for i in 0..6 {
        for j in i..6 {
            scatter[(i, j)] = Complex64::new(m[i][j], 0.0);
            scatter[(j, i)] = Complex64::new(m[i][j], 0.0);
        }
    }
    let sys = hermitian_eig(&scatter, 1e-11)?;
    // Descending order: the last eigenvector belongs to the smallest
    // eigenvalue, i.e. the best-fitting coefficient direction.
    let v = &sys.eigenvectors[5];
    let mut coef = [0.0f64; 6];
    for (i, x) in v.iter().enumerate() {
        coef[i] = x.re;
    }
    let norm = coef.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in &mut coef {
        *x /= norm;
    }

    let residual = rows
        .iter()
        .map(|row| row.iter().zip(&coef).map(|(r, c)| r * c).sum::<f64>().abs())
        .fold(0.0, f64::max);

    let denorm = denormalize(&coef, mean, rms);
    let is_ellipse = coef[1] * coef[1] - 4.0 * coef[0] * coef[2] < 0.0;
    Ok(ConicFit { coefficients: denorm, residual, is_ellipse })
}

/// Transport unit coefficients from the (u, v) = ((x, y) - mean)/rms frame
/// back to (x, y), renormalized to a unit vector.
fn denormalize(c: &[f64; 6], mean: Complex64, rms: f64) -> [f64; 6] {
    let (a, b, cc, d, e, f) = (c[0], c[1], c[2], c[3], c[4], c[5]);
    let (mx, my) = (mean.re, mean.im);
    let s = 1.0 / rms;
    // u = s(x - mx), v = s(y - my)
    let a2 = a * s * s;
    let b2 = b * s * s;
    let c2 = cc * s * s;
    let d2 = -2.0 * a * s * s * mx - b * s * s * my + d * s;
    let e2 = -2.0 * cc * s * s * my - b * s * s * mx + e * s;
    let f2 = a * s * s * mx * mx + b * s * s * mx * my + cc * s * s * my * my
        - d * s * mx
        - e * s * my
        + f;
    let mut out = [a2, b2, c2, d2, e2, f2];
    let norm = out.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in &mut out {
        *x /= norm;
    }
    out
}

/// Evaluate the conic at a point.
pub fn conic_value(coef: &[f64; 6], p: Complex64) -> f64 {
    let (x, y) = (p.re, p.im);
    coef[0] * x * x + coef[1] * x * y + coef[2] * y * y + coef[3] * x + coef[4] * y + coef[5]
}

/// Recover center, semi-axes and orientation from elliptical coefficients.
pub fn conic_to_ellipse(coef: &[f64; 6]) -> Option<EllipseGeometry> {
    let (a, b, c, d, e, f) = (coef[0], coef[1], coef[2], coef[3], coef[4], coef[5]);
    let det_q = a * c - b * b / 4.0;
    if det_q <= 0.0 {
        return None;
    }
    let cx = (b * e / 2.0 - c * d) / (2.0 * det_q);
    let cy = (b * d / 2.0 - a * e) / (2.0 * det_q);
    let f0 = f + (d * cx + e * cy) / 2.0;
    // Eigenvalues of [[a, b/2], [b/2, c]].
    let tr = a + c;
    let disc = ((a - c) * (a - c) + b * b).sqrt();
    let mu1 = (tr - disc) / 2.0;
    let mu2 = (tr + disc) / 2.0;
    if mu1 * f0 >= 0.0 || mu2 * f0 >= 0.0 {
        return None;
    }
    let r1 = (-f0 / mu1).sqrt(); // along the mu1 eigenvector (major: smaller mu)
    let r2 = (-f0 / mu2).sqrt();
    let angle = if b.abs() < 1e-300 && a <= c {
        0.0
    } else {
        0.5 * (b).atan2(a - c) + std::f64::consts::FRAC_PI_2
    };
    Some(EllipseGeometry {
        center: Complex64::new(cx, cy),
        semi_major: r1.max(r2),
        semi_minor: r1.min(r2),
        angle: if r1 >= r2 { angle } else { angle + std::f64::consts::FRAC_PI_2 },
    })
}
