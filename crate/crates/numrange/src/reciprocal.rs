//! Reciprocal 2-periodic matrices: the tau-only spectrum, axis symmetry,
//! ellipticity predictions and the even-n probe.

use num_complex::Complex64;

use crate::conic::ellipse_fit;
use crate::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::matrix::TOL_EIG;
use crate::range::{curve_components, CurveComponent};
use crate::spectrum::SupportSpectrum;
use crate::tridiagonal::{q_roots, TwoPeriodicTridiagonal};

/// Golden ratio, for the 4x4 ellipticity criterion.
pub const PHI: f64 = 1.618033988749894848204586834365638118;

/// Reciprocal 2-periodic matrix: zero diagonal, off-diagonal pairs
/// (a_j, 1/a_j) with positive real moduli a1, a2. Everything about it is
/// determined by n and the derived parameters A_j = (a_j^2 + a_j^-2)/2 >= 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ReciprocalSpec {
    pub n: usize,
    pub a1: f64,
    pub a2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EllipsePrediction {
    Ellipse,
    NotEllipse,
    /// Even n with distinct parameters: not elliptical is conjectured, not
    /// proved.
    ConjecturedNotEllipse,
}

#[derive(Debug, Clone)]
pub struct ComponentPrediction {
    pub k: usize,
    pub prediction: EllipsePrediction,
    /// Predicted (x, y) semi-axes when the component is an exact ellipse.
    pub semi_axes: Option<(f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct ComponentSymmetry {
    pub k: usize,
    /// Hausdorff distance to the reflection across the horizontal axis.
    pub horizontal: f64,
    /// Hausdorff distance to the reflection across the vertical axis.
    pub vertical: f64,
}

#[derive(Debug, Clone)]
pub struct SymmetryReport {
    pub per_component: Vec<ComponentSymmetry>,
    /// Largest |point| on the collapsed middle component, for odd n.
    pub middle_max_abs: Option<f64>,
    pub max_deviation: f64,
    pub pass: bool,
}

/// One row of the even-n ellipticity probe.
#[derive(Debug, Clone)]
pub struct ProbeRow {
    pub k: usize,
    pub residual: f64,
    pub fitted_ellipse: bool,
    /// True when A1 = A2, i.e. the row sits outside the conjecture's
    /// hypotheses and is expected to be elliptical.
    pub control: bool,
}

impl ReciprocalSpec {
    pub fn from_moduli(n: usize, a1: f64, a2: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("reciprocal spec needs n >= 2, got {n}")));
        }
        if !(a1.is_finite() && a1 > 0.0) || !(a2.is_finite() && a2 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "reciprocal moduli must be positive, got a1 = {a1}, a2 = {a2}"
            )));
        }
        Ok(Self { n, a1, a2 })
    }

    /// Construct from the derived parameters A_j >= 1, picking the modulus
    /// a_j = sqrt(A_j + sqrt(A_j^2 - 1)) >= 1 (the pair {a, 1/a} gives the
    /// same matrix family).
    pub fn from_params(n: usize, big_a1: f64, big_a2: f64) -> Result<Self> {
        let modulus = |big: f64| -> Result<f64> {
            if !(big.is_finite() && big >= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "reciprocal parameter A must be >= 1, got {big}"
                )));
            }
            Ok((big + (big * big - 1.0).max(0.0).sqrt()).sqrt())
        };
        Self::from_moduli(n, modulus(big_a1)?, modulus(big_a2)?)
    }

    pub fn big_a1(&self) -> f64 {
        (self.a1 * self.a1 + 1.0 / (self.a1 * self.a1)) / 2.0
    }

    pub fn big_a2(&self) -> f64 {
        (self.a2 * self.a2 + 1.0 / (self.a2 * self.a2)) / 2.0
    }

    pub fn m(&self) -> usize {
        self.n / 2
    }

    /// Generic iff both parameters exceed one, i.e. both moduli differ
    /// from one.
    pub fn is_generic_spec(&self) -> bool {
        self.big_a1() > 1.0 + 1e-12 && self.big_a2() > 1.0 + 1e-12
    }

    /// Positive-real-entry realization: pairs (a_j, 1/a_j), zero diagonal.
    pub fn build(&self) -> TwoPeriodicTridiagonal {
        let zero = Complex64::new(0.0, 0.0);
        let re = |x: f64| Complex64::new(x, 0.0);
        TwoPeriodicTridiagonal::new(
            self.n,
            zero,
            zero,
            (re(self.a1), re(1.0 / self.a1)),
            (re(self.a2), re(1.0 / self.a2)),
        )
        .expect("n >= 2 was validated on construction")
    }

    /// `zeta_k = (A1 + A2 + 2 tau)/2 + sqrt((A1 + tau)(A2 + tau)) Q_k`;
    /// the matching eigenvalue pair is +-sqrt(zeta_k).
    pub fn zeta(&self, tau: f64, q_k: f64) -> f64 {
        let a1 = self.big_a1();
        let a2 = self.big_a2();
        0.5 * (a1 + a2 + 2.0 * tau) + ((a1 + tau).max(0.0) * (a2 + tau).max(0.0)).sqrt() * q_k
    }

    /// The Q parameters at this angle: Chebyshev nodes cos(k pi/(m+1)) for
    /// odd n, half the decreasing q-polynomial roots with
    /// r = sqrt((A2 + tau)/(A1 + tau)) for even n.
    pub fn q_values(&self, theta: f64) -> Result<Vec<f64>> {
        let m = self.m();
        if self.n % 2 == 1 {
            Ok((1..=m).map(|k| (k as f64 * std::f64::consts::PI / (m + 1) as f64).cos()).collect())
        } else {
            let tau = (2.0 * theta).cos();
            let denom = self.big_a1() + tau;
            if denom <= 1e-13 * self.big_a1() {
                return Err(Error::InvalidParameter(
                    "q ratio undefined: A1 + tau vanishes (non-generic spec at this angle)".into(),
                ));
            }
            let r = ((self.big_a2() + tau).max(0.0) / denom).sqrt();
            Ok(q_roots(r, m)?.into_iter().map(|x| x / 2.0).collect())
        }
    }

    /// Support values: sorted +-sqrt(zeta_k), plus zero when n is odd.
    /// Falls back to the dense eigensolver for the non-generic angle where
    /// the even-n ratio is undefined.
    pub fn support_values(&self, theta: f64) -> Result<Vec<f64>> {
        let tau = (2.0 * theta).cos();
        let q = match self.q_values(theta) {
            Ok(q) => q,
            Err(_) => {
                return hermitian_eigenvalues(&self.build().to_dense().rotated_real(theta), TOL_EIG)
            }
        };
        let mut vals = Vec::with_capacity(self.n);
        for &qk in &q {
            let root = self.zeta(tau, qk).max(0.0).sqrt();
            vals.push(root);
            vals.push(-root);
        }
        if self.n % 2 == 1 {
            vals.push(0.0);
        }
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(vals)
    }

    /// Which curve components are exact ellipses, with predicted semi-axes
    /// where the closed form provides them.
    ///
    /// Equal parameters: every component, semi-axes
    /// sqrt((A +- 1)(1 + Q_k)). Odd n with distinct parameters: none when
    /// n = 1 mod 4, exactly k = (n+1)/4 otherwise (there Q_k = 0, so
    /// zeta = tau + (A1+A2)/2). Even n with distinct parameters: conjectured
    /// none.
    pub fn elliptical_components(&self) -> Result<Vec<ComponentPrediction>> {
        if !self.is_generic_spec() {
            return Err(Error::InvalidParameter(format!(
                "non-generic reciprocal spec (A1 = {}, A2 = {}); predictions need A1, A2 > 1",
                self.big_a1(),
                self.big_a2()
            )));
        }
        let m = self.m();
        let a1 = self.big_a1();
        let a2 = self.big_a2();
        let equal = (a1 - a2).abs() <= 1e-12 * (a1 + a2);
        let mut out = Vec::with_capacity(m);
        if equal {
            let q = self.q_values(0.0)?;
            for k in 1..=m {
                let qk = q[k - 1];
                out.push(ComponentPrediction {
                    k,
                    prediction: EllipsePrediction::Ellipse,
                    semi_axes: Some((
                        ((a1 + 1.0) * (1.0 + qk)).sqrt(),
                        ((a1 - 1.0) * (1.0 + qk)).sqrt(),
                    )),
                });
            }
        } else if self.n % 2 == 1 {
            let special =
                if (self.n + 1).is_multiple_of(4) { Some((self.n + 1) / 4) } else { None };
            for k in 1..=m {
                if special == Some(k) {
                    let y = (a1 + a2) / 2.0;
                    out.push(ComponentPrediction {
                        k,
                        prediction: EllipsePrediction::Ellipse,
                        semi_axes: Some(((y + 1.0).sqrt(), (y - 1.0).sqrt())),
                    });
                } else {
                    out.push(ComponentPrediction {
                        k,
                        prediction: EllipsePrediction::NotEllipse,
                        semi_axes: None,
                    });
                }
            }
        } else {
            for k in 1..=m {
                out.push(ComponentPrediction {
                    k,
                    prediction: EllipsePrediction::ConjecturedNotEllipse,
                    semi_axes: None,
                });
            }
        }
        Ok(out)
    }

    /// Hausdorff distances between each sampled component and its
    /// reflections across the coordinate axes; for odd n also the size of
    /// the collapsed middle component. The sample grid is expected to be
    /// uniform over [0, 2pi) so reflections land on sample points.
    pub fn symmetry_check(&self, curves: &[CurveComponent], tol: f64) -> SymmetryReport {
        let middle_k = if self.n % 2 == 1 { Some(self.m() + 1) } else { None };
        let mut per_component = Vec::new();
        let mut middle_max_abs = None;
        let mut max_deviation: f64 = 0.0;
        for curve in curves {
            let pts: Vec<Complex64> = curve.samples.iter().map(|&(_, p)| p).collect();
            if Some(curve.k) == middle_k {
                let m = pts.iter().map(|p| p.norm()).fold(0.0, f64::max);
                middle_max_abs = Some(m);
                max_deviation = max_deviation.max(m);
                continue;
            }
            let flipped_h: Vec<Complex64> = pts.iter().map(|p| p.conj()).collect();
            let flipped_v: Vec<Complex64> = pts.iter().map(|p| -p.conj()).collect();
            let horizontal = hausdorff_points(&pts, &flipped_h);
            let vertical = hausdorff_points(&pts, &flipped_v);
            max_deviation = max_deviation.max(horizontal).max(vertical);
            per_component.push(ComponentSymmetry { k: curve.k, horizontal, vertical });
        }
        SymmetryReport {
            per_component,
            middle_max_abs,
            max_deviation,
            pass: max_deviation <= tol,
        }
    }

    /// Ellipse-fit residuals of every component, as numerical evidence for
    /// the even-n non-ellipticity conjecture. Equal-parameter specs are
    /// accepted as controls (they are genuinely elliptical).
    pub fn probe_ellipticity(&self, n_samples: usize) -> Result<Vec<ProbeRow>> {
        if !self.n.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "the ellipticity probe concerns even sizes; got n = {}",
                self.n
            )));
        }
        if !self.is_generic_spec() {
            return Err(Error::InvalidParameter(
                "the ellipticity probe needs a generic spec (A1, A2 > 1)".into(),
            ));
        }
        let control =
            (self.big_a1() - self.big_a2()).abs() <= 1e-12 * (self.big_a1() + self.big_a2());
        let curves = curve_components(&self.build().to_dense(), n_samples)?;
        let mut rows = Vec::new();
        for curve in curves.iter().take(self.m()) {
            let pts: Vec<Complex64> = curve.samples.iter().map(|&(_, p)| p).collect();
            let fit = ellipse_fit(&pts)?;
            rows.push(ProbeRow {
                k: curve.k,
                residual: fit.residual,
                fitted_ellipse: fit.is_ellipse,
                control,
            });
        }
        Ok(rows)
    }
}

/// Hausdorff distance between two finite point sets.
pub fn hausdorff_points(a: &[Complex64], b: &[Complex64]) -> f64 {
    let directed = |from: &[Complex64], to: &[Complex64]| {
        from.iter()
            .map(|&p| to.iter().map(|&q| (p - q).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    if a.is_empty() || b.is_empty() {
        return if a.is_empty() && b.is_empty() { 0.0 } else { f64::INFINITY };
    }
    directed(a, b).max(directed(b, a))
}

/// 4x4 reciprocal ellipticity criterion: `A2 = phi A1 - A3/phi` or
/// `A2 = phi A3 - A1/phi`, with at least one parameter strictly above one.
pub fn golden_test(big_a1: f64, big_a2: f64, big_a3: f64, tol: f64) -> bool {
    let first = (big_a2 - (PHI * big_a1 - big_a3 / PHI)).abs() <= tol;
    let second = (big_a2 - (PHI * big_a3 - big_a1 / PHI)).abs() <= tol;
    let strict = big_a1.max(big_a2).max(big_a3) > 1.0 + tol;
    (first || second) && strict
}

/// Closed-form support solver for reciprocal specs.
pub struct ReciprocalSupport {
    spec: ReciprocalSpec,
}

impl ReciprocalSupport {
    pub fn new(spec: ReciprocalSpec) -> Self {
        Self { spec }
    }

    pub fn spec(&self) -> &ReciprocalSpec {
        &self.spec
    }
}

impl SupportSpectrum for ReciprocalSupport {
    fn dim(&self) -> usize {
        self.spec.n
    }

    fn method(&self) -> &'static str {
        "reciprocal"
    }

    fn support_values(&self, theta: f64) -> Result<Vec<f64>> {
        self.spec.support_values(theta)
    }
}
