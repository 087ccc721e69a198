//! 2-periodic tridiagonal matrices and their closed-form support spectra.

use num_complex::Complex64;

use crate::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, TOL_EIG};
use crate::spectrum::SupportSpectrum;

/// Tridiagonal matrix whose diagonal entries and off-diagonal pairs repeat
/// with period two: diagonal (a1, a2, a1, ...), off-diagonal pairs
/// alternating (b1, c1), (b2, c2), (b1, c1), ... with b on the superdiagonal.
///
/// For n = 2 the second pair is structurally absent from the dense
/// realization and ignored by the spectral formulas.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPeriodicTridiagonal {
    pub n: usize,
    pub a1: Complex64,
    pub a2: Complex64,
    /// (superdiagonal entry, subdiagonal entry) for the two period slots.
    pub pairs: [(Complex64, Complex64); 2],
}

/// All eigenvalues of `Re(e^{i theta} T)` from the closed form, plus the Q
/// parameters that produced them.
#[derive(Debug, Clone)]
pub struct ClosedFormSpectrum {
    pub theta: f64,
    /// All n eigenvalues, non-increasing.
    pub lambdas: Vec<f64>,
    /// Q_1 > ... > Q_m as they enter the pair formula.
    pub q: Vec<f64>,
    /// True when the dense eigensolver was used for this angle because the
    /// first off-diagonal projection vanished (possible only for balanced
    /// pairs).
    pub used_fallback: bool,
}

impl TwoPeriodicTridiagonal {
    pub fn new(
        n: usize,
        a1: Complex64,
        a2: Complex64,
        pair1: (Complex64, Complex64),
        pair2: (Complex64, Complex64),
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("2-periodic tridiagonal needs n >= 2, got {n}")));
        }
        Ok(Self { n, a1, a2, pairs: [pair1, pair2] })
    }

    /// Dense realization: diagonal (a1, a2, a1, ...), superdiagonal
    /// (b1, b2, b1, ...), subdiagonal (c1, c2, c1, ...).
    pub fn to_dense(&self) -> ComplexMatrix {
        let n = self.n;
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = if i % 2 == 0 { self.a1 } else { self.a2 };
        }
        for i in 0..n - 1 {
            let (b, c) = self.pairs[i % 2];
            m[(i, i + 1)] = b;
            m[(i + 1, i)] = c;
        }
        m
    }

    /// `alpha_j(theta) = Re(e^{i theta} a_j)`, j in {1, 2}.
    pub fn alpha(&self, theta: f64, j: usize) -> Result<f64> {
        let a = match j {
            1 => self.a1,
            2 => self.a2,
            _ => return Err(Error::InvalidParameter(format!("alpha index must be 1 or 2, got {j}"))),
        };
        Ok((Complex64::from_polar(1.0, theta) * a).re)
    }

    /// `beta_j(theta) = (e^{i theta} b_j + e^{-i theta} conj(c_j)) / 2`.
    pub fn beta(&self, theta: f64, j: usize) -> Result<Complex64> {
        let (b, c) = match j {
            1 => self.pairs[0],
            2 => self.pairs[1],
            _ => return Err(Error::InvalidParameter(format!("beta index must be 1 or 2, got {j}"))),
        };
        let w = Complex64::from_polar(1.0, theta);
        Ok((w * b + w.conj() * c.conj()) * 0.5)
    }

    /// Swap each pair so its larger-modulus entry sits on the superdiagonal.
    /// The characteristic polynomial of every `Re(e^{i theta} .)` is
    /// preserved (it only sees the products b_j c_j).
    pub fn normalize_superdiagonal(&self) -> Self {
        let mut out = self.clone();
        for pair in &mut out.pairs {
            if pair.1.norm() > pair.0.norm() {
                *pair = (pair.1, pair.0);
            }
        }
        out
    }

    /// Unbalanced off-diagonal pairs: |b_j| != |c_j| for every pair present
    /// in the dense realization.
    pub fn is_unbalanced(&self) -> bool {
        let unbalanced = |(b, c): (Complex64, Complex64)| {
            let (nb, nc) = (b.norm(), c.norm());
            (nb - nc).abs() > 1e-12 * (nb + nc).max(f64::MIN_POSITIVE)
        };
        if self.n == 2 {
            unbalanced(self.pairs[0])
        } else {
            unbalanced(self.pairs[0]) && unbalanced(self.pairs[1])
        }
    }

    /// `conj(b1) c2 == c1 conj(b2)` within a relative tolerance. Makes the
    /// Q parameters angle-independent for even n.
    pub fn aas_condition(&self, tol: f64) -> bool {
        let (b1, c1) = self.pairs[0];
        let (b2, c2) = self.pairs[1];
        let lhs = b1.conj() * c2;
        let rhs = c1 * b2.conj();
        let scale = (lhs.norm() + rhs.norm()).max(f64::MIN_POSITIVE);
        (lhs - rhs).norm() <= tol * scale
    }

    fn pair_scale(&self) -> f64 {
        self.pairs.iter().map(|(b, c)| b.norm() + c.norm()).sum::<f64>() + self.a1.norm() + self.a2.norm()
    }

    /// All n eigenvalues of `Re(e^{i theta} T)` in closed form:
    /// the m = floor(n/2) pairs
    /// `(alpha1 + alpha2)/2 +- sqrt(((alpha1 - alpha2)/2)^2 + |beta1|^2 + |beta2|^2 + 2 |beta1 beta2| Q_k)`
    /// plus `alpha1` when n is odd, sorted non-increasing.
    ///
    /// For odd n, Q_k = cos(k pi / (m+1)). For even n the Q_k are implicit:
    /// half the decreasing roots of the polynomial q_m built from the ratio
    /// `r = |beta2/beta1|` (see [`q_roots`]; the recursion's variable runs
    /// over 2Q). When `beta1` vanishes while `beta2` does not (possible only
    /// for balanced pairs) the ratio blows up and the dense eigensolver is
    /// used for that angle, flagged in the result.
    pub fn closed_form_spectrum(&self, theta: f64) -> Result<ClosedFormSpectrum> {
        let n = self.n;
        let m = n / 2;
        let alpha1 = self.alpha(theta, 1)?;
        let alpha2 = self.alpha(theta, 2)?;
        let abs_b1 = self.beta(theta, 1)?.norm();
        let abs_b2 = if n == 2 { 0.0 } else { self.beta(theta, 2)?.norm() };
        let tiny = 1e-13 * self.pair_scale().max(f64::MIN_POSITIVE);

        let (q, used_fallback) = if n % 2 == 1 {
            let q = (1..=m).map(|k| (k as f64 * std::f64::consts::PI / (m + 1) as f64).cos()).collect();
            (q, false)
        } else if abs_b1 <= tiny && abs_b2 > tiny {
            // Dense fallback: the q recursion is undefined here.
            let lambdas = hermitian_eigenvalues(&self.to_dense().rotated_real(theta), TOL_EIG)?;
            return Ok(ClosedFormSpectrum { theta, lambdas, q: Vec::new(), used_fallback: true });
        } else {
            let r = if abs_b1 <= tiny { 0.0 } else { abs_b2 / abs_b1 };
            let q: Vec<f64> = q_roots(r, m)?.into_iter().map(|x| x / 2.0).collect();
            (q, false)
        };

        let mid = (alpha1 + alpha2) / 2.0;
        let delta = (alpha1 - alpha2) / 2.0;
        let mut lambdas = Vec::with_capacity(n);
        for &qk in &q {
            let d = delta * delta + abs_b1 * abs_b1 + abs_b2 * abs_b2 + 2.0 * abs_b1 * abs_b2 * qk;
            let s = d.max(0.0).sqrt();
            lambdas.push(mid + s);
            lambdas.push(mid - s);
        }
        if n % 2 == 1 {
            lambdas.push(alpha1);
        }
        lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(ClosedFormSpectrum { theta, lambdas, q, used_fallback })
    }
}

/// The m real roots of the recursion
/// `q_0 = 1, q_1(mu) = mu + r, q_{k+1}(mu) = mu q_k(mu) - q_{k-1}(mu)`,
/// in decreasing order.
///
/// That recursion is exactly the leading-principal-minor characteristic
/// recursion of the symmetric tridiagonal matrix with diagonal
/// (-r, 0, ..., 0) and unit off-diagonals, so the roots are computed as its
/// eigenvalues: guaranteed real and simple.
pub fn q_roots(r: f64, m: usize) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::InvalidParameter("q_roots needs m >= 1".into()));
    }
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::InvalidParameter(format!("q_roots needs r >= 0, got {r}")));
    }
    let mut j = ComplexMatrix::zeros(m);
    j[(0, 0)] = Complex64::new(-r, 0.0);
    for i in 0..m.saturating_sub(1) {
        j[(i, i + 1)] = Complex64::new(1.0, 0.0);
        j[(i + 1, i)] = Complex64::new(1.0, 0.0);
    }
    hermitian_eigenvalues(&j, TOL_EIG)
}

/// Closed-form support solver for 2-periodic tridiagonal matrices.
pub struct TwoPeriodicSupport {
    t: TwoPeriodicTridiagonal,
}

impl TwoPeriodicSupport {
    pub fn new(t: &TwoPeriodicTridiagonal) -> Self {
        Self { t: t.normalize_superdiagonal() }
    }

    pub fn matrix(&self) -> &TwoPeriodicTridiagonal {
        &self.t
    }
}

impl SupportSpectrum for TwoPeriodicSupport {
    fn dim(&self) -> usize {
        self.t.n
    }

    fn method(&self) -> &'static str {
        "two-periodic"
    }

    fn support_values(&self, theta: f64) -> Result<Vec<f64>> {
        Ok(self.t.closed_form_spectrum(theta)?.lambdas)
    }
}
