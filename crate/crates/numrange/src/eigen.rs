//! Complex Hermitian eigensolver (cyclic Jacobi) and Rayleigh quotients.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, TOL_HERM};

/// Off-diagonal Frobenius mass, relative to ||H||_F, below which the sweep
/// iteration stops.
const SWEEP_STOP: f64 = 1e-13;
const MAX_SWEEPS: usize = 64;
/// Relative gap below which two sorted eigenvalues are flagged as ties.
const TIE_GAP: f64 = 1e-12;

/// Full eigensystem of one Hermitian matrix `Re(e^{i theta} A)`.
///
/// Eigenvalues are sorted in non-increasing order, counting multiplicity;
/// `eigenvectors[k]` is a unit vector for `eigenvalues[k]`, with its
/// largest-magnitude component normalized to be real positive so results are
/// reproducible. `ties` lists the indices k where the gap
/// `eigenvalues[k] - eigenvalues[k+1]` fell below the tie threshold.
#[derive(Debug, Clone)]
pub struct HermitianEigenSystem {
    pub theta: f64,
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<Complex64>>,
    pub ties: Vec<usize>,
}

impl HermitianEigenSystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Smallest gap between consecutive sorted eigenvalues.
    pub fn min_gap(&self) -> f64 {
        self.eigenvalues
            .windows(2)
            .map(|w| w[0] - w[1])
            .fold(f64::INFINITY, f64::min)
    }
}

/// Eigenvalues of a Hermitian matrix in non-increasing order.
///
/// Same Jacobi iteration as [`hermitian_eig`] without accumulating the
/// rotations, for grid scans that only need support values.
pub fn hermitian_eigenvalues(h: &ComplexMatrix, tol_eig: f64) -> Result<Vec<f64>> {
    let (values, _, _) = jacobi(h, tol_eig, false)?;
    Ok(values)
}

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// The sweeps target an off-diagonal mass of 1e-13 relative to ||H||_F,
/// well under the residual bound `tol_eig * ||H||` the result promises.
/// Errors if the input deviates from Hermitian beyond `TOL_HERM` (relative)
/// or the iteration cap is reached without meeting `tol_eig`.
pub fn hermitian_eig(h: &ComplexMatrix, tol_eig: f64) -> Result<HermitianEigenSystem> {
    hermitian_eig_at(h, 0.0, tol_eig)
}

/// Like [`hermitian_eig`], tagging the result with the rotation angle it
/// came from.
pub fn hermitian_eig_at(h: &ComplexMatrix, theta: f64, tol_eig: f64) -> Result<HermitianEigenSystem> {
    let (eigenvalues, vectors, ties) = jacobi(h, tol_eig, true)?;
    Ok(HermitianEigenSystem { theta, eigenvalues, eigenvectors: vectors.unwrap(), ties })
}

type EigenParts = (Vec<f64>, Option<Vec<Vec<Complex64>>>, Vec<usize>);

fn jacobi(h: &ComplexMatrix, tol_eig: f64, want_vectors: bool) -> Result<EigenParts> {
    let n = h.dim();
    let dev = h.hermitian_deviation();
    let scale = h.max_abs().max(f64::MIN_POSITIVE);
    if dev > TOL_HERM * scale {
        return Err(Error::NotHermitian { deviation: dev, tol: TOL_HERM * scale });
    }

    // Work on the exactly-symmetrized copy so the tolerated input asymmetry
    // cannot leak into the iteration.
    let mut w = h.rotated_real(0.0);
    let mut v = if want_vectors { Some(ComplexMatrix::identity(n)) } else { None };
    let fro = w.frobenius_norm();

    if n > 1 && fro > 0.0 {
        let stop = SWEEP_STOP * fro;
        let mut off = off_mass(&w);
        let mut sweeps = 0;
        while off > stop && sweeps < MAX_SWEEPS {
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut w, v.as_mut(), p, q);
                }
            }
            off = off_mass(&w);
            sweeps += 1;
        }
        // At the sweep cap the result is still acceptable while the
        // leftover off-diagonal mass stays within the promised residual.
        if off > stop && off > tol_eig * fro {
            return Err(Error::NoConvergence { sweeps, off });
        }
    }

    // Stable descending sort by diagonal value.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| w[(b, b)].re.partial_cmp(&w[(a, a)].re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&j| w[(j, j)].re).collect();

    let tie_tol = TIE_GAP * fro.max(f64::MIN_POSITIVE);
    let ties = eigenvalues
        .windows(2)
        .enumerate()
        .filter(|(_, pair)| pair[0] - pair[1] < tie_tol)
        .map(|(k, _)| k)
        .collect();

    let vectors = v.map(|v| {
        order
            .iter()
            .map(|&j| {
                let col: Vec<Complex64> = (0..n).map(|i| v[(i, j)]).collect();
                normalize_phase(col)
            })
            .collect()
    });

    Ok((eigenvalues, vectors, ties))
}

fn off_mass(w: &ComplexMatrix) -> f64 {
    let n = w.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            acc += 2.0 * w[(i, j)].norm_sqr();
        }
    }
    acc.sqrt()
}

/// One complex Jacobi rotation zeroing the (p, q) entry: W <- U* W U with
/// U = [[c z, s z], [-s, c]] on the (p, q) plane, where z is the phase of
/// w_pq and (c, s) the classic symmetric-Jacobi pair for the absolute value.
fn rotate(w: &mut ComplexMatrix, v: Option<&mut ComplexMatrix>, p: usize, q: usize) {
    let n = w.dim();
    let apq = w[(p, q)];
    let abs = apq.norm();
    if abs == 0.0 {
        return;
    }
    let z = apq / abs;
    let app = w[(p, p)].re;
    let aqq = w[(q, q)].re;
    let tau = (aqq - app) / (2.0 * abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let cz = z * c;
    let czc = z.conj() * c;
    let sz = z * s;
    let szc = z.conj() * s;

    // Rows: W <- U* W.
    for k in 0..n {
        let wpk = w[(p, k)];
        let wqk = w[(q, k)];
        w[(p, k)] = wpk * czc - wqk * s;
        w[(q, k)] = wpk * szc + wqk * c;
    }
    // Columns: W <- W U.
    for k in 0..n {
        let wkp = w[(k, p)];
        let wkq = w[(k, q)];
        w[(k, p)] = wkp * cz - wkq * s;
        w[(k, q)] = wkp * sz + wkq * c;
    }
    // The pivot is zero analytically; the diagonal is real analytically.
    w[(p, q)] = Complex64::new(0.0, 0.0);
    w[(q, p)] = Complex64::new(0.0, 0.0);
    w[(p, p)] = Complex64::new(w[(p, p)].re, 0.0);
    w[(q, q)] = Complex64::new(w[(q, q)].re, 0.0);

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * cz - vkq * s;
            v[(k, q)] = vkp * sz + vkq * c;
        }
    }
}

/// Rescale so the largest-magnitude component is real positive (first such
/// component on exact ties).
fn normalize_phase(mut v: Vec<Complex64>) -> Vec<Complex64> {
    let mut best = 0;
    let mut best_norm = 0.0;
    for (i, x) in v.iter().enumerate() {
        let nn = x.norm_sqr();
        if nn > best_norm {
            best_norm = nn;
            best = i;
        }
    }
    if best_norm > 0.0 {
        let phase = v[best] / v[best].norm();
        let inv = phase.conj();
        for x in &mut v {
            *x *= inv;
        }
        v[best] = Complex64::new(v[best].re, 0.0);
    }
    v
}

/// Rayleigh quotient `<A z, z> / <z, z>`; invariant under `z -> e^{i phi} z`
/// and under rescaling.
pub fn rayleigh(a: &ComplexMatrix, z: &[Complex64]) -> Result<Complex64> {
    let norm_sqr: f64 = z.iter().map(|x| x.norm_sqr()).sum();
    if norm_sqr < 1e-24 {
        return Err(Error::ZeroVector { norm: norm_sqr.sqrt() });
    }
    let az = a.mul_vec(z)?;
    let num: Complex64 = az.iter().zip(z).map(|(&ax, &x)| ax * x.conj()).sum();
    Ok(num / norm_sqr)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diag_permutation() {
        let h = ComplexMatrix::diagonal(&[c(3.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
        let sys = hermitian_eig(&h, 1e-11).unwrap();
        assert_eq!(sys.eigenvalues, vec![3.0, 2.0, 1.0]);
        // Eigenvectors are permuted standard basis vectors.
        assert!((sys.eigenvectors[0][0] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((sys.eigenvectors[1][2] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((sys.eigenvectors[2][1] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn symmetric_2x2() {
        let h = ComplexMatrix::from_real_rows(&[&[0.0, 0.5], &[0.5, 0.0]]).unwrap();
        let sys = hermitian_eig(&h, 1e-11).unwrap();
        assert!((sys.eigenvalues[0] - 0.5).abs() < 1e-14);
        assert!((sys.eigenvalues[1] + 0.5).abs() < 1e-14);
    }

    #[test]
    fn complex_hermitian_residuals() {
        let h = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.3, 0.7), c(-0.2, 0.1)],
            vec![c(0.3, -0.7), c(-0.5, 0.0), c(0.9, -0.4)],
            vec![c(-0.2, -0.1), c(0.9, 0.4), c(2.0, 0.0)],
        ])
        .unwrap();
        let sys = hermitian_eig(&h, 1e-11).unwrap();
        let scale = h.frobenius_norm();
        for k in 0..3 {
            let hv = h.mul_vec(&sys.eigenvectors[k]).unwrap();
            let res: f64 = hv
                .iter()
                .zip(&sys.eigenvectors[k])
                .map(|(&a, &b)| (a - b * sys.eigenvalues[k]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(res <= 1e-11 * scale, "residual {res:.3e}");
            // unit norm
            let nn: f64 = sys.eigenvectors[k].iter().map(|x| x.norm_sqr()).sum();
            assert!((nn - 1.0).abs() < 1e-12);
        }
        // orthogonality
        for j in 0..3 {
            for k in (j + 1)..3 {
                let ip: Complex64 = sys.eigenvectors[j]
                    .iter()
                    .zip(&sys.eigenvectors[k])
                    .map(|(&a, &b)| a * b.conj())
                    .sum();
                assert!(ip.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(hermitian_eig(&a, 1e-11), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn rayleigh_basics() {
        let id = ComplexMatrix::identity(4);
        let z = vec![c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0)];
        assert!((rayleigh(&id, &z).unwrap() - c(1.0, 0.0)).norm() < 1e-15);

        let d = ComplexMatrix::diagonal(&[c(2.0, 1.0), c(-3.0, 0.0)]);
        let e1 = vec![c(1.0, 0.0), c(0.0, 0.0)];
        assert!((rayleigh(&d, &e1).unwrap() - c(2.0, 1.0)).norm() < 1e-15);

        let zero = vec![c(0.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(rayleigh(&d, &zero), Err(Error::ZeroVector { .. })));
    }

    #[test]
    fn rayleigh_phase_invariance() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(0.1, 0.2), c(1.0, -0.3)],
            vec![c(-0.4, 0.0), c(0.0, 0.9)],
        ])
        .unwrap();
        let z = vec![c(0.6, 0.0), c(0.0, 0.8)];
        let base = rayleigh(&a, &z).unwrap();
        for &phi in &[0.1, 1.0, 2.5, 4.9] {
            let w = Complex64::from_polar(1.0, phi);
            let zz: Vec<Complex64> = z.iter().map(|&x| x * w).collect();
            assert!((rayleigh(&a, &zz).unwrap() - base).norm() < 1e-14);
        }
    }
}
