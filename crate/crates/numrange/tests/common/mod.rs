//! Shared fixtures and independent oracles for the integration suites.
#![allow(dead_code)]

use num_complex::Complex64;
use numrange::{ComplexMatrix, ReciprocalSpec, TwoPeriodicTridiagonal};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// 3x3 with an ovular numerical range and empty rank-2 range.
pub fn m1() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[0.0, -0.5, 0.0],
        &[2.0, 0.0, -0.5],
        &[0.0, 0.5, std::f64::consts::SQRT_2],
    ])
    .unwrap()
}

/// 3x3 with an elliptical numerical range and rank-2 range {0}.
pub fn m2() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 0.5, 0.0], &[0.5, 0.0, 2.0], &[0.0, 1.0, 0.0]]).unwrap()
}

/// Unbalanced 5x5 tridiagonal whose second and third curve components
/// intersect.
pub fn m3() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[1.0, 1.0, 0.0, 0.0, 0.0],
        &[0.25, 2.0, 0.5, 0.0, 0.0],
        &[0.0, 0.25, 0.0, 0.75, 0.0],
        &[0.0, 0.0, 0.25, -2.0, 1.0],
        &[0.0, 0.0, 0.0, 0.25, -1.0],
    ])
    .unwrap()
}

/// 7x7 zero-diagonal 2-periodic with pairs (3, 2), (6, 2).
pub fn m4() -> TwoPeriodicTridiagonal {
    TwoPeriodicTridiagonal::new(7, re(0.0), re(0.0), (re(3.0), re(2.0)), (re(6.0), re(2.0)))
        .unwrap()
}

/// Nilpotent Jordan block of size n.
pub fn jordan(n: usize) -> ComplexMatrix {
    let mut j = ComplexMatrix::zeros(n);
    for i in 0..n - 1 {
        j[(i, i + 1)] = re(1.0);
    }
    j
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut StdRng, scale: f64) -> Complex64 {
    Complex64::new(rng.random_range(-scale..scale), rng.random_range(-scale..scale))
}

pub fn random_matrix(rng: &mut StdRng, n: usize, scale: f64) -> ComplexMatrix {
    let data = (0..n * n).map(|_| random_complex(rng, scale)).collect();
    ComplexMatrix::new(n, data).unwrap()
}

pub fn random_hermitian(rng: &mut StdRng, n: usize, scale: f64) -> ComplexMatrix {
    random_matrix(rng, n, scale).rotated_real(0.0)
}

/// Random unitary via modified Gram-Schmidt on a random complex matrix.
pub fn random_unitary(rng: &mut StdRng, n: usize) -> ComplexMatrix {
    loop {
        let a = random_matrix(rng, n, 1.0);
        let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| a[(i, j)]).collect()).collect();
        let mut ok = true;
        for j in 0..n {
            for i in 0..j {
                let qi = cols[i].clone();
                let proj: Complex64 =
                    cols[j].iter().zip(&qi).map(|(&x, &q)| x * q.conj()).sum();
                for (x, q) in cols[j].iter_mut().zip(&qi) {
                    *x -= proj * q;
                }
            }
            let norm: f64 = cols[j].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-6 {
                ok = false;
                break;
            }
            for x in &mut cols[j] {
                *x /= norm;
            }
        }
        if !ok {
            continue;
        }
        let mut u = ComplexMatrix::zeros(n);
        for j in 0..n {
            for i in 0..n {
                u[(i, j)] = cols[j][i];
            }
        }
        return u;
    }
}

/// U* A U.
pub fn conjugate(a: &ComplexMatrix, u: &ComplexMatrix) -> ComplexMatrix {
    u.adjoint().matmul(&a.matmul(u).unwrap()).unwrap()
}

/// Random 2-periodic tridiagonal with unbalanced pairs: moduli separated by
/// at least 0.2 so the eigenvalue curves stay safely simple.
pub fn random_unbalanced(rng: &mut StdRng, n: usize) -> TwoPeriodicTridiagonal {
    let pair = |rng: &mut StdRng| {
        let big = rng.random_range(0.9..1.8);
        let small = rng.random_range(0.25..(big - 0.2));
        let (b_mod, c_mod) = if rng.random::<bool>() { (big, small) } else { (small, big) };
        (
            Complex64::from_polar(b_mod, rng.random_range(0.0..std::f64::consts::TAU)),
            Complex64::from_polar(c_mod, rng.random_range(0.0..std::f64::consts::TAU)),
        )
    };
    let a1 = random_complex(rng, 0.8);
    let a2 = random_complex(rng, 0.8);
    let p1 = pair(rng);
    let p2 = pair(rng);
    TwoPeriodicTridiagonal::new(n, a1, a2, p1, p2).unwrap()
}

pub fn random_reciprocal(rng: &mut StdRng, n: usize) -> ReciprocalSpec {
    ReciprocalSpec::from_params(n, rng.random_range(1.05..2.5), rng.random_range(1.05..2.5))
        .unwrap()
}

/// Independent eigenvalue oracle for Hermitian tridiagonal matrices: scan
/// det(xI - T) (real on the real axis) for sign changes over the Gershgorin
/// interval and bisect each bracket. Assumes simple roots.
pub fn charpoly_roots(t: &ComplexMatrix) -> Vec<f64> {
    let n = t.dim();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut radius = 0.0;
        if i > 0 {
            radius += t[(i, i - 1)].norm();
        }
        if i + 1 < n {
            radius += t[(i, i + 1)].norm();
        }
        lo = lo.min(t[(i, i)].re - radius);
        hi = hi.max(t[(i, i)].re + radius);
    }
    let span = (hi - lo).max(1e-12);
    lo -= 0.01 * span;
    hi += 0.01 * span;
    let p = |x: f64| t.tridiag_charpoly(x).unwrap().re;
    let grid = 20000 * n;
    let mut roots = Vec::new();
    let mut x_prev = lo;
    let mut p_prev = p(lo);
    for i in 1..=grid {
        let x = lo + (hi - lo) * i as f64 / grid as f64;
        let val = p(x);
        if p_prev == 0.0 {
            roots.push(x_prev);
        } else if p_prev * val < 0.0 {
            let (mut a, mut b) = (x_prev, x);
            let mut pa = p_prev;
            for _ in 0..200 {
                let mid = (a + b) / 2.0;
                let pm = p(mid);
                if pa * pm <= 0.0 {
                    b = mid;
                } else {
                    a = mid;
                    pa = pm;
                }
            }
            roots.push((a + b) / 2.0);
        }
        x_prev = x;
        p_prev = val;
    }
    roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
    roots
}
