use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix data has {got} entries, expected {expected} for dimension {n}")]
    BadDimensions { n: usize, expected: usize, got: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian: max |a_ij - conj(a_ji)| = {deviation:.3e} exceeds {tol:.3e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("matrix is not tridiagonal: nonzero entry at ({i}, {j})")]
    NotTridiagonal { i: usize, j: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps: off-diagonal mass {off:.3e}")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("vector is numerically zero (norm {norm:.3e})")]
    ZeroVector { norm: f64 },

    #[error(
        "eigenvalue {k} of Re(e^{{i theta}}A) is degenerate at theta = {theta:.12}: gap {gap:.3e} below {gap_tol:.3e}"
    )]
    DegenerateEigenvalue { theta: f64, k: usize, gap: f64, gap_tol: f64 },

    #[error("matrix is not generic: eigenvalue gap {gap:.3e} at theta = {theta:.12}")]
    NonGeneric { theta: f64, gap: f64 },

    #[error("degenerate point set: {0}")]
    DegeneratePointSet(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
