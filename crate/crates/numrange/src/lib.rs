//! Higher-rank numerical ranges and Kippenhahn curves of complex matrices.
//!
//! The rank-k numerical range of a matrix A is carved out of the plane by
//! the support lines `Re(e^{i theta} mu) <= lambda_k(theta)`, where
//! `lambda_k(theta)` is the k-th largest eigenvalue of `Re(e^{i theta} A)`;
//! for generic matrices the envelope of those lines splits into the closed
//! Kippenhahn-curve components traced by the Rayleigh quotients of the
//! corresponding eigenvectors.
//!
//! Support spectra come from interchangeable solver backends behind
//! [`spectrum::SupportSpectrum`]: the dense Jacobi eigensolver works for
//! every matrix and serves as the oracle, while 2-periodic tridiagonal and
//! reciprocal matrices get closed-form fast paths that the `check` tooling
//! cross-validates against it.

pub mod conic;
pub mod eigen;
pub mod error;
pub mod geometry;
pub mod matrix;
pub mod range;
pub mod reciprocal;
pub mod spectrum;
pub mod tridiagonal;

pub use num_complex::Complex64;

pub use conic::{conic_to_ellipse, conic_value, ellipse_fit, ConicFit, EllipseGeometry};
pub use eigen::{hermitian_eig, hermitian_eigenvalues, rayleigh, HermitianEigenSystem};
pub use error::{Error, Result};
pub use geometry::{region_hausdorff, ConvexRegion, RegionKind};
pub use matrix::{ComplexMatrix, TOL_EIG, TOL_HERM};
pub use range::{
    classify_3x3, curve_components, curve_intersections, default_region_tol, envelope_point,
    is_generic, kippenhahn_component, normal_range, rank_k_range, rank_k_range_with,
    sample_support, CurveComponent, GenericityReport, ShapeClass, ShapeReport, SupportSample,
    DEFAULT_GAP_TOL,
};
pub use reciprocal::{golden_test, ReciprocalSpec};
pub use spectrum::{build_solver, method_names, SpectrumInput, SupportSpectrum};
pub use tridiagonal::{q_roots, ClosedFormSpectrum, TwoPeriodicTridiagonal};
