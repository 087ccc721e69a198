//! Support-spectrum solvers: one trait, several interchangeable backends.
//!
//! Everything downstream (half-plane intersections, genericity, the check
//! command) consumes eigenvalues of `Re(e^{i theta} A)` through
//! [`SupportSpectrum`]. Backends are registered by name and selected at
//! runtime; `auto` picks the most specific method for the input. The dense
//! Jacobi path stays available for every input so the closed forms can be
//! cross-validated against it.

use num_complex::Complex64;

use crate::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, TOL_EIG};
use crate::reciprocal::{ReciprocalSpec, ReciprocalSupport};
use crate::tridiagonal::{TwoPeriodicSupport, TwoPeriodicTridiagonal};

/// Eigenvalues of `Re(e^{i theta} A)`, largest first, for every angle.
pub trait SupportSpectrum: Send + Sync {
    fn dim(&self) -> usize;
    /// Registry name of the backing method.
    fn method(&self) -> &'static str;
    /// All `dim()` eigenvalues at this angle, non-increasing.
    fn support_values(&self, theta: f64) -> Result<Vec<f64>>;
}

/// A matrix description a solver can be built from.
#[derive(Debug, Clone)]
pub enum SpectrumInput {
    Dense(ComplexMatrix),
    TwoPeriodic(TwoPeriodicTridiagonal),
    Reciprocal(ReciprocalSpec),
    /// A normal matrix given by its spectrum.
    Normal(Vec<Complex64>),
}

impl SpectrumInput {
    pub fn dim(&self) -> usize {
        match self {
            SpectrumInput::Dense(m) => m.dim(),
            SpectrumInput::TwoPeriodic(t) => t.n,
            SpectrumInput::Reciprocal(r) => r.n,
            SpectrumInput::Normal(eigs) => eigs.len(),
        }
    }

    /// Universal dense realization (diagonal for the normal variant).
    pub fn to_dense(&self) -> ComplexMatrix {
        match self {
            SpectrumInput::Dense(m) => m.clone(),
            SpectrumInput::TwoPeriodic(t) => t.to_dense(),
            SpectrumInput::Reciprocal(r) => r.build().to_dense(),
            SpectrumInput::Normal(eigs) => ComplexMatrix::diagonal(eigs),
        }
    }
}

/// Dense oracle: full Jacobi eigensolve per angle. Works for every input.
pub struct DenseSupport {
    matrix: ComplexMatrix,
}

impl DenseSupport {
    pub fn new(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }
}

impl SupportSpectrum for DenseSupport {
    fn dim(&self) -> usize {
        self.matrix.dim()
    }

    fn method(&self) -> &'static str {
        "dense"
    }

    fn support_values(&self, theta: f64) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.matrix.rotated_real(theta), TOL_EIG)
    }
}

/// Normal matrices: `Re(e^{i theta} A)` is unitarily diagonal, so the
/// support values are the sorted projections of the spectrum.
pub struct NormalSupport {
    eigenvalues: Vec<Complex64>,
}

impl NormalSupport {
    pub fn new(eigenvalues: Vec<Complex64>) -> Self {
        Self { eigenvalues }
    }
}

impl SupportSpectrum for NormalSupport {
    fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    fn method(&self) -> &'static str {
        "normal"
    }

    fn support_values(&self, theta: f64) -> Result<Vec<f64>> {
        let w = Complex64::from_polar(1.0, theta);
        let mut vals: Vec<f64> = self.eigenvalues.iter().map(|&l| (w * l).re).collect();
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(vals)
    }
}

/// One registered method.
pub struct MethodEntry {
    pub name: &'static str,
    pub supports: fn(&SpectrumInput) -> bool,
    pub build: fn(&SpectrumInput) -> Result<Box<dyn SupportSpectrum>>,
}

/// Registered methods, most specific first; `auto` resolves to the first
/// entry that supports the input.
pub static METHODS: &[MethodEntry] = &[
    MethodEntry {
        name: "reciprocal",
        supports: |input| matches!(input, SpectrumInput::Reciprocal(_)),
        build: |input| match input {
            SpectrumInput::Reciprocal(spec) => Ok(Box::new(ReciprocalSupport::new(spec.clone()))),
            _ => Err(unsupported("reciprocal", input)),
        },
    },
    MethodEntry {
        name: "two-periodic",
        supports: |input| {
            matches!(input, SpectrumInput::TwoPeriodic(_) | SpectrumInput::Reciprocal(_))
        },
        build: |input| match input {
            SpectrumInput::TwoPeriodic(t) => Ok(Box::new(TwoPeriodicSupport::new(t))),
            SpectrumInput::Reciprocal(spec) => Ok(Box::new(TwoPeriodicSupport::new(&spec.build()))),
            _ => Err(unsupported("two-periodic", input)),
        },
    },
    MethodEntry {
        name: "normal",
        supports: |input| matches!(input, SpectrumInput::Normal(_)),
        build: |input| match input {
            SpectrumInput::Normal(eigs) => Ok(Box::new(NormalSupport::new(eigs.clone()))),
            _ => Err(unsupported("normal", input)),
        },
    },
    MethodEntry {
        name: "dense",
        supports: |_| true,
        build: |input| Ok(Box::new(DenseSupport::new(input.to_dense()))),
    },
];

fn unsupported(name: &str, input: &SpectrumInput) -> Error {
    let kind = match input {
        SpectrumInput::Dense(_) => "dense",
        SpectrumInput::TwoPeriodic(_) => "tridiag2p",
        SpectrumInput::Reciprocal(_) => "reciprocal",
        SpectrumInput::Normal(_) => "normal",
    };
    Error::InvalidParameter(format!("method '{name}' does not apply to {kind} input"))
}

pub fn method_names() -> Vec<&'static str> {
    let mut names = vec!["auto"];
    names.extend(METHODS.iter().map(|m| m.name));
    names
}

/// Build a solver by method name; `auto` selects the most specific
/// registered method for the input.
pub fn build_solver(method: &str, input: &SpectrumInput) -> Result<Box<dyn SupportSpectrum>> {
    if method == "auto" {
        let entry = METHODS
            .iter()
            .find(|m| (m.supports)(input))
            .expect("the dense method supports every input");
        return (entry.build)(input);
    }
    match METHODS.iter().find(|m| m.name == method) {
        Some(entry) => (entry.build)(input),
        None => Err(Error::InvalidParameter(format!(
            "unknown method '{method}' (known: {})",
            method_names().join(", ")
        ))),
    }
}
