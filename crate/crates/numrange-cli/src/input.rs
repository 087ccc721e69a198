//! JSON matrix input: one of four variants, complex scalars as [re, im]
//! pairs.

use num_complex::Complex64;
use numrange::{ComplexMatrix, ReciprocalSpec, SpectrumInput, TwoPeriodicTridiagonal};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// External input schema. Exactly one variant per file, e.g.
/// `{"reciprocal": {"n": 5, "a1": 2.0, "a2": 1.05}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum MatrixInput {
    Dense {
        n: usize,
        /// Row-major, n*n entries.
        entries: Vec<[f64; 2]>,
    },
    Tridiag2p {
        n: usize,
        a1: [f64; 2],
        a2: [f64; 2],
        b1: [f64; 2],
        c1: [f64; 2],
        b2: [f64; 2],
        c2: [f64; 2],
    },
    /// Either the moduli (a1, a2) or the derived parameters (A1, A2).
    Reciprocal {
        n: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        a1: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        a2: Option<f64>,
        #[serde(rename = "A1", skip_serializing_if = "Option::is_none")]
        big_a1: Option<f64>,
        #[serde(rename = "A2", skip_serializing_if = "Option::is_none")]
        big_a2: Option<f64>,
    },
    Normal {
        eigenvalues: Vec<[f64; 2]>,
    },
}

fn cx(pair: [f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

impl MatrixInput {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let input: MatrixInput =
            serde_json::from_str(text).map_err(|e| CliError::Input(format!("bad input JSON: {e}")))?;
        input.validate()?;
        Ok(input)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        match self {
            MatrixInput::Dense { n, entries } => {
                if *n == 0 {
                    return Err(CliError::Input("dense input needs n >= 1".into()));
                }
                if entries.len() != n * n {
                    return Err(CliError::Input(format!(
                        "dense input needs {} entries for n = {n}, got {}",
                        n * n,
                        entries.len()
                    )));
                }
            }
            MatrixInput::Tridiag2p { n, .. } => {
                if *n < 2 {
                    return Err(CliError::Input("tridiag2p input needs n >= 2".into()));
                }
            }
            MatrixInput::Reciprocal { n, a1, a2, big_a1, big_a2 } => {
                if *n < 2 {
                    return Err(CliError::Input("reciprocal input needs n >= 2".into()));
                }
                let moduli = (a1.is_some(), a2.is_some());
                let params = (big_a1.is_some(), big_a2.is_some());
                match (moduli, params) {
                    ((true, true), (false, false)) | ((false, false), (true, true)) => {}
                    _ => {
                        return Err(CliError::Input(
                            "reciprocal input needs exactly one parameterization: a1+a2 or A1+A2"
                                .into(),
                        ))
                    }
                }
            }
            MatrixInput::Normal { eigenvalues } => {
                if eigenvalues.is_empty() {
                    return Err(CliError::Input("normal input needs at least one eigenvalue".into()));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match self {
            MatrixInput::Dense { n, .. } => *n,
            MatrixInput::Tridiag2p { n, .. } => *n,
            MatrixInput::Reciprocal { n, .. } => *n,
            MatrixInput::Normal { eigenvalues } => eigenvalues.len(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MatrixInput::Dense { .. } => "dense",
            MatrixInput::Tridiag2p { .. } => "tridiag2p",
            MatrixInput::Reciprocal { .. } => "reciprocal",
            MatrixInput::Normal { .. } => "normal",
        }
    }

    pub fn to_spectrum_input(&self) -> Result<SpectrumInput, CliError> {
        self.validate()?;
        Ok(match self {
            MatrixInput::Dense { n, entries } => {
                let data: Vec<Complex64> = entries.iter().map(|&p| cx(p)).collect();
                SpectrumInput::Dense(
                    ComplexMatrix::new(*n, data).map_err(|e| CliError::Input(e.to_string()))?,
                )
            }
            MatrixInput::Tridiag2p { n, a1, a2, b1, c1, b2, c2 } => SpectrumInput::TwoPeriodic(
                TwoPeriodicTridiagonal::new(*n, cx(*a1), cx(*a2), (cx(*b1), cx(*c1)), (cx(*b2), cx(*c2)))
                    .map_err(|e| CliError::Input(e.to_string()))?,
            ),
            MatrixInput::Reciprocal { n, a1, a2, big_a1, big_a2 } => {
                let spec = match (a1, a2, big_a1, big_a2) {
                    (Some(a1), Some(a2), None, None) => ReciprocalSpec::from_moduli(*n, *a1, *a2),
                    (None, None, Some(b1), Some(b2)) => ReciprocalSpec::from_params(*n, *b1, *b2),
                    _ => unreachable!("validated above"),
                }
                .map_err(|e| CliError::Input(e.to_string()))?;
                SpectrumInput::Reciprocal(spec)
            }
            MatrixInput::Normal { eigenvalues } => {
                SpectrumInput::Normal(eigenvalues.iter().map(|&p| cx(p)).collect())
            }
        })
    }

    /// Dense realization for the operations that need eigenvectors.
    pub fn to_dense(&self) -> Result<ComplexMatrix, CliError> {
        Ok(self.to_spectrum_input()?.to_dense())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_round_trip_all_variants() {
        let samples = [
            r#"{"dense": {"n": 2, "entries": [[0,0],[1,0],[0,0],[0,0]]}}"#,
            r#"{"tridiag2p": {"n": 7, "a1": [0,0], "a2": [0,0], "b1": [3,0], "c1": [2,0], "b2": [6,0], "c2": [2,0]}}"#,
            r#"{"reciprocal": {"n": 5, "a1": 2.0, "a2": 1.05}}"#,
            r#"{"reciprocal": {"n": 6, "A1": 1.05, "A2": 1.62}}"#,
            r#"{"normal": {"eigenvalues": [[1,0],[0,1],[-1,0],[0,-1]]}}"#,
        ];
        for text in samples {
            let parsed = MatrixInput::parse(text).unwrap();
            let serialized = serde_json::to_string(&parsed).unwrap();
            let reparsed = MatrixInput::parse(&serialized).unwrap();
            assert_eq!(parsed, reparsed);
        }
    }

    #[test]
    fn rejects_malformed_inputs() {
        assert!(MatrixInput::parse("{").is_err());
        assert!(MatrixInput::parse(r#"{"dense": {"n": 2, "entries": [[0,0]]}}"#).is_err());
        assert!(MatrixInput::parse(r#"{"reciprocal": {"n": 4, "a1": 2.0, "A2": 1.5}}"#).is_err());
        assert!(MatrixInput::parse(r#"{"reciprocal": {"n": 4, "a1": 2.0}}"#).is_err());
        assert!(MatrixInput::parse(r#"{"normal": {"eigenvalues": []}}"#).is_err());
        assert!(MatrixInput::parse(r#"{"mystery": {}}"#).is_err());
    }

    #[test]
    fn tridiag_input_realizes_m4() {
        let text = r#"{"tridiag2p": {"n": 7, "a1": [0,0], "a2": [0,0], "b1": [3,0], "c1": [2,0], "b2": [6,0], "c2": [2,0]}}"#;
        let dense = MatrixInput::parse(text).unwrap().to_dense().unwrap();
        assert_eq!(dense[(0, 1)].re, 3.0);
        assert_eq!(dense[(1, 2)].re, 6.0);
        assert_eq!(dense[(1, 0)].re, 2.0);
    }
}
