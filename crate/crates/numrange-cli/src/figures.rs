//! The built-in figure gallery: the four worked example matrices and the
//! reciprocal parameter sets, rendered as SVG curve plots.

use std::path::Path;

use crate::commands::render_curves_svg;
use crate::input::MatrixInput;
use crate::CliError;
use numrange::curve_components;

fn pair(re: f64) -> [f64; 2] {
    [re, 0.0]
}

/// (file stem, input, dotted best-fit overlays)
pub fn gallery() -> Vec<(&'static str, MatrixInput, bool)> {
    let dense = |rows: Vec<Vec<f64>>| MatrixInput::Dense {
        n: rows.len(),
        entries: rows.into_iter().flatten().map(|x| [x, 0.0]).collect(),
    };
    vec![
        (
            "m1",
            dense(vec![
                vec![0.0, -0.5, 0.0],
                vec![2.0, 0.0, -0.5],
                vec![0.0, 0.5, std::f64::consts::SQRT_2],
            ]),
            false,
        ),
        (
            "m2",
            dense(vec![vec![0.0, 0.5, 0.0], vec![0.5, 0.0, 2.0], vec![0.0, 1.0, 0.0]]),
            false,
        ),
        (
            "m3",
            dense(vec![
                vec![1.0, 1.0, 0.0, 0.0, 0.0],
                vec![0.25, 2.0, 0.5, 0.0, 0.0],
                vec![0.0, 0.25, 0.0, 0.75, 0.0],
                vec![0.0, 0.0, 0.25, -2.0, 1.0],
                vec![0.0, 0.0, 0.0, 0.25, -1.0],
            ]),
            false,
        ),
        (
            "m4",
            MatrixInput::Tridiag2p {
                n: 7,
                a1: pair(0.0),
                a2: pair(0.0),
                b1: pair(3.0),
                c1: pair(2.0),
                b2: pair(6.0),
                c2: pair(2.0),
            },
            false,
        ),
        ("recip_n4_a2.00_a1.05", recip_moduli(4, 2.0, 21.0 / 20.0), true),
        ("recip_n5_a2.00_a1.05", recip_moduli(5, 2.0, 21.0 / 20.0), true),
        ("recip_n6_A1.25_A1.50", recip_params(6, 1.25, 1.5), true),
        ("recip_n6_A1.05_A1.62", recip_params(6, 1.05, 1.62), true),
        ("recip_n7_A1.05_A1.62", recip_params(7, 1.05, 1.62), true),
        ("recip_n7_A2.00_A1.50", recip_params(7, 2.0, 1.5), true),
    ]
}

fn recip_moduli(n: usize, a1: f64, a2: f64) -> MatrixInput {
    MatrixInput::Reciprocal { n, a1: Some(a1), a2: Some(a2), big_a1: None, big_a2: None }
}

fn recip_params(n: usize, big_a1: f64, big_a2: f64) -> MatrixInput {
    MatrixInput::Reciprocal { n, a1: None, a2: None, big_a1: Some(big_a1), big_a2: Some(big_a2) }
}

/// Render every gallery figure into `dir` as `<stem>.svg`; byte-identical
/// across runs for a fixed sample count.
pub fn render_all(dir: &Path, samples: usize) -> Result<Vec<String>, CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for (stem, input, overlays) in gallery() {
        let dense = input.to_dense()?;
        let curves = curve_components(&dense, samples)
            .map_err(|e| CliError::Internal(format!("{stem}: {e}")))?;
        let svg = render_curves_svg(&curves, overlays, stem);
        let path = dir.join(format!("{stem}.svg"));
        std::fs::write(&path, svg)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        written.push(path.display().to_string());
    }
    Ok(written)
}
