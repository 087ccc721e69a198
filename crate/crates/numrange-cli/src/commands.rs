//! Subcommand implementations shared by the binary and the test suites.

use std::fmt::Write as _;

use numrange::conic::ellipse_fit;
use numrange::range::{grid_radius, support_values_grid};
use numrange::reciprocal::EllipsePrediction;
use numrange::spectrum::build_solver;
use numrange::{
    classify_3x3, curve_components, kippenhahn_component, normal_range, region_hausdorff,
    ConvexRegion, CurveComponent, Error, RegionKind, SpectrumInput, DEFAULT_GAP_TOL,
};

use crate::input::MatrixInput;
use crate::output::{curves_csv, regions_csv, CurveJson, KeyedRegionJson, RegionJson};
use crate::svg::{curves_radius, SvgCanvas};
use crate::CliError;

/// Residual at or below which a fitted component counts as an exact ellipse.
pub const ELLIPSE_EXACT: f64 = 1e-8;
/// Residual at or above which a component is confidently not an ellipse.
pub const ELLIPSE_REJECT: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KSelect {
    All,
    One(usize),
}

impl std::str::FromStr for KSelect {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(KSelect::All);
        }
        s.parse::<usize>()
            .map_err(|_| format!("invalid k selector '{s}': expected a positive integer or 'all'"))
            .and_then(|k| if k >= 1 { Ok(KSelect::One(k)) } else { Err("k must be >= 1".into()) })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "svg" => Ok(Format::Svg),
            other => Err(format!("unknown format '{other}' (expected csv, json or svg)")),
        }
    }
}

fn map_err(e: Error) -> CliError {
    match e {
        Error::DegenerateEigenvalue { .. } | Error::NonGeneric { .. } => {
            CliError::NonGeneric(e.to_string())
        }
        other => CliError::Internal(other.to_string()),
    }
}

/// `range`: rank-k region(s) in the requested format.
pub fn run_range(
    input: &MatrixInput,
    k: KSelect,
    samples: usize,
    tol_rel: f64,
    method: &str,
    format: Format,
) -> Result<String, CliError> {
    let spec_input = input.to_spectrum_input()?;
    let solver = build_solver(method, &spec_input).map_err(|e| CliError::Input(e.to_string()))?;
    let n = solver.dim();
    let values = support_values_grid(solver.as_ref(), samples).map_err(map_err)?;
    let radius = grid_radius(&values);
    let tol = tol_rel * (1.0 + radius);

    let ks: Vec<usize> = match k {
        KSelect::All => (1..=n).collect(),
        KSelect::One(k) => {
            if k > n {
                return Err(CliError::Input(format!("k = {k} exceeds the dimension {n}")));
            }
            vec![k]
        }
    };
    let mut regions = Vec::new();
    for &k in &ks {
        let region = numrange::range::rank_k_range_from_values(&values, k, tol).map_err(map_err)?;
        regions.push((k, region));
    }

    Ok(match format {
        Format::Json => {
            if let (KSelect::One(_), [(_, region)]) = (k, regions.as_slice()) {
                serde_json::to_string_pretty(&RegionJson::from_region(region)).unwrap() + "\n"
            } else {
                let keyed: Vec<KeyedRegionJson> = regions
                    .iter()
                    .map(|(k, r)| KeyedRegionJson { k: *k, region: RegionJson::from_region(r) })
                    .collect();
                serde_json::to_string_pretty(&keyed).unwrap() + "\n"
            }
        }
        Format::Csv => {
            let rows: Vec<(usize, &ConvexRegion)> =
                regions.iter().map(|(k, r)| (*k, r)).collect();
            regions_csv(&rows)
        }
        Format::Svg => {
            let mut canvas = SvgCanvas::new(radius);
            let mut legend = Vec::new();
            for (k, region) in &regions {
                canvas.region(region, *k);
                legend.push((*k, format!("Lambda_{k}: {}", kind_name(region))));
            }
            canvas.legend(&legend);
            canvas.finish(&format!("rank-k numerical ranges ({})", input.kind()))
        }
    })
}

fn kind_name(region: &ConvexRegion) -> &'static str {
    match region.kind {
        RegionKind::Empty => "empty",
        RegionKind::Point(_) => "point",
        RegionKind::Segment(..) => "segment",
        RegionKind::Polygon(_) => "polygon",
    }
}

/// `curve`: Kippenhahn components in the requested format.
pub fn run_curve(
    input: &MatrixInput,
    k: KSelect,
    samples: usize,
    format: Format,
    overlay_fits: bool,
) -> Result<String, CliError> {
    let dense = input.to_dense()?;
    let half = dense.dim().div_ceil(2);
    let curves: Vec<CurveComponent> = match k {
        KSelect::All => curve_components(&dense, samples).map_err(map_err)?,
        KSelect::One(k) => {
            if k > half {
                return Err(CliError::Input(format!(
                    "curve index k = {k} exceeds ceil(n/2) = {half}"
                )));
            }
            vec![kippenhahn_component(&dense, k, samples).map_err(map_err)?]
        }
    };

    Ok(match format {
        Format::Csv => curves_csv(&curves.iter().collect::<Vec<_>>()),
        Format::Json => {
            let list: Vec<CurveJson> = curves.iter().map(CurveJson::from_component).collect();
            serde_json::to_string_pretty(&list).unwrap() + "\n"
        }
        Format::Svg => render_curves_svg(&curves, overlay_fits, &format!("Kippenhahn curve ({})", input.kind())),
    })
}

pub fn render_curves_svg(curves: &[CurveComponent], overlay_fits: bool, title: &str) -> String {
    let mut canvas = SvgCanvas::new(curves_radius(curves));
    let mut legend = Vec::new();
    for curve in curves {
        canvas.curve(curve);
        legend.push((curve.k, format!("gamma_{}", curve.k)));
    }
    if overlay_fits {
        for curve in curves {
            if let Ok(fit) = ellipse_fit(&curve.points()) {
                // Dotted fits only where the component looks elliptical but
                // is not one.
                if fit.is_ellipse && fit.residual > ELLIPSE_EXACT && fit.residual < 5e-2 {
                    canvas.fit_overlay(&fit.coefficients);
                }
            }
        }
    }
    canvas.legend(&legend);
    canvas.finish(title)
}

struct Report {
    text: String,
    failed: bool,
}

impl Report {
    fn new() -> Self {
        Report { text: String::new(), failed: false }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn check(&mut self, label: &str, value: f64, bound: f64) {
        let ok = value <= bound;
        if !ok {
            self.failed = true;
        }
        let _ = writeln!(
            self.text,
            "{label}: {value:.3e} [{} <= {bound:.1e}]",
            if ok { "PASS" } else { "FAIL" }
        );
    }

    fn verdict(&mut self, label: &str, ok: bool, detail: &str) {
        if !ok {
            self.failed = true;
        }
        let _ = writeln!(self.text, "{label}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
    }
}

/// `check`: cross-validation report; Err(CheckFailed) when an invariant
/// fails.
pub fn run_check(
    input: &MatrixInput,
    samples: usize,
    tol_rel: f64,
    method: &str,
) -> Result<String, CliError> {
    let spec_input = input.to_spectrum_input()?;
    let solver = build_solver(method, &spec_input).map_err(|e| CliError::Input(e.to_string()))?;
    let dense = spec_input.to_dense();
    let n = dense.dim();
    let mut report = Report::new();
    report.line(format!("input: {} (n = {n})", input.kind()));
    report.line(format!("method: {} (requested {method})", solver.method()));

    // Genericity from the selected solver.
    let gen = numrange::range::is_generic_with(solver.as_ref(), samples.max(360), DEFAULT_GAP_TOL)
        .map_err(map_err)?;
    report.line(format!(
        "genericity: {} (min gap {:.3e} at theta {:.6}, scale {:.3e})",
        if gen.is_generic { "generic" } else { "NOT generic" },
        gen.min_gap,
        gen.argmin_theta,
        gen.scale
    ));

    // Closed-form backends against the dense oracle.
    if solver.method() != "dense" {
        let oracle = build_solver("dense", &spec_input).unwrap();
        let fast = support_values_grid(solver.as_ref(), samples.max(360)).map_err(map_err)?;
        let slow = support_values_grid(oracle.as_ref(), samples.max(360)).map_err(map_err)?;
        let mut dev: f64 = 0.0;
        for (a, b) in fast.iter().zip(&slow) {
            for (x, y) in a.iter().zip(b) {
                dev = dev.max((x - y).abs());
            }
        }
        report.check("closed-form vs dense oracle", dev, 1e-8);
    }

    match &spec_input {
        SpectrumInput::TwoPeriodic(t) => {
            report.line(format!("aas condition: {}", t.aas_condition(1e-12)));
            report.line(format!("unbalanced pairs: {}", t.is_unbalanced()));
            if !t.is_unbalanced() {
                report.line("warning: balanced off-diagonal pair; genericity is not guaranteed");
            }
        }
        SpectrumInput::Reciprocal(spec) => {
            report.line(format!(
                "parameters: A1 = {:.6}, A2 = {:.6} ({})",
                spec.big_a1(),
                spec.big_a2(),
                if spec.is_generic_spec() { "generic" } else { "NOT generic" }
            ));
            if spec.is_generic_spec() {
                let curves = curve_components(&dense, samples.max(512)).map_err(map_err)?;
                let sym = spec.symmetry_check(&curves, 1e-6);
                report.check("axis symmetry (Hausdorff)", sym.max_deviation, 1e-6);
                if let Some(mid) = sym.middle_max_abs {
                    report.check("middle component collapse |gamma_(m+1)|", mid, 1e-6);
                }
                let preds = spec.elliptical_components().map_err(map_err)?;
                for pred in &preds {
                    let pts = curves[pred.k - 1].points();
                    match ellipse_fit(&pts) {
                        Ok(fit) => match pred.prediction {
                            EllipsePrediction::Ellipse => report.verdict(
                                &format!("gamma_{} predicted ellipse", pred.k),
                                fit.residual <= ELLIPSE_EXACT,
                                &format!("residual {:.3e}", fit.residual),
                            ),
                            EllipsePrediction::NotEllipse => report.verdict(
                                &format!("gamma_{} predicted not an ellipse", pred.k),
                                fit.residual >= ELLIPSE_REJECT,
                                &format!("residual {:.3e}", fit.residual),
                            ),
                            EllipsePrediction::ConjecturedNotEllipse => report.line(format!(
                                "gamma_{} conjectured not an ellipse: residual {:.3e} (reported only)",
                                pred.k, fit.residual
                            )),
                        },
                        Err(e) => report.line(format!("gamma_{} fit: {e}", pred.k)),
                    }
                }
            }
        }
        SpectrumInput::Normal(eigs) => {
            let tol = tol_rel * (1.0 + gen.scale);
            let diameter = {
                let mut d = 0.0f64;
                for i in 0..eigs.len() {
                    for j in (i + 1)..eigs.len() {
                        d = d.max((eigs[i] - eigs[j]).norm());
                    }
                }
                d
            };
            let bound =
                diameter / 2.0 * (std::f64::consts::TAU / samples as f64).tan() + 10.0 * tol;
            for k in 1..=n.div_ceil(2) {
                let exact = normal_range(eigs, k, tol).map_err(map_err)?;
                let values = support_values_grid(solver.as_ref(), samples).map_err(map_err)?;
                let grid = numrange::range::rank_k_range_from_values(&values, k, tol)
                    .map_err(map_err)?;
                match (exact.is_empty(), grid.is_empty()) {
                    (true, true) => report.line(format!("Lambda_{k}: empty (both routes)")),
                    (false, false) => report.check(
                        &format!("Lambda_{k} subset-hull vs half-plane Hausdorff"),
                        region_hausdorff(&exact, &grid),
                        bound,
                    ),
                    (e, g) => report.verdict(
                        &format!("Lambda_{k} emptiness agreement"),
                        false,
                        &format!("subset-hull empty = {e}, half-plane empty = {g}"),
                    ),
                }
            }
        }
        SpectrumInput::Dense(a) => {
            if n == 3 {
                let shape = classify_3x3(a, samples.max(512), 1e-6).map_err(map_err)?;
                report.line(format!(
                    "shape: {:?}, Lambda_2 {}",
                    shape.class,
                    kind_name(&shape.lambda2)
                ));
                report.verdict(
                    "rank-2 range vs shape classification",
                    shape.consistent,
                    "nonempty exactly for elliptical disks",
                );
            }
        }
    }

    // Odd middle classification for generic inputs.
    if gen.is_generic && n % 2 == 1 {
        let tol = tol_rel * (1.0 + gen.scale);
        let mid = n.div_ceil(2);
        let values = support_values_grid(solver.as_ref(), samples).map_err(map_err)?;
        let region =
            numrange::range::rank_k_range_from_values(&values, mid, tol).map_err(map_err)?;
        report.line(format!("Lambda_{mid} (odd middle): {}", kind_name(&region)));
        match kippenhahn_component(&dense, mid, samples) {
            Ok(curve) => {
                let span = {
                    let pts = curve.points();
                    let (d, _, _) = numrange::geometry::diameter(&pts);
                    d
                };
                let is_point = span <= 10.0 * tol;
                report.verdict(
                    "odd-middle consistency",
                    is_point != region.is_empty(),
                    &format!("gamma_{mid} diameter {span:.3e}"),
                );
            }
            Err(e) => report.line(format!("gamma_{mid} not traced: {e}")),
        }
    }

    if report.failed {
        Err(CliError::CheckFailed(report.text))
    } else {
        Ok(report.text)
    }
}

/// `probe-conjecture`: residual table for the even-n reciprocal
/// non-ellipticity conjecture.
pub fn run_probe(input: &MatrixInput, samples: usize) -> Result<String, CliError> {
    let spec_input = input.to_spectrum_input()?;
    let spec = match spec_input {
        SpectrumInput::Reciprocal(spec) => spec,
        _ => {
            return Err(CliError::Input(
                "probe-conjecture needs a reciprocal input".into(),
            ))
        }
    };
    let rows = spec.probe_ellipticity(samples).map_err(|e| match e {
        Error::InvalidParameter(msg) => CliError::Input(msg),
        other => map_err(other),
    })?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "n = {}, A1 = {:.6}, A2 = {:.6}{}",
        spec.n,
        spec.big_a1(),
        spec.big_a2(),
        if rows.first().is_some_and(|r| r.control) { " (control: A1 = A2)" } else { "" }
    );
    let _ = writeln!(out, "{:>3}  {:>12}  conic family", "k", "residual");
    for row in &rows {
        let _ = writeln!(
            out,
            "{:>3}  {:>12.4e}  {}",
            row.k,
            row.residual,
            if row.fitted_ellipse { "elliptical" } else { "non-elliptical" }
        );
    }
    let _ = writeln!(
        out,
        "residual <= {ELLIPSE_EXACT:.0e} marks an exact ellipse; >= {ELLIPSE_REJECT:.0e} a confident rejection"
    );
    Ok(out)
}
