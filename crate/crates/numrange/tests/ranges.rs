//! Regressions for the worked 3x3 and 5x5 matrices plus the structural
//! invariants of rank-k ranges and curve components.

mod common;

use common::*;
use num_complex::Complex64;
use numrange::geometry::{convex_hull, point_in_convex};
use numrange::range::intersection_snap_tol;
use numrange::reciprocal::hausdorff_points;
use numrange::*;
use rand::Rng;

const N: usize = 1024;

#[test]
fn m1_has_empty_rank_2_range_and_ovular_shape() {
    let a = m1();
    let report = classify_3x3(&a, N, 1e-6).unwrap();
    assert_eq!(report.class, ShapeClass::Ovular);
    assert!(report.generic);
    assert!(report.lambda2.is_empty());
    assert!(report.consistent);
    assert!(report.ellipse_residual.unwrap() > 1e-3);
}

#[test]
fn m2_is_elliptical_with_rank_2_point_at_zero() {
    let a = m2();
    let report = classify_3x3(&a, N, 1e-6).unwrap();
    assert_eq!(report.class, ShapeClass::EllipticalDisk);
    assert!(report.ellipse_residual.unwrap() <= 1e-10);
    match report.lambda2.kind {
        RegionKind::Point(center) => assert!(center.norm() <= 1e-6),
        ref other => panic!("expected point, got {other:?}"),
    }
    assert!(report.consistent);
    // The middle curve collapses onto the interior eigenvalue.
    let g2 = kippenhahn_component(&a, 2, N).unwrap();
    assert!(g2.points().iter().all(|p| p.norm() <= 1e-9));
}

#[test]
fn normal_3x3_classifies_as_other() {
    let a = ComplexMatrix::diagonal(&[re(0.0), re(1.0), c(0.0, 1.0)]);
    let report = classify_3x3(&a, N, 1e-6).unwrap();
    assert_eq!(report.class, ShapeClass::Other);
    assert!(!report.generic);
    assert!(report.lambda2.is_empty());
    assert!(report.consistent);
}

#[test]
fn m3_is_generic_with_intersecting_inner_components() {
    let a = m3();
    let gen = is_generic(&a, N, DEFAULT_GAP_TOL).unwrap();
    assert!(gen.is_generic, "min gap {:.3e}", gen.min_gap);

    let curves = curve_components(&a, N).unwrap();
    assert_eq!(curves.len(), 3);
    assert!(curves.iter().all(|c| c.closed));

    let snap = intersection_snap_tol(&curves[1], &curves[2]);
    assert!(!curve_intersections(&curves[1], &curves[2], snap).is_empty());
    // The outermost component strictly contains the second one.
    let snap01 = intersection_snap_tol(&curves[0], &curves[1]);
    assert!(curve_intersections(&curves[0], &curves[1], snap01).is_empty());

    // Odd n = 5: the middle range is empty because gamma_3 is not a point.
    let lambda3 = rank_k_range(&a, 3, N, default_region_tol(gen.scale)).unwrap();
    assert!(lambda3.is_empty());
}

#[test]
fn m4_components_are_closed_nested_with_point_middle() {
    let dense = m4().to_dense();
    let curves = curve_components(&dense, N).unwrap();
    assert_eq!(curves.len(), 4);
    assert!(curves.iter().all(|c| c.closed));
    // gamma_4 collapses to the (1,1) entry, zero here.
    assert!(curves[3].points().iter().all(|p| p.norm() <= 1e-9));
    // Nesting of the first three.
    for k in 0..2 {
        let hull = convex_hull(&curves[k].points());
        assert!(curves[k + 1]
            .points()
            .iter()
            .all(|&p| point_in_convex(p, &hull, 1e-9)));
    }
    // The outermost is convex: every sample sits on its own hull boundary.
    let pts = curves[0].points();
    let hull = convex_hull(&pts);
    let region = ConvexRegion { kind: RegionKind::Polygon(hull), tol: 1e-9 };
    let max_dev = pts.iter().map(|&p| region.distance_to(p)).fold(0.0, f64::max);
    assert!(max_dev <= 1e-9, "outer component deviates from convexity by {max_dev:.3e}");
}

#[test]
fn support_consistency_on_gamma_1() {
    // Re(e^{i theta} mu(theta)) = lambda_1(theta): gamma_1 is the boundary
    // of the numerical range.
    for a in [m1(), m2(), m3()] {
        let samples = sample_support(&a, 256).unwrap();
        for s in &samples {
            let p = rayleigh(&a, &s.spectrum.eigenvectors[0]).unwrap();
            let support = (Complex64::from_polar(1.0, s.theta) * p).re;
            assert!((support - s.spectrum.eigenvalues[0]).abs() <= 1e-8);
        }
    }
}

#[test]
fn chain_inclusion_and_emptiness_past_the_middle() {
    let mut rng = rng(29);
    for _ in 0..6 {
        let n = rng.random_range(3..=6);
        let a = random_matrix(&mut rng, n, 1.0);
        let gen = is_generic(&a, 256, DEFAULT_GAP_TOL).unwrap();
        if !gen.is_generic {
            continue;
        }
        let tol = default_region_tol(gen.scale);
        let half = n.div_ceil(2);
        let mut prev: Option<ConvexRegion> = None;
        for k in 1..=n {
            let region = rank_k_range(&a, k, 512, tol).unwrap();
            if k > half {
                assert!(region.is_empty(), "n={n} k={k} should be empty");
            }
            if let Some(ref outer) = prev {
                for p in region.points() {
                    assert!(
                        outer.contains(p, 10.0 * tol),
                        "n={n} k={k}: chain inclusion violated"
                    );
                }
            }
            prev = Some(region);
        }
    }
}

#[test]
fn strict_nesting_for_generic_matrices() {
    let a = m3();
    let gen = is_generic(&a, N, DEFAULT_GAP_TOL).unwrap();
    let tol = default_region_tol(gen.scale);
    let lambda1 = rank_k_range(&a, 1, N, tol).unwrap();
    let lambda2 = rank_k_range(&a, 2, N, tol).unwrap();
    let boundary = match &lambda1.kind {
        RegionKind::Polygon(v) => v.clone(),
        other => panic!("expected polygon, got {other:?}"),
    };
    // Every vertex of Lambda_2 keeps a positive distance from the boundary
    // of Lambda_1.
    for p in lambda2.points() {
        let mut dist = f64::INFINITY;
        for i in 0..boundary.len() {
            dist = dist.min(numrange::geometry::dist_point_segment(
                p,
                boundary[i],
                boundary[(i + 1) % boundary.len()],
            ));
        }
        assert!(dist > tol, "Lambda_2 vertex within {dist:.3e} of the Lambda_1 boundary");
    }
}

#[test]
fn envelope_equals_rayleigh_everywhere() {
    let mut rng = rng(31);
    for _ in 0..5 {
        let n = rng.random_range(2..=6);
        let a = random_matrix(&mut rng, n, 1.0);
        let samples = sample_support(&a, 64).unwrap();
        for s in &samples {
            for k in 1..=n {
                match envelope_point(&a, s, k) {
                    Ok(env) => {
                        let ray = rayleigh(&a, &s.spectrum.eigenvectors[k - 1]).unwrap();
                        assert!(
                            (env - ray).norm() <= 1e-9,
                            "envelope/rayleigh deviation {:.3e}",
                            (env - ray).norm()
                        );
                    }
                    Err(Error::DegenerateEigenvalue { .. }) => {}
                    Err(other) => panic!("unexpected error {other}"),
                }
            }
        }
    }
}

#[test]
fn unitary_similarity_invariance() {
    let mut rng = rng(37);
    let a = random_matrix(&mut rng, 4, 1.0);
    let u = random_unitary(&mut rng, 4);
    let b = conjugate(&a, &u);
    let gen = is_generic(&a, 512, DEFAULT_GAP_TOL).unwrap();
    assert!(gen.is_generic);
    let tol = default_region_tol(gen.scale);
    for k in 1..=2 {
        let ra = rank_k_range(&a, k, 512, tol).unwrap();
        let rb = rank_k_range(&b, k, 512, tol).unwrap();
        let d = region_hausdorff(&ra, &rb);
        assert!(d <= 1e-6, "k={k}: Hausdorff {d:.3e}");
    }
}

#[test]
fn grid_refinement_shrinks_the_polygon() {
    let a = m1();
    let areas: Vec<f64> = [256usize, 512, 1024]
        .iter()
        .map(|&n| rank_k_range(&a, 1, n, 1e-9).unwrap().area())
        .collect();
    // The coarser grid uses a subset of the finer grid's half-planes.
    assert!(areas[0] >= areas[1] - 1e-12);
    assert!(areas[1] >= areas[2] - 1e-12);
    // Quadratic convergence: quadrupling the sample count divides the area
    // excess by about 16; allow a generous factor.
    let d01 = areas[0] - areas[1];
    let d12 = areas[1] - areas[2];
    assert!(d12 <= d01 / 2.0, "refinement not contracting: {d01:.3e} -> {d12:.3e}");
}

#[test]
fn normal_range_agrees_with_half_planes_at_matched_resolution() {
    let mut rng = rng(41);
    for _ in 0..5 {
        let n = rng.random_range(3..=5);
        let eigs: Vec<Complex64> = (0..n).map(|_| random_complex(&mut rng, 0.9)).collect();
        for k in 1..=n.min(3) {
            let exact = normal_range(&eigs, k, 1e-6).unwrap();
            let grid = rank_k_range(&ComplexMatrix::diagonal(&eigs), k, 8192, 1e-6).unwrap();
            match (exact.is_empty(), grid.is_empty()) {
                (true, true) => {}
                (false, false) => {
                    let d = region_hausdorff(&exact, &grid);
                    // The half-plane route overshoots flat edges by up to
                    // (L/2) tan(2 pi / N).
                    assert!(d <= 2.0 * (std::f64::consts::TAU / 8192.0).tan() + 1e-6, "d = {d:.3e}");
                }
                (e, g) => panic!("emptiness mismatch: exact {e}, grid {g}"),
            }
        }
    }
}

#[test]
fn reciprocal_curves_symmetric_and_m1_is_not() {
    let spec = ReciprocalSpec::from_moduli(5, 2.0, 21.0 / 20.0).unwrap();
    let curves = curve_components(&spec.build().to_dense(), N).unwrap();
    let report = spec.symmetry_check(&curves, 1e-6);
    assert!(report.pass, "max deviation {:.3e}", report.max_deviation);
    assert!(report.middle_max_abs.unwrap() <= 1e-9);

    // Negative control: M_1 is real (so horizontally symmetric) but visibly
    // off-center, failing the vertical reflection.
    let m1_curves = curve_components(&m1(), N).unwrap();
    let pts = m1_curves[0].points();
    let reflected: Vec<Complex64> = pts.iter().map(|p| p.conj()).collect();
    let flipped: Vec<Complex64> = pts.iter().map(|p| -p.conj()).collect();
    assert!(hausdorff_points(&pts, &reflected) < 1e-9);
    assert!(hausdorff_points(&pts, &flipped) > 0.1);
}

#[test]
fn n6_reciprocal_inner_components_can_cross() {
    // Strong asymmetry with A_2 near 1 sends the inner component's tails
    // through the middle one.
    let spec = ReciprocalSpec::from_moduli(6, 2.0, 21.0 / 20.0).unwrap();
    let curves = curve_components(&spec.build().to_dense(), N).unwrap();
    let snap = intersection_snap_tol(&curves[1], &curves[2]);
    assert!(!curve_intersections(&curves[1], &curves[2], snap).is_empty());
    // While gamma_1 never meets gamma_2.
    let snap01 = intersection_snap_tol(&curves[0], &curves[1]);
    assert!(curve_intersections(&curves[0], &curves[1], snap01).is_empty());
}
