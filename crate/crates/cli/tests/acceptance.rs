//! Acceptance suite: one test per exit criterion, each printing a
//! `[criterion N] PASS` line (visible with `--nocapture`) on success.
//!
//! Run with:
//!   cargo test -p reflector-cli --test acceptance -- --nocapture

use std::fs;
use std::process::Command;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use reflector_core::geometry::{
    build_rotation, disk_triangle_overlap, point_in_triangle, reflect_unit_z, AzEl, Point2,
    Triangle2D, Vec3,
};
use reflector_core::mesh::{generate_synthetic_mesh, SyntheticMeshParams};
use reflector_core::reception::{evaluate_reception, Region, SurfaceKind};
use reflector_core::shape::{
    evaluate_proportion, fit_parabola, loss, solve_proportion, TelescopeConstants,
    DEFAULT_LOSS_STEP,
};
use reflector_core::tolerances::PROPORTION_RESOLUTION;

const REFERENCE_A: f64 = 0.0017809;
const REFERENCE_C: f64 = -300.79084;
const REFERENCE_DIRECTION: (f64, f64) = (36.795, 78.169);
const REFERENCE_MATRIX: [[f64; 3]; 3] = [
    [0.9862209828, 0.0, -0.1654332887],
    [-0.02031535173, 0.9924313308, -0.1211087944],
    [0.1641811789, 0.1228008697, 0.9787566025],
];
const REFERENCE_VERTEX: [f64; 3] = [-49.3842, -36.9373, -294.4010];

fn constants() -> TelescopeConstants {
    TelescopeConstants::default()
}

fn reference_frame() -> reflector_core::geometry::RotationFrame {
    build_rotation(AzEl::new(REFERENCE_DIRECTION.0, REFERENCE_DIRECTION.1).unwrap()).unwrap()
}

#[test]
fn criterion_1_parabola_fit_reproduction() {
    let start = Instant::now();
    let coeffs = fit_parabola(&constants()).unwrap();
    let elapsed = start.elapsed();

    assert!(
        (coeffs.a - REFERENCE_A).abs() <= 5e-5,
        "a = {} is outside ±5e-5 of {REFERENCE_A}",
        coeffs.a
    );
    assert!(
        (coeffs.c - REFERENCE_C).abs() <= 0.05,
        "c = {} is outside ±0.05 of {REFERENCE_C}",
        coeffs.c
    );
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "fit took {elapsed:?}, limit 1 s"
    );
    println!(
        "[criterion 1] PASS: a = {:.8}, c = {:.5}, fitted in {elapsed:?}",
        coeffs.a, coeffs.c
    );
}

#[test]
fn criterion_2_rotation_reproduction() {
    let frame = reference_frame();
    let rows = frame.rows();
    for i in 0..3 {
        let row = [rows[i].x, rows[i].y, rows[i].z];
        for j in 0..3 {
            assert!(
                (row[j] - REFERENCE_MATRIX[i][j]).abs() <= 1e-6,
                "entry ({i},{j}) = {} differs from reference {}",
                row[j],
                REFERENCE_MATRIX[i][j]
            );
        }
    }

    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    for _ in 0..10_000 {
        let dir = AzEl::new(rng.random_range(0.0..360.0), rng.random_range(1e-6..=90.0)).unwrap();
        let f = build_rotation(dir).unwrap();
        let r = f.rows();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (r[i].dot(r[j]) - expected).abs() <= 1e-9,
                    "orthonormality at {dir:?}"
                );
            }
        }
        let det = r[0].dot(r[1].cross(r[2]));
        assert!((det - 1.0).abs() <= 1e-9, "det at {dir:?}");
        let mapped = f.apply(dir.unit_vector());
        assert!(
            (mapped - Vec3::new(0.0, 0.0, 1.0)).norm() <= 1e-9,
            "alignment at {dir:?}"
        );
    }
    println!("[criterion 2] PASS: reference matrix within 1e-6; 10^4 random frames within 1e-9");
}

#[test]
fn criterion_3_vertex_reproduction() {
    let coeffs = fit_parabola(&constants()).unwrap();
    let frame = reference_frame();
    let vertex = frame.apply_inverse(Vec3::new(0.0, 0.0, coeffs.c));
    let got = [vertex.x, vertex.y, vertex.z];
    for (g, want) in got.iter().zip(REFERENCE_VERTEX) {
        assert!(
            (g - want).abs() <= 0.05,
            "vertex {got:?} vs reference {REFERENCE_VERTEX:?}"
        );
    }
    println!(
        "[criterion 3] PASS: vertex ({:.4}, {:.4}, {:.4}) within 0.05 m per coordinate",
        got[0], got[1], got[2]
    );
}

#[test]
fn criterion_4_reflection_oracle_equivalence() {
    let ez = Vec3::new(0.0, 0.0, 1.0);
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let mut worst: f64 = 0.0;
    for _ in 0..100_000 {
        let z: f64 = rng.random_range(-1.0..=1.0);
        let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let r = (1.0 - z * z).sqrt();
        let n0 = Vec3::new(r * phi.cos(), r * phi.sin(), z);
        let n = reflect_unit_z(n0).unwrap();
        let oracle = 2.0 * ez.dot(n0) * n0 - ez;
        let dev = (n - oracle).norm();
        let angle = (n.dot(n0) - n0.dot(ez)).abs();
        let coplanar = n.dot(n0.cross(ez)).abs();
        assert!(dev <= 1e-12, "oracle deviation {dev:e} at {n0:?}");
        assert!(angle <= 1e-12, "angle residual {angle:e} at {n0:?}");
        assert!(
            coplanar <= 1e-12,
            "coplanarity residual {coplanar:e} at {n0:?}"
        );
        worst = worst.max(dev).max(angle).max(coplanar);
    }
    println!("[criterion 4] PASS: 10^5 normals, worst residual {worst:.3e} ≤ 1e-12");
}

#[test]
fn criterion_5_predicate_oracles() {
    // Point-in-triangle against the signed-area oracle, skipping points
    // within 1e-9 of an edge line.
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let mut tested = 0usize;
    while tested < 10_000 {
        let p = Point2::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let v = |rng: &mut StdRng| {
            Point2::new(rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0))
        };
        let tri = Triangle2D::new(v(&mut rng), v(&mut rng), v(&mut rng));
        if tri.doubled_area().abs() < 1e-6 {
            continue;
        }
        let edge_dist = |a: Point2, b: Point2| {
            let cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
            let len = ((b.x - a.x).powi(2) + (b.y - a.y).powi(2)).sqrt();
            (cross / len, cross)
        };
        let (da, ca) = edge_dist(tri.a, tri.b);
        let (db, cb) = edge_dist(tri.b, tri.c);
        let (dc, cc) = edge_dist(tri.c, tri.a);
        if da.abs() < 1e-9 || db.abs() < 1e-9 || dc.abs() < 1e-9 {
            continue;
        }
        let oracle = (ca > 0.0 && cb > 0.0 && cc > 0.0) || (ca < 0.0 && cb < 0.0 && cc < 0.0);
        assert_eq!(
            point_in_triangle(p, &tri).unwrap(),
            oracle,
            "{p:?} in {tri:?}"
        );
        tested += 1;
    }

    // Disk-triangle overlap against a Monte-Carlo area oracle: 10^5
    // uniform samples in the unit disk, asserted wherever the sampled hit
    // count clears 3σ noise (k > 3·√k, i.e. k ≥ 10).
    let samples: Vec<Point2> = (0..100_000)
        .map(|_| {
            let r = rng.random_range(0.0..1.0_f64).sqrt();
            let theta = rng.random_range(0.0..std::f64::consts::TAU);
            Point2::new(r * theta.cos(), r * theta.sin())
        })
        .collect();
    let in_closed_triangle = |p: Point2, t: &Triangle2D| {
        let s = |a: Point2, b: Point2| (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        let (d1, d2, d3) = (s(t.a, t.b), s(t.b, t.c), s(t.c, t.a));
        (d1 >= 0.0 && d2 >= 0.0 && d3 >= 0.0) || (d1 <= 0.0 && d2 <= 0.0 && d3 <= 0.0)
    };
    let mut certified = 0usize;
    let mut overlaps = 0usize;
    let mut misses = 0usize;
    for _ in 0..1_000 {
        let v = |rng: &mut StdRng| {
            Point2::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0))
        };
        let tri = Triangle2D::new(v(&mut rng), v(&mut rng), v(&mut rng));
        let predicted = disk_triangle_overlap(&tri, 1.0);
        if predicted {
            overlaps += 1;
        } else {
            misses += 1;
        }
        let hits = samples
            .iter()
            .filter(|p| in_closed_triangle(**p, &tri))
            .count();
        if hits >= 10 {
            assert!(
                predicted,
                "Monte-Carlo found {hits}/100000 disk samples inside {tri:?} but the predicate says no overlap"
            );
            certified += 1;
        }
    }
    assert!(
        overlaps > 0 && misses > 0,
        "need both outcomes: {overlaps} overlaps, {misses} misses"
    );
    println!(
        "[criterion 5] PASS: 10^4 point-in-triangle instances agree; {certified} Monte-Carlo-certified overlaps confirmed ({overlaps} predicted overlaps, {misses} predicted misses)"
    );
}

#[test]
fn criterion_6_constraint_solver_soundness() {
    let tc = constants();
    let coeffs = fit_parabola(&tc).unwrap();
    let frame = reference_frame();

    for subdivisions in [2u32, 3, 4] {
        let mesh = generate_synthetic_mesh(&SyntheticMeshParams {
            subdivisions,
            ..SyntheticMeshParams::default()
        })
        .unwrap();
        let solution =
            solve_proportion(&mesh, &coeffs, &frame, &tc, PROPORTION_RESOLUTION).unwrap();

        // Feasibility of the returned proportion, re-derived from scratch.
        let at_p = evaluate_proportion(&mesh, &coeffs, &frame, &tc, solution.proportion).unwrap();
        assert!(
            at_p.feasible,
            "k={subdivisions}: returned p is infeasible: {at_p:?}"
        );
        assert!(solution.max_edge_ratio <= tc.edge_ratio_limit);
        assert!(solution.stroke_range.0 >= -tc.stroke_limit);
        assert!(solution.stroke_range.1 <= tc.stroke_limit);

        // Maximality: one resolution-sized step beyond must break a
        // constraint (unless the solver saturated at 1).
        if solution.proportion < 1.0 {
            let beyond = (solution.proportion + 0.002).min(1.0);
            let report = evaluate_proportion(&mesh, &coeffs, &frame, &tc, beyond).unwrap();
            assert!(
                !report.feasible,
                "k={subdivisions}: p + 0.002 = {beyond} still feasible: {report:?}"
            );
        }
    }

    // Bisection agrees with a dense 1e-4 grid scan, and feasibility is
    // monotone along the grid.
    for subdivisions in [2u32, 3] {
        let mesh = generate_synthetic_mesh(&SyntheticMeshParams {
            subdivisions,
            ..SyntheticMeshParams::default()
        })
        .unwrap();
        let solution =
            solve_proportion(&mesh, &coeffs, &frame, &tc, PROPORTION_RESOLUTION).unwrap();
        let mut best_feasible = 0.0_f64;
        let mut seen_infeasible = false;
        for i in 0..=10_000 {
            let p = i as f64 * 1e-4;
            let feasible = evaluate_proportion(&mesh, &coeffs, &frame, &tc, p)
                .unwrap()
                .feasible;
            if feasible {
                assert!(
                    !seen_infeasible,
                    "k={subdivisions}: feasibility is not monotone at p = {p}"
                );
                best_feasible = p;
            } else {
                seen_infeasible = true;
            }
        }
        assert!(
            (solution.proportion - best_feasible).abs() <= 1e-3,
            "k={subdivisions}: bisection {} vs grid scan {}",
            solution.proportion,
            best_feasible
        );
    }
    println!(
        "[criterion 6] PASS: solver sound on subdivisions 2-4; bisection matches 1e-4 grid scan"
    );
}

#[test]
fn criterion_7_end_to_end_qualitative_reproduction() {
    let start = Instant::now();
    let tc = constants();
    let mesh = generate_synthetic_mesh(&SyntheticMeshParams {
        subdivisions: 5,
        ..SyntheticMeshParams::default()
    })
    .unwrap();
    let coeffs = fit_parabola(&tc).unwrap();
    let frame = reference_frame();
    let solution = solve_proportion(&mesh, &coeffs, &frame, &tc, PROPORTION_RESOLUTION).unwrap();
    let sphere_like =
        evaluate_reception(&mesh, SurfaceKind::Sphere, &frame, &tc, Region::Aperture).unwrap();
    let sphere_all =
        evaluate_reception(&mesh, SurfaceKind::Sphere, &frame, &tc, Region::All).unwrap();
    let working = evaluate_reception(
        &mesh,
        SurfaceKind::Working(&solution),
        &frame,
        &tc,
        Region::Aperture,
    )
    .unwrap();
    let elapsed = start.elapsed();

    assert!(
        mesh.panels().len() > 4000,
        "pipeline mesh has {} panels, wanted a few thousand",
        mesh.panels().len()
    );
    assert!(
        working.efficiency > sphere_like.efficiency,
        "working {} must strictly exceed sphere {} (like-for-like)",
        working.efficiency,
        sphere_like.efficiency
    );
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "pipeline took {elapsed:?}, limit 10 s"
    );
    println!(
        "[criterion 7] PASS: {} panels in {elapsed:?}; working {:.1}% > sphere {:.1}% (like-for-like; sphere over all panels: {:.1}%)",
        mesh.panels().len(),
        working.efficiency * 100.0,
        sphere_like.efficiency * 100.0,
        sphere_all.efficiency * 100.0
    );
}

#[test]
fn criterion_8_evaluate_is_deterministic() {
    let binary = env!("CARGO_BIN_EXE_reflector-sim");
    let base = std::env::temp_dir().join(format!("reflector-acceptance-{}", std::process::id()));
    let dirs = [base.join("run-a"), base.join("run-b")];
    let mut contents: Vec<Vec<(String, Vec<u8>)>> = Vec::new();
    for dir in &dirs {
        fs::create_dir_all(dir).unwrap();
        let out = Command::new(binary)
            .args([
                "evaluate",
                "--synthetic",
                "--subdivisions",
                "4",
                "--out-dir",
                dir.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
            .unwrap()
            .map(|e| {
                let e = e.unwrap();
                (
                    e.file_name().to_string_lossy().into_owned(),
                    fs::read(e.path()).unwrap(),
                )
            })
            .collect();
        files.sort();
        contents.push(files);
    }
    assert_eq!(contents[0].len(), 6, "expected six output files");
    for (a, b) in contents[0].iter().zip(&contents[1]) {
        assert_eq!(a.0, b.0, "file sets differ");
        assert_eq!(a.1, b.1, "{} differs between identical runs", a.0);
    }
    fs::remove_dir_all(&base).ok();
    println!("[criterion 8] PASS: two identical evaluate runs produced byte-identical outputs");
}

#[test]
fn criterion_9_loss_convergence() {
    let tc = constants();
    let coeffs = fit_parabola(&tc).unwrap();
    let at_step = loss(&coeffs, &tc, DEFAULT_LOSS_STEP);
    let at_half = loss(&coeffs, &tc, DEFAULT_LOSS_STEP / 2.0);
    let rel_change = ((at_half - at_step) / at_step).abs();
    assert!(
        rel_change < 1e-3,
        "halving the step changed the loss by {rel_change:e}"
    );
    println!(
        "[criterion 9] PASS: step {} -> {} changed the loss by {:.3e} (< 0.1%)",
        DEFAULT_LOSS_STEP,
        DEFAULT_LOSS_STEP / 2.0,
        rel_change
    );
}
