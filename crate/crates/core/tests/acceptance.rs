//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

use std::process::ExitCode;
use std::time::Instant;

use distrep_core::linalg::{squared_distances, CAYLEY_MENGER_TOL, RANK_TOL};
use distrep_core::representation::k_distance_bound;
use distrep_core::schoenberg::pair_sum;
use distrep_core::{
    affine_dimension_oracle, embed, enumerate_graphs, ensure_distinct, homotopy_root, l1_distance, mds_embed,
    q_value, seed_search, ColoredCompleteGraph, EmbedError, Graph, GraphClass, Outcome, Source, SymMatrix,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PSI_TOL: f64 = 1e-9;
const GRAM_FLOOR: f64 = 1e-8;
const REL_TOL: f64 = 1e-6;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

struct Worst {
    psi: f64,
    gram_negativity: f64,
    length_residual: f64,
}

/// Checks one input that has at least two distance classes.
fn check_represented(source: &Source, classes: usize, worst: &mut Worst) -> Result<(), String> {
    let n = source.n();
    let out = embed(source).map_err(|e| format!("embed failed: {e}"))?;
    let Outcome::Represented(rep) = out else { return Err("unexpected fallback".into()) };
    let h = &rep.homotopy;
    let lengths = &h.final_lengths;
    ensure!(lengths.len() == classes, "{} lengths for {classes} classes", lengths.len());
    ensure!(lengths.iter().all(|&l| l > 0.0), "nonpositive length {lengths:?}");
    for a in 0..lengths.len() {
        for b in a + 1..lengths.len() {
            ensure!(lengths[a] != lengths[b], "repeated length {lengths:?}");
        }
    }
    ensure!(h.tau > 0.0 && h.tau < 1.0, "tau = {} outside (0,1)", h.tau);
    ensure!(h.psi_tau.abs() <= PSI_TOL, "|psi(tau)| = {}", h.psi_tau.abs());
    worst.psi = worst.psi.max(h.psi_tau.abs());

    let eig = &rep.embedding.gram_eigenvalues;
    let (max, min) = (eig[0], eig[eig.len() - 1]);
    ensure!(min >= -GRAM_FLOOR * max, "Gram floor {min} vs max {max}");
    worst.gram_negativity = worst.gram_negativity.max((-min / max).max(0.0));

    let gram_rank = eig.iter().filter(|&&l| l > RANK_TOL * max.max(1.0)).count();
    let cm_root = affine_dimension_oracle(&rep.matrix, CAYLEY_MENGER_TOL);
    let cm_coords = affine_dimension_oracle(&squared_distances(&rep.embedding.coords), CAYLEY_MENGER_TOL);
    ensure!(gram_rank <= n - 2, "Gram rank {gram_rank} > {}", n - 2);
    ensure!(cm_root <= n - 2 && cm_coords <= n - 2, "Cayley-Menger dimension {cm_root}/{cm_coords} > {}", n - 2);
    ensure!(gram_rank == cm_root, "Gram rank {gram_rank} disagrees with Cayley-Menger {cm_root}");

    let report = rep.embedding.report.as_ref().ok_or("missing report")?;
    ensure!(report.passed && report.rel_tol == REL_TOL, "verification failed: {:?}", report.violations);

    let family = &rep.family;
    for u in 0..n {
        for v in u + 1..n {
            let want = lengths[family.class_of(u, v)];
            let got = rep.embedding.achieved.get(u, v);
            worst.length_residual = worst.length_residual.max((got - want).abs() / want);
        }
    }
    ensure!(worst.length_residual <= REL_TOL, "achieved distance residual {}", worst.length_residual);
    ensure!((n as u128) <= k_distance_bound(classes, n - 2), "cardinality bound violated");
    Ok(())
}

fn theorem_one_sweep() -> Check {
    let start = Instant::now();
    let mut worst = Worst { psi: 0.0, gram_negativity: 0.0, length_residual: 0.0 };
    let mut counts = Vec::new();
    for n in 3..=6 {
        let mut count = 0;
        for g in enumerate_graphs(n).unwrap().filter(|g| g.classify() == GraphClass::Mixed) {
            let mask = g.mask();
            check_represented(&Source::Graph(g), 2, &mut worst).map_err(|e| format!("n = {n}, mask {mask:#x}: {e}"))?;
            count += 1;
        }
        counts.push(count);
    }
    ensure!(counts == [6, 62, 1022, 32766], "unexpected Mixed counts {counts:?}");
    Ok(format!(
        "graphs {counts:?}, max |psi| {:.2e}, max Gram negativity {:.2e}, max length residual {:.2e}, {:.1?}",
        worst.psi,
        worst.gram_negativity,
        worst.length_residual,
        start.elapsed()
    ))
}

fn random_colored(rng: &mut impl Rng) -> (ColoredCompleteGraph, usize) {
    loop {
        let n = rng.random_range(3..=6);
        let p = rng.random_range(2..=4usize.min(n * (n - 1) / 2));
        let ids: Vec<i64> = {
            let mut ids = Vec::new();
            while ids.len() < p {
                let c = rng.random_range(-50..50);
                if !ids.contains(&c) {
                    ids.push(c);
                }
            }
            ids
        };
        let g = ColoredCompleteGraph::from_fn(n, |_, _| ids[rng.random_range(0..p)]).unwrap();
        if g.color_count() == p {
            return (g, p);
        }
    }
}

fn theorem_two_sample() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = Worst { psi: 0.0, gram_negativity: 0.0, length_residual: 0.0 };
    for k in 0..500 {
        let (g, p) = random_colored(&mut rng);
        let text = g.render().replace('\n', " | ");
        check_represented(&Source::Colored(g), p, &mut worst).map_err(|e| format!("sample {k} [{text}]: {e}"))?;
    }
    Ok(format!("500 colored graphs, max |psi| {:.2e}, max Gram negativity {:.2e}", worst.psi, worst.gram_negativity))
}

fn closed_forms() -> Check {
    for n in 2..=50 {
        let jm = SymMatrix::from_fn(n, |i, j| if i == j { 0.0 } else { 1.0 });
        let q = q_value(&jm).map_err(|e| e.to_string())?.q;
        ensure!((q + 0.5).abs() <= 1e-10, "Q(J-I) = {q} at n = {n}");
    }
    let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
    let family = path.color_partition();
    let h = homotopy_root(&family, &[1.0, 9.0]).map_err(|e| e.to_string())?;
    ensure!((h.tau - 0.375).abs() <= 1e-9, "tau = {}", h.tau);
    ensure!((h.final_lengths[0] - 1.0).abs() <= 1e-9, "alpha = {}", h.final_lengths[0]);
    ensure!((h.final_lengths[1] - 2.0).abs() <= 1e-9, "beta = {}", h.final_lengths[1]);
    let q19 = q_value(&family.build_matrix(&[1.0, 9.0]).unwrap()).unwrap().q;
    let q14 = q_value(&family.build_matrix(&[1.0, 4.0]).unwrap()).unwrap().q;
    ensure!((q19 - 5.0 / 6.0).abs() <= 1e-10, "Q at (1,9) = {q19}");
    ensure!(q14.abs() <= 1e-10, "Q at (1,4) = {q14}");
    Ok(format!("tau = {:.17}, lengths ({:.17}, {:.17})", h.tau, h.final_lengths[0], h.final_lengths[1]))
}

fn random_zero_diag(rng: &mut impl Rng, n: usize) -> SymMatrix {
    SymMatrix::from_fn(n, |i, j| if i == j { 0.0 } else { rng.random_range(-5.0..5.0) })
}

fn lipschitz() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut violations = 0;
    let mut worst_slack = f64::INFINITY;
    for _ in 0..1000 {
        let n = rng.random_range(2..=8);
        let m = random_zero_diag(&mut rng, n);
        let scale = if rng.random_bool(0.5) { 1e-3 } else { 1.0 };
        let delta = random_zero_diag(&mut rng, n);
        let other = SymMatrix::from_fn(n, |i, j| m.get(i, j) + scale * delta.get(i, j));
        let gap = (q_value(&m).unwrap().q - q_value(&other).unwrap().q).abs();
        let bound = l1_distance(&m, &other).unwrap();
        if gap > bound + 1e-9 {
            violations += 1;
        }
        worst_slack = worst_slack.min(bound - gap);
    }
    ensure!(violations == 0, "{violations} Lipschitz violations");
    Ok(format!("1000 pairs, 0 violations, smallest slack {worst_slack:.3e}"))
}

fn circle_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (s2, s6) = (2f64.sqrt(), 6f64.sqrt());
    let u1 = [1.0 / s2, -1.0 / s2, 0.0];
    let u2 = [1.0 / s6, 1.0 / s6, -2.0 / s6];
    let steps = 1_000_000;
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let m = random_zero_diag(&mut rng, 3);
        let mut best = f64::NEG_INFINITY;
        for k in 0..steps {
            let (s, c) = (std::f64::consts::TAU * k as f64 / steps as f64).sin_cos();
            let x = [c * u1[0] + s * u2[0], c * u1[1] + s * u2[1], c * u1[2] + s * u2[2]];
            best = best.max(pair_sum(&m, &x));
        }
        let gap = (best - q_value(&m).unwrap().q).abs();
        ensure!(gap <= 1e-4, "brute force {best} differs by {gap}");
        worst = worst.max(gap);
    }
    Ok(format!("100 matrices, max gap {worst:.2e}"))
}

fn fallback_necessity() -> Check {
    for n in 1..=6 {
        for g in [Graph::complete(n).unwrap(), Graph::empty(n).unwrap()] {
            let out = embed(&Source::Graph(g)).map_err(|e| e.to_string())?;
            let Outcome::Fallback { embedding, .. } = out else { return Err(format!("n = {n}: not a fallback")) };
            let dim = affine_dimension_oracle(&squared_distances(&embedding.coords), CAYLEY_MENGER_TOL);
            ensure!(dim == n - 1, "n = {n}: simplex dimension {dim}");
            ensure!(embedding.report.as_ref().is_some_and(|r| r.passed), "n = {n}: simplex failed its check");
        }
    }
    Ok("K_n and empty graphs, n = 1..=6, all simplex fallbacks of dimension n-1".into())
}

fn negative_control() -> Check {
    let mut total = 0;
    for n in 3..=5 {
        for g in enumerate_graphs(n).unwrap().filter(|g| g.classify() == GraphClass::Mixed) {
            let family = g.color_partition();
            let seed = seed_search(&family, &g.find_mixed_triple().unwrap()).map_err(|e| e.to_string())?;
            let seed = ensure_distinct(&family, &seed.weights).map_err(|e| e.to_string())?;
            let matrix = family.build_matrix(&seed.weights).unwrap();
            match mds_embed(&matrix, n - 2, RANK_TOL) {
                Err(EmbedError::NotEuclidean { .. }) => total += 1,
                other => return Err(format!("mask {:#x}: expected NotEuclidean, got {other:?}", g.mask())),
            }
        }
    }
    Ok(format!("{total} seed matrices rejected as non-Euclidean"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 7] = [
        ("theorem 1: all Mixed graphs, 3 <= n <= 6", theorem_one_sweep),
        ("theorem 2: 500 random colored complete graphs", theorem_two_sample),
        ("closed-form anchors", closed_forms),
        ("Lipschitz bound in l1", lipschitz),
        ("spectral Q vs brute-force circle, n = 3", circle_oracle),
        ("fallback necessity for K_n and empty graphs", fallback_necessity),
        ("negative control: seed matrices are not Euclidean", negative_control),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
