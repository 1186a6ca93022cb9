//! Exhaustive and sampled runs of the graph pipeline.

use distrep_core::linalg::{squared_distances, CAYLEY_MENGER_TOL, RANK_TOL};
use distrep_core::{affine_dimension_oracle, embed, enumerate_graphs, Graph, GraphClass, Outcome, Source};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const PSI_TOL: f64 = 1e-9;
pub const GRAM_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, Default)]
pub struct Residuals {
    pub psi: f64,
    pub gram_negativity: f64,
    /// Largest relative gap between an achieved distance and its class length.
    pub distance: f64,
}

impl Residuals {
    fn max(self, other: Residuals) -> Residuals {
        Residuals {
            psi: self.psi.max(other.psi),
            gram_negativity: self.gram_negativity.max(other.gram_negativity),
            distance: self.distance.max(other.distance),
        }
    }
}

/// Embeds one Mixed graph and checks every output condition.
pub fn certify(g: &Graph) -> Result<Residuals, String> {
    let n = g.n();
    let out = embed(&Source::Graph(g.clone())).map_err(|e| e.to_string())?;
    let Outcome::Represented(rep) = out else { return Err("fell back to the simplex".into()) };
    let h = &rep.homotopy;
    let (a, b) = (h.final_lengths[0], h.final_lengths[1]);
    if !(a > 0.0 && b > 0.0 && a != b) {
        return Err(format!("bad lengths ({a}, {b})"));
    }
    if h.psi_tau.abs() > PSI_TOL {
        return Err(format!("|psi(tau)| = {}", h.psi_tau.abs()));
    }
    let eig = &rep.embedding.gram_eigenvalues;
    let (max, min) = (eig[0], eig[eig.len() - 1]);
    if min < -GRAM_FLOOR * max {
        return Err(format!("Gram eigenvalue {min} below floor"));
    }
    let rank = eig.iter().filter(|&&l| l > RANK_TOL * max.max(1.0)).count();
    let cm = affine_dimension_oracle(&rep.matrix, CAYLEY_MENGER_TOL);
    if rank > n - 2 || cm > n - 2 {
        return Err(format!("affine dimension {rank} (Gram) / {cm} (Cayley-Menger) above {}", n - 2));
    }
    let report = rep.embedding.report.as_ref().ok_or("missing report")?;
    if !report.passed {
        return Err(format!("verification failed: {:?}", report.violations));
    }
    let d2 = squared_distances(&rep.embedding.coords);
    let mut distance = 0.0f64;
    for u in 0..n {
        for v in u + 1..n {
            let want = h.final_lengths[rep.family.class_of(u, v)];
            distance = distance.max((d2.get(u, v).sqrt() - want).abs() / want);
        }
    }
    Ok(Residuals { psi: h.psi_tau.abs(), gram_negativity: (-min / max).max(0.0), distance })
}

#[derive(Debug, Clone)]
pub struct Row {
    pub n: usize,
    /// Graphs examined: all labeled graphs, or the sample size.
    pub graphs: usize,
    pub mixed: usize,
    pub passed: usize,
    pub sampled: bool,
    pub worst: Residuals,
}

#[derive(Debug, Clone)]
pub struct Failure {
    pub n: usize,
    pub mask: u64,
    pub message: String,
}

fn run_masks(n: usize, masks: &[u64], graphs: usize, sampled: bool, failures: &mut Vec<Failure>) -> Row {
    let results: Vec<(u64, Result<Residuals, String>)> = masks
        .par_iter()
        .map(|&mask| (mask, certify(&Graph::from_mask(n, mask).expect("n <= 7"))))
        .collect();
    let mut row = Row { n, graphs, mixed: masks.len(), passed: 0, sampled, worst: Residuals::default() };
    for (mask, result) in results {
        match result {
            Ok(r) => {
                row.passed += 1;
                row.worst = row.worst.max(r);
            }
            Err(message) => failures.push(Failure { n, mask, message }),
        }
    }
    row
}

/// Every Mixed graph for `3 <= n <= min(max_n, 6)`; for `n = 7`, `sample`
/// Mixed graphs drawn uniformly (with replacement) from 21-bit masks.
pub fn run(max_n: usize, sample: usize, seed: u64) -> (Vec<Row>, Vec<Failure>) {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for n in 3..=max_n.min(6) {
        let masks: Vec<u64> = enumerate_graphs(n)
            .expect("n <= 6")
            .filter(|g| g.classify() == GraphClass::Mixed)
            .map(|g| g.mask())
            .collect();
        rows.push(run_masks(n, &masks, 1 << (n * (n - 1) / 2), false, &mut failures));
    }
    if max_n >= 7 {
        rows.push(run_masks(7, &sample_masks(7, sample, seed), sample, true, &mut failures));
    }
    (rows, failures)
}

/// `count` masks of Mixed graphs on `n` vertices, uniform with replacement.
pub fn sample_masks(n: usize, count: usize, seed: u64) -> Vec<u64> {
    let full = (1u64 << (n * (n - 1) / 2)) - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut masks = Vec::with_capacity(count);
    while masks.len() < count {
        let mask = rng.random_range(0..=full);
        if mask != 0 && mask != full {
            masks.push(mask);
        }
    }
    masks
}

pub fn table(rows: &[Row]) -> String {
    let mut out = format!(
        "{:>2}  {:>8}  {:>7}  {:>7}  {:>10}  {:>10}  {:>10}\n",
        "n", "graphs", "mixed", "passed", "max|psi|", "max_neg", "max_resid"
    );
    for r in rows {
        let graphs = if r.sampled { format!("{}*", r.graphs) } else { r.graphs.to_string() };
        out += &format!(
            "{:>2}  {:>8}  {:>7}  {:>7}  {:>10.3e}  {:>10.3e}  {:>10.3e}\n",
            r.n, graphs, r.mixed, r.passed, r.worst.psi, r.worst.gram_negativity, r.worst.distance
        );
    }
    if rows.iter().any(|r| r.sampled) {
        out += "* sampled\n";
    }
    out
}
