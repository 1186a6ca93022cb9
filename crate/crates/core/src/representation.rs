//! Few-distance realizations in `R^(n-2)`.
//!
//! The pipeline weights each distance class of the input, finds weights whose
//! squared-distance matrix is non-Euclidean (`Q > 0`) by forcing a triangle
//! inequality violation on a mixed triple, and then walks the segment from the
//! all-ones weights (the regular simplex, `Q = -1/2`) to those seed weights.
//! `Q` is Lipschitz in the matrix, so the segment crosses `Q = 0`; at that
//! crossing the squared distances are Euclidean with affine dimension at most
//! `n - 2`, and classical MDS recovers the points.

use crate::error::{EmbedError, Stage};
use crate::family::{ClassLabel, WeightedMatrixFamily};
use crate::graph::{GraphClass, MixedTriple, Source};
use crate::linalg::{
    affine_dimension_oracle, double_center, squared_distances, symmetric_eigen, SymMatrix, CAYLEY_MENGER_TOL,
    RANK_TOL,
};
use crate::schoenberg::{q_value, DEGENERACY_TOL};

/// Squared length given to the long side of the violated triangle.
const SEED_LONG: f64 = 9.0;
/// Squared length given to the two short sides.
const SEED_SHORT: f64 = 1.0;
/// Squared length for classes not on the triple.
const SEED_OTHER: f64 = 4.0;

const BISECTION_WIDTH: f64 = 1e-15;
const BISECTION_RESIDUAL: f64 = 1e-12;
const BISECTION_MAX_STEPS: usize = 200;

/// Default relative tolerance for [`verify_representation`].
pub const REL_TOL: f64 = 1e-6;

/// Squared-length weights with their (positive) `Q` value.
#[derive(Debug, Clone, PartialEq)]
pub struct Seed {
    pub weights: Vec<f64>,
    pub q: f64,
}

/// Weights making the triple's triangle violate the triangle inequality: the
/// class occurring once gets side 3, the repeated class side 1 (for three
/// distinct classes the highest-indexed one is the long side), every other
/// class side 2.
pub fn seed_search(family: &WeightedMatrixFamily, triple: &MixedTriple) -> Result<Seed, EmbedError> {
    let (u, v, w) = triple.vertices;
    let classes = triple.pairs().map(|(a, b)| family.class_of(a, b));
    let long = if classes[0] == classes[1] {
        classes[2]
    } else if classes[0] == classes[2] {
        classes[1]
    } else if classes[1] == classes[2] {
        classes[0]
    } else {
        *classes.iter().max().expect("three classes")
    };
    if classes.iter().all(|&c| c == long) {
        return Err(EmbedError::NotMixed(u, v, w));
    }
    let mut weights = vec![SEED_OTHER; family.p()];
    for &c in &classes {
        weights[c] = SEED_SHORT;
    }
    weights[long] = SEED_LONG;
    let q = q_value(&family.build_matrix(&weights)?)?.q;
    if q <= 0.0 {
        return Err(EmbedError::VerificationFailed { q });
    }
    Ok(Seed { weights, q })
}

/// Separates repeated weights while keeping `Q > 0`.
///
/// Moving one class weight by `delta` moves the matrix by `2 * support * delta`
/// in l1, and `|Q_M - Q_N| <= |M - N|_1`, so offsets below
/// `q / (4 * C(n,2))` keep at least half of the original `q`. Within a group
/// of `m` equal weights the `j`-th copy moves up by `j * delta / (m - 1)`.
pub fn ensure_distinct(family: &WeightedMatrixFamily, weights: &[f64]) -> Result<Seed, EmbedError> {
    let q = q_value(&family.build_matrix(weights)?)?.q;
    if q <= 0.0 {
        return Err(EmbedError::VerificationFailed { q });
    }
    let mut distinct: Vec<f64> = weights.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() == weights.len() {
        return Ok(Seed { weights: weights.to_vec(), q });
    }
    let spacing = distinct.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let n = family.n();
    let budget = q / (4.0 * (n * (n - 1) / 2) as f64);
    let delta = budget.min(0.5 * spacing);

    let mut out = weights.to_vec();
    for value in distinct {
        let group: Vec<usize> = (0..weights.len()).filter(|&k| weights[k] == value).collect();
        let m = group.len();
        for (j, &k) in group.iter().enumerate().skip(1) {
            out[k] = value + j as f64 * delta / (m - 1) as f64;
        }
    }
    let q = q_value(&family.build_matrix(&out)?)?.q;
    if q <= 0.0 {
        return Err(EmbedError::VerificationFailed { q });
    }
    Ok(Seed { weights: out, q })
}

/// Root of `psi(t) = Q(M(1 + t (a - 1)))` on `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomotopyResult {
    pub seed_weights: Vec<f64>,
    pub tau: f64,
    pub final_weights: Vec<f64>,
    /// `sqrt(final_weights)`: the realized distance of each class.
    pub final_lengths: Vec<f64>,
    pub psi_tau: f64,
    /// Every `(t, psi(t))` evaluated, endpoints first.
    pub q_trace: Vec<(f64, f64)>,
}

fn weights_at(seed: &[f64], t: f64) -> Vec<f64> {
    seed.iter().map(|a| 1.0 + t * (a - 1.0)).collect()
}

/// Bisection on the straight weight path from all ones to `seed_weights`.
///
/// `psi` need not be monotone; any sign change is accepted. Stops once the
/// bracket is narrower than 1e-15 or `|psi| <= 1e-12`.
pub fn homotopy_root(family: &WeightedMatrixFamily, seed_weights: &[f64]) -> Result<HomotopyResult, EmbedError> {
    family.build_matrix(seed_weights)?;
    let mut q_trace = Vec::new();
    let mut psi = |t: f64| -> Result<f64, EmbedError> {
        let q = q_value(&family.evaluate(&weights_at(seed_weights, t)))?.q;
        q_trace.push((t, q));
        Ok(q)
    };
    let psi0 = psi(0.0)?;
    let psi1 = psi(1.0)?;
    if !(psi0 < 0.0 && psi1 > 0.0) {
        return Err(EmbedError::SignError { psi0, psi1 });
    }

    let (mut lo, mut hi) = ((0.0, psi0), (1.0, psi1));
    let mut root = None;
    for _ in 0..BISECTION_MAX_STEPS {
        if hi.0 - lo.0 <= BISECTION_WIDTH {
            break;
        }
        let mid = 0.5 * (lo.0 + hi.0);
        let value = psi(mid)?;
        if value.abs() <= BISECTION_RESIDUAL {
            root = Some((mid, value));
            break;
        }
        if value < 0.0 {
            lo = (mid, value);
        } else {
            hi = (mid, value);
        }
    }
    let (tau, psi_tau) = root.unwrap_or(if lo.1.abs() <= hi.1.abs() { lo } else { hi });
    let final_weights = weights_at(seed_weights, tau);
    let final_lengths = final_weights.iter().map(|w| w.sqrt()).collect();
    Ok(HomotopyResult {
        seed_weights: seed_weights.to_vec(),
        tau,
        final_weights,
        final_lengths,
        psi_tau,
        q_trace,
    })
}

/// Points in `R^dim` with their realized pairwise distances.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub dim: usize,
    pub coords: Vec<Vec<f64>>,
    /// `achieved[i][j] = |coords[i] - coords[j]|`.
    pub achieved: SymMatrix,
    /// Eigenvalues (descending) of the Gram matrix the coordinates came from.
    pub gram_eigenvalues: Vec<f64>,
    pub report: Option<VerificationReport>,
}

impl Embedding {
    /// Wraps user-supplied coordinates; every row must have the same length.
    pub fn from_coords(coords: Vec<Vec<f64>>) -> Result<Self, EmbedError> {
        let dim = coords.first().map_or(0, Vec::len);
        if let Some(bad) = coords.iter().find(|r| r.len() != dim) {
            return Err(EmbedError::Linalg(crate::error::LinalgError::DimensionMismatch {
                left: dim,
                right: bad.len(),
            }));
        }
        let d2 = squared_distances(&coords);
        let gram_eigenvalues = symmetric_eigen(&double_center(&d2)?)?.eigenvalues;
        Ok(Embedding { dim, achieved: sqrt_entries(&d2), coords, gram_eigenvalues, report: None })
    }

    /// `lambda_min / max(1, lambda_max)` of the Gram matrix.
    pub fn gram_floor(&self) -> f64 {
        let max = self.gram_eigenvalues.first().copied().unwrap_or(0.0);
        let min = self.gram_eigenvalues.last().copied().unwrap_or(0.0);
        min / max.max(1.0)
    }
}

fn sqrt_entries(d2: &SymMatrix) -> SymMatrix {
    SymMatrix::from_fn(d2.n(), |i, j| d2.get(i, j).max(0.0).sqrt())
}

/// Classical MDS into `R^target_dim`.
///
/// Eigenvalues count toward the rank when above `tol * max(1, lambda_max)`;
/// anything below `-tol * max(1, lambda_max)` means the input is not Euclidean.
pub fn mds_embed(d2: &SymMatrix, target_dim: usize, tol: f64) -> Result<Embedding, EmbedError> {
    let gram = double_center(d2)?;
    let spectrum = symmetric_eigen(&gram)?;
    let threshold = tol * spectrum.largest().max(1.0);
    if spectrum.smallest() < -threshold {
        return Err(EmbedError::NotEuclidean { eigenvalue: spectrum.smallest(), threshold });
    }
    let rank = spectrum.rank(tol);
    if rank > target_dim {
        return Err(EmbedError::RankExcess { rank, target: target_dim });
    }
    let n = d2.n();
    let scales: Vec<f64> = (0..target_dim)
        .map(|k| match spectrum.eigenvalues.get(k) {
            Some(&l) if l > threshold => l.sqrt(),
            _ => 0.0,
        })
        .collect();
    let coords: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..target_dim)
                .map(|k| if scales[k] > 0.0 { spectrum.eigenvectors[i * n + k] * scales[k] } else { 0.0 })
                .collect()
        })
        .collect();
    let achieved = sqrt_entries(&squared_distances(&coords));
    Ok(Embedding { dim: target_dim, coords, achieved, gram_eigenvalues: spectrum.eigenvalues, report: None })
}

/// Distance statistics of one class.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassStats {
    pub label: ClassLabel,
    pub pairs: usize,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// `(max - min) / mean`.
    pub spread: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// A pair whose distance is off its class median by more than the tolerance.
    Spread { u: usize, v: usize, label: ClassLabel, distance: f64, median: f64 },
    /// Two classes whose mean distances are not clearly apart.
    Separation { first: ClassLabel, second: ClassLabel, first_mean: f64, second_mean: f64 },
    /// Affine dimension above `n - 2`.
    Dimension { method: &'static str, found: usize, bound: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Spread { u, v, label, distance, median } => {
                write!(f, "pair ({u},{v}) in {label} class has distance {distance}, class median {median}")
            }
            Violation::Separation { first, second, first_mean, second_mean } => {
                write!(f, "{first} mean {first_mean} and {second} mean {second_mean} are not separated")
            }
            Violation::Dimension { method, found, bound } => {
                write!(f, "{method} affine dimension {found} exceeds {bound}")
            }
        }
    }
}

/// Outcome of checking an embedding against its source.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub passed: bool,
    pub rel_tol: f64,
    pub classes: Vec<ClassStats>,
    /// Smallest `|m_a - m_b| / max(m_a, m_b)` over class means; infinite with one class.
    pub min_separation: f64,
    pub gram_floor: f64,
    pub gram_rank: usize,
    pub cayley_menger_dimension: usize,
    /// `n - 2` when the source has two or more classes.
    pub dimension_bound: Option<usize>,
    pub violations: Vec<Violation>,
}

fn median(sorted: &[f64]) -> f64 {
    let m = sorted.len();
    if m % 2 == 1 {
        sorted[m / 2]
    } else {
        0.5 * (sorted[m / 2 - 1] + sorted[m / 2])
    }
}

fn relative(diff: f64, scale: f64) -> f64 {
    if diff == 0.0 {
        0.0
    } else if scale > 0.0 {
        diff / scale
    } else {
        f64::INFINITY
    }
}

/// Checks that equal classes got equal distances, different classes got
/// different distances, and (for two or more classes) that the points span
/// at most `n - 2` dimensions by both Gram rank and Cayley–Menger.
pub fn verify_representation(
    source: &Source,
    emb: &Embedding,
    rel_tol: f64,
) -> Result<VerificationReport, EmbedError> {
    let n = source.n();
    if emb.coords.len() != n {
        return Err(EmbedError::SizeMismatch { expected: n, found: emb.coords.len() });
    }
    let family = source.color_partition();
    let mut by_class: Vec<Vec<(usize, usize, f64)>> = vec![Vec::new(); family.p()];
    for u in 0..n {
        for v in u + 1..n {
            by_class[family.class_of(u, v)].push((u, v, emb.achieved.get(u, v)));
        }
    }

    let mut violations = Vec::new();
    let mut classes = Vec::new();
    for (k, members) in by_class.iter().enumerate() {
        let label = family.labels()[k];
        let mut sorted: Vec<f64> = members.iter().map(|m| m.2).collect();
        sorted.sort_by(f64::total_cmp);
        let (min, max) = (sorted[0], sorted[sorted.len() - 1]);
        let mean = sorted.iter().sum::<f64>() / sorted.len() as f64;
        let med = median(&sorted);
        for &(u, v, distance) in members {
            if relative((distance - med).abs(), med) > rel_tol {
                violations.push(Violation::Spread { u, v, label, distance, median: med });
            }
        }
        classes.push(ClassStats { label, pairs: members.len(), mean, min, max, spread: relative(max - min, mean) });
    }

    let mut min_separation = f64::INFINITY;
    for a in 0..classes.len() {
        for b in a + 1..classes.len() {
            let (ma, mb) = (classes[a].mean, classes[b].mean);
            let sep = if ma == mb { 0.0 } else { relative((ma - mb).abs(), ma.max(mb)) };
            min_separation = min_separation.min(sep);
            if sep <= 10.0 * rel_tol {
                violations.push(Violation::Separation {
                    first: classes[a].label,
                    second: classes[b].label,
                    first_mean: ma,
                    second_mean: mb,
                });
            }
        }
    }

    let d2 = squared_distances(&emb.coords);
    let spectrum = symmetric_eigen(&double_center(&d2)?)?;
    let gram_rank = spectrum.rank(RANK_TOL);
    let gram_floor = spectrum.smallest() / spectrum.largest().max(1.0);
    let cayley_menger_dimension = affine_dimension_oracle(&d2, CAYLEY_MENGER_TOL);
    let dimension_bound = source.has_two_classes().then(|| n - 2);
    if let Some(bound) = dimension_bound {
        for (method, found) in [("gram", gram_rank), ("cayley-menger", cayley_menger_dimension)] {
            if found > bound {
                violations.push(Violation::Dimension { method, found, bound });
            }
        }
    }

    Ok(VerificationReport {
        passed: violations.is_empty(),
        rel_tol,
        classes,
        min_separation,
        gram_floor,
        gram_rank,
        cayley_menger_dimension,
        dimension_bound,
        violations,
    })
}

/// Regular simplex with unit edges: `n` points in `R^(n-1)`.
///
/// Point `k` sits above the centroid of points `0..k` at height
/// `sqrt((k + 1) / (2k))` along axis `k - 1`.
pub fn simplex_embedding(n: usize) -> Embedding {
    let dim = n.saturating_sub(1);
    let mut coords = vec![vec![0.0; dim]; n];
    let mut centroid = vec![0.0; dim];
    for k in 1..n {
        let kf = k as f64;
        let mut p = centroid.clone();
        p[k - 1] = ((kf + 1.0) / (2.0 * kf)).sqrt();
        for (c, x) in centroid.iter_mut().zip(&p) {
            *c = (*c * kf + x) / (kf + 1.0);
        }
        coords[k] = p;
    }
    Embedding::from_coords(coords).expect("rows have equal length")
}

/// Tolerances for [`embed_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbedOptions {
    /// Largest acceptable `|psi(tau)| / max(final weight)`.
    pub degeneracy_tol: f64,
    /// Relative eigenvalue threshold for MDS rank and negativity.
    pub rank_tol: f64,
    /// Relative tolerance for [`verify_representation`].
    pub rel_tol: f64,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        EmbedOptions { degeneracy_tol: DEGENERACY_TOL, rank_tol: RANK_TOL, rel_tol: REL_TOL }
    }
}

/// Why the input was realized as a regular simplex instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FallbackReason {
    SingleVertex,
    Complete,
    Independent,
    SingleColor,
}

impl FallbackReason {
    pub fn note(self) -> &'static str {
        match self {
            FallbackReason::SingleVertex => "single vertex: one point in dimension 0",
            FallbackReason::Complete => "complete graph: dimension |G|-1 is necessary",
            FallbackReason::Independent => "independent graph: dimension |G|-1 is necessary",
            FallbackReason::SingleColor => "single color: dimension |G|-1 is necessary",
        }
    }
}

/// Everything produced on the way to an `R^(n-2)` realization.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    pub family: WeightedMatrixFamily,
    pub triple: MixedTriple,
    /// Output of [`seed_search`], before distinctness repair.
    pub raw_seed: Seed,
    pub seed: Seed,
    pub homotopy: HomotopyResult,
    /// Squared distances at the root.
    pub matrix: SymMatrix,
    /// Carries a passing report.
    pub embedding: Embedding,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Represented(Box<Representation>),
    Fallback { reason: FallbackReason, embedding: Embedding },
}

impl Outcome {
    pub fn embedding(&self) -> &Embedding {
        match self {
            Outcome::Represented(r) => &r.embedding,
            Outcome::Fallback { embedding, .. } => embedding,
        }
    }
}

pub fn embed(source: &Source) -> Result<Outcome, EmbedError> {
    embed_with(source, &EmbedOptions::default())
}

/// Runs the whole pipeline; inputs with a single class get the regular simplex.
pub fn embed_with(source: &Source, opts: &EmbedOptions) -> Result<Outcome, EmbedError> {
    let n = source.n();
    if !source.has_two_classes() {
        let reason = match source {
            _ if n == 1 => FallbackReason::SingleVertex,
            Source::Graph(g) if g.classify() == GraphClass::Complete => FallbackReason::Complete,
            Source::Graph(_) => FallbackReason::Independent,
            Source::Colored(_) => FallbackReason::SingleColor,
        };
        let mut embedding = simplex_embedding(n);
        embedding.report = Some(verify_representation(source, &embedding, opts.rel_tol)?);
        return Ok(Outcome::Fallback { reason, embedding });
    }

    let family = source.color_partition();
    let triple = source
        .find_mixed_triple()
        .ok_or(EmbedError::NotMixed(0, 0, 0))
        .map_err(|e| e.at(Stage::MixedTriple, &[]))?;
    let raw_seed = seed_search(&family, &triple).map_err(|e| e.at(Stage::SeedSearch, &[]))?;
    let seed = ensure_distinct(&family, &raw_seed.weights).map_err(|e| e.at(Stage::EnsureDistinct, &[]))?;
    let homotopy = homotopy_root(&family, &seed.weights).map_err(|e| e.at(Stage::HomotopyRoot, &[]))?;
    let trace = &homotopy.q_trace;

    let scale = homotopy.final_weights.iter().fold(0.0f64, |m, &w| m.max(w));
    if homotopy.psi_tau.abs() > opts.degeneracy_tol * scale {
        let err = EmbedError::Rejected(format!("|psi(tau)| = {} above tolerance", homotopy.psi_tau.abs()));
        return Err(err.at(Stage::HomotopyRoot, trace));
    }
    let matrix = family.build_matrix(&homotopy.final_weights).map_err(|e| e.at(Stage::BuildMatrix, trace))?;
    let mut embedding = mds_embed(&matrix, n - 2, opts.rank_tol).map_err(|e| e.at(Stage::MdsEmbed, trace))?;
    let report = verify_representation(source, &embedding, opts.rel_tol).map_err(|e| e.at(Stage::Verify, trace))?;
    if !report.passed {
        let summary = report.violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
        return Err(EmbedError::Rejected(summary).at(Stage::Verify, trace));
    }
    embedding.report = Some(report);
    Ok(Outcome::Represented(Box::new(Representation { family, triple, raw_seed, seed, homotopy, matrix, embedding })))
}

/// `C(k + d, k)`: the largest size of a `k`-distance set in `R^d`.
pub fn k_distance_bound(k: usize, d: usize) -> u128 {
    (1..=k as u128).fold(1u128, |acc, i| acc * (d as u128 + i) / i)
}
