use crate::error::EmbedError;
use crate::linalg::SymMatrix;

/// Tag of one distance class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    Edge,
    NonEdge,
    Color(i64),
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassLabel::Edge => f.write_str("edge"),
            ClassLabel::NonEdge => f.write_str("non-edge"),
            ClassLabel::Color(c) => write!(f, "color {c}"),
        }
    }
}

/// Partition of the unordered pairs of `0..n` into `p` nonempty classes.
///
/// Class `k` stands for the 0/1 indicator matrix `M_k`; the supports are
/// disjoint and the indicators sum to `J - I`. Weighting class `k` by `w_k`
/// gives the squared-distance matrix `sum_k w_k M_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedMatrixFamily {
    n: usize,
    /// Class index of each ordered pair, `usize::MAX` on the diagonal.
    class_of: Vec<usize>,
    labels: Vec<ClassLabel>,
    support: Vec<usize>,
}

impl WeightedMatrixFamily {
    /// `classify(u, v)` (called with `u < v`) picks an index into `candidates`;
    /// candidates that receive no pair are dropped.
    pub fn from_classifier(
        n: usize,
        candidates: &[ClassLabel],
        mut classify: impl FnMut(usize, usize) -> usize,
    ) -> Self {
        let mut raw = vec![usize::MAX; n * n];
        let mut counts = vec![0usize; candidates.len()];
        for u in 0..n {
            for v in u + 1..n {
                let k = classify(u, v);
                raw[u * n + v] = k;
                raw[v * n + u] = k;
                counts[k] += 1;
            }
        }
        let mut remap = vec![usize::MAX; candidates.len()];
        let mut labels = Vec::new();
        let mut support = Vec::new();
        for (k, &count) in counts.iter().enumerate() {
            if count > 0 {
                remap[k] = labels.len();
                labels.push(candidates[k]);
                support.push(count);
            }
        }
        let class_of = raw.into_iter().map(|k| if k == usize::MAX { k } else { remap[k] }).collect();
        WeightedMatrixFamily { n, class_of, labels, support }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of classes.
    pub fn p(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[ClassLabel] {
        &self.labels
    }

    /// Class of the pair `{u, v}`; `u != v`.
    pub fn class_of(&self, u: usize, v: usize) -> usize {
        self.class_of[u * self.n + v]
    }

    /// Number of unordered pairs in class `k`.
    pub fn support_size(&self, k: usize) -> usize {
        self.support[k]
    }

    pub fn indicator(&self, k: usize) -> SymMatrix {
        SymMatrix::from_fn(self.n, |u, v| if u != v && self.class_of(u, v) == k { 1.0 } else { 0.0 })
    }

    /// `sum_k weights[k] * M_k`.
    pub fn build_matrix(&self, weights: &[f64]) -> Result<SymMatrix, EmbedError> {
        if weights.len() != self.p() {
            return Err(EmbedError::WeightCount { expected: self.p(), found: weights.len() });
        }
        if let Some(index) = weights.iter().position(|&w| !(w > 0.0 && w.is_finite())) {
            return Err(EmbedError::NonPositiveWeight { index, value: weights[index] });
        }
        Ok(self.evaluate(weights))
    }

    /// Unchecked [`build_matrix`](Self::build_matrix).
    pub(crate) fn evaluate(&self, weights: &[f64]) -> SymMatrix {
        SymMatrix::from_fn(self.n, |u, v| if u == v { 0.0 } else { weights[self.class_of(u, v)] })
    }
}
