//! The Schoenberg functional
//!
//! ```text
//! Q_M = max { sum_{i<j} m_ij x_i x_j : |x| = 1, sum x = 0 }
//! ```
//!
//! For a zero-diagonal symmetric `M`, `sum_{i<j} m_ij x_i x_j = x^T M x / 2`, and
//! the feasible set is the unit sphere of the sum-zero hyperplane, so with an
//! orthonormal basis `B` of that hyperplane `Q_M = lambda_max(B^T M B) / 2`.
//! A matrix of squared distances is Euclidean iff `Q_M <= 0`, and spans the full
//! `n - 1` dimensions iff `Q_M < 0`.

use crate::error::LinalgError;
use crate::linalg::{symmetric_eigen, SumZeroBasis, SymMatrix};

/// Default tolerance for treating `Q` as zero, applied to `Q / max|m_ij|`.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// The value `Q_M` and a feasible vector attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct SchoenbergValue {
    pub q: f64,
    /// Unit vector with zero coordinate sum.
    pub maximizer: Vec<f64>,
}

/// `sum_{i<j} m_ij x_i x_j`, evaluated term by term.
pub fn pair_sum(m: &SymMatrix, x: &[f64]) -> f64 {
    let n = m.n();
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += m.get(i, j) * x[i] * x[j];
        }
    }
    s
}

pub fn q_value(m: &SymMatrix) -> Result<SchoenbergValue, LinalgError> {
    if m.n() < 2 {
        return Err(LinalgError::TooSmall { n: m.n(), min: 2 });
    }
    m.check_zero_diagonal()?;
    let basis = SumZeroBasis::new(m.n())?;
    let reduced = basis.project(m)?;
    let spectrum = symmetric_eigen(&reduced)?;
    // the half converts x^T M x into the sum over i < j
    let q = 0.5 * spectrum.largest();
    let maximizer = basis.lift(&spectrum.vector(0));
    Ok(SchoenbergValue { q, maximizer })
}

/// Schoenberg classification of a squared-distance matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Embeddability {
    /// `Q < 0`: Euclidean, affine dimension `n - 1`.
    FullDimension,
    /// `Q = 0`: Euclidean, affine dimension at most `n - 2`.
    Degenerate,
    /// `Q > 0`: not realizable in any Euclidean space.
    NonEmbeddable,
}

impl Embeddability {
    pub fn name(self) -> &'static str {
        match self {
            Embeddability::FullDimension => "FullDimension",
            Embeddability::Degenerate => "Degenerate",
            Embeddability::NonEmbeddable => "NonEmbeddable",
        }
    }
}

impl std::fmt::Display for Embeddability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Classifies `m` by the sign of `Q_M / max|m_ij|` against `tol`.
pub fn embeddability(m: &SymMatrix, tol: f64) -> Result<(Embeddability, SchoenbergValue), LinalgError> {
    let value = q_value(m)?;
    let scale = m.max_abs();
    let normalized = if scale > 0.0 { value.q / scale } else { 0.0 };
    let kind = if normalized < -tol {
        Embeddability::FullDimension
    } else if normalized > tol {
        Embeddability::NonEmbeddable
    } else {
        Embeddability::Degenerate
    };
    Ok((kind, value))
}
