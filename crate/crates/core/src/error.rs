use thiserror::Error;

/// Structural errors in graph construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count must be between {min} and {max}, got {n}")]
    VertexCount { n: usize, min: usize, max: usize },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("pair ({u},{v}) is colored {first} one way and {second} the other")]
    AsymmetricColor { u: usize, v: usize, first: i64, second: i64 },
}

/// Errors raised while parsing graph text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("line {line}: expected an integer, found {token:?}")]
    NotAnInteger { line: usize, token: String },
    #[error("line {line}: expected {expected} fields, found {found}")]
    FieldCount { line: usize, expected: usize, found: usize },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("line {line}: pair ({u},{v}) already has color {previous}, cannot recolor to {color}")]
    ConflictingPair { line: usize, u: usize, v: usize, previous: i64, color: i64 },
    #[error("pair ({u},{v}) missing")]
    MissingPair { u: usize, v: usize },
}

impl ParseError {
    /// 1-based line the error refers to, when there is one.
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::NotAnInteger { line, .. }
            | ParseError::FieldCount { line, .. }
            | ParseError::Invalid { line, .. }
            | ParseError::ConflictingPair { line, .. } => Some(*line),
            ParseError::Empty | ParseError::MissingPair { .. } => None,
        }
    }
}

/// Errors raised by the dense linear algebra routines and the Schoenberg functional.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows} rows, row {row} has {cols} entries)")]
    NotSquare { rows: usize, row: usize, cols: usize },
    #[error("matrix is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("matrix entry ({i},{j}) is not finite")]
    NonFinite { i: usize, j: usize },
    #[error("diagonal entry {i} is {value}, expected zero")]
    NonzeroDiagonal { i: usize, value: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dimension {n} too small, need at least {min}")]
    TooSmall { n: usize, min: usize },
    #[error("Jacobi iteration did not converge in {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

/// Errors raised by the representation pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EmbedError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("weight {index} is {value}, weights must be positive")]
    NonPositiveWeight { index: usize, value: f64 },
    #[error("expected {expected} weights, got {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("seed weights give q = {q}, expected q > 0")]
    VerificationFailed { q: f64 },
    #[error("no sign change on [0,1]: psi(0) = {psi0}, psi(1) = {psi1}")]
    SignError { psi0: f64, psi1: f64 },
    #[error("squared distances are not Euclidean: Gram eigenvalue {eigenvalue} below -{threshold}")]
    NotEuclidean { eigenvalue: f64, threshold: f64 },
    #[error("Gram rank {rank} exceeds target dimension {target}")]
    RankExcess { rank: usize, target: usize },
    #[error("embedding has {found} points, graph has {expected} vertices")]
    SizeMismatch { expected: usize, found: usize },
    #[error("representation check failed: {0}")]
    Rejected(String),
    #[error("triple ({0},{1},{2}) is not mixed")]
    NotMixed(usize, usize, usize),
    #[error("stage {stage} failed: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<EmbedError>,
        q_trace: Vec<(f64, f64)>,
    },
}

/// Pipeline stage names, used to tag failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    MixedTriple,
    SeedSearch,
    EnsureDistinct,
    HomotopyRoot,
    BuildMatrix,
    MdsEmbed,
    Verify,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::MixedTriple => "find_mixed_triple",
            Stage::SeedSearch => "seed_search",
            Stage::EnsureDistinct => "ensure_distinct",
            Stage::HomotopyRoot => "homotopy_root",
            Stage::BuildMatrix => "build_matrix",
            Stage::MdsEmbed => "mds_embed",
            Stage::Verify => "verify_representation",
        }
    }
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl EmbedError {
    pub(crate) fn at(self, stage: Stage, q_trace: &[(f64, f64)]) -> Self {
        EmbedError::Stage { stage, source: Box::new(self), q_trace: q_trace.to_vec() }
    }

    /// Stage that failed, if this error came out of [`crate::embed`].
    pub fn stage(&self) -> Option<Stage> {
        match self {
            EmbedError::Stage { stage, .. } => Some(*stage),
            _ => None,
        }
    }
}
