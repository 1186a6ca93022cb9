//! Realizing graphs as two-distance sets, and complete edge-colored graphs as
//! few-distance sets, in `R^(n-2)`.
//!
//! ```
//! use distrep_core::{embed, Graph, Outcome, Source};
//!
//! let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
//! let Outcome::Represented(rep) = embed(&Source::Graph(path)).unwrap() else { unreachable!() };
//! assert_eq!(rep.embedding.dim, 1);
//! assert!((rep.homotopy.final_lengths[1] - 2.0).abs() < 1e-9);
//! ```

pub mod error;
pub mod family;
pub mod graph;
pub mod linalg;
pub mod representation;
pub mod schoenberg;

pub use error::{EmbedError, GraphError, LinalgError, ParseError, Stage};
pub use family::{ClassLabel, WeightedMatrixFamily};
pub use graph::{
    enumerate_graphs, parse_colored, parse_graph, ColoredCompleteGraph, Graph, GraphClass, MixedTriple, Source,
    TriplePattern,
};
pub use linalg::{
    affine_dimension_oracle, double_center, l1_distance, symmetric_eigen, Spectrum, SumZeroBasis, SymMatrix,
};
pub use representation::{
    embed, embed_with, ensure_distinct, homotopy_root, mds_embed, seed_search, simplex_embedding,
    verify_representation, EmbedOptions, Embedding, FallbackReason, HomotopyResult, Outcome, Representation, Seed,
    VerificationReport, Violation,
};
pub use schoenberg::{embeddability, q_value, Embeddability, SchoenbergValue};
