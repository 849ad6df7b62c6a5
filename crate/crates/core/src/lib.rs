//! Signed Cayley graphs on `Z_p x Z_n`.
//!
//! The graph has vertex set `Z_p x Z_n` (with `p` a prime dividing `n`) and
//! connection set `Phi = units(p) x units(n)`. An edge is positive when at
//! least one of its endpoints is itself an element of `Phi`, and negative
//! otherwise.
//!
//! The crate builds these sigraphs, decides balance, clusterability and
//! sign-compatibility with witness-carrying reports, constructs line sigraphs,
//! and checks closed-form edge-count predictions against exhaustive oracles.
//!
//! ```
//! use cayley_sigraph::{analysis, cayley};
//!
//! let spec = cayley::validate_spec(3, 3).unwrap();
//! let g = cayley::build_sigraph(&spec);
//! assert_eq!(g.edge_counts().negative, 4);
//! assert!(!analysis::check_balance(&g).balanced);
//! ```

#![forbid(unsafe_code)]

pub mod analysis;
pub mod arith;
pub mod cayley;
pub mod error;
pub mod harness;
pub mod oracle;
pub mod sigraph;

pub use analysis::{
    BalanceReport, ClusterReport, CompatReport, CountPrediction, CountRule, Marking,
};
pub use arith::{FactoredInteger, RunReport, UnitSet};
pub use cayley::{ConnectionSet, GroupSpec, Vertex};
pub use error::{Error, Result};
pub use harness::{
    AnalysisDocument, AnalysisOptions, ClaimId, ClaimStatus, ClaimVerdict, GraphDocument,
};
pub use sigraph::{Cycle, Edge, EdgeCounts, Sign, Sigraph};
