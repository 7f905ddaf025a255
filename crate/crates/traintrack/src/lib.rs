//! Train track maps on roses and their ideal Whitehead graphs.
//!
//! The crate models outer automorphisms of free groups through rose
//! self-maps, computes their direction/turn dynamics and Whitehead graphs,
//! builds lamination train track structures and ideal decomposition
//! diagrams, searches those diagrams for representative loops, and verifies
//! candidate representatives end to end.

pub mod canon;
pub mod corpus;
pub mod diagram;
pub mod dot;
pub mod error;
pub mod exec;
pub mod ltt;
pub mod maps;
pub mod matrix;
pub mod moves;
pub mod nielsen;
pub mod scc;
pub mod verifier;
pub mod whitehead;
pub mod words;

pub use diagram::{build_id_diagram, irreducibility_potential_test, search_loops, IdDiagram};
pub use error::Error;
pub use exec::ExecMode;
pub use ltt::{LttStructure, SmoothPath};
pub use maps::{DirectionMap, GraphMap, PeriodicDirections};
pub use matrix::TransitionMatrix;
pub use moves::{Fold, GeneratingTriple, IdealDecomposition, TripleKind};
pub use verifier::{verify_representative, PnpBounds, Verdict, VerificationReport};
pub use whitehead::{enumerate_catalog, index_list, whitehead_graphs, SimpleGraph};
pub use words::{Direction, EdgeLabel, Rose, Turn, Word};
