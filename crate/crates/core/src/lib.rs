//! Adjacency graphs of matrix geometries over small finite fields.
//!
//! The crate enumerates rectangular, Hermitian/symmetric and Grassmann
//! spaces, materializes their adjacency graphs, and runs exhaustive checks
//! on them: the five geodesic axioms (A1)–(A5), the distance-based
//! adjacency criterion, constructive witnesses, and point maps tested for
//! diameter-pair preservation against graph isomorphism.

pub mod axioms;
pub mod error;
pub mod falsify;
pub mod field;
pub mod graph;
pub mod maps;
pub mod matrix;
pub mod report;
pub mod scenario;
pub mod space;
pub mod witness;

pub use axioms::{check_axioms, parse_axiom_set, Axiom, AxiomResult};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldOp, FieldSpec, Involution, InvolutionKind, Restrictions};
pub use graph::{bfs_from, build_index, verify_distance_formula, DistanceIndex, FormulaMode, FormulaReport, Graph};
pub use maps::{check_dm_treu, is_isomorphism, load_map, save_map, PointMap};
pub use matrix::Matrix;
pub use scenario::{run_scenario, ScenarioReport};
pub use space::{enumerate_space, grass_intersection_dim, GrassmannPoint, PointSet, SpaceDescriptor, SpaceKind};
