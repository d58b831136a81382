//! Exact generating functions for labeled graphs counted by order, additive
//! statistics and an ω-weighted number of connected components.
//!
//! The crate is split into three layers:
//!
//! * [`series`]: sparse truncated multivariate power series over ℚ, with
//!   `exp`, `log`, specialization and the τ_ω homomorphism that collapses
//!   component-order tags `z_i` into a single rational power of `z`.
//! * [`enumeration`]: the exponential formula in both directions, component
//!   removal, the z-tagged auxiliary series, weighted enumeration and the
//!   bipartite application.
//! * [`oracle`]: exhaustive enumeration of labeled graphs on small vertex
//!   sets, used as ground truth for every table the engine produces.

pub mod enumeration;
pub mod error;
pub mod oracle;
pub mod rational;
pub mod series;

pub use enumeration::{
    bicolored_counts, bipartite_component_table, build_aux, components_from_connected,
    connected_bipartite_series, connected_from_all, count_via_partitions, enumerate_weighted,
    remove_components, ConnectedCountTable, CountKey, CountTable, ForbiddenComponentSet,
    IsolatedVertices, OrderCountTable,
};
pub use error::{Error, Result};
pub use rational::Rational;
pub use series::{Monomial, Series, WeightMode, WeightVector, ZKind, ZPart};
