//! Symmetry analysis of circulant and small vertex-transitive graphs.
//!
//! The crate detects twin and co-twin vertices algebraically, reduces graphs
//! through twin quotient sequences, computes automorphism group orders and
//! structure by decomposition, derives determining and distinguishing
//! numbers, and cross-checks every structural claim against an independent
//! brute-force automorphism search.
//!
//! Modules mirror the analysis pipeline:
//!
//! * [`zn`]: arithmetic in the additive group `Z_n`: subgroups, cosets, units.
//! * [`graph`]: immutable bitset-backed undirected graphs and predicates.
//! * [`circulant`]: connection sets, circulant construction, multiplier algebra.
//! * [`twins`]: twin detection, twin partitions, quotient graphs and sequences.
//! * [`cotwins`]: co-twin pairings, crown graphs, neighborhood subgraphs.
//! * [`autgroup`]: the backtracking automorphism oracle and group structure.
//! * [`symmetry`]: determining and distinguishing numbers.
//! * [`catalog`]: enumeration and classification jobs with certificates.

pub mod autgroup;
pub mod catalog;
pub mod circulant;
pub mod cotwins;
pub mod graph;
pub mod symmetry;
pub mod twins;
pub mod zn;

pub use circulant::{CirculantSpec, ConnectionSet, SpecError};
pub use graph::{Graph, GraphError};
pub use twins::{TwinKind, TwinPartition};

// Group orders in the public API are arbitrary-precision.
pub use num_bigint;
