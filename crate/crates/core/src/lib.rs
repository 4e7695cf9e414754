//! Krajewski diagrams for almost-commutative spectral triples: validation,
//! gauge algebra, the gauge-field graph and its cycles, the renormalizability
//! condition on that graph, the invariant polynomials of the spectral action,
//! and power counting.

pub mod algebra;
pub mod builtins;
pub mod cli;
pub mod diagram;
pub mod dsl;
pub mod exact;
pub mod graph;
pub mod invariants;
pub mod powercount;
pub mod rconnect;
