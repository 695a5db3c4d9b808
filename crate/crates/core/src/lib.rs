//! Folded subspace codes over the operator channel: exact-arithmetic
//! encoder, interpolation-based list / probabilistic-unique decoder,
//! Grassmannian bounds, and a seeded Monte Carlo harness.

pub mod algebra;
pub mod bounds;
pub mod channel;
pub mod code;
pub mod decoder;
pub mod io;
pub mod linpoly;
pub mod sim;
pub mod subspace;
