//! Existence and construction of Lie algebroid connections on holomorphic
//! vector bundles over compact Riemann surfaces.
//!
//! Two layers live here. The formal layer ([`formal`], [`decision`]) works at
//! any genus with bundles presented as sums of indecomposable atoms and
//! decides existence from slope data. The genus-0 engine ([`p1`], [`jets`])
//! works with explicit transition matrices on the projective line, computes
//! the obstruction class as a Čech cocycle and builds connections when it
//! vanishes; it doubles as an independent check of the formal verdicts.

pub mod cli;
pub mod exact;
pub mod decision;
pub mod formal;
pub mod fuzz;
pub mod jets;
pub mod p1;
pub mod schema;
