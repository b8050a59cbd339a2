//! Linear capacity of the diamond relay network with a disturbing node, in
//! the linear deterministic model over GF(2).
//!
//! - [`gf2`]: bit-packed matrices, rank, intersections, basis completion.
//! - [`network`]: gains, transfer matrices, channel simulation, cut bound.
//! - [`capacity`]: regime classification, closed forms, optimal schemes.
//! - [`codec`]: codebooks that decode under arbitrary disturbance.
//! - [`oracle`]: exhaustive scheme search and lemma checkers.
//! - [`cli`]: the `ldrelay` command-line front end.

pub mod capacity;
pub mod cli;
pub mod codec;
pub mod error;
pub mod gf2;
pub mod network;
pub mod oracle;

pub use capacity::{capacity, classify, construct_scheme, normalize, Case, CapacityReport, RegimeCase};
pub use codec::Codebook;
pub use error::{Error, Result};
pub use gf2::Gf2Matrix;
pub use network::{
    achievable_rate, compose_gm, compose_gs, cut_bound, transmit, CodingScheme, EffectiveScheme,
    NetworkParams,
};
pub use oracle::{brute_force_capacity, verify_grid, VerificationReport};
