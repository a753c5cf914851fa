//! Numerical models for the universal entropy bound `S <= 2 pi E R / hbar c`.
//!
//! Each classic would-be counterexample is a parameterized scenario whose
//! entropy and gravitating-energy floor are computed and compared:
//!
//! * [`counting`]: a massive nonrelativistic gas, with rest energy included.
//! * [`twolevel`]: a cavity at low temperature, and many-species degeneracy.
//! * [`conductor`]: photons trapped by conducting shells or a coaxial cable.
//! * [`doublewell`]: degenerate vacua of a self-interacting scalar in a box.
//!
//! Natural units (`hbar = c = 1`) are used everywhere; entropies are in nats.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod bound;
pub mod conductor;
pub mod counting;
pub mod doublewell;
pub mod error;
pub mod golden;
pub mod optimize;
pub mod scenario;
pub mod twolevel;

pub use bound::{evaluate_bound, BoundReport};
pub use error::{BoundError, Result};
