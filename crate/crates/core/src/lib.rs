//! Monte Carlo simulator for the broadcast Naming Game on random geometric
//! graphs and their small-world (shortcut-augmented) variants.
//!
//! * [`topology`] builds the communication graphs.
//! * [`dynamics`] runs the game, broadcast or pairwise.
//! * [`observables`] samples `N_w`, `N_d` and the success rate on a time grid
//!   and aggregates ensembles.
//! * [`analysis`] fits power laws and evaluates coarsening scaling predictions.
//! * [`experiment`] wires everything into reproducible experiments.

// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod dynamics;
pub mod error;
pub mod experiment;
pub mod observables;
pub mod seed;
pub mod topology;

pub use error::{Error, Result};
