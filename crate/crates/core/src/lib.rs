//! Pricing, greening and contract design in an airport-airline channel.
//!
//! [`model_core`] holds the primitives, [`closed_form`] the analytic
//! equilibria, [`solver`] the numeric backward induction, [`analysis`] the
//! comparative statics and [`cli`] the command-line front end.

pub mod analysis;
pub mod cli;
pub mod closed_form;
pub mod error;
pub mod model_core;
pub mod solver;

pub use error::{ModelError, Result};
pub use model_core::{ChannelParams, ContractKind, ContractSpec, Equilibrium, TaxPolicy};
pub use solver::{solve_contract, SolverConfig};
