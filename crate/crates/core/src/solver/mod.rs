//! Numeric backward induction for every structure, the tax stage and the duopoly.

mod duopoly;
mod follower;
mod leader;
pub mod search;
mod tax;

use serde::{Deserialize, Serialize};

pub use duopoly::{
    duopoly_best_response, duopoly_fixed_point, duopoly_joint_foc, duopoly_outcome, duopoly_solve,
    DuopolyEquilibrium,
};
pub use follower::{
    airline_best_response, airline_best_response_taxed, follower_objective, follower_residual, respond,
};
pub use leader::{centralised_gradient, leader_value, outcome_at, solve_contract, solve_with_tax};
pub use tax::{optimal_tax, TaxOptimum, TaxPoint};

/// What the airport maximises when it sets the fee under revenue sharing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum RscLeaderObjective {
    /// The shared welfare functional; reproduces the published revenue-sharing fee.
    #[default]
    ChannelWelfare,
    /// The airport's own utility, as for the other contracts.
    AirportUtility,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    /// Relative width at which a leader search stops.
    pub outer_tolerance: f64,
    /// Largest accepted scaled first-order residual.
    pub foc_tolerance: f64,
    /// Initial fee interval; `None` means `[-2 c_AP, 4 c_AP]`.
    pub w_bracket: Option<(f64, f64)>,
    pub grid_points: usize,
    /// Times a fee interval may double when the optimum sits on its edge.
    pub max_refinements: usize,
    /// Weight on the new iterate in the duopoly best-response iteration.
    pub damping: f64,
    pub max_iterations: usize,
    pub rsc_objective: RscLeaderObjective,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            outer_tolerance: 1e-10,
            foc_tolerance: 1e-8,
            w_bracket: None,
            grid_points: 32,
            max_refinements: 8,
            damping: 0.5,
            max_iterations: 10_000,
            rsc_objective: RscLeaderObjective::ChannelWelfare,
        }
    }
}
