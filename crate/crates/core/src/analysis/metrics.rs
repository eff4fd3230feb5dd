//! Efficiency ratios against the centralised benchmark.

use crate::error::{ModelError, Result};
use crate::model_core::{ChannelParams, ContractSpec, Equilibrium};
use crate::solver::{solve_contract, SolverConfig};

/// Welfare of `eq` over centralised welfare, both on the shared welfare functional.
pub fn swe_against(eq: &Equilibrium, cent: &Equilibrium) -> f64 {
    eq.sw / cent.sw
}

/// `(U_AP + π_AL) / SW_CENT`, the players' own payoffs over centralised welfare.
///
/// CENT itself has no split between the players and reports 1.
pub fn swe_players_against(eq: &Equilibrium, cent: &Equilibrium) -> f64 {
    match (eq.u_ap, eq.pi_al) {
        (Some(u), Some(pi)) => (u + pi) / cent.sw,
        _ => 1.0,
    }
}

/// Greening of `eq` over centralised greening.
///
/// # Errors
/// Undefined when the centralised channel does not green at all.
pub fn ge_against(eq: &Equilibrium, cent: &Equilibrium) -> Result<f64> {
    if cent.theta == 0.0 {
        return Err(ModelError::Domain("greening efficiency undefined: centralised greening is zero".into()));
    }
    Ok(eq.theta / cent.theta)
}

fn centralised(params: &ChannelParams, config: &SolverConfig) -> Result<Equilibrium> {
    solve_contract(params, &ContractSpec::cent(), config)
}

pub fn swe(params: &ChannelParams, eq: &Equilibrium, config: &SolverConfig) -> Result<f64> {
    Ok(swe_against(eq, &centralised(params, config)?))
}

pub fn swe_players(params: &ChannelParams, eq: &Equilibrium, config: &SolverConfig) -> Result<f64> {
    Ok(swe_players_against(eq, &centralised(params, config)?))
}

pub fn ge(params: &ChannelParams, eq: &Equilibrium, config: &SolverConfig) -> Result<f64> {
    ge_against(eq, &centralised(params, config)?)
}
