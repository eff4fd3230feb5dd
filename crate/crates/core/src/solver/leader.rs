//! Leader stage: the airport picks the fee (and the cost share under CSC)
//! anticipating the airline's best response. CENT is solved directly.

use super::follower::{follower_residual, respond};
use super::search::{maximize, SearchOptions};
use super::{RscLeaderObjective, SolverConfig};
use crate::error::{ModelError, Result};
use crate::model_core::{
    airline_profit, Certificate, ChannelParams, ContractKind, ContractSpec, Equilibrium, TaxPolicy, PHI_STAR,
};

/// Gradient of the welfare functional with respect to `(p, θ)`.
pub fn centralised_gradient(params: &ChannelParams, p: f64, theta: f64) -> [f64; 2] {
    let q = params.intercept() - params.beta * p + params.xi * theta;
    let m = p - params.channel_cost();
    let mu = params.mu;
    [
        (1.0 - mu) * (q - params.beta * m) - mu * q,
        (1.0 - mu) * (m * params.xi - 2.0 * params.i * theta) + mu * q * params.xi / params.beta,
    ]
}

fn solve_centralised(params: &ChannelParams, config: &SolverConfig) -> Result<Equilibrium> {
    // The gradient is affine in (p, θ); read off its Jacobian and take Newton steps.
    let g0 = centralised_gradient(params, 0.0, 0.0);
    let gp = centralised_gradient(params, 1.0, 0.0);
    let gt = centralised_gradient(params, 0.0, 1.0);
    let h = [[gp[0] - g0[0], gt[0] - g0[0]], [gp[1] - g0[1], gt[1] - g0[1]]];
    let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    if det.abs() < 1e-14 {
        return Err(ModelError::Singular("centralised Hessian".into()));
    }
    let (mut p, mut theta) = (0.0, 0.0);
    for _ in 0..3 {
        let g = centralised_gradient(params, p, theta);
        p -= (h[1][1] * g[0] - h[0][1] * g[1]) / det;
        theta -= (h[0][0] * g[1] - h[1][0] * g[0]) / det;
    }
    let contract = ContractSpec::cent();
    let mut eq = Equilibrium::assemble(params, &contract, None, p, theta, None);
    let g = centralised_gradient(params, p, theta);
    let res = g[0].abs().max(g[1].abs()) / (1.0 + eq.q.abs() + params.i * theta.abs());
    if res > config.foc_tolerance {
        return Err(ModelError::Certificate { residual: res, tolerance: config.foc_tolerance });
    }
    eq.certificate = Some(Certificate { foc_residual: res, leader_step: 0.0, leader_local_max: true });
    Ok(eq)
}

/// Outcome of the follower at fee `w`, with the LTT lump sum set from pre-tax gross profit.
pub fn outcome_at(params: &ChannelParams, contract: &ContractSpec, w: f64) -> Result<Equilibrium> {
    let (p, theta) = respond(params, contract, w)?;
    let l = match contract.kind {
        ContractKind::Ltt => {
            let untaxed = ContractSpec { tax: None, ..*contract };
            Some(airline_profit(params, &untaxed, w, p, theta, 0.0) - contract.pi_bar.unwrap_or(0.0))
        }
        _ => None,
    };
    Ok(Equilibrium::assemble(params, contract, Some(w), p, theta, l))
}

/// Quantity the airport maximises under `contract`.
pub fn leader_value(eq: &Equilibrium, config: &SolverConfig) -> f64 {
    match (eq.kind, config.rsc_objective) {
        (ContractKind::Rsc, RscLeaderObjective::ChannelWelfare) => eq.sw,
        _ => eq.u_ap.unwrap_or(f64::NEG_INFINITY),
    }
}

fn search_options(config: &SolverConfig, widen: bool) -> SearchOptions {
    SearchOptions {
        tol: config.outer_tolerance,
        grid_points: config.grid_points,
        max_refinements: config.max_refinements,
        widen,
    }
}

fn fee_bracket(params: &ChannelParams, config: &SolverConfig) -> (f64, f64) {
    config.w_bracket.unwrap_or((-2.0 * params.c_ap, 4.0 * params.c_ap))
}

fn solve_fee(params: &ChannelParams, contract: &ContractSpec, config: &SolverConfig) -> Result<Equilibrium> {
    // Surfaces a follower failure (it does not depend on w) before searching.
    respond(params, contract, 0.0)?;
    let (lo, hi) = fee_bracket(params, config);
    let objective = |w: f64| match outcome_at(params, contract, w) {
        Ok(eq) => leader_value(&eq, config),
        Err(_) => f64::NEG_INFINITY,
    };
    let best = maximize(objective, lo, hi, &search_options(config, true))?;
    let mut eq = outcome_at(params, contract, best.x)?;
    let res = follower_residual(params, contract, best.x, eq.p, eq.theta);
    if res > config.foc_tolerance {
        return Err(ModelError::Certificate { residual: res, tolerance: config.foc_tolerance });
    }
    if let (ContractKind::Ltt, Some(l)) = (contract.kind, eq.l) {
        if l < 0.0 {
            let pi_bar = contract.pi_bar.unwrap_or(0.0);
            return Err(ModelError::ReservationInfeasible { gross: l + pi_bar, pi_bar });
        }
    }
    eq.certificate = Some(Certificate {
        foc_residual: res,
        leader_step: best.probe_step,
        leader_local_max: best.local_max,
    });
    Ok(eq)
}

fn solve_csc_open(params: &ChannelParams, contract: &ContractSpec, config: &SolverConfig) -> Result<Equilibrium> {
    if params.xi * params.xi <= f64::EPSILON * 4.0 * params.beta * params.i {
        // Greening never enters demand (or enters below rounding), so the share
        // has no measurable effect on any payoff.
        return solve_fee(params, &ContractSpec { phi: Some(PHI_STAR), ..*contract }, config);
    }
    let cap = 1.0 - params.xi * params.xi / (4.0 * params.beta * params.i);
    let hi = cap.min(0.999) * (1.0 - 1e-9);
    let value = |phi: f64| {
        let c = ContractSpec { phi: Some(phi), ..*contract };
        solve_fee(params, &c, config).map_or(f64::NEG_INFINITY, |eq| leader_value(&eq, config))
    };
    let best = maximize(value, 0.0, hi, &search_options(config, false))?;
    let mut eq = solve_fee(params, &ContractSpec { phi: Some(best.x), ..*contract }, config)?;
    if let Some(c) = eq.certificate.as_mut() {
        c.leader_local_max &= best.local_max || best.x == 0.0 || best.x == hi;
    }
    Ok(eq)
}

/// Solves one structure by backward induction.
///
/// CSC with `phi: None` optimises the cost share as well as the fee.
///
/// # Errors
/// Concavity and contract-validation failures, follower non-existence,
/// reservation infeasibility (LTT), bracket exhaustion and certificate failures.
pub fn solve_contract(params: &ChannelParams, contract: &ContractSpec, config: &SolverConfig) -> Result<Equilibrium> {
    params.require_concave()?;
    contract.validate()?;
    match contract.kind {
        ContractKind::Cent if contract.tax.is_some() => {
            Err(ModelError::Unsupported("the tax stage is not defined for CENT".into()))
        }
        ContractKind::Cent => solve_centralised(params, config),
        ContractKind::Csc if contract.phi.is_none() => solve_csc_open(params, contract, config),
        _ => solve_fee(params, contract, config),
    }
}

/// Solves `contract` with the airline facing `tax`.
pub fn solve_with_tax(
    params: &ChannelParams,
    contract: &ContractSpec,
    tax: &TaxPolicy,
    config: &SolverConfig,
) -> Result<Equilibrium> {
    solve_contract(params, &contract.with_tax(*tax), config)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn centralised_base() {
        let eq = solve_contract(&ChannelParams::base(), &ContractSpec::cent(), &SolverConfig::default()).unwrap();
        assert!(close(eq.p, 166.945, 1e-5), "{}", eq.p);
        assert!(close(eq.theta, 16.487, 1e-4), "{}", eq.theta);
        assert!(close(eq.sw, 3675.17, 1e-6), "{}", eq.sw);
    }

    #[test]
    fn dcent_base() {
        let eq = solve_contract(&ChannelParams::base(), &ContractSpec::dcent(), &SolverConfig::default()).unwrap();
        assert!(close(eq.w.unwrap(), 105.418, 1e-5), "{:?}", eq.w);
        assert!((eq.u_ap.unwrap() - 1783.71).abs() < 0.01);
        assert!(eq.certificate.unwrap().leader_local_max);
    }

    #[test]
    fn csc_share_near_one_third() {
        let eq = solve_contract(&ChannelParams::base(), &ContractSpec::csc(None), &SolverConfig::default()).unwrap();
        assert!((eq.phi_star.unwrap() - PHI_STAR).abs() < 1e-5, "{:?}", eq.phi_star);
        assert!(close(eq.w.unwrap(), 123.097, 1e-5), "{:?}", eq.w);
    }

    #[test]
    fn cent_tax_unsupported() {
        let c = ContractSpec::cent();
        let tax = TaxPolicy::new(1.0, 6.5).unwrap();
        let r = solve_with_tax(&ChannelParams::base(), &c, &tax, &SolverConfig::default());
        assert!(matches!(r, Err(ModelError::Unsupported(_))));
    }
}
