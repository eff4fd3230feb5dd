//! CSR weights at which the airport's pure profit turns negative.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::model_core::{ChannelParams, ContractSpec};
use crate::solver::{solve_contract, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfitThresholds {
    /// Largest μ with non-negative airport profit under LTT.
    pub mu_max_ltt: f64,
    /// Largest μ with non-negative airport profit under RSC.
    pub mu_max_rsc: f64,
}

/// Bisection on μ for the zero of airport pure profit under `contract`.
///
/// A coarse scan over `[0, 2/3)` finds the first sign change; points where
/// the solve fails are skipped.
///
/// # Errors
/// [`ModelError::ThresholdNotFound`] when profit never changes sign.
pub fn profit_threshold(params: &ChannelParams, contract: &ContractSpec, config: &SolverConfig) -> Result<f64> {
    let profit = |mu: f64| -> Option<f64> {
        let p = ChannelParams { mu, ..*params };
        solve_contract(&p, contract, config).ok().and_then(|e| e.pi_ap)
    };
    let n = 200;
    let top = 2.0 / 3.0;
    let mut prev: Option<(f64, f64)> = None;
    for k in 0..n {
        let mu = top * k as f64 / n as f64;
        let Some(v) = profit(mu) else { continue };
        if let Some((m0, v0)) = prev {
            if v0 >= 0.0 && v < 0.0 {
                let (mut lo, mut hi) = (m0, mu);
                while hi - lo > 1e-12 {
                    let mid = 0.5 * (lo + hi);
                    match profit(mid) {
                        Some(x) if x >= 0.0 => lo = mid,
                        Some(_) => hi = mid,
                        None => break,
                    }
                }
                return Ok(0.5 * (lo + hi));
            }
        }
        prev = Some((mu, v));
    }
    Err(ModelError::ThresholdNotFound(format!("{}: airport profit keeps one sign on [0, 2/3)", contract.kind)))
}

/// Both thresholds at once.
pub fn nonneg_profit_thresholds(
    params: &ChannelParams,
    psi_rsc: f64,
    pi_bar: f64,
    config: &SolverConfig,
) -> Result<ProfitThresholds> {
    Ok(ProfitThresholds {
        mu_max_ltt: profit_threshold(params, &ContractSpec::ltt(pi_bar), config)?,
        mu_max_rsc: profit_threshold(params, &ContractSpec::rsc(psi_rsc), config)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ltt_threshold_at_base() {
        let m = profit_threshold(&ChannelParams::base(), &ContractSpec::ltt(2500.0), &SolverConfig::default()).unwrap();
        assert!((m - 0.3118).abs() < 1e-3, "{m}");
    }
}
