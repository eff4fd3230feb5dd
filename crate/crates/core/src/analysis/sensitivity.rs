//! Signs of comparative statics by central finite differences through the solver.

use serde::{Deserialize, Serialize};

use super::quantities::{Param, Quantity};
use super::Verdict;
use crate::model_core::{ChannelParams, ContractKind, ContractSpec};
use crate::solver::{solve_contract, SolverConfig};

/// Parameter regime in which a comparative-statics claim is stated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Scenario {
    /// Profit-only airport, no schedule delay: μ = 0, γ = 0.
    S1,
    /// Greening-insensitive passengers, no schedule delay: ξ = 1e-8, γ = 0.
    S2,
    /// Parameters as given.
    General,
}

/// Greening sensitivity used for the ξ → 0 limit; small enough to be below
/// every reported digit while keeping the greening ratio defined.
pub const S2_XI: f64 = 1e-8;

impl Scenario {
    pub fn apply(self, p: &ChannelParams) -> ChannelParams {
        match self {
            Scenario::S1 => ChannelParams { mu: 0.0, gamma: 0.0, ..*p },
            Scenario::S2 => ChannelParams { xi: S2_XI, gamma: 0.0, ..*p },
            Scenario::General => *p,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
}

/// A side condition attached to a claim, evaluated at the point of the check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimCondition {
    pub expression: String,
    pub value: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignReport {
    pub quantity: Quantity,
    pub contract: ContractKind,
    pub wrt: Param,
    pub scenario: Scenario,
    /// Parameter value at which the derivative is taken.
    pub at: f64,
    pub step: f64,
    pub derivative: Option<f64>,
    pub expected: Sign,
    pub condition: Option<ClaimCondition>,
    pub verdict: Verdict,
    pub error: Option<String>,
}

/// Relative finite-difference step.
pub const FD_STEP: f64 = 1e-5;

/// Checks the sign of `∂ quantity / ∂ wrt` for `contract` in `scenario`.
///
/// The scenario is applied to `params` first. A derivative too small to be
/// distinguished from solver noise counts as not having the claimed sign.
pub fn derivative_sign_check(
    quantity: Quantity,
    wrt: Param,
    params: &ChannelParams,
    contract: &ContractSpec,
    scenario: Scenario,
    expected: Sign,
    condition: Option<ClaimCondition>,
    config: &SolverConfig,
) -> SignReport {
    let base = scenario.apply(params);
    let x = wrt.get(&base, contract).unwrap_or(f64::NAN);
    let h = FD_STEP * if x != 0.0 { x.abs() } else { 1.0 };
    let mut report = SignReport {
        quantity,
        contract: contract.kind,
        wrt,
        scenario,
        at: x,
        step: h,
        derivative: None,
        expected,
        condition,
        verdict: Verdict::Noncomputable,
        error: None,
    };
    let eval = |v: f64| -> crate::error::Result<f64> {
        let (mut p, mut c) = (base, *contract);
        wrt.set(&mut p, &mut c, v)?;
        let eq = solve_contract(&p, &c, config)?;
        quantity
            .of(&eq)
            .ok_or_else(|| crate::error::ModelError::Unsupported(format!("{} has no {}", c.kind, quantity.name())))
    };
    let (up, down, mid) = match (eval(x + h), eval(x - h), eval(x)) {
        (Ok(a), Ok(b), Ok(m)) => (a, b, m),
        (a, b, m) => {
            report.error = [a.err(), b.err(), m.err()].into_iter().flatten().next().map(|e| e.to_string());
            return report;
        }
    };
    let d = (up - down) / (2.0 * h);
    report.derivative = Some(d);
    let resolved = (up - down).abs() > 1e-9 * (1.0 + mid.abs());
    let holds = resolved
        && match expected {
            Sign::Positive => d > 0.0,
            Sign::Negative => d < 0.0,
        };
    let cond = report.condition.as_ref().map_or(true, |c| c.holds);
    report.verdict = Verdict::from_outcome(holds, cond);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dcent_greening_rises_with_sensitivity() {
        let r = derivative_sign_check(
            Quantity::Theta,
            Param::Xi,
            &ChannelParams::base(),
            &ContractSpec::dcent(),
            Scenario::S1,
            Sign::Positive,
            None,
            &SolverConfig::default(),
        );
        assert_eq!(r.verdict, Verdict::Confirmed);
        assert!((r.derivative.unwrap() - 4.9867).abs() < 1e-3);
    }

    #[test]
    fn constant_quantity_is_not_signed() {
        let r = derivative_sign_check(
            Quantity::AirlineProfit,
            Param::Xi,
            &ChannelParams::base(),
            &ContractSpec::ltt(2500.0),
            Scenario::S1,
            Sign::Positive,
            None,
            &SolverConfig::default(),
        );
        assert_eq!(r.verdict, Verdict::Violated);
    }

    #[test]
    fn infeasible_perturbation() {
        let p = ChannelParams { i: 4.5 + 1e-9, ..ChannelParams::base() };
        let r = derivative_sign_check(
            Quantity::Theta,
            Param::I,
            &p,
            &ContractSpec::dcent(),
            Scenario::General,
            Sign::Negative,
            None,
            &SolverConfig::default(),
        );
        assert_eq!(r.verdict, Verdict::Noncomputable);
    }
}
