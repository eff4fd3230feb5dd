//! Efficiency metrics, proposition checks, comparative-statics signs, sweeps
//! and profit thresholds.

mod metrics;
mod propositions;
mod quantities;
mod sensitivity;
mod sweep;
mod thresholds;

use serde::{Deserialize, Serialize};

pub use metrics::{ge, ge_against, swe, swe_against, swe_players, swe_players_against};
pub use propositions::{
    check_all, check_proposition, ClaimReport, NamedValue, PropositionContext, PropositionReport,
};
pub use quantities::{DuopolyParam, Param, Quantity};
pub use sensitivity::{derivative_sign_check, ClaimCondition, Scenario, Sign, SignReport, FD_STEP, S2_XI};
pub use sweep::{
    crossings, duopoly_sweep, interior_peaks, is_monotone, linspace, sweep, Crossing, DuopolySweepResult,
    DuopolySweepRow, SweepResult, SweepRow,
};
pub use thresholds::{nonneg_profit_thresholds, profit_threshold, ProfitThresholds};

/// Outcome of checking one claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// The claimed ordering or sign holds.
    Confirmed,
    /// The claim fails, but so does the condition attached to it.
    ConditionFails,
    /// The condition holds and the claim fails.
    Violated,
    /// A needed solve failed.
    Noncomputable,
}

impl Verdict {
    pub fn from_outcome(claim_holds: bool, condition_holds: bool) -> Self {
        match (claim_holds, condition_holds) {
            (true, _) => Verdict::Confirmed,
            (false, true) => Verdict::Violated,
            (false, false) => Verdict::ConditionFails,
        }
    }

    /// Worst verdict of a group: any violation, then any failed solve, then any failed condition.
    pub fn combine<I: IntoIterator<Item = Verdict>>(it: I) -> Self {
        let all: Vec<Verdict> = it.into_iter().collect();
        for v in [Verdict::Violated, Verdict::Noncomputable, Verdict::ConditionFails] {
            if all.contains(&v) {
                return v;
            }
        }
        Verdict::Confirmed
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Confirmed => "CONFIRMED",
            Verdict::ConditionFails => "CONDITION_FAILS",
            Verdict::Violated => "VIOLATED",
            Verdict::Noncomputable => "NONCOMPUTABLE",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}
