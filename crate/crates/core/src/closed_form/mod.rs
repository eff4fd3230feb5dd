//! Closed-form equilibria, their shorthand aliases, scenario limits and the
//! duopoly expressions.
//!
//! Formulas are treated as data: the numeric solver in [`crate::solver`] is
//! the independent check, and [`foc_residual`] is the regression guard
//! against transcription slips.

mod deltas;
mod duopoly;
mod scenarios;
mod columns;

pub use deltas::{compute_deltas, DeltaSet};
pub use duopoly::{
    duopoly_greening_closed_form, duopoly_price_closed_form, duopoly_rsc_closed_form, DuopolyPoint,
    DuopolyTranscription,
};
pub use scenarios::{s1_sw_cent, s1_w_dcent, s1_w_ltt, s1_w_rsc, s2_profit_cent, s2_sw_cent};
pub use columns::{
    eq_centralised, eq_centralised_with, eq_closed_form, eq_closed_form_with, eq_csc, eq_csc_with, eq_dcent,
    eq_dcent_with, eq_ltt, eq_ltt_with, eq_rsc, eq_rsc_with, printed_cells, column_audit, CellAudit, CellVariant,
    ClosedFormEquilibrium, ClosedFormOptions, Delta3Variant, PrintedCell,
};

use crate::model_core::{ChannelParams, ContractKind, ContractSpec};
use crate::solver::{centralised_gradient, follower_residual};

/// Largest scaled first-order residual of a closed-form point.
///
/// CENT is checked against the welfare gradient; every other column against
/// the follower's stationarity conditions at the closed-form fee.
pub fn foc_residual(params: &ChannelParams, cf: &ClosedFormEquilibrium) -> f64 {
    let e = &cf.eq;
    match cf.column {
        ContractKind::Cent => {
            let g = centralised_gradient(params, e.p, e.theta);
            let scale = 1.0 + e.q.abs() + params.i * e.theta.abs();
            g[0].abs().max(g[1].abs()) / scale
        }
        kind => {
            let contract = match kind {
                ContractKind::Csc => ContractSpec::csc(e.phi_star),
                ContractKind::Rsc => ContractSpec::rsc(e.psi.unwrap_or(1.0)),
                ContractKind::Ltt => ContractSpec::ltt(0.0),
                _ => ContractSpec::dcent(),
            };
            follower_residual(params, &contract, e.w.unwrap_or(f64::NAN), e.p, e.theta)
        }
    }
}
