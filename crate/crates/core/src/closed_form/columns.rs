//! Closed-form equilibria of the five structures.
//!
//! Decisions (w, p, θ, q, L, φ) come from the closed forms. Profits, utility
//! and welfare of a [`ClosedFormEquilibrium`] are evaluated through the
//! `model_core` functionals at that decision point; the printed money
//! expressions are kept separately in [`printed_cells`] and checked by
//! [`column_audit`].

use serde::{Deserialize, Serialize};

use super::deltas::{compute_deltas, DeltaSet};
use crate::error::{ModelError, Result};
use crate::model_core::{airline_profit, ChannelParams, ContractKind, ContractSpec, Equilibrium, PHI_STAR};

/// How Δ₃ treats its repeated `- 2Iαμ` term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Delta3Variant {
    AsPrinted,
    /// Counts the term once; this variant satisfies the centralised FOCs.
    #[default]
    Deduplicated,
}

/// Which expression is used for cells whose printed form fails the FOC check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CellVariant {
    AsPrinted,
    #[default]
    Corrected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct ClosedFormOptions {
    pub delta3: Delta3Variant,
    pub cells: CellVariant,
}

impl ClosedFormOptions {
    pub fn as_printed() -> Self {
        ClosedFormOptions { delta3: Delta3Variant::AsPrinted, cells: CellVariant::AsPrinted }
    }

    fn delta3(&self, d: &DeltaSet) -> f64 {
        match self.delta3 {
            Delta3Variant::AsPrinted => d.delta3_printed,
            Delta3Variant::Deduplicated => d.delta3,
        }
    }
}

/// An equilibrium produced from one closed-form column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormEquilibrium {
    /// The column that produced this point.
    pub column: ContractKind,
    pub options: ClosedFormOptions,
    pub eq: Equilibrium,
}

fn guard(params: &ChannelParams) -> Result<()> {
    params.require_concave()?;
    if params.w_prime != 1.0 {
        return Err(ModelError::Unsupported(format!(
            "closed forms assume w' = 1 (got {})",
            params.w_prime
        )));
    }
    Ok(())
}

fn wrap(column: ContractKind, options: ClosedFormOptions, eq: Equilibrium) -> ClosedFormEquilibrium {
    ClosedFormEquilibrium { column, options, eq }
}

/// Centralised (p, θ) from aliases.
fn cent_point(p: &ChannelParams, d: &DeltaSet, o: &ClosedFormOptions) -> (f64, f64) {
    let e = d.e2(p);
    let theta = p.xi * (1.0 - p.mu) * d.delta1 / (p.f * e);
    let fare = o.delta3(d) / e;
    (fare, theta)
}

pub fn eq_centralised(params: &ChannelParams) -> Result<ClosedFormEquilibrium> {
    eq_centralised_with(params, &compute_deltas(params, 1.0, 0.0), &ClosedFormOptions::default())
}

pub fn eq_centralised_with(
    params: &ChannelParams,
    d: &DeltaSet,
    o: &ClosedFormOptions,
) -> Result<ClosedFormEquilibrium> {
    guard(params)?;
    let (p, theta) = cent_point(params, d, o);
    let eq = Equilibrium::assemble(params, &ContractSpec::cent(), None, p, theta, None);
    Ok(wrap(ContractKind::Cent, *o, eq))
}

pub fn eq_dcent(params: &ChannelParams) -> Result<ClosedFormEquilibrium> {
    eq_dcent_with(params, &compute_deltas(params, 1.0, 0.0), &ClosedFormOptions::default())
}

pub fn eq_dcent_with(
    params: &ChannelParams,
    d: &DeltaSet,
    o: &ClosedFormOptions,
) -> Result<ClosedFormEquilibrium> {
    guard(params)?;
    let p = params;
    let e2 = d.e2(p);
    let e3 = d.e3(p);
    let theta = p.xi * (1.0 - p.mu) * d.delta1 / (2.0 * p.f * e3);
    let w = d.delta4 / (2.0 * p.beta * p.f) - p.i * p.mu * d.delta1 / (2.0 * p.f * e3);
    let fare = match o.cells {
        CellVariant::AsPrinted => (p.f * d.delta5 - e2) / (2.0 * p.beta * e3),
        CellVariant::Corrected => {
            d.delta4 / (2.0 * p.beta * p.f)
                + p.c_al
                + p.i * (2.0 - 3.0 * p.mu) * d.delta1 / (2.0 * p.f * e3)
        }
    };
    let eq = Equilibrium::assemble(p, &ContractSpec::dcent(), Some(w), fare, theta, None);
    Ok(wrap(ContractKind::DCent, *o, eq))
}

pub fn eq_csc(params: &ChannelParams) -> Result<ClosedFormEquilibrium> {
    eq_csc_with(params, &compute_deltas(params, 1.0, 0.0), &ClosedFormOptions::default())
}

pub fn eq_csc_with(
    params: &ChannelParams,
    d: &DeltaSet,
    o: &ClosedFormOptions,
) -> Result<ClosedFormEquilibrium> {
    guard(params)?;
    if !crate::model_core::concavity_check(params).cost_sharing {
        return Err(ModelError::NoBestResponse("airline objective not concave at the analytic cost share".into()));
    }
    let p = params;
    let (b, i, mu, f, g) = (p.beta, p.i, p.mu, p.f, p.gamma);
    let theta = 6.0 * p.xi * (1.0 - mu) * d.delta1 / (f * d.delta10);
    let (w, fare) = match o.cells {
        CellVariant::AsPrinted => (
            d.delta6 / (f * b * b * i * d.delta10),
            (f * d.delta7 - g * (3.0 * d.delta2 + 4.0 * b * i * (3.0 - 2.0 * mu))) / (b * f * d.delta10),
        ),
        CellVariant::Corrected => {
            let d7 = d.delta7 + 8.0 * b * b * i * mu * (p.c_ap + p.c_al);
            let fare =
                (f * d7 - g * (3.0 * d.delta2 + 4.0 * b * i * (3.0 - 2.0 * mu))) / (b * f * d.delta10);
            let d6 = csc_delta6_corrected(p, d);
            (d6 / (f * b * b * i * d.delta10), fare)
        }
    };
    let eq = Equilibrium::assemble(p, &ContractSpec::csc(Some(PHI_STAR)), Some(w), fare, theta, None);
    Ok(wrap(ContractKind::Csc, *o, eq))
}

/// Numerator of the cost-sharing fee with the landing-cost bracket replaced by Δ₄.
pub(crate) fn csc_delta6_corrected(p: &ChannelParams, d: &DeltaSet) -> f64 {
    let (b, i, mu, f, x2) = (p.beta, p.i, p.mu, p.f, p.xi * p.xi);
    2.0 * b * i * (1.0 - mu) * (8.0 * b * i - 3.0 * x2) * d.delta4
        + (p.gamma - p.alpha * f + b * p.c_al * f) * (8.0 * b * b * i * i * mu - 3.0 * b * i * x2 * (1.0 - mu))
}

pub fn eq_rsc(params: &ChannelParams, psi: f64) -> Result<ClosedFormEquilibrium> {
    eq_rsc_with(params, psi, &compute_deltas(params, psi, 0.0), &ClosedFormOptions::default())
}

/// `d` must have been computed with the same `psi` (Δ₈ depends on it).
pub fn eq_rsc_with(
    params: &ChannelParams,
    psi: f64,
    d: &DeltaSet,
    o: &ClosedFormOptions,
) -> Result<ClosedFormEquilibrium> {
    guard(params)?;
    let contract = ContractSpec::rsc(psi);
    contract.validate()?;
    let p = params;
    let (fare, theta) = cent_point(p, d, o);
    let w = (2.0 * p.i * p.mu * psi * p.gamma - p.f * d.delta8) / (p.f * d.e2(p));
    let eq = Equilibrium::assemble(p, &contract, Some(w), fare, theta, None);
    Ok(wrap(ContractKind::Rsc, *o, eq))
}

pub fn eq_ltt(params: &ChannelParams, pi_bar: f64) -> Result<ClosedFormEquilibrium> {
    eq_ltt_with(params, pi_bar, &compute_deltas(params, 1.0, pi_bar), &ClosedFormOptions::default())
}

/// `d` must have been computed with the same `pi_bar` (Δ₁₃ depends on it).
///
/// # Errors
/// [`ModelError::ReservationInfeasible`] when the airline's gross surplus is below `pi_bar`.
pub fn eq_ltt_with(
    params: &ChannelParams,
    pi_bar: f64,
    d: &DeltaSet,
    o: &ClosedFormOptions,
) -> Result<ClosedFormEquilibrium> {
    guard(params)?;
    let contract = ContractSpec::ltt(pi_bar);
    contract.validate()?;
    let p = params;
    let e = d.e2(p);
    let (fare, theta) = cent_point(p, d, o);
    let w = (d.delta9 * (1.0 - p.mu) - 2.0 * p.i * p.mu * d.delta11) / (p.f * e);
    let l = d.delta13 / (p.f * p.f * e * e);
    let gross = airline_profit(p, &contract, w, fare, theta, 0.0);
    if gross < pi_bar {
        return Err(ModelError::ReservationInfeasible { gross, pi_bar });
    }
    let mut eq = Equilibrium::assemble(p, &contract, Some(w), fare, theta, Some(l));
    eq.pi_al = Some(pi_bar);
    Ok(wrap(ContractKind::Ltt, *o, eq))
}

/// Closed form for any kind, with contract terms drawn from `psi` / `pi_bar`.
pub fn eq_closed_form(
    params: &ChannelParams,
    kind: ContractKind,
    psi: f64,
    pi_bar: f64,
    o: &ClosedFormOptions,
) -> Result<ClosedFormEquilibrium> {
    let d = compute_deltas(params, psi, pi_bar);
    eq_closed_form_with(params, kind, psi, pi_bar, &d, o)
}

pub fn eq_closed_form_with(
    params: &ChannelParams,
    kind: ContractKind,
    psi: f64,
    pi_bar: f64,
    d: &DeltaSet,
    o: &ClosedFormOptions,
) -> Result<ClosedFormEquilibrium> {
    match kind {
        ContractKind::Cent => eq_centralised_with(params, d, o),
        ContractKind::DCent => eq_dcent_with(params, d, o),
        ContractKind::Csc => eq_csc_with(params, d, o),
        ContractKind::Rsc => eq_rsc_with(params, psi, d, o),
        ContractKind::Ltt => eq_ltt_with(params, pi_bar, d, o),
    }
}

/// One printed money cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrintedCell {
    pub column: ContractKind,
    pub row: &'static str,
    pub value: f64,
}

/// Evaluates the printed profit, utility and welfare expressions verbatim.
///
/// Several of these cells are typeset ambiguously; where a fraction bar is
/// misplaced the transcription follows the layout as closely as the
/// surrounding terms allow.
pub fn printed_cells(params: &ChannelParams, psi: f64, pi_bar: f64) -> Vec<PrintedCell> {
    let d = compute_deltas(params, psi, pi_bar);
    let p = params;
    let (b, i, mu, f, g, x2) = (p.beta, p.i, p.mu, p.f, p.gamma, p.xi * p.xi);
    let cf = p.c * f;
    let om = 1.0 - mu;
    let d1 = d.delta1;
    let e = d.e2(p);
    let e3 = d.e3(p);
    let d10 = d.delta10;
    let w_ltt = (d.delta9 * om - 2.0 * i * mu * d.delta11) / (f * e);
    let l = d.delta13 / (f * f * e * e);

    let w_cent = i * om * om * d1 * d1 / (f * f * e);
    let cell = |column, row, value| PrintedCell { column, row, value };
    use ContractKind::*;
    vec![
        cell(Cent, "W", w_cent),
        cell(DCent, "pi_AL", i * (4.0 * b * i - x2) * om * om * d1 * d1 / (4.0 * f * f * e3 * e3) - cf),
        cell(
            DCent,
            "pi_AP",
            cf / (i * d1 * e3 * om * (d.delta5 + 2.0 * b * f))
                + (-b * i * i * mu * d1 * d1 * om) / (2.0 * f * f * e3 * e3)
                - b * p.c_ap * i * d1 * om / (f * e3),
        ),
        cell(
            DCent,
            "U_AP",
            i * d1 * om * om * (d.delta5 + 2.0 * b * f - 2.0 * b * p.c_ap * f) / (2.0 * f * f * e3) + cf * om,
        ),
        cell(DCent, "W", i * om * om * (3.0 * d.delta2 + 10.0 * b * i * mu) * d1 * d1 / (4.0 * f * f * e3 * e3)),
        cell(
            Csc,
            "pi_AL",
            8.0 * i * d1 * (f * d.delta7 - 3.0 * d.delta2 - 4.0 * b * i * (3.0 - 2.0 * mu)) * om / (f * f * d10 * d10)
                - 8.0 * b * p.c_al * i * d1 * om / (f * d10)
                - 8.0 * d1 * d.delta6 * om / (b * f * f * d10 * d10)
                - 24.0 * i * d1 * d1 * x2 * om * om / (f * f * d10 * d10)
                - cf,
        ),
        cell(
            Csc,
            "pi_AP",
            8.0 * d1 * (f * i * (9.0 * d.delta2 + 4.0 * b * i * (8.0 * mu - 1.0)) * b * b + d.delta9) * om
                / (b * f * f * d10 * d10)
                - 12.0 * i * d1 * d1 * x2 * om * om / (f * f * d10 * d10)
                - 8.0 * b * p.c_ap * i * d1 * om / (f * d10)
                + cf,
        ),
        cell(
            Csc,
            "U_AP",
            4.0 * d1 * om * om * d.delta12 / (b * f * f * d10 * d10)
                + cf * om
                + 8.0 * b * i * d1 * (1.0 - p.c_ap) * om * om / (f * d10),
        ),
        cell(
            Csc,
            "W",
            4.0 * i * om * om * (15.0 * d.delta2 + 4.0 * b * i * (2.0 - 3.0 * mu)) * d1 * d1 / (f * f * d10 * d10),
        ),
        cell(
            Rsc,
            "pi_AL",
            2.0 * b * i * d1 * d.delta4 * psi * om / (f * e * e)
                - 2.0 * b * p.c_al * i * d1 * om / (f * e)
                - i * d1 * om * (d1 * x2 * om + 2.0 * b * (f * d.delta8 - 2.0 * i * mu * psi * g)) / (f * f * e * e)
                - cf,
        ),
        cell(
            Rsc,
            "pi_AP",
            2.0 * b * i * d1 * om * (f * e - f * d.delta8 + 2.0 * i * mu * psi * g) / (f * f * e * e)
                - 2.0 * b * p.c_ap * i * d1 * om / (f * e)
                + cf
                + 2.0 * b * i * d1 * d.delta4 * om * (1.0 - psi) / (f * e * e),
        ),
        cell(
            Rsc,
            "U_AP",
            2.0 * b * i * i * mu * d1 * (d1 + 2.0 * psi * g) * om * om / (f * f * e * e)
                - 2.0 * b * i * d1 * om * om * (d.delta8 - d.delta4 - d.delta2 + 2.0 * b * i * mu) / (f * e * e)
                + cf * om,
        ),
        cell(Rsc, "W", w_cent),
        cell(Ltt, "pi_AL", pi_bar),
        cell(
            Ltt,
            "pi_AP",
            l + cf + 2.0 * b * i * d1 * (w_ltt + 1.0) / om - 2.0 * b * p.c_ap * i * d1 * om / (f * e),
        ),
        cell(
            Ltt,
            "U_AP",
            2.0 * b * i * d1 * om * om * ((om * d.delta9 + i * mu * d.delta11) / (-2.0 * i * mu * d.delta11))
                / (f * f * e * e)
                - 2.0 * b * i * d1 * (p.c_ap - 1.0) * om * om / (f * e)
                + om * (l + cf),
        ),
        cell(Ltt, "W", w_cent),
    ]
}

/// A printed cell next to the value of the same quantity at the closed-form point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellAudit {
    pub column: ContractKind,
    pub row: &'static str,
    pub printed: f64,
    pub reference: f64,
    pub rel_error: f64,
    pub matches: bool,
}

/// Compares every printed money cell with the functional evaluation.
pub fn column_audit(params: &ChannelParams, psi: f64, pi_bar: f64, rel_tol: f64) -> Result<Vec<CellAudit>> {
    let o = ClosedFormOptions::default();
    let mut out = Vec::new();
    for cell in printed_cells(params, psi, pi_bar) {
        let eq = eq_closed_form(params, cell.column, psi, pi_bar, &o)?.eq;
        let reference = match cell.row {
            "pi_AL" => eq.pi_al.unwrap_or(f64::NAN),
            "pi_AP" => eq.pi_ap.unwrap_or(f64::NAN),
            "U_AP" => eq.u_ap.unwrap_or(f64::NAN),
            _ => eq.sw,
        };
        let rel_error = (cell.value - reference).abs() / reference.abs().max(1.0);
        out.push(CellAudit {
            column: cell.column,
            row: cell.row,
            printed: cell.value,
            reference,
            rel_error,
            matches: rel_error <= rel_tol,
        });
    }
    Ok(out)
}
