//! Checks of the eleven published propositions against solver equilibria.
//!
//! Each proposition becomes a list of claims (an ordering chain or a
//! derivative sign), each with the printed side condition evaluated where one
//! is attached. Conditions are reported, never used to skip a claim.

use serde::{Deserialize, Serialize};

use super::quantities::{Param, Quantity};
use super::sensitivity::{derivative_sign_check, ClaimCondition, Scenario, Sign, SignReport, FD_STEP};
use super::Verdict;
use crate::closed_form::compute_deltas;
use crate::error::{ModelError, Result};
use crate::model_core::{ChannelParams, ContractKind, ContractSpec, DuopolyParams, Equilibrium, TaxPolicy};
use crate::solver::{duopoly_joint_foc, duopoly_solve, solve_contract, solve_with_tax, SolverConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: f64,
}

fn nv(name: impl Into<String>, value: f64) -> NamedValue {
    NamedValue { name: name.into(), value }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: String,
    pub condition: Option<ClaimCondition>,
    /// The computed chain or derivative, written out.
    pub observed: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropositionReport {
    pub id: u8,
    pub statement: String,
    pub condition_value: Vec<NamedValue>,
    pub condition_holds: bool,
    pub ordering_observed: Vec<String>,
    pub claims: Vec<ClaimReport>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

/// Inputs shared by all proposition checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropositionContext {
    pub params: ChannelParams,
    /// Retained share used for the table-based propositions.
    pub psi: f64,
    /// Retained share used for the scenario propositions.
    pub scenario_psi: f64,
    pub pi_bar: f64,
    pub theta0: f64,
    /// Tax levels for D-CENT, CSC, RSC and LTT in the taxed-greening comparison.
    pub tax_levels: [f64; 4],
    pub price_duopoly: DuopolyParams,
    pub greening_duopoly: DuopolyParams,
    /// Retained shares scanned for the RSC/LTT preference dichotomy.
    pub psi_scan: Vec<f64>,
}

impl Default for PropositionContext {
    fn default() -> Self {
        PropositionContext {
            params: ChannelParams::base(),
            psi: 0.68,
            scenario_psi: 0.82,
            pi_bar: 2500.0,
            theta0: 6.5,
            tax_levels: [6.0, 2.0, 6.0, 6.0],
            price_duopoly: DuopolyParams::price_base(0.3, 0.2),
            greening_duopoly: DuopolyParams::greening_base(0.6, 0.3),
            psi_scan: (1..=20).map(|k| k as f64 * 0.05).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Rel {
    Eq,
    Gt,
}

const EQ_TOL: f64 = 1e-6;
const GT_TOL: f64 = 1e-9;

fn scale(a: f64, b: f64) -> f64 {
    a.abs().max(b.abs()).max(1.0)
}

fn rel_holds(a: f64, b: f64, r: Rel) -> bool {
    match r {
        Rel::Eq => (a - b).abs() <= EQ_TOL * scale(a, b),
        Rel::Gt => a - b > GT_TOL * scale(a, b),
    }
}

fn observed_rel(a: f64, b: f64) -> &'static str {
    if rel_holds(a, b, Rel::Eq) {
        "="
    } else if a > b {
        ">"
    } else {
        "<"
    }
}

/// Checks `items[0] rels[0] items[1] rels[1] ...` and writes out what was actually found.
fn chain(items: &[(&str, f64)], rels: &[Rel]) -> (bool, String) {
    let ok = rels.iter().enumerate().all(|(k, &r)| rel_holds(items[k].1, items[k + 1].1, r));
    let mut s = format!("{}={:.6}", items[0].0, items[0].1);
    for k in 1..items.len() {
        s.push_str(&format!(" {} {}={:.6}", observed_rel(items[k - 1].1, items[k].1), items[k].0, items[k].1));
    }
    (ok, s)
}

fn chain_claim(claim: &str, items: &[(&str, f64)], rels: &[Rel], cond: Option<ClaimCondition>) -> ClaimReport {
    let (ok, observed) = chain(items, rels);
    let ch = cond.as_ref().map_or(true, |c| c.holds);
    ClaimReport { claim: claim.into(), condition: cond, observed, verdict: Verdict::from_outcome(ok, ch) }
}

fn cond(expression: &str, value: f64, holds: bool) -> ClaimCondition {
    ClaimCondition { expression: expression.into(), value, holds }
}

struct Table {
    cent: Equilibrium,
    dcent: Equilibrium,
    csc: Equilibrium,
    rsc: Equilibrium,
    ltt: Equilibrium,
}

fn solve_table(ctx: &PropositionContext, config: &SolverConfig) -> Result<Table> {
    let s = |kind| solve_contract(&ctx.params, &ContractSpec::for_kind(kind, ctx.psi, ctx.pi_bar), config);
    Ok(Table {
        cent: s(ContractKind::Cent)?,
        dcent: s(ContractKind::DCent)?,
        csc: s(ContractKind::Csc)?,
        rsc: s(ContractKind::Rsc)?,
        ltt: s(ContractKind::Ltt)?,
    })
}

fn finish(
    id: u8,
    statement: &str,
    condition_value: Vec<NamedValue>,
    condition_holds: bool,
    claims: Vec<ClaimReport>,
    mut notes: Vec<String>,
) -> PropositionReport {
    let verdict = Verdict::combine(claims.iter().map(|c| c.verdict));
    if !condition_holds && verdict == Verdict::Confirmed {
        notes.push("the claim holds although the printed condition does not, so the condition is not necessary".into());
    }
    PropositionReport {
        id,
        statement: statement.into(),
        condition_value,
        condition_holds,
        ordering_observed: claims.iter().map(|c| c.observed.clone()).collect(),
        claims,
        notes,
        verdict,
    }
}

fn prop1(ctx: &PropositionContext, t: &Table) -> PropositionReport {
    let p = &ctx.params;
    let d2 = compute_deltas(p, ctx.psi, ctx.pi_bar).delta2;
    let bim = p.beta * p.i * p.mu;
    let bi = p.beta * p.i;
    let ratio = (3.0 * d2 + 10.0 * bim) * (9.0 * d2 + 4.0 * bi * (8.0 * p.mu - 1.0)).powi(2)
        / (4.0 * (15.0 * d2 - 4.0 * bi * (3.0 * p.mu - 2.0)) * (2.0 * d2 + 6.0 * bim).powi(2));
    let holds = ratio > 1.0;
    let c = chain_claim(
        "SW_LTT = SW_RSC = SW_CENT > SW_D-CENT > SW_CSC",
        &[
            ("SW_LTT", t.ltt.sw),
            ("SW_RSC", t.rsc.sw),
            ("SW_CENT", t.cent.sw),
            ("SW_D-CENT", t.dcent.sw),
            ("SW_CSC", t.csc.sw),
        ],
        &[Rel::Eq, Rel::Eq, Rel::Gt, Rel::Gt],
        Some(cond("welfare ratio condition > 1", ratio, holds)),
    );
    finish(1, "welfare ordering across structures", vec![nv("ratio", ratio)], holds, vec![c], vec![])
}

fn prop2(ctx: &PropositionContext, t: &Table) -> PropositionReport {
    let p = &ctx.params;
    let d = compute_deltas(p, ctx.psi, ctx.pi_bar);
    let (b, i, mu, f) = (p.beta, p.i, p.mu, p.f);
    let e2 = d.delta2 + 2.0 * b * i * mu;
    let e3 = d.delta2 + 3.0 * b * i * mu;
    let t1 = (d.delta9 * (1.0 - mu) + d.delta8 * f) / (2.0 * i * mu * (d.delta11 + p.gamma * ctx.psi));
    let t2 = b * b * i * mu * d.delta1 * d.delta11 / (e3 * (f * d.delta4 * d.delta11 - 2.0 * d.delta6));
    let t3 = (d.delta2 * d.delta4 + b * i * mu * (3.0 * d.delta4 - d.delta1)) * e2
        / (2.0 * b * e3 * (d.delta9 * (1.0 - mu) - 2.0 * i * mu * d.delta11));
    let m = t1.min(t2).min(t3);
    let holds = m > 1.0;
    let w = |e: &Equilibrium| e.w.unwrap_or(f64::NAN);
    let c = chain_claim(
        "w_CSC > w_D-CENT > w_LTT > w_RSC",
        &[("w_CSC", w(&t.csc)), ("w_D-CENT", w(&t.dcent)), ("w_LTT", w(&t.ltt)), ("w_RSC", w(&t.rsc))],
        &[Rel::Gt, Rel::Gt, Rel::Gt],
        Some(cond("min of three fee ratios > 1", m, holds)),
    );
    finish(
        2,
        "conveyance fee ordering",
        vec![nv("term1", t1), nv("term2", t2), nv("term3", t3), nv("min", m)],
        holds,
        vec![c],
        vec![],
    )
}

fn prop3(ctx: &PropositionContext, t: &Table) -> PropositionReport {
    let p = &ctx.params;
    let bi = p.beta * p.i;
    let upper = 4.0 * bi * (2.0 + 5.0 * p.mu);
    let middle = 3.0 * (1.0 - p.mu) * p.xi * p.xi;
    let lower = 2.0 * bi * (4.0 - 5.0 * p.mu);
    let holds = upper > middle && middle > lower;
    let c = chain_claim(
        "theta_CENT = theta_LTT = theta_RSC > theta_CSC > theta_D-CENT",
        &[
            ("theta_CENT", t.cent.theta),
            ("theta_LTT", t.ltt.theta),
            ("theta_RSC", t.rsc.theta),
            ("theta_CSC", t.csc.theta),
            ("theta_D-CENT", t.dcent.theta),
        ],
        &[Rel::Eq, Rel::Eq, Rel::Gt, Rel::Gt],
        Some(cond("4 beta I (2 + 5 mu) > 3 (1 - mu) xi^2 > 2 beta I (4 - 5 mu)", middle, holds)),
    );
    finish(
        3,
        "greening ordering",
        vec![nv("upper", upper), nv("middle", middle), nv("lower", lower)],
        holds,
        vec![c],
        vec![],
    )
}

fn prop4(ctx: &PropositionContext, t: &Table) -> PropositionReport {
    let p = &ctx.params;
    let d = compute_deltas(p, ctx.psi, ctx.pi_bar);
    let (b, i, mu, f) = (p.beta, p.i, p.mu, p.f);
    let e2 = d.delta2 + 2.0 * b * i * mu;
    let e3 = d.delta2 + 3.0 * b * i * mu;
    let t1 = (f * d.delta5 - e2) * e2 / (2.0 * b * f * e3 * d.delta3);
    let t2 = (f * d.delta7 - p.gamma * (3.0 * d.delta2 + 4.0 * b * i * (3.0 - 2.0 * mu))) * e3
        / (d.delta10 * (f * d.delta5 - e2));
    let m = t1.min(t2);
    let fare_holds = m > 1.0;
    let dq = 16.0 * b * i - 5.0 * p.xi * p.xi;
    let fares = chain_claim(
        "p_CSC > p_D-CENT > p_CENT = p_LTT = p_RSC",
        &[
            ("p_CSC", t.csc.p),
            ("p_D-CENT", t.dcent.p),
            ("p_CENT", t.cent.p),
            ("p_LTT", t.ltt.p),
            ("p_RSC", t.rsc.p),
        ],
        &[Rel::Gt, Rel::Gt, Rel::Eq, Rel::Eq],
        Some(cond("min of two fare ratios > 1", m, fare_holds)),
    );
    let demand = chain_claim(
        "q_CENT = q_LTT = q_RSC > q_CSC > q_D-CENT",
        &[
            ("q_CENT", t.cent.q),
            ("q_LTT", t.ltt.q),
            ("q_RSC", t.rsc.q),
            ("q_CSC", t.csc.q),
            ("q_D-CENT", t.dcent.q),
        ],
        &[Rel::Eq, Rel::Eq, Rel::Gt, Rel::Gt],
        Some(cond("16 beta I - 5 xi^2 > 0", dq, dq > 0.0)),
    );
    finish(
        4,
        "fare and demand ordering",
        vec![nv("term1", t1), nv("term2", t2), nv("min", m), nv("16 beta I - 5 xi^2", dq)],
        fare_holds && dq > 0.0,
        vec![fares, demand],
        vec![],
    )
}

fn prop5(ctx: &PropositionContext, config: &SolverConfig) -> Result<PropositionReport> {
    let ltt = solve_contract(&ctx.params, &ContractSpec::ltt(ctx.pi_bar), config)?;
    let (al_l, ap_l) = (ltt.pi_al.unwrap_or(f64::NAN), ltt.pi_ap.unwrap_or(f64::NAN));
    let mut claims = vec![];
    let mut switch: Option<f64> = None;
    let mut prev: Option<bool> = None;
    for &psi in &ctx.psi_scan {
        let r = solve_contract(&ctx.params, &ContractSpec::rsc(psi), config);
        let claim = format!("psi={psi:.4}: (pi_AL_LTT >= pi_AL_RSC) iff (pi_AP_RSC >= pi_AP_LTT)");
        let Ok(rsc) = r else {
            claims.push(ClaimReport {
                claim,
                condition: None,
                observed: format!("RSC solve failed: {}", r.unwrap_err()),
                verdict: Verdict::Noncomputable,
            });
            continue;
        };
        let (al_r, ap_r) = (rsc.pi_al.unwrap_or(f64::NAN), rsc.pi_ap.unwrap_or(f64::NAN));
        let airline_prefers_ltt = al_l >= al_r;
        let airport_prefers_rsc = ap_r >= ap_l;
        if let Some(pv) = prev {
            if pv != airline_prefers_ltt && switch.is_none() {
                switch = Some(psi);
            }
        }
        prev = Some(airline_prefers_ltt);
        claims.push(ClaimReport {
            claim,
            condition: None,
            observed: format!(
                "pi_AL: LTT={al_l:.6} RSC={al_r:.6}; pi_AP: RSC={ap_r:.6} LTT={ap_l:.6}"
            ),
            verdict: Verdict::from_outcome(airline_prefers_ltt == airport_prefers_rsc, true),
        });
    }
    let sigma1 = compute_deltas(&ctx.params, ctx.psi, ctx.pi_bar).sigma1;
    let mut values = vec![nv("sigma1", sigma1)];
    if let Some(s) = switch {
        values.push(nv("first psi where the airline preference flips", s));
    }
    Ok(finish(
        5,
        "airline and airport rank RSC and LTT in opposite order",
        values,
        true,
        claims,
        vec!["checked as a dichotomy over a psi scan; the printed psi sets are reported via sigma1 only".into()],
    ))
}

struct SignSpec {
    label: String,
    quantity: Quantity,
    kind: ContractKind,
    sign: Sign,
    condition: Option<ClaimCondition>,
}

fn sign_claims(
    ctx: &PropositionContext,
    wrt: Param,
    scenario: Scenario,
    specs: Vec<SignSpec>,
    config: &SolverConfig,
) -> Vec<ClaimReport> {
    specs
        .into_iter()
        .map(|s| {
            let c = ContractSpec::for_kind(s.kind, ctx.scenario_psi, ctx.pi_bar);
            let r: SignReport =
                derivative_sign_check(s.quantity, wrt, &ctx.params, &c, scenario, s.sign, s.condition, config);
            let observed = match (r.derivative, &r.error) {
                (Some(d), _) => format!("d {}_{} / d {} = {:.6e} at {} = {}", s.quantity.name(), s.kind, wrt, d, wrt, r.at),
                (None, Some(e)) => format!("not computable: {e}"),
                _ => "not computable".into(),
            };
            ClaimReport { claim: s.label, condition: r.condition, observed, verdict: r.verdict }
        })
        .collect()
}

fn four(label: [String; 4], quantity: Quantity, sign: Sign) -> Vec<SignSpec> {
    ContractKind::CONTRACTS
        .into_iter()
        .zip(label)
        .map(|(kind, label)| SignSpec { label, quantity, kind, sign, condition: None })
        .collect()
}

fn s1_conditions(ctx: &PropositionContext) -> (ClaimCondition, ClaimCondition) {
    let p = Scenario::S1.apply(&ctx.params);
    let bi = p.beta * p.i;
    let x2 = p.xi * p.xi;
    let c1 = (16.0 * bi - 9.0 * x2) / (32.0 * bi - 9.0 * x2).powi(3);
    let c2 = x2 + 4.0 * bi * (1.0 - 2.0 * ctx.scenario_psi);
    (
        cond("(16 beta I - 9 xi^2) / (32 beta I - 9 xi^2)^3 > 0", c1, c1 > 0.0),
        cond("xi^2 + 4 beta I (1 - 2 psi) < 0", c2, c2 < 0.0),
    )
}

fn prop6_7(ctx: &PropositionContext, id: u8, config: &SolverConfig) -> PropositionReport {
    let (wrt, sign, names) = if id == 6 {
        (Param::Xi, Sign::Positive, ["xi", "greening sensitivity"])
    } else {
        (Param::I, Sign::Negative, ["I", "greening cost"])
    };
    let (c1, c2) = s1_conditions(ctx);
    let op = if sign == Sign::Positive { ">" } else { "<" };
    let lbl = |q: &str, k: &str| format!("d{q}_{k}/d{} {op} 0", names[0]);
    let mut specs = vec![];
    for (q, qn) in [(Quantity::Theta, "theta"), (Quantity::Fare, "p")] {
        specs.extend(four(
            [lbl(qn, "D-CENT"), lbl(qn, "CSC"), lbl(qn, "RSC"), lbl(qn, "LTT")],
            q,
            sign,
        ));
    }
    specs.push(SignSpec {
        label: lbl("pi_AL", "D-CENT"),
        quantity: Quantity::AirlineProfit,
        kind: ContractKind::DCent,
        sign,
        condition: Some(c1.clone()),
    });
    specs.push(SignSpec {
        label: lbl("pi_AL", "CSC"),
        quantity: Quantity::AirlineProfit,
        kind: ContractKind::Csc,
        sign,
        condition: Some(c1.clone()),
    });
    specs.push(SignSpec {
        label: lbl("pi_AL", "RSC"),
        quantity: Quantity::AirlineProfit,
        kind: ContractKind::Rsc,
        sign,
        condition: Some(c2.clone()),
    });
    specs.extend(four(
        [lbl("pi_AP", "D-CENT"), lbl("pi_AP", "CSC"), lbl("pi_AP", "RSC"), lbl("pi_AP", "LTT")],
        Quantity::AirportProfit,
        sign,
    ));
    let claims = sign_claims(ctx, wrt, Scenario::S1, specs, config);
    finish(
        id,
        if id == 6 { "effect of greening sensitivity (mu = 0, gamma = 0)" } else { "effect of greening cost (mu = 0, gamma = 0)" },
        vec![nv("airline-profit condition", c1.value), nv("revenue-sharing condition", c2.value), nv("psi", ctx.scenario_psi)],
        c1.holds && c2.holds,
        claims,
        vec![format!("derivatives with respect to {} by central differences, relative step {FD_STEP:e}", names[1])],
    )
}

fn prop8(ctx: &PropositionContext, config: &SolverConfig) -> PropositionReport {
    let p = Scenario::S2.apply(&ctx.params);
    let mu_ok = p.mu < 2.0 / 3.0;
    let c = cond("mu < 2/3", p.mu, mu_ok);
    let mut specs = vec![];
    for (q, qn) in [(Quantity::Fare, "p"), (Quantity::Fee, "w")] {
        specs.extend(four(
            ["D-CENT", "CSC", "RSC", "LTT"].map(|k| format!("d{qn}_{k}/dmu < 0")),
            q,
            Sign::Negative,
        ));
    }
    for kind in [ContractKind::DCent, ContractKind::Rsc] {
        specs.push(SignSpec {
            label: format!("dpi_AL_{kind}/dmu > 0"),
            quantity: Quantity::AirlineProfit,
            kind,
            sign: Sign::Positive,
            condition: Some(c.clone()),
        });
    }
    for kind in [ContractKind::DCent, ContractKind::Rsc, ContractKind::Ltt] {
        specs.push(SignSpec {
            label: format!("dpi_AP_{kind}/dmu < 0"),
            quantity: Quantity::AirportProfit,
            kind,
            sign: Sign::Negative,
            condition: Some(c.clone()),
        });
    }
    let claims = sign_claims(ctx, Param::Mu, Scenario::S2, specs, config);
    finish(
        8,
        "effect of the CSR weight (xi -> 0, gamma = 0)",
        vec![nv("mu", p.mu), nv("psi", ctx.scenario_psi)],
        mu_ok,
        claims,
        vec![],
    )
}

fn prop9(ctx: &PropositionContext, config: &SolverConfig) -> Result<PropositionReport> {
    let p = &ctx.params;
    let taxed = |kind: ContractKind, t: f64| -> Result<Equilibrium> {
        let tax = TaxPolicy::new(t, ctx.theta0)?;
        solve_with_tax(p, &ContractSpec::for_kind(kind, ctx.psi, ctx.pi_bar), &tax, config)
    };
    let [td, tc, tr, tl] = ctx.tax_levels;
    let rsc_t = taxed(ContractKind::Rsc, tr)?;
    let ltt_t = taxed(ContractKind::Ltt, tl)?;
    let csc_t = taxed(ContractKind::Csc, tc)?;
    let dcent_t = taxed(ContractKind::DCent, td)?;
    let rsc = solve_contract(p, &ContractSpec::rsc(ctx.psi), config)?;
    let ltt = solve_contract(p, &ContractSpec::ltt(ctx.pi_bar), config)?;
    let c = chain_claim(
        "theta_RSC_T = theta_LTT_T > theta_RSC = theta_LTT > theta_CSC_T > theta_D-CENT_T",
        &[
            ("theta_RSC_T", rsc_t.theta),
            ("theta_LTT_T", ltt_t.theta),
            ("theta_RSC", rsc.theta),
            ("theta_LTT", ltt.theta),
            ("theta_CSC_T", csc_t.theta),
            ("theta_D-CENT_T", dcent_t.theta),
        ],
        &[Rel::Eq, Rel::Gt, Rel::Eq, Rel::Gt, Rel::Gt],
        None,
    );
    Ok(finish(
        9,
        "taxed non-coordinating greening stays below untaxed coordinating greening",
        vec![nv("t_D-CENT", td), nv("t_CSC", tc), nv("t_RSC", tr), nv("t_LTT", tl), nv("theta0", ctx.theta0)],
        true,
        vec![c],
        vec![],
    ))
}

/// `d(x_i - x_j)/d param` at fixed fee by central differences on the joint first-order solve.
fn duopoly_gap_derivative(
    d: &DuopolyParams,
    w: f64,
    i: usize,
    bump: impl Fn(&mut DuopolyParams, f64),
    value: f64,
    greening: bool,
) -> Result<f64> {
    let h = FD_STEP * value.abs().max(1e-3);
    let gap = |v: f64| -> Result<f64> {
        let mut dp = *d;
        bump(&mut dp, v);
        let x = duopoly_joint_foc(&dp, ContractKind::DCent, w)?;
        let arr = if greening { x.theta } else { x.p };
        Ok(arr[i] - arr[1 - i])
    };
    Ok((gap(value + h)? - gap(value - h)?) / (2.0 * h))
}

fn prop10(ctx: &PropositionContext, config: &SolverConfig) -> Result<PropositionReport> {
    let d = ctx.price_duopoly;
    let w = duopoly_solve(&d, ContractKind::DCent, config)?.w;
    let bs = [d.beta1, d.beta2];
    let mut claims = vec![];
    let mut values = vec![nv("w", w)];
    let c2v = w * d.xi * d.xi / (2.0 * (d.alpha + d.beta * w));
    let mut all = true;
    for i in 0..2 {
        let c1v = d.xi * d.xi / (4.0 * d.beta) + 2.0 * bs[i];
        let holds = d.i > c1v && d.i > c2v;
        all &= holds;
        values.push(nv(format!("xi^2/(4 beta) + 2 beta_{}", i + 1), c1v));
        let bump = move |dp: &mut DuopolyParams, v: f64| if i == 0 { dp.beta1 = v } else { dp.beta2 = v };
        for greening in [false, true] {
            let dv = duopoly_gap_derivative(&d, w, i, bump, bs[i], greening)?;
            let (x, j) = (if greening { "theta" } else { "p" }, 2 - i);
            let claim = format!("d({x}_{} - {x}_{j})/d beta_{} > 0", i + 1, i + 1);
            claims.push(ClaimReport {
                claim,
                condition: Some(cond("I > xi^2/(4 beta) + 2 beta_i and I > w xi^2 / (2 (alpha + beta w))", c1v.max(c2v), holds)),
                observed: format!("{dv:.6e}"),
                verdict: Verdict::from_outcome(dv > 0.0, holds),
            });
        }
    }
    values.push(nv("w xi^2 / (2 (alpha + beta w))", c2v));
    Ok(finish(
        10,
        "price competition: fare and greening gaps rise with own cross-price sensitivity",
        values,
        all,
        claims,
        vec!["the printed greening derivative is taken with respect to beta_i".into()],
    ))
}

fn prop11(ctx: &PropositionContext, config: &SolverConfig) -> Result<PropositionReport> {
    let d = ctx.greening_duopoly;
    let w = duopoly_solve(&d, ContractKind::DCent, config)?.w;
    let xs = [d.xi1, d.xi2];
    let cv = 4.0 * d.beta * d.i * d.i - d.xi * (d.xi - d.xi2);
    let holds = cv > 0.0;
    let set = |k: usize| move |dp: &mut DuopolyParams, v: f64| if k == 0 { dp.xi1 = v } else { dp.xi2 = v };
    let mut claims = vec![];
    let mut notes = vec![
        "airline i's greening gap is checked against the coefficient on its own greening in the rival's demand (xi_j); \
         this matches the printed difference formula, which is proportional to (xi_2 - xi_1)"
            .to_string(),
    ];
    for i in 0..2 {
        let j = 1 - i;
        let dv = duopoly_gap_derivative(&d, w, i, set(j), xs[j], true)?;
        claims.push(ClaimReport {
            claim: format!("d(theta_{} - theta_{})/d xi_{} > 0", i + 1, j + 1, j + 1),
            condition: Some(cond("4 beta I^2 > xi (xi - xi_2)", cv, holds)),
            observed: format!("{dv:.6e}"),
            verdict: Verdict::from_outcome(dv > 0.0, holds),
        });
        let lit = duopoly_gap_derivative(&d, w, i, set(i), xs[i], true)?;
        notes.push(format!(
            "literal index reading d(theta_{} - theta_{})/d xi_{} = {lit:.6e} ({})",
            i + 1,
            j + 1,
            i + 1,
            if lit > 0.0 { "positive" } else { "not positive" }
        ));
    }
    Ok(finish(
        11,
        "greening competition: greening gap and rival-demand sensitivity",
        vec![nv("w", w), nv("4 beta I^2 - xi (xi - xi_2)", cv)],
        holds,
        claims,
        notes,
    ))
}

/// Evaluates proposition `id` (1 to 11).
///
/// # Errors
/// Unknown ids and failures of the base solves the proposition needs.
pub fn check_proposition(id: u8, ctx: &PropositionContext, config: &SolverConfig) -> Result<PropositionReport> {
    match id {
        1..=4 => {
            let t = solve_table(ctx, config)?;
            Ok(match id {
                1 => prop1(ctx, &t),
                2 => prop2(ctx, &t),
                3 => prop3(ctx, &t),
                _ => prop4(ctx, &t),
            })
        }
        5 => prop5(ctx, config),
        6 | 7 => Ok(prop6_7(ctx, id, config)),
        8 => Ok(prop8(ctx, config)),
        9 => prop9(ctx, config),
        10 => prop10(ctx, config),
        11 => prop11(ctx, config),
        _ => Err(ModelError::Domain(format!("no proposition {id}"))),
    }
}

/// All eleven propositions in order.
pub fn check_all(ctx: &PropositionContext, config: &SolverConfig) -> Result<Vec<PropositionReport>> {
    (1..=11).map(|id| check_proposition(id, ctx, config)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_rendering() {
        let (ok, s) = chain(&[("a", 2.0), ("b", 2.0), ("c", 1.0)], &[Rel::Eq, Rel::Gt]);
        assert!(ok);
        assert_eq!(s, "a=2.000000 = b=2.000000 > c=1.000000");
        let (ok, _) = chain(&[("a", 1.0), ("b", 2.0)], &[Rel::Gt]);
        assert!(!ok);
    }

    #[test]
    fn unknown_id() {
        assert!(check_proposition(12, &PropositionContext::default(), &SolverConfig::default()).is_err());
    }
}
