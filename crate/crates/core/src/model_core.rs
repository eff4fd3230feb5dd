//! Domain types and the primitive functionals of the monopoly channel.
//!
//! Every quantity here is a plain function of its inputs. Solvers, closed
//! forms and reports all evaluate profits and welfare through these functions
//! so that the accounting lives in one place.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};

/// Exogenous calibration of the single airport / single airline channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    /// Market potential.
    pub alpha: f64,
    /// Own-price sensitivity.
    pub beta: f64,
    /// Schedule-delay parameter.
    pub gamma: f64,
    /// Flight frequency.
    pub f: f64,
    /// Passenger greening sensitivity.
    pub xi: f64,
    /// Greening investment cost coefficient.
    pub i: f64,
    /// Landing charge per flight.
    pub c: f64,
    pub c_al: f64,
    pub c_ap: f64,
    /// Weight of consumer surplus in the airport objective.
    pub mu: f64,
    /// Non-aeronautical revenue per passenger.
    #[serde(default = "one")]
    pub w_prime: f64,
}

fn one() -> f64 {
    1.0
}

impl ChannelParams {
    /// The base calibration used for the published tables.
    pub fn base() -> Self {
        ChannelParams {
            alpha: 100.0,
            beta: 0.5,
            gamma: 0.2,
            f: 5.0,
            xi: 3.0,
            i: 12.0,
            c: 30.0,
            c_al: 20.0,
            c_ap: 45.0,
            mu: 0.18,
            w_prime: 1.0,
        }
    }

    /// Demand intercept net of schedule delay, `alpha - gamma / f`.
    pub fn intercept(&self) -> f64 {
        self.alpha - self.gamma / self.f
    }

    /// Per-passenger channel cost net of concessions, `c_AP + c_AL - w'`.
    pub fn channel_cost(&self) -> f64 {
        self.c_ap + self.c_al - self.w_prime
    }

    pub fn landing_fees(&self) -> f64 {
        self.c * self.f
    }

    /// Checks the sign and range restrictions on the calibration.
    ///
    /// Concavity is reported separately by [`concavity_check`].
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.alpha, self.beta, self.gamma, self.f, self.xi, self.i, self.c, self.c_al,
            self.c_ap, self.mu, self.w_prime,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(ModelError::Domain("non-finite parameter".into()));
        }
        if self.alpha <= 0.0 || self.beta <= 0.0 || self.i <= 0.0 {
            return Err(ModelError::Domain("alpha, beta and I must be positive".into()));
        }
        if self.f <= 0.0 {
            return Err(ModelError::Domain("flight frequency f must be positive".into()));
        }
        if self.gamma < 0.0 || self.xi < 0.0 {
            return Err(ModelError::Domain("gamma and xi must be non-negative".into()));
        }
        if !(0.0..1.0).contains(&self.mu) {
            return Err(ModelError::Domain(format!("mu = {} outside [0, 1)", self.mu)));
        }
        Ok(())
    }

    /// Validation plus both concavity conditions; every solve goes through this.
    pub fn require_concave(&self) -> Result<ConcavityReport> {
        self.validate()?;
        let rep = concavity_check(self);
        if !rep.centralised {
            return Err(ModelError::Concavity {
                which: "centralised",
                detail: format!(
                    "need mu in [0, 2/3) and I > {:.6} (mu = {}, I = {})",
                    rep.centralised_threshold, self.mu, self.i
                ),
            });
        }
        if !rep.airline {
            return Err(ModelError::Concavity {
                which: "airline",
                detail: format!("need 4 beta I = {:.6} > xi^2 = {:.6}", rep.airline_lhs, rep.airline_rhs),
            });
        }
        Ok(rep)
    }
}

impl Default for ChannelParams {
    fn default() -> Self {
        Self::base()
    }
}

/// Market structure between the airport and the airline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ContractKind {
    #[serde(rename = "CENT")]
    Cent,
    #[serde(rename = "D_CENT")]
    DCent,
    #[serde(rename = "CSC")]
    Csc,
    #[serde(rename = "RSC")]
    Rsc,
    #[serde(rename = "LTT")]
    Ltt,
}

impl ContractKind {
    pub const ALL: [ContractKind; 5] = [
        ContractKind::Cent,
        ContractKind::DCent,
        ContractKind::Csc,
        ContractKind::Rsc,
        ContractKind::Ltt,
    ];

    /// The four decentralised arrangements (everything except CENT).
    pub const CONTRACTS: [ContractKind; 4] =
        [ContractKind::DCent, ContractKind::Csc, ContractKind::Rsc, ContractKind::Ltt];

    pub fn name(self) -> &'static str {
        match self {
            ContractKind::Cent => "CENT",
            ContractKind::DCent => "D_CENT",
            ContractKind::Csc => "CSC",
            ContractKind::Rsc => "RSC",
            ContractKind::Ltt => "LTT",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let norm: String = s
            .trim()
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_uppercase();
        match norm.as_str() {
            "CENT" | "CENTRALISED" | "CENTRALIZED" => Some(ContractKind::Cent),
            "DCENT" | "DECENTRALISED" | "DECENTRALIZED" => Some(ContractKind::DCent),
            "CSC" => Some(ContractKind::Csc),
            "RSC" => Some(ContractKind::Rsc),
            "LTT" => Some(ContractKind::Ltt),
            _ => None,
        }
    }
}

impl std::fmt::Display for ContractKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Emission-tax policy chosen by the government.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaxPolicy {
    pub t: f64,
    /// Target greening level per flight.
    pub theta0: f64,
}

impl TaxPolicy {
    pub fn new(t: f64, theta0: f64) -> Result<Self> {
        let p = TaxPolicy { t, theta0 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t >= 0.0) || !self.t.is_finite() {
            return Err(ModelError::Domain(format!("tax level t = {} must be >= 0", self.t)));
        }
        if !(self.theta0 > 0.0) {
            return Err(ModelError::Domain(format!("theta0 = {} must be > 0", self.theta0)));
        }
        Ok(())
    }
}

/// A market structure together with its contract terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContractSpec {
    pub kind: ContractKind,
    /// Airport share of the greening cost (CSC). `None` means the airport optimises it.
    pub phi: Option<f64>,
    /// Fraction of ticket revenue the airline keeps (RSC).
    pub psi: Option<f64>,
    /// Airline reservation profit (LTT).
    pub pi_bar: Option<f64>,
    pub tax: Option<TaxPolicy>,
}

/// The analytic optimum of the cost share; used whenever a CSC spec leaves φ open.
pub const PHI_STAR: f64 = 1.0 / 3.0;

impl ContractSpec {
    fn bare(kind: ContractKind) -> Self {
        ContractSpec { kind, phi: None, psi: None, pi_bar: None, tax: None }
    }

    pub fn cent() -> Self {
        Self::bare(ContractKind::Cent)
    }

    pub fn dcent() -> Self {
        Self::bare(ContractKind::DCent)
    }

    pub fn csc(phi: Option<f64>) -> Self {
        ContractSpec { phi, ..Self::bare(ContractKind::Csc) }
    }

    pub fn rsc(psi: f64) -> Self {
        ContractSpec { psi: Some(psi), ..Self::bare(ContractKind::Rsc) }
    }

    pub fn ltt(pi_bar: f64) -> Self {
        ContractSpec { pi_bar: Some(pi_bar), ..Self::bare(ContractKind::Ltt) }
    }

    pub fn with_tax(mut self, tax: TaxPolicy) -> Self {
        self.tax = Some(tax);
        self
    }

    /// Builds the spec for `kind` taking contract terms from a shared pool.
    pub fn for_kind(kind: ContractKind, psi: f64, pi_bar: f64) -> Self {
        match kind {
            ContractKind::Cent => Self::cent(),
            ContractKind::DCent => Self::dcent(),
            ContractKind::Csc => Self::csc(None),
            ContractKind::Rsc => Self::rsc(psi),
            ContractKind::Ltt => Self::ltt(pi_bar),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(ModelError::InvalidContract(format!("{}: {m}", self.kind)));
        if self.phi.is_some() && self.kind != ContractKind::Csc {
            return bad("phi is only meaningful for CSC");
        }
        if self.psi.is_some() != (self.kind == ContractKind::Rsc) {
            return bad("psi must be given for RSC and only for RSC");
        }
        if self.pi_bar.is_some() != (self.kind == ContractKind::Ltt) {
            return bad("pi_bar must be given for LTT and only for LTT");
        }
        if let Some(phi) = self.phi {
            if !(0.0..1.0).contains(&phi) {
                return bad("phi must lie in [0, 1)");
            }
        }
        if let Some(psi) = self.psi {
            if !(psi > 0.0 && psi <= 1.0) {
                return bad("psi must lie in (0, 1]");
            }
        }
        if let Some(pb) = self.pi_bar {
            if !(pb >= 0.0) {
                return bad("pi_bar must be >= 0");
            }
        }
        if let Some(t) = &self.tax {
            t.validate()?;
        }
        Ok(())
    }

    pub(crate) fn phi_or_star(&self) -> f64 {
        match self.kind {
            ContractKind::Csc => self.phi.unwrap_or(PHI_STAR),
            _ => 0.0,
        }
    }

    pub(crate) fn psi_or_one(&self) -> f64 {
        match self.kind {
            ContractKind::Rsc => self.psi.unwrap_or(1.0),
            _ => 1.0,
        }
    }
}

/// Follower and leader certificates attached to a numeric solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct Certificate {
    /// Largest scaled follower first-order (or KKT) residual.
    pub foc_residual: f64,
    /// Final leader step used for the local-optimality probe.
    pub leader_step: f64,
    /// Objective at the optimum is no worse than at `± leader_step`.
    pub leader_local_max: bool,
}

/// One solved outcome of a structure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Equilibrium {
    pub kind: ContractKind,
    /// Conveyance fee; absent for CENT.
    pub w: Option<f64>,
    pub p: f64,
    pub theta: f64,
    pub q: f64,
    /// Lump-sum tariff (LTT).
    pub l: Option<f64>,
    /// Realised cost share (CSC).
    pub phi_star: Option<f64>,
    /// Retained revenue fraction (RSC).
    pub psi: Option<f64>,
    /// Tax level when a tax stage is present.
    pub t: Option<f64>,
    /// Airline profit; absent for CENT.
    pub pi_al: Option<f64>,
    /// Airport pure profit; absent for CENT.
    pub pi_ap: Option<f64>,
    /// Airport utility; absent for CENT.
    pub u_ap: Option<f64>,
    /// Pre-tax channel profit `pq - (c_AP + c_AL - w')q - Iθ² `, landing fees cancel.
    pub channel_profit: f64,
    /// Unweighted consumer surplus.
    pub cs: f64,
    /// Welfare functional shared by every structure.
    pub sw: f64,
    pub gtr: f64,
    pub certificate: Option<Certificate>,
}

impl Equilibrium {
    /// Fills every derived quantity from the decision point.
    ///
    /// `l` is the lump-sum tariff for LTT; it is ignored otherwise.
    pub fn assemble(
        params: &ChannelParams,
        contract: &ContractSpec,
        w: Option<f64>,
        p: f64,
        theta: f64,
        l: Option<f64>,
    ) -> Self {
        let q = demand_unchecked(params, p, theta);
        let gtr_v = contract.tax.map_or(0.0, |tp| gtr(&tp, params.f, theta));
        let (pi_al, pi_ap, u_ap) = match (contract.kind, w) {
            (ContractKind::Cent, _) | (_, None) => (None, None, None),
            (_, Some(w)) => {
                let lv = l.unwrap_or(0.0);
                (
                    Some(airline_profit(params, contract, w, p, theta, lv)),
                    Some(airport_profit(params, contract, w, p, theta, lv)),
                    Some(airport_utility(params, contract, w, p, theta, lv)),
                )
            }
        };
        Equilibrium {
            kind: contract.kind,
            w: if contract.kind == ContractKind::Cent { None } else { w },
            p,
            theta,
            q,
            l: if contract.kind == ContractKind::Ltt { l } else { None },
            phi_star: if contract.kind == ContractKind::Csc { Some(contract.phi_or_star()) } else { None },
            psi: contract.psi,
            t: contract.tax.map(|tp| tp.t),
            pi_al,
            pi_ap,
            u_ap,
            channel_profit: channel_profit(params, p, theta),
            cs: consumer_surplus_unchecked(params, q),
            sw: social_welfare(params, p, theta),
            gtr: gtr_v,
            certificate: None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.q > 0.0
    }
}

fn demand_unchecked(params: &ChannelParams, p: f64, theta: f64) -> f64 {
    params.alpha - params.beta * p - params.gamma / params.f + params.xi * theta
}

fn consumer_surplus_unchecked(params: &ChannelParams, q: f64) -> f64 {
    q * q / (2.0 * params.beta)
}

/// Passenger demand at fare `p` and greening level `theta`.
///
/// # Errors
/// `f = 0` leaves the schedule-delay term undefined.
pub fn demand(params: &ChannelParams, p: f64, theta: f64) -> Result<f64> {
    if params.f == 0.0 {
        return Err(ModelError::Domain("f = 0: schedule delay gamma/f undefined".into()));
    }
    Ok(demand_unchecked(params, p, theta))
}

/// Airline profit under `contract`, net of the lump sum `l` (LTT) and tax (if any).
pub fn airline_profit(
    params: &ChannelParams,
    contract: &ContractSpec,
    w: f64,
    p: f64,
    theta: f64,
    l: f64,
) -> f64 {
    let q = demand_unchecked(params, p, theta);
    let psi = contract.psi_or_one();
    let phi = contract.phi_or_star();
    let revenue = psi * p * q;
    let green = (1.0 - phi) * params.i * theta * theta;
    let lump = if contract.kind == ContractKind::Ltt { l } else { 0.0 };
    let tax = contract.tax.map_or(0.0, |tp| gtr(&tp, params.f, theta));
    revenue - green - params.landing_fees() - w * q - params.c_al * q - lump - tax
}

/// Airport pure profit under `contract`.
pub fn airport_profit(
    params: &ChannelParams,
    contract: &ContractSpec,
    w: f64,
    p: f64,
    theta: f64,
    l: f64,
) -> f64 {
    let q = demand_unchecked(params, p, theta);
    let psi = contract.psi_or_one();
    let phi = contract.phi_or_star();
    let lump = if contract.kind == ContractKind::Ltt { l } else { 0.0 };
    params.landing_fees() + (w + params.w_prime) * q - params.c_ap * q - phi * params.i * theta * theta
        + (1.0 - psi) * p * q
        + lump
}

/// Consumer surplus `q² / 2β`, unweighted.
///
/// # Errors
/// Negative demand is not a valid surplus argument.
pub fn consumer_surplus(params: &ChannelParams, q: f64) -> Result<f64> {
    if q < 0.0 {
        return Err(ModelError::Infeasible(format!("negative demand q = {q}")));
    }
    Ok(consumer_surplus_unchecked(params, q))
}

/// Airport utility `(1 - μ) π_AP + μ CS`.
pub fn airport_utility(
    params: &ChannelParams,
    contract: &ContractSpec,
    w: f64,
    p: f64,
    theta: f64,
    l: f64,
) -> f64 {
    let q = demand_unchecked(params, p, theta);
    (1.0 - params.mu) * airport_profit(params, contract, w, p, theta, l)
        + params.mu * consumer_surplus_unchecked(params, q)
}

/// Channel profit before tax; fees, shares and lump sums are internal transfers.
pub fn channel_profit(params: &ChannelParams, p: f64, theta: f64) -> f64 {
    let q = demand_unchecked(params, p, theta);
    (p - params.channel_cost()) * q - params.i * theta * theta
}

/// Welfare functional `(1 - μ)(pq - c_AP q - c_AL q + w' q - Iθ²) + μ q² / 2β`.
pub fn social_welfare(params: &ChannelParams, p: f64, theta: f64) -> f64 {
    let q = demand_unchecked(params, p, theta);
    (1.0 - params.mu) * channel_profit(params, p, theta) + params.mu * consumer_surplus_unchecked(params, q)
}

/// Government tax revenue `t (f θ₀ - θ)⁺`.
pub fn gtr(policy: &TaxPolicy, f: f64, theta: f64) -> f64 {
    policy.t * (f * policy.theta0 - theta).max(0.0)
}

/// Outcome of the two second-order conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcavityReport {
    /// Joint concavity of the centralised welfare, including the μ range.
    pub centralised: bool,
    /// Lower bound on I for centralised concavity (infinite when μ ≥ 2/3).
    pub centralised_threshold: f64,
    /// Airline Hessian condition `4βI > ξ²`.
    pub airline: bool,
    pub airline_lhs: f64,
    pub airline_rhs: f64,
    /// Airline Hessian condition at the analytic cost share, `4β(1 - φ*)I > ξ²`.
    pub cost_sharing: bool,
}

/// Evaluates the centralised and airline concavity conditions.
pub fn concavity_check(params: &ChannelParams) -> ConcavityReport {
    let mu = params.mu;
    let mu_ok = (0.0..2.0 / 3.0).contains(&mu);
    let threshold = if mu_ok {
        params.xi * params.xi * (1.0 - mu) / (2.0 * params.beta * (2.0 - 3.0 * mu))
    } else {
        f64::INFINITY
    };
    let lhs = 4.0 * params.beta * params.i;
    let rhs = params.xi * params.xi;
    ConcavityReport {
        centralised: mu_ok && params.i > threshold,
        centralised_threshold: threshold,
        airline: lhs > rhs,
        airline_lhs: lhs,
        airline_rhs: rhs,
        cost_sharing: (1.0 - PHI_STAR) * lhs > rhs,
    }
}

/// Two-airline calibration for the competition extension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DuopolyParams {
    pub alpha: f64,
    pub beta: f64,
    pub xi: f64,
    pub i: f64,
    pub c_ap: f64,
    pub mu: f64,
    #[serde(default = "one")]
    pub w_prime: f64,
    pub mode: CompetitionMode,
    /// Cross-price sensitivities (price competition).
    #[serde(default)]
    pub beta1: f64,
    #[serde(default)]
    pub beta2: f64,
    /// Cross-greening sensitivities (greening competition).
    #[serde(default)]
    pub xi1: f64,
    #[serde(default)]
    pub xi2: f64,
    /// Retained revenue fractions under revenue sharing.
    #[serde(default = "one")]
    pub r1: f64,
    #[serde(default = "one")]
    pub r2: f64,
    /// Sign of the rival-greening term in airline 2's demand under greening competition.
    #[serde(default)]
    pub greening_sign: GreeningSign,
    /// Landing fee collected per airline; zero leaves it out of both sides.
    #[serde(default)]
    pub landing_fee: f64,
}

/// Which strategic variable carries the cross effect between the two airlines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CompetitionMode {
    PriceCompetition,
    GreeningCompetition,
}

/// Sign convention for the `ξ₂ θ₁` term in airline 2's demand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum GreeningSign {
    /// `q₂ = α - βp₂ + ξθ₂ - ξ₂θ₁`, mirroring airline 1.
    #[default]
    Mirrored,
    /// `q₂ = α - βp₂ + ξθ₂ + ξ₂θ₁`.
    AsPrinted,
}

impl DuopolyParams {
    /// A price-competition instance built on the monopoly base calibration.
    pub fn price_base(beta1: f64, beta2: f64) -> Self {
        DuopolyParams {
            alpha: 100.0,
            beta: 0.5,
            xi: 3.0,
            i: 12.0,
            c_ap: 45.0,
            mu: 0.18,
            w_prime: 1.0,
            mode: CompetitionMode::PriceCompetition,
            beta1,
            beta2,
            xi1: 0.0,
            xi2: 0.0,
            r1: 1.0,
            r2: 1.0,
            greening_sign: GreeningSign::Mirrored,
            landing_fee: 0.0,
        }
    }

    /// A greening-competition instance built on the monopoly base calibration.
    pub fn greening_base(xi1: f64, xi2: f64) -> Self {
        DuopolyParams {
            mode: CompetitionMode::GreeningCompetition,
            beta1: 0.0,
            beta2: 0.0,
            xi1,
            xi2,
            ..Self::price_base(0.0, 0.0)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.beta > 0.0 && self.i > 0.0) {
            return Err(ModelError::Domain("alpha, beta and I must be positive".into()));
        }
        if self.xi < 0.0 || !(0.0..1.0).contains(&self.mu) {
            return Err(ModelError::Domain("need xi >= 0 and mu in [0, 1)".into()));
        }
        if self.mode == CompetitionMode::PriceCompetition {
            for (n, b) in [("beta1", self.beta1), ("beta2", self.beta2)] {
                if !(b > 0.0 && b <= self.beta) {
                    return Err(ModelError::Domain(format!("{n} = {b} outside (0, beta]")));
                }
            }
        } else if self.xi1 < 0.0 || self.xi2 < 0.0 {
            return Err(ModelError::Domain("xi1, xi2 must be non-negative".into()));
        }
        for (n, r) in [("r1", self.r1), ("r2", self.r2)] {
            if !(r > 0.0 && r <= 1.0) {
                return Err(ModelError::Domain(format!("{n} = {r} outside (0, 1]")));
            }
        }
        Ok(())
    }

    /// Demand of both airlines at the given decisions.
    pub fn demands(&self, p: [f64; 2], theta: [f64; 2]) -> [f64; 2] {
        let base = |k: usize| self.alpha - self.beta * p[k] + self.xi * theta[k];
        match self.mode {
            CompetitionMode::PriceCompetition => {
                [base(0) + self.beta1 * p[1], base(1) + self.beta2 * p[0]]
            }
            CompetitionMode::GreeningCompetition => {
                let s2 = match self.greening_sign {
                    GreeningSign::Mirrored => -1.0,
                    GreeningSign::AsPrinted => 1.0,
                };
                [base(0) - self.xi1 * theta[1], base(1) + s2 * self.xi2 * theta[0]]
            }
        }
    }

    /// Swaps the roles of the two airlines.
    pub fn relabeled(&self) -> Self {
        DuopolyParams {
            beta1: self.beta2,
            beta2: self.beta1,
            xi1: self.xi2,
            xi2: self.xi1,
            r1: self.r2,
            r2: self.r1,
            ..*self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demand_zero_fare_gives_zero() {
        let p = ChannelParams::base();
        let fare = (p.alpha - p.gamma / p.f) / p.beta;
        assert!(demand(&p, fare, 0.0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn demand_rejects_zero_frequency() {
        let p = ChannelParams { f: 0.0, ..ChannelParams::base() };
        assert!(matches!(demand(&p, 100.0, 1.0), Err(ModelError::Domain(_))));
    }

    #[test]
    fn zero_margin_airline_profit() {
        let p = ChannelParams::base();
        let w = 17.0;
        let v = airline_profit(&p, &ContractSpec::dcent(), w, w + p.c_al, 0.0, 0.0);
        assert!((v + p.c * p.f).abs() < 1e-9);
    }

    #[test]
    fn margin_cancelling_fee_leaves_landing_revenue() {
        let p = ChannelParams::base();
        let w = p.c_ap - 1.0;
        let v = airport_profit(&p, &ContractSpec::rsc(1.0), w, 150.0, 3.0, 0.0);
        assert!((v - p.c * p.f).abs() < 1e-9);
    }

    #[test]
    fn concavity_boundaries() {
        let base = ChannelParams::base();
        let rep = concavity_check(&base);
        assert!(rep.centralised && rep.airline);
        assert!((rep.centralised_threshold - 9.0 * 0.82 / (1.0 * 1.46)).abs() < 1e-12);
        let edge = ChannelParams { i: 9.0 / 2.0, ..base };
        assert!(!concavity_check(&edge).airline);
        let mu = ChannelParams { mu: 2.0 / 3.0, ..base };
        assert!(!concavity_check(&mu).centralised);
    }

    #[test]
    fn gtr_regions() {
        let tp = TaxPolicy::new(6.0, 6.5).unwrap();
        assert!((gtr(&tp, 5.0, 8.57) - 143.58).abs() < 1e-9);
        assert_eq!(gtr(&tp, 5.0, 40.0), 0.0);
        assert_eq!(gtr(&TaxPolicy::new(0.0, 6.5).unwrap(), 5.0, 1.0), 0.0);
    }

    #[test]
    fn contract_validation() {
        assert!(ContractSpec::rsc(0.0).validate().is_err());
        assert!(ContractSpec::rsc(1.0).validate().is_ok());
        assert!(ContractSpec::csc(Some(1.0)).validate().is_err());
        assert!(ContractSpec::ltt(-1.0).validate().is_err());
        let mut c = ContractSpec::dcent();
        c.phi = Some(0.2);
        assert!(c.validate().is_err());
    }
}
