//! Named parameters and reported quantities, shared by sweeps, sign checks and the CLI.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::model_core::{ChannelParams, ContractKind, ContractSpec, DuopolyParams, Equilibrium};

/// A scalar that a sweep or derivative check can vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    Alpha,
    Beta,
    Gamma,
    F,
    Xi,
    I,
    C,
    CAl,
    CAp,
    Mu,
    WPrime,
    /// Retained revenue share (RSC).
    Psi,
    /// Reservation profit (LTT).
    PiBar,
    /// Tax level; requires a tax policy on the contract.
    T,
    /// Target greening per flight; requires a tax policy on the contract.
    Theta0,
}

impl Param {
    pub const ALL: [Param; 15] = [
        Param::Alpha,
        Param::Beta,
        Param::Gamma,
        Param::F,
        Param::Xi,
        Param::I,
        Param::C,
        Param::CAl,
        Param::CAp,
        Param::Mu,
        Param::WPrime,
        Param::Psi,
        Param::PiBar,
        Param::T,
        Param::Theta0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::Alpha => "alpha",
            Param::Beta => "beta",
            Param::Gamma => "gamma",
            Param::F => "f",
            Param::Xi => "xi",
            Param::I => "i",
            Param::C => "c",
            Param::CAl => "c_al",
            Param::CAp => "c_ap",
            Param::Mu => "mu",
            Param::WPrime => "w_prime",
            Param::Psi => "psi",
            Param::PiBar => "pi_bar",
            Param::T => "t",
            Param::Theta0 => "theta0",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim().to_ascii_lowercase();
        Param::ALL.into_iter().find(|p| p.name() == s)
    }

    /// Current value in `(params, contract)`; `None` when the contract has no such term.
    pub fn get(self, params: &ChannelParams, contract: &ContractSpec) -> Option<f64> {
        Some(match self {
            Param::Alpha => params.alpha,
            Param::Beta => params.beta,
            Param::Gamma => params.gamma,
            Param::F => params.f,
            Param::Xi => params.xi,
            Param::I => params.i,
            Param::C => params.c,
            Param::CAl => params.c_al,
            Param::CAp => params.c_ap,
            Param::Mu => params.mu,
            Param::WPrime => params.w_prime,
            Param::Psi => return contract.psi,
            Param::PiBar => return contract.pi_bar,
            Param::T => return contract.tax.map(|t| t.t),
            Param::Theta0 => return contract.tax.map(|t| t.theta0),
        })
    }

    /// Sets the value. Contract terms the contract does not carry are ignored
    /// (so a ψ sweep leaves D-CENT untouched) except the tax terms, which error.
    pub fn set(self, params: &mut ChannelParams, contract: &mut ContractSpec, v: f64) -> Result<()> {
        match self {
            Param::Alpha => params.alpha = v,
            Param::Beta => params.beta = v,
            Param::Gamma => params.gamma = v,
            Param::F => params.f = v,
            Param::Xi => params.xi = v,
            Param::I => params.i = v,
            Param::C => params.c = v,
            Param::CAl => params.c_al = v,
            Param::CAp => params.c_ap = v,
            Param::Mu => params.mu = v,
            Param::WPrime => params.w_prime = v,
            Param::Psi => {
                if contract.kind == ContractKind::Rsc {
                    contract.psi = Some(v);
                }
            }
            Param::PiBar => {
                if contract.kind == ContractKind::Ltt {
                    contract.pi_bar = Some(v);
                }
            }
            Param::T | Param::Theta0 => {
                let tax = contract
                    .tax
                    .as_mut()
                    .ok_or_else(|| ModelError::Domain(format!("{} needs a tax policy", self.name())))?;
                if self == Param::T {
                    tax.t = v;
                } else {
                    tax.theta0 = v;
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A reported outcome of a monopoly-channel equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Fee,
    Fare,
    Theta,
    Demand,
    AirlineProfit,
    AirportProfit,
    AirportUtility,
    Welfare,
    ChannelProfit,
    ConsumerSurplus,
    TaxRevenue,
    LumpSum,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Fee => "w",
            Quantity::Fare => "p",
            Quantity::Theta => "theta",
            Quantity::Demand => "q",
            Quantity::AirlineProfit => "pi_al",
            Quantity::AirportProfit => "pi_ap",
            Quantity::AirportUtility => "u_ap",
            Quantity::Welfare => "sw",
            Quantity::ChannelProfit => "channel_profit",
            Quantity::ConsumerSurplus => "cs",
            Quantity::TaxRevenue => "gtr",
            Quantity::LumpSum => "l",
        }
    }

    pub fn of(self, eq: &Equilibrium) -> Option<f64> {
        match self {
            Quantity::Fee => eq.w,
            Quantity::Fare => Some(eq.p),
            Quantity::Theta => Some(eq.theta),
            Quantity::Demand => Some(eq.q),
            Quantity::AirlineProfit => eq.pi_al,
            Quantity::AirportProfit => eq.pi_ap,
            Quantity::AirportUtility => eq.u_ap,
            Quantity::Welfare => Some(eq.sw),
            Quantity::ChannelProfit => Some(eq.channel_profit),
            Quantity::ConsumerSurplus => Some(eq.cs),
            Quantity::TaxRevenue => Some(eq.gtr),
            Quantity::LumpSum => eq.l,
        }
    }
}

/// A scalar of the duopoly calibration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DuopolyParam {
    Alpha,
    Beta,
    Xi,
    I,
    CAp,
    Mu,
    Beta1,
    Beta2,
    Xi1,
    Xi2,
    R1,
    R2,
}

impl DuopolyParam {
    pub const ALL: [DuopolyParam; 12] = [
        DuopolyParam::Alpha,
        DuopolyParam::Beta,
        DuopolyParam::Xi,
        DuopolyParam::I,
        DuopolyParam::CAp,
        DuopolyParam::Mu,
        DuopolyParam::Beta1,
        DuopolyParam::Beta2,
        DuopolyParam::Xi1,
        DuopolyParam::Xi2,
        DuopolyParam::R1,
        DuopolyParam::R2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DuopolyParam::Alpha => "alpha",
            DuopolyParam::Beta => "beta",
            DuopolyParam::Xi => "xi",
            DuopolyParam::I => "i",
            DuopolyParam::CAp => "c_ap",
            DuopolyParam::Mu => "mu",
            DuopolyParam::Beta1 => "beta1",
            DuopolyParam::Beta2 => "beta2",
            DuopolyParam::Xi1 => "xi1",
            DuopolyParam::Xi2 => "xi2",
            DuopolyParam::R1 => "r1",
            DuopolyParam::R2 => "r2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim().to_ascii_lowercase();
        DuopolyParam::ALL.into_iter().find(|p| p.name() == s)
    }

    pub fn get(self, d: &DuopolyParams) -> f64 {
        match self {
            DuopolyParam::Alpha => d.alpha,
            DuopolyParam::Beta => d.beta,
            DuopolyParam::Xi => d.xi,
            DuopolyParam::I => d.i,
            DuopolyParam::CAp => d.c_ap,
            DuopolyParam::Mu => d.mu,
            DuopolyParam::Beta1 => d.beta1,
            DuopolyParam::Beta2 => d.beta2,
            DuopolyParam::Xi1 => d.xi1,
            DuopolyParam::Xi2 => d.xi2,
            DuopolyParam::R1 => d.r1,
            DuopolyParam::R2 => d.r2,
        }
    }

    pub fn set(self, d: &mut DuopolyParams, v: f64) {
        let slot = match self {
            DuopolyParam::Alpha => &mut d.alpha,
            DuopolyParam::Beta => &mut d.beta,
            DuopolyParam::Xi => &mut d.xi,
            DuopolyParam::I => &mut d.i,
            DuopolyParam::CAp => &mut d.c_ap,
            DuopolyParam::Mu => &mut d.mu,
            DuopolyParam::Beta1 => &mut d.beta1,
            DuopolyParam::Beta2 => &mut d.beta2,
            DuopolyParam::Xi1 => &mut d.xi1,
            DuopolyParam::Xi2 => &mut d.xi2,
            DuopolyParam::R1 => &mut d.r1,
            DuopolyParam::R2 => &mut d.r2,
        };
        *slot = v;
    }
}

impl std::fmt::Display for DuopolyParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
