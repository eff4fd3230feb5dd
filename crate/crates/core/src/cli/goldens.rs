//! Published reference values for the base calibration and its two limit
//! scenarios, with the accounting identities a printed column must satisfy.

use serde::{Deserialize, Serialize};

use crate::analysis::S2_XI;
use crate::model_core::{ChannelParams, ContractKind, Equilibrium};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GoldenScenario {
    /// Base calibration.
    Bs,
    /// No consumer-surplus weight.
    S1,
    /// Greening sensitivity switched off.
    S2,
}

impl GoldenScenario {
    pub const ALL: [GoldenScenario; 3] = [GoldenScenario::Bs, GoldenScenario::S1, GoldenScenario::S2];

    pub fn name(self) -> &'static str {
        match self {
            GoldenScenario::Bs => "BS",
            GoldenScenario::S1 => "S1",
            GoldenScenario::S2 => "S2",
        }
    }

    pub fn params(self, base: &ChannelParams) -> ChannelParams {
        match self {
            GoldenScenario::Bs => *base,
            GoldenScenario::S1 => ChannelParams { mu: 0.0, ..*base },
            GoldenScenario::S2 => ChannelParams { xi: S2_XI, ..*base },
        }
    }
}

/// A reported cell of a column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cell {
    W,
    P,
    Theta,
    Q,
    PiAl,
    UAp,
    L,
    Phi,
    /// Channel profit (centralised column).
    Profit,
    /// Welfare (centralised column).
    Sw,
}

impl Cell {
    pub fn name(self) -> &'static str {
        match self {
            Cell::W => "w",
            Cell::P => "p",
            Cell::Theta => "theta",
            Cell::Q => "q",
            Cell::PiAl => "pi_al",
            Cell::UAp => "u_ap",
            Cell::L => "l",
            Cell::Phi => "phi",
            Cell::Profit => "profit",
            Cell::Sw => "sw",
        }
    }

    pub fn of(self, eq: &Equilibrium) -> Option<f64> {
        match self {
            Cell::W => eq.w,
            Cell::P => Some(eq.p),
            Cell::Theta => Some(eq.theta),
            Cell::Q => Some(eq.q),
            Cell::PiAl => eq.pi_al,
            Cell::UAp => eq.u_ap,
            Cell::L => eq.l,
            Cell::Phi => eq.phi_star,
            Cell::Profit => Some(eq.channel_profit),
            Cell::Sw => Some(eq.sw),
        }
    }

    /// `max(0.5, 1%)` for money and decisions; the cost share is printed to two decimals.
    pub fn tolerance(self, printed: f64) -> f64 {
        match self {
            Cell::Phi => 0.01,
            _ => (0.01 * printed.abs()).max(0.5),
        }
    }
}

/// One printed column: a structure in a scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct PrintedColumn {
    pub scenario: GoldenScenario,
    pub kind: ContractKind,
    pub cells: Vec<(Cell, f64)>,
}

impl PrintedColumn {
    pub fn get(&self, c: Cell) -> Option<f64> {
        self.cells.iter().find(|(k, _)| *k == c).map(|&(_, v)| v)
    }
}

fn col(scenario: GoldenScenario, kind: ContractKind, cells: &[(Cell, f64)]) -> PrintedColumn {
    PrintedColumn { scenario, kind, cells: cells.to_vec() }
}

/// The fifteen printed columns, values as published.
pub fn published_columns() -> Vec<PrintedColumn> {
    use Cell::*;
    use ContractKind::*;
    use GoldenScenario::*;
    vec![
        col(Bs, Cent, &[(Profit, 3527.3), (Sw, 3675.2), (Q, 65.94), (P, 166.94), (Theta, 16.48)]),
        col(S1, Cent, &[(Profit, 3694.8), (Sw, 5525.2), (Q, 54.36), (P, 172.73), (Theta, 13.59)]),
        col(S2, Cent, &[(Profit, 2274.8), (Sw, 2127.1), (Q, 38.16), (P, 163.96), (Theta, 0.0)]),
        col(Bs, DCent, &[(PiAl, 960.3), (UAp, 1783.7), (Q, 29.8), (P, 185.01), (Theta, 7.45), (W, 105.4)]),
        col(S1, DCent, &[(PiAl, 773.9), (UAp, 1997.4), (Q, 27.18), (P, 186.32), (Theta, 6.7), (W, 111.96)]),
        col(S2, DCent, &[(PiAl, 496.3), (UAp, 1124.8), (Q, 17.97), (P, 123.58), (Theta, 0.0), (W, 86.76)]),
        col(Bs, Csc, &[(PiAl, 772.5), (UAp, 1932.5), (Q, 32.4), (P, 208.03), (Theta, 12.17), (W, 123.09), (Phi, 0.33)]),
        col(S1, Csc, &[(PiAl, 605.7), (UAp, 2147.2), (Q, 29.38), (P, 207.26), (Theta, 11.02), (W, 128.49), (Phi, 0.33)]),
        col(S2, Csc, &[(PiAl, 496.3), (UAp, 1124.8), (Q, 17.97), (P, 123.58), (Theta, 0.0), (W, 108.01), (Phi, 0.33)]),
        col(Bs, Rsc, &[(PiAl, 2503.1), (UAp, 1622.6), (Q, 65.94), (P, 166.94), (Theta, 16.48), (W, 3.8)]),
        col(S1, Rsc, &[(PiAl, 1653.5), (UAp, 2041.8), (Q, 54.36), (P, 172.73), (Theta, 13.59), (W, 23.5)]),
        col(S2, Rsc, &[(PiAl, 1834.4), (UAp, 625.33), (Q, 38.16), (P, 163.96), (Theta, 0.0), (W, 12.12)]),
        col(Bs, Ltt, &[(PiAl, 2500.0), (UAp, 1625.2), (Q, 65.94), (P, 166.94), (Theta, 16.48), (W, 15.05), (L, 2786.6)]),
        col(S1, Ltt, &[(PiAl, 2500.0), (UAp, 1194.8), (Q, 54.36), (P, 172.73), (Theta, 13.59), (W, 44.0), (L, 1044.8)]),
        col(S2, Ltt, &[(PiAl, 2500.0), (UAp, 77.05), (Q, 38.16), (P, 163.96), (Theta, 0.0), (W, 27.24), (L, 263.7)]),
    ]
}

/// An accounting identity linking cells of one column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Identity {
    pub name: &'static str,
    pub cells: Vec<Cell>,
    /// Left side minus right side.
    pub gap: f64,
    pub tolerance: f64,
}

impl Identity {
    pub fn holds(&self) -> bool {
        self.gap.abs() <= self.tolerance
    }
}

/// Identities among `values` that a column of `kind` must satisfy at `params`.
///
/// Demand links fare, greening and passengers; the airline's fare condition
/// `q = β (p - (w + c_AL) / s)` links passengers, fare and fee; with no
/// surplus weight, welfare and channel profit coincide.
pub fn identities(
    params: &ChannelParams,
    kind: ContractKind,
    psi: f64,
    get: impl Fn(Cell) -> Option<f64>,
) -> Vec<Identity> {
    let mut out = vec![];
    if let (Some(p), Some(t), Some(q)) = (get(Cell::P), get(Cell::Theta), get(Cell::Q)) {
        let rhs = params.intercept() - params.beta * p + params.xi * t;
        out.push(Identity { name: "demand", cells: vec![Cell::P, Cell::Theta, Cell::Q], gap: q - rhs, tolerance: Cell::Q.tolerance(q) });
    }
    if kind != ContractKind::Cent {
        if let (Some(p), Some(w), Some(q)) = (get(Cell::P), get(Cell::W), get(Cell::Q)) {
            let s = if kind == ContractKind::Rsc { psi } else { 1.0 };
            let rhs = params.beta * (p - (w + params.c_al) / s);
            out.push(Identity { name: "fare condition", cells: vec![Cell::P, Cell::W, Cell::Q], gap: q - rhs, tolerance: Cell::Q.tolerance(q) });
        }
    }
    if params.mu == 0.0 {
        if let (Some(sw), Some(pr)) = (get(Cell::Sw), get(Cell::Profit)) {
            out.push(Identity { name: "welfare equals profit", cells: vec![Cell::Sw, Cell::Profit], gap: sw - pr, tolerance: Cell::Sw.tolerance(sw) });
        }
    }
    out
}

/// Printed untaxed and taxed columns: (label, p, θ, q).
pub const TAXED_COLUMNS: [(&str, f64, f64, f64); 8] = [
    ("D_CENT", 184.97, 7.47, 29.89),
    ("D_CENT_T", 189.43, 8.57, 30.97),
    ("CSC", 208.04, 12.19, 32.51),
    ("CSC_T", 208.19, 12.35, 32.93),
    ("RSC", 167.56, 16.17, 64.70),
    ("RSC_T", 173.32, 18.29, 68.19),
    ("LTT", 167.56, 16.17, 64.70),
    ("LTT_T", 173.32, 18.29, 68.19),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_columns_are_consistent() {
        let p = ChannelParams::base();
        for c in published_columns().iter().filter(|c| c.scenario == GoldenScenario::Bs) {
            for id in identities(&p, c.kind, 0.68, |k| c.get(k)) {
                assert!(id.holds(), "{:?} {} gap {}", c.kind, id.name, id.gap);
            }
        }
    }

    #[test]
    fn s2_fare_rows_are_not() {
        let p = GoldenScenario::S2.params(&ChannelParams::base());
        let t = published_columns();
        let cent = t.iter().find(|c| c.scenario == GoldenScenario::S2 && c.kind == ContractKind::Cent).unwrap();
        assert!(identities(&p, cent.kind, 0.68, |k| cent.get(k)).iter().any(|i| !i.holds()));
    }
}
