//! One-parameter sweeps with gap rows and shape diagnostics.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::quantities::{DuopolyParam, Param, Quantity};
use crate::error::{ModelError, Result};
use crate::model_core::{ChannelParams, ContractKind, ContractSpec, DuopolyParams, Equilibrium};
use crate::solver::{follower_residual, solve_contract, SolverConfig};
use crate::solver::{duopoly_solve, DuopolyEquilibrium};

/// One grid point. Exactly one of `equilibrium` / `error` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: f64,
    pub equilibrium: Option<Equilibrium>,
    pub error: Option<String>,
    /// Demand recomputed from `(p, θ)` minus the reported demand.
    pub demand_residual: Option<f64>,
    /// Follower residual recomputed at the reported point (CENT: none).
    pub foc_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub swept_parameter: Param,
    pub contract: ContractKind,
    pub grid: Vec<f64>,
    pub rows: Vec<SweepRow>,
    pub figure_tag: Option<String>,
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(ModelError::EmptyGrid);
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(ModelError::Domain("sweep grid must be strictly increasing".into()));
    }
    Ok(())
}

/// Solves `contract` at every grid value of `param`. Failed points become gap rows.
pub fn sweep(
    params: &ChannelParams,
    contract: &ContractSpec,
    param: Param,
    grid: &[f64],
    config: &SolverConfig,
) -> Result<SweepResult> {
    check_grid(grid)?;
    let rows = grid
        .par_iter()
        .map(|&v| {
            let (mut p, mut c) = (*params, *contract);
            let solved = param.set(&mut p, &mut c, v).and_then(|_| solve_contract(&p, &c, config));
            match solved {
                Ok(eq) => {
                    let q = p.intercept() - p.beta * eq.p + p.xi * eq.theta;
                    let foc = eq.w.map(|w| follower_residual(&p, &c, w, eq.p, eq.theta));
                    SweepRow {
                        value: v,
                        equilibrium: Some(eq),
                        error: None,
                        demand_residual: Some(q - eq.q),
                        foc_residual: foc,
                    }
                }
                Err(e) => SweepRow {
                    value: v,
                    equilibrium: None,
                    error: Some(e.to_string()),
                    demand_residual: None,
                    foc_residual: None,
                },
            }
        })
        .collect();
    Ok(SweepResult { swept_parameter: param, contract: contract.kind, grid: grid.to_vec(), rows, figure_tag: None })
}

impl SweepResult {
    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.figure_tag = Some(tag.into());
        self
    }

    /// `(grid value, quantity)` at every solved point.
    pub fn series(&self, q: Quantity) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .filter_map(|r| r.equilibrium.as_ref().and_then(|e| q.of(e)).map(|y| (r.value, y)))
            .collect()
    }

    pub fn gaps(&self) -> usize {
        self.rows.iter().filter(|r| r.equilibrium.is_none()).count()
    }
}

/// Location where two series change order, by linear interpolation of their difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub at: f64,
    pub left: f64,
    pub right: f64,
    /// True when the first series is above the second to the right of the crossing.
    pub first_above_after: bool,
}

/// Crossings of two series sampled on the same grid values.
pub fn crossings(a: &[(f64, f64)], b: &[(f64, f64)]) -> Vec<Crossing> {
    let diff: Vec<(f64, f64)> = a
        .iter()
        .filter_map(|&(x, ya)| b.iter().find(|(xb, _)| *xb == x).map(|&(_, yb)| (x, ya - yb)))
        .collect();
    diff.windows(2)
        .filter(|w| (w[0].1 < 0.0 && w[1].1 > 0.0) || (w[0].1 > 0.0 && w[1].1 < 0.0))
        .map(|w| {
            let (x0, d0) = w[0];
            let (x1, d1) = w[1];
            Crossing { at: x0 - d0 * (x1 - x0) / (d1 - d0), left: x0, right: x1, first_above_after: d1 > 0.0 }
        })
        .collect()
}

/// Interior local maxima, refined by the parabola through each peak and its neighbours.
pub fn interior_peaks(series: &[(f64, f64)]) -> Vec<(f64, f64)> {
    series
        .windows(3)
        .filter(|w| w[1].1 > w[0].1 && w[1].1 > w[2].1)
        .map(|w| {
            let [(x0, y0), (x1, y1), (x2, y2)] = [w[0], w[1], w[2]];
            let num = (x1 - x0).powi(2) * (y1 - y2) - (x1 - x2).powi(2) * (y1 - y0);
            let den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
            let xv = if den != 0.0 { x1 - 0.5 * num / den } else { x1 };
            (xv.clamp(x0, x2), y1)
        })
        .collect()
}

/// Whether the series moves in one direction; `strict` forbids flat steps.
pub fn is_monotone(series: &[(f64, f64)], increasing: bool, strict: bool) -> bool {
    series.windows(2).all(|w| {
        let d = if increasing { w[1].1 - w[0].1 } else { w[0].1 - w[1].1 };
        if strict {
            d > 0.0
        } else {
            d >= 0.0
        }
    })
}

/// Evenly spaced inclusive grid.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DuopolySweepRow {
    pub value: f64,
    pub equilibrium: Option<DuopolyEquilibrium>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DuopolySweepResult {
    pub swept_parameter: DuopolyParam,
    pub contract: ContractKind,
    pub grid: Vec<f64>,
    pub rows: Vec<DuopolySweepRow>,
    pub figure_tag: Option<String>,
}

/// Duopoly counterpart of [`sweep`].
pub fn duopoly_sweep(
    d: &DuopolyParams,
    kind: ContractKind,
    param: DuopolyParam,
    grid: &[f64],
    config: &SolverConfig,
) -> Result<DuopolySweepResult> {
    check_grid(grid)?;
    let rows = grid
        .par_iter()
        .map(|&v| {
            let mut dp = *d;
            param.set(&mut dp, v);
            match duopoly_solve(&dp, kind, config) {
                Ok(eq) => DuopolySweepRow { value: v, equilibrium: Some(eq), error: None },
                Err(e) => DuopolySweepRow { value: v, equilibrium: None, error: Some(e.to_string()) },
            }
        })
        .collect();
    Ok(DuopolySweepResult { swept_parameter: param, contract: kind, grid: grid.to_vec(), rows, figure_tag: None })
}

impl DuopolySweepResult {
    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.figure_tag = Some(tag.into());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gap_rows_are_kept() {
        let grid = [0.1, 0.3, 0.7, 0.9];
        let r = sweep(&ChannelParams::base(), &ContractSpec::dcent(), Param::Mu, &grid, &SolverConfig::default())
            .unwrap();
        assert_eq!(r.rows.len(), 4);
        assert_eq!(r.gaps(), 2);
        assert!(r.rows[0].demand_residual.unwrap().abs() < 1e-9);
    }

    #[test]
    fn grid_validation() {
        let cfg = SolverConfig::default();
        let p = ChannelParams::base();
        assert!(matches!(sweep(&p, &ContractSpec::dcent(), Param::Xi, &[], &cfg), Err(ModelError::EmptyGrid)));
        assert!(sweep(&p, &ContractSpec::dcent(), Param::Xi, &[1.0, 1.0], &cfg).is_err());
    }

    #[test]
    fn crossing_and_peak_helpers() {
        let a: Vec<(f64, f64)> = linspace(0.0, 2.0, 21).into_iter().map(|x| (x, x)).collect();
        let b: Vec<(f64, f64)> = a.iter().map(|&(x, _)| (x, 1.05)).collect();
        let c = crossings(&a, &b);
        assert_eq!(c.len(), 1);
        assert!((c[0].at - 1.05).abs() < 1e-12 && c[0].first_above_after);
        let s: Vec<(f64, f64)> = linspace(0.0, 4.0, 41).into_iter().map(|x| (x, -(x - 1.234f64).powi(2))).collect();
        let pk = interior_peaks(&s);
        assert_eq!(pk.len(), 1);
        assert!((pk[0].0 - 1.234).abs() < 1e-9);
    }
}
