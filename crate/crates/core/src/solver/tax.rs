//! Government stage: the tax level that maximises collected revenue.

use serde::{Deserialize, Serialize};

use super::leader::solve_with_tax;
use super::SolverConfig;
use crate::error::{ModelError, Result};
use crate::model_core::{ChannelParams, ContractSpec, Equilibrium, TaxPolicy};

/// One grid point of a tax scan. `equilibrium` is `None` where the solve failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaxPoint {
    pub t: f64,
    pub equilibrium: Option<Equilibrium>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaxOptimum {
    pub t_star: f64,
    pub gtr_star: f64,
    pub equilibrium: Equilibrium,
    pub curve: Vec<TaxPoint>,
}

/// Scans `t_grid` and refines the best point with a parabola through its neighbours.
///
/// `contract.tax` supplies θ₀; its `t` is overwritten.
///
/// # Errors
/// [`ModelError::EmptyGrid`] for an empty grid, [`ModelError::Infeasible`] when no point solves.
pub fn optimal_tax(
    params: &ChannelParams,
    contract: &ContractSpec,
    theta0: f64,
    t_grid: &[f64],
    config: &SolverConfig,
) -> Result<TaxOptimum> {
    if t_grid.is_empty() {
        return Err(ModelError::EmptyGrid);
    }
    let base = ContractSpec { tax: None, ..*contract };
    let solve_at = |t: f64| -> Result<Equilibrium> {
        let tax = TaxPolicy::new(t, theta0)?;
        solve_with_tax(params, &base, &tax, config)
    };
    let curve: Vec<TaxPoint> = t_grid
        .iter()
        .map(|&t| match solve_at(t) {
            Ok(eq) => TaxPoint { t, equilibrium: Some(eq), error: None },
            Err(e) => TaxPoint { t, equilibrium: None, error: Some(e.to_string()) },
        })
        .collect();

    let best = curve
        .iter()
        .enumerate()
        .filter_map(|(k, pt)| pt.equilibrium.map(|eq| (k, eq)))
        .fold(None::<(usize, Equilibrium)>, |acc, (k, eq)| match acc {
            Some((_, b)) if b.gtr >= eq.gtr => acc,
            _ => Some((k, eq)),
        });
    let (k, mut eq) = best.ok_or_else(|| ModelError::Infeasible("no tax level on the grid solves".into()))?;
    let mut t_star = curve[k].t;

    if k > 0 && k + 1 < curve.len() {
        if let (Some(a), Some(c)) = (curve[k - 1].equilibrium, curve[k + 1].equilibrium) {
            let (x0, x1, x2) = (curve[k - 1].t, t_star, curve[k + 1].t);
            let (y0, y1, y2) = (a.gtr, eq.gtr, c.gtr);
            let num = (x1 - x0).powi(2) * (y1 - y2) - (x1 - x2).powi(2) * (y1 - y0);
            let den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
            if den.abs() > 0.0 {
                let tv = x1 - 0.5 * num / den;
                if tv > x0 && tv < x2 {
                    if let Ok(ev) = solve_at(tv) {
                        if ev.gtr > eq.gtr {
                            t_star = tv;
                            eq = ev;
                        }
                    }
                }
            }
        }
    }
    Ok(TaxOptimum { t_star, gtr_star: eq.gtr, equilibrium: eq, curve })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_grid() {
        let r = optimal_tax(&ChannelParams::base(), &ContractSpec::dcent(), 6.5, &[], &SolverConfig::default());
        assert!(matches!(r, Err(ModelError::EmptyGrid)));
    }

    #[test]
    fn single_zero_point() {
        let o = optimal_tax(&ChannelParams::base(), &ContractSpec::dcent(), 6.5, &[0.0], &SolverConfig::default())
            .unwrap();
        assert_eq!(o.t_star, 0.0);
        assert_eq!(o.gtr_star, 0.0);
    }
}
