//! Two airlines at one airport: Nash equilibrium in (p, θ) at a given fee,
//! and the airport's fee choice on top.

use nalgebra::{Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use super::search::maximize;
use super::SolverConfig;
use crate::closed_form::DuopolyPoint;
use crate::error::{ModelError, Result};
use crate::model_core::{ContractKind, DuopolyParams};

/// Demand as `q = a + J x` with `x = (p₁, θ₁, p₂, θ₂)`.
fn demand_linear(d: &DuopolyParams) -> ([f64; 2], [[f64; 4]; 2]) {
    let e = |k: usize| {
        let mut x = [0.0; 2];
        let mut t = [0.0; 2];
        match k {
            0 => x[0] = 1.0,
            1 => t[0] = 1.0,
            2 => x[1] = 1.0,
            _ => t[1] = 1.0,
        }
        (x, t)
    };
    let a = d.demands([0.0; 2], [0.0; 2]);
    let mut j = [[0.0; 4]; 2];
    for k in 0..4 {
        let (x, t) = e(k);
        let q = d.demands(x, t);
        j[0][k] = q[0] - a[0];
        j[1][k] = q[1] - a[1];
    }
    (a, j)
}

fn shares(d: &DuopolyParams, kind: ContractKind) -> Result<[f64; 2]> {
    match kind {
        ContractKind::DCent => Ok([1.0, 1.0]),
        ContractKind::Rsc => Ok([d.r1, d.r2]),
        k => Err(ModelError::Unsupported(format!("{k} is not defined for the duopoly"))),
    }
}

fn check(d: &DuopolyParams, r: [f64; 2]) -> Result<()> {
    d.validate()?;
    for (k, rk) in r.iter().enumerate() {
        if 4.0 * d.beta * d.i <= rk * d.xi * d.xi {
            return Err(ModelError::NoBestResponse(format!("airline {} objective not concave", k + 1)));
        }
    }
    Ok(())
}

/// Airline `k`'s best reply to the rival's current decisions.
pub fn duopoly_best_response(d: &DuopolyParams, kind: ContractKind, w: f64, k: usize, current: &DuopolyPoint) -> Result<(f64, f64)> {
    let r = shares(d, kind)?;
    check(d, r)?;
    let (a, j) = demand_linear(d);
    let x = [current.p[0], current.theta[0], current.p[1], current.theta[1]];
    // Intercept of own demand holding the rival fixed.
    let o = 2 * (1 - k);
    let a_own = a[k] + j[k][o] * x[o] + j[k][o + 1] * x[o + 1];
    let rk = r[k];
    // u = r p - w; FOCs r q = β u and ξ u = 2 I θ.
    let u = (rk * a_own - d.beta * w) / (2.0 * d.beta - rk * d.xi * d.xi / (2.0 * d.i));
    Ok(((u + w) / rk, d.xi * u / (2.0 * d.i)))
}

/// Damped simultaneous best-response iteration from the zero-greening start.
///
/// # Errors
/// [`ModelError::NonContraction`] when the step does not shrink within `config.max_iterations`.
pub fn duopoly_fixed_point(d: &DuopolyParams, kind: ContractKind, w: f64, config: &SolverConfig) -> Result<DuopolyPoint> {
    let mut x = DuopolyPoint { p: [w + d.c_ap; 2], theta: [0.0; 2] };
    let lam = config.damping;
    let mut step = f64::INFINITY;
    for _ in 0..config.max_iterations {
        let b0 = duopoly_best_response(d, kind, w, 0, &x)?;
        let b1 = duopoly_best_response(d, kind, w, 1, &x)?;
        let next = DuopolyPoint {
            p: [(1.0 - lam) * x.p[0] + lam * b0.0, (1.0 - lam) * x.p[1] + lam * b1.0],
            theta: [(1.0 - lam) * x.theta[0] + lam * b0.1, (1.0 - lam) * x.theta[1] + lam * b1.1],
        };
        step = (0..2)
            .map(|k| {
                ((next.p[k] - x.p[k]).abs() / (1.0 + x.p[k].abs()))
                    .max((next.theta[k] - x.theta[k]).abs() / (1.0 + x.theta[k].abs()))
            })
            .fold(0.0, f64::max);
        if !step.is_finite() {
            break;
        }
        x = next;
        if step < 1e-3 * config.outer_tolerance {
            return Ok(x);
        }
    }
    Err(ModelError::NonContraction { iterations: config.max_iterations, last_step: step })
}

/// Solves both airlines' first-order conditions as one 4×4 linear system.
pub fn duopoly_joint_foc(d: &DuopolyParams, kind: ContractKind, w: f64) -> Result<DuopolyPoint> {
    let r = shares(d, kind)?;
    check(d, r)?;
    let (a, j) = demand_linear(d);
    let mut m = Matrix4::zeros();
    let mut rhs = Vector4::zeros();
    for k in 0..2 {
        let (pi, ti) = (2 * k, 2 * k + 1);
        // r q - β (r p - w) = 0
        for c in 0..4 {
            m[(2 * k, c)] = r[k] * j[k][c];
        }
        m[(2 * k, pi)] -= d.beta * r[k];
        rhs[2 * k] = -r[k] * a[k] - d.beta * w;
        // ξ (r p - w) - 2 I θ = 0
        m[(2 * k + 1, pi)] = d.xi * r[k];
        m[(2 * k + 1, ti)] = -2.0 * d.i;
        rhs[2 * k + 1] = d.xi * w;
    }
    let lu = m.lu();
    if lu.determinant().abs() < 1e-12 {
        return Err(ModelError::Singular("duopoly first-order system".into()));
    }
    let x = lu.solve(&rhs).ok_or_else(|| ModelError::Singular("duopoly first-order system".into()))?;
    Ok(DuopolyPoint { p: [x[0], x[2]], theta: [x[1], x[3]] })
}

/// Airport fee choice with both airlines in Nash equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DuopolyEquilibrium {
    pub kind: ContractKind,
    pub w: f64,
    pub p: [f64; 2],
    pub theta: [f64; 2],
    pub q: [f64; 2],
    pub pi_al: [f64; 2],
    pub pi_ap: f64,
    pub u_ap: f64,
    pub cs: f64,
}

/// Payoffs at the Nash point for fee `w`.
pub fn duopoly_outcome(d: &DuopolyParams, kind: ContractKind, w: f64) -> Result<DuopolyEquilibrium> {
    let r = shares(d, kind)?;
    let x = duopoly_joint_foc(d, kind, w)?;
    let q = d.demands(x.p, x.theta);
    let total = q[0] + q[1];
    let pi_al = [0, 1].map(|k| (r[k] * x.p[k] - w) * q[k] - d.i * x.theta[k].powi(2) - d.landing_fee);
    let pi_ap = (w + d.w_prime - d.c_ap) * total
        + (0..2).map(|k| (1.0 - r[k]) * x.p[k] * q[k]).sum::<f64>()
        + 2.0 * d.landing_fee;
    let cs = total * total / (2.0 * d.beta);
    Ok(DuopolyEquilibrium {
        kind,
        w,
        p: x.p,
        theta: x.theta,
        q,
        pi_al,
        pi_ap,
        u_ap: (1.0 - d.mu) * pi_ap + d.mu * cs,
        cs,
    })
}

/// Fee that maximises airport utility given the airlines' Nash response.
pub fn duopoly_solve(d: &DuopolyParams, kind: ContractKind, config: &SolverConfig) -> Result<DuopolyEquilibrium> {
    duopoly_outcome(d, kind, 0.0)?;
    let (lo, hi) = config.w_bracket.unwrap_or((-2.0 * d.c_ap, 4.0 * d.c_ap));
    let opts = super::search::SearchOptions {
        tol: config.outer_tolerance,
        grid_points: config.grid_points,
        max_refinements: config.max_refinements,
        widen: true,
    };
    let best = maximize(
        |w| duopoly_outcome(d, kind, w).map_or(f64::NEG_INFINITY, |e| e.u_ap),
        lo,
        hi,
        &opts,
    )?;
    duopoly_outcome(d, kind, best.x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_core::GreeningSign;

    #[test]
    fn iteration_matches_joint_solve() {
        let cfg = SolverConfig::default();
        let mut cases = vec![DuopolyParams::price_base(0.3, 0.1), DuopolyParams::greening_base(0.6, 0.2)];
        let mut g = DuopolyParams::greening_base(0.6, 0.2);
        g.greening_sign = GreeningSign::AsPrinted;
        cases.push(g);
        let mut rs = DuopolyParams::price_base(0.2, 0.25);
        rs.r1 = 0.8;
        rs.r2 = 0.7;
        cases.push(rs);
        for d in cases {
            for kind in [ContractKind::DCent, ContractKind::Rsc] {
                let a = duopoly_fixed_point(&d, kind, 50.0, &cfg).unwrap();
                let b = duopoly_joint_foc(&d, kind, 50.0).unwrap();
                for k in 0..2 {
                    assert!((a.p[k] - b.p[k]).abs() <= 1e-9 * b.p[k].abs(), "{a:?} {b:?}");
                    assert!((a.theta[k] - b.theta[k]).abs() <= 1e-9 * (1.0 + b.theta[k].abs()));
                }
            }
        }
        let mut rs2 = DuopolyParams::price_base(0.2, 0.25);
        rs2.r1 = 0.8;
        let a = duopoly_fixed_point(&rs2, ContractKind::Rsc, 30.0, &cfg).unwrap();
        let b = duopoly_joint_foc(&rs2, ContractKind::Rsc, 30.0).unwrap();
        assert!((a.p[0] - b.p[0]).abs() <= 1e-9 * b.p[0]);
    }

    #[test]
    fn unsupported_contract() {
        let d = DuopolyParams::price_base(0.2, 0.2);
        assert!(matches!(duopoly_joint_foc(&d, ContractKind::Ltt, 10.0), Err(ModelError::Unsupported(_))));
    }
}
