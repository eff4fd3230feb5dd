//! The airline's problem for a given conveyance fee.
//!
//! All four contracts share one decision objective
//! `s (pq - k I θ² - GTR) - (w + c_AL) q - cf`, with `s = ψ` under RSC and
//! `k = 1 - φ` under CSC (both 1 otherwise). Dividing the gradient by `s`
//! gives the effective per-passenger cost `K = (w + c_AL) / s`.

use crate::error::{ModelError, Result};
use crate::model_core::{ChannelParams, ContractKind, ContractSpec, TaxPolicy};

#[derive(Debug, Clone, Copy)]
struct Terms {
    s: f64,
    k: f64,
}

fn terms(contract: &ContractSpec) -> Terms {
    Terms {
        s: contract.psi_or_one(),
        k: match contract.kind {
            ContractKind::Csc => 1.0 - contract.phi_or_star(),
            _ => 1.0,
        },
    }
}

fn hessian_ok(params: &ChannelParams, t: Terms) -> Result<()> {
    let lhs = 4.0 * params.beta * t.k * params.i;
    let rhs = params.xi * params.xi;
    if lhs > rhs {
        Ok(())
    } else {
        Err(ModelError::NoBestResponse(format!(
            "airline objective not concave: 4 beta (1 - phi) I = {lhs:.6} <= xi^2 = {rhs:.6}"
        )))
    }
}

/// Airline decision objective: profit with the fee paid on full demand and
/// revenue terms scaled by the retained share.
pub fn follower_objective(params: &ChannelParams, contract: &ContractSpec, w: f64, p: f64, theta: f64) -> f64 {
    let t = terms(contract);
    let q = params.intercept() - params.beta * p + params.xi * theta;
    let tax = contract.tax.map_or(0.0, |tp| crate::model_core::gtr(&tp, params.f, theta));
    t.s * (p * q - t.k * params.i * theta * theta - tax) - (w + params.c_al) * q - params.landing_fees()
}

/// Interior stationary point for a given effective greening subsidy `t_eff`.
fn stationary(params: &ChannelParams, tm: Terms, w: f64, t_eff: f64) -> (f64, f64) {
    let big_k = (w + params.c_al) / tm.s;
    let two_ki = 2.0 * tm.k * params.i;
    let d = 2.0 * params.beta - params.xi * params.xi / two_ki;
    let m = (params.intercept() - params.beta * big_k + params.xi * t_eff / two_ki) / d;
    (m + big_k, (params.xi * m + t_eff) / two_ki)
}

/// Untaxed best response `(p, θ)`.
///
/// # Errors
/// [`ModelError::NoBestResponse`] when the airline Hessian is not negative definite.
pub fn airline_best_response(params: &ChannelParams, contract: &ContractSpec, w: f64) -> Result<(f64, f64)> {
    let tm = terms(contract);
    hessian_ok(params, tm)?;
    Ok(stationary(params, tm, w, 0.0))
}

/// Best response when the airline pays `t (fθ₀ - θ)⁺`.
///
/// The objective is concave with a kink at `θ = fθ₀`. The penalised branch is
/// used when its greening stays below target, the unpenalised branch when its
/// greening reaches the target, and otherwise the airline sits on the kink.
pub fn airline_best_response_taxed(
    params: &ChannelParams,
    contract: &ContractSpec,
    w: f64,
    tax: &TaxPolicy,
) -> Result<(f64, f64)> {
    tax.validate()?;
    let tm = terms(contract);
    hessian_ok(params, tm)?;
    if tax.t == 0.0 {
        return Ok(stationary(params, tm, w, 0.0));
    }
    let target = params.f * tax.theta0;
    let active = stationary(params, tm, w, tax.t);
    if active.1 < target {
        return Ok(active);
    }
    let free = stationary(params, tm, w, 0.0);
    if free.1 >= target {
        return Ok(free);
    }
    let big_k = (w + params.c_al) / tm.s;
    let p = (params.intercept() + params.xi * target + params.beta * big_k) / (2.0 * params.beta);
    Ok((p, target))
}

/// Best response honouring `contract.tax` when present.
pub fn respond(params: &ChannelParams, contract: &ContractSpec, w: f64) -> Result<(f64, f64)> {
    match &contract.tax {
        Some(tp) => airline_best_response_taxed(params, contract, w, tp),
        None => airline_best_response(params, contract, w),
    }
}

/// Largest scaled stationarity (or KKT at the tax kink) violation of the airline at `(p, θ)`.
pub fn follower_residual(params: &ChannelParams, contract: &ContractSpec, w: f64, p: f64, theta: f64) -> f64 {
    let tm = terms(contract);
    let big_k = (w + params.c_al) / tm.s;
    let q = params.intercept() - params.beta * p + params.xi * theta;
    let m = p - big_k;
    let rp = (q - params.beta * m).abs() / (1.0 + q.abs() + params.beta * p.abs());
    let two_ki = 2.0 * tm.k * params.i;
    let scale = 1.0 + params.xi * m.abs() + two_ki * theta.abs();
    let g = params.xi * m - two_ki * theta;
    let rt = match &contract.tax {
        Some(tp) if tp.t > 0.0 => {
            let target = params.f * tp.theta0;
            let tol = 1e-9 * (1.0 + target);
            if (theta - target).abs() <= tol {
                (-(g + tp.t)).max(g).max(0.0) / (scale + tp.t)
            } else if theta < target {
                (g + tp.t).abs() / (scale + tp.t)
            } else {
                g.abs() / scale
            }
        }
        _ => g.abs() / scale,
    };
    rp.max(rt)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_dcent_response() {
        let p = ChannelParams::base();
        let (fare, th) = airline_best_response(&p, &ContractSpec::dcent(), 105.418).unwrap();
        assert!((fare - 185.020).abs() < 5e-3, "{fare}");
        assert!((th - 7.450).abs() < 5e-3, "{th}");
        assert!(follower_residual(&p, &ContractSpec::dcent(), 105.418, fare, th) < 1e-12);
    }

    #[test]
    fn dense_grid_does_not_beat_response() {
        let p = ChannelParams::base();
        for c in [ContractSpec::dcent(), ContractSpec::csc(Some(0.4)), ContractSpec::rsc(0.7)] {
            let w = 30.0;
            let (bp, bt) = airline_best_response(&p, &c, w).unwrap();
            let best = follower_objective(&p, &c, w, bp, bt);
            for a in -20..=20 {
                for b in -20..=20 {
                    let v = follower_objective(&p, &c, w, bp + a as f64 * 0.5, bt + b as f64 * 0.25);
                    assert!(v <= best + 1e-9);
                }
            }
        }
    }

    #[test]
    fn taxed_regions() {
        let p = ChannelParams::base();
        let c = ContractSpec::dcent();
        let w = 105.418;
        let (_, free) = airline_best_response(&p, &c, w).unwrap();
        let low = TaxPolicy::new(5.0, 6.5).unwrap();
        let (_, t1) = airline_best_response_taxed(&p, &c, w, &low).unwrap();
        assert!(t1 > free && t1 < 32.5);
        let easy = TaxPolicy::new(5.0, 1.0).unwrap();
        let (_, t2) = airline_best_response_taxed(&p, &c, w, &easy).unwrap();
        assert_eq!(t2, free);
        let huge = TaxPolicy::new(1e6, 6.5).unwrap();
        let (_, t3) = airline_best_response_taxed(&p, &c, w, &huge).unwrap();
        assert_eq!(t3, 32.5);
        let taxed = c.with_tax(huge);
        let (p3, _) = airline_best_response_taxed(&p, &c, w, &huge).unwrap();
        assert!(follower_residual(&p, &taxed, w, p3, t3) < 1e-12);
    }

    #[test]
    fn non_concave_follower() {
        let p = ChannelParams::base();
        let c = ContractSpec::csc(Some(0.9));
        assert!(matches!(airline_best_response(&p, &c, 0.0), Err(ModelError::NoBestResponse(_))));
    }
}
