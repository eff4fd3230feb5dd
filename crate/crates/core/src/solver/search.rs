//! Derivative-free scalar maximisation: grid-seeded bracket, golden section,
//! one parabolic polish step.

use crate::error::{ModelError, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Result of a scalar maximisation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
    /// Step used for the final local-optimality probe.
    pub probe_step: f64,
    /// `value >= f(x ± probe_step)`.
    pub local_max: bool,
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `tol * (1 + |x|)`.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol * (1.0 + mid.abs()) {
            break;
        }
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Rounding scale of an objective value.
fn noise(v: f64) -> f64 {
    64.0 * f64::EPSILON * (1.0 + v.abs())
}

/// Options for [`maximize`].
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub tol: f64,
    pub grid_points: usize,
    /// Number of times the interval may be widened when the best grid point sits on an edge.
    pub max_refinements: usize,
    /// When false the interval is a hard constraint and edge optima are accepted.
    pub widen: bool,
}

/// Maximises `f` starting from `[lo, hi]`.
///
/// A uniform grid picks the bracket around the best point. If that point is
/// on an edge and widening is allowed, the interval doubles toward that edge.
/// Golden section then narrows the bracket and a parabola through three
/// probes refines the result when it improves the objective.
///
/// # Errors
/// [`ModelError::BracketExhausted`] when widening runs out or the objective is not finite anywhere.
pub fn maximize<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, opts: &SearchOptions) -> Result<Maximum> {
    let (mut lo, mut hi) = (lo, hi);
    let n = opts.grid_points.max(4);
    let mut rounds = 0;
    let (a, b) = loop {
        let xs: Vec<f64> = (0..=n).map(|k| lo + (hi - lo) * k as f64 / n as f64).collect();
        let vals: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        let (k, best) = vals
            .iter()
            .enumerate()
            .fold((0usize, f64::NEG_INFINITY), |acc, (k, &v)| if v > acc.1 { (k, v) } else { acc });
        if !best.is_finite() {
            return Err(ModelError::BracketExhausted(format!(
                "objective not finite on [{lo:.6e}, {hi:.6e}]"
            )));
        }
        let on_edge = k == 0 || k == n;
        if on_edge && opts.widen {
            if rounds >= opts.max_refinements {
                return Err(ModelError::BracketExhausted(format!(
                    "optimum still on the edge of [{lo:.6e}, {hi:.6e}] after {rounds} widenings"
                )));
            }
            let width = hi - lo;
            if k == 0 {
                lo -= width;
            } else {
                hi += width;
            }
            rounds += 1;
            continue;
        }
        break (xs[k.saturating_sub(1)], xs[(k + 1).min(n)]);
    };

    let (mut x, mut fx) = golden_max(&mut f, a, b, opts.tol);
    for &edge in &[a, b] {
        let fe = f(edge);
        if fe > fx {
            x = edge;
            fx = fe;
        }
    }

    let h = 1e-3 * (1.0 + x.abs()).min(1e3) * (b - a).min(1.0).max(1e-6);
    let (fm, fp) = (f(x - h), f(x + h));
    let curv = fp - 2.0 * fx + fm;
    if curv < 0.0 {
        let xv = x - 0.5 * h * (fp - fm) / curv;
        if (xv - x).abs() <= h && xv >= a.min(lo) && xv <= b.max(hi) {
            let fv = f(xv);
            // Near a flat optimum the comparison is below rounding; the vertex is still better placed.
            if fv >= fx - noise(fx) {
                x = xv;
                fx = fv;
            }
        }
    }
    let (fm, fp) = (f(x - h), f(x + h));
    let slack = noise(fx);
    Ok(Maximum { x, value: fx, probe_step: h, local_max: fx >= fm - slack && fx >= fp - slack })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> SearchOptions {
        SearchOptions { tol: 1e-10, grid_points: 24, max_refinements: 8, widen: true }
    }

    #[test]
    fn quadratic_is_exact() {
        let m = maximize(|x| -(x - 3.7).powi(2) * 2.5 + 1.0, -10.0, 10.0, &opts()).unwrap();
        assert!((m.x - 3.7).abs() < 1e-10, "{}", m.x);
        assert!(m.local_max);
    }

    #[test]
    fn widens_toward_optimum() {
        let m = maximize(|x| -(x - 250.0).powi(2), -10.0, 10.0, &opts()).unwrap();
        assert!((m.x - 250.0).abs() < 1e-8);
    }

    #[test]
    fn kinked_objective() {
        let m = maximize(|x: f64| -(x - 1.0).abs() - 0.1 * x * x, -5.0, 5.0, &opts()).unwrap();
        assert!((m.x - 1.0).abs() < 1e-8, "{}", m.x);
    }

    #[test]
    fn hard_interval_accepts_edge() {
        let o = SearchOptions { widen: false, ..opts() };
        let m = maximize(|x| x, 0.0, 1.0, &o).unwrap();
        assert!((m.x - 1.0).abs() < 1e-9);
    }

    #[test]
    fn exhausted_widening() {
        let o = SearchOptions { max_refinements: 2, ..opts() };
        assert!(maximize(|x| x, 0.0, 1.0, &o).is_err());
    }
}
