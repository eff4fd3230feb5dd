//! Shorthand aliases shared by the closed-form equilibria.
//!
//! Each alias is a direct transcription with one definition per field. The
//! non-aeronautical revenue appears as the literal `1.0`, so these
//! expressions are only valid for `w_prime == 1`.

use serde::{Deserialize, Serialize};

use crate::model_core::ChannelParams;

/// Aliases Δ₁..Δ₁₃, σ₁, σ₂ evaluated at one calibration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaSet {
    pub delta1: f64,
    pub delta2: f64,
    /// Δ₃ with the repeated `- 2Iαμ` term counted once.
    pub delta3: f64,
    /// Δ₃ exactly as transcribed, with the repeated term counted twice.
    pub delta3_printed: f64,
    pub delta4: f64,
    pub delta5: f64,
    pub delta6: f64,
    pub delta7: f64,
    pub delta8: f64,
    pub delta9: f64,
    pub delta10: f64,
    pub delta11: f64,
    pub delta12: f64,
    pub delta13: f64,
    pub sigma1: f64,
    pub sigma2: f64,
}

impl DeltaSet {
    /// `Δ₂ + 2βIμ`, the centralised denominator.
    pub fn e2(&self, p: &ChannelParams) -> f64 {
        self.delta2 + 2.0 * p.beta * p.i * p.mu
    }

    /// `Δ₂ + 3βIμ`, the decentralised denominator.
    pub fn e3(&self, p: &ChannelParams) -> f64 {
        self.delta2 + 3.0 * p.beta * p.i * p.mu
    }
}

/// Evaluates every alias. `psi` enters Δ₈ only, `pi_bar` enters Δ₁₃ only.
pub fn compute_deltas(params: &ChannelParams, psi: f64, pi_bar: f64) -> DeltaSet {
    let ChannelParams { alpha: a, beta: b, gamma: g, f, xi, i, c_al, c_ap, mu, .. } = *params;
    let x2 = xi * xi;

    let delta1 = a * f - b * f * (c_ap + c_al - 1.0) - g;
    let delta2 = 4.0 * b * i + mu * x2 - x2 - 8.0 * b * i * mu;
    let delta3 = (1.0 - mu) * (2.0 * a * i + (x2 - 2.0 * b * i) * (1.0 - c_ap - c_al))
        - 2.0 * i * a * mu
        - (2.0 * i * g / f) * (1.0 - 2.0 * mu);
    let delta3_printed = delta3 - 2.0 * i * a * mu;
    let delta4 = -g + a * f - b * f * (1.0 - c_ap + c_al);
    let delta5 = (1.0 - mu) * ((2.0 * b * i - x2) * (c_ap + c_al - 1.0) - a * x2)
        + 2.0 * a * i * (3.0 - 4.0 * mu);
    let delta6 = 4.0 * f * b * i * (1.0 - mu) * (8.0 * b * i - 3.0 * x2)
        * (g + (b * c_al + b * c_ap - a - b) * f)
        + (g - a * f + b * c_al * f) * (8.0 * b * b * i * i * mu - 3.0 * b * i * x2 * (1.0 - mu));
    let delta7 = (1.0 - mu)
        * (2.0 * b * (4.0 * b * i - 3.0 * x2) * (c_al + c_ap - 1.0) + 3.0 * a * (8.0 * b * i - x2))
        - 8.0 * b * i * mu * (a + b * (c_ap + c_al));
    let delta8 = (1.0 - mu) * (4.0 * b * i - x2) * (c_al - psi * (c_ap + c_al - 1.0))
        - 2.0 * i * mu * (b * c_al - a * psi);
    let delta9 = f * x2 - 4.0 * b * f * i - c_ap * f * x2 + 4.0 * b * c_ap * f * i;
    let delta10 = 9.0 * delta2 + 4.0 * b * i * (8.0 * mu - 1.0);
    let delta11 = a * f - b * c_al * f - g;
    let delta12 = 2.0 * delta6 - 3.0 * b * i * delta1 * x2 * (1.0 - mu) + 8.0 * b * b * i * i * mu * delta1;
    let delta13 = delta13_expanded(params, pi_bar);

    let sigma2 = (a + b * (1.0 - c_al - c_ap)).powi(2);
    let m3 = 3.0 * mu - 2.0;
    let sigma1 = (2.0 * a + b) / 9.0 - (2.0 * a * (c_al - c_ap)) / 9.0 - (2.0 * b * (c_al - c_ap)) / 9.0
        + (b * (c_al * c_al - c_ap * c_ap)) / 9.0
        + a * a / (9.0 * b)
        - (2.0 * sigma2) / (9.0 * b * m3)
        + sigma2 / (9.0 * b * m3 * m3)
        + (2.0 * b * c_al * c_ap) / 9.0;

    DeltaSet {
        delta1,
        delta2,
        delta3,
        delta3_printed,
        delta4,
        delta5,
        delta6,
        delta7,
        delta8,
        delta9,
        delta10,
        delta11,
        delta12,
        delta13,
        sigma1,
        sigma2,
    }
}

/// Δ₁₃ in its fully expanded polynomial form, term by term.
fn delta13_expanded(params: &ChannelParams, pi: f64) -> f64 {
    let ChannelParams { alpha: al, beta: be, gamma: ga, f, xi, i, c, c_al: cl, c_ap: ca, mu, .. } = *params;
    let (f2, f3) = (f * f, f * f * f);
    let (i2, mu2, x2, x4) = (i * i, mu * mu, xi * xi, xi.powi(4));
    let (al2, be2, be3) = (al * al, be * be, be * be * be);
    let (ca2, cl2, ga2) = (ca * ca, cl * cl, ga * ga);

    let terms = [
        4.0 * al2 * be * f2 * i2 * mu2,
        -8.0 * al2 * be * f2 * i2 * mu,
        4.0 * al2 * be * f2 * i2,
        -al2 * f2 * i * mu2 * x2,
        2.0 * al2 * f2 * i * mu * x2,
        -al2 * f2 * i * x2,
        -8.0 * al * be2 * ca * f2 * i2 * mu2,
        16.0 * al * be2 * ca * f2 * i2 * mu,
        -8.0 * al * be2 * ca * f2 * i2,
        -8.0 * al * be2 * cl * f2 * i2 * mu2,
        16.0 * al * be2 * cl * f2 * i2 * mu,
        -8.0 * al * be2 * cl * f2 * i2,
        8.0 * al * be2 * f2 * i2 * mu2,
        -16.0 * al * be2 * f2 * i2 * mu,
        8.0 * al * be2 * f2 * i2,
        2.0 * al * be * ca * f2 * i * mu2 * x2,
        -4.0 * al * be * ca * f2 * i * mu * x2,
        2.0 * al * be * ca * f2 * i * x2,
        2.0 * al * be * cl * f2 * i * mu2 * x2,
        -4.0 * al * be * cl * f2 * i * mu * x2,
        2.0 * al * be * cl * f2 * i * x2,
        -2.0 * al * be * f2 * i * mu2 * x2,
        4.0 * al * be * f2 * i * mu * x2,
        -2.0 * al * be * f2 * i * x2,
        -8.0 * al * be * f * i2 * mu2 * ga,
        16.0 * al * be * f * i2 * mu * ga,
        -8.0 * al * be * f * i2 * ga,
        2.0 * al * f * i * mu2 * x2 * ga,
        -4.0 * al * f * i * mu * x2 * ga,
        2.0 * al * f * i * x2 * ga,
        4.0 * be3 * ca2 * f2 * i2 * mu2,
        -8.0 * be3 * ca2 * f2 * i2 * mu,
        4.0 * be3 * ca2 * f2 * i2,
        8.0 * be3 * ca * cl * f2 * i2 * mu2,
        -16.0 * be3 * ca * cl * f2 * i2 * mu,
        8.0 * be3 * ca * cl * f2 * i2,
        -8.0 * be3 * ca * f2 * i2 * mu2,
        16.0 * be3 * ca * f2 * i2 * mu,
        -8.0 * be3 * ca * f2 * i2,
        4.0 * be3 * cl2 * f2 * i2 * mu2,
        -8.0 * be3 * cl2 * f2 * i2 * mu,
        4.0 * be3 * cl2 * f2 * i2,
        -8.0 * be3 * cl * f2 * i2 * mu2,
        16.0 * be3 * cl * f2 * i2 * mu,
        -8.0 * be3 * cl * f2 * i2,
        4.0 * be3 * f2 * i2 * mu2,
        -8.0 * be3 * f2 * i2 * mu,
        4.0 * be3 * f2 * i2,
        -be2 * ca2 * f2 * i * mu2 * x2,
        2.0 * be2 * ca2 * f2 * i * mu * x2,
        -be2 * ca2 * f2 * i * x2,
        -2.0 * be2 * ca * cl * f2 * i * mu2 * x2,
        4.0 * be2 * ca * cl * f2 * i * mu * x2,
        -2.0 * be2 * ca * cl * f2 * i * x2,
        2.0 * be2 * ca * f2 * i * mu2 * x2,
        -4.0 * be2 * ca * f2 * i * mu * x2,
        2.0 * be2 * ca * f2 * i * x2,
        8.0 * be2 * ca * f * i2 * mu2 * ga,
        -16.0 * be2 * ca * f * i2 * mu * ga,
        8.0 * be2 * ca * f * i2 * ga,
        -be2 * cl2 * f2 * i * mu2 * x2,
        2.0 * be2 * cl2 * f2 * i * mu * x2,
        -be2 * cl2 * f2 * i * x2,
        2.0 * be2 * cl * f2 * i * mu2 * x2,
        -4.0 * be2 * cl * f2 * i * mu * x2,
        2.0 * be2 * cl * f2 * i * x2,
        8.0 * be2 * cl * f * i2 * mu2 * ga,
        -16.0 * be2 * cl * f * i2 * mu * ga,
        8.0 * be2 * cl * f * i2 * ga,
        -36.0 * c * be2 * f3 * i2 * mu2,
        48.0 * c * be2 * f3 * i2 * mu,
        -16.0 * c * be2 * f3 * i2,
        -36.0 * pi * be2 * f2 * i2 * mu2,
        48.0 * pi * be2 * f2 * i2 * mu,
        -16.0 * pi * be2 * f2 * i2,
        -be2 * f2 * i * mu2 * x2,
        2.0 * be2 * f2 * i * mu * x2,
        -be2 * f2 * i * x2,
        -8.0 * be2 * f * i2 * mu2 * ga,
        16.0 * be2 * f * i2 * mu * ga,
        -8.0 * be2 * f * i2 * ga,
        -2.0 * be * ca * f * i * mu2 * x2 * ga,
        4.0 * be * ca * f * i * mu * x2 * ga,
        -2.0 * be * ca * f * i * x2 * ga,
        -2.0 * be * cl * f * i * mu2 * x2 * ga,
        4.0 * be * cl * f * i * mu * x2 * ga,
        -2.0 * be * cl * f * i * x2 * ga,
        12.0 * c * be * f3 * i * mu2 * x2,
        -20.0 * c * be * f3 * i * mu * x2,
        8.0 * c * be * f3 * i * x2,
        12.0 * pi * be * f2 * i * mu2 * x2,
        -20.0 * pi * be * f2 * i * mu * x2,
        8.0 * pi * be * f2 * i * x2,
        2.0 * be * f * i * mu2 * x2 * ga,
        -4.0 * be * f * i * mu * x2 * ga,
        2.0 * be * f * i * x2 * ga,
        4.0 * be * i2 * mu2 * ga2,
        -8.0 * be * i2 * mu * ga2,
        4.0 * be * i2 * ga2,
        -c * f3 * mu2 * x4,
        2.0 * c * f3 * mu * x4,
        -c * f3 * x4,
        -pi * f2 * mu2 * x4,
        2.0 * pi * f2 * mu * x4,
        -pi * f2 * x4,
        -i * mu2 * x2 * ga2,
        2.0 * i * mu * x2 * ga2,
        -i * x2 * ga2,
    ];
    terms.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_values() {
        let p = ChannelParams::base();
        let d = compute_deltas(&p, 0.68, 2500.0);
        assert!((d.delta1 - 339.8).abs() < 1e-9);
        assert!((d.delta2 - 7.98).abs() < 1e-9);
        assert!((d.delta10 - 82.38).abs() < 1e-9);
    }

    #[test]
    fn delta1_root() {
        let mut p = ChannelParams::base();
        p.gamma = 0.0;
        p.alpha = p.beta * (p.c_ap + p.c_al - 1.0);
        assert!(compute_deltas(&p, 1.0, 0.0).delta1.abs() < 1e-9);
    }

    #[test]
    fn delta2_mu_collapse() {
        let p = ChannelParams { mu: 0.0, ..ChannelParams::base() };
        let d = compute_deltas(&p, 1.0, 0.0);
        assert_eq!(d.delta2, 4.0 * p.beta * p.i - p.xi * p.xi);
    }

    #[test]
    fn sigma2_nonnegative() {
        let d = compute_deltas(&ChannelParams::base(), 0.68, 2500.0);
        assert!(d.sigma2 >= 0.0);
        assert!((d.sigma2 - (100.0f64 + 0.5 * (1.0 - 65.0)).powi(2)).abs() < 1e-9);
    }
}
