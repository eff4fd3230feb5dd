//! Limit formulas for the two extreme scenarios.
//!
//! S1 drops the airport's surplus weight (μ = 0); S2 removes greening
//! sensitivity (ξ → 0). These are exact limits, not numeric evaluations of
//! the general forms.

use super::deltas::compute_deltas;
use crate::model_core::ChannelParams;

/// Centralised welfare (equal to channel profit) when μ = 0.
pub fn s1_sw_cent(p: &ChannelParams) -> f64 {
    let d1 = compute_deltas(p, 1.0, 0.0).delta1;
    p.i * d1 * d1 / (p.f * p.f * (4.0 * p.beta * p.i - p.xi * p.xi))
}

/// Decentralised conveyance fee when μ = 0.
pub fn s1_w_dcent(p: &ChannelParams) -> f64 {
    (p.c_ap - p.c_al - 1.0) / 2.0 - (p.gamma - p.alpha * p.f) / (2.0 * p.beta * p.f)
}

/// Revenue-sharing conveyance fee when μ = 0.
pub fn s1_w_rsc(p: &ChannelParams, psi: f64) -> f64 {
    (p.c_al + p.c_ap - 1.0) * psi - p.c_al
}

/// Two-part-tariff conveyance fee when μ = 0.
pub fn s1_w_ltt(p: &ChannelParams) -> f64 {
    p.c_ap - 1.0
}

/// Centralised welfare when ξ → 0.
pub fn s2_sw_cent(p: &ChannelParams) -> f64 {
    let d1 = compute_deltas(p, 1.0, 0.0).delta1;
    d1 * d1 * (p.mu - 1.0).powi(2) / (2.0 * p.beta * p.f * p.f * (2.0 - 3.0 * p.mu))
}

/// Centralised channel profit when ξ → 0.
pub fn s2_profit_cent(p: &ChannelParams) -> f64 {
    let d1 = compute_deltas(p, 1.0, 0.0).delta1;
    let (b, i, mu) = (p.beta, p.i, p.mu);
    i * (4.0 * b * i - 8.0 * b * i * mu) * (1.0 - mu) * d1 * d1
        / (p.f * p.f * (4.0 * b * i - 6.0 * b * i * mu).powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_scenario_values() {
        let s1 = ChannelParams { mu: 0.0, ..ChannelParams::base() };
        assert!((s1_sw_cent(&s1) - 3694.85).abs() < 0.01);
        assert!((s1_w_dcent(&s1) - 111.96).abs() < 1e-9);
        assert!((s1_w_rsc(&s1, 0.68) - 23.52).abs() < 1e-9);
        assert_eq!(s1_w_ltt(&s1), 44.0);
        let s2 = ChannelParams { xi: 0.0, ..ChannelParams::base() };
        assert!((s2_sw_cent(&s2) - 2127.07).abs() < 0.01);
        assert!((s2_profit_cent(&s2) - 2274.18).abs() < 0.01);
    }
}
