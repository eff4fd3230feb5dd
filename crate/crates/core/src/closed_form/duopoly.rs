//! Closed-form fares and greening levels of two competing airlines at a given fee.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::model_core::{CompetitionMode, DuopolyParams};

/// Fares and greening levels of both airlines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DuopolyPoint {
    pub p: [f64; 2],
    pub theta: [f64; 2],
}

/// Reading of expressions whose airline-2 (or RSC) terms break the index symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DuopolyTranscription {
    /// Exactly as typeset, including `β₁` where airline 2 would use `β₂`.
    Verbatim,
    /// Indices made consistent with each airline's own parameters.
    #[default]
    Symmetrized,
}

fn nonzero(den: f64, what: &str) -> Result<f64> {
    if den.abs() < 1e-12 {
        Err(ModelError::Singular(format!("{what} denominator vanishes")))
    } else {
        Ok(den)
    }
}

fn need_mode(d: &DuopolyParams, mode: CompetitionMode) -> Result<()> {
    if d.mode != mode {
        return Err(ModelError::Unsupported(format!("expression requires {mode:?}")));
    }
    Ok(())
}

/// Price competition, both airlines keeping their full revenue.
pub fn duopoly_price_closed_form(
    d: &DuopolyParams,
    w: f64,
    variant: DuopolyTranscription,
) -> Result<DuopolyPoint> {
    need_mode(d, CompetitionMode::PriceCompetition)?;
    let (a, b, b1, b2, xi, i) = (d.alpha, d.beta, d.beta1, d.beta2, d.xi, d.i);
    let x2 = xi * xi;
    let den = nonzero((x2 - 4.0 * b * i).powi(2) - 4.0 * b1 * b2 * i * i, "price-competition")?;

    let fare = |b_own: f64, b_bracket: f64| {
        (w * x2 * x2 - 2.0 * i * x2 * (a + b_own * w)
            + (b * w + a) * (8.0 * b * i * i + 4.0 * b_bracket * i * i)
            - 6.0 * b * i * w * x2)
            / den
    };
    let green = |b_own: f64, b_lead: f64, b_tail: f64| {
        xi * ((b - b_own) * w * x2 - 4.0 * b * i * (b * w - a) - a * x2
            + 2.0 * a * b_own * i
            + 2.0 * b_lead * i * w * (b + b_tail))
            / den
    };
    let (p2, t2) = match variant {
        DuopolyTranscription::Verbatim => (fare(b2, b1), green(b2, b1, b1)),
        DuopolyTranscription::Symmetrized => (fare(b2, b2), green(b2, b2, b1)),
    };
    Ok(DuopolyPoint { p: [fare(b1, b1), p2], theta: [green(b1, b1, b2), t2] })
}

/// Greening competition. The expressions are symmetric in the airline index.
pub fn duopoly_greening_closed_form(d: &DuopolyParams, w: f64) -> Result<DuopolyPoint> {
    need_mode(d, CompetitionMode::GreeningCompetition)?;
    let (a, b, xi, i) = (d.alpha, d.beta, d.xi, d.i);
    let x2 = xi * xi;
    let xs = [d.xi1, d.xi2];
    let den = nonzero((x2 - 4.0 * b * i).powi(2) - xs[0] * xs[1] * x2, "greening-competition")?;
    let theta = |k: usize| xi * (w * b - a) * (x2 - 4.0 * i * b + xs[k] * xi) / den;
    let fare = |k: usize| {
        (2.0 * i * xi * (w * xs[k] * b - a * (xi + xs[k]))
            + (8.0 * b * i * i * (a + w * b) - w * x2 * (6.0 * b * i - x2 + xs[k] * xs[1 - k])))
            / den
    };
    Ok(DuopolyPoint { p: [fare(0), fare(1)], theta: [theta(0), theta(1)] })
}

/// Price competition with a common retained revenue fraction `r`.
///
/// # Errors
/// Unequal fractions are outside the derivation and are rejected.
pub fn duopoly_rsc_closed_form(
    d: &DuopolyParams,
    w: f64,
    variant: DuopolyTranscription,
) -> Result<DuopolyPoint> {
    need_mode(d, CompetitionMode::PriceCompetition)?;
    if d.r1 != d.r2 {
        return Err(ModelError::Unsupported("revenue-sharing closed form assumes r1 = r2".into()));
    }
    let (a, b, xi, i, r) = (d.alpha, d.beta, d.xi, d.i, d.r1);
    let x2 = xi * xi;
    let bs = [d.beta1, d.beta2];
    let plain_den = nonzero((x2 - 4.0 * b * i).powi(2) - 4.0 * bs[0] * bs[1] * i * i, "revenue-sharing")?;
    let shared_den = nonzero((r * x2 - 4.0 * b * i).powi(2) - 4.0 * bs[0] * bs[1] * i * i, "revenue-sharing")?;
    let point = |k: usize| {
        let (b_own, b_other) = (bs[k], bs[1 - k]);
        let b_lead = match variant {
            DuopolyTranscription::Verbatim => bs[0],
            DuopolyTranscription::Symmetrized => b_own,
        };
        let p_den = match variant {
            DuopolyTranscription::Verbatim => r * plain_den,
            DuopolyTranscription::Symmetrized => r * shared_den,
        };
        let fare = (-r * x2 + 4.0 * b * i + 2.0 * b_lead * i) * (-r * w * x2 + 2.0 * a * i * r + 2.0 * b * i * w) / p_den;
        let green = (i * (4.0 * b * (a * r - b * w) + 2.0 * b_lead * (a * r + w * (b + b_other))) * xi
            - (a * r * r - (b - b_own) * r * w) * x2 * xi)
            / shared_den;
        (fare, green)
    };
    let (p1, t1) = point(0);
    let (p2, t2) = point(1);
    Ok(DuopolyPoint { p: [p1, p2], theta: [t1, t2] })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_price_instance() {
        let d = DuopolyParams::price_base(0.2, 0.2);
        for v in [DuopolyTranscription::Verbatim, DuopolyTranscription::Symmetrized] {
            let s = duopoly_price_closed_form(&d, 50.0, v).unwrap();
            assert!((s.p[0] - s.p[1]).abs() < 1e-9);
            assert!((s.theta[0] - s.theta[1]).abs() < 1e-9);
        }
    }

    #[test]
    fn rsc_full_retention_matches_price_form() {
        let d = DuopolyParams::price_base(0.3, 0.1);
        let a = duopoly_price_closed_form(&d, 40.0, DuopolyTranscription::Symmetrized).unwrap();
        let b = duopoly_rsc_closed_form(&d, 40.0, DuopolyTranscription::Symmetrized).unwrap();
        for k in 0..2 {
            assert!((a.p[k] - b.p[k]).abs() < 1e-9 * a.p[k].abs());
            assert!((a.theta[k] - b.theta[k]).abs() < 1e-9 * a.theta[k].abs());
        }
    }

    #[test]
    fn rsc_rejects_unequal_shares() {
        let mut d = DuopolyParams::price_base(0.2, 0.2);
        d.r1 = 0.8;
        assert!(matches!(
            duopoly_rsc_closed_form(&d, 40.0, DuopolyTranscription::Symmetrized),
            Err(ModelError::Unsupported(_))
        ));
    }

    #[test]
    fn wrong_mode_rejected() {
        let d = DuopolyParams::greening_base(0.5, 0.5);
        assert!(duopoly_price_closed_form(&d, 40.0, DuopolyTranscription::Symmetrized).is_err());
    }
}
