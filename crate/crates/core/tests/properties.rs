use greenchannel::analysis::{ge_against, linspace, swe_against, sweep, Param, Quantity};
use greenchannel::closed_form::{eq_closed_form, ClosedFormOptions};
use greenchannel::model_core::{concavity_check, DuopolyParams};
use greenchannel::solver::{duopoly_outcome, follower_objective, respond, solve_with_tax};
use greenchannel::{solve_contract, ChannelParams, ContractKind, ContractSpec, SolverConfig, TaxPolicy};
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = ContractKind> {
    prop::sample::select(ContractKind::CONTRACTS.to_vec())
}

// Reservation profit low enough to stay feasible across the sampled calibrations.
fn spec(k: ContractKind) -> ContractSpec {
    ContractSpec::for_kind(k, 0.68, 1000.0)
}

/// Calibrations around the base point that keep every second-order condition.
fn params() -> impl Strategy<Value = ChannelParams> {
    (8.0f64..30.0, 0.0f64..0.3, 0.5f64..3.5).prop_filter_map("concave", |(i, mu, xi)| {
        let p = ChannelParams { i, mu, xi, ..ChannelParams::base() };
        let c = concavity_check(&p);
        (c.centralised && c.cost_sharing).then_some(p)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn greening_rises_and_airline_profit_falls_with_tax(k in kind(), t in 0.0f64..11.0, dt in 0.05f64..1.0) {
        let p = ChannelParams::base();
        let cfg = SolverConfig::default();
        let c = ContractSpec::for_kind(k, 0.68, 2500.0);
        let a = solve_with_tax(&p, &c, &TaxPolicy::new(t, 6.5).unwrap(), &cfg).unwrap();
        let b = solve_with_tax(&p, &c, &TaxPolicy::new(t + dt, 6.5).unwrap(), &cfg).unwrap();
        prop_assert!(b.theta > a.theta);
        prop_assert!(b.pi_al.unwrap() < a.pi_al.unwrap());
    }

    #[test]
    fn zero_tax_is_the_untaxed_game(k in kind(), p in params()) {
        let cfg = SolverConfig::default();
        let a = solve_contract(&p, &spec(k), &cfg).unwrap();
        let b = solve_with_tax(&p, &spec(k), &TaxPolicy::new(0.0, 6.5).unwrap(), &cfg).unwrap();
        prop_assert_eq!(a.w.map(f64::to_bits), b.w.map(f64::to_bits));
        prop_assert_eq!(a.p.to_bits(), b.p.to_bits());
        prop_assert_eq!(a.theta.to_bits(), b.theta.to_bits());
        prop_assert_eq!(b.gtr, 0.0);
    }

    #[test]
    fn follower_cannot_improve(k in kind(), w in 0.0f64..150.0, dp in -5.0f64..5.0, dth in -3.0f64..3.0, t in 0.0f64..12.0) {
        let p = ChannelParams::base();
        let c = spec(k).with_tax(TaxPolicy::new(t, 6.5).unwrap());
        let (pp, th) = respond(&p, &c, w).unwrap();
        let best = follower_objective(&p, &c, w, pp, th);
        let other = follower_objective(&p, &c, w, pp + dp, (th + dth).max(0.0));
        prop_assert!(other <= best + 1e-9 * best.abs().max(1.0));
    }

    #[test]
    fn efficiency_ratios_in_unit_interval(k in kind(), p in params()) {
        let cfg = SolverConfig::default();
        let cent = solve_contract(&p, &ContractSpec::cent(), &cfg).unwrap();
        let e = solve_contract(&p, &spec(k), &cfg).unwrap();
        let swe = swe_against(&e, &cent);
        prop_assert!(swe > 0.0 && swe <= 1.0 + 1e-9, "swe {}", swe);
        let ge = ge_against(&e, &cent).unwrap();
        prop_assert!(ge > 0.0 && ge <= 1.0 + 1e-9, "ge {}", ge);
    }

    #[test]
    fn equilibria_satisfy_demand(k in kind(), p in params()) {
        let e = solve_contract(&p, &spec(k), &SolverConfig::default()).unwrap();
        let q = p.alpha - p.beta * e.p - p.gamma / p.f + p.xi * e.theta;
        prop_assert!((e.q - q).abs() <= 1e-9 * q.abs().max(1.0));
    }

    #[test]
    fn closed_form_agrees_with_solver(k in prop::sample::select(ContractKind::ALL.to_vec()), p in params()) {
        let cf = eq_closed_form(&p, k, 0.68, 0.0, &ClosedFormOptions::default()).unwrap();
        let num = solve_contract(&p, &ContractSpec::for_kind(k, 0.68, 0.0), &SolverConfig::default()).unwrap();
        let tol = if k == ContractKind::Csc { 1e-4 } else { 1e-6 };
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
        prop_assert!(rel(num.p, cf.eq.p) <= tol);
        prop_assert!(rel(num.theta, cf.eq.theta) <= tol);
        if let (Some(a), Some(b)) = (num.w, cf.eq.w) {
            prop_assert!(rel(a, b) <= tol);
        }
    }

    #[test]
    fn duopoly_relabeling(b1 in 0.05f64..0.5, b2 in 0.05f64..0.5, greening in any::<bool>(), rsc in any::<bool>(), w in 10.0f64..120.0) {
        let d = if greening { DuopolyParams::greening_base(b1, b2) } else { DuopolyParams::price_base(b1, b2) };
        let d = DuopolyParams { r1: 0.9, r2: 0.75, ..d };
        let k = if rsc { ContractKind::Rsc } else { ContractKind::DCent };
        let a = duopoly_outcome(&d, k, w).unwrap();
        let b = duopoly_outcome(&d.relabeled(), k, w).unwrap();
        for i in 0..2 {
            prop_assert!((a.p[i] - b.p[1 - i]).abs() <= 1e-9 * a.p[i].abs().max(1.0));
            prop_assert!((a.theta[i] - b.theta[1 - i]).abs() <= 1e-9 * a.theta[i].abs().max(1.0));
        }
    }

    #[test]
    fn sweep_rows_follow_the_grid(k in kind(), n in 1usize..6, hi in 0.5f64..3.0) {
        let grid = linspace(0.0, hi, n);
        let r = sweep(&ChannelParams::base(), &spec(k), Param::Xi, &grid, &SolverConfig::default()).unwrap();
        let s = r.series(Quantity::Theta);
        prop_assert_eq!(s.len() + r.gaps(), n);
        prop_assert!(s.windows(2).all(|w| w[0].0 < w[1].0));
        prop_assert!(s.iter().all(|&(_, th)| th >= 0.0));
    }
}
