use pdsaddle::problem::{build_condition_profile, make_random, Condition, RandomConstants, DEFAULT_RANK_TOL};
use pdsaddle::rates::{self, certify, kappa, optimal_stepsizes};
use pdsaddle::splitting::{AlgorithmId, StepSizes};
use proptest::prelude::*;

/// κ in rationalized form: `(a + b − √((a − b)² + 4abq)) / (2(1 − q))` with `q = τσ‖A‖²`.
fn kappa_oracle(mu_f: f64, mu_g: f64, tau: f64, sigma: f64, norm_a: f64) -> f64 {
    let (a, b, q) = (mu_f * tau, mu_g * sigma, tau * sigma * norm_a * norm_a);
    (a + b - ((a - b).powi(2) + 4.0 * a * b * q).sqrt()) / (2.0 * (1.0 - q))
}

fn log_uniform() -> impl Strategy<Value = f64> {
    (-1.0..1.0f64).prop_map(|e| 10f64.powf(e))
}

fn algorithms(cond: Condition) -> Vec<AlgorithmId> {
    match cond {
        Condition::C2 => AlgorithmId::ALL.to_vec(),
        _ => vec![AlgorithmId::CP, AlgorithmId::SEMI, AlgorithmId::EXPLICIT],
    }
}

#[test]
fn frozen_kappa_values() {
    // a = b = 1, q = 0.25: (2 − √1) / 1.5
    let k = kappa(1.0, 1.0, 1.0, 1.0, 0.5).unwrap();
    assert!((k - 2.0 / 3.0).abs() < 1e-15);
    // A = 0 gives min(a, b).
    assert!((kappa(2.0, 3.0, 0.5, 0.1, 0.0).unwrap() - 0.3).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn kappa_matches_rationalized_form(mu_f in log_uniform(), mu_g in log_uniform(), na in log_uniform(), tau in log_uniform(), frac in 0.01..0.9f64) {
        let sigma = frac / (tau * na * na);
        let k = kappa(mu_f, mu_g, tau, sigma, na).unwrap();
        let o = kappa_oracle(mu_f, mu_g, tau, sigma, na);
        prop_assert!((k - o).abs() <= 1e-10 * o.abs().max(1e-300) + 1e-15, "{k} vs {o}");
        prop_assert!(k > 0.0 && k <= (mu_f * tau).min(mu_g * sigma) * (1.0 + 1e-12));
    }

    #[test]
    fn optimal_cp_rate_beats_prior_bound(mu_f in log_uniform(), mu_g in log_uniform(), na in log_uniform()) {
        let profile = pdsaddle::problem::ConditionProfile {
            mu_f, mu_g, l_f: mu_f, l_g: mu_g, mu_a: na * na, lambda_min_aat: na * na, norm_a: na,
            n: 1, m: 1, c1: true, c2: true, c3: true, warnings: vec![],
        };
        let steps = optimal_stepsizes(&AlgorithmId::CP, Condition::C1, &profile, 1e-3, &StepSizes::default()).unwrap();
        let cert = certify(&profile, &AlgorithmId::CP, &steps, Condition::C1).unwrap();
        let prior = (1.0 + (mu_f * mu_g).sqrt() / na).powf(-0.5);
        prop_assert!(cert.rho < prior);
    }

    #[test]
    fn certified_rates_lie_in_unit_interval(seed in 0u64..10_000, ci in 0usize..3, eps in 1e-4..0.5f64) {
        let cond = [Condition::C1, Condition::C2, Condition::C3][ci];
        let (n, m) = match cond { Condition::C1 => (3, 2), Condition::C2 => (2, 3), Condition::C3 => (3, 3) };
        let c = RandomConstants { mu_f: 0.3, mu_g: 0.6, l_f: 2.0, l_g: 1.2, sing_min: 0.5, sing_max: 1.6 };
        let p = make_random(cond, n, m, c, seed).unwrap();
        let profile = build_condition_profile(&p, DEFAULT_RANK_TOL);
        for alg in algorithms(cond) {
            let steps = optimal_stepsizes(&alg, cond, &profile, eps, &StepSizes::default()).unwrap();
            let cert = certify(&profile, &alg, &steps, cond).unwrap();
            prop_assert!(cert.rho > 0.0 && cert.rho < 1.0, "{alg} {cond}: {}", cert.rho);
        }
    }

    #[test]
    fn cp_rate_improves_as_slack_shrinks(seed in 0u64..1000, e1 in 1e-4..0.5f64, e2 in 1e-4..0.5f64) {
        let c = RandomConstants { mu_f: 0.0, mu_g: 0.6, l_f: 2.0, l_g: 1.2, sing_min: 0.5, sing_max: 1.6 };
        let p = make_random(Condition::C2, 2, 3, c, seed).unwrap();
        let profile = build_condition_profile(&p, DEFAULT_RANK_TOL);
        let rho = |e: f64| {
            let s = optimal_stepsizes(&AlgorithmId::CP, Condition::C2, &profile, e, &StepSizes::default()).unwrap();
            rates::rate_cp(&profile, &s, Condition::C2).unwrap().rho
        };
        let (lo, hi) = if e1 < e2 { (e1, e2) } else { (e2, e1) };
        prop_assert!(rho(lo) <= rho(hi) + 1e-12);
    }
}
