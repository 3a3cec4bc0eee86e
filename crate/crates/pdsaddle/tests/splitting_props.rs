use pdsaddle::problem::{make_random, Condition, RandomConstants, SaddleProblem};
use pdsaddle::sampling;
use pdsaddle::splitting::{self, generic_fb_step, AlgorithmId, Iterate, Split, StepSizes, StopReason};
use pdsaddle::verify::solve_reference;
use proptest::prelude::*;

fn instance(cond: Condition, seed: u64) -> SaddleProblem {
    let (n, m) = match cond {
        Condition::C1 => (3, 4),
        Condition::C2 => (3, 5),
        Condition::C3 => (4, 4),
    };
    let c = RandomConstants { mu_f: 0.5, mu_g: 0.8, l_f: 3.0, l_g: 2.0, sing_min: 0.4, sing_max: 1.5 };
    make_random(cond, n, m, c, seed).unwrap()
}

fn condition() -> impl Strategy<Value = Condition> {
    prop_oneof![Just(Condition::C1), Just(Condition::C2), Just(Condition::C3)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn specialized_steps_match_generic_solve(cond in condition(), seed in 0u64..500, t in 0.05..0.95f64, s in 0.05..0.95f64) {
        let p = instance(cond, seed);
        let steps = StepSizes::primal_dual(t / p.norm_a(), s / p.norm_a());
        let mut rng = sampling::trial_rng(seed, 1);
        let w = Iterate::from_stacked(&sampling::gaussian_vector(&mut rng, p.dim()), p.n());
        for (alg, split) in [(AlgorithmId::CP, Split::Cp), (AlgorithmId::SEMI, Split::Semi), (AlgorithmId::EXPLICIT, Split::Explicit)] {
            let a = splitting::step(&p, &alg, &steps, &w).unwrap().stacked();
            let b = generic_fb_step(&p, split, &steps, &w).unwrap().stacked();
            prop_assert!((&a - &b).amax() <= 1e-12 * a.amax().max(1.0), "{alg}");
        }
    }

    #[test]
    fn reference_solution_is_a_common_fixed_point(cond in condition(), seed in 0u64..500) {
        let p = instance(cond, seed);
        let sol = solve_reference(&p).unwrap();
        let t = 0.5 / p.norm_a();
        let steps = StepSizes { alpha: 0.05, eta: 0.1, ..StepSizes::primal_dual(t, t) };
        for alg in AlgorithmId::ALL {
            let next = splitting::step(&p, &alg, &steps, &sol.point).unwrap();
            let d = (next.stacked() - sol.point.stacked()).amax();
            prop_assert!(d <= 1e-10 * sol.point.stacked().amax().max(1.0), "{alg}: {d}");
        }
    }
}

#[test]
fn runs_are_deterministic() {
    let p = instance(Condition::C1, 3);
    let steps = StepSizes::primal_dual(0.5 / p.norm_a(), 0.5 / p.norm_a());
    let w0 = Iterate::from_slices(&[1.0, 2.0, 3.0], &[0.0, -1.0, 0.5, 0.25]);
    let a = splitting::run(&p, &AlgorithmId::CP, &steps, &w0, 5000, 1e-10).unwrap();
    let b = splitting::run(&p, &AlgorithmId::CP, &steps, &w0, 5000, 1e-10).unwrap();
    assert_eq!(a.stop_reason, StopReason::ResidualTol);
    assert_eq!(a.residuals, b.residuals);
}

#[test]
fn plain_descent_ascent_diverges_on_bilinear_problem() {
    let p = pdsaddle::problem::make_counterexample(pdsaddle::problem::Counterexample::I);
    assert!(AlgorithmId::PlainPdg.check_capabilities(&p).is_ok());
    let bilinear = SaddleProblem::new(
        pdsaddle::oracle::FunctionOracle::zero(1).unwrap(),
        pdsaddle::oracle::FunctionOracle::zero(1).unwrap(),
        pdsaddle::linalg::Matrix::from_element(1, 1, 1.0),
    )
    .unwrap();
    let w0 = Iterate::from_slices(&[1.0], &[0.0]);
    let err = splitting::run(&bilinear, &AlgorithmId::PlainPdg, &StepSizes::gradient(0.5, 0.0), &w0, 100_000, 1e-12);
    assert!(matches!(err, Err(pdsaddle::Error::Divergence { .. })));
}
