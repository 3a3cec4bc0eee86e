//! Instances outside every condition: multiple saddle points, and a bilinear game where plain
//! gradient descent-ascent spirals outward.

use pdsaddle::linalg::Matrix;
use pdsaddle::oracle::FunctionOracle;
use pdsaddle::problem::{build_condition_profile, make_counterexample, Counterexample, SaddleProblem, DEFAULT_RANK_TOL};
use pdsaddle::splitting::{step, AlgorithmId, Iterate, StepSizes};

fn main() -> pdsaddle::Result<()> {
    for which in [Counterexample::I, Counterexample::II, Counterexample::III] {
        let p = make_counterexample(which);
        let profile = build_condition_profile(&p, DEFAULT_RANK_TOL);
        println!("{which:?}: C1={} C2={} C3={}", profile.c1, profile.c2, profile.c3);
    }

    let bilinear = SaddleProblem::new(FunctionOracle::zero(1)?, FunctionOracle::zero(1)?, Matrix::from_element(1, 1, 1.0))?;
    let alpha = 0.5;
    for alg in [AlgorithmId::PlainPdg, AlgorithmId::ExplicitPdg { theta: -1.0 }, AlgorithmId::EXPLICIT] {
        let steps = StepSizes { alpha, ..StepSizes::primal_dual(alpha, alpha) };
        let mut w = Iterate::from_slices(&[1.0], &[0.0]);
        for _ in 0..50 {
            w = step(&bilinear, &alg, &steps, &w)?;
        }
        println!("{:<28} |w_50| = {:.4e} (expansion bound sqrt(1+a^2)^50 = {:.4e})", format!("{alg:?}"), w.stacked().norm(), (1.0f64 + alpha * alpha).sqrt().powi(50));
    }
    Ok(())
}
