//! Check a certificate empirically: sampled pairs on a nonsmooth instance, exact norm on a quadratic one.

use pdsaddle::linalg::Matrix;
use pdsaddle::oracle::{make_oracle, ConvexSet, FunctionOracle, OracleCatalogEntry};
use pdsaddle::problem::{build_condition_profile, make_random, Condition, RandomConstants, SaddleProblem, DEFAULT_RANK_TOL};
use pdsaddle::rates::{certify, optimal_stepsizes};
use pdsaddle::splitting::{AlgorithmId, StepSizes};
use pdsaddle::verify::{check_contraction, exact_affine_contraction, step_map};

fn report(name: &str, problem: &SaddleProblem, alg: AlgorithmId, cond: Condition) -> pdsaddle::Result<()> {
    let profile = build_condition_profile(problem, DEFAULT_RANK_TOL);
    let steps = optimal_stepsizes(&alg, cond, &profile, 1e-3, &StepSizes::default())?;
    let cert = certify(&profile, &alg, &steps, cond)?;
    let norm = cert.norm_matrix(problem)?;
    let sampled = check_contraction(step_map(problem, &alg, &steps), &norm, cert.rho, 2000, 2.0, 0)?;
    println!("{name}: rho {:.5}, sampled worst ratio {:.5} over {} pairs", cert.rho, sampled.max_ratio, sampled.pairs_tested);
    if problem.is_quadratic() {
        let exact = exact_affine_contraction(step_map(problem, &alg, &steps), &norm, cert.rho, 0)?;
        println!("{name}: exact operator norm {:.5} (pass = {})", exact.operator_norm, exact.pass);
    }
    Ok(())
}

fn main() -> pdsaddle::Result<()> {
    let f = make_oracle(OracleCatalogEntry::QuadraticIndicator { scale: 1.0, linear: vec![0.5, -1.0, 0.2], set: ConvexSet::Nonneg })?;
    let g = FunctionOracle::scaled_quadratic(2.0, &[0.0, 1.0])?;
    let a = Matrix::from_row_slice(2, 3, &[1.0, 0.5, -0.3, 0.2, -1.0, 0.7]);
    report("orthant", &SaddleProblem::new(f, g, a)?, AlgorithmId::CP, Condition::C1)?;

    let constants = RandomConstants { mu_f: 0.0, mu_g: 1.0, l_f: 3.0, l_g: 2.0, sing_min: 0.5, sing_max: 1.5 };
    let quad = make_random(Condition::C2, 3, 5, constants, 7)?;
    report("quadratic", &quad, AlgorithmId::SEMI, Condition::C2)?;
    Ok(())
}
