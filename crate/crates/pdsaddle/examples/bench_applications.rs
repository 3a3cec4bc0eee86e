//! Iterations to tolerance for the five algorithms on the policy-evaluation benchmark.

use pdsaddle::cli::Generator;
use pdsaddle::problem::{build_condition_profile, Condition, DEFAULT_RANK_TOL};
use pdsaddle::rates::{certify, optimal_stepsizes};
use pdsaddle::splitting::{run_with, AlgorithmId, Iterate, RunOptions, StepSizes};

fn main() -> pdsaddle::Result<()> {
    let problem = Generator::PolicyEval { n: 4, t: 50, gamma: 0.9, seed: 1 }.build()?;
    let profile = build_condition_profile(&problem, DEFAULT_RANK_TOL);
    println!("C1={} C2={} C3={}", profile.c1, profile.c2, profile.c3);
    println!("{:<15} {:<4} {:>10} {:>8}", "algorithm", "cond", "rho", "iters");
    for alg in AlgorithmId::ALL {
        let best = [Condition::C1, Condition::C2, Condition::C3]
            .into_iter()
            .filter_map(|c| {
                let steps = optimal_stepsizes(&alg, c, &profile, 1e-3, &StepSizes::default()).ok()?;
                certify(&profile, &alg, &steps, c).ok().map(|cert| (c, steps, cert))
            })
            .min_by(|a, b| a.2.rho.total_cmp(&b.2.rho));
        let Some((cond, steps, cert)) = best else {
            println!("{:<15} no certificate", alg.name());
            continue;
        };
        let opts = RunOptions { norm: Some(cert.norm_matrix(&problem)?), ..RunOptions::new(1_000_000, 1e-8) };
        let traj = run_with(&problem, &alg, &steps, &Iterate::zeros(&problem), &opts)?;
        println!("{:<15} {:<4} {:>10.6} {:>8}", alg.name(), cond.to_string(), cert.rho, traj.residuals.len());
    }
    Ok(())
}
