//! Gradient descent-ascent with and without the coupling-aware preconditioner.

use pdsaddle::problem::{build_condition_profile, make_random, Condition, RandomConstants, DEFAULT_RANK_TOL};
use pdsaddle::rates::{certify, optimal_stepsizes, phi_eta_constants};
use pdsaddle::splitting::{run, AlgorithmId, Iterate, StepSizes};

fn main() -> pdsaddle::Result<()> {
    let constants = RandomConstants { mu_f: 0.2, mu_g: 1.0, l_f: 1.0, l_g: 1.5, sing_min: 0.6, sing_max: 1.0 };
    let problem = make_random(Condition::C2, 3, 3, constants, 5)?;
    let profile = build_condition_profile(&problem, DEFAULT_RANK_TOL);
    for alg in [AlgorithmId::PlainPdg, AlgorithmId::PrecondGda] {
        let steps = optimal_stepsizes(&alg, Condition::C2, &profile, 1e-3, &StepSizes::default())?;
        let cert = certify(&profile, &alg, &steps, Condition::C2)?;
        let traj = run(&problem, &alg, &steps, &Iterate::zeros(&problem), 200_000, 1e-10)?;
        println!("{:<11} alpha={:.4} eta={:.4} rho={:.6} iterations={}", alg.name(), steps.alpha, steps.eta, cert.rho, traj.residuals.len());
        if alg == AlgorithmId::PrecondGda {
            let k = phi_eta_constants(&profile, steps.eta)?;
            println!("  mu_eta={:.4} L_eta={:.4} spectrum of the preconditioner in [{:.4}, {:.4}]", k.mu_eta, k.l_eta, k.phi_lambda_min, k.phi_lambda_max);
        }
    }
    Ok(())
}
