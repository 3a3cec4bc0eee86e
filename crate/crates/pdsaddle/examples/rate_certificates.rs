//! Certified contraction factors of every algorithm under every regularity condition that holds.

use pdsaddle::problem::{build_condition_profile, make_random, Condition, RandomConstants, DEFAULT_RANK_TOL};
use pdsaddle::rates::{certify, optimal_stepsizes};
use pdsaddle::splitting::{AlgorithmId, StepSizes};

fn main() -> pdsaddle::Result<()> {
    let constants = RandomConstants { mu_f: 0.5, mu_g: 1.0, l_f: 4.0, l_g: 2.0, sing_min: 0.5, sing_max: 2.0 };
    let problem = make_random(Condition::C1, 4, 4, constants, 1)?;
    let profile = build_condition_profile(&problem, DEFAULT_RANK_TOL);
    println!("mu_f={:.3} mu_g={:.3} L_f={:.3} L_g={:.3} |A|={:.3}", profile.mu_f, profile.mu_g, profile.l_f, profile.l_g, profile.norm_a);
    println!("C1={} C2={} C3={}", profile.c1, profile.c2, profile.c3);
    for cond in [Condition::C1, Condition::C2, Condition::C3] {
        for alg in AlgorithmId::ALL {
            let steps = match optimal_stepsizes(&alg, cond, &profile, 1e-3, &StepSizes::default()) {
                Ok(s) => s,
                Err(_) => continue,
            };
            if let Ok(cert) = certify(&profile, &alg, &steps, cond) {
                let shown = match alg {
                    AlgorithmId::PlainPdg | AlgorithmId::PrecondGda => format!("alpha={:.2e} eta={:.2e}", steps.alpha, steps.eta),
                    _ => format!("tau={:.4} sigma={:.4}", steps.tau, steps.sigma),
                };
                println!("{cond} {:<15} rho={:.6} 1-rho={:.2e} {shown} [{}]", alg.name(), cert.rho, 1.0 - cert.rho, cert.theorem);
            }
        }
    }
    Ok(())
}
