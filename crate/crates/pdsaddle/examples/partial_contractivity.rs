//! The shift hypotheses behind the semi-implicit and explicit rates, checked on sampled pairs.

use pdsaddle::precond::PsiShift;
use pdsaddle::problem::{build_condition_profile, make_random, Condition, RandomConstants, DEFAULT_RANK_TOL};
use pdsaddle::rates::{optimal_stepsizes, rate_explicit_pdg, rate_semi_implicit};
use pdsaddle::splitting::{AlgorithmId, Split, StepSizes};
use pdsaddle::verify::check_a1_a2;

fn main() -> pdsaddle::Result<()> {
    let constants = RandomConstants { mu_f: 0.3, mu_g: 1.0, l_f: 2.0, l_g: 2.5, sing_min: 0.4, sing_max: 1.2 };
    let problem = make_random(Condition::C2, 3, 4, constants, 11)?;
    let profile = build_condition_profile(&problem, DEFAULT_RANK_TOL);

    let steps = optimal_stepsizes(&AlgorithmId::SEMI, Condition::C2, &profile, 1e-3, &StepSizes::default())?;
    let cert = rate_semi_implicit(&profile, &steps, Condition::C2)?;
    let (gx, gy) = (cert.constant("gamma_x").unwrap_or(0.0), cert.constant("gamma_y").unwrap_or(0.0));
    let r = check_a1_a2(&problem, Split::Semi, &steps, &PsiShift::new(gx, 0.0), &PsiShift::new(0.0, gy), 2000, 2.0, 0)?;
    println!("semi-implicit: gamma_x={gx:.4} gamma_y={gy:.4} pass={} best rate {:.6} <= certified {:.6}", r.pass, r.rho, cert.rho);

    let steps = optimal_stepsizes(&AlgorithmId::EXPLICIT, Condition::C2, &profile, 1e-3, &StepSizes::default())?;
    let cert = rate_explicit_pdg(&profile, &steps, Condition::C2)?;
    let beta = PsiShift::new(cert.constant("beta_x").unwrap_or(0.0), cert.constant("beta_y").unwrap_or(0.0));
    let shift = PsiShift::new(profile.mu_a / cert.constant("zeta").unwrap_or(f64::INFINITY), 0.0);
    let r = check_a1_a2(&problem, Split::Explicit, &steps, &shift, &beta, 2000, 2.0, 0)?;
    println!("explicit:      pass={} best rate {:.6} <= certified {:.6}", r.pass, r.rho, cert.rho);
    Ok(())
}
