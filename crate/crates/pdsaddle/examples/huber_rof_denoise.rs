//! Denoise a synthetic image with the proximal primal-dual method at certified-optimal steps.

use pdsaddle::cli::{synthetic_image, Generator};
use pdsaddle::problem::{build_condition_profile, Condition, DEFAULT_RANK_TOL};
use pdsaddle::rates::{certify, optimal_stepsizes};
use pdsaddle::splitting::{run_with, AlgorithmId, Iterate, RunOptions, StepSizes};

fn main() -> pdsaddle::Result<()> {
    let (rows, cols) = (24, 24);
    let problem = Generator::HuberRof { rows, cols, lambda: 8.0, alpha: 0.05, noise: 0.1, seed: 3 }.build()?;
    let profile = build_condition_profile(&problem, DEFAULT_RANK_TOL);
    let alg = AlgorithmId::CP;
    let steps = optimal_stepsizes(&alg, Condition::C1, &profile, 1e-3, &StepSizes::default())?;
    let cert = certify(&profile, &alg, &steps, Condition::C1)?;
    println!("certified rho = {:.5} with tau = {:.4}, sigma = {:.4}", cert.rho, steps.tau, steps.sigma);

    let opts = RunOptions { norm: Some(cert.norm_matrix(&problem)?), ..RunOptions::new(5000, 1e-9) };
    let traj = run_with(&problem, &alg, &steps, &Iterate::zeros(&problem), &opts)?;
    for (k, r) in traj.residuals.iter().enumerate().step_by(20) {
        println!("iter {k:>4}  residual {r:.3e}");
    }
    let x = &traj.iterates.last().expect("nonempty").x;
    let noisy = synthetic_image(rows, cols, 0.1, 3);
    let clean = synthetic_image(rows, cols, 0.0, 3);
    let err = |img: &[f64]| (img.iter().zip(&clean).map(|(a, b)| (a - b).powi(2)).sum::<f64>() / clean.len() as f64).sqrt();
    println!("rms error: noisy {:.4}, denoised {:.4}", err(&noisy), err(x.as_slice()));
    Ok(())
}
