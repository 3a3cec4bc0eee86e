//! Reference saddle points: linear optimality system, active-set enumeration and iterative fallback.

use pdsaddle::cli::Generator;
use pdsaddle::verify::solve_reference;

fn main() -> pdsaddle::Result<()> {
    let problems = [
        ("policy evaluation", Generator::PolicyEval { n: 4, t: 50, gamma: 0.9, seed: 1 }),
        ("affine-constrained QP", Generator::AffineConstrained { n: 6, m: 8, mu_g: 1.0, l_g: 3.0, sing_min: 0.5, sing_max: 2.0, seed: 2 }),
        ("Huber-ROF 8x8", Generator::HuberRof { rows: 8, cols: 8, lambda: 8.0, alpha: 0.05, noise: 0.1, seed: 3 }),
    ];
    for (name, generator) in problems {
        let problem = generator.build()?;
        let sol = solve_reference(&problem)?;
        println!("{name:<22} method={:?} fixed-point residual={:.2e}", sol.method, sol.residual);
    }
    Ok(())
}
