//! Seeded random sampling shared by generators and verification trials.
//!
//! Every trial draws from its own ChaCha stream keyed by `(seed, trial)`, so
//! results do not depend on scheduling order or thread count.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{Matrix, Vector};

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn gaussian_vector<R: Rng>(rng: &mut R, dim: usize) -> Vector {
    Vector::from_fn(dim, |_, _| rng.sample(StandardNormal))
}

pub fn unit_vector<R: Rng>(rng: &mut R, dim: usize) -> Vector {
    loop {
        let v = gaussian_vector(rng, dim);
        let norm = v.norm();
        if norm > 1e-12 {
            return v / norm;
        }
    }
}

/// Uniform sample from the Euclidean ball of the given radius.
pub fn in_ball<R: Rng>(rng: &mut R, dim: usize, radius: f64) -> Vector {
    let u: f64 = rng.gen();
    unit_vector(rng, dim) * (radius * u.powf(1.0 / dim as f64))
}

/// Haar-distributed orthogonal matrix via QR of a Gaussian matrix.
pub fn orthogonal<R: Rng>(rng: &mut R, dim: usize) -> Matrix {
    let g = DMatrix::from_fn(dim, dim, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        if r[(j, j)] < 0.0 {
            let col = -q.column(j);
            q.set_column(j, &col);
        }
    }
    q
}

/// Number of worker threads for verification trials; `PDSADDLE_THREADS` caps it.
pub fn thread_cap() -> Option<usize> {
    std::env::var("PDSADDLE_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
}

/// Map `f` over `0..count` in parallel, returning results in index order.
pub fn par_trials<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    let job = || (0..count).into_par_iter().map(&f).collect::<Vec<T>>();
    match thread_cap() {
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(job),
            Err(_) => (0..count).map(&f).collect(),
        },
        None => job(),
    }
}
