use pdsaddle::linalg::{self, Matrix, Vector};
use pdsaddle::precond::{self, best_gamma, check_phi_bounds, make_phi, make_phi_eta, zeta, PsiShift};
use proptest::prelude::*;

fn matrix_strategy() -> impl Strategy<Value = Matrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(m, n)| {
        prop::collection::vec(-2.0..2.0f64, m * n).prop_map(move |v| Matrix::from_vec(m, n, v))
    })
}

#[test]
fn frozen_phi_values() {
    let phi = make_phi(0.5, 0.5, &Matrix::from_element(1, 1, 1.0)).unwrap();
    assert!((phi.lambda_min() - 1.0).abs() < 1e-14);
    assert!((phi.lambda_max() - 3.0).abs() < 1e-14);
    assert_eq!(zeta(0.5, 0.25, 2.0), 6.0);
    assert!(make_phi(1.0, 1.0, &Matrix::from_element(1, 1, 1.0)).is_err());
    let w = Vector::from_vec(vec![1.0, 1.0]);
    assert!((phi.norm(&w) - 2f64.sqrt()).abs() < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn phi_is_spd_exactly_below_the_step_bound(a in matrix_strategy(), tau in 0.01..10.0f64, frac in 0.01..2.0f64) {
        let na = linalg::spectral_norm(&a);
        prop_assume!(na > 1e-6);
        let sigma = frac / (tau * na * na);
        prop_assume!((frac - 1.0).abs() > 1e-6);
        let built = make_phi(tau, sigma, &a);
        prop_assert_eq!(built.is_ok(), frac < 1.0);
        if let Ok(phi) = built {
            prop_assert!(phi.lambda_min() > 0.0);
            prop_assert!(check_phi_bounds(&phi).unwrap().pass);
            prop_assert!(phi.lambda_max() <= zeta(tau, sigma, na) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn phi_eta_spectrum_is_one_plus_minus_eta_s(a in matrix_strategy(), frac in 0.01..0.99f64) {
        let k = a.nrows().min(a.ncols());
        let a = a.view((0, 0), (k, k)).into_owned();
        let na = linalg::spectral_norm(&a);
        prop_assume!(na > 1e-6);
        let eta = frac / na;
        let phi = make_phi_eta(eta, &a).unwrap();
        let s = linalg::singular_values(&a);
        let lo = s.iter().map(|v| 1.0 - eta * v).fold(f64::INFINITY, f64::min);
        prop_assert!((phi.lambda_min() - lo).abs() < 1e-10);
        prop_assert!((phi.lambda_max() - (1.0 + eta * na)).abs() < 1e-10);
    }

    #[test]
    fn weighted_norm_dominates_rayleigh_bound(a in matrix_strategy(), seed in 0u64..1000) {
        let na = linalg::spectral_norm(&a).max(1e-3);
        let phi = make_phi(0.5 / na, 0.5 / na, &a).unwrap();
        let mut rng = pdsaddle::sampling::trial_rng(seed, 0);
        let w = pdsaddle::sampling::gaussian_vector(&mut rng, phi.dim());
        let sq = phi.norm(&w).powi(2);
        prop_assert!(sq >= phi.lambda_min() * w.norm_squared() * (1.0 - 1e-12));
        prop_assert!(sq <= phi.lambda_max() * w.norm_squared() * (1.0 + 1e-12));
        let inner = precond::weighted_inner(&phi, &w, &w).unwrap();
        prop_assert!((inner - sq).abs() <= 1e-10 * sq.max(1.0));
    }

    #[test]
    fn best_gamma_satisfies_its_inequality(a in matrix_strategy(), gx in 0.0..2.0f64, gy in 0.0..2.0f64) {
        let na = linalg::spectral_norm(&a).max(1e-3);
        let phi = make_phi(0.7 / na, 0.7 / na, &a).unwrap();
        let (pb, pf) = (PsiShift::new(gx, 0.0), PsiShift::new(0.0, gy));
        let g = best_gamma(&phi, &pb, &pf);
        prop_assert!((0.0..=1.0).contains(&g));
        let (n, m) = (a.ncols(), a.nrows());
        let gap = pb.matrix(n, m) + pf.matrix(n, m) - (phi.matrix() + pb.matrix(n, m)) * g;
        prop_assert!(linalg::extreme_eigenvalues(&gap).0 >= -1e-9);
    }
}
