//! Property tests for the state algebra, measures and decompositions.

use nalgebra::{Matrix4, SymmetricEigen};
use proptest::prelude::*;

use twomode_core::channels::{apply_channel, ChannelSpec, Mode};
use twomode_core::decomp::{
    classical_residual, is_classical, local_squeeze_params, pure_equivalent, r_prime, Decomposition,
    DecompositionKind,
};
use twomode_core::gstate::{
    apply, local_squeezer, symplectic_form, tmsv_from_chi, to_standard_form, two_mode_squeezer, CovMatrix,
    SqueezeParams, StandardForm, SymplecticOp,
};
use twomode_core::measures::{
    eof_from_squeezing, is_separable, nu_tilde_minus, r_tilde_interval, symplectic_spectrum,
};
use twomode_core::oracle::{epr_beta, min_beta};
use twomode_core::sampler::{SamplerConfig, StateSampler};

/// Symplectic eigenvalues from the antisymmetric matrix
/// `K = sigma^{1/2} Omega sigma^{1/2}`, whose `K^T K` has eigenvalues
/// `nu_-^2, nu_-^2, nu_+^2, nu_+^2`.
fn dense_spectrum(sigma: &Matrix4<f64>) -> (f64, f64) {
    let eig = SymmetricEigen::new(*sigma);
    let root = eig.eigenvectors * Matrix4::from_diagonal(&eig.eigenvalues.map(f64::sqrt)) * eig.eigenvectors.transpose();
    let k = root * symplectic_form() * root;
    let mut nus: Vec<f64> = SymmetricEigen::new(k.transpose() * k).eigenvalues.iter().map(|v| v.sqrt()).collect();
    nus.sort_by(f64::total_cmp);
    (0.5 * (nus[0] + nus[1]), 0.5 * (nus[2] + nus[3]))
}

fn random_states(seed: u64, n: usize, entangled: bool) -> Vec<StandardForm> {
    let cfg = if entangled { SamplerConfig::default().entangled() } else { SamplerConfig::default() };
    StateSampler::new(seed, cfg).unwrap().sample_n(n).unwrap()
}

#[test]
fn spectrum_matches_dense_computation() {
    for sf in random_states(101, 1000, false) {
        for pt in [false, true] {
            let got = symplectic_spectrum(&sf, pt);
            let cov = if pt { sf.to_cov().partial_transpose() } else { sf.to_cov() };
            let (lo, hi) = dense_spectrum(cov.matrix());
            assert!((got.nu_minus - lo).abs() < 1e-9 * hi, "{sf} pt={pt}: {} vs {lo}", got.nu_minus);
            assert!((got.nu_plus - hi).abs() < 1e-9 * hi, "{sf} pt={pt}: {} vs {hi}", got.nu_plus);
        }
    }
}

#[test]
fn residual_classical_at_lower_end() {
    for sf in random_states(102, 500, true) {
        let iv = r_tilde_interval(&sf).unwrap();
        let (r1, r2) = local_squeeze_params(&sf, iv.r_minus).unwrap();
        let d = Decomposition::new(&sf, SqueezeParams::new(iv.r_minus, r1, r2), DecompositionKind::LocalThenSqueeze);
        assert!(d.is_classical(), "{sf}");
        assert!(d.reconstruct().max_abs_diff(&sf.to_cov()) < 1e-9);
    }
}

#[test]
fn local_squeeze_formula_valid_across_interval() {
    for sf in random_states(103, 200, true) {
        let iv = r_tilde_interval(&sf).unwrap();
        for k in 0..=20 {
            let r = iv.r_minus + (iv.r_plus - iv.r_minus) * k as f64 / 20.0;
            let (r1, r2) = local_squeeze_params(&sf, r).unwrap();
            let res = classical_residual(&sf, SqueezeParams::new(r, r1, r2), DecompositionKind::LocalThenSqueeze);
            assert!(is_classical(&res), "{sf} at {r}");
        }
    }
}

fn state_strategy() -> impl Strategy<Value = StandardForm> {
    (1.0..5.0f64, 1.0..5.0f64, 0.0..1.0f64, 0.0..1.0f64).prop_filter_map("unphysical", |(a, b, s, t)| {
        let c1 = s * (a * b).sqrt();
        let c2 = c1 * (1.0 - 2.0 * t);
        StandardForm::new(a, b, c1, c2).ok()
    })
}

fn local_symplectic() -> impl Strategy<Value = SymplecticOp> {
    (-3.2..3.2f64, -3.2..3.2f64, -0.8..0.8f64, -0.8..0.8f64, -3.2..3.2f64, -3.2..3.2f64).prop_map(
        |(t1, t2, s1, s2, u1, u2)| {
            SymplecticOp::local_rotation(u1, u2) * local_squeezer(s1, s2) * SymplecticOp::local_rotation(t1, t2)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalisation_convention(a in 1.0..5.0f64, b in 1.0..5.0f64, s in 0.0..1.0f64, t in 0.0..1.0f64,
                                swap in any::<bool>(), flip in any::<bool>()) {
        let c1 = s * (a * b).sqrt();
        let c2 = c1 * (1.0 - 2.0 * t);
        let (mut x, mut y) = if swap { (c2, c1) } else { (c1, c2) };
        if flip { x = -x; y = -y; }
        if let Ok(sf) = StandardForm::new(a, b, x, y) {
            prop_assert!(sf.c1() >= sf.c2().abs());
            prop_assert!(sf.c1() >= 0.0);
        }
    }

    #[test]
    fn dense_reduction_is_local_invariant(sf in state_strategy(), op in local_symplectic()) {
        let moved = apply(&op, &sf.to_cov());
        let back = to_standard_form(&moved).unwrap();
        for (x, y) in sf.params().iter().zip(back.params()) {
            prop_assert!((x - y).abs() < 1e-8 * (1.0 + x.abs()), "{} vs {}", sf, back);
        }
    }

    #[test]
    fn symplectic_ops_preserve_form(r in -2.0..2.0f64, r1 in -2.0..2.0f64, r2 in -2.0..2.0f64) {
        let op = two_mode_squeezer(r) * local_squeezer(r1, r2);
        prop_assert!(op.is_symplectic(1e-9 * (1.0 + (2.0 * (r.abs() + r1.abs() + r2.abs())).exp())));
        let id = op * op.inverse();
        prop_assert!((id.matrix() - Matrix4::identity()).amax() < 1e-8);
    }

    #[test]
    fn partial_transpose_preserves_physical_spectrum(sf in state_strategy()) {
        let s = symplectic_spectrum(&sf, false);
        prop_assert!(s.nu_minus >= 1.0 - 1e-10 && s.nu_minus <= s.nu_plus);
        let t = symplectic_spectrum(&sf, true);
        prop_assert!(t.nu_minus <= t.nu_plus && t.nu_minus > 0.0);
        // nu~_- nu~_+ = sqrt(det sigma) = nu_- nu_+
        prop_assert!((t.nu_minus * t.nu_plus - s.nu_minus * s.nu_plus).abs() < 1e-9 * s.nu_plus * s.nu_minus);
    }

    #[test]
    fn round_trips_both_orders(sf in state_strategy(), r in 0.0..2.0f64, r1 in -1.0..1.0f64, r2 in -1.0..1.0f64) {
        for kind in [DecompositionKind::SqueezeThenLocal, DecompositionKind::LocalThenSqueeze] {
            let d = Decomposition::new(&sf, SqueezeParams::new(r, r1, r2), kind);
            prop_assert!(d.reconstruct().max_abs_diff(&sf.to_cov()) < 1e-9);
        }
    }

    #[test]
    fn classical_plus_psd(entries in proptest::collection::vec(-1.0..1.0f64, 16)) {
        let m = Matrix4::from_row_slice(&entries);
        let sigma = CovMatrix::new(Matrix4::identity() + m * m.transpose()).unwrap();
        prop_assert!(is_classical(&sigma));
    }

    #[test]
    fn pure_equivalent_matches(r in 0.0..2.0f64, r1 in 0.0..2.0f64, r2 in 0.0..2.0f64) {
        let p = pure_equivalent(r, r1, r2).unwrap();
        prop_assert!(p.r_prime >= 0.0);
        let lhs = apply(&(two_mode_squeezer(r) * local_squeezer(r1, r2)), &CovMatrix::identity());
        let rhs = apply(&(local_squeezer(p.r1_prime, p.r2_prime) * two_mode_squeezer(p.r_prime)), &CovMatrix::identity());
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-9);
    }

    #[test]
    fn r_prime_dominates_r_tilde(r in 0.0..2.5f64, r1 in -2.0..2.0f64, r2 in -2.0..2.0f64) {
        prop_assert!(r_prime(r, r1, r2) >= r - 1e-12);
    }

    #[test]
    fn channel_outputs_stay_balanced(chi in 0.0..0.99f64, tau in 0.0..1.0f64, g in 1.0..5.0f64, v in 0.0..5.0f64) {
        let input = tmsv_from_chi(chi).unwrap();
        for ch in [ChannelSpec::lossy(tau).unwrap(), ChannelSpec::amplifier(g).unwrap(), ChannelSpec::classical_noise(v).unwrap()] {
            for mode in [Mode::One, Mode::Two] {
                let out = apply_channel(&input, &ch, mode).unwrap();
                prop_assert!((out.c1() + out.c2()).abs() < 1e-12 * (1.0 + out.c1()));
            }
        }
    }

    #[test]
    fn noise_above_two_breaks_entanglement(chi in 0.0..0.99f64, v in 2.0..6.0f64) {
        let out = apply_channel(&tmsv_from_chi(chi).unwrap(), &ChannelSpec::classical_noise(v).unwrap(), Mode::Two).unwrap();
        prop_assert!(is_separable(&out));
    }

    #[test]
    fn beta_bounded_by_nu_tilde(sf in state_strategy(), gx in -5.0..5.0f64, gp in -5.0..5.0f64) {
        if let Ok(beta) = epr_beta(&sf, gx, gp) {
            let nu = nu_tilde_minus(&sf);
            prop_assert!(beta >= nu * nu * (1.0 - 1e-9));
        }
    }

    #[test]
    fn eof_monotone(r in 0.0..4.0f64, dr in 1e-6..1.0f64) {
        prop_assert!(eof_from_squeezing(r + dr).unwrap() > eof_from_squeezing(r).unwrap());
    }
}

#[test]
fn epr_minimum_below_zero_gain() {
    for sf in random_states(104, 50, false) {
        let res = min_beta(&sf).unwrap();
        assert!(res.beta_min <= epr_beta(&sf, 0.0, 0.0).unwrap());
    }
}
