use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torus_wrt::dynamics::{fixed_point_ratio, root_limit, spectral_radius, stretch_via_invariant};
use torus_wrt::wrt::SL2ZMatrix;

fn random_anosov(rng: &mut ChaCha8Rng) -> SL2ZMatrix {
    loop {
        let (a, c, d): (i64, i64, i64) = (rng.random_range(-20..=20), rng.random_range(-20..=20), rng.random_range(-20..=20));
        if c == 0 || (a * d - 1) % c != 0 {
            continue;
        }
        let b = (a * d - 1) / c;
        if b.abs() <= 20 && (a + d).abs() > 2 {
            return SL2ZMatrix::new(a, b, c, d).unwrap();
        }
    }
}

fn family() -> Vec<SL2ZMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    (0..10).map(|_| random_anosov(&mut rng)).collect()
}

#[test]
fn invariant_recovers_stretch_factor() {
    for u in family() {
        for n in 1..=5 {
            let est = stretch_via_invariant(u, n).unwrap().lambda;
            assert!((est - spectral_radius(u)).abs() <= 1e-9, "{u} n={n}: {est}");
        }
    }
}

#[test]
fn fixed_point_growth() {
    for u in family() {
        let ratio = fixed_point_ratio(u, 15).unwrap();
        assert!((ratio / spectral_radius(u) - 1.0).abs() < 0.01, "{u}");
    }
}

#[test]
fn root_limit_converges() {
    for u in family() {
        let lam = spectral_radius(u);
        let errs: Vec<f64> = [5, 10, 20, 40].iter().map(|&n| (root_limit(u, n).unwrap().lambda - lam).abs() / lam).collect();
        assert!(errs[2] <= 1e-2, "{u}: {errs:?}");
        let inversions = errs.windows(2).filter(|w| w[1] > w[0] + 1e-6).count();
        assert_eq!(inversions, 0, "{u}: {errs:?}");
    }
}
