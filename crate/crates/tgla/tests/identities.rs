use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tgla::catalog::{a_minus_identity, catalog};
use tgla::identities::*;
use tgla::lattice::Quadruple;
use tgla::scalars::Ring;

fn syms(n: usize) -> (Ring, Vec<tgla::scalars::Scalar>) {
    let ring = Ring::new(1, n);
    let t = (0..n).map(|i| ring.var(i)).collect();
    (ring, t)
}

#[test]
fn binomials() {
    assert_eq!(binomial(-2, 3), -4);
    assert_eq!(binomial(5, 2), 10);
    assert_eq!(binomial(2, 3), 0);
}

#[test]
fn rational_identities_up_to_four_symbols() {
    for id in RationalIdentity::ALL {
        for n in 1..=4 {
            let ps = if id.takes_profile() { profiles(&[1, 2], n) } else { vec![vec![1; n]] };
            for p in ps {
                assert!(verify_rational(id, n, &p).unwrap().pass, "{} {n} {p:?}", id.name());
            }
        }
    }
}

#[test]
fn factored_sides_agree_as_plain_fractions() {
    for id in RationalIdentity::ALL {
        let (l, r, f) = rational_sides(id, 2, &[2, 1]).unwrap();
        assert_eq!(l.to_scalar(&f).unwrap(), r.to_scalar(&f).unwrap(), "{}", id.name());
    }
}

#[test]
fn single_pole_difference_is_delta() {
    // (1−tz)^{−1} − (1−t⁻¹z⁻¹)^{−1}(−tz)^{−1} = Σ_{n≥0} tⁿzⁿ + Σ_{n<0} tⁿzⁿ.
    let (ring, t) = syms(1);
    assert!(verify_product_difference(&ring, &t, &[-1], 8).unwrap().pass);
    let up = TwoSidedSeries::binomial_in_z(&ring, &t[0], -1, 8).unwrap();
    let down = TwoSidedSeries::binomial_in_z_inv(&ring, &t[0], -1, -10).unwrap()
        .mul(&TwoSidedSeries::monomial(&ring, -1, (-&t[0]).pow(-1).unwrap())).unwrap();
    let delta = TwoSidedSeries::delta(&ring, &t[0], -8, 8).unwrap();
    assert!(up.sub(&down).mismatches(&delta, -8, 8).unwrap().is_empty());
}

#[test]
fn mixed_series_and_pole_difference() {
    for n in 1..=3 {
        let (ring, t) = syms(n);
        for p in profiles(&[1, 2], n) {
            assert!(verify_mixed_series(&ring, &t, &p, true, 6).unwrap().pass, "s {p:?}");
            assert!(verify_mixed_series(&ring, &t, &p, false, 6).unwrap().pass, "t {p:?}");
            assert!(verify_pole_difference(&ring, &t, &p, 6).unwrap().pass, "pole {p:?}");
        }
    }
}

#[test]
fn product_difference_all_profiles() {
    for n in 1..=4 {
        let (ring, t) = syms(n);
        for p in profiles(&[-2, -1, 0, 1, 2], n) {
            assert!(verify_product_difference(&ring, &t, &p, 8).unwrap().pass, "{p:?}");
        }
    }
}

#[test]
fn delta_substitution_example() {
    // z²δ(az) = a^{−2}δ(az).
    let ring = Ring::new(1, 1);
    let a = ring.var(0);
    let f = [(2, ring.one())];
    assert!(verify_delta_substitution(&ring, &f, &a, false, 6).unwrap().pass);
    assert!(verify_delta_substitution(&ring, &f, &a, true, 6).unwrap().pass);
}

#[test]
fn substitution_sweep_passes() {
    for (id, fails) in substitution_sweep(5, 20, 6).unwrap() {
        assert_eq!(fails, 0, "{}", id.name());
    }
}

#[test]
fn printed_two_variable_derivative_sign_fails() {
    // F = z₂: F(Dδ)(z₂/cz₁) = cz₁(Dδ − δ), so adding the correction term is wrong.
    let ring = Ring::new(1, 1);
    let c = ring.var(0);
    let mut f = TwoVarPoly::new();
    f.insert((0, 1), ring.one());
    assert!(verify_two_variable(&ring, &f, &c, true, false, 4).unwrap().pass);
    assert!(!verify_two_variable(&ring, &f, &c, true, true, 4).unwrap().pass);
}

#[test]
fn mixing_directions_is_rejected() {
    let (ring, t) = syms(1);
    let up = TwoSidedSeries::binomial_in_z(&ring, &t[0], -1, 4).unwrap();
    let down = TwoSidedSeries::binomial_in_z_inv(&ring, &t[0], -1, -4).unwrap();
    assert_eq!(up.mul(&down).unwrap_err(), SeriesError::Direction);
}

#[test]
fn window_too_small_is_reported() {
    let (ring, t) = syms(1);
    let up = TwoSidedSeries::binomial_in_z(&ring, &t[0], -1, 4).unwrap();
    assert_eq!(up.coeff(5).unwrap_err(), SeriesError::WindowTooSmall(5));
}

#[test]
fn root_of_unity_specialization_on_a1_minus_identity() {
    let q = Quadruple::new(a_minus_identity(2)).unwrap();
    let js = q.enumerate_j();
    let mut checked = 0;
    for a in &js {
        for b in &js {
            if let Some(o) = root_of_unity_specialization(&q, &q.jvector(*a), &q.jvector(*b), 8).unwrap() {
                assert!(o.pass);
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn orbit_sum_side_identity_on_catalog() {
    let mut seen = 0;
    for e in catalog() {
        let q = e.build().unwrap().q;
        let basis = q.q_basis().to_vec();
        let roots: Vec<Vec<i64>> = basis.iter().flat_map(|b| [b.clone(), b.iter().map(|x| -x).collect()]).collect();
        for a in &roots {
            for b in &roots {
                if let Some(ok) = orbit_sum_side_identity(&q, a, b).unwrap() {
                    assert!(ok, "{} {a:?} {b:?}", e.name);
                    seen += 1;
                }
            }
        }
    }
    assert!(seen > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn series_product_matches_laurent_product(xs in proptest::collection::vec((-3i64..=3, -3i64..=3), 1..4), ys in proptest::collection::vec((-3i64..=3, -3i64..=3), 1..4)) {
        let ring = Ring::new(1, 0);
        let f: Vec<_> = xs.iter().map(|(k, c)| (*k, ring.int(*c))).collect();
        let g: Vec<_> = ys.iter().map(|(k, c)| (*k, ring.int(*c))).collect();
        let mut direct = Vec::new();
        for (a, x) in &f { for (b, y) in &g { direct.push((a + b, x * y)); } }
        let p = TwoSidedSeries::laurent(&ring, &f).mul(&TwoSidedSeries::laurent(&ring, &g)).unwrap();
        prop_assert!(p.mismatches(&TwoSidedSeries::laurent(&ring, &direct), -6, 6).unwrap().is_empty());
    }

    #[test]
    fn random_substitutions(seed in 0u64..1000) {
        let ring = Ring::new(1, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_laurent(&ring, &mut rng);
        let a = random_point(&ring, &mut rng);
        prop_assert!(verify_delta_substitution(&ring, &f, &a, true, 5).unwrap().pass);
    }
}
