use tgla::catalog::{build, catalog, d_basis, find};
use tgla::fock::{FockKey, FockVector};
use tgla::glie::GenKey;
use tgla::groupmod::{build_nu_hat, check_compatibility, TKind};
use tgla::lattice::{JIndex, QuadrupleSpec, SIdx};
use tgla::vertex::{case_classifier, zeta_product_identity, SweepParams};

fn diag(sign: i8, i: usize) -> JIndex {
    JIndex::new(SIdx::new(sign, i), SIdx::new(sign, i))
}

#[test]
fn catalog_is_compatible() {
    for e in catalog() {
        let b = e.build().unwrap();
        assert!(check_compatibility(&b.q, &b.t, &b.nu_hat, 2).is_empty(), "{}", e.name);
    }
}

#[test]
fn diagram_lift_is_sign_of_last_coordinate() {
    // η(1,α) = (−1)^{⟨α,ε_N⟩}: both simple roots of D2 get −1.
    let b = find("D2/diagram/2").unwrap().build().unwrap();
    assert_eq!(b.nu_hat.basis_values(), &[1, 1]);
    let trivial = build_nu_hat(&b.q, Some(&[0, 0]), &|_| true);
    // The trivial lift is an automorphism but is not compatible with ℂ[P/2ℤε_N].
    if let Ok(nh) = trivial {
        assert!(!check_compatibility(&b.q, &b.t, &nh, 1).is_empty());
    }
}

#[test]
fn cartan_modes_on_a1() {
    let b = find("A1/Id/1").unwrap().build().unwrap();
    let rep = b.fock();
    let ring = b.q.ring().clone();
    let v = FockVector::vacuum(vec![1, -1], &ring);
    let zero = rep.apply_key(&GenKey::new(diag(1, 0), &[0], 0), &v).unwrap();
    assert!(zero.equals(&v));
    let create = rep.apply_key(&GenKey::new(diag(1, 0), &[0], -1), &v).unwrap();
    assert!(create.equals(&rep.heisenberg().apply_vector_mode(&[1, 0], -1, &v)));
    assert_eq!(create.max_degree(), 1);
    let j = JIndex::new(SIdx::new(1, 0), SIdx::new(1, 1));
    assert!(rep.apply_key(&GenKey::new(j, &[1], 5), &v).unwrap().is_empty());
}

#[test]
fn diagonal_key_with_trivial_c_vanishes_on_d2() {
    let spec = QuadrupleSpec { n: 2, q_basis: d_basis(2), sigma: vec![0, 1], iota: vec![1, 1], m: 1, l: 1, conductor: 2 };
    let b = build(spec, TKind::GroupAlgebraQ, true).unwrap();
    let rep = b.fock();
    let labels = b.t.sample_labels(&b.q, 1);
    let vs = rep.sample_vectors(&labels[..2], 1, 2, 2);
    let j = JIndex::new(SIdx::new(1, 0), SIdx::new(-1, 0));
    for n in -2..=2 {
        for v in &vs {
            assert!(rep.apply_key(&GenKey::new(j, &[0], n), v).unwrap().is_empty());
        }
    }
}

#[test]
fn operator_symmetries_hold() {
    for e in catalog() {
        let b = e.build().unwrap();
        let rep = b.fock();
        let labels = b.t.sample_labels(&b.q, 1);
        let vs = rep.sample_vectors(&labels[..labels.len().min(2)], 3, 2, 2);
        let c: Vec<i32> = (0..b.q.l()).map(|i| i as i32 + 1).collect();
        for &j in rep.glie().j_set().iter().take(6) {
            for r in 0..b.q.m() as i64 {
                let bad = rep.check_r1_r2(j, &c, r, 2, &vs).unwrap();
                assert!(bad.is_empty(), "{}: {bad:?}", e.name);
            }
        }
    }
}

#[test]
fn cartan_commutator_has_central_term() {
    let b = find("A1/Id/1").unwrap().build().unwrap();
    let rep = b.fock();
    let v = FockVector::basis(FockKey { label: vec![0, 0], mono: vec![(1, 0)] }, b.q.ring().one());
    for n in 1..=3 {
        let r = rep.verify_theorem(&GenKey::new(diag(1, 0), &[0], n), &GenKey::new(diag(1, 0), &[0], -n), &v).unwrap();
        assert!(r.pass);
        assert!(r.lhs.equals(&v.scale(&b.q.ring().int(n))));
    }
}

#[test]
fn classifier_examples() {
    assert_eq!(case_classifier(&[2, 0], &[0, 2]), 1);
    assert_eq!(case_classifier(&[0, 0], &[2, 0]), 2);
    assert_eq!(case_classifier(&[1], &[0]), 3);
    assert_eq!(case_classifier(&[0], &[0]), 4);
    assert_eq!(case_classifier(&[2, 0], &[-2, 0]), 5);
    assert_eq!(case_classifier(&[1, 1], &[1, 1]), 6);
}

#[test]
fn zeta_products_on_catalog() {
    for e in catalog() {
        let b = e.build().unwrap();
        let basis = b.q.q_basis().to_vec();
        for a in &basis {
            for c in &basis {
                for r in 0..b.q.m() as i64 {
                    assert!(zeta_product_identity(&b.q, a, c, r), "{}", e.name);
                }
            }
        }
    }
}

#[test]
fn stratified_commutators_on_catalog() {
    let p = SweepParams { modes: 2, exp_window: 2, per_case: 4, max_degree: 3, random_vectors: 3, labels: 2, seed: 11 };
    for e in catalog() {
        let b = e.build().unwrap();
        let rep = b.fock();
        let plan = rep.plan_sweep(&p);
        assert!(plan.unreachable.is_empty(), "{}: {:?}", e.name, plan.unreachable);
        for t in &plan.tasks {
            let r = rep.run_task(&plan, t).unwrap();
            assert!(r.pass, "{}: {t:?}", e.name);
            assert_eq!(r.case, t.case);
        }
    }
}
