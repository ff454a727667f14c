//! Realization presets: dictionaries against the classical brackets.

use tgla::glie::{span_condition, GLie, SpanStatus};
use tgla::groupmod::{build_nu_hat, check_compatibility};
use tgla::lattice::check_assumptions;
use tgla::oracles::{BracketOracle, GlOracle};
use tgla::realizations::*;
use tgla::vertex::SweepParams;

const SMALL: DictWindow = DictWindow { modes: 1, exp_window: 1 };

fn params(n: usize, l: usize, sign: i8) -> PresetParams {
    PresetParams { n, l, sign }
}

fn all_presets() -> Vec<(&'static str, PresetParams)> {
    vec![
        ("twisted_affine", params(2, 0, 1)),
        ("twisted_affine", params(2, 0, -1)),
        ("gl_homogeneous", params(2, 1, 1)),
        ("gl_principal", params(2, 1, 1)),
        ("trig_A", params(1, 2, 1)),
        ("trig_B", params(1, 2, 1)),
        ("unitary", params(2, 1, 1)),
        ("o2N", params(2, 1, 1)),
        ("o2N_twisted", params(2, 1, 1)),
    ]
}

#[test]
fn presets_pass_assumptions_and_compatibility() {
    for (name, p) in all_presets() {
        let pr = preset(name, Some(p)).unwrap();
        assert!(check_assumptions(pr.built.q.spec()).all_pass(), "{name}");
        assert!(check_compatibility(&pr.built.q, &pr.built.t, &pr.built.nu_hat, 1).is_empty(), "{name}");
    }
}

#[test]
fn twisted_affine_root_span() {
    for sign in [1, -1] {
        let pr = preset("twisted_affine", Some(params(2, 0, sign))).unwrap();
        assert_eq!(span_condition(&pr.built.q), SpanStatus::QPrimeSpans);
    }
}

#[test]
fn unknown_and_unsupported() {
    assert!(matches!(preset("gl_spiral", None), Err(RealizationError::UnknownName(_))));
    assert!(matches!(preset("gl_principal", Some(params(1, 1, 1))), Err(RealizationError::Unsupported(_))));
    for p in PresetName::ALL {
        assert_eq!(PresetName::parse(p.name()), Some(p));
    }
}

#[test]
fn dictionaries_preserve_brackets() {
    for (name, p) in all_presets() {
        let rep = preset(name, Some(p)).unwrap().verify(SMALL, None).unwrap();
        assert!(rep.pass(), "{name}: {:?}", rep.failures.first());
        assert!(rep.pairs > 0 && rep.relation_checks == rep.generators);
    }
}

#[test]
fn gl_principal_three_with_mode_check() {
    let pr = preset("gl_principal", Some(params(3, 1, 1))).unwrap();
    let rep = pr.verify(DictWindow { modes: 1, exp_window: 0 }, None).unwrap();
    assert!(rep.pass(), "{:?}", rep.failures.first());
    assert!(rep.mode_checks > 0);
}

#[test]
fn vertex_side_and_components() {
    let sw = SweepParams { modes: 2, exp_window: 1, per_case: 2, max_degree: 3, random_vectors: 3, labels: 2, seed: 3 };
    for name in ["o2N_twisted", "unitary", "trig_B"] {
        let rep = preset(name, None).unwrap().verify(DictWindow { modes: 0, exp_window: 0 }, Some(&sw)).unwrap();
        assert!(rep.pass(), "{name}: {:?}", rep.failures.first());
        assert!(rep.theorem_checks > 0);
        if name == "o2N_twisted" {
            assert!(rep.invariance_checks > 0 && rep.involution_checks > 0);
        }
    }
}

#[test]
fn trig_b_printed_factor_fails() {
    // Reading the isomorphism as 2B ↦ g breaks the bracket; B ↦ 2g keeps it.
    let mut pr = preset("trig_B", None).unwrap();
    pr.scale = pr.ring().int(2);
    let rep = pr.verify(SMALL, None).unwrap();
    assert!(!rep.pass());
    assert!(rep.failures.iter().all(|f| f.check == "dictionary"));
}

#[test]
fn o2n_twisted_with_trivial_eta() {
    // With η ≡ 1 the fixed-point dictionary holds as Lie algebras, but that
    // lift is not compatible with ℂ[P/2ℤε_N].
    let mut pr = preset("o2N_twisted", None).unwrap();
    assert_eq!(pr.built.nu_hat.basis_values(), &[1, 1]);
    let nh = build_nu_hat(&pr.built.q, Some(&[0, 0]), &|_| true).unwrap();
    assert!(!check_compatibility(&pr.built.q, &pr.built.t, &nh, 1).is_empty());
    pr.glie = GLie::new(pr.built.q.clone(), nh);
    let rep = pr.verify(SMALL, None).unwrap();
    assert!(rep.pass(), "{:?}", rep.failures.first());
}

#[test]
fn principal_bracket_matches_matrices() {
    // F^iE^{n₀} = Σ_k ω^{ik}E_{k,k+n₀}; the trace form contributes N per unit of 𝐜.
    for n in [2usize, 3] {
        let pr = preset("gl_principal", Some(params(n, 1, 1))).unwrap();
        let ring = pr.ring().clone();
        let o = PrincipalOracle { ring: ring.clone(), n };
        let gl = GlOracle { ring: ring.clone(), n };
        for i in -1..=n as i64 {
            for j in -1..=1i64 {
                for n0 in -1..=1 {
                    for r0 in -1..=1 {
                        for (nv, rv) in [([0], [0]), ([1], [-1]), ([1], [0])] {
                            let lhs = o.bracket(&o.generator(o.gen(i, n0, &nv)), &o.generator(o.gen(j, r0, &rv)));
                            let mapped = lhs.map(
                                &ring,
                                &mut |g| match g {
                                    TargetGen::Principal { i, n0, nvec } => principal_in_gl(&o, *i, *n0, nvec),
                                    _ => unreachable!(),
                                },
                                &ring.int(n as i64),
                            );
                            let rhs = gl.bracket(&principal_in_gl(&o, i, n0, &nv), &principal_in_gl(&o, j, r0, &rv));
                            assert!(mapped.equals(&rhs), "N={n} i={i} j={j} n0={n0} r0={r0}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn principal_central_example() {
    // i = j = 0, n₀ = 1, r₀ = −1, 𝐧 = 𝐫 = 0: the central coefficient is 1.
    for n in [2usize, 3] {
        let pr = preset("gl_principal", Some(params(n, 1, 1))).unwrap();
        let o = PrincipalOracle { ring: pr.ring().clone(), n };
        let x = o.bracket(&o.generator(o.gen(0, 1, &[0])), &o.generator(o.gen(0, -1, &[0])));
        assert!(x.central().is_one());
        assert_eq!(x.len(), 0);
    }
}

#[test]
fn principal_normalization_branch() {
    // ī = N selects ẽ_{1,1} with factor N.
    let pr = preset("gl_principal", Some(params(3, 1, 1))).unwrap();
    for i in [-3i64, 0, 3] {
        let (k, s) = pr.principal_scale(i);
        assert_eq!(k, 0);
        assert_eq!(s, pr.ring().int(3));
    }
    assert_eq!(pr.principal_scale(1).0, 2);
    assert_eq!(pr.principal_scale(2).0, 1);
}

#[test]
fn principal_literal_central_term_fails() {
    // Kept for all 𝐧, 𝐫, the (Dδ) term breaks the mode identity off 𝐧+𝐫 = 0.
    let pr = preset("gl_principal", None).unwrap();
    let (nv, rv) = ([1], [0]);
    let lhs = pr.glie.bracket_cr(&pr.principal_mode(1, &nv, 1), &pr.principal_mode(1, &rv, -1));
    let literal = pr.principal_rhs(1, &nv, 1, 1, &rv, -1, true);
    let graded = pr.principal_rhs(1, &nv, 1, 1, &rv, -1, false);
    let canon = |x: &tgla::glie::LieElement| pr.glie.element(x.terms().map(|(k, v)| (k.clone(), v.clone())), x.central().clone());
    assert!(canon(&lhs.sub(&graded)).is_zero());
    assert!(!canon(&lhs.sub(&literal)).is_zero());
}

#[test]
fn relation_images_agree() {
    // u-flip, f-flip and the B-symmetry are respected by the dictionaries.
    for name in ["unitary", "o2N", "trig_B", "o2N_twisted"] {
        let pr = preset(name, None).unwrap();
        for k in pr.generators(SMALL) {
            assert!(pr.check_relations(&k).is_none(), "{name} {k:?}");
        }
    }
}
