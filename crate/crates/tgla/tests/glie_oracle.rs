//! The closed-form bracket of 𝒢̂(Q,ν,m,Γ) against the loop-algebra definition.

use proptest::prelude::*;
use tgla::glie::{span_condition, GLie, GenKey, LieElement, SpanStatus};
use tgla::groupmod::build_nu_hat;
use tgla::lattice::{JIndex, Quadruple, QuadrupleSpec, SIdx};

fn build(spec: QuadrupleSpec) -> GLie {
    let q = Quadruple::new(spec).unwrap();
    let nh = build_nu_hat(&q, None, &|_| true).unwrap();
    GLie::new(q, nh)
}

fn a1() -> GLie {
    build(QuadrupleSpec { n: 2, q_basis: vec![vec![1, -1]], sigma: vec![0, 1], iota: vec![1, 1], m: 1, l: 1, conductor: 2 })
}

fn d2_diagram() -> GLie {
    build(QuadrupleSpec { n: 2, q_basis: vec![vec![1, -1], vec![1, 1]], sigma: vec![0, 1], iota: vec![1, -1], m: 2, l: 1, conductor: 2 })
}

fn a2_cyclic() -> GLie {
    build(QuadrupleSpec { n: 3, q_basis: vec![vec![1, -1, 0], vec![0, 1, -1]], sigma: vec![1, 2, 0], iota: vec![1, 1, 1], m: 3, l: 1, conductor: 6 })
}

fn keys(g: &GLie, modes: i64, gammas: &[i32]) -> Vec<GenKey> {
    let mut out = Vec::new();
    for &j in g.j_set() {
        for &c in gammas {
            for n in -modes..=modes {
                out.push(GenKey::new(j, &[c], n));
            }
        }
    }
    out
}

fn gen(g: &GLie, k: &GenKey) -> LieElement {
    g.element([(k.clone(), g.ring().one())], g.ring().zero())
}

fn count_mismatches(g: &GLie, ks: &[GenKey]) -> usize {
    let alg = g.build_gq_as_assoc().unwrap();
    assert!(alg.check_invariants().is_empty());
    let mut bad = 0;
    for x in ks {
        for y in ks {
            let (ex, ey) = (gen(g, x), gen(g, y));
            let lhs = g.to_assoc(&alg, &g.bracket_cr(&ex, &ey));
            let rhs = alg.bracket_from_definition(&g.to_assoc(&alg, &ex), &g.to_assoc(&alg, &ey));
            if !alg.same_element(&lhs, &rhs) {
                bad += 1;
            }
        }
    }
    bad
}

#[test]
fn matches_definition_on_a1() {
    let g = a1();
    assert_eq!(count_mismatches(&g, &keys(&g, 2, &[0, 1])), 0);
}

#[test]
fn matches_definition_on_d2_with_diagram_twist() {
    let g = d2_diagram();
    assert_eq!(count_mismatches(&g, &keys(&g, 1, &[0, 1])), 0);
}

#[test]
fn matches_definition_on_a2_with_cyclic_twist() {
    let g = a2_cyclic();
    assert_eq!(count_mismatches(&g, &keys(&g, 1, &[-1, 1])), 0);
}

#[test]
fn gq_algebra_is_involutive_with_compatible_automorphism() {
    for g in [a1(), d2_diagram(), a2_cyclic()] {
        let alg = g.build_gq_as_assoc().unwrap();
        assert_eq!(alg.dim(), g.j_set().len());
        assert!(alg.check_invariants().is_empty());
    }
    assert_eq!(a1().j_set().len(), 8);
}

#[test]
fn cartan_central_term() {
    // [ẽ_{1,1}(1,n), ẽ_{1,1}(1,−n)] = n·𝐜 for Q(A_1) with ν = Id; only the
    // first central term is present.
    let g = a1();
    let j = JIndex::new(SIdx::new(1, 0), SIdx::new(1, 0));
    for n in 1..4 {
        let b = g.bracket_cr(&g.generator(j, &[0], n), &g.generator(j, &[0], -n));
        assert_eq!(b.len(), 0);
        assert_eq!(*b.central(), g.ring().int(n));
    }
}

#[test]
fn zero_generators() {
    // Q(D_2) contains 2ε₁, and ẽ_{1,−1}(1,n) = −ẽ_{1,−1}(1,n).
    let g = build(QuadrupleSpec { n: 2, q_basis: vec![vec![1, -1], vec![1, 1]], sigma: vec![0, 1], iota: vec![1, 1], m: 1, l: 1, conductor: 2 });
    let j = JIndex::new(SIdx::new(1, 0), SIdx::new(-1, 0));
    for n in -2..3 {
        assert!(g.canonicalize(&GenKey::new(j, &[0], n)).is_none());
        assert!(g.canonicalize(&GenKey::new(j, &[1], n)).is_some());
    }
}

#[test]
fn span_conditions() {
    assert_eq!(span_condition(a1().quadruple()), SpanStatus::QPrimeSpans);
    assert_eq!(span_condition(a2_cyclic().quadruple()), SpanStatus::QPrimeSpans);
    let two = Quadruple::new(QuadrupleSpec { n: 1, q_basis: vec![vec![2]], sigma: vec![0], iota: vec![-1], m: 2, l: 1, conductor: 2 }).unwrap();
    assert_eq!(span_condition(&two), SpanStatus::QDoublePrimeSpans);
    let zero = Quadruple::new(QuadrupleSpec { n: 1, q_basis: vec![], sigma: vec![0], iota: vec![1], m: 1, l: 1, conductor: 2 }).unwrap();
    assert!(span_condition(&zero).spans());
}

fn arb_key(g: &GLie) -> impl Strategy<Value = GenKey> {
    let js = g.j_set().to_vec();
    (0..js.len(), -1i32..=1, -2i64..=2).prop_map(move |(j, c, n)| GenKey::new(js[j], &[c], n))
}

fn arb_element(g: &GLie) -> impl Strategy<Value = Vec<(GenKey, i64)>> {
    prop::collection::vec((arb_key(g), -2i64..=2), 1..3)
}

fn realize(g: &GLie, raw: &[(GenKey, i64)]) -> LieElement {
    g.element(raw.iter().map(|(k, v)| (k.clone(), g.ring().int(*v))), g.ring().zero())
}

fn jacobi_holds(g: &GLie, x: &LieElement, y: &LieElement, z: &LieElement) -> bool {
    let a = g.bracket_cr(x, &g.bracket_cr(y, z));
    let b = g.bracket_cr(y, &g.bracket_cr(z, x));
    let c = g.bracket_cr(z, &g.bracket_cr(x, y));
    a.add(&b).add(&c).is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn jacobi_a1(x in arb_element(&a1()), y in arb_element(&a1()), z in arb_element(&a1())) {
        let g = a1();
        prop_assert!(jacobi_holds(&g, &realize(&g, &x), &realize(&g, &y), &realize(&g, &z)));
    }

    #[test]
    fn jacobi_d2(x in arb_element(&d2_diagram()), y in arb_element(&d2_diagram()), z in arb_element(&d2_diagram())) {
        let g = d2_diagram();
        prop_assert!(jacobi_holds(&g, &realize(&g, &x), &realize(&g, &y), &realize(&g, &z)));
    }

    #[test]
    fn jacobi_a2(x in arb_element(&a2_cyclic()), y in arb_element(&a2_cyclic()), z in arb_element(&a2_cyclic())) {
        let g = a2_cyclic();
        prop_assert!(jacobi_holds(&g, &realize(&g, &x), &realize(&g, &y), &realize(&g, &z)));
    }

    #[test]
    fn antisymmetry(x in arb_element(&d2_diagram()), y in arb_element(&d2_diagram())) {
        let g = d2_diagram();
        let (x, y) = (realize(&g, &x), realize(&g, &y));
        prop_assert!(g.bracket_cr(&x, &y).add(&g.bracket_cr(&y, &x)).is_zero());
    }

    #[test]
    fn canonicalize_is_idempotent(k in arb_key(&a2_cyclic())) {
        let g = a2_cyclic();
        if let Some((ck, _)) = g.canonicalize(&k) {
            let (ck2, f) = g.canonicalize(&ck).unwrap();
            prop_assert_eq!(ck, ck2);
            prop_assert!(f.is_one());
        }
    }

    #[test]
    fn bracket_ignores_representative(x in arb_key(&d2_diagram()), y in arb_key(&d2_diagram()), pick in 0usize..8) {
        // Rewriting x to any member of its orbit leaves the bracket unchanged.
        let g = d2_diagram();
        let orbit = g.orbit(&x);
        let (k, f) = &orbit[pick % orbit.len()];
        let inv = f.inv().unwrap();
        let rewritten = LieElement::basis(g.ring(), k.clone(), inv);
        let direct = g.bracket_cr(&gen(&g, &x), &gen(&g, &y));
        let via = g.bracket_cr(&rewritten, &gen(&g, &y));
        prop_assert!(direct.sub(&via).is_zero());
    }
}
