//! Classical bracket formulas against the loop-algebra definition, through the
//! catalog dictionaries.

use tgla::assoc::catalog::{catalog_algebra, CatalogParams, PaperGen};
use tgla::lattice::{gamma_power, SIdx};
use tgla::oracles::{BracketOracle, GlOracle, O2NOracle, TrigOracle, UnitaryOracle};
use tgla::scalars::Ring;

const P: CatalogParams = CatalogParams { n: 2, l: 1, conductor: 2 };

fn mismatches<O: BracketOracle<Gen = PaperGen>>(name: &str, o: &O, gens: &[PaperGen]) -> usize {
    let (alg, dict) = catalog_algebra(name, &P).unwrap();
    let ring = alg.ring().clone();
    let mut bad = 0;
    for g in gens {
        for h in gens {
            let lhs = alg.bracket_from_definition(&dict.image(g).unwrap(), &dict.image(h).unwrap());
            let ob = o.bracket(&o.generator(g.clone()), &o.generator(h.clone()));
            let rhs = ob.map(&ring, &mut |k: &PaperGen| dict.image(k).unwrap(), &ring.one());
            if !alg.same_element(&lhs, &rhs) {
                bad += 1;
            }
        }
    }
    bad
}

fn ring() -> Ring {
    Ring::new(2, 1)
}

fn letters() -> [SIdx; 4] {
    [SIdx::new(1, 0), SIdx::new(-1, 0), SIdx::new(1, 1), SIdx::new(-1, 1)]
}

#[test]
fn gl_quantum_torus() {
    let mut gens = vec![];
    for i in 0..2 {
        for j in 0..2 {
            for n0 in -1..2 {
                for c in -1..2 {
                    gens.push(PaperGen::gl(i, j, n0, &[c]));
                }
            }
        }
    }
    assert_eq!(mismatches("gl_quantum_torus", &GlOracle { ring: ring(), n: 2 }, &gens), 0);
}

#[test]
fn trigonometric() {
    let (mut a, mut b) = (vec![], vec![]);
    for n0 in -2..3 {
        for c in -1..2 {
            a.push(PaperGen::TrigA { nvec: vec![c], n0 });
            b.push(PaperGen::TrigB { nvec: vec![c], n0 });
        }
    }
    assert_eq!(mismatches("trigonometric_A", &TrigOracle { ring: ring(), b: false }, &a), 0);
    assert_eq!(mismatches("trigonometric_B", &TrigOracle { ring: ring(), b: true }, &b), 0);
}

#[test]
fn unitary() {
    let mut gens = vec![];
    for i in 0..2 {
        for j in 0..2 {
            for n in -1..2 {
                for c in -1..2 {
                    gens.push(PaperGen::U { i, j, c: vec![c], n });
                }
            }
        }
    }
    assert_eq!(mismatches("unitary", &UnitaryOracle { ring: ring(), n: 2 }, &gens), 0);
}

#[test]
fn bc_graded() {
    let mut gens = vec![];
    for a in letters() {
        for b in letters() {
            for n in -1..2 {
                for c in [-1, 1] {
                    gens.push(PaperGen::F { a, b, c: vec![c], n });
                }
            }
        }
    }
    assert_eq!(mismatches("bc_graded_o2N", &O2NOracle { ring: ring(), n: 2 }, &gens), 0);
}

#[test]
fn bc_flip_relation_sign() {
    // f_{a,b}(c,n) = −c^{−n} f_{−b,−a}(c^{−1},n); the variant with (−c)^{−n}
    // disagrees exactly when n is odd.
    let (alg, dict) = catalog_algebra("bc_graded_o2N", &P).unwrap();
    let r = alg.ring().clone();
    let (a, b) = (SIdx::new(1, 0), SIdx::new(-1, 1));
    for n in -3i64..4 {
        let f = dict.image(&PaperGen::F { a, b, c: vec![1], n }).unwrap();
        let g = dict.image(&PaperGen::F { a: b.neg(), b: a.neg(), c: vec![-1], n }).unwrap();
        let cn = gamma_power(&r, &[1], -n);
        assert!(alg.same_element(&f, &g.scale(&-cn.clone())));
        let minus_c = if n % 2 == 0 { cn } else { -cn };
        assert_eq!(alg.same_element(&f, &g.scale(&-minus_c)), n % 2 == 0);
    }
}
