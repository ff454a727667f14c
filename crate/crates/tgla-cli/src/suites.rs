//! The check suites. Every suite returns records; ordering is fixed later by id.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use tgla::catalog::{catalog, find, odd_lattice, Built};
use tgla::glie::{GLie, GenKey, LieElement};
use tgla::identities::*;
use tgla::lattice::{check_assumptions, inner, vadd, Quadruple, Vector};
use tgla::realizations::{preset, DictWindow, PresetParams, RealizationReport};
use tgla::scalars::{Ring, Scalar};
use tgla::vertex::{exponent_window, FockRep, SweepParams};

use crate::report::{element_json, fock_diff_json, key_json, key_label, Record};

fn rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
}

fn built(name: &str) -> Built {
    find(name).expect("catalog entry").build().expect("catalog entries build")
}

fn join(xs: &[i64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Canonical representatives of ẽ_j(c,n) for c in the exponent window and |n| ≤ modes.
pub fn canonical_keys(g: &GLie, modes: i64, exp_window: i32) -> Vec<GenKey> {
    let mut out = Vec::new();
    for &j in g.j_set() {
        for c in exponent_window(g.quadruple().l(), exp_window) {
            for n in -modes..=modes {
                if let Some((k, _)) = g.canonicalize(&GenKey::new(j, &c, n)) {
                    out.push(k);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

// ---- assumptions ----------------------------------------------------------

pub fn assumptions() -> Vec<Record> {
    let mut out = Vec::new();
    for e in catalog() {
        for c in check_assumptions(&e.spec).checks {
            out.push(Record::new(format!("1.assumptions/{}/{}", e.name, c.name), c.passed, c.detail).with_witness(c.witness.map(|w| json!(w))));
        }
    }
    let odd = check_assumptions(&odd_lattice());
    let a2 = odd.get("A2").expect("A2 is always reported");
    let rejected = !a2.passed && a2.witness.is_some();
    out.push(Record::new("1.assumptions/odd_lattice/A2_rejected", rejected, a2.detail.clone()).with_witness(a2.witness.as_ref().map(|w| json!(w))));
    out
}

// ---- cocycles --------------------------------------------------------------

fn random_q(q: &Quadruple, r: &mut ChaCha8Rng) -> Vector {
    let mut v = vec![0; q.n()];
    for b in q.q_basis() {
        let x = r.gen_range(-3..=3);
        v = vadd(&v, &b.iter().map(|y| x * y).collect::<Vec<_>>());
    }
    v
}

/// ε_C alternation on basis pairs, then seeded checks of the cocycle
/// identities, C(α,α) = 1 and the alternation of ε.
pub fn cocycles(prefix: &str, q: &Quadruple, seed: u64, samples: usize) -> Vec<Record> {
    let id = |s: &str| format!("{prefix}/{s}");
    let b = q.q_basis();
    if b.is_empty() {
        return ["eps_c_basis_alternation", "two_cocycle", "self_commutator", "eps_alternation"]
            .iter()
            .map(|s| Record::vacuous(id(s), "Q = {0}"))
            .collect();
    }
    let ec = |a: &[i64], c: &[i64]| q.eps_c_exp(a, c).expect("in Q");
    let e = |a: &[i64], c: &[i64]| q.eps_exp(a, c).expect("in Q");
    let half = q.minus_one_exp();
    let mut out = Vec::new();

    let mut bad = None;
    for x in b {
        for y in b {
            if q.modl(ec(x, y) - ec(y, x)) != q.c_exp(x, y) && bad.is_none() {
                bad = Some(json!({ "alpha": x, "beta": y }));
            }
        }
    }
    out.push(Record::new(id("eps_c_basis_alternation"), bad.is_none(), format!("{} basis pairs", b.len() * b.len())).with_witness(bad));

    let mut r = rng(seed, 2);
    let mut bad = None;
    for _ in 0..samples {
        let (x, y, z) = (random_q(q, &mut r), random_q(q, &mut r), random_q(q, &mut r));
        for (name, f) in [("eps_c", &ec as &dyn Fn(&[i64], &[i64]) -> i64), ("eps", &e)] {
            let l = f(&x, &y) + f(&vadd(&x, &y), &z);
            let rr = f(&y, &z) + f(&x, &vadd(&y, &z));
            if q.modl(l - rr) != 0 && bad.is_none() {
                bad = Some(json!({ "cocycle": name, "alpha": x, "beta": y, "gamma": z }));
            }
        }
    }
    out.push(Record::new(id("two_cocycle"), bad.is_none(), format!("{samples} random triples, ε_C and ε")).with_witness(bad));

    let mut bad = None;
    for _ in 0..samples {
        let x = random_q(q, &mut r);
        if q.c_exp(&x, &x) != 0 && bad.is_none() {
            bad = Some(json!({ "alpha": x }));
        }
    }
    out.push(Record::new(id("self_commutator"), bad.is_none(), format!("{samples} random α")).with_witness(bad));

    let mut bad = None;
    for _ in 0..samples {
        let (x, y) = (random_q(q, &mut r), random_q(q, &mut r));
        let alt = q.modl(e(&x, &y) - e(&y, &x));
        let alt_c = q.modl(ec(&x, &y) - ec(&y, &x));
        if (alt != q.modl(inner(&x, &y) * half) || alt_c != q.c_exp(&x, &y)) && bad.is_none() {
            bad = Some(json!({ "alpha": x, "beta": y }));
        }
    }
    out.push(Record::new(id("eps_alternation"), bad.is_none(), format!("{samples} random pairs")).with_witness(bad));
    out
}

pub fn catalog_cocycles(seed: u64, samples: usize) -> Vec<Record> {
    catalog().par_iter().flat_map_iter(|e| cocycles(&format!("2.cocycle/{}", e.name), &e.build().expect("builds").q, seed, samples)).collect()
}

// ---- identities ------------------------------------------------------------

enum IdentityTask {
    Rational(RationalIdentity, usize, Vec<i64>),
    MixedSeries(bool, Vec<i64>),
    PoleDifference(Vec<i64>),
    ProductDifference(Vec<i64>),
    Substitution,
    OrbitSum(&'static str),
    RootOfUnity(&'static str),
}

fn symbols(n: usize) -> (Ring, Vec<Scalar>) {
    let ring = Ring::new(1, n);
    let t = (0..n).map(|i| ring.var(i)).collect();
    (ring, t)
}

fn outcome(id: String, r: Result<IdentityOutcome, impl std::fmt::Display>, d: i64) -> Record {
    match r {
        Ok(o) => Record::new(id, o.pass, format!("window D = {d}")).with_witness((!o.pass).then(|| json!({ "mismatched_exponents": o.mismatches }))),
        Err(e) => Record::new(id, false, format!("error: {e}")),
    }
}

fn run_identity(p: &str, task: &IdentityTask, d: i64, seed: u64) -> Vec<Record> {
    match task {
        IdentityTask::Rational(id, n, prof) => {
            let r = verify_rational(*id, *n, prof);
            vec![outcome(format!("{p}/{}/n{n}/{}", id.name(), join(prof)), r, 0)]
        }
        IdentityTask::MixedSeries(on_s, prof) => {
            let (ring, t) = symbols(prof.len());
            let name = if *on_s { DistributionIdentity::MixedPowersSeriesS } else { DistributionIdentity::MixedPowersSeriesT }.name();
            vec![outcome(format!("{p}/{name}/n{}/{}", prof.len(), join(prof)), verify_mixed_series(&ring, &t, prof, *on_s, d), d)]
        }
        IdentityTask::PoleDifference(prof) => {
            let (ring, t) = symbols(prof.len());
            let name = DistributionIdentity::PoleDifference.name();
            vec![outcome(format!("{p}/{name}/n{}/{}", prof.len(), join(prof)), verify_pole_difference(&ring, &t, prof, d), d)]
        }
        IdentityTask::ProductDifference(prof) => {
            let (ring, t) = symbols(prof.len());
            let name = DistributionIdentity::ProductDifference.name();
            vec![outcome(format!("{p}/{name}/n{}/{}", prof.len(), join(prof)), verify_product_difference(&ring, &t, prof, d), d)]
        }
        IdentityTask::Substitution => match substitution_sweep(seed, 20, d) {
            Ok(v) => v.into_iter().map(|(id, fails)| Record::new(format!("{p}/{}/random20", id.name()), fails == 0, format!("{fails} of 20 instances fail, window D = {d}"))).collect(),
            Err(e) => vec![Record::new(format!("{p}/substitution"), false, format!("error: {e}"))],
        },
        IdentityTask::OrbitSum(name) | IdentityTask::RootOfUnity(name) => {
            let q = built(name).q;
            let basis = q.q_basis().to_vec();
            let roots: Vec<Vector> = basis.iter().flat_map(|b| [b.clone(), b.iter().map(|x| -x).collect()]).collect();
            let orbit = matches!(task, IdentityTask::OrbitSum(_));
            let (mut seen, mut bad) = (0, None);
            if orbit {
                for a in &roots {
                    for b in &roots {
                        match orbit_sum_side_identity(&q, a, b) {
                            Ok(None) => {}
                            Ok(Some(ok)) => {
                                seen += 1;
                                if !ok && bad.is_none() {
                                    bad = Some(json!({ "alpha": a, "beta": b }));
                                }
                            }
                            Err(e) => bad = Some(json!({ "alpha": a, "beta": b, "error": e.to_string() })),
                        }
                    }
                }
            } else {
                let js = q.enumerate_j();
                for a in &js {
                    for b in &js {
                        let (x, y) = (q.jvector(*a), q.jvector(*b));
                        match root_of_unity_specialization(&q, &x, &y, d) {
                            Ok(None) => {}
                            Ok(Some(o)) => {
                                seen += 1;
                                if !o.pass && bad.is_none() {
                                    bad = Some(json!({ "alpha": x, "beta": y, "mismatched_exponents": o.mismatches }));
                                }
                            }
                            Err(e) => bad = Some(json!({ "alpha": x, "beta": y, "error": e.to_string() })),
                        }
                    }
                }
            }
            let kind = if orbit { "orbit_sum" } else { "root_of_unity_product_difference" };
            let id = format!("{p}/{kind}/{name}");
            if seen == 0 && bad.is_none() {
                vec![Record::vacuous(id, "no pair meets the hypothesis")]
            } else {
                vec![Record::new(id, bad.is_none(), format!("{seen} instances")).with_witness(bad)]
            }
        }
    }
}

/// Partial fractions, series expansions, δ-differences and substitution rules.
pub fn identities(prefix: &str, d: i64, seed: u64) -> Vec<Record> {
    let mut tasks = Vec::new();
    for n in 1..=4 {
        for id in RationalIdentity::ALL {
            let ps = if id.takes_profile() { profiles(&[1, 2], n) } else { vec![vec![1; n]] };
            tasks.extend(ps.into_iter().map(|p| IdentityTask::Rational(id, n, p)));
        }
        for p in profiles(&[1, 2], n) {
            tasks.push(IdentityTask::MixedSeries(true, p.clone()));
            tasks.push(IdentityTask::MixedSeries(false, p.clone()));
            tasks.push(IdentityTask::PoleDifference(p));
        }
        tasks.extend(profiles(&[-2, -1, 0, 1, 2], n).into_iter().map(IdentityTask::ProductDifference));
    }
    tasks.push(IdentityTask::Substitution);
    for e in catalog() {
        tasks.push(IdentityTask::OrbitSum(e.name));
        tasks.push(IdentityTask::RootOfUnity(e.name));
    }
    tasks.par_iter().flat_map_iter(|t| run_identity(prefix, t, d, seed)).collect()
}

// ---- closed-form bracket against the definition ---------------------------

/// Rows of the comparison: one record per first generator.
pub fn oracle_equivalence(prefix: &str, g: &GLie, modes: i64, exp_window: i32) -> Vec<Record> {
    let alg = match g.build_gq_as_assoc() {
        Ok(a) => a,
        Err(e) => return vec![Record::new(format!("{prefix}/algebra"), false, format!("error: {e}"))],
    };
    let inv = alg.check_invariants();
    let mut out = vec![Record::new(format!("{prefix}/algebra_invariants"), inv.is_empty(), format!("{} failures", inv.len()))];
    let keys = canonical_keys(g, modes, exp_window);
    let gens: Vec<LieElement> = keys.iter().map(|k| g.element([(k.clone(), g.ring().one())], g.ring().zero())).collect();
    let images: Vec<_> = gens.iter().map(|x| g.to_assoc(&alg, x)).collect();
    out.par_extend(keys.par_iter().enumerate().map(|(a, ka)| {
        let mut bad = None;
        for (b, kb) in keys.iter().enumerate() {
            let lhs = g.to_assoc(&alg, &g.bracket_cr(&gens[a], &gens[b]));
            let rhs = alg.bracket_from_definition(&images[a], &images[b]);
            if !alg.same_element(&lhs, &rhs) && bad.is_none() {
                bad = Some(json!({ "gen2": key_json(kb), "closed_form": format!("{lhs:?}"), "definition": format!("{rhs:?}") }));
            }
        }
        Record::new(format!("{prefix}/{}", key_label(ka)), bad.is_none(), format!("{} pairs", keys.len())).with_witness(bad)
    }));
    out
}

pub const ORACLE_ENTRIES: [&str; 3] = ["A1/Id/1", "D2/diagram/2", "A2/coxeter/3"];

pub fn catalog_oracle_equivalence(modes: i64, exp_window: i32) -> Vec<Record> {
    ORACLE_ENTRIES.iter().flat_map(|name| oracle_equivalence(&format!("4.oracle/{name}"), &built(name).glie(), modes, exp_window)).collect()
}

// ---- Jacobi ----------------------------------------------------------------

pub fn jacobi(prefix: &str, g: &GLie, seed: u64, samples: usize, modes: i64, exp_window: i32) -> Record {
    let keys = canonical_keys(g, modes, exp_window);
    if keys.is_empty() {
        return Record::vacuous(prefix.to_string(), "no generators");
    }
    let mut r = rng(seed, 5);
    let gen = |k: &GenKey| g.element([(k.clone(), g.ring().one())], g.ring().zero());
    let triples: Vec<[GenKey; 3]> = (0..samples).map(|_| [0, 0, 0].map(|_: i32| keys[r.gen_range(0..keys.len())].clone())).collect();
    let bad: Vec<Value> = triples
        .par_iter()
        .filter_map(|[a, b, c]| {
            let (x, y, z) = (gen(a), gen(b), gen(c));
            let s = g.bracket_cr(&x, &g.bracket_cr(&y, &z)).add(&g.bracket_cr(&y, &g.bracket_cr(&z, &x))).add(&g.bracket_cr(&z, &g.bracket_cr(&x, &y)));
            let s = g.element(s.terms().map(|(k, v)| (k.clone(), v.clone())), s.central().clone());
            (!s.is_zero()).then(|| json!({ "x": key_json(a), "y": key_json(b), "z": key_json(c), "residual": element_json(&s) }))
        })
        .collect();
    let detail = format!("{samples} random triples from {} generators, {} fail", keys.len(), bad.len());
    Record::new(prefix.to_string(), bad.is_empty(), detail).with_witness(bad.into_iter().next())
}

pub fn catalog_jacobi(seed: u64, samples: usize, modes: i64, exp_window: i32) -> Vec<Record> {
    catalog().iter().map(|e| jacobi(&format!("5.jacobi/{}", e.name), &e.build().expect("builds").glie(), seed, samples, modes, exp_window)).collect()
}

// ---- vertex operator commutators ------------------------------------------

/// Stratified commutator checks; one record per sampled instance, plus
/// coverage and the cases that cannot occur.
pub fn theorem(prefix: &str, fock: &FockRep, p: &SweepParams, min_per_case: usize) -> Vec<Record> {
    let plan = fock.plan_sweep(p);
    let mut out: Vec<Record> = plan
        .tasks
        .par_iter()
        .enumerate()
        .map(|(i, t)| {
            let id = format!("{prefix}/case{}/{i:04}", t.case);
            let detail = format!("{} × {} on vector {}", key_label(&t.k1), key_label(&t.k2), t.vector);
            match fock.run_task(&plan, t) {
                Ok(c) if c.pass && c.case == t.case => Record::new(id, true, detail),
                Ok(c) => Record::new(id, false, detail).with_witness(Some(json!({ "k1": key_json(&t.k1), "k2": key_json(&t.k2), "case": c.case, "diff": fock_diff_json(&c.lhs, &c.rhs) }))),
                Err(e) => Record::new(id, false, format!("{detail}: {e}")),
            }
        })
        .collect();
    for case in &plan.unreachable {
        out.push(Record::vacuous(format!("{prefix}/case{case}"), "no exponent pair in the window"));
    }
    out.push(Record::vacuous(format!("{prefix}/case7"), "c₁ = c₂ with c₁c₂ = 1 forces c₁ = 1 on exponent vectors"));
    let mut counts = [0usize; 7];
    for t in &plan.tasks {
        counts[t.case as usize - 1] += 1;
    }
    let short: Vec<u8> = (1..=6u8).filter(|c| !plan.unreachable.contains(c) && counts[*c as usize - 1] < min_per_case).collect();
    let ok = short.is_empty() && plan.tasks.len() >= 100.min(min_per_case * 6);
    out.push(Record::new(format!("{prefix}/coverage"), ok, format!("{} instances, per case {:?}", plan.tasks.len(), &counts[..6])).with_witness((!short.is_empty()).then(|| json!({ "short_cases": short }))));
    out
}

pub fn catalog_theorem(p: &SweepParams) -> Vec<Record> {
    catalog().iter().flat_map(|e| theorem(&format!("6.theorem/{}", e.name), &e.build().expect("builds").fock(), p, 10)).collect()
}

// ---- realizations ----------------------------------------------------------

pub fn realization_runs() -> Vec<(&'static str, PresetParams)> {
    let p = |n, l, sign| PresetParams { n, l, sign };
    vec![
        ("gl_homogeneous", p(2, 1, 1)),
        ("gl_homogeneous", p(3, 1, 1)),
        ("gl_principal", p(2, 1, 1)),
        ("gl_principal", p(3, 1, 1)),
        ("trig_A", p(1, 2, 1)),
        ("trig_B", p(1, 2, 1)),
        ("unitary", p(2, 1, 1)),
        ("o2N", p(2, 1, 1)),
        ("o2N_twisted", p(2, 1, 1)),
        ("twisted_affine", p(2, 0, 1)),
        ("twisted_affine", p(2, 0, -1)),
    ]
}

const CHECKS: [(&str, &str); 6] = [
    ("dictionary", "brackets"),
    ("relations", "generator relations"),
    ("principal_modes", "mode identity"),
    ("fixed_point", "involution"),
    ("invariance", "component invariance"),
    ("theorem", "vertex commutators"),
];

/// One record per kind of check that ran.
pub fn realization_records(prefix: &str, rep: &RealizationReport) -> Vec<Record> {
    let counts = [rep.pairs, rep.relation_checks, rep.mode_checks, rep.involution_checks, rep.invariance_checks, rep.theorem_checks];
    let mut out = Vec::new();
    for ((check, what), n) in CHECKS.iter().zip(counts) {
        if n == 0 {
            continue;
        }
        let fails: Vec<_> = rep.failures.iter().filter(|f| f.check == *check).collect();
        let witness = fails.first().map(|f| json!({ "left": f.left, "right": f.right, "detail": f.detail }));
        out.push(Record::new(format!("{prefix}/{check}"), fails.is_empty(), format!("{n} {what} checked, {} fail", fails.len())).with_witness(witness));
    }
    out
}

fn run_label(name: &str, p: &PresetParams) -> String {
    if name == "twisted_affine" {
        format!("{name}/N{}_sign{:+}", p.n, p.sign)
    } else {
        format!("{name}/N{}_l{}", p.n, p.l)
    }
}

pub fn catalog_realizations(w: DictWindow) -> Vec<Record> {
    realization_runs()
        .par_iter()
        .flat_map_iter(|(name, p)| {
            let prefix = format!("7.realization/{}", run_label(name, p));
            match preset(name, Some(*p)).and_then(|pr| pr.verify(w, None)) {
                Ok(rep) => realization_records(&prefix, &rep),
                Err(e) => vec![Record::new(prefix, false, format!("error: {e}"))],
            }
        })
        .collect()
}

// ---- Fock space ------------------------------------------------------------

/// x_(k) = m^{−1} Σ_p ω^{−kp} ν^p x over ℚ(ζ_L).
fn projected(q: &Quadruple, x: &[i64], k: i64) -> Vec<Scalar> {
    let ring = q.ring();
    let inv_m = ring.int(q.m() as i64).inv().expect("m > 0");
    let mut v = vec![ring.zero(); q.n()];
    for p in 0..q.m() as i64 {
        let w = q.omega(-k * p);
        for (o, y) in v.iter_mut().zip(q.nu_pow(p, x)) {
            *o = &*o + &(&w * &ring.int(y));
        }
    }
    v.iter().map(|c| c * &inv_m).collect()
}

/// [x(k), y(l)] = m^{−1}⟨x_(k), y_(l)⟩ k δ_{k+l,0} on sampled vectors of degree ≤ `degree`.
pub fn heisenberg(prefix: &str, b: &Built, seed: u64, degree: u32, modes: i64) -> Record {
    let q = &b.q;
    let fock = b.fock();
    let h = fock.heisenberg();
    let ring = q.ring();
    let labels: Vec<Vector> = b.t.sample_labels(q, 1).into_iter().take(2).collect();
    let vectors = fock.sample_vectors(&labels, seed, 4, degree);
    let basis: Vec<Vector> = (0..q.n()).map(|i| (0..q.n()).map(|j| i64::from(i == j)).collect()).collect();
    let modes: Vec<i64> = (-modes..=modes).filter(|k| *k != 0).collect();
    let mut checks = 0;
    let mut bad = None;
    for x in &basis {
        for y in &basis {
            for &k in &modes {
                for &l in &modes {
                    let c = if k + l == 0 {
                        let (px, py) = (projected(q, x, k), projected(q, y, l));
                        let pair = px.iter().zip(&py).fold(ring.zero(), |acc, (a, b)| &acc + &(a * b));
                        &(&pair * &ring.int(k)) * &ring.int(q.m() as i64).inv().expect("m > 0")
                    } else {
                        ring.zero()
                    };
                    for (vi, v) in vectors.iter().enumerate() {
                        checks += 1;
                        let lhs = h.apply_vector_mode(x, k, &h.apply_vector_mode(y, l, v)).sub(&h.apply_vector_mode(y, l, &h.apply_vector_mode(x, k, v)));
                        let rhs = v.scale(&c);
                        if !lhs.equals(&rhs) && bad.is_none() {
                            bad = Some(json!({ "x": x, "y": y, "k": k, "l": l, "vector": vi, "diff": fock_diff_json(&lhs, &rhs) }));
                        }
                    }
                }
            }
        }
    }
    Record::new(prefix.to_string(), bad.is_none(), format!("{checks} commutators on {} vectors of degree ≤ {degree}", vectors.len())).with_witness(bad)
}

pub fn graded_dimensions(prefix: &str, b: &Built, max: u32) -> Record {
    let fock = b.fock();
    let h = fock.heisenberg();
    let dims: Vec<u64> = (0..=max).map(|d| h.graded_dimension(d)).collect();
    let counted: Vec<u64> = (0..=max).map(|d| h.monomials(d).len() as u64).collect();
    let ok = dims == counted;
    Record::new(prefix.to_string(), ok, format!("dimensions {dims:?} for d ≤ {max}")).with_witness((!ok).then(|| json!({ "generating_function": dims, "enumerated": counted })))
}

pub fn catalog_fock(seed: u64) -> Vec<Record> {
    catalog()
        .par_iter()
        .flat_map_iter(|e| {
            let b = e.build().expect("builds");
            [graded_dimensions(&format!("8.fock/{}/graded_dimension", e.name), &b, 8), heisenberg(&format!("8.fock/{}/heisenberg", e.name), &b, seed, 6, 3)]
        })
        .collect()
}
