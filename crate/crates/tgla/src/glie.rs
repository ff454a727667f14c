//! The lattice twisted Γ-Lie algebra 𝒢̂(Q,ν,m,Γ): the involutive algebra
//! 𝒢(Q) spanned by e_{ρ_i i, ρ_j j}, its spanning generators ẽ(c,n) and the
//! closed-form bracket between them.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::assoc::{AssocError, AssocKey, AssocLieElement, InvolutiveAlgebra, Sparse};
use crate::groupmod::NuHat;
use crate::lattice::{gamma_inv, gamma_is_one, gamma_mul, gamma_power, vsub, Gamma, JIndex, Quadruple, SIdx, Vector, ZSpan};
use crate::linear::Combination;
use crate::scalars::{rat, Cyclo, Ring, Scalar};

/// The spanning element ẽ_{j}(c,n). The derived order is (i, ρ_i, j, ρ_j, c, n).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenKey {
    pub j: JIndex,
    pub c: Gamma,
    pub n: i64,
}

impl GenKey {
    pub fn new(j: JIndex, c: &[i32], n: i64) -> GenKey {
        GenKey { j, c: c.to_vec(), n }
    }
}

pub type LieElement = Combination<GenKey>;

/// Which generating set spans Q over ℤ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanStatus {
    /// The norm-2 vectors of Q span Q.
    QPrimeSpans,
    /// Only the vectors ρ_iε_i − ρ_jε_j of Q span Q.
    QDoublePrimeSpans,
    Neither,
}

impl SpanStatus {
    pub fn spans(self) -> bool {
        self != SpanStatus::Neither
    }

    pub fn name(self) -> &'static str {
        match self {
            SpanStatus::QPrimeSpans => "q_prime_spans",
            SpanStatus::QDoublePrimeSpans => "q_double_prime_spans",
            SpanStatus::Neither => "neither",
        }
    }
}

/// 𝒢̂(Q,ν,m,Γ) for a quadruple and a lift ν̂ of ν.
#[derive(Clone, Debug)]
pub struct GLie {
    q: Quadruple,
    nh: NuHat,
    js: Vec<JIndex>,
    pos: BTreeMap<JIndex, usize>,
}

fn sign(ring: &Ring, odd: bool) -> Scalar {
    if odd {
        ring.int(-1)
    } else {
        ring.one()
    }
}

impl GLie {
    pub fn new(q: Quadruple, nh: NuHat) -> GLie {
        let js = q.enumerate_j();
        let pos = js.iter().enumerate().map(|(p, j)| (*j, p)).collect();
        GLie { q, nh, js, pos }
    }

    pub fn quadruple(&self) -> &Quadruple {
        &self.q
    }

    pub fn nu_hat(&self) -> &NuHat {
        &self.nh
    }

    pub fn ring(&self) -> &Ring {
        self.q.ring()
    }

    /// The index set 𝒥 in basis order.
    pub fn j_set(&self) -> &[JIndex] {
        &self.js
    }

    pub fn position(&self, j: JIndex) -> Option<usize> {
        self.pos.get(&j).copied()
    }

    fn eps(&self, a: &[i64], b: &[i64]) -> i64 {
        self.q.eps_exp(a, b).expect("𝒥 vectors lie in Q")
    }

    /// ξ_r(α,β) = ε(α,ν^rβ)η(r,β) as a ζ_L exponent.
    pub fn xi_exp(&self, r: i64, a: &[i64], b: &[i64]) -> i64 {
        let nb = self.q.nu_pow(r, b);
        self.q.modl(self.eps(a, &nb) + self.nh.eta(&self.q, r, b))
    }

    /// 𝒢(Q) as an involutive algebra with basis 𝒥 and θ = ν̄.
    pub fn build_gq_as_assoc(&self) -> Result<InvolutiveAlgebra, AssocError> {
        let q = &self.q;
        let field = q.ring().field();
        let d = self.js.len();
        let root = |e: i64| Cyclo::zeta(field, q.modl(e));
        let mut labels = Vec::with_capacity(d);
        let mut mult = vec![vec![Sparse::new(); d]; d];
        let mut tau = vec![Sparse::new(); d];
        let mut theta = vec![Sparse::new(); d];
        let mut form = vec![Sparse::new(); d];
        let letter = |s: SIdx| format!("{}{}", if s.sign < 0 { "-" } else { "" }, s.idx + 1);
        for (x, &jx) in self.js.iter().enumerate() {
            labels.push(format!("e({},{})", letter(jx.a), letter(jx.b)));
            let ax = q.jvector(jx);
            let t = self.pos[&jx.flipped()];
            let one = Cyclo::one(field);
            tau[x] = vec![(t, if jx.same_index() { one } else { one.neg() })];
            let jr = q.jindex_r(jx, 1);
            theta[x] = vec![(self.pos[&jr], root(self.nh.eta1(q, &ax)))];
            for (y, &jy) in self.js.iter().enumerate() {
                let ay = q.jvector(jy);
                if jx.b == jy.a {
                    let target = self.pos[&JIndex::new(jx.a, jy.b)];
                    mult[x][y] = vec![(target, root(self.eps(&ax, &ay)))];
                    if jx.a == jy.b {
                        form[x].push((y, root(self.eps(&ax, &ay))));
                    }
                }
            }
        }
        InvolutiveAlgebra::new(q.ring().clone(), q.m(), labels, mult, tau, theta, form)
    }

    /// The two rewriting steps from ẽ(k): pairs (k', f) with ẽ(k) = f·ẽ(k').
    fn relation_steps(&self, k: &GenKey) -> [(GenKey, Scalar); 2] {
        let q = &self.q;
        let ring = q.ring();
        let flip = GenKey { j: k.j.flipped(), c: gamma_inv(&k.c), n: k.n };
        let flip_f = &sign(ring, k.j.same_index()) * &gamma_power(ring, &k.c, -k.n);
        let rot = GenKey { j: q.jindex_r(k.j, 1), c: k.c.clone(), n: k.n };
        let eta = self.nh.eta1(q, &q.jvector(k.j));
        let rot_f = q.root(q.modl(eta + q.omega_exp(-k.n)));
        [(flip, flip_f), (rot, rot_f)]
    }

    /// Canonical representative of ẽ(c,n) under the relations
    /// ẽ_{i,j}(c,n) = (−1)^{δ_ij} c^{−n} ẽ_{−j,−i}(c^{−1},n) and
    /// ẽ_{i,j}(c,n) = ω^{−n} η(1,α) ẽ_{i₁,j₁}(c,n). Returns (k, f) with
    /// ẽ = f·k, or `None` when the generator vanishes.
    pub fn canonicalize(&self, key: &GenKey) -> Option<(GenKey, Scalar)> {
        let ring = self.q.ring();
        let mut seen: BTreeMap<GenKey, Scalar> = BTreeMap::new();
        let mut queue = VecDeque::new();
        seen.insert(key.clone(), ring.one());
        queue.push_back(key.clone());
        while let Some(k) = queue.pop_front() {
            let f = seen[&k].clone();
            for (nk, nf) in self.relation_steps(&k) {
                let nf = &nf * &f;
                match seen.get(&nk) {
                    Some(old) => {
                        if *old != nf {
                            return None;
                        }
                    }
                    None => {
                        seen.insert(nk.clone(), nf);
                        queue.push_back(nk);
                    }
                }
            }
        }
        let (k, f) = seen.into_iter().next().expect("orbit is nonempty");
        Some((k, f))
    }

    /// All keys related to `key` by the relations, as pairs (k, g) with ẽ(k) = g·ẽ(key).
    pub fn orbit(&self, key: &GenKey) -> Vec<(GenKey, Scalar)> {
        let ring = self.q.ring();
        let mut seen: BTreeMap<GenKey, Scalar> = BTreeMap::new();
        let mut queue = VecDeque::new();
        seen.insert(key.clone(), ring.one());
        queue.push_back(key.clone());
        while let Some(k) = queue.pop_front() {
            let f = seen[&k].clone();
            for (nk, nf) in self.relation_steps(&k) {
                let nf = &nf * &f;
                if !seen.contains_key(&nk) {
                    seen.insert(nk.clone(), nf);
                    queue.push_back(nk);
                }
            }
        }
        seen.into_iter().map(|(k, f)| (k, f.inv().expect("relation factors are units"))).collect()
    }

    pub fn element(&self, terms: impl IntoIterator<Item = (GenKey, Scalar)>, central: Scalar) -> LieElement {
        let mut out = LieElement::central_only(central);
        for (k, v) in terms {
            if let Some((ck, f)) = self.canonicalize(&k) {
                out.add_term(ck, &(&v * &f));
            }
        }
        out
    }

    pub fn generator(&self, j: JIndex, c: &[i32], n: i64) -> LieElement {
        self.element([(GenKey::new(j, c, n), self.ring().one())], self.ring().zero())
    }

    /// The bracket of two spanning generators, unreduced.
    fn bracket_gens(&self, x: &GenKey, y: &GenKey) -> (Vec<(GenKey, Scalar)>, Scalar) {
        let q = &self.q;
        let ring = q.ring();
        let (i, j) = (x.j.a, x.j.b);
        let (k, l) = (y.j.a, y.j.b);
        let (c1, c2) = (&x.c, &y.c);
        let (n1, n2) = (x.n, y.n);
        let big_n = n1 + n2;
        let alpha = q.jvector(x.j);
        let beta = q.jvector(y.j);
        let s_ij = sign(ring, i.idx == j.idx);
        let s_kl = sign(ring, k.idx == l.idx);
        let c1_pow = |e: i64| gamma_power(ring, c1, e);
        let c2_pow = |e: i64| gamma_power(ring, c2, e);
        let mut terms = Vec::new();
        let mut central = ring.zero();
        for r in 0..q.m() as i64 {
            let kr = q.sidx_r(k, r);
            let lr = q.sidx_r(l, r);
            let xi = q.root(self.xi_exp(r, &alpha, &beta));
            let w = q.omega(-r * n2);
            if i == kr.neg() {
                let key = GenKey { j: JIndex::new(j.neg(), lr), c: gamma_mul(&gamma_inv(c1), c2), n: big_n };
                terms.push((key, &(&(&s_ij * &xi) * &c1_pow(-big_n)) * &w));
            }
            if j == kr {
                let key = GenKey { j: JIndex::new(i, lr), c: gamma_mul(c1, c2), n: big_n };
                terms.push((key, &(&xi * &w) * &c1_pow(n2)));
            }
            if i == lr {
                let key = GenKey { j: JIndex::new(j.neg(), kr.neg()), c: gamma_inv(&gamma_mul(c1, c2)), n: big_n };
                let f = &(&(&s_ij * &s_kl) * &xi) * &w;
                terms.push((key, &(&f * &c1_pow(-big_n)) * &c2_pow(-n2)));
            }
            if j.neg() == lr {
                let key = GenKey { j: JIndex::new(i, kr.neg()), c: gamma_mul(c1, &gamma_inv(c2)), n: big_n };
                let f = &(&s_kl * &xi) * &w;
                terms.push((key, &(&f * &c2_pow(-n2)) * &c1_pow(n2)));
            }
            if big_n == 0 && n1 != 0 {
                let wn = q.omega(r * n1);
                if gamma_is_one(&gamma_mul(c1, c2)) && j == kr && i == lr {
                    central = &central + &(&(&(&xi * &ring.int(n1)) * &wn) * &c1_pow(-n1));
                }
                if c1 == c2 && i == kr.neg() && j == lr.neg() {
                    central = &central + &(&(&(&s_ij * &xi) * &ring.int(n1)) * &wn);
                }
            }
        }
        let m = q.m() as i64;
        let inv_m = ring.rat(rat(1, m));
        let terms = terms.into_iter().map(|(k, f)| (k, &f * &inv_m)).collect();
        (terms, &central * &ring.rat(rat(1, m * m)))
    }

    /// The bracket of 𝒢̂ from the closed-form mode expansion.
    pub fn bracket_cr(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let ring = self.ring();
        let mut raw = Vec::new();
        let mut central = ring.zero();
        for (kx, vx) in x.terms() {
            for (ky, vy) in y.terms() {
                let f = vx * vy;
                let (t, c) = self.bracket_gens(kx, ky);
                raw.extend(t.into_iter().map(|(k, s)| (k, &s * &f)));
                central = &central + &(&c * &f);
            }
        }
        self.element(raw, central)
    }

    /// The image of an element in the spanning set of `alg` (as built by
    /// [`GLie::build_gq_as_assoc`]).
    pub fn to_assoc(&self, alg: &InvolutiveAlgebra, x: &LieElement) -> AssocLieElement {
        let raw = x.terms().map(|(k, v)| (AssocKey { a: self.pos[&k.j], c: k.c.clone(), n: k.n }, v.clone()));
        alg.element(raw, x.central().clone())
    }
}

/// Whether Q is spanned over ℤ by its norm-2 vectors, or else by its vectors
/// of the form ρ_iε_i − ρ_jε_j.
pub fn span_condition(q: &Quadruple) -> SpanStatus {
    let n = q.n();
    let mut q1: Vec<Vector> = Vec::new();
    let mut q2: Vec<Vector> = Vec::new();
    let letters: Vec<SIdx> = (0..n).flat_map(|i| [SIdx::new(1, i), SIdx::new(-1, i)]).collect();
    for &a in &letters {
        for &b in &letters {
            let v = vsub(&a.vector(n), &b.vector(n));
            if v.iter().all(|&x| x == 0) || !q.in_q(&v) {
                continue;
            }
            if a.idx != b.idx {
                q1.push(v.clone());
            }
            q2.push(v);
        }
    }
    let covers = |gens: &[Vector]| {
        let s = ZSpan::new(gens, n);
        q.q_basis().iter().all(|b| s.contains(b))
    };
    if covers(&q1) {
        SpanStatus::QPrimeSpans
    } else if covers(&q2) {
        SpanStatus::QDoublePrimeSpans
    } else {
        SpanStatus::Neither
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupmod::build_nu_hat;
    use crate::lattice::QuadrupleSpec;

    fn a1() -> GLie {
        let q = Quadruple::new(QuadrupleSpec { n: 2, q_basis: vec![vec![1, -1]], sigma: vec![0, 1], iota: vec![1, 1], m: 1, l: 1, conductor: 2 }).unwrap();
        let nh = build_nu_hat(&q, None, &|_| true).unwrap();
        GLie::new(q, nh)
    }

    #[test]
    fn r1_example() {
        let g = a1();
        let s = |sign, i| SIdx::new(sign, i);
        let key = GenKey::new(JIndex::new(s(-1, 1), s(-1, 0)), &[-1], 3);
        let (k, f) = g.canonicalize(&key).unwrap();
        assert_eq!(k, GenKey::new(JIndex::new(s(1, 0), s(1, 1)), &[1], 3));
        assert_eq!(f, gamma_power(g.ring(), &[1], 3));
    }

    #[test]
    fn span_of_a1() {
        assert_eq!(span_condition(a1().quadruple()), SpanStatus::QPrimeSpans);
    }
}
