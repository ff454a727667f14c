//! The ν-twisted Heisenberg algebra ℋ(ν) and its Fock module S ⊗ T.
//!
//! The basis of ℋ_(n) is h_O^(n) = Σ_p ω^{−np} ν^p(ε_O) over σ-orbits O with
//! minimal representative ε_O, dropping zero projections. Creation monomials
//! are sorted multisets of (k, O) standing for h_O^(−k)(−k).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::lattice::{inner, Quadruple, Vector};
use crate::scalars::{rat, Cyclo, Ring, Scalar};

pub type Mono = Vec<(u32, u16)>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockKey {
    pub label: Vector,
    pub mono: Mono,
}

impl FockKey {
    pub fn degree(&self) -> u32 {
        self.mono.iter().map(|(k, _)| k).sum()
    }
}

pub fn mono_degree(m: &Mono) -> u32 {
    m.iter().map(|(k, _)| k).sum()
}

pub fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Finite K-linear combination of T-label ⊗ creation monomial.
#[derive(Clone, Debug)]
pub struct FockVector {
    terms: BTreeMap<FockKey, Scalar>,
}

impl Default for FockVector {
    fn default() -> Self {
        FockVector::zero()
    }
}

impl FockVector {
    pub fn zero() -> FockVector {
        FockVector { terms: BTreeMap::new() }
    }

    pub fn basis(key: FockKey, c: Scalar) -> FockVector {
        let mut v = FockVector::zero();
        v.add_term(key, &c);
        v
    }

    pub fn vacuum(label: Vector, ring: &Ring) -> FockVector {
        FockVector::basis(FockKey { label, mono: Vec::new() }, ring.one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &FockKey) -> Option<&Scalar> {
        self.terms.get(k)
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.degree()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, key: FockKey, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        if let Some(x) = self.terms.get_mut(&key) {
            let s = &*x + c;
            if s.is_zero() {
                self.terms.remove(&key);
            } else {
                *x = s;
            }
        } else {
            self.terms.insert(key, c.clone());
        }
    }

    pub fn add_assign(&mut self, o: &FockVector) {
        for (k, c) in &o.terms {
            self.add_term(k.clone(), c);
        }
    }

    pub fn add_scaled(&mut self, o: &FockVector, f: &Scalar) {
        if f.is_zero() {
            return;
        }
        for (k, c) in &o.terms {
            self.add_term(k.clone(), &(c * f));
        }
    }

    pub fn scale(&self, f: &Scalar) -> FockVector {
        let mut out = FockVector::zero();
        out.add_scaled(self, f);
        out
    }

    pub fn sub(&self, o: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), &(-c));
        }
        out
    }

    /// Exact equality (coefficientwise cross-multiplication).
    pub fn equals(&self, o: &FockVector) -> bool {
        self.sub(o).is_empty()
    }
}

/// ℋ(ν) data for a quadruple.
#[derive(Clone, Debug)]
pub struct Heisenberg {
    m: u32,
    n: usize,
    ring: Ring,
    reps: Vec<usize>,
    /// orbit_of[i] = (orbit, k, sign) with ν^k(ε_rep) = sign·ε_i.
    orbit_of: Vec<(usize, i64, i64)>,
    /// gram[O][r] = ⟨h_O^(r), h_O^(−r)⟩ for residue r, None when h_O^(r) = 0.
    gram: Vec<Vec<Option<Cyclo>>>,
    omega_step: i64,
}

impl Heisenberg {
    pub fn new(q: &Quadruple) -> Heisenberg {
        let n = q.n();
        let m = q.m();
        let ring = q.ring().clone();
        let mut orbit_of = vec![(usize::MAX, 0, 0); n];
        let mut reps = Vec::new();
        for i in 0..n {
            if orbit_of[i].0 != usize::MAX {
                continue;
            }
            let o = reps.len();
            reps.push(i);
            let mut cur = crate::lattice::SIdx::new(1, i);
            for k in 0..m as i64 {
                if orbit_of[cur.idx].0 == usize::MAX {
                    orbit_of[cur.idx] = (o, k, cur.sign as i64);
                }
                cur = q.sidx_r(cur, 1);
            }
        }
        let mut h = Heisenberg { m, n, ring, reps, orbit_of, gram: Vec::new(), omega_step: q.omega_exp(1) };
        let field = h.ring.field().clone();
        let mut gram = Vec::new();
        for o in 0..h.reps.len() {
            let mut row = Vec::new();
            for r in 0..m as i64 {
                let hp = h.projection(q, o, r);
                if hp.iter().all(|c| c.is_zero()) {
                    row.push(None);
                    continue;
                }
                let hm = h.projection(q, o, -r);
                let mut g = Cyclo::zero(&field);
                for (a, b) in hp.iter().zip(&hm) {
                    g.add_assign(&a.mul(b));
                }
                row.push(Some(g));
            }
            gram.push(row);
        }
        h.gram = gram;
        h
    }

    /// h_O^(r) = Σ_p ω^{−rp} ν^p(ε_O) as a vector over ℚ(ζ_L).
    pub fn projection(&self, q: &Quadruple, o: usize, r: i64) -> Vec<Cyclo> {
        let field = self.ring.field();
        let mut v = vec![Cyclo::zero(field); self.n];
        let mut cur = crate::lattice::SIdx::new(1, self.reps[o]);
        for p in 0..self.m as i64 {
            let w = Cyclo::zeta(field, q.omega_exp(-r * p));
            let w = if cur.sign < 0 { w.neg() } else { w };
            v[cur.idx].add_assign(&w);
            cur = q.sidx_r(cur, 1);
        }
        v
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn num_orbits(&self) -> usize {
        self.reps.len()
    }

    fn residue(&self, k: i64) -> usize {
        k.rem_euclid(self.m as i64) as usize
    }

    /// Whether h_O^(k) ≠ 0.
    pub fn present(&self, o: usize, k: i64) -> bool {
        self.gram[o][self.residue(k)].is_some()
    }

    pub fn gram(&self, o: usize, k: i64) -> Option<&Cyclo> {
        self.gram[o][self.residue(k)].as_ref()
    }

    /// dim ℋ_(k).
    pub fn dim(&self, k: i64) -> usize {
        (0..self.reps.len()).filter(|&o| self.present(o, k)).count()
    }

    /// Coefficients c_O with Σ_p ω^{−kp} ν^p(v) = Σ_O c_O h_O^(k), i.e. m·v_(k).
    pub fn proj_coeffs(&self, v: &[i64], k: i64) -> Vec<(usize, Cyclo)> {
        let field = self.ring.field();
        let mut acc: BTreeMap<usize, Cyclo> = BTreeMap::new();
        for (i, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let (o, kk, s) = self.orbit_of[i];
            if !self.present(o, k) {
                continue;
            }
            // ε_i = s ν^kk(ε_O), so Σ_p ω^{−kp}ν^p ε_i = s ω^{k·kk} h_O^(k)
            let c = Cyclo::zeta(field, k * kk * self.omega_step).scale(&rat(s * x, 1));
            acc.entry(o).and_modify(|e| e.add_assign(&c)).or_insert(c);
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Apply Σ_O coeffs[O] h_O^(k)(k) to a vector, for k ≠ 0.
    pub fn apply_mode(&self, coeffs: &[(usize, Scalar)], k: i64, v: &FockVector) -> FockVector {
        assert!(k != 0, "zero modes act through the T-weights");
        let mut out = FockVector::zero();
        for (key, c) in v.terms() {
            if k < 0 {
                for (o, f) in coeffs {
                    let mono = mono_mul(&key.mono, &vec![((-k) as u32, *o as u16)]);
                    out.add_term(FockKey { label: key.label.clone(), mono }, &(c * f));
                }
            } else {
                for (o, f) in coeffs {
                    let target = (k as u32, *o as u16);
                    let mult = key.mono.iter().filter(|x| **x == target).count();
                    if mult == 0 {
                        continue;
                    }
                    let g = self.gram(*o, k).expect("present basis element");
                    // [h^(k)(k), h^(−k)(−k)] = m^{−1} ⟨h^(k),h^(−k)⟩ k
                    let factor = self.ring.cyclo(g.scale(&rat(mult as i64 * k, self.m as i64)));
                    let mut mono = key.mono.clone();
                    let pos = mono.iter().position(|x| *x == target).unwrap();
                    mono.remove(pos);
                    out.add_term(FockKey { label: key.label.clone(), mono }, &(&(c * f) * &factor));
                }
            }
        }
        out
    }

    /// x(k)·v for x = the lattice vector `x` projected as x_(k) = m^{−1}Σ_p ω^{−kp}ν^p x.
    pub fn apply_vector_mode(&self, x: &[i64], k: i64, v: &FockVector) -> FockVector {
        let inv_m = rat(1, self.m as i64);
        let coeffs: Vec<(usize, Scalar)> = self.proj_coeffs(x, k).into_iter().map(|(o, c)| (o, self.ring.cyclo(c.scale(&inv_m)))).collect();
        self.apply_mode(&coeffs, k, v)
    }

    /// exp(−Σ_{k>0} A_k(k) z^{−k}/k) applied to v, where `a(k)` gives the
    /// coefficients of A_k in the basis h_O^(k). Returns z-exponent ↦ vector.
    pub fn apply_e_plus(&self, a: &dyn Fn(u32) -> Vec<(usize, Scalar)>, v: &FockVector) -> BTreeMap<i64, FockVector> {
        let mut out: BTreeMap<i64, FockVector> = BTreeMap::new();
        let maxk = v.terms().flat_map(|(k, _)| k.mono.iter().map(|x| x.0)).max().unwrap_or(0);
        // shift[(k, O)] = scalar replacing h_O^(−k)(−k), attached to z^{−k}
        let mut shift: BTreeMap<(u32, u16), Scalar> = BTreeMap::new();
        for k in 1..=maxk {
            for (o, c) in a(k) {
                if let Some(g) = self.gram(o, k as i64) {
                    let s = &c * &self.ring.cyclo(g.scale(&rat(-1, self.m as i64)));
                    shift.insert((k, o as u16), s);
                }
            }
        }
        for (key, c) in v.terms() {
            // group the monomial by distinct factor
            let mut groups: Vec<((u32, u16), usize)> = Vec::new();
            for x in &key.mono {
                match groups.last_mut() {
                    Some((y, n)) if y == x => *n += 1,
                    _ => groups.push((*x, 1)),
                }
            }
            let mut partial: Vec<(i64, Mono, Scalar)> = vec![(0, Vec::new(), c.clone())];
            for ((k, o), mult) in groups {
                let s = shift.get(&(k, o));
                let mut next = Vec::new();
                for (ze, mono, coef) in &partial {
                    for j in 0..=mult {
                        if j > 0 && s.is_none() {
                            break;
                        }
                        let keep = mult - j;
                        let mut nm = mono.clone();
                        nm.extend(core::iter::repeat_n((k, o), keep));
                        let f = if j == 0 {
                            coef.clone()
                        } else {
                            let b = binom(mult as i64, j as i64);
                            &coef.scale_rat(&rat(b, 1)) * &s.unwrap().pow(j as i64).expect("positive power")
                        };
                        next.push((ze - (k as i64) * j as i64, nm, f));
                    }
                }
                partial = next;
            }
            for (ze, mono, coef) in partial {
                out.entry(ze).or_default().add_term(FockKey { label: key.label.clone(), mono }, &coef);
            }
        }
        out.retain(|_, v| !v.is_empty());
        out
    }

    /// Coefficients of exp(Σ_{k>0} C_k(−k) z^k/k) up to z^max as polynomials
    /// in creation monomials; `c(k)` gives C_k in the basis h_O^(−k).
    pub fn e_minus_series(&self, c: &dyn Fn(u32) -> Vec<(usize, Scalar)>, max: u32) -> Vec<BTreeMap<Mono, Scalar>> {
        let mut series: Vec<BTreeMap<Mono, Scalar>> = vec![BTreeMap::new(); max as usize + 1];
        series[0].insert(Vec::new(), self.ring.one());
        for k in 1..=max {
            for (o, coef) in c(k) {
                if coef.is_zero() || !self.present(o, -(k as i64)) {
                    continue;
                }
                let u = coef.scale_rat(&rat(1, k as i64));
                // multiply by Σ_a u^a/a! h^a z^{ka}
                let mut next: Vec<BTreeMap<Mono, Scalar>> = vec![BTreeMap::new(); max as usize + 1];
                for d in 0..=max {
                    for (mono, val) in &series[d as usize] {
                        let mut a = 0u32;
                        let mut pw = self.ring.one();
                        let mut fact = 1i64;
                        let mut cur = mono.clone();
                        while d + k * a <= max {
                            let t = &(val * &pw).scale_rat(&rat(1, fact));
                            let slot = &mut next[(d + k * a) as usize];
                            match slot.get_mut(&cur) {
                                Some(x) => *x = &*x + t,
                                None => {
                                    slot.insert(cur.clone(), t.clone());
                                }
                            }
                            a += 1;
                            fact *= a as i64;
                            pw = &pw * &u;
                            cur = mono_mul(&cur, &vec![(k, o as u16)]);
                        }
                    }
                }
                for s in next.iter_mut() {
                    s.retain(|_, v| !v.is_zero());
                }
                series = next;
            }
        }
        series
    }

    /// Number of creation monomials of degree d.
    pub fn graded_dimension(&self, d: u32) -> u64 {
        let mut coeffs = vec![0u64; d as usize + 1];
        coeffs[0] = 1;
        for k in 1..=d {
            let colors = self.dim(-(k as i64));
            for _ in 0..colors {
                for x in k as usize..=d as usize {
                    coeffs[x] += coeffs[x - k as usize];
                }
            }
        }
        coeffs[d as usize]
    }

    /// All creation monomials of degree d, enumerated directly.
    pub fn monomials(&self, d: u32) -> Vec<Mono> {
        let mut gens: Vec<(u32, u16)> = Vec::new();
        for k in 1..=d {
            for o in 0..self.reps.len() {
                if self.present(o, -(k as i64)) {
                    gens.push((k, o as u16));
                }
            }
        }
        let mut out = Vec::new();
        fn rec(gens: &[(u32, u16)], start: usize, left: u32, cur: &mut Mono, out: &mut Vec<Mono>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for i in start..gens.len() {
                if gens[i].0 <= left {
                    cur.push(gens[i]);
                    rec(gens, i, left - gens[i].0, cur, out);
                    cur.pop();
                }
            }
        }
        rec(&gens, 0, d, &mut Vec::new(), &mut out);
        out
    }

    /// ⟨x, y⟩ for x ∈ ℋ_(k), y ∈ ℋ_(−k) given by basis coefficients.
    pub fn pairing(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)], k: i64) -> Scalar {
        let mut acc = self.ring.zero();
        for (o, a) in x {
            for (p, b) in y {
                if o == p {
                    if let Some(g) = self.gram(*o, k) {
                        acc = &acc + &(&(a * b) * &self.ring.cyclo(g.clone()));
                    }
                }
            }
        }
        acc
    }

    /// ⟨Σ_p ν^p a, b⟩ helper used for zero modes.
    pub fn orbit_pairing(q: &Quadruple, a: &[i64], b: &[i64]) -> i64 {
        inner(&q.orbit_sum(a), b)
    }
}

fn binom(n: i64, k: i64) -> i64 {
    let mut r = 1i64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::QuadrupleSpec;

    fn quad(n: usize, sigma: Vec<usize>, iota: Vec<i8>, m: u32, basis: Vec<Vector>, l: u32) -> Quadruple {
        Quadruple::new(QuadrupleSpec { n, q_basis: basis, sigma, iota, m, l: 1, conductor: l }).unwrap()
    }

    #[test]
    fn partitions_and_twisted_counts() {
        let q = quad(1, vec![0], vec![1], 1, vec![], 2);
        let h = Heisenberg::new(&q);
        assert_eq!(h.graded_dimension(4), 5);
        assert_eq!(h.graded_dimension(0), 1);
        let q2 = quad(1, vec![0], vec![-1], 2, vec![], 2);
        let h2 = Heisenberg::new(&q2);
        assert_eq!(h2.dim(0), 0);
        assert_eq!(h2.dim(1), 1);
        assert_eq!(h2.graded_dimension(2), 1);
        for d in 0..=8 {
            assert_eq!(h2.graded_dimension(d) as usize, h2.monomials(d).len());
        }
    }

    #[test]
    fn one_contraction() {
        let q = quad(1, vec![0], vec![1], 1, vec![], 2);
        let h = Heisenberg::new(&q);
        let r = q.ring();
        let vac = FockVector::vacuum(vec![0], r);
        let up = h.apply_vector_mode(&[1], -1, &vac);
        let back = h.apply_vector_mode(&[1], 1, &up);
        assert!(back.equals(&vac));
        assert!(h.apply_vector_mode(&[1], 2, &vac).is_empty());
    }
}
