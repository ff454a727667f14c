//! Brackets of the classical target algebras, computed from their defining
//! relations alone. These are the independent side of every dictionary check.

use alloc::vec::Vec;
use core::fmt::Debug;

use crate::assoc::catalog::PaperGen;
use crate::lattice::{gamma_inv, gamma_is_one, gamma_mul, gamma_power, Gamma, SIdx};
use crate::linear::Combination;
use crate::scalars::{Ring, Scalar};

/// A Lie algebra given by generators, a rewriting to canonical generators and
/// the bracket of two generators.
pub trait BracketOracle {
    type Gen: Ord + Clone + Debug;

    fn ring(&self) -> &Ring;

    /// `Some((h, f))` with g = f·h for the canonical h, or `None` if g = 0.
    fn canonical(&self, g: &Self::Gen) -> Option<(Self::Gen, Scalar)>;

    /// The bracket of two generators as raw terms plus a central coefficient.
    fn bracket_gens(&self, a: &Self::Gen, b: &Self::Gen) -> (Vec<(Self::Gen, Scalar)>, Scalar);

    fn element(&self, raw: Vec<(Self::Gen, Scalar)>, central: Scalar) -> Combination<Self::Gen> {
        let mut out = Combination::central_only(central);
        for (g, v) in raw {
            if let Some((h, f)) = self.canonical(&g) {
                out.add_term(h, &(&v * &f));
            }
        }
        out
    }

    fn generator(&self, g: Self::Gen) -> Combination<Self::Gen> {
        self.element(alloc::vec![(g, self.ring().one())], self.ring().zero())
    }

    fn bracket(&self, x: &Combination<Self::Gen>, y: &Combination<Self::Gen>) -> Combination<Self::Gen> {
        let mut out = Combination::zero(self.ring());
        for (a, u) in x.terms() {
            for (b, v) in y.terms() {
                let (raw, c) = self.bracket_gens(a, b);
                out.add_scaled(&self.element(raw, c), &(u * v));
            }
        }
        out
    }
}

fn kd<T: PartialEq>(a: T, b: T) -> bool {
    a == b
}

fn neg_pow(ring: &Ring, c: &[i32], k: i64) -> Scalar {
    // (−c)^k
    let s = gamma_power(ring, c, k);
    if k.rem_euclid(2) == 1 {
        -s
    } else {
        s
    }
}

/// ĝl_N(ℂ_q): basis E_{i,j} t₀^{n₀} t^𝐧 and 𝐜.
#[derive(Clone, Debug)]
pub struct GlOracle {
    pub ring: Ring,
    pub n: usize,
}

impl BracketOracle for GlOracle {
    type Gen = PaperGen;

    fn ring(&self) -> &Ring {
        &self.ring
    }

    fn canonical(&self, g: &PaperGen) -> Option<(PaperGen, Scalar)> {
        Some((g.clone(), self.ring.one()))
    }

    fn bracket_gens(&self, a: &PaperGen, b: &PaperGen) -> (Vec<(PaperGen, Scalar)>, Scalar) {
        let r = &self.ring;
        let (PaperGen::Gl { i, j, n0, nvec: nv }, PaperGen::Gl { i: k, j: p, n0: r0, nvec: rv }) = (a, b) else {
            panic!("not a gl generator");
        };
        let nn = *n0 + *r0;
        let sum = gamma_mul(nv, rv);
        let mut raw = Vec::new();
        let mut central = r.zero();
        if j == k {
            raw.push((PaperGen::Gl { i: *i, j: *p, n0: nn, nvec: sum.clone() }, gamma_power(r, nv, *r0)));
        }
        if i == p {
            raw.push((PaperGen::Gl { i: *k, j: *j, n0: nn, nvec: sum.clone() }, -gamma_power(r, rv, *n0)));
        }
        if j == k && i == p && nn == 0 && gamma_is_one(&sum) {
            central = &r.int(*n0) * &gamma_power(r, rv, *n0);
        }
        (raw, central)
    }
}

/// Trigonometric algebras Â_𝐡 (`b = false`) and B̂_𝐡 (`b = true`), with
/// q_k = e^{2√−1 h_k} so that e^{√−1 (𝐡,𝐧)} is the half-power s^𝐧.
/// The central terms pair 𝐧 with −𝐫: n₀δ_{n₀+r₀,0}δ_{𝐧+𝐫,0}𝐜 for Â_𝐡 and
/// n₀δ_{n₀+r₀,0}(δ_{𝐧,−𝐫} − (−1)^{n₀}δ_{𝐧,𝐫})𝐜 for B̂_𝐡; the variant pairing
/// 𝐧 with 𝐫 fails the cocycle identity.
#[derive(Clone, Debug)]
pub struct TrigOracle {
    pub ring: Ring,
    pub b: bool,
}

impl TrigOracle {
    fn gen(&self, nvec: Gamma, n0: i64) -> PaperGen {
        if self.b {
            PaperGen::TrigB { nvec, n0 }
        } else {
            PaperGen::TrigA { nvec, n0 }
        }
    }

    /// 2√−1 sin(x) = e^{√−1x} − e^{−√−1x} for x = (𝐡, e), e given as an s-exponent.
    fn two_i_sin(&self, e: &[i32]) -> Scalar {
        let m: Vec<i32> = e.iter().map(|x| -x).collect();
        &self.ring.s_mono(e) - &self.ring.s_mono(&m)
    }

    fn parts<'a>(&self, g: &'a PaperGen) -> (&'a Gamma, i64) {
        match (self.b, g) {
            (false, PaperGen::TrigA { nvec, n0 }) | (true, PaperGen::TrigB { nvec, n0 }) => (nvec, *n0),
            _ => panic!("generator of the wrong series"),
        }
    }
}

fn lin(a: i64, x: &[i32], b: i64, y: &[i32]) -> Vec<i32> {
    x.iter().zip(y).map(|(u, v)| a as i32 * u + b as i32 * v).collect()
}

impl BracketOracle for TrigOracle {
    type Gen = PaperGen;

    fn ring(&self) -> &Ring {
        &self.ring
    }

    /// In B̂_𝐡, B_{−𝐧,n₀} = −(−1)^{n₀} B_{𝐧,n₀}; the lexicographically larger of ±𝐧 is kept.
    fn canonical(&self, g: &PaperGen) -> Option<(PaperGen, Scalar)> {
        let (nv, n0) = self.parts(g);
        if !self.b {
            return Some((g.clone(), self.ring.one()));
        }
        let neg: Gamma = nv.iter().map(|x| -x).collect();
        let f = if n0.rem_euclid(2) == 0 { -self.ring.one() } else { self.ring.one() };
        if neg == *nv {
            return if f.is_one() { Some((g.clone(), self.ring.one())) } else { None };
        }
        if neg > *nv {
            Some((self.gen(neg, n0), f))
        } else {
            Some((g.clone(), self.ring.one()))
        }
    }

    fn bracket_gens(&self, a: &PaperGen, b: &PaperGen) -> (Vec<(PaperGen, Scalar)>, Scalar) {
        let r = &self.ring;
        let (nv, n0) = self.parts(a);
        let (rv, r0) = self.parts(b);
        let mut raw = Vec::new();
        let nn = n0 + r0;
        raw.push((self.gen(gamma_mul(nv, rv), nn), self.two_i_sin(&lin(n0, rv, -r0, nv))));
        let mut central = r.zero();
        if !self.b {
            if nn == 0 && *nv == vneg_g(rv) {
                central = r.int(n0);
            }
        } else {
            let s = if r0.rem_euclid(2) == 0 { r.one() } else { -r.one() };
            raw.push((self.gen(gamma_mul(nv, &gamma_inv(rv)), nn), &s * &self.two_i_sin(&lin(n0, rv, r0, nv))));
            if nn == 0 {
                let sn = if n0.rem_euclid(2) == 0 { r.one() } else { -r.one() };
                let mut c = r.zero();
                if *nv == vneg_g(rv) {
                    c = &c + &r.one();
                }
                if nv == rv {
                    c = &c - &sn;
                }
                central = &r.int(n0) * &c;
            }
        }
        (raw, central)
    }
}

fn vneg_g(c: &[i32]) -> Gamma {
    c.iter().map(|x| -x).collect()
}

/// û_N(ℂ_Γ) with u_{i,j}(c,n) = −(−c)^{−n} u_{j,i}(c^{−1},n). The δ_{jl} term
/// carries (−c₂)^{−r} and the first central term c₁^r; these are the values
/// forced by the loop construction.
#[derive(Clone, Debug)]
pub struct UnitaryOracle {
    pub ring: Ring,
    pub n: usize,
}

impl BracketOracle for UnitaryOracle {
    type Gen = PaperGen;

    fn ring(&self) -> &Ring {
        &self.ring
    }

    fn canonical(&self, g: &PaperGen) -> Option<(PaperGen, Scalar)> {
        let PaperGen::U { i, j, c, n } = g else { panic!("not a unitary generator") };
        let other = PaperGen::U { i: *j, j: *i, c: gamma_inv(c), n: *n };
        let f = -neg_pow(&self.ring, c, -n);
        if other == *g {
            return if f.is_one() { Some((g.clone(), self.ring.one())) } else { None };
        }
        if other < *g {
            Some((other, f))
        } else {
            Some((g.clone(), self.ring.one()))
        }
    }

    fn bracket_gens(&self, a: &PaperGen, b: &PaperGen) -> (Vec<(PaperGen, Scalar)>, Scalar) {
        let rg = &self.ring;
        let (PaperGen::U { i, j, c: c1, n }, PaperGen::U { i: k, j: l, c: c2, n: r }) = (a, b) else {
            panic!("not a unitary generator");
        };
        let (n, r) = (*n, *r);
        let nn = n + r;
        let u = |i: usize, j: usize, c: Gamma| PaperGen::U { i, j, c, n: nn };
        let mut raw = Vec::new();
        if kd(j, k) {
            raw.push((u(*i, *l, gamma_mul(c1, c2)), gamma_power(rg, c1, r)));
        }
        if kd(i, l) {
            raw.push((u(*j, *k, gamma_inv(&gamma_mul(c1, c2))), &neg_pow(rg, c1, -nn) * &gamma_power(rg, c2, -r)));
        }
        if kd(i, k) {
            let s = if n.rem_euclid(2) == 0 { rg.one() } else { -rg.one() };
            raw.push((u(*j, *l, gamma_mul(&gamma_inv(c1), c2)), -(&s * &gamma_power(rg, c1, -nn))));
        }
        if kd(j, l) {
            raw.push((u(*i, *k, gamma_mul(c1, &gamma_inv(c2))), -(&gamma_power(rg, c1, r) * &neg_pow(rg, c2, -r))));
        }
        let mut central = rg.zero();
        if nn == 0 {
            if kd(j, k) && kd(i, l) && gamma_is_one(&gamma_mul(c1, c2)) {
                central = &central + &gamma_power(rg, c1, r);
            }
            if kd(i, k) && kd(j, l) && c1 == c2 {
                let s = if n.rem_euclid(2) == 0 { rg.one() } else { -rg.one() };
                central = &central - &s;
            }
            central = &central * &rg.int(n);
        }
        (raw, central)
    }
}

/// ô_{2N}(ℂ_Γ) with f_{a,b}(c,n) = −c^{−n} f_{−b,−a}(c^{−1},n). This is the
/// relation compatible with the bracket below; the sign-twisted (−c)^{−n}
/// version contradicts it for odd n.
#[derive(Clone, Debug)]
pub struct O2NOracle {
    pub ring: Ring,
    pub n: usize,
}

impl BracketOracle for O2NOracle {
    type Gen = PaperGen;

    fn ring(&self) -> &Ring {
        &self.ring
    }

    fn canonical(&self, g: &PaperGen) -> Option<(PaperGen, Scalar)> {
        let PaperGen::F { a, b, c, n } = g else { panic!("not an o2N generator") };
        let other = PaperGen::F { a: b.neg(), b: a.neg(), c: gamma_inv(c), n: *n };
        let f = -gamma_power(&self.ring, c, -n);
        if other == *g {
            return if f.is_one() { Some((g.clone(), self.ring.one())) } else { None };
        }
        if other < *g {
            Some((other, f))
        } else {
            Some((g.clone(), self.ring.one()))
        }
    }

    fn bracket_gens(&self, x: &PaperGen, y: &PaperGen) -> (Vec<(PaperGen, Scalar)>, Scalar) {
        let rg = &self.ring;
        let (PaperGen::F { a: i, b: j, c: c1, n }, PaperGen::F { a: k, b: l, c: c2, n: r }) = (x, y) else {
            panic!("not an o2N generator");
        };
        let (i, j, k, l, n, r) = (*i, *j, *k, *l, *n, *r);
        let nn = n + r;
        let f = |a: SIdx, b: SIdx, c: Gamma| PaperGen::F { a, b, c, n: nn };
        let mut raw = Vec::new();
        if j == k {
            raw.push((f(i, l, gamma_mul(c1, c2)), gamma_power(rg, c1, r)));
        }
        if i == l {
            raw.push((f(j.neg(), k.neg(), gamma_inv(&gamma_mul(c1, c2))), &gamma_power(rg, c1, -nn) * &gamma_power(rg, c2, -r)));
        }
        if i == k.neg() {
            raw.push((f(j.neg(), l, gamma_mul(&gamma_inv(c1), c2)), -gamma_power(rg, c1, -nn)));
        }
        if j.neg() == l {
            raw.push((f(i, k.neg(), gamma_mul(c1, &gamma_inv(c2))), -(&gamma_power(rg, c1, r) * &gamma_power(rg, c2, -r))));
        }
        let mut central = rg.zero();
        if nn == 0 {
            if j == k && i == l && gamma_is_one(&gamma_mul(c1, c2)) {
                central = &central + &(&gamma_power(rg, c1, r) * &rg.int(n));
            }
            if i == k.neg() && j == l.neg() && c1 == c2 {
                central = &central - &rg.int(n);
            }
        }
        (raw, central)
    }
}
