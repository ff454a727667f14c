//! Twisted Γ-vertex operators Y_{ρ_i i,ρ_j j}(c,z) on V_T = T ⊗ S, their exact
//! modes, and the commutator check against the bracket of 𝒢̂(Q,ν,m,Γ).
//!
//! A mode y(c,n)v is computed without truncation: E^+ is a polynomial in z^{−1}
//! on v, the z-power operator shifts by a fixed integer per T-label, and only
//! the single E^− coefficient that balances the requested exponent is needed.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fock::{mono_mul, FockKey, FockVector, Heisenberg, Mono};
use crate::glie::{GLie, GenKey, LieElement};
use crate::groupmod::TModule;
use crate::lattice::{gamma_inv, gamma_is_one, gamma_mul, gamma_power, inner, Gamma, JIndex, LatticeError, Quadruple, Vector};
use crate::scalars::{rat, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum VertexError {
    #[error("{0:?} is not in the index set")]
    NotInJ(JIndex),
    #[error("z-exponent {twice}/2 is not an integer on label {label:?}")]
    NonIntegral { twice: i64, label: Vector },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Prefactor of Y: the Heisenberg field ρ_iε_i(z) when ρ_i i = ρ_j j and
/// c = 1, otherwise m^{−1}ζ(α)κ(ρ_i i,ρ_j j,c) times X.
#[derive(Clone, Debug, PartialEq)]
pub enum Normalization {
    Cartan,
    Scaled(Scalar),
}

#[derive(Clone, Debug, PartialEq)]
pub struct VertexOpSpec {
    pub j: JIndex,
    pub c: Gamma,
    pub normalization: Normalization,
}

#[derive(Clone, Debug)]
pub struct ModeResult {
    pub vector: FockVector,
    /// Number of (E^+ term, E^− term) pairs combined.
    pub expansion_terms: usize,
}

/// The seven configurations of (c₁, c₂) in the commutator analysis.
pub fn case_classifier(c1: &[i32], c2: &[i32]) -> u8 {
    let one1 = gamma_is_one(c1);
    let one2 = gamma_is_one(c2);
    let inverse = gamma_is_one(&gamma_mul(c1, c2));
    let equal = c1 == c2;
    match (one1, one2) {
        (true, true) => 4,
        (true, false) => 2,
        (false, true) => 3,
        // c₁ = c₂ together with c₁c₂ = 1 forces c₁ = 1 on exponent vectors,
        // so case 7 cannot be represented.
        (false, false) if inverse && equal => 7,
        (false, false) if inverse => 5,
        (false, false) if equal => 6,
        (false, false) => 1,
    }
}

/// Outcome of one commutator comparison.
#[derive(Clone, Debug)]
pub struct TheoremCheck {
    pub pass: bool,
    pub case: u8,
    pub lhs: FockVector,
    pub rhs: FockVector,
}

/// A failed R1/R2 mode identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryFailure {
    pub relation: &'static str,
    pub j: JIndex,
    pub c: Gamma,
    pub n: i64,
    pub vector_index: usize,
}

/// V_T together with the algebra it represents.
#[derive(Clone, Debug)]
pub struct FockRep {
    g: GLie,
    t: TModule,
    h: Heisenberg,
}

impl FockRep {
    pub fn new(g: GLie, t: TModule) -> FockRep {
        let h = Heisenberg::new(g.quadruple());
        FockRep { g, t, h }
    }

    pub fn glie(&self) -> &GLie {
        &self.g
    }

    pub fn quadruple(&self) -> &Quadruple {
        self.g.quadruple()
    }

    pub fn tmodule(&self) -> &TModule {
        &self.t
    }

    pub fn heisenberg(&self) -> &Heisenberg {
        &self.h
    }

    pub fn spec(&self, j: JIndex, c: &[i32]) -> Result<VertexOpSpec, VertexError> {
        let q = self.quadruple();
        if !q.is_j(j) {
            return Err(VertexError::NotInJ(j));
        }
        let normalization = if j.is_diagonal() && gamma_is_one(c) {
            Normalization::Cartan
        } else {
            let z = q.zeta(&q.jvector(j));
            let k = q.kappa(j, c)?;
            let inv_m = q.ring().rat(rat(1, q.m() as i64));
            Normalization::Scaled(&(&inv_m * &z) * &k)
        };
        Ok(VertexOpSpec { j, c: c.to_vec(), normalization })
    }

    /// Coefficients of m·x_(k) in the basis h_O^(k) as scalars.
    fn proj(&self, x: &[i64], k: i64, f: &Scalar) -> Vec<(usize, Scalar)> {
        let r = self.quadruple().ring();
        self.h.proj_coeffs(x, k).into_iter().map(|(o, c)| (o, &r.cyclo(c) * f)).collect()
    }

    fn merged(parts: Vec<(usize, Scalar)>) -> Vec<(usize, Scalar)> {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (o, s) in parts {
            match acc.get_mut(&o) {
                Some(x) => *x = &*x + &s,
                None => {
                    acc.insert(o, s);
                }
            }
        }
        acc.into_iter().filter(|(_, s)| !s.is_zero()).collect()
    }

    /// Twice the exponent of z contributed by z^{Σν^pα + ⟨α,Σν^pα⟩/2} on a label.
    fn twice_z_shift(&self, alpha: &[i64], label: &[i64]) -> i64 {
        let q = self.quadruple();
        let s = q.orbit_sum(alpha);
        2 * inner(&s, &self.t.weight(label)) + inner(alpha, &s)
    }

    /// y(c,n)·v, exact.
    pub fn apply_mode(&self, spec: &VertexOpSpec, n: i64, v: &FockVector) -> Result<ModeResult, VertexError> {
        let q = self.quadruple();
        let ring = q.ring();
        let nn = q.n();
        let a = spec.j.a.vector(nn);
        let norm = match &spec.normalization {
            Normalization::Cartan => return Ok(self.apply_cartan(&a, n, v)),
            Normalization::Scaled(s) => s.clone(),
        };
        if norm.is_zero() {
            return Ok(ModeResult { vector: FockVector::zero(), expansion_terms: 0 });
        }
        let b = spec.j.b.neg().vector(nn);
        let alpha = q.jvector(spec.j);
        let c = &spec.c;
        let eps_j = spec.j.b.vector(nn);
        let mut unsigned_j = vec![0; nn];
        unsigned_j[spec.j.b.idx] = 1;
        let c_twice_const = inner(&unsigned_j, &q.orbit_sum(&unsigned_j));
        let plus = |k: u32| {
            let k = k as i64;
            let mut parts = self.proj(&a, k, &ring.one());
            parts.extend(self.proj(&b, k, &gamma_power(ring, c, -k)));
            Self::merged(parts)
        };
        // Stage 1: c- and z-powers, then E^+ on each basis vector.
        let mut staged: Vec<(i64, FockVector)> = Vec::new();
        for (key, coef) in v.terms() {
            let twice = self.twice_z_shift(&alpha, &key.label);
            if twice % 2 != 0 {
                return Err(VertexError::NonIntegral { twice, label: key.label.clone() });
            }
            let c_twice = -2 * inner(&q.orbit_sum(&eps_j), &self.t.weight(&key.label)) + c_twice_const;
            let c_exps: Vec<i32> = c.iter().map(|x| x * c_twice as i32).collect();
            let single = FockVector::basis(key.clone(), &(coef * &norm) * &ring.s_mono(&c_exps));
            for (ep, w) in self.h.apply_e_plus(&plus, &single) {
                let need = -n - twice / 2 - ep;
                if need >= 0 {
                    staged.push((need, w));
                }
            }
        }
        let max = staged.iter().map(|(k, _)| *k).max();
        let Some(max) = max else {
            return Ok(ModeResult { vector: FockVector::zero(), expansion_terms: 0 });
        };
        // Stage 2: the balancing E^− coefficient, then e_α.
        let minus = |k: u32| {
            let k = k as i64;
            let mut parts = self.proj(&a, -k, &ring.one());
            parts.extend(self.proj(&b, -k, &gamma_power(ring, c, k)));
            Self::merged(parts)
        };
        let series = self.h.e_minus_series(&minus, max as u32);
        let mut out = FockVector::zero();
        let mut count = 0;
        let mut moved: BTreeMap<Vector, (Scalar, Vector)> = BTreeMap::new();
        for (need, w) in staged {
            let coeffs: &BTreeMap<Mono, Scalar> = &series[need as usize];
            for (key, x) in w.terms() {
                let (f, label) = moved
                    .entry(key.label.clone())
                    .or_insert_with(|| {
                        let (e, l) = self.t.act(q, &alpha, &key.label);
                        (q.root(e), l)
                    })
                    .clone();
                let xf = x * &f;
                for (mono, s) in coeffs {
                    count += 1;
                    out.add_term(FockKey { label: label.clone(), mono: mono_mul(&key.mono, mono) }, &(&xf * s));
                }
            }
        }
        Ok(ModeResult { vector: out, expansion_terms: count })
    }

    fn apply_cartan(&self, a: &[i64], n: i64, v: &FockVector) -> ModeResult {
        let q = self.quadruple();
        let vector = if n != 0 {
            self.h.apply_vector_mode(a, n, v)
        } else {
            let sa = q.orbit_sum(a);
            let mut out = FockVector::zero();
            for (key, c) in v.terms() {
                let w = q.ring().rat(rat(inner(&sa, &self.t.weight(&key.label)), q.m() as i64));
                out.add_term(key.clone(), &(c * &w));
            }
            out
        };
        let expansion_terms = vector.len();
        ModeResult { vector, expansion_terms }
    }

    /// ẽ(key)·v under ẽ(c,n) ↦ y(c,n).
    pub fn apply_key(&self, key: &GenKey, v: &FockVector) -> Result<FockVector, VertexError> {
        let spec = self.spec(key.j, &key.c)?;
        Ok(self.apply_mode(&spec, key.n, v)?.vector)
    }

    /// x·v under ẽ(c,n) ↦ y(c,n) and 𝐜 ↦ 1.
    pub fn apply_element(&self, x: &LieElement, v: &FockVector) -> Result<FockVector, VertexError> {
        let mut out = v.scale(x.central());
        for (k, s) in x.terms() {
            out.add_scaled(&self.apply_key(k, v)?, s);
        }
        Ok(out)
    }

    /// Compares [y₁(c₁,n₁), y₂(c₂,n₂)]v with the image of [ẽ₁(c₁,n₁), ẽ₂(c₂,n₂)].
    pub fn verify_theorem(&self, k1: &GenKey, k2: &GenKey, v: &FockVector) -> Result<TheoremCheck, VertexError> {
        let ring = self.g.ring();
        let y1y2 = self.apply_key(k1, &self.apply_key(k2, v)?)?;
        let y2y1 = self.apply_key(k2, &self.apply_key(k1, v)?)?;
        let lhs = y1y2.sub(&y2y1);
        let x = LieElement::basis(ring, k1.clone(), ring.one());
        let y = LieElement::basis(ring, k2.clone(), ring.one());
        let rhs = self.apply_element(&self.g.bracket_cr(&x, &y), v)?;
        Ok(TheoremCheck { pass: lhs.equals(&rhs), case: case_classifier(&k1.c, &k2.c), lhs, rhs })
    }

    /// Mode forms of the two operator symmetries on the given vectors:
    /// y_{i,j}(c,n) = (−1)^{δ_ij} c^{−n} y_{−j,−i}(c^{−1},n) and
    /// ω^{rn} y_{i,j}(c,n) = η(r,α) y_{i_r,j_r}(c,n).
    pub fn check_r1_r2(&self, j: JIndex, c: &[i32], r: i64, window: i64, vectors: &[FockVector]) -> Result<Vec<SymmetryFailure>, VertexError> {
        let q = self.quadruple();
        let ring = q.ring();
        let mut out = Vec::new();
        let alpha = q.jvector(j);
        let flip = self.spec(j.flipped(), &gamma_inv(c))?;
        let rot = self.spec(q.jindex_r(j, r), c)?;
        let own = self.spec(j, c)?;
        let sign = if j.same_index() { ring.int(-1) } else { ring.one() };
        let eta = q.root(self.g.nu_hat().eta(q, r, &alpha));
        for n in -window..=window {
            for (idx, v) in vectors.iter().enumerate() {
                let base = self.apply_mode(&own, n, v)?.vector;
                let f1 = &sign * &gamma_power(ring, c, -n);
                let r1 = self.apply_mode(&flip, n, v)?.vector.scale(&f1);
                if !base.equals(&r1) {
                    out.push(SymmetryFailure { relation: "R1", j, c: c.to_vec(), n, vector_index: idx });
                }
                let lhs = base.scale(&q.omega(r * n));
                let rhs = self.apply_mode(&rot, n, v)?.vector.scale(&eta);
                if !lhs.equals(&rhs) {
                    out.push(SymmetryFailure { relation: "R2", j, c: c.to_vec(), n, vector_index: idx });
                }
            }
        }
        Ok(out)
    }

    /// Test vectors: the vacuum on each label, every creation monomial of
    /// degree 1 and 2 on the first label, and `random` seeded combinations of
    /// degree ≤ `max_degree` over the labels.
    pub fn sample_vectors(&self, labels: &[Vector], seed: u64, random: usize, max_degree: u32) -> Vec<FockVector> {
        let ring = self.g.ring();
        let mut out: Vec<FockVector> = labels.iter().map(|l| FockVector::vacuum(self.t.canonical(l), ring)).collect();
        let Some(first) = labels.first() else {
            return out;
        };
        let first = self.t.canonical(first);
        for d in 1..=2.min(max_degree) {
            for mono in self.h.monomials(d) {
                out.push(FockVector::basis(FockKey { label: first.clone(), mono }, ring.one()));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let by_degree: Vec<Vec<Mono>> = (0..=max_degree).map(|d| self.h.monomials(d)).collect();
        for _ in 0..random {
            let mut v = FockVector::zero();
            for _ in 0..rng.gen_range(1..=2) {
                let label = self.t.canonical(&labels[rng.gen_range(0..labels.len())]);
                let d = rng.gen_range(0..=max_degree) as usize;
                if by_degree[d].is_empty() {
                    continue;
                }
                let mono = by_degree[d][rng.gen_range(0..by_degree[d].len())].clone();
                let coef = ring.int(rng.gen_range(1..=3));
                v.add_term(FockKey { label, mono }, &coef);
            }
            if !v.is_empty() {
                out.push(v);
            }
        }
        out
    }
}

/// Parameters of a stratified commutator sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepParams {
    /// Modes n₁, n₂ range over [−modes, modes].
    pub modes: i64,
    /// Γ-exponents range over [−exp_window, exp_window] in each coordinate.
    pub exp_window: i32,
    /// Checks drawn per reachable case.
    pub per_case: usize,
    pub max_degree: u32,
    pub random_vectors: usize,
    /// Number of T-labels used for vacuum vectors.
    pub labels: usize,
    pub seed: u64,
}

impl Default for SweepParams {
    fn default() -> Self {
        SweepParams { modes: 3, exp_window: 2, per_case: 20, max_degree: 4, random_vectors: 6, labels: 3, seed: 0 }
    }
}

/// One (pair, vector) instance of the commutator check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremTask {
    pub k1: GenKey,
    pub k2: GenKey,
    pub vector: usize,
    pub case: u8,
}

/// Tasks of a sweep together with the cases 1–6 that no exponent pair in the window reaches.
#[derive(Clone, Debug)]
pub struct SweepPlan {
    pub vectors: Vec<FockVector>,
    pub tasks: Vec<TheoremTask>,
    pub unreachable: Vec<u8>,
}

/// All exponent vectors of length `l` with entries in [−w, w].
pub fn exponent_window(l: usize, w: i32) -> Vec<Gamma> {
    let mut out = vec![Vec::new()];
    for _ in 0..l {
        out = out.into_iter().flat_map(|v| (-w..=w).map(move |x| {
            let mut v = v.clone();
            v.push(x);
            v
        })).collect();
    }
    out
}

impl FockRep {
    /// Draws `per_case` checks for every case 1–6 reachable in the exponent window.
    pub fn plan_sweep(&self, p: &SweepParams) -> SweepPlan {
        let q = self.quadruple();
        let labels: Vec<Vector> = self.t.sample_labels(q, 1).into_iter().take(p.labels.max(1)).collect();
        let vectors = self.sample_vectors(&labels, p.seed, p.random_vectors, p.max_degree);
        let gammas = exponent_window(q.l(), p.exp_window);
        let mut buckets: BTreeMap<u8, Vec<(usize, usize)>> = BTreeMap::new();
        for (a, c1) in gammas.iter().enumerate() {
            for (b, c2) in gammas.iter().enumerate() {
                buckets.entry(case_classifier(c1, c2)).or_default().push((a, b));
            }
        }
        let js = self.g.j_set();
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ 0x5eed);
        let mut tasks = Vec::new();
        let mut unreachable = Vec::new();
        for case in 1..=6u8 {
            let Some(pairs) = buckets.get(&case) else {
                unreachable.push(case);
                continue;
            };
            for _ in 0..p.per_case {
                let (a, b) = pairs[rng.gen_range(0..pairs.len())];
                let j1 = js[rng.gen_range(0..js.len())];
                let j2 = js[rng.gen_range(0..js.len())];
                let n1 = rng.gen_range(-p.modes..=p.modes);
                let n2 = rng.gen_range(-p.modes..=p.modes);
                let vector = rng.gen_range(0..vectors.len());
                tasks.push(TheoremTask { k1: GenKey::new(j1, &gammas[a], n1), k2: GenKey::new(j2, &gammas[b], n2), vector, case });
            }
        }
        SweepPlan { vectors, tasks, unreachable }
    }

    pub fn run_task(&self, plan: &SweepPlan, task: &TheoremTask) -> Result<TheoremCheck, VertexError> {
        self.verify_theorem(&task.k1, &task.k2, &plan.vectors[task.vector])
    }
}

/// ζ(α)ζ(β)ε′(α,ν^rβ)^{−1}ζ(α+ν^rβ)^{−1} = ∏_{0<p<m}(1−ω^p)^{−⟨α,ν^{p+r}β⟩}.
pub fn zeta_product_identity(q: &Quadruple, a: &[i64], b: &[i64], r: i64) -> bool {
    let ring = q.ring();
    let nb = q.nu_pow(r, b);
    let sum: Vector = a.iter().zip(&nb).map(|(x, y)| x + y).collect();
    let eps = q.root(q.modl(-q.eps_prime_exp(a, &nb)));
    let lhs = (&(&(&q.zeta(a) * &q.zeta(b)) * &eps)).div(&q.zeta(&sum)).expect("ζ is nonzero");
    let mut rhs = ring.one();
    for p in 1..q.m() as i64 {
        let k = inner(a, &q.nu_pow(p, &nb));
        if k != 0 {
            let base = &ring.one() - &q.omega(p);
            rhs = &rhs * &base.pow(-k).expect("1 − ω^p is a unit");
        }
    }
    lhs == rhs
}
