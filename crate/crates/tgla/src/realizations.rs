//! Named realizations: a quadruple with its module T, the isomorphism from
//! 𝒢̂(Q,ν,m,Γ) onto a classical Lie algebra, and that algebra's bracket
//! computed from its own defining relations.
//!
//! The dictionaries are stored in the direction 𝒢̂ → target. Every classical
//! isomorphism is given on the other side (classical generator ↦ multiple of
//! ẽ), so the stored map is its inverse on the spanning generators.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::assoc::catalog::PaperGen;
use crate::catalog::{self, Built, CatalogError};
use crate::fock::FockVector;
use crate::glie::{GLie, GenKey, LieElement};
use crate::groupmod::TKind;
use crate::lattice::{gamma_is_one, gamma_mul, gamma_power, inner, lcm, m0_of, vadd, Gamma, JIndex, Quadruple, QuadrupleSpec, SIdx, Vector};
use crate::linear::Combination;
use crate::oracles::{BracketOracle, GlOracle, O2NOracle, TrigOracle, UnitaryOracle};
use crate::scalars::{rat, Ring, Scalar};
use crate::vertex::{exponent_window, FockRep, SweepParams, VertexError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RealizationError {
    #[error("unknown realization {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("conductor {conductor} is not divisible by {needed}")]
    Conductor { conductor: u32, needed: u32 },
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("{0:?} has no image under the dictionary")]
    NoImage(GenKey),
    #[error(transparent)]
    Vertex(#[from] VertexError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PresetName {
    TwistedAffine,
    GlHomogeneous,
    GlPrincipal,
    TrigA,
    TrigB,
    Unitary,
    O2N,
    O2NTwisted,
}

impl PresetName {
    pub const ALL: [PresetName; 8] = [
        PresetName::TwistedAffine,
        PresetName::GlHomogeneous,
        PresetName::GlPrincipal,
        PresetName::TrigA,
        PresetName::TrigB,
        PresetName::Unitary,
        PresetName::O2N,
        PresetName::O2NTwisted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PresetName::TwistedAffine => "twisted_affine",
            PresetName::GlHomogeneous => "gl_homogeneous",
            PresetName::GlPrincipal => "gl_principal",
            PresetName::TrigA => "trig_A",
            PresetName::TrigB => "trig_B",
            PresetName::Unitary => "unitary",
            PresetName::O2N => "o2N",
            PresetName::O2NTwisted => "o2N_twisted",
        }
    }

    pub fn parse(s: &str) -> Option<PresetName> {
        PresetName::ALL.into_iter().find(|p| p.name() == s)
    }

    pub fn default_params(self) -> PresetParams {
        match self {
            PresetName::TrigA | PresetName::TrigB => PresetParams { n: 1, l: 2, sign: 1 },
            PresetName::TwistedAffine => PresetParams { n: 2, l: 0, sign: -1 },
            _ => PresetParams { n: 2, l: 1, sign: 1 },
        }
    }
}

/// Size of a preset: matrix size N, rank of Γ, and the sign of ν = ±Id for
/// the twisted affine preset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PresetParams {
    pub n: usize,
    pub l: usize,
    pub sign: i8,
}

/// Generators of the target algebras.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TargetGen {
    Paper(PaperGen),
    /// x_α ⊗ tⁿ in the affinization of 𝔤.
    Root { alpha: Vector, n: i64 },
    /// ε_k ⊗ tⁿ.
    Cartan { k: usize, n: i64 },
    /// F^i E^{n₀} t₀^{n₀} t^𝐧, with i reduced mod N.
    Principal { i: i64, n0: i64, nvec: Gamma },
}

pub type TargetElement = Combination<TargetGen>;

fn ring_sign(ring: &Ring, odd: bool) -> Scalar {
    if odd {
        -ring.one()
    } else {
        ring.one()
    }
}

/// The affinization of 𝔤 = ℋ ⊕ Σ_{α∈Q′} ℂx_α with
/// [x⊗tⁿ, y⊗t^r] = [x,y]⊗t^{n+r} + m^{−1}n⟨x,y⟩δ_{n+r,0}𝐜.
#[derive(Clone, Debug)]
pub struct AffineOracle {
    q: Quadruple,
}

impl AffineOracle {
    fn eps(&self, a: &[i64], b: &[i64]) -> Scalar {
        self.q.root(self.q.eps_exp(a, b).expect("roots lie in Q"))
    }

    fn inv_m(&self) -> Scalar {
        self.q.ring().rat(rat(1, self.q.m() as i64))
    }
}

impl BracketOracle for AffineOracle {
    type Gen = TargetGen;

    fn ring(&self) -> &Ring {
        self.q.ring()
    }

    fn canonical(&self, g: &TargetGen) -> Option<(TargetGen, Scalar)> {
        Some((g.clone(), self.q.ring().one()))
    }

    fn bracket_gens(&self, a: &TargetGen, b: &TargetGen) -> (Vec<(TargetGen, Scalar)>, Scalar) {
        let r = self.q.ring();
        let mut raw = Vec::new();
        let mut central = r.zero();
        match (a, b) {
            (TargetGen::Root { alpha, n }, TargetGen::Root { alpha: beta, n: m }) => {
                let nn = n + m;
                let sum = vadd(alpha, beta);
                if sum.iter().all(|&x| x == 0) {
                    let e = self.eps(alpha, beta);
                    for (k, &x) in alpha.iter().enumerate() {
                        if x != 0 {
                            raw.push((TargetGen::Cartan { k, n: nn }, &e * &r.int(x)));
                        }
                    }
                    if nn == 0 {
                        central = &(&e * &r.int(*n)) * &self.inv_m();
                    }
                } else if inner(alpha, beta) == -1 {
                    raw.push((TargetGen::Root { alpha: sum, n: nn }, self.eps(alpha, beta)));
                }
            }
            (TargetGen::Cartan { k, n }, TargetGen::Root { alpha, n: m }) => {
                raw.push((TargetGen::Root { alpha: alpha.clone(), n: n + m }, r.int(alpha[*k])));
            }
            (TargetGen::Root { alpha, n }, TargetGen::Cartan { k, n: m }) => {
                raw.push((TargetGen::Root { alpha: alpha.clone(), n: n + m }, r.int(-alpha[*k])));
            }
            (TargetGen::Cartan { k, n }, TargetGen::Cartan { k: l, n: m }) => {
                if k == l && n + m == 0 {
                    central = &r.int(*n) * &self.inv_m();
                }
            }
            _ => panic!("not an affine generator"),
        }
        (raw, central)
    }
}

/// The span of F^iE^{n₀}t₀^{n₀}t^𝐧 in ĝl_N(ℂ_q), bracket
/// [F^iE^{n₀}t₀^{n₀}t^𝐧, F^jE^{r₀}t₀^{r₀}t^𝐫]
///   = (ω^{jn₀}q^{r₀𝐧} − ω^{ir₀}q^{n₀𝐫}) F^{i+j}E^{n₀+r₀}t₀^{n₀+r₀}t^{𝐧+𝐫}
///   + n₀q^{r₀𝐧}ω^{jn₀}δ_{i+j≡0}δ_{n₀+r₀,0}δ_{𝐧+𝐫,0}𝐜
/// with ω a primitive N-th root of unity.
#[derive(Clone, Debug)]
pub struct PrincipalOracle {
    pub ring: Ring,
    pub n: usize,
}

impl PrincipalOracle {
    pub fn omega(&self, k: i64) -> Scalar {
        let l = self.ring.conductor() as i64;
        self.ring.zeta((k * (l / self.n as i64)).rem_euclid(l))
    }

    pub fn gen(&self, i: i64, n0: i64, nvec: &[i32]) -> TargetGen {
        TargetGen::Principal { i: i.rem_euclid(self.n as i64), n0, nvec: nvec.to_vec() }
    }
}

impl BracketOracle for PrincipalOracle {
    type Gen = TargetGen;

    fn ring(&self) -> &Ring {
        &self.ring
    }

    fn canonical(&self, g: &TargetGen) -> Option<(TargetGen, Scalar)> {
        let TargetGen::Principal { i, n0, nvec } = g else { panic!("not a principal generator") };
        Some((self.gen(*i, *n0, nvec), self.ring.one()))
    }

    fn bracket_gens(&self, a: &TargetGen, b: &TargetGen) -> (Vec<(TargetGen, Scalar)>, Scalar) {
        let r = &self.ring;
        let (TargetGen::Principal { i, n0, nvec: nv }, TargetGen::Principal { i: j, n0: r0, nvec: rv }) = (a, b) else {
            panic!("not a principal generator");
        };
        let first = &self.omega(j * n0) * &gamma_power(r, nv, *r0);
        let second = &self.omega(i * r0) * &gamma_power(r, rv, *n0);
        let sum = gamma_mul(nv, rv);
        let raw = vec![(self.gen(i + j, n0 + r0, &sum), &first - &second)];
        let mut central = r.zero();
        if (i + j).rem_euclid(self.n as i64) == 0 && n0 + r0 == 0 && gamma_is_one(&sum) {
            central = &r.int(*n0) * &first;
        }
        (raw, central)
    }
}

/// A classical oracle lifted to [`TargetGen`].
#[derive(Clone, Debug)]
pub enum TargetOracle {
    Affine(AffineOracle),
    Gl(GlOracle),
    Principal(PrincipalOracle),
    Trig(TrigOracle),
    Unitary(UnitaryOracle),
    O2N(O2NOracle),
}

fn lift_paper<O: BracketOracle<Gen = PaperGen>>(o: &O, a: &TargetGen, b: &TargetGen) -> (Vec<(TargetGen, Scalar)>, Scalar) {
    let (TargetGen::Paper(x), TargetGen::Paper(y)) = (a, b) else { panic!("not a classical generator") };
    let (raw, c) = o.bracket_gens(x, y);
    (raw.into_iter().map(|(g, v)| (TargetGen::Paper(g), v)).collect(), c)
}

fn lift_canonical<O: BracketOracle<Gen = PaperGen>>(o: &O, g: &TargetGen) -> Option<(TargetGen, Scalar)> {
    let TargetGen::Paper(x) = g else { panic!("not a classical generator") };
    o.canonical(x).map(|(h, f)| (TargetGen::Paper(h), f))
}

impl TargetOracle {
    pub fn id(&self) -> &'static str {
        match self {
            TargetOracle::Affine(_) => "twisted_affine_g",
            TargetOracle::Gl(_) => "gl_quantum_torus",
            TargetOracle::Principal(_) => "gl_principal_FE",
            TargetOracle::Trig(o) => {
                if o.b {
                    "trigonometric_B"
                } else {
                    "trigonometric_A"
                }
            }
            TargetOracle::Unitary(_) => "unitary",
            TargetOracle::O2N(_) => "bc_graded_o2N",
        }
    }
}

impl BracketOracle for TargetOracle {
    type Gen = TargetGen;

    fn ring(&self) -> &Ring {
        match self {
            TargetOracle::Affine(o) => o.ring(),
            TargetOracle::Gl(o) => o.ring(),
            TargetOracle::Principal(o) => o.ring(),
            TargetOracle::Trig(o) => o.ring(),
            TargetOracle::Unitary(o) => o.ring(),
            TargetOracle::O2N(o) => o.ring(),
        }
    }

    fn canonical(&self, g: &TargetGen) -> Option<(TargetGen, Scalar)> {
        match self {
            TargetOracle::Affine(o) => o.canonical(g),
            TargetOracle::Principal(o) => o.canonical(g),
            TargetOracle::Gl(o) => lift_canonical(o, g),
            TargetOracle::Trig(o) => lift_canonical(o, g),
            TargetOracle::Unitary(o) => lift_canonical(o, g),
            TargetOracle::O2N(o) => lift_canonical(o, g),
        }
    }

    fn bracket_gens(&self, a: &TargetGen, b: &TargetGen) -> (Vec<(TargetGen, Scalar)>, Scalar) {
        match self {
            TargetOracle::Affine(o) => o.bracket_gens(a, b),
            TargetOracle::Principal(o) => o.bracket_gens(a, b),
            TargetOracle::Gl(o) => lift_paper(o, a, b),
            TargetOracle::Trig(o) => lift_paper(o, a, b),
            TargetOracle::Unitary(o) => lift_paper(o, a, b),
            TargetOracle::O2N(o) => lift_paper(o, a, b),
        }
    }
}

/// ε*(ε_i,ε_j) = ±1 on unsigned indices.
fn eps_star(ring: &Ring, i: usize, j: usize) -> Scalar {
    ring_sign(ring, i > j)
}

/// A realization: the built quadruple, its target oracle and dictionary data.
#[derive(Clone, Debug)]
pub struct RealizationPreset {
    pub name: PresetName,
    pub params: PresetParams,
    pub built: Built,
    pub glie: GLie,
    pub oracle: TargetOracle,
    /// Image of 𝐜 ∈ 𝒢̂ as a multiple of the target's 𝐜.
    pub central: Scalar,
    /// Overall factor of the dictionary: ẽ ↦ scale · (written image).
    pub scale: Scalar,
}

fn homogeneous_spec(n: usize, l: usize) -> QuadrupleSpec {
    QuadrupleSpec { n, q_basis: catalog::a_basis(n), sigma: (0..n).collect(), iota: vec![1; n], m: 1, l, conductor: 2 }
}

fn d_identity_spec(n: usize, l: usize) -> QuadrupleSpec {
    QuadrupleSpec { n, q_basis: catalog::d_basis(n), sigma: (0..n).collect(), iota: vec![1; n], m: 1, l, conductor: 2 }
}

/// Builds a preset. The principal preset requires lcm(2N, m₀) | L.
pub fn preset(name: &str, params: Option<PresetParams>) -> Result<RealizationPreset, RealizationError> {
    let which = PresetName::parse(name).ok_or_else(|| RealizationError::UnknownName(name.into()))?;
    let p = params.unwrap_or_else(|| which.default_params());
    let bad = |s: &str| Err(RealizationError::Unsupported(s.into()));
    let built = match which {
        PresetName::TwistedAffine => {
            if p.n < 2 {
                return bad("twisted_affine needs N ≥ 2");
            }
            let mut spec = if p.sign > 0 { homogeneous_spec(p.n, p.l) } else { catalog::a_minus_identity(p.n) };
            spec.l = p.l;
            let t = if p.sign > 0 { TKind::GroupAlgebraQ } else { TKind::QuotientP2P };
            catalog::build(spec, t, true)?
        }
        PresetName::GlHomogeneous => catalog::build(homogeneous_spec(p.n, p.l), TKind::GroupAlgebraQ, true)?,
        PresetName::GlPrincipal => {
            if p.n < 2 {
                return bad("gl_principal needs N ≥ 2");
            }
            let mut spec = catalog::a_coxeter(p.n);
            spec.l = p.l;
            let needed = lcm(2 * p.n as u32, m0_of(spec.m));
            if spec.conductor % needed != 0 {
                return Err(RealizationError::Conductor { conductor: spec.conductor, needed });
            }
            catalog::build(spec, TKind::Trivial, false)?
        }
        PresetName::TrigA => catalog::build(catalog::zero_lattice(1, p.l), TKind::Trivial, false)?,
        PresetName::TrigB => catalog::build(catalog::zero_lattice(-1, p.l), TKind::Trivial, false)?,
        PresetName::Unitary => {
            let mut spec = catalog::a_minus_identity(p.n);
            spec.l = p.l;
            catalog::build(spec, TKind::QuotientP2P, true)?
        }
        PresetName::O2N => catalog::build(d_identity_spec(p.n, p.l), TKind::GroupAlgebraQ, true)?,
        PresetName::O2NTwisted => {
            let mut spec = catalog::d_diagram(p.n);
            spec.l = p.l;
            catalog::build(spec, TKind::QuotientP2ZeN, true)?
        }
    };
    let glie = built.glie();
    let ring = glie.ring().clone();
    let oracle = match which {
        PresetName::TwistedAffine => TargetOracle::Affine(AffineOracle { q: built.q.clone() }),
        PresetName::GlHomogeneous => TargetOracle::Gl(GlOracle { ring: ring.clone(), n: p.n }),
        PresetName::GlPrincipal => TargetOracle::Principal(PrincipalOracle { ring: ring.clone(), n: p.n }),
        PresetName::TrigA => TargetOracle::Trig(TrigOracle { ring: ring.clone(), b: false }),
        PresetName::TrigB => TargetOracle::Trig(TrigOracle { ring: ring.clone(), b: true }),
        PresetName::Unitary => TargetOracle::Unitary(UnitaryOracle { ring: ring.clone(), n: p.n }),
        PresetName::O2N | PresetName::O2NTwisted => TargetOracle::O2N(O2NOracle { ring: ring.clone(), n: p.n }),
    };
    // 2𝐜 ↦ 𝐜 for the fixed-point algebra of ô_{2N}; there g = ½(f + f^*).
    // For B̂_𝐡 the bracket-preserving convention is B ↦ 2g, so ẽ ↦ ½B.
    let (central, scale) = match which {
        PresetName::O2NTwisted => (ring.int(2), ring.rat(rat(1, 2))),
        PresetName::TrigB => (ring.one(), ring.rat(rat(1, 2))),
        _ => (ring.one(), ring.one()),
    };
    Ok(RealizationPreset { name: which, params: p, built, glie, oracle, central, scale })
}

/// A failed comparison, with both sides rendered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationFailure {
    pub check: &'static str,
    pub left: String,
    pub right: String,
    pub detail: String,
}

/// Which generators a dictionary sweep covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DictWindow {
    /// Loop modes n (and n₀) in [−modes, modes].
    pub modes: i64,
    /// Γ-exponents in [−exp_window, exp_window].
    pub exp_window: i32,
}

impl Default for DictWindow {
    fn default() -> Self {
        DictWindow { modes: 2, exp_window: 1 }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RealizationReport {
    pub name: String,
    pub generators: usize,
    pub pairs: usize,
    pub relation_checks: usize,
    pub mode_checks: usize,
    pub involution_checks: usize,
    pub invariance_checks: usize,
    pub theorem_checks: usize,
    pub failures: Vec<RealizationFailure>,
}

impl RealizationReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

fn render<K: Ord + Clone + core::fmt::Debug>(x: &Combination<K>) -> String {
    let mut s = String::new();
    for (k, v) in x.terms() {
        s.push_str(&format!("({v:?})·{k:?} + "));
    }
    s.push_str(&format!("({:?})·c", x.central()));
    s
}

impl RealizationPreset {
    pub fn ring(&self) -> &Ring {
        self.glie.ring()
    }

    fn quadruple(&self) -> &Quadruple {
        self.glie.quadruple()
    }

    /// G^i normalization N ζ(ε_k − ε₁)^{−1}(1−ω^{−i})^{δ_{ī,N}−1} with k = \overline{N−i+1}.
    /// For ī = N the index is k = 1, ζ(0) = 1 and the last factor has exponent 0.
    pub fn principal_scale(&self, i: i64) -> (usize, Scalar) {
        let q = self.quadruple();
        let n = self.params.n as i64;
        let r = q.ring();
        let ib = i.rem_euclid(n);
        let k = ((n - ib) % n) as usize;
        let mut a = vec![0; self.params.n];
        a[k] += 1;
        a[0] -= 1;
        let mut s = &r.int(n) * &q.zeta(&a).inv().expect("ζ is a unit");
        if ib != 0 {
            let base = &r.one() - &q.omega(-i);
            s = &s * &base.inv().expect("ω^{−i} ≠ 1");
        }
        (k, s)
    }

    /// The involution of ô_{2N} induced by ν̂ = ν_d:
    /// f_{ρ_ii,ρ_jj}(c,n)^* = (−1)ⁿ η(1,α) f_{ρ_ii₁,ρ_jj₁}(c,n) with α = ρ_iε_i − ρ_jε_j.
    /// With η ≡ 1 this is the involution whose fixed points form ô_{2N}^{(2)}.
    pub fn o2n_star(&self, x: &TargetElement) -> TargetElement {
        let q = self.quadruple();
        let r = q.ring();
        let nh = self.glie.nu_hat();
        x.map(
            r,
            &mut |g: &TargetGen| {
                let TargetGen::Paper(PaperGen::F { a, b, c, n: k }) = g else { panic!("not an o2N generator") };
                let alpha = q.jvector(JIndex::new(*a, *b));
                let f = &ring_sign(r, k.rem_euclid(2) == 1) * &q.root(nh.eta1(q, &alpha));
                let h = TargetGen::Paper(PaperGen::F { a: q.sidx_r(*a, 1), b: q.sidx_r(*b, 1), c: c.clone(), n: *k });
                Combination::basis(r, h, f)
            },
            &r.one(),
        )
    }

    /// The image of ẽ(key) if `key` has the shape the dictionary is written on.
    fn direct(&self, key: &GenKey) -> Option<TargetElement> {
        self.direct_unscaled(key).map(|x| x.scale(&self.scale))
    }

    fn direct_unscaled(&self, key: &GenKey) -> Option<TargetElement> {
        let r = self.ring();
        let (a, b) = (key.j.a, key.j.b);
        let paper = |g: PaperGen, f: Scalar| Some(Combination::basis(r, TargetGen::Paper(g), f));
        let pos = a.sign > 0 && b.sign > 0;
        match self.name {
            PresetName::GlHomogeneous if pos => paper(PaperGen::Gl { i: a.idx, j: b.idx, n0: key.n, nvec: key.c.clone() }, eps_star(r, a.idx, b.idx)),
            PresetName::Unitary if pos => {
                let f = (&r.int(2) * &eps_star(r, a.idx, b.idx)).inv().expect("unit");
                paper(PaperGen::U { i: a.idx, j: b.idx, c: key.c.clone(), n: key.n }, f)
            }
            PresetName::O2N => paper(PaperGen::F { a, b, c: key.c.clone(), n: key.n }, eps_star(r, a.idx, b.idx)),
            PresetName::O2NTwisted => {
                let f = Combination::basis(r, TargetGen::Paper(PaperGen::F { a, b, c: key.c.clone(), n: key.n }), r.one());
                let g = f.add(&self.o2n_star(&f));
                Some(g.scale(&eps_star(r, a.idx, b.idx)))
            }
            PresetName::TrigA | PresetName::TrigB if pos => {
                let nvec: Gamma = key.c.iter().map(|x| -x).collect();
                let s: Vec<i32> = key.c.iter().map(|x| -x * key.n as i32).collect();
                let mono = r.s_mono(&s);
                if self.name == PresetName::TrigA {
                    paper(PaperGen::TrigA { nvec, n0: key.n }, mono)
                } else {
                    paper(PaperGen::TrigB { nvec, n0: key.n }, mono)
                }
            }
            PresetName::GlPrincipal if a.sign > 0 && b == SIdx::new(1, 0) => {
                let n = self.params.n as i64;
                let i = (n - a.idx as i64).rem_euclid(n);
                let (_, s) = self.principal_scale(i);
                let o = PrincipalOracle { ring: r.clone(), n: self.params.n };
                Some(Combination::basis(r, o.gen(i, key.n, &key.c), s.inv().expect("unit")))
            }
            PresetName::TwistedAffine if a.sign > 0 && gamma_is_one(&key.c) => {
                let q = self.quadruple();
                let m = q.m() as i64;
                let inv_m = r.rat(rat(1, m));
                let mut out = Combination::zero(r);
                if a == b {
                    for p in 0..m {
                        let s = q.sidx_r(a, p);
                        out.add_term(TargetGen::Cartan { k: s.idx, n: key.n }, &(&(&q.omega(-key.n * p) * &r.int(s.sign as i64)) * &inv_m));
                    }
                    return Some(out);
                }
                let alpha = q.jvector(key.j);
                if inner(&alpha, &alpha) != 2 {
                    return None;
                }
                let nh = self.glie.nu_hat();
                for p in 0..m {
                    let f = &(&q.omega(-key.n * p) * &q.root(nh.eta(q, p, &alpha))) * &inv_m;
                    out.add_term(TargetGen::Root { alpha: q.nu_pow(p, &alpha), n: key.n }, &f);
                }
                Some(out)
            }
            _ => None,
        }
    }

    /// The image of ẽ(key), found through a representative of its relation orbit.
    pub fn image(&self, key: &GenKey) -> Result<TargetElement, RealizationError> {
        for (k, g) in self.glie.orbit(key) {
            if let Some(x) = self.direct(&k) {
                return Ok(x.scale(&g.inv().expect("relation factors are units")));
            }
        }
        Err(RealizationError::NoImage(key.clone()))
    }

    /// Maps an element of 𝒢̂ and canonicalizes it in the target.
    pub fn map_element(&self, x: &LieElement) -> Result<TargetElement, RealizationError> {
        let mut raw = Vec::new();
        for (k, v) in x.terms() {
            for (g, w) in self.image(k)?.terms() {
                raw.push((g.clone(), w * v));
            }
        }
        Ok(self.oracle.element(raw, x.central() * &self.central))
    }

    fn normalize(&self, x: &TargetElement) -> TargetElement {
        self.oracle.element(x.terms().map(|(g, v)| (g.clone(), v.clone())).collect(), x.central().clone())
    }

    /// Canonical nonzero spanning generators within the window.
    pub fn generators(&self, w: DictWindow) -> Vec<GenKey> {
        let q = self.quadruple();
        let gammas = if self.name == PresetName::TwistedAffine { vec![vec![0; q.l()]] } else { exponent_window(q.l(), w.exp_window) };
        let mut out = Vec::new();
        for &j in self.glie.j_set() {
            for c in &gammas {
                for n in -w.modes..=w.modes {
                    if let Some((k, _)) = self.glie.canonicalize(&GenKey::new(j, c, n)) {
                        out.push(k);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Every accepted representative in the orbit of `key` has the same
    /// image, and vanishing generators map to zero.
    pub fn check_relations(&self, key: &GenKey) -> Option<RealizationFailure> {
        let canon = self.glie.canonicalize(key);
        let mut first: Option<TargetElement> = None;
        for (k, g) in self.glie.orbit(key) {
            let Some(x) = self.direct(&k) else { continue };
            let x = self.normalize(&x.scale(&g.inv().expect("relation factors are units")));
            if canon.is_none() && !x.is_zero() {
                return Some(RealizationFailure { check: "relations", left: format!("{key:?}"), right: render(&x), detail: "vanishing generator has a nonzero image".into() });
            }
            match &first {
                None => first = Some(x),
                Some(f) if !f.equals(&x) => {
                    return Some(RealizationFailure { check: "relations", left: format!("{k:?}"), right: format!("{key:?}"), detail: format!("{} vs {}", render(f), render(&x)) });
                }
                _ => {}
            }
        }
        if first.is_none() {
            return Some(RealizationFailure { check: "relations", left: format!("{key:?}"), right: String::new(), detail: "no representative in the dictionary".into() });
        }
        None
    }

    /// Dictionary ∘ bracket_cr against oracle bracket ∘ dictionary on one pair.
    pub fn check_pair(&self, a: &GenKey, b: &GenKey) -> Option<RealizationFailure> {
        let x = self.glie.element([(a.clone(), self.ring().one())], self.ring().zero());
        let y = self.glie.element([(b.clone(), self.ring().one())], self.ring().zero());
        let fail = |d: String| Some(RealizationFailure { check: "dictionary", left: format!("{a:?}"), right: format!("{b:?}"), detail: d });
        let lhs = match self.map_element(&self.glie.bracket_cr(&x, &y)) {
            Ok(v) => v,
            Err(e) => return fail(format!("{e}")),
        };
        let (ix, iy) = match (self.map_element(&x), self.map_element(&y)) {
            (Ok(u), Ok(v)) => (u, v),
            (Err(e), _) | (_, Err(e)) => return fail(format!("{e}")),
        };
        let rhs = self.oracle.bracket(&ix, &iy);
        if lhs.equals(&rhs) {
            None
        } else {
            fail(format!("mapped bracket {} but oracle gives {}", render(&lhs), render(&rhs)))
        }
    }

    /// The image of every generator is fixed by the involution of ô_{2N}.
    pub fn check_fixed_point(&self, key: &GenKey) -> Option<RealizationFailure> {
        let x = self.normalize(&self.image(key).ok()?);
        let y = self.normalize(&self.o2n_star(&x));
        (!x.equals(&y)).then(|| RealizationFailure { check: "fixed_point", left: format!("{key:?}"), right: String::new(), detail: format!("{} vs {}", render(&x), render(&y)) })
    }

    /// The mode g^i(𝐧,n₀) as an element of 𝒢̂.
    pub fn principal_mode(&self, i: i64, nvec: &[i32], n0: i64) -> LieElement {
        let (k, s) = self.principal_scale(i);
        let j = JIndex::new(SIdx::new(1, k), SIdx::new(1, 0));
        self.glie.element([(GenKey::new(j, nvec, n0), s)], self.ring().zero())
    }

    /// Coefficient of z₁^{−n₀}z₂^{−r₀} in the right side of
    /// [G^i(𝐧,z₁),G^j(𝐫,z₂)] = G^{i+j}(𝐧+𝐫,ω^{−j}z₁)δ(ω^jz₂/q^𝐧z₁)
    ///   − G^{i+j}(𝐧+𝐫,ω^{−i}z₂)δ(ω^iz₁/q^𝐫z₂) + δ_{i+j≡0}(Dδ)(ω^jz₂/q^𝐧z₁),
    /// extracted term by term from the series. The (Dδ) term is a multiple of
    /// 𝐜, which has Γ-degree 1, so it is kept only when 𝐧+𝐫 = 0; with
    /// `literal` it is kept for all 𝐧, 𝐫.
    pub fn principal_rhs(&self, i: i64, nv: &[i32], n0: i64, j: i64, rv: &[i32], r0: i64, literal: bool) -> LieElement {
        let q = self.quadruple();
        let r = q.ring();
        let n = self.params.n as i64;
        let sum = gamma_mul(nv, rv);
        let mut out = LieElement::zero(r);
        // G(𝐬, w z_x) δ(u z_y / c z_x) = Σ_a g(a) w^{−a} z_x^{−a} Σ_k u^k c^{−k} z_y^k z_x^{−k}.
        // First term: x = 1, y = 2, so k = −r₀ and a = n₀ + r₀.
        let k = -r0;
        let a = n0 + r0;
        let w = q.omega(j * a);
        let f = &(&w * &q.omega(j * k)) * &gamma_power(r, nv, -k);
        out.add_scaled(&self.principal_mode(i + j, &sum, a), &f);
        // Second term: x = 2, y = 1, so k = −n₀ and a = n₀ + r₀.
        let k = -n0;
        let f = &(&q.omega(i * a) * &q.omega(i * k)) * &gamma_power(r, rv, -k);
        out.add_scaled(&self.principal_mode(i + j, &sum, a), &-f);
        // (Dδ)(x) = Σ_k k x^k with x = ω^j z₂/q^𝐧 z₁: z₂^k z₁^{−k}.
        if (i + j).rem_euclid(n) == 0 && n0 + r0 == 0 && (literal || gamma_is_one(&sum)) {
            let k = n0;
            let f = &(&r.int(k) * &q.omega(j * k)) * &gamma_power(r, nv, -k);
            out.add_central(&f);
        }
        out
    }

    /// Mode-level check of the G^i commutator for one index pair.
    pub fn check_principal_modes(&self, i: i64, nv: &[i32], n0: i64, j: i64, rv: &[i32], r0: i64) -> Option<RealizationFailure> {
        let lhs = self.glie.bracket_cr(&self.principal_mode(i, nv, n0), &self.principal_mode(j, rv, r0));
        let rhs = self.principal_rhs(i, nv, n0, j, rv, r0, false);
        let diff = lhs.sub(&rhs);
        let diff = self.glie.element(diff.terms().map(|(k, v)| (k.clone(), v.clone())), diff.central().clone());
        (!diff.is_zero()).then(|| RealizationFailure {
            check: "principal_modes",
            left: format!("g^{i}({nv:?},{n0})"),
            right: format!("g^{j}({rv:?},{r0})"),
            detail: format!("difference {}", render(&diff)),
        })
    }

    /// All (i, 𝐧, n₀) index triples of the mode-level check.
    pub fn principal_indices(&self, w: DictWindow) -> Vec<(i64, Gamma, i64)> {
        let n = self.params.n as i64;
        let mut out = Vec::new();
        for i in -n..=n {
            for c in exponent_window(self.quadruple().l(), w.exp_window) {
                for n0 in -w.modes..=w.modes {
                    out.push((i, c.clone(), n0));
                }
            }
        }
        out
    }

    /// y-modes preserve the two components ℂ[P/2ℤε_N]^{0} and ℂ[P/2ℤε_N]^{1}.
    pub fn check_invariance(&self, fock: &FockRep, key: &GenKey, v: &FockVector) -> Result<Option<RealizationFailure>, RealizationError> {
        let t = fock.tmodule();
        let comp = |v: &FockVector| -> Vec<u8> {
            let mut cs: Vec<u8> = v.terms().filter_map(|(k, _)| t.component(&k.label)).collect();
            cs.sort();
            cs.dedup();
            cs
        };
        let before = comp(v);
        let w = fock.apply_key(key, v)?;
        let after = comp(&w);
        Ok(after.iter().any(|c| !before.contains(c)).then(|| RealizationFailure {
            check: "component_invariance",
            left: format!("{key:?}"),
            right: format!("components {before:?}"),
            detail: format!("image meets components {after:?}"),
        }))
    }

    /// Runs every check of the preset sequentially.
    pub fn verify(&self, w: DictWindow, sweep: Option<&SweepParams>) -> Result<RealizationReport, RealizationError> {
        let gens = self.generators(w);
        let mut rep = RealizationReport { name: self.name.name().into(), generators: gens.len(), ..Default::default() };
        for k in &gens {
            rep.relation_checks += 1;
            rep.failures.extend(self.check_relations(k));
            if self.name == PresetName::O2NTwisted {
                rep.involution_checks += 1;
                rep.failures.extend(self.check_fixed_point(k));
            }
        }
        for a in &gens {
            for b in &gens {
                rep.pairs += 1;
                rep.failures.extend(self.check_pair(a, b));
            }
        }
        if self.name == PresetName::GlPrincipal {
            let idx = self.principal_indices(w);
            for (i, nv, n0) in &idx {
                for (j, rv, r0) in &idx {
                    rep.mode_checks += 1;
                    rep.failures.extend(self.check_principal_modes(*i, nv, *n0, *j, rv, *r0));
                }
            }
        }
        if let Some(p) = sweep {
            let fock = self.built.fock();
            let plan = fock.plan_sweep(p);
            for task in &plan.tasks {
                rep.theorem_checks += 1;
                let chk = fock.run_task(&plan, task)?;
                if !chk.pass {
                    rep.failures.push(RealizationFailure { check: "theorem", left: format!("{:?}", task.k1), right: format!("{:?}", task.k2), detail: format!("vector {}", task.vector) });
                }
            }
            if self.name == PresetName::O2NTwisted {
                for task in &plan.tasks {
                    for key in [&task.k1, &task.k2] {
                        rep.invariance_checks += 1;
                        rep.failures.extend(self.check_invariance(&fock, key, &plan.vectors[task.vector])?);
                    }
                }
            }
        }
        Ok(rep)
    }
}

/// Principal generators F^iE^{n₀} as matrices: Σ_k ω^{ik} E_{k,k+n₀} ⊗ t₀^{n₀}t^𝐧,
/// indices 1..N read cyclically.
pub fn principal_in_gl(o: &PrincipalOracle, i: i64, n0: i64, nvec: &[i32]) -> Combination<PaperGen> {
    let n = o.n as i64;
    let mut out = Combination::zero(&o.ring);
    for k in 1..=n {
        let col = (k - 1 + n0).rem_euclid(n) as usize;
        out.add_term(PaperGen::Gl { i: (k - 1) as usize, j: col, n0, nvec: nvec.to_vec() }, &o.omega(i * k));
    }
    out
}
