//! Named involutive algebras and the generator dictionaries identifying the
//! resulting Lie algebras with their classical presentations.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{AssocError, AssocKey, AssocLieElement, InvolutiveAlgebra, Sparse};
use crate::lattice::{Gamma, SIdx};
use crate::scalars::{Cyclo, Ring};

/// Generators of the classical presentations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PaperGen {
    /// E_{i,j} t₀^{n₀} t^𝐧 in the matrix algebra over the quantum torus.
    Gl { i: usize, j: usize, n0: i64, nvec: Gamma },
    /// A_{𝐧,n₀} of the trigonometric series Â.
    TrigA { nvec: Gamma, n0: i64 },
    /// B_{𝐧,n₀} of the trigonometric series B̂.
    TrigB { nvec: Gamma, n0: i64 },
    /// u_{i,j}(c,n) of the unitary Lie algebra.
    U { i: usize, j: usize, c: Gamma, n: i64 },
    /// f_{a,b}(c,n) of the BC_N-graded algebra ô_{2N}.
    F { a: SIdx, b: SIdx, c: Gamma, n: i64 },
}

impl PaperGen {
    pub fn gl(i: usize, j: usize, n0: i64, nvec: &[i32]) -> PaperGen {
        PaperGen::Gl { i, j, n0, nvec: nvec.to_vec() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogName {
    GlQuantumTorus,
    TrigonometricA,
    TrigonometricB,
    Unitary,
    BcGradedO2N,
}

impl CatalogName {
    pub fn parse(s: &str) -> Option<CatalogName> {
        Some(match s {
            "gl_quantum_torus" => CatalogName::GlQuantumTorus,
            "trigonometric_A" => CatalogName::TrigonometricA,
            "trigonometric_B" => CatalogName::TrigonometricB,
            "unitary" => CatalogName::Unitary,
            "bc_graded_o2N" => CatalogName::BcGradedO2N,
            _ => return None,
        })
    }
}

/// Size parameters: matrix size `n` (ignored by the trigonometric entries),
/// rank `l` of Γ and the conductor of the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogParams {
    pub n: usize,
    pub l: usize,
    pub conductor: u32,
}

/// Maps classical generators to spanning elements of the constructed algebra.
#[derive(Clone, Debug)]
pub struct Dictionary {
    name: CatalogName,
    n: usize,
    ring: Ring,
    alg: InvolutiveAlgebra,
}

/// Position of a signed index among the 2N letters ε₁, −ε₁, ε₂, …
pub fn signed_pos(s: SIdx) -> usize {
    2 * s.idx + usize::from(s.sign < 0)
}

impl Dictionary {
    pub fn name(&self) -> CatalogName {
        self.name
    }

    /// The image of a classical generator, or `None` if it does not belong to this entry.
    pub fn image(&self, g: &PaperGen) -> Option<AssocLieElement> {
        let r = &self.ring;
        let n = self.n;
        let key = |a: usize, c: &[i32], m: i64| AssocKey { a, c: c.to_vec(), n: m };
        let one = r.one();
        let (k, f) = match (self.name, g) {
            (CatalogName::GlQuantumTorus, PaperGen::Gl { i, j, n0, nvec }) if *i < n && *j < n => (key(i * n + j, nvec, *n0), one),
            (CatalogName::TrigonometricA, PaperGen::TrigA { nvec, n0 }) => {
                let inv: Vec<i32> = nvec.iter().map(|x| -x).collect();
                let s: Vec<i32> = nvec.iter().map(|x| -x * *n0 as i32).collect();
                (key(0, &inv, *n0), r.s_mono(&s))
            }
            (CatalogName::TrigonometricB, PaperGen::TrigB { nvec, n0 }) => {
                let inv: Vec<i32> = nvec.iter().map(|x| -x).collect();
                let s: Vec<i32> = nvec.iter().map(|x| -x * *n0 as i32).collect();
                (key(0, &inv, *n0), &r.int(2) * &r.s_mono(&s))
            }
            (CatalogName::Unitary, PaperGen::U { i, j, c, n: m }) if *i < n && *j < n => (key(i * n + j, c, *m), r.int(2)),
            (CatalogName::BcGradedO2N, PaperGen::F { a, b, c, n: m }) if a.idx < n && b.idx < n => (key(signed_pos(*a) * 2 * n + signed_pos(*b), c, *m), one),
            _ => return None,
        };
        if k.c.len() != r.nvars() {
            return None;
        }
        Some(self.alg.element([(k, f)], r.zero()))
    }
}

fn one(r: &Ring) -> Cyclo {
    Cyclo::one(r.field())
}

/// M_n ⊕ M_n^op with basis (side, i, j) ↦ side·n² + i·n + j and the exchange involution.
fn matrix_pair(r: &Ring, n: usize) -> (Vec<String>, Vec<Vec<Sparse>>, Vec<Sparse>, Vec<Sparse>) {
    let d = 2 * n * n;
    let idx = |s: usize, i: usize, j: usize| s * n * n + i * n + j;
    let mut labels = Vec::with_capacity(d);
    let mut mult = vec![vec![Vec::new(); d]; d];
    let mut tau = vec![Vec::new(); d];
    let mut form = vec![Vec::new(); d];
    for s in 0..2 {
        for i in 0..n {
            for j in 0..n {
                let a = idx(s, i, j);
                labels.push(if s == 0 { format!("(E{},{},0)", i + 1, j + 1) } else { format!("(0,E{},{})", i + 1, j + 1) });
                tau[a] = vec![(idx(1 - s, i, j), one(r))];
                form[a] = vec![(idx(s, j, i), one(r))];
                for k in 0..n {
                    for l in 0..n {
                        let b = idx(s, k, l);
                        if s == 0 && j == k {
                            mult[a][b] = vec![(idx(0, i, l), one(r))];
                        }
                        // Opposite product: E_ij · E_kl = E_kl E_ij.
                        if s == 1 && l == i {
                            mult[a][b] = vec![(idx(1, k, j), one(r))];
                        }
                    }
                }
            }
        }
    }
    (labels, mult, tau, form)
}

/// ℂ ⊕ ℂ with the exchange involution.
fn scalar_pair(r: &Ring) -> (Vec<String>, Vec<Vec<Sparse>>, Vec<Sparse>, Vec<Sparse>) {
    let labels = vec![String::from("(1,0)"), String::from("(0,1)")];
    let mult = vec![vec![vec![(0, one(r))], vec![]], vec![vec![], vec![(1, one(r))]]];
    let tau = vec![vec![(1, one(r))], vec![(0, one(r))]];
    let form = vec![vec![(0, one(r))], vec![(1, one(r))]];
    (labels, mult, tau, form)
}

fn identity(d: usize, r: &Ring) -> Vec<Sparse> {
    (0..d).map(|a| vec![(a, one(r))]).collect()
}

/// Builds a catalog algebra together with its generator dictionary.
pub fn catalog_algebra(name: &str, p: &CatalogParams) -> Result<(InvolutiveAlgebra, Dictionary), AssocError> {
    let which = CatalogName::parse(name).ok_or_else(|| AssocError::UnknownName(name.into()))?;
    let r = Ring::new(p.conductor, p.l);
    if p.n == 0 && matches!(which, CatalogName::GlQuantumTorus | CatalogName::Unitary | CatalogName::BcGradedO2N) {
        return Err(AssocError::Malformed("matrix size must be positive".into()));
    }
    let alg = match which {
        CatalogName::GlQuantumTorus => {
            let (labels, mult, tau, form) = matrix_pair(&r, p.n);
            let theta = identity(labels.len(), &r);
            InvolutiveAlgebra::new(r.clone(), 1, labels, mult, tau, theta, form)?
        }
        CatalogName::TrigonometricA => {
            let (labels, mult, tau, form) = scalar_pair(&r);
            let theta = identity(2, &r);
            InvolutiveAlgebra::new(r.clone(), 1, labels, mult, tau, theta, form)?
        }
        CatalogName::TrigonometricB => {
            let (labels, mult, tau, form) = scalar_pair(&r);
            let theta = tau.clone();
            InvolutiveAlgebra::new(r.clone(), 2, labels, mult, tau, theta, form)?
        }
        CatalogName::Unitary => {
            let n = p.n;
            let (labels, mult, tau, form) = matrix_pair(&r, n);
            // θ(A, B) = (Bᵗ, Aᵗ).
            let mut theta = vec![Vec::new(); labels.len()];
            for s in 0..2 {
                for i in 0..n {
                    for j in 0..n {
                        theta[s * n * n + i * n + j] = vec![((1 - s) * n * n + j * n + i, one(&r))];
                    }
                }
            }
            InvolutiveAlgebra::new(r.clone(), 2, labels, mult, tau, theta, form)?
        }
        CatalogName::BcGradedO2N => {
            let n = p.n;
            let d2 = 2 * n;
            // Letters in the order of `signed_pos`.
            let letters: Vec<SIdx> = (0..n).flat_map(|i| [SIdx::new(1, i), SIdx::new(-1, i)]).collect();
            let idx = |a: SIdx, b: SIdx| signed_pos(a) * d2 + signed_pos(b);
            let mut labels = Vec::new();
            let mut mult = vec![vec![Vec::new(); d2 * d2]; d2 * d2];
            let mut tau = vec![Vec::new(); d2 * d2];
            let mut form = vec![Vec::new(); d2 * d2];
            for &a in &letters {
                for &b in &letters {
                    let sa = if a.sign > 0 { "" } else { "-" };
                    let sb = if b.sign > 0 { "" } else { "-" };
                    labels.push(format!("E({}{},{}{})", sa, a.idx + 1, sb, b.idx + 1));
                    let x = idx(a, b);
                    tau[x] = vec![(idx(b.neg(), a.neg()), one(&r))];
                    form[x] = vec![(idx(b, a), one(&r))];
                    for &c in &letters {
                        mult[x][idx(b, c)] = vec![(idx(a, c), one(&r))];
                    }
                }
            }
            let theta = identity(labels.len(), &r);
            InvolutiveAlgebra::new(r.clone(), 1, labels, mult, tau, theta, form)?
        }
    };
    let dict = Dictionary { name: which, n: p.n, ring: r, alg: alg.clone() };
    Ok((alg, dict))
}
