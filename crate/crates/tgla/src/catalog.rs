//! The standard small quadruples, each with the module T it is realized on.

use alloc::vec;
use alloc::vec::Vec;

use crate::glie::GLie;
use crate::groupmod::{compatible_nu_hat, epsilon_star, restrict_to_q_basis, GroupModError, NuHat, TKind, TModule};
use crate::lattice::{m0_of, LatticeError, Quadruple, QuadrupleSpec};
use crate::vertex::FockRep;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    GroupMod(#[from] GroupModError),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub spec: QuadrupleSpec,
    pub t: TKind,
    /// Use ε* for both ε_C and the action on T (otherwise the default ε_C and ε_C on T).
    pub star: bool,
}

/// A quadruple with its module and a compatible lift of ν.
#[derive(Clone, Debug)]
pub struct Built {
    pub q: Quadruple,
    pub t: TModule,
    pub nu_hat: NuHat,
}

impl Built {
    pub fn glie(&self) -> GLie {
        GLie::new(self.q.clone(), self.nu_hat.clone())
    }

    pub fn fock(&self) -> FockRep {
        FockRep::new(self.glie(), self.t.clone())
    }
}

/// Builds with ε* (if requested) and the first η compatible with T.
pub fn build(spec: QuadrupleSpec, t: TKind, star: bool) -> Result<Built, CatalogError> {
    let st = epsilon_star(spec.n, spec.conductor);
    let n = spec.n;
    let q = if star {
        let table = restrict_to_q_basis(&st, &spec.q_basis, spec.conductor, m0_of(spec.m));
        Quadruple::with_epsilon_c(spec, Some(table))?
    } else {
        Quadruple::new(spec)?
    };
    let t = TModule::new(t, n, if star { Some(st) } else { None });
    let nu_hat = compatible_nu_hat(&q, &t, 1)?;
    Ok(Built { q, t, nu_hat })
}

impl CatalogEntry {
    pub fn build(&self) -> Result<Built, CatalogError> {
        build(self.spec.clone(), self.t, self.star)
    }
}

pub fn a1_identity() -> QuadrupleSpec {
    QuadrupleSpec { n: 2, q_basis: vec![vec![1, -1]], sigma: vec![0, 1], iota: vec![1, 1], m: 1, l: 1, conductor: 2 }
}

/// Q(A_{n−1}) with its standard simple roots.
pub fn a_basis(n: usize) -> Vec<Vec<i64>> {
    (0..n - 1)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = -1;
            v
        })
        .collect()
}

/// Q(D_n) with simple roots ε_i − ε_{i+1} and ε_{n−1} + ε_n.
pub fn d_basis(n: usize) -> Vec<Vec<i64>> {
    let mut b = a_basis(n);
    let mut last = vec![0; n];
    last[n - 2] = 1;
    last[n - 1] = 1;
    b.push(last);
    b
}

/// Q(A_{n−1}) with the Coxeter element ε_i ↦ ε_{i+1}, of order n.
pub fn a_coxeter(n: usize) -> QuadrupleSpec {
    let m = n as u32;
    QuadrupleSpec { n, q_basis: a_basis(n), sigma: (0..n).map(|i| (i + 1) % n).collect(), iota: vec![1; n], m, l: 1, conductor: 2 * m }
}

pub fn a_minus_identity(n: usize) -> QuadrupleSpec {
    QuadrupleSpec { n, q_basis: a_basis(n), sigma: (0..n).collect(), iota: vec![-1; n], m: 2, l: 1, conductor: 2 }
}

/// Q(D_n) with the diagram automorphism ε_n ↦ −ε_n.
pub fn d_diagram(n: usize) -> QuadrupleSpec {
    let mut iota = vec![1; n];
    iota[n - 1] = -1;
    QuadrupleSpec { n, q_basis: d_basis(n), sigma: (0..n).collect(), iota, m: 2, l: 1, conductor: 2 }
}

/// Q = {0} in ℝ¹ with ν = ±Id and Γ of rank `l`.
pub fn zero_lattice(sign: i8, l: usize) -> QuadrupleSpec {
    let m = if sign > 0 { 1 } else { 2 };
    QuadrupleSpec { n: 1, q_basis: vec![], sigma: vec![0], iota: vec![sign], m, l, conductor: 2 }
}

/// ℤε₁ in ℝ¹: ⟨ε₁,ε₁⟩ = 1 is odd, so A2 fails.
pub fn odd_lattice() -> QuadrupleSpec {
    QuadrupleSpec { n: 1, q_basis: vec![vec![1]], sigma: vec![0], iota: vec![1], m: 1, l: 1, conductor: 2 }
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry { name: "A1/Id/1", spec: a1_identity(), t: TKind::GroupAlgebraQ, star: true },
        CatalogEntry { name: "A2/coxeter/3", spec: a_coxeter(3), t: TKind::Trivial, star: false },
        CatalogEntry { name: "A1/-Id/2", spec: a_minus_identity(2), t: TKind::QuotientP2P, star: true },
        CatalogEntry { name: "A2/-Id/2", spec: a_minus_identity(3), t: TKind::QuotientP2P, star: true },
        CatalogEntry { name: "D2/diagram/2", spec: d_diagram(2), t: TKind::QuotientP2ZeN, star: true },
        CatalogEntry { name: "0/Id/1", spec: zero_lattice(1, 2), t: TKind::Trivial, star: false },
        CatalogEntry { name: "0/-Id/2", spec: zero_lattice(-1, 2), t: TKind::Trivial, star: false },
    ]
}

pub fn find(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}
