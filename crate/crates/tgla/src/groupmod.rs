//! The twisted group algebra ℂ[Q,ε_C], the lift ν̂ (its η-table), and the
//! catalog of modules T together with the compatibility conditions between
//! the ℂ[Q,ε_C]-action, the ℋ_(0)-weights and ν̂.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::lattice::{inner, vadd, vneg, Quadruple, Vector};

/// ε*(ε_i,ε_j) = 1 for i ≤ j and −1 for i > j, as a table of ζ_L exponents.
pub fn epsilon_star(n: usize, conductor: u32) -> Vec<Vec<i64>> {
    let half = (conductor / 2) as i64;
    (0..n).map(|i| (0..n).map(|j| if i > j { half } else { 0 }).collect()).collect()
}

/// Bimultiplicative value of a table on P (ζ_L exponents, not reduced).
pub fn p_form_exp(table: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut e = 0;
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            e += x * y * table[i][j];
        }
    }
    e
}

/// Restrict a P-table to the ordered Q-basis pairs, as powers of ω₀.
pub fn restrict_to_q_basis(table: &[Vec<i64>], q_basis: &[Vector], conductor: u32, m0: u32) -> Vec<Vec<i64>> {
    let unit = (conductor / m0) as i64;
    let l = conductor as i64;
    q_basis
        .iter()
        .map(|a| {
            q_basis
                .iter()
                .map(|b| {
                    let e = p_form_exp(table, a, b).rem_euclid(l);
                    assert!(e % unit == 0, "table value is not a power of ω₀");
                    e / unit
                })
                .collect()
        })
        .collect()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TKind {
    /// ℂ[Q] with e_α.e^β = ε(α,β)e^{α+β} and weight β.
    GroupAlgebraQ,
    /// ℂ[P/2P]; e_{2α} acts as the identity.
    QuotientP2P,
    /// ℂ[P/2ℤε_N] with weight given by the representative.
    QuotientP2ZeN,
    /// The one-dimensional module on which every e_α acts by 1.
    Trivial,
}

impl TKind {
    pub fn name(self) -> &'static str {
        match self {
            TKind::GroupAlgebraQ => "group_algebra_q",
            TKind::QuotientP2P => "quotient_p_2p",
            TKind::QuotientP2ZeN => "quotient_p_2zeN",
            TKind::Trivial => "trivial",
        }
    }

    pub fn parse(s: &str) -> Option<TKind> {
        [TKind::GroupAlgebraQ, TKind::QuotientP2P, TKind::QuotientP2ZeN, TKind::Trivial].into_iter().find(|k| k.name() == s)
    }
}

/// A ℂ[Q,ε_C]-module from the catalog. Labels are representatives in P.
#[derive(Clone, Debug)]
pub struct TModule {
    kind: TKind,
    n: usize,
    /// Cocycle on P used for the action (ζ_L exponents); `None` means ε_C itself.
    eps_p: Option<Vec<Vec<i64>>>,
}

impl TModule {
    pub fn new(kind: TKind, n: usize, eps_p: Option<Vec<Vec<i64>>>) -> TModule {
        TModule { kind, n, eps_p }
    }

    pub fn kind(&self) -> TKind {
        self.kind
    }

    /// Canonical representative of a label.
    pub fn canonical(&self, label: &[i64]) -> Vector {
        match self.kind {
            TKind::GroupAlgebraQ => label.to_vec(),
            TKind::QuotientP2P => label.iter().map(|x| x.rem_euclid(2)).collect(),
            TKind::QuotientP2ZeN => {
                let mut v = label.to_vec();
                if let Some(last) = v.last_mut() {
                    *last = last.rem_euclid(2);
                }
                v
            }
            TKind::Trivial => vec![0; self.n],
        }
    }

    /// The vacuum label.
    pub fn origin(&self) -> Vector {
        vec![0; self.n]
    }

    /// e_α acting on a label: (ζ_L exponent of the factor, new canonical label).
    pub fn act(&self, q: &Quadruple, alpha: &[i64], label: &[i64]) -> (i64, Vector) {
        match self.kind {
            TKind::Trivial => (0, self.origin()),
            _ => {
                let f = match &self.eps_p {
                    Some(t) => q.modl(p_form_exp(t, alpha, label)),
                    None => q.eps_c_exp(alpha, label).expect("group algebra labels lie in Q"),
                };
                (f, self.canonical(&vadd(alpha, label)))
            }
        }
    }

    /// Weight representative: ℋ_(0) acts on the label through ⟨·, weight⟩.
    pub fn weight(&self, label: &[i64]) -> Vector {
        match self.kind {
            TKind::Trivial => self.origin(),
            _ => label.to_vec(),
        }
    }

    /// The irreducible component index for ℂ[P/2ℤε_N]: parity of Σ a_i with a_N ∈ {0,1}.
    pub fn component(&self, label: &[i64]) -> Option<u8> {
        (self.kind == TKind::QuotientP2ZeN).then(|| {
            let c = self.canonical(label);
            (c.iter().sum::<i64>().rem_euclid(2)) as u8
        })
    }

    /// A finite set of labels for exhaustive checks: all labels for the
    /// finite quotients, and Q-points with coordinates in [−radius, radius].
    pub fn sample_labels(&self, q: &Quadruple, radius: i64) -> Vec<Vector> {
        match self.kind {
            TKind::Trivial => vec![self.origin()],
            TKind::QuotientP2P => (0..1u64 << self.n).map(|bits| (0..self.n).map(|i| ((bits >> i) & 1) as i64).collect()).collect(),
            TKind::QuotientP2ZeN => {
                let mut out = Vec::new();
                let mut cur = vec![-radius; self.n];
                loop {
                    let mut v = cur.clone();
                    if let Some(last) = v.last_mut() {
                        *last = last.rem_euclid(2);
                    }
                    if !out.contains(&v) {
                        out.push(v);
                    }
                    if !next_point(&mut cur, radius) {
                        break;
                    }
                }
                out
            }
            TKind::GroupAlgebraQ => {
                let k = q.q_basis().len();
                let mut out = Vec::new();
                let mut cur = vec![-radius; k];
                loop {
                    let mut v = vec![0; self.n];
                    for (x, b) in cur.iter().zip(q.q_basis()) {
                        for (o, bb) in v.iter_mut().zip(b) {
                            *o += x * bb;
                        }
                    }
                    out.push(v);
                    if k == 0 || !next_point(&mut cur, radius) {
                        break;
                    }
                }
                out
            }
        }
    }
}

fn next_point(cur: &mut [i64], radius: i64) -> bool {
    for x in cur.iter_mut() {
        if *x < radius {
            *x += 1;
            return true;
        }
        *x = -radius;
    }
    false
}

/// The η-table of a lift ν̂: η(1,·) on the Q-basis (ζ_L exponents), extended
/// by the automorphism rule η(1,α+β)ε_C(α,β) = η(1,α)η(1,β)ε_C(να,νβ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuHat {
    eta1_basis: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GroupModError {
    #[error("no lift of ν found: {0}")]
    NoLift(String),
    #[error("η override has {got} entries, expected {expected}")]
    OverrideShape { got: usize, expected: usize },
}

impl NuHat {
    /// ζ_L exponent of ε_C(να,νβ)/ε_C(α,β).
    fn defect(q: &Quadruple, a: &[i64], b: &[i64]) -> i64 {
        let na = q.nu(a);
        let nb = q.nu(b);
        q.eps_c_exp(&na, &nb).expect("ν preserves Q") - q.eps_c_exp(a, b).expect("in Q")
    }

    /// η(1,α) as a ζ_L exponent.
    pub fn eta1(&self, q: &Quadruple, a: &[i64]) -> i64 {
        let x = q.coords(a).expect("η is evaluated on Q");
        let b = q.q_basis();
        let mut e = 0;
        for i in 0..x.len() {
            e += x[i] * self.eta1_basis[i];
            e += x[i] * (x[i] - 1) / 2 * Self::defect(q, &b[i], &b[i]);
            for j in i + 1..x.len() {
                e += x[i] * x[j] * Self::defect(q, &b[i], &b[j]);
            }
        }
        q.modl(e)
    }

    /// η(r,α) = ∏_{k<r} η(1,ν^kα) as a ζ_L exponent.
    pub fn eta(&self, q: &Quadruple, r: i64, a: &[i64]) -> i64 {
        let r = r.rem_euclid(q.m() as i64);
        let mut e = 0;
        let mut cur = a.to_vec();
        for _ in 0..r {
            e += self.eta1(q, &cur);
            cur = q.nu(&cur);
        }
        q.modl(e)
    }

    pub fn basis_values(&self) -> &[i64] {
        &self.eta1_basis
    }

    /// ν̂^m = Id, checked on the Q-basis (η(m,·) is a character).
    pub fn is_finite_order(&self, q: &Quadruple) -> bool {
        q.q_basis().iter().all(|b| {
            let mut e = 0;
            let mut cur = b.clone();
            for _ in 0..q.m() {
                e += self.eta1(q, &cur);
                cur = q.nu(&cur);
            }
            q.modl(e) == 0
        })
    }
}

/// Build ν̂. With `overrides` (powers of ω₀ on the Q-basis) the table is
/// taken as given and only validated; otherwise the m₀-th roots are searched
/// in lexicographic order starting from η ≡ 1, keeping the first candidate
/// with ν̂^m = Id that also satisfies `accept`.
pub fn build_nu_hat(q: &Quadruple, overrides: Option<&[i64]>, accept: &dyn Fn(&NuHat) -> bool) -> Result<NuHat, GroupModError> {
    let k = q.q_basis().len();
    if let Some(o) = overrides {
        if o.len() != k {
            return Err(GroupModError::OverrideShape { got: o.len(), expected: k });
        }
        let nh = NuHat { eta1_basis: o.iter().map(|&x| q.omega0_exp(x)).collect() };
        if !nh.is_finite_order(q) {
            return Err(GroupModError::NoLift("overridden η does not satisfy ν̂^m = Id".into()));
        }
        return Ok(nh);
    }
    let m0 = q.m0() as i64;
    let mut cur = vec![0i64; k];
    loop {
        let nh = NuHat { eta1_basis: cur.iter().map(|&x| q.omega0_exp(x)).collect() };
        if nh.is_finite_order(q) && accept(&nh) {
            return Ok(nh);
        }
        let mut advanced = false;
        for x in cur.iter_mut() {
            if *x + 1 < m0 {
                *x += 1;
                advanced = true;
                break;
            }
            *x = 0;
        }
        if !advanced {
            return Err(GroupModError::NoLift(format!("searched {} candidates", m0.pow(k as u32))));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatViolation {
    pub condition: &'static str,
    pub alpha: Vector,
    pub label: Vector,
    pub detail: String,
}

/// Check both halves of the compatibility condition on the Q-basis (and
/// their negatives) against the sample labels.
pub fn check_compatibility(q: &Quadruple, t: &TModule, nh: &NuHat, radius: i64) -> Vec<CompatViolation> {
    let mut out = Vec::new();
    let labels = t.sample_labels(q, radius);
    let mut alphas: Vec<Vector> = Vec::new();
    for b in q.q_basis() {
        alphas.push(b.clone());
        alphas.push(vneg(b));
    }
    for i in 0..q.q_basis().len() {
        for j in i + 1..q.q_basis().len() {
            alphas.push(vadd(&q.q_basis()[i], &q.q_basis()[j]));
        }
    }
    for a in &alphas {
        let s = q.orbit_sum(a);
        for lab in &labels {
            let w = t.weight(lab);
            let (_, moved) = t.act(q, a, lab);
            let diff = q.orbit_sum(&crate::lattice::vsub(&t.weight(&moved), &vadd(a, &w)));
            if diff.iter().any(|&x| x != 0) {
                out.push(CompatViolation { condition: "weight", alpha: a.clone(), label: lab.clone(), detail: format!("weight shift off by {diff:?}") });
            }
            // e_α^{-1} ν̂(e_α) = η(1,α) ε_C(α,−α)^{-1} e_{−α} e_{να}
            let na = q.nu(a);
            let (f1, l1) = t.act(q, &na, lab);
            let (f2, l2) = t.act(q, &vneg(a), &l1);
            let inv = q.eps_c_exp(a, &vneg(a)).expect("in Q");
            let lhs = q.modl(nh.eta1(q, a) + f1 + f2 - inv);
            let twice = 2 * inner(&s, &w) + inner(&s, a);
            let want = if twice % 2 == 0 { Some(q.omega_exp(-twice / 2)) } else { None };
            if l2 != t.canonical(lab) || want != Some(lhs) {
                out.push(CompatViolation {
                    condition: "nu_hat",
                    alpha: a.clone(),
                    label: lab.clone(),
                    detail: format!("got zeta^{lhs} on label {l2:?}, expected omega^(-{twice}/2)"),
                });
            }
        }
    }
    out
}

/// The first lift (in search order) that is also compatible with `t` on labels within `radius`.
pub fn compatible_nu_hat(q: &Quadruple, t: &TModule, radius: i64) -> Result<NuHat, GroupModError> {
    build_nu_hat(q, None, &|nh| check_compatibility(q, t, nh, radius).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::QuadrupleSpec;

    #[test]
    fn star_cocycle_on_a2_minus_identity() {
        let spec = QuadrupleSpec { n: 2, q_basis: vec![vec![1, -1]], sigma: vec![0, 1], iota: vec![-1, -1], m: 2, l: 1, conductor: 2 };
        let star = epsilon_star(2, 2);
        let table = restrict_to_q_basis(&star, &spec.q_basis, 2, 2);
        let q = Quadruple::with_epsilon_c(spec, Some(table)).unwrap();
        let t = TModule::new(TKind::QuotientP2P, 2, Some(star));
        let nh = build_nu_hat(&q, None, &|_| true).unwrap();
        assert_eq!(nh.basis_values(), &[0]);
        assert!(check_compatibility(&q, &t, &nh, 1).is_empty());
    }
}
