//! Lattice data (P = ℤ^N, Q, ν, m, Γ), the assumptions (A1)–(A5), and the
//! constant tables C, ε_C, ε′, ε, ζ′, ζ, κ.
//!
//! Roots of unity are stored as exponents of ζ_L (reduced mod L).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalars::{Rat, Ring, Scalar};

pub type Vector = Vec<i64>;

/// Exponent vector of an element of Γ in the free generators q_1, …, q_l.
pub type Gamma = Vec<i32>;

pub fn gamma_is_one(c: &[i32]) -> bool {
    c.iter().all(|&x| x == 0)
}

pub fn gamma_mul(a: &[i32], b: &[i32]) -> Gamma {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn gamma_inv(a: &[i32]) -> Gamma {
    a.iter().map(|x| -x).collect()
}

/// c^k as a scalar (Γ-exponents are q-exponents, stored as s = q^{1/2} powers).
pub fn gamma_power(ring: &Ring, c: &[i32], k: i64) -> Scalar {
    let e: Vec<i32> = c.iter().map(|&x| x * 2 * k as i32).collect();
    ring.s_mono(&e)
}

pub fn inner(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vadd(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vneg(a: &[i64]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn vscale(k: i64, a: &[i64]) -> Vector {
    a.iter().map(|x| k * x).collect()
}

/// The signed basis vector ρ ε_idx (idx is 0-based, sign ±1).
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SIdx {
    pub idx: usize,
    pub sign: i8,
}

impl SIdx {
    pub fn new(sign: i8, idx: usize) -> SIdx {
        SIdx { idx, sign }
    }

    pub fn neg(self) -> SIdx {
        SIdx { idx: self.idx, sign: -self.sign }
    }

    pub fn vector(self, n: usize) -> Vector {
        let mut v = vec![0; n];
        v[self.idx] = self.sign as i64;
        v
    }
}

/// A pair (ρ_i i, ρ_j j) with ρ_iε_i − ρ_jε_j ∈ Q.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JIndex {
    pub a: SIdx,
    pub b: SIdx,
}

impl JIndex {
    pub fn new(a: SIdx, b: SIdx) -> JIndex {
        JIndex { a, b }
    }

    pub fn is_diagonal(&self) -> bool {
        self.a == self.b
    }

    /// δ_ij on the unsigned indices.
    pub fn same_index(&self) -> bool {
        self.a.idx == self.b.idx
    }

    /// The τ-partner (−ρ_j j, −ρ_i i).
    pub fn flipped(&self) -> JIndex {
        JIndex { a: self.b.neg(), b: self.a.neg() }
    }
}

/// Raw quadruple data as supplied by a user or the catalog. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadrupleSpec {
    pub n: usize,
    pub q_basis: Vec<Vector>,
    pub sigma: Vec<usize>,
    pub iota: Vec<i8>,
    pub m: u32,
    pub l: usize,
    pub conductor: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssumptionCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<Vector>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssumptionReport {
    pub checks: Vec<AssumptionCheck>,
}

impl AssumptionReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AssumptionCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("malformed quadruple: {0}")]
    Malformed(String),
    #[error("invalid signed permutation: {0}")]
    InvalidPermutation(String),
    #[error("assumption {0} fails")]
    Assumption(&'static str),
    #[error("conductor {conductor} is not divisible by {needed}")]
    ConductorTooSmall { conductor: u32, needed: u32 },
    #[error("vector {0:?} is not in Q")]
    NotInQ(Vector),
    #[error("C(a,a) != 1 on basis vector {0:?}")]
    SelfCommutator(Vector),
    #[error("epsilon_C table does not alternate to C on basis pair ({0}, {1})")]
    BadEpsilonC(usize, usize),
    #[error("kappa is undefined for a diagonal index with c = 1")]
    KappaDiagonal,
}

pub fn m0_of(m: u32) -> u32 {
    if m % 2 == 0 {
        m
    } else {
        2 * m
    }
}

fn apply_signed_perm(sigma: &[usize], iota: &[i8], v: &[i64]) -> Vector {
    let mut out = vec![0; v.len()];
    for (i, &x) in v.iter().enumerate() {
        out[sigma[i]] += iota[i] as i64 * x;
    }
    out
}

fn check_structure(spec: &QuadrupleSpec) -> Result<(), LatticeError> {
    let n = spec.n;
    if spec.sigma.len() != n || spec.iota.len() != n {
        return Err(LatticeError::InvalidPermutation(format!("sigma and iota must have length {n}")));
    }
    let mut seen = vec![false; n];
    for &s in &spec.sigma {
        if s >= n || seen[s] {
            return Err(LatticeError::InvalidPermutation(format!("sigma {:?} is not a permutation", spec.sigma)));
        }
        seen[s] = true;
    }
    if spec.iota.iter().any(|&x| x != 1 && x != -1) {
        return Err(LatticeError::InvalidPermutation(format!("iota {:?} must be signs", spec.iota)));
    }
    if spec.m == 0 {
        return Err(LatticeError::Malformed("m must be positive".into()));
    }
    if spec.q_basis.iter().any(|b| b.len() != n) {
        return Err(LatticeError::Malformed(format!("Q basis vectors must have length {n}")));
    }
    if Solver::new(&spec.q_basis).is_none() {
        return Err(LatticeError::Malformed("Q basis is linearly dependent".into()));
    }
    Ok(())
}

/// Exact coordinate solver for a linearly independent integer basis.
#[derive(Clone, Debug)]
struct Solver {
    basis: Vec<Vector>,
    pivots: Vec<usize>,
    inv: Vec<Vec<Rat>>,
}

impl Solver {
    fn new(basis: &[Vector]) -> Option<Solver> {
        let k = basis.len();
        if k == 0 {
            return Some(Solver { basis: Vec::new(), pivots: Vec::new(), inv: Vec::new() });
        }
        let n = basis[0].len();
        // Row-reduce the transpose to find k independent columns.
        let mut rows: Vec<Vec<Rat>> = basis.iter().map(|b| b.iter().map(|&x| Rat::from_integer(x.into())).collect()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..n {
            if r == k {
                break;
            }
            let Some(p) = (r..k).find(|&i| !rows[i][col].is_zero()) else { continue };
            rows.swap(r, p);
            let pv = rows[r][col].clone();
            for i in 0..k {
                if i != r && !rows[i][col].is_zero() {
                    let f = &rows[i][col] / &pv;
                    for c in 0..n {
                        let t = &f * &rows[r][c];
                        rows[i][c] -= t;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        if r < k {
            return None;
        }
        // Invert the k×k submatrix M[i][t] = basis[i][pivots[t]].
        let mut a: Vec<Vec<Rat>> = (0..k)
            .map(|i| {
                let mut row: Vec<Rat> = pivots.iter().map(|&c| Rat::from_integer(basis[i][c].into())).collect();
                row.extend((0..k).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
                row
            })
            .collect();
        for c in 0..k {
            let p = (c..k).find(|&i| !a[i][c].is_zero())?;
            a.swap(c, p);
            let pv = a[c][c].clone();
            for x in a[c].iter_mut() {
                *x /= &pv;
            }
            for i in 0..k {
                if i != c && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..2 * k {
                        let t = &f * &a[c][j];
                        a[i][j] -= t;
                    }
                }
            }
        }
        let inv = a.into_iter().map(|row| row[k..].to_vec()).collect();
        Some(Solver { basis: basis.to_vec(), pivots, inv })
    }

    /// Integer x with Σ x_i b_i = v, if it exists.
    fn coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        let k = self.basis.len();
        if k == 0 {
            return v.iter().all(|&x| x == 0).then(Vec::new);
        }
        // x · M = v_piv  ⇒  x = v_piv · M^{-1}
        let mut x = Vec::with_capacity(k);
        for j in 0..k {
            let mut s = Rat::zero();
            for (t, &c) in self.pivots.iter().enumerate() {
                s += &self.inv[t][j] * Rat::from_integer(v[c].into());
            }
            if !s.is_integer() {
                return None;
            }
            x.push(i64::try_from(s.to_integer()).ok()?);
        }
        let mut back = vec![0; v.len()];
        for (xi, b) in x.iter().zip(&self.basis) {
            for (o, bb) in back.iter_mut().zip(b) {
                *o += xi * bb;
            }
        }
        (back == v).then_some(x)
    }
}

/// Row echelon form over ℤ of a generating set, for ℤ-span membership.
#[derive(Clone, Debug)]
pub struct ZSpan {
    rows: Vec<(usize, Vector)>,
    n: usize,
}

impl ZSpan {
    pub fn new(gens: &[Vector], n: usize) -> ZSpan {
        let mut work: Vec<Vector> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).cloned().collect();
        let mut rows = Vec::new();
        for col in 0..n {
            loop {
                let mut nz: Vec<usize> = (0..work.len()).filter(|&i| work[i][col] != 0).collect();
                if nz.len() <= 1 {
                    if let Some(&i) = nz.first() {
                        let mut r = work.swap_remove(i);
                        if r[col] < 0 {
                            r = vneg(&r);
                        }
                        rows.push((col, r));
                    }
                    break;
                }
                nz.sort_by_key(|&i| work[i][col].abs());
                let p = nz[0];
                let pv = work[p][col];
                for &i in &nz[1..] {
                    let f = work[i][col] / pv;
                    let pr = work[p].clone();
                    for (x, y) in work[i].iter_mut().zip(&pr) {
                        *x -= f * y;
                    }
                }
            }
            work.retain(|w| w.iter().any(|&x| x != 0));
        }
        ZSpan { rows, n }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut v = v.to_vec();
        let mut next = 0;
        for col in 0..self.n {
            if next < self.rows.len() && self.rows[next].0 == col {
                let (_, r) = &self.rows[next];
                if v[col] % r[col] != 0 {
                    return false;
                }
                let f = v[col] / r[col];
                for (x, y) in v.iter_mut().zip(r) {
                    *x -= f * y;
                }
                next += 1;
            } else if v[col] != 0 {
                return false;
            }
        }
        true
    }
}

/// Validate (A1)–(A5). Structural problems are reported as A3/A4 failures.
pub fn check_assumptions(spec: &QuadrupleSpec) -> AssumptionReport {
    let mut checks = Vec::new();
    checks.push(AssumptionCheck {
        name: "A1",
        passed: true,
        witness: None,
        detail: format!("Γ is modelled by {} free generators", spec.l),
    });
    if let Err(e) = check_structure(spec) {
        for name in ["A2", "A3", "A4", "A5"] {
            checks.push(AssumptionCheck { name, passed: false, witness: None, detail: format!("{e}") });
        }
        return AssumptionReport { checks };
    }
    let b = &spec.q_basis;
    let nu = |v: &[i64]| apply_signed_perm(&spec.sigma, &spec.iota, v);
    let nu_pow = |r: u32, v: &[i64]| (0..r).fold(v.to_vec(), |acc, _| nu(&acc));

    let mut a2 = AssumptionCheck { name: "A2", passed: true, witness: None, detail: "Q is even".into() };
    'outer: for i in 0..b.len() {
        for j in i..b.len() {
            let v = if i == j { b[i].clone() } else { vadd(&b[i], &b[j]) };
            if inner(&v, &v).rem_euclid(2) != 0 {
                a2 = AssumptionCheck { name: "A2", passed: false, detail: format!("<v,v> = {} is odd", inner(&v, &v)), witness: Some(v) };
                break 'outer;
            }
        }
    }
    checks.push(a2);

    let solver = Solver::new(b).expect("checked independent");
    let mut a3 = AssumptionCheck { name: "A3", passed: true, witness: None, detail: "ν(Q) = Q".into() };
    for v in b {
        let w = nu(v);
        if solver.coords(&w).is_none() {
            a3 = AssumptionCheck { name: "A3", passed: false, detail: "ν(v) leaves Q".into(), witness: Some(v.clone()) };
            break;
        }
    }
    checks.push(a3);

    let mut a4 = AssumptionCheck { name: "A4", passed: true, witness: None, detail: format!("ν^{} = Id", spec.m) };
    for i in 0..spec.n {
        let mut e = vec![0; spec.n];
        e[i] = 1;
        if nu_pow(spec.m, &e) != e {
            a4 = AssumptionCheck { name: "A4", passed: false, detail: "ν^m moves a basis vector".into(), witness: Some(e) };
            break;
        }
    }
    checks.push(a4);

    let mut a5 = AssumptionCheck { name: "A5", passed: true, witness: None, detail: "vacuous for odd m".into() };
    if spec.m % 2 == 0 {
        a5.detail = "<ν^{m/2}v, v> even".into();
        'outer5: for i in 0..b.len() {
            for j in i..b.len() {
                let v = if i == j { b[i].clone() } else { vadd(&b[i], &b[j]) };
                let x = inner(&nu_pow(spec.m / 2, &v), &v);
                if x.rem_euclid(2) != 0 {
                    a5 = AssumptionCheck { name: "A5", passed: false, detail: format!("<ν^(m/2)v, v> = {x} is odd"), witness: Some(v) };
                    break 'outer5;
                }
            }
        }
    }
    checks.push(a5);
    AssumptionReport { checks }
}

/// A validated quadruple with its constant tables.
#[derive(Clone, Debug)]
pub struct Quadruple {
    spec: QuadrupleSpec,
    m0: u32,
    ring: Ring,
    solver: Solver,
    /// nu_idx[r][i] = ν^r(ε_i) as a signed index.
    nu_idx: Vec<Vec<SIdx>>,
    /// ε_C on ordered Q-basis pairs, as ζ_L exponents.
    eps_c: Vec<Vec<i64>>,
}

impl Quadruple {
    /// Validate and build with the default upper-triangular ε_C.
    pub fn new(spec: QuadrupleSpec) -> Result<Quadruple, LatticeError> {
        Quadruple::with_epsilon_c(spec, None)
    }

    /// Validate and build; `eps_c` optionally overrides ε_C on basis pairs,
    /// given as powers of ω₀.
    pub fn with_epsilon_c(spec: QuadrupleSpec, eps_c: Option<Vec<Vec<i64>>>) -> Result<Quadruple, LatticeError> {
        check_structure(&spec)?;
        let rep = check_assumptions(&spec);
        if let Some(c) = rep.checks.iter().find(|c| !c.passed) {
            return Err(LatticeError::Assumption(c.name));
        }
        let m0 = m0_of(spec.m);
        if spec.conductor % m0 != 0 {
            return Err(LatticeError::ConductorTooSmall { conductor: spec.conductor, needed: m0 });
        }
        let mut nu_idx = Vec::with_capacity(spec.m as usize);
        let mut cur: Vec<SIdx> = (0..spec.n).map(|i| SIdx::new(1, i)).collect();
        for _ in 0..spec.m {
            nu_idx.push(cur.clone());
            cur = cur.iter().map(|s| SIdx::new(s.sign * spec.iota[s.idx], spec.sigma[s.idx])).collect();
        }
        let ring = Ring::new(spec.conductor, spec.l);
        let solver = Solver::new(&spec.q_basis).expect("checked independent");
        let k = spec.q_basis.len();
        let mut q = Quadruple { spec, m0, ring, solver, nu_idx, eps_c: vec![vec![0; k]; k] };
        let lm = (q.spec.conductor / m0) as i64;
        let b = q.spec.q_basis.clone();
        for bi in &b {
            if q.c_exp(bi, bi) != 0 {
                return Err(LatticeError::SelfCommutator(bi.clone()));
            }
        }
        let table = match eps_c {
            Some(t) => {
                if t.len() != k || t.iter().any(|r| r.len() != k) {
                    return Err(LatticeError::Malformed("epsilon_C override has wrong shape".into()));
                }
                t.iter().map(|r| r.iter().map(|x| q.modl(x * lm)).collect()).collect()
            }
            None => (0..k).map(|i| (0..k).map(|j| if i > j { q.c_exp(&b[i], &b[j]) } else { 0 }).collect()).collect(),
        };
        q.eps_c = table;
        for i in 0..k {
            for j in 0..k {
                if q.modl(q.eps_c[i][j] - q.eps_c[j][i]) != q.c_exp(&b[i], &b[j]) {
                    return Err(LatticeError::BadEpsilonC(i, j));
                }
            }
        }
        Ok(q)
    }

    pub fn spec(&self) -> &QuadrupleSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn m(&self) -> u32 {
        self.spec.m
    }

    pub fn m0(&self) -> u32 {
        self.m0
    }

    pub fn l(&self) -> usize {
        self.spec.l
    }

    pub fn conductor(&self) -> u32 {
        self.spec.conductor
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn q_basis(&self) -> &[Vector] {
        &self.spec.q_basis
    }

    pub fn modl(&self, x: i64) -> i64 {
        x.rem_euclid(self.spec.conductor as i64)
    }

    /// ζ_L exponent of ω^k.
    pub fn omega_exp(&self, k: i64) -> i64 {
        self.modl(k * (self.spec.conductor / self.spec.m) as i64)
    }

    /// ζ_L exponent of ω₀^k.
    pub fn omega0_exp(&self, k: i64) -> i64 {
        self.modl(k * (self.spec.conductor / self.m0) as i64)
    }

    /// ζ_L exponent of −1.
    pub fn minus_one_exp(&self) -> i64 {
        (self.spec.conductor / 2) as i64
    }

    /// The scalar ζ_L^k.
    pub fn root(&self, k: i64) -> Scalar {
        self.ring.zeta(k)
    }

    pub fn omega(&self, k: i64) -> Scalar {
        self.ring.zeta(self.omega_exp(k))
    }

    /// Γ-element c as a scalar; `half` selects c^{1/2}.
    pub fn gamma_scalar(&self, c: &[i32], power_num: i64, power_den: i64) -> Scalar {
        debug_assert!(power_den == 1 || power_den == 2);
        let k = 2 / power_den;
        let e: Vec<i32> = c.iter().map(|&x| x * (k * power_num) as i32).collect();
        self.ring.s_mono(&e)
    }

    pub fn nu(&self, v: &[i64]) -> Vector {
        apply_signed_perm(&self.spec.sigma, &self.spec.iota, v)
    }

    /// ν^r for any integer r.
    pub fn nu_pow(&self, r: i64, v: &[i64]) -> Vector {
        let r = r.rem_euclid(self.spec.m as i64) as usize;
        let mut out = vec![0; v.len()];
        for (i, &x) in v.iter().enumerate() {
            let s = self.nu_idx[r][i];
            out[s.idx] += s.sign as i64 * x;
        }
        out
    }

    /// Signed index ν^r(ρ ε_i), i.e. the letter ρ i_r.
    pub fn sidx_r(&self, s: SIdx, r: i64) -> SIdx {
        let r = r.rem_euclid(self.spec.m as i64) as usize;
        let t = self.nu_idx[r][s.idx];
        SIdx::new(t.sign * s.sign, t.idx)
    }

    pub fn jindex_r(&self, j: JIndex, r: i64) -> JIndex {
        JIndex::new(self.sidx_r(j.a, r), self.sidx_r(j.b, r))
    }

    /// Σ_{p ∈ ℤ_m} ν^p v.
    pub fn orbit_sum(&self, v: &[i64]) -> Vector {
        let mut out = vec![0; v.len()];
        for p in 0..self.spec.m as i64 {
            out = vadd(&out, &self.nu_pow(p, v));
        }
        out
    }

    pub fn coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        self.solver.coords(v)
    }

    pub fn in_q(&self, v: &[i64]) -> bool {
        self.coords(v).is_some()
    }

    pub fn jvector(&self, j: JIndex) -> Vector {
        vsub(&j.a.vector(self.n()), &j.b.vector(self.n()))
    }

    pub fn is_j(&self, j: JIndex) -> bool {
        self.in_q(&self.jvector(j))
    }

    /// All (ρ_i i, ρ_j j) with ρ_iε_i − ρ_jε_j ∈ Q, in index order.
    pub fn enumerate_j(&self) -> Vec<JIndex> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for si in [-1i8, 1] {
                for j in 0..n {
                    for sj in [-1i8, 1] {
                        let jj = JIndex::new(SIdx::new(si, i), SIdx::new(sj, j));
                        if self.is_j(jj) {
                            out.push(jj);
                        }
                    }
                }
            }
        }
        out
    }

    /// C(α,β) = ∏_p (−ω^{−p})^{⟨α,ν^pβ⟩} as a ζ_L exponent. Defined on all of P.
    pub fn c_exp(&self, a: &[i64], b: &[i64]) -> i64 {
        let half = self.minus_one_exp();
        let mut e = 0;
        for p in 0..self.spec.m as i64 {
            let k = inner(a, &self.nu_pow(p, b));
            e += k * (half + self.omega_exp(-p));
        }
        self.modl(e)
    }

    fn coords_or_err(&self, v: &[i64]) -> Result<Vec<i64>, LatticeError> {
        self.coords(v).ok_or_else(|| LatticeError::NotInQ(v.to_vec()))
    }

    /// ε_C(α,β) as a ζ_L exponent, extended bimultiplicatively from the basis table.
    pub fn eps_c_exp(&self, a: &[i64], b: &[i64]) -> Result<i64, LatticeError> {
        let x = self.coords_or_err(a)?;
        let y = self.coords_or_err(b)?;
        let mut e = 0;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                e += xi * yj * self.eps_c[i][j];
            }
        }
        Ok(self.modl(e))
    }

    pub fn eps_c_table(&self) -> &[Vec<i64>] {
        &self.eps_c
    }

    /// ε′(α,β) = ∏_{−m/2<p<0} (−ω^p)^{⟨α,ν^pβ⟩} as a ζ_L exponent.
    pub fn eps_prime_exp(&self, a: &[i64], b: &[i64]) -> i64 {
        let m = self.spec.m as i64;
        let half = self.minus_one_exp();
        let mut e = 0;
        for p in -m..0 {
            if 2 * p > -m {
                let k = inner(a, &self.nu_pow(p, b));
                e += k * (half + self.omega_exp(p));
            }
        }
        self.modl(e)
    }

    /// ε = ε′ε_C as a ζ_L exponent.
    pub fn eps_exp(&self, a: &[i64], b: &[i64]) -> Result<i64, LatticeError> {
        Ok(self.modl(self.eps_prime_exp(a, b) + self.eps_c_exp(a, b)?))
    }

    fn one_minus_omega_pow(&self, p: i64, e: i64) -> Scalar {
        let base = &self.ring.one() - &self.omega(p);
        base.pow(e).expect("1 - ω^p is nonzero for 0 < p < m")
    }

    /// ζ′(α) = ∏_{0<p<m/2} (1−ω^p)^{⟨α,ν^pα⟩}.
    pub fn zeta_prime(&self, a: &[i64]) -> Scalar {
        let m = self.spec.m as i64;
        let mut acc = self.ring.one();
        for p in 1..m {
            if 2 * p < m {
                let k = inner(a, &self.nu_pow(p, a));
                if k != 0 {
                    acc = &acc * &self.one_minus_omega_pow(p, k);
                }
            }
        }
        acc
    }

    /// ζ(α); for even m this carries the extra factor 2^{⟨α,ν^{m/2}α⟩/2}.
    pub fn zeta(&self, a: &[i64]) -> Scalar {
        let z = self.zeta_prime(a);
        if self.spec.m % 2 != 0 {
            return z;
        }
        let k = inner(a, &self.nu_pow(self.spec.m as i64 / 2, a));
        debug_assert!(k % 2 == 0);
        &z * &self.ring.int(2).pow(k / 2).expect("2 is invertible")
    }

    /// κ(ρ_i i, ρ_j j, c), with the zero-exponent convention.
    pub fn kappa(&self, j: JIndex, c: &[i32]) -> Result<Scalar, LatticeError> {
        if j.is_diagonal() && gamma_is_one(c) {
            return Err(LatticeError::KappaDiagonal);
        }
        let n = self.n();
        let a = j.a.vector(n);
        let b = j.b.vector(n);
        let cs = self.gamma_scalar(c, 1, 1);
        let mut acc = self.ring.one();
        for p in 0..self.spec.m as i64 {
            let k = inner(&a, &self.nu_pow(p, &b));
            if k == 0 {
                continue;
            }
            let f = &self.ring.one() - &(&cs * &self.omega(p));
            let t = f.pow(-k).expect("κ denominator vanishes only on the excluded diagonal");
            acc = &acc * &t;
            if p > 0 {
                acc = &acc * &self.one_minus_omega_pow(p, k);
            }
        }
        Ok(acc)
    }

    /// The letters of a σ-orbit, for orbit enumeration in the Fock module.
    pub fn sigma_orbit(&self, i: usize) -> Vec<usize> {
        let mut out = vec![i];
        let mut x = self.spec.sigma[i];
        while x != i {
            out.push(x);
            x = self.spec.sigma[x];
        }
        out
    }
}

/// lcm of two positive integers.
pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> QuadrupleSpec {
        QuadrupleSpec { n: 2, q_basis: vec![vec![1, -1]], sigma: vec![0, 1], iota: vec![1, 1], m: 1, l: 1, conductor: 2 }
    }

    #[test]
    fn odd_lattice_fails_a2() {
        let spec = QuadrupleSpec { n: 1, q_basis: vec![vec![1]], sigma: vec![0], iota: vec![1], m: 1, l: 1, conductor: 2 };
        let rep = check_assumptions(&spec);
        let a2 = rep.get("A2").unwrap();
        assert!(!a2.passed);
        assert_eq!(a2.witness, Some(vec![1]));
    }

    #[test]
    fn d1_minus_identity_passes() {
        let spec = QuadrupleSpec { n: 1, q_basis: vec![vec![2]], sigma: vec![0], iota: vec![-1], m: 2, l: 1, conductor: 2 };
        assert!(check_assumptions(&spec).all_pass());
    }

    #[test]
    fn j_set_of_a1() {
        let q = Quadruple::new(a1()).unwrap();
        assert_eq!(q.enumerate_j().len(), 8);
    }

    #[test]
    fn kappa_m1_diagonal() {
        let q = Quadruple::new(a1()).unwrap();
        let j = JIndex::new(SIdx::new(1, 0), SIdx::new(1, 0));
        let r = q.ring();
        let expect = r.one().div(&(&r.one() - &r.s_mono(&[2]))).unwrap();
        assert_eq!(q.kappa(j, &[1]).unwrap(), expect);
        assert!(q.kappa(j, &[0]).is_err());
        let off = JIndex::new(SIdx::new(1, 0), SIdx::new(1, 1));
        assert!(q.kappa(off, &[0]).unwrap().is_one());
    }
}
