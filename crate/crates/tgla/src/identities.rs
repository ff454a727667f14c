//! Partial-fraction and formal δ-function identities behind the commutator
//! computation, checked exactly over fields of rational functions.
//!
//! Rational identities are compared as elements of ℚ(t₁,…,t_n,s). Formal
//! distributions are compared coefficient by coefficient on a window [−D, D]
//! with [`TwoSidedSeries`], which tracks which coefficients are exactly known.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{inner, Quadruple, Vector};
use crate::scalars::{Ring, Scalar, ScalarError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("product mixes expansions in z and z^-1 with infinitely many contributing terms")]
    Direction,
    #[error("coefficient of z^{0} is not determined by the computed window")]
    WindowTooSmall(i64),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A formal series Σ c_k z^k of which the coefficients on `known` are exact.
/// Outside the optional support bounds every coefficient is zero.
#[derive(Clone, Debug)]
pub struct TwoSidedSeries {
    coeffs: BTreeMap<i64, Scalar>,
    known: (i64, i64),
    lower: Option<i64>,
    upper: Option<i64>,
    ring: Ring,
}

/// Generalized binomial coefficient a(a−1)…(a−k+1)/k!.
pub fn binomial(a: i64, k: u32) -> i64 {
    let mut c: i64 = 1;
    for i in 0..k as i64 {
        c = c * (a - i) / (i + 1);
    }
    c
}

impl TwoSidedSeries {
    fn new(ring: &Ring, known: (i64, i64), lower: Option<i64>, upper: Option<i64>) -> TwoSidedSeries {
        TwoSidedSeries { coeffs: BTreeMap::new(), known, lower, upper, ring: ring.clone() }
    }

    fn set(&mut self, k: i64, c: Scalar) {
        if c.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
    }

    /// A Laurent polynomial.
    pub fn laurent(ring: &Ring, terms: &[(i64, Scalar)]) -> TwoSidedSeries {
        let lo = terms.iter().map(|t| t.0).min().unwrap_or(0);
        let hi = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut s = TwoSidedSeries::new(ring, (lo, hi), Some(lo), Some(hi));
        for (k, c) in terms {
            let prev = s.coeffs.get(k).cloned().unwrap_or_else(|| ring.zero());
            s.set(*k, &prev + c);
        }
        s
    }

    pub fn monomial(ring: &Ring, k: i64, c: Scalar) -> TwoSidedSeries {
        TwoSidedSeries::laurent(ring, &[(k, c)])
    }

    /// δ(az) = Σ aⁿzⁿ on [lo, hi].
    pub fn delta(ring: &Ring, a: &Scalar, lo: i64, hi: i64) -> Result<TwoSidedSeries, SeriesError> {
        let mut s = TwoSidedSeries::new(ring, (lo, hi), None, None);
        for n in lo..=hi {
            s.set(n, a.pow(n)?);
        }
        Ok(s)
    }

    /// (Dδ)(az) = Σ n aⁿzⁿ on [lo, hi].
    pub fn delta_derivative(ring: &Ring, a: &Scalar, lo: i64, hi: i64) -> Result<TwoSidedSeries, SeriesError> {
        Ok(TwoSidedSeries::delta(ring, a, lo, hi)?.derivative())
    }

    /// (1 − tz)^a expanded in nonnegative powers of z, exact up to z^upto.
    pub fn binomial_in_z(ring: &Ring, t: &Scalar, a: i64, upto: i64) -> Result<TwoSidedSeries, SeriesError> {
        let top = if a >= 0 { a.min(upto) } else { upto };
        let mut s = TwoSidedSeries::new(ring, (0, upto.max(0)), Some(0), if a >= 0 { Some(a) } else { None });
        let mt = -t;
        for k in 0..=top {
            s.set(k, &ring.int(binomial(a, k as u32)) * &mt.pow(k)?);
        }
        Ok(s)
    }

    /// (1 − t⁻¹z⁻¹)^a expanded in nonpositive powers of z, exact down to z^downto.
    pub fn binomial_in_z_inv(ring: &Ring, t: &Scalar, a: i64, downto: i64) -> Result<TwoSidedSeries, SeriesError> {
        let depth = if a >= 0 { a.min(-downto) } else { -downto };
        let mut s = TwoSidedSeries::new(ring, (downto.min(0), 0), if a >= 0 { Some(-a) } else { None }, Some(0));
        let mt = -&t.inv()?;
        for k in 0..=depth {
            s.set(-k, &ring.int(binomial(a, k as u32)) * &mt.pow(k)?);
        }
        Ok(s)
    }

    pub fn coeff(&self, k: i64) -> Result<Scalar, SeriesError> {
        if !self.is_known(k) {
            return Err(SeriesError::WindowTooSmall(k));
        }
        Ok(self.coeffs.get(&k).cloned().unwrap_or_else(|| self.ring.zero()))
    }

    pub fn is_known(&self, k: i64) -> bool {
        (self.known.0..=self.known.1).contains(&k) || self.lower.is_some_and(|l| k < l) || self.upper.is_some_and(|u| k > u)
    }

    pub fn known_range(&self) -> (i64, i64) {
        self.known
    }

    /// Support bounds; `None` on a side where the series may be infinite.
    pub fn support(&self) -> (Option<i64>, Option<i64>) {
        (self.lower, self.upper)
    }

    fn is_finite(&self) -> bool {
        self.lower.is_some() && self.upper.is_some()
    }

    /// The largest run of known coefficients among the candidates, preferring the one containing 0.
    fn known_run(cands: (i64, i64), ok: impl Fn(i64) -> bool) -> (i64, i64) {
        let mut best: Option<(i64, i64)> = None;
        let mut k = cands.0;
        while k <= cands.1 {
            if !ok(k) {
                k += 1;
                continue;
            }
            let start = k;
            while k + 1 <= cands.1 && ok(k + 1) {
                k += 1;
            }
            let run = (start, k);
            let better = match best {
                None => true,
                Some(b) => (run.0 <= 0 && 0 <= run.1) || (!(b.0 <= 0 && 0 <= b.1) && run.1 - run.0 > b.1 - b.0),
            };
            if better {
                best = Some(run);
            }
            k += 1;
        }
        best.unwrap_or((1, 0))
    }

    fn span(&self) -> (i64, i64) {
        (self.lower.map_or(self.known.0, |l| l.min(self.known.0)), self.upper.map_or(self.known.1, |u| u.max(self.known.1)))
    }

    fn combine(&self, o: &TwoSidedSeries, sign: i64) -> TwoSidedSeries {
        let (a, b) = (self.span(), o.span());
        let known = Self::known_run((a.0.min(b.0), a.1.max(b.1)), |k| self.is_known(k) && o.is_known(k));
        let lower = self.lower.zip(o.lower).map(|(x, y)| x.min(y));
        let upper = self.upper.zip(o.upper).map(|(x, y)| x.max(y));
        let mut s = TwoSidedSeries::new(&self.ring, known, lower, upper);
        let f = self.ring.int(sign);
        for k in known.0..=known.1 {
            let x = self.coeffs.get(&k).cloned().unwrap_or_else(|| self.ring.zero());
            let y = o.coeffs.get(&k).cloned().unwrap_or_else(|| self.ring.zero());
            s.set(k, &x + &(&f * &y));
        }
        s
    }

    pub fn add(&self, o: &TwoSidedSeries) -> TwoSidedSeries {
        self.combine(o, 1)
    }

    pub fn sub(&self, o: &TwoSidedSeries) -> TwoSidedSeries {
        self.combine(o, -1)
    }

    pub fn scale(&self, f: &Scalar) -> TwoSidedSeries {
        let mut s = TwoSidedSeries::new(&self.ring, self.known, self.lower, self.upper);
        for (k, c) in &self.coeffs {
            s.set(*k, c * f);
        }
        s
    }

    /// Multiplication by z^d.
    pub fn shift(&self, d: i64) -> TwoSidedSeries {
        let mut s = TwoSidedSeries::new(&self.ring, (self.known.0 + d, self.known.1 + d), self.lower.map(|x| x + d), self.upper.map(|x| x + d));
        s.coeffs = self.coeffs.iter().map(|(k, c)| (k + d, c.clone())).collect();
        s
    }

    /// D_z = z d/dz.
    pub fn derivative(&self) -> TwoSidedSeries {
        let mut s = TwoSidedSeries::new(&self.ring, self.known, self.lower, self.upper);
        for (k, c) in &self.coeffs {
            s.set(*k, &self.ring.int(*k) * c);
        }
        s
    }

    /// Genuine series product, defined when each coefficient is a finite sum.
    pub fn mul(&self, o: &TwoSidedSeries) -> Result<TwoSidedSeries, SeriesError> {
        let ok = self.is_finite() || o.is_finite() || (self.lower.is_some() && o.lower.is_some()) || (self.upper.is_some() && o.upper.is_some());
        if !ok {
            return Err(SeriesError::Direction);
        }
        let (a, b) = (self.span(), o.span());
        // Contributing p for the coefficient of z^k.
        let range = |k: i64| {
            let lo = match (self.lower, o.upper) {
                (Some(x), Some(y)) => x.max(k - y),
                (Some(x), None) => x,
                (None, Some(y)) => k - y,
                (None, None) => unreachable!(),
            };
            let hi = match (self.upper, o.lower) {
                (Some(x), Some(y)) => x.min(k - y),
                (Some(x), None) => x,
                (None, Some(y)) => k - y,
                (None, None) => unreachable!(),
            };
            (lo, hi)
        };
        let computable = |k: i64| {
            let (lo, hi) = range(k);
            (lo..=hi).all(|p| self.is_known(p) && o.is_known(k - p))
        };
        let known = Self::known_run((a.0 + b.0, a.1 + b.1), computable);
        let lower = self.lower.zip(o.lower).map(|(x, y)| x + y);
        let upper = self.upper.zip(o.upper).map(|(x, y)| x + y);
        let mut s = TwoSidedSeries::new(&self.ring, known, lower, upper);
        for k in known.0..=known.1 {
            let (lo, hi) = range(k);
            let mut acc = self.ring.zero();
            for p in lo..=hi {
                if let (Some(x), Some(y)) = (self.coeffs.get(&p), o.coeffs.get(&(k - p))) {
                    acc = &acc + &(x * y);
                }
            }
            s.set(k, acc);
        }
        Ok(s)
    }

    /// Exponents in [lo, hi] where the two series differ.
    pub fn mismatches(&self, o: &TwoSidedSeries, lo: i64, hi: i64) -> Result<Vec<i64>, SeriesError> {
        let mut out = Vec::new();
        for k in lo..=hi {
            if self.coeff(k)? != o.coeff(k)? {
                out.push(k);
            }
        }
        Ok(out)
    }
}

/// Outcome of one identity instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub pass: bool,
    /// Exponents where the two sides differ (empty for rational identities).
    pub mismatches: Vec<i64>,
}

impl IdentityOutcome {
    fn rational(pass: bool) -> IdentityOutcome {
        IdentityOutcome { pass, mismatches: Vec::new() }
    }

    fn series(mismatches: Vec<i64>) -> IdentityOutcome {
        IdentityOutcome { pass: mismatches.is_empty(), mismatches }
    }
}

/// Partial-fraction identities in fresh symbols t₁,…,t_n, s.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RationalIdentity {
    /// Σ_i ∏_{j≠i} t_i/(t_i−t_j) · s/(s−t_i) = ∏ s/(s−t_i).
    PartialFractionS,
    /// Σ_i ∏_{j≠i} t_j/(t_i−t_j) · t_i/(s−t_i) = ∏ t_i/(s−t_i).
    PartialFractionT,
    /// The squared version of `PartialFractionS`.
    SquaredS,
    /// The squared version of `PartialFractionT`.
    SquaredT,
    /// ∏ (s/(s−t_i))^{a_i} with a_i ∈ {1, 2} as a sum of simple and double poles.
    MixedPowersS,
    /// ∏ (t_i/(s−t_i))^{a_i} with a_i ∈ {1, 2}.
    MixedPowersT,
}

impl RationalIdentity {
    pub const ALL: [RationalIdentity; 6] = [
        RationalIdentity::PartialFractionS,
        RationalIdentity::PartialFractionT,
        RationalIdentity::SquaredS,
        RationalIdentity::SquaredT,
        RationalIdentity::MixedPowersS,
        RationalIdentity::MixedPowersT,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RationalIdentity::PartialFractionS => "partial_fraction_s",
            RationalIdentity::PartialFractionT => "partial_fraction_t",
            RationalIdentity::SquaredS => "squared_s",
            RationalIdentity::SquaredT => "squared_t",
            RationalIdentity::MixedPowersS => "mixed_powers_s",
            RationalIdentity::MixedPowersT => "mixed_powers_t",
        }
    }

    pub fn takes_profile(self) -> bool {
        matches!(self, RationalIdentity::MixedPowersS | RationalIdentity::MixedPowersT)
    }
}

/// ℚ with n + 1 variables: t_i = var(i), s = var(n).
pub fn symbol_ring(n: usize) -> Ring {
    Ring::new(1, n + 1)
}

/// Denominator factors met by the identities, registered up to sign.
#[derive(Clone, Debug, Default)]
pub struct Factors {
    polys: Vec<Scalar>,
}

/// num / ∏ factor^e over the factors of a [`Factors`] table.
#[derive(Clone, Debug)]
pub struct Factored {
    num: Scalar,
    den: BTreeMap<usize, u32>,
}

impl Factors {
    fn id(&mut self, x: &Scalar) -> (usize, bool) {
        let neg = -x;
        for (i, p) in self.polys.iter().enumerate() {
            if p == x {
                return (i, false);
            }
            if *p == neg {
                return (i, true);
            }
        }
        self.polys.push(x.clone());
        (self.polys.len() - 1, false)
    }

    /// x^{−e}; constants and monomials are inverted directly.
    pub fn inverse(&mut self, x: &Scalar, e: u32) -> Result<Factored, ScalarError> {
        let unit = x.den().is_one() && x.num().len() == 1;
        if unit {
            return Ok(Factored::poly(x.pow(-i64::from(e))?));
        }
        let (id, neg) = self.id(x);
        let sign = if neg && e % 2 == 1 { -&x.one_like() } else { x.one_like() };
        Ok(Factored { num: sign, den: BTreeMap::from([(id, e)]) })
    }

    fn power(&self, id: usize, e: u32) -> Scalar {
        let mut p = self.polys[id].one_like();
        for _ in 0..e {
            p = &p * &self.polys[id];
        }
        p
    }
}

impl Factored {
    pub fn poly(x: Scalar) -> Factored {
        Factored { num: x, den: BTreeMap::new() }
    }

    pub fn mul(&self, o: &Factored) -> Factored {
        let mut den = self.den.clone();
        for (k, e) in &o.den {
            *den.entry(*k).or_insert(0) += e;
        }
        Factored { num: &self.num * &o.num, den }
    }

    pub fn scale(&self, x: &Scalar) -> Factored {
        Factored { num: &self.num * x, den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> Factored {
        let mut r = Factored::poly(self.num.one_like());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Numerators of both over the least common denominator.
    fn common(&self, o: &Factored, f: &Factors) -> (Scalar, Scalar, BTreeMap<usize, u32>) {
        let mut den = self.den.clone();
        for (k, e) in &o.den {
            let x = den.entry(*k).or_insert(0);
            *x = (*x).max(*e);
        }
        let lift = |x: &Factored| {
            let mut n = x.num.clone();
            for (k, e) in &den {
                let have = x.den.get(k).copied().unwrap_or(0);
                if *e > have {
                    n = &n * &f.power(*k, e - have);
                }
            }
            n
        };
        (lift(self), lift(o), den)
    }

    pub fn add(&self, o: &Factored, f: &Factors) -> Factored {
        let (a, b, den) = self.common(o, f);
        Factored { num: &a + &b, den }
    }

    pub fn equals(&self, o: &Factored, f: &Factors) -> bool {
        let (a, b, _) = self.common(o, f);
        a == b
    }

    pub fn to_scalar(&self, f: &Factors) -> Result<Scalar, ScalarError> {
        let mut d = self.num.one_like();
        for (k, e) in &self.den {
            d = &d * &f.power(*k, *e);
        }
        self.num.div(&d)
    }
}

fn fsum(ring: &Ring, f: &Factors, xs: impl IntoIterator<Item = Factored>) -> Factored {
    xs.into_iter().fold(Factored::poly(ring.zero()), |acc, x| acc.add(&x, f))
}

fn fprod(ring: &Ring, xs: impl IntoIterator<Item = Factored>) -> Factored {
    xs.into_iter().fold(Factored::poly(ring.one()), |acc, x| acc.mul(&x))
}

/// Both sides of a rational identity over a shared factor table; `profile` is used by the mixed-power ones.
pub fn rational_sides(id: RationalIdentity, n: usize, profile: &[i64]) -> Result<(Factored, Factored, Factors), ScalarError> {
    let ring = symbol_ring(n);
    let mut f = Factors::default();
    let t: Vec<Scalar> = (0..n).map(|i| ring.var(i)).collect();
    let s = ring.var(n);
    let one = Factored::poly(ring.one());
    // s/(s−t_i) and t_i/(s−t_i).
    let mut inv_st = Vec::new();
    for ti in &t {
        inv_st.push(f.inverse(&(&s - ti), 1)?);
    }
    let fs: Vec<Factored> = inv_st.iter().map(|x| x.scale(&s)).collect();
    let ft: Vec<Factored> = inv_st.iter().zip(&t).map(|(x, ti)| x.scale(ti)).collect();
    // t_i/(t_i−t_j) and t_j/(t_i−t_j).
    let mut inv_tt = BTreeMap::new();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            inv_tt.insert((i, j), f.inverse(&(&t[i] - &t[j]), 1)?);
        }
    }
    let ri = |i: usize, j: usize| inv_tt[&(i, j)].scale(&t[i]);
    let rj = |i: usize, j: usize| inv_tt[&(i, j)].scale(&t[j]);
    let others = |i: usize| (0..n).filter(move |&j| j != i);
    let (lhs, rhs) = match id {
        RationalIdentity::PartialFractionS | RationalIdentity::SquaredS | RationalIdentity::PartialFractionT | RationalIdentity::SquaredT => {
            let on_s = matches!(id, RationalIdentity::PartialFractionS | RationalIdentity::SquaredS);
            let squared = matches!(id, RationalIdentity::SquaredS | RationalIdentity::SquaredT);
            let base = if on_s { &fs } else { &ft };
            let e = if squared { 2 } else { 1 };
            let terms: Vec<Factored> = (0..n)
                .map(|i| {
                    let c = fprod(&ring, others(i).map(|j| if on_s { ri(i, j) } else { rj(i, j) }));
                    c.mul(&base[i].pow(e))
                })
                .collect();
            let lhs = fsum(&ring, &f, terms);
            let p = fprod(&ring, base.iter().cloned());
            let rhs = match (squared, on_s) {
                (false, _) => p,
                (true, true) => one.add(&fsum(&ring, &f, ft.iter().cloned()), &f).mul(&p),
                (true, false) => fsum(&ring, &f, fs.iter().cloned()).add(&Factored::poly(-&ring.one()), &f).mul(&p),
            };
            (lhs, rhs)
        }
        RationalIdentity::MixedPowersS | RationalIdentity::MixedPowersT => {
            let on_s = id == RationalIdentity::MixedPowersS;
            let base = if on_s { &fs } else { &ft };
            let lhs = fprod(&ring, (0..n).map(|i| base[i].pow(profile[i] as u32)));
            let mut rhs = Factored::poly(ring.zero());
            for i in 0..n {
                let c = fprod(&ring, others(i).map(|j| if on_s { ri(i, j) } else { rj(i, j) }.pow(profile[j] as u32)));
                let term = if profile[i] == 1 {
                    base[i].clone()
                } else {
                    let double = inv_st[i].pow(2).scale(&(&s * &t[i]));
                    // Σ_j a_j t_j/(t_j−t_i) or Σ_j a_j t_i/(t_j−t_i), via 1/(t_j−t_i) = −1/(t_i−t_j).
                    let sum = fsum(&ring, &f, others(i).map(|j| {
                        let num = &ring.int(-profile[j]) * if on_s { &t[j] } else { &t[i] };
                        inv_tt[&(i, j)].scale(&num)
                    }));
                    let factor = if on_s { one.add(&sum, &f) } else { sum.add(&Factored::poly(-&ring.one()), &f) };
                    double.add(&factor.mul(&base[i]), &f)
                };
                rhs = rhs.add(&c.mul(&term), &f);
            }
            (lhs, rhs)
        }
    };
    Ok((lhs, rhs, f))
}

pub fn verify_rational(id: RationalIdentity, n: usize, profile: &[i64]) -> Result<IdentityOutcome, ScalarError> {
    let (l, r, f) = rational_sides(id, n, profile)?;
    Ok(IdentityOutcome::rational(l.equals(&r, &f)))
}


/// Formal-distribution identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistributionIdentity {
    /// ∏ (1−t_iz)^{−a_i}, a_i ∈ {1,2}, as a sum of simple and double poles, in powers of z.
    MixedPowersSeriesS,
    /// ∏ (t_iz/(1−t_iz))^{a_i}, a_i ∈ {1,2}, in powers of z.
    MixedPowersSeriesT,
    /// Expansion in z minus expansion in z⁻¹ of ∏ (1−t_iz)^{−a_i} as δ and Dδ terms.
    PoleDifference,
    /// f(z)δ(az) = f(a⁻¹)δ(az).
    DeltaSubstitution,
    /// f(z)(Dδ)(az) = f(a⁻¹)(Dδ)(az) − (D_zf)(a⁻¹)δ(az).
    DerivativeDeltaSubstitution,
    /// ∏(1−t_iz)^{a_i} − ∏(1−t_i⁻¹z⁻¹)^{a_i}(−t_iz)^{a_i}, a_i ≥ −2, as δ and Dδ terms.
    ProductDifference,
    /// F(z₁,z₂)δ(z₂/cz₁) = F(z₁,cz₁)δ(z₂/cz₁).
    TwoVariableDelta,
    /// F(z₁,z₂)(Dδ)(z₂/cz₁) = F(z₁,cz₁)(Dδ)(z₂/cz₁) − (D_{z₂}F)(z₁,cz₁)δ(z₂/cz₁).
    TwoVariableDerivativeDelta,
}

impl DistributionIdentity {
    pub const ALL: [DistributionIdentity; 8] = [
        DistributionIdentity::MixedPowersSeriesS,
        DistributionIdentity::MixedPowersSeriesT,
        DistributionIdentity::PoleDifference,
        DistributionIdentity::DeltaSubstitution,
        DistributionIdentity::DerivativeDeltaSubstitution,
        DistributionIdentity::ProductDifference,
        DistributionIdentity::TwoVariableDelta,
        DistributionIdentity::TwoVariableDerivativeDelta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DistributionIdentity::MixedPowersSeriesS => "mixed_powers_series_s",
            DistributionIdentity::MixedPowersSeriesT => "mixed_powers_series_t",
            DistributionIdentity::PoleDifference => "pole_difference",
            DistributionIdentity::DeltaSubstitution => "delta_substitution",
            DistributionIdentity::DerivativeDeltaSubstitution => "derivative_delta_substitution",
            DistributionIdentity::ProductDifference => "product_difference",
            DistributionIdentity::TwoVariableDelta => "two_variable_delta",
            DistributionIdentity::TwoVariableDerivativeDelta => "two_variable_derivative_delta",
        }
    }
}

/// Σ_{k≥1} t^k z^k (if `from_one`) or Σ_{k≥0} t^k z^k, optionally weighted by k, exact up to z^upto.
fn geometric(ring: &Ring, t: &Scalar, upto: i64, from_one: bool, weighted: bool) -> Result<TwoSidedSeries, SeriesError> {
    let start = i64::from(from_one);
    let mut s = TwoSidedSeries::new(ring, (0, upto), Some(0), None);
    for k in start..=upto {
        let w = if weighted { ring.int(k) } else { ring.one() };
        s.set(k, &w * &t.pow(k)?);
    }
    Ok(s)
}

fn product(ring: &Ring, factors: Vec<TwoSidedSeries>) -> Result<TwoSidedSeries, SeriesError> {
    let mut acc = TwoSidedSeries::monomial(ring, 0, ring.one());
    for f in factors {
        acc = acc.mul(&f)?;
    }
    Ok(acc)
}

/// Exponents in [lo, hi] where `lhs` differs from Σ w·S over the weighted series.
fn weighted_mismatches(ring: &Ring, f: &Factors, lhs: &TwoSidedSeries, terms: &[(Factored, TwoSidedSeries)], lo: i64, hi: i64) -> Result<Vec<i64>, SeriesError> {
    let mut out = Vec::new();
    for k in lo..=hi {
        let mut acc = Factored::poly(ring.zero());
        for (w, s) in terms {
            let c = s.coeff(k)?;
            if !c.is_zero() {
                acc = acc.add(&w.scale(&c), f);
            }
        }
        if !acc.equals(&Factored::poly(lhs.coeff(k)?), f) {
            out.push(k);
        }
    }
    Ok(out)
}

/// ∏_{j≠i} r(i, j)^{a_j} with r(i, j) = num(i, j)/den(i, j), for integer a_j of either sign.
fn weight(ring: &Ring, f: &mut Factors, n: usize, i: usize, a: &[i64], num: &dyn Fn(usize, usize) -> Scalar, den: &dyn Fn(usize, usize) -> Scalar) -> Result<Factored, ScalarError> {
    let mut c = Factored::poly(ring.one());
    for j in (0..n).filter(|&j| j != i) {
        let e = a[j].unsigned_abs() as u32;
        let (top, bottom) = if a[j] >= 0 { (num(i, j), den(i, j)) } else { (den(i, j), num(i, j)) };
        c = c.mul(&f.inverse(&bottom, e)?.scale(&top.pow(i64::from(e))?));
    }
    Ok(c)
}

/// 1 + Σ_{j≠i} a_j x_j/(t_j − t_i), with x_j = t_j (`at_j`) or t_i.
fn pole_factor(ring: &Ring, f: &mut Factors, t: &[Scalar], a: &[i64], i: usize, at_j: bool, plus_one: bool) -> Result<Factored, ScalarError> {
    let mut acc = Factored::poly(if plus_one { ring.one() } else { -&ring.one() });
    for j in (0..t.len()).filter(|&j| j != i) {
        let x = if at_j { &t[j] } else { &t[i] };
        let w = f.inverse(&(&t[j] - &t[i]), 1)?.scale(&(&ring.int(a[j]) * x));
        acc = acc.add(&w, f);
    }
    Ok(acc)
}

/// Partial-fraction expansion as series in z of ∏(1−t_iz)^{−a_i} (or ∏(t_iz/(1−t_iz))^{a_i}).
pub fn verify_mixed_series(ring: &Ring, t: &[Scalar], a: &[i64], on_s: bool, d: i64) -> Result<IdentityOutcome, SeriesError> {
    let n = t.len();
    let mut f = Factors::default();
    let base = |i: usize| geometric(ring, &t[i], d, !on_s, false);
    let lhs = product(ring, (0..n).map(|i| -> Result<_, SeriesError> { product(ring, vec![base(i)?; a[i] as usize]) }).collect::<Result<_, _>>()?)?;
    let mut terms = Vec::new();
    for i in 0..n {
        let c = if on_s {
            weight(ring, &mut f, n, i, a, &|i, _| t[i].clone(), &|i, j| &t[i] - &t[j])?
        } else {
            weight(ring, &mut f, n, i, a, &|_, j| t[j].clone(), &|i, j| &t[i] - &t[j])?
        };
        if a[i] == 2 {
            // t z/(1 − tz)² = Σ k t^k z^k.
            terms.push((c.clone(), geometric(ring, &t[i], d, true, true)?));
            let factor = pole_factor(ring, &mut f, t, a, i, on_s, on_s)?;
            terms.push((c.mul(&factor), base(i)?));
        } else {
            terms.push((c, base(i)?));
        }
    }
    Ok(IdentityOutcome::series(weighted_mismatches(ring, &f, &lhs, &terms, 0, d)?))
}

/// Σ_{a_i=−1} w_i δ(t_iz) + Σ_{a_i=−2} w_i[(Dδ)(t_iz) + b_i δ(t_iz)] as weighted series.
fn delta_terms(ring: &Ring, t: &[Scalar], a: &[i64], w: &[Factored], b: &[Option<Factored>], d: i64) -> Result<Vec<(Factored, TwoSidedSeries)>, SeriesError> {
    let mut terms = Vec::new();
    for i in 0..t.len() {
        let delta = TwoSidedSeries::delta(ring, &t[i], -d, d)?;
        match a[i] {
            -1 => terms.push((w[i].clone(), delta)),
            -2 => {
                terms.push((w[i].clone(), TwoSidedSeries::delta_derivative(ring, &t[i], -d, d)?));
                terms.push((w[i].mul(b[i].as_ref().expect("double pole factor")), delta));
            }
            _ => {}
        }
    }
    Ok(terms)
}

/// ∏(1−t_iz)^{−a_i} in z minus ∏(−t_i⁻¹z⁻¹/(1−t_i⁻¹z⁻¹))^{a_i} in z⁻¹, a_i ∈ {1,2}.
pub fn verify_pole_difference(ring: &Ring, t: &[Scalar], a: &[i64], d: i64) -> Result<IdentityOutcome, SeriesError> {
    let n = t.len();
    let mut f = Factors::default();
    let depth: i64 = d + a.iter().sum::<i64>();
    let mut up = Vec::new();
    let mut down = Vec::new();
    for i in 0..n {
        up.push(TwoSidedSeries::binomial_in_z(ring, &t[i], -a[i], d)?);
        // −t⁻¹z⁻¹/(1−t⁻¹z⁻¹) = −Σ_{k≥1} t^{−k}z^{−k}.
        let g = geometric(ring, &t[i].inv()?, depth, true, false)?;
        let mut refl = TwoSidedSeries::new(ring, (-depth, 0), None, Some(0));
        for (k, c) in &g.coeffs {
            refl.set(-k, -c);
        }
        down.push(product(ring, vec![refl; a[i] as usize])?);
    }
    let lhs = product(ring, up)?.sub(&product(ring, down)?);
    let mut w = Vec::new();
    let mut b = Vec::new();
    for i in 0..n {
        w.push(weight(ring, &mut f, n, i, a, &|i, _| t[i].clone(), &|i, j| &t[i] - &t[j])?);
        b.push(if a[i] == 2 { Some(pole_factor(ring, &mut f, t, a, i, true, true)?) } else { None });
    }
    let neg: Vec<i64> = a.iter().map(|x| -x).collect();
    let terms = delta_terms(ring, t, &neg, &w, &b, d)?;
    Ok(IdentityOutcome::series(weighted_mismatches(ring, &f, &lhs, &terms, -d, d)?))
}

/// ∏(1−t_iz)^{a_i} − ∏(1−t_i⁻¹z⁻¹)^{a_i}(−t_iz)^{a_i} against its δ, Dδ form, a_i ≥ −2.
pub fn verify_product_difference(ring: &Ring, t: &[Scalar], a: &[i64], d: i64) -> Result<IdentityOutcome, SeriesError> {
    let n = t.len();
    let mut f = Factors::default();
    let pos: i64 = a.iter().filter(|&&x| x > 0).sum();
    let mut up = Vec::new();
    let mut down = Vec::new();
    for i in 0..n {
        up.push(TwoSidedSeries::binomial_in_z(ring, &t[i], a[i], d + pos)?);
        let inv = TwoSidedSeries::binomial_in_z_inv(ring, &t[i], a[i], -d - 2 * pos - 4)?;
        let mono = TwoSidedSeries::monomial(ring, a[i], (-&t[i]).pow(a[i])?);
        down.push(inv.mul(&mono)?);
    }
    let lhs = product(ring, up)?.sub(&product(ring, down)?);
    // ∏_{j≠i}(1 − t_jt_i⁻¹)^{a_j} = ∏ ((t_i − t_j)/t_i)^{a_j}, and
    // 1 + Σ_j a_j(t_it_j⁻¹ − 1)⁻¹ = 1 + Σ_j a_j t_j/(t_i − t_j).
    let mut w = Vec::new();
    let mut b = Vec::new();
    for i in 0..n {
        w.push(weight(ring, &mut f, n, i, a, &|i, j| &t[i] - &t[j], &|i, _| t[i].clone())?);
        let mut acc = Factored::poly(ring.one());
        for j in (0..n).filter(|&j| j != i) {
            acc = acc.add(&f.inverse(&(&t[i] - &t[j]), 1)?.scale(&(&ring.int(a[j]) * &t[j])), &f);
        }
        b.push(Some(acc));
    }
    let terms = delta_terms(ring, t, a, &w, &b, d)?;
    Ok(IdentityOutcome::series(weighted_mismatches(ring, &f, &lhs, &terms, -d, d)?))
}


/// f(a⁻¹) for a Laurent polynomial f.
fn evaluate(f: &[(i64, Scalar)], x: &Scalar) -> Result<Scalar, ScalarError> {
    let mut acc = x.zero_like();
    for (k, c) in f {
        acc = &acc + &(c * &x.pow(*k)?);
    }
    Ok(acc)
}

/// Both δ-substitution rules: genuine products against the shortcut.
pub fn verify_delta_substitution(ring: &Ring, f: &[(i64, Scalar)], a: &Scalar, derivative: bool, d: i64) -> Result<IdentityOutcome, SeriesError> {
    let reach = f.iter().map(|t| t.0.abs()).max().unwrap_or(0);
    let fs = TwoSidedSeries::laurent(ring, f);
    let ainv = a.inv()?;
    let delta = TwoSidedSeries::delta(ring, a, -d - reach, d + reach)?;
    let at = evaluate(f, &ainv)?;
    let (lhs, rhs) = if derivative {
        let dd = TwoSidedSeries::delta_derivative(ring, a, -d - reach, d + reach)?;
        let df: Vec<(i64, Scalar)> = f.iter().map(|(k, c)| (*k, &ring.int(*k) * c)).collect();
        let rhs = dd.scale(&at).sub(&delta.scale(&evaluate(&df, &ainv)?));
        (fs.mul(&dd)?, rhs)
    } else {
        (fs.mul(&delta)?, delta.scale(&at))
    };
    Ok(IdentityOutcome::series(lhs.mismatches(&rhs, -d, d)?))
}

/// F(z₁,z₂) as a map (i, j) ↦ coefficient of z₁^i z₂^j.
pub type TwoVarPoly = BTreeMap<(i64, i64), Scalar>;

/// Coefficients of z₁^a z₂^b (|a|,|b| ≤ d) of F·δ(z₂/cz₁) (or Dδ) by direct multiplication
/// against the truncated δ, compared with the substituted form. With `printed_sign` the
/// derivative correction is added instead of subtracted.
pub fn verify_two_variable(ring: &Ring, f: &TwoVarPoly, c: &Scalar, derivative: bool, printed_sign: bool, d: i64) -> Result<IdentityOutcome, SeriesError> {
    let reach = f.keys().map(|(i, j)| i.abs().max(j.abs())).max().unwrap_or(0);
    let w = 2 * (d + reach);
    let cinv = c.inv()?;
    // δ(z₂/cz₁) = Σ c^{−n} z₁^{−n} z₂^n.
    let mut lhs: TwoVarPoly = BTreeMap::new();
    for ((i, j), x) in f {
        for n in -w..=w {
            let mut y = x * &cinv.pow(n)?;
            if derivative {
                y = &y * &ring.int(n);
            }
            let e = lhs.entry((i - n, j + n)).or_insert_with(|| ring.zero());
            *e = &*e + &y;
        }
    }
    // F(z₁,cz₁) = Σ F_ij c^j z₁^{i+j}; (D_{z₂}F)(z₁,cz₁) = Σ j F_ij c^j z₁^{i+j}.
    let mut sub: BTreeMap<i64, Scalar> = BTreeMap::new();
    let mut dsub: BTreeMap<i64, Scalar> = BTreeMap::new();
    for ((i, j), x) in f {
        let y = x * &c.pow(*j)?;
        let e = sub.entry(i + j).or_insert_with(|| ring.zero());
        *e = &*e + &y;
        let e = dsub.entry(i + j).or_insert_with(|| ring.zero());
        *e = &*e + &(&ring.int(*j) * &y);
    }
    let sign = if printed_sign { ring.one() } else { ring.int(-1) };
    let mut out = Vec::new();
    for a in -d..=d {
        for b in -d..=d {
            // G(z₁)δ(z₂/cz₁): z₁^k · c^{−n}z₁^{−n}z₂^n with n = b, k = a + b.
            let k = a + b;
            let g = sub.get(&k).cloned().unwrap_or_else(|| ring.zero());
            let mut rhs = &g * &cinv.pow(b)?;
            if derivative {
                rhs = &rhs * &ring.int(b);
                let h = dsub.get(&k).cloned().unwrap_or_else(|| ring.zero());
                rhs = &rhs + &(&sign * &(&h * &cinv.pow(b)?));
            }
            let l = lhs.get(&(a, b)).cloned().unwrap_or_else(|| ring.zero());
            if l != rhs {
                out.push(a * (2 * d + 1) + b);
            }
        }
    }
    Ok(IdentityOutcome::series(out))
}

/// A random Laurent polynomial with small integer coefficients and exponents in [−3, 3].
pub fn random_laurent(ring: &Ring, rng: &mut ChaCha8Rng) -> Vec<(i64, Scalar)> {
    let terms = rng.gen_range(1..=4);
    (0..terms).map(|_| (rng.gen_range(-3..=3), ring.int(rng.gen_range(-3..=3)))).collect()
}

/// A random F(z₁,z₂), polynomial in z₂ and Laurent in z₁.
pub fn random_two_var(ring: &Ring, rng: &mut ChaCha8Rng) -> TwoVarPoly {
    let mut f = BTreeMap::new();
    for _ in 0..rng.gen_range(1..=4) {
        f.insert((rng.gen_range(-2..=2), rng.gen_range(0..=2)), ring.int(rng.gen_range(1..=3)));
    }
    f
}

/// A random nonzero point a = ±t^k for the substitution rules, t = var(0).
pub fn random_point(ring: &Ring, rng: &mut ChaCha8Rng) -> Scalar {
    let k = [1i32, 2, -1][rng.gen_range(0..3)];
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    &ring.int(sign) * &ring.s_mono(&[k])
}

/// Twenty seeded instances of each substitution rule; returns (identity, failures).
pub fn substitution_sweep(seed: u64, instances: usize, d: i64) -> Result<Vec<(DistributionIdentity, usize)>, SeriesError> {
    let ring = Ring::new(1, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fails = [0usize; 4];
    for _ in 0..instances {
        let f = random_laurent(&ring, &mut rng);
        let a = random_point(&ring, &mut rng);
        fails[0] += usize::from(!verify_delta_substitution(&ring, &f, &a, false, d)?.pass);
        fails[1] += usize::from(!verify_delta_substitution(&ring, &f, &a, true, d)?.pass);
        let g = random_two_var(&ring, &mut rng);
        fails[2] += usize::from(!verify_two_variable(&ring, &g, &a, false, false, d)?.pass);
        fails[3] += usize::from(!verify_two_variable(&ring, &g, &a, true, false, d)?.pass);
    }
    Ok(vec![
        (DistributionIdentity::DeltaSubstitution, fails[0]),
        (DistributionIdentity::DerivativeDeltaSubstitution, fails[1]),
        (DistributionIdentity::TwoVariableDelta, fails[2]),
        (DistributionIdentity::TwoVariableDerivativeDelta, fails[3]),
    ])
}

/// All profiles in `values`^n.
pub fn profiles(values: &[i64], n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p| values.iter().map(move |&v| {
            let mut p = p.clone();
            p.push(v);
            p
        })).collect();
    }
    out
}

/// The product difference at t_i = ω^{−i}, a_i = ⟨ν^iα,β⟩ (i = 1..m). `None` if some a_i < −2.
pub fn root_of_unity_specialization(q: &Quadruple, alpha: &[i64], beta: &[i64], d: i64) -> Result<Option<IdentityOutcome>, SeriesError> {
    let m = q.m() as i64;
    let a: Vec<i64> = (1..=m).map(|i| inner(&q.nu_pow(i, alpha), beta)).collect();
    if a.iter().any(|&x| x < -2) {
        return Ok(None);
    }
    let t: Vec<Scalar> = (1..=m).map(|i| q.omega(-i)).collect();
    Ok(Some(verify_product_difference(q.ring(), &t, &a, d)?))
}

/// Σ_{p≠r}⟨ν^pα,β⟩ = Σ_{p≠0}⟨(ν^p+ν^{−p})ν^rα,β⟩/(1−ω^p) for every r with ⟨ν^rα,β⟩ = −2;
/// `None` when there is no such r.
pub fn orbit_sum_side_identity(q: &Quadruple, alpha: &[i64], beta: &[i64]) -> Result<Option<bool>, ScalarError> {
    let m = q.m() as i64;
    let ring = q.ring();
    let mut seen = false;
    for r in 0..m {
        let nra: Vector = q.nu_pow(r, alpha);
        if inner(&nra, beta) != -2 {
            continue;
        }
        seen = true;
        let lhs: i64 = (0..m).filter(|&p| p != r).map(|p| inner(&q.nu_pow(p, alpha), beta)).sum();
        let mut rhs = ring.zero();
        for p in 1..m {
            let k = inner(&q.nu_pow(p, &nra), beta) + inner(&q.nu_pow(-p, &nra), beta);
            rhs = &rhs + &ring.int(k).div(&(&ring.one() - &q.omega(p)))?;
        }
        if rhs != ring.int(lhs) {
            return Ok(Some(false));
        }
    }
    Ok(seen.then_some(true))
}
