//! Cyclotomic numbers: residues of rational polynomials modulo Φ_L.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

fn trim(p: &mut Vec<Rat>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Long division of `a` by `b` (coefficients low to high); returns (quotient, remainder).
pub fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![Rat::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let f = &r[r.len() - 1] / &lead;
        for (i, bc) in b.iter().enumerate() {
            let t = &f * bc;
            r[k + i] -= t;
        }
        q[k] = f;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Φ_L, obtained by dividing x^L − 1 by Φ_d for every proper divisor d of L.
pub fn cyclotomic_polynomial(l: u32) -> Vec<Rat> {
    assert!(l >= 1, "cyclotomic conductor must be positive");
    let mut p = vec![Rat::zero(); l as usize + 1];
    p[0] = -Rat::one();
    p[l as usize] = Rat::one();
    for d in 1..l {
        if l % d == 0 {
            let (q, r) = poly_divmod(&p, &cyclotomic_polynomial(d));
            debug_assert!(r.is_empty());
            p = q;
        }
    }
    p
}

/// The field ℚ(ζ_L) in the power basis 1, ζ, …, ζ^{φ(L)−1}.
pub struct CycloField {
    conductor: u32,
    modulus: Vec<Rat>,
    roots: Vec<Vec<Rat>>,
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.conductor)
    }
}

impl CycloField {
    pub fn new(conductor: u32) -> Arc<CycloField> {
        let modulus = cyclotomic_polynomial(conductor);
        let deg = modulus.len() - 1;
        let mut field = CycloField { conductor, modulus, roots: Vec::new() };
        let mut cur = vec![Rat::zero(); deg];
        cur[0] = Rat::one();
        let mut roots = Vec::with_capacity(conductor as usize);
        for _ in 0..conductor {
            roots.push(cur.clone());
            let mut shifted = vec![Rat::zero()];
            shifted.extend(cur.iter().cloned());
            cur = field.reduce(shifted);
        }
        assert!(cur.iter().enumerate().all(|(i, c)| if i == 0 { c.is_one() } else { c.is_zero() }));
        for (k, r) in roots.iter().enumerate().skip(1) {
            assert!(!(r[0].is_one() && r[1..].iter().all(|c| c.is_zero())), "ζ^{k} = 1");
        }
        field.roots = roots;
        Arc::new(field)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rat] {
        &self.modulus
    }

    fn reduce(&self, p: Vec<Rat>) -> Vec<Rat> {
        let deg = self.degree();
        let mut r = if p.len() > deg { poly_divmod(&p, &self.modulus).1 } else { p };
        r.resize(deg, Rat::zero());
        r
    }
}

/// An element of ℚ(ζ_L), stored as its φ(L) power-basis coordinates.
#[derive(Clone)]
pub struct Cyclo {
    field: Arc<CycloField>,
    coeffs: Vec<Rat>,
}

impl Cyclo {
    pub fn zero(field: &Arc<CycloField>) -> Cyclo {
        Cyclo { field: field.clone(), coeffs: vec![Rat::zero(); field.degree()] }
    }

    pub fn from_rat(field: &Arc<CycloField>, r: Rat) -> Cyclo {
        let mut c = Cyclo::zero(field);
        c.coeffs[0] = r;
        c
    }

    pub fn one(field: &Arc<CycloField>) -> Cyclo {
        Cyclo::from_rat(field, Rat::one())
    }

    /// ζ_L^k for any integer k.
    pub fn zeta(field: &Arc<CycloField>, k: i64) -> Cyclo {
        let idx = k.rem_euclid(field.conductor as i64) as usize;
        Cyclo { field: field.clone(), coeffs: field.roots[idx].clone() }
    }

    pub fn from_coeffs(field: &Arc<CycloField>, coeffs: Vec<Rat>) -> Cyclo {
        Cyclo { field: field.clone(), coeffs: field.reduce(coeffs) }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value if this number lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Exponent k with self = ζ_L^k, if self is a root of unity in ⟨ζ_L⟩.
    pub fn root_index(&self) -> Option<u32> {
        (0..self.field.conductor).find(|&k| self.field.roots[k as usize] == self.coeffs)
    }

    pub fn add(&self, o: &Cyclo) -> Cyclo {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        Cyclo { field: self.field.clone(), coeffs }
    }

    pub fn add_assign(&mut self, o: &Cyclo) {
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *a += b;
        }
    }

    pub fn sub(&self, o: &Cyclo) -> Cyclo {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        Cyclo { field: self.field.clone(), coeffs }
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, o: &Cyclo) -> Cyclo {
        if self.field.degree() == 1 {
            return Cyclo { field: self.field.clone(), coeffs: vec![&self.coeffs[0] * &o.coeffs[0]] };
        }
        let p = poly_mul(&self.coeffs, &o.coeffs);
        Cyclo { field: self.field.clone(), coeffs: self.field.reduce(p) }
    }

    pub fn scale(&self, r: &Rat) -> Cyclo {
        Cyclo { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| a * r).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_L.
    pub fn inv(&self) -> Option<Cyclo> {
        if self.is_zero() {
            return None;
        }
        let mut a = self.coeffs.clone();
        trim(&mut a);
        let mut r0 = self.field.modulus.clone();
        let mut r1 = a;
        let mut t0: Vec<Rat> = Vec::new();
        let mut t1: Vec<Rat> = vec![Rat::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = core::mem::replace(&mut r1, r);
            t0 = core::mem::replace(&mut t1, t2);
        }
        // r1 is a nonzero constant because Φ_L is irreducible.
        let c = r1[0].clone();
        let t: Vec<Rat> = t1.iter().map(|x| x / &c).collect();
        Some(Cyclo::from_coeffs(&self.field, t))
    }

    pub fn pow(&self, e: u64) -> Cyclo {
        let mut base = self.clone();
        let mut acc = Cyclo::one(&self.field);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, o: &Cyclo) -> bool {
        self.coeffs == o.coeffs
    }
}

impl Eq for Cyclo {}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{a}*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &[Rat]) -> Vec<i64> {
        p.iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(ints(&cyclotomic_polynomial(1)), [-1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(4)), [1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(12)), [1, 0, -1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(6)), [1, -1, 1]);
    }

    #[test]
    fn i_squared() {
        let f = CycloField::new(4);
        let i = Cyclo::zeta(&f, 1);
        assert_eq!(i.mul(&i), Cyclo::one(&f).neg());
    }

    #[test]
    fn inverse_round_trip() {
        let f = CycloField::new(12);
        let a = Cyclo::from_coeffs(&f, vec![rat(1, 1), rat(2, 3), rat(0, 1), rat(-5, 2)]);
        assert!(a.mul(&a.inv().unwrap()).is_one());
        assert_eq!(Cyclo::zeta(&f, 5).root_index(), Some(5));
    }
}
