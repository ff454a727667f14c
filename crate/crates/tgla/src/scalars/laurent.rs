//! Sparse Laurent polynomials in s_1, …, s_l over ℚ(ζ_L).

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use smallvec::SmallVec;

use super::cyclo::{Cyclo, CycloField, Rat};

/// Exponent vector of a monomial s^e.
pub type Exp = SmallVec<[i32; 4]>;

pub fn zero_exp(n: usize) -> Exp {
    SmallVec::from_elem(0, n)
}

pub fn add_exp(a: &Exp, b: &Exp) -> Exp {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

fn pad(e: &Exp, n: usize) -> Exp {
    let mut e = e.clone();
    e.resize(n, 0);
    e
}

/// Graded lexicographic comparison.
pub fn grlex(a: &Exp, b: &Exp) -> Ordering {
    let da: i64 = a.iter().map(|&x| x as i64).sum();
    let db: i64 = b.iter().map(|&x| x as i64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone)]
pub struct LaurentPoly {
    field: Arc<CycloField>,
    nvars: usize,
    terms: BTreeMap<Exp, Cyclo>,
}

impl LaurentPoly {
    pub fn zero(field: &Arc<CycloField>, nvars: usize) -> LaurentPoly {
        LaurentPoly { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: Cyclo, nvars: usize) -> LaurentPoly {
        let mut p = LaurentPoly::zero(c.field(), nvars);
        if !c.is_zero() {
            p.terms.insert(zero_exp(nvars), c);
        }
        p
    }

    pub fn one(field: &Arc<CycloField>, nvars: usize) -> LaurentPoly {
        LaurentPoly::constant(Cyclo::one(field), nvars)
    }

    pub fn monomial(exp: Exp, c: Cyclo) -> LaurentPoly {
        let nvars = exp.len();
        let mut p = LaurentPoly::zero(c.field(), nvars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Cyclo)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    /// The coefficient if this polynomial is a constant (possibly zero).
    pub fn as_constant(&self) -> Option<Cyclo> {
        match self.terms.len() {
            0 => Some(Cyclo::zero(&self.field)),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The single term if this is a monomial.
    pub fn as_monomial(&self) -> Option<(&Exp, &Cyclo)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn coeff(&self, e: &Exp) -> Option<&Cyclo> {
        self.terms.get(e)
    }

    /// Same polynomial viewed in `n ≥ nvars` variables.
    pub fn extend_vars(&self, n: usize) -> LaurentPoly {
        if n == self.nvars {
            return self.clone();
        }
        assert!(n > self.nvars);
        let terms = self.terms.iter().map(|(e, c)| (pad(e, n), c.clone())).collect();
        LaurentPoly { field: self.field.clone(), nvars: n, terms }
    }

    fn aligned(a: &LaurentPoly, b: &LaurentPoly) -> Option<(LaurentPoly, LaurentPoly)> {
        if a.nvars == b.nvars {
            None
        } else {
            let n = a.nvars.max(b.nvars);
            Some((a.extend_vars(n), b.extend_vars(n)))
        }
    }

    pub fn add_term(&mut self, e: &Exp, c: &Cyclo) {
        if c.is_zero() {
            return;
        }
        if let Some(x) = self.terms.get_mut(e) {
            x.add_assign(c);
            if x.is_zero() {
                self.terms.remove(e);
            }
        } else {
            self.terms.insert(e.clone(), c.clone());
        }
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        if let Some((a, b)) = Self::aligned(self, o) {
            return a.add(&b);
        }
        let (mut big, small) = if self.terms.len() >= o.terms.len() { (self.clone(), o) } else { (o.clone(), self) };
        for (e, c) in &small.terms {
            big.add_term(e, c);
        }
        big
    }

    pub fn neg(&self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect();
        LaurentPoly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn sub(&self, o: &LaurentPoly) -> LaurentPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        if let Some((a, b)) = Self::aligned(self, o) {
            return a.mul(&b);
        }
        let mut out = LaurentPoly::zero(&self.field, self.nvars);
        if self.is_zero() || o.is_zero() {
            return out;
        }
        if let Some((e, c)) = o.as_monomial() {
            return self.mul_term(e, c);
        }
        if let Some((e, c)) = self.as_monomial() {
            return o.mul_term(e, c);
        }
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(&add_exp(e1, e2), &c1.mul(c2));
            }
        }
        out
    }

    pub fn mul_term(&self, e: &Exp, c: &Cyclo) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(&self.field, self.nvars);
        }
        let n = self.nvars.max(e.len());
        let e = pad(e, n);
        let base = if n > self.nvars { self.extend_vars(n) } else { self.clone() };
        let one = c.is_one();
        let terms = base
            .terms
            .iter()
            .map(|(x, y)| (add_exp(x, &e), if one { y.clone() } else { y.mul(c) }))
            .collect();
        LaurentPoly { field: self.field.clone(), nvars: n, terms }
    }

    pub fn scale(&self, c: &Cyclo) -> LaurentPoly {
        self.mul_term(&zero_exp(self.nvars), c)
    }

    pub fn scale_rat(&self, r: &Rat) -> LaurentPoly {
        self.scale(&Cyclo::from_rat(&self.field, r.clone()))
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(&self.field, self.nvars);
        let mut base = self.clone();
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

    /// Componentwise minimum exponent over all terms (zero vector for the zero polynomial).
    pub fn min_exp(&self) -> Exp {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return zero_exp(self.nvars);
        };
        let mut m = first.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e.iter()) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    /// Greatest term under graded lexicographic order.
    pub fn leading(&self) -> Option<(&Exp, &Cyclo)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    /// Replace each variable s_k by the monomial image[k] (in possibly more variables).
    pub fn substitute_monomials(&self, image: &[Exp], nvars: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(&self.field, nvars);
        for (e, c) in &self.terms {
            let mut x = zero_exp(nvars);
            for (k, &p) in e.iter().enumerate() {
                for (xi, yi) in x.iter_mut().zip(image[k].iter()) {
                    *xi += p * yi;
                }
            }
            out.add_term(&x, c);
        }
        out
    }
}

impl PartialEq for LaurentPoly {
    fn eq(&self, o: &LaurentPoly) -> bool {
        if self.nvars == o.nvars {
            self.terms == o.terms
        } else {
            let n = self.nvars.max(o.nvars);
            self.extend_vars(n).terms == o.extend_vars(n).terms
        }
    }
}

impl Eq for LaurentPoly {}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<_> = e.iter().enumerate().filter(|(_, &p)| p != 0).collect();
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else {
                if !c.is_one() {
                    write!(f, "({c})*")?;
                }
                for (k, (i, p)) in mono.iter().enumerate() {
                    if k > 0 {
                        write!(f, "*")?;
                    }
                    if **p == 1 {
                        write!(f, "s{}", i + 1)?;
                    } else {
                        write!(f, "s{}^{}", i + 1, p)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
