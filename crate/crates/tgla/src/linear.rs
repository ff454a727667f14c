//! Finite linear combinations of generators plus a central coefficient.

use alloc::collections::BTreeMap;

use crate::scalars::{Ring, Scalar};

/// Σ coeff·key + central·𝐜 with no stored zero coefficients.
#[derive(Clone, Debug)]
pub struct Combination<K: Ord> {
    terms: BTreeMap<K, Scalar>,
    central: Scalar,
}

impl<K: Ord + Clone> Combination<K> {
    pub fn zero(ring: &Ring) -> Self {
        Combination { terms: BTreeMap::new(), central: ring.zero() }
    }

    pub fn basis(ring: &Ring, key: K, coeff: Scalar) -> Self {
        let mut x = Self::zero(ring);
        x.add_term(key, &coeff);
        x
    }

    pub fn central_only(c: Scalar) -> Self {
        Combination { terms: BTreeMap::new(), central: c }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: &K) -> Option<&Scalar> {
        self.terms.get(k)
    }

    pub fn central(&self) -> &Scalar {
        &self.central
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    /// Adds `c·key` without any rewriting of the key.
    pub fn add_term(&mut self, key: K, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn add_central(&mut self, c: &Scalar) {
        self.central = &self.central + c;
    }

    pub fn add_scaled(&mut self, o: &Self, f: &Scalar) {
        for (k, v) in &o.terms {
            self.add_term(k.clone(), &(v * f));
        }
        self.central = &self.central + &(&o.central * f);
    }

    pub fn scale(&self, f: &Scalar) -> Self {
        let mut out = Combination { terms: BTreeMap::new(), central: &self.central * f };
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &(v * f));
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut x = self.clone();
        x.add_scaled(o, &o.central.one_like());
        x
    }

    pub fn neg(&self) -> Self {
        self.scale(&-self.central.one_like())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut x = self.clone();
        x.add_scaled(o, &-o.central.one_like());
        x
    }

    /// Coefficientwise exact equality.
    pub fn equals(&self, o: &Self) -> bool {
        self.central == o.central && self.terms.len() == o.terms.len() && self.terms.iter().zip(o.terms.iter()).all(|((ka, va), (kb, vb))| ka == kb && va == vb)
    }

    /// Applies a linear map on keys; the central coefficient is mapped by `central`.
    pub fn map<L: Ord + Clone>(&self, ring: &Ring, f: &mut dyn FnMut(&K) -> Combination<L>, central: &Scalar) -> Combination<L> {
        let mut out = Combination::<L>::zero(ring);
        for (k, v) in &self.terms {
            out.add_scaled(&f(k), v);
        }
        out.central = &out.central + &(&self.central * central);
        out
    }
}
