//! Fractions of Laurent polynomials: the coefficient field K.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::cyclo::{rat, Cyclo, CycloField, Rat};
use super::laurent::{zero_exp, Exp, LaurentPoly};
use super::ScalarError;

/// num/den with den ≠ 0. The denominator is normalized so that its
/// componentwise minimal exponent is zero and its grlex-leading
/// coefficient is 1; no gcd is taken, equality is by cross-multiplication.
#[derive(Clone)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Scalar {
    pub fn from_poly(p: LaurentPoly) -> Scalar {
        let den = LaurentPoly::one(p.field(), p.nvars());
        Scalar { num: p, den }
    }

    pub fn fraction(num: LaurentPoly, den: LaurentPoly) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::normalized(num, den))
    }

    fn normalized(mut num: LaurentPoly, mut den: LaurentPoly) -> Scalar {
        if num.nvars() != den.nvars() {
            let n = num.nvars().max(den.nvars());
            num = num.extend_vars(n);
            den = den.extend_vars(n);
        }
        if num.is_zero() {
            let one = LaurentPoly::one(den.field(), den.nvars());
            return Scalar { num, den: one };
        }
        if den.is_one() {
            return Scalar { num, den };
        }
        let m = den.min_exp();
        if m.iter().any(|&x| x != 0) {
            let shift: Exp = m.iter().map(|&x| -x).collect();
            let one = Cyclo::one(den.field());
            num = num.mul_term(&shift, &one);
            den = den.mul_term(&shift, &one);
        }
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero leading coefficient");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Scalar { num, den }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn field(&self) -> &Arc<CycloField> {
        self.num.field()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The unit of the ring this scalar lives in.
    pub fn one_like(&self) -> Scalar {
        Scalar::from_poly(LaurentPoly::one(self.field(), self.nvars()))
    }

    pub fn zero_like(&self) -> Scalar {
        Scalar::from_poly(LaurentPoly::zero(self.field(), self.nvars()))
    }

    /// The value as a cyclotomic constant, when it is one.
    pub fn as_constant(&self) -> Option<Cyclo> {
        let d = self.den.as_constant()?;
        let n = self.num.as_constant()?;
        Some(n.mul(&d.inv()?))
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &o.inv()?)
    }

    /// Integer power; x^0 = 1 for every x, including 0.
    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        if e == 0 {
            return Ok(Scalar::from_poly(LaurentPoly::one(self.field(), self.nvars())));
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = u32::try_from(e.unsigned_abs()).map_err(|_| ScalarError::ExponentTooLarge)?;
        Ok(Scalar { num: base.num.pow(k), den: base.den.pow(k) }.renormalized())
    }

    fn renormalized(self) -> Scalar {
        Scalar::normalized(self.num, self.den)
    }

    pub fn scale(&self, c: &Cyclo) -> Scalar {
        Scalar { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn scale_rat(&self, r: &Rat) -> Scalar {
        Scalar { num: self.num.scale_rat(r), den: self.den.clone() }
    }

    pub fn mul_monomial(&self, e: &Exp) -> Scalar {
        let one = Cyclo::one(self.field());
        Scalar { num: self.num.mul_term(e, &one), den: self.den.clone() }.renormalized()
    }

    pub fn extend_vars(&self, n: usize) -> Scalar {
        Scalar { num: self.num.extend_vars(n), den: self.den.extend_vars(n) }
    }

    /// Replace s_k by the monomial image[k] in `nvars` variables.
    pub fn substitute_monomials(&self, image: &[Exp], nvars: usize) -> Scalar {
        Scalar::normalized(self.num.substitute_monomials(image, nvars), self.den.substitute_monomials(image, nvars))
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Scalar) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl Eq for Scalar {}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            return Scalar::normalized(self.num.add(&o.num), self.den.clone());
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Scalar::normalized(num, self.den.mul(&o.den))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::from_poly(LaurentPoly::zero(self.field(), self.nvars().max(o.nvars())));
        }
        if o.den.is_one() && self.den.is_one() {
            return Scalar::from_poly(self.num.mul(&o.num));
        }
        Scalar::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Factory for scalars over a fixed field ℚ(ζ_L) and variable count.
#[derive(Clone, Debug)]
pub struct Ring {
    field: Arc<CycloField>,
    nvars: usize,
}

impl Ring {
    pub fn new(conductor: u32, nvars: usize) -> Ring {
        Ring { field: CycloField::new(conductor), nvars }
    }

    pub fn with_field(field: Arc<CycloField>, nvars: usize) -> Ring {
        Ring { field, nvars }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The same field with `extra` further variables appended.
    pub fn extended(&self, extra: usize) -> Ring {
        Ring { field: self.field.clone(), nvars: self.nvars + extra }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_poly(LaurentPoly::zero(&self.field, self.nvars))
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_poly(LaurentPoly::one(&self.field, self.nvars))
    }

    pub fn int(&self, n: i64) -> Scalar {
        self.rat(rat(n, 1))
    }

    pub fn rat(&self, r: Rat) -> Scalar {
        self.cyclo(Cyclo::from_rat(&self.field, r))
    }

    pub fn cyclo(&self, c: Cyclo) -> Scalar {
        Scalar::from_poly(LaurentPoly::constant(c, self.nvars))
    }

    /// ζ_L^k.
    pub fn zeta(&self, k: i64) -> Scalar {
        self.cyclo(Cyclo::zeta(&self.field, k))
    }

    /// The monomial s^e.
    pub fn s_mono(&self, e: &[i32]) -> Scalar {
        let mut x = zero_exp(self.nvars);
        for (a, b) in x.iter_mut().zip(e) {
            *a = *b;
        }
        Scalar::from_poly(LaurentPoly::monomial(x, Cyclo::one(&self.field)))
    }

    /// The variable s_{k+1}.
    pub fn var(&self, k: usize) -> Scalar {
        let mut e = zero_exp(self.nvars);
        e[k] = 1;
        Scalar::from_poly(LaurentPoly::monomial(e, Cyclo::one(&self.field)))
    }

    /// Sum of terms.
    pub fn sum<'a>(&self, xs: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
        xs.into_iter().fold(self.zero(), |acc, x| &acc + x)
    }

    /// Cyclotomic constant from rational coordinates in the power basis.
    pub fn from_coeffs(&self, coeffs: Vec<Rat>) -> Scalar {
        self.cyclo(Cyclo::from_coeffs(&self.field, coeffs))
    }

    pub fn is_rational_int(&self, s: &Scalar, n: i64) -> bool {
        s.as_constant().and_then(|c| c.as_rational().cloned()).is_some_and(|r| (r - rat(n, 1)).is_zero())
    }
}
