//! Exact coefficient field K = Frac(ℚ(ζ_L)[s_1^{±1}, …, s_l^{±1}]), s_i = q_i^{1/2}.

mod cyclo;
mod laurent;
mod scalar;
mod symbols;

use alloc::string::String;

pub use cyclo::{cyclotomic_polynomial, poly_divmod, rat, Cyclo, CycloField, Rat};
pub use laurent::{add_exp, grlex, zero_exp, Exp, LaurentPoly};
pub use scalar::{Ring, Scalar};
pub use symbols::{substitute_fresh_symbols, Bindings, SymExpr};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent out of range")]
    ExponentTooLarge,
    #[error("symbol `{0}` collides with an existing variable")]
    SymbolCollision(String),
    #[error("symbol `{0}` has no binding")]
    UnboundSymbol(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_to_the_zero_is_one() {
        let r = Ring::new(4, 1);
        assert!(r.zero().pow(0).unwrap().is_one());
        assert_eq!(r.zero().pow(-1).unwrap_err(), ScalarError::DivisionByZero);
        assert!(r.zero().inv().is_err());
    }

    #[test]
    fn difference_of_squares_quotient() {
        let r = Ring::new(1, 1);
        let s = r.var(0);
        let num = &r.one() - &(&s * &s);
        let den = &r.one() - &s;
        assert_eq!(num.div(&den).unwrap(), &r.one() + &s);
    }

    #[test]
    fn normalization_moves_monomials_and_leading_coefficient() {
        let r = Ring::new(4, 1);
        let s = r.var(0);
        let x = (&r.one() - &(&s * &s).scale(&Cyclo::zeta(r.field(), 1))).mul_monomial(&[3].into_iter().collect());
        let q = r.one().div(&x).unwrap();
        assert!(q.den().min_exp().iter().all(|&e| e == 0));
        assert!(q.den().leading().unwrap().1.is_one());
        assert_eq!(&q * &x, r.one());
    }

    #[test]
    fn fresh_symbols() {
        let r = Ring::new(1, 2);
        let e = SymExpr::sym("t1").div(SymExpr::Const(r.one()).sub(SymExpr::sym("t1")));
        let (big, v) = substitute_fresh_symbols(&r, &e, &Bindings::new().bind("t1", 2, 2)).unwrap();
        let s3sq = big.s_mono(&[0, 0, 2]);
        assert_eq!(v, s3sq.div(&(&big.one() - &s3sq)).unwrap());
        let bad = substitute_fresh_symbols(&r, &e, &Bindings::new().bind("t1", 0, 2));
        assert!(matches!(bad, Err(ScalarError::SymbolCollision(_))));
        let (same, c) = substitute_fresh_symbols(&r, &SymExpr::Const(r.int(3)), &Bindings::new()).unwrap();
        assert_eq!(same.nvars(), 2);
        assert_eq!(c, r.int(3));
    }
}
