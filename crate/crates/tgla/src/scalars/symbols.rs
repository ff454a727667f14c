//! Symbolic expressions in named parameters, bound to fresh variables on demand.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::laurent::{zero_exp, Exp};
use super::scalar::{Ring, Scalar};
use super::ScalarError;

#[derive(Clone, Debug)]
pub enum SymExpr {
    Const(Scalar),
    Sym(String),
    Add(Box<SymExpr>, Box<SymExpr>),
    Sub(Box<SymExpr>, Box<SymExpr>),
    Mul(Box<SymExpr>, Box<SymExpr>),
    Div(Box<SymExpr>, Box<SymExpr>),
    Pow(Box<SymExpr>, i64),
}

impl SymExpr {
    pub fn sym(name: &str) -> SymExpr {
        SymExpr::Sym(name.into())
    }

    pub fn add(self, o: SymExpr) -> SymExpr {
        SymExpr::Add(Box::new(self), Box::new(o))
    }

    pub fn sub(self, o: SymExpr) -> SymExpr {
        SymExpr::Sub(Box::new(self), Box::new(o))
    }

    pub fn mul(self, o: SymExpr) -> SymExpr {
        SymExpr::Mul(Box::new(self), Box::new(o))
    }

    pub fn div(self, o: SymExpr) -> SymExpr {
        SymExpr::Div(Box::new(self), Box::new(o))
    }

    pub fn pow(self, e: i64) -> SymExpr {
        SymExpr::Pow(Box::new(self), e)
    }
}

/// A symbol is bound to `s_var^power`, where `var` is a fresh variable index
/// (at or beyond the ring's current variable count).
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    map: BTreeMap<String, (usize, i32)>,
}

impl Bindings {
    pub fn new() -> Bindings {
        Bindings::default()
    }

    pub fn bind(mut self, name: &str, var: usize, power: i32) -> Bindings {
        self.map.insert(name.into(), (var, power));
        self
    }
}

/// Evaluate `expr` after mapping each symbol to its fresh variable; returns
/// the enlarged ring and the value.
pub fn substitute_fresh_symbols(ring: &Ring, expr: &SymExpr, bindings: &Bindings) -> Result<(Ring, Scalar), ScalarError> {
    let base = ring.nvars();
    let mut used: Vec<usize> = Vec::new();
    for (name, &(var, _)) in &bindings.map {
        if var < base || used.contains(&var) {
            return Err(ScalarError::SymbolCollision(name.clone()));
        }
        used.push(var);
    }
    let top = used.iter().map(|v| v + 1).max().unwrap_or(base);
    let big = ring.extended(top - base);
    let value = eval(&big, expr, bindings)?;
    Ok((big, value))
}

fn eval(ring: &Ring, e: &SymExpr, b: &Bindings) -> Result<Scalar, ScalarError> {
    Ok(match e {
        SymExpr::Const(c) => c.extend_vars(ring.nvars()),
        SymExpr::Sym(name) => {
            let &(var, power) = b.map.get(name).ok_or_else(|| ScalarError::UnboundSymbol(name.clone()))?;
            let mut x: Exp = zero_exp(ring.nvars());
            x[var] = power;
            ring.s_mono(&x)
        }
        SymExpr::Add(a, c) => &eval(ring, a, b)? + &eval(ring, c, b)?,
        SymExpr::Sub(a, c) => &eval(ring, a, b)? - &eval(ring, c, b)?,
        SymExpr::Mul(a, c) => &eval(ring, a, b)? * &eval(ring, c, b)?,
        SymExpr::Div(a, c) => eval(ring, a, b)?.div(&eval(ring, c, b)?)?,
        SymExpr::Pow(a, k) => eval(ring, a, b)?.pow(*k)?,
    })
}
