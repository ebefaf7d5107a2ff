//! Sparse polynomials in `x` and `lambda` over `F_q`, stored by lambda-degree.

use std::collections::BTreeMap;
use std::fmt;

use super::poly::Poly;
use super::rat::RatFunc;
use super::ratpoly::RatPoly;
use crate::error::Result;
use crate::gfq::{Elem, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    /// lambda-degree -> nonzero coefficient polynomial in `x`.
    terms: BTreeMap<u64, Poly>,
}

pub enum BiOp<'a> {
    Add(&'a BiPoly),
    Mul(&'a BiPoly),
    Pow(u64),
    /// `lambda := a(x)`.
    SubstituteLambda(&'a Poly),
}

impl BiPoly {
    pub fn zero(field: &Field) -> Self {
        BiPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::from_x(&Poly::one(field))
    }

    pub fn lambda(field: &Field) -> Self {
        Self::term(1, Poly::one(field))
    }

    pub fn x(field: &Field) -> Self {
        Self::from_x(&Poly::x(field))
    }

    pub fn from_x(p: &Poly) -> Self {
        Self::term(0, p.clone())
    }

    pub fn term(lambda_deg: u64, coeff: Poly) -> Self {
        let field = coeff.field().clone();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(lambda_deg, coeff);
        }
        BiPoly { field, terms }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<u64, Poly> {
        &self.terms
    }

    /// Coefficient of `lambda^i` as a polynomial in `x`.
    pub fn coeff(&self, i: u64) -> Poly {
        self.terms.get(&i).cloned().unwrap_or_else(|| Poly::zero(&self.field))
    }

    pub fn lambda_degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut terms = self.terms.clone();
        for (&i, c) in &other.terms {
            let sum = match terms.get(&i) {
                Some(a) => a.add(c),
                None => c.clone(),
            };
            if sum.is_zero() {
                terms.remove(&i);
            } else {
                terms.insert(i, sum);
            }
        }
        BiPoly { field: self.field.clone(), terms }
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly { field: self.field.clone(), terms: self.terms.iter().map(|(&i, c)| (i, c.neg())).collect() }
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> BiPoly {
        let mut out = Self::zero(&self.field);
        for (&i, a) in &self.terms {
            let s = a.scale(c);
            if !s.is_zero() {
                out.terms.insert(i, s);
            }
        }
        out
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut terms: BTreeMap<u64, Poly> = BTreeMap::new();
        for (&i, a) in &self.terms {
            for (&j, b) in &other.terms {
                let prod = a.mul(b);
                let slot = terms.entry(i + j).or_insert_with(|| Poly::zero(&self.field));
                *slot = slot.add(&prod);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        BiPoly { field: self.field.clone(), terms }
    }

    /// `self^{p^j}`: coefficientwise Frobenius, lambda-degrees scaled by `p^j`.
    pub fn frobenius_power(&self, j: u32) -> BiPoly {
        let step = (self.field.p() as u64).pow(j);
        BiPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(&i, c)| (i * step, c.frobenius_power(j))).collect(),
        }
    }

    pub fn pow(&self, e: u64) -> BiPoly {
        let p = self.field.p() as u64;
        let (mut rest, mut j) = (e, 0);
        while rest > 0 && rest % p == 0 {
            rest /= p;
            j += 1;
        }
        let mut acc = Self::one(&self.field);
        if e == 0 {
            return acc;
        }
        let mut base = self.clone();
        while rest > 0 {
            if rest & 1 == 1 {
                acc = acc.mul(&base);
            }
            rest >>= 1;
            if rest > 0 {
                base = base.mul(&base);
            }
        }
        acc.frobenius_power(j)
    }

    /// `lambda := a(x)`.
    pub fn substitute_lambda(&self, a: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        let mut last = self.lambda_degree().unwrap_or(0);
        for (&i, c) in self.terms.iter().rev() {
            acc = acc.mul(&a.pow(last - i)).add(c);
            last = i;
        }
        acc.mul(&a.pow(last))
    }

    /// `x := alpha`, leaving a polynomial in `lambda` over `F_q(t)`.
    pub fn substitute_x(&self, alpha: &RatFunc) -> RatPoly {
        let Some(top) = self.lambda_degree() else {
            return RatPoly::zero(&self.field);
        };
        let mut coeffs = vec![RatFunc::zero(&self.field); top as usize + 1];
        for (&i, c) in &self.terms {
            coeffs[i as usize] = eval_at_rat(c, alpha);
        }
        RatPoly::new(&self.field, coeffs)
    }

    pub fn eval(&self, x: Elem, lambda: Elem) -> Elem {
        let f = &self.field;
        self.terms
            .iter()
            .fold(Elem::ZERO, |acc, (&i, c)| f.add(acc, f.mul(c.eval(x), f.pow(lambda, i as u128))))
    }

    pub fn apply(&self, op: BiOp<'_>) -> Result<BiPoly> {
        Ok(match op {
            BiOp::Add(b) => {
                b.coeff(0).check_same(&Poly::zero(&self.field))?;
                self.add(b)
            }
            BiOp::Mul(b) => {
                b.coeff(0).check_same(&Poly::zero(&self.field))?;
                self.mul(b)
            }
            BiOp::Pow(e) => self.pow(e),
            BiOp::SubstituteLambda(a) => {
                a.check_same(&Poly::zero(&self.field))?;
                Self::from_x(&self.substitute_lambda(a))
            }
        })
    }
}

pub fn bipoly_ops(a: &BiPoly, op: BiOp<'_>) -> Result<BiPoly> {
    a.apply(op)
}

/// A polynomial with constant coefficients evaluated at an element of `F_q(t)`.
pub fn eval_at_rat(p: &Poly, z: &RatFunc) -> RatFunc {
    let f = p.field();
    p.coeffs().iter().rev().fold(RatFunc::zero(f), |acc, &c| acc.mul(z).add(&RatFunc::constant(f, c)))
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (&i, c) in self.terms.iter().rev() {
            let cs = c.format_var("x");
            let mono = match i {
                0 => String::new(),
                1 => "lambda".into(),
                _ => format!("lambda^{i}"),
            };
            terms.push(match (i, c.is_one()) {
                (0, _) => cs,
                (_, true) => mono,
                _ if cs.contains(' ') => format!("({cs})*{mono}"),
                _ => format!("{cs}*{mono}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}
