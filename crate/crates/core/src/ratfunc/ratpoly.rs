//! Polynomials in one variable over `F_q(t)`.

use std::fmt;

use super::poly::Poly;
use super::rat::RatFunc;
use crate::error::{Error, Result};
use crate::gfq::{Elem, Field};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    field: Field,
    /// Low to high, no trailing zeros.
    coeffs: Vec<RatFunc>,
}

impl RatPoly {
    pub fn zero(field: &Field) -> Self {
        RatPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(RatFunc::one(field))
    }

    pub fn x(field: &Field) -> Self {
        Self::new(field, vec![RatFunc::zero(field), RatFunc::one(field)])
    }

    pub fn constant(c: RatFunc) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
    }

    pub fn new(field: &Field, mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { field: field.clone(), coeffs }
    }

    /// Lift a polynomial with constant coefficients.
    pub fn from_poly(p: &Poly) -> Self {
        let f = p.field();
        Self::new(f, p.coeffs().iter().map(|&c| RatFunc::constant(f, c)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs.get(i).cloned().unwrap_or_else(|| RatFunc::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> RatFunc {
        self.coeff(self.coeffs.len().saturating_sub(1))
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(&self.field, (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn scale(&self, c: &RatFunc) -> RatPoly {
        Self::new(&self.field, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out = vec![RatFunc::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(&self.field, out)
    }

    pub fn pow(&self, mut e: u64) -> RatPoly {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
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

    pub fn derivative(&self) -> RatPoly {
        let f = &self.field;
        Self::new(
            f,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale(f.from_int(i as i64))).collect(),
        )
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().expect("nonzero lead");
        self.scale(&inv)
    }

    pub fn divrem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let f = &self.field;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let inv_lead = divisor.lead().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![RatFunc::zero(f); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone();
            if c.is_zero() {
                continue;
            }
            let factor = c.mul(&inv_lead);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] = rem[i + j].sub(&factor.mul(d));
                }
            }
            quot[i] = factor;
        }
        rem.truncate(dd);
        Ok((Self::new(f, quot), Self::new(f, rem)))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero divisor").1.monic();
            a = b;
            b = r;
        }
        a
    }

    pub fn is_separable(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Horner evaluation at `z`.
    pub fn eval(&self, z: &RatFunc) -> RatFunc {
        self.coeffs.iter().rev().fold(RatFunc::zero(&self.field), |acc, c| acc.mul(z).add(c))
    }

    /// `self(inner)`.
    pub fn compose(&self, inner: &RatPoly) -> RatPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(&self.field), |acc, c| acc.mul(inner).add(&Self::constant(c.clone())))
    }

    /// `self(x + a)`.
    pub fn shift(&self, a: &RatFunc) -> RatPoly {
        let inner = Self::new(&self.field, vec![a.clone(), RatFunc::one(&self.field)]);
        self.compose(&inner)
    }

    /// Divide by `x^k` when the low `k` coefficients vanish.
    pub fn strip_x_power(&self) -> (usize, RatPoly) {
        let k = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        (k, Self::new(&self.field, self.coeffs[k..].to_vec()))
    }

    /// The `p^j`-th root: needs every exponent divisible by `p^j` and every
    /// coefficient a `p^j`-th power in `F_q(t)`.
    pub fn pth_power_root(&self, j: u32) -> Option<RatPoly> {
        let step = (self.field.p() as usize).pow(j);
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % step != 0 {
                if !c.is_zero() {
                    return None;
                }
                continue;
            }
            out.push(c.pth_power_root(j)?);
        }
        Some(Self::new(&self.field, out))
    }

    pub fn format_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let coef = if cs.contains(' ') || cs.contains('/') { format!("({cs})") } else { cs };
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            terms.push(match (i, c.is_one()) {
                (0, _) => coef,
                (_, true) => mono,
                _ => format!("{coef}*{mono}"),
            });
        }
        terms.join(" + ")
    }
}

/// Horner evaluation of `P` at `z`.
pub fn rat_eval(p: &RatPoly, z: &RatFunc) -> Result<RatFunc> {
    z.same_field(&RatFunc::zero(p.field()))?;
    Ok(p.eval(z))
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({})", self.format_var("x"))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_var("x"))
    }
}

/// `c * prod (x - r_i)`.
pub fn from_roots(field: &Field, lead: Elem, roots: &[RatFunc]) -> RatPoly {
    roots.iter().fold(RatPoly::constant(RatFunc::constant(field, lead)), |acc, r| {
        acc.mul(&RatPoly::new(field, vec![r.neg(), RatFunc::one(field)]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::FieldSpec;

    #[test]
    fn evaluation_of_binomial() {
        let f3 = FieldSpec::prime(3).unwrap();
        let f = RatPoly::from_poly(&Poly::from_ints(&f3, &[0, 0, 0, 0, 0, 2, 1]));
        let t = RatFunc::t(&f3);
        assert_eq!(rat_eval(&f, &t).unwrap().to_string(), "t^6 + 2*t^5");
    }

    #[test]
    fn gcd_of_shared_root() {
        let f3 = FieldSpec::prime(3).unwrap();
        let t = RatFunc::t(&f3);
        let one = RatFunc::one(&f3);
        let a = from_roots(&f3, Elem::ONE, &[t.clone(), one.clone()]);
        let b = from_roots(&f3, Elem(2), &[t.clone(), t.inv().unwrap()]);
        assert_eq!(a.gcd(&b), from_roots(&f3, Elem::ONE, &[t]));
    }

    #[test]
    fn shift_then_unshift() {
        let f3 = FieldSpec::prime(3).unwrap();
        let t = RatFunc::t(&f3);
        let p = from_roots(&f3, Elem::ONE, &[t.clone(), RatFunc::one(&f3), t.square()]);
        assert_eq!(p.shift(&t).shift(&t.neg()), p);
        assert!(p.shift(&t).eval(&RatFunc::zero(&f3)).is_zero());
    }

    #[test]
    fn separability() {
        let f3 = FieldSpec::prime(3).unwrap();
        let t = RatFunc::t(&f3);
        let p = from_roots(&f3, Elem::ONE, &[t.clone(), t.clone()]);
        assert!(!p.is_separable());
        // x^3 - t is irreducible and inseparable over F_3(t).
        let q = RatPoly::new(&f3, vec![t.neg(), RatFunc::zero(&f3), RatFunc::zero(&f3), RatFunc::one(&f3)]);
        assert!(!q.is_separable());
        assert!(from_roots(&f3, Elem::ONE, &[t.clone(), t.square()]).is_separable());
    }
}
