//! Elements of `F_q(t)` in canonical form.

use std::fmt;
use std::hash::{Hash, Hasher};

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::gfq::{embedding, Elem, Field};

/// `num / den` with `gcd(num, den) = 1` and `den` monic; zero is `0/1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl Hash for RatFunc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        num.check_same(&den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        Ok(Self::normalize(num, den))
    }

    /// Assumes `gcd(num, den) = 1`.
    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc { den: Poly::one(num.field()), num };
        }
        if den.is_monic() {
            return RatFunc { num, den };
        }
        let inv = den.field().inv(den.lead()).expect("nonzero");
        RatFunc { num: num.scale(inv), den: den.scale(inv) }
    }

    pub fn from_poly(num: Poly) -> Self {
        let den = Poly::one(num.field());
        RatFunc { num, den }
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_poly(Poly::zero(field))
    }

    pub fn one(field: &Field) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn constant(field: &Field, c: Elem) -> Self {
        Self::from_poly(Poly::constant(field, c))
    }

    pub fn from_int(field: &Field, n: i64) -> Self {
        Self::constant(field, field.from_int(n))
    }

    /// The transcendental `t`.
    pub fn t(field: &Field) -> Self {
        Self::from_poly(Poly::x(field))
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True for elements of `F_q`.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Elem> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn same_field(&self, other: &RatFunc) -> Result<()> {
        self.num.check_same(&other.num)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.add(&other.num));
        }
        // Henrici: only the gcd of the new numerator with g can cancel.
        let g = self.den.gcd(&other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            return Self::normalize(num, self.den.mul(&other.den));
        }
        let b1 = self.den.div_exact(&g);
        let d1 = other.den.div_exact(&g);
        let num = self.num.mul(&d1).add(&other.num.mul(&b1));
        let h = num.gcd(&g);
        let den = b1.mul(&other.den);
        if h.is_one() {
            Self::normalize(num, den)
        } else {
            Self::normalize(num.div_exact(&h), den.div_exact(&h))
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field());
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), other.den.clone())
        } else {
            (self.num.div_exact(&g1), other.den.div_exact(&g1))
        };
        let (c, b) = if g2.is_one() {
            (other.num.clone(), self.den.clone())
        } else {
            (other.num.div_exact(&g2), self.den.div_exact(&g2))
        };
        Self::normalize(a.mul(&c), b.mul(&d))
    }

    pub fn scale(&self, c: Elem) -> RatFunc {
        if c.is_zero() {
            return Self::zero(self.field());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn square(&self) -> RatFunc {
        RatFunc { num: self.num.square(), den: self.den.square() }
    }

    pub fn pow(&self, e: u64) -> RatFunc {
        if e == 0 {
            return Self::one(self.field());
        }
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn pow_i64(&self, e: i64) -> Result<RatFunc> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// `self^{p^j}`.
    pub fn frobenius_power(&self, j: u32) -> RatFunc {
        RatFunc { num: self.num.frobenius_power(j), den: self.den.frobenius_power(j) }
    }

    /// The unique `r` with `r^{p^j} = self`, when it exists in `F_q(t)`.
    pub fn pth_power_root(&self, j: u32) -> Option<RatFunc> {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        for _ in 0..j {
            num = num.pth_root()?;
            den = den.pth_root()?;
        }
        Some(RatFunc { num, den })
    }

    /// `self(t^e)`, i.e. the image under `t -> t^e`.
    pub fn substitute_t_pow(&self, e: u64) -> RatFunc {
        let field = self.field().clone();
        let spread = |p: &Poly| {
            let mut c = vec![Elem::ZERO; (p.deg_or_zero() * e as usize) + 1];
            for (i, &x) in p.coeffs().iter().enumerate() {
                c[i * e as usize] = x;
            }
            Poly::from_elems(&field, c)
        };
        RatFunc { num: spread(&self.num), den: spread(&self.den) }
    }

    /// Coefficients pushed into a larger field.
    pub fn embed(&self, dst: &Field) -> Result<RatFunc> {
        let table = embedding(self.field(), dst)?;
        let map = |c: Elem| table[c.index() as usize];
        Ok(RatFunc { num: self.num.map_coeffs(dst, map), den: self.den.map_coeffs(dst, map) })
    }

    /// Evaluate at `t = a`; `None` at a pole.
    pub fn eval(&self, a: Elem) -> Option<Elem> {
        let d = self.den.eval(a);
        if d.is_zero() {
            return None;
        }
        Some(self.field().div(self.num.eval(a), d).expect("nonzero"))
    }

    pub fn format_var(&self, var: &str) -> String {
        let n = self.num.format_var(var);
        if self.den.is_one() {
            return n;
        }
        let wrap = |s: String| if s.contains(' ') || s.contains('*') { format!("({s})") } else { s };
        format!("{}/{}", wrap(n), wrap(self.den.format_var(var)))
    }

    pub fn arith(&self, other: &RatFunc, op: RatOp) -> Result<RatFunc> {
        self.same_field(other)?;
        match op {
            RatOp::Add => Ok(self.add(other)),
            RatOp::Sub => Ok(self.sub(other)),
            RatOp::Mul => Ok(self.mul(other)),
            RatOp::Div => self.div(other),
        }
    }
}

pub fn rat_arith(a: &RatFunc, b: &RatFunc, op: RatOp) -> Result<RatFunc> {
    a.arith(b, op)
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self.format_var("t"))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_var("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::FieldSpec;
    use proptest::prelude::*;

    fn rf(field: &Field, num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(field, num), Poly::from_ints(field, den)).unwrap()
    }

    #[test]
    fn sum_collapses() {
        let f3 = FieldSpec::prime(3).unwrap();
        let a = rf(&f3, &[0, 1], &[1, 1]);
        let b = rf(&f3, &[1], &[1, 1]);
        assert!(a.add(&b).is_one());
    }

    #[test]
    fn canonical_reduction() {
        let f3 = FieldSpec::prime(3).unwrap();
        let a = rf(&f3, &[-1, 0, 1], &[-1, 1]);
        assert_eq!(a, RatFunc::from_poly(Poly::from_ints(&f3, &[1, 1])));
        let b = rf(&f3, &[1], &[2, 2]);
        assert!(b.den().is_monic());
    }

    #[test]
    fn zero_denominator_rejected() {
        let f3 = FieldSpec::prime(3).unwrap();
        let r = RatFunc::new(Poly::one(&f3), Poly::zero(&f3));
        assert_eq!(r.unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn display() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(rf(&f3, &[0, 0, 0, 0, 0, 2, 1], &[1]).to_string(), "t^6 + 2*t^5");
        assert_eq!(rf(&f3, &[1, 0, 1], &[2, 1]).to_string(), "(t^2 + 1)/(t + 2)");
        assert_eq!(rf(&f3, &[1], &[0, 1]).to_string(), "1/t");
    }

    fn small(field: Field) -> impl Strategy<Value = RatFunc> {
        let q = field.q() as i64;
        (prop::collection::vec(0..q, 0..5), prop::collection::vec(0..q, 1..5)).prop_filter_map(
            "nonzero denominator",
            move |(n, d)| {
                let elems = |v: &[i64]| v.iter().map(|&c| Elem(c as u32)).collect();
                RatFunc::new(Poly::from_elems(&field, elems(&n)), Poly::from_elems(&field, elems(&d))).ok()
            },
        )
    }

    proptest! {
        #[test]
        fn field_laws(a in small(FieldSpec::with_degree(3, 2).unwrap()),
                      b in small(FieldSpec::with_degree(3, 2).unwrap()),
                      c in small(FieldSpec::with_degree(3, 2).unwrap())) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            }
            // Normal form: equal values have identical representations.
            let lhs = a.mul(&b).add(&a.mul(&c));
            let rhs = a.mul(&b.add(&c));
            prop_assert_eq!(lhs.num().coeffs(), rhs.num().coeffs());
            prop_assert_eq!(lhs.den().coeffs(), rhs.den().coeffs());
        }

        #[test]
        fn frobenius_root_round_trip(a in small(FieldSpec::prime(3).unwrap()), j in 0u32..3) {
            prop_assert_eq!(a.frobenius_power(j).pth_power_root(j).unwrap(), a.clone());
            prop_assert_eq!(a.frobenius_power(j), a.pow(3u64.pow(j)));
        }
    }
}
