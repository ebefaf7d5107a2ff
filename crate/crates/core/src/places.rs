//! Places of `F_q(t)`, normalized absolute values and Weil heights.
//!
//! `|x|_v = q^{-deg(v) ord_v(x)}`; an [`AbsLog`] stores the base-`q` exponent.

use std::fmt;

use crate::check::{int, Rational};
use crate::error::{Error, Result};
use crate::gfq::Field;
use crate::ratfunc::expr::parse_rat;
use crate::ratfunc::factor::{is_irreducible, poly_factor};
use crate::ratfunc::{Poly, RatFunc};

pub type AbsLog = Rational;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    /// A monic irreducible polynomial in `t`.
    Finite(Poly),
    Infinity,
}

impl Place {
    pub fn finite(pi: Poly) -> Result<Place> {
        if !pi.is_monic() || !is_irreducible(&pi) {
            return Err(Error::Precondition(format!("{pi} is not monic irreducible")));
        }
        Ok(Place::Finite(pi))
    }

    /// The place `(t)`.
    pub fn t(field: &Field) -> Place {
        Place::Finite(Poly::x(field))
    }

    pub fn deg(&self) -> usize {
        match self {
            Place::Finite(pi) => pi.deg_or_zero(),
            Place::Infinity => 1,
        }
    }

    /// `inf` or a monic irreducible polynomial in `t`.
    pub fn parse(text: &str, field: &Field) -> Result<Place> {
        let text = text.trim();
        if text == "inf" || text == "infinity" || text == "∞" {
            return Ok(Place::Infinity);
        }
        let r = parse_rat(text, field)?;
        if !r.den().is_one() || r.num().is_constant() {
            return Err(Error::Precondition(format!("place {text:?} is not a nonconstant polynomial")));
        }
        Place::finite(r.num().clone())
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(pi) => write!(f, "{}", pi.format_var("t")),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Place({self})")
    }
}

fn multiplicity(p: &Poly, pi: &Poly) -> i64 {
    let mut n = 0;
    let mut cur = p.clone();
    loop {
        let (q, r) = cur.divrem(pi).expect("nonzero place polynomial");
        if !r.is_zero() {
            return n;
        }
        cur = q;
        n += 1;
    }
}

/// `ord_v(x)`; `None` stands for `+infinity` at `x = 0`.
pub fn ord_at(x: &RatFunc, v: &Place) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(match v {
        Place::Infinity => x.den().deg_or_zero() as i64 - x.num().deg_or_zero() as i64,
        Place::Finite(pi) => multiplicity(x.num(), pi) - multiplicity(x.den(), pi),
    })
}

/// `-deg(v) ord_v(x)`.
pub fn abs_log(x: &RatFunc, v: &Place) -> Result<AbsLog> {
    let ord = ord_at(x, v).ok_or(Error::ZeroInput)?;
    Ok(int(-(v.deg() as i128) * ord as i128))
}

/// `log_q max(1, |x|_v)`, with `0` at `x = 0`.
pub fn log_plus(x: &RatFunc, v: &Place) -> AbsLog {
    abs_log(x, v).map(|a| a.max(int(0))).unwrap_or(int(0))
}

/// Places with nonzero order, finite places first in canonical order.
pub fn support(x: &RatFunc) -> Result<Vec<(Place, i64)>> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out = Vec::new();
    for (g, e) in poly_factor(x.num())?.factors {
        out.push((Place::Finite(g), e as i64));
    }
    for (g, e) in poly_factor(x.den())?.factors {
        out.push((Place::Finite(g), -(e as i64)));
    }
    out.sort();
    let inf = x.den().deg_or_zero() as i64 - x.num().deg_or_zero() as i64;
    if inf != 0 {
        out.push((Place::Infinity, inf));
    }
    Ok(out)
}

/// Places where `x` has a pole.
pub fn poles(x: &RatFunc) -> Result<Vec<Place>> {
    if x.is_zero() {
        return Ok(Vec::new());
    }
    let mut out: Vec<Place> =
        poly_factor(x.den())?.factors.into_iter().map(|(g, _)| Place::Finite(g)).collect();
    if x.num().deg_or_zero() > x.den().deg_or_zero() {
        out.push(Place::Infinity);
    }
    Ok(out)
}

/// `sum_v deg(v) ord_v(x)`, which the product formula forces to be `0`.
pub fn product_formula_check(x: &RatFunc) -> Result<Rational> {
    let total: i128 = support(x)?.iter().map(|(v, o)| v.deg() as i128 * *o as i128).sum();
    Ok(int(total))
}

/// The places where `alpha` or `beta` has absolute value `> 1`, with
/// `C_v = max(|alpha|_v, |beta|_v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceSetS {
    pub places: Vec<(Place, AbsLog)>,
}

impl PlaceSetS {
    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    pub fn c_v(&self, v: &Place) -> Option<AbsLog> {
        self.places.iter().find(|(w, _)| w == v).map(|(_, c)| *c)
    }
}

pub fn exceptional_set(alpha: &RatFunc, beta: &RatFunc) -> Result<PlaceSetS> {
    let mut places = poles(alpha)?;
    for v in poles(beta)? {
        if !places.contains(&v) {
            places.push(v);
        }
    }
    places.sort();
    let places = places
        .into_iter()
        .map(|v| {
            let c = log_plus(alpha, &v).max(log_plus(beta, &v));
            (v, c)
        })
        .collect();
    Ok(PlaceSetS { places })
}

/// `max(deg num, deg den)`, with `h(0) = 0`.
pub fn weil_height(x: &RatFunc) -> Rational {
    if x.is_zero() {
        return int(0);
    }
    int(x.num().deg_or_zero().max(x.den().deg_or_zero()) as i128)
}
