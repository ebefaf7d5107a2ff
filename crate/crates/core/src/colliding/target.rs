//! Target-parameter polynomials `f_u^m(alpha) - beta` in `u`.

use crate::dynlab::params::{distinct_root_count, lcm, orbit_in_lambda};
use crate::dynlab::BinomialFamily;
use crate::error::Result;
use crate::newton::root_abs_multiset;
use crate::places::Place;
use crate::ratfunc::{Poly, RatFunc, RatPoly};

#[derive(Debug, Clone)]
pub struct TargetPoly {
    pub m: usize,
    pub poly: RatPoly,
    pub distinct_roots: usize,
    /// Distinct roots of the product over all `m' <= m` in the list.
    pub cumulative: usize,
}

#[derive(Debug, Clone)]
pub struct TargetReport {
    pub entries: Vec<TargetPoly>,
    /// Cumulative counts strictly increase along the list.
    pub growing: bool,
}

pub fn target_param_polys(fam: &BinomialFamily, alpha: &RatFunc, beta: &RatFunc, ms: &[usize]) -> TargetReport {
    let top = ms.iter().copied().max().unwrap_or(0);
    let orbit = orbit_in_lambda(fam, alpha, top);
    let target = RatPoly::constant(beta.clone());
    let mut acc: Option<RatPoly> = None;
    let mut entries = Vec::new();
    for &m in ms {
        let poly = orbit[m].sub(&target);
        let distinct_roots = distinct_root_count(&poly);
        let union = match &acc {
            None => poly.clone(),
            Some(a) if poly.is_zero() => a.clone(),
            Some(a) => lcm(a, &poly),
        };
        let cumulative = distinct_root_count(&union);
        acc = Some(union);
        entries.push(TargetPoly { m, poly, distinct_roots, cumulative });
    }
    let growing = entries.windows(2).all(|w| w[0].cumulative < w[1].cumulative);
    TargetReport { entries, growing }
}

/// Roots in `F_q[t]` of a polynomial with constant leading coefficient and
/// polynomial coefficients, found by exhausting the degree bound from the
/// Newton polygon at infinity. `None` when the search would exceed `limit`
/// candidates or the shape does not apply.
pub fn polynomial_roots(poly: &RatPoly, limit: u64) -> Result<Option<Vec<RatFunc>>> {
    let field = poly.field().clone();
    let Some(deg) = poly.degree() else {
        return Ok(None);
    };
    if !poly.lead().is_constant() || poly.coeffs().iter().any(|c| !c.den().is_one()) {
        return Ok(None);
    }
    let mut roots = Vec::new();
    let (k, rest) = poly.strip_x_power();
    if k > 0 {
        roots.push(RatFunc::zero(&field));
    }
    if deg == k {
        return Ok(Some(roots));
    }
    let bound = root_abs_multiset(&rest, &Place::Infinity)?.into_iter().max().expect("nonempty");
    if bound < num_rational::Ratio::from_integer(0) {
        return Ok(Some(roots));
    }
    let top = bound.floor().to_integer() as u32;
    let q = field.q() as u64;
    let count = q.checked_pow(top + 1).filter(|&c| c <= limit);
    let Some(count) = count else {
        return Ok(None);
    };
    for idx in 0..count {
        let mut digits = Vec::with_capacity(top as usize + 1);
        let mut rest_idx = idx;
        for _ in 0..=top {
            digits.push(field.elem((rest_idx % q) as u32));
            rest_idx /= q;
        }
        let u = RatFunc::from_poly(Poly::from_elems(&field, digits));
        if !u.is_zero() && rest.eval(&u).is_zero() {
            roots.push(u);
        }
    }
    Ok(Some(roots))
}
