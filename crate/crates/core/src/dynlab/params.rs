//! Parameter polynomials `f_lambda^m(alpha) - f_lambda^n(alpha)` in `lambda`.

use super::family::BinomialFamily;
use crate::ratfunc::{RatFunc, RatPoly};

/// `f_lambda^k(alpha)` as a polynomial in `lambda` for `k = 0..=n`.
pub fn orbit_in_lambda(fam: &BinomialFamily, alpha: &RatFunc, n: usize) -> Vec<RatPoly> {
    let f = RatPoly::from_poly(&fam.poly());
    let lambda = RatPoly::x(&fam.field);
    let mut out = vec![RatPoly::constant(alpha.clone())];
    for _ in 0..n {
        let next = f.compose(out.last().unwrap()).add(&lambda);
        out.push(next);
    }
    out
}

/// Number of distinct roots in the algebraic closure of `F_q(t)`.
///
/// Roots whose multiplicity is prime to `p` are counted by
/// `w = P / gcd(P, P')`; after removing them the rest is `Q(lambda^p)`,
/// whose distinct roots correspond one-to-one with those of `Q`.
pub fn distinct_root_count(poly: &RatPoly) -> usize {
    let Some(deg) = poly.degree() else {
        return 0;
    };
    if deg == 0 {
        return 0;
    }
    let d = poly.derivative();
    let (rest, w_deg) = if d.is_zero() {
        (poly.clone(), 0)
    } else {
        let g = poly.gcd(&d);
        let w = poly.divrem(&g).expect("gcd is nonzero").0;
        let mut h = poly.clone();
        loop {
            let c = h.gcd(&w);
            if c.degree() == Some(0) {
                break;
            }
            h = h.divrem(&c).expect("nonzero").0;
        }
        (h, w.degree().unwrap())
    };
    if rest.degree() == Some(0) {
        return w_deg;
    }
    let p = poly.field().p() as usize;
    let q: Vec<RatFunc> = rest.coeffs().iter().step_by(p).cloned().collect();
    w_deg + distinct_root_count(&RatPoly::new(poly.field(), q))
}

/// `lcm(a, b)` up to a unit.
pub fn lcm(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let g = a.gcd(b);
    a.divrem(&g).expect("nonzero gcd").0.mul(b)
}

#[derive(Debug, Clone)]
pub struct ParamPoly {
    pub m: usize,
    pub n: usize,
    pub poly: RatPoly,
    pub distinct_roots: usize,
}

/// `P_{m,n}(lambda) = f_lambda^m(alpha) - f_lambda^n(alpha)` for `m > n >= 0`.
pub fn param_preperiodicity_polys(fam: &BinomialFamily, alpha: &RatFunc, pairs: &[(usize, usize)]) -> Vec<ParamPoly> {
    let top = pairs.iter().map(|&(m, _)| m).max().unwrap_or(0);
    let orbit = orbit_in_lambda(fam, alpha, top);
    pairs
        .iter()
        .map(|&(m, n)| {
            let poly = orbit[m].sub(&orbit[n]);
            let distinct_roots = distinct_root_count(&poly);
            ParamPoly { m, n, poly, distinct_roots }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::FieldSpec;
    use crate::ratfunc::expr::parse_rat;

    #[test]
    fn root_counts() {
        let f = FieldSpec::prime(3).unwrap();
        let t = RatFunc::t(&f);
        let lin = RatPoly::new(&f, vec![t.clone(), RatFunc::one(&f)]);
        assert_eq!(distinct_root_count(&lin), 1);
        assert_eq!(distinct_root_count(&lin.pow(6)), 1);
        // lambda^3 - t is inseparable with a single root.
        let insep = RatPoly::new(&f, vec![t.neg(), RatFunc::zero(&f), RatFunc::zero(&f), RatFunc::one(&f)]);
        assert_eq!(distinct_root_count(&insep), 1);
        let other = RatPoly::new(&f, vec![t.add(&RatFunc::one(&f)), RatFunc::one(&f)]);
        assert_eq!(distinct_root_count(&insep.mul(&other).mul(&lin.pow(2))), 3);
        assert_eq!(distinct_root_count(&insep.pow(3).mul(&other)), 2);
    }

    #[test]
    fn low_orders() {
        let f = FieldSpec::prime(3).unwrap();
        let fam = BinomialFamily::from_ints(&f, 1, 2, 1, 3).unwrap();
        let t = RatFunc::t(&f);
        let ps = param_preperiodicity_polys(&fam, &t, &[(1, 0), (2, 1), (3, 2)]);
        assert_eq!(ps[0].poly.degree(), Some(1));
        assert_eq!(ps[0].distinct_roots, 1);
        let la = t.sub(&fam.eval(&t));
        assert!(ps[0].poly.eval(&la).is_zero());
        assert_eq!(ps[1].poly.degree(), Some(3));
        assert!(ps[1].distinct_roots >= 3);
        assert!(ps[0].distinct_roots < ps[1].distinct_roots && ps[1].distinct_roots < ps[2].distinct_roots);
        let abar = parse_rat("t", &f).unwrap();
        assert!(ps[1].poly.eval(&abar.sub(&fam.eval(&abar))).is_zero());
    }
}
