//! Newton polygons over `(F_q(t), v)` and the fiber set `S(f, alpha)`.
//!
//! A segment of slope `s` and length `l` certifies `l` roots with `ord = -s`,
//! i.e. absolute-log value `deg(v) s`.

use std::collections::BTreeMap;

use crate::check::{fmt_rational, int, rat, Rational, Trace};
use crate::dynlab::family::BinomialFamily;
use crate::error::{Error, Result};
use crate::places::{ord_at, AbsLog, Place, PlaceSetS};
use crate::ratfunc::{eval_at_rat, Poly, RatFunc, RatPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub slope: Rational,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// `(i, ord_v(a_i))`, `None` for a zero coefficient.
    pub points: Vec<(usize, Option<i64>)>,
    /// Lower hull, slopes strictly increasing.
    pub segments: Vec<Segment>,
}

pub fn newton_polygon(p: &RatPoly, v: &Place) -> Result<NewtonPolygon> {
    let Some(deg) = p.degree() else {
        return Err(Error::ZeroPolynomial);
    };
    if deg == 0 {
        return Err(Error::Precondition("Newton polygon needs degree >= 1".into()));
    }
    let points: Vec<(usize, Option<i64>)> = p.coeffs().iter().enumerate().map(|(i, c)| (i, ord_at(c, v))).collect();
    let finite: Vec<(i64, i64)> = points.iter().filter_map(|&(i, o)| o.map(|o| (i as i64, o))).collect();
    // Monotone chain, lower part.
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &finite {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) as i128 * (pt.1 - a.1) as i128 - (b.1 - a.1) as i128 * (pt.0 - a.0) as i128;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| Segment { slope: rat((w[1].1 - w[0].1) as i128, (w[1].0 - w[0].0) as i128), length: (w[1].0 - w[0].0) as usize })
        .collect();
    Ok(NewtonPolygon { points, segments })
}

/// Absolute-log values of the nonzero roots, sorted, with multiplicity.
pub fn root_abs_multiset(p: &RatPoly, v: &Place) -> Result<Vec<AbsLog>> {
    let (_, stripped) = p.strip_x_power();
    if stripped.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let poly = newton_polygon(&stripped, v)?;
    let deg = int(v.deg() as i128);
    let mut out: Vec<AbsLog> =
        poly.segments.iter().flat_map(|s| std::iter::repeat_n(deg * s.slope, s.length)).collect();
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct PlaceFiber {
    pub place: Place,
    pub c_v: AbsLog,
    /// Absolute-log values of `abar - alpha` over `abar != alpha` in the fiber.
    pub multiset: Vec<AbsLog>,
}

#[derive(Debug, Clone)]
pub struct FiberData {
    pub alpha: RatFunc,
    /// `g1 = c1^{1/p^l1} x^s1 + c2^{1/p^l1} x^{p^{l2-l1} s2}`.
    pub g1: Poly,
    /// `g1(x) - g1(alpha)`.
    pub g2: RatPoly,
    pub separable: bool,
    pub count: usize,
    pub per_place: Vec<PlaceFiber>,
    pub trace: Trace,
}

/// The polynomial whose roots are `S(f, alpha)`, before subtracting `g1(alpha)`.
pub fn fiber_g1(fam: &BinomialFamily) -> Poly {
    let f = &fam.field;
    let j = fam.l1 as i64;
    let top = (fam.p().pow(fam.l2 - fam.l1) * fam.s2) as usize;
    let mut c = vec![crate::gfq::Elem::ZERO; top + 1];
    c[fam.s1 as usize] = f.frobenius(fam.c1, -j);
    c[top] = f.frobenius(fam.c2, -j);
    Poly::from_elems(f, c)
}

pub fn fiber_analyze(fam: &BinomialFamily, alpha: &RatFunc, s: &PlaceSetS) -> Result<FiberData> {
    if fam.l2 <= fam.l1 {
        return Err(Error::RhoUndefined);
    }
    if alpha.is_constant() {
        return Err(Error::Precondition("alpha must be nonconstant".into()));
    }
    let rho = fam.rho.ok_or(Error::RhoUndefined)?;
    let g1 = fiber_g1(fam);
    let g1_alpha = eval_at_rat(&g1, alpha);
    let g1r = RatPoly::from_poly(&g1);
    let g2 = g1r.sub(&RatPoly::constant(g1_alpha.clone()));
    let separable = g2.is_separable();
    if !separable {
        return Err(Error::NotSeparable);
    }
    let count = g2.degree().expect("nonzero");
    let mut trace = Trace::new();
    let expected = (fam.p().pow(fam.l2 - fam.l1) * fam.s2) as usize;
    trace.push("fiber size", count == expected, format!("|S(f,alpha)| = {count}, p^(l2-l1) s2 = {expected}"));
    trace.push("separable", true, "gcd(g2, g2') = 1");

    // Roots of h are abar - alpha for abar != alpha.
    let shifted = g1r.shift(alpha).sub(&RatPoly::constant(g1_alpha));
    let (k, h) = shifted.strip_x_power();
    debug_assert_eq!(k, 1);
    let mut per_place = Vec::new();
    for (v, c_v) in &s.places {
        let multiset = root_abs_multiset(&h, v)?;
        let small = (int(1) - rho) * *c_v;
        let name = format!("fiber values at {v}");
        trace.push(
            format!("{name}: entry count"),
            multiset.len() == expected - 1,
            format!("{} entries, expected {}", multiset.len(), expected - 1),
        );
        let allowed = multiset.iter().all(|a| *a == small || *a == *c_v);
        trace.push(
            format!("{name}: every entry in {{(1-rho)C, C}}"),
            allowed,
            format!("C = {}, (1-rho)C = {}, entries {}", fmt_rational(c_v), fmt_rational(&small), fmt_multiset(&multiset)),
        );
        trace.push(
            format!("{name}: some entry equals (1-rho)C"),
            multiset.contains(&small),
            format!("(1-rho)C = {}", fmt_rational(&small)),
        );
        if fam.s2 == 1 {
            trace.push(
                format!("{name}: all entries equal (1-rho)C when s2 = 1"),
                multiset.iter().all(|a| *a == small),
                fmt_multiset(&multiset),
            );
        }
        per_place.push(PlaceFiber { place: v.clone(), c_v: *c_v, multiset });
    }
    Ok(FiberData { alpha: alpha.clone(), g1, g2, separable, count, per_place, trace })
}

pub fn fmt_multiset(m: &[AbsLog]) -> String {
    let items: Vec<String> = m.iter().map(fmt_rational).collect();
    format!("{{{}}}", items.join(", "))
}

/// Multiset as value -> multiplicity.
pub fn multiset_counts(m: &[AbsLog]) -> BTreeMap<AbsLog, usize> {
    let mut out = BTreeMap::new();
    for a in m {
        *out.entry(*a).or_insert(0) += 1;
    }
    out
}
