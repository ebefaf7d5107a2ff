//! Local and global canonical heights, in `log_q` units.

use std::collections::HashSet;
use std::fmt;

use super::family::{iterate, BinomialFamily};
use super::orbit::{escape_radius, orbit_support};
use crate::check::{fmt_rational, int, Rational, Trace};
use crate::error::Result;
use crate::places::{abs_log, log_plus, weil_height, Place};
use crate::ratfunc::RatFunc;

pub const DEFAULT_PRECISION_STEPS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    /// The true value lies in `[value, value + bound]`.
    UpperBounded(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalHeight {
    pub value: Rational,
    pub exactness: Exactness,
}

impl LocalHeight {
    fn exact(value: Rational) -> Self {
        LocalHeight { value, exactness: Exactness::Exact }
    }

    pub fn is_exact(&self) -> bool {
        self.exactness == Exactness::Exact
    }

    pub fn upper(&self) -> Rational {
        match self.exactness {
            Exactness::Exact => self.value,
            Exactness::UpperBounded(b) => self.value + b,
        }
    }
}

impl fmt::Display for LocalHeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exactness {
            Exactness::Exact => write!(f, "{} (exact)", fmt_rational(&self.value)),
            Exactness::UpperBounded(b) => write!(f, "{} (<= +{})", fmt_rational(&self.value), fmt_rational(&b)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct HeightReport {
    pub locals: Vec<(Place, LocalHeight)>,
    /// `[lower, upper]`; a single point when all locals are exact.
    pub lower: Rational,
    pub upper: Rational,
    pub steps: usize,
}

impl HeightReport {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn global(&self) -> Option<Rational> {
        self.is_exact().then_some(self.lower)
    }
}

enum Slot {
    Open(Rational),
    Done(LocalHeight),
}

/// Runs the orbit until every place is resolved, a cycle appears or
/// `precision_steps` iterations have been spent.
fn scan(fam: &BinomialFamily, lambda: &RatFunc, x: &RatFunc, places: &[Place], precision_steps: usize) -> (Vec<LocalHeight>, usize) {
    let d2 = int(fam.d2 as i128);
    let mut slots: Vec<Slot> = places.iter().map(|v| Slot::Open(escape_radius(fam, lambda, v))).collect();
    let mut seen = HashSet::new();
    let mut z = x.clone();
    let mut scale = int(1);
    let mut n = 0;
    let mut cycled = false;
    loop {
        for (slot, v) in slots.iter_mut().zip(places) {
            if let Slot::Open(r) = slot {
                let a = log_plus(&z, v);
                if a > *r {
                    *slot = Slot::Done(LocalHeight::exact(a / scale));
                } else if *r == int(0) {
                    // Unit ball closed under f_lambda.
                    *slot = Slot::Done(LocalHeight::exact(int(0)));
                }
            }
        }
        if !slots.iter().any(|s| matches!(s, Slot::Open(_))) {
            break;
        }
        if !seen.insert(z.clone()) {
            cycled = true;
            break;
        }
        if n == precision_steps {
            break;
        }
        z = fam.eval_lambda(&z, lambda);
        scale *= d2;
        n += 1;
    }
    let out = slots
        .into_iter()
        .map(|s| match s {
            Slot::Done(h) => h,
            Slot::Open(_) if cycled => LocalHeight::exact(int(0)),
            Slot::Open(r) => LocalHeight { value: int(0), exactness: Exactness::UpperBounded(r * d2 / scale) },
        })
        .collect();
    (out, n)
}

pub fn local_canonical_height(
    fam: &BinomialFamily,
    lambda: &RatFunc,
    x: &RatFunc,
    v: &Place,
    precision_steps: usize,
) -> Result<LocalHeight> {
    if !orbit_support(lambda, x)?.contains(v) {
        return Ok(LocalHeight::exact(int(0)));
    }
    Ok(scan(fam, lambda, x, std::slice::from_ref(v), precision_steps).0.remove(0))
}

pub fn global_canonical_height(fam: &BinomialFamily, lambda: &RatFunc, x: &RatFunc, precision_steps: usize) -> Result<HeightReport> {
    let places = orbit_support(lambda, x)?;
    let (hs, steps) = scan(fam, lambda, x, &places, precision_steps);
    let lower = hs.iter().map(|h| h.value).sum();
    let upper = hs.iter().map(|h| h.upper()).sum();
    Ok(HeightReport { locals: places.into_iter().zip(hs).collect(), lower, upper, steps })
}

/// `h(lambda)/d2 - h(alpha) <= h_hat(alpha) <= h(lambda)/d2 + h(alpha)`.
pub fn sandwich_check(fam: &BinomialFamily, lambda: &RatFunc, alpha: &RatFunc, report: &HeightReport) -> Trace {
    let d2 = int(fam.d2 as i128);
    let hl = weil_height(lambda) / d2;
    let ha = weil_height(alpha);
    let (lo, hi) = (hl - ha, hl + ha);
    let mut trace = Trace::new();
    trace.push(
        "height sandwich lower",
        report.upper >= lo,
        format!("h(lambda)/d2 - h(alpha) = {} <= {}", fmt_rational(&lo), fmt_rational(&report.upper)),
    );
    trace.push(
        "height sandwich upper",
        report.lower <= hi,
        format!("{} <= h(lambda)/d2 + h(alpha) = {}", fmt_rational(&report.lower), fmt_rational(&hi)),
    );
    trace
}

/// `f_lambda^m(alpha) = beta` forces `h_hat(alpha) <= (2h(alpha) + 2h(beta))/d2^m`.
pub fn witness_bound_check(
    fam: &BinomialFamily,
    lambda: &RatFunc,
    alpha: &RatFunc,
    beta: &RatFunc,
    m: u32,
    report: &HeightReport,
) -> Trace {
    let mut trace = Trace::new();
    let hit = iterate(fam, lambda, alpha, m as usize) == *beta;
    trace.push("witness f_lambda^m(alpha) = beta", hit, format!("m = {m}"));
    let bound = (int(2) * weil_height(alpha) + int(2) * weil_height(beta)) / int((fam.d2 as i128).pow(m));
    trace.push(
        "witness height bound",
        report.upper <= bound,
        format!("h_hat(alpha) <= {} against (2h(alpha)+2h(beta))/d2^m = {}", fmt_rational(&report.upper), fmt_rational(&bound)),
    );
    trace
}

/// `h(f^N(x))/d2^N`, the finite-stage approximation of the global height.
pub fn naive_stage(fam: &BinomialFamily, lambda: &RatFunc, x: &RatFunc, n: usize) -> Rational {
    weil_height(&iterate(fam, lambda, x, n)) / int((fam.d2 as i128).pow(n as u32))
}

/// `abs_log` of `steps` further iterates past an escape, each `d2` times the last.
pub fn escape_exactness(fam: &BinomialFamily, lambda: &RatFunc, z: &RatFunc, v: &Place, steps: usize) -> bool {
    let d2 = int(fam.d2 as i128);
    let mut cur = z.clone();
    for _ in 0..steps {
        let next = fam.eval_lambda(&cur, lambda);
        match (abs_log(&cur, v), abs_log(&next, v)) {
            (Ok(a), Ok(b)) if b == d2 * a => cur = next,
            _ => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::FieldSpec;
    use crate::ratfunc::expr::parse_rat;

    fn setup() -> (crate::gfq::Field, BinomialFamily) {
        let f = FieldSpec::prime(3).unwrap();
        let fam = BinomialFamily::from_ints(&f, 2, 5, 1, 6).unwrap();
        (f, fam)
    }

    #[test]
    fn escaping_point() {
        let (f, fam) = setup();
        let t = RatFunc::t(&f);
        let zero = RatFunc::zero(&f);
        let h = local_canonical_height(&fam, &zero, &t, &Place::Infinity, 6).unwrap();
        assert_eq!(h, LocalHeight::exact(int(1)));
        let g = global_canonical_height(&fam, &zero, &t, 6).unwrap();
        assert_eq!(g.global(), Some(int(1)));
        assert_eq!(naive_stage(&fam, &zero, &t, 2), int(1));
        assert!(sandwich_check(&fam, &zero, &t, &g).all_pass());
    }

    #[test]
    fn large_parameter() {
        let (f, fam) = setup();
        let t = RatFunc::t(&f);
        let lambda = parse_rat("t^12", &f).unwrap();
        let g = global_canonical_height(&fam, &lambda, &t, 6).unwrap();
        assert_eq!(g.global(), Some(int(2)));
        assert!(g.lower >= int(1));
        assert!(sandwich_check(&fam, &lambda, &t, &g).all_pass());
    }

    #[test]
    fn preperiodic_point_has_height_zero() {
        let (f, fam) = setup();
        let alpha = parse_rat("(t^2+1)/t", &f).unwrap();
        let la = alpha.sub(&fam.eval(&alpha));
        let g = global_canonical_height(&fam, &la, &alpha, 6).unwrap();
        assert_eq!(g.global(), Some(int(0)));
        for (_, h) in &g.locals {
            assert!(h.is_exact());
        }
    }

    #[test]
    fn unit_ball_is_zero() {
        let (f, fam) = setup();
        let x = parse_rat("1/(t+1)", &f).unwrap();
        let lambda = parse_rat("t/(t+2)", &f).unwrap();
        for v in [Place::Infinity, Place::t(&f)] {
            assert_eq!(local_canonical_height(&fam, &lambda, &x, &v, 4).unwrap(), LocalHeight::exact(int(0)));
        }
    }

    #[test]
    fn witness_bound() {
        let (f, fam) = setup();
        let alpha = parse_rat("t", &f).unwrap();
        let lambda = parse_rat("t^2 + 1", &f).unwrap();
        let beta = iterate(&fam, &lambda, &alpha, 1);
        let g = global_canonical_height(&fam, &lambda, &alpha, 6).unwrap();
        assert!(witness_bound_check(&fam, &lambda, &alpha, &beta, 1, &g).all_pass());
    }
}
