//! Exact preperiodicity detection with escape certificates.

use std::collections::HashMap;

use super::family::BinomialFamily;
use crate::check::{int, Rational};
use crate::error::Result;
use crate::places::{abs_log, poles, AbsLog, Place};
use crate::ratfunc::RatFunc;

pub const DEFAULT_MAX_STEPS: usize = 10_000;
const PREFIX_LEN: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitStatus {
    /// `f^tail(x) = f^(tail + period)(x)`, both minimal.
    Preperiodic { tail: usize, period: usize },
    /// `abs_log(f^index(x), place) = value` exceeds the escape radius.
    Escaping { place: Place, index: usize, value: AbsLog },
    Undecided { steps: usize },
}

#[derive(Debug, Clone)]
pub struct OrbitReport {
    pub status: OrbitStatus,
    pub orbit_prefix: Vec<RatFunc>,
}

impl OrbitReport {
    pub fn is_preperiodic(&self) -> bool {
        matches!(self.status, OrbitStatus::Preperiodic { .. })
    }
}

/// Places where some orbit point can have a pole.
pub fn orbit_support(lambda: &RatFunc, x: &RatFunc) -> Result<Vec<Place>> {
    let mut out = poles(x)?;
    for v in poles(lambda)? {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out.sort();
    Ok(out)
}

/// `r_v = max(0, abs_log(c1)/(d2 - d1), abs_log(lambda)/d2)`. Past `r_v`
/// the top monomial dominates, so each step multiplies `abs_log` by `d2`.
pub fn escape_radius(fam: &BinomialFamily, lambda: &RatFunc, v: &Place) -> Rational {
    let c1 = RatFunc::constant(&fam.field, fam.c1);
    let mut r = int(0);
    if let Ok(a) = abs_log(&c1, v) {
        r = r.max(a / int((fam.d2 - fam.d1) as i128));
    }
    if let Ok(a) = abs_log(lambda, v) {
        r = r.max(a / int(fam.d2 as i128));
    }
    r
}

/// First place where `z` lies past its escape radius.
pub(crate) fn find_escape(z: &RatFunc, places: &[(Place, Rational)]) -> Option<(Place, AbsLog)> {
    places.iter().find_map(|(v, r)| match abs_log(z, v) {
        Ok(a) if a > *r => Some((v.clone(), a)),
        _ => None,
    })
}

pub fn preperiodic(fam: &BinomialFamily, lambda: &RatFunc, x: &RatFunc, max_steps: usize) -> Result<OrbitReport> {
    let radii: Vec<(Place, Rational)> =
        orbit_support(lambda, x)?.into_iter().map(|v| (v.clone(), escape_radius(fam, lambda, &v))).collect();
    let mut seen: HashMap<RatFunc, usize> = HashMap::new();
    let mut prefix = Vec::new();
    let mut z = x.clone();
    for n in 0..=max_steps {
        if prefix.len() < PREFIX_LEN {
            prefix.push(z.clone());
        }
        if let Some(&m) = seen.get(&z) {
            return Ok(OrbitReport { status: OrbitStatus::Preperiodic { tail: m, period: n - m }, orbit_prefix: prefix });
        }
        if n >= 1 {
            if let Some((place, value)) = find_escape(&z, &radii) {
                return Ok(OrbitReport { status: OrbitStatus::Escaping { place, index: n, value }, orbit_prefix: prefix });
            }
        }
        if n == max_steps {
            break;
        }
        let next = fam.eval_lambda(&z, lambda);
        seen.insert(z, n);
        z = next;
    }
    Ok(OrbitReport { status: OrbitStatus::Undecided { steps: max_steps }, orbit_prefix: prefix })
}
