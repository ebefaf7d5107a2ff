//! Regime-dispatched decision for the size of `Prep(f; alpha, beta)`.

use std::fmt;

use super::eps::eps_sequences;
use super::family::{classify, BinomialFamily, Regime};
use super::identities::rho1_obstruction;
use crate::check::{fmt_rational, int, Trace};
use crate::error::{Error, Result};
use crate::gfq::{Elem, GfElem};
use crate::places::{abs_log, exceptional_set, PlaceSetS};
use crate::ratfunc::{Poly, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// `alpha` and `beta` are constants.
    InfiniteTrivial,
    /// `f(alpha) = f(beta)`.
    InfiniteCollision,
    /// Additive family and `beta - alpha` constant.
    InfiniteMonomialShift,
    Finite(String),
    /// Equal regime with `eps_1` a constant solving the obstruction equation.
    EdgeUnknown(GfElem),
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::InfiniteTrivial => "InfiniteTrivial",
            Outcome::InfiniteCollision => "InfiniteCollision",
            Outcome::InfiniteMonomialShift => "InfiniteMonomialShift",
            Outcome::Finite(_) => "Finite",
            Outcome::EdgeUnknown(_) => "EdgeUnknown",
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Outcome::InfiniteTrivial | Outcome::InfiniteCollision | Outcome::InfiniteMonomialShift)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Finite(reason) => write!(f, "Finite ({reason})"),
            Outcome::EdgeUnknown(v) => write!(f, "EdgeUnknown (eps_1 = {v})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub outcome: Outcome,
    pub regime: Regime,
    pub eps1: RatFunc,
    /// Internal consistency; a failure here is a bug.
    pub assertions: Trace,
    /// Necessary conditions for an infinite `Prep`; a failure certifies `Finite`
    /// on its own.
    pub evidence: Trace,
}

fn necessary_conditions(fam: &BinomialFamily, alpha: &RatFunc, beta: &RatFunc, eps1: &RatFunc, s: &PlaceSetS) -> Result<Trace> {
    let mut ev = Trace::new();
    let ord_rho = matches!(fam.regime, Regime::StrictLess | Regime::Equal);
    for (v, c) in &s.places {
        let a = abs_log(alpha, v).unwrap_or(int(0));
        let b = abs_log(beta, v).unwrap_or(int(0));
        ev.push(
            format!("|alpha|_v = |beta|_v at {v}"),
            alpha.is_zero() == beta.is_zero() && a == b,
            format!("log |alpha| = {}, log |beta| = {}", fmt_rational(&a), fmt_rational(&b)),
        );
        if let (true, Some(rho)) = (ord_rho, fam.rho) {
            let small = (int(1) - rho) * *c;
            let cap = (int(1) / int(fam.p_l1() as i128) - int(fam.s1 as i128) + int(1)) * *c;
            let (ok, shown) = match abs_log(eps1, v) {
                Err(_) => (true, "-inf".to_string()),
                Ok(e) => (e == small || e <= cap, fmt_rational(&e)),
            };
            ev.push(
                format!("log |eps_1|_v in {{(1-rho)C}} or <= (1/p^l1 - s1 + 1)C at {v}"),
                ok,
                format!("log |eps_1| = {shown}, (1-rho)C = {}, cap = {}", fmt_rational(&small), fmt_rational(&cap)),
            );
        }
    }
    if !s.is_empty() {
        // The eps_n stay inside the disc of radius C_v.
        let seq = eps_sequences(fam, alpha, beta, 2, None)?;
        for (v, c) in &s.places {
            let ok = seq.eps.iter().all(|e| abs_log(e, v).map_or(true, |a| a <= *c));
            ev.push(format!("|eps_n|_v <= C_v for n <= 2 at {v}"), ok, format!("C = {}", fmt_rational(c)));
        }
    }
    Ok(ev)
}

pub fn prep_verdict(fam: &BinomialFamily, alpha: &RatFunc, beta: &RatFunc) -> Result<Verdict> {
    let field = &fam.field;
    let mut assertions = Trace::new();
    let again = classify(fam.p(), fam.d1, fam.d2);
    assertions.push("regime matches the classifier", again == fam.regime, format!("{} vs {}", fam.regime, again));
    let eps1 = fam.eval(beta).sub(&fam.eval(alpha));
    let s = exceptional_set(alpha, beta)?;
    let evidence = necessary_conditions(fam, alpha, beta, &eps1, &s)?;
    let outcome = if alpha.is_constant() && beta.is_constant() {
        Outcome::InfiniteTrivial
    } else if eps1.is_zero() {
        Outcome::InfiniteCollision
    } else {
        match fam.regime {
            Regime::Additive => {
                if beta.sub(alpha).is_constant() {
                    Outcome::InfiniteMonomialShift
                } else {
                    Outcome::Finite("additive family, beta - alpha not constant".into())
                }
            }
            Regime::GhDominant => Outcome::Finite("dominant top degree, f(alpha) != f(beta), not both constant".into()),
            Regime::StrictLess => Outcome::Finite("p^l2 (s2-1) < p^l1 (s1-1), f(alpha) != f(beta), not both constant".into()),
            Regime::Equal => {
                let ob = rho1_obstruction(fam)?;
                let hit = eps1.constant_value().and_then(|e| {
                    let g = GfElem::new(field, e);
                    (field.pow(e, ob.exponent as u128) == ob.target).then_some(g)
                });
                assertions.push(
                    "obstruction exponent p^l2 - p^l1",
                    ob.exponent == fam.p_l2() - fam.p_l1(),
                    format!("{}", ob.exponent),
                );
                match hit {
                    Some(g) => Outcome::EdgeUnknown(g),
                    None => Outcome::Finite(format!(
                        "eps_1 = {eps1} does not solve e^{} = {}",
                        ob.exponent,
                        field.format_expr(ob.target)
                    )),
                }
            }
            Regime::QuadraticLegacy => {
                assertions.extend(complete_square(fam)?);
                Outcome::Finite("conjugate to c2 y^2 + mu, f(alpha) != f(beta), not both constant".into())
            }
            Regime::Other => return Err(Error::WrongRegime("no classification applies".into())),
        }
    };
    if outcome.is_infinite() {
        let ok = evidence.all_pass();
        assertions.push("infinite outcome satisfies the necessary conditions", ok, format!("{} evidence checks", evidence.checks.len()));
    }
    Ok(Verdict { outcome, regime: fam.regime, eps1, assertions, evidence })
}

/// `c1 x + c2 x^2 = c2 (x + a)^2 - c2 a^2` with `a = c1/(2 c2)`.
fn complete_square(fam: &BinomialFamily) -> Result<Trace> {
    let f = &fam.field;
    let a = f.div(fam.c1, f.mul(f.from_int(2), fam.c2))?;
    let shifted = Poly::from_elems(f, vec![a, Elem::ONE]);
    let square = shifted.square().scale(fam.c2);
    let rebuilt = square.sub(&Poly::constant(f, f.mul(fam.c2, f.mul(a, a))));
    let mut trace = Trace::new();
    trace.push(
        "completing the square",
        rebuilt == fam.poly(),
        format!("c2 (x + {})^2 - c2 a^2 = {}", f.format_expr(a), rebuilt.format_var("x")),
    );
    Ok(trace)
}
