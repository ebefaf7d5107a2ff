//! Exact checks of the algebraic identities behind the finiteness proofs.

use super::eps::eps_sequences;
use super::family::{iterate, BinomialFamily, Regime};
use super::orbit::{preperiodic, OrbitStatus, DEFAULT_MAX_STEPS};
use crate::check::Trace;
use crate::error::{Error, Result};
use crate::gfq::{gf_all_nth_roots, Elem, Field, GfElem};
use crate::ratfunc::{RatFunc, RatPoly};

/// `binom(n, k) mod p` by Lucas' theorem.
pub fn binom_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut out = 1u64;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..b {
            c = c * (a - i) % p;
        }
        let mut den = 1u64;
        for i in 1..=b {
            den = den * i % p;
        }
        // Fermat inverse.
        let mut inv = 1u64;
        let (mut base, mut e) = (den, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                inv = inv * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        out = out * (c * inv % p) % p;
        n /= p;
        k /= p;
    }
    out
}

/// `f^n` with no parameter.
fn iterate_plain(fam: &BinomialFamily, x: &RatFunc, n: usize) -> RatFunc {
    iterate(fam, &RatFunc::zero(&fam.field), x, n)
}

#[derive(Debug, Clone)]
pub struct AdditiveReport {
    pub trace: Trace,
    /// `(k, l, r1, r2)` when the transfer to `beta` was carried out.
    pub transfer: Option<(usize, usize, usize, usize)>,
}

/// `f_lambda^n(beta) - f_lambda^n(alpha) = f^n(beta - alpha)` for `1 <= n <= N`,
/// plus the transfer of a cycle of `alpha` to `beta` when `beta - alpha` is constant.
pub fn additive_identity_check(
    fam: &BinomialFamily,
    alpha: &RatFunc,
    beta: &RatFunc,
    lambda: &RatFunc,
    n_max: usize,
) -> Result<AdditiveReport> {
    if fam.regime != Regime::Additive {
        return Err(Error::NotAdditive);
    }
    let mut trace = Trace::new();
    let u = beta.sub(alpha);
    let (mut za, mut zb, mut zu) = (alpha.clone(), beta.clone(), u.clone());
    for n in 1..=n_max {
        za = fam.eval_lambda(&za, lambda);
        zb = fam.eval_lambda(&zb, lambda);
        zu = fam.eval(&zu);
        let lhs = zb.sub(&za);
        trace.push(format!("additive identity n = {n}"), lhs == zu, format!("lhs = {lhs}, f^n(beta - alpha) = {zu}"));
    }
    let mut transfer = None;
    if u.is_constant() {
        let report = preperiodic(fam, lambda, alpha, DEFAULT_MAX_STEPS)?;
        if let OrbitStatus::Preperiodic { tail: k, period: l } = report.status {
            let q = fam.field.q() as usize;
            let mut seen: Vec<RatFunc> = Vec::new();
            let mut cur = iterate_plain(fam, &u, k);
            let step = |z: &RatFunc| iterate_plain(fam, z, l);
            let mut found = None;
            for r2 in 0..=q {
                if let Some(r1) = seen.iter().position(|s| *s == cur) {
                    found = Some((r1, r2));
                    break;
                }
                seen.push(cur.clone());
                cur = step(&cur);
            }
            if let Some((r1, r2)) = found {
                let b1 = iterate(fam, lambda, beta, k + r1 * l);
                let b2 = iterate(fam, lambda, beta, k + r2 * l);
                trace.push(
                    "preperiodicity transfer to beta",
                    b1 == b2,
                    format!("alpha cycle (k, l) = ({k}, {l}); f^(k+r l)(beta - alpha) repeats at r1 = {r1}, r2 = {r2}"),
                );
                transfer = Some((k, l, r1, r2));
            } else {
                trace.push("preperiodicity transfer to beta", false, format!("no repeat within {q} cycle steps"));
            }
        }
    }
    Ok(AdditiveReport { trace, transfer })
}

/// `eps_2 + delta_2 = c1 (2 eps_1 eps'_1)^(p^l1)` for `(s1, s2) = (2, 1)`.
pub fn s2eq1_sum_identity(fam: &BinomialFamily, alpha: &RatFunc, beta: &RatFunc) -> Result<Trace> {
    if (fam.s1, fam.s2) != (2, 1) {
        return Err(Error::WrongShape(format!("need (s1, s2) = (2, 1), got ({}, {})", fam.s1, fam.s2)));
    }
    let seq = eps_sequences(fam, alpha, beta, 2, None)?;
    let lhs = seq.eps[2].add(&seq.delta[2]);
    let two = fam.field.from_int(2);
    let rhs = seq.eps[1].mul(&seq.eps_prime[1]).scale(two).pow(fam.p_l1()).scale(fam.c1);
    let mut trace = Trace::new();
    trace.push("eps_2 + delta_2 = c1 (2 eps_1 eps'_1)^(p^l1)", lhs == rhs, format!("lhs = {lhs}, rhs = {rhs}"));
    Ok(trace)
}

/// `sum_{j=1}^{s-1} binom(s, j) e^(s-j) (X^j - a^j)` as a polynomial in `X`.
fn binomial_difference(field: &Field, s: u64, e: &RatFunc, a: &RatFunc) -> RatPoly {
    let p = field.p() as u64;
    let mut coeffs = vec![RatFunc::zero(field); s as usize];
    for j in 1..s {
        let b = field.from_int(binom_mod(s, j, p) as i64);
        if b.is_zero() {
            continue;
        }
        let c = e.pow(s - j).scale(b);
        coeffs[j as usize] = c.clone();
        coeffs[0] = coeffs[0].sub(&c.mul(&a.pow(j)));
    }
    RatPoly::new(field, coeffs)
}

/// `f(e + X) - f(X) - (f(e + a) - f(a))` as a polynomial in `X`.
fn difference_lhs(fam: &BinomialFamily, a: &RatFunc, e: &RatFunc) -> RatPoly {
    let f = RatPoly::from_poly(&fam.poly());
    let c = fam.eval(&e.add(a)).sub(&fam.eval(a));
    f.shift(e).sub(&f).sub(&RatPoly::constant(c))
}

/// The two-sum expansion of `eps_bar_2 - eps_2` with `alpha_bar` left as an
/// indeterminate `X`.
pub fn eps2bar_identity(fam: &BinomialFamily, alpha: &RatFunc, eps1: &RatFunc) -> Trace {
    let field = &fam.field;
    let lhs = difference_lhs(fam, alpha, eps1);
    let c1 = RatFunc::constant(field, fam.c1);
    let c2 = RatFunc::constant(field, fam.c2);
    let a = binomial_difference(field, fam.s1, eps1, alpha).pow(fam.p_l1()).scale(&c1);
    let b = binomial_difference(field, fam.s2, eps1, alpha).pow(fam.p_l2()).scale(&c2);
    let rhs = a.add(&b);
    let mut trace = Trace::new();
    trace.push(
        "eps_bar_2 - eps_2 expansion",
        lhs == rhs,
        format!("lhs = {}, rhs = {}", lhs.format_var("X"), rhs.format_var("X")),
    );
    let at_alpha = lhs.eval(alpha);
    trace.push("expansion vanishes at X = alpha", at_alpha.is_zero(), format!("value {at_alpha}"));
    trace
}

#[derive(Debug, Clone)]
pub enum FiberRoots {
    /// Points of `S(f, alpha)` other than `alpha`, in `F_q(t)`.
    Explicit(Vec<RatFunc>),
    /// Only the degrees and leading coefficients are tracked.
    Symbolic,
}

#[derive(Debug, Clone)]
pub struct TowerReport {
    /// `r = p^(l2 - l1)`.
    pub r: usize,
    /// `deg(g_i)` for `i = 1..r`; `None` when `g_i = 0`.
    pub degrees: Vec<Option<usize>>,
    /// Leading coefficient of `(x - alpha) g_1`.
    pub lead: Option<RatFunc>,
    /// The explicitly computed `g_i`, starting at `g_1`.
    pub explicit: Vec<RatPoly>,
    /// `g_r` at the supplied roots with index `>= r`.
    pub values: Vec<RatFunc>,
    pub trace: Trace,
}

fn divided(g: &RatPoly, a: &RatFunc) -> Result<RatPoly> {
    let num = g.sub(&RatPoly::constant(g.eval(a)));
    let lin = RatPoly::new(g.field(), vec![a.neg(), RatFunc::one(g.field())]);
    let (q, r) = num.divrem(&lin)?;
    if !r.is_zero() {
        return Err(Error::InexactDivision(format!("remainder {} at {a}", r.format_var("x"))));
    }
    Ok(q)
}

/// `g_1 = (f(e + x) - f(x) - (f(e + alpha) - f(alpha)))^(1/p^l1)/(x - alpha)` and
/// `g_{i+1} = (g_i(x) - g_i(abar_i))/(x - abar_i)`.
pub fn divided_difference_tower(fam: &BinomialFamily, alpha: &RatFunc, eps1: &RatFunc, roots: &FiberRoots) -> Result<TowerReport> {
    if fam.l2 <= fam.l1 {
        return Err(Error::RhoUndefined);
    }
    let r = fam.p().pow(fam.l2 - fam.l1) as usize;
    let mut trace = Trace::new();
    let claims = fam.regime == Regime::StrictLess && fam.s2 > 1;
    let field = &fam.field;
    if let FiberRoots::Explicit(pts) = roots {
        for a in pts {
            if fam.eval(a) != fam.eval(alpha) || a == alpha {
                return Err(Error::NotInFiber(a.to_string()));
            }
        }
    }
    let top = difference_lhs(fam, alpha, eps1);
    let root = top
        .pth_power_root(fam.l1)
        .ok_or_else(|| Error::NotPthPower(format!("{} is not a p^{}-th power", top.format_var("x"), fam.l1)))?;
    let lin = RatPoly::new(field, vec![alpha.neg(), RatFunc::one(field)]);
    let (g1, rem) = root.divrem(&lin)?;
    if !rem.is_zero() {
        return Err(Error::InexactDivision(format!("remainder {} at alpha", rem.format_var("x"))));
    }
    if g1.is_zero() {
        trace.push("g_1 = 0", eps1.is_zero(), "degree claims skipped");
        return Ok(TowerReport { r, degrees: vec![None; r], lead: None, explicit: vec![g1], values: Vec::new(), trace });
    }
    let lead = root.lead();
    let c1_root = field.frobenius(fam.c1, -(fam.l1 as i64));
    let expected_lead = eps1.scale(field.mul(c1_root, field.from_int(fam.s1 as i64)));
    let d1 = g1.degree().unwrap();
    if claims {
        trace.push(
            "lead of (x - alpha) g_1 = c1^(1/p^l1) s1 eps_1",
            root.degree() == Some(fam.s1 as usize - 1) && lead == expected_lead,
            format!("lead {lead}, degree {:?}", root.degree()),
        );
        trace.push("deg g_1 = s1 - 2", d1 + 2 == fam.s1 as usize, format!("deg g_1 = {d1}"));
    }
    // Divided differences drop the degree by one and keep the leading coefficient.
    let degrees: Vec<Option<usize>> = (0..r).map(|i| d1.checked_sub(i)).collect();
    let mut explicit = vec![g1];
    let mut values = Vec::new();
    if let FiberRoots::Explicit(pts) = roots {
        for a in pts.iter().take(r - 1) {
            let next = divided(explicit.last().unwrap(), a)?;
            explicit.push(next);
        }
        for (i, g) in explicit.iter().enumerate() {
            trace.push(format!("deg g_{} agrees with the degree count", i + 1), g.degree() == degrees[i], format!("{:?}", g.degree()));
        }
        if explicit.len() == r {
            values = pts.iter().skip(r - 1).map(|a| explicit[r - 1].eval(a)).collect();
        }
    }
    if claims {
        let want = fam.s1 as i64 - 1 - r as i64;
        trace.push(
            "deg g_r = (s1 - 1) - r > 0",
            degrees[r - 1].map(|d| d as i64) == Some(want) && want > 0,
            format!("deg g_r = {:?}, (s1 - 1) - r = {want}", degrees[r - 1]),
        );
    }
    Ok(TowerReport { r, degrees, lead: Some(lead), explicit, values, trace })
}

#[derive(Debug, Clone)]
pub struct Rho1Obstruction {
    /// `-c1 s1/(c2 s2)`.
    pub target: Elem,
    /// `p^l2 - p^l1`.
    pub exponent: u64,
    /// Field holding every admissible `eps_1`.
    pub field: Field,
    /// `0` and the roots of `e^exponent = target`, sorted.
    pub admissible: Vec<GfElem>,
}

pub fn rho1_obstruction(fam: &BinomialFamily) -> Result<Rho1Obstruction> {
    if fam.regime != Regime::Equal {
        return Err(Error::WrongRegime(format!("need Equal, got {}", fam.regime)));
    }
    let f = &fam.field;
    let num = f.mul(fam.c1, f.from_int(fam.s1 as i64));
    let den = f.mul(fam.c2, f.from_int(fam.s2 as i64));
    let target = f.neg(f.div(num, den)?);
    let exponent = fam.p_l2() - fam.p_l1();
    let (mut roots, big) = gf_all_nth_roots(&GfElem::new(f, target), exponent)?;
    roots.push(GfElem::new(&big, Elem::ZERO));
    roots.sort_by_key(|g| g.value().index());
    roots.dedup_by_key(|g| g.value().index());
    Ok(Rho1Obstruction { target, exponent, field: big, admissible: roots })
}
