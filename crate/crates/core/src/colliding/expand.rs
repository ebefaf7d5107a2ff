//! `f_lambda^n(x)` expanded as a polynomial in `lambda` and the checks on
//! its coefficients.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::check::Trace;
use crate::dynlab::{iterate, BinomialFamily, Regime};
use crate::error::{Error, Result};
use crate::gfq::Elem;
use crate::ratfunc::{eval_at_rat, BiPoly, Poly, RatFunc};

/// Largest lambda-degree `d2^(n-1)` that `expand_iterate` accepts.
pub const MAX_LAMBDA_DEGREE: u64 = 10_000;

#[derive(Debug, Clone)]
pub struct IterateExpansion {
    pub n: usize,
    pub bipoly: BiPoly,
    /// `coeffs[i] = c_{n,i}`, the coefficient of `lambda^(d2^(n-1) - i)`.
    pub coeffs: Vec<Poly>,
    /// Highest-lambda-degree coefficient of positive `x`-degree.
    pub a_n: Poly,
    /// Its lambda-degree.
    pub b_n: u64,
}

fn lambda_degree(fam: &BinomialFamily, n: usize) -> Result<u64> {
    let mut top = 1u64;
    for _ in 1..n {
        top = top.saturating_mul(fam.d2);
        if top > MAX_LAMBDA_DEGREE {
            return Err(Error::TooLarge(top, MAX_LAMBDA_DEGREE));
        }
    }
    Ok(top)
}

fn apply_family(fam: &BinomialFamily, z: &BiPoly) -> BiPoly {
    z.pow(fam.d1).scale(fam.c1).add(&z.pow(fam.d2).scale(fam.c2))
}

fn summarize(n: usize, bipoly: BiPoly) -> IterateExpansion {
    let field = bipoly.field().clone();
    let top = bipoly.lambda_degree().unwrap_or(0);
    let coeffs: Vec<Poly> = (0..=top).map(|i| bipoly.coeff(top - i)).collect();
    let (b_n, a_n) = bipoly
        .terms()
        .iter()
        .rev()
        .find(|(_, c)| c.deg_or_zero() > 0)
        .map(|(&k, c)| (k, c.clone()))
        .unwrap_or((0, Poly::zero(&field)));
    IterateExpansion { n, bipoly, coeffs, a_n, b_n }
}

/// Expansions of `f_lambda^k(x)` for `k = 1..=n`.
pub fn expand_iterates(fam: &BinomialFamily, n: usize) -> Result<Vec<IterateExpansion>> {
    if n == 0 {
        return Err(Error::Precondition("expansion needs n >= 1".into()));
    }
    lambda_degree(fam, n)?;
    let lambda = BiPoly::lambda(&fam.field);
    let mut cur = BiPoly::from_x(&fam.poly()).add(&lambda);
    let mut out = vec![summarize(1, cur.clone())];
    for k in 2..=n {
        cur = apply_family(fam, &cur).add(&lambda);
        out.push(summarize(k, cur.clone()));
    }
    Ok(out)
}

pub fn expand_iterate(fam: &BinomialFamily, n: usize) -> Result<IterateExpansion> {
    Ok(expand_iterates(fam, n)?.pop().expect("n >= 1"))
}

/// `sum_i c_i(x0) lambda0^(D - i)`.
pub fn specialize(e: &IterateExpansion, x0: &RatFunc, lambda0: &RatFunc) -> RatFunc {
    e.coeffs.iter().fold(RatFunc::zero(x0.field()), |acc, c| acc.mul(lambda0).add(&eval_at_rat(c, x0)))
}

fn random_poly(field: &crate::gfq::Field, rng: &mut ChaCha8Rng, deg: usize) -> RatFunc {
    let q = field.q();
    let c: Vec<Elem> = (0..=deg).map(|_| field.elem(rng.gen_range(0..q))).collect();
    RatFunc::from_poly(Poly::from_elems(field, c))
}

/// The expansion agrees with direct iteration at `trials` random points.
pub fn specialization_check(fam: &BinomialFamily, e: &IterateExpansion, trials: usize, seed: u64) -> Trace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trace = Trace::new();
    for i in 0..trials {
        let x0 = random_poly(&fam.field, &mut rng, 2);
        let l0 = random_poly(&fam.field, &mut rng, 2);
        let lhs = specialize(e, &x0, &l0);
        let rhs = iterate(fam, &l0, &x0, e.n);
        trace.push(format!("specialization n = {} trial {i}", e.n), lhs == rhs, format!("x = {x0}, lambda = {l0}"));
    }
    trace
}

#[derive(Debug, Clone)]
pub struct Lemma51Report {
    pub expansions: Vec<IterateExpansion>,
    pub b: Vec<u64>,
    /// `b'_k` for `k >= 3`, aligned with `b` (`None` below 3).
    pub b_prime: Vec<Option<u64>>,
    /// `u_k` recovered from the `a`-recursion, for `k >= 2`.
    pub u: Vec<(usize, Elem)>,
    /// Whether `a_2` also equals `s1 f^(p^l1)` without the factor `c1`.
    pub a2_without_c1: Option<bool>,
    pub trace: Trace,
}

/// `c_{n,0} = c2^((d2^(n-1) - 1)/(d2 - 1))`, which is `1` for monic families.
fn top_coefficient(fam: &BinomialFamily, n: usize) -> Elem {
    let e: u128 = (0..n.saturating_sub(1)).map(|i| (fam.d2 as u128).pow(i as u32)).sum();
    fam.field.pow(fam.c2, e)
}

pub fn lemma51_check(fam: &BinomialFamily, n: usize) -> Result<Lemma51Report> {
    let expansions = expand_iterates(fam, n)?;
    let field = &fam.field;
    let mut trace = Trace::new();
    let f = fam.poly();
    let mut fk = Poly::x(field);
    for e in &expansions {
        let k = e.n;
        fk = f.compose(&fk);
        let c0 = &e.coeffs[0];
        let want = top_coefficient(fam, k);
        trace.push(
            format!("(a) c_{{{k},0}} constant"),
            c0.is_constant() && c0.coeff(0) == want,
            format!("c_{{{k},0}} = {}, expected {}", c0.format_var("x"), field.format_expr(want)),
        );
        let last = e.coeffs.last().unwrap();
        trace.push(format!("(a) c_{{{k},top}} = f^{k}(x)"), *last == fk, format!("degree {}", last.deg_or_zero()));
        let bad = e.coeffs.iter().enumerate().find(|(i, c)| c.deg_or_zero() as u64 > fam.d2 * *i as u64);
        trace.push(
            format!("(b) deg c_{{{k},i}} <= d2 i"),
            bad.is_none(),
            match bad {
                None => format!("{} coefficients", e.coeffs.len()),
                Some((i, c)) => format!("deg c_{{{k},{i}}} = {}", c.deg_or_zero()),
            },
        );
        trace.extend(specialization_check(fam, e, 3, 0x51 + k as u64));
    }
    let b: Vec<u64> = expansions.iter().map(|e| e.b_n).collect();
    let mut b_prime = vec![None; b.len()];
    let mut u = Vec::new();
    let mut a2_without_c1 = None;
    if fam.regime == Regime::StrictLess && fam.s2 > 1 {
        let (pl1, pl2) = (fam.p_l1(), fam.p_l2());
        trace.push("b_1 = 0", b[0] == 0, format!("b_1 = {}", b[0]));
        trace.push("a_1 = f", expansions[0].a_n == f, expansions[0].a_n.format_var("x"));
        if n >= 2 {
            let want = pl1 * (fam.s1 - 1);
            trace.push("b_2 = p^l1 (s1 - 1)", b[1] == want, format!("b_2 = {}, expected {want}", b[1]));
            let fp = f.frobenius_power(fam.l1);
            let s1 = field.from_int(fam.s1 as i64);
            let a2 = fp.scale(field.mul(fam.c1, s1));
            trace.push(
                "a_2 = c1 s1 f^(p^l1)",
                expansions[1].a_n == a2,
                format!("a_2 = {}", expansions[1].a_n.format_var("x")),
            );
            a2_without_c1 = Some(expansions[1].a_n == fp.scale(s1));
        }
        let d2 = fam.d2;
        for k in 2..n {
            // k is the index n of the recursion b_{n+1} = p^l2 (d2^(n-1)(s2 - 1) + b_n).
            let dk = d2.pow(k as u32 - 1);
            let want = pl2 * (dk * (fam.s2 - 1) + b[k - 1]);
            trace.push(
                format!("b_{} = p^l2 (d2^{} (s2 - 1) + b_{k})", k + 1, k - 1),
                b[k] == want,
                format!("b_{} = {}, expected {want}", k + 1, b[k]),
            );
            let bp = pl1 * (dk * (fam.s1 - 1) + b[k - 1]);
            b_prime[k] = Some(bp);
            trace.push(format!("b'_{} < b_{}", k + 1, k + 1), bp < b[k], format!("b'_{} = {bp}, b_{} = {}", k + 1, k + 1, b[k]));
            let c0 = top_coefficient(fam, k);
            let kappa = field.mul(
                field.mul(fam.c2, field.from_int(fam.s2 as i64)),
                field.pow(c0, pl2 as u128 * (fam.s2 as u128 - 1)),
            );
            let pred = expansions[k - 1].a_n.frobenius_power(fam.l2).scale(kappa);
            let diff = expansions[k].a_n.sub(&pred);
            let ok = diff.is_constant();
            trace.push(
                format!("a_{} - s2 a_{k}^(p^l2) constant", k + 1),
                ok,
                format!("difference {}", diff.format_var("x")),
            );
            if ok {
                u.push((k, diff.coeff(0)));
            }
        }
        for k in 2..=n {
            let lhs = d2.pow(k as u32 - 1) as i128 - b[k - 1] as i128;
            let rhs = (pl2 as i128).pow(k as u32 - 2) * (d2 as i128 - fam.d1 as i128 + pl1 as i128);
            trace.push(
                format!("d2^{} - b_{k} = p^({} l2)(d2 - d1 + p^l1)", k - 1, k - 2),
                lhs == rhs,
                format!("{lhs} vs {rhs}"),
            );
        }
    }
    Ok(Lemma51Report { expansions, b, b_prime, u, a2_without_c1, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::FieldSpec;

    fn fam() -> BinomialFamily {
        BinomialFamily::from_ints(&FieldSpec::prime(3).unwrap(), 2, 5, 1, 6).unwrap()
    }

    #[test]
    fn first_iterate() {
        let fam = fam();
        let e = expand_iterate(&fam, 1).unwrap();
        assert_eq!(e.coeffs.len(), 2);
        assert!(e.coeffs[0].is_one());
        assert_eq!(e.coeffs[1], fam.poly());
        assert_eq!((e.b_n, e.a_n.clone()), (0, fam.poly()));
    }

    #[test]
    fn second_iterate() {
        let fam = fam();
        let e = expand_iterate(&fam, 2).unwrap();
        assert_eq!(e.b_n, 4);
        // c1 s1 = 2 * 5 = 1 in F_3.
        assert_eq!(e.a_n, fam.poly());
        assert!(specialization_check(&fam, &e, 3, 9).all_pass());
    }

    #[test]
    fn expansion_report() {
        let rep = lemma51_check(&fam(), 3).unwrap();
        assert!(rep.trace.all_pass(), "{:#?}", rep.trace.failures().collect::<Vec<_>>());
        assert_eq!(rep.b, vec![0, 4, 30]);
        assert_eq!(rep.b_prime[2], Some(28));
        assert_eq!(rep.a2_without_c1, Some(false));
    }

    #[test]
    fn arbitrary_family_parts_a_b() {
        let f = FieldSpec::with_degree(3, 2).unwrap();
        let fam = BinomialFamily::new(&f, f.elem(4), f.elem(5), 2, 4).unwrap();
        let rep = lemma51_check(&fam, 3).unwrap();
        assert!(rep.trace.all_pass(), "{:#?}", rep.trace.failures().collect::<Vec<_>>());
    }

    #[test]
    fn too_large() {
        assert!(matches!(expand_iterate(&fam(), 7), Err(Error::TooLarge(_, _))));
    }
}
