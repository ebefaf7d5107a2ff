//! The sequences `eps_n`, `delta_n` and their primed and barred variants.

use super::family::BinomialFamily;
use crate::check::Trace;
use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;

/// `e_0 = base_b - base_a`, `e_{n+1} = f(e_n + base_a) - f(base_a)`.
fn sequence(fam: &BinomialFamily, base_a: &RatFunc, base_b: &RatFunc, n: usize) -> Vec<RatFunc> {
    let fa = fam.eval(base_a);
    let mut out = vec![base_b.sub(base_a)];
    for _ in 0..n {
        let next = fam.eval(&out.last().unwrap().add(base_a)).sub(&fa);
        out.push(next);
    }
    out
}

fn primed(seq: &[RatFunc]) -> Vec<RatFunc> {
    seq.iter().map(|e| e.sub(&seq[0])).collect()
}

#[derive(Debug, Clone)]
pub struct BarSequences {
    pub alpha_bar: RatFunc,
    /// `eps_bar_0 = beta - alpha_bar`, iterated around `alpha_bar`.
    pub eps: Vec<RatFunc>,
    pub eps_prime: Vec<RatFunc>,
    /// `delta_bar_0 = alpha_bar - beta`, iterated around `beta`.
    pub delta: Vec<RatFunc>,
    pub delta_prime: Vec<RatFunc>,
}

#[derive(Debug, Clone)]
pub struct EpsSequences {
    pub eps: Vec<RatFunc>,
    pub eps_prime: Vec<RatFunc>,
    pub delta: Vec<RatFunc>,
    pub delta_prime: Vec<RatFunc>,
    pub bar: Option<BarSequences>,
    /// `alpha - f(alpha)`.
    pub lambda_alpha: RatFunc,
    /// `beta - f(beta)`.
    pub lambda_beta: RatFunc,
    /// `alpha_bar - f(alpha_bar)`.
    pub lambda_oal: Option<RatFunc>,
}

pub fn eps_sequences(
    fam: &BinomialFamily,
    alpha: &RatFunc,
    beta: &RatFunc,
    n: usize,
    alpha_bar: Option<&RatFunc>,
) -> Result<EpsSequences> {
    let bar = match alpha_bar {
        None => None,
        Some(ab) => {
            if fam.eval(ab) != fam.eval(alpha) {
                return Err(Error::NotInFiber(ab.to_string()));
            }
            let eps = sequence(fam, ab, beta, n);
            let delta = sequence(fam, beta, ab, n);
            Some(BarSequences {
                alpha_bar: ab.clone(),
                eps_prime: primed(&eps),
                delta_prime: primed(&delta),
                eps,
                delta,
            })
        }
    };
    let eps = sequence(fam, alpha, beta, n);
    let delta = sequence(fam, beta, alpha, n);
    Ok(EpsSequences {
        eps_prime: primed(&eps),
        delta_prime: primed(&delta),
        eps,
        delta,
        lambda_oal: bar.as_ref().map(|b| b.alpha_bar.sub(&fam.eval(&b.alpha_bar))),
        bar,
        lambda_alpha: alpha.sub(&fam.eval(alpha)),
        lambda_beta: beta.sub(&fam.eval(beta)),
    })
}

/// `eps_n = f_{lambda_alpha}^n(beta) - alpha` and the `delta` mirror, for every
/// computed index.
pub fn orbit_identity_check(fam: &BinomialFamily, alpha: &RatFunc, beta: &RatFunc, seq: &EpsSequences) -> Trace {
    let mut trace = Trace::new();
    let mut z = beta.clone();
    let mut w = alpha.clone();
    let mut ok_eps = true;
    let mut ok_delta = true;
    let mut first_bad = String::new();
    for (n, (e, d)) in seq.eps.iter().zip(&seq.delta).enumerate() {
        if n > 0 {
            z = fam.eval_lambda(&z, &seq.lambda_alpha);
            w = fam.eval_lambda(&w, &seq.lambda_beta);
        }
        if z.sub(alpha) != *e && ok_eps {
            ok_eps = false;
            first_bad = format!("eps_{n} = {e}, orbit gives {}", z.sub(alpha));
        }
        if w.sub(beta) != *d && ok_delta {
            ok_delta = false;
            first_bad = format!("delta_{n} = {d}, orbit gives {}", w.sub(beta));
        }
    }
    let n = seq.eps.len() - 1;
    trace.push(
        "eps_n = f_{lambda_alpha}^n(beta) - alpha",
        ok_eps,
        if ok_eps { format!("n = 0..{n}") } else { first_bad.clone() },
    );
    trace.push(
        "delta_n = f_{lambda_beta}^n(alpha) - beta",
        ok_delta,
        if ok_delta { format!("n = 0..{n}") } else { first_bad },
    );
    trace
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynlab::family::iterate;
    use crate::gfq::FieldSpec;
    use crate::ratfunc::expr::parse_rat;

    #[test]
    fn basic_properties() {
        let f = FieldSpec::prime(3).unwrap();
        let fam = BinomialFamily::from_ints(&f, 2, 2, 1, 3).unwrap();
        let alpha = parse_rat("t^2", &f).unwrap();
        let beta = parse_rat("1/t", &f).unwrap();
        let s = eps_sequences(&fam, &alpha, &beta, 4, None).unwrap();
        assert_eq!(s.eps[0], beta.sub(&alpha));
        assert!(orbit_identity_check(&fam, &alpha, &beta, &s).all_pass());
        for n in 0..=4 {
            assert_eq!(s.eps[n].add(&alpha), iterate(&fam, &s.lambda_alpha, &beta, n));
        }
        // Mirror symmetry: delta(alpha, beta) = eps(beta, alpha).
        let m = eps_sequences(&fam, &beta, &alpha, 4, None).unwrap();
        assert_eq!(s.delta, m.eps);
        let z = eps_sequences(&fam, &alpha, &alpha, 3, None).unwrap();
        assert!(z.eps.iter().all(|e| e.is_zero()));
    }

    #[test]
    fn bar_variant_requires_fiber_point() {
        let f = FieldSpec::prime(5).unwrap();
        let fam = BinomialFamily::from_ints(&f, 1, 8, 1, 10).unwrap();
        let alpha = parse_rat("t", &f).unwrap();
        let beta = parse_rat("t+1", &f).unwrap();
        // f is even, so -alpha lies in the fiber.
        let s = eps_sequences(&fam, &alpha, &beta, 2, Some(&alpha.neg())).unwrap();
        let bar = s.bar.unwrap();
        assert_eq!(bar.eps[0], beta.sub(&alpha.neg()));
        let lo = s.lambda_oal.unwrap();
        // f_{lambda_abar}(alpha) = f_{lambda_abar}^2(alpha) = abar.
        assert_eq!(iterate(&fam, &lo, &alpha, 1), alpha.neg());
        assert_eq!(iterate(&fam, &lo, &alpha, 2), alpha.neg());
        assert!(matches!(eps_sequences(&fam, &alpha, &beta, 2, Some(&beta)), Err(Error::NotInFiber(_))));
    }
}
