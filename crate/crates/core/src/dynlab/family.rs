//! The binomial family `f(x) = c1 x^d1 + c2 x^d2` and its regime.

use std::fmt;

use crate::check::{int, rat, Rational};
use crate::error::{Error, Result};
use crate::gfq::{embed, gf_nth_root, Elem, Field, GfElem};
use crate::ratfunc::{Poly, RatFunc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `p^l2 (s2 - 1) > max(1, p^l1 (s1 - 1))`.
    GhDominant,
    /// `p^l2 (s2 - 1) < p^l1 (s1 - 1)`.
    StrictLess,
    /// `p^l2 (s2 - 1) = p^l1 (s1 - 1)` with `s1, s2 > 1`.
    Equal,
    /// `s1 = s2 = 1`.
    Additive,
    /// `s1 = 1`, which forces `f = c1 x + c2 x^2` with `p > 2`.
    QuadraticLegacy,
    /// No combination of degrees lands here; kept so the classification is total.
    Other,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::GhDominant => "GHdominant",
            Regime::StrictLess => "StrictLess",
            Regime::Equal => "Equal",
            Regime::Additive => "Additive",
            Regime::QuadraticLegacy => "QuadraticLegacy",
            Regime::Other => "Other",
        }
    }

    /// The result that decides `Prep(f; alpha, beta)` in this regime.
    pub fn governing(self) -> &'static str {
        match self {
            Regime::GhDominant => "infinite iff alpha, beta constant or f(alpha) = f(beta) (dominant top-degree case)",
            Regime::StrictLess => "infinite iff alpha, beta constant or f(alpha) = f(beta)",
            Regime::Equal => "infinite only if constants, f(alpha) = f(beta), or (f(beta) - f(alpha))^(p^l2 - p^l1) = -c1 s1/(c2 s2)",
            Regime::Additive => "infinite iff beta - alpha is constant",
            Regime::QuadraticLegacy => "conjugate to a monomial after completing the square",
            Regime::Other => "no result applies",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `d = p^l s` with `p` not dividing `s`.
pub fn p_decompose(d: u64, p: u64) -> (u32, u64) {
    let (mut l, mut s) = (0, d);
    while s % p == 0 {
        s /= p;
        l += 1;
    }
    (l, s)
}

/// Regime as a function of `(p, d1, d2)` alone.
pub fn classify(p: u64, d1: u64, d2: u64) -> Regime {
    let (l1, s1) = p_decompose(d1, p);
    let (l2, s2) = p_decompose(d2, p);
    let a = p.pow(l2) * (s2 - 1);
    let b = p.pow(l1) * (s1 - 1);
    if s1 == 1 && s2 == 1 {
        Regime::Additive
    } else if a > b.max(1) {
        Regime::GhDominant
    } else if s1 == 1 {
        Regime::QuadraticLegacy
    } else if a < b {
        Regime::StrictLess
    } else if a == b {
        Regime::Equal
    } else {
        Regime::Other
    }
}

#[derive(Debug, Clone)]
pub struct BinomialFamily {
    pub field: Field,
    pub c1: Elem,
    pub c2: Elem,
    pub d1: u64,
    pub d2: u64,
    pub l1: u32,
    pub s1: u64,
    pub l2: u32,
    pub s2: u64,
    /// `(d2 - d1)/(p^l2 - p^l1)`, when `l1 != l2`.
    pub rho: Option<Rational>,
    /// `(1 - rho)/p^l1 - s1 + 1`, when `s2 = 1` and `rho` exists.
    pub rho_prime: Option<Rational>,
    pub regime: Regime,
}

impl BinomialFamily {
    pub fn new(field: &Field, c1: Elem, c2: Elem, d1: u64, d2: u64) -> Result<Self> {
        if d1 < 1 || d1 >= d2 {
            return Err(Error::BadDegrees { d1, d2 });
        }
        if c1.is_zero() || c2.is_zero() {
            return Err(Error::NotBinomial("both coefficients must be nonzero".into()));
        }
        let p = field.p() as u64;
        let (l1, s1) = p_decompose(d1, p);
        let (l2, s2) = p_decompose(d2, p);
        debug_assert!(p.pow(l1) * s1 == d1 && s1 % p != 0);
        debug_assert!(p.pow(l2) * s2 == d2 && s2 % p != 0);
        let rho = (l1 != l2).then(|| rat((d2 - d1) as i128, p.pow(l2) as i128 - p.pow(l1) as i128));
        let rho_prime = match rho {
            Some(r) if s2 == 1 => Some((int(1) - r) / int(p.pow(l1) as i128) - int(s1 as i128) + int(1)),
            _ => None,
        };
        Ok(BinomialFamily {
            field: field.clone(),
            c1,
            c2,
            d1,
            d2,
            l1,
            s1,
            l2,
            s2,
            rho,
            rho_prime,
            regime: classify(p, d1, d2),
        })
    }

    pub fn from_ints(field: &Field, c1: i64, d1: u64, c2: i64, d2: u64) -> Result<Self> {
        Self::new(field, field.from_int(c1), field.from_int(c2), d1, d2)
    }

    /// Reads `c1 x^d1 + c2 x^d2` off a polynomial with exactly two terms.
    pub fn from_poly(f: &Poly) -> Result<Self> {
        let terms: Vec<(usize, Elem)> =
            f.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, &c)| (i, c)).collect();
        match terms.as_slice() {
            [(d1, c1), (d2, c2)] => {
                if *d1 == 0 {
                    return Err(Error::BadDegrees { d1: 0, d2: *d2 as u64 });
                }
                Self::new(f.field(), *c1, *c2, *d1 as u64, *d2 as u64)
            }
            _ => Err(Error::NotBinomial(format!(
                "{} has {} nonzero terms, not 2{}",
                f.format_var("x"),
                terms.len(),
                if terms.len() == 1 { "; monomials take the monomial verdict path" } else { "" }
            ))),
        }
    }

    pub fn p(&self) -> u64 {
        self.field.p() as u64
    }

    pub fn p_l1(&self) -> u64 {
        self.p().pow(self.l1)
    }

    pub fn p_l2(&self) -> u64 {
        self.p().pow(self.l2)
    }

    /// `p^l2 (s2 - 1)`.
    pub fn top_weight(&self) -> u64 {
        self.p_l2() * (self.s2 - 1)
    }

    /// `p^l1 (s1 - 1)`.
    pub fn low_weight(&self) -> u64 {
        self.p_l1() * (self.s1 - 1)
    }

    pub fn poly(&self) -> Poly {
        let mut c = vec![Elem::ZERO; self.d2 as usize + 1];
        c[self.d1 as usize] = self.c1;
        c[self.d2 as usize] = self.c2;
        Poly::from_elems(&self.field, c)
    }

    pub fn eval(&self, z: &RatFunc) -> RatFunc {
        z.pow(self.d1).scale(self.c1).add(&z.pow(self.d2).scale(self.c2))
    }

    pub fn eval_elem(&self, z: Elem) -> Elem {
        let f = &self.field;
        f.add(f.mul(self.c1, f.pow(z, self.d1 as u128)), f.mul(self.c2, f.pow(z, self.d2 as u128)))
    }

    /// `f_lambda(z) = f(z) + lambda`.
    pub fn eval_lambda(&self, z: &RatFunc, lambda: &RatFunc) -> RatFunc {
        self.eval(z).add(lambda)
    }

    /// The same family over a larger coefficient field.
    pub fn embed(&self, dst: &Field) -> Result<Self> {
        let c1 = embed(&GfElem::new(&self.field, self.c1), dst)?.value();
        let c2 = embed(&GfElem::new(&self.field, self.c2), dst)?.value();
        Self::new(dst, c1, c2, self.d1, self.d2)
    }
}

impl fmt::Display for BinomialFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly().format_var("x"))
    }
}

/// `f_lambda^n(x)`.
pub fn iterate(fam: &BinomialFamily, lambda: &RatFunc, x: &RatFunc, n: usize) -> RatFunc {
    (0..n).fold(x.clone(), |z, _| fam.eval_lambda(&z, lambda))
}

/// The monic conjugate `g = mu_c o f o mu_c^{-1}` with `c^{d2 - 1} = c2`.
#[derive(Debug, Clone)]
pub struct MonicNormalized {
    pub family: BinomialFamily,
    pub c: GfElem,
    pub c_alpha: RatFunc,
    pub c_beta: RatFunc,
}

pub fn monic_normalize(fam: &BinomialFamily, alpha: &RatFunc, beta: &RatFunc) -> Result<MonicNormalized> {
    let c2 = GfElem::new(&fam.field, fam.c2);
    let (c, big) = gf_nth_root(&c2, fam.d2 - 1)?;
    let fam_big = fam.embed(&big)?;
    let cinv_pow = big.pow(big.inv(c.value())?, fam.d1 as u128 - 1);
    let g = BinomialFamily::new(&big, big.mul(fam_big.c1, cinv_pow), Elem::ONE, fam.d1, fam.d2)?;
    let c_alpha = alpha.embed(&big)?.scale(c.value());
    let c_beta = beta.embed(&big)?.scale(c.value());
    Ok(MonicNormalized { family: g, c, c_alpha, c_beta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::FieldSpec;
    use crate::ratfunc::expr::parse_rat;

    fn f3() -> Field {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn quartic_sextic_is_equal_regime() {
        let fam = BinomialFamily::from_ints(&f3(), 1, 4, 1, 6).unwrap();
        assert_eq!((fam.l1, fam.s1, fam.l2, fam.s2), (0, 4, 1, 2));
        assert_eq!((fam.top_weight(), fam.low_weight()), (3, 3));
        assert_eq!(fam.regime, Regime::Equal);
        assert_eq!(fam.rho, Some(int(1)));
    }

    #[test]
    fn strict_less_examples() {
        let fam = BinomialFamily::from_ints(&f3(), 2, 5, 1, 6).unwrap();
        assert_eq!((fam.l1, fam.s1, fam.l2, fam.s2), (0, 5, 1, 2));
        assert_eq!(fam.regime, Regime::StrictLess);
        assert_eq!(fam.rho, Some(rat(1, 2)));
        assert_eq!(fam.rho_prime, None);

        let fam = BinomialFamily::from_ints(&f3(), 1, 2, 1, 3).unwrap();
        assert_eq!((fam.l1, fam.s1, fam.l2, fam.s2), (0, 2, 1, 1));
        assert_eq!(fam.regime, Regime::StrictLess);
        assert_eq!(fam.rho, Some(rat(1, 2)));
        assert_eq!(fam.rho_prime, Some(rat(-1, 2)));
    }

    #[test]
    fn other_regimes() {
        assert_eq!(classify(2, 1, 2), Regime::Additive);
        assert_eq!(classify(3, 1, 2), Regime::QuadraticLegacy);
        assert_eq!(classify(3, 1, 5), Regime::GhDominant);
        assert_eq!(classify(5, 1, 5), Regime::Additive);
    }

    #[test]
    fn classification_is_total_and_never_other() {
        for p in [2u64, 3, 5, 7] {
            for d2 in 2..60 {
                for d1 in 1..d2 {
                    let r = classify(p, d1, d2);
                    assert_ne!(r, Regime::Other, "p={p} d1={d1} d2={d2}");
                    if r == Regime::QuadraticLegacy {
                        assert_eq!((d1, d2), (1, 2));
                        assert!(p > 2);
                    }
                    if matches!(r, Regime::StrictLess | Regime::Equal) {
                        let (l1, _) = p_decompose(d1, p);
                        let (l2, _) = p_decompose(d2, p);
                        assert!(l2 > l1);
                        let rho = rat((d2 - d1) as i128, p.pow(l2) as i128 - p.pow(l1) as i128);
                        assert!(rho > int(0) && rho <= int(1));
                    }
                }
            }
        }
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(BinomialFamily::from_ints(&f3(), 1, 3, 1, 3), Err(Error::BadDegrees { .. })));
        let x2 = Poly::from_ints(&f3(), &[0, 0, 1]);
        assert!(matches!(BinomialFamily::from_poly(&x2), Err(Error::NotBinomial(_))));
    }

    #[test]
    fn monic_conjugate() {
        let f = f3();
        let fam = BinomialFamily::from_ints(&f, 2, 2, 2, 3).unwrap();
        let alpha = parse_rat("t", &f).unwrap();
        let m = monic_normalize(&fam, &alpha, &alpha).unwrap();
        let big = m.family.field.clone();
        assert_eq!(big.q(), 9);
        assert_eq!(big.pow(m.c.value(), 2), big.from_int(2));
        assert_eq!(m.family.c2, Elem::ONE);
        // mu_c(f_lambda(x)) = g_{c lambda}(mu_c(x)).
        let x = parse_rat("(t^2 + 1)/(t + 2)", &big).unwrap();
        let lambda = parse_rat("t^3 + w", &big).unwrap();
        let fam_big = fam.embed(&big).unwrap();
        let c = m.c.value();
        let lhs = fam_big.eval_lambda(&x, &lambda).scale(c);
        let rhs = m.family.eval_lambda(&x.scale(c), &lambda.scale(c));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn monic_family_unchanged() {
        let f = f3();
        let fam = BinomialFamily::from_ints(&f, 2, 5, 1, 6).unwrap();
        let t = RatFunc::t(&f);
        let m = monic_normalize(&fam, &t, &t).unwrap();
        assert_eq!(m.c.value(), Elem::ONE);
        assert_eq!(m.family.c1, fam.c1);
        assert_eq!(m.c_alpha, t);
    }
}
