//! Factorization over `F_q`: squarefree, distinct-degree and equal-degree stages.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::gfq::{prime_factors, Elem};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub lead: Elem,
    /// Monic irreducible factors with multiplicities, sorted.
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn expand(&self, like: &Poly) -> Poly {
        let f = like.field();
        self.factors
            .iter()
            .fold(Poly::constant(f, self.lead), |acc, (g, e)| acc.mul(&g.pow(*e as u64)))
    }
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &Poly) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = f.monic();
    let x = Poly::x(f.field());
    if f.coeff(0).is_zero() {
        return false;
    }
    if x.pow_q_iter_mod(n as u32, &f) != x.rem(&f) {
        return false;
    }
    prime_factors(n as u64).into_iter().all(|r| {
        let h = x.pow_q_iter_mod((n as u64 / r) as u32, &f).sub(&x);
        h.gcd(&f).is_one()
    })
}

/// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with every
/// `g_i` squarefree, pairwise coprime, and `f = prod g_i^i`.
pub fn squarefree(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    squarefree_into(&f.monic(), 1, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    out
}

fn squarefree_into(f: &Poly, scale: usize, out: &mut Vec<(Poly, usize)>) {
    if f.is_constant() {
        return;
    }
    let p = f.field().p() as usize;
    let df = f.derivative();
    if df.is_zero() {
        let root = f.pth_root().expect("zero derivative means a p-th power");
        squarefree_into(&root, scale * p, out);
        return;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            push_merged(out, fac, i * scale);
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_one() {
        let root = c.pth_root().expect("remaining cofactor is a p-th power");
        squarefree_into(&root, scale * p, out);
    }
}

fn push_merged(out: &mut Vec<(Poly, usize)>, g: Poly, e: usize) {
    if let Some(slot) = out.iter_mut().find(|(_, m)| *m == e) {
        slot.0 = slot.0.mul(&g);
    } else {
        out.push((g, e));
    }
}

/// Distinct-degree split of a monic squarefree polynomial into `(product of
/// all irreducible factors of degree d, d)`.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.monic();
    let x = Poly::x(f.field());
    let q = f.field().q() as u128;
    let mut h = x.clone();
    let mut d = 0;
    while rest.deg_or_zero() >= 2 * (d + 1) {
        d += 1;
        h = h.powmod(q, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if !rest.is_constant() {
        let deg = rest.deg_or_zero();
        out.push((rest, deg));
    }
    out
}

/// Random splitting element for equal-degree factorization.
fn splitter(g: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Poly {
    let field = g.field();
    let n = g.deg_or_zero();
    let a = Poly::from_elems(field, (0..n).map(|_| Elem(rng.gen_range(0..field.q()))).collect());
    if field.p() == 2 {
        // Absolute trace down to F_2: sum of a^{2^i}, i < k d.
        let steps = field.k() as usize * d;
        let mut t = a.clone();
        let mut acc = a;
        for _ in 1..steps {
            t = t.mulmod(&t, g);
            acc = acc.add(&t);
        }
        acc
    } else {
        // a^{(q^d - 1)/2} = (a^{1 + q + ... + q^{d-1}})^{(q-1)/2}.
        let q = field.q() as u128;
        let mut t = a.rem(g);
        let mut norm = t.clone();
        for _ in 1..d {
            t = t.powmod(q, g);
            norm = norm.mulmod(&t, g);
        }
        norm.powmod((q - 1) / 2, g).sub(&Poly::one(field))
    }
}

/// Splits a monic squarefree product of degree-`d` irreducibles.
pub fn equal_degree(g: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = g.deg_or_zero();
    if n == d {
        return vec![g.monic()];
    }
    loop {
        let b = splitter(g, d, rng);
        let h = b.gcd(g);
        let hd = h.deg_or_zero();
        if hd > 0 && hd < n {
            let other = g.div_exact(&h);
            let mut out = equal_degree(&h, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

pub fn factor_seeded(f: &Poly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (sf, e) in squarefree(f) {
        for (g, d) in distinct_degree(&sf) {
            for h in equal_degree(&g, d, &mut rng) {
                factors.push((h, e));
            }
        }
    }
    factors.sort();
    Ok(Factorization { lead: f.lead(), factors })
}

/// Complete factorization into monic irreducibles.
pub fn poly_factor(f: &Poly) -> Result<Factorization> {
    factor_seeded(f, DEFAULT_SEED)
}

/// Distinct roots in the coefficient field, sorted.
pub fn roots(f: &Poly) -> Result<Vec<Elem>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field();
    let x = Poly::x(field);
    let monic = f.monic();
    if monic.is_constant() {
        return Ok(Vec::new());
    }
    let linear = x.powmod(field.q() as u128, &monic).sub(&x).gcd(&monic);
    if linear.is_constant() {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut out: Vec<Elem> =
        equal_degree(&linear, 1, &mut rng).iter().map(|l| field.neg(l.coeff(0))).collect();
    out.sort();
    Ok(out)
}
