#![allow(dead_code)]

use binodyn_core::dynlab::{classify, BinomialFamily, Regime};
use binodyn_core::gfq::{Elem, Field};
use binodyn_core::ratfunc::{Poly, RatFunc};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn random_elem<R: Rng>(f: &Field, rng: &mut R) -> Elem {
    f.elem(rng.gen_range(0..f.q()))
}

pub fn random_nonzero_elem<R: Rng>(f: &Field, rng: &mut R) -> Elem {
    f.elem(rng.gen_range(1..f.q()))
}

pub fn random_poly<R: Rng>(f: &Field, rng: &mut R, max_deg: usize) -> Poly {
    let d = rng.gen_range(0..=max_deg);
    Poly::from_elems(f, (0..=d).map(|_| random_elem(f, rng)).collect())
}

pub fn random_nonzero_poly<R: Rng>(f: &Field, rng: &mut R, max_deg: usize) -> Poly {
    loop {
        let p = random_poly(f, rng, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_rat<R: Rng>(f: &Field, rng: &mut R, num_deg: usize, den_deg: usize) -> RatFunc {
    let num = random_nonzero_poly(f, rng, num_deg);
    let den = random_nonzero_poly(f, rng, den_deg);
    RatFunc::new(num, den).unwrap()
}

pub fn random_nonconstant_rat<R: Rng>(f: &Field, rng: &mut R, num_deg: usize, den_deg: usize) -> RatFunc {
    loop {
        let r = random_rat(f, rng, num_deg.max(1), den_deg);
        if !r.is_constant() {
            return r;
        }
    }
}

/// Every `(d1, d2)` with `d2 <= max_d2` in the given regime.
pub fn degree_pairs(p: u64, max_d2: u64, regime: Regime) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for d2 in 2..=max_d2 {
        for d1 in 1..d2 {
            if classify(p, d1, d2) == regime {
                out.push((d1, d2));
            }
        }
    }
    out
}

pub fn random_family<R: Rng>(f: &Field, rng: &mut R, pairs: &[(u64, u64)]) -> BinomialFamily {
    let (d1, d2) = pairs[rng.gen_range(0..pairs.len())];
    BinomialFamily::new(f, random_nonzero_elem(f, rng), random_nonzero_elem(f, rng), d1, d2).unwrap()
}
