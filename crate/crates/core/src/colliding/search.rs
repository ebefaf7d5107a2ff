//! Exhaustive colliding-orbit search over a finite field of parameters.

use crate::dynlab::BinomialFamily;
use crate::error::{Error, Result};
use crate::gfq::{Elem, Field, GfElem};
use crate::par::{self, Exec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CollisionHit {
    pub lambda: Elem,
    /// Least `m >= 1` with `f_lambda^m(alpha1) = beta`.
    pub m: usize,
    /// Least `n >= 1` with `f_lambda^n(alpha2) = beta`.
    pub n: usize,
}

#[derive(Debug, Clone)]
pub struct CollisionSet {
    pub field: Field,
    pub hits: Vec<CollisionHit>,
    /// For every `lambda`, the least strict hitting time of `beta` from each start.
    pub membership: Vec<(Option<usize>, Option<usize>)>,
}

impl CollisionSet {
    pub fn lambdas(&self) -> Vec<Elem> {
        self.hits.iter().map(|h| h.lambda).collect()
    }
}

/// Least `m >= 1` with `f_lambda^m(x) = target`; the orbit closes within `q + 1` steps.
pub fn first_hit(fam: &BinomialFamily, lambda: Elem, x: Elem, target: Elem) -> Option<usize> {
    let f = &fam.field;
    let q = f.q() as usize;
    let mut seen = vec![false; q];
    let mut z = x;
    seen[z.index() as usize] = true;
    for m in 1..=q + 1 {
        z = f.add(fam.eval_elem(z), lambda);
        if z == target {
            return Some(m);
        }
        if std::mem::replace(&mut seen[z.index() as usize], true) {
            return None;
        }
    }
    None
}

pub fn collision_search_with(
    exec: Exec,
    fam: &BinomialFamily,
    search: &Field,
    alpha1: Elem,
    alpha2: Elem,
    beta: Elem,
) -> Result<CollisionSet> {
    let fam = if fam.field.same(search) { fam.clone() } else { fam.embed(search)? };
    let lambdas: Vec<Elem> = search.elements().collect();
    let membership = par::map(exec, &lambdas, |&l| (first_hit(&fam, l, alpha1, beta), first_hit(&fam, l, alpha2, beta)));
    let hits = lambdas
        .iter()
        .zip(&membership)
        .filter_map(|(&lambda, &(m, n))| Some(CollisionHit { lambda, m: m?, n: n? }))
        .collect();
    Ok(CollisionSet { field: search.clone(), hits, membership })
}

pub fn collision_search(fam: &BinomialFamily, search: &Field, alpha1: Elem, alpha2: Elem, beta: Elem) -> Result<CollisionSet> {
    collision_search_with(Exec::default(), fam, search, alpha1, alpha2, beta)
}

/// Re-runs every witness by plain iteration.
pub fn verify_hits(fam: &BinomialFamily, set: &CollisionSet, alpha1: Elem, alpha2: Elem, beta: Elem) -> Result<()> {
    let fam = if fam.field.same(&set.field) { fam.clone() } else { fam.embed(&set.field)? };
    let f = &set.field;
    let run = |lambda: Elem, x: Elem, k: usize| (0..k).fold(x, |z, _| f.add(fam.eval_elem(z), lambda));
    for h in &set.hits {
        if run(h.lambda, alpha1, h.m) != beta || run(h.lambda, alpha2, h.n) != beta {
            return Err(Error::AssertionFailed(format!("witness for lambda = {} does not reach beta", GfElem::new(f, h.lambda))));
        }
    }
    Ok(())
}
