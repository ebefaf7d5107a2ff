//! Extensions `F_q -> F_{q^m}`, embeddings and root extraction.

use std::sync::Arc;

use num_integer::Integer;

use super::elem::GfElem;
use super::field::{Elem, Field, FieldSpec, MAX_FIELD_SIZE};
use crate::error::{Error, Result};

/// `F_{q^m}` for `q = |base|`, with the lexicographically first modulus of degree `k m`.
pub fn extend(base: &Field, m: u32) -> Result<Field> {
    if m == 1 {
        return Ok(base.clone());
    }
    FieldSpec::with_degree(base.p(), base.k() * m)
}

/// The image table of `src -> dst`, indexed by element of `src`.
///
/// The generator of `src` goes to the smallest root of its modulus in `dst`.
pub fn embedding(src: &Field, dst: &Field) -> Result<Arc<Vec<Elem>>> {
    if src.p() != dst.p() || !dst.k().is_multiple_of(src.k()) {
        return Err(Error::InvalidField(format!("no embedding of {src} into {dst}")));
    }
    if src.k() == 1 {
        return Ok(Arc::new((0..src.q()).map(Elem).collect()));
    }
    if src.same(dst) {
        return Ok(Arc::new(src.elements().collect()));
    }
    let key = src.modulus().to_vec();
    {
        let cache = dst.embeddings.lock().expect("embedding cache poisoned");
        if let Some((_, table)) = cache.iter().find(|(m, _)| *m == key) {
            return Ok(table.clone());
        }
    }
    let eval = |r: Elem| {
        src.modulus()
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| dst.add(dst.mul(acc, r), Elem(c)))
    };
    let root = dst.elements().find(|&r| eval(r).is_zero()).expect("subfield modulus splits");
    let mut powers = vec![Elem::ONE];
    for _ in 1..src.k() {
        let last = *powers.last().unwrap();
        powers.push(dst.mul(last, root));
    }
    let table: Vec<Elem> = src
        .elements()
        .map(|a| {
            src.coords(a)
                .iter()
                .zip(&powers)
                .fold(Elem::ZERO, |acc, (&c, &w)| dst.add(acc, dst.mul(Elem(c), w)))
        })
        .collect();
    let table = Arc::new(table);
    dst.embeddings.lock().expect("embedding cache poisoned").push((key, table.clone()));
    Ok(table)
}

/// Image of `a` in `dst`.
pub fn embed(a: &GfElem, dst: &Field) -> Result<GfElem> {
    let table = embedding(a.field(), dst)?;
    Ok(GfElem::new(dst, table[a.value().index() as usize]))
}

fn split_p_part(n: u64, p: u64) -> (u32, u64) {
    let (mut e, mut rest) = (0, n);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (e, rest)
}

fn q_pow(base: &Field, m: u32) -> Option<u64> {
    (base.q() as u64).checked_pow(m).filter(|&q| q <= MAX_FIELD_SIZE)
}

/// Smallest `m` such that `F_{q^m}` holds a root of `x^n = a`, or, with `split`,
/// every root.
fn root_degree(a: &GfElem, n: u64, split: bool) -> Result<u32> {
    let base = a.field();
    let (_, n0) = split_p_part(n, base.p() as u64);
    let a_int = a.value();
    for m in 1.. {
        let Some(qm) = q_pow(base, m) else {
            return Err(Error::FieldTooLarge((base.q() as u128).pow(m)));
        };
        let order = qm - 1;
        let g = n0.gcd(&order);
        let e = (order / g) as u128;
        let has_root = base.pow(a_int, e) == Elem::ONE;
        if has_root && (!split || order % n0 == 0) {
            return Ok(m);
        }
    }
    unreachable!()
}

/// A root `c` of `x^n = a` and the field it was found in.
///
/// The field is `a`'s own when possible, else the smallest `F_{q^m}` holding a
/// root. The root chosen is the one with the smallest element index.
pub fn gf_nth_root(a: &GfElem, n: u64) -> Result<(GfElem, Field)> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    if n == 0 {
        return Err(Error::Precondition("root index must be >= 1".into()));
    }
    let base = a.field();
    if n == 1 {
        return Ok((a.clone(), base.clone()));
    }
    let m = root_degree(a, n, false)?;
    let big = extend(base, m)?;
    let target = embed(a, &big)?.value();
    let (e, n0) = split_p_part(n, big.p() as u64);
    let b = big
        .elements()
        .skip(1)
        .find(|&c| big.pow(c, n0 as u128) == target)
        .expect("root exists in the chosen extension");
    let c = big.frobenius(b, -(e as i64));
    Ok((GfElem::new(&big, c), big))
}

/// Every root of `x^n = a`, in the smallest extension where `x^n - a` splits.
/// Sorted by element index; `a = 0` gives the single root `0`.
pub fn gf_all_nth_roots(a: &GfElem, n: u64) -> Result<(Vec<GfElem>, Field)> {
    if n == 0 {
        return Err(Error::Precondition("root index must be >= 1".into()));
    }
    let base = a.field();
    if a.is_zero() {
        return Ok((vec![a.clone()], base.clone()));
    }
    let m = root_degree(a, n, true)?;
    let big = extend(base, m)?;
    let target = embed(a, &big)?.value();
    let roots = big
        .elements()
        .skip(1)
        .filter(|&c| big.pow(c, n as u128) == target)
        .map(|c| GfElem::new(&big, c))
        .collect();
    Ok((roots, big))
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn nth_root_satisfies_equation(a in 1u32..9, n in 1u64..7) {
            let f9 = FieldSpec::with_degree(3, 2).unwrap();
            let a = GfElem::new(&f9, f9.elem(a));
            let (c, big) = gf_nth_root(&a, n).unwrap();
            prop_assert_eq!(c.pow(n as u128), embed(&a, &big).unwrap());
        }
    }
}
