//! Dense univariate polynomials over `F_q`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::gfq::{Elem, Field, FieldSpec, GfElem};

const KARATSUBA_CUTOFF: usize = 40;

#[derive(Clone)]
pub struct Poly {
    field: Field,
    /// Low to high, no trailing zeros.
    coeffs: Vec<Elem>,
}

fn trim(v: &mut Vec<Elem>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn add_into(f: &FieldSpec, acc: &mut [Elem], b: &[Elem]) {
    for (x, &y) in acc.iter_mut().zip(b) {
        *x = f.add(*x, y);
    }
}

fn sub_into(f: &FieldSpec, acc: &mut [Elem], b: &[Elem]) {
    for (x, &y) in acc.iter_mut().zip(b) {
        *x = f.sub(*x, y);
    }
}

fn schoolbook(f: &FieldSpec, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len() + b.len() - 1;
    if f.k() == 1 {
        // Lazy reduction: p < 2^20 so every product is < 2^40.
        let p = f.p() as u64;
        let mut acc = vec![0u64; n];
        let limit = 1u64 << 62;
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let x = x.0 as u64;
            for (j, &y) in b.iter().enumerate() {
                let slot = &mut acc[i + j];
                *slot += x * y.0 as u64;
                if *slot >= limit {
                    *slot %= p;
                }
            }
        }
        return acc.into_iter().map(|s| Elem((s % p) as u32)).collect();
    }
    let mut out = vec![Elem::ZERO; n];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

fn karatsuba(f: &FieldSpec, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.len().min(b.len()) < KARATSUBA_CUTOFF {
        return schoolbook(f, a, b);
    }
    let half = a.len().max(b.len()).div_ceil(2);
    let (a0, a1) = a.split_at(half.min(a.len()));
    let (b0, b1) = b.split_at(half.min(b.len()));
    if a1.is_empty() || b1.is_empty() {
        // Unbalanced: split the longer operand only.
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = vec![Elem::ZERO; a.len() + b.len() - 1];
        for (chunk_idx, chunk) in long.chunks(short.len()).enumerate() {
            let prod = karatsuba(f, chunk, short);
            add_into(f, &mut out[chunk_idx * short.len()..], &prod);
        }
        return out;
    }
    let z0 = karatsuba(f, a0, b0);
    let z2 = karatsuba(f, a1, b1);
    let mut sa = a0.to_vec();
    add_into(f, &mut sa, a1);
    if a1.len() > a0.len() {
        sa.extend_from_slice(&a1[a0.len()..]);
    }
    let mut sb = b0.to_vec();
    add_into(f, &mut sb, b1);
    let mut z1 = karatsuba(f, &sa, &sb);
    sub_into(f, &mut z1, &z0);
    sub_into(f, &mut z1, &z2);
    let mut out = vec![Elem::ZERO; a.len() + b.len() - 1];
    add_into(f, &mut out, &z0);
    add_into(f, &mut out[half..], &z1);
    add_into(f, &mut out[2 * half..], &z2);
    out
}

impl Poly {
    pub fn zero(field: &Field) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Self {
        Self::from_elems(field, vec![c])
    }

    /// The variable itself.
    pub fn x(field: &Field) -> Self {
        Self::monomial(field, Elem::ONE, 1)
    }

    pub fn monomial(field: &Field, c: Elem, deg: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; deg + 1];
        coeffs[deg] = c;
        Self::from_elems(field, coeffs)
    }

    pub fn from_elems(field: &Field, mut coeffs: Vec<Elem>) -> Self {
        trim(&mut coeffs);
        Poly { field: field.clone(), coeffs }
    }

    /// Integer coefficients, low to high, reduced into the prime subfield.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::from_elems(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Elem::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Elem::ONE
    }

    pub fn check_same(&self, other: &Poly) -> Result<()> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(Error::MixedFields(self.field.to_string(), other.field.to_string()))
        }
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert!(self.field.same(&other.field));
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() { (self, other) } else { (other, self) };
        let mut c = long.coeffs.clone();
        add_into(&self.field, &mut c, &short.coeffs);
        Self::from_elems(&self.field, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly { field: f.clone(), coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Self::from_elems(f, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert!(self.field.same(&other.field));
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        if self.coeffs.len() == 1 {
            return other.scale(self.coeffs[0]);
        }
        if other.coeffs.len() == 1 {
            return self.scale(other.coeffs[0]);
        }
        Self::from_elems(&self.field, karatsuba(&self.field, &self.coeffs, &other.coeffs))
    }

    pub fn square(&self) -> Poly {
        self.mul(self)
    }

    /// Multiplication by `x^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Elem::ZERO; n];
        c.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs: c }
    }

    /// Coefficientwise `c -> c^{p^j}` and `x -> x^{p^j}`: the polynomial raised to `p^j`.
    pub fn frobenius_power(&self, j: u32) -> Poly {
        if j == 0 || self.is_zero() {
            return self.clone();
        }
        let f = &self.field;
        let step = (f.p() as usize).pow(j);
        let mut c = vec![Elem::ZERO; (self.coeffs.len() - 1) * step + 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            c[i * step] = f.frobenius(x, j as i64);
        }
        Poly { field: f.clone(), coeffs: c }
    }

    /// `self^e`, splitting off the `p`-power part of `e` as Frobenius.
    pub fn pow(&self, e: u64) -> Poly {
        let p = self.field.p() as u64;
        let mut rest = e;
        let mut j = 0;
        while rest > 0 && rest.is_multiple_of(p) {
            rest /= p;
            j += 1;
        }
        let mut acc = Poly::one(&self.field);
        if e == 0 {
            return acc;
        }
        let mut base = self.clone();
        while rest > 0 {
            if rest & 1 == 1 {
                acc = acc.mul(&base);
            }
            rest >>= 1;
            if rest > 0 {
                base = base.square();
            }
        }
        acc.frobenius_power(j)
    }

    /// `Some(r)` with `r^p = self` when every exponent is a multiple of `p`.
    pub fn pth_root(&self) -> Option<Poly> {
        let f = &self.field;
        let p = f.p() as usize;
        if self.coeffs.iter().enumerate().any(|(i, c)| i % p != 0 && !c.is_zero()) {
            return None;
        }
        let c = self.coeffs.iter().step_by(p).map(|&x| f.pth_root(x)).collect();
        Some(Self::from_elems(f, c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| f.mul(x, f.from_int(i as i64)))
            .collect();
        Self::from_elems(f, c)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).expect("nonzero lead");
        self.scale(inv)
    }

    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_same(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lead = f.inv(divisor.lead())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd];
            if c.is_zero() {
                continue;
            }
            let factor = f.mul(c, inv_lead);
            quot[i] = factor;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] = f.sub(rem[i + j], f.mul(factor, d));
                }
            }
        }
        rem.truncate(dd);
        Ok((Self::from_elems(f, quot), Self::from_elems(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divrem(divisor).expect("nonzero divisor").1
    }

    /// Exact quotient; panics on a nonzero remainder in debug builds.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divrem(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        debug_assert!(self.field.same(&other.field));
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self(inner)`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(&self.field, c));
        }
        acc
    }

    pub fn mulmod(&self, other: &Poly, modulus: &Poly) -> Poly {
        self.mul(other).rem(modulus)
    }

    pub fn powmod(&self, mut e: u128, modulus: &Poly) -> Poly {
        let mut base = self.rem(modulus);
        let mut acc = Poly::one(&self.field).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, modulus);
            }
        }
        acc
    }

    /// `self^{q^j} mod modulus`, by repeated `q`-th powering.
    pub fn pow_q_iter_mod(&self, j: u32, modulus: &Poly) -> Poly {
        let q = self.field.q() as u128;
        (0..j).fold(self.rem(modulus), |acc, _| acc.powmod(q, modulus))
    }

    /// Coefficient map through a field embedding.
    pub fn map_coeffs(&self, target: &Field, map: impl Fn(Elem) -> Elem) -> Poly {
        Poly::from_elems(target, self.coeffs.iter().map(|&c| map(c)).collect())
    }

    pub fn lead_gf(&self) -> GfElem {
        GfElem::new(&self.field, self.lead())
    }

    /// Human-readable form in variable `var`, high degree first.
    pub fn format_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = f.format_expr(c);
            let compound = cs.contains('+');
            let coef = if compound { format!("({cs})") } else { cs.clone() };
            let term = match i {
                0 => coef,
                _ => {
                    let mono = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                    if c == Elem::ONE {
                        mono
                    } else {
                        format!("{coef}*{mono}")
                    }
                }
            };
            terms.push(term);
        }
        terms.join(" + ")
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field.same(&other.field)
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    /// Degree first, then coefficients from the top.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.format_var("t"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_var("t"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivRem,
    Gcd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyResult {
    One(Poly),
    Pair(Poly, Poly),
}

/// Checked entry point: mixed fields and zero divisors are errors.
pub fn poly_arith(a: &Poly, b: &Poly, op: PolyOp) -> Result<PolyResult> {
    a.check_same(b)?;
    Ok(match op {
        PolyOp::Add => PolyResult::One(a.add(b)),
        PolyOp::Sub => PolyResult::One(a.sub(b)),
        PolyOp::Mul => PolyResult::One(a.mul(b)),
        PolyOp::DivRem => {
            let (q, r) = a.divrem(b)?;
            PolyResult::Pair(q, r)
        }
        PolyOp::Gcd => PolyResult::One(a.gcd(b)),
    })
}
