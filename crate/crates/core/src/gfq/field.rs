//! Finite fields `F_{p^k}` in a power basis over `F_p`.
//!
//! An element is stored as the integer `a_0 + a_1 p + ... + a_{k-1} p^{k-1}`
//! of its coordinates, so the prime subfield is exactly `0..p`. Multiplication
//! in proper extensions goes through discrete log tables built once per field.

use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};

/// Upper bound on `q` for which log tables are built.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;
const ADD_TABLE_LIMIT: u32 = 1024;

/// A raw field element; only meaningful together with its [`FieldSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub type Field = Arc<FieldSpec>;

pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus coefficients, low to high, length `k + 1`.
    modulus: Vec<u32>,
    // Only populated for k > 1.
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Vec<u16>,
    neg_table: Vec<u32>,
    pub(crate) embeddings: Mutex<Vec<(Vec<u32>, Arc<Vec<Elem>>)>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({})", self)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.modulus.hash(state);
    }
}

impl fmt::Display for FieldSpec {
    /// `p^k/c_k,...,c_0`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}/", self.p, self.k)?;
        let coeffs: Vec<String> = self.modulus.iter().rev().map(|c| c.to_string()).collect();
        write!(f, "{}", coeffs.join(","))
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Coordinate-vector arithmetic mod the modulus, used only while building tables.
struct Slow<'a> {
    p: u32,
    k: usize,
    modulus: &'a [u32],
}

impl Slow<'_> {
    fn digits(&self, mut e: u32) -> Vec<u32> {
        let mut d = vec![0; self.k];
        for slot in d.iter_mut() {
            *slot = e % self.p;
            e /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.k];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for i in (self.k..2 * self.k).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..self.k {
                let m = self.modulus[j] as u64;
                prod[i - self.k + j] = (prod[i - self.k + j] + p * p - c * m % p) % p;
            }
        }
        let low: Vec<u32> = prod[..self.k].iter().map(|&x| x as u32).collect();
        self.undigits(&low)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

impl FieldSpec {
    /// The prime field `F_p`, with modulus `x`.
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p as u64 > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge(p as u128));
        }
        Ok(Arc::new(Self::build(p, 1, vec![0, 1])))
    }

    /// `F_{p^k}` from a monic modulus given high to low (`c_k, ..., c_0`).
    pub fn new(p: u32, modulus_high_to_low: &[u32]) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if modulus_high_to_low.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        let mut modulus: Vec<u32> = modulus_high_to_low.iter().rev().copied().collect();
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!("modulus coefficients must lie in [0, {p})")));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let k = (modulus.len() - 1) as u32;
        if (p as u64).checked_pow(k).filter(|&q| q <= MAX_FIELD_SIZE).is_none() {
            return Err(Error::FieldTooLarge((p as u128).pow(k)));
        }
        if k == 1 {
            // Any monic linear modulus gives the same coordinates; normalize to x.
            modulus = vec![0, 1];
        } else if !is_irreducible_over_prime(p, &modulus) {
            return Err(Error::InvalidField(format!(
                "modulus {:?} is reducible over F_{p}",
                modulus_high_to_low
            )));
        }
        Ok(Arc::new(Self::build(p, k, modulus)))
    }

    /// `F_{p^k}` with the lexicographically first monic irreducible modulus.
    pub fn with_degree(p: u32, k: u32) -> Result<Field> {
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        if k == 1 {
            return Self::prime(p);
        }
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_FIELD_SIZE);
        if q.is_none() {
            return Err(Error::FieldTooLarge((p as u128).pow(k)));
        }
        // Enumerate c_{k-1..0} in base p; c_0 != 0 is necessary.
        let total = (p as u64).pow(k);
        for code in 0..total {
            let mut modulus = Vec::with_capacity(k as usize + 1);
            let mut c = code;
            for _ in 0..k {
                modulus.push((c % p as u64) as u32);
                c /= p as u64;
            }
            if modulus[0] == 0 {
                continue;
            }
            modulus.push(1);
            if is_irreducible_over_prime(p, &modulus) {
                return Ok(Arc::new(Self::build(p, k, modulus)));
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    /// Parses `p`, `p^k` (modulus found by search) or `p^k/c_k,...,c_0`.
    pub fn parse(text: &str) -> Result<Field> {
        let text = text.trim();
        let bad = |m: &str| Error::InvalidField(format!("{m}: {text:?}"));
        let (head, modulus) = match text.split_once('/') {
            Some((h, m)) => (h, Some(m)),
            None => (text, None),
        };
        let (p, k) = match head.split_once('^') {
            Some((p, k)) => (
                p.trim().parse::<u32>().map_err(|_| bad("bad characteristic"))?,
                k.trim().parse::<u32>().map_err(|_| bad("bad extension degree"))?,
            ),
            None => (head.trim().parse::<u32>().map_err(|_| bad("bad characteristic"))?, 1),
        };
        match modulus {
            None => Self::with_degree(p, k),
            Some(m) => {
                let coeffs: std::result::Result<Vec<u32>, _> =
                    m.split(',').map(|c| c.trim().parse::<u32>()).collect();
                let coeffs = coeffs.map_err(|_| bad("bad modulus coefficient"))?;
                if coeffs.len() != k as usize + 1 {
                    return Err(bad(&format!(
                        "modulus needs {} coefficients for degree {k}, got {}",
                        k + 1,
                        coeffs.len()
                    )));
                }
                Self::new(p, &coeffs)
            }
        }
    }

    fn build(p: u32, k: u32, modulus: Vec<u32>) -> FieldSpec {
        let q = p.pow(k);
        let mut spec = FieldSpec {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: Vec::new(),
            neg_table: Vec::new(),
            embeddings: Mutex::new(Vec::new()),
        };
        if k > 1 {
            let slow = Slow { p, k: k as usize, modulus: &spec.modulus };
            let order = (q - 1) as u64;
            let factors = prime_factors(order);
            let g = (2..q)
                .find(|&g| factors.iter().all(|&r| slow.pow(g, order / r) != 1))
                .expect("multiplicative group is cyclic");
            let mut exp = vec![0u32; 2 * (q as usize - 1)];
            let mut log = vec![0u32; q as usize];
            let mut cur = 1u32;
            for i in 0..(q - 1) as usize {
                exp[i] = cur;
                exp[i + q as usize - 1] = cur;
                log[cur as usize] = i as u32;
                cur = slow.mul(cur, g);
            }
            spec.exp = exp;
            spec.log = log;
            spec.neg_table = (0..q)
                .map(|a| {
                    let d = slow.digits(a);
                    let n: Vec<u32> = d.iter().map(|&x| (p - x) % p).collect();
                    slow.undigits(&n)
                })
                .collect();
            if q <= ADD_TABLE_LIMIT && p != 2 {
                let mut table = vec![0u16; (q * q) as usize];
                for a in 0..q {
                    for b in 0..q {
                        table[(a * q + b) as usize] = spec.add_digits(a, b) as u16;
                    }
                }
                spec.add_table = table;
            }
        }
        spec
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, low to high.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn same(&self, other: &FieldSpec) -> bool {
        std::ptr::eq(self, other) || (self.p == other.p && self.modulus == other.modulus)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    pub fn elem(&self, index: u32) -> Elem {
        assert!(index < self.q, "element index out of range");
        Elem(index)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    /// The class of `x` in `F_p[x]/(modulus)`.
    pub fn generator(&self) -> Elem {
        if self.k == 1 {
            Elem(0)
        } else {
            Elem(self.p)
        }
    }

    pub fn in_prime_field(&self, a: Elem) -> bool {
        a.0 < self.p
    }

    pub fn coords(&self, a: Elem) -> Vec<u32> {
        let mut e = a.0;
        (0..self.k)
            .map(|_| {
                let d = e % self.p;
                e /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coords(&self, coords_low_to_high: &[u32]) -> Result<Elem> {
        if coords_low_to_high.len() != self.k as usize || coords_low_to_high.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidField(format!(
                "element needs {} coordinates in [0, {})",
                self.k, self.p
            )));
        }
        Ok(Elem(coords_low_to_high.iter().rev().fold(0, |acc, &x| acc * self.p + x)))
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.p;
        let mut r = 0;
        let mut pw = 1;
        for _ in 0..self.k {
            let d = (a % p + b % p) % p;
            r += d * pw;
            pw *= p;
            a /= p;
            b /= p;
        }
        r
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.k == 1 {
            let s = a.0 + b.0;
            Elem(if s >= self.p { s - self.p } else { s })
        } else if self.p == 2 {
            Elem(a.0 ^ b.0)
        } else if !self.add_table.is_empty() {
            Elem(self.add_table[(a.0 * self.q + b.0) as usize] as u32)
        } else {
            Elem(self.add_digits(a.0, b.0))
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.k == 1 {
            Elem(if a.0 == 0 { 0 } else { self.p - a.0 })
        } else {
            Elem(self.neg_table[a.0 as usize])
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem(0);
        }
        if self.k == 1 {
            Elem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
        } else {
            let s = self.log[a.0 as usize] + self.log[b.0 as usize];
            Elem(self.exp[s as usize])
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.k == 1 {
            Ok(self.pow(a, (self.p - 2) as u128))
        } else {
            let l = self.log[a.0 as usize];
            let n = self.q - 1;
            Ok(Elem(self.exp[((n - l) % n) as usize]))
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u128) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let e = ((e - 1) % (self.q as u128 - 1)) as u64 + 1;
        if self.k > 1 {
            let l = (self.log[a.0 as usize] as u64 * e) % (self.q as u64 - 1);
            return Elem(self.exp[l as usize]);
        }
        let mut base = a;
        let mut acc = Elem::ONE;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^{p^j}` for `j >= 0`; the unique `p^{|j|}`-th root for `j < 0`.
    pub fn frobenius(&self, a: Elem, j: i64) -> Elem {
        let k = self.k as i64;
        let j = j.rem_euclid(k) as u32;
        if j == 0 || self.k == 1 {
            return a;
        }
        self.pow(a, (self.p as u128).pow(j))
    }

    pub fn pth_root(&self, a: Elem) -> Elem {
        self.frobenius(a, -1)
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> Elem {
        if self.q == 2 {
            return Elem::ONE;
        }
        if self.k > 1 {
            return Elem(self.exp[1]);
        }
        let order = (self.q - 1) as u64;
        let factors = prime_factors(order);
        (2..self.q)
            .map(Elem)
            .find(|&g| factors.iter().all(|&r| self.pow(g, (order / r) as u128) != Elem::ONE))
            .expect("multiplicative group is cyclic")
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> u64 {
        assert!(!a.is_zero());
        let mut n = (self.q - 1) as u64;
        for r in prime_factors(n) {
            while n.is_multiple_of(r) && self.pow(a, (n / r) as u128) == Elem::ONE {
                n /= r;
            }
        }
        n
    }

    /// Text form of an element: coordinates `a_{k-1},...,a_0`.
    pub fn format_coords(&self, a: Elem) -> String {
        let c: Vec<String> = self.coords(a).iter().rev().map(|d| d.to_string()).collect();
        c.join(",")
    }

    pub fn parse_coords(&self, text: &str) -> Result<Elem> {
        let parts: std::result::Result<Vec<u32>, _> =
            text.split(',').map(|c| c.trim().parse::<u32>()).collect();
        let mut parts = parts.map_err(|_| Error::InvalidField(format!("bad element {text:?}")))?;
        parts.reverse();
        self.from_coords(&parts)
    }

    /// Element as an expression in the generator `w`, e.g. `2*w^2 + 1`.
    pub fn format_expr(&self, a: Elem) -> String {
        if self.k == 1 {
            return a.0.to_string();
        }
        let coords = self.coords(a);
        let mut terms = Vec::new();
        for (i, &c) in coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "w".to_string(),
                (1, c) => format!("{c}*w"),
                (i, 1) => format!("w^{i}"),
                (i, c) => format!("{c}*w^{i}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// Rabin's test for a monic `modulus` (low to high) over `F_p`.
fn is_irreducible_over_prime(p: u32, modulus: &[u32]) -> bool {
    use crate::ratfunc::Poly;
    let fp = FieldSpec::prime(p).expect("p checked prime");
    let coeffs: Vec<Elem> = modulus.iter().map(|&c| Elem(c)).collect();
    let m = Poly::from_elems(&fp, coeffs);
    crate::ratfunc::factor::is_irreducible(&m)
}
