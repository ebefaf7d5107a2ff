//! Expression grammar for field and function inputs.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary | implicit)*
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! exponent := '-'? int | '(' '-'? int ('/' int)? ')'
//! atom     := int | 't' | 'x' | 'lambda' | 'w' | '(' expr ')'
//! ```
//!
//! `w` is the generator of the coefficient field. A fractional exponent is
//! allowed only on `t` and only with a `p`-power denominator; such inputs are
//! read over `F_q(u)` with `t = u^{p^k}`.

use super::bipoly::BiPoly;
use super::poly::Poly;
use super::rat::RatFunc;
use crate::error::{Error, Result};
use crate::gfq::{Elem, Field};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbol {
    T,
    X,
    Lambda,
    W,
}

impl Symbol {
    fn name(self) -> &'static str {
        match self {
            Symbol::T => "t",
            Symbol::X => "x",
            Symbol::Lambda => "lambda",
            Symbol::W => "w",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(String),
    Sym(Symbol, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, i64, u64, usize),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Op(char),
}

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse { offset, message: message.into() }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(chars[start..i].iter().map(|p| p.1).collect()), pos));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_alphanumeric() {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().map(|p| p.1).collect()), pos));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), pos));
            i += 1;
        } else {
            return Err(err(pos, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(self.offset(), format!("expected {c:?}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                let at = self.offset();
                self.pos += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Op('('))) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn int(&mut self) -> Result<u64> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                s.parse().map_err(|_| err(at, "exponent too large"))
            }
            _ => Err(err(at, "expected an integer")),
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let at = self.offset();
        let v = i64::try_from(self.int()?).map_err(|_| err(at, "exponent too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Op('^')) {
            return Ok(base);
        }
        let at = self.offset();
        self.pos += 1;
        let (num, den) = if self.eat('(') {
            let num = self.signed_int()?;
            let den = if self.eat('/') { self.int()? } else { 1 };
            self.expect(')')?;
            (num, den)
        } else {
            (self.signed_int()?, 1)
        };
        if den == 0 {
            return Err(err(at, "zero denominator in exponent"));
        }
        Ok(Expr::Pow(Box::new(base), num, den, at))
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                Ok(Expr::Int(s))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let sym = match name.as_str() {
                    "t" => Symbol::T,
                    "x" => Symbol::X,
                    "lambda" | "λ" => Symbol::Lambda,
                    "w" => Symbol::W,
                    _ => return Err(err(at, format!("unknown symbol {name:?}"))),
                };
                Ok(Expr::Sym(sym, at))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(t) => Err(err(at, format!("unexpected token {t:?}"))),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0, end: src.len() };
    if p.toks.is_empty() {
        return Err(err(0, "empty expression"));
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(p.offset(), "trailing input"));
    }
    Ok(e)
}

impl Expr {
    /// Largest `j` with some `t^(a/p^j)` in the expression.
    pub fn perfect_closure_depth(&self, p: u32) -> Result<u32> {
        Ok(match self {
            Expr::Int(_) | Expr::Sym(..) => 0,
            Expr::Neg(a) => a.perfect_closure_depth(p)?,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
                a.perfect_closure_depth(p)?.max(b.perfect_closure_depth(p)?)
            }
            Expr::Pow(base, _, den, at) => {
                let inner = base.perfect_closure_depth(p)?;
                if *den == 1 {
                    return Ok(inner);
                }
                if !matches!(**base, Expr::Sym(Symbol::T, _)) {
                    return Err(err(*at, "fractional exponents are only allowed on t"));
                }
                let (mut d, mut j) = (*den, 0);
                while d % p as u64 == 0 {
                    d /= p as u64;
                    j += 1;
                }
                if d != 1 {
                    return Err(err(*at, format!("exponent denominator {den} is not a power of {p}")));
                }
                j
            }
        })
    }
}

/// Evaluation context: the coefficient field and the closure depth `k`.
pub struct Ctx<'a> {
    pub field: &'a Field,
    pub depth: u32,
}

pub trait ExprRing: Sized + Clone {
    fn constant(ctx: &Ctx, c: Elem) -> Self;
    fn symbol(ctx: &Ctx, sym: Symbol, at: usize) -> Result<Self>;
    /// `t^e` measured in the rescaled variable `u`.
    fn t_power(ctx: &Ctx, e: i64, at: usize) -> Result<Self>;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, other: &Self, at: usize) -> Result<Self>;
    fn pow(&self, e: u64) -> Self;
    fn inv(&self, at: usize) -> Result<Self>;
}

fn reduce_int(digits: &str, p: u32) -> i64 {
    digits.bytes().fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p as u64) as i64
}

pub fn eval<R: ExprRing>(e: &Expr, ctx: &Ctx) -> Result<R> {
    let pk = |j: u32| (ctx.field.p() as i64).pow(j);
    Ok(match e {
        Expr::Int(s) => R::constant(ctx, ctx.field.from_int(reduce_int(s, ctx.field.p()))),
        Expr::Sym(Symbol::T, at) => R::t_power(ctx, pk(ctx.depth), *at)?,
        Expr::Sym(s, at) => R::symbol(ctx, *s, *at)?,
        Expr::Neg(a) => eval::<R>(a, ctx)?.neg(),
        Expr::Add(a, b) => eval::<R>(a, ctx)?.add(&eval(b, ctx)?),
        Expr::Sub(a, b) => eval::<R>(a, ctx)?.sub(&eval(b, ctx)?),
        Expr::Mul(a, b) => eval::<R>(a, ctx)?.mul(&eval(b, ctx)?),
        Expr::Div(a, b, at) => eval::<R>(a, ctx)?.div(&eval(b, ctx)?, *at)?,
        Expr::Pow(base, num, den, at) => {
            if let Expr::Sym(Symbol::T, _) = **base {
                let scaled = num * pk(ctx.depth);
                if scaled % *den as i64 != 0 {
                    return Err(err(*at, "exponent needs a deeper perfect closure"));
                }
                return R::t_power(ctx, scaled / *den as i64, *at);
            }
            if *den != 1 {
                return Err(err(*at, "fractional exponents are only allowed on t"));
            }
            let b = eval::<R>(base, ctx)?;
            if *num >= 0 {
                b.pow(*num as u64)
            } else {
                b.inv(*at)?.pow(num.unsigned_abs())
            }
        }
    })
}

fn generator(ctx: &Ctx, at: usize) -> Result<Elem> {
    if ctx.field.k() == 1 {
        return Err(err(at, "w names the generator of a proper extension; the field is prime"));
    }
    Ok(ctx.field.generator())
}

fn not_allowed(sym: Symbol, at: usize, target: &str) -> Error {
    err(at, format!("symbol {} is not allowed in {target}", sym.name()))
}

impl ExprRing for RatFunc {
    fn constant(ctx: &Ctx, c: Elem) -> Self {
        RatFunc::constant(ctx.field, c)
    }
    fn symbol(ctx: &Ctx, sym: Symbol, at: usize) -> Result<Self> {
        match sym {
            Symbol::W => Ok(RatFunc::constant(ctx.field, generator(ctx, at)?)),
            s => Err(not_allowed(s, at, "an element of F_q(t)")),
        }
    }
    fn t_power(ctx: &Ctx, e: i64, _at: usize) -> Result<Self> {
        RatFunc::t(ctx.field).pow_i64(e)
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn div(&self, o: &Self, at: usize) -> Result<Self> {
        RatFunc::div(self, o).map_err(|_| err(at, "division by zero"))
    }
    fn pow(&self, e: u64) -> Self {
        RatFunc::pow(self, e)
    }
    fn inv(&self, at: usize) -> Result<Self> {
        RatFunc::inv(self).map_err(|_| err(at, "zero to a negative power"))
    }
}

impl ExprRing for Poly {
    fn constant(ctx: &Ctx, c: Elem) -> Self {
        Poly::constant(ctx.field, c)
    }
    fn symbol(ctx: &Ctx, sym: Symbol, at: usize) -> Result<Self> {
        match sym {
            Symbol::W => Ok(Poly::constant(ctx.field, generator(ctx, at)?)),
            Symbol::X => Ok(Poly::x(ctx.field)),
            s => Err(not_allowed(s, at, "a polynomial in x over F_q")),
        }
    }
    fn t_power(_ctx: &Ctx, _e: i64, at: usize) -> Result<Self> {
        Err(not_allowed(Symbol::T, at, "a polynomial in x over F_q"))
    }
    fn add(&self, o: &Self) -> Self {
        Poly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Poly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Poly::mul(self, o)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn div(&self, o: &Self, at: usize) -> Result<Self> {
        let (q, r) = self.divrem(o).map_err(|_| err(at, "division by zero"))?;
        if !r.is_zero() {
            return Err(err(at, "inexact polynomial division"));
        }
        Ok(q)
    }
    fn pow(&self, e: u64) -> Self {
        Poly::pow(self, e)
    }
    fn inv(&self, at: usize) -> Result<Self> {
        let one = Poly::one(self.field());
        ExprRing::div(&one, self, at)
    }
}

impl ExprRing for BiPoly {
    fn constant(ctx: &Ctx, c: Elem) -> Self {
        BiPoly::from_x(&Poly::constant(ctx.field, c))
    }
    fn symbol(ctx: &Ctx, sym: Symbol, at: usize) -> Result<Self> {
        match sym {
            Symbol::W => Ok(BiPoly::from_x(&Poly::constant(ctx.field, generator(ctx, at)?))),
            Symbol::X => Ok(BiPoly::x(ctx.field)),
            Symbol::Lambda => Ok(BiPoly::lambda(ctx.field)),
            Symbol::T => Err(not_allowed(sym, at, "a polynomial in x and lambda")),
        }
    }
    fn t_power(_ctx: &Ctx, _e: i64, at: usize) -> Result<Self> {
        Err(not_allowed(Symbol::T, at, "a polynomial in x and lambda"))
    }
    fn add(&self, o: &Self) -> Self {
        BiPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        BiPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        BiPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        BiPoly::neg(self)
    }
    fn div(&self, o: &Self, at: usize) -> Result<Self> {
        let c = match o.terms().iter().next() {
            Some((0, c)) if o.terms().len() == 1 && c.is_constant() => c.coeff(0),
            _ => return Err(err(at, "only division by nonzero constants is supported here")),
        };
        Ok(self.scale(o.field().inv(c).expect("nonzero constant")))
    }
    fn pow(&self, e: u64) -> Self {
        BiPoly::pow(self, e)
    }
    fn inv(&self, at: usize) -> Result<Self> {
        ExprRing::div(&BiPoly::one(self.field()), self, at)
    }
}

/// Parse an element of `F_q(t)` (closure depth 0).
pub fn parse_rat(src: &str, field: &Field) -> Result<RatFunc> {
    parse_rat_at_depth(src, field, 0)
}

pub fn parse_rat_at_depth(src: &str, field: &Field, depth: u32) -> Result<RatFunc> {
    eval(&parse(src)?, &Ctx { field, depth })
}

/// Parse a polynomial in `x` with coefficients in `F_q`.
pub fn parse_poly_x(src: &str, field: &Field) -> Result<Poly> {
    eval(&parse(src)?, &Ctx { field, depth: 0 })
}

pub fn parse_bipoly(src: &str, field: &Field) -> Result<BiPoly> {
    eval(&parse(src)?, &Ctx { field, depth: 0 })
}

/// The closure depth needed to read all `sources` together.
pub fn closure_depth(sources: &[&str], p: u32) -> Result<u32> {
    sources.iter().try_fold(0, |acc, s| Ok(acc.max(parse(s)?.perfect_closure_depth(p)?)))
}
