//! Operator expressions: parsing, printing, and normal ordering into
//! [`FirstOrderOperator`].
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' UINT)*
//! atom   := INT ('/' INT)? | 'i' | 'z' INT | 'd' INT | '(' expr ')'
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::algebra::{rational, ComplexRational, MultiIndex, Polynomial, Rational};
use crate::diffop::FirstOrderOperator;
use crate::error::{Error, Result};

/// Variables and partials carry 1-based indices as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Number(ComplexRational),
    Var(usize),
    Partial(usize),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, u32),
    Neg(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    I,
    Z(usize),
    D(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn parse_error(position: usize, message: impl Into<String>) -> Error {
    Error::Parse { position, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    let digits = |start: usize| {
        let mut end = start;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        end
    };
    while pos < bytes.len() {
        let ch = bytes[pos];
        if ch.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let token = match ch {
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'i' => Token::I,
            b'0'..=b'9' => {
                let end = digits(pos);
                if end < bytes.len() && bytes[end] == b'.' {
                    return Err(parse_error(end, "decimal literals are not accepted; use p/q"));
                }
                let value = text[pos..end].parse::<BigInt>().map_err(|e| parse_error(pos, e.to_string()))?;
                pos = end;
                out.push((start, Token::Int(value)));
                continue;
            }
            b'z' | b'd' => {
                let end = digits(pos + 1);
                if end == pos + 1 {
                    return Err(parse_error(pos + 1, format!("expected an index after '{}'", ch as char)));
                }
                let index = text[pos + 1..end]
                    .parse::<usize>()
                    .map_err(|e| parse_error(pos + 1, e.to_string()))?;
                pos = end;
                out.push((start, if ch == b'z' { Token::Z(index) } else { Token::D(index) }));
                continue;
            }
            other => return Err(parse_error(pos, format!("unexpected character '{}'", other as char))),
        };
        out.push((start, token));
        pos += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
    dim: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut items = vec![self.term()?];
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    items.push(self.term()?);
                }
                Some(Token::Minus) => {
                    self.next();
                    items.push(Expr::Neg(Box::new(self.term()?)));
                }
                _ => break,
            }
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Expr::Sum(items) })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut items = vec![self.unary()?];
        while self.peek() == Some(&Token::Star) {
            self.next();
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Expr::Product(items) })
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Token::Minus) {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while self.peek() == Some(&Token::Caret) {
            self.next();
            let pos = self.position();
            match self.next() {
                Some(Token::Int(e)) => {
                    let e = u32::try_from(e).map_err(|_| parse_error(pos, "exponent too large"))?;
                    base = Expr::Power(Box::new(base), e);
                }
                _ => return Err(parse_error(pos, "expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn index(&self, pos: usize, k: usize) -> Result<usize> {
        if k == 0 || k > self.dim {
            return Err(parse_error(pos, format!("index {k} is outside 1..{}", self.dim)));
        }
        Ok(k)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.position();
        match self.next() {
            Some(Token::Int(p)) => {
                if self.peek() == Some(&Token::Slash) {
                    self.next();
                    let qpos = self.position();
                    match self.next() {
                        Some(Token::Int(q)) if !q.is_zero() => {
                            Ok(Expr::Number(ComplexRational::real(Rational::new(p, q))))
                        }
                        Some(Token::Int(_)) => Err(parse_error(qpos, "division by zero")),
                        _ => Err(parse_error(qpos, "expected an integer denominator")),
                    }
                } else {
                    Ok(Expr::Number(ComplexRational::real(Rational::from_integer(p))))
                }
            }
            Some(Token::I) => Ok(Expr::Number(ComplexRational::i())),
            Some(Token::Z(k)) => Ok(Expr::Var(self.index(pos + 1, k)?)),
            Some(Token::D(k)) => Ok(Expr::Partial(self.index(pos + 1, k)?)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                let close = self.position();
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(parse_error(close, "expected ')'")),
                }
            }
            Some(_) => Err(parse_error(pos, "unexpected token")),
            None => Err(parse_error(pos, "unexpected end of input")),
        }
    }
}

/// Parses `text` over the variables `z1..zN` and partials `d1..dN`.
pub fn parse_operator(text: &str, n: usize) -> Result<Expr> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, at: 0, end: text.len(), dim: n };
    let expr = parser.expr()?;
    if parser.at < parser.tokens.len() {
        return Err(parse_error(parser.position(), "unexpected trailing input"));
    }
    Ok(expr)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Sum,
    Term,
    Unary,
    Atom,
}

impl Expr {
    fn level(&self) -> Level {
        match self {
            Expr::Sum(_) => Level::Sum,
            Expr::Product(_) => Level::Term,
            Expr::Neg(_) => Level::Unary,
            Expr::Number(c) if !c.im.is_zero() && !c.re.is_zero() => Level::Sum,
            Expr::Number(c) if c.re.is_negative() || c.im.is_negative() => Level::Unary,
            Expr::Number(c) if !c.im.is_zero() && !c.im.is_one() => Level::Term,
            Expr::Number(c) if !c.re.is_integer() => Level::Term,
            Expr::Power(..) => Level::Unary,
            _ => Level::Atom,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: Level) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.write_at(f, Level::Sum)?;
            return write!(f, ")");
        }
        match self {
            Expr::Number(c) => write!(f, "{c}"),
            Expr::Var(k) => write!(f, "z{k}"),
            Expr::Partial(k) => write!(f, "d{k}"),
            Expr::Sum(items) => {
                for (j, item) in items.iter().enumerate() {
                    match item {
                        Expr::Neg(inner) if j > 0 => {
                            write!(f, " - ")?;
                            inner.write_at(f, Level::Term)?;
                        }
                        _ if j > 0 => {
                            write!(f, " + ")?;
                            item.write_at(f, Level::Term)?;
                        }
                        _ => item.write_at(f, Level::Term)?,
                    }
                }
                Ok(())
            }
            Expr::Product(items) => {
                for (j, item) in items.iter().enumerate() {
                    if j > 0 {
                        write!(f, "*")?;
                    }
                    item.write_at(f, Level::Unary)?;
                }
                Ok(())
            }
            Expr::Neg(inner) => {
                write!(f, "-")?;
                inner.write_at(f, Level::Unary)
            }
            Expr::Power(base, e) => {
                base.write_at(f, Level::Atom)?;
                write!(f, "^{e}")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, Level::Sum)
    }
}

/// Normally ordered Weyl-algebra element: `(α, β) ↦` coefficient of `z^α ∂^β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    dim: usize,
    terms: BTreeMap<(MultiIndex, MultiIndex), ComplexRational>,
}

impl WeylElement {
    pub fn scalar(dim: usize, c: ComplexRational) -> Self {
        let mut out = Self { dim, terms: BTreeMap::new() };
        out.add_term(MultiIndex::zero(dim), MultiIndex::zero(dim), &c);
        out
    }

    fn generator(dim: usize, k: usize, partial: bool) -> Self {
        let zero = MultiIndex::zero(dim);
        let unit = MultiIndex::unit(dim, k);
        let mut out = Self { dim, terms: BTreeMap::new() };
        let key = if partial { (zero, unit) } else { (unit, zero) };
        out.terms.insert(key, ComplexRational::one());
        out
    }

    fn add_term(&mut self, alpha: MultiIndex, beta: MultiIndex, c: &ComplexRational) {
        let key = (alpha, beta);
        let entry = self.terms.entry(key.clone()).or_insert_with(ComplexRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c);
        }
        out
    }

    fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    /// `z^a ∂^b · z^c ∂^d = Σ_k Π_j C(b_j,k_j) C(c_j,k_j) k_j! z^{a+c-k} ∂^{b+d-k}`.
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self { dim: self.dim, terms: BTreeMap::new() };
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let xy = x * y;
                let bounds: Vec<u32> = b.entries().iter().zip(c.entries()).map(|(p, q)| *p.min(q)).collect();
                let total: u32 = bounds.iter().sum();
                for k in (0..=total).flat_map(|t| MultiIndex::all_of_degree(self.dim, t)) {
                    if k.entries().iter().zip(&bounds).any(|(kj, bj)| kj > bj) {
                        continue;
                    }
                    let mut weight = BigInt::one();
                    for j in 0..self.dim {
                        let kj = k.entries()[j];
                        weight *= rational::binomial(b.entries()[j], kj)
                            * rational::binomial(c.entries()[j], kj)
                            * rational::factorial(kj);
                    }
                    let alpha = a.add(c).checked_sub(&k).expect("k ≤ c");
                    let beta = b.add(d).checked_sub(&k).expect("k ≤ b");
                    out.add_term(alpha, beta, &xy.scale(&Rational::from_integer(weight)));
                }
            }
        }
        out
    }

    fn pow(&self, e: u32) -> Self {
        let mut out = Self::scalar(self.dim, ComplexRational::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Highest derivative order present.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|(_, b)| b.degree()).max().unwrap_or(0)
    }

    pub fn to_operator(&self) -> Result<FirstOrderOperator> {
        let order = self.order();
        if order > 1 {
            return Err(Error::OrderTooHigh(order));
        }
        let mut f0 = Polynomial::zero(self.dim);
        let mut f = vec![Polynomial::zero(self.dim); self.dim];
        for ((a, b), c) in &self.terms {
            match b.as_unit() {
                Some(k) => f[k].add_term(a.clone(), c),
                None => f0.add_term(a.clone(), c),
            }
        }
        FirstOrderOperator::new(f0, f)
    }
}

/// Applies `[∂_k, z_j] = δ_jk` to bring `expr` into `z^α ∂^β` order.
pub fn normal_order(expr: &Expr, n: usize) -> Result<WeylElement> {
    let check = |k: usize| {
        if k == 0 || k > n {
            Err(Error::IndexOutOfRange { index: k, dimension: n })
        } else {
            Ok(k - 1)
        }
    };
    Ok(match expr {
        Expr::Number(c) => WeylElement::scalar(n, c.clone()),
        Expr::Var(k) => WeylElement::generator(n, check(*k)?, false),
        Expr::Partial(k) => WeylElement::generator(n, check(*k)?, true),
        Expr::Sum(items) => {
            let mut acc = WeylElement::scalar(n, ComplexRational::zero());
            for item in items {
                acc = acc.add(&normal_order(item, n)?);
            }
            acc
        }
        Expr::Product(items) => {
            let mut acc = WeylElement::scalar(n, ComplexRational::one());
            for item in items {
                acc = acc.mul(&normal_order(item, n)?);
            }
            acc
        }
        Expr::Power(base, e) => normal_order(base, n)?.pow(*e),
        Expr::Neg(inner) => normal_order(inner, n)?.neg(),
    })
}

pub fn to_operator(expr: &Expr, n: usize) -> Result<FirstOrderOperator> {
    normal_order(expr, n)?.to_operator()
}

/// Parses and normal-orders an operator expression.
pub fn parse_first_order(text: &str, n: usize) -> Result<FirstOrderOperator> {
    to_operator(&parse_operator(text, n)?, n)
}

/// Parses a polynomial in `z1..zN`; partials are rejected.
pub fn parse_polynomial(text: &str, n: usize) -> Result<Polynomial> {
    let l = parse_first_order(text, n)?;
    if l.f().iter().any(|p| !p.is_zero()) {
        return Err(parse_error(0, "expected a polynomial without derivatives"));
    }
    Ok(l.f0().clone())
}

/// A random expression tree in the form the parser produces.
pub fn random_expr<R: Rng>(rng: &mut R, n: usize, depth: u32) -> Expr {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return match rng.gen_range(0..4) {
            0 => Expr::Var(rng.gen_range(1..=n)),
            1 => Expr::Partial(rng.gen_range(1..=n)),
            2 => Expr::Number(ComplexRational::i()),
            _ => Expr::Number(ComplexRational::real(rational::rat(rng.gen_range(0..20), rng.gen_range(1..6)))),
        };
    }
    let width = rng.gen_range(2..=3);
    match rng.gen_range(0..4) {
        0 => Expr::Sum(
            (0..width)
                .map(|j| {
                    let e = random_expr(rng, n, depth - 1);
                    // a Sum produced by the parser never starts with a subtraction
                    if j > 0 && rng.gen_bool(0.3) {
                        Expr::Neg(Box::new(e))
                    } else {
                        e
                    }
                })
                .collect(),
        ),
        1 => Expr::Product((0..width).map(|_| random_expr(rng, n, depth - 1)).collect()),
        2 => Expr::Power(Box::new(random_expr(rng, n, depth - 1)), rng.gen_range(0..4)),
        _ => Expr::Neg(Box::new(random_expr(rng, n, depth - 1))),
    }
}
