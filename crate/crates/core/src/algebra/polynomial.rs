use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::Serialize;

use super::{rational, ComplexRational, MultiIndex, Rational};
use crate::error::{Error, Result};

/// Polynomial in `dim` complex variables with exact coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<MultiIndex, ComplexRational>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: ComplexRational) -> Self {
        Self::monomial(MultiIndex::zero(dim), c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, ComplexRational::one())
    }

    pub fn monomial(index: MultiIndex, c: ComplexRational) -> Self {
        let dim = index.len();
        let mut p = Self::zero(dim);
        p.add_term(index, &c);
        p
    }

    /// The coordinate function `z_k` (0-based `k`).
    pub fn var(dim: usize, k: usize) -> Self {
        Self::monomial(MultiIndex::unit(dim, k), ComplexRational::one())
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, ComplexRational)>,
    {
        let mut p = Self::zero(dim);
        for (idx, c) in terms {
            if idx.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: idx.len() });
            }
            p.add_term(idx, &c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(MultiIndex::is_zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &ComplexRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, index: &MultiIndex) -> ComplexRational {
        self.terms.get(index).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, index: MultiIndex, c: &ComplexRational) {
        debug_assert_eq!(index.len(), self.dim);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(index);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                out.add_term(i.add(j), &(a * b));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &ComplexRational) -> Self {
        let mut out = Self::zero(self.dim);
        if k.is_zero() {
            return out;
        }
        for (idx, c) in &self.terms {
            out.terms.insert(idx.clone(), c * k);
        }
        out
    }

    pub fn scale_rational(&self, k: &Rational) -> Self {
        self.scale(&ComplexRational::real(k.clone()))
    }

    pub fn conj_coefficients(&self) -> Self {
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(i, c)| (i.clone(), c.conj())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.dim);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `∂/∂z_k` (0-based `k`): `z^n ↦ n_k z^{n-e_k}`.
    pub fn partial_derivative(&self, k: usize) -> Result<Self> {
        if k >= self.dim {
            return Err(Error::IndexOutOfRange { index: k, dimension: self.dim });
        }
        let mut out = Self::zero(self.dim);
        for (idx, c) in &self.terms {
            let e = idx.entries()[k];
            if e == 0 {
                continue;
            }
            let mut lowered = idx.entries().to_vec();
            lowered[k] -= 1;
            out.add_term(MultiIndex::new(lowered), &c.scale(&rational::int(e as i64)));
        }
        Ok(out)
    }

    /// Infallible derivative for internal use where `k < dim` is structural.
    pub(crate) fn d(&self, k: usize) -> Self {
        self.partial_derivative(k).expect("variable index within dimension")
    }

    /// `(degree, homogeneous part)` pairs with strictly increasing degree.
    pub fn homogeneous_decompose(&self) -> Vec<(u32, Polynomial)> {
        let mut parts: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (idx, c) in &self.terms {
            parts
                .entry(idx.degree())
                .or_insert_with(|| Self::zero(self.dim))
                .terms
                .insert(idx.clone(), c.clone());
        }
        parts.into_iter().collect()
    }

    /// Homogeneous part of the given degree.
    pub fn homogeneous_part(&self, degree: u32) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(i, _)| i.degree() == degree)
                .map(|(i, c)| (i.clone(), c.clone()))
                .collect(),
        }
    }

    /// Floating-point evaluation at `point`.
    pub fn eval(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: point.len() });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, c) in &self.terms {
            let mut term = c.to_c64();
            for (z, &e) in point.iter().zip(idx.entries()) {
                term *= z.powu(e);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Applies a function to every coefficient, dropping resulting zeros.
    pub fn map_coefficients<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&MultiIndex, &ComplexRational) -> ComplexRational,
    {
        let mut out = Self::zero(self.dim);
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), &f(idx, c));
        }
        out
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial dimensions must agree")
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(&-rhs).expect("polynomial dimensions must agree")
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial dimensions must agree")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(i, c)| (i.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_poly_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_poly_owned!(Add, add);
forward_poly_owned!(Sub, sub);
forward_poly_owned!(Mul, mul);

fn monomial_text(idx: &MultiIndex) -> String {
    idx.entries()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(k, &e)| if e == 1 { format!("z{}", k + 1) } else { format!("z{}^{e}", k + 1) })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for Polynomial {
    /// Graded order, constant first, in the CLI expression grammar so the
    /// output can be fed back to `--apply`/`--op`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            let mono = monomial_text(idx);
            let (negative, body) = if c.is_real() || c.re.is_zero() {
                let (value, unit) = if c.is_real() { (&c.re, "") } else { (&c.im, "i") };
                let mag = rational::format(&value.abs());
                let coeff = match (value.abs().is_one(), unit.is_empty()) {
                    (true, true) => String::new(),
                    (true, false) => "i".to_string(),
                    (false, true) => mag,
                    (false, false) => format!("{mag}*i"),
                };
                let body = match (coeff.is_empty(), mono.is_empty()) {
                    (true, true) => "1".to_string(),
                    (true, false) => mono,
                    (false, true) => coeff,
                    (false, false) => format!("{coeff}*{mono}"),
                };
                (value.is_negative(), body)
            } else if mono.is_empty() {
                (false, format!("({c})"))
            } else {
                (false, format!("({c})*{mono}"))
            };
            match (n, negative) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    /// `[{"index": [..], "re": "p/q", "im": "p/q"}, ...]`
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Term<'a>(&'a MultiIndex, &'a ComplexRational);
        impl Serialize for Term<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(3))?;
                m.serialize_entry("index", self.0)?;
                m.serialize_entry("re", &rational::format(&self.1.re))?;
                m.serialize_entry("im", &rational::format(&self.1.im))?;
                m.end()
            }
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (idx, c) in &self.terms {
            seq.serialize_element(&Term(idx, c))?;
        }
        seq.end()
    }
}
