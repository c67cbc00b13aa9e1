use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::One;
use serde::ser::SerializeMap;
use serde::Serialize;

use crate::algebra::{rational, ComplexRational, MultiIndex, Rational};
use crate::error::{Error, Result};

/// Underlying bounded symmetric domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    /// Unit ball of `C^N`.
    Ball(usize),
    /// `2×2` complex matrices `Z` with `I - Z*Z > 0`; variables
    /// `z1..z4` are the entries of `Z` in row-major order.
    MatrixBall2,
}

impl Domain {
    pub fn dim(&self) -> usize {
        match self {
            Domain::Ball(n) => *n,
            Domain::MatrixBall2 => 4,
        }
    }

    pub fn unit(&self) -> Unit {
        match self {
            Domain::Ball(_) => Unit::One,
            Domain::MatrixBall2 => Unit::PiFour,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Ball(n) => write!(f, "ball(N={n})"),
            Domain::MatrixBall2 => write!(f, "mball"),
        }
    }
}

/// Transcendental factor attached to an exact inner-product coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Unit {
    /// Dimensionless (normalized ball measure, or ratios).
    One,
    /// The coefficient multiplies `π⁴` (Lebesgue measure on `C⁴`).
    PiFour,
}

impl Unit {
    pub fn as_str(&self) -> &'static str {
        match self {
            Unit::One => "1",
            Unit::PiFour => "pi^4",
        }
    }
}

/// An exact inner product `coefficient · unit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactIPValue {
    pub coefficient: ComplexRational,
    pub unit: Unit,
}

impl ExactIPValue {
    pub fn new(coefficient: ComplexRational, unit: Unit) -> Self {
        Self { coefficient, unit }
    }

    pub fn real(coefficient: Rational, unit: Unit) -> Self {
        Self::new(ComplexRational::real(coefficient), unit)
    }

    pub fn zero(unit: Unit) -> Self {
        Self::new(ComplexRational::zero(), unit)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coefficient.conj(), self.unit)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.unit != other.unit {
            return Err(Error::InvalidParameter(format!(
                "cannot add values with units {} and {}",
                self.unit.as_str(),
                other.unit.as_str()
            )));
        }
        Ok(Self::new(&self.coefficient + &other.coefficient, self.unit))
    }

    /// `self / other` as a dimensionless scalar; `None` on unit mismatch or
    /// division by zero.
    pub fn ratio(&self, other: &Self) -> Option<ComplexRational> {
        if self.unit != other.unit {
            return None;
        }
        other.coefficient.inv().map(|inv| &self.coefficient * &inv)
    }
}

impl fmt::Display for ExactIPValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.unit {
            Unit::One => write!(f, "{}", self.coefficient),
            Unit::PiFour if self.coefficient.is_real() => write!(f, "{}*pi^4", self.coefficient),
            Unit::PiFour => write!(f, "({})*pi^4", self.coefficient),
        }
    }
}

impl Serialize for ExactIPValue {
    /// `{"coefficient": "p/q", "unit": "1"|"pi^4"}`; a non-real coefficient is
    /// written as `{"re": .., "im": ..}`.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        if self.coefficient.is_real() {
            m.serialize_entry("coefficient", &rational::format(&self.coefficient.re))?;
        } else {
            m.serialize_entry("coefficient", &self.coefficient)?;
        }
        m.serialize_entry("unit", self.unit.as_str())?;
        m.end()
    }
}

type MonoCache = Arc<RwLock<HashMap<(MultiIndex, MultiIndex), Rational>>>;

/// Weighted Bergman space `A²_ξ(D)`.
///
/// Cloning is cheap and clones share a memo of monomial inner products.
#[derive(Clone)]
pub struct BergmanSpace {
    domain: Domain,
    xi: Rational,
    cache: MonoCache,
}

impl BergmanSpace {
    pub fn new(domain: Domain, xi: Rational) -> Result<Self> {
        if xi <= -Rational::one() {
            return Err(Error::InvalidParameter(format!(
                "weight xi = {} must exceed -1",
                rational::format(&xi)
            )));
        }
        if let Domain::Ball(0) = domain {
            return Err(Error::InvalidParameter("ball dimension must be at least 1".into()));
        }
        Ok(Self { domain, xi, cache: MonoCache::default() })
    }

    pub fn ball(n: usize, xi: Rational) -> Result<Self> {
        Self::new(Domain::Ball(n), xi)
    }

    pub fn matrix_ball(xi: Rational) -> Result<Self> {
        Self::new(Domain::MatrixBall2, xi)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn xi(&self) -> &Rational {
        &self.xi
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn unit(&self) -> Unit {
        self.domain.unit()
    }

    /// Same domain with weight `ξ + shift`.
    pub fn shifted(&self, shift: &Rational) -> Result<Self> {
        Self::new(self.domain, &self.xi + shift)
    }

    /// `N + ξ + 1` on the ball, `ξ + 4` on the matrix ball: the factor that
    /// multiplies the order-zero part of the representation operators.
    pub fn weight_constant(&self) -> Rational {
        match self.domain {
            Domain::Ball(n) => &self.xi + rational::int(n as i64 + 1),
            Domain::MatrixBall2 => &self.xi + rational::int(4),
        }
    }

    pub(crate) fn cached(&self, n: &MultiIndex, m: &MultiIndex) -> Option<Rational> {
        self.cache
            .read()
            .expect("monomial cache poisoned")
            .get(&(n.clone(), m.clone()))
            .cloned()
    }

    pub(crate) fn store(&self, n: &MultiIndex, m: &MultiIndex, value: &Rational) {
        self.cache
            .write()
            .expect("monomial cache poisoned")
            .insert((n.clone(), m.clone()), value.clone());
    }

    pub(crate) fn check_index(&self, n: &MultiIndex) -> Result<()> {
        if n.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: n.len() });
        }
        Ok(())
    }
}

impl PartialEq for BergmanSpace {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.xi == other.xi
    }
}

impl fmt::Debug for BergmanSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BergmanSpace")
            .field("domain", &self.domain)
            .field("xi", &rational::format(&self.xi))
            .finish()
    }
}
