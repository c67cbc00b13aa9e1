use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};

use super::rational::{self, Rational};

/// Exact Gaussian-rational scalar `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn imag(im: Rational) -> Self {
        Self { re: Rational::zero(), im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn i() -> Self {
        Self::imag(Rational::one())
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(rational::int(re), rational::int(im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    /// `re² + im²`
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { re: &self.re * k, im: &self.im * k }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rational::to_f64(&self.re), rational::to_f64(&self.im))
    }
}

impl From<Rational> for ComplexRational {
    fn from(re: Rational) -> Self {
        Self::real(re)
    }
}

impl fmt::Display for ComplexRational {
    /// Writes in the operator-expression grammar: `3/2`, `-i`, `2*i`, `1+2*i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag_part = |im: &Rational| {
            if im.abs().is_one() {
                "i".to_string()
            } else {
                format!("{}*i", rational::format(&im.abs()))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", rational::format(&self.re)),
            (true, false) => {
                let sign = if self.im.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}", imag_part(&self.im))
            }
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{sign}{}", rational::format(&self.re), imag_part(&self.im))
            }
        }
    }
}

impl Serialize for ComplexRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ComplexRational", 2)?;
        st.serialize_field("re", &rational::format(&self.re))?;
        st.serialize_field("im", &rational::format(&self.im))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for ComplexRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(with = "rational::serde_str")]
            re: Rational,
            #[serde(with = "rational::serde_str")]
            im: Rational,
        }
        let raw = Raw::deserialize(d)?;
        Ok(Self::new(raw.re, raw.im))
    }
}

impl Add<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn add(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn sub(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn mul(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational { re: -&self.re, im: -&self.im }
    }
}

impl Neg for ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational { re: -self.re, im: -self.im }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<ComplexRational> for ComplexRational {
            type Output = ComplexRational;
            fn $method(self, rhs: ComplexRational) -> ComplexRational {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&ComplexRational> for ComplexRational {
            type Output = ComplexRational;
            fn $method(self, rhs: &ComplexRational) -> ComplexRational {
                (&self).$method(rhs)
            }
        }
        impl $tr<ComplexRational> for &ComplexRational {
            type Output = ComplexRational;
            fn $method(self, rhs: ComplexRational) -> ComplexRational {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&ComplexRational> for ComplexRational {
    fn add_assign(&mut self, rhs: &ComplexRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ComplexRational> for ComplexRational {
    fn sub_assign(&mut self, rhs: &ComplexRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}
