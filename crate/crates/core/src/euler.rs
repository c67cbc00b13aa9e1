//! The shifted Euler operator `Ẽ = Σ z_j∂_j + c` as a map `A²_ξ → A²_{ξ+2}`
//! on the ball, its inverse, and its optimal norm constants.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{rational, ComplexRational, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::metric::{ip, BergmanSpace, Domain};

fn check_c(c: &Rational) -> Result<()> {
    if rational::is_nonpositive_integer(c) {
        return Err(Error::InvalidParameter(format!(
            "c = {} must not be 0 or a negative integer",
            rational::format(c)
        )));
    }
    Ok(())
}

/// Scales each homogeneous part of degree `k` by `c + k`.
pub fn euler_apply(p: &Polynomial, c: &Rational) -> Polynomial {
    p.map_coefficients(|beta, a| a.scale(&(c + rational::int(beta.degree() as i64))))
}

/// Divides each homogeneous part of degree `k` by `c + k`.
pub fn euler_inverse(p: &Polynomial, c: &Rational) -> Result<Polynomial> {
    check_c(c)?;
    Ok(p.map_coefficients(|beta, a| a.scale(&(Rational::one() / (c + rational::int(beta.degree() as i64))))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerBounds {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(with = "rational::serde_str")]
    pub xi: Rational,
    #[serde(with = "rational::serde_str")]
    pub c: Rational,
    #[serde(with = "rational::serde_str")]
    pub inf_ratio: Rational,
    #[serde(with = "rational::serde_str")]
    pub sup_ratio: Rational,
    /// `None` when the infimum is the `k → ∞` limit.
    pub inf_attained_at: Option<u64>,
    pub sup_attained_at: Option<u64>,
    /// Degrees `k ≤ scan_limit` were evaluated exactly; beyond it `r` is
    /// strictly monotone towards `(N+ξ+2)(N+ξ+1)`.
    pub scan_limit: u64,
}

/// `r(k) = ‖Ẽz^β‖²_{ξ+2} / ‖z^β‖²_ξ` for `|β| = k`.
pub fn euler_ratio(n: usize, xi: &Rational, c: &Rational, k: u64) -> Rational {
    let a = rational::int(n as i64 + 2) + xi;
    let b = rational::int(n as i64 + 1) + xi;
    let k = Rational::from_integer(BigInt::from(k));
    let ck = c + &k;
    &ck * &ck * &a * &b / ((&a + &k) * (&b + &k))
}

fn poly_mul(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.len() + q.len() - 1];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in q.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    let len = p.len().max(q.len());
    let at = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
    let mut out: Vec<Rational> = (0..len).map(|i| at(p, i) - at(q, i)).collect();
    while out.len() > 1 && out.last().is_some_and(|x| x.is_zero()) {
        out.pop();
    }
    out
}

/// Coefficients (ascending) of `g(k)`, whose sign is that of `r(k+1) - r(k)`.
fn difference_numerator(a: &Rational, b: &Rational, c: &Rational) -> Vec<Rational> {
    let lin = |x: &Rational| vec![x.clone(), Rational::one()];
    let one = Rational::one();
    let up = poly_mul(&poly_mul(&lin(&(c + &one)), &lin(&(c + &one))), &poly_mul(&lin(a), &lin(b)));
    let down = poly_mul(&poly_mul(&lin(c), &lin(c)), &poly_mul(&lin(&(a + &one)), &lin(&(b + &one))));
    poly_sub(&up, &down)
}

/// Exact infimum and supremum of `r(k)` over `k ≥ 0`.
///
/// All real roots of `g` lie below the Cauchy bound `K`, so `r` is
/// monotone for `k ≥ K`; the values up to `K` are scanned exactly and the
/// tail contributes only its limit.
pub fn euler_bounds(n: usize, xi: &Rational, c: &Rational) -> Result<EulerBounds> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    if xi <= &-Rational::one() {
        return Err(Error::InvalidParameter(format!("xi = {} must exceed -1", rational::format(xi))));
    }
    check_c(c)?;
    let a = rational::int(n as i64 + 2) + xi;
    let b = rational::int(n as i64 + 1) + xi;
    let limit = &a * &b;
    let g = difference_numerator(&a, &b, c);
    let lead = g.last().cloned().unwrap_or_else(Rational::zero);
    let bound = if g.len() <= 1 {
        Rational::zero()
    } else {
        g[..g.len() - 1]
            .iter()
            .map(|x| (x / &lead).abs())
            .fold(Rational::zero(), |m, x| if x > m { x } else { m })
            + Rational::one()
    };
    let scan_limit = bound
        .ceil()
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::InvalidParameter("euler parameters too large to scan".into()))?;

    let mut lo = (euler_ratio(n, xi, c, 0), 0u64);
    let mut hi = lo.clone();
    for k in 1..=scan_limit {
        let r = euler_ratio(n, xi, c, k);
        if r < lo.0 {
            lo = (r, k);
        } else if r > hi.0 {
            hi = (r, k);
        }
    }
    let (inf_ratio, inf_attained_at) = if lo.0 <= limit { (lo.0, Some(lo.1)) } else { (limit.clone(), None) };
    let (sup_ratio, sup_attained_at) = if hi.0 >= limit { (hi.0, Some(hi.1)) } else { (limit, None) };
    Ok(EulerBounds {
        n,
        xi: xi.clone(),
        c: c.clone(),
        inf_ratio,
        sup_ratio,
        inf_attained_at,
        sup_attained_at,
        scan_limit,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerNormCheck {
    /// `‖Ẽp‖²_{ξ+2}`
    #[serde(with = "rational::serde_str")]
    pub lhs: Rational,
    /// `‖p‖²_ξ`
    #[serde(with = "rational::serde_str")]
    pub norm_sq: Rational,
    #[serde(with = "rational::serde_str")]
    pub lower: Rational,
    #[serde(with = "rational::serde_str")]
    pub upper: Rational,
}

/// Computes `‖Ẽp‖²_{ξ+2}` and checks it against the optimal two-sided bound.
pub fn euler_norm_check(space: &BergmanSpace, p: &Polynomial, c: &Rational) -> Result<EulerNormCheck> {
    let Domain::Ball(n) = space.domain() else {
        return Err(Error::DomainMismatch("the Euler map is defined on the ball".into()));
    };
    let bounds = euler_bounds(n, space.xi(), c)?;
    let target = space.shifted(&rational::int(2))?;
    let image = euler_apply(p, c);
    let real = |v: ComplexRational| -> Result<Rational> {
        if v.is_real() {
            Ok(v.re)
        } else {
            Err(Error::Invariant("squared norm is not real".into()))
        }
    };
    let lhs = real(ip(&target, &image, &image)?.coefficient)?;
    let norm_sq = real(ip(space, p, p)?.coefficient)?;
    let lower = &bounds.inf_ratio * &norm_sq;
    let upper = &bounds.sup_ratio * &norm_sq;
    if lhs < lower || lhs > upper {
        return Err(Error::Invariant(format!(
            "Euler norm {} outside [{}, {}]",
            rational::format(&lhs),
            rational::format(&lower),
            rational::format(&upper)
        )));
    }
    Ok(EulerNormCheck { lhs, norm_sq, lower, upper })
}
