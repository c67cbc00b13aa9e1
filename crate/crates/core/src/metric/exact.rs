//! Closed-form monomial inner products.
//!
//! Ball: `⟨z^n, z^m⟩_ξ = δ_{nm} n! / ∏_{j=1}^{|n|} (N+ξ+j)` for the normalized
//! weighted measure.
//!
//! Matrix ball: writing `Z = [V | W]` and `W = √T W₁` with `T = I - VV*`, the
//! integral factors into two ball integrals over `V` and `W₁`. Expanding
//! `z2^{n2} z4^{n4} conj(z2^{m2} z4^{m4})` binomially gives a finite sum of
//! products of [`ball_beta_integral`] values, each a rational multiple of π².

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::space::{BergmanSpace, Domain, ExactIPValue};
use crate::algebra::rational::{self, binomial, factorial, Rational};
use crate::algebra::{ComplexRational, MultiIndex, Polynomial};
use crate::error::{Error, Result};

/// `∫_{B²} |w₁|^{2a} |w₂|^{2c} |w|^{-2s} (1-|w|²)^t dLebesgue / π²`
/// `= B(a+1, c+1) · B(a+c-s+2, t+1)`.
pub fn ball_beta_integral(a: u32, c: u32, s: i64, t: &Rational) -> Result<Rational> {
    let radial = a as i64 + c as i64 - s + 2;
    if radial < 1 {
        return Err(Error::InvalidParameter(format!(
            "radial exponent a+c-s+2 = {radial} must be at least 1"
        )));
    }
    if *t <= -Rational::one() {
        return Err(Error::InvalidParameter("weight exponent t must exceed -1".into()));
    }
    let angular = Rational::new(factorial(a) * factorial(c), factorial(a + c + 1));
    Ok(angular * rational::beta_int_first(radial as u32, &(t + Rational::one())))
}

/// Ball monomial inner product (unit `One`).
pub fn mono_ip_ball(space: &BergmanSpace, n: &MultiIndex, m: &MultiIndex) -> Result<ExactIPValue> {
    let Domain::Ball(_) = space.domain() else {
        return Err(Error::DomainMismatch("mono_ip_ball needs a ball space".into()));
    };
    space.check_index(n)?;
    space.check_index(m)?;
    Ok(ExactIPValue::real(ball_coefficient(space, n, m), space.unit()))
}

fn ball_coefficient(space: &BergmanSpace, n: &MultiIndex, m: &MultiIndex) -> Rational {
    if n != m {
        return Rational::zero();
    }
    let base = space.xi() + rational::int(space.dim() as i64);
    Rational::from_integer(n.factorial()) / rational::shifted_product(&base, n.degree())
}

/// The three linear relations necessary for `⟨z^n, z^m⟩ ≠ 0` on the matrix
/// ball: `n₂+n₄ = m₂+m₄`, `n₁+n₂ = m₁+m₂`, `n₂+m₃ = n₃+m₂`.
pub fn check_selection_rules(n: &MultiIndex, m: &MultiIndex) -> bool {
    debug_assert!(n.len() == 4 && m.len() == 4);
    let (n, m) = (n.entries(), m.entries());
    n[1] + n[3] == m[1] + m[3] && n[0] + n[1] == m[0] + m[1] && n[1] + m[2] == n[2] + m[1]
}

/// Matrix-ball monomial inner product, Lebesgue measure, unit `PiFour`.
pub fn mono_ip_matrix_ball(
    space: &BergmanSpace,
    n: &MultiIndex,
    m: &MultiIndex,
) -> Result<ExactIPValue> {
    let Domain::MatrixBall2 = space.domain() else {
        return Err(Error::DomainMismatch("mono_ip_matrix_ball needs the matrix ball".into()));
    };
    space.check_index(n)?;
    space.check_index(m)?;
    Ok(ExactIPValue::real(matrix_ball_coefficient(space, n, m), space.unit()))
}

fn matrix_ball_coefficient(space: &BergmanSpace, n: &MultiIndex, m: &MultiIndex) -> Rational {
    if !check_selection_rules(n, m) {
        return Rational::zero();
    }
    if let Some(v) = space.cached(n, m) {
        return v;
    }
    let value = quadruple_sum(space.xi(), n.entries(), m.entries());
    space.store(n, m, &value);
    value
}

fn quadruple_sum(xi: &Rational, n: &[u32], m: &[u32]) -> Rational {
    let (n1, n2, n3, n4) = (n[0], n[1], n[2], n[3]);
    let (m1, m2, m3, m4) = (m[0], m[1], m[2], m[3]);
    let half_power = (n2 + n4 + m2 + m4) as i64;
    let mut total = Rational::zero();
    for alpha in 0..=n2 {
        for gamma in 0..=n4 {
            let q = alpha + gamma;
            for beta in 0..=m2 {
                // b-exponents must match in the inner integral: α+γ = β+φ
                let Some(phi) = q.checked_sub(beta) else { continue };
                if phi > m4 {
                    continue;
                }
                let z1_hol = n1 + alpha + m4 - phi;
                let z1_anti = m1 + beta + n4 - gamma;
                let z3_hol = n3 + m2 - beta + gamma;
                let z3_anti = m3 + n2 - alpha + phi;
                let inner_a = n2 + n4 - q;
                if z1_hol != z1_anti || z3_hol != z3_anti || inner_a != m2 + m4 - beta - phi {
                    continue;
                }
                let weight: BigInt = binomial(n2, alpha)
                    * binomial(m2, beta)
                    * binomial(n4, gamma)
                    * binomial(m4, phi);
                let sign = if (n2 + m2 - alpha - beta) % 2 == 0 { 1 } else { -1 };
                let outer_t = xi + rational::int(1 + q as i64);
                let outer = ball_beta_integral(z1_hol, z3_hol, half_power / 2, &outer_t)
                    .expect("matched exponents give a convergent outer integral");
                let inner = ball_beta_integral(inner_a, q, 0, xi)
                    .expect("inner ball integral always converges");
                total += Rational::from_integer(weight * BigInt::from(sign)) * outer * inner;
            }
        }
    }
    total
}

/// Monomial inner product on either domain.
pub fn mono_ip(space: &BergmanSpace, n: &MultiIndex, m: &MultiIndex) -> Result<ExactIPValue> {
    match space.domain() {
        Domain::Ball(_) => mono_ip_ball(space, n, m),
        Domain::MatrixBall2 => mono_ip_matrix_ball(space, n, m),
    }
}

/// Real coefficient of `⟨z^n, z^m⟩`; indices are assumed to have the right length.
pub(crate) fn mono_coefficient(space: &BergmanSpace, n: &MultiIndex, m: &MultiIndex) -> Rational {
    match space.domain() {
        Domain::Ball(_) => ball_coefficient(space, n, m),
        Domain::MatrixBall2 => matrix_ball_coefficient(space, n, m),
    }
}

/// Every `m` for which `⟨z^n, z^m⟩` can be nonzero.
pub fn partners(space: &BergmanSpace, n: &MultiIndex) -> Vec<MultiIndex> {
    match space.domain() {
        Domain::Ball(_) => vec![n.clone()],
        Domain::MatrixBall2 => {
            let e = n.entries();
            let (n1, n2, n3, n4) = (e[0] as i64, e[1] as i64, e[2] as i64, e[3] as i64);
            let mut out = Vec::new();
            for m2 in 0..=(n1 + n2).min(n2 + n4) {
                let m1 = n1 + n2 - m2;
                let m4 = n2 + n4 - m2;
                let m3 = n3 - n2 + m2;
                if m3 < 0 {
                    continue;
                }
                out.push(MultiIndex::new(vec![m1 as u32, m2 as u32, m3 as u32, m4 as u32]));
            }
            out
        }
    }
}

/// `⟨p, q⟩`, conjugate-linear in `q`.
pub fn ip(space: &BergmanSpace, p: &Polynomial, q: &Polynomial) -> Result<ExactIPValue> {
    for poly in [p, q] {
        if poly.dim() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), found: poly.dim() });
        }
    }
    let mut acc = ComplexRational::zero();
    for (n, a) in p.terms() {
        for m in partners(space, n) {
            let b = q.coefficient(&m);
            if b.is_zero() {
                continue;
            }
            let g = mono_coefficient(space, n, &m);
            if g.is_zero() {
                continue;
            }
            acc += &(a * &b.conj()).scale(&g);
        }
    }
    Ok(ExactIPValue::new(acc, space.unit()))
}

/// `⟨p, q⟩ / ⟨1, 1⟩`, the form in which measure-normalization conventions cancel.
pub fn normalized_ip(space: &BergmanSpace, p: &Polynomial, q: &Polynomial) -> Result<ComplexRational> {
    let zero = MultiIndex::zero(space.dim());
    let one = mono_coefficient(space, &zero, &zero);
    let value = ip(space, p, q)?;
    Ok(value.coefficient.scale(&(Rational::one() / one)))
}

/// Gram matrix on the monomials of degree at most `degree`.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub indices: Vec<MultiIndex>,
    pub entries: Vec<Vec<ExactIPValue>>,
}

impl GramMatrix {
    pub fn is_hermitian(&self) -> bool {
        let k = self.indices.len();
        (0..k).all(|i| (0..k).all(|j| self.entries[i][j] == self.entries[j][i].conj()))
    }
}

pub fn gram_matrix(space: &BergmanSpace, degree: u32) -> GramMatrix {
    let indices = MultiIndex::all_up_to(space.dim(), degree);
    let entries = indices
        .iter()
        .map(|n| {
            indices
                .iter()
                .map(|m| ExactIPValue::real(mono_coefficient(space, n, m), space.unit()))
                .collect()
        })
        .collect();
    GramMatrix { indices, entries }
}
