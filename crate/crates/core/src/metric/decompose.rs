//! Change of variables `Z = [V | √T W₁]` on the matrix ball, with
//! `T = I - VV*`, and the determinant identity
//! `det(I - Z*Z) = (1 - |V|²)(1 - |W₁|²)` that factors the weight.

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat2 = Matrix2<Complex64>;
pub type CVec2 = Vector2<Complex64>;

#[derive(Clone, Debug)]
pub struct MatrixBallDecomposition {
    /// First column `(z1, z3)` of `Z`.
    pub v: CVec2,
    /// `1 - |V|²`, the non-trivial eigenvalue of `T`.
    pub lambda: f64,
    pub t: CMat2,
    /// Columns: the unit vector orthogonal to `V`, then `V/|V|`.
    pub u: CMat2,
    pub d: [f64; 2],
    pub sqrt_t: CMat2,
}

pub fn matrix_ball_decompose(v: CVec2) -> Result<MatrixBallDecomposition> {
    let r2 = v.norm_squared();
    if !(r2 < 1.0) {
        return Err(Error::OutsideDomain(format!("|V|^2 = {r2} is not below 1")));
    }
    let lambda = 1.0 - r2;
    let u = if r2 == 0.0 {
        CMat2::identity()
    } else {
        let r = r2.sqrt();
        let (z1, z3) = (v[0], v[1]);
        CMat2::new(-z3.conj(), z1, z1.conj(), z3).unscale(r)
    };
    let scaled = |a: f64, b: f64| {
        let diag = CMat2::from_diagonal(&CVec2::new(Complex64::from(a), Complex64::from(b)));
        u * diag * u.adjoint()
    };
    Ok(MatrixBallDecomposition {
        v,
        lambda,
        t: scaled(1.0, lambda),
        u,
        d: [1.0, lambda],
        sqrt_t: scaled(1.0, lambda.sqrt()),
    })
}

/// `I - Z*Z` is positive definite iff its trace and determinant are positive.
pub fn in_matrix_ball(z: &CMat2) -> bool {
    let m = CMat2::identity() - z.adjoint() * z;
    m.trace().re > 0.0 && m.determinant().re > 0.0
}

/// `|det(I - Z*Z) - (1 - |V|²)(1 - |W₁|²)|` with `W₁ = (√T)⁻¹ W`.
pub fn det_identity_check(z: &CMat2) -> Result<f64> {
    if !in_matrix_ball(z) {
        return Err(Error::OutsideDomain("I - Z*Z is not positive definite".into()));
    }
    let lhs = (CMat2::identity() - z.adjoint() * z).determinant().re;
    let dec = matrix_ball_decompose(z.column(0).into_owned())?;
    let inv = dec
        .sqrt_t
        .try_inverse()
        .ok_or_else(|| Error::Invariant("sqrt(T) is singular".into()))?;
    let w1 = inv * z.column(1);
    let rhs = dec.lambda * (1.0 - w1.norm_squared());
    Ok((lhs - rhs).abs())
}
