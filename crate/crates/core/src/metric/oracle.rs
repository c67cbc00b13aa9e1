//! Monte-Carlo evaluation of monomial inner products, independent of the
//! closed forms in [`super::exact`].

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::decompose::{in_matrix_ball, CMat2};
use super::space::{BergmanSpace, Domain, ExactIPValue, Unit};
use crate::algebra::{rational, MultiIndex};
use crate::error::{Error, Result};

const CHUNK: u64 = 1 << 14;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleEstimate {
    pub estimate_re: f64,
    pub estimate_im: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

impl OracleEstimate {
    pub fn estimate(&self) -> Complex64 {
        Complex64::new(self.estimate_re, self.estimate_im)
    }

    /// Whether `exact` lies within `k` standard errors of the estimate.
    pub fn agrees_with(&self, exact: Complex64, k: f64) -> bool {
        (self.estimate() - exact).norm() <= k * self.stderr
    }

    pub fn agrees_with_exact(&self, exact: &ExactIPValue, k: f64) -> bool {
        let unit = match exact.unit {
            Unit::One => 1.0,
            Unit::PiFour => PI.powi(4),
        };
        self.agrees_with(exact.coefficient.to_c64() * unit, k)
    }
}

#[derive(Clone, Copy, Default)]
struct Moments {
    re: f64,
    im: f64,
    re2: f64,
    im2: f64,
}

impl Moments {
    fn push(&mut self, v: Complex64) {
        self.re += v.re;
        self.im += v.im;
        self.re2 += v.re * v.re;
        self.im2 += v.im * v.im;
    }

    fn merge(mut self, o: Moments) -> Moments {
        self.re += o.re;
        self.im += o.im;
        self.re2 += o.re2;
        self.im2 += o.im2;
        self
    }
}

fn disc_point(rng: &mut ChaCha8Rng) -> Complex64 {
    let r = rng.gen::<f64>().sqrt();
    let theta = 2.0 * PI * rng.gen::<f64>();
    Complex64::from_polar(r, theta)
}

fn monomial(z: &[Complex64], n: &MultiIndex) -> Complex64 {
    z.iter()
        .zip(n.entries())
        .map(|(zk, &e)| zk.powu(e))
        .product()
}

/// Estimate of `⟨z^n, z^m⟩` in the same measure convention as the exact
/// routines: normalized measure on the ball, Lebesgue measure on the matrix
/// ball. Points are drawn uniformly from the bounding polydisc and rejected
/// outside the domain.
///
/// Each chunk of samples uses its own ChaCha stream, and chunk sums are
/// combined in chunk order, so the result does not depend on thread count.
pub fn numeric_ip_oracle(
    space: &BergmanSpace,
    n: &MultiIndex,
    m: &MultiIndex,
    samples: u64,
    seed: u64,
) -> Result<OracleEstimate> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be positive".into()));
    }
    space.check_index(n)?;
    space.check_index(m)?;
    let dim = space.dim();
    let xi = rational::to_f64(space.xi());
    let domain = space.domain();

    let integrand = |z: &[Complex64]| -> Option<Complex64> {
        let weight = match domain {
            Domain::Ball(_) => {
                let r2: f64 = z.iter().map(|w| w.norm_sqr()).sum();
                if r2 >= 1.0 {
                    return None;
                }
                (1.0 - r2).powf(xi)
            }
            Domain::MatrixBall2 => {
                let zm = CMat2::new(z[0], z[1], z[2], z[3]);
                if !in_matrix_ball(&zm) {
                    return None;
                }
                (CMat2::identity() - zm.adjoint() * zm).determinant().re.powf(xi)
            }
        };
        Some(monomial(z, n) * monomial(z, m).conj() * weight)
    };

    let chunks = samples.div_ceil(CHUNK);
    let moments: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut acc = Moments::default();
            let mut z = vec![Complex64::new(0.0, 0.0); dim];
            for _ in 0..count {
                for zk in z.iter_mut() {
                    *zk = disc_point(&mut rng);
                }
                acc.push(integrand(&z).unwrap_or_default());
            }
            acc
        })
        .collect();
    let total = moments.into_iter().fold(Moments::default(), Moments::merge);

    // polydisc volume relative to the target measure
    let scale = match domain {
        Domain::Ball(_) => (1..=dim).map(|j| xi + j as f64).product::<f64>(),
        Domain::MatrixBall2 => PI.powi(4),
    };
    let count = samples as f64;
    let mean_re = total.re / count;
    let mean_im = total.im / count;
    let var = (total.re2 / count - mean_re * mean_re) + (total.im2 / count - mean_im * mean_im);
    let estimate_re = scale * mean_re;
    let estimate_im = scale * mean_im;
    let stderr = scale * (var.max(0.0) / count).sqrt();
    Ok(OracleEstimate { estimate_re, estimate_im, stderr, samples, seed })
}
