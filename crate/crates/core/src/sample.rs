//! Seeded random inputs for property checks and the self-test.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{rational, ComplexRational, MultiIndex, Polynomial, Rational};
use crate::classify::check_relations;
use crate::diffop::FirstOrderOperator;
use crate::error::Result;
use crate::lie::{basis_elements, pi_from_coefficients, Algebra};
use crate::metric::BergmanSpace;

/// `p/q` with `|p| ≤ 9`, `1 ≤ q ≤ 5`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    rational::rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let r = small_rational(rng);
        if r != Rational::from_integer(0.into()) {
            return r;
        }
    }
}

pub fn small_complex<R: Rng>(rng: &mut R) -> ComplexRational {
    ComplexRational::new(small_rational(rng), small_rational(rng))
}

pub fn nonzero_complex<R: Rng>(rng: &mut R) -> ComplexRational {
    loop {
        let c = small_complex(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A polynomial with up to `terms` random monomials of degree `≤ degree`.
pub fn random_polynomial<R: Rng>(rng: &mut R, dim: usize, degree: u32, terms: usize) -> Polynomial {
    let indices = MultiIndex::all_up_to(dim, degree);
    let mut p = Polynomial::zero(dim);
    for _ in 0..terms {
        let n = indices.choose(rng).expect("non-empty").clone();
        p.add_term(n, &small_complex(rng));
    }
    p
}

/// Sparse random basis coefficients (each nonzero with probability 1/2).
pub fn random_coefficients<R: Rng>(rng: &mut R, algebra: Algebra) -> Vec<Rational> {
    basis_elements(algebra)
        .iter()
        .map(|_| if rng.gen_bool(0.5) { small_rational(rng) } else { Rational::from_integer(0.into()) })
        .collect()
}

/// A symmetric operator `c + i·π_ξ(Y)` together with `(c, coefficients of Y)`.
#[derive(Clone, Debug)]
pub struct SymmetricSample {
    pub c: Rational,
    pub coefficients: Vec<Rational>,
    pub operator: FirstOrderOperator,
}

pub fn random_symmetric<R: Rng>(rng: &mut R, space: &BergmanSpace) -> Result<SymmetricSample> {
    let algebra = Algebra::for_domain(space.domain());
    let c = small_rational(rng);
    let coefficients = random_coefficients(rng, algebra);
    let operator = pi_from_coefficients(space, &coefficients)?
        .scale(&ComplexRational::i())
        .add_constant(&ComplexRational::real(c.clone()));
    Ok(SymmetricSample { c, coefficients, operator })
}

/// Perturbs one coefficient of `l` so that the symmetry relations fail.
/// Targets `f0` up to degree 2 and each `f_k` up to degree 3.
pub fn mutate<R: Rng>(rng: &mut R, space: &BergmanSpace, l: &FirstOrderOperator) -> Result<FirstOrderOperator> {
    let dim = space.dim();
    loop {
        let slot = rng.gen_range(0..=dim);
        let degree = if slot == 0 { 2 } else { 3 };
        let beta = MultiIndex::all_up_to(dim, degree).choose(rng).expect("non-empty").clone();
        let delta = Polynomial::monomial(beta, nonzero_complex(rng));
        let mut f0 = l.f0().clone();
        let mut f = l.f().to_vec();
        if slot == 0 {
            f0 = &f0 + &delta;
        } else {
            f[slot - 1] = &f[slot - 1] + &delta;
        }
        let mutated = FirstOrderOperator::new(f0, f)?;
        if !check_relations(space, &mutated)?.satisfied {
            return Ok(mutated);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_reproducible_and_mutations_break_relations() {
        let space = BergmanSpace::matrix_ball(int(1)).unwrap();
        let a = random_symmetric(&mut ChaCha8Rng::seed_from_u64(5), &space).unwrap();
        let b = random_symmetric(&mut ChaCha8Rng::seed_from_u64(5), &space).unwrap();
        assert_eq!(a.operator, b.operator);
        assert!(check_relations(&space, &a.operator).unwrap().satisfied);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let m = mutate(&mut rng, &space, &a.operator).unwrap();
        assert!(!check_relations(&space, &m).unwrap().satisfied);
    }
}
