//! Invariant suites run by `bergman selftest`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{rational, ComplexRational, MultiIndex, Polynomial, Rational};
use crate::classify::{check_relations, classify};
use crate::diffop::{skew_symmetry_check, symmetry_check};
use crate::euler::{euler_apply, euler_bounds, euler_inverse, euler_ratio};
use crate::expr::{parse_operator, random_expr};
use crate::lie::{algebra_commutator, basis, basis_operator, bracket_sign, pi_xi, Algebra};
use crate::metric::{
    check_selection_rules, det_identity_check, mono_ip, normalized_ip, BergmanSpace, CMat2,
};
use crate::sample::{mutate, random_polynomial, random_symmetric};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub passed: bool,
    pub suites: Vec<SuiteOutcome>,
}

type Check = std::result::Result<String, String>;

fn fail(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn weights() -> Vec<Rational> {
    vec![rational::int(0), rational::rat(1, 2), rational::int(2)]
}

/// `‖z^{n+e_k}‖² = (n_k+1)/(N+ξ+|n|+1) · ‖z^n‖²` on the ball.
fn ball_norms(quick: bool) -> Check {
    let degree = if quick { 4 } else { 6 };
    let mut count = 0;
    for n in 1..=3 {
        for xi in weights() {
            let s = BergmanSpace::ball(n, xi.clone()).map_err(fail)?;
            for idx in MultiIndex::all_up_to(n, degree - 1) {
                let base = mono_ip(&s, &idx, &idx).map_err(fail)?.coefficient.re;
                for k in 0..n {
                    let up = idx.with_incremented(k);
                    let next = mono_ip(&s, &up, &up).map_err(fail)?.coefficient.re;
                    let factor = rational::int(idx.entries()[k] as i64 + 1)
                        / (rational::int((n as u32 + idx.degree() + 1) as i64) + &xi);
                    if next != &base * factor {
                        return Err(format!("norm recursion fails at {up} (N={n}, xi={})", rational::format(&xi)));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} norm recursions"))
}

fn matrix_ball_ratios(_: bool) -> Check {
    let z = |e: [u32; 4]| Polynomial::monomial(MultiIndex::new(e.to_vec()), ComplexRational::one());
    for xi in weights() {
        let s = BergmanSpace::matrix_ball(xi.clone()).map_err(fail)?;
        let a = &xi + rational::int(4);
        let b = &xi + rational::int(5);
        let c = &xi + rational::int(3);
        let one = Rational::from_integer(1.into());
        let cases = [
            (z([1, 0, 0, 0]), z([1, 0, 0, 0]), &one / &a),
            (z([2, 0, 0, 0]), z([2, 0, 0, 0]), rational::int(2) / (&a * &b)),
            (z([1, 1, 0, 0]), z([1, 1, 0, 0]), &one / (&a * &b)),
            (z([1, 0, 0, 1]), z([1, 0, 0, 1]), &one / (&c * &b)),
            (z([1, 0, 0, 1]), z([0, 1, 1, 0]), -(&one / (&c * &a * &b))),
        ];
        for (p, q, want) in cases {
            let got = normalized_ip(&s, &p, &q).map_err(fail)?;
            if got != ComplexRational::real(want.clone()) {
                return Err(format!("<{p}, {q}> = {got}, expected {}", rational::format(&want)));
            }
        }
    }
    Ok("5 ratios at 3 weights".into())
}

fn selection_rules(quick: bool) -> Check {
    let s = BergmanSpace::matrix_ball(rational::int(0)).map_err(fail)?;
    let indices = MultiIndex::all_up_to(4, if quick { 2 } else { 3 });
    for n in &indices {
        for m in &indices {
            let nonzero = !mono_ip(&s, n, m).map_err(fail)?.is_zero();
            if nonzero != check_selection_rules(n, m) {
                return Err(format!("selection rules disagree at ({n}, {m})"));
            }
        }
    }
    Ok(format!("{} pairs", indices.len() * indices.len()))
}

fn spaces() -> Vec<BergmanSpace> {
    weights()
        .into_iter()
        .flat_map(|xi| [BergmanSpace::ball(2, xi.clone()), BergmanSpace::matrix_ball(xi)])
        .collect::<crate::Result<Vec<_>>>()
        .expect("weights are admissible")
}

fn skew_symmetry(quick: bool) -> Check {
    let degree = if quick { 2 } else { 4 };
    let mut count = 0;
    for s in spaces() {
        for (tag, _) in basis(Algebra::for_domain(s.domain())) {
            let l = basis_operator(&s, tag).map_err(fail)?;
            if !skew_symmetry_check(&s, &l, degree).map_err(fail)?.symmetric {
                return Err(format!("pi({tag}) is not skew-symmetric on {}", s.domain()));
            }
            count += 1;
        }
    }
    Ok(format!("{count} basis operators to degree {degree}"))
}

fn bracket(_: bool) -> Check {
    let mut count = 0;
    for s in spaces() {
        let sign = ComplexRational::from_ints(bracket_sign(&s).map_err(fail)? as i64, 0);
        let b = basis(Algebra::for_domain(s.domain()));
        for (i, (x, mx)) in b.iter().enumerate() {
            for (y, my) in &b[i + 1..] {
                let lhs = basis_operator(&s, *x).map_err(fail)?.commutator(&basis_operator(&s, *y).map_err(fail)?).map_err(fail)?;
                let rhs = pi_xi(&s, &algebra_commutator(mx, my).map_err(fail)?).map_err(fail)?.scale(&sign);
                if lhs != rhs {
                    return Err(format!("bracket of {x}, {y} fails on {}", s.domain()));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} pairs"))
}

fn classification(quick: bool) -> Check {
    let rounds = if quick { 10 } else { 100 };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f);
    for s in spaces() {
        for _ in 0..rounds {
            let sample = random_symmetric(&mut rng, &s).map_err(fail)?;
            let r = classify(&s, &sample.operator, 3).map_err(fail)?;
            if r.c != sample.c || r.basis_coefficients != sample.coefficients {
                return Err(format!("round trip fails for {}", sample.operator));
            }
            if !symmetry_check(&s, &sample.operator, 3).map_err(fail)?.symmetric {
                return Err(format!("{} is not symmetric", sample.operator));
            }
            let m = mutate(&mut rng, &s, &sample.operator).map_err(fail)?;
            if symmetry_check(&s, &m, 3).map_err(fail)?.witnesses.is_empty() {
                return Err(format!("mutation {m} has no witness"));
            }
        }
    }
    Ok(format!("{rounds} samples per space"))
}

fn heisenberg(quick: bool) -> Check {
    let rounds = if quick { 20 } else { 200 };
    let mut rng = ChaCha8Rng::seed_from_u64(0x4e15);
    for s in spaces() {
        for _ in 0..rounds {
            let a = random_symmetric(&mut rng, &s).map_err(fail)?.operator;
            let b = random_symmetric(&mut rng, &s).map_err(fail)?.operator;
            let c = a.commutator(&b).map_err(fail)?;
            if c.is_constant() && !c.is_zero() {
                return Err(format!("[{a}, {b}] is a nonzero constant"));
            }
            if !check_relations(&s, &c.scale(&ComplexRational::i())).map_err(fail)?.satisfied {
                return Err(format!("i[{a}, {b}] is not symmetric"));
            }
        }
    }
    Ok(format!("{rounds} pairs per space"))
}

fn euler(quick: bool) -> Check {
    let scan = if quick { 500 } else { 10_000 };
    let mut rng = ChaCha8Rng::seed_from_u64(0xe1e);
    for n in 1..=3 {
        for xi in weights() {
            for c in [rational::int(1), rational::rat(1, 2), rational::int(3), rational::rat(-3, 2)] {
                let b = euler_bounds(n, &xi, &c).map_err(fail)?;
                for k in 0..scan {
                    let r = euler_ratio(n, &xi, &c, k);
                    if r < b.inf_ratio || r > b.sup_ratio {
                        return Err(format!("r({k}) outside bounds for N={n}"));
                    }
                }
                let p = random_polynomial(&mut rng, n, 10, 8);
                let back = euler_inverse(&euler_apply(&p, &c), &c).map_err(fail)?;
                if back != p || euler_apply(&euler_inverse(&p, &c).map_err(fail)?, &c) != p {
                    return Err(format!("inverse round trip fails for {p}"));
                }
            }
        }
    }
    Ok(format!("36 parameter sets, {scan} degrees each"))
}

fn decomposition(quick: bool) -> Check {
    let rounds = if quick { 100 } else { 1000 };
    let mut rng = ChaCha8Rng::seed_from_u64(0xdec);
    let mut done = 0;
    while done < rounds {
        let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let z = CMat2::new(c(), c(), c(), c());
        let Ok(residual) = det_identity_check(&z) else { continue };
        if residual >= 1e-10 {
            return Err(format!("residual {residual:e} at {z}"));
        }
        done += 1;
    }
    Ok(format!("{rounds} interior points"))
}

fn parser(quick: bool) -> Check {
    let rounds = if quick { 100 } else { 500 };
    let mut rng = ChaCha8Rng::seed_from_u64(0x9a5);
    for _ in 0..rounds {
        let printed = random_expr(&mut rng, 4, 4).to_string();
        let again = parse_operator(&printed, 4).map_err(fail)?.to_string();
        if again != printed {
            return Err(format!("'{printed}' reprints as '{again}'"));
        }
    }
    Ok(format!("{rounds} expressions"))
}

/// Runs every suite; `quick` shrinks sample sizes and degrees.
pub fn run_selftest(quick: bool) -> SelftestReport {
    let suites: [(&'static str, fn(bool) -> Check); 10] = [
        ("ball-norms", ball_norms),
        ("matrix-ball-ratios", matrix_ball_ratios),
        ("selection-rules", selection_rules),
        ("skew-symmetry", skew_symmetry),
        ("bracket", bracket),
        ("classification", classification),
        ("heisenberg", heisenberg),
        ("euler", euler),
        ("decomposition", decomposition),
        ("parser", parser),
    ];
    let suites: Vec<SuiteOutcome> = suites
        .iter()
        .map(|(name, run)| {
            let (passed, detail) = match run(quick) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            SuiteOutcome { name, passed, detail }
        })
        .collect();
    SelftestReport { passed: suites.iter().all(|s| s.passed), suites }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_selftest_passes() {
        let report = run_selftest(true);
        for s in &report.suites {
            assert!(s.passed, "{}: {}", s.name, s.detail);
        }
    }
}
