//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Reference values are computed here independently of the library's closed
//! forms. The process exits with status 0 unless `ACCEPTANCE_STRICT=1` is
//! set, in which case any FAIL line makes it exit with status 1.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bergman::algebra::rational::{format, int, rat};
use bergman::classify::{check_relations, classify, make_symmetric_ball, make_symmetric_matrix_ball, BallParameters, MatrixBallParameters};
use bergman::diffop::{symmetry_check, FirstOrderOperator};
use bergman::euler::{euler_apply, euler_bounds, euler_inverse};
use bergman::expr::{parse_operator, random_expr};
use bergman::lie::{algebra_commutator, basis, basis_operator, pi_xi, Algebra};
use bergman::metric::{
    check_selection_rules, det_identity_check, ip, matrix_ball_decompose, mono_ip, numeric_ip_oracle, BergmanSpace,
    CMat2, CVec2,
};
use bergman::sample::{mutate, random_polynomial, random_symmetric, small_complex, small_rational};
use bergman::{ComplexRational, MultiIndex, Polynomial, Rational};

type Outcome = Result<String, String>;

fn weights() -> [Rational; 3] {
    [int(0), rat(1, 2), int(2)]
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn monomial(n: &MultiIndex) -> Polynomial {
    Polynomial::monomial(n.clone(), ComplexRational::one())
}

/// `n! / Π_{j=1}^{|n|} (N+ξ+j)`
fn ball_norm_reference(n: &MultiIndex, xi: &Rational) -> Rational {
    let numerator: BigInt = n.entries().iter().map(|&e| factorial(e)).product();
    let dim = int(n.len() as i64);
    let denominator = (1..=n.degree()).fold(Rational::one(), |acc, j| acc * (&dim + xi + int(j as i64)));
    Rational::from_integer(numerator) / denominator
}

fn criterion_1() -> Outcome {
    let mut exact_checks = 0;
    for n in 1..=3 {
        for xi in weights() {
            let s = BergmanSpace::ball(n, xi.clone()).unwrap();
            for idx in MultiIndex::all_up_to(n, 6) {
                let got = mono_ip(&s, &idx, &idx).unwrap().coefficient;
                let want = ComplexRational::real(ball_norm_reference(&idx, &xi));
                ensure(got == want, || format!("|z^{idx}|^2 at N={n}, xi={}: {got} != {want}", format(&xi)))?;
                exact_checks += 1;
            }
        }
    }
    let spots: [(usize, Rational, Vec<u32>); 10] = [
        (1, int(0), vec![1]),
        (1, rat(1, 2), vec![2]),
        (1, int(2), vec![3]),
        (2, int(0), vec![1, 1]),
        (2, rat(1, 2), vec![2, 0]),
        (2, int(2), vec![0, 1]),
        (3, int(0), vec![1, 0, 1]),
        (3, rat(1, 2), vec![0, 0, 0]),
        (3, int(2), vec![1, 1, 1]),
        (2, int(0), vec![0, 3]),
    ];
    let mut worst: f64 = 0.0;
    for (case, (n, xi, e)) in spots.iter().enumerate() {
        let s = BergmanSpace::ball(*n, xi.clone()).unwrap();
        let idx = MultiIndex::new(e.clone());
        let est = numeric_ip_oracle(&s, &idx, &idx, 1_000_000, case as u64).unwrap();
        let want = bergman::algebra::rational::to_f64(&ball_norm_reference(&idx, xi));
        let z = (est.estimate() - Complex64::new(want, 0.0)).norm() / est.stderr;
        worst = worst.max(z);
        ensure(z <= 3.0, || format!("oracle off by {z:.2} stderr at N={n}, n={idx}"))?;
    }
    Ok(format!("{exact_checks} exact norms; 10 oracle spots, worst {worst:.2} stderr"))
}

fn idx4(e: [u32; 4]) -> MultiIndex {
    MultiIndex::new(e.to_vec())
}

/// `Γ(ξ+2)/Γ(ξ+2+k)` as an exact rational.
fn falling_ratio(xi: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, j| acc / (xi + int(2 + j as i64)))
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    let mut constants = Vec::new();
    for xi in weights() {
        let s = BergmanSpace::matrix_ball(xi.clone()).unwrap();
        let a = &xi + int(4);
        let b = &xi + int(5);
        let one = mono_ip(&s, &idx4([0; 4]), &idx4([0; 4])).unwrap().coefficient.re;
        // published absolute values, in units of π⁴
        let g3 = falling_ratio(&xi, 3);
        let g4 = falling_ratio(&xi, 4);
        let table: [(&str, MultiIndex, MultiIndex, Rational, Rational); 6] = [
            ("|1|^2", idx4([0; 4]), idx4([0; 4]), Rational::one(), Rational::one() / (int(2) * (&xi + int(2)) * (&xi + int(3)))),
            ("|z^e1|^2", idx4([1, 0, 0, 0]), idx4([1, 0, 0, 0]), Rational::one() / &a, &g3 / int(2)),
            ("|z^2e1|^2", idx4([2, 0, 0, 0]), idx4([2, 0, 0, 0]), int(2) / (&a * &b), g4.clone()),
            ("|z^(e1+e2)|^2", idx4([1, 1, 0, 0]), idx4([1, 1, 0, 0]), Rational::one() / (&a * &b), &g4 / int(2)),
            ("|z^(e1+e4)|^2", idx4([1, 0, 0, 1]), idx4([1, 0, 0, 1]), Rational::one() / (int(3) * &b), &g4 * &a / int(6)),
            ("<z^(e1+e4), z^(e2+e3)>", idx4([1, 0, 0, 1]), idx4([0, 1, 1, 0]), -(Rational::one() / (int(3) * &a * &b)), -(&g4 / int(6))),
        ];
        let mut ratio_set = Vec::new();
        for (name, n, m, ratio, absolute) in table {
            let raw = mono_ip(&s, &n, &m).unwrap().coefficient.re;
            let normalized = &raw / &one;
            if normalized != ratio {
                failures.push(format!("xi={}: {name}/|1|^2 = {} vs {}", format(&xi), format(&normalized), format(&ratio)));
            }
            ratio_set.push(&raw / &absolute);
        }
        let first = ratio_set[0].clone();
        if ratio_set.iter().any(|r| *r != first) {
            failures.push(format!(
                "xi={}: raw/published ratios not constant: [{}]",
                format(&xi),
                ratio_set.iter().map(format).collect::<Vec<_>>().join(", ")
            ));
        }
        constants.push(format!("{}", format(&first)));
    }
    if failures.is_empty() {
        Ok(format!("all ratios exact; raw/published constants {}", constants.join(", ")))
    } else {
        Err(failures.join("; "))
    }
}

/// The three linear constraints for a nonzero product on the matrix ball.
fn selection_reference(n: &MultiIndex, m: &MultiIndex) -> bool {
    let (n, m) = (n.entries(), m.entries());
    n[1] + n[3] == m[1] + m[3] && n[0] + n[1] == m[0] + m[1] && n[1] + m[2] == n[2] + m[1]
}

fn criterion_3() -> Outcome {
    let s = BergmanSpace::matrix_ball(int(0)).unwrap();
    let indices = MultiIndex::all_up_to(4, 3);
    let mut zero_pairs = Vec::new();
    let mut nonzero = 0;
    for n in &indices {
        for m in &indices {
            let value = mono_ip(&s, n, m).unwrap();
            let rule = check_selection_rules(n, m);
            ensure(rule == selection_reference(n, m), || format!("rule mismatch at ({n}, {m})"))?;
            ensure(!value.is_zero() == rule, || format!("value {value} vs rule {rule} at ({n}, {m})"))?;
            if value.is_zero() {
                zero_pairs.push((n.clone(), m.clone()));
            } else {
                nonzero += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for (k, (n, m)) in zero_pairs.choose_multiple(&mut rng, 20).enumerate() {
        let est = numeric_ip_oracle(&s, n, m, 200_000, 100 + k as u64).unwrap();
        let z = est.estimate().norm() / est.stderr;
        worst = worst.max(z);
        ensure(z <= 3.0, || format!("oracle sees {z:.2} stderr at ({n}, {m})"))?;
    }
    Ok(format!(
        "{} pairs, {nonzero} nonzero; 20 zero pairs within {worst:.2} stderr",
        indices.len() * indices.len()
    ))
}

fn skew_pairs(space: &BergmanSpace, l: &FirstOrderOperator, degree: u32) -> Result<usize, String> {
    let monomials = MultiIndex::all_up_to(space.dim(), degree);
    let images: Vec<Polynomial> = monomials.iter().map(|n| l.apply(&monomial(n)).unwrap()).collect();
    let mut count = 0;
    for (n, ln) in monomials.iter().zip(&images) {
        for (m, lm) in monomials.iter().zip(&images) {
            let left = ip(space, ln, &monomial(m)).unwrap();
            let right = ip(space, &monomial(n), lm).unwrap();
            let sum = left.checked_add(&right).unwrap();
            ensure(sum.is_zero(), || format!("<Lz^{n}, z^{m}> + <z^{n}, Lz^{m}> = {sum}"))?;
            count += 1;
        }
    }
    Ok(count)
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for xi in weights() {
        for s in [BergmanSpace::ball(2, xi.clone()).unwrap(), BergmanSpace::matrix_ball(xi.clone()).unwrap()] {
            for (tag, _) in basis(Algebra::for_domain(s.domain())) {
                let l = basis_operator(&s, tag).unwrap();
                count += skew_pairs(&s, &l, 4).map_err(|e| format!("{tag} on {}: {e}", s.domain()))?;
            }
        }
    }
    Ok(format!("23 operators x 3 weights, {count} pairs"))
}

fn criterion_5() -> Outcome {
    let mut summary = Vec::new();
    for xi in weights() {
        for s in [BergmanSpace::ball(2, xi.clone()).unwrap(), BergmanSpace::matrix_ball(xi.clone()).unwrap()] {
            let b = basis(Algebra::for_domain(s.domain()));
            let mut sign: Option<ComplexRational> = None;
            let mut pairs = 0;
            for (i, (x, mx)) in b.iter().enumerate() {
                for (y, my) in &b[i + 1..] {
                    let lhs = basis_operator(&s, *x).unwrap().commutator(&basis_operator(&s, *y).unwrap()).unwrap();
                    let rhs = pi_xi(&s, &algebra_commutator(mx, my).unwrap()).unwrap();
                    pairs += 1;
                    if rhs.is_zero() {
                        ensure(lhs.is_zero(), || format!("[{x}, {y}] = 0 but operator bracket is {lhs}"))?;
                        continue;
                    }
                    let candidates = [ComplexRational::one(), -ComplexRational::one()];
                    let fitting: Vec<_> = candidates.iter().filter(|c| lhs == rhs.scale(c)).cloned().collect();
                    ensure(fitting.len() == 1, || format!("[{x}, {y}] is not ±pi([X, Y]) on {}", s.domain()))?;
                    match &sign {
                        None => sign = Some(fitting[0].clone()),
                        Some(sg) => ensure(*sg == fitting[0], || format!("sign changes at [{x}, {y}] on {}", s.domain()))?,
                    }
                }
            }
            if xi == int(0) {
                summary.push(format!("{}: {pairs} pairs, s = {}", s.domain(), sign.map_or("?".into(), |c| c.to_string())));
            }
        }
    }
    Ok(summary.join("; "))
}

fn random_ball_parameters(rng: &mut ChaCha8Rng, n: usize) -> BallParameters {
    let mut h = vec![vec![ComplexRational::zero(); n]; n];
    for k in 0..n {
        h[k][k] = ComplexRational::real(small_rational(rng));
        for j in k + 1..n {
            h[k][j] = small_complex(rng);
            h[j][k] = h[k][j].conj();
        }
    }
    BallParameters { a00: small_rational(rng), a_e0: (0..n).map(|_| small_complex(rng)).collect(), h }
}

fn random_matrix_ball_parameters(rng: &mut ChaCha8Rng) -> MatrixBallParameters {
    let d = [0, 1, 2].map(|_| small_rational(rng));
    MatrixBallParameters {
        a00: small_rational(rng),
        a_e0: [0, 1, 2, 3].map(|_| small_complex(rng)),
        diag: [d[0].clone(), d[1].clone(), d[2].clone(), &d[1] + &d[2] - &d[0]],
        a12: small_complex(rng),
        a13: small_complex(rng),
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut round_trips = 0;
    for xi in weights() {
        for s in [BergmanSpace::ball(2, xi.clone()).unwrap(), BergmanSpace::matrix_ball(xi.clone()).unwrap()] {
            for _ in 0..200 {
                let sample = random_symmetric(&mut rng, &s).unwrap();
                let r = classify(&s, &sample.operator, 4).map_err(|e| e.to_string())?;
                ensure(r.c == sample.c && r.basis_coefficients == sample.coefficients, || {
                    format!("round trip fails for {}", sample.operator)
                })?;
                round_trips += 1;
            }
        }
    }
    for k in 0..100 {
        let xi = weights()[k % 3].clone();
        let s = if k % 2 == 0 { BergmanSpace::ball(2, xi).unwrap() } else { BergmanSpace::matrix_ball(xi).unwrap() };
        let l = if k % 2 == 0 {
            make_symmetric_ball(&s, &random_ball_parameters(&mut rng, 2)).unwrap()
        } else {
            make_symmetric_matrix_ball(&s, &random_matrix_ball_parameters(&mut rng)).unwrap()
        };
        ensure(symmetry_check(&s, &l, 6).unwrap().symmetric, || format!("template {l} is not symmetric"))?;
    }
    for k in 0..100 {
        let xi = weights()[k % 3].clone();
        let s = if k % 2 == 0 { BergmanSpace::ball(2, xi).unwrap() } else { BergmanSpace::matrix_ball(xi).unwrap() };
        let sample = random_symmetric(&mut rng, &s).unwrap();
        let m = mutate(&mut rng, &s, &sample.operator).unwrap();
        let report = symmetry_check(&s, &m, 4).unwrap();
        ensure(!report.symmetric && !report.witnesses.is_empty(), || format!("mutation {m} has no witness"))?;
        ensure(!check_relations(&s, &m).unwrap().satisfied, || format!("mutation {m} passes the relations"))?;
    }
    Ok(format!("{round_trips} round trips; 100 templates symmetric to degree 6; 100 mutations witnessed"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for s in [BergmanSpace::ball(2, rat(1, 2)).unwrap(), BergmanSpace::matrix_ball(rat(1, 2)).unwrap()] {
        for _ in 0..500 {
            let a = random_symmetric(&mut rng, &s).unwrap().operator;
            let b = random_symmetric(&mut rng, &s).unwrap().operator;
            let c = a.commutator(&b).unwrap();
            ensure(!(c.is_constant() && !c.is_zero()), || format!("[{a}, {b}] = {c}"))?;
        }
    }
    Ok("500 pairs per domain, no nonzero constant commutator".into())
}

fn ratio_reference(n: usize, xi: &Rational, c: &Rational, k: i64) -> Rational {
    let a = int(n as i64 + 2) + xi;
    let b = int(n as i64 + 1) + xi;
    let k = int(k);
    (c + &k) * (c + &k) * &a * &b / ((&a + &k) * (&b + &k))
}

/// `(c+k+1)²(A+k)(B+k) - (c+k)²(A+k+1)(B+k+1)`, a cubic in `k`.
fn difference_reference(n: usize, xi: &Rational, c: &Rational, k: i64) -> Rational {
    let a = int(n as i64 + 2) + xi;
    let b = int(n as i64 + 1) + xi;
    let k = int(k);
    let up = (c + &k + int(1)) * (c + &k + int(1)) * (&a + &k) * (&b + &k);
    let down = (c + &k) * (c + &k) * (&a + &k + int(1)) * (&b + &k + int(1));
    up - down
}

/// Cubic coefficients from four samples via forward differences, then a
/// Cauchy bound on the real roots.
fn root_bound(n: usize, xi: &Rational, c: &Rational) -> Rational {
    let y: Vec<Rational> = (0..4).map(|k| difference_reference(n, xi, c, k)).collect();
    let d1 = &y[1] - &y[0];
    let d2 = &y[2] - &y[1] * int(2) + &y[0];
    let d3 = &y[3] - &y[2] * int(3) + &y[1] * int(3) - &y[0];
    // Newton form: y0 + d1 k + d2 k(k-1)/2 + d3 k(k-1)(k-2)/6
    let c3 = &d3 / int(6);
    let c2 = &d2 / int(2) - &d3 / int(2);
    let c1 = &d1 - &d2 / int(2) + &d3 / int(3);
    let c0 = y[0].clone();
    let coeffs = [c0, c1, c2, c3];
    let top = coeffs.iter().rposition(|x| !x.is_zero());
    match top {
        None | Some(0) => Rational::zero(),
        Some(t) => {
            coeffs[..t].iter().map(|x| (x / &coeffs[t]).abs()).fold(Rational::zero(), |m, x| if x > m { x } else { m })
                + Rational::one()
        }
    }
}

fn criterion_8() -> Outcome {
    let b = euler_bounds(1, &int(0), &int(1)).map_err(|e| e.to_string())?;
    ensure(
        b.inf_ratio == int(1) && b.inf_attained_at == Some(0) && b.sup_ratio == int(6) && b.sup_attained_at.is_none(),
        || format!("euler_bounds(1, 0, 1) = {b:?}"),
    )?;
    let scan = 10_000i64;
    let mut triples = 0;
    for n in 1..=3 {
        for xi in weights() {
            for c in [int(1), rat(1, 2), int(3)] {
                let b = euler_bounds(n, &xi, &c).map_err(|e| e.to_string())?;
                let values: Vec<Rational> = (0..=scan).map(|k| ratio_reference(n, &xi, &c, k)).collect();
                let limit = (int(n as i64 + 2) + &xi) * (int(n as i64 + 1) + &xi);
                let bound = root_bound(n, &xi, &c);
                ensure(bound < int(scan), || format!("root bound {} exceeds the scan", format(&bound)))?;
                let min = values.iter().min().unwrap();
                let max = values.iter().max().unwrap();
                // beyond the root bound r is monotone towards the limit
                let inf = if *min <= limit { min.clone() } else { limit.clone() };
                let sup = if *max >= limit { max.clone() } else { limit.clone() };
                ensure(b.inf_ratio == inf && b.sup_ratio == sup, || {
                    format!("N={n}, xi={}, c={}: bounds differ from scan", format(&xi), format(&c))
                })?;
                let inf_at = values.iter().position(|v| *v == inf).map(|k| k as u64);
                let sup_at = values.iter().position(|v| *v == sup).map(|k| k as u64);
                ensure(b.inf_attained_at == inf_at && b.sup_attained_at == sup_at, || {
                    format!("N={n}, xi={}, c={}: attainment differs", format(&xi), format(&c))
                })?;
                triples += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for c in [int(1), rat(1, 2), int(3), rat(-3, 2)] {
        for n in 1..=3 {
            let p = random_polynomial(&mut rng, n, 10, 12);
            let p = &p + &Polynomial::monomial(MultiIndex::unit(n, 0).with_incremented(0).with_incremented(0), ComplexRational::one());
            ensure(euler_inverse(&euler_apply(&p, &c), &c).unwrap() == p, || "inverse after apply".into())?;
            ensure(euler_apply(&euler_inverse(&p, &c).unwrap(), &c) == p, || "apply after inverse".into())?;
        }
    }
    for c in [int(0), int(-1), int(-2)] {
        ensure(euler_bounds(1, &int(0), &c).is_err(), || format!("bounds accepted c = {}", format(&c)))?;
        ensure(euler_inverse(&Polynomial::one(1), &c).is_err(), || format!("inverse accepted c = {}", format(&c)))?;
    }
    Ok(format!("{triples} parameter triples match a scan to k = {scan}; round trips to degree 10; c in {{0,-1,-2}} rejected"))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    let mut done = 0;
    while done < 1000 {
        let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let z = CMat2::new(c(), c(), c(), c());
        let Ok(residual) = det_identity_check(&z) else { continue };
        let v = CVec2::new(z[(0, 0)], z[(1, 0)]);
        let d = matrix_ball_decompose(v).map_err(|e| e.to_string())?;
        let t = CMat2::identity() - v * v.adjoint();
        let unitary = (d.u * d.u.adjoint() - CMat2::identity()).iter().map(|x| x.norm()).fold(0.0, f64::max);
        let root = (d.sqrt_t * d.sqrt_t - t).iter().map(|x| x.norm()).fold(0.0, f64::max);
        worst = (worst.0.max(residual), worst.1.max(unitary), worst.2.max(root));
        done += 1;
    }
    ensure(worst.0 < 1e-10 && worst.1 < 1e-12 && worst.2 < 1e-12, || format!("worst residuals {worst:?}"))?;
    let d = matrix_ball_decompose(CVec2::zeros()).map_err(|e| e.to_string())?;
    ensure(d.u == CMat2::identity() && d.sqrt_t == CMat2::identity(), || "V = 0 not handled".into())?;
    ensure(det_identity_check(&CMat2::zeros()).map_err(|e| e.to_string())? == 0.0, || "Z = 0 residual".into())?;
    Ok(format!(
        "1000 points: det residual {:.1e}, unitarity {:.1e}, sqrt(T)^2 {:.1e}; V = 0 handled",
        worst.0, worst.1, worst.2
    ))
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bergman")).arg("--output").arg("json").args(args).output().unwrap();
    let squashed: String = String::from_utf8_lossy(&out.stdout).chars().filter(|c| !c.is_whitespace()).collect();
    (out.status.code().unwrap_or(-1), squashed)
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..500 {
        let depth = rng.gen_range(1..=5);
        let printed = random_expr(&mut rng, 4, depth).to_string();
        let again = parse_operator(&printed, 4).map_err(|e| e.to_string())?.to_string();
        ensure(again == printed, || format!("'{printed}' reprints as '{again}'"))?;
    }
    let (code, out) = cli(&["classify", "--domain", "ball", "--N", "2", "--xi", "0", "--op", "z1*d1 + z2*d2"]);
    for needle in ["\"c\":\"-2\"", "\"X1:1\":\"1/3\"", "\"X1:2\":\"1/3\"", "\"symmetric\":true"] {
        ensure(code == 0 && out.contains(needle), || format!("classify output lacks {needle}: {out}"))?;
    }
    let (code, out) = cli(&["symcheck", "--domain", "ball", "--N", "1", "--xi", "0", "--op", "d1"]);
    for needle in ["\"symmetric\":false", "\"m\":[0],\"n\":[1]"] {
        ensure(code == 0 && out.contains(needle), || format!("symcheck output lacks {needle}: {out}"))?;
    }
    let (code, out) = cli(&["innerprod", "--domain", "mball", "--xi", "0", "--n", "1,0,0,1", "--m", "0,1,1,0", "--normalized"]);
    ensure(code == 0 && out.contains("\"value\":\"-1/60\""), || format!("innerprod output: {out}"))?;
    Ok("500 expressions reprint identically; 3 documented invocations match".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 ball norms", criterion_1),
        ("2 matrix-ball golden table", criterion_2),
        ("3 selection rules", criterion_3),
        ("4 skew-symmetry", criterion_4),
        ("5 bracket homomorphism", criterion_5),
        ("6 classification round trip", criterion_6),
        ("7 no constant commutators", criterion_7),
        ("8 Euler map", criterion_8),
        ("9 matrix-ball decomposition", criterion_9),
        ("10 CLI", criterion_10),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{name}] {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{name}] {detail} ({secs:.1}s)");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 && std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
