//! Symmetry relations for first-order operators and the inverse map
//! `L ↦ (c, Y)` with `L = c + i·π_ξ(Y)`.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::Serialize;

use crate::algebra::{rational, ComplexRational, MultiIndex, Polynomial, Rational};
use crate::diffop::FirstOrderOperator;
use crate::error::{Error, Result};
use crate::lie::{coefficient_map, pi_from_coefficients, realize_coefficients, Algebra, LieAlgebraElement};
use crate::metric::{BergmanSpace, Domain};

pub const DEFAULT_VERIFIED_DEGREE: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub satisfied: bool,
    pub violated: Vec<String>,
}

impl RelationReport {
    fn from_violations(violated: Vec<String>) -> Self {
        Self { satisfied: violated.is_empty(), violated }
    }
}

/// `a_α^β` label with 1-based unit indices, e.g. `a_{e2}^{e1+e4}`.
fn label(slot: Option<usize>, beta: &MultiIndex) -> String {
    let lower = match slot {
        None => "0".to_string(),
        Some(k) => format!("{{e{}}}", k + 1),
    };
    let parts: Vec<String> = beta
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(k, &e)| if e == 1 { format!("e{}", k + 1) } else { format!("{e}e{}", k + 1) })
        .collect();
    let upper = if parts.is_empty() { "0".to_string() } else { format!("{{{}}}", parts.join("+")) };
    format!("a_{lower}^{upper}")
}

fn unit(dim: usize, k: usize) -> MultiIndex {
    MultiIndex::unit(dim, k)
}

fn pair(dim: usize, a: usize, b: usize) -> MultiIndex {
    unit(dim, a).add(&unit(dim, b))
}

fn slot_poly(l: &FirstOrderOperator, slot: Option<usize>) -> &Polynomial {
    match slot {
        None => l.f0(),
        Some(k) => &l.f()[k],
    }
}

/// A constraint `a_slot^beta = value`, described by `rule`.
struct Constraint {
    slot: Option<usize>,
    beta: MultiIndex,
    value: ComplexRational,
    rule: String,
}

/// Compares `l` against `constraints` and flags any monomial of `l` that the
/// template does not allow.
fn compare(
    l: &FirstOrderOperator,
    constraints: &[Constraint],
    free: &BTreeSet<(Option<usize>, MultiIndex)>,
    violated: &mut Vec<String>,
) {
    let dim = l.dim();
    let mut constrained = BTreeSet::new();
    for c in constraints {
        constrained.insert((c.slot, c.beta.clone()));
        if slot_poly(l, c.slot).coefficient(&c.beta) != c.value {
            violated.push(c.rule.clone());
        }
    }
    for slot in std::iter::once(None).chain((0..dim).map(Some)) {
        for (beta, _) in slot_poly(l, slot).terms() {
            let key = (slot, beta.clone());
            if !constrained.contains(&key) && !free.contains(&key) {
                violated.push(format!("{} = 0", label(slot, beta)));
            }
        }
    }
}

fn reality(slot: Option<usize>, beta: MultiIndex, l: &FirstOrderOperator, violated: &mut Vec<String>) {
    if !slot_poly(l, slot).coefficient(&beta).is_real() {
        violated.push(format!("{} is real", label(slot, &beta)));
    }
}

/// Checks `L` against the symmetric template on the ball:
/// `f0 = a_0^0 + (N+ξ+1) Σ conj(a_{e_j}^0) z_j` and
/// `f_{e_k} = a_{e_k}^0 + Σ_j (a_{e_k}^{e_j} z_j + conj(a_{e_j}^0) z_j z_k)`
/// with `a_0^0` real and `(a_{e_k}^{e_j})` Hermitian.
pub fn check_relations_ball(space: &BergmanSpace, l: &FirstOrderOperator) -> Result<RelationReport> {
    let Domain::Ball(n) = space.domain() else {
        return Err(Error::DomainMismatch("check_relations_ball needs a ball space".into()));
    };
    if l.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: l.dim() });
    }
    let w = ComplexRational::real(space.weight_constant());
    let zero = MultiIndex::zero(n);
    let a_e0: Vec<ComplexRational> = (0..n).map(|k| l.f()[k].coefficient(&zero)).collect();

    let mut violated = Vec::new();
    reality(None, zero.clone(), l, &mut violated);
    let mut free = BTreeSet::from([(None, zero.clone())]);
    let mut constraints = Vec::new();
    for j in 0..n {
        constraints.push(Constraint {
            slot: None,
            beta: unit(n, j),
            value: &w * &a_e0[j].conj(),
            rule: format!("{} = (N+xi+1)*conj(a_{{e{}}}^0)", label(None, &unit(n, j)), j + 1),
        });
    }
    for k in 0..n {
        free.insert((Some(k), zero.clone()));
        reality(Some(k), unit(n, k), l, &mut violated);
        for j in 0..n {
            if j >= k {
                free.insert((Some(k), unit(n, j)));
            } else {
                constraints.push(Constraint {
                    slot: Some(k),
                    beta: unit(n, j),
                    value: l.f()[j].coefficient(&unit(n, k)).conj(),
                    rule: format!(
                        "{} = conj({})",
                        label(Some(k), &unit(n, j)),
                        label(Some(j), &unit(n, k))
                    ),
                });
            }
            constraints.push(Constraint {
                slot: Some(k),
                beta: pair(n, j, k),
                value: a_e0[j].conj(),
                rule: format!("{} = conj(a_{{e{}}}^0)", label(Some(k), &pair(n, j, k)), j + 1),
            });
        }
    }
    compare(l, &constraints, &free, &mut violated);
    Ok(RelationReport::from_violations(violated))
}

/// Index `5 - i` in 0-based form.
fn opposite(i: usize) -> usize {
    3 - i
}

/// Checks `L` against the symmetric template on the matrix ball. Every
/// coefficient of `f0` up to degree 1 and of `f_{e_i}` up to degree 2 is
/// pinned by the free parameters `a_0^0`, `a_{e_i}^0`, `a_{e_i}^{e_i}`,
/// `a_{e1}^{e2}`, `a_{e1}^{e3}`; rules are numbered as in the standard
/// derivation from low-degree monomial pairs.
pub fn check_relations_matrix_ball(space: &BergmanSpace, l: &FirstOrderOperator) -> Result<RelationReport> {
    let Domain::MatrixBall2 = space.domain() else {
        return Err(Error::DomainMismatch("check_relations_matrix_ball needs the matrix ball".into()));
    };
    if l.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: l.dim() });
    }
    let w = ComplexRational::real(space.weight_constant());
    let zero = MultiIndex::zero(4);
    let a_e0: Vec<ComplexRational> = (0..4).map(|k| l.f()[k].coefficient(&zero)).collect();
    let a12 = l.f()[0].coefficient(&unit(4, 1));
    let a13 = l.f()[0].coefficient(&unit(4, 2));

    let mut violated = Vec::new();
    reality(None, zero.clone(), l, &mut violated);
    let mut free = BTreeSet::from([(None, zero.clone()), (Some(0), unit(4, 1)), (Some(0), unit(4, 2))]);
    let mut constraints = Vec::new();
    let mut pin = |slot: Option<usize>, beta: MultiIndex, value: ComplexRational, rule: String| {
        constraints.push(Constraint { slot, beta, value, rule });
    };
    for i in 0..4 {
        pin(
            None,
            unit(4, i),
            &w * &a_e0[i].conj(),
            format!("(2) {} = (xi+4)*conj(a_{{e{}}}^0)", label(None, &unit(4, i)), i + 1),
        );
    }
    for i in 0..4 {
        let s = Some(i);
        let o = opposite(i);
        free.insert((s, zero.clone()));
        free.insert((s, unit(4, i)));
        reality(s, unit(4, i), l, &mut violated);
        pin(s, unit(4, o), ComplexRational::zero(), format!("(4) {} = 0", label(s, &unit(4, o))));
        for j in (0..4).filter(|&j| j != i && j != o) {
            // off-diagonal degree-1 entries, all expressed through a_{e1}^{e2}, a_{e1}^{e3}
            let linked = match (i, j) {
                (0, _) => None,
                (_, 0) => Some((l.f()[0].coefficient(&unit(4, i)).conj(), "(5)", format!("conj(a_{{e1}}^{{e{}}})", i + 1))),
                (_, 3) => Some((if i == 1 { a13.clone() } else { a12.clone() }, "(6)", format!("a_{{e1}}^{{e{}}}", o + 1))),
                _ => Some((
                    if j == 1 { a13.conj() } else { a12.conj() },
                    "(5),(6)",
                    format!("conj(a_{{e1}}^{{e{}}})", opposite(j) + 1),
                )),
            };
            if let Some((value, tag, expr)) = linked {
                pin(s, unit(4, j), value, format!("{tag} {} = {expr}", label(s, &unit(4, j))));
            }
        }
        for a in 0..4 {
            for b in a..4 {
                let beta = pair(4, a, b);
                let lab = label(s, &beta);
                let (value, rule) = if a == b && a == i {
                    (a_e0[i].conj(), format!("(7) {lab} = conj(a_{{e{}}}^0)", i + 1))
                } else if a == b {
                    (ComplexRational::zero(), format!("(8) {lab} = 0"))
                } else if b == opposite(a) && (a == i || b == i) {
                    (ComplexRational::zero(), format!("(9) {lab} = 0"))
                } else if b == opposite(a) {
                    (a_e0[o].conj(), format!("(10) {lab} = conj(a_{{e{}}}^0)", o + 1))
                } else if a == i || b == i {
                    let j = if a == i { b } else { a };
                    (a_e0[j].conj(), format!("(11) {lab} = conj(a_{{e{}}}^0)", j + 1))
                } else {
                    (ComplexRational::zero(), format!("(12) {lab} = 0"))
                };
                pin(s, beta, value, rule);
            }
        }
    }
    compare(l, &constraints, &free, &mut violated);
    let diag = |i: usize| l.f()[i].coefficient(&unit(4, i));
    if &diag(0) + &diag(3) != &diag(1) + &diag(2) {
        violated.push("(13) a_{e1}^{e1} + a_{e4}^{e4} = a_{e2}^{e2} + a_{e3}^{e3}".into());
    }
    Ok(RelationReport::from_violations(violated))
}

pub fn check_relations(space: &BergmanSpace, l: &FirstOrderOperator) -> Result<RelationReport> {
    match space.domain() {
        Domain::Ball(_) => check_relations_ball(space, l),
        Domain::MatrixBall2 => check_relations_matrix_ball(space, l),
    }
}

/// Comparison of the computed offset with the closed form
/// `a_0^0 + 3a_1 + 3a_2`, which only matches at special weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffsetCheck {
    pub closed_form: Rational,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    pub c: Rational,
    pub y: LieAlgebraElement,
    pub basis_coefficients: Vec<Rational>,
    pub verified_degree: u32,
    pub offset_check: Option<OffsetCheck>,
}

impl Serialize for ClassificationResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("symmetric", &true)?;
        m.serialize_entry("c", &rational::format(&self.c))?;
        m.serialize_entry("basis_coefficients", &coefficient_map(self.y.algebra, &self.basis_coefficients))?;
        m.serialize_entry("Y", &self.y)?;
        m.serialize_entry("verified_degree", &self.verified_degree)?;
        m.serialize_entry("violations", &Vec::<String>::new())?;
        if let Some(o) = &self.offset_check {
            m.serialize_entry(
                "offset_check",
                &serde_json::json!({
                    "closed_form": rational::format(&o.closed_form),
                    "agrees": o.agrees,
                }),
            )?;
        }
        m.end()
    }
}

/// JSON for a refused classification, same shape as a successful one.
pub fn refusal_json(report: &RelationReport) -> serde_json::Value {
    serde_json::json!({
        "symmetric": false,
        "c": serde_json::Value::Null,
        "basis_coefficients": serde_json::Value::Null,
        "Y": serde_json::Value::Null,
        "verified_degree": 0,
        "violations": report.violated,
    })
}

fn finish(
    space: &BergmanSpace,
    l: &FirstOrderOperator,
    coefficients: Vec<Rational>,
    verified_degree: u32,
) -> Result<(ClassificationResult, FirstOrderOperator)> {
    let algebra = Algebra::for_domain(space.domain());
    let i_pi = pi_from_coefficients(space, &coefficients)?.scale(&ComplexRational::i());
    let constant = i_pi.f0().coefficient(&MultiIndex::zero(space.dim()));
    let a00 = l.f0().coefficient(&MultiIndex::zero(space.dim()));
    let c = &a00 - &constant;
    if !c.is_real() {
        return Err(Error::Invariant("classification offset is not real".into()));
    }
    let rebuilt = i_pi.add_constant(&c);
    for n in MultiIndex::all_up_to(space.dim(), verified_degree) {
        let z = Polynomial::monomial(n, ComplexRational::one());
        if rebuilt.apply(&z)? != l.apply(&z)? {
            return Err(Error::Invariant("L differs from c + i*pi(Y) on a monomial".into()));
        }
    }
    let y = realize_coefficients(algebra, &coefficients)?;
    let result = ClassificationResult {
        c: c.re,
        y,
        basis_coefficients: coefficients,
        verified_degree,
        offset_check: None,
    };
    Ok((result, rebuilt))
}

/// Inverts `L = c + i·π_ξ(Y)` on the ball.
pub fn classify_ball(space: &BergmanSpace, l: &FirstOrderOperator, verified_degree: u32) -> Result<ClassificationResult> {
    let report = check_relations_ball(space, l)?;
    if !report.satisfied {
        return Err(Error::RelationsViolated(report));
    }
    let n = space.dim();
    let zero = MultiIndex::zero(n);
    let a = |k: usize, beta: &MultiIndex| l.f()[k].coefficient(beta);
    let trace = (0..n).fold(Rational::zero(), |acc, k| acc + a(k, &unit(n, k)).re);
    let s = trace / rational::int(n as i64 + 1);

    let mut coefficients: Vec<Rational> = (0..n).map(|j| a(j, &unit(n, j)).re - &s).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (j + 1..n).map(move |k| (j, k))).collect();
    coefficients.extend(pairs.iter().map(|&(j, k)| -a(j, &unit(n, k)).im));
    coefficients.extend(pairs.iter().map(|&(j, k)| a(j, &unit(n, k)).re));
    coefficients.extend((0..n).map(|j| -a(j, &zero).im));
    coefficients.extend((0..n).map(|j| -a(j, &zero).re));
    Ok(finish(space, l, coefficients, verified_degree)?.0)
}

/// Inverts `L = c + i·π_ξ(Y)` on the matrix ball.
pub fn classify_matrix_ball(
    space: &BergmanSpace,
    l: &FirstOrderOperator,
    verified_degree: u32,
) -> Result<ClassificationResult> {
    let report = check_relations_matrix_ball(space, l)?;
    if !report.satisfied {
        return Err(Error::RelationsViolated(report));
    }
    let zero = MultiIndex::zero(4);
    let a = |k: usize, beta: &MultiIndex| l.f()[k].coefficient(beta);
    let d = |k: usize| a(k, &unit(4, k)).re;
    let q = |x: i64| rational::rat(x, 4);
    let a1 = -(d(0) * q(2)) - (d(1) - d(2)) * q(1);
    let a2 = d(0) * q(2) - d(1) * q(1) - d(2) * q(3);
    let a3 = (d(0) * rational::int(2) - d(1) + d(2)) * q(1);
    let a13 = a(0, &unit(4, 2));
    let a12 = a(0, &unit(4, 1));
    let mut coefficients = vec![a1.clone(), a2.clone(), a3, a13.im.clone(), a12.im.clone(), -a13.re, a12.re];
    coefficients.extend((0..4).map(|k| a(k, &zero).im));
    coefficients.extend((0..4).map(|k| -a(k, &zero).re));

    let (mut result, _) = finish(space, l, coefficients, verified_degree)?;
    let closed_form = l.f0().coefficient(&zero).re + (a1 + a2) * rational::int(3);
    result.offset_check = Some(OffsetCheck { agrees: closed_form == result.c, closed_form });
    Ok(result)
}

pub fn classify(space: &BergmanSpace, l: &FirstOrderOperator, verified_degree: u32) -> Result<ClassificationResult> {
    match space.domain() {
        Domain::Ball(_) => classify_ball(space, l, verified_degree),
        Domain::MatrixBall2 => classify_matrix_ball(space, l, verified_degree),
    }
}

/// Free parameters of a symmetric operator on the ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallParameters {
    pub a00: Rational,
    /// `a_{e_k}^0`
    pub a_e0: Vec<ComplexRational>,
    /// `h[k][j] = a_{e_k}^{e_j}`, Hermitian.
    pub h: Vec<Vec<ComplexRational>>,
}

/// The symmetric template on the ball for the given parameters.
pub fn make_symmetric_ball(space: &BergmanSpace, p: &BallParameters) -> Result<FirstOrderOperator> {
    let Domain::Ball(n) = space.domain() else {
        return Err(Error::DomainMismatch("make_symmetric_ball needs a ball space".into()));
    };
    if p.a_e0.len() != n || p.h.len() != n || p.h.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidParameter(format!("parameters must have dimension {n}")));
    }
    for k in 0..n {
        for j in 0..n {
            if p.h[k][j] != p.h[j][k].conj() {
                return Err(Error::InvalidParameter(format!(
                    "coefficient matrix is not Hermitian at ({}, {})",
                    k + 1,
                    j + 1
                )));
            }
        }
    }
    let w = ComplexRational::real(space.weight_constant());
    let zero = MultiIndex::zero(n);
    let mut f0 = Polynomial::constant(n, ComplexRational::real(p.a00.clone()));
    let mut f = vec![Polynomial::zero(n); n];
    for k in 0..n {
        f0.add_term(unit(n, k), &(&w * &p.a_e0[k].conj()));
        f[k].add_term(zero.clone(), &p.a_e0[k]);
        for j in 0..n {
            f[k].add_term(unit(n, j), &p.h[k][j]);
            f[k].add_term(pair(n, j, k), &p.a_e0[j].conj());
        }
    }
    FirstOrderOperator::new(f0, f)
}

/// Free parameters of a symmetric operator on the matrix ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixBallParameters {
    pub a00: Rational,
    /// `a_{e_i}^0`
    pub a_e0: [ComplexRational; 4],
    /// `a_{e_i}^{e_i}`, with `d1 + d4 = d2 + d3`.
    pub diag: [Rational; 4],
    /// `a_{e1}^{e2}`
    pub a12: ComplexRational,
    /// `a_{e1}^{e3}`
    pub a13: ComplexRational,
}

/// The symmetric template on the matrix ball for the given parameters.
pub fn make_symmetric_matrix_ball(space: &BergmanSpace, p: &MatrixBallParameters) -> Result<FirstOrderOperator> {
    let Domain::MatrixBall2 = space.domain() else {
        return Err(Error::DomainMismatch("make_symmetric_matrix_ball needs the matrix ball".into()));
    };
    if &p.diag[0] + &p.diag[3] != &p.diag[1] + &p.diag[2] {
        return Err(Error::InvalidParameter(
            "diagonal coefficients must satisfy d1 + d4 = d2 + d3".into(),
        ));
    }
    let w = ComplexRational::real(space.weight_constant());
    let zero = MultiIndex::zero(4);
    let c = |k: usize| p.a_e0[k].conj();
    let mut f0 = Polynomial::constant(4, ComplexRational::real(p.a00.clone()));
    let mut f = vec![Polynomial::zero(4); 4];
    for i in 0..4 {
        f0.add_term(unit(4, i), &(&w * &c(i)));
        f[i].add_term(zero.clone(), &p.a_e0[i]);
        f[i].add_term(unit(4, i), &ComplexRational::real(p.diag[i].clone()));
        // z^{e_i + e_k} for k ≠ 5-i, and the product of the two remaining variables
        for k in (0..4).filter(|&k| k != opposite(i)) {
            f[i].add_term(pair(4, i, k), &c(k));
        }
        let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != opposite(i)).collect();
        f[i].add_term(pair(4, rest[0], rest[1]), &c(opposite(i)));
    }
    // degree-1 off-diagonal entries, variables z1..z4 are 0..3
    f[0].add_term(unit(4, 1), &p.a12);
    f[0].add_term(unit(4, 2), &p.a13);
    f[1].add_term(unit(4, 0), &p.a12.conj());
    f[1].add_term(unit(4, 3), &p.a13);
    f[2].add_term(unit(4, 3), &p.a12);
    f[2].add_term(unit(4, 0), &p.a13.conj());
    f[3].add_term(unit(4, 2), &p.a12.conj());
    f[3].add_term(unit(4, 1), &p.a13.conj());
    FirstOrderOperator::new(f0, f)
}
