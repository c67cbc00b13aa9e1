//! `su(N,1)` and `su(2,2)` as exact matrix algebras, their bases, and the
//! differentiated discrete-series operators `X ↦ π_ξ(X)`.
//!
//! Operators for basis elements come from fixed tables and are extended to
//! the whole algebra by real-linearity. With the basis matrices realized as
//! below, `[π_ξ(X), π_ξ(Y)] = s·π_ξ([X, Y])` holds for a single sign `s` per
//! algebra; see [`bracket_sign`].

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{rational, ComplexRational, MultiIndex, Polynomial, Rational};
use crate::diffop::FirstOrderOperator;
use crate::error::{Error, Result};
use crate::metric::{BergmanSpace, Domain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algebra {
    /// `su(N,1)`, acting on the ball of `C^N`.
    SuN1(usize),
    /// `su(2,2)`, acting on the `2×2` matrix ball.
    Su22,
}

impl Algebra {
    pub fn for_domain(domain: Domain) -> Self {
        match domain {
            Domain::Ball(n) => Algebra::SuN1(n),
            Domain::MatrixBall2 => Algebra::Su22,
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            Algebra::SuN1(n) => Domain::Ball(*n),
            Algebra::Su22 => Domain::MatrixBall2,
        }
    }

    /// Side length of the defining matrices.
    pub fn size(&self) -> usize {
        match self {
            Algebra::SuN1(n) => n + 1,
            Algebra::Su22 => 4,
        }
    }

    /// Number of negative entries in `J = diag(I, -I)`.
    fn negative_block(&self) -> usize {
        match self {
            Algebra::SuN1(_) => 1,
            Algebra::Su22 => 2,
        }
    }

    /// Real dimension.
    pub fn dimension(&self) -> usize {
        self.size() * self.size() - 1
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::SuN1(n) => write!(f, "su({n},1)"),
            Algebra::Su22 => write!(f, "su(2,2)"),
        }
    }
}

impl FromStr for Algebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown algebra '{s}'"));
        let inner = s
            .trim()
            .strip_prefix("su(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (p, q) = inner.split_once(',').ok_or_else(bad)?;
        let p: usize = p.trim().parse().map_err(|_| bad())?;
        match (p, q.trim()) {
            (2, "2") => Ok(Algebra::Su22),
            (n, "1") if n >= 1 => Ok(Algebra::SuN1(n)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Algebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub type Matrix = Vec<Vec<ComplexRational>>;

fn zero_matrix(size: usize) -> Matrix {
    vec![vec![ComplexRational::zero(); size]; size]
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = zero_matrix(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &(&a[i][k] * &b[k][j]);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieAlgebraElement {
    pub algebra: Algebra,
    pub matrix: Matrix,
}

impl LieAlgebraElement {
    /// Wraps `matrix` after checking its size (membership is not checked).
    pub fn new(algebra: Algebra, matrix: Matrix) -> Result<Self> {
        let size = algebra.size();
        if matrix.len() != size {
            return Err(Error::DimensionMismatch { expected: size, found: matrix.len() });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != size) {
            return Err(Error::DimensionMismatch { expected: size, found: row.len() });
        }
        Ok(Self { algebra, matrix })
    }

    pub fn zero(algebra: Algebra) -> Self {
        Self { algebra, matrix: zero_matrix(algebra.size()) }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(ComplexRational::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let matrix = self.matrix.iter().map(|r| r.iter().map(|x| x.scale(k)).collect()).collect();
        Self { algebra: self.algebra, matrix }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_algebra(self, other)?;
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Self { algebra: self.algebra, matrix })
    }
}

fn same_algebra(x: &LieAlgebraElement, y: &LieAlgebraElement) -> Result<()> {
    if x.algebra != y.algebra {
        return Err(Error::DomainMismatch(format!(
            "elements of {} and {} cannot be combined",
            x.algebra, y.algebra
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub valid: bool,
    pub violations: Vec<String>,
}

/// `X*J + JX = 0` and `tr X = 0`, with `J = diag(I, -I)`.
pub fn validate_membership(algebra: Algebra, matrix: &Matrix) -> Result<MembershipReport> {
    let element = LieAlgebraElement::new(algebra, matrix.clone())?;
    let size = algebra.size();
    let sign = |i: usize| if i + algebra.negative_block() >= size { -1 } else { 1 };
    let mut violations = Vec::new();
    for i in 0..size {
        for j in 0..size {
            // (X*J + JX)_{ij} = conj(x_ji) J_jj + J_ii x_ij
            let a = element.matrix[j][i].conj();
            let b = &element.matrix[i][j];
            let sum = match (sign(j), sign(i)) {
                (1, 1) => &a + b,
                (1, _) => &a - b,
                (_, 1) => b - &a,
                _ => -(&a + b),
            };
            if !sum.is_zero() {
                violations.push(format!("(X*J + JX)[{},{}] = {sum}", i + 1, j + 1));
            }
        }
    }
    let trace = (0..size).fold(ComplexRational::zero(), |acc, i| acc + &element.matrix[i][i]);
    if !trace.is_zero() {
        violations.push(format!("trace = {trace}"));
    }
    Ok(MembershipReport { valid: violations.is_empty(), violations })
}

/// Named basis elements, with 1-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisElement {
    /// `iE_jj - iE_{N+1,N+1}`
    X1(usize),
    /// `E_jk - E_kj`, `j < k`
    X2(usize, usize),
    /// `iE_jk + iE_kj`, `j < k`
    X3(usize, usize),
    /// `E_{j,N+1} + E_{N+1,j}`
    X4(usize),
    /// `-iE_{j,N+1} + iE_{N+1,j}`
    X5(usize),
    /// `𝔄_1 .. 𝔄_15` of `su(2,2)`
    A(usize),
}

impl BasisElement {
    pub fn algebra_matches(&self, algebra: Algebra) -> bool {
        let in_range = |j: usize, n: usize| (1..=n).contains(&j);
        match (*self, algebra) {
            (BasisElement::X1(j) | BasisElement::X4(j) | BasisElement::X5(j), Algebra::SuN1(n)) => {
                in_range(j, n)
            }
            (BasisElement::X2(j, k) | BasisElement::X3(j, k), Algebra::SuN1(n)) => {
                j < k && in_range(j, n) && in_range(k, n)
            }
            (BasisElement::A(k), Algebra::Su22) => in_range(k, 15),
            _ => false,
        }
    }

    /// The defining matrix in `algebra`.
    pub fn realize(&self, algebra: Algebra) -> Result<LieAlgebraElement> {
        if !self.algebra_matches(algebra) {
            return Err(Error::InvalidParameter(format!("{self} is not a basis element of {algebra}")));
        }
        let size = algebra.size();
        let mut m = zero_matrix(size);
        let last = size - 1;
        let one = ComplexRational::one();
        let i = ComplexRational::i();
        let mut set = |r: usize, c: usize, v: &ComplexRational| m[r][c] = v.clone();
        match *self {
            BasisElement::X1(j) => {
                set(j - 1, j - 1, &i);
                set(last, last, &-&i);
            }
            BasisElement::X2(j, k) => {
                set(j - 1, k - 1, &one);
                set(k - 1, j - 1, &-&one);
            }
            BasisElement::X3(j, k) => {
                set(j - 1, k - 1, &i);
                set(k - 1, j - 1, &i);
            }
            BasisElement::X4(j) => {
                set(j - 1, last, &one);
                set(last, j - 1, &one);
            }
            BasisElement::X5(j) => {
                set(j - 1, last, &-&i);
                set(last, j - 1, &i);
            }
            BasisElement::A(k) => {
                let (r, c, v, rt, ct, vt): (usize, usize, _, usize, usize, _) = match k {
                    1 => (0, 0, i.clone(), 3, 3, -&i),
                    2 => (1, 1, i.clone(), 3, 3, -&i),
                    3 => (2, 2, i.clone(), 3, 3, -&i),
                    4 => (0, 1, one.clone(), 1, 0, -&one),
                    5 => (2, 3, one.clone(), 3, 2, -&one),
                    6 => (0, 1, i.clone(), 1, 0, i.clone()),
                    7 => (2, 3, i.clone(), 3, 2, i.clone()),
                    8 => (0, 2, one.clone(), 2, 0, one.clone()),
                    9 => (0, 3, one.clone(), 3, 0, one.clone()),
                    10 => (1, 2, one.clone(), 2, 1, one.clone()),
                    11 => (1, 3, one.clone(), 3, 1, one.clone()),
                    12 => (0, 2, i.clone(), 2, 0, -&i),
                    13 => (0, 3, i.clone(), 3, 0, -&i),
                    14 => (1, 2, i.clone(), 2, 1, -&i),
                    _ => (1, 3, i.clone(), 3, 1, -&i),
                };
                set(r, c, &v);
                set(rt, ct, &vt);
            }
        }
        Ok(LieAlgebraElement { algebra, matrix: m })
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::X1(j) => write!(f, "X1:{j}"),
            BasisElement::X2(j, k) => write!(f, "X2:{j},{k}"),
            BasisElement::X3(j, k) => write!(f, "X3:{j},{k}"),
            BasisElement::X4(j) => write!(f, "X4:{j}"),
            BasisElement::X5(j) => write!(f, "X5:{j}"),
            BasisElement::A(k) => write!(f, "A{k}"),
        }
    }
}

impl FromStr for BasisElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown basis element '{s}'"));
        let s = s.trim();
        if let Some(k) = s.strip_prefix('A') {
            return k.parse().map(BasisElement::A).map_err(|_| bad());
        }
        let (family, args) = s.split_once(':').ok_or_else(bad)?;
        let idx: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (family, idx.as_slice()) {
            ("X1", [j]) => Ok(BasisElement::X1(*j)),
            ("X2", [j, k]) => Ok(BasisElement::X2(*j, *k)),
            ("X3", [j, k]) => Ok(BasisElement::X3(*j, *k)),
            ("X4", [j]) => Ok(BasisElement::X4(*j)),
            ("X5", [j]) => Ok(BasisElement::X5(*j)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for BasisElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Basis tags in canonical order.
pub fn basis_elements(algebra: Algebra) -> Vec<BasisElement> {
    match algebra {
        Algebra::SuN1(n) => {
            let pairs: Vec<(usize, usize)> =
                (1..=n).flat_map(|j| (j + 1..=n).map(move |k| (j, k))).collect();
            (1..=n)
                .map(BasisElement::X1)
                .chain(pairs.iter().map(|&(j, k)| BasisElement::X2(j, k)))
                .chain(pairs.iter().map(|&(j, k)| BasisElement::X3(j, k)))
                .chain((1..=n).map(BasisElement::X4))
                .chain((1..=n).map(BasisElement::X5))
                .collect()
        }
        Algebra::Su22 => (1..=15).map(BasisElement::A).collect(),
    }
}

pub fn basis(algebra: Algebra) -> Vec<(BasisElement, LieAlgebraElement)> {
    basis_elements(algebra)
        .into_iter()
        .map(|b| {
            let m = b.realize(algebra).expect("canonical basis tags are valid");
            (b, m)
        })
        .collect()
}

/// `Σ a_k B_k` over the canonical basis.
pub fn realize_coefficients(algebra: Algebra, coefficients: &[Rational]) -> Result<LieAlgebraElement> {
    let b = basis(algebra);
    if coefficients.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: b.len(), found: coefficients.len() });
    }
    b.iter().zip(coefficients).try_fold(LieAlgebraElement::zero(algebra), |acc, ((_, m), a)| {
        acc.checked_add(&m.scale(a))
    })
}

/// Solves `Σ_k a_k A[.][k] = rhs` exactly; `None` if inconsistent.
/// Assumes the columns of `a` are linearly independent.
fn solve_exact(mut a: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(cols);
    for col in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(pivot_row, p);
        rhs.swap(pivot_row, p);
        let inv = Rational::one() / &a[pivot_row][col];
        for c in col..cols {
            a[pivot_row][c] = &a[pivot_row][c] * &inv;
        }
        rhs[pivot_row] = &rhs[pivot_row] * &inv;
        for r in 0..rows {
            if r == pivot_row || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..cols {
                let delta = &factor * &a[pivot_row][c];
                a[r][c] -= delta;
            }
            let delta = &factor * &rhs[pivot_row];
            rhs[r] -= delta;
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if rhs[pivot_row..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rhs[r].clone();
    }
    Some(x)
}

/// Real coordinates of `X` in the canonical basis.
pub fn expand_in_basis(x: &LieAlgebraElement) -> Result<Vec<Rational>> {
    let report = validate_membership(x.algebra, &x.matrix)?;
    if !report.valid {
        return Err(Error::NotInAlgebra {
            algebra: x.algebra.to_string(),
            violations: report.violations,
        });
    }
    let b = basis(x.algebra);
    let size = x.algebra.size();
    let mut rows = Vec::with_capacity(2 * size * size);
    let mut rhs = Vec::with_capacity(2 * size * size);
    for i in 0..size {
        for j in 0..size {
            rows.push(b.iter().map(|(_, m)| m.matrix[i][j].re.clone()).collect());
            rhs.push(x.matrix[i][j].re.clone());
            rows.push(b.iter().map(|(_, m)| m.matrix[i][j].im.clone()).collect());
            rhs.push(x.matrix[i][j].im.clone());
        }
    }
    solve_exact(rows, rhs).ok_or_else(|| Error::Invariant("basis does not span the element".into()))
}

/// `XY - YX`
pub fn algebra_commutator(x: &LieAlgebraElement, y: &LieAlgebraElement) -> Result<LieAlgebraElement> {
    same_algebra(x, y)?;
    let xy = mat_mul(&x.matrix, &y.matrix);
    let yx = mat_mul(&y.matrix, &x.matrix);
    let matrix = xy
        .iter()
        .zip(&yx)
        .map(|(a, b)| a.iter().zip(b).map(|(p, q)| p - q).collect())
        .collect();
    Ok(LieAlgebraElement { algebra: x.algebra, matrix })
}

/// Accumulates `c · (monomial) · (1 or ∂_slot)` terms.
struct OperatorBuilder {
    dim: usize,
    f0: Polynomial,
    f: Vec<Polynomial>,
}

impl OperatorBuilder {
    fn new(dim: usize) -> Self {
        Self { dim, f0: Polynomial::zero(dim), f: vec![Polynomial::zero(dim); dim] }
    }

    /// `slot = None` for the multiplication part, `Some(k)` for `∂_k`
    /// (0-based); `vars` lists the 0-based variables of the monomial.
    fn term(&mut self, slot: Option<usize>, c: ComplexRational, vars: &[usize]) -> &mut Self {
        let mut idx = vec![0; self.dim];
        for &v in vars {
            idx[v] += 1;
        }
        let target = match slot {
            None => &mut self.f0,
            Some(k) => &mut self.f[k],
        };
        target.add_term(MultiIndex::new(idx), &c);
        self
    }

    fn build(&mut self) -> FirstOrderOperator {
        let dim = self.dim;
        FirstOrderOperator::new(
            std::mem::replace(&mut self.f0, Polynomial::zero(dim)),
            std::mem::replace(&mut self.f, vec![Polynomial::zero(dim); dim]),
        )
        .expect("builder keeps dimensions consistent")
    }
}

fn ball_operator(n: usize, w: &Rational, element: BasisElement) -> FirstOrderOperator {
    let i = ComplexRational::i();
    let one = ComplexRational::one();
    let wr = ComplexRational::real(w.clone());
    let wi = ComplexRational::imag(w.clone());
    let mut b = OperatorBuilder::new(n);
    match element {
        BasisElement::X1(j) => {
            let j = j - 1;
            b.term(None, -&wi, &[]);
            for l in 0..n {
                let c = if l == j { ComplexRational::from_ints(0, -2) } else { -&i };
                b.term(Some(l), c, &[l]);
            }
        }
        BasisElement::X2(j, k) => {
            let (j, k) = (j - 1, k - 1);
            b.term(Some(j), -&one, &[k]).term(Some(k), one, &[j]);
        }
        BasisElement::X3(j, k) => {
            let (j, k) = (j - 1, k - 1);
            b.term(Some(j), -&i, &[k]).term(Some(k), -&i, &[j]);
        }
        BasisElement::X4(j) | BasisElement::X5(j) => {
            let j = j - 1;
            let (unit, constant, mult) = match element {
                BasisElement::X4(_) => (one.clone(), -&one, wr),
                _ => (i.clone(), i.clone(), wi),
            };
            b.term(None, mult, &[j]).term(Some(j), constant, &[]);
            for l in 0..n {
                b.term(Some(l), unit.clone(), &[l, j]);
            }
        }
        BasisElement::A(_) => unreachable!("checked by caller"),
    }
    b.build()
}

fn matrix_ball_operator(w: &Rational, k: usize) -> FirstOrderOperator {
    let i = ComplexRational::i();
    let one = ComplexRational::one();
    let c = |re: i64, im: i64| ComplexRational::from_ints(re, im);
    let wr = ComplexRational::real(w.clone());
    let wi = ComplexRational::imag(w.clone());
    let mut b = OperatorBuilder::new(4);
    // variables 0..3 are z1..z4
    match k {
        1 => b.term(None, wi, &[]).term(Some(0), i.clone(), &[0]).term(Some(1), c(0, 2), &[1]).term(
            Some(3),
            i,
            &[3],
        ),
        2 => b.term(None, wi, &[]).term(Some(1), i.clone(), &[1]).term(Some(2), i.clone(), &[2]).term(
            Some(3),
            c(0, 2),
            &[3],
        ),
        3 => b
            .term(Some(0), -&i, &[0])
            .term(Some(1), i.clone(), &[1])
            .term(Some(2), -&i, &[2])
            .term(Some(3), i, &[3]),
        4 => b
            .term(Some(0), one.clone(), &[2])
            .term(Some(1), one.clone(), &[3])
            .term(Some(2), -&one, &[0])
            .term(Some(3), -&one, &[1]),
        5 => b
            .term(Some(0), one.clone(), &[1])
            .term(Some(1), -&one, &[0])
            .term(Some(2), one.clone(), &[3])
            .term(Some(3), -&one, &[2]),
        6 => b
            .term(Some(0), i.clone(), &[2])
            .term(Some(1), i.clone(), &[3])
            .term(Some(2), i.clone(), &[0])
            .term(Some(3), i, &[1]),
        7 => b
            .term(Some(0), -&i, &[1])
            .term(Some(1), -&i, &[0])
            .term(Some(2), -&i, &[3])
            .term(Some(3), -&i, &[2]),
        8..=15 => {
            // 8..11 real rows, 12..15 imaginary rows
            let v = (k - 8) % 4;
            let (unit, constant, mult) = if k <= 11 {
                (-&one, one.clone(), -&wr)
            } else {
                (i.clone(), i.clone(), wi)
            };
            let quadratic: [[&[usize]; 4]; 4] = [
                [&[0, 0], &[0, 1], &[0, 2], &[1, 2]],
                [&[0, 1], &[1, 1], &[0, 3], &[1, 3]],
                [&[0, 2], &[0, 3], &[2, 2], &[2, 3]],
                [&[1, 2], &[1, 3], &[2, 3], &[3, 3]],
            ];
            b.term(None, mult, &[v]).term(Some(v), constant, &[]);
            for (slot, vars) in quadratic[v].iter().enumerate() {
                b.term(Some(slot), unit.clone(), vars);
            }
            &mut b
        }
        _ => unreachable!("checked by caller"),
    };
    b.build()
}

/// `π_ξ` of a single basis element, read from the operator tables.
pub fn basis_operator(space: &BergmanSpace, element: BasisElement) -> Result<FirstOrderOperator> {
    let algebra = Algebra::for_domain(space.domain());
    if !element.algebra_matches(algebra) {
        return Err(Error::DomainMismatch(format!("{element} does not act on {}", space.domain())));
    }
    let w = space.weight_constant();
    Ok(match (algebra, element) {
        (Algebra::SuN1(n), _) => ball_operator(n, &w, element),
        (Algebra::Su22, BasisElement::A(k)) => matrix_ball_operator(&w, k),
        _ => unreachable!("matched above"),
    })
}

/// `π_ξ(X)`, extended from the basis by real-linearity.
pub fn pi_xi(space: &BergmanSpace, x: &LieAlgebraElement) -> Result<FirstOrderOperator> {
    if x.algebra != Algebra::for_domain(space.domain()) {
        return Err(Error::DomainMismatch(format!(
            "{} does not act on {}",
            x.algebra,
            space.domain()
        )));
    }
    let coefficients = expand_in_basis(x)?;
    pi_from_coefficients(space, &coefficients)
}

/// `Σ a_k π_ξ(B_k)` over the canonical basis.
pub fn pi_from_coefficients(space: &BergmanSpace, coefficients: &[Rational]) -> Result<FirstOrderOperator> {
    let tags = basis_elements(Algebra::for_domain(space.domain()));
    if coefficients.len() != tags.len() {
        return Err(Error::DimensionMismatch { expected: tags.len(), found: coefficients.len() });
    }
    let mut out = FirstOrderOperator::zero(space.dim());
    for (tag, a) in tags.iter().zip(coefficients) {
        if a.is_zero() {
            continue;
        }
        let op = basis_operator(space, *tag)?.scale(&ComplexRational::real(a.clone()));
        out = out.checked_add(&op)?;
    }
    Ok(out)
}

/// The sign `s` in `[π_ξ(X), π_ξ(Y)] = s·π_ξ([X, Y])`, pinned on one
/// fixed pair of basis elements.
pub fn bracket_sign(space: &BergmanSpace) -> Result<i8> {
    let algebra = Algebra::for_domain(space.domain());
    let (x, y) = match algebra {
        Algebra::SuN1(_) => (BasisElement::X4(1), BasisElement::X5(1)),
        Algebra::Su22 => (BasisElement::A(4), BasisElement::A(6)),
    };
    let (mx, my) = (x.realize(algebra)?, y.realize(algebra)?);
    let lhs = basis_operator(space, x)?.commutator(&basis_operator(space, y)?)?;
    let rhs = pi_xi(space, &algebra_commutator(&mx, &my)?)?;
    if lhs == rhs {
        Ok(1)
    } else if lhs == rhs.scale(&-ComplexRational::one()) {
        Ok(-1)
    } else {
        Err(Error::Invariant(format!("[pi({x}), pi({y})] is not ±pi([{x}, {y}])")))
    }
}

/// Basis coefficients keyed by tag, as exact strings.
pub fn coefficient_map(algebra: Algebra, coefficients: &[Rational]) -> serde_json::Map<String, serde_json::Value> {
    basis_elements(algebra)
        .iter()
        .zip(coefficients)
        .map(|(t, a)| (t.to_string(), serde_json::Value::String(rational::format(a))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn basis_sizes_and_membership() {
        assert_eq!(basis(Algebra::SuN1(2)).len(), 8);
        assert_eq!(basis(Algebra::SuN1(3)).len(), 15);
        assert_eq!(basis(Algebra::Su22).len(), 15);
        for alg in [Algebra::SuN1(1), Algebra::SuN1(2), Algebra::SuN1(3), Algebra::Su22] {
            for (tag, m) in basis(alg) {
                assert!(validate_membership(alg, &m.matrix).unwrap().valid, "{tag}");
            }
        }
    }

    #[test]
    fn membership_examples() {
        let id: Matrix = (0..3)
            .map(|i| (0..3).map(|j| if i == j { ComplexRational::one() } else { ComplexRational::zero() }).collect())
            .collect();
        let r = validate_membership(Algebra::SuN1(2), &id).unwrap();
        assert!(!r.valid);
        assert!(r.violations.iter().any(|v| v.starts_with("trace")));
        assert!(validate_membership(Algebra::Su22, &id).is_err());
    }

    #[test]
    fn tags_round_trip() {
        for alg in [Algebra::SuN1(3), Algebra::Su22] {
            for tag in basis_elements(alg) {
                assert_eq!(tag.to_string().parse::<BasisElement>().unwrap(), tag);
            }
        }
        assert!("X2:1".parse::<BasisElement>().is_err());
        assert!(!BasisElement::X2(2, 1).algebra_matches(Algebra::SuN1(2)));
        assert_eq!("su(3,1)".parse::<Algebra>().unwrap(), Algebra::SuN1(3));
        assert_eq!("su(2,2)".parse::<Algebra>().unwrap(), Algebra::Su22);
    }

    #[test]
    fn expansion_examples() {
        let (_, a5) = &basis(Algebra::Su22)[4];
        let coeffs = expand_in_basis(a5).unwrap();
        assert!(coeffs.iter().enumerate().all(|(k, a)| *a == if k == 4 { int(1) } else { int(0) }));

        let x = basis(Algebra::Su22)[0].1.scale(&int(2)).checked_add(&basis(Algebra::Su22)[8].1.scale(&int(3))).unwrap();
        let coeffs = expand_in_basis(&x).unwrap();
        assert_eq!(coeffs[0], int(2));
        assert_eq!(coeffs[8], int(3));
        assert_eq!(coeffs.iter().filter(|a| !a.is_zero()).count(), 2);
    }

    #[test]
    fn pi_examples() {
        let s = BergmanSpace::ball(1, int(0)).unwrap();
        let op = basis_operator(&s, BasisElement::X5(1)).unwrap();
        assert_eq!(op.to_string(), "2*i*z1 + (i + i*z1^2)*d1");
        let m = BergmanSpace::matrix_ball(int(0)).unwrap();
        let op = basis_operator(&m, BasisElement::A(3)).unwrap();
        assert_eq!(op.to_string(), "-i*z1*d1 + i*z2*d2 - i*z3*d3 + i*z4*d4");
        let op = basis_operator(&m, BasisElement::A(8)).unwrap();
        assert_eq!(op.to_string(), "-4*z1 + (1 - z1^2)*d1 - z1*z2*d2 - z1*z3*d3 - z2*z3*d4");
        assert!(pi_xi(&s, &LieAlgebraElement::zero(Algebra::SuN1(1))).unwrap().is_zero());
        assert!(basis_operator(&s, BasisElement::A(1)).is_err());
    }

    #[test]
    fn pi_xi_agrees_with_table_on_basis() {
        for space in [BergmanSpace::ball(2, int(1)).unwrap(), BergmanSpace::matrix_ball(int(0)).unwrap()] {
            let alg = Algebra::for_domain(space.domain());
            for (tag, m) in basis(alg) {
                assert_eq!(pi_xi(&space, &m).unwrap(), basis_operator(&space, tag).unwrap());
            }
        }
    }

    #[test]
    fn bracket_signs() {
        assert_eq!(bracket_sign(&BergmanSpace::ball(2, int(0)).unwrap()).unwrap(), 1);
        assert_eq!(bracket_sign(&BergmanSpace::matrix_ball(int(0)).unwrap()).unwrap(), -1);
    }

    #[test]
    fn commutator_examples() {
        let b = basis(Algebra::Su22);
        assert!(algebra_commutator(&b[0].1, &b[1].1).unwrap().is_zero());
        assert!(algebra_commutator(&b[5].1, &b[5].1).unwrap().is_zero());
        let alg = Algebra::SuN1(2);
        let x4 = BasisElement::X4(1).realize(alg).unwrap();
        let x5 = BasisElement::X5(1).realize(alg).unwrap();
        let c = algebra_commutator(&x4, &x5).unwrap();
        assert!(validate_membership(alg, &c.matrix).unwrap().valid);
    }
}
