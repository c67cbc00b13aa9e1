//! First-order holomorphic differential operators `f0 + Σ_k f_k ∂_k` and
//! symmetry testing against the Bergman inner product.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use serde::Serialize;

use crate::algebra::{ComplexRational, MultiIndex, Polynomial};
use crate::error::{Error, Result};
use crate::metric::{mono_coefficient, partners, BergmanSpace, ExactIPValue};

/// `f0 + Σ_k f[k] ∂_k`, stored in normal order (derivatives on the right).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FirstOrderOperator {
    f0: Polynomial,
    f: Vec<Polynomial>,
}

impl FirstOrderOperator {
    pub fn new(f0: Polynomial, f: Vec<Polynomial>) -> Result<Self> {
        let dim = f0.dim();
        if f.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: f.len() });
        }
        if let Some(bad) = f.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        Ok(Self { f0, f })
    }

    pub fn zero(dim: usize) -> Self {
        Self { f0: Polynomial::zero(dim), f: vec![Polynomial::zero(dim); dim] }
    }

    /// Multiplication by `p`.
    pub fn multiplication(p: Polynomial) -> Self {
        let dim = p.dim();
        Self { f0: p, f: vec![Polynomial::zero(dim); dim] }
    }

    pub fn constant(dim: usize, c: ComplexRational) -> Self {
        Self::multiplication(Polynomial::constant(dim, c))
    }

    /// `∂_k` (0-based `k`).
    pub fn partial(dim: usize, k: usize) -> Self {
        let mut op = Self::zero(dim);
        op.f[k] = Polynomial::one(dim);
        op
    }

    /// `Σ_j z_j ∂_j`
    pub fn euler(dim: usize) -> Self {
        Self { f0: Polynomial::zero(dim), f: (0..dim).map(|j| Polynomial::var(dim, j)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.f0.dim()
    }

    pub fn f0(&self) -> &Polynomial {
        &self.f0
    }

    pub fn f(&self) -> &[Polynomial] {
        &self.f
    }

    pub fn is_zero(&self) -> bool {
        self.f0.is_zero() && self.f.iter().all(Polynomial::is_zero)
    }

    /// No derivative part and a constant `f0`.
    pub fn is_constant(&self) -> bool {
        self.f.iter().all(Polynomial::is_zero) && self.f0.is_constant()
    }

    fn check_dim(&self, other_dim: usize) -> Result<()> {
        if self.dim() != other_dim {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other_dim });
        }
        Ok(())
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        self.check_dim(p.dim())?;
        let mut out = &self.f0 * p;
        for (k, fk) in self.f.iter().enumerate() {
            if !fk.is_zero() {
                out = out + fk * &p.d(k);
            }
        }
        Ok(out)
    }

    /// `[A, B] = AB - BA`, again first order.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim())?;
        let dim = self.dim();
        let lie_derivative = |a: &Self, p: &Polynomial| {
            a.f.iter()
                .enumerate()
                .filter(|(_, fj)| !fj.is_zero())
                .fold(Polynomial::zero(dim), |acc, (j, fj)| acc + fj * &p.d(j))
        };
        let f0 = lie_derivative(self, &other.f0) - lie_derivative(other, &self.f0);
        let f = (0..dim)
            .map(|k| lie_derivative(self, &other.f[k]) - lie_derivative(other, &self.f[k]))
            .collect();
        Ok(Self { f0, f })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim())?;
        Ok(Self {
            f0: &self.f0 + &other.f0,
            f: self.f.iter().zip(&other.f).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-ComplexRational::one()))
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        Self { f0: self.f0.scale(c), f: self.f.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn add_constant(&self, c: &ComplexRational) -> Self {
        let mut out = self.clone();
        out.f0 = &out.f0 + &Polynomial::constant(self.dim(), c.clone());
        out
    }

    /// `a_α^β`: the `z^β` coefficient of `f_α`, where `α` is `0` (for `f0`) or
    /// a unit index `e_k`.
    pub fn coefficient(&self, alpha: &MultiIndex, beta: &MultiIndex) -> Result<ComplexRational> {
        self.check_dim(alpha.len())?;
        self.check_dim(beta.len())?;
        if alpha.is_zero() {
            return Ok(self.f0.coefficient(beta));
        }
        match alpha.as_unit() {
            Some(k) => Ok(self.f[k].coefficient(beta)),
            None => Err(Error::InvalidParameter(format!(
                "alpha = {alpha} is neither 0 nor a unit index"
            ))),
        }
    }

    /// Largest degree among all coefficient polynomials.
    pub fn coefficient_degree(&self) -> Option<u32> {
        std::iter::once(&self.f0).chain(&self.f).filter_map(Polynomial::degree).max()
    }
}

impl fmt::Display for FirstOrderOperator {
    /// Prints in the CLI operator grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.f0.is_zero() {
            parts.push(self.f0.to_string());
        }
        for (k, fk) in self.f.iter().enumerate() {
            if fk.is_zero() {
                continue;
            }
            let d = format!("d{}", k + 1);
            let text = fk.to_string();
            parts.push(match (fk.len(), text.as_str()) {
                (1, "1") => d,
                (1, "-1") => format!("-{d}"),
                (1, _) => format!("{text}*{d}"),
                _ => format!("({text})*{d}"),
            });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {rest}")),
                None => out.push_str(&format!(" + {p}")),
            }
        }
        write!(f, "{out}")
    }
}

pub fn op_apply(l: &FirstOrderOperator, p: &Polynomial) -> Result<Polynomial> {
    l.apply(p)
}

pub fn op_compose_commutator(
    a: &FirstOrderOperator,
    b: &FirstOrderOperator,
) -> Result<FirstOrderOperator> {
    a.commutator(b)
}

pub const DEFAULT_SYMMETRY_DEGREE: u32 = 4;

/// A monomial pair on which the adjointness identity fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub n: MultiIndex,
    pub m: MultiIndex,
    /// `⟨L z^n, z^m⟩`
    pub lhs: ExactIPValue,
    /// `⟨z^n, L z^m⟩`, negated for the skew check.
    pub rhs: ExactIPValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub symmetric: bool,
    pub witnesses: Vec<Witness>,
    pub degree_checked: u32,
}

/// `⟨L z^n, z^m⟩ = ⟨z^n, L z^m⟩` for all `|n|, |m| <= degree`.
pub fn symmetry_check(
    space: &BergmanSpace,
    l: &FirstOrderOperator,
    degree: u32,
) -> Result<SymmetryReport> {
    adjointness_check(space, l, degree, false)
}

/// `⟨L z^n, z^m⟩ = -⟨z^n, L z^m⟩` for all `|n|, |m| <= degree`.
pub fn skew_symmetry_check(
    space: &BergmanSpace,
    l: &FirstOrderOperator,
    degree: u32,
) -> Result<SymmetryReport> {
    adjointness_check(space, l, degree, true)
}

fn adjointness_check(
    space: &BergmanSpace,
    l: &FirstOrderOperator,
    degree: u32,
    skew: bool,
) -> Result<SymmetryReport> {
    if l.dim() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), found: l.dim() });
    }
    let basis = MultiIndex::all_up_to(space.dim(), degree);
    let position: HashMap<&MultiIndex, usize> =
        basis.iter().enumerate().map(|(i, n)| (n, i)).collect();

    // sparse ⟨L z^n, z^m⟩, keyed by basis positions
    let mut forms: HashMap<(usize, usize), ComplexRational> = HashMap::new();
    for (i, n) in basis.iter().enumerate() {
        let image = l.apply(&Polynomial::monomial(n.clone(), ComplexRational::one()))?;
        for (t, coeff) in image.terms() {
            for m in partners(space, t) {
                let Some(&j) = position.get(&m) else { continue };
                let g = mono_coefficient(space, t, &m);
                if g.is_zero() {
                    continue;
                }
                *forms.entry((i, j)).or_default() += &coeff.scale(&g);
            }
        }
    }

    let zero = ComplexRational::zero();
    let mut pairs: Vec<(usize, usize)> = forms.keys().flat_map(|&(i, j)| [(i, j), (j, i)]).collect();
    pairs.sort_unstable();
    pairs.dedup();
    let mut witnesses = Vec::new();
    for (i, j) in pairs {
        let lhs = forms.get(&(i, j)).unwrap_or(&zero).clone();
        let mut rhs = forms.get(&(j, i)).unwrap_or(&zero).conj();
        if skew {
            rhs = -rhs;
        }
        if lhs != rhs {
            witnesses.push(Witness {
                n: basis[i].clone(),
                m: basis[j].clone(),
                lhs: ExactIPValue::new(lhs, space.unit()),
                rhs: ExactIPValue::new(rhs, space.unit()),
            });
        }
    }
    witnesses.sort_by(|a, b| {
        (a.n.degree(), a.m.degree(), &a.n, &a.m).cmp(&(b.n.degree(), b.m.degree(), &b.n, &b.m))
    });
    Ok(SymmetryReport { symmetric: witnesses.is_empty(), witnesses, degree_checked: degree })
}
