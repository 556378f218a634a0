//! Slice-level checks of the tensor product formulas for `F` and `F(., lambda)`.

use std::fmt;

use num_traits::Zero;

use super::classify::is_central;
use super::report::{subspace_bases_with, AdQuery, AdReport};
use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::gr::require_gr_commutative;
use crate::linalg::Rat;
use crate::par::Exec;
use crate::span;
use crate::tensor::TensorAlgebraSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremKind {
    /// `F(theta) = N(z1) (x) N(z2)`
    ThetaF,
    /// `F(gamma) = F(z1) (x) F(z2)`
    GammaF,
    /// `F(gamma, lambda) = sum over mu of F(z1, mu) (x) F(z2, lambda - mu)`
    GammaLambda(Rat),
}

impl fmt::Display for TheoremKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremKind::ThetaF => f.write_str("theta_F"),
            TheoremKind::GammaF => f.write_str("gamma_F"),
            TheoremKind::GammaLambda(l) => write!(f, "gamma_lambda({l})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TheoremCheck {
    pub kind: TheoremKind,
    pub bound: u32,
    pub composite: Element,
    pub left_dim: usize,
    pub right_dim: usize,
    /// Dimension of the sum of both sides.
    pub union_dim: usize,
    pub passed: bool,
    pub left_basis: Vec<Element>,
}

pub fn tensor_theorem_check(
    kind: TheoremKind,
    t: &TensorAlgebraSpec,
    z1: &Element,
    z2: &Element,
    n: u32,
) -> Result<TheoremCheck> {
    tensor_theorem_check_with(kind, t, z1, z2, n, Exec::default())
}

fn report(z: &Element, n: u32, exec: Exec) -> Result<AdReport> {
    subspace_bases_with(&AdQuery::with_default_cap(z, n)?, exec)
}

/// `F(z, lambda)` on the slice: the generalized eigenspace on `U`, plus the
/// nilpotent slice when `lambda = 0`.
fn f_lambda_slice(r: &AdReport, lambda: &Rat) -> Result<Vec<Element>> {
    let mut all: Vec<Element> = r
        .block(lambda)
        .and_then(|b| b.fk_bases.last().cloned())
        .unwrap_or_default();
    if lambda.is_zero() {
        all.extend(r.n_basis().iter().cloned());
    }
    span::leading_echelon(r.query.z.algebra(), &all)
}

pub fn tensor_theorem_check_with(
    kind: TheoremKind,
    t: &TensorAlgebraSpec,
    z1: &Element,
    z2: &Element,
    n: u32,
    exec: Exec,
) -> Result<TheoremCheck> {
    let comb = t.combined();
    let (composite, left, right) = match &kind {
        TheoremKind::ThetaF => {
            require_gr_commutative(t.left(), t.right(), n)?;
            if is_central(z1)? || is_central(z2)? {
                return Err(Error::HypothesisNotProven("theta_F needs noncentral factors".into()));
            }
            let theta = t.build_theta(z1, z2)?;
            let left = report(&theta, n, exec)?.f_slice()?;
            let n1 = span::leading_echelon(t.left(), report(z1, n, exec)?.n_basis())?;
            let n2 = span::leading_echelon(t.right(), report(z2, n, exec)?.n_basis())?;
            (theta, left, span::tensor_slice(t, &n1, &n2, n, exec)?)
        }
        TheoremKind::GammaF => {
            let gamma = t.build_gamma(z1, z2)?;
            let left = report(&gamma, n, exec)?.f_slice()?;
            let f1 = report(z1, n, exec)?.f_slice()?;
            let f2 = report(z2, n, exec)?.f_slice()?;
            (gamma, left, span::tensor_slice(t, &f1, &f2, n, exec)?)
        }
        TheoremKind::GammaLambda(lambda) => {
            let gamma = t.build_gamma(z1, z2)?;
            let left = f_lambda_slice(&report(&gamma, n, exec)?, lambda)?;
            let (r1, r2) = (report(z1, n, exec)?, report(z2, n, exec)?);
            let mut right = Vec::new();
            for e1 in &r1.ev_found {
                let nu = lambda - &e1.lambda;
                if r2.ev_found.iter().any(|e2| e2.lambda == nu) {
                    let a = f_lambda_slice(&r1, &e1.lambda)?;
                    let b = f_lambda_slice(&r2, &nu)?;
                    right.extend(span::tensor_slice(t, &a, &b, n, exec)?);
                }
            }
            (gamma, left, right)
        }
    };
    let left_dim = span::span_dim(comb, &left)?;
    let right_dim = span::span_dim(comb, &right)?;
    let union_dim = span::span_dim(comb, &[left.clone(), right].concat())?;
    Ok(TheoremCheck {
        kind,
        bound: n,
        composite,
        left_dim,
        right_dim,
        union_dim,
        passed: left_dim == right_dim && left_dim == union_dim,
        left_basis: left,
    })
}
