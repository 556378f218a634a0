//! Associated graded algebra through homogeneous representatives.
//!
//! For `x` of degree `i` and `y` of degree `j` the class of `xy` and of `{x, y}`
//! lives in `P_{i+j} / P_{i+j-1}`, so both graded operations land in degree
//! `i + j`. The graded bracket vanishes identically exactly when the bracket
//! drops degree by at least one.

use crate::algebra::{filtered_basis, Algebra, Degree, Element};
use crate::error::{Error, Result};
use crate::par::Exec;

/// `x + P_{d-1}` encoded by the degree-`d` part of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    pub degree: u32,
    pub representative: Element,
}

impl GradedElement {
    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }
}

/// Top homogeneous component of a nonzero element.
pub fn symbol(x: &Element) -> Result<GradedElement> {
    match x.degree() {
        Degree::NegInf => Err(Error::ZeroSymbol),
        Degree::Finite(d) => Ok(GradedElement {
            degree: d,
            representative: x.homogeneous_part(d),
        }),
    }
}

pub fn gr_mul(a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
    let d = a.degree + b.degree;
    let prod = a.representative.try_mul(&b.representative)?;
    Ok(GradedElement {
        degree: d,
        representative: prod.homogeneous_part(d),
    })
}

/// Graded bracket in degree `i + j`.
pub fn gr_bracket(a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
    graded_bracket_at_drop(a, b, 0)
}

/// Component of `{a, b}` in degree `i + j - k`; `k = 2` gives the classical Poisson
/// symbol of a Weyl commutator.
pub fn graded_bracket_at_drop(a: &GradedElement, b: &GradedElement, k: u32) -> Result<GradedElement> {
    let top = a.degree + b.degree;
    let br = a.representative.bracket(&b.representative)?;
    if k > top {
        return Ok(GradedElement {
            degree: 0,
            representative: br.algebra().zero(),
        });
    }
    let d = top - k;
    Ok(GradedElement {
        degree: d,
        representative: br.homogeneous_part(d),
    })
}

/// Evidence that the graded bracket of an algebra vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrCertificate {
    /// Degree drop derived from the generator table (`None`: every bracket vanishes).
    pub delta: Option<u32>,
    /// Bound on monomial degrees in the exhaustive sweep.
    pub sweep_bound: u32,
    /// Every monomial pair of degree `<= sweep_bound` had a bracket of degree `< i + j`.
    pub sweep_passed: bool,
    pub pairs_checked: usize,
    /// `delta >= 1` and the sweep passed.
    pub commutative: bool,
}

pub fn gr_commutative(alg: &Algebra, bound: u32) -> GrCertificate {
    gr_commutative_with(alg, bound, Exec::default())
}

pub fn gr_commutative_with(alg: &Algebra, bound: u32, exec: Exec) -> GrCertificate {
    let basis = filtered_basis(alg, bound);
    let n = basis.len();
    let monos: Vec<Element> = (0..n).map(|i| basis.element(i)).collect();
    let rows = exec.map_range(n, |i| {
        let a = &monos[i];
        let da = a.degree().finite().unwrap_or(0);
        (i + 1..n).all(|j| {
            let b = &monos[j];
            let db = b.degree().finite().unwrap_or(0);
            let br = a.bracket(b).expect("same algebra");
            br.degree() < Degree::Finite(da + db)
        })
    });
    let sweep_passed = rows.into_iter().all(|ok| ok);
    let delta_ok = alg.delta().is_none_or(|d| d >= 1);
    GrCertificate {
        delta: alg.delta(),
        sweep_bound: bound,
        sweep_passed,
        pairs_checked: n * n.saturating_sub(1) / 2,
        commutative: delta_ok && sweep_passed,
    }
}

/// Errors unless both algebras carry a passing certificate.
pub fn require_gr_commutative(left: &Algebra, right: &Algebra, bound: u32) -> Result<()> {
    for alg in [left, right] {
        if !gr_commutative(alg, bound).commutative {
            return Err(Error::HypothesisNotProven(format!(
                "graded bracket of {} is not commutative",
                alg.label()
            )));
        }
    }
    Ok(())
}
