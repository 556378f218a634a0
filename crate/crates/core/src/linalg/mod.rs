//! Exact rational linear algebra.

mod eigen;
mod matrix;
mod poly;

pub use eigen::{char_poly, generalized_eigenspace, generalized_eigenspace_chain};
pub use matrix::{Elimination, MatrixQ, Rref, DENSE_THRESHOLD};
pub use poly::{RationalRoots, UniPolyQ};

use num_traits::Zero;

/// Arbitrary-precision rational, always in lowest terms.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn kernel_basis(m: &MatrixQ) -> Vec<Vec<Rat>> {
    m.kernel_basis()
}

pub fn rank(m: &MatrixQ) -> usize {
    m.rank()
}

pub fn rational_roots(p: &UniPolyQ) -> crate::Result<RationalRoots> {
    p.rational_roots()
}

/// Rank of a family of coordinate vectors of equal length `dim`.
pub fn span_rank(vectors: &[Vec<Rat>], dim: usize) -> usize {
    rows_matrix(vectors, dim).rank()
}

/// Whether two families span the same subspace.
pub fn same_span(a: &[Vec<Rat>], b: &[Vec<Rat>], dim: usize) -> bool {
    let ra = span_rank(a, dim);
    ra == span_rank(b, dim) && ra == span_rank(&[a, b].concat(), dim)
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Rat>], v: &[Rat], dim: usize) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    span_rank(basis, dim) == span_rank(&all, dim)
}

fn rows_matrix(vectors: &[Vec<Rat>], dim: usize) -> MatrixQ {
    let mut m = MatrixQ::zeros(vectors.len(), dim);
    for (i, v) in vectors.iter().enumerate() {
        for (j, x) in v.iter().enumerate() {
            if !x.is_zero() {
                m.set(i, j, x.clone());
            }
        }
    }
    m
}

/// Reduced echelon rows of a family of vectors: a canonical basis of its span.
pub fn echelon_basis(vectors: &[Vec<Rat>], dim: usize) -> Vec<Vec<Rat>> {
    let r = rows_matrix(vectors, dim).rref();
    r.rows
        .iter()
        .map(|row| {
            let mut v = vec![Rat::zero(); dim];
            for (c, x) in row {
                v[*c] = x.clone();
            }
            v
        })
        .collect()
}
