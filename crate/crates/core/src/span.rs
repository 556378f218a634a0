//! Spans of elements: canonical bases, comparisons and slice-wise tensor products.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{check_same, filtered_basis, Algebra, Degree, Element, FilteredBasis, Mono};
use crate::error::Result;
use crate::linalg::{self, MatrixQ, Rat};
use crate::par::Exec;
use crate::tensor::{Side, TensorAlgebraSpec};

/// Smallest slice bound containing every element (0 for an empty or all-zero list).
pub fn bound_of(elems: &[Element]) -> u32 {
    elems
        .iter()
        .filter_map(|e| e.degree().finite())
        .max()
        .unwrap_or(0)
}

fn coords_rows(elems: &[Element], basis: &FilteredBasis) -> Result<Vec<Vec<Rat>>> {
    elems.iter().map(|e| basis.coords(e)).collect()
}

/// Columns are the coordinates of `elems` over the union of their supports.
pub fn support_matrix(elems: &[Element]) -> MatrixQ {
    let mut index: BTreeMap<&Mono, usize> = BTreeMap::new();
    for e in elems {
        for m in e.terms().keys() {
            let k = index.len();
            index.entry(m).or_insert(k);
        }
    }
    let columns: Vec<Vec<(usize, Rat)>> = elems
        .iter()
        .map(|e| e.terms().iter().map(|(m, c)| (index[m], c.clone())).collect())
        .collect();
    MatrixQ::from_sparse_columns(index.len(), &columns).expect("column lengths agree")
}

/// Linear relations `c` with `sum c_i elems_i = 0`.
pub fn relations(elems: &[Element]) -> Vec<Vec<Rat>> {
    if elems.is_empty() {
        return Vec::new();
    }
    support_matrix(elems).kernel_basis()
}

/// `sum c_i elems_i`.
pub fn combine(alg: &Algebra, elems: &[Element], c: &[Rat]) -> Element {
    let mut out = alg.zero();
    for (e, x) in elems.iter().zip(c) {
        if !x.is_zero() {
            out = &out + &e.scale(x);
        }
    }
    out
}

/// Dimension of the span.
pub fn span_dim(alg: &Algebra, elems: &[Element]) -> Result<usize> {
    let basis = filtered_basis(alg, bound_of(elems));
    let rows = coords_rows(elems, &basis)?;
    Ok(linalg::span_rank(&rows, basis.len()))
}

/// Whether two families span the same subspace.
pub fn same_span(alg: &Algebra, a: &[Element], b: &[Element]) -> Result<bool> {
    let basis = filtered_basis(alg, bound_of(a).max(bound_of(b)));
    let ra = coords_rows(a, &basis)?;
    let rb = coords_rows(b, &basis)?;
    Ok(linalg::same_span(&ra, &rb, basis.len()))
}

/// Whether `x` lies in the span of `elems`.
pub fn in_span(elems: &[Element], x: &Element) -> Result<bool> {
    for e in elems {
        check_same(e.algebra(), x.algebra())?;
    }
    let bound = bound_of(elems).max(x.degree().finite().unwrap_or(0));
    let basis = filtered_basis(x.algebra(), bound);
    let rows = coords_rows(elems, &basis)?;
    Ok(linalg::in_span(&rows, &basis.coords(x)?, basis.len()))
}

/// Basis of the span whose members have pairwise distinct leading monomials,
/// sorted by leading monomial. The members of degree `<= a` then span the
/// intersection of the span with `P_{<=a}`.
pub fn leading_echelon(alg: &Algebra, elems: &[Element]) -> Result<Vec<Element>> {
    let basis = filtered_basis(alg, bound_of(elems));
    let n = basis.len();
    let mut m = MatrixQ::zeros(elems.len(), n);
    for (i, e) in elems.iter().enumerate() {
        for (j, c) in basis.sparse_coords(e)? {
            m.set(i, n - 1 - j, c);
        }
    }
    let r = m.rref();
    let mut out: Vec<Element> = r
        .rows
        .iter()
        .map(|row| {
            let mut v = vec![Rat::zero(); n];
            for (c, x) in row {
                v[n - 1 - c] = x.clone();
            }
            basis.from_coords(&v)
        })
        .collect();
    out.sort_by(|a, b| a.leading().map(|l| l.0).cmp(&b.leading().map(|l| l.0)));
    Ok(out)
}

/// Members of a leading-echelon basis of degree `<= a`.
pub fn truncate(echelon: &[Element], a: u32) -> Vec<Element> {
    echelon
        .iter()
        .filter(|e| e.degree() <= Degree::Finite(a))
        .cloned()
        .collect()
}

/// Spanning set of `(S1 (x) S2)` intersected with `P_{<=n}` of the combined algebra,
/// from leading-echelon bases of `S1` and `S2`.
pub fn tensor_slice(
    t: &TensorAlgebraSpec,
    left: &[Element],
    right: &[Element],
    n: u32,
    exec: Exec,
) -> Result<Vec<Element>> {
    let l: Vec<Element> = left
        .iter()
        .map(|x| t.embed(Side::Left, x))
        .collect::<Result<_>>()?;
    let r: Vec<Element> = right
        .iter()
        .map(|x| t.embed(Side::Right, x))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..l.len())
        .flat_map(|i| (0..r.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            let d = l[i].degree().finite().unwrap_or(0) + r[j].degree().finite().unwrap_or(0);
            d <= n
        })
        .collect();
    let prods = exec.map(&pairs, |&(i, j)| l[i].try_mul(&r[j]));
    prods.into_iter().collect()
}
