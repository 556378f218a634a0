//! `ad_z` on filtered slices: rectangular matrices, the largest invariant
//! subspace, orbits and the partner equation `{z, w} = 1`.

use num_traits::Zero;

use crate::algebra::{filtered_basis, Degree, Element, FilteredBasis};
use crate::error::Result;
use crate::linalg::{echelon_basis, MatrixQ, Rat};
use crate::par::Exec;
use crate::span::{combine, relations};

/// Bound of the slice that receives `ad_z(P_{<=n})`: `n + deg z - delta`.
pub fn target_bound(z: &Element, n: u32) -> u32 {
    match (z.degree(), z.algebra().delta()) {
        (Degree::Finite(d), Some(delta)) => (n + d).saturating_sub(delta),
        _ => n,
    }
}

/// `ad_z: P_{<=n} -> P_{<=target}` together with both bases.
#[derive(Clone, Debug)]
pub struct AdOperator {
    pub source: FilteredBasis,
    pub target: FilteredBasis,
    pub matrix: MatrixQ,
}

pub fn ad_operator(z: &Element, n: u32, exec: Exec) -> AdOperator {
    let source = filtered_basis(z.algebra(), n);
    let target = filtered_basis(z.algebra(), target_bound(z, n));
    let columns = exec.map_range(source.len(), |j| {
        let img = z.bracket(&source.element(j)).expect("same algebra");
        target.sparse_coords(&img).expect("bracket stays in the target slice")
    });
    let matrix = MatrixQ::from_sparse_columns(target.len(), &columns).expect("column lengths agree");
    AdOperator {
        source,
        target,
        matrix,
    }
}

/// Matrix of `ad_z` from `P_{<=n}` to `P_{<=n+d-delta}`; column `j` holds `{z, basis_j}`.
pub fn ad_matrix(z: &Element, n: u32) -> MatrixQ {
    ad_operator(z, n, Exec::default()).matrix
}

pub fn ad_matrix_with(z: &Element, n: u32, exec: Exec) -> MatrixQ {
    ad_operator(z, n, exec).matrix
}

/// Largest `ad_z`-invariant subspace `U` of `P_{<=n}`.
#[derive(Clone, Debug)]
pub struct InvariantSlice {
    pub basis: FilteredBasis,
    /// Reduced echelon rows spanning `U`, in `basis` coordinates.
    pub vectors: Vec<Vec<Rat>>,
    pub pivots: Vec<usize>,
    /// `ad_z` on `U` in the basis `vectors`.
    pub restricted: MatrixQ,
    /// `U` is the whole slice.
    pub full: bool,
    /// Rounds of the fixpoint iteration (0 when the slice is invariant a priori).
    pub rounds: usize,
}

impl InvariantSlice {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn elements(&self) -> Vec<Element> {
        self.vectors.iter().map(|v| self.basis.from_coords(v)).collect()
    }

    /// Element with coordinates `c` in the basis of `U`.
    pub fn element(&self, c: &[Rat]) -> Element {
        let mut v = vec![Rat::zero(); self.basis.len()];
        for (row, x) in self.vectors.iter().zip(c) {
            if x.is_zero() {
                continue;
            }
            for (vi, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *vi += x * r;
                }
            }
        }
        self.basis.from_coords(&v)
    }
}

/// Slices are invariant outright when the bracket cannot raise degree.
fn slice_is_invariant(z: &Element) -> bool {
    match (z.degree(), z.algebra().delta()) {
        (Degree::NegInf, _) | (_, None) => true,
        (Degree::Finite(d), Some(delta)) => d <= delta || z.is_constant(),
    }
}

pub fn invariant_slice(z: &Element, n: u32) -> InvariantSlice {
    invariant_slice_with(z, n, Exec::default())
}

pub fn invariant_slice_with(z: &Element, n: u32, exec: Exec) -> InvariantSlice {
    let basis = filtered_basis(z.algebra(), n);
    let dim = basis.len();
    let identity = |i: usize| {
        let mut v = vec![Rat::zero(); dim];
        v[i] = Rat::from_integer(1.into());
        v
    };
    let mut vectors: Vec<Vec<Rat>> = (0..dim).map(identity).collect();
    let full_a_priori = slice_is_invariant(z);
    let mut rounds = 0;
    if !full_a_priori {
        loop {
            let elems: Vec<Element> = vectors.iter().map(|v| basis.from_coords(v)).collect();
            let images = exec.map(&elems, |e| z.bracket(e).expect("same algebra"));
            // (c, c') with ad(sum c_i u_i) = sum c'_j u_j
            let mut all = images;
            all.extend(elems.iter().map(|e| -e));
            let r = elems.len();
            let kept: Vec<Vec<Rat>> = relations(&all)
                .into_iter()
                .map(|k| basis.coords(&combine(z.algebra(), &elems, &k[..r])).expect("inside slice"))
                .collect();
            let next = echelon_basis(&kept, dim);
            rounds += 1;
            let stable = next.len() == vectors.len();
            vectors = next;
            if stable || vectors.is_empty() {
                break;
            }
        }
    }
    let pivots: Vec<usize> = vectors
        .iter()
        .map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero row"))
        .collect();
    let elems: Vec<Element> = vectors.iter().map(|v| basis.from_coords(v)).collect();
    let columns = exec.map(&elems, |u| {
        let img = basis
            .coords(&z.bracket(u).expect("same algebra"))
            .expect("U is invariant");
        pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| !img[p].is_zero())
            .map(|(j, &p)| (j, img[p].clone()))
            .collect::<Vec<_>>()
    });
    let restricted = MatrixQ::from_sparse_columns(vectors.len(), &columns).expect("square");
    InvariantSlice {
        full: vectors.len() == dim,
        basis,
        vectors,
        pivots,
        restricted,
        rounds,
    }
}

/// Degrees of `ad_z^m(x)` for `m = 0..=m_max`.
pub fn orbit_profile(z: &Element, x: &Element, m_max: u32) -> Result<Vec<Degree>> {
    let mut out = Vec::with_capacity(m_max as usize + 1);
    let mut cur = x.clone();
    for m in 0..=m_max {
        out.push(cur.degree());
        if m < m_max && !cur.is_zero() {
            cur = z.bracket(&cur)?;
        }
    }
    Ok(out)
}

/// Some `w` in `P_{<=n}` with `{z, w} = 1`, if the slice holds one.
pub fn partner_probe(z: &Element, n: u32) -> Result<Option<Element>> {
    let op = ad_operator(z, n, Exec::default());
    let one = op.target.coords(&z.algebra().one())?;
    let Some(w) = op.matrix.solve(&one)? else {
        return Ok(None);
    };
    let w = op.source.from_coords(&w);
    debug_assert!(z.bracket(&w)? == z.algebra().one());
    Ok(Some(w))
}
