use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rat;
use crate::error::{Error, Result};

/// Density above which elimination switches to the dense fraction-free path.
pub const DENSE_THRESHOLD: f64 = 0.25;

type SparseRow = BTreeMap<usize, Rat>;

/// Exact rational matrix stored as sparse rows. Zero entries are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

/// Reduced row echelon form: nonzero rows only, each with a leading 1 at `pivots[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub cols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<BTreeMap<usize, Rat>>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Null-space basis: one vector per free column, free columns ascending.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if let Some(a) = row.get(&free) {
                    v[p] = -a.clone();
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Elimination route; the two produce identical reduced echelon forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elimination {
    /// Pick by density (see [`DENSE_THRESHOLD`]).
    Auto,
    /// Rational Gauss-Jordan on sparse rows.
    Sparse,
    /// Bareiss fraction-free forward pass over the integers, rational back-substitution.
    Bareiss,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ {
            rows,
            cols,
            data: vec![SparseRow::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].insert(i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let n = rows.len();
        let data = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Ok(MatrixQ { rows: n, cols, data })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rat::from_integer(v.into())).collect())
                .collect(),
        )
    }

    /// Builds a `rows`-by-`columns.len()` matrix from sparse columns.
    pub fn from_sparse_columns(rows: usize, columns: &[Vec<(usize, Rat)>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                if *i >= rows {
                    return Err(Error::Dimension(format!(
                        "row index {i} outside {rows} rows"
                    )));
                }
                m.set(*i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.data[r].get(&c).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    /// Nonzero entries of row `r`, ascending by column.
    pub fn row(&self, r: usize) -> &BTreeMap<usize, Rat> {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn density(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            0.0
        } else {
            self.nnz() as f64 / (self.rows * self.cols) as f64
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(c, _)| !v[**c].is_zero())
                    .fold(Rat::zero(), |acc, (c, a)| acc + a * &v[*c])
            })
            .collect())
    }

    pub fn matmul(&self, other: &MatrixQ) -> Result<MatrixQ> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut out = SparseRow::new();
                for (k, a) in row {
                    for (j, b) in &other.data[*k] {
                        let e = out.entry(*j).or_insert_with(Rat::zero);
                        *e += a * b;
                    }
                }
                out.retain(|_, v| !v.is_zero());
                out
            })
            .collect();
        Ok(MatrixQ {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut t = MatrixQ::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                t.data[*c].insert(r, v.clone());
            }
        }
        t
    }

    /// `self - lambda * I`.
    pub fn shifted(&self, lambda: &Rat) -> Result<MatrixQ> {
        if !self.is_square() {
            return Err(Error::Dimension("shift of a non-square matrix".into()));
        }
        let mut m = self.clone();
        if !lambda.is_zero() {
            for i in 0..self.rows {
                let v = m.get(i, i) - lambda;
                m.set(i, i, v);
            }
        }
        Ok(m)
    }

    pub fn pow(&self, k: u32) -> Result<MatrixQ> {
        if !self.is_square() {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut acc = MatrixQ::identity(self.rows);
        for _ in 0..k {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    /// Principal submatrix on the given (ordered) index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> MatrixQ {
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut m = MatrixQ::zeros(idx.len(), idx.len());
        for (i, &g) in idx.iter().enumerate() {
            for (c, v) in &self.data[g] {
                if let Some(&j) = pos.get(c) {
                    m.data[i].insert(j, v.clone());
                }
            }
        }
        m
    }

    pub fn rref(&self) -> Rref {
        self.rref_with(Elimination::Auto)
    }

    pub fn rref_with(&self, how: Elimination) -> Rref {
        let dense = match how {
            Elimination::Auto => self.density() > DENSE_THRESHOLD,
            Elimination::Sparse => false,
            Elimination::Bareiss => true,
        };
        if dense {
            bareiss_rref(self)
        } else {
            sparse_rref(self)
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of the null space, deterministic in the column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        self.rref().kernel_basis()
    }

    /// One solution of `self * x = b` (free variables set to zero), if any.
    pub fn solve(&self, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side of length {} against {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = self.clone();
        aug.cols += 1;
        for (r, v) in b.iter().enumerate() {
            if !v.is_zero() {
                aug.data[r].insert(self.cols, v.clone());
            }
        }
        let rref = aug.rref();
        if rref.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
            if let Some(v) = row.get(&self.cols) {
                x[p] = v.clone();
            }
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixQ {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

fn sparse_rref(m: &MatrixQ) -> Rref {
    let mut rows: Vec<SparseRow> = m.data.iter().filter(|r| !r.is_empty()).cloned().collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..m.cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&i| rows[i].contains_key(&c)) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][&c].recip();
        for v in rows[next].values_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == next {
                continue;
            }
            let Some(factor) = row.get(&c).cloned() else {
                continue;
            };
            for (j, v) in &pivot_row {
                let e = row.entry(*j).or_insert_with(Rat::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    row.remove(j);
                }
            }
        }
        pivots.push(c);
        next += 1;
    }
    rows.truncate(next);
    Rref {
        cols: m.cols,
        pivots,
        rows,
    }
}

fn integer_row(row: &SparseRow, cols: usize) -> Vec<BigInt> {
    let lcm = row
        .values()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut out = vec![BigInt::zero(); cols];
    for (c, v) in row {
        out[*c] = v.numer() * (&lcm / v.denom());
    }
    out
}

fn bareiss_rref(m: &MatrixQ) -> Rref {
    let cols = m.cols;
    let mut a: Vec<Vec<BigInt>> = m
        .data
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| integer_row(r, cols))
        .collect();
    let n = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(found) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, found);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let p = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let num = &p * &row[j] - &lead * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
        }
        prev = p;
        pivots.push(c);
        r += 1;
    }
    // back-substitution over the rationals
    let mut rows: Vec<SparseRow> = a
        .into_iter()
        .take(r)
        .map(|row| {
            row.into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, Rat::from_integer(v)))
                .collect()
        })
        .collect();
    for k in (0..r).rev() {
        let pc = pivots[k];
        let inv = rows[k][&pc].recip();
        for v in rows[k].values_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[k].clone();
        for row in rows.iter_mut().take(k) {
            let Some(factor) = row.get(&pc).cloned() else {
                continue;
            };
            for (j, v) in &pivot_row {
                let e = row.entry(*j).or_insert_with(Rat::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    row.remove(j);
                }
            }
        }
    }
    Rref { cols, pivots, rows }
}
