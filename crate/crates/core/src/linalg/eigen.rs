use num_traits::{One, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::matrix::MatrixQ;
use super::poly::UniPolyQ;
use super::Rat;
use crate::error::{Error, Result};

fn require_square(m: &MatrixQ) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )))
    }
}

/// Characteristic polynomial `det(X*I - m)`.
///
/// The matrix is split into strongly connected blocks of its sparsity graph
/// (a block-triangular permutation) and each block goes through Berkowitz.
pub fn char_poly(m: &MatrixQ) -> Result<UniPolyQ> {
    require_square(m)?;
    let n = m.rows();
    let mut g = DiGraph::<(), ()>::with_capacity(n, m.nnz());
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for (i, &node) in nodes.iter().enumerate() {
        for &j in m.row(i).keys() {
            if i != j {
                g.add_edge(node, nodes[j], ());
            }
        }
    }
    let mut out = UniPolyQ::one();
    for comp in tarjan_scc(&g) {
        let mut idx: Vec<usize> = comp.iter().map(|v| v.index()).collect();
        idx.sort_unstable();
        let block = if idx.len() == 1 {
            UniPolyQ::linear_root(&m.get(idx[0], idx[0]))
        } else {
            berkowitz(&m.principal_submatrix(&idx))
        };
        out = out.mul(&block);
    }
    Ok(out)
}

/// Division-free characteristic polynomial of a small dense block.
fn berkowitz(m: &MatrixQ) -> UniPolyQ {
    let n = m.rows();
    let a: Vec<Vec<Rat>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j)).collect()).collect();
    // descending coefficients of the leading r x r block's polynomial
    let mut v = vec![Rat::one()];
    for r in 0..n {
        let mut t = Vec::with_capacity(r + 2);
        t.push(Rat::one());
        t.push(-a[r][r].clone());
        let mut w: Vec<Rat> = (0..r).map(|i| a[i][r].clone()).collect();
        for k in 0..r {
            let dot = (0..r).fold(Rat::zero(), |acc, j| acc + &a[r][j] * &w[j]);
            t.push(-dot);
            if k + 1 < r {
                w = (0..r)
                    .map(|i| (0..r).fold(Rat::zero(), |acc, j| acc + &a[i][j] * &w[j]))
                    .collect();
            }
        }
        let next: Vec<Rat> = (0..r + 2)
            .map(|i| {
                (0..=i.min(r))
                    .fold(Rat::zero(), |acc, j| acc + &t[i - j] * &v[j])
            })
            .collect();
        v = next;
    }
    v.reverse();
    UniPolyQ::new(v)
}

/// Basis of `ker (m - lambda*I)^k`.
pub fn generalized_eigenspace(m: &MatrixQ, lambda: &Rat, k: u32) -> Result<Vec<Vec<Rat>>> {
    require_square(m)?;
    if k == 0 {
        return Ok(Vec::new());
    }
    let b = m.shifted(lambda)?;
    let mut p = b.clone();
    let mut dim = p.rref().kernel_basis().len();
    for _ in 1..k {
        let next = p.matmul(&b)?;
        let next_dim = next.rref().kernel_basis().len();
        p = next;
        if next_dim == dim {
            // kernels of successive powers stop growing once two agree
            break;
        }
        dim = next_dim;
    }
    Ok(p.kernel_basis())
}

/// Kernel bases of `(m - lambda*I)^k` for `k = 1..=k_max`, cut short once stable.
///
/// The second component reports whether stabilization was observed.
pub fn generalized_eigenspace_chain(
    m: &MatrixQ,
    lambda: &Rat,
    k_max: u32,
) -> Result<(Vec<Vec<Vec<Rat>>>, bool)> {
    require_square(m)?;
    let b = m.shifted(lambda)?;
    let mut chain: Vec<Vec<Vec<Rat>>> = Vec::new();
    let mut p = b.clone();
    for k in 1..=k_max {
        if k > 1 {
            p = p.matmul(&b)?;
        }
        let basis = p.kernel_basis();
        let stable = chain.last().is_some_and(|prev| prev.len() == basis.len());
        chain.push(basis);
        if stable {
            return Ok((chain, true));
        }
    }
    Ok((chain, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn char_poly_small_cases() {
        assert_eq!(
            char_poly(&MatrixQ::identity(2)).unwrap(),
            UniPolyQ::from_i64(&[1, -2, 1])
        );
        let diag = MatrixQ::from_i64(&[&[1, 0], &[0, -1]]).unwrap();
        assert_eq!(char_poly(&diag).unwrap(), UniPolyQ::from_i64(&[-1, 0, 1]));
        let swap = MatrixQ::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(char_poly(&swap).unwrap(), UniPolyQ::from_i64(&[-1, 0, 1]));
    }

    #[test]
    fn berkowitz_matches_cofactor_expansion() {
        let m = MatrixQ::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[4, 0, 1]]).unwrap();
        // det(XI - m) by hand: X^3 - 6X^2 + 10X - 9
        assert_eq!(char_poly(&m).unwrap(), UniPolyQ::from_i64(&[-9, 10, -6, 1]));
    }

    #[test]
    fn non_square_is_rejected() {
        assert!(char_poly(&MatrixQ::zeros(2, 3)).is_err());
        assert!(generalized_eigenspace(&MatrixQ::zeros(2, 3), &q(0), 1).is_err());
    }

    #[test]
    fn jordan_block_chain() {
        let j = MatrixQ::from_i64(&[&[0, 1], &[0, 0]]).unwrap();
        assert_eq!(generalized_eigenspace(&j, &q(0), 1).unwrap().len(), 1);
        assert_eq!(generalized_eigenspace(&j, &q(0), 2).unwrap().len(), 2);
        let (chain, stable) = generalized_eigenspace_chain(&j, &q(0), 5).unwrap();
        assert!(stable);
        assert_eq!(chain.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 2, 2]);
    }

    #[test]
    fn identity_eigenspace_is_everything() {
        assert_eq!(
            generalized_eigenspace(&MatrixQ::identity(3), &q(1), 1).unwrap().len(),
            3
        );
    }

    #[test]
    fn upper_triangular_eigenvector() {
        let m = MatrixQ::from_i64(&[&[1, 1], &[0, 2]]).unwrap();
        let b = generalized_eigenspace(&m, &q(2), 1).unwrap();
        assert_eq!(b, vec![vec![q(1), q(1)]]);
    }
}
