use std::collections::HashMap;

use num_traits::Zero;

use super::element::{check_same, Element};
use super::mono::{monomials_of_degree, Mono};
use super::spec::Algebra;
use crate::error::{Error, Result};
use crate::linalg::Rat;

/// Deg-lex monomial basis of the slice `P_{<=N}`.
///
/// The basis at bound `N` is a prefix of the basis at `N + 1`.
#[derive(Clone, Debug)]
pub struct FilteredBasis {
    alg: Algebra,
    bound: u32,
    monomials: Vec<Mono>,
    index: HashMap<Mono, usize>,
}

impl FilteredBasis {
    pub fn new(alg: &Algebra, bound: u32) -> Self {
        let vars = alg.n_generators();
        let monomials: Vec<Mono> = (0..=bound)
            .flat_map(|d| monomials_of_degree(vars, d))
            .map(Mono::from_exponents)
            .collect();
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        FilteredBasis {
            alg: alg.clone(),
            bound,
            monomials,
            index,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Mono] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Mono) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Number of basis monomials of degree `< d` (the prefix for slice `d - 1`).
    pub fn prefix_len(&self, d: u32) -> usize {
        self.monomials.partition_point(|m| m.degree() < d)
    }

    pub fn element(&self, i: usize) -> Element {
        self.alg.monomial(self.monomials[i].clone(), Rat::from_integer(1.into()))
    }

    /// Exact coordinates of `x`.
    pub fn coords(&self, x: &Element) -> Result<Vec<Rat>> {
        check_same(&self.alg, x.algebra())?;
        let mut v = vec![Rat::zero(); self.len()];
        for (m, c) in x.terms() {
            let Some(i) = self.index_of(m) else {
                return Err(Error::OutOfSlice {
                    degree: m.degree(),
                    bound: self.bound,
                });
            };
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// Sparse coordinates `(index, value)` of `x`.
    pub fn sparse_coords(&self, x: &Element) -> Result<Vec<(usize, Rat)>> {
        check_same(&self.alg, x.algebra())?;
        x.terms()
            .iter()
            .map(|(m, c)| {
                self.index_of(m).map(|i| (i, c.clone())).ok_or(Error::OutOfSlice {
                    degree: m.degree(),
                    bound: self.bound,
                })
            })
            .collect()
    }

    /// Inverse of [`FilteredBasis::coords`].
    pub fn from_coords(&self, v: &[Rat]) -> Element {
        assert_eq!(v.len(), self.len(), "coordinate vector has the wrong length");
        Element::from_pairs(
            &self.alg,
            v.iter()
                .zip(&self.monomials)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, m)| (m.clone(), c.clone())),
        )
    }
}

pub fn filtered_basis(alg: &Algebra, bound: u32) -> FilteredBasis {
    FilteredBasis::new(alg, bound)
}

/// `C(n + k, k)` as `usize`.
pub fn slice_dimension(n_generators: usize, bound: u32) -> usize {
    let (n, k) = (bound as u128, n_generators as u128);
    let mut c: u128 = 1;
    for i in 1..=k {
        c = c * (n + i) / i;
    }
    c as usize
}
