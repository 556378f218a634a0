//! Tensor products of two algebras of the same class.
//!
//! Elements of `P1 (x) P2` live directly in the combined algebra: the pairs of
//! the left factor come first, then those of the right factor. For Weyl
//! algebras the combined algebra is `A_{m+n}`.

use crate::algebra::{check_same, Algebra, AlgebraClass, AlgebraSpec, Element, Mono, Terms};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct TensorAlgebraSpec {
    left: Algebra,
    right: Algebra,
    combined: Algebra,
}

impl TensorAlgebraSpec {
    pub fn new(left: &Algebra, right: &Algebra) -> Result<Self> {
        if left.class() != right.class() {
            return Err(Error::InvalidAlgebra(
                "tensor factors must belong to the same class".into(),
            ));
        }
        let (n1, n2) = (left.n_pairs(), right.n_pairs());
        let label = format!("tensor({},{})", left.label(), right.label());
        let combined = match left.class() {
            AlgebraClass::Class2 => AlgebraSpec::weyl(n1 + n2).with_label(label),
            AlgebraClass::Class1 => {
                let n = n1 + n2;
                let w = 2 * n;
                let mut table = vec![Terms::new(); w * w];
                for (side, alg) in [(Side::Left, left), (Side::Right, right)] {
                    let wf = alg.n_generators();
                    for i in 0..wf {
                        for j in 0..wf {
                            let gi = generator_position(side, n1, n2, i);
                            let gj = generator_position(side, n1, n2, j);
                            table[gi * w + gj] = alg
                                .generator_bracket(i, j)
                                .iter()
                                .map(|(m, c)| (reindex(side, n1, n2, m), c.clone()))
                                .collect();
                        }
                    }
                }
                AlgebraSpec::class1_from_table(n, table, label)?
            }
        };
        Ok(TensorAlgebraSpec {
            left: left.clone(),
            right: right.clone(),
            combined,
        })
    }

    pub fn left(&self) -> &Algebra {
        &self.left
    }

    pub fn right(&self) -> &Algebra {
        &self.right
    }

    pub fn combined(&self) -> &Algebra {
        &self.combined
    }

    pub fn factor(&self, side: Side) -> &Algebra {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    /// Pair indices of the combined algebra that belong to `side`.
    pub fn pair_range(&self, side: Side) -> std::ops::Range<usize> {
        let n1 = self.left.n_pairs();
        match side {
            Side::Left => 0..n1,
            Side::Right => n1..n1 + self.right.n_pairs(),
        }
    }

    /// `x (x) 1` or `1 (x) x`.
    pub fn embed(&self, side: Side, x: &Element) -> Result<Element> {
        check_same(self.factor(side), x.algebra())?;
        let (n1, n2) = (self.left.n_pairs(), self.right.n_pairs());
        Ok(Element::from_pairs(
            &self.combined,
            x.terms()
                .iter()
                .map(|(m, c)| (reindex(side, n1, n2, m), c.clone())),
        ))
    }

    pub fn tensor_elem(&self, a: &Element, b: &Element) -> Result<Element> {
        self.embed(Side::Left, a)?
            .try_mul(&self.embed(Side::Right, b)?)
    }

    /// `z1 (x) z2`.
    pub fn build_theta(&self, z1: &Element, z2: &Element) -> Result<Element> {
        self.tensor_elem(z1, z2)
    }

    /// `z1 (x) 1 + 1 (x) z2`.
    pub fn build_gamma(&self, z1: &Element, z2: &Element) -> Result<Element> {
        self.embed(Side::Left, z1)?
            .try_add(&self.embed(Side::Right, z2)?)
    }

    /// Largest degree of the `side` factor over the support of `t`
    /// (`None` for `t = 0`).
    pub fn factor_degree(&self, side: Side, t: &Element) -> Option<u32> {
        let r = self.pair_range(side);
        t.terms().keys().map(|m| m.block_degree(r.clone())).max()
    }
}

fn generator_position(side: Side, n1: usize, n2: usize, g: usize) -> usize {
    let n = n1 + n2;
    let (nf, offset) = match side {
        Side::Left => (n1, 0),
        Side::Right => (n2, n1),
    };
    if g < nf {
        offset + g
    } else {
        n + offset + (g - nf)
    }
}

fn reindex(side: Side, n1: usize, n2: usize, m: &Mono) -> Mono {
    let (mut p, mut q) = (vec![0; n1 + n2], vec![0; n1 + n2]);
    let offset = if side == Side::Left { 0 } else { n1 };
    for i in 0..m.n_pairs() {
        p[offset + i] = m.p_exp(i);
        q[offset + i] = m.q_exp(i);
    }
    Mono::from_pq(&p, &q)
}

pub fn tensor_embed(t: &TensorAlgebraSpec, side: Side, x: &Element) -> Result<Element> {
    t.embed(side, x)
}

pub fn tensor_elem(t: &TensorAlgebraSpec, a: &Element, b: &Element) -> Result<Element> {
    t.tensor_elem(a, b)
}

pub fn build_theta(t: &TensorAlgebraSpec, z1: &Element, z2: &Element) -> Result<Element> {
    t.build_theta(z1, z2)
}

pub fn build_gamma(t: &TensorAlgebraSpec, z1: &Element, z2: &Element) -> Result<Element> {
    t.build_gamma(z1, z2)
}
