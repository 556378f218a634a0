use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::mono::Mono;
use super::spec::{add_into, add_terms, Algebra, AlgebraSpec, Terms};
use crate::error::{Error, Result};
use crate::linalg::Rat;

/// Total degree, with the zero element at minus infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// An element of a Class 1 or Class 2 algebra in normal form.
#[derive(Clone)]
pub struct Element {
    alg: Algebra,
    terms: Terms,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl Eq for Element {}

pub(crate) fn same_algebra(a: &Algebra, b: &Algebra) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn check_same(a: &Algebra, b: &Algebra) -> Result<()> {
    if same_algebra(a, b) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch {
            left: a.label().to_string(),
            right: b.label().to_string(),
        })
    }
}

impl AlgebraSpec {
    pub fn zero(self: &Algebra) -> Element {
        Element::from_terms(self, Terms::new())
    }

    pub fn one(self: &Algebra) -> Element {
        self.constant(Rat::one())
    }

    pub fn constant(self: &Algebra, c: Rat) -> Element {
        self.monomial(Mono::one(self.n_pairs()), c)
    }

    pub fn monomial(self: &Algebra, m: Mono, c: Rat) -> Element {
        assert_eq!(m.n_pairs(), self.n_pairs(), "monomial has the wrong arity");
        let mut terms = Terms::new();
        add_into(&mut terms, m, c);
        Element::from_terms(self, terms)
    }

    /// Generator at flat position `g` (`0..n` p's, `n..2n` q's).
    pub fn generator(self: &Algebra, g: usize) -> Element {
        self.monomial(Mono::generator(self.n_pairs(), g), Rat::one())
    }

    /// `p_{i+1}` (0-based index).
    pub fn p(self: &Algebra, i: usize) -> Element {
        assert!(i < self.n_pairs(), "generator index out of range");
        self.generator(i)
    }

    /// `q_{i+1}` (0-based index).
    pub fn q(self: &Algebra, i: usize) -> Element {
        assert!(i < self.n_pairs(), "generator index out of range");
        self.generator(self.n_pairs() + i)
    }

    /// Class 1 spelling of [`AlgebraSpec::p`].
    pub fn x(self: &Algebra, i: usize) -> Element {
        self.p(i)
    }

    /// Class 1 spelling of [`AlgebraSpec::q`].
    pub fn y(self: &Algebra, i: usize) -> Element {
        self.q(i)
    }

    pub fn generators(self: &Algebra) -> Vec<Element> {
        (0..self.n_generators()).map(|g| self.generator(g)).collect()
    }
}

impl Element {
    pub(crate) fn from_terms(alg: &Algebra, terms: Terms) -> Element {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Element {
            alg: alg.clone(),
            terms,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn into_terms(self) -> Terms {
        self.terms
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for scalar multiples of 1 (including 0).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::NegInf, |m| Degree::Finite(m.degree()))
    }

    /// Highest monomial in the deg-lex order, with its coefficient.
    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    /// The part of exact total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Element {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Element::from_terms(&self.alg, terms)
    }

    pub fn scale(&self, c: &Rat) -> Element {
        if c.is_zero() {
            return self.alg.zero();
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        Element::from_terms(&self.alg, terms)
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        check_same(&self.alg, &other.alg)?;
        let mut terms = self.terms.clone();
        add_terms(&mut terms, &other.terms, &Rat::one());
        Ok(Element::from_terms(&self.alg, terms))
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        check_same(&self.alg, &other.alg)?;
        let mut terms = self.terms.clone();
        add_terms(&mut terms, &other.terms, &-Rat::one());
        Ok(Element::from_terms(&self.alg, terms))
    }

    /// Normal-ordered product.
    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        check_same(&self.alg, &other.alg)?;
        Ok(Element::from_terms(
            &self.alg,
            self.alg.mul_terms(&self.terms, &other.terms),
        ))
    }

    /// `{self, other}`: the commutator in Class 2, the biderivation bracket in Class 1.
    pub fn bracket(&self, other: &Element) -> Result<Element> {
        check_same(&self.alg, &other.alg)?;
        Ok(Element::from_terms(
            &self.alg,
            self.alg.bracket_terms(&self.terms, &other.terms),
        ))
    }

    pub fn pow(&self, k: u32) -> Element {
        let mut acc = self.alg.one();
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same algebra");
        }
        acc
    }

    /// Sum of `c * m` over the given pairs.
    pub fn from_pairs(alg: &Algebra, pairs: impl IntoIterator<Item = (Mono, Rat)>) -> Element {
        let mut terms = Terms::new();
        for (m, c) in pairs {
            assert_eq!(m.n_pairs(), alg.n_pairs(), "monomial has the wrong arity");
            add_into(&mut terms, m, c);
        }
        Element::from_terms(alg, terms)
    }
}

/// `ad_z^m(x)`; `m = 0` returns `x`.
pub fn ad_power(z: &Element, x: &Element, m: u32) -> Result<Element> {
    check_same(&z.alg, &x.alg)?;
    let mut cur = x.clone();
    for _ in 0..m {
        if cur.is_zero() {
            break;
        }
        cur = z.bracket(&cur)?;
    }
    Ok(cur)
}

macro_rules! panicking_op {
    ($trait:ident, $method:ident, $call:ident) => {
        impl $trait<&Element> for &Element {
            type Output = Element;
            /// Panics when the operands live in different algebras.
            fn $method(self, rhs: &Element) -> Element {
                self.$call(rhs).expect("operands must share an algebra")
            }
        }
        impl $trait<Element> for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                (&self).$call(&rhs).expect("operands must share an algebra")
            }
        }
    };
}

panicking_op!(Add, add, try_add);
panicking_op!(Sub, sub, try_sub);
panicking_op!(Mul, mul, try_mul);

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Rat::one())
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Rat::one())
    }
}

impl fmt::Display for Element {
    /// Highest monomial first, e.g. `p*q^2 - 3/2*q + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let letters = self.alg.letters();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                m.write_with(f, letters)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self, self.alg.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn weyl_defining_relation() {
        let a = AlgebraSpec::weyl(1);
        let (p, q) = (a.p(0), a.q(0));
        assert_eq!(&q * &p, &(&p * &q) + &a.one());
        assert_eq!(q.bracket(&p).unwrap(), a.one());
    }

    #[test]
    fn weyl_q_squared_times_p() {
        let a = AlgebraSpec::weyl(1);
        let (p, q) = (a.p(0), a.q(0));
        let lhs = &q.pow(2) * &p;
        let rhs = &(&p * &q.pow(2)) + &q.scale(&rat(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn brackets_from_the_examples() {
        let a = AlgebraSpec::weyl(1);
        let (p, q) = (a.p(0), a.q(0));
        assert_eq!((&p * &q).bracket(&p).unwrap(), p);
        let s = AlgebraSpec::symplectic(1);
        let (x, y) = (s.x(0), s.y(0));
        assert_eq!(&x * &y, &y * &x);
        assert_eq!(x.bracket(&y.pow(2)).unwrap(), y.scale(&rat(2)));
    }

    #[test]
    fn ad_power_examples() {
        let a = AlgebraSpec::weyl(1);
        let (p, q) = (a.p(0), a.q(0));
        let q2 = q.pow(2);
        assert_eq!(ad_power(&p, &q2, 2).unwrap(), a.constant(rat(2)));
        assert!(ad_power(&p, &q2, 3).unwrap().is_zero());
        assert_eq!(ad_power(&(&p * &q), &q2, 0).unwrap(), q2);
    }

    #[test]
    fn degrees() {
        let a = AlgebraSpec::weyl(1);
        let (p, q) = (a.p(0), a.q(0));
        assert_eq!((&p.pow(2) * &q).degree(), Degree::Finite(3));
        assert_eq!(a.zero().degree(), Degree::NegInf);
        assert_eq!(a.constant(rat(5)).degree(), Degree::Finite(0));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = AlgebraSpec::weyl(1);
        let b = AlgebraSpec::weyl(2);
        assert!(matches!(a.p(0).try_mul(&b.p(0)), Err(Error::AlgebraMismatch { .. })));
    }

    #[test]
    fn display_forms() {
        let a = AlgebraSpec::weyl(1);
        let (p, q) = (a.p(0), a.q(0));
        assert_eq!((&q * &p).to_string(), "p*q + 1");
        let e = &(&p * &q.pow(2)) - &q.scale(&crate::linalg::ratio(3, 2));
        assert_eq!(e.to_string(), "p*q^2 - 3/2*q");
        assert_eq!((-a.one()).to_string(), "-1");
    }
}
