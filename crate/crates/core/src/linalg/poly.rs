use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rat;
use crate::error::{Error, Result};

/// Univariate polynomial over the rationals, coefficients ascending by degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPolyQ {
    coeffs: Vec<Rat>,
}

/// Rational roots with multiplicities, plus the degree of what is left over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRoots {
    /// Ascending by root value.
    pub roots: Vec<(Rat, u32)>,
    /// Degree of the cofactor with no rational roots; positive means non-rational spectrum.
    pub remainder_degree: usize,
}

impl UniPolyQ {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPolyQ { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        UniPolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `X - r`.
    pub fn linear_root(r: &Rat) -> Self {
        Self::new(vec![-r.clone(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let Some(dd) = d.degree() else {
            return Err(Error::ZeroPolynomial);
        };
        let lead_inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = &rem[top] * &lead_inv;
            let shift = top - dd;
            if !c.is_zero() {
                for (i, b) in d.coeffs.iter().enumerate() {
                    rem[shift + i] -= &c * b;
                }
                quot[shift] = c;
            }
            rem.pop();
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Integer polynomial with coprime coefficients and positive leading coefficient.
    fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(Signed::is_negative) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        for c in &mut ints {
            *c = &*c / &g * &sign;
        }
        ints
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    fn sturm_count(seq: &[UniPolyQ], lo: &Rat, hi: &Rat) -> usize {
        let var = |x: &Rat| {
            let signs: Vec<bool> = seq
                .iter()
                .map(|p| p.eval(x))
                .filter(|v| !v.is_zero())
                .map(|v| v.is_positive())
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        var(lo).saturating_sub(var(hi))
    }

    fn sturm_sequence(&self) -> Vec<UniPolyQ> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero").1;
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&-Rat::one()));
        }
        seq
    }

    /// Exact rational roots with multiplicities.
    pub fn rational_roots(&self) -> Result<RationalRoots> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut roots = Vec::new();
        let zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let mut rest = UniPolyQ::new(self.coeffs[zeros..].to_vec());
        if zeros > 0 {
            roots.push((Rat::zero(), zeros as u32));
        }
        if rest.degree().unwrap_or(0) > 0 {
            let sqfree = rest
                .div_rem(&rest.gcd(&rest.derivative()))
                .expect("gcd is nonzero")
                .0;
            let h = sqfree.primitive_integer();
            let n = h.len() - 1;
            let a = h[n].clone();
            // g(Y) = a^(n-1) h(Y/a) is monic with integer coefficients
            let mut g = Vec::with_capacity(n + 1);
            let mut pow = BigInt::one();
            for i in (0..n).rev() {
                g.push(&h[i] * &pow);
                pow *= &a;
            }
            g.reverse();
            g.push(BigInt::one());
            let g = UniPolyQ::new(g.into_iter().map(Rat::from_integer).collect());
            let bound = g
                .coeffs
                .iter()
                .map(|c| c.numer().abs())
                .max()
                .unwrap_or_else(BigInt::zero)
                + BigInt::one();
            let seq = g.sturm_sequence();
            let half = Rat::new(BigInt::one(), BigInt::from(2));
            let mut found = Vec::new();
            let mut stack = vec![(-Rat::from_integer(bound.clone()) - &half, Rat::from_integer(bound) + &half)];
            while let Some((lo, hi)) = stack.pop() {
                if Self::sturm_count(&seq, &lo, &hi) == 0 {
                    continue;
                }
                let width = (&hi - &lo).to_integer();
                if width.is_one() {
                    let c = &lo + &half;
                    if g.eval(&c).is_zero() {
                        found.push(c);
                    }
                    continue;
                }
                let mid = &lo + Rat::from_integer(width / BigInt::from(2));
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
            let a = Rat::from_integer(a);
            for r in found {
                let lambda = r / &a;
                let lin = UniPolyQ::linear_root(&lambda);
                let mut mult = 0u32;
                loop {
                    let (q, rem) = rest.div_rem(&lin)?;
                    if !rem.is_zero() {
                        break;
                    }
                    rest = q;
                    mult += 1;
                }
                debug_assert!(mult > 0);
                roots.push((lambda, mult));
            }
        }
        roots.sort_by(|x, y| x.0.cmp(&y.0));
        Ok(RationalRoots {
            roots,
            remainder_degree: rest.degree().unwrap_or(0),
        })
    }
}

impl fmt::Display for UniPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}X", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}X^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn roots_of_x_squared_minus_one() {
        let r = UniPolyQ::from_i64(&[-1, 0, 1]).rational_roots().unwrap();
        assert_eq!(r.roots, vec![(q(-1), 1), (q(1), 1)]);
        assert_eq!(r.remainder_degree, 0);
    }

    #[test]
    fn roots_of_x_squared_minus_two() {
        let r = UniPolyQ::from_i64(&[-2, 0, 1]).rational_roots().unwrap();
        assert!(r.roots.is_empty());
        assert_eq!(r.remainder_degree, 2);
    }

    #[test]
    fn roots_of_x_cubed_minus_x_squared() {
        let r = UniPolyQ::from_i64(&[0, 0, -1, 1]).rational_roots().unwrap();
        assert_eq!(r.roots, vec![(q(0), 2), (q(1), 1)]);
        assert_eq!(r.remainder_degree, 0);
    }

    #[test]
    fn non_integer_rational_roots() {
        // (2X - 1)^2 (3X + 2) (X^2 + 1)
        let p = UniPolyQ::from_i64(&[-1, 2])
            .mul(&UniPolyQ::from_i64(&[-1, 2]))
            .mul(&UniPolyQ::from_i64(&[2, 3]))
            .mul(&UniPolyQ::from_i64(&[1, 0, 1]));
        let r = p.rational_roots().unwrap();
        assert_eq!(
            r.roots,
            vec![(Rat::new((-2).into(), 3.into()), 1), (Rat::new(1.into(), 2.into()), 2)]
        );
        assert_eq!(r.remainder_degree, 2);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert!(UniPolyQ::zero().rational_roots().is_err());
    }

    #[test]
    fn nonzero_constant_has_no_roots() {
        let r = UniPolyQ::from_i64(&[5]).rational_roots().unwrap();
        assert!(r.roots.is_empty());
        assert_eq!(r.remainder_degree, 0);
    }

    #[test]
    fn display_form() {
        assert_eq!(UniPolyQ::from_i64(&[-1, 0, 1]).to_string(), "X^2 - 1");
        assert_eq!(UniPolyQ::from_i64(&[0, -3, 2]).to_string(), "2*X^2 - 3*X");
    }

    #[test]
    fn gcd_and_division() {
        let a = UniPolyQ::from_i64(&[-1, 0, 1]);
        let b = UniPolyQ::from_i64(&[1, 1]);
        assert_eq!(a.gcd(&b), b);
        let (quo, rem) = a.div_rem(&b).unwrap();
        assert_eq!(quo, UniPolyQ::from_i64(&[-1, 1]));
        assert!(rem.is_zero());
    }
}
