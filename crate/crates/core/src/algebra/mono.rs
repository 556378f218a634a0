use std::cmp::{Ordering, Reverse};
use std::fmt;

/// Exponent vector `(p_1..p_n, q_1..q_n)`; for Class 1 algebras read `x` for `p` and `y` for `q`.
///
/// Ordered degree first, then lexicographically descending within a degree, so
/// `1 < p < q < p^2 < p*q < q^2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mono(Vec<u32>);

impl Mono {
    pub fn one(n_pairs: usize) -> Self {
        Mono(vec![0; 2 * n_pairs])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        assert!(exps.len().is_multiple_of(2), "exponent vector must have even length");
        Mono(exps)
    }

    /// `p_1^a_1 .. p_n^a_n q_1^b_1 .. q_n^b_n`.
    pub fn from_pq(p: &[u32], q: &[u32]) -> Self {
        assert_eq!(p.len(), q.len());
        Mono([p, q].concat())
    }

    /// The generator at flat position `g` (`0..n` are p's, `n..2n` are q's).
    pub fn generator(n_pairs: usize, g: usize) -> Self {
        let mut e = vec![0; 2 * n_pairs];
        e[g] = 1;
        Mono(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn n_pairs(&self) -> usize {
        self.0.len() / 2
    }

    pub fn p_exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn q_exp(&self, i: usize) -> u32 {
        self.0[self.n_pairs() + i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Commutative product.
    pub fn times(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self` as a commutative monomial.
    pub fn checked_div(&self, other: &Mono) -> Option<Mono> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Mono)
    }

    /// Exponents of the `p` and `q` blocks restricted to pairs `range`.
    pub fn block(&self, range: std::ops::Range<usize>) -> Mono {
        let n = self.n_pairs();
        let p = &self.0[range.clone()];
        let q = &self.0[n + range.start..n + range.end];
        Mono::from_pq(p, q)
    }

    /// Degree of the part supported on pairs `range`.
    pub fn block_degree(&self, range: std::ops::Range<usize>) -> u32 {
        let n = self.n_pairs();
        range.map(|i| self.0[i] + self.0[n + i]).sum()
    }

    /// Writes the monomial with the given generator letters, `*`-separated.
    pub fn write_with(&self, f: &mut impl fmt::Write, letters: (char, char)) -> fmt::Result {
        let n = self.n_pairs();
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (block, letter) in [(0usize, letters.0), (n, letters.1)] {
            for i in 0..n {
                let e = self.0[block + i];
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{letter}")?;
                if n > 1 {
                    write!(f, "{}", i + 1)?;
                }
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), Reverse(&self.0)).cmp(&(other.degree(), Reverse(&other.0)))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, ('p', 'q'))
    }
}

/// All monomials of exact total degree `d` in `vars` variables, descending lexicographically.
pub fn monomials_of_degree(vars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(vars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if vars == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(vars - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if vars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(vars, d, &mut Vec::with_capacity(vars), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_degree_then_p_before_q() {
        let one = Mono::one(1);
        let p = Mono::from_pq(&[1], &[0]);
        let q = Mono::from_pq(&[0], &[1]);
        let pp = Mono::from_pq(&[2], &[0]);
        let pq = Mono::from_pq(&[1], &[1]);
        let qq = Mono::from_pq(&[0], &[2]);
        let mut v = vec![qq.clone(), pq.clone(), one.clone(), q.clone(), pp.clone(), p.clone()];
        v.sort();
        assert_eq!(v, vec![one, p, q, pp, pq, qq]);
    }

    #[test]
    fn enumeration_matches_order() {
        let ms: Vec<Mono> = monomials_of_degree(4, 3)
            .into_iter()
            .map(Mono::from_exponents)
            .collect();
        assert_eq!(ms.len(), 20);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn display() {
        let m = Mono::from_pq(&[2, 0], &[1, 3]);
        assert_eq!(format!("{m:?}"), "p1^2*q1*q2^3");
        assert_eq!(format!("{:?}", Mono::from_pq(&[1], &[1])), "p*q");
    }
}
