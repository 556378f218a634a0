use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::mono::Mono;
use crate::error::{Error, Result};
use crate::linalg::Rat;

/// Sparse linear combination of monomials with no algebra attached.
pub type Terms = BTreeMap<Mono, Rat>;

/// Shared handle to an algebra description.
pub type Algebra = Arc<AlgebraSpec>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraClass {
    /// Commutative polynomial algebra with a separate Poisson bracket.
    Class1,
    /// Weyl algebra with the commutator as bracket.
    Class2,
}

/// A Class 1 or Class 2 algebra on generators `p_1..p_n, q_1..q_n`
/// (`x_i, y_i` in Class 1 notation).
#[derive(Clone)]
pub struct AlgebraSpec {
    class: AlgebraClass,
    n_pairs: usize,
    /// `table[i * 2n + j] = {g_i, g_j}`; for Weyl algebras this is the commutator table.
    table: Vec<Terms>,
    delta: Option<u32>,
    label: String,
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.class == other.class && self.n_pairs == other.n_pairs && self.table == other.table
    }
}

impl Eq for AlgebraSpec {}

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraSpec({})", self.label)
    }
}

fn single(m: Mono, c: Rat) -> Terms {
    let mut t = Terms::new();
    if !c.is_zero() {
        t.insert(m, c);
    }
    t
}

pub(crate) fn add_into(acc: &mut Terms, m: Mono, c: Rat) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub(crate) fn add_terms(acc: &mut Terms, other: &Terms, scale: &Rat) {
    for (m, c) in other {
        add_into(acc, m.clone(), c * scale);
    }
}

pub(crate) fn terms_degree(t: &Terms) -> Option<u32> {
    t.keys().map(Mono::degree).max()
}

/// `k! * C(s,k) * C(r,k)` for `k = 0..=min(s,r)`.
fn reorder_coefficients(s: u32, r: u32) -> Vec<Rat> {
    let mut out = Vec::with_capacity(s.min(r) as usize + 1);
    let mut c = Rat::one();
    out.push(c.clone());
    for k in 1..=s.min(r) {
        // ratio of consecutive terms: (s-k+1)(r-k+1)/k
        c = c * Rat::from_integer(((s - k + 1) * (r - k + 1)).into())
            / Rat::from_integer(k.into());
        out.push(c.clone());
    }
    out
}

impl AlgebraSpec {
    /// The Weyl algebra `A_n` with `[q_i, p_i] = 1`, filtered by total degree.
    pub fn weyl(n_pairs: usize) -> Algebra {
        let mut table = vec![Terms::new(); 4 * n_pairs * n_pairs];
        let w = 2 * n_pairs;
        for i in 0..n_pairs {
            let (p, q) = (i, n_pairs + i);
            table[q * w + p] = single(Mono::one(n_pairs), Rat::one());
            table[p * w + q] = single(Mono::one(n_pairs), -Rat::one());
        }
        Arc::new(AlgebraSpec {
            class: AlgebraClass::Class2,
            n_pairs,
            table,
            delta: if n_pairs == 0 { None } else { Some(2) },
            label: format!("weyl:{n_pairs}"),
        })
    }

    /// `K[x_1..x_n, y_1..y_n]` with `{x_i, y_i} = 1`.
    pub fn symplectic(n_pairs: usize) -> Algebra {
        let w = 2 * n_pairs;
        let mut table = vec![Terms::new(); w * w];
        for i in 0..n_pairs {
            let (x, y) = (i, n_pairs + i);
            table[x * w + y] = single(Mono::one(n_pairs), Rat::one());
            table[y * w + x] = single(Mono::one(n_pairs), -Rat::one());
        }
        Arc::new(AlgebraSpec {
            class: AlgebraClass::Class1,
            n_pairs,
            table,
            delta: if n_pairs == 0 { None } else { Some(2) },
            label: format!("sympoly:{n_pairs}"),
        })
    }

    /// Class 1 algebra from brackets of generator pairs. Unlisted pairs commute;
    /// `(i, j, f)` also fixes `{g_j, g_i} = -f`. Jacobi is checked on all generator triples.
    pub fn class1(n_pairs: usize, entries: &[(usize, usize, Terms)]) -> Result<Algebra> {
        let w = 2 * n_pairs;
        let mut table = vec![Terms::new(); w * w];
        let mut set = vec![false; w * w];
        for (i, j, f) in entries {
            let (i, j) = (*i, *j);
            if i >= w || j >= w {
                return Err(Error::InvalidAlgebra(format!(
                    "generator index out of range in entry ({i}, {j})"
                )));
            }
            if f.keys().any(|m| m.n_pairs() != n_pairs) {
                return Err(Error::InvalidAlgebra(
                    "bracket value lives in a different polynomial ring".into(),
                ));
            }
            let neg: Terms = f.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
            if i == j && !f.is_empty() {
                return Err(Error::InvalidAlgebra(format!(
                    "{{g{i}, g{i}}} must vanish by antisymmetry"
                )));
            }
            if (set[i * w + j] && table[i * w + j] != *f) || (set[j * w + i] && table[j * w + i] != neg) {
                return Err(Error::InvalidAlgebra(format!(
                    "inconsistent or non-antisymmetric entries for ({i}, {j})"
                )));
            }
            table[i * w + j] = f.clone();
            table[j * w + i] = neg;
            set[i * w + j] = true;
            set[j * w + i] = true;
        }
        Self::class1_from_table(n_pairs, table, format!("class1:{n_pairs}"))
    }

    pub(crate) fn class1_from_table(n_pairs: usize, table: Vec<Terms>, label: String) -> Result<Algebra> {
        let w = 2 * n_pairs;
        if table.len() != w * w {
            return Err(Error::InvalidAlgebra("bracket table has the wrong size".into()));
        }
        let spec = AlgebraSpec {
            class: AlgebraClass::Class1,
            n_pairs,
            delta: None,
            table,
            label,
        };
        for i in 0..w {
            for j in 0..w {
                let neg: Terms = spec.table[j * w + i]
                    .iter()
                    .map(|(m, c)| (m.clone(), -c.clone()))
                    .collect();
                if spec.table[i * w + j] != neg {
                    return Err(Error::InvalidAlgebra(format!(
                        "bracket table is not antisymmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let gen = |g: usize| single(Mono::generator(n_pairs, g), Rat::one());
        for i in 0..w {
            for j in i + 1..w {
                for k in j + 1..w {
                    let (a, b, c) = (gen(i), gen(j), gen(k));
                    let mut sum = spec.bracket_terms(&a, &spec.bracket_terms(&b, &c));
                    add_terms(&mut sum, &spec.bracket_terms(&b, &spec.bracket_terms(&c, &a)), &Rat::one());
                    add_terms(&mut sum, &spec.bracket_terms(&c, &spec.bracket_terms(&a, &b)), &Rat::one());
                    if !sum.is_empty() {
                        return Err(Error::InvalidAlgebra(format!(
                            "Jacobi identity fails on generators ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        let delta = spec.compute_delta()?;
        Ok(Arc::new(AlgebraSpec { delta, ..spec }))
    }

    fn compute_delta(&self) -> Result<Option<u32>> {
        let w = 2 * self.n_pairs;
        let mut best: Option<i64> = None;
        for i in 0..w {
            for j in i + 1..w {
                if let Some(d) = terms_degree(&self.table[i * w + j]) {
                    let drop = 2 - i64::from(d);
                    best = Some(best.map_or(drop, |b| b.min(drop)));
                }
            }
        }
        match best {
            Some(d) if d < 0 => Err(Error::InvalidAlgebra(format!(
                "bracket raises degree (drop {d}); the filtration would not be compatible"
            ))),
            other => Ok(other.map(|d| d as u32)),
        }
    }

    pub fn with_label(self: &Algebra, label: impl Into<String>) -> Algebra {
        let mut s = (**self).clone();
        s.label = label.into();
        Arc::new(s)
    }

    pub fn class(&self) -> AlgebraClass {
        self.class
    }

    pub fn n_pairs(&self) -> usize {
        self.n_pairs
    }

    pub fn n_generators(&self) -> usize {
        2 * self.n_pairs
    }

    /// Exact degree drop of the bracket; `None` when every bracket vanishes.
    pub fn delta(&self) -> Option<u32> {
        self.delta
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Generator letters used for display and parsing.
    pub fn letters(&self) -> (char, char) {
        match self.class {
            AlgebraClass::Class1 => ('x', 'y'),
            AlgebraClass::Class2 => ('p', 'q'),
        }
    }

    /// `{g_i, g_j}` for flat generator positions.
    pub fn generator_bracket(&self, i: usize, j: usize) -> &Terms {
        &self.table[i * 2 * self.n_pairs + j]
    }

    pub fn mono_mul(&self, a: &Mono, b: &Mono) -> Terms {
        match self.class {
            AlgebraClass::Class1 => single(a.times(b), Rat::one()),
            AlgebraClass::Class2 => self.weyl_mono_mul(a, b),
        }
    }

    fn weyl_mono_mul(&self, a: &Mono, b: &Mono) -> Terms {
        let n = self.n_pairs;
        // per pair: q^s p^r = sum_k k! C(s,k) C(r,k) p^(r-k) q^(s-k)
        let per_pair: Vec<Vec<Rat>> = (0..n)
            .map(|i| reorder_coefficients(a.q_exp(i), b.p_exp(i)))
            .collect();
        let mut out = Terms::new();
        let mut ks = vec![0u32; n];
        loop {
            let mut coeff = Rat::one();
            let mut exps = vec![0u32; 2 * n];
            for i in 0..n {
                coeff *= &per_pair[i][ks[i] as usize];
                exps[i] = a.p_exp(i) + b.p_exp(i) - ks[i];
                exps[n + i] = a.q_exp(i) + b.q_exp(i) - ks[i];
            }
            add_into(&mut out, Mono::from_exponents(exps), coeff);
            // odometer over k-vectors
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                ks[i] += 1;
                if (ks[i] as usize) < per_pair[i].len() {
                    break;
                }
                ks[i] = 0;
                i += 1;
            }
        }
    }

    pub fn mul_terms(&self, a: &Terms, b: &Terms) -> Terms {
        let mut out = Terms::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                let coeff = ca * cb;
                for (m, c) in self.mono_mul(ma, mb) {
                    add_into(&mut out, m, c * &coeff);
                }
            }
        }
        out
    }

    pub fn bracket_terms(&self, a: &Terms, b: &Terms) -> Terms {
        match self.class {
            AlgebraClass::Class2 => {
                let mut out = self.mul_terms(a, b);
                add_terms(&mut out, &self.mul_terms(b, a), &-Rat::one());
                out
            }
            AlgebraClass::Class1 => {
                let mut out = Terms::new();
                for (ma, ca) in a {
                    for (mb, cb) in b {
                        let coeff = ca * cb;
                        add_terms(&mut out, &self.class1_mono_bracket(ma, mb), &coeff);
                    }
                }
                out
            }
        }
    }

    /// Biderivation extension of the generator table to two monomials.
    fn class1_mono_bracket(&self, a: &Mono, b: &Mono) -> Terms {
        let w = 2 * self.n_pairs;
        let mut out = Terms::new();
        for i in (0..w).filter(|&i| a.exponents()[i] > 0) {
            let da = a.checked_div(&Mono::generator(self.n_pairs, i)).expect("positive exponent");
            let ea = a.exponents()[i];
            for j in (0..w).filter(|&j| b.exponents()[j] > 0) {
                let t = &self.table[i * w + j];
                if t.is_empty() {
                    continue;
                }
                let db = b.checked_div(&Mono::generator(self.n_pairs, j)).expect("positive exponent");
                let base = da.times(&db);
                let scale = Rat::from_integer((ea * b.exponents()[j]).into());
                for (m, c) in t {
                    add_into(&mut out, base.times(m), c * &scale);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reorder_coefficients_small() {
        let c: Vec<Rat> = reorder_coefficients(2, 3);
        // k=0:1, k=1: 1*2*3=6, k=2: 2*1*3=6
        assert_eq!(c, vec![Rat::one(), Rat::from_integer(6.into()), Rat::from_integer(6.into())]);
    }

    #[test]
    fn deltas() {
        assert_eq!(AlgebraSpec::weyl(2).delta(), Some(2));
        assert_eq!(AlgebraSpec::symplectic(1).delta(), Some(2));
        assert_eq!(AlgebraSpec::weyl(0).delta(), None);
        let xy = single(Mono::from_pq(&[1], &[1]), Rat::one());
        let a = AlgebraSpec::class1(1, &[(0, 1, xy)]).unwrap();
        assert_eq!(a.delta(), Some(0));
        let cubic = single(Mono::from_pq(&[2], &[1]), Rat::one());
        assert!(AlgebraSpec::class1(1, &[(0, 1, cubic)]).is_err());
    }

    #[test]
    fn jacobi_violation_is_rejected() {
        let one = single(Mono::one(2), Rat::one());
        let y2 = single(Mono::from_pq(&[0, 0], &[0, 1]), Rat::one());
        // {x1, y1} = y2 and {x2, y2} = 1 give {x2, {x1, y1}} = 1 on the triple (x1, y1, x2)
        assert!(AlgebraSpec::class1(2, &[(0, 2, y2.clone()), (1, 3, one.clone())]).is_err());
        // {x1, x2} = y2 and {x2, y2} = 1 satisfy it
        assert!(AlgebraSpec::class1(2, &[(0, 1, y2), (1, 3, one)]).is_ok());
    }
}
