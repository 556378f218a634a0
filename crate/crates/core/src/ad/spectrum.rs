//! Eigenvalues of `ad_z` on the invariant slice, and local minimal polynomials
//! of generator orbits.

use num_traits::{One, Zero};

use super::slice::{invariant_slice_with, InvariantSlice};
use crate::span::relations;
use crate::algebra::{filtered_basis, Element};
use crate::error::Result;
use crate::linalg::{char_poly, Rat, UniPolyQ};
use crate::par::Exec;

/// A rational eigenvalue with its algebraic multiplicity on `U` and a certified eigenvector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenvalue {
    pub lambda: Rat,
    pub multiplicity: u32,
    /// Nonzero `x` with `{z, x} = lambda x`.
    pub witness: Element,
}

#[derive(Clone, Debug)]
pub struct Spectrum {
    /// Ascending; a subset of `Ev(z)`.
    pub ev_found: Vec<Eigenvalue>,
    /// The characteristic polynomial of `ad_z` on `U` has a factor without rational roots.
    pub irrational_flag: bool,
    pub char_poly: UniPolyQ,
}

pub fn ev_discover(z: &Element, n: u32) -> Result<Spectrum> {
    spectrum_on(z, &invariant_slice_with(z, n, Exec::default()))
}

pub(crate) fn spectrum_on(z: &Element, u: &InvariantSlice) -> Result<Spectrum> {
    let chi = char_poly(&u.restricted)?;
    if u.dim() == 0 {
        return Ok(Spectrum {
            ev_found: Vec::new(),
            irrational_flag: false,
            char_poly: chi,
        });
    }
    let roots = chi.rational_roots()?;
    let mut ev_found = Vec::with_capacity(roots.roots.len());
    for (lambda, mult) in roots.roots {
        let kernel = u.restricted.shifted(&lambda)?.kernel_basis();
        let witness = u.element(kernel.first().expect("a root of the characteristic polynomial has an eigenvector"));
        let check = z.bracket(&witness)?;
        assert!(
            !witness.is_zero() && check == witness.scale(&lambda),
            "eigenvector certificate failed"
        );
        ev_found.push(Eigenvalue {
            lambda,
            multiplicity: mult,
            witness,
        });
    }
    Ok(Spectrum {
        ev_found,
        irrational_flag: roots.remainder_degree > 0,
        char_poly: chi,
    })
}

/// Minimal polynomial of `ad_z` on the cyclic subspace spanned by the orbit of `g`.
#[derive(Clone, Debug)]
pub struct LocalMinPoly {
    pub start: Element,
    /// `start, ad_z(start), ...` up to the first dependent term (exclusive).
    pub orbit: Vec<Element>,
    /// Monic; `mu(ad_z)(start) = 0`.
    pub poly: UniPolyQ,
}

impl LocalMinPoly {
    /// Applies `f(ad_z)` to `start`.
    pub fn apply(&self, f: &UniPolyQ) -> Element {
        let alg = self.start.algebra();
        let (_, r) = f.div_rem(&self.poly).expect("minimal polynomial is nonzero");
        let mut out = alg.zero();
        for (c, x) in r.coeffs().iter().zip(&self.orbit) {
            if !c.is_zero() {
                out = &out + &x.scale(c);
            }
        }
        out
    }
}

/// Orbit of `g` under `ad_z` while it stays in `P_{<=n}`; `None` if it leaves
/// the slice before closing up.
pub fn local_min_poly(z: &Element, g: &Element, n: u32) -> Result<Option<LocalMinPoly>> {
    let cap = filtered_basis(z.algebra(), n).len() + 1;
    let mut orbit: Vec<Element> = Vec::new();
    let mut cur = g.clone();
    for _ in 0..=cap {
        if cur.degree().finite().is_some_and(|d| d > n) {
            return Ok(None);
        }
        let mut trial = orbit.clone();
        trial.push(cur.clone());
        let rel = relations(&trial);
        if let Some(k) = rel.into_iter().next() {
            // the relation is unique up to scale and involves the newest term
            let top = k.last().expect("nonempty").clone();
            let coeffs: Vec<Rat> = k.iter().map(|c| c / &top).collect();
            return Ok(Some(LocalMinPoly {
                start: g.clone(),
                orbit,
                poly: UniPolyQ::new(coeffs),
            }));
        }
        orbit.push(cur.clone());
        cur = z.bracket(&cur)?;
    }
    Ok(None)
}

/// `mu` has no repeated factor.
pub fn is_squarefree(mu: &UniPolyQ) -> bool {
    mu.gcd(&mu.derivative()).degree() == Some(0)
}

/// `mu = X^k`.
pub fn is_power_of_x(mu: &UniPolyQ) -> bool {
    mu.coeffs().iter().rev().skip(1).all(Zero::is_zero) && mu.leading().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::linalg::rat;

    #[test]
    fn spectrum_of_pq() {
        let a = AlgebraSpec::weyl(1);
        let (p, q) = (a.p(0), a.q(0));
        let z = &p * &q;
        let s = ev_discover(&z, 3).unwrap();
        let lambdas: Vec<Rat> = s.ev_found.iter().map(|e| e.lambda.clone()).collect();
        assert_eq!(lambdas, (-3..=3).map(rat).collect::<Vec<_>>());
        assert!(!s.irrational_flag);
        for e in &s.ev_found {
            // witnesses are monomials p^i q^j with i - j = lambda
            assert_eq!(e.witness.len(), 1);
            let m = e.witness.leading().unwrap().0;
            assert_eq!(rat(m.p_exp(0) as i64 - m.q_exp(0) as i64), e.lambda);
        }
    }

    #[test]
    fn nilpotent_and_central_spectra() {
        let a = AlgebraSpec::weyl(1);
        let s = ev_discover(&a.p(0), 4).unwrap();
        assert_eq!(s.ev_found.len(), 1);
        assert!(s.ev_found[0].lambda.is_zero());
        assert_eq!(s.ev_found[0].multiplicity, 15);
        let s = ev_discover(&a.constant(rat(3)), 2).unwrap();
        assert_eq!(s.ev_found.len(), 1);
        assert_eq!(s.char_poly, UniPolyQ::from_i64(&[0, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn generator_orbits() {
        let a = AlgebraSpec::weyl(1);
        let (p, q) = (a.p(0), a.q(0));
        let mu = local_min_poly(&p, &q, 2).unwrap().unwrap();
        assert_eq!(mu.poly, UniPolyQ::from_i64(&[0, 0, 1]));
        assert!(is_power_of_x(&mu.poly));
        // pq + p^3 acts on span{q, p^2} with eigenvalues -1 and 2
        let z = &(&p * &q) + &p.pow(3);
        let mu = local_min_poly(&z, &q, 4).unwrap().unwrap();
        assert_eq!(mu.poly, UniPolyQ::from_i64(&[-2, -1, 1]));
        assert!(is_squarefree(&mu.poly));
        let x = mu.apply(&UniPolyQ::linear_root(&rat(2)));
        assert_eq!(z.bracket(&x).unwrap(), -&x);
        // p^2 q pushes p out of every slice
        assert!(local_min_poly(&(&p.pow(2) * &q), &p, 5).unwrap().is_none());
    }
}
