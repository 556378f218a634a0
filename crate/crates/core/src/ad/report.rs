//! Slice-level bases of `C(z)`, `N(z)`, `D(z, lambda)` and `F^k(z, lambda)`.

use super::slice::{ad_operator, invariant_slice_with, InvariantSlice};
use crate::span::{combine, relations};
use super::spectrum::{spectrum_on, Eigenvalue};
use crate::algebra::{ad_power, Element};
use crate::error::{Error, Result};
use crate::linalg::{generalized_eigenspace_chain, MatrixQ, Rat};
use crate::par::Exec;
use crate::span;

/// `z` with the slice bound `n` and the iteration cap `m`.
#[derive(Clone, Debug)]
pub struct AdQuery {
    pub z: Element,
    pub n: u32,
    pub m: u32,
}

impl AdQuery {
    pub fn new(z: &Element, n: u32, m: u32) -> Result<Self> {
        if z.degree().finite().is_some_and(|d| d > n) {
            return Err(Error::InvalidQuery(format!(
                "bound {n} is below the degree {} of z",
                z.degree()
            )));
        }
        if m == 0 {
            return Err(Error::InvalidQuery("iteration cap must be at least 1".into()));
        }
        Ok(AdQuery { z: z.clone(), n, m })
    }

    /// Iteration cap `n + 2`.
    pub fn with_default_cap(z: &Element, n: u32) -> Result<Self> {
        Self::new(z, n, n + 2)
    }
}

/// Generalized eigenspace data at one eigenvalue.
#[derive(Clone, Debug)]
pub struct EigenBlock {
    pub lambda: Rat,
    /// `D(z, lambda)` on `U`.
    pub d_basis: Vec<Element>,
    /// `fk_bases[k]` spans `F^k(z, lambda) = ker (ad_z - lambda)^{k+1}` on `U`.
    pub fk_bases: Vec<Vec<Element>>,
    pub stabilized: bool,
}

#[derive(Clone, Debug)]
pub struct AdReport {
    pub query: AdQuery,
    pub invariant_dim: usize,
    pub slice_dim: usize,
    pub ev_found: Vec<Eigenvalue>,
    pub irrational_flag: bool,
    pub c_basis: Vec<Element>,
    /// `nm_bases[m - 1]` spans `ker ad_z^m` on `P_{<=n}`.
    pub nm_bases: Vec<Vec<Element>>,
    pub n_stabilized: bool,
    pub eigen: Vec<EigenBlock>,
    /// Basis of `U`.
    pub u_basis: Vec<Element>,
}

impl AdReport {
    pub fn block(&self, lambda: &Rat) -> Option<&EigenBlock> {
        self.eigen.iter().find(|b| &b.lambda == lambda)
    }

    /// Largest computed nilpotent slice.
    pub fn n_basis(&self) -> &[Element] {
        self.nm_bases.last().map(Vec::as_slice).unwrap_or(&[])
    }

    /// Certified part of `F(z)` in the slice: `U` together with the nilpotent slice.
    pub fn f_slice(&self) -> Result<Vec<Element>> {
        let mut all = self.u_basis.clone();
        all.extend(self.n_basis().iter().cloned());
        span::leading_echelon(self.query.z.algebra(), &all)
    }
}

pub fn subspace_bases(z: &Element, n: u32, m: u32) -> Result<AdReport> {
    subspace_bases_with(&AdQuery::new(z, n, m)?, Exec::default())
}

pub fn subspace_bases_with(query: &AdQuery, exec: Exec) -> Result<AdReport> {
    let z = &query.z;
    let alg = z.algebra();
    let op = ad_operator(z, query.n, exec);
    let slice_dim = op.source.len();
    let elems: Vec<Element> = (0..slice_dim).map(|j| op.source.element(j)).collect();

    let c_basis = kernel_elements(&op.source, &op.matrix);

    let mut nm_bases: Vec<Vec<Element>> = vec![c_basis.clone()];
    let mut n_stabilized = c_basis.len() == slice_dim;
    let mut images: Vec<Element> = exec.map(&elems, |e| z.bracket(e).expect("same algebra"));
    for _ in 2..=query.m {
        if n_stabilized {
            break;
        }
        images = exec.map(&images, |e| z.bracket(e).expect("same algebra"));
        let kernel = relations(&images);
        let basis: Vec<Element> = kernel.iter().map(|c| combine(alg, &elems, c)).collect();
        let prev = nm_bases.last().expect("nonempty").len();
        let stable = basis.len() == prev || basis.len() == slice_dim;
        nm_bases.push(basis);
        if stable {
            n_stabilized = true;
            break;
        }
    }

    let u = invariant_slice_with(z, query.n, exec);
    let spectrum = spectrum_on(z, &u)?;
    let eigen = spectrum
        .ev_found
        .iter()
        .map(|ev| eigen_block(&u, &ev.lambda, query.m))
        .collect::<Result<Vec<_>>>()?;

    let report = AdReport {
        query: query.clone(),
        invariant_dim: u.dim(),
        slice_dim,
        ev_found: spectrum.ev_found,
        irrational_flag: spectrum.irrational_flag,
        c_basis,
        nm_bases,
        n_stabilized,
        eigen,
        u_basis: u.elements(),
    };
    certify(&report)?;
    Ok(report)
}

fn kernel_elements(basis: &crate::algebra::FilteredBasis, m: &MatrixQ) -> Vec<Element> {
    m.kernel_basis().iter().map(|v| basis.from_coords(v)).collect()
}

fn eigen_block(u: &InvariantSlice, lambda: &Rat, m: u32) -> Result<EigenBlock> {
    let (chain, stabilized) = generalized_eigenspace_chain(&u.restricted, lambda, m.max(1))?;
    let fk_bases: Vec<Vec<Element>> = chain
        .iter()
        .map(|k| k.iter().map(|c| u.element(c)).collect())
        .collect();
    Ok(EigenBlock {
        lambda: lambda.clone(),
        d_basis: fk_bases[0].clone(),
        fk_bases,
        stabilized,
    })
}

/// Re-checks every membership claim exactly.
fn certify(r: &AdReport) -> Result<()> {
    let z = &r.query.z;
    let fail = |what: String| Err(Error::InvalidQuery(format!("certificate failed: {what}")));
    for (i, basis) in r.nm_bases.iter().enumerate() {
        for x in basis {
            if !ad_power(z, x, i as u32 + 1)?.is_zero() {
                return fail(format!("{x} in ker ad^{}", i + 1));
            }
        }
    }
    for b in &r.eigen {
        for x in &b.d_basis {
            if z.bracket(x)? != x.scale(&b.lambda) {
                return fail(format!("{x} in D(z, {})", b.lambda));
            }
        }
        for (k, basis) in b.fk_bases.iter().enumerate() {
            for x in basis {
                if !shifted_power(z, x, &b.lambda, k as u32 + 1)?.is_zero() {
                    return fail(format!("{x} in F^{k}(z, {})", b.lambda));
                }
            }
        }
    }
    Ok(())
}

/// `(ad_z - lambda)^k (x)`.
pub fn shifted_power(z: &Element, x: &Element, lambda: &Rat, k: u32) -> Result<Element> {
    let mut cur = x.clone();
    for _ in 0..k {
        if cur.is_zero() {
            break;
        }
        cur = z.bracket(&cur)?.try_sub(&cur.scale(lambda))?;
    }
    Ok(cur)
}
