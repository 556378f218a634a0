//! Growth of `V^n` for a finite generating subspace, and right algebraic
//! independence probes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::algebra::{check_same, Element, Mono};
use crate::error::{Error, Result};
use crate::linalg::Rat;
use crate::par::Exec;
use crate::span::{combine, leading_echelon, relations};

/// Span kept as elements with distinct leading monomials, each with leading coefficient 1.
#[derive(Clone, Debug, Default)]
struct LeadingTable {
    rows: BTreeMap<Mono, Element>,
}

impl LeadingTable {
    fn reduce(&self, x: &Element) -> Element {
        let mut x = x.clone();
        while let Some((m, c)) = x.leading().map(|(m, c)| (m.clone(), c.clone())) {
            match self.rows.get(&m) {
                Some(row) => x = &x - &row.scale(&c),
                None => break,
            }
        }
        x
    }

    /// Adds `x` if it is new; returns the reduced element that was inserted.
    fn insert(&mut self, x: &Element) -> Option<Element> {
        let r = self.reduce(x);
        let (m, c) = r.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let r = r.scale(&(Rat::from_integer(1.into()) / c));
        self.rows.insert(m, r.clone());
        Some(r)
    }

    fn len(&self) -> usize {
        self.rows.len()
    }
}

#[derive(Clone, Debug)]
pub struct GrowthProfile {
    pub generator_set: Vec<Element>,
    /// `dims[n - 1] = dim V^n`.
    pub dims: Vec<usize>,
    /// Local log-log slopes `(log d_n - log d_{n-1}) / (log n - log(n-1))`, absent at `n = 1`.
    pub slope_estimates: Vec<Option<f64>>,
    /// `log d_n / log n`, absent at `n = 1`.
    pub ratio_estimates: Vec<Option<f64>>,
    /// Least-squares slope of `log d_n` against `log n` over the last third of the range.
    pub gk_estimate: Option<f64>,
}

impl GrowthProfile {
    /// `n,dim,slope` rows with a header; the slope cell is empty at `n = 1`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,dim,slope\n");
        for (i, (d, s)) in self.dims.iter().zip(&self.slope_estimates).enumerate() {
            let slope = s.map(|s| format!("{s:.6}")).unwrap_or_default();
            writeln!(out, "{},{},{}", i + 1, d, slope).expect("write to string");
        }
        out
    }
}

pub fn gk_profile(gens: &[Element], n_max: u32) -> Result<GrowthProfile> {
    gk_profile_with(gens, n_max, Exec::default())
}

pub fn gk_profile_with(gens: &[Element], n_max: u32, exec: Exec) -> Result<GrowthProfile> {
    let first = gens.first().ok_or(Error::EmptyGenerators)?;
    let alg = first.algebra().clone();
    for g in gens {
        check_same(&alg, g.algebra())?;
    }
    let mut table = LeadingTable::default();
    let mut frontier: Vec<Element> = gens.iter().filter_map(|g| table.insert(g)).collect();
    if !table.reduce(&alg.one()).is_zero() {
        return Err(Error::InvalidQuery("the generating subspace must contain 1".into()));
    }
    let v: Vec<Element> = frontier.clone();
    let mut dims = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        if n > 1 {
            // V^n = V^{n-1} + (new part of V^{n-1}) V
            let pairs: Vec<(usize, usize)> = (0..frontier.len())
                .flat_map(|i| (0..v.len()).map(move |j| (i, j)))
                .collect();
            let products = exec.map(&pairs, |&(i, j)| &frontier[i] * &v[j]);
            frontier = products.iter().filter_map(|x| table.insert(x)).collect();
        }
        dims.push(table.len());
    }
    let logs: Vec<(f64, f64)> = dims
        .iter()
        .enumerate()
        .map(|(i, &d)| (((i + 1) as f64).ln(), (d as f64).ln()))
        .collect();
    let slope_estimates = (0..logs.len())
        .map(|i| (i > 0).then(|| (logs[i].1 - logs[i - 1].1) / (logs[i].0 - logs[i - 1].0)))
        .collect();
    let ratio_estimates = logs
        .iter()
        .map(|&(ln_n, ln_d)| (ln_n > 0.0).then(|| ln_d / ln_n))
        .collect();
    let start = (2 * logs.len()).div_ceil(3).saturating_sub(1).max(1);
    let tail = logs.get(start..).unwrap_or(&[]);
    Ok(GrowthProfile {
        generator_set: gens.to_vec(),
        dims,
        slope_estimates,
        ratio_estimates,
        gk_estimate: least_squares_slope(tail),
    })
}

fn least_squares_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Independence {
    IndependentUpTo(u32),
    /// `coefficients[i]` multiplies `w^i` from the left; `sum a_i w^i = 0`.
    DependenceWitness { coefficients: Vec<Element> },
}

/// Tests linear independence of `b w^i` for `b` in a basis of `span(b_basis)` and
/// `0 <= i <= i_max`. Relations among the `b_basis` entries themselves are ignored.
pub fn independence_probe(w: &Element, b_basis: &[Element], i_max: u32) -> Result<Independence> {
    let alg = w.algebra();
    for b in b_basis {
        check_same(alg, b.algebra())?;
    }
    let b_basis = &leading_echelon(alg, b_basis)?;
    let powers: Vec<Element> = (0..=i_max).map(|i| w.pow(i)).collect();
    let mut products = Vec::with_capacity(powers.len() * b_basis.len());
    for wi in &powers {
        for b in b_basis {
            products.push(b.try_mul(wi)?);
        }
    }
    let Some(k) = relations(&products).into_iter().next() else {
        return Ok(Independence::IndependentUpTo(i_max));
    };
    let nb = b_basis.len();
    let coefficients: Vec<Element> = (0..=i_max as usize)
        .map(|i| combine(alg, b_basis, &k[i * nb..(i + 1) * nb]))
        .collect();
    let check = substitute(&coefficients, w)?;
    assert!(check.is_zero(), "dependence witness does not vanish");
    Ok(Independence::DependenceWitness { coefficients })
}

/// `sum a_i w^i` with coefficients on the left.
pub fn substitute(coefficients: &[Element], w: &Element) -> Result<Element> {
    let mut out = w.algebra().zero();
    let mut wi = w.algebra().one();
    for (i, a) in coefficients.iter().enumerate() {
        if i > 0 {
            wi = wi.try_mul(w)?;
        }
        out = out.try_add(&a.try_mul(&wi)?)?;
    }
    Ok(out)
}
