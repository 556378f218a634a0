//! Evidence-graded classification of an element into the eight types.

use std::fmt;

use num_traits::{Signed, Zero};

use super::report::{shifted_power, subspace_bases_with, AdQuery, AdReport};
use super::spectrum::{is_power_of_x, is_squarefree, local_min_poly, LocalMinPoly};
use crate::algebra::{ad_power, Degree, Element};
use crate::error::Result;
use crate::linalg::{Rat, UniPolyQ};
use crate::par::Exec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Omega0,
    Omega0Weak,
    Omega1,
    Omega1Weak,
    Omega2,
    Omega2Weak,
    Omega3,
    Omega3Weak,
    Undetermined,
}

impl Label {
    pub const ALL: [Label; 8] = [
        Label::Omega0,
        Label::Omega0Weak,
        Label::Omega1,
        Label::Omega1Weak,
        Label::Omega2,
        Label::Omega2Weak,
        Label::Omega3,
        Label::Omega3Weak,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Omega0 => "Ω0",
            Label::Omega0Weak => "Ω0′",
            Label::Omega1 => "Ω1",
            Label::Omega1Weak => "Ω1′",
            Label::Omega2 => "Ω2",
            Label::Omega2Weak => "Ω2′",
            Label::Omega3 => "Ω3",
            Label::Omega3Weak => "Ω3′",
            Label::Undetermined => "undetermined",
        }
    }

    /// `F(z) = P` (the unprimed labels).
    pub fn is_strict(self) -> bool {
        matches!(self, Label::Omega0 | Label::Omega1 | Label::Omega2 | Label::Omega3)
    }

    /// Index 0..=3 of the family, ignoring strictness.
    pub fn family(self) -> Option<u8> {
        match self {
            Label::Omega0 | Label::Omega0Weak => Some(0),
            Label::Omega1 | Label::Omega1Weak => Some(1),
            Label::Omega2 | Label::Omega2Weak => Some(2),
            Label::Omega3 | Label::Omega3Weak => Some(3),
            Label::Undetermined => None,
        }
    }

    pub fn from_family(family: u8, strict: bool) -> Label {
        match (family, strict) {
            (0, true) => Label::Omega0,
            (0, false) => Label::Omega0Weak,
            (1, true) => Label::Omega1,
            (1, false) => Label::Omega1Weak,
            (2, true) => Label::Omega2,
            (2, false) => Label::Omega2Weak,
            (3, true) => Label::Omega3,
            (3, false) => Label::Omega3Weak,
            _ => Label::Undetermined,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grade {
    Proven,
    ConsistentUpToBound,
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Grade::Proven => "Proven",
            Grade::ConsistentUpToBound => "ConsistentUpToBound",
        })
    }
}

/// Exact certificate of a strict inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `ad_z x != 0` and `ad_z^2 x = 0`: `x` lies in `N(z)` but not in `C(z)`,
    /// hence also in `F(z)` but not in `D(z)`.
    Nilpotent { x: Element },
    /// `{z, x} = lambda x` with `lambda != 0` and `x != 0`.
    Eigen { lambda: Rat, x: Element },
    /// `(ad_z - lambda) x != 0` and `(ad_z - lambda)^2 x = 0`.
    GeneralizedEigen { lambda: Rat, x: Element },
    /// `factor(ad_z) x = 0` for nonzero `x` and a factor with no rational roots:
    /// `x` is in `F(z)` but outside `N(z)`.
    NonRational { x: Element, factor: UniPolyQ },
}

impl Witness {
    pub fn element(&self) -> &Element {
        match self {
            Witness::Nilpotent { x }
            | Witness::Eigen { x, .. }
            | Witness::GeneralizedEigen { x, .. }
            | Witness::NonRational { x, .. } => x,
        }
    }

    /// Checks the defining relations exactly.
    pub fn verify(&self, z: &Element) -> Result<bool> {
        Ok(match self {
            Witness::Nilpotent { x } => {
                !z.bracket(x)?.is_zero() && ad_power(z, x, 2)?.is_zero()
            }
            Witness::Eigen { lambda, x } => {
                !lambda.is_zero() && !x.is_zero() && z.bracket(x)? == x.scale(lambda)
            }
            Witness::GeneralizedEigen { lambda, x } => {
                !shifted_power(z, x, lambda, 1)?.is_zero() && shifted_power(z, x, lambda, 2)?.is_zero()
            }
            Witness::NonRational { x, factor } => {
                let no_roots = factor.degree().is_some_and(|d| d >= 2)
                    && factor.rational_roots()?.roots.is_empty();
                no_roots && !x.is_zero() && apply_poly(z, factor, x)?.is_zero()
            }
        })
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Nilpotent { x } => write!(f, "nilpotent chain at {x}"),
            Witness::Eigen { lambda, x } => write!(f, "eigenvector {x} for {lambda}"),
            Witness::GeneralizedEigen { lambda, x } => {
                write!(f, "generalized eigenvector {x} for {lambda}")
            }
            Witness::NonRational { x, factor } => {
                write!(f, "{x} annihilated by {factor}")
            }
        }
    }
}

/// `f(ad_z)(x)`.
pub fn apply_poly(z: &Element, f: &UniPolyQ, x: &Element) -> Result<Element> {
    let mut out = x.algebra().zero();
    let mut cur = x.clone();
    for (i, c) in f.coeffs().iter().enumerate() {
        if i > 0 {
            cur = z.bracket(&cur)?;
        }
        if !c.is_zero() {
            out = out.try_add(&cur.scale(c))?;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// Equality of the subalgebras themselves.
    ProvenEqual,
    /// Equality holds on the computed slice.
    ProvenEqualOnSlice,
    ProvenProper(Witness),
    /// Strict on the computed slice, without a certificate.
    ProperOnEvidence,
    /// Read off from factor verdicts through a composition rule.
    ByRule { proper: bool },
    Unknown,
}

/// Comparison of two of the subalgebras `C ⊆ N ⊆ F ⊆ P` or `D ⊆ F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationStatus {
    pub kind: RelationKind,
    pub bound_used: (u32, u32),
    pub reason: String,
}

impl RelationStatus {
    fn new(kind: RelationKind, bound: (u32, u32), reason: impl Into<String>) -> Self {
        RelationStatus {
            kind,
            bound_used: bound,
            reason: reason.into(),
        }
    }

    pub fn is_proper(&self) -> bool {
        matches!(
            self.kind,
            RelationKind::ProvenProper(_)
                | RelationKind::ProperOnEvidence
                | RelationKind::ByRule { proper: true }
        )
    }

    pub fn is_equal(&self) -> bool {
        matches!(
            self.kind,
            RelationKind::ProvenEqual
                | RelationKind::ProvenEqualOnSlice
                | RelationKind::ByRule { proper: false }
        )
    }

    /// Holds for the subalgebras themselves, not just on a slice.
    pub fn is_proven(&self) -> bool {
        matches!(
            self.kind,
            RelationKind::ProvenEqual | RelationKind::ProvenProper(_) | RelationKind::ByRule { .. }
        )
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            RelationKind::ProvenEqual => "ProvenEqual",
            RelationKind::ProvenEqualOnSlice => "ProvenEqualOnSlice",
            RelationKind::ProvenProper(_) => "ProvenProper",
            RelationKind::ProperOnEvidence => "ProperOnEvidence",
            RelationKind::ByRule { .. } => "ByRule",
            RelationKind::Unknown => "Unknown",
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.kind {
            RelationKind::ProvenProper(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvStatus {
    OnlyZeroFound,
    NonzeroWitness { lambda: Rat, x: Element },
}

#[derive(Clone, Debug)]
pub struct TypeVerdict {
    /// The classified element (absent for verdicts built from composition rules).
    pub element: Option<Element>,
    pub ev_status: EvStatus,
    pub rel_cn: RelationStatus,
    pub rel_nf: RelationStatus,
    pub rel_df: RelationStatus,
    pub rel_fp: RelationStatus,
    pub label: Label,
    pub grade: Grade,
    pub notes: Vec<String>,
}

pub fn classify(z: &Element, n: u32, m: u32) -> Result<TypeVerdict> {
    classify_with(&AdQuery::new(z, n, m)?, Exec::default())
}

/// Whether `z` commutes with every generator.
pub fn is_central(z: &Element) -> Result<bool> {
    for g in z.algebra().generators() {
        if !g.bracket(z)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Local minimal polynomials of all generator orbits, if every orbit closes in `P_{<=n}`.
fn generator_orbits(z: &Element, n: u32) -> Result<Vec<Option<LocalMinPoly>>> {
    z.algebra()
        .generators()
        .iter()
        .map(|g| local_min_poly(z, g, n))
        .collect()
}

/// Everything read off the generator orbits.
struct OrbitFacts {
    all_closed: bool,
    all_nilpotent: bool,
    all_semisimple: bool,
    eigen: Option<Witness>,
    generalized: Option<Witness>,
    nilpotent: Option<Witness>,
    non_rational: Option<Witness>,
}

fn orbit_facts(z: &Element, orbits: &[Option<LocalMinPoly>]) -> Result<OrbitFacts> {
    let closed: Vec<&LocalMinPoly> = orbits.iter().flatten().collect();
    let all_closed = closed.len() == orbits.len();
    let mut facts = OrbitFacts {
        all_closed,
        all_nilpotent: all_closed && closed.iter().all(|o| is_power_of_x(&o.poly)),
        all_semisimple: false,
        eigen: None,
        generalized: None,
        nilpotent: None,
        non_rational: None,
    };
    let mut split_squarefree = all_closed;
    for o in &closed {
        let roots = o.poly.rational_roots()?;
        split_squarefree &= roots.remainder_degree == 0 && is_squarefree(&o.poly);
        let mut rational_part = UniPolyQ::one();
        for (lambda, mult) in &roots.roots {
            let lin = UniPolyQ::linear_root(lambda);
            for _ in 0..*mult {
                rational_part = rational_part.mul(&lin);
            }
            let (cof, _) = o.poly.div_rem(&lin)?;
            if !lambda.is_zero() && facts.eigen.is_none() {
                facts.eigen = Some(Witness::Eigen {
                    lambda: lambda.clone(),
                    x: o.apply(&cof),
                });
            }
            if *mult >= 2 {
                let (cof2, _) = cof.div_rem(&lin)?;
                let x = o.apply(&cof2);
                if lambda.is_zero() {
                    facts.nilpotent.get_or_insert(Witness::Nilpotent { x });
                } else {
                    facts.generalized.get_or_insert(Witness::GeneralizedEigen {
                        lambda: lambda.clone(),
                        x,
                    });
                }
            }
        }
        if roots.remainder_degree > 0 && facts.non_rational.is_none() {
            let (factor, _) = o.poly.div_rem(&rational_part)?;
            facts.non_rational = Some(Witness::NonRational {
                x: o.apply(&rational_part),
                factor: factor.monic(),
            });
        }
    }
    facts.all_semisimple = split_squarefree;
    for w in [&facts.eigen, &facts.generalized, &facts.nilpotent, &facts.non_rational]
        .into_iter()
        .flatten()
    {
        assert!(w.verify(z)?, "orbit witness failed verification");
    }
    Ok(facts)
}

fn smallest(mut xs: Vec<Element>) -> Option<Element> {
    xs.sort_by_key(|x| (x.degree(), x.len()));
    xs.into_iter().next()
}

/// `x` with `ad x != 0 = ad^2 x`, from the nilpotent slices.
fn nilpotent_witness(z: &Element, r: &AdReport) -> Result<Option<Witness>> {
    let c_dim = r.c_basis.len();
    let Some(level) = r.nm_bases.iter().position(|b| b.len() > c_dim) else {
        return Ok(None);
    };
    let mut candidates = Vec::new();
    for x in &r.nm_bases[level] {
        let mut cur = x.clone();
        if z.bracket(&cur)?.is_zero() {
            continue;
        }
        while !ad_power(z, &cur, 2)?.is_zero() {
            cur = z.bracket(&cur)?;
        }
        candidates.push(cur);
    }
    Ok(smallest(candidates).map(|x| Witness::Nilpotent { x }))
}

/// Eigenvector for the nonzero eigenvalue of least absolute value, positive first.
fn eigen_witness(r: &AdReport) -> Option<Witness> {
    r.ev_found
        .iter()
        .filter(|e| !e.lambda.is_zero())
        .min_by_key(|e| (e.lambda.abs(), e.lambda.is_negative()))
        .map(|e| Witness::Eigen {
            lambda: e.lambda.clone(),
            x: e.witness.clone(),
        })
}

fn generalized_witness(z: &Element, r: &AdReport) -> Result<Option<Witness>> {
    for b in r.eigen.iter().filter(|b| !b.lambda.is_zero()) {
        if b.fk_bases.len() < 2 || b.fk_bases[1].len() == b.d_basis.len() {
            continue;
        }
        let mut candidates = Vec::new();
        for x in &b.fk_bases[1] {
            if !shifted_power(z, x, &b.lambda, 1)?.is_zero() {
                candidates.push(x.clone());
            }
        }
        if let Some(x) = smallest(candidates) {
            return Ok(Some(Witness::GeneralizedEigen {
                lambda: b.lambda.clone(),
                x,
            }));
        }
    }
    Ok(None)
}

pub fn classify_with(query: &AdQuery, exec: Exec) -> Result<TypeVerdict> {
    let z = &query.z;
    let bound = (query.n, query.m);
    let status = |k: RelationKind, why: &str| RelationStatus::new(k, bound, why);

    if is_central(z)? {
        let eq = || status(RelationKind::ProvenEqual, "z is central");
        return Ok(TypeVerdict {
            element: Some(z.clone()),
            ev_status: EvStatus::OnlyZeroFound,
            rel_cn: eq(),
            rel_nf: eq(),
            rel_df: eq(),
            rel_fp: eq(),
            label: Label::Omega0,
            grade: Grade::Proven,
            notes: Vec::new(),
        });
    }

    let report = subspace_bases_with(query, exec)?;
    let orbits = facts_or_default(z, query.n)?;
    let mut notes = Vec::new();

    let eigen = eigen_witness(&report).or(orbits.eigen.clone());
    let nilpotent = match nilpotent_witness(z, &report)? {
        Some(w) => Some(w),
        None => orbits.nilpotent.clone(),
    };
    let generalized = match generalized_witness(z, &report)? {
        Some(w) => Some(w),
        None => orbits.generalized.clone(),
    };
    for w in [&eigen, &nilpotent, &generalized].into_iter().flatten() {
        assert!(w.verify(z)?, "witness failed verification");
    }
    if report.irrational_flag {
        notes.push("characteristic polynomial on the invariant slice has non-rational roots".into());
    }

    let degree_rule = match (z.degree(), z.algebra().delta()) {
        (Degree::Finite(d), Some(delta)) => d <= delta,
        _ => false,
    };

    let rel_cn = if let Some(w) = nilpotent.clone() {
        status(RelationKind::ProvenProper(w), "nilpotent chain outside the centralizer")
    } else if orbits.all_semisimple {
        status(RelationKind::ProvenEqual, "generator orbits are semisimple, so D = P and N = C")
    } else if report.n_stabilized && report.n_basis().len() == report.c_basis.len() {
        status(RelationKind::ProvenEqualOnSlice, "kernels of ad^m agree with the centralizer on the slice")
    } else {
        status(RelationKind::Unknown, "nilpotent kernels did not stabilize")
    };

    let rel_nf = if let Some(w) = eigen.clone() {
        status(RelationKind::ProvenProper(w), "nonzero eigenvalue")
    } else if let Some(w) = orbits.non_rational.clone() {
        status(RelationKind::ProvenProper(w), "generator orbit with non-rational spectrum")
    } else if orbits.all_nilpotent {
        status(RelationKind::ProvenEqual, "every generator orbit is nilpotent, so N = P")
    } else if !report.irrational_flag {
        status(RelationKind::ProvenEqualOnSlice, "only the eigenvalue 0 on the invariant slice")
    } else {
        status(RelationKind::Unknown, "spectrum on the slice is not rational")
    };

    let rel_df = if let Some(w) = generalized.clone().or(nilpotent.clone()) {
        status(RelationKind::ProvenProper(w), "generalized eigenvector outside D")
    } else if orbits.all_semisimple {
        status(RelationKind::ProvenEqual, "generator orbits are semisimple, so D = P")
    } else if report.eigen.iter().all(|b| b.fk_bases.len() < 2 || b.fk_bases[1].len() == b.d_basis.len())
        && rel_cn.is_equal()
    {
        status(RelationKind::ProvenEqualOnSlice, "generalized eigenspaces equal eigenspaces on the slice")
    } else {
        status(RelationKind::Unknown, "generalized eigenspaces did not settle")
    };

    let rel_fp = if degree_rule {
        status(RelationKind::ProvenEqual, "deg z <= delta, so ad_z preserves every slice")
    } else if orbits.all_closed {
        status(RelationKind::ProvenEqual, "every generator has a finite orbit, so F = P")
    } else if report.f_slice()?.len() == report.slice_dim {
        status(RelationKind::ProvenEqualOnSlice, "finite orbits span the slice")
    } else {
        status(RelationKind::ProperOnEvidence, "finite orbits miss part of the slice")
    };

    let ev_status = match &eigen {
        Some(Witness::Eigen { lambda, x }) => EvStatus::NonzeroWitness {
            lambda: lambda.clone(),
            x: x.clone(),
        },
        _ => EvStatus::OnlyZeroFound,
    };

    let strict = if rel_fp.is_equal() {
        Some(true)
    } else if rel_fp.is_proper() {
        Some(false)
    } else {
        None
    };
    let family = if eigen.is_some() {
        if rel_df.is_proper() {
            Some(3)
        } else if rel_df.is_equal() {
            Some(2)
        } else {
            None
        }
    } else if orbits.non_rational.is_some() {
        notes.push("F and N differ but no rational eigenvalue was found".into());
        None
    } else if !rel_nf.is_equal() {
        None
    } else if rel_cn.is_proper() {
        Some(1)
    } else if rel_cn.is_equal() {
        if strict == Some(true) {
            notes.push("C = N = F = P on the slice contradicts a noncentral z".into());
            None
        } else {
            Some(0)
        }
    } else {
        None
    };
    let label = match (family, strict) {
        (Some(f), Some(s)) => Label::from_family(f, s),
        _ => Label::Undetermined,
    };
    let proven = match label {
        Label::Omega1 => rel_nf.is_proven() && rel_cn.is_proven() && rel_fp.is_proven(),
        Label::Omega2 | Label::Omega3 => rel_df.is_proven() && rel_fp.is_proven(),
        _ => false,
    };
    Ok(TypeVerdict {
        element: Some(z.clone()),
        ev_status,
        rel_cn,
        rel_nf,
        rel_df,
        rel_fp,
        label,
        grade: if proven {
            Grade::Proven
        } else {
            Grade::ConsistentUpToBound
        },
        notes,
    })
}

fn facts_or_default(z: &Element, n: u32) -> Result<OrbitFacts> {
    orbit_facts(z, &generator_orbits(z, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{hom_apply, AlgebraSpec};
    use crate::linalg::rat;
    use crate::tensor::TensorAlgebraSpec;

    #[test]
    fn weyl_examples() {
        let a = AlgebraSpec::weyl(1);
        let (p, q) = (a.p(0), a.q(0));
        let v = classify(&p, 6, 8).unwrap();
        assert_eq!((v.label, v.grade), (Label::Omega1, Grade::Proven));
        let v = classify(&(&p * &q), 6, 8).unwrap();
        assert_eq!((v.label, v.grade), (Label::Omega2, Grade::Proven));
        assert!(matches!(v.ev_status, EvStatus::NonzeroWitness { .. }));
        let v = classify(&a.constant(rat(4)), 3, 3).unwrap();
        assert_eq!((v.label, v.grade), (Label::Omega0, Grade::Proven));
    }

    #[test]
    fn gamma_examples() {
        let a = AlgebraSpec::weyl(1);
        let t = TensorAlgebraSpec::new(&a, &a).unwrap();
        let (p, q) = (a.p(0), a.q(0));
        let g = t.build_gamma(&p, &(&p * &q)).unwrap();
        let v = classify(&g, 4, 6).unwrap();
        assert_eq!((v.label, v.grade), (Label::Omega3, Grade::Proven));
        let w = v.rel_df.witness().unwrap();
        assert!(w.verify(&g).unwrap());
        let v = classify(&t.build_gamma(&p, &p).unwrap(), 4, 6).unwrap();
        assert_eq!((v.label, v.grade), (Label::Omega1, Grade::Proven));
    }

    #[test]
    fn sheared_elements_keep_their_type() {
        let a = AlgebraSpec::weyl(1);
        let (p, q) = (a.p(0), a.q(0));
        let imgs = vec![p.clone(), &q + &p.pow(2)];
        for z in [p.clone(), &p * &q, &p + &q] {
            let before = classify(&z, 6, 8).unwrap();
            let az = hom_apply(&imgs, &z).unwrap();
            let after = classify(&az, 6, 8).unwrap();
            assert_eq!(before.label, after.label, "{z} vs {az}");
        }
    }

    #[test]
    fn theta_is_weakly_central() {
        let a = AlgebraSpec::weyl(1);
        let t = TensorAlgebraSpec::new(&a, &a).unwrap();
        let h = &a.p(0) * &a.q(0);
        let v = classify(&t.build_theta(&h, &h).unwrap(), 4, 4).unwrap();
        assert_eq!((v.label, v.grade), (Label::Omega0Weak, Grade::ConsistentUpToBound));
    }

    #[test]
    fn witnesses_reject_wrong_claims() {
        let a = AlgebraSpec::weyl(1);
        let (p, q) = (a.p(0), a.q(0));
        let h = &p * &q;
        assert!(Witness::Eigen { lambda: rat(1), x: p.clone() }.verify(&h).unwrap());
        assert!(!Witness::Eigen { lambda: rat(2), x: p.clone() }.verify(&h).unwrap());
        assert!(Witness::Nilpotent { x: q.clone() }.verify(&p).unwrap());
        assert!(!Witness::Nilpotent { x: q.pow(2) }.verify(&p).unwrap());
        assert!(!Witness::GeneralizedEigen { lambda: rat(1), x: p.clone() }.verify(&h).unwrap());
    }
}
