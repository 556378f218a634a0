//! Types of `z1 (x) z2` and `z1 (x) 1 + 1 (x) z2` from the types of the factors.

use super::classify::{EvStatus, Grade, Label, RelationKind, RelationStatus, TypeVerdict};
use crate::error::{Error, Result};
use crate::gr::GrCertificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompositeKind {
    /// `z1 (x) z2`
    Theta,
    /// `z1 (x) 1 + 1 (x) z2`
    Gamma,
}

#[derive(Clone, Debug)]
pub struct CompositeHypotheses {
    /// Certificates for both factor algebras; the theta rule for two noncentral
    /// factors needs commutative graded brackets.
    pub gr_certificates: Option<(GrCertificate, GrCertificate)>,
    /// Reject factor verdicts that are not graded `Proven`.
    pub require_proven: bool,
}

impl Default for CompositeHypotheses {
    fn default() -> Self {
        CompositeHypotheses {
            gr_certificates: None,
            require_proven: true,
        }
    }
}

impl CompositeHypotheses {
    fn gr_commutative(&self) -> bool {
        self.gr_certificates
            .as_ref()
            .is_some_and(|(a, b)| a.commutative && b.commutative)
    }
}

/// Whether `C(z) ⊊ N(z)`, as far as the verdict says.
fn c_proper_in_n(v: &TypeVerdict) -> Option<bool> {
    match v.label {
        Label::Omega1 | Label::Omega1Weak => Some(true),
        Label::Omega0 | Label::Omega0Weak | Label::Omega2 | Label::Omega2Weak => Some(false),
        _ if v.rel_cn.is_proven() => Some(v.rel_cn.is_proper()),
        _ => None,
    }
}

fn not_proven(msg: impl Into<String>) -> Error {
    Error::HypothesisNotProven(msg.into())
}

/// Whether the element behind a central verdict is a nonzero scalar
/// (`Some(false)` for zero or a non-scalar central element).
fn central_scalar(v: &TypeVerdict) -> Result<bool> {
    let z = v
        .element
        .as_ref()
        .ok_or_else(|| not_proven("central factor without its element"))?;
    Ok(z.is_constant() && !z.is_zero())
}

pub fn classify_composite(
    kind: CompositeKind,
    v1: &TypeVerdict,
    v2: &TypeVerdict,
    hyp: &CompositeHypotheses,
) -> Result<TypeVerdict> {
    for v in [v1, v2] {
        if v.label == Label::Undetermined {
            return Err(not_proven("factor type is undetermined"));
        }
        if hyp.require_proven && v.grade != Grade::Proven {
            return Err(not_proven(format!("factor verdict {} is not proven", v.label)));
        }
    }
    let (label, rule) = match kind {
        CompositeKind::Theta => theta_rule(v1, v2, hyp)?,
        CompositeKind::Gamma => gamma_rule(v1, v2)?,
    };
    let grade = if label.is_strict() && v1.grade == Grade::Proven && v2.grade == Grade::Proven {
        Grade::Proven
    } else {
        Grade::ConsistentUpToBound
    };
    Ok(verdict_from_label(label, grade, rule))
}

fn zero_factor(v: &TypeVerdict) -> bool {
    v.element.as_ref().is_some_and(|z| z.is_zero())
}

fn theta_rule(v1: &TypeVerdict, v2: &TypeVerdict, hyp: &CompositeHypotheses) -> Result<(Label, String)> {
    let c1 = v1.label == Label::Omega0;
    let c2 = v2.label == Label::Omega0;
    if zero_factor(v1) || zero_factor(v2) || (c1 && c2) {
        return Ok((Label::Omega0, "theta of central factors is central".into()));
    }
    if c1 || c2 {
        let (central, other) = if c1 { (v1, v2) } else { (v2, v1) };
        if central_scalar(central)? {
            return Ok((other.label, "a scalar factor leaves the type unchanged".into()));
        }
        // F(theta) = P (x) N(z), D(theta) = P (x) C(z): nilpotent exactly when C(z) ⊊ N(z)
        let label = match c_proper_in_n(other) {
            Some(true) => Label::from_family(1, other.label == Label::Omega1),
            Some(false) => Label::Omega0Weak,
            None => return Err(not_proven("centralizer against nilpotent part of the noncentral factor")),
        };
        return Ok((label, "non-scalar central factor: F(theta) = P (x) N(z)".into()));
    }
    if !hyp.gr_commutative() {
        return Err(not_proven("graded brackets of the factor algebras are not certified commutative"));
    }
    let (n1, n2) = (c_proper_in_n(v1), c_proper_in_n(v2));
    let label = match (n1, n2) {
        (Some(true), _) | (_, Some(true)) => {
            Label::from_family(1, v1.label == Label::Omega1 && v2.label == Label::Omega1)
        }
        (Some(false), Some(false)) => Label::Omega0Weak,
        _ => return Err(not_proven("centralizer against nilpotent part of a factor")),
    };
    Ok((label, "noncentral factors: F(theta) = N(theta) = N(z1) (x) N(z2)".into()))
}

fn gamma_rule(v1: &TypeVerdict, v2: &TypeVerdict) -> Result<(Label, String)> {
    let (l1, l2) = (v1.label, v2.label);
    if l1 == Label::Omega0 {
        return Ok((l2, "central first factor: gamma has the type of the second".into()));
    }
    if l2 == Label::Omega0 {
        return Ok((l1, "central second factor: gamma has the type of the first".into()));
    }
    let strict = l1.is_strict() && l2.is_strict();
    let (f1, f2) = (l1.family().expect("determined"), l2.family().expect("determined"));
    let rule = |s: &str| s.to_string();
    Ok(match (f1, f2) {
        (3, _) | (_, 3) => (Label::from_family(3, strict), rule("a Jordan factor makes gamma Jordan")),
        (0, f) | (f, 0) => (
            Label::from_family(f, false),
            rule("a weakly central factor keeps the other family and drops strictness"),
        ),
        (1, 1) => (Label::from_family(1, strict), rule("F = N for both factors: gamma is nilpotent")),
        (2, 2) => (Label::from_family(2, strict), rule("F = D for both factors: gamma is semisimple")),
        _ => (Label::from_family(3, strict), rule("one nilpotent and one semisimple factor: gamma is Jordan")),
    })
}

/// Relation statuses implied by a label.
fn verdict_from_label(label: Label, grade: Grade, rule: String) -> TypeVerdict {
    let by = |proper: bool| RelationStatus {
        kind: RelationKind::ByRule { proper },
        bound_used: (0, 0),
        reason: rule.clone(),
    };
    let unknown = || RelationStatus {
        kind: RelationKind::Unknown,
        bound_used: (0, 0),
        reason: rule.clone(),
    };
    let family = label.family().expect("rules produce a label");
    let strict = label.is_strict();
    let (cn, nf, df) = match family {
        0 => (by(false), by(false), by(false)),
        1 => (by(true), by(false), by(true)),
        2 => (by(false), by(true), by(false)),
        _ => (unknown(), by(true), by(true)),
    };
    let fp = by(!strict);
    TypeVerdict {
        element: None,
        ev_status: EvStatus::OnlyZeroFound,
        rel_cn: cn,
        rel_nf: nf,
        rel_df: df,
        rel_fp: fp,
        label,
        grade,
        notes: vec![rule],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ad::classify;
    use crate::algebra::AlgebraSpec;
    use crate::gr::gr_commutative;
    use crate::linalg::rat;

    fn hyp() -> CompositeHypotheses {
        let a = AlgebraSpec::weyl(1);
        CompositeHypotheses {
            gr_certificates: Some((gr_commutative(&a, 4), gr_commutative(&a, 4))),
            require_proven: true,
        }
    }

    #[test]
    fn theta_table() {
        let a = AlgebraSpec::weyl(1);
        let (p, q) = (a.p(0), a.q(0));
        let vp = classify(&p, 4, 6).unwrap();
        let vh = classify(&(&p * &q), 4, 6).unwrap();
        let t = classify_composite(CompositeKind::Theta, &vp, &vp, &hyp()).unwrap();
        assert_eq!((t.label, t.grade), (Label::Omega1, Grade::Proven));
        let t = classify_composite(CompositeKind::Theta, &vh, &vh, &hyp()).unwrap();
        assert_eq!(t.label, Label::Omega0Weak);
        let t = classify_composite(CompositeKind::Theta, &vp, &vh, &hyp()).unwrap();
        assert_eq!(t.label, Label::Omega1Weak);
        // without the graded certificate the rule does not apply
        assert!(matches!(
            classify_composite(CompositeKind::Theta, &vh, &vh, &CompositeHypotheses::default()),
            Err(Error::HypothesisNotProven(_))
        ));
        let vc = classify(&a.constant(rat(3)), 2, 2).unwrap();
        let t = classify_composite(CompositeKind::Theta, &vc, &vh, &CompositeHypotheses::default()).unwrap();
        assert_eq!(t.label, Label::Omega2);
    }

    #[test]
    fn gamma_table() {
        let a = AlgebraSpec::weyl(1);
        let (p, q) = (a.p(0), a.q(0));
        let vp = classify(&p, 4, 6).unwrap();
        let vh = classify(&(&p * &q), 4, 6).unwrap();
        let h = CompositeHypotheses::default();
        let g = classify_composite(CompositeKind::Gamma, &vp, &vh, &h).unwrap();
        assert_eq!((g.label, g.grade), (Label::Omega3, Grade::Proven));
        let g = classify_composite(CompositeKind::Gamma, &vp, &vp, &h).unwrap();
        assert_eq!(g.label, Label::Omega1);
        let g = classify_composite(CompositeKind::Gamma, &vh, &vh, &h).unwrap();
        assert_eq!(g.label, Label::Omega2);
    }

    #[test]
    fn weak_factors_need_opt_in() {
        let a = AlgebraSpec::weyl(1);
        let t = crate::tensor::TensorAlgebraSpec::new(&a, &a).unwrap();
        let h = &a.p(0) * &a.q(0);
        let weak = classify(&t.build_theta(&h, &h).unwrap(), 4, 4).unwrap();
        let vp = classify(&a.p(0), 4, 6).unwrap();
        assert!(classify_composite(CompositeKind::Gamma, &weak, &vp, &CompositeHypotheses::default()).is_err());
        let relaxed = CompositeHypotheses {
            require_proven: false,
            ..Default::default()
        };
        let g = classify_composite(CompositeKind::Gamma, &weak, &vp, &relaxed).unwrap();
        assert_eq!((g.label, g.grade), (Label::Omega1Weak, Grade::ConsistentUpToBound));
    }
}
