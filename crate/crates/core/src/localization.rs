//! Localization of a commutative (Class 1) algebra at the powers of one element `g`.
//!
//! Elements are `a / g^k` kept in canonical form: `k` is as small as exact
//! division allows.

use std::fmt;

use num_traits::Zero;

use crate::ad::TypeVerdict;
use crate::algebra::{check_same, AlgebraClass, Degree, Element};
use crate::error::{Error, Result};
use crate::linalg::Rat;

/// `x / g` when `g` divides `x` exactly.
pub fn exact_div(x: &Element, g: &Element) -> Result<Option<Element>> {
    check_same(x.algebra(), g.algebra())?;
    let alg = x.algebra();
    let (lg, cg) = g.leading().ok_or(Error::ZeroPolynomial)?;
    let (lg, cg) = (lg.clone(), cg.clone());
    let mut rest = x.clone();
    let mut quot = alg.zero();
    while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let Some(t) = m.checked_div(&lg) else {
            return Ok(None);
        };
        let term = alg.monomial(t, c / &cg);
        rest = rest.try_sub(&term.try_mul(g)?)?;
        quot = quot.try_add(&term)?;
    }
    Ok(Some(quot))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocElement {
    numerator: Element,
    denom_base: Element,
    denom_exp: u32,
}

fn mismatch(what: &str) -> Error {
    Error::LocalizationMismatch(what.into())
}

impl LocElement {
    /// `a / g^k` in canonical form.
    pub fn new(numerator: &Element, g: &Element, k: u32) -> Result<Self> {
        check_same(numerator.algebra(), g.algebra())?;
        if g.algebra().class() != AlgebraClass::Class1 {
            return Err(mismatch("localization needs a commutative (Class 1) algebra"));
        }
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut a = numerator.clone();
        let mut k = k;
        if a.is_zero() {
            k = 0;
        }
        while k > 0 {
            match exact_div(&a, g)? {
                Some(q) => {
                    a = q;
                    k -= 1;
                }
                None => break,
            }
        }
        Ok(LocElement {
            numerator: a,
            denom_base: g.clone(),
            denom_exp: k,
        })
    }

    /// `a / 1`.
    pub fn embed(a: &Element, g: &Element) -> Result<Self> {
        Self::new(a, g, 0)
    }

    /// `1 / g^k`.
    pub fn inverse_power(g: &Element, k: u32) -> Result<Self> {
        Self::new(&g.algebra().one(), g, k)
    }

    pub fn numerator(&self) -> &Element {
        &self.numerator
    }

    pub fn denom_base(&self) -> &Element {
        &self.denom_base
    }

    pub fn denom_exp(&self) -> u32 {
        self.denom_exp
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// The element of `P` when the denominator has cancelled.
    pub fn as_polynomial(&self) -> Option<&Element> {
        (self.denom_exp == 0).then_some(&self.numerator)
    }

    fn check_base(&self, other: &LocElement) -> Result<()> {
        if self.denom_base != other.denom_base {
            return Err(mismatch("denominator bases differ"));
        }
        Ok(())
    }

    fn g(&self) -> &Element {
        &self.denom_base
    }

    /// Numerator over `g^k` for some `k >= denom_exp`.
    fn numerator_at(&self, k: u32) -> Element {
        &self.numerator * &self.g().pow(k - self.denom_exp)
    }

    pub fn try_add(&self, other: &LocElement) -> Result<LocElement> {
        self.check_base(other)?;
        let k = self.denom_exp.max(other.denom_exp);
        LocElement::new(&self.numerator_at(k).try_add(&other.numerator_at(k))?, self.g(), k)
    }

    pub fn try_sub(&self, other: &LocElement) -> Result<LocElement> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> LocElement {
        LocElement {
            numerator: -&self.numerator,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Rat) -> LocElement {
        LocElement::new(&self.numerator.scale(c), self.g(), self.denom_exp).expect("same base")
    }

    pub fn pow(&self, e: u32) -> LocElement {
        LocElement::new(&self.numerator.pow(e), self.g(), self.denom_exp * e).expect("same base")
    }

    pub fn try_mul(&self, other: &LocElement) -> Result<LocElement> {
        loc_mul(self, other)
    }

    pub fn bracket(&self, other: &LocElement) -> Result<LocElement> {
        loc_bracket(self, other)
    }
}

pub fn loc_mul(a: &LocElement, b: &LocElement) -> Result<LocElement> {
    a.check_base(b)?;
    LocElement::new(&a.numerator.try_mul(&b.numerator)?, a.g(), a.denom_exp + b.denom_exp)
}

/// `{a s^-1, b t^-1} = (-a s^-1 {s,b} + a b t^-1 s^-1 {s,t} + {a,b} - b t^-1 {a,t}) (st)^-1`
/// with `s = g^ka`, `t = g^kb`.
pub fn loc_bracket(x: &LocElement, y: &LocElement) -> Result<LocElement> {
    x.check_base(y)?;
    let g = x.g();
    let (a, ka) = (&x.numerator, x.denom_exp);
    let (b, kb) = (&y.numerator, y.denom_exp);
    let (s, t) = (g.pow(ka), g.pow(kb));
    let term = |num: Element, k: u32| LocElement::new(&num, g, k);
    let t1 = term(-&a.try_mul(&s.bracket(b)?)?, ka)?;
    let t2 = term(a.try_mul(b)?.try_mul(&s.bracket(&t)?)?, ka + kb)?;
    let t3 = term(a.bracket(b)?, 0)?;
    let t4 = term(-&b.try_mul(&a.bracket(&t)?)?, kb)?;
    let sum = t1.try_add(&t2)?.try_add(&t3)?.try_add(&t4)?;
    loc_mul(&sum, &LocElement::inverse_power(g, ka + kb)?)
}

impl fmt::Display for LocElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.denom_exp {
            0 => write!(f, "{}", self.numerator),
            k => {
                let num = if self.numerator.len() > 1 {
                    format!("({})", self.numerator)
                } else {
                    self.numerator.to_string()
                };
                let base = if self.denom_base.len() > 1 {
                    format!("({})", self.denom_base)
                } else {
                    self.denom_base.to_string()
                };
                if k == 1 {
                    write!(f, "{num}/{base}")
                } else {
                    write!(f, "{num}/{base}^{k}")
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorsionOutcome {
    /// `ad_z^steps(probe) = 0`.
    MemberCertificate { steps: u32 },
    /// `(numerator degree, denominator exponent)` of `ad_z^m(probe)` for `m = 0..=M`.
    NonMemberEvidence { profile: Vec<(Degree, u32)> },
}

#[derive(Clone, Debug)]
pub struct TorsionCheck {
    pub outcome: TorsionOutcome,
    /// Membership predicted from the denominator: `k = 0`, or `g` is an
    /// eigenvector of `ad_z` (including the centralizer).
    pub predicted_member: bool,
    /// The supplied verdict says `z` is strict (`F(z) = P`), which the prediction presumes.
    pub premise_holds: bool,
    pub consistent: bool,
}

/// `Some(lambda)` with `{z, w} = lambda w`.
fn eigenvalue_of(z: &Element, w: &Element) -> Result<Option<Rat>> {
    let br = z.bracket(w)?;
    if br.is_zero() {
        return Ok(Some(Rat::zero()));
    }
    let (m, c) = w.leading().ok_or(Error::ZeroPolynomial)?;
    let lambda = br.coeff(m) / c;
    Ok((br == w.scale(&lambda)).then_some(lambda))
}

pub fn loc_torsion_check(z: &Element, verdict: &TypeVerdict, probe: &LocElement, m: u32) -> Result<TorsionCheck> {
    let zl = LocElement::embed(z, probe.g())?;
    let mut cur = probe.clone();
    let mut profile = Vec::new();
    let mut outcome = None;
    for step in 0..=m {
        if cur.is_zero() {
            outcome = Some(TorsionOutcome::MemberCertificate { steps: step });
            break;
        }
        profile.push((cur.numerator.degree(), cur.denom_exp));
        if step < m {
            cur = zl.bracket(&cur)?;
        }
    }
    let outcome = outcome.unwrap_or(TorsionOutcome::NonMemberEvidence { profile });
    let predicted_member = probe.denom_exp == 0 || eigenvalue_of(z, probe.g())?.is_some();
    let member = matches!(outcome, TorsionOutcome::MemberCertificate { .. });
    let premise_holds = verdict.label.is_strict();
    Ok(TorsionCheck {
        outcome,
        predicted_member,
        premise_holds,
        // a missing certificate within M steps cannot refute a predicted member
        consistent: !member || predicted_member,
    })
}
