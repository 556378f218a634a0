#![allow(dead_code)]

use std::collections::BTreeMap;

use npa_core::ad::shifted_power;
use npa_core::algebra::{filtered_basis, Algebra, AlgebraSpec, Element, Mono, Terms};
use npa_core::linalg::{ratio, Rat};
use npa_core::localization::LocElement;
use npa_core::tensor::{Side, TensorAlgebraSpec};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Commutative algebra on `x, y` with `{x, y} = x + y^2`.
pub fn skew_plane() -> Algebra {
    let mut t = Terms::new();
    t.insert(Mono::from_pq(&[1], &[0]), Rat::one());
    t.insert(Mono::from_pq(&[0], &[2]), Rat::one());
    AlgebraSpec::class1(1, &[(0, 1, t)]).unwrap().with_label("skew")
}

/// Linear Poisson structure of the two-dimensional non-abelian Lie algebra,
/// doubled: `{x_i, y_i} = y_i` for `i = 1, 2`.
pub fn linear_poisson() -> Algebra {
    let bracket = |i: usize| {
        let mut q = [0, 0];
        q[i] = 1;
        let mut t = Terms::new();
        t.insert(Mono::from_pq(&[0, 0], &q), Rat::one());
        (i, 2 + i, t)
    };
    AlgebraSpec::class1(2, &[bracket(0), bracket(1)]).unwrap().with_label("linear")
}

pub fn algebras() -> Vec<Algebra> {
    vec![
        AlgebraSpec::weyl(1),
        AlgebraSpec::weyl(2),
        AlgebraSpec::symplectic(1),
        AlgebraSpec::symplectic(2),
        skew_plane(),
        linear_poisson(),
    ]
}

/// Random elements with up to `max_terms` terms of degree `<= max_deg`.
pub fn element(alg: Algebra, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Element> {
    let monos: Vec<Mono> = filtered_basis(&alg, max_deg).monomials().to_vec();
    let n = monos.len();
    prop::collection::vec((0..n, -4i64..=4, 1i64..=3), 1..=max_terms).prop_map(move |terms| {
        Element::from_pairs(
            &alg,
            terms
                .into_iter()
                .map(|(i, num, den)| (monos[i].clone(), ratio(num, den))),
        )
    })
}

pub fn triple(alg: Algebra, max_deg: u32) -> impl Strategy<Value = (Element, Element, Element)> {
    (
        element(alg.clone(), max_deg, 3),
        element(alg.clone(), max_deg, 3),
        element(alg, max_deg, 3),
    )
}

pub fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what()))
    }
}

pub fn associativity(a: &Element, b: &Element, c: &Element) -> Result<(), TestCaseError> {
    check(&(a * b) * c == a * &(b * c), || format!("({a})({b})({c}) not associative"))
}

pub fn jacobi(a: &Element, b: &Element, c: &Element) -> Result<(), TestCaseError> {
    let br = |x: &Element, y: &Element| x.bracket(y).unwrap();
    let sum = &(&br(a, &br(b, c)) + &br(b, &br(c, a))) + &br(c, &br(a, b));
    check(sum.is_zero(), || format!("Jacobi fails on {a}, {b}, {c}"))
}

pub fn leibniz(a: &Element, b: &Element, c: &Element) -> Result<(), TestCaseError> {
    let lhs = a.bracket(&(b * c)).unwrap();
    let rhs = &(&a.bracket(b).unwrap() * c) + &(b * &a.bracket(c).unwrap());
    check(lhs == rhs, || format!("Leibniz fails on {a}, {b}, {c}"))
}

pub fn antisymmetry(a: &Element, b: &Element) -> Result<(), TestCaseError> {
    check(a.bracket(b).unwrap() == -&b.bracket(a).unwrap(), || format!("{{{a}, {b}}} not antisymmetric"))
}

/// Normal form of a Weyl word by adjacent swaps: `q_i p_i -> p_i q_i + 1`,
/// any other out-of-order pair commutes. Letters: `p_i = i`, `q_i = n + i`.
pub fn rewrite_weyl(n: usize, word: Vec<usize>) -> BTreeMap<Vec<usize>, Rat> {
    let mut done: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
    let mut todo: Vec<(Vec<usize>, Rat)> = vec![(word, Rat::one())];
    while let Some((w, c)) = todo.pop() {
        match (1..w.len()).find(|&i| w[i - 1] > w[i]) {
            None => {
                let e = done.entry(w).or_insert_with(Rat::zero);
                *e += c;
            }
            Some(i) => {
                let (x, y) = (w[i - 1], w[i]);
                let mut swapped = w.clone();
                swapped.swap(i - 1, i);
                if x == y + n {
                    let mut shorter = w.clone();
                    shorter.drain(i - 1..=i);
                    todo.push((shorter, c.clone()));
                }
                todo.push((swapped, c));
            }
        }
    }
    done.retain(|_, c| !c.is_zero());
    done
}

pub fn word_of(m: &Mono) -> Vec<usize> {
    m.exponents()
        .iter()
        .enumerate()
        .flat_map(|(g, &e)| std::iter::repeat_n(g, e as usize))
        .collect()
}

pub fn mono_of_word(n: usize, w: &[usize]) -> Mono {
    let mut e = vec![0u32; 2 * n];
    for &g in w {
        e[g] += 1;
    }
    Mono::from_exponents(e)
}

/// `m1 * m2` in `A_n` against the rewriting oracle.
pub fn weyl_product_matches_oracle(alg: &Algebra, m1: &Mono, m2: &Mono) -> bool {
    let n = alg.n_pairs();
    let prod = &alg.monomial(m1.clone(), Rat::one()) * &alg.monomial(m2.clone(), Rat::one());
    let mut word = word_of(m1);
    word.extend(word_of(m2));
    let oracle = Element::from_pairs(
        alg,
        rewrite_weyl(n, word)
            .into_iter()
            .map(|(w, c)| (mono_of_word(n, &w), c)),
    );
    prod == oracle
}

fn binomial(n: u32, k: u32) -> Rat {
    let mut c = Rat::one();
    for i in 0..k {
        c = c * Rat::from_integer((n - i).into()) / Rat::from_integer((i + 1).into());
    }
    c
}

/// `(ad_z - l - m)^n (ab) = sum_i C(n, i) (ad_z - l)^i (a) (ad_z - m)^{n-i} (b)`.
pub fn binomial_expansion(z: &Element, a: &Element, b: &Element, l: &Rat, m: &Rat, n: u32) -> bool {
    let lhs = shifted_power(z, &(a * b), &(l + m), n).unwrap();
    let mut rhs = z.algebra().zero();
    for i in 0..=n {
        let t = &shifted_power(z, a, l, i).unwrap() * &shifted_power(z, b, m, n - i).unwrap();
        rhs = &rhs + &t.scale(&binomial(n, i));
    }
    lhs == rhs
}

/// `u` lies in `F^k(z, lambda)`: `(ad_z - lambda)^{k+1} u = 0`.
pub fn in_fk(z: &Element, u: &Element, lambda: &Rat, k: u32) -> bool {
    shifted_power(z, u, lambda, k + 1).unwrap().is_zero()
}

pub fn loc_element(g: Element, max_deg: u32) -> impl Strategy<Value = LocElement> {
    let alg = g.algebra().clone();
    (element(alg, max_deg, 3), 0u32..=2).prop_map(move |(a, k)| LocElement::new(&a, &g, k).unwrap())
}

pub fn loc_leibniz(a: &LocElement, b: &LocElement, c: &LocElement) -> bool {
    let lhs = a.bracket(&b.try_mul(c).unwrap()).unwrap();
    let rhs = a
        .bracket(b)
        .unwrap()
        .try_mul(c)
        .unwrap()
        .try_add(&b.try_mul(&a.bracket(c).unwrap()).unwrap())
        .unwrap();
    lhs == rhs
}

pub fn loc_jacobi(a: &LocElement, b: &LocElement, c: &LocElement) -> bool {
    let br = |x: &LocElement, y: &LocElement| x.bracket(y).unwrap();
    br(a, &br(b, c))
        .try_add(&br(b, &br(c, a)))
        .unwrap()
        .try_add(&br(c, &br(a, b)))
        .unwrap()
        .is_zero()
}

/// `t^-1 s^-1 {s,t} s^-1 t^-1 = s^-1 t^-1 {s,t} t^-1 s^-1` for `s = g^i`, `t = g^j`,
/// and `{a, t^-1} = -t^-1 {a, t} t^-1`.
pub fn inverse_identities(g: &Element, a: &LocElement, i: u32, j: u32) -> bool {
    let s = LocElement::new(&g.pow(i), g, 0).unwrap();
    let t = LocElement::new(&g.pow(j), g, 0).unwrap();
    let (si, ti) = (LocElement::inverse_power(g, i).unwrap(), LocElement::inverse_power(g, j).unwrap());
    let st = s.bracket(&t).unwrap();
    let mul = |xs: &[&LocElement]| {
        xs[1..]
            .iter()
            .fold(xs[0].clone(), |acc, x| acc.try_mul(x).unwrap())
    };
    let lhs = mul(&[&ti, &si, &st, &si, &ti]);
    let rhs = mul(&[&si, &ti, &st, &ti, &si]);
    let inv = a.bracket(&ti).unwrap();
    let expected = mul(&[&ti, &a.bracket(&t).unwrap(), &ti]).neg();
    lhs == rhs && inv == expected
}

/// Both expansions of `{a1 (x) a2, b1 (x) b2}` and their consequence
/// `{a1,b1} (x) [a2,b2] = [a1,b1] (x) {a2,b2}`.
pub fn tensor_compatibility(t: &TensorAlgebraSpec, a1: &Element, a2: &Element, b1: &Element, b2: &Element) -> bool {
    let ox = |x: &Element, y: &Element| t.tensor_elem(x, y).unwrap();
    let br = |x: &Element, y: &Element| x.bracket(y).unwrap();
    let comm = |x: &Element, y: &Element| &(x * y) - &(y * x);
    let lhs = br(&ox(a1, a2), &ox(b1, b2));
    let first = &ox(&(b1 * a1), &br(a2, b2)) + &ox(&br(a1, b1), &(a2 * b2));
    let second = &ox(&br(a1, b1), &(b2 * a2)) + &ox(&(a1 * b1), &br(a2, b2));
    let compat = ox(&br(a1, b1), &comm(a2, b2)) == ox(&comm(a1, b1), &br(a2, b2));
    lhs == first && lhs == second && compat
}

/// `ad` of gamma and theta on pure tensors.
pub fn composite_ad_identities(
    t: &TensorAlgebraSpec,
    z1: &Element,
    z2: &Element,
    x1: &Element,
    x2: &Element,
) -> bool {
    let ox = |x: &Element, y: &Element| t.tensor_elem(x, y).unwrap();
    let x = ox(x1, x2);
    let gamma = t.build_gamma(z1, z2).unwrap();
    let theta = t.build_theta(z1, z2).unwrap();
    let ad_gamma = &ox(&z1.bracket(x1).unwrap(), x2) + &ox(x1, &z2.bracket(x2).unwrap());
    let ad_theta = &ox(&(x1 * z1), &z2.bracket(x2).unwrap()) + &ox(&z1.bracket(x1).unwrap(), &(z2 * x2));
    gamma.bracket(&x).unwrap() == ad_gamma && theta.bracket(&x).unwrap() == ad_theta
}

/// Embeddings are Poisson homomorphisms with commuting images.
/// `a, b` come from the left factor, `c, d` from the right one.
pub fn embeddings(t: &TensorAlgebraSpec, a: &Element, b: &Element, c: &Element, d: &Element) -> bool {
    let l = |x: &Element| t.embed(Side::Left, x).unwrap();
    let r = |x: &Element| t.embed(Side::Right, x).unwrap();
    l(&(a * b)) == &l(a) * &l(b)
        && l(&a.bracket(b).unwrap()) == l(a).bracket(&l(b)).unwrap()
        && l(a).bracket(&r(c)).unwrap().is_zero()
        && r(&(c * d)) == &r(c) * &r(d)
        && r(&c.bracket(d).unwrap()) == r(c).bracket(&r(d)).unwrap()
}
