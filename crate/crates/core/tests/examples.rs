//! Worked examples, each checked against an oracle that does not go through
//! the code path under test.

mod common;

use common::*;
use npa_core::ad::{
    ad_matrix, ev_discover, invariant_slice, orbit_profile, partner_probe, subspace_bases, target_bound,
    tensor_theorem_check, TheoremKind,
};
use npa_core::algebra::{
    ad_power, filtered_basis, monomials_of_degree, slice_dimension, Algebra, AlgebraSpec, Degree, Element,
    Hom, Mono, Terms,
};
use npa_core::gr::{gr_bracket, gr_commutative, symbol};
use npa_core::growth::{gk_profile, independence_probe, Independence};
use npa_core::linalg::{char_poly, generalized_eigenspace, rat, rational_roots, MatrixQ, Rat, UniPolyQ};
use npa_core::localization::{loc_bracket, loc_torsion_check, LocElement, TorsionOutcome};
use npa_core::span::{in_span, same_span};
use npa_core::tensor::TensorAlgebraSpec;
use num_traits::{One, Zero};

fn a1() -> Algebra {
    AlgebraSpec::weyl(1)
}

fn pq(alg: &Algebra) -> Element {
    alg.p(0).try_mul(&alg.q(0)).unwrap()
}

fn mono(alg: &Algebra, i: u32, j: u32) -> Element {
    alg.monomial(Mono::from_pq(&[i], &[j]), Rat::one())
}

/// Normal form of a word in `A_1`, via the rewriting oracle.
fn word(alg: &Algebra, letters: &[usize]) -> Element {
    let terms = rewrite_weyl(1, letters.to_vec());
    Element::from_pairs(alg, terms.into_iter().map(|(w, c)| (mono_of_word(1, &w), c)))
}

/// `-d/dq` on normal-ordered elements of `A_1`.
fn minus_dq(x: &Element) -> Element {
    let alg = x.algebra();
    Element::from_pairs(
        alg,
        x.terms().iter().filter(|(m, _)| m.q_exp(0) > 0).map(|(m, c)| {
            let j = m.q_exp(0);
            (Mono::from_pq(&[m.p_exp(0)], &[j - 1]), -c.clone() * rat(j as i64))
        }),
    )
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn kernel_and_rank_of_a_singular_matrix() {
    let rows = [[1i64, 2, 3], [2, 4, 6], [0, 0, 1]];
    let m = MatrixQ::from_i64(&rows.iter().map(|r| &r[..]).collect::<Vec<_>>()).unwrap();
    let k = m.kernel_basis();
    assert_eq!(k.len(), 1);
    assert_eq!(m.mul_vec(&k[0]).unwrap(), vec![Rat::zero(); 3]);
    let scale = k[0][0].clone() / rat(2);
    assert_eq!(k[0], vec![rat(2) * &scale, -scale.clone(), Rat::zero()]);
    // rank from minors: the determinant vanishes, some 2x2 minor does not
    let minor = |r: [usize; 2], c: [usize; 2]| rows[r[0]][c[0]] * rows[r[1]][c[1]] - rows[r[0]][c[1]] * rows[r[1]][c[0]];
    let det: i64 = (0..3).map(|j| {
        let cols: Vec<usize> = (0..3).filter(|&c| c != j).collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        sign * rows[0][j] * minor([1, 2], [cols[0], cols[1]])
    }).sum();
    assert_eq!(det, 0);
    assert_ne!(minor([0, 2], [0, 2]), 0);
    assert_eq!(m.rank(), 2);
}

#[test]
fn characteristic_polynomial_of_the_swap() {
    let m = MatrixQ::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
    let chi = char_poly(&m).unwrap();
    // det(tI - M) = t^2 - 1 at a handful of points
    for t in -3..=3 {
        assert_eq!(chi.eval(&rat(t)), rat(t * t - 1));
    }
    assert_eq!(chi.degree(), Some(2));
}

#[test]
fn rational_roots_with_multiplicity() {
    let p = UniPolyQ::from_i64(&[0, 0, -1, 1]);
    let r = rational_roots(&p).unwrap();
    assert_eq!(r.roots, vec![(rat(0), 2), (rat(1), 1)]);
    assert_eq!(r.remainder_degree, 0);
    assert!(p.eval(&rat(0)).is_zero() && p.derivative().eval(&rat(0)).is_zero());
    assert!(!p.derivative().eval(&rat(1)).is_zero());
}

#[test]
fn generalized_eigenspace_of_a_triangular_matrix() {
    let m = MatrixQ::from_i64(&[&[1, 1], &[0, 2]]).unwrap();
    let v = generalized_eigenspace(&m, &rat(2), 1).unwrap();
    assert_eq!(v.len(), 1);
    assert_eq!(v[0][0], v[0][1]);
    assert_eq!(m.mul_vec(&v[0]).unwrap(), vec![rat(2) * &v[0][0], rat(2) * &v[0][1]]);
}

#[test]
fn normal_ordering_and_brackets() {
    let alg = a1();
    let (p, q) = (alg.p(0), alg.q(0));
    let lhs = q.pow(2).try_mul(&p).unwrap();
    assert_eq!(lhs, word(&alg, &[1, 1, 0]));
    assert_eq!(lhs, mono(&alg, 1, 2).try_add(&q.scale(&rat(2))).unwrap());

    let z = pq(&alg);
    let expected = word(&alg, &[0, 1, 0]).try_sub(&word(&alg, &[0, 0, 1])).unwrap();
    assert_eq!(z.bracket(&p).unwrap(), expected);
    assert_eq!(expected, p);

    let s = AlgebraSpec::symplectic(1);
    let (x, y) = (s.x(0), s.y(0));
    let xy = x.bracket(&y).unwrap();
    let leibniz = xy.try_mul(&y).unwrap().try_add(&y.try_mul(&xy).unwrap()).unwrap();
    assert_eq!(x.bracket(&y.pow(2)).unwrap(), leibniz);
    assert_eq!(leibniz, y.scale(&rat(2)));
}

#[test]
fn ad_p_differentiates_in_q() {
    let alg = a1();
    let (p, q) = (alg.p(0), alg.q(0));
    let q2 = q.pow(2);
    assert_eq!(ad_power(&p, &q2, 2).unwrap(), alg.constant(rat(2)));
    assert_eq!(ad_power(&p, &q2, 3).unwrap(), alg.zero());
    let x = mono(&alg, 2, 3).try_add(&pq(&alg).scale(&rat(5))).unwrap();
    let mut expected = x.clone();
    for m in 0..5 {
        assert_eq!(ad_power(&p, &x, m).unwrap(), expected);
        expected = minus_dq(&expected);
    }
}

#[test]
fn slice_sizes_are_binomial() {
    assert_eq!(filtered_basis(&AlgebraSpec::weyl(2), 2).len(), 15);
    for (gens, n) in [(2usize, 5u32), (4, 2), (4, 3), (6, 2)] {
        let count = binomial((n as usize + gens) as u64, gens as u64) as usize;
        assert_eq!(slice_dimension(gens, n), count);
        let direct: usize = (0..=n).map(|d| monomials_of_degree(gens, d).len()).sum();
        assert_eq!(direct, count);
    }
}

#[test]
fn homomorphisms_check_the_relation() {
    let alg = a1();
    let (p, q) = (alg.p(0), alg.q(0));
    let shear = Hom::new(&alg, vec![p.clone(), q.try_add(&p.pow(2)).unwrap()]).unwrap();
    // p (q + p^2) by the rewriting oracle
    let expected = word(&alg, &[0, 1]).try_add(&word(&alg, &[0, 0, 0])).unwrap();
    assert_eq!(shear.apply(&pq(&alg)).unwrap(), expected);
    assert_eq!(q.pow(2).bracket(&p).unwrap(), q.scale(&rat(2)));
    assert!(Hom::new(&alg, vec![p.clone(), q.pow(2)]).is_err());
}

#[test]
fn symbols_and_the_graded_bracket() {
    let alg = a1();
    let (p, q) = (alg.p(0), alg.q(0));
    let x = p.try_mul(&q).unwrap().try_add(&q.try_mul(&p).unwrap()).unwrap();
    assert_eq!(x, word(&alg, &[0, 1]).scale(&rat(2)).try_add(&alg.one()).unwrap());
    let s = symbol(&x).unwrap();
    assert_eq!((s.degree, s.representative), (2, pq(&alg).scale(&rat(2))));
    let b = gr_bracket(&symbol(&q).unwrap(), &symbol(&p).unwrap()).unwrap();
    assert!(b.is_zero());
}

#[test]
fn graded_commutativity_from_the_degree_drop() {
    let s = AlgebraSpec::symplectic(1);
    assert_eq!(s.delta(), Some(2));
    assert!(gr_commutative(&s, 3).commutative);
    let mut t = Terms::new();
    t.insert(Mono::from_pq(&[1], &[1]), Rat::one());
    let quadratic = AlgebraSpec::class1(1, &[(0, 1, t)]).unwrap();
    // {x, y} = xy has degree 2 = 1 + 1
    assert_eq!(quadratic.x(0).bracket(&quadratic.y(0)).unwrap().degree(), Degree::Finite(2));
    let cert = gr_commutative(&quadratic, 3);
    assert_eq!(cert.delta, Some(0));
    assert!(!cert.commutative && !cert.sweep_passed);
}

#[test]
fn ad_matrices_in_low_degree() {
    let alg = a1();
    let basis = filtered_basis(&alg, 1);
    let column = |m: &MatrixQ, x: &Element, target: &npa_core::algebra::FilteredBasis| {
        let c = m.column(basis.index_of(x.leading().unwrap().0).unwrap());
        target.from_coords(&c)
    };

    let p = alg.p(0);
    let m = ad_matrix(&p, 1);
    let target = filtered_basis(&alg, target_bound(&p, 1));
    assert_eq!((0..m.cols()).filter(|&c| m.column(c).iter().any(|v| !v.is_zero())).count(), 1);
    assert_eq!(column(&m, &alg.q(0), &target), alg.constant(rat(-1)));
    assert!(column(&m, &p, &target).is_zero());

    let z = pq(&alg);
    let m = ad_matrix(&z, 1);
    let target = filtered_basis(&alg, target_bound(&z, 1));
    assert_eq!(column(&m, &p, &target), p);
    assert_eq!(column(&m, &alg.q(0), &target), alg.q(0).scale(&rat(-1)));
    assert!(column(&m, &alg.one(), &target).is_zero());
}

#[test]
fn invariant_slices() {
    let alg = a1();
    let u = invariant_slice(&pq(&alg), 4);
    assert!(u.full);
    assert_eq!(u.vectors.len(), 15);
    assert!(invariant_slice(&alg.p(0), 3).full);

    let z = mono(&alg, 2, 1);
    let u = invariant_slice(&z, 2);
    assert!(u.vectors.len() <= 6);
    let elems: Vec<Element> = u.vectors.iter().map(|v| u.basis.from_coords(v)).collect();
    for e in &elems {
        assert!(in_span(&elems, &z.bracket(e).unwrap()).unwrap());
    }
    // the fixpoint is the largest invariant subspace: anything outside leaves the slice
    for x in u.basis.monomials() {
        let x = alg.monomial(x.clone(), Rat::one());
        if !in_span(&elems, &x).unwrap() {
            assert!(z.bracket(&x).unwrap().degree() > Degree::Finite(2) || !in_span(&elems, &z.bracket(&x).unwrap()).unwrap());
        }
    }
}

#[test]
fn eigenvalues_found_on_slices() {
    let alg = a1();
    let z = pq(&alg);
    let spec = ev_discover(&z, 3).unwrap();
    for k in -3i64..=3 {
        let e = spec.ev_found.iter().find(|e| e.lambda == rat(k)).expect("eigenvalue");
        // {pq, p^i q^j} = (i - j) p^i q^j
        let (i, j) = if k >= 0 { (k as u32, 0) } else { (0, (-k) as u32) };
        let w = mono(&alg, i, j);
        assert_eq!(z.bracket(&w).unwrap(), w.scale(&rat(k)));
        assert!(!e.witness.is_zero());
        assert_eq!(z.bracket(&e.witness).unwrap(), e.witness.scale(&e.lambda));
    }
    for n in 1..=4 {
        let spec = ev_discover(&alg.p(0), n).unwrap();
        assert_eq!(spec.ev_found.iter().map(|e| e.lambda.clone()).collect::<Vec<_>>(), vec![rat(0)]);
    }
}

#[test]
fn subspace_bases_of_p_and_pq() {
    let alg = a1();
    let p = alg.p(0);
    let r = subspace_bases(&p, 3, 4).unwrap();
    let powers: Vec<Element> = (0..=3).map(|k| p.pow(k)).collect();
    assert!(same_span(&alg, &r.c_basis, &powers).unwrap());
    assert_eq!(r.nm_bases[3].len(), 10);
    // (-d/dq)^4 kills every monomial of degree <= 3
    for m in filtered_basis(&alg, 3).monomials() {
        let x = alg.monomial(m.clone(), Rat::one());
        assert!((0..4).fold(x, |acc, _| minus_dq(&acc)).is_zero());
    }

    let z = pq(&alg);
    let r = subspace_bases(&z, 4, 6).unwrap();
    assert!(same_span(&alg, &r.c_basis, &[alg.one(), z.clone(), mono(&alg, 2, 2)]).unwrap());
    let d1 = &r.block(&rat(1)).expect("eigenvalue 1").d_basis;
    assert!(same_span(&alg, d1, &[p.clone(), mono(&alg, 2, 1)]).unwrap());
}

#[test]
fn orbit_profiles() {
    let alg = a1();
    let (p, q) = (alg.p(0), alg.q(0));
    let prof = orbit_profile(&p, &q.pow(3), 5).unwrap();
    let f = Degree::Finite;
    assert_eq!(prof, vec![f(3), f(2), f(1), f(0), Degree::NegInf, Degree::NegInf]);
    let prof = orbit_profile(&pq(&alg), &p, 4).unwrap();
    assert!(prof.iter().all(|&d| d == f(1)));
}

#[test]
fn partners() {
    let alg = a1();
    let p = alg.p(0);
    for n in 1..=3 {
        let w = partner_probe(&p, n).unwrap().expect("partner of p");
        assert_eq!(p.bracket(&w).unwrap(), alg.one());
        assert_eq!(w, alg.q(0).scale(&rat(-1)));
    }
    assert!(partner_probe(&pq(&alg), 4).unwrap().is_none());
}

#[test]
fn tensor_theorem_dimensions() {
    let alg = a1();
    let t = TensorAlgebraSpec::new(&alg, &alg).unwrap();
    let z = pq(&alg);

    let c = tensor_theorem_check(TheoremKind::ThetaF, &t, &z, &z, 4).unwrap();
    // (pq)^i (x) (pq)^j with 2i + 2j <= 4
    assert!(c.passed);
    assert_eq!((c.left_dim, c.right_dim), (6, 6));

    let p = alg.p(0);
    let c = tensor_theorem_check(TheoremKind::GammaF, &t, &p, &p, 3).unwrap();
    assert!(c.passed);
    assert_eq!((c.left_dim, c.right_dim), (35, 35));

    let c = tensor_theorem_check(TheoremKind::GammaLambda(rat(0)), &t, &z, &z, 3).unwrap();
    let weight_zero = (0..=3)
        .flat_map(|d| monomials_of_degree(4, d))
        .filter(|e| e[0] as i64 - e[2] as i64 + e[1] as i64 - e[3] as i64 == 0)
        .count();
    assert!(c.passed);
    assert_eq!((c.left_dim, c.right_dim), (weight_zero, weight_zero));
}

#[test]
fn growth_of_generating_sets() {
    let alg = a1();
    let (p, q) = (alg.p(0), alg.q(0));
    let g = gk_profile(&[alg.one(), p.clone(), q.clone()], 5).unwrap();
    assert_eq!(g.dims, (1..=5u64).map(|n| binomial(n + 2, 2) as usize).collect::<Vec<_>>());
    let g = gk_profile(&[alg.one(), p.clone()], 5).unwrap();
    assert_eq!(g.dims, vec![2, 3, 4, 5, 6]);
}

#[test]
fn independence_of_shifted_powers() {
    let alg = a1();
    let (p, q) = (alg.p(0), alg.q(0));
    let z = pq(&alg);
    let b = [alg.one(), z.clone(), z.pow(2)];
    assert_eq!(independence_probe(&p, &b, 3).unwrap(), Independence::IndependentUpTo(3));
    // b w^i have pairwise distinct leading monomials
    let mut leads: Vec<Mono> = b
        .iter()
        .flat_map(|b| (0..=3).map(|i| b.try_mul(&p.pow(i)).unwrap().leading().unwrap().0.clone()))
        .collect();
    leads.sort();
    leads.dedup();
    assert_eq!(leads.len(), 12);

    let b = [alg.one(), p.clone(), p.pow(2)];
    assert_eq!(independence_probe(&q, &b, 2).unwrap(), Independence::IndependentUpTo(2));
}

#[test]
fn brackets_with_inverses() {
    let s = AlgebraSpec::symplectic(1);
    let (x, y) = (s.x(0), s.y(0));
    let inv_y = LocElement::inverse_power(&y, 1).unwrap();
    let b = loc_bracket(&LocElement::embed(&x, &y).unwrap(), &inv_y).unwrap();
    // -t^{-1} {s, t} t^{-1}
    let xy = LocElement::embed(&x.bracket(&y).unwrap(), &y).unwrap();
    let oracle = inv_y.try_mul(&xy).unwrap().try_mul(&inv_y).unwrap().neg();
    assert_eq!(b, oracle);
    assert_eq!(b, LocElement::inverse_power(&y, 2).unwrap().neg());

    let inv_x = LocElement::inverse_power(&x, 1).unwrap();
    assert!(loc_bracket(&LocElement::embed(&x, &x).unwrap(), &inv_x).unwrap().is_zero());
}

#[test]
fn torsion_of_inverse_powers() {
    let s = AlgebraSpec::symplectic(1);
    let (x, y) = (s.x(0), s.y(0));
    let verdict = npa_core::ad::classify(&x, 4, 6).unwrap();

    let c = loc_torsion_check(&x, &verdict, &LocElement::inverse_power(&x, 1).unwrap(), 4).unwrap();
    assert!(matches!(c.outcome, TorsionOutcome::MemberCertificate { .. }));

    let probe = LocElement::inverse_power(&y, 1).unwrap();
    let c = loc_torsion_check(&x, &verdict, &probe, 5).unwrap();
    let TorsionOutcome::NonMemberEvidence { profile } = c.outcome else {
        panic!("1/y is not killed by ad_x");
    };
    assert_eq!(profile, (0..=5).map(|k| (Degree::Finite(0), k + 1)).collect::<Vec<_>>());
    // ad_x^m(1/y) = (-1)^m m! / y^(m+1)
    let xl = LocElement::embed(&x, &y).unwrap();
    let mut cur = probe;
    let mut fact = 1i64;
    for m in 1..=5u32 {
        cur = loc_bracket(&xl, &cur).unwrap();
        fact *= m as i64;
        let sign = if m % 2 == 0 { 1 } else { -1 };
        assert_eq!(cur, LocElement::inverse_power(&y, m + 1).unwrap().scale(&rat(sign * fact)));
    }
}

#[test]
fn tensor_embeddings_reindex() {
    let alg = a1();
    let t = TensorAlgebraSpec::new(&alg, &alg).unwrap();
    let (p, q) = (alg.p(0), alg.q(0));
    let e = t
        .tensor_elem(&p, &q)
        .unwrap()
        .try_add(&t.tensor_elem(&alg.one(), &pq(&alg)).unwrap())
        .unwrap();
    let c = t.combined();
    let expected = c.p(0).try_mul(&c.q(1)).unwrap().try_add(&c.p(1).try_mul(&c.q(1)).unwrap()).unwrap();
    assert_eq!(e, expected);
}
