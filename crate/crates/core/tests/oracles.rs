//! Library results against independent computations: hand formulas, brute
//! force and a separate convex-geometry test.

use closurelab::algebra::{ideal_colon, Field, FreeVec, Monomial, Polynomial, RingDescriptor};
use closurelab::ideal_closure::{in_monomial_closure, newton_closure_monomials};
use closurelab::module_closure::{compare, lic_member, Membership, SubmodulePresentation};
use closurelab::search::{certify_ideal_member, free_closure_member, SearchOptions};
use closurelab::test_ideals::{default_exponents, frobenius_and_conductor, tau_i_sample_dim1};
use closurelab::torsionless::{build_truncation, verify_quadratic_identity};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn xy() -> RingDescriptor {
    RingDescriptor::poly(Field::Rational, &["x", "y"]).unwrap()
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `(a, b)` dominates a point of the segment `[p, r]`: the feasible `λ` for
/// `λ p + (1 - λ) r <= (a, b)` form an interval meeting `[0, 1]`.
fn segment_feasible(p: (u32, u32), r: (u32, u32), a: u32, b: u32) -> bool {
    let mut lo = q(0);
    let mut hi = q(1);
    for (pc, rc, t) in [(p.0, r.0, a), (p.1, r.1, b)] {
        // λ (pc - rc) <= t - rc
        let coef = q(pc as i64 - rc as i64);
        let rhs = q(t as i64 - rc as i64);
        if coef.is_zero() {
            if rhs < q(0) {
                return false;
            }
        } else if coef > q(0) {
            hi = hi.min(&rhs / &coef);
        } else {
            lo = lo.max(&rhs / &coef);
        }
    }
    lo <= hi
}

/// In two variables the Newton polyhedron is the union of segments between
/// generator pairs pushed up by the orthant.
fn newton_oracle(gens: &[(u32, u32)], a: u32, b: u32) -> bool {
    gens.iter().any(|&p| gens.iter().any(|&r| segment_feasible(p, r, a, b)))
}

#[test]
fn segment_oracle_sanity() {
    assert!(newton_oracle(&[(2, 0), (0, 2)], 1, 1));
    assert!(!newton_oracle(&[(2, 0), (0, 2)], 1, 0));
    assert!(newton_oracle(&[(3, 0), (0, 3)], 2, 1));
    assert!(!newton_oracle(&[(4, 0), (0, 4)], 1, 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn newton_closure_matches_segment_oracle(gens in prop::collection::vec((0u32..7, 0u32..7), 1..5)) {
        let gens: Vec<(u32, u32)> = gens.into_iter().filter(|&(a, b)| a + b > 0).collect();
        prop_assume!(!gens.is_empty());
        let mons: Vec<Monomial> = gens.iter().map(|&(a, b)| Monomial(vec![a, b])).collect();
        let r = xy();
        let closure = newton_closure_monomials(&mons, 2);
        for a in 0..9 {
            for b in 0..9 {
                let m = Monomial(vec![a, b]);
                let expect = newton_oracle(&gens, a, b);
                prop_assert_eq!(in_monomial_closure(&m, &mons, &r).unwrap(), expect, "{:?} at {:?}", gens, (a, b));
                prop_assert_eq!(closure.iter().any(|g| g.divides(&m)), expect);
            }
        }
    }
}

#[test]
fn colon_of_powers_by_hand() {
    let r = xy();
    for n in 1..=4u32 {
        let big = [r.monomial(&[2 * n, 0]), r.monomial(&[0, 2 * n])];
        let colon = ideal_colon(&big, &[r.monomial(&[n, n])], &r).unwrap();
        // for monomial ideals (m_i) : z = (m_i / gcd(m_i, z))
        assert_eq!(colon, vec![r.monomial(&[n, 0]), r.monomial(&[0, n])], "n = {n}");
        let c = certify_ideal_member(&r.monomial(&[n, n]), &big, &r, SearchOptions::default()).unwrap().unwrap();
        assert_eq!(c.degree, 2);
    }
}

/// Gaps by reachability from 0 using the generators.
fn brute_gaps(gens: &[u64]) -> Vec<u64> {
    let bound = 200;
    let mut reach = vec![false; bound];
    reach[0] = true;
    for u in 1..bound {
        reach[u] = gens.iter().any(|&g| (g as usize) <= u && reach[u - g as usize]);
    }
    (0..bound as u64).filter(|&u| !reach[u as usize]).collect()
}

#[test]
fn conductors_against_brute_force() {
    for gens in [&[2u64, 3][..], &[3, 5], &[3, 4, 5], &[4, 7], &[5, 6, 9], &[1]] {
        let c = frobenius_and_conductor(gens).unwrap();
        let gaps = brute_gaps(gens);
        assert_eq!(c.gaps, gaps);
        assert_eq!(c.threshold, gaps.last().map_or(0, |f| f + 1));
    }
    let thresholds: Vec<u64> = [&[2u64, 3][..], &[3, 5], &[3, 4, 5]]
        .iter()
        .map(|g| frobenius_and_conductor(g).unwrap().threshold)
        .collect();
    assert_eq!(thresholds, vec![2, 8, 3]);
}

/// `((t^s) : [s, ∞) ∩ S)` by brute force over a window.
fn brute_colon(gens: &[u64], s: u64) -> Vec<u64> {
    let gaps = brute_gaps(gens);
    let in_s = |u: u64| !gaps.contains(&u);
    let in_principal = |u: u64| u >= s && in_s(u - s);
    (0..40)
        .filter(|&u| in_s(u))
        .filter(|&u| (s..80).filter(|&w| in_s(w)).all(|w| in_principal(u + w)))
        .collect()
}

#[test]
fn sampled_colons_against_brute_force() {
    for gens in [&[2u64, 3][..], &[3, 5], &[3, 4, 5]] {
        let r = RingDescriptor::semigroup(Field::Rational, gens).unwrap();
        let s = r.semigroup_data().unwrap();
        let exps = default_exponents(s);
        let t = tau_i_sample_dim1(&r, &exps).unwrap();
        for (e, colon) in &t.colons {
            let brute = brute_colon(gens, *e);
            let ours: Vec<u64> = (0..40).filter(|&u| colon.contains(s, u)).collect();
            assert_eq!(ours, brute, "{gens:?} at t^{e}");
        }
        assert!(t.collapsed, "{gens:?}");
        let c = t.conductor.threshold;
        assert!((0..40).all(|u| t.intersection.contains(s, u) == (u >= c && s.contains(u))));
    }
}

/// `(t_i + d_i)^2 - a_2i b_2i` in `Q[x, y, t_1, ..., t_N]`, built without
/// the certificate machinery.
fn quadratic_residue(i: usize, n: usize) -> Polynomial {
    let f = Field::Rational;
    let nv = 2 + n;
    let var = |k: usize| Polynomial::var(f, nv, k);
    let t = |k: usize| var(1 + k);
    let mut xyi = Polynomial::one(f, nv);
    for _ in 0..i {
        xyi = &(&xyi * &var(0)) * &var(1);
    }
    let d = &(&xyi * &t(2 * i)) - &t(i);
    let lhs = (&t(i) + &d).pow(2);
    let a = &var(0).pow(2 * i as u32) * &t(2 * i);
    let b = &var(1).pow(2 * i as u32) * &t(2 * i);
    &lhs - &(&a * &b)
}

#[test]
fn quadratic_identity_by_direct_expansion() {
    for n in 2..=12 {
        let trunc = build_truncation(n).unwrap();
        for i in 1..=n / 2 {
            assert!(quadratic_residue(i, n).is_zero());
            assert!(verify_quadratic_identity(i, &trunc).unwrap(), "i = {i}, N = {n}");
            assert_eq!(trunc.d(i), trunc.d_telescoped(i));
        }
    }
}

#[test]
fn rank_two_injective_hull_certificate_is_found() {
    let r = xy();
    let t = build_truncation(2).unwrap();
    let y = FreeVec::unit(r.field(), 2, 2, 0);
    let c = free_closure_member(&y, &t.relations(), &r, SearchOptions::with_max_degree(2)).unwrap().unwrap();
    assert_eq!(c.degree, 2);
    c.verify().unwrap();
}

#[test]
fn square_zero_example() {
    let r = RingDescriptor::quotient(Field::Rational, &["x"], vec![Monomial(vec![2])]).unwrap();
    // M = Rx ≅ R/(x), L = 0
    let p = SubmodulePresentation::new(r.clone(), 1, vec![FreeVec::new(vec![r.var(0)])], vec![]).unwrap();
    let rep = compare(&FreeVec::unit(r.field(), 1, 1, 0), &p, SearchOptions::default()).unwrap();
    assert_eq!(rep.lic.membership, Membership::NonMember);
    assert_eq!(rep.rees.unwrap().membership, Membership::NonMember);
}

#[test]
fn semigroup_separation() {
    let r = RingDescriptor::semigroup(Field::Rational, &[2, 3]).unwrap();
    let p = SubmodulePresentation::ideal_pair(r.clone(), &[r.monomial(&[4]), r.monomial(&[7])], &[r.monomial(&[4]), r.monomial(&[5])]).unwrap();
    let t5 = FreeVec::unit(r.field(), 1, 2, 1);
    let rep = compare(&t5, &p, SearchOptions::default()).unwrap();
    assert_eq!(rep.lic.membership, Membership::NonMember);
    assert_eq!(rep.rees.unwrap().membership, Membership::Member);
    // t^4 itself lies in L
    let t4 = FreeVec::unit(r.field(), 1, 2, 0);
    assert_eq!(lic_member(&t4, &p, SearchOptions::default()).unwrap().lic.membership, Membership::Member);
}

#[test]
fn degree_five_nilpotent_needs_degree_five() {
    // x has x^4 != 0 here, so no equation of degree four over 0 exists
    let r = RingDescriptor::quotient(Field::Rational, &["x"], vec![Monomial(vec![5])]).unwrap();
    let x = FreeVec::new(vec![r.var(0)]);
    assert!(free_closure_member(&x, &[], &r, SearchOptions::with_max_degree(4)).unwrap().is_none());
    let c = free_closure_member(&x, &[], &r, SearchOptions::with_max_degree(5)).unwrap().unwrap();
    assert_eq!(c.degree, 5);
}
