use closurelab::algebra::{Field, FreeVec, Monomial, Polynomial, RingDescriptor};
use closurelab::certificate::IntegralityCertificate;
use closurelab::ideal_closure::newton_closure_monomials;
use closurelab::module_closure::{compare, Membership, SubmodulePresentation};
use closurelab::par;
use closurelab::parse::{parse_poly, parse_ring};
use closurelab::props::{random_dim0_ring, random_presentation, random_vector, trial_rng};
use closurelab::schema::CertificateDoc;
use closurelab::search::{certify_ideal_member, free_closure_member, SearchOptions};
use closurelab::test_ideals::{socle, tau_m_dim0};
use proptest::prelude::*;

fn xy() -> RingDescriptor {
    RingDescriptor::poly(Field::Rational, &["x", "y"]).unwrap()
}

fn monomial_ideal() -> impl Strategy<Value = Vec<(u32, u32)>> {
    prop::collection::vec((0u32..6, 0u32..6), 1..4)
        .prop_map(|v| v.into_iter().filter(|&(a, b)| a + b > 0).collect::<Vec<_>>())
        .prop_filter("nonzero ideal", |v| !v.is_empty())
}

fn tamper_all(c: &IntegralityCertificate) -> Vec<IntegralityCertificate> {
    let mut out = Vec::new();
    for j in 0..c.coefficients.len() {
        for k in 0..c.coefficients[j].len() {
            let terms: Vec<(Monomial, _)> = c.coefficients[j][k].coefficient.terms().map(|(m, s)| (m.clone(), s.clone())).collect();
            for t in 0..terms.len() {
                let mut bad = c.clone();
                let mut p = Polynomial::zero(c.ring.field(), c.ring.nvars());
                for (u, (m, s)) in terms.iter().enumerate() {
                    let s = if u == t { s.bumped() } else { s.clone() };
                    p.add_term(m.clone(), &s);
                }
                bad.coefficients[j][k].coefficient = p;
                out.push(bad);
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn certificates_verify_and_tampering_breaks_them(gens in monomial_ideal(), a in 0u32..6, b in 0u32..6) {
        let r = xy();
        let mons: Vec<Monomial> = gens.iter().map(|&(a, b)| Monomial(vec![a, b])).collect();
        let ideal: Vec<Polynomial> = mons.iter().map(|m| Polynomial::monomial(r.field(), m.clone())).collect();
        let z = r.monomial(&[a, b]);
        let closure = newton_closure_monomials(&mons, 2);
        let inside = closure.iter().any(|g| g.divides(&Monomial(vec![a, b])));
        let found = certify_ideal_member(&z, &ideal, &r, SearchOptions::default()).unwrap();
        prop_assert_eq!(found.is_some(), inside);
        if let Some(c) = found {
            prop_assert!(c.is_valid());
            for bad in tamper_all(&c) {
                prop_assert!(!bad.is_valid());
            }
            let doc = CertificateDoc::from_certificate(&c);
            prop_assert_eq!(doc.to_certificate().unwrap(), c);
        }
    }

    #[test]
    fn closure_contains_ideal_and_is_idempotent(gens in monomial_ideal()) {
        let mons: Vec<Monomial> = gens.iter().map(|&(a, b)| Monomial(vec![a, b])).collect();
        let c = newton_closure_monomials(&mons, 2);
        prop_assert!(mons.iter().all(|m| c.iter().any(|g| g.divides(m))));
        prop_assert_eq!(newton_closure_monomials(&c, 2), c);
    }

    #[test]
    fn polynomials_round_trip_through_text(terms in prop::collection::vec((-5i64..6, 0u32..4, 0u32..4), 0..6)) {
        let r = xy();
        let mut p = r.zero();
        for (c, a, b) in terms {
            p.add_term(Monomial(vec![a, b]), &r.field().from_i64(c));
        }
        let text = p.render(&r.var_names());
        prop_assert_eq!(parse_poly(&text, &r).unwrap(), p);
    }

    #[test]
    fn socle_is_killed_by_variables_and_order_free(seed in 0u64..10_000) {
        let mut rng = trial_rng(seed, 0);
        let r = random_dim0_ring(&mut rng);
        let s = socle(&r).unwrap();
        for g in &s.generators {
            for v in 0..r.nvars() {
                prop_assert!(r.reduce(&(g * &r.var(v))).is_zero());
            }
        }
        let t = tau_m_dim0(&r).unwrap();
        prop_assert!(t.equals_socle);
        prop_assert_eq!(t.dimension, s.dimension);
        let perm: Vec<usize> = (0..r.nvars()).rev().collect();
        prop_assert_eq!(socle(&r.permuted(&perm).unwrap()).unwrap().dimension, s.dimension);
    }

    #[test]
    fn lic_implies_rees_over_dim0(seed in 0u64..10_000) {
        let mut rng = trial_rng(seed, 1);
        let r = random_dim0_ring(&mut rng);
        let p = random_presentation(&mut rng, &r);
        let z = random_vector(&mut rng, &r, p.rank);
        match compare(&z, &p, SearchOptions::with_max_degree(4)) {
            Ok(rep) => {
                if let (Membership::Member, Some(rees)) = (rep.lic.membership, &rep.rees) {
                    prop_assert_eq!(rees.membership, Membership::Member);
                }
            }
            Err(closurelab::Error::Undecidable(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn lic_implies_rees_over_semigroups(a in 2u64..6, b in 3u64..9, m in 0u64..8, l in 0u64..6, z in 0u64..10) {
        prop_assume!(num_integer::Integer::gcd(&a, &b) == 1);
        let r = RingDescriptor::semigroup(Field::Rational, &[a, b]).unwrap();
        let s = r.semigroup_data().unwrap().clone();
        let mexp = s.elements_below(40).into_iter().filter(|&u| u > 0).nth(m as usize).unwrap();
        let lexp = s.elements_below(80).into_iter().filter(|&u| u >= mexp && s.contains(u - mexp)).nth(l as usize + 1).unwrap();
        let p = SubmodulePresentation::ideal_pair(r.clone(), &[r.monomial(&[lexp as u32])], &[r.monomial(&[mexp as u32])]).unwrap();
        let zexp = s.elements_below(60).into_iter().nth(z as usize).unwrap();
        let zv = FreeVec::new(vec![r.monomial(&[zexp as u32])]);
        let rep = compare(&zv, &p, SearchOptions::with_max_degree(3)).unwrap();
        if rep.lic.membership == Membership::Member {
            prop_assert_eq!(rep.rees.unwrap().membership, Membership::Member);
        }
    }
}

#[test]
fn lift_independence_at_small_degree() {
    // y and y + u differ by a relation u; both lifts certify
    let r = RingDescriptor::quotient(Field::Rational, &["x", "y"], vec![Monomial(vec![2, 0]), Monomial(vec![0, 2])]).unwrap();
    let u = FreeVec::new(vec![r.var(0), r.var(1)]);
    let y = FreeVec::new(vec![r.var(1), r.zero()]);
    let y2 = &y + &u;
    let k = vec![u];
    let c1 = free_closure_member(&y, &k, &r, SearchOptions::with_max_degree(3)).unwrap();
    let c2 = free_closure_member(&y2, &k, &r, SearchOptions::with_max_degree(3)).unwrap();
    assert!(c1.is_some() && c2.is_some());
}

#[test]
fn parallel_and_sequential_agree() {
    let items: Vec<u64> = (0..40).collect();
    let f = |&t: &u64| {
        let mut rng = trial_rng(5, t as usize);
        let r = random_dim0_ring(&mut rng);
        socle(&r).unwrap().dimension
    };
    assert_eq!(par::run_sequential(&items, f), par::run(&items, f));
}

#[test]
fn ring_texts_parse_back() {
    for t in ["poly QQ [x,y]", "semigroup QQ <3,5>", "quot QQ [x] / (x^2)", "poly Fp 7 [a,b,c]"] {
        assert_eq!(parse_ring(t).unwrap().to_string(), t);
    }
}
