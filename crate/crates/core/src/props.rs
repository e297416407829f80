//! Seeded random instances in the exact classes and the randomized suites
//! run over them: closure properties, the dimension-zero formula, and the
//! Newton-versus-certificate cross-check.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::ring::minimize_monomials;
use crate::algebra::{
    ideal_colon, ideal_member, module_colon_ideal, module_member, module_subset, Field, FreeVec,
    Monomial, Polynomial, RingDescriptor,
};
use crate::error::Result;
use crate::ideal_closure::{closure_contains, monomial_ideal_closure, newton_closure, newton_closure_monomials};
use crate::module_closure::{lic_exact_dim0, SubmodulePresentation};
use crate::par;
use crate::search::{certify_ideal_member, free_closure_member, SearchOptions};
use crate::test_ideals::tau_m_dim0;

/// An independent stream per trial, so results do not depend on scheduling.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut base = ChaCha8Rng::seed_from_u64(seed);
    base.set_stream(trial as u64);
    base
}

fn names(n: usize) -> Vec<&'static str> {
    ["x", "y", "z"][..n].to_vec()
}

/// A random Artinian monomial quotient in one or two variables with
/// `m^5 = 0` and `x_i^4 = 0` for every variable.
pub fn random_dim0_ring(rng: &mut impl Rng) -> RingDescriptor {
    let n = rng.gen_range(1..=2);
    let mut rels: Vec<Monomial> = Vec::new();
    for a in 0..=5u32 {
        if n == 1 {
            rels.push(Monomial(vec![5]));
            break;
        }
        rels.push(Monomial(vec![a, 5 - a]));
    }
    for v in 0..n {
        rels.push(Monomial::var(n, v, 4));
    }
    for _ in 0..rng.gen_range(0..=2) {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
        if e.iter().sum::<u32>() >= 2 {
            rels.push(Monomial(e));
        }
    }
    RingDescriptor::quotient(Field::Rational, &names(n), rels).expect("relations are proper monomials")
}

/// Sum of up to `terms` random standard monomials with small coefficients.
pub fn random_element(rng: &mut impl Rng, ring: &RingDescriptor, terms: usize) -> Polynomial {
    let f = ring.field();
    let n = ring.nvars();
    let mut p = ring.zero();
    for _ in 0..rng.gen_range(0..=terms) {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
        let c = f.from_i64(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 });
        p.add_term(Monomial(e), &c);
    }
    ring.reduce(&p)
}

pub fn random_vector(rng: &mut impl Rng, ring: &RingDescriptor, rank: usize) -> FreeVec {
    FreeVec::new((0..rank).map(|_| random_element(rng, ring, 2)).collect())
}

/// `F / U` of rank one or two with a random submodule.
pub fn random_presentation(rng: &mut impl Rng, ring: &RingDescriptor) -> SubmodulePresentation {
    let rank = rng.gen_range(1..=2);
    let u: Vec<FreeVec> = (0..rng.gen_range(0..=2)).map(|_| random_vector(rng, ring, rank)).collect();
    let l: Vec<FreeVec> = (0..rng.gen_range(0..=2)).map(|_| random_vector(rng, ring, rank)).collect();
    SubmodulePresentation::new(ring.clone(), rank, u, l).expect("random vectors have the right shape")
}

/// Up to `max_gens` monomials of total degree `1..=max_deg`.
pub fn random_monomial_ideal(rng: &mut impl Rng, nvars: usize, max_gens: usize, max_deg: u32) -> Vec<Monomial> {
    let k = rng.gen_range(1..=max_gens);
    let mut out = Vec::new();
    for _ in 0..k {
        let d = rng.gen_range(1..=max_deg);
        let mut e = vec![0u32; nvars];
        for _ in 0..d {
            e[rng.gen_range(0..nvars)] += 1;
        }
        out.push(Monomial(e));
    }
    minimize_monomials(&out)
}

fn polys(ring: &RingDescriptor, ms: &[Monomial]) -> Vec<Polynomial> {
    ms.iter().map(|m| Polynomial::monomial(ring.field(), m.clone())).collect()
}

fn same_submodule(a: &[FreeVec], b: &[FreeVec], rank: usize, ring: &RingDescriptor) -> Result<bool> {
    Ok(module_subset(a, b, rank, ring)? && module_subset(b, a, rank, ring)?)
}

fn same_ideal(a: &[Polynomial], b: &[Polynomial], ring: &RingDescriptor) -> Result<bool> {
    for p in a {
        if !ideal_member(p, b, ring)? {
            return Ok(false);
        }
    }
    for p in b {
        if !ideal_member(p, a, ring)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `lic` of the submodule generated by `lifts` in `F / u`, as a submodule
/// of `F` containing `u`.
fn closure_dim0(ring: &RingDescriptor, rank: usize, u: &[FreeVec], lifts: &[FreeVec]) -> Result<Vec<FreeVec>> {
    let p = SubmodulePresentation::new(ring.clone(), rank, u.to_vec(), lifts.to_vec())?;
    let mut g = lic_exact_dim0(&p)?;
    g.extend_from_slice(u);
    Ok(g)
}

fn block(v: &FreeVec, offset: usize, total: usize, ring: &RingDescriptor) -> FreeVec {
    let mut c = vec![ring.zero(); total];
    for (i, p) in v.coords().iter().enumerate() {
        c[offset + i] = p.clone();
    }
    FreeVec::new(c)
}

/// Items of the closure property list exercised by the suite.
pub const PROPERTY_ITEMS: [(u8, &str); 7] = [
    (1, "idempotence"),
    (2, "functoriality"),
    (3, "submodules"),
    (4, "direct sums"),
    (7, "colons"),
    (10, "semiprime"),
    (11, "nakayama"),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyTally {
    pub item: u8,
    pub name: &'static str,
    pub checked: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropsReport {
    pub seed: u64,
    pub trials: usize,
    pub tallies: Vec<PropertyTally>,
    /// `trial i, item k: description` for every violation.
    pub violations: Vec<String>,
}

impl PropsReport {
    pub fn total_violations(&self) -> usize {
        self.violations.len()
    }
}

type Outcome = (u8, bool, String);

fn check(out: &mut Vec<Outcome>, item: u8, r: Result<bool>, what: impl FnOnce() -> String) {
    match r {
        Ok(true) => out.push((item, true, String::new())),
        Ok(false) => out.push((item, false, what())),
        Err(e) => out.push((item, false, format!("{}: {e}", what()))),
    }
}

fn dim0_trial(rng: &mut ChaCha8Rng, out: &mut Vec<Outcome>) -> Result<()> {
    let ring = random_dim0_ring(rng);
    let p = random_presentation(rng, &ring);
    let (rank, u, l) = (p.rank, p.relations.clone(), p.sub_lifts.clone());
    let desc = |s: &str| format!("{s} over {ring}, U = {u:?}, L = {l:?}");
    let c1 = closure_dim0(&ring, rank, &u, &l)?;

    check(out, 1, closure_dim0(&ring, rank, &u, &c1).and_then(|c2| same_submodule(&c1, &c2, rank, &ring)), || desc("lic(lic L) != lic L"));

    let mut u2 = u.clone();
    u2.push(random_vector(rng, &ring, rank));
    check(out, 2, closure_dim0(&ring, rank, &u2, &l).and_then(|c| module_subset(&c1, &c, rank, &ring)), || desc("h(lic L M) not in lic h(L)"));

    let half = &l[..l.len() / 2];
    check(out, 3, closure_dim0(&ring, rank, &u, half).and_then(|c| module_subset(&c, &c1, rank, &ring)), || desc("closures do not nest"));

    let q = random_presentation(rng, &ring);
    let total = rank + q.rank;
    let su: Vec<FreeVec> = u.iter().map(|v| block(v, 0, total, &ring)).chain(q.relations.iter().map(|v| block(v, rank, total, &ring))).collect();
    let sl: Vec<FreeVec> = l.iter().map(|v| block(v, 0, total, &ring)).chain(q.sub_lifts.iter().map(|v| block(v, rank, total, &ring))).collect();
    let sum_check = (|| {
        let whole = closure_dim0(&ring, total, &su, &sl)?;
        let c2 = closure_dim0(&ring, q.rank, &q.relations, &q.sub_lifts)?;
        let parts: Vec<FreeVec> = c1.iter().map(|v| block(v, 0, total, &ring)).chain(c2.iter().map(|v| block(v, rank, total, &ring))).collect();
        same_submodule(&whole, &parts, total, &ring)
    })();
    check(out, 4, sum_check, || desc("direct sum closure differs"));

    let j = polys(&ring, &random_monomial_ideal(rng, ring.nvars(), 2, 2));
    let colon_check = (|| {
        let colon = module_colon_ideal(&c1, &j, rank, &ring)?;
        let again = closure_dim0(&ring, rank, &u, &colon)?;
        same_submodule(&colon, &again, rank, &ring)
    })();
    check(out, 7, colon_check, || desc("(L :_M J) is not closed"));

    let semi = (|| {
        let jl: Vec<FreeVec> = j.iter().flat_map(|g| l.iter().map(move |v| v.scale_poly(g))).collect();
        let left = closure_dim0(&ring, rank, &u, &jl)?;
        let jm = crate::algebra::ops::monomials_of(&j)?;
        let jbar = polys(&ring, &monomial_ideal_closure(&jm, &ring)?);
        let prod: Vec<FreeVec> = jbar.iter().flat_map(|g| c1.iter().map(move |v| v.scale_poly(g))).collect();
        let right = closure_dim0(&ring, rank, &u, &prod)?;
        same_submodule(&left, &right, rank, &ring)
    })();
    check(out, 10, semi, || desc("lic(JL) != lic(closure(J) lic L)"));

    let z = if rng.gen_bool(0.5) && !c1.is_empty() {
        let mut acc = FreeVec::zero(ring.field(), ring.nvars(), rank);
        for g in &c1 {
            acc = &acc + &g.scale_poly(&random_element(rng, &ring, 1));
        }
        acc
    } else {
        random_vector(rng, &ring, rank)
    };
    let k = p.kernel_generators();
    if let Some(_cert) = free_closure_member(&z, &k, &ring, SearchOptions::with_max_degree(4))? {
        let mut gens = k.clone();
        gens.extend(p.maximal_multiples());
        check(out, 11, module_member(&z, &gens, &ring), || desc(&format!("certified {z:?} outside L + mM")));
    }
    Ok(())
}

fn split_trial(rng: &mut ChaCha8Rng, out: &mut Vec<Outcome>) -> Result<()> {
    let ring = RingDescriptor::poly(Field::Rational, &["x", "y"])?;
    let rank = rng.gen_range(1..=2);
    let ideals: Vec<Vec<Monomial>> = (0..rank)
        .map(|_| if rng.gen_bool(0.15) { Vec::new() } else { random_monomial_ideal(rng, 2, 3, 5) })
        .collect();
    let desc = |s: &str| format!("{s} for {ideals:?}");
    let closures: Vec<Vec<Monomial>> = ideals.iter().map(|i| newton_closure_monomials(i, 2)).collect();

    let idem = closures.iter().all(|c| newton_closure_monomials(c, 2) == *c);
    check(out, 1, Ok(idem), || desc("closure is not idempotent"));

    let u = Monomial(vec![rng.gen_range(0..=2), rng.gen_range(0..=2)]);
    let func = (|| {
        for (i, c) in ideals.iter().zip(&closures) {
            let ui: Vec<Polynomial> = polys(&ring, &i.iter().map(|g| g.mul(&u)).collect::<Vec<_>>());
            for g in c {
                if !closure_contains(&Polynomial::monomial(ring.field(), g.mul(&u)), &ui, &ring)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })();
    check(out, 2, func, || desc(&format!("multiplication by {u:?} breaks functoriality")));

    let nest = (|| {
        for (i, c) in ideals.iter().zip(&closures) {
            let sub = newton_closure_monomials(&i[..i.len().div_ceil(2)], 2);
            let big = polys(&ring, c);
            for g in polys(&ring, &sub) {
                if !ideal_member(&g, &big, &ring)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })();
    check(out, 3, nest, || desc("closures do not nest"));

    let k: Vec<FreeVec> = ideals
        .iter()
        .enumerate()
        .flat_map(|(p, i)| i.iter().map(move |m| (p, m)))
        .map(|(p, m)| FreeVec::basis_multiple(rank, p, Polynomial::monomial(ring.field(), m.clone())))
        .collect();
    let pos = rng.gen_range(0..rank);
    if let Some(g) = closures[pos].get(rng.gen_range(0..closures[pos].len().max(1))) {
        let z = FreeVec::basis_multiple(rank, pos, Polynomial::monomial(ring.field(), g.clone()));
        let found = free_closure_member(&z, &k, &ring, SearchOptions::default()).map(|c| c.is_some());
        check(out, 4, found, || desc(&format!("closure generator {g:?} in slot {pos} has no certificate")));
    }

    let j = polys(&ring, &random_monomial_ideal(rng, 2, 2, 2));
    let colon = (|| {
        for c in &closures {
            if c.is_empty() {
                continue;
            }
            let col = ideal_colon(&polys(&ring, c), &j, &ring)?;
            if !same_ideal(&newton_closure(&col, &ring)?, &col, &ring)? {
                return Ok(false);
            }
        }
        Ok(true)
    })();
    check(out, 7, colon, || desc("colon of a closed ideal is not closed"));

    let semi = (|| {
        let jm = crate::algebra::ops::monomials_of(&j)?;
        let jbar = newton_closure_monomials(&jm, 2);
        for (i, c) in ideals.iter().zip(&closures) {
            let prod = |a: &[Monomial], b: &[Monomial]| -> Vec<Monomial> {
                a.iter().flat_map(|x| b.iter().map(move |y| x.mul(y))).collect()
            };
            let left = newton_closure_monomials(&minimize_monomials(&prod(&jm, i)), 2);
            let right = newton_closure_monomials(&minimize_monomials(&prod(&jbar, c)), 2);
            if left != right {
                return Ok(false);
            }
        }
        Ok(true)
    })();
    check(out, 10, semi, || desc("lic(JL) != lic(closure(J) closure(L))"));

    let e = Monomial(vec![rng.gen_range(0..=5), rng.gen_range(0..=5)]);
    let z = FreeVec::basis_multiple(rank, pos, Polynomial::monomial(ring.field(), e.clone()));
    if free_closure_member(&z, &k, &ring, SearchOptions::default())?.is_some() {
        let mut gens = k.clone();
        for v in 0..2 {
            for i in 0..rank {
                gens.push(FreeVec::basis_multiple(rank, i, ring.var(v)));
            }
        }
        check(out, 11, module_member(&z, &gens, &ring), || desc(&format!("certified {e:?} outside L + mM")));
    }
    Ok(())
}

/// Runs the property suite: even trials draw a dimension-zero instance, odd
/// trials a split-monomial one.
pub fn run_property_suite(seed: u64, trials: usize) -> PropsReport {
    let idx: Vec<usize> = (0..trials).collect();
    let outcomes: Vec<Vec<Outcome>> = par::run(&idx, |&t| {
        let mut rng = trial_rng(seed, t);
        let mut out = Vec::new();
        let r = if t % 2 == 0 {
            dim0_trial(&mut rng, &mut out)
        } else {
            split_trial(&mut rng, &mut out)
        };
        if let Err(e) = r {
            out.push((0, false, format!("instance error: {e}")));
        }
        out
    });
    let mut tallies: Vec<PropertyTally> = PROPERTY_ITEMS
        .iter()
        .map(|&(item, name)| PropertyTally {
            item,
            name,
            checked: 0,
            violations: 0,
        })
        .collect();
    let mut violations = Vec::new();
    for (t, outs) in outcomes.iter().enumerate() {
        for (item, ok, what) in outs {
            if let Some(tally) = tallies.iter_mut().find(|x| x.item == *item) {
                tally.checked += 1;
                if !ok {
                    tally.violations += 1;
                }
            }
            if !ok {
                violations.push(format!("trial {t}, item {item}: {what}"));
            }
        }
    }
    PropsReport {
        seed,
        trials,
        tallies,
        violations,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dim0SuiteReport {
    pub instances: usize,
    pub formula_mismatches: usize,
    pub uncertified: usize,
    pub max_certificate_degree: usize,
    pub tau_mismatches: usize,
    pub failures: Vec<String>,
}

fn socle_oracle(ring: &RingDescriptor) -> Result<BTreeSet<Monomial>> {
    let n = ring.nvars();
    Ok(ring
        .standard_monomials()?
        .into_iter()
        .filter(|b| (0..n).all(|v| !ring.is_standard(&b.mul(&Monomial::var(n, v, 1)))))
        .collect())
}

fn dim0_instance(seed: u64, t: usize) -> Result<(bool, usize, usize, bool, Vec<String>)> {
    let mut rng = trial_rng(seed, t);
    let ring = random_dim0_ring(&mut rng);
    let p = random_presentation(&mut rng, &ring);
    let mut fails = Vec::new();
    let mut lic = lic_exact_dim0(&p)?;
    lic.extend(p.relations.iter().cloned());
    let mut expected = p.kernel_generators();
    expected.extend(p.maximal_multiples());
    let formula_ok = same_submodule(&lic, &expected, p.rank, &ring)?;
    if !formula_ok {
        fails.push(format!("trial {t}: lic differs from L + mM over {ring}"));
    }
    let k = p.kernel_generators();
    let mut uncertified = 0;
    let mut max_deg = 0;
    for g in p.maximal_multiples() {
        match free_closure_member(&g, &k, &ring, SearchOptions::with_max_degree(4))? {
            Some(c) => max_deg = max_deg.max(c.degree),
            None => {
                uncertified += 1;
                fails.push(format!("trial {t}: no certificate of degree <= 4 for {g:?} over {ring}"));
            }
        }
    }
    let tau = tau_m_dim0(&ring)?;
    let oracle = socle_oracle(&ring)?;
    let supported = tau
        .generators
        .iter()
        .all(|g| g.monomials().all(|m| oracle.contains(m)));
    let tau_ok = tau.equals_socle && tau.dimension == oracle.len() && supported;
    if !tau_ok {
        fails.push(format!("trial {t}: tau_M differs from the socle over {ring}"));
    }
    Ok((formula_ok, uncertified, max_deg, tau_ok, fails))
}

/// The dimension-zero suite: formula, certificates of degree at most 4 for
/// `mM`, and `τ_M = socle`.
pub fn dim0_suite(seed: u64, trials: usize) -> Dim0SuiteReport {
    let idx: Vec<usize> = (0..trials).collect();
    let results = par::run(&idx, |&t| dim0_instance(seed, t));
    let mut rep = Dim0SuiteReport::default();
    for (t, r) in results.into_iter().enumerate() {
        rep.instances += 1;
        match r {
            Ok((formula_ok, unc, deg, tau_ok, fails)) => {
                rep.formula_mismatches += usize::from(!formula_ok);
                rep.uncertified += unc;
                rep.max_certificate_degree = rep.max_certificate_degree.max(deg);
                rep.tau_mismatches += usize::from(!tau_ok);
                rep.failures.extend(fails);
            }
            Err(e) => {
                rep.formula_mismatches += 1;
                rep.failures.push(format!("trial {t}: {e}"));
            }
        }
    }
    rep
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossOracleReport {
    pub ideals: usize,
    pub closure_generators: usize,
    pub certified: usize,
    pub max_degree_used: usize,
    pub outside_checked: usize,
    pub false_certificates: usize,
    pub failures: Vec<String>,
}

/// Monomials outside the closure in the box `[0, d]^2` that are maximal
/// there under divisibility.
fn outside_corners(closure: &[Monomial], d: u32) -> Vec<Monomial> {
    let inside = |m: &Monomial| closure.iter().any(|g| g.divides(m));
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d {
            let m = Monomial(vec![a, b]);
            if inside(&m) {
                continue;
            }
            let up_x = a < d && !inside(&Monomial(vec![a + 1, b]));
            let up_y = b < d && !inside(&Monomial(vec![a, b + 1]));
            if !up_x && !up_y {
                out.push(m);
            }
        }
    }
    out
}

fn cross_instance(seed: u64, t: usize) -> Result<CrossOracleReport> {
    let mut rng = trial_rng(seed, t);
    let ring = RingDescriptor::poly(Field::Rational, &["x", "y"])?;
    let gens = random_monomial_ideal(&mut rng, 2, 4, 6);
    let gp = polys(&ring, &gens);
    let closure = newton_closure_monomials(&gens, 2);
    let opts = SearchOptions::with_max_degree(6);
    let mut rep = CrossOracleReport {
        ideals: 1,
        ..Default::default()
    };
    for g in &closure {
        rep.closure_generators += 1;
        match certify_ideal_member(&Polynomial::monomial(ring.field(), g.clone()), &gp, &ring, opts)? {
            Some(c) => {
                rep.certified += 1;
                rep.max_degree_used = rep.max_degree_used.max(c.degree);
            }
            None => rep.failures.push(format!("trial {t}: {g:?} in closure of {gens:?} not certified")),
        }
    }
    let d = gens.iter().map(|m| m.degree()).max().unwrap_or(1) + 1;
    for m in outside_corners(&closure, d) {
        rep.outside_checked += 1;
        if certify_ideal_member(&Polynomial::monomial(ring.field(), m.clone()), &gp, &ring, opts)?.is_some() {
            rep.false_certificates += 1;
            rep.failures.push(format!("trial {t}: certificate for {m:?} outside closure of {gens:?}"));
        }
    }
    Ok(rep)
}

/// Newton closure against certificate search on random monomial ideals in
/// two variables with at most four generators of degree at most six.
pub fn newton_cross_oracle(seed: u64, trials: usize) -> CrossOracleReport {
    let idx: Vec<usize> = (0..trials).collect();
    let parts = par::run(&idx, |&t| cross_instance(seed, t));
    let mut rep = CrossOracleReport::default();
    for (t, p) in parts.into_iter().enumerate() {
        match p {
            Ok(p) => {
                rep.ideals += p.ideals;
                rep.closure_generators += p.closure_generators;
                rep.certified += p.certified;
                rep.max_degree_used = rep.max_degree_used.max(p.max_degree_used);
                rep.outside_checked += p.outside_checked;
                rep.false_certificates += p.false_certificates;
                rep.failures.extend(p.failures);
            }
            Err(e) => {
                rep.ideals += 1;
                rep.failures.push(format!("trial {t}: {e}"));
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_rings_are_artinian_with_m5_zero() {
        let mut rng = trial_rng(7, 0);
        for _ in 0..20 {
            let r = random_dim0_ring(&mut rng);
            assert!(r.is_artinian());
            assert!(r.standard_monomials().unwrap().iter().all(|m| m.degree() < 5));
        }
    }

    #[test]
    fn suites_are_reproducible() {
        assert_eq!(run_property_suite(3, 6), run_property_suite(3, 6));
    }

    #[test]
    fn small_property_run_is_clean() {
        let r = run_property_suite(11, 10);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
    }

    #[test]
    fn corners_of_square_closure() {
        let c = newton_closure_monomials(&[Monomial(vec![2, 0]), Monomial(vec![0, 2])], 2);
        assert_eq!(outside_corners(&c, 3), vec![Monomial(vec![0, 1]), Monomial(vec![1, 0])]);
    }
}
