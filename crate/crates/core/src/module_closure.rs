//! Liftable integral closure `lic L M` of a submodule `L ⊆ M`, computed on a
//! free cover `F -> M` with `K` the preimage of `L`, and Rees closure where
//! the valuations involved can be enumerated.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::grading::Grading;
use crate::algebra::ops::{module_member, monomials_of};
use crate::algebra::{
    ExponentSet, FreeVec, Monomial, NumericalSemigroup, Polynomial, RingDescriptor,
};
use crate::certificate::IntegralityCertificate;
use crate::error::{Error, Result};
use crate::ideal_closure::{closure_contains, newton_closure};
use crate::search::{free_closure_member, SearchOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    Member,
    NonMember,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ExactOracle,
    Certificate,
    ValuationCheck,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub membership: Membership,
    pub provenance: Provenance,
    /// Which route decided, e.g. `dim0-formula` or `nakayama`.
    pub route: String,
    pub certificate: Option<IntegralityCertificate>,
}

impl Verdict {
    fn new(membership: Membership, provenance: Provenance, route: &str) -> Self {
        Verdict {
            membership,
            provenance,
            route: route.to_string(),
            certificate: None,
        }
    }

    pub fn is_conclusive(&self) -> bool {
        self.membership != Membership::Inconclusive
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub element: FreeVec,
    pub lic: Verdict,
    pub rees: Option<Verdict>,
}

/// `M = F / U` with `F = R^rank`, and `L ⊆ M` given by lifts to `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmodulePresentation {
    pub ring: RingDescriptor,
    pub rank: usize,
    pub relations: Vec<FreeVec>,
    pub sub_lifts: Vec<FreeVec>,
    /// Images of the basis vectors when `M` is an ideal of the ring.
    pub embedding: Option<Vec<Polynomial>>,
}

fn check_vec(ring: &RingDescriptor, rank: usize, v: &FreeVec) -> Result<()> {
    if v.rank() != rank {
        return Err(Error::RankMismatch {
            expected: rank,
            found: v.rank(),
        });
    }
    for c in v.coords() {
        ring.check_element(c)?;
    }
    Ok(())
}

impl SubmodulePresentation {
    pub fn new(
        ring: RingDescriptor,
        rank: usize,
        relations: Vec<FreeVec>,
        sub_lifts: Vec<FreeVec>,
    ) -> Result<Self> {
        for v in relations.iter().chain(&sub_lifts) {
            check_vec(&ring, rank, v)?;
        }
        Ok(SubmodulePresentation {
            ring,
            rank,
            relations,
            sub_lifts,
            embedding: None,
        })
    }

    /// `L ⊆ M = R^rank`.
    pub fn free(ring: RingDescriptor, rank: usize, sub_lifts: Vec<FreeVec>) -> Result<Self> {
        Self::new(ring, rank, Vec::new(), sub_lifts)
    }

    /// `L ⊆ M` for monomial ideals `L ⊆ M` of the ring, presented by
    /// `e_i -> m_i` with the monomial syzygies as relations.
    pub fn ideal_pair(ring: RingDescriptor, l: &[Polynomial], m: &[Polynomial]) -> Result<Self> {
        for p in l.iter().chain(m) {
            ring.check_element(p)?;
        }
        let f = ring.field();
        let nv = ring.nvars();
        let lm = monomials_of(l)?;
        let mm: Vec<Monomial> = monomials_of(m)?.into_iter().filter(|x| ring.is_standard(x)).collect();
        let r = mm.len();
        if r == 0 {
            return Err(Error::InvalidInput("the ambient ideal is zero".into()));
        }
        let mono = |e: Monomial| Polynomial::monomial(f, e);
        let mut relations = Vec::new();
        match ring.semigroup_data() {
            Some(s) => {
                for i in 0..r {
                    for j in i + 1..r {
                        let (a, b) = (mm[i].0[0] as u64, mm[j].0[0] as u64);
                        let both = ExponentSet::generated(s, &[a])?.intersect(s, &ExponentSet::generated(s, &[b])?);
                        for d in both.minimal_generators(s) {
                            let mut v = FreeVec::zero(f, nv, r);
                            let mut c = v.clone().into_coords();
                            c[i] = mono(Monomial(vec![(d - a) as u32]));
                            c[j] = -&mono(Monomial(vec![(d - b) as u32]));
                            v = FreeVec::new(c);
                            relations.push(v);
                        }
                    }
                }
            }
            None => {
                for i in 0..r {
                    for j in i + 1..r {
                        let l = mm[i].lcm(&mm[j]);
                        if !ring.is_standard(&l) {
                            continue;
                        }
                        let mut c = FreeVec::zero(f, nv, r).into_coords();
                        c[i] = mono(mm[i].quotient_of(&l).unwrap());
                        c[j] = -&mono(mm[j].quotient_of(&l).unwrap());
                        relations.push(FreeVec::new(c));
                    }
                    for q in ring.relations() {
                        let g = q.gcd(&mm[i]);
                        let c = g.quotient_of(q).unwrap();
                        relations.push(FreeVec::basis_multiple(r, i, mono(c)));
                    }
                }
            }
        }
        let mut sub_lifts = Vec::new();
        for x in lm.iter().filter(|x| ring.is_standard(x)) {
            let lift = match ring.semigroup_data() {
                Some(s) => mm.iter().position(|g| x.0[0] >= g.0[0] && s.contains((x.0[0] - g.0[0]) as u64)).map(|i| {
                    FreeVec::basis_multiple(r, i, mono(Monomial(vec![x.0[0] - mm[i].0[0]])))
                }),
                None => mm
                    .iter()
                    .position(|g| g.divides(x))
                    .map(|i| FreeVec::basis_multiple(r, i, mono(mm[i].quotient_of(x).unwrap()))),
            };
            match lift {
                Some(v) => sub_lifts.push(v),
                None => {
                    return Err(Error::InvalidInput(format!(
                        "{} is not in the ambient ideal",
                        x.render(&ring.var_names())
                    )))
                }
            }
        }
        let mut p = Self::new(ring, r, relations, sub_lifts)?;
        p.embedding = Some(mm.into_iter().map(mono).collect());
        Ok(p)
    }

    /// Generators of `K = π⁻¹(L)`: the lifts followed by the relations.
    pub fn kernel_generators(&self) -> Vec<FreeVec> {
        self.sub_lifts.iter().chain(&self.relations).cloned().collect()
    }

    /// `m e_i` for the maximal ideal generators `m` and every basis vector.
    pub fn maximal_multiples(&self) -> Vec<FreeVec> {
        let mut out = Vec::new();
        for g in self.ring.maximal_ideal() {
            for i in 0..self.rank {
                out.push(FreeVec::basis_multiple(self.rank, i, g.clone()));
            }
        }
        out
    }

    /// Image of `z` in the ring, when `M` is an ideal.
    pub fn image(&self, z: &FreeVec) -> Option<Polynomial> {
        let emb = self.embedding.as_ref()?;
        let mut acc = self.ring.zero();
        for (c, m) in z.coords().iter().zip(emb) {
            acc = &acc + &(c * m);
        }
        Some(self.ring.reduce(&acc))
    }

    /// For `L = ⊕ I_i e_i ⊆ R^r` with monomial `I_i` over a polynomial ring,
    /// the monomial generators of each `I_i`.
    pub fn split_monomial(&self) -> Option<Vec<Vec<Monomial>>> {
        if !self.relations.is_empty() || !matches!(self.ring, RingDescriptor::Poly { .. }) {
            return None;
        }
        split_parts(&self.sub_lifts, self.rank)
    }

    fn check_element(&self, z: &FreeVec) -> Result<()> {
        check_vec(&self.ring, self.rank, z)
    }
}

fn split_parts(lifts: &[FreeVec], rank: usize) -> Option<Vec<Vec<Monomial>>> {
    let mut parts = vec![Vec::new(); rank];
    for v in lifts {
        let nz: Vec<usize> = (0..rank).filter(|&i| !v.coord(i).is_zero()).collect();
        match nz.as_slice() {
            [] => {}
            [i] => parts[*i].push(v.coord(*i).as_monomial()?.clone()),
            _ => return None,
        }
    }
    Some(parts)
}

/// `z ∈ K + mF`, equivalently the image of `z` lies in `L + mM`.
fn in_nakayama_module(z: &FreeVec, pres: &SubmodulePresentation) -> Result<Option<bool>> {
    if let Some(s) = pres.ring.semigroup_data() {
        let Some(img) = pres.image(z) else { return Ok(None) };
        let target = semigroup_l_plus_mm(pres, s)?;
        return Ok(Some(img.monomials().all(|m| target.contains(s, m.0[0] as u64))));
    }
    let mut gens = pres.kernel_generators();
    gens.extend(pres.maximal_multiples());
    Ok(Some(module_member(z, &gens, &pres.ring)?))
}

fn lift_exponents(pres: &SubmodulePresentation, lifts: &[FreeVec]) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for l in lifts {
        let img = pres
            .image(l)
            .ok_or_else(|| Error::Undecidable("semigroup modules need an ideal embedding".into()))?;
        out.extend(img.monomials().map(|m| m.0[0] as u64));
    }
    Ok(out)
}

fn semigroup_l_plus_mm(pres: &SubmodulePresentation, s: &NumericalSemigroup) -> Result<ExponentSet> {
    let mut exps = lift_exponents(pres, &pres.sub_lifts)?;
    let m_exps: Vec<u64> = pres
        .embedding
        .as_ref()
        .unwrap()
        .iter()
        .map(|p| p.as_monomial().map(|m| m.0[0] as u64).unwrap_or(0))
        .collect();
    for &a in s.minimal_generators() {
        for &b in &m_exps {
            exps.push(a + b);
        }
    }
    ExponentSet::generated(s, &exps)
}

fn attach_certificate(
    mut v: Verdict,
    z: &FreeVec,
    pres: &SubmodulePresentation,
    opts: SearchOptions,
) -> Result<Verdict> {
    if v.membership == Membership::Member {
        v.certificate = free_closure_member(z, &pres.kernel_generators(), &pres.ring, opts)?;
    }
    Ok(v)
}

/// Decides `z ∈ lic L M` where an exact route exists, otherwise searches for
/// a certificate and falls back to "inconclusive".
pub fn lic_member(z: &FreeVec, pres: &SubmodulePresentation, opts: SearchOptions) -> Result<ClosureReport> {
    pres.check_element(z)?;
    let ring = &pres.ring;
    let lic = if ring.is_artinian() {
        let mut gens = pres.kernel_generators();
        gens.extend(pres.maximal_multiples());
        let member = module_member(z, &gens, ring)?;
        let m = if member { Membership::Member } else { Membership::NonMember };
        attach_certificate(Verdict::new(m, Provenance::ExactOracle, "dim0-formula"), z, pres, opts)?
    } else if let Some(parts) = pres.split_monomial() {
        let mut member = true;
        for (i, part) in parts.iter().enumerate() {
            let gens: Vec<Polynomial> = part.iter().map(|m| Polynomial::monomial(ring.field(), m.clone())).collect();
            if !closure_contains(z.coord(i), &gens, ring)? {
                member = false;
            }
        }
        let m = if member { Membership::Member } else { Membership::NonMember };
        attach_certificate(Verdict::new(m, Provenance::ExactOracle, "split-monomial"), z, pres, opts)?
    } else {
        let k = pres.kernel_generators();
        match free_closure_member(z, &k, ring, opts)? {
            Some(cert) => {
                let mut v = Verdict::new(Membership::Member, Provenance::Certificate, "certificate");
                v.certificate = Some(cert);
                v
            }
            None => {
                let refs: Vec<&FreeVec> = std::iter::once(z).chain(&k).collect();
                let local = ring.is_semigroup() || Grading::detect(ring.nvars(), pres.rank, &refs).is_some();
                match (local, in_nakayama_module(z, pres)?) {
                    (true, Some(false)) => Verdict::new(Membership::NonMember, Provenance::ExactOracle, "nakayama"),
                    _ => Verdict::new(Membership::Inconclusive, Provenance::Inconclusive, "search-exhausted"),
                }
            }
        }
    };
    Ok(ClosureReport {
        element: z.clone(),
        lic,
        rees: None,
    })
}

/// Like [`lic_member`], with the Rees verdict added where it is decidable.
pub fn compare(z: &FreeVec, pres: &SubmodulePresentation, opts: SearchOptions) -> Result<ClosureReport> {
    let mut report = lic_member(z, pres, opts)?;
    report.rees = match rees_member(z, pres) {
        Ok(b) => Some(Verdict::new(
            if b { Membership::Member } else { Membership::NonMember },
            Provenance::ValuationCheck,
            "valuations",
        )),
        Err(Error::Undecidable(_)) => None,
        Err(e) => return Err(e),
    };
    // lic is contained in the Rees closure
    if let Some(rees) = &report.rees {
        if report.lic.membership == Membership::Inconclusive && rees.membership == Membership::NonMember {
            report.lic = Verdict::new(Membership::NonMember, Provenance::ValuationCheck, "rees-exclusion");
        }
    }
    Ok(report)
}

/// `lic L M = L + mM` over an Artinian ring, as lifts to `F`. Redundant
/// generators are dropped.
pub fn lic_exact_dim0(pres: &SubmodulePresentation) -> Result<Vec<FreeVec>> {
    let ring = &pres.ring;
    if !ring.is_artinian() {
        return Err(Error::NotZeroDimensional(ring.dimension()));
    }
    let mut cands: Vec<FreeVec> = pres.sub_lifts.clone();
    cands.extend(pres.maximal_multiples());
    let cands: Vec<FreeVec> = cands.into_iter().map(|v| v.map(|c| ring.reduce(c))).collect();
    let mut keep: Vec<bool> = vec![true; cands.len()];
    for i in 0..cands.len() {
        let others: Vec<FreeVec> = pres
            .relations
            .iter()
            .cloned()
            .chain((0..cands.len()).filter(|&k| k != i && keep[k]).map(|k| cands[k].clone()))
            .collect();
        if module_member(&cands[i], &others, ring)? {
            keep[i] = false;
        }
    }
    Ok(cands
        .into_iter()
        .zip(keep)
        .filter_map(|(v, k)| k.then_some(v))
        .collect())
}

/// `⊕ closure(I_i) e_i` for monomial ideals over a polynomial ring.
pub fn lic_split_monomial(ideals: &[Vec<Polynomial>], ring: &RingDescriptor) -> Result<Vec<Vec<Polynomial>>> {
    if !matches!(ring, RingDescriptor::Poly { .. }) {
        return Err(Error::UnsupportedRing(format!("{ring}: split closures need a polynomial ring")));
    }
    ideals.iter().map(|i| newton_closure(i, ring)).collect()
}

/// Rees closure membership, decided by valuations of the domains `R/p` for
/// the minimal primes `p`. Returns `Undecidable` outside the supported
/// classes.
pub fn rees_member(z: &FreeVec, pres: &SubmodulePresentation) -> Result<bool> {
    pres.check_element(z)?;
    let ring = &pres.ring;
    if ring.is_semigroup() {
        let Some(img) = pres.image(z) else {
            return Err(Error::Undecidable("semigroup modules need an ideal embedding".into()));
        };
        // the only valuation ring is k[[t]]; compare orders
        let l_exps = lift_exponents(pres, &pres.sub_lifts)?;
        return Ok(match (img.min_degree(), l_exps.iter().min()) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(o), Some(&l)) => o as u64 >= l,
        });
    }
    if let (RingDescriptor::Poly { .. }, Some(img)) = (ring, pres.image(z)) {
        let imgs: Vec<Polynomial> = pres.sub_lifts.iter().filter_map(|l| pres.image(l)).collect();
        if monomials_of(&imgs).is_ok() {
            return closure_contains(&img, &imgs, ring);
        }
    }
    for prime in ring.minimal_primes()? {
        if !rees_at_prime(z, pres, &prime)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn rees_at_prime(z: &FreeVec, pres: &SubmodulePresentation, prime: &BTreeSet<usize>) -> Result<bool> {
    let ring = &pres.ring;
    let names = ring.var_names();
    let keep: Vec<usize> = (0..ring.nvars()).filter(|i| !prime.contains(i)).collect();
    let kept_names: Vec<&str> = keep.iter().map(|&i| names[i].as_str()).collect();
    let local = RingDescriptor::poly(ring.field(), &kept_names)?;
    let restrict = |v: &FreeVec| v.map(|c| c.restrict_vars(&keep));
    let zr = restrict(z);
    let lr: Vec<FreeVec> = pres.sub_lifts.iter().map(restrict).collect();
    let ur: Vec<FreeVec> = pres.relations.iter().map(restrict).collect();
    if keep.is_empty() {
        // R/p is the field: the closure of L in M ⊗ k is L ⊗ k itself
        let gens: Vec<FreeVec> = lr.into_iter().chain(ur).collect();
        return module_member(&zr, &gens, &local);
    }
    let mut killed = vec![false; pres.rank];
    for u in &ur {
        let nz: Vec<usize> = (0..pres.rank).filter(|&i| !u.coord(i).is_zero()).collect();
        match nz.as_slice() {
            [] => {}
            [i] if u.coord(*i).as_constant().is_some() => killed[*i] = true,
            _ => {
                return Err(Error::Undecidable(format!(
                    "M/pM is not visibly free over {local}"
                )))
            }
        }
    }
    let free: Vec<usize> = (0..pres.rank).filter(|&i| !killed[i]).collect();
    let project = |v: &FreeVec| FreeVec::new(free.iter().map(|&i| v.coord(i).clone()).collect());
    let lp: Vec<FreeVec> = lr.iter().map(project).collect();
    let Some(parts) = split_parts(&lp, free.len()) else {
        return Err(Error::Undecidable(format!(
            "the image of L over {local} is not a direct sum of monomial ideals"
        )));
    };
    let zp = project(&zr);
    for (i, part) in parts.iter().enumerate() {
        let gens: Vec<Polynomial> = part.iter().map(|m| Polynomial::monomial(local.field(), m.clone())).collect();
        if !closure_contains(zp.coord(i), &gens, &local)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndependenceOutcome {
    Consistent,
    Inconsistent,
    Indeterminate,
}

/// Compares lic verdicts for probes given by their lifts under two
/// presentations of the same `M / L`.
pub fn presentation_independence_check(
    a: &SubmodulePresentation,
    b: &SubmodulePresentation,
    probes: &[(FreeVec, FreeVec)],
    opts: SearchOptions,
) -> Result<(IndependenceOutcome, Vec<(Membership, Membership)>)> {
    let mut verdicts = Vec::new();
    let mut outcome = IndependenceOutcome::Consistent;
    for (za, zb) in probes {
        let va = lic_member(za, a, opts)?.lic.membership;
        let vb = lic_member(zb, b, opts)?.lic.membership;
        if va == Membership::Inconclusive || vb == Membership::Inconclusive {
            if va != vb && outcome == IndependenceOutcome::Consistent {
                outcome = IndependenceOutcome::Indeterminate;
            }
        } else if va != vb {
            outcome = IndependenceOutcome::Inconsistent;
        }
        verdicts.push((va, vb));
    }
    Ok((outcome, verdicts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn quartic_example_is_member_with_degree_two() {
        let r = RingDescriptor::poly(q(), &["x", "y"]).unwrap();
        let l = vec![FreeVec::new(vec![r.monomial(&[4, 0])]), FreeVec::new(vec![r.monomial(&[0, 4])])];
        let p = SubmodulePresentation::free(r.clone(), 1, l).unwrap();
        let rep = lic_member(&FreeVec::new(vec![r.monomial(&[2, 2])]), &p, SearchOptions::default()).unwrap();
        assert_eq!(rep.lic.membership, Membership::Member);
        assert_eq!(rep.lic.certificate.unwrap().degree, 2);
    }

    #[test]
    fn two_three_separates_lic_from_rees() {
        let r = RingDescriptor::semigroup(q(), &[2, 3]).unwrap();
        let l = [r.monomial(&[4]), r.monomial(&[7])];
        let m = [r.monomial(&[4]), r.monomial(&[5])];
        let p = SubmodulePresentation::ideal_pair(r.clone(), &l, &m).unwrap();
        let z = FreeVec::unit(q(), 1, 2, 1);
        let rep = compare(&z, &p, SearchOptions::default()).unwrap();
        assert_eq!(rep.lic.membership, Membership::NonMember);
        assert_eq!(rep.lic.route, "nakayama");
        assert_eq!(rep.rees.unwrap().membership, Membership::Member);
    }

    #[test]
    fn square_zero_line_separates_rees_from_ehu() {
        // M = Rx ≅ R/(x) over k[x]/(x^2), L = 0
        let r = RingDescriptor::quotient(q(), &["x"], vec![Monomial(vec![2])]).unwrap();
        let p = SubmodulePresentation::new(r.clone(), 1, vec![FreeVec::new(vec![r.var(0)])], vec![]).unwrap();
        let z = FreeVec::unit(q(), 1, 1, 0);
        let rep = compare(&z, &p, SearchOptions::default()).unwrap();
        assert_eq!(rep.lic.membership, Membership::NonMember);
        assert_eq!(rep.rees.unwrap().membership, Membership::NonMember);
    }

    #[test]
    fn dim0_formula_examples() {
        let r = RingDescriptor::quotient(q(), &["x"], vec![Monomial(vec![3])]).unwrap();
        let p = SubmodulePresentation::free(r.clone(), 1, vec![]).unwrap();
        assert_eq!(lic_exact_dim0(&p).unwrap(), vec![FreeVec::new(vec![r.var(0)])]);
        let full = SubmodulePresentation::free(r.clone(), 1, vec![FreeVec::unit(q(), 1, 1, 0)]).unwrap();
        assert_eq!(lic_exact_dim0(&full).unwrap(), vec![FreeVec::unit(q(), 1, 1, 0)]);
        let m2 = RingDescriptor::quotient(
            q(),
            &["x", "y"],
            vec![Monomial(vec![2, 0]), Monomial(vec![1, 1]), Monomial(vec![0, 2])],
        )
        .unwrap();
        let p2 = SubmodulePresentation::free(m2.clone(), 2, vec![]).unwrap();
        let g = lic_exact_dim0(&p2).unwrap();
        assert_eq!(g.len(), 4);
        for v in &g {
            let c = free_closure_member(v, &[], &m2, SearchOptions::with_max_degree(2)).unwrap().unwrap();
            assert_eq!(c.degree, 2);
        }
        let poly = RingDescriptor::poly(q(), &["x"]).unwrap();
        assert!(matches!(
            lic_exact_dim0(&SubmodulePresentation::free(poly, 1, vec![]).unwrap()),
            Err(Error::NotZeroDimensional(1))
        ));
    }

    #[test]
    fn split_monomial_closures() {
        let r = RingDescriptor::poly(q(), &["x", "y"]).unwrap();
        let p = |e: &[u32]| r.monomial(e);
        let out = lic_split_monomial(&[vec![p(&[2, 0]), p(&[0, 2])], vec![p(&[3, 0]), p(&[0, 3])]], &r).unwrap();
        assert_eq!(out[0], vec![p(&[2, 0]), p(&[1, 1]), p(&[0, 2])]);
        assert_eq!(out[1].len(), 4);
        let zero_part = lic_split_monomial(&[vec![], vec![p(&[2, 0]), p(&[0, 2])]], &r).unwrap();
        assert!(zero_part[0].is_empty());
    }

    #[test]
    fn members_of_l_are_rees_members() {
        let r = RingDescriptor::semigroup(q(), &[2, 3]).unwrap();
        let p = SubmodulePresentation::ideal_pair(r.clone(), &[r.monomial(&[4])], &[r.monomial(&[4]), r.monomial(&[5])]).unwrap();
        assert!(rees_member(&p.sub_lifts[0], &p).unwrap());
    }

    #[test]
    fn presentation_with_redundant_generator_agrees() {
        let r = RingDescriptor::quotient(q(), &["x", "y"], vec![Monomial(vec![2, 0]), Monomial(vec![0, 2])]).unwrap();
        let a = SubmodulePresentation::free(r.clone(), 2, vec![]).unwrap();
        // R^2 presented as R^3 / (e3 - e1)
        let rel = FreeVec::new(vec![-&r.one(), r.zero(), r.one()]);
        let b = SubmodulePresentation::new(r.clone(), 3, vec![rel], vec![]).unwrap();
        let probes = vec![
            (FreeVec::new(vec![r.var(0), r.zero()]), FreeVec::new(vec![r.zero(), r.zero(), r.var(0)])),
            (FreeVec::new(vec![r.one(), r.zero()]), FreeVec::new(vec![r.zero(), r.zero(), r.one()])),
        ];
        let (o, v) = presentation_independence_check(&a, &b, &probes, SearchOptions::default()).unwrap();
        assert_eq!(o, IndependenceOutcome::Consistent);
        assert_eq!(v[0].0, Membership::Member);
        assert_eq!(v[1].0, Membership::NonMember);
    }
}
