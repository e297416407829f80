//! Ideal and module operations over polynomial rings and monomial quotients.
//! Quotients are handled by adding `m * e_p` for every defining monomial `m`
//! and every position `p`, then working in the ambient polynomial ring.

use std::collections::BTreeSet;

use super::groebner::GroebnerBasis;
use super::monomial::{Monomial, MonomialOrder};
use super::poly::{FreeVec, Polynomial};
use super::ring::{minimal_transversals, minimize_monomials, RingDescriptor};
use super::semigroup::ExponentSet;
use crate::error::{Error, Result};

/// An ideal given either by generators or, in a semigroup ring, by its
/// exponent set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ideal {
    Generators(Vec<Polynomial>),
    Exponents(ExponentSet),
}

fn require_flat(ring: &RingDescriptor) -> Result<()> {
    if ring.is_semigroup() {
        return Err(Error::UnsupportedRing(format!(
            "{ring}: semigroup ring submodules are handled through exponent sets"
        )));
    }
    Ok(())
}

fn check_rank(rank: usize, vs: &[&FreeVec]) -> Result<()> {
    for v in vs {
        if v.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: v.rank(),
            });
        }
    }
    Ok(())
}

fn check_vecs(ring: &RingDescriptor, vs: &[&FreeVec]) -> Result<()> {
    for v in vs {
        for c in v.coords() {
            ring.check_element(c)?;
        }
    }
    Ok(())
}

/// Generators plus the defining monomials in every position.
fn flattened(ring: &RingDescriptor, rank: usize, gens: &[FreeVec]) -> Vec<FreeVec> {
    let mut out: Vec<FreeVec> = gens.iter().map(|g| g.map(|c| ring.reduce(c))).collect();
    for m in ring.relations() {
        for p in 0..rank {
            out.push(FreeVec::basis_multiple(
                rank,
                p,
                Polynomial::monomial(ring.field(), m.clone()),
            ));
        }
    }
    out
}

/// Gröbner basis of the submodule generated by `gens` (together with the
/// defining ideal of `ring`) in `k[x]^rank`.
pub fn module_groebner(
    ring: &RingDescriptor,
    rank: usize,
    gens: &[FreeVec],
    order: MonomialOrder,
) -> Result<GroebnerBasis> {
    require_flat(ring)?;
    check_rank(rank, &gens.iter().collect::<Vec<_>>())?;
    check_vecs(ring, &gens.iter().collect::<Vec<_>>())?;
    Ok(GroebnerBasis::new(
        ring.field(),
        ring.nvars(),
        rank,
        order,
        &flattened(ring, rank, gens),
    ))
}

fn as_vecs(ps: &[Polynomial]) -> Vec<FreeVec> {
    ps.iter().map(|p| FreeVec::new(vec![p.clone()])).collect()
}

fn from_vecs(vs: Vec<FreeVec>) -> Vec<Polynomial> {
    vs.into_iter().map(|v| v.into_coords().remove(0)).collect()
}

fn check_polys(ring: &RingDescriptor, ps: &[&Polynomial]) -> Result<()> {
    for p in ps {
        ring.check_element(p)?;
    }
    Ok(())
}

/// Reduced Gröbner basis of the ideal generated by `gens`; for a quotient the
/// defining monomials are part of the input.
pub fn groebner_basis(
    gens: &[Polynomial],
    order: MonomialOrder,
    ring: &RingDescriptor,
) -> Result<Vec<Polynomial>> {
    require_flat(ring)?;
    check_polys(ring, &gens.iter().collect::<Vec<_>>())?;
    let gb = module_groebner(ring, 1, &as_vecs(gens), order)?;
    Ok(from_vecs(gb.elements()))
}

/// Whether `p` lies in the ideal generated by `gens` in `ring`.
pub fn ideal_member(p: &Polynomial, gens: &[Polynomial], ring: &RingDescriptor) -> Result<bool> {
    if let Some(s) = ring.semigroup_data() {
        check_polys(ring, &[p])?;
        let exps = monomial_exponents(gens)?;
        if exps.is_empty() {
            return Ok(p.is_zero());
        }
        let set = ExponentSet::generated(s, &exps)?;
        return Ok(p.monomials().all(|m| set.contains(s, m.0[0] as u64)));
    }
    check_polys(ring, &[p])?;
    module_member(&FreeVec::new(vec![p.clone()]), &as_vecs(gens), ring)
}

/// Whether `v` lies in the submodule generated by `gens`.
pub fn module_member(v: &FreeVec, gens: &[FreeVec], ring: &RingDescriptor) -> Result<bool> {
    require_flat(ring)?;
    let rank = v.rank();
    check_rank(rank, &gens.iter().collect::<Vec<_>>())?;
    check_vecs(ring, &[v])?;
    let v = v.map(|c| ring.reduce(c));
    if v.is_zero() {
        return Ok(true);
    }
    let gb = module_groebner(ring, rank, gens, MonomialOrder::PositionOverTerm)?;
    Ok(gb.contains(&v))
}

/// Whether every generator of `a` lies in the module generated by `b`.
pub fn module_subset(a: &[FreeVec], b: &[FreeVec], rank: usize, ring: &RingDescriptor) -> Result<bool> {
    check_rank(rank, &a.iter().chain(b).collect::<Vec<_>>())?;
    let gb = module_groebner(ring, rank, b, MonomialOrder::PositionOverTerm)?;
    Ok(a.iter().all(|v| gb.contains(&v.map(|c| ring.reduce(c)))))
}

/// Whether `p` is nilpotent modulo the ideal generated by `gens`: decided by
/// `1 in (gens, 1 - z p)` with an auxiliary variable `z`.
pub fn radical_member(p: &Polynomial, gens: &[Polynomial], ring: &RingDescriptor) -> Result<bool> {
    require_flat(ring)?;
    check_polys(ring, &gens.iter().chain([p]).collect::<Vec<_>>())?;
    let n = ring.nvars();
    let f = ring.field();
    let lift = |q: &Polynomial| q.embed(n + 1, 0);
    let mut all: Vec<Polynomial> = gens.iter().map(lift).collect();
    for m in ring.relations() {
        all.push(lift(&Polynomial::monomial(f, m.clone())));
    }
    let z = Polynomial::var(f, n + 1, n);
    all.push(&Polynomial::one(f, n + 1) - &(&z * &lift(p)));
    let gb = GroebnerBasis::new(f, n + 1, 1, MonomialOrder::GrevLex, &as_vecs(&all));
    Ok(gb.contains(&FreeVec::new(vec![Polynomial::one(f, n + 1)])))
}

/// Result of eliminating the first `head` coordinates from the module
/// generated by `gens` in `R^(head + tail)`: generators of the submodule of
/// elements whose head is zero, returned as their tails.
fn eliminate_head(
    ring: &RingDescriptor,
    head: usize,
    tail: usize,
    gens: &[FreeVec],
) -> Result<Vec<FreeVec>> {
    let gb = module_groebner(ring, head + tail, gens, MonomialOrder::PositionOverTerm)?;
    let mut out = Vec::new();
    for v in gb.elements() {
        if v.coords()[..head].iter().all(Polynomial::is_zero) {
            let t = v.slice(head, head + tail).map(|c| ring.reduce(c));
            if !t.is_zero() {
                out.push(t);
            }
        }
    }
    Ok(out)
}

/// `(N :_F J) = {v in F : J v ⊆ N}` for `N ⊆ F = R^rank`.
pub fn module_colon_ideal(
    n: &[FreeVec],
    j: &[Polynomial],
    rank: usize,
    ring: &RingDescriptor,
) -> Result<Vec<FreeVec>> {
    require_flat(ring)?;
    check_rank(rank, &n.iter().collect::<Vec<_>>())?;
    let j: Vec<Polynomial> = j.iter().map(|p| ring.reduce(p)).filter(|p| !p.is_zero()).collect();
    let f = ring.field();
    let nv = ring.nvars();
    if j.is_empty() {
        return Ok((0..rank).map(|p| FreeVec::unit(f, nv, rank, p)).collect());
    }
    let s = j.len();
    let head = s * rank;
    let mut gens = Vec::new();
    // (j_1 e_p, ..., j_s e_p | e_p) for each position p
    for p in 0..rank {
        let mut coords = vec![Polynomial::zero(f, nv); head + rank];
        for (l, jl) in j.iter().enumerate() {
            coords[l * rank + p] = jl.clone();
        }
        coords[head + p] = Polynomial::one(f, nv);
        gens.push(FreeVec::new(coords));
    }
    // N in each head block
    for l in 0..s {
        for v in n {
            let mut coords = vec![Polynomial::zero(f, nv); head + rank];
            for p in 0..rank {
                coords[l * rank + p] = v.coord(p).clone();
            }
            gens.push(FreeVec::new(coords));
        }
    }
    eliminate_head(ring, head, rank, &gens)
}

/// `(I : J)` for ideals given by generators.
pub fn ideal_colon(i: &[Polynomial], j: &[Polynomial], ring: &RingDescriptor) -> Result<Vec<Polynomial>> {
    check_polys(ring, &i.iter().chain(j).collect::<Vec<_>>())?;
    let out = module_colon_ideal(&as_vecs(i), j, 1, ring)?;
    Ok(minimal_ideal_generators(from_vecs(out), ring))
}

/// `(N :_R v) = {r in R : r v in N}`.
pub fn module_colon_vector(n: &[FreeVec], v: &FreeVec, ring: &RingDescriptor) -> Result<Vec<Polynomial>> {
    require_flat(ring)?;
    let rank = v.rank();
    check_rank(rank, &n.iter().collect::<Vec<_>>())?;
    let f = ring.field();
    let nv = ring.nvars();
    let mut gens = vec![v.concat(&FreeVec::unit(f, nv, 1, 0))];
    for w in n {
        gens.push(w.concat(&FreeVec::zero(f, nv, 1)));
    }
    let out = eliminate_head(ring, rank, 1, &gens)?;
    Ok(minimal_ideal_generators(from_vecs(out), ring))
}

/// Generators of the intersection of two submodules of `R^rank`.
pub fn intersect_modules(a: &[FreeVec], b: &[FreeVec], rank: usize, ring: &RingDescriptor) -> Result<Vec<FreeVec>> {
    require_flat(ring)?;
    check_rank(rank, &a.iter().chain(b).collect::<Vec<_>>())?;
    let f = ring.field();
    let nv = ring.nvars();
    let mut gens: Vec<FreeVec> = a.iter().map(|v| v.concat(v)).collect();
    gens.extend(b.iter().map(|v| v.concat(&FreeVec::zero(f, nv, rank))));
    eliminate_head(ring, rank, rank, &gens)
}

pub fn intersect_ideals(a: &[Polynomial], b: &[Polynomial], ring: &RingDescriptor) -> Result<Vec<Polynomial>> {
    let out = intersect_modules(&as_vecs(a), &as_vecs(b), 1, ring)?;
    Ok(minimal_ideal_generators(from_vecs(out), ring))
}

/// Syzygies of `gens`: the kernel of `R^s -> R^rank`, `e_i -> gens[i]`.
pub fn syzygies(gens: &[FreeVec], rank: usize, ring: &RingDescriptor) -> Result<Vec<FreeVec>> {
    require_flat(ring)?;
    check_rank(rank, &gens.iter().collect::<Vec<_>>())?;
    let f = ring.field();
    let nv = ring.nvars();
    let s = gens.len();
    let rows: Vec<FreeVec> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| g.concat(&FreeVec::unit(f, nv, s, i)))
        .collect();
    eliminate_head(ring, rank, s, &rows)
}

/// Colon of ideals, dispatched on the ring class.
pub fn colon_ideal(i: &Ideal, j: &Ideal, ring: &RingDescriptor) -> Result<Ideal> {
    if let Some(s) = ring.semigroup_data() {
        let a = exponent_set(i, ring)?;
        let b = exponent_set(j, ring)?;
        return Ok(Ideal::Exponents(a.colon(s, &b)));
    }
    match (i, j) {
        (Ideal::Generators(a), Ideal::Generators(b)) => Ok(Ideal::Generators(ideal_colon(a, b, ring)?)),
        _ => Err(Error::InvalidInput(
            "exponent sets describe ideals of semigroup rings only".into(),
        )),
    }
}

/// The exponent set of a monomial ideal of a semigroup ring.
pub fn exponent_set(i: &Ideal, ring: &RingDescriptor) -> Result<ExponentSet> {
    let s = ring
        .semigroup_data()
        .ok_or_else(|| Error::UnsupportedRing(format!("{ring} is not a semigroup ring")))?;
    match i {
        Ideal::Exponents(e) => Ok(e.clone()),
        Ideal::Generators(g) => {
            check_polys(ring, &g.iter().collect::<Vec<_>>())?;
            ExponentSet::generated(s, &monomial_exponents(g)?)
        }
    }
}

fn monomial_exponents(gens: &[Polynomial]) -> Result<Vec<u64>> {
    gens.iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            g.as_monomial()
                .map(|m| m.0[0] as u64)
                .ok_or_else(|| Error::NotMonomial(g.to_string()))
        })
        .collect()
}

/// Monomials of generators that must be single terms.
pub fn monomials_of(gens: &[Polynomial]) -> Result<Vec<Monomial>> {
    gens.iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            g.as_monomial()
                .cloned()
                .ok_or_else(|| Error::NotMonomial(g.to_string()))
        })
        .collect()
}

/// Minimal primes of a monomial ideal (of the polynomial ring underlying
/// `ring`) as sets of variable indices.
pub fn minimal_primes_monomial(gens: &[Polynomial], ring: &RingDescriptor) -> Result<Vec<BTreeSet<usize>>> {
    require_flat(ring)?;
    let mons = monomials_of(gens)?;
    if mons.iter().any(Monomial::is_one) {
        return Ok(Vec::new());
    }
    let supports: Vec<Vec<usize>> = mons.iter().map(Monomial::support).collect();
    Ok(minimal_transversals(&supports))
}

/// Shrinks a generating set: monomial ideals get their minimal monomial
/// generators, otherwise the reduced Gröbner basis is returned.
pub fn minimal_ideal_generators(gens: Vec<Polynomial>, ring: &RingDescriptor) -> Vec<Polynomial> {
    let f = ring.field();
    let gens: Vec<Polynomial> = gens.into_iter().map(|g| ring.reduce(&g)).filter(|g| !g.is_zero()).collect();
    if let Ok(mons) = monomials_of(&gens) {
        return minimize_monomials(&mons)
            .into_iter()
            .map(|m| Polynomial::monomial(f, m))
            .collect();
    }
    let gb = GroebnerBasis::new(f, ring.nvars(), 1, MonomialOrder::GrevLex, &as_vecs(&gens));
    from_vecs(gb.elements())
        .into_iter()
        .map(|g| ring.reduce(&g))
        .filter(|g| !g.is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::Field;

    fn ring_xy() -> RingDescriptor {
        RingDescriptor::poly(Field::Rational, &["x", "y"]).unwrap()
    }

    fn mono(r: &RingDescriptor, e: &[u32]) -> Polynomial {
        r.monomial(e)
    }

    #[test]
    fn ideal_membership_examples() {
        let r = ring_xy();
        let sq = [mono(&r, &[2, 0]), mono(&r, &[0, 2])];
        assert!(!ideal_member(&mono(&r, &[1, 1]), &sq, &r).unwrap());
        assert!(ideal_member(&mono(&r, &[2, 0]), &[mono(&r, &[1, 0])], &r).unwrap());
        let g = [mono(&r, &[2, 0]), mono(&r, &[1, 1])];
        assert!(ideal_member(&mono(&r, &[2, 3]), &g, &r).unwrap());
    }

    #[test]
    fn module_membership_examples() {
        let r = ring_xy();
        let f = r.field();
        let gens = [
            FreeVec::new(vec![r.var(0), r.zero()]),
            FreeVec::new(vec![r.zero(), r.var(1)]),
        ];
        assert!(module_member(&FreeVec::new(vec![r.var(0), r.var(1)]), &gens, &r).unwrap());
        assert!(!module_member(&FreeVec::unit(f, 2, 2, 0), &gens, &r).unwrap());
        assert!(matches!(
            module_member(&FreeVec::unit(f, 2, 3, 0), &gens, &r),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn radical_examples() {
        let r = ring_xy();
        let x2 = [mono(&r, &[2, 0])];
        assert!(radical_member(&r.var(0), &x2, &r).unwrap());
        assert!(!radical_member(&r.var(1), &x2, &r).unwrap());
        let sq = [mono(&r, &[2, 0]), mono(&r, &[0, 2])];
        assert!(radical_member(&(&r.var(0) + &r.var(1)), &sq, &r).unwrap());
    }

    #[test]
    fn colon_examples() {
        let r = ring_xy();
        let m = vec![r.var(0), r.var(1)];
        let a = ideal_colon(&[mono(&r, &[2, 0]), mono(&r, &[1, 1])], &[r.var(0)], &r).unwrap();
        assert_eq!(a, m);
        let b = ideal_colon(&[mono(&r, &[2, 0]), mono(&r, &[0, 2])], &[mono(&r, &[1, 1])], &r).unwrap();
        assert_eq!(b, m);
        let i = vec![mono(&r, &[2, 0]), mono(&r, &[1, 1])];
        assert_eq!(ideal_colon(&i, &[r.one()], &r).unwrap(), i);
    }

    #[test]
    fn minimal_prime_examples() {
        let r = ring_xy();
        let s = |v: &[usize]| v.iter().copied().collect::<BTreeSet<usize>>();
        assert_eq!(minimal_primes_monomial(&[mono(&r, &[2, 0])], &r).unwrap(), vec![s(&[0])]);
        assert_eq!(
            minimal_primes_monomial(&[mono(&r, &[1, 1])], &r).unwrap(),
            vec![s(&[0]), s(&[1])]
        );
        assert_eq!(
            minimal_primes_monomial(&[mono(&r, &[2, 0]), mono(&r, &[0, 2])], &r).unwrap(),
            vec![s(&[0, 1])]
        );
        assert!(matches!(
            minimal_primes_monomial(&[&r.var(0) + &r.var(1)], &r),
            Err(Error::NotMonomial(_))
        ));
    }

    #[test]
    fn intersection_and_syzygies() {
        let r = ring_xy();
        let i = intersect_ideals(&[r.var(0)], &[r.var(1)], &r).unwrap();
        assert_eq!(i, vec![mono(&r, &[1, 1])]);
        let g = [FreeVec::new(vec![r.var(0)]), FreeVec::new(vec![r.var(1)])];
        let syz = syzygies(&g, 1, &r).unwrap();
        assert_eq!(syz.len(), 1);
        assert_eq!(syz[0].coord(0).as_monomial(), Some(&Monomial(vec![0, 1])));
    }

    #[test]
    fn quotient_flattening() {
        let f = Field::Rational;
        let q = RingDescriptor::quotient(f, &["x"], vec![Monomial(vec![2])]).unwrap();
        assert!(ideal_member(&q.monomial(&[2]), &[], &q).unwrap());
        assert!(!ideal_member(&q.var(0), &[], &q).unwrap());
        // (0 : x) = (x) in k[x]/(x^2)
        assert_eq!(ideal_colon(&[], &[q.var(0)], &q).unwrap(), vec![q.var(0)]);
    }

    #[test]
    fn semigroup_rings_use_exponent_sets() {
        let f = Field::Rational;
        let s = RingDescriptor::semigroup(f, &[2, 3]).unwrap();
        assert!(matches!(groebner_basis(&[s.monomial(&[2])], MonomialOrder::GrevLex, &s), Err(Error::UnsupportedRing(_))));
        let c = colon_ideal(
            &Ideal::Generators(vec![s.monomial(&[2])]),
            &Ideal::Generators(vec![s.monomial(&[2]), s.monomial(&[3])]),
            &s,
        )
        .unwrap();
        let Ideal::Exponents(e) = c else { panic!() };
        let sg = s.semigroup_data().unwrap();
        assert!(e.contains(sg, 2) && e.contains(sg, 3) && !e.contains(sg, 0));
        assert!(ideal_member(&s.monomial(&[5]), &[s.monomial(&[2])], &s).unwrap());
        assert!(!ideal_member(&s.monomial(&[3]), &[s.monomial(&[2])], &s).unwrap());
    }
}
