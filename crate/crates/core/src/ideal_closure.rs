//! Integral closure of ideals. Monomial ideals are closed exactly through
//! Newton regions (polynomial rings), minimal primes (monomial quotients) or
//! valuations (semigroup rings); general ideals go through certificate search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::ops::{ideal_member, monomials_of};
use crate::algebra::ring::minimize_monomials;
use crate::algebra::{ExponentSet, Monomial, NumericalSemigroup, Polynomial, RingDescriptor};
use crate::error::{Error, Result};

pub use crate::search::certify_ideal_member;

/// `conv(points) + R_{>=0}^n`, described by its facet inequalities
/// `w . v >= b` with `w >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonRegion {
    nvars: usize,
    points: Vec<Monomial>,
    facets: Vec<(Vec<i64>, i64)>,
}

/// Nullspace vector of a matrix with `n` columns and rank `n - 1`.
fn null_vector(rows: &[Vec<i64>], n: usize) -> Option<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let c = m[r][col].clone();
                for k in 0..n {
                    let d = &m[row][k] * &c;
                    m[r][k] = &m[r][k] - &d;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    if pivot_cols.len() != n - 1 {
        return None;
    }
    let free = (0..n).find(|c| !pivot_cols.contains(c)).unwrap();
    let mut v = vec![BigRational::zero(); n];
    v[free] = BigRational::one();
    for (r, &c) in pivot_cols.iter().enumerate() {
        v[c] = -m[r][free].clone();
    }
    Some(v)
}

fn integral_primitive(v: &[BigRational]) -> Vec<i64> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter().map(|x| (x / &g).to_i64().expect("small normal")).collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

impl NewtonRegion {
    /// The region of the monomial ideal generated by `points`; `None` for the
    /// zero ideal.
    pub fn new(points: &[Monomial], nvars: usize) -> Option<Self> {
        if points.is_empty() {
            return None;
        }
        let points = minimize_monomials(points);
        let mut facets: Vec<(Vec<i64>, i64)> = Vec::new();
        let n = nvars;
        let ipt = |m: &Monomial| -> Vec<i64> { m.0.iter().map(|&e| e as i64).collect() };
        // A facet is spanned by p points and n - p coordinate directions.
        for p in 1..=n {
            for pts in subsets(points.len(), p) {
                for rays in subsets(n, n - p) {
                    let base = ipt(&points[pts[0]]);
                    let mut rows: Vec<Vec<i64>> = pts[1..]
                        .iter()
                        .map(|&i| ipt(&points[i]).iter().zip(&base).map(|(a, b)| a - b).collect())
                        .collect();
                    for &r in &rays {
                        let mut e = vec![0; n];
                        e[r] = 1;
                        rows.push(e);
                    }
                    let Some(w) = null_vector(&rows, n) else { continue };
                    let mut w = integral_primitive(&w);
                    if w.iter().all(|&x| x <= 0) {
                        w.iter_mut().for_each(|x| *x = -*x);
                    }
                    if w.iter().any(|&x| x < 0) {
                        continue;
                    }
                    let dot = |v: &[i64]| v.iter().zip(&w).map(|(a, b)| a * b).sum::<i64>();
                    let b = dot(&base);
                    if points.iter().all(|q| dot(&ipt(q)) >= b) && !facets.contains(&(w.clone(), b)) {
                        facets.push((w, b));
                    }
                }
            }
        }
        facets.sort();
        Some(NewtonRegion { nvars, points, facets })
    }

    pub fn facets(&self) -> &[(Vec<i64>, i64)] {
        &self.facets
    }

    pub fn points(&self) -> &[Monomial] {
        &self.points
    }

    pub fn contains(&self, v: &Monomial) -> bool {
        self.facets.iter().all(|(w, b)| {
            let s: i64 = w.iter().zip(&v.0).map(|(a, e)| a * *e as i64).sum();
            s >= *b
        })
    }

    /// The first facet inequality that `v` violates.
    pub fn violated_facet(&self, v: &Monomial) -> Option<&(Vec<i64>, i64)> {
        self.facets.iter().find(|(w, b)| {
            let s: i64 = w.iter().zip(&v.0).map(|(a, e)| a * *e as i64).sum();
            s < *b
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
}

/// Every exponent vector in the box `[0, bound]`.
fn box_points(bound: &[u32]) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; bound.len()];
    loop {
        out.push(Monomial(cur.clone()));
        let mut i = 0;
        loop {
            if i == bound.len() {
                return out;
            }
            if cur[i] < bound[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Minimal elements of an up-closed set of monomials, found inside `bound`.
fn minimal_members(bound: &[u32], member: impl Fn(&Monomial) -> bool) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = box_points(bound)
        .into_iter()
        .filter(|m| member(m))
        .filter(|m| {
            (0..m.nvars()).all(|i| {
                if m.0[i] == 0 {
                    return true;
                }
                let mut d = m.clone();
                d.0[i] -= 1;
                !member(&d)
            })
        })
        .collect();
    out.sort_by(|a, b| b.0.cmp(&a.0));
    out
}

/// Minimal generators of the integral closure of a monomial ideal of
/// `k[x_1..x_nvars]`, sorted lexicographically descending.
pub fn newton_closure_monomials(gens: &[Monomial], nvars: usize) -> Vec<Monomial> {
    let Some(region) = NewtonRegion::new(gens, nvars) else { return Vec::new() };
    let bound: Vec<u32> = (0..nvars)
        .map(|i| region.points.iter().map(|m| m.0[i]).max().unwrap_or(0))
        .collect();
    minimal_members(&bound, |m| region.contains(m))
}

/// Closure data of a monomial ideal over a monomial quotient: one Newton
/// region per minimal prime.
struct PrimewiseClosure {
    parts: Vec<(Vec<usize>, Vec<usize>, Option<NewtonRegion>)>,
}

impl PrimewiseClosure {
    fn new(gens: &[Monomial], ring: &RingDescriptor) -> Result<Self> {
        let n = ring.nvars();
        let mut parts = Vec::new();
        for prime in ring.minimal_primes()? {
            let keep: Vec<usize> = (0..n).filter(|i| !prime.contains(i)).collect();
            let local: Vec<Monomial> = gens
                .iter()
                .filter(|m| m.support().iter().all(|i| !prime.contains(i)))
                .map(|m| Monomial(keep.iter().map(|&i| m.0[i]).collect()))
                .collect();
            let region = NewtonRegion::new(&local, keep.len());
            parts.push((prime.into_iter().collect(), keep, region));
        }
        Ok(PrimewiseClosure { parts })
    }

    fn contains(&self, m: &Monomial) -> bool {
        self.parts.iter().all(|(prime, keep, region)| {
            if prime.iter().any(|&i| m.0[i] > 0) {
                return true;
            }
            let r = Monomial(keep.iter().map(|&i| m.0[i]).collect());
            region.as_ref().is_some_and(|g| g.contains(&r))
        })
    }
}

fn reject_semigroup(ring: &RingDescriptor) -> Result<()> {
    if ring.is_semigroup() {
        return Err(Error::UnsupportedRing(format!(
            "{ring}: use the semigroup closure on exponent sets"
        )));
    }
    Ok(())
}

/// Minimal monomial generators of the closure of a monomial ideal in a
/// polynomial ring or monomial quotient. The closure of the zero ideal of a
/// quotient is its nilradical.
pub fn monomial_ideal_closure(gens: &[Monomial], ring: &RingDescriptor) -> Result<Vec<Monomial>> {
    reject_semigroup(ring)?;
    let n = ring.nvars();
    if let RingDescriptor::Poly { .. } = ring {
        return Ok(newton_closure_monomials(gens, n));
    }
    let pc = PrimewiseClosure::new(gens, ring)?;
    let bound: Vec<u32> = (0..n)
        .map(|i| {
            gens.iter()
                .chain(ring.relations())
                .map(|m| m.0[i])
                .max()
                .unwrap_or(0)
                .max(1)
        })
        .collect();
    Ok(minimal_members(&bound, |m| pc.contains(m))
        .into_iter()
        .filter(|m| ring.is_standard(m))
        .collect())
}

/// Whether the monomial `m` lies in the closure of the monomial ideal `gens`.
pub fn in_monomial_closure(m: &Monomial, gens: &[Monomial], ring: &RingDescriptor) -> Result<bool> {
    if let Some(s) = ring.semigroup_data() {
        let exps: Vec<u64> = gens.iter().map(|g| g.0[0] as u64).collect();
        if exps.is_empty() {
            return Ok(false);
        }
        return Ok(semigroup_ideal_closure(&exps, s)?.contains(s, m.0[0] as u64));
    }
    if !ring.is_standard(m) {
        return Ok(true);
    }
    if let RingDescriptor::Poly { .. } = ring {
        return Ok(NewtonRegion::new(gens, ring.nvars()).is_some_and(|r| r.contains(m)));
    }
    Ok(PrimewiseClosure::new(gens, ring)?.contains(m))
}

/// Exact membership in the closure of a monomial ideal: the closure is again
/// monomial, so `z` is a member iff each of its terms is.
pub fn closure_contains(z: &Polynomial, gens: &[Polynomial], ring: &RingDescriptor) -> Result<bool> {
    ring.check_element(z)?;
    let mons = monomials_of(gens)?;
    for m in ring.reduce(z).monomials() {
        if !in_monomial_closure(m, &mons, ring)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Closure of a monomial ideal given by generators; the result carries the
/// ring's coefficient field.
pub fn newton_closure(gens: &[Polynomial], ring: &RingDescriptor) -> Result<Vec<Polynomial>> {
    for g in gens {
        ring.check_element(g)?;
    }
    let mons = monomials_of(gens)?;
    Ok(monomial_ideal_closure(&mons, ring)?
        .into_iter()
        .map(|m| Polynomial::monomial(ring.field(), m))
        .collect())
}

/// `I k[[t]] ∩ R` for `I = (t^s : s in exps)`: all semigroup elements at least
/// the smallest generator exponent.
pub fn semigroup_ideal_closure(exps: &[u64], s: &NumericalSemigroup) -> Result<ExponentSet> {
    let Some(&low) = exps.iter().min() else {
        return Err(Error::InvalidInput("closure of the zero ideal of a semigroup ring".into()));
    };
    for &e in exps {
        if !s.contains(e) {
            return Err(Error::InvalidInput(format!("t^{e} is not in k[{s}]")));
        }
    }
    Ok(ExponentSet::from_predicate(s, low + 1, |u| u >= low))
}

/// Whether `J ⊆ I` is a reduction, i.e. both have the same closure. Both
/// ideals must be monomial.
pub fn is_reduction(j: &[Polynomial], i: &[Polynomial], ring: &RingDescriptor) -> Result<bool> {
    let jm = monomials_of(j)?;
    let im = monomials_of(i)?;
    for g in j {
        if !ideal_member(g, i, ring)? {
            return Err(Error::InvalidInput(format!(
                "{} is not in the larger ideal",
                g.render(&ring.var_names())
            )));
        }
    }
    for m in &im {
        if !in_monomial_closure(m, &jm, ring)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exponents of the monomial generators of a semigroup-ring ideal.
pub fn semigroup_exponents(gens: &[Polynomial]) -> Result<Vec<u64>> {
    Ok(monomials_of(gens)?.iter().map(|m| m.0[0] as u64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn m(v: &[u32]) -> Monomial {
        Monomial(v.to_vec())
    }

    #[test]
    fn squares_close_to_m_squared() {
        assert_eq!(
            newton_closure_monomials(&[m(&[2, 0]), m(&[0, 2])], 2),
            vec![m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]
        );
    }

    #[test]
    fn cubes_close_to_m_cubed() {
        assert_eq!(
            newton_closure_monomials(&[m(&[3, 0]), m(&[0, 3])], 2),
            vec![m(&[3, 0]), m(&[2, 1]), m(&[1, 2]), m(&[0, 3])]
        );
        let r = NewtonRegion::new(&[m(&[3, 0]), m(&[0, 3])], 2).unwrap();
        assert!(r.facets().contains(&(vec![1, 1], 3)));
    }

    #[test]
    fn principal_ideals_are_closed() {
        assert_eq!(newton_closure_monomials(&[m(&[4])], 1), vec![m(&[4])]);
        assert_eq!(newton_closure_monomials(&[m(&[2, 1])], 2), vec![m(&[2, 1])]);
        assert!(newton_closure_monomials(&[], 2).is_empty());
    }

    #[test]
    fn three_variable_region() {
        // (x^2, y^2, z^2) closes to m^2 in three variables
        let c = newton_closure_monomials(&[m(&[2, 0, 0]), m(&[0, 2, 0]), m(&[0, 0, 2])], 3);
        assert_eq!(c.len(), 6);
        assert!(c.iter().all(|x| x.degree() == 2));
    }

    #[test]
    fn nilradical_is_closure_of_zero() {
        let r = RingDescriptor::quotient(Field::Rational, &["x"], vec![m(&[3])]).unwrap();
        assert_eq!(monomial_ideal_closure(&[], &r).unwrap(), vec![m(&[1])]);
        let q = RingDescriptor::quotient(Field::Rational, &["x", "y"], vec![m(&[1, 1])]).unwrap();
        // k[x,y]/(xy) is reduced
        assert!(monomial_ideal_closure(&[], &q).unwrap().is_empty());
    }

    #[test]
    fn semigroup_closures() {
        let s = NumericalSemigroup::new(&[2, 3]).unwrap();
        let c = semigroup_ideal_closure(&[4, 7], &s).unwrap();
        assert!(c.contains(&s, 5) && c.contains(&s, 4) && !c.contains(&s, 3));
        assert_eq!(c, ExponentSet::generated(&s, &[4, 5]).unwrap());
        let c2 = semigroup_ideal_closure(&[2], &s).unwrap();
        assert_eq!(c2, ExponentSet::generated(&s, &[2, 3]).unwrap());
        assert_eq!(semigroup_ideal_closure(&[0], &s).unwrap(), ExponentSet::whole_ring());
        assert!(semigroup_ideal_closure(&[], &s).is_err());
    }

    #[test]
    fn reduction_examples() {
        let r = RingDescriptor::poly(Field::Rational, &["x", "y"]).unwrap();
        let p = |e: &[u32]| r.monomial(e);
        let sq = [p(&[2, 0]), p(&[0, 2])];
        let m2 = [p(&[2, 0]), p(&[1, 1]), p(&[0, 2])];
        assert!(is_reduction(&sq, &m2, &r).unwrap());
        assert!(!is_reduction(&[p(&[2, 0])], &sq, &r).unwrap());
        assert!(is_reduction(&m2, &m2, &r).unwrap());
        assert!(is_reduction(&m2, &sq, &r).is_err());
    }
}
