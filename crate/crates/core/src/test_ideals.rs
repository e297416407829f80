//! Integral test ideals: the socle and `ann(lic 0 E)` over Artinian monomial
//! quotients, bracketing by the conductor over numerical semigroup rings, and
//! chains of upper bounds in dimension two and higher.

use std::collections::BTreeMap;

use crate::algebra::linalg::{axpy, kernel, Echelon, SparseVec};
use crate::algebra::{
    ideal_colon, ideal_member, intersect_ideals, ExponentSet, Field, Monomial, NumericalSemigroup,
    Polynomial, RingDescriptor,
};
use crate::certificate::IntegralityCertificate;
use crate::error::{Error, Result};
use crate::ideal_closure::{closure_contains, newton_closure, semigroup_ideal_closure};
use crate::search::{certify_ideal_member, SearchOptions};

/// Generators of `(0 :_R m)` and its dimension over the residue field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleResult {
    pub generators: Vec<Polynomial>,
    pub dimension: usize,
}

fn vec_to_poly(ring: &RingDescriptor, basis: &[Monomial], v: &SparseVec<usize>) -> Polynomial {
    let mut p = ring.zero();
    for (&i, c) in v {
        p.add_term(basis[i].clone(), c);
    }
    p
}

fn span_equal(field: Field, a: &[SparseVec<usize>], b: &[SparseVec<usize>]) -> bool {
    let mut ea = Echelon::new(field);
    for (i, v) in a.iter().enumerate() {
        ea.insert(v.clone(), i);
    }
    let mut eb = Echelon::new(field);
    for (i, v) in b.iter().enumerate() {
        eb.insert(v.clone(), i);
    }
    ea.rank() == eb.rank() && b.iter().all(|v| ea.solve(v).is_some())
}

fn socle_vectors(ring: &RingDescriptor, basis: &[Monomial]) -> Vec<SparseVec<usize>> {
    let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let f = ring.field();
    let n = ring.nvars();
    // column b: (x_v * b) for every v, keyed by (v, basis index)
    let columns: Vec<SparseVec<(usize, usize)>> = basis
        .iter()
        .map(|b| {
            (0..n)
                .filter_map(|v| {
                    let m = b.mul(&Monomial::var(n, v, 1));
                    index.get(&m).map(|&k| ((v, k), f.one()))
                })
                .collect()
        })
        .collect();
    kernel(f, &columns)
}

/// `(0 :_R m)` by linear algebra on the monomial basis.
pub fn socle(ring: &RingDescriptor) -> Result<SocleResult> {
    let basis = ring.standard_monomials()?;
    let vecs = socle_vectors(ring, &basis);
    Ok(SocleResult {
        generators: vecs.iter().map(|v| vec_to_poly(ring, &basis, v)).collect(),
        dimension: vecs.len(),
    })
}

/// `E = Hom_k(R, k)` with the contragredient action, on the dual monomial
/// basis: `x^a` sends `b*` to `(b / x^a)*`, or to zero when `x^a` does not
/// divide `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatlisDual {
    pub ring: RingDescriptor,
    /// `basis[k]` is the monomial whose dual is the `k`-th basis vector.
    pub basis: Vec<Monomial>,
    /// `action[v][k]`: image index of basis vector `k` under `x_v`.
    pub action: Vec<Vec<Option<usize>>>,
}

impl MatlisDual {
    pub fn new(ring: &RingDescriptor) -> Result<Self> {
        let basis = ring.standard_monomials()?;
        let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let n = ring.nvars();
        let action = (0..n)
            .map(|v| {
                let xv = Monomial::var(n, v, 1);
                basis
                    .iter()
                    .map(|b| xv.quotient_of(b).map(|q| index[&q]))
                    .collect()
            })
            .collect();
        Ok(MatlisDual {
            ring: ring.clone(),
            basis,
            action,
        })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.basis.iter().position(|b| b == m)
    }

    /// `r * v` for a ring element `r` and `v ∈ E`.
    pub fn act(&self, r: &Polynomial, v: &SparseVec<usize>) -> SparseVec<usize> {
        let mut out: SparseVec<usize> = BTreeMap::new();
        for (m, c) in self.ring.reduce(r).terms() {
            for (&k, d) in v {
                if let Some(q) = m.quotient_of(&self.basis[k]) {
                    let i = self.index_of(&q).expect("divisors of standard monomials are standard");
                    axpy(&mut out, &(c * d), &BTreeMap::from([(i, self.ring.field().one())]));
                }
            }
        }
        out
    }

    /// A k-basis of `mE`.
    pub fn maximal_submodule(&self) -> Vec<SparseVec<usize>> {
        let f = self.ring.field();
        let mut ech = Echelon::new(f);
        let mut out = Vec::new();
        for row in &self.action {
            for img in row.iter().flatten() {
                let v: SparseVec<usize> = BTreeMap::from([(*img, f.one())]);
                if ech.insert(v.clone(), out.len()).is_none() {
                    out.push(v);
                }
            }
        }
        out
    }

    /// `(0 :_E m)`, which is spanned by `1*`.
    pub fn socle(&self) -> Vec<SparseVec<usize>> {
        let f = self.ring.field();
        let columns: Vec<SparseVec<(usize, usize)>> = (0..self.dimension())
            .map(|k| {
                self.action
                    .iter()
                    .enumerate()
                    .filter_map(|(v, row)| row[k].map(|i| ((v, i), f.one())))
                    .collect()
            })
            .collect();
        kernel(f, &columns)
    }

    /// Whether only zero annihilates `E`: every basis monomial `b` sends `b*`
    /// to `1*`.
    pub fn is_faithful(&self) -> bool {
        let f = self.ring.field();
        self.basis.iter().enumerate().all(|(k, b)| {
            let img = self.act(&Polynomial::monomial(f, b.clone()), &BTreeMap::from([(k, f.one())]));
            !img.is_empty()
        })
    }

    /// `ann_R(W)` for a subspace `W ⊆ E` given by a basis, as vectors over
    /// the monomial basis of `R`.
    pub fn annihilator(&self, w: &[SparseVec<usize>]) -> Vec<SparseVec<usize>> {
        let f = self.ring.field();
        let columns: Vec<SparseVec<(usize, usize)>> = self
            .basis
            .iter()
            .map(|b| {
                let r = Polynomial::monomial(f, b.clone());
                let mut col = BTreeMap::new();
                for (j, v) in w.iter().enumerate() {
                    for (i, c) in self.act(&r, v) {
                        col.insert((j, i), c);
                    }
                }
                col
            })
            .collect();
        kernel(f, &columns)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauDim0 {
    /// A k-basis of `ann(mE)`.
    pub generators: Vec<Polynomial>,
    pub dimension: usize,
    pub equals_socle: bool,
}

/// `τ_M = ann(lic 0 E) = ann(mE)` for an Artinian ring, compared with the
/// socle as k-subspaces of `R`.
pub fn tau_m_dim0(ring: &RingDescriptor) -> Result<TauDim0> {
    let e = MatlisDual::new(ring)?;
    let ann = e.annihilator(&e.maximal_submodule());
    let soc = socle_vectors(ring, &e.basis);
    Ok(TauDim0 {
        generators: ann.iter().map(|v| vec_to_poly(ring, &e.basis, v)).collect(),
        dimension: ann.len(),
        equals_socle: span_equal(ring.field(), &ann, &soc),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConductorResult {
    pub generators: Vec<u64>,
    pub gaps: Vec<u64>,
    /// `None` when the semigroup is all of `N`.
    pub frobenius: Option<u64>,
    /// The conductor ideal is `{t^u : u >= threshold}`.
    pub threshold: u64,
}

impl ConductorResult {
    pub fn conductor_ideal(&self, s: &NumericalSemigroup) -> ExponentSet {
        ExponentSet::from_predicate(s, self.threshold, |_| false)
    }
}

pub fn frobenius_and_conductor(gens: &[u64]) -> Result<ConductorResult> {
    let s = NumericalSemigroup::new(gens)?;
    Ok(conductor_of(&s))
}

fn conductor_of(s: &NumericalSemigroup) -> ConductorResult {
    ConductorResult {
        generators: s.minimal_generators().to_vec(),
        gaps: s.gaps(),
        frobenius: s.frobenius(),
        threshold: s.conductor(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauSample {
    pub conductor: ConductorResult,
    /// `((t^s) : closure((t^s)))` for each sampled `s`.
    pub colons: Vec<(u64, ExponentSet)>,
    pub intersection: ExponentSet,
    /// Sampled exponents that each strictly shrank the running intersection.
    pub collapse_list: Vec<u64>,
    pub collapsed: bool,
    pub warnings: Vec<String>,
}

fn same_set(s: &NumericalSemigroup, a: &ExponentSet, b: &ExponentSet) -> bool {
    a.is_subset(s, b) && b.is_subset(s, a)
}

/// The default sample: every `s ∈ S` with `0 < s <= F + 10`.
pub fn default_exponents(s: &NumericalSemigroup) -> Vec<u64> {
    let top = s.frobenius().map_or(9, |f| f + 10);
    (1..=top).filter(|&u| s.contains(u)).collect()
}

/// `⋂_s ((t^s) : closure((t^s)))` over the given exponents, checked to
/// contain the conductor.
pub fn tau_i_sample_dim1(ring: &RingDescriptor, exponents: &[u64]) -> Result<TauSample> {
    let Some(s) = ring.semigroup_data() else {
        return Err(Error::UnsupportedRing(format!("{ring}: expected a numerical semigroup ring")));
    };
    let conductor = conductor_of(s);
    let cond = conductor.conductor_ideal(s);
    let mut colons = Vec::new();
    let mut intersection = ExponentSet::whole_ring();
    let mut collapse_list = Vec::new();
    for &e in exponents {
        if e == 0 || !s.contains(e) {
            return Err(Error::InvalidInput(format!("{e} is not a positive element of {s}")));
        }
        let principal = ExponentSet::generated(s, &[e])?;
        let colon = principal.colon(s, &semigroup_ideal_closure(&[e], s)?);
        if !cond.is_subset(s, &colon) {
            return Err(Error::Verification(format!(
                "conductor not contained in the colon at t^{e}"
            )));
        }
        let next = intersection.intersect(s, &colon);
        if !same_set(s, &next, &intersection) {
            collapse_list.push(e);
        }
        intersection = next;
        colons.push((e, colon));
    }
    let mut warnings = Vec::new();
    if let Field::Prime(p) = ring.field() {
        warnings.push(format!(
            "residue field F_{p} is finite; principal minimal reductions may not exist"
        ));
    }
    Ok(TauSample {
        collapsed: same_set(s, &intersection, &cond),
        conductor,
        colons,
        intersection,
        collapse_list,
        warnings,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauStage {
    pub n: u32,
    /// `x^n y^n` over `(x^2n, y^2n)`.
    pub certificate: IntegralityCertificate,
    /// `A_n = ((x^2n, y^2n) : x^n y^n)`.
    pub colon: Vec<Polynomial>,
    /// `A_n ⊆ (x^n, y^n)`.
    pub within_bound: bool,
    /// `A_1 ∩ ... ∩ A_n`.
    pub running_intersection: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauChain {
    pub stages: Vec<TauStage>,
}

impl TauChain {
    pub fn all_within_bound(&self) -> bool {
        self.stages.iter().all(|s| s.within_bound)
    }
}

fn pure_powers(ring: &RingDescriptor, e: u32) -> Vec<Polynomial> {
    let n = ring.nvars();
    let mut a = vec![0; n];
    a[0] = e;
    let mut b = vec![0; n];
    b[1] = e;
    vec![ring.monomial(&a), ring.monomial(&b)]
}

/// Upper bounds `τ_I ⊆ A_1 ∩ ... ∩ A_n ⊆ m^n` in the first two variables.
pub fn tau_upper_bound_dim2(ring: &RingDescriptor, n_max: u32) -> Result<TauChain> {
    if !matches!(ring, RingDescriptor::Poly { .. }) || ring.nvars() < 2 {
        return Err(Error::UnsupportedRing(format!("{ring}: need a polynomial ring in at least two variables")));
    }
    if n_max == 0 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let nv = ring.nvars();
    let mut stages: Vec<TauStage> = Vec::new();
    for n in 1..=n_max {
        let big = pure_powers(ring, 2 * n);
        let mut e = vec![0; nv];
        e[0] = n;
        e[1] = n;
        let z = ring.monomial(&e);
        let certificate = certify_ideal_member(&z, &big, ring, SearchOptions::with_max_degree(2))?
            .ok_or_else(|| Error::Verification(format!("no degree-2 certificate at n = {n}")))?;
        let colon = ideal_colon(&big, &[z], ring)?;
        let bound = pure_powers(ring, n);
        let mut within_bound = true;
        for g in &colon {
            within_bound &= ideal_member(g, &bound, ring)?;
        }
        let running_intersection = match stages.last() {
            None => colon.clone(),
            Some(prev) => intersect_ideals(&prev.running_intersection, &colon, ring)?,
        };
        stages.push(TauStage {
            n,
            certificate,
            colon,
            within_bound,
            running_intersection,
        });
    }
    Ok(TauChain { stages })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcStage {
    pub t: u32,
    /// `I_t = (x_1^t, ..., x_d^t)`.
    pub ideal: Vec<Polynomial>,
    pub closure: Vec<Polynomial>,
    /// `ann(lic 0 (R/I_t)) = (I_t : closure(I_t))`.
    pub annihilator: Vec<Polynomial>,
    /// Multiplication by `x_1 ... x_d` carries `closure(I_t)` into
    /// `closure(I_(t+1))`.
    pub transition_ok: bool,
}

/// Stage `R/(x_1^t, ..., x_d^t)` of the direct limit computing local
/// cohomology, for parameters given by variable indices.
pub fn lc_stage_probe(ring: &RingDescriptor, params: &[usize], t: u32) -> Result<LcStage> {
    if !matches!(ring, RingDescriptor::Poly { .. }) {
        return Err(Error::UnsupportedRing(format!("{ring}: stages need a polynomial ring")));
    }
    let mut seen = params.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if params.is_empty() || seen.len() != params.len() || seen.iter().any(|&v| v >= ring.nvars()) {
        return Err(Error::InvalidInput(
            "parameters must be distinct variables of the ring".into(),
        ));
    }
    if t == 0 {
        return Err(Error::InvalidInput("t must be at least 1".into()));
    }
    let n = ring.nvars();
    let stage = |t: u32| -> Vec<Polynomial> {
        params
            .iter()
            .map(|&v| Polynomial::monomial(ring.field(), Monomial::var(n, v, t)))
            .collect()
    };
    let ideal = stage(t);
    let closure = newton_closure(&ideal, ring)?;
    let annihilator = ideal_colon(&ideal, &closure, ring)?;
    let mut x = Monomial::one(n);
    for &v in params {
        x = x.mul(&Monomial::var(n, v, 1));
    }
    let x = Polynomial::monomial(ring.field(), x);
    let next = stage(t + 1);
    let mut transition_ok = true;
    for g in &closure {
        transition_ok &= closure_contains(&(&x * g), &next, ring)?;
    }
    Ok(LcStage {
        t,
        ideal,
        closure,
        annihilator,
        transition_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn quot(vars: &[&str], rels: &[&[u32]]) -> RingDescriptor {
        RingDescriptor::quotient(q(), vars, rels.iter().map(|r| Monomial(r.to_vec())).collect()).unwrap()
    }

    #[test]
    fn socle_examples() {
        let r = quot(&["x"], &[&[3]]);
        assert_eq!(socle(&r).unwrap().generators, vec![r.monomial(&[2])]);
        let r = quot(&["x", "y"], &[&[2, 0], &[0, 2]]);
        let s = socle(&r).unwrap();
        assert_eq!(s.generators, vec![r.monomial(&[1, 1])]);
        let k = RingDescriptor::poly(q(), &[]).unwrap();
        assert_eq!(socle(&k).unwrap().generators, vec![k.one()]);
        assert!(matches!(
            socle(&RingDescriptor::poly(q(), &["x"]).unwrap()),
            Err(Error::NotZeroDimensional(1))
        ));
    }

    #[test]
    fn tau_m_matches_socle() {
        let r = quot(&["x"], &[&[3]]);
        let t = tau_m_dim0(&r).unwrap();
        assert!(t.equals_socle);
        assert_eq!(t.generators, vec![r.monomial(&[2])]);
        let m2 = quot(&["x", "y"], &[&[2, 0], &[1, 1], &[0, 2]]);
        let t = tau_m_dim0(&m2).unwrap();
        assert_eq!(t.dimension, 2);
        assert!(t.equals_socle);
        let k = RingDescriptor::poly(q(), &[]).unwrap();
        let t = tau_m_dim0(&k).unwrap();
        assert_eq!((t.dimension, t.equals_socle), (1, true));
    }

    #[test]
    fn matlis_dual_invariants() {
        let r = quot(&["x", "y"], &[&[3, 0], &[1, 1], &[0, 2]]);
        let e = MatlisDual::new(&r).unwrap();
        assert_eq!(e.dimension(), r.standard_monomials().unwrap().len());
        assert!(e.is_faithful());
        let soc = e.socle();
        assert_eq!(soc.len(), 1);
        assert_eq!(soc[0].keys().copied().collect::<Vec<_>>(), vec![e.index_of(&Monomial::one(2)).unwrap()]);
    }

    #[test]
    fn conductors() {
        let c = frobenius_and_conductor(&[2, 3]).unwrap();
        assert_eq!((c.frobenius, c.threshold, c.gaps.clone()), (Some(1), 2, vec![1]));
        let c = frobenius_and_conductor(&[3, 5]).unwrap();
        assert_eq!((c.frobenius, c.threshold, c.gaps.clone()), (Some(7), 8, vec![1, 2, 4, 7]));
        let c = frobenius_and_conductor(&[1]).unwrap();
        assert_eq!((c.frobenius, c.threshold), (None, 0));
        assert!(frobenius_and_conductor(&[2, 4]).is_err());
    }

    #[test]
    fn dim1_samples() {
        let r = RingDescriptor::semigroup(q(), &[2, 3]).unwrap();
        let t = tau_i_sample_dim1(&r, &[2]).unwrap();
        assert!(t.collapsed);

        let r = RingDescriptor::semigroup(q(), &[3, 5]).unwrap();
        let s35 = r.semigroup_data().unwrap().clone();
        let t = tau_i_sample_dim1(&r, &[3]).unwrap();
        assert!(t.intersection.contains(&s35, 6));
        assert!(!t.collapsed);
        let t = tau_i_sample_dim1(&r, &[3, 5]).unwrap();
        assert!(!t.intersection.contains(&s35, 6));

        let r = RingDescriptor::semigroup(q(), &[1]).unwrap();
        let t = tau_i_sample_dim1(&r, &[1, 4]).unwrap();
        assert!(t.intersection.contains(r.semigroup_data().unwrap(), 0));
        assert!(tau_i_sample_dim1(&RingDescriptor::semigroup(q(), &[2, 3]).unwrap(), &[1]).is_err());
    }

    #[test]
    fn default_samples_collapse() {
        for gens in [&[2u64, 3][..], &[3, 5], &[3, 4, 5]] {
            let r = RingDescriptor::semigroup(q(), gens).unwrap();
            let s = r.semigroup_data().unwrap();
            let t = tau_i_sample_dim1(&r, &default_exponents(s)).unwrap();
            assert!(t.collapsed, "{gens:?}");
        }
    }

    #[test]
    fn finite_fields_warn() {
        let r = RingDescriptor::semigroup(Field::prime(7).unwrap(), &[2, 3]).unwrap();
        assert_eq!(tau_i_sample_dim1(&r, &[2]).unwrap().warnings.len(), 1);
    }

    #[test]
    fn dim2_chain() {
        let r = RingDescriptor::poly(q(), &["x", "y"]).unwrap();
        let c = tau_upper_bound_dim2(&r, 3).unwrap();
        assert!(c.all_within_bound());
        assert_eq!(c.stages[0].colon, vec![r.monomial(&[1, 0]), r.monomial(&[0, 1])]);
        assert_eq!(c.stages[1].colon, vec![r.monomial(&[2, 0]), r.monomial(&[0, 2])]);
        assert_eq!(c.stages[1].certificate.degree, 2);
        assert!(tau_upper_bound_dim2(&RingDescriptor::poly(q(), &["x"]).unwrap(), 2).is_err());
    }

    #[test]
    fn lc_stages() {
        let r = RingDescriptor::poly(q(), &["x", "y"]).unwrap();
        let s1 = lc_stage_probe(&r, &[0, 1], 1).unwrap();
        assert_eq!(s1.annihilator, vec![r.one()]);
        let s2 = lc_stage_probe(&r, &[0, 1], 2).unwrap();
        assert_eq!(s2.closure.len(), 3);
        assert_eq!(s2.annihilator, vec![r.monomial(&[1, 0]), r.monomial(&[0, 1])]);
        assert!(s2.transition_ok);
        assert!(lc_stage_probe(&r, &[0, 0], 2).is_err());
    }
}
