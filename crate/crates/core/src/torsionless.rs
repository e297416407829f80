//! Finite-length cyclic modules `R/I` over `k[x,y]` written as `T/L` with
//! `L ⊆ T ⊆ G` free-embedded and `T` integral over `L`, built from the
//! presentation of the injective hull `E` on generators `t_1, t_2, ...` with
//! relations `x^i t_i`, `y^i t_i` and `xy t_(i+1) - t_i`.

use crate::algebra::{
    groebner_basis, ideal_member, module_colon_vector, module_member, FreeVec, Monomial,
    MonomialOrder, Polynomial, RingDescriptor,
};
use crate::certificate::{IntegralityCertificate, ProductTerm};
use crate::error::{Error, Result};

/// Relations of `E` truncated to `t_1, ..., t_N` (position `i - 1` holds
/// `t_i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EPresentationTruncation {
    pub ring: RingDescriptor,
    pub level: usize,
    /// `a_i = x^i t_i`.
    pub a: Vec<FreeVec>,
    /// `b_i = y^i t_i`.
    pub b: Vec<FreeVec>,
    /// `c_i = xy t_(i+1) - t_i` for `i < N`.
    pub c: Vec<FreeVec>,
}

fn xy_ring() -> RingDescriptor {
    RingDescriptor::poly(crate::algebra::Field::Rational, &["x", "y"]).expect("valid names")
}

impl EPresentationTruncation {
    /// All relations: the `a_i`, then the `b_i`, then the `c_i`.
    pub fn relations(&self) -> Vec<FreeVec> {
        self.a.iter().chain(&self.b).chain(&self.c).cloned().collect()
    }

    pub fn index_a(&self, i: usize) -> usize {
        i - 1
    }

    pub fn index_b(&self, i: usize) -> usize {
        self.level + i - 1
    }

    pub fn index_c(&self, i: usize) -> usize {
        2 * self.level + i - 1
    }

    /// `r t_i`.
    pub fn t(&self, i: usize, r: Polynomial) -> FreeVec {
        FreeVec::basis_multiple(self.level, i - 1, r)
    }

    fn xy_pow(&self, j: usize) -> Polynomial {
        self.ring.monomial(&[j as u32, j as u32])
    }

    /// `d_i = (xy)^i t_(2i) - t_i`.
    pub fn d(&self, i: usize) -> FreeVec {
        &self.t(2 * i, self.xy_pow(i)) - &self.t(i, self.ring.one())
    }

    /// `sum_(j < i) (xy)^j c_(i+j)`.
    pub fn d_telescoped(&self, i: usize) -> FreeVec {
        let mut acc = FreeVec::zero(self.ring.field(), 2, self.level);
        for j in 0..i {
            acc = &acc + &self.c[i + j - 1].scale_poly(&self.xy_pow(j));
        }
        acc
    }
}

/// Builds `U_N` and checks `d_i ∈ U_N` for every `2i <= N`, both by
/// membership and by the telescoping sum.
pub fn build_truncation(level: usize) -> Result<EPresentationTruncation> {
    if level == 0 {
        return Err(Error::InvalidInput("truncation level must be at least 1".into()));
    }
    let ring = xy_ring();
    let unit = |i: usize| FreeVec::unit(ring.field(), 2, level, i - 1);
    let a = (1..=level).map(|i| unit(i).scale_poly(&ring.monomial(&[i as u32, 0]))).collect();
    let b = (1..=level).map(|i| unit(i).scale_poly(&ring.monomial(&[0, i as u32]))).collect();
    let c = (1..level)
        .map(|i| &unit(i + 1).scale_poly(&ring.monomial(&[1, 1])) - &unit(i))
        .collect();
    let trunc = EPresentationTruncation { ring, level, a, b, c };
    let rels = trunc.relations();
    for i in 1..=level / 2 {
        let d = trunc.d(i);
        if d != trunc.d_telescoped(i) {
            return Err(Error::Verification(format!("telescoping sum for d_{i} differs")));
        }
        if !module_member(&d, &rels, &trunc.ring)? {
            return Err(Error::Verification(format!("d_{i} is not in U_{level}")));
        }
    }
    Ok(trunc)
}

/// Places a rank-`N` vector in block `k` of `G = (R^N)^n`.
fn embed_block(v: &FreeVec, k: usize, copies: usize, ring: &RingDescriptor) -> FreeVec {
    let n = v.rank();
    let mut coords = vec![ring.zero(); n * copies];
    for (p, c) in v.coords().iter().enumerate() {
        coords[k * n + p] = c.clone();
    }
    FreeVec::new(coords)
}

/// The quadratic equation of `sum_k mu_k t_i^(k)` over the block copies of
/// `U_N`: with `D = sum_k mu_k d_i^(k)`, `A = sum_k mu_k a_(2i)^(k)` and
/// `B = sum_k mu_k b_(2i)^(k)`, the coefficients are `2D` and `D^2 - AB`.
fn block_certificate(
    trunc: &EPresentationTruncation,
    i: usize,
    mus: &[Polynomial],
) -> Result<IntegralityCertificate> {
    if 2 * i > trunc.level {
        return Err(Error::InvalidInput(format!(
            "t_{i} needs truncation level at least {}, got {}",
            2 * i,
            trunc.level
        )));
    }
    let ring = &trunc.ring;
    let f = ring.field();
    let copies = mus.len();
    let rels = trunc.relations();
    let per = rels.len();
    let generators: Vec<FreeVec> = (0..copies)
        .flat_map(|k| rels.iter().map(move |r| (k, r)))
        .map(|(k, r)| embed_block(r, k, copies, ring))
        .collect();
    let mut element = FreeVec::zero(f, 2, trunc.level * copies);
    for (k, mu) in mus.iter().enumerate() {
        element = &element + &embed_block(&trunc.t(i, mu.clone()), k, copies, ring);
    }
    // D as (coefficient, generator index) pairs
    let d_terms: Vec<(Polynomial, usize)> = mus
        .iter()
        .enumerate()
        .flat_map(|(k, mu)| (0..i).map(move |j| (k, mu, j)))
        .map(|(k, mu, j)| (mu * &trunc.xy_pow(j), k * per + trunc.index_c(i + j)))
        .collect();
    let two = Polynomial::constant(f, 2, f.from_i64(2));
    let a1 = d_terms
        .iter()
        .map(|(c, g)| ProductTerm {
            coefficient: &two * c,
            factors: vec![*g],
        })
        .collect();
    let mut a2 = Vec::new();
    for (c1, g1) in &d_terms {
        for (c2, g2) in &d_terms {
            a2.push(ProductTerm {
                coefficient: c1 * c2,
                factors: vec![*g1, *g2],
            });
        }
    }
    for (k, mk) in mus.iter().enumerate() {
        for (l, ml) in mus.iter().enumerate() {
            a2.push(ProductTerm {
                coefficient: -&(mk * ml),
                factors: vec![k * per + trunc.index_a(2 * i), l * per + trunc.index_b(2 * i)],
            });
        }
    }
    let cert = IntegralityCertificate {
        ring: ring.clone(),
        rank: trunc.level * copies,
        element,
        generators,
        degree: 2,
        coefficients: vec![a1, a2],
    }
    .normalize();
    cert.verify()?;
    Ok(cert)
}

/// The certificate for `t_i^2 + 2 d_i t_i + (d_i^2 - a_(2i) b_(2i)) = 0`.
pub fn quadratic_certificate(i: usize, trunc: &EPresentationTruncation) -> Result<IntegralityCertificate> {
    block_certificate(trunc, i, &[trunc.ring.one()])
}

/// Whether `t_i^2 + 2 d_i t_i + (d_i^2 - a_(2i) b_(2i))` expands to zero in
/// the symmetric algebra. Errors when `2i > N`.
pub fn verify_quadratic_identity(i: usize, trunc: &EPresentationTruncation) -> Result<bool> {
    match quadratic_certificate(i, trunc) {
        Ok(_) => Ok(true),
        Err(Error::Verification(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// `(0 :_E I)` in inverse powers: the dual monomial `x^-a y^-b` is stored as
/// the exponent `(a, b)`, and `x^c y^d` contracts it to `x^(c-a) y^(d-b)`
/// (zero unless `c <= a`, `d <= b`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseSystem {
    pub ideal: Vec<Monomial>,
    /// Dual monomials killed by `I`, i.e. the standard monomials of `R/I`.
    pub basis: Vec<Monomial>,
    /// Minimal generators under contraction: the socle monomials of `R/I`.
    pub generators: Vec<Monomial>,
}

impl InverseSystem {
    pub fn copies(&self) -> usize {
        self.generators.len()
    }

    /// Dimension of the span of all contractions of the generators.
    pub fn span_dimension(&self) -> usize {
        self.basis
            .iter()
            .filter(|b| self.generators.iter().any(|g| b.divides(g)))
            .count()
    }

    /// Whether every generator of `I` contracts every generator to zero.
    pub fn annihilated(&self) -> bool {
        self.ideal.iter().all(|g| self.generators.iter().all(|m| !g.divides(m)))
    }
}

fn quotient_of_ideal(ring: &RingDescriptor, ideal: &[Monomial]) -> Result<RingDescriptor> {
    RingDescriptor::quotient_named(ring.field(), ring.var_names(), ideal.to_vec())
}

fn monomials_checked(ideal: &[Polynomial]) -> Result<Vec<Monomial>> {
    crate::algebra::ops::monomials_of(ideal)
}

/// Macaulay inverse system of an `m`-primary monomial ideal.
pub fn inverse_system(ideal: &[Polynomial], ring: &RingDescriptor) -> Result<InverseSystem> {
    if !matches!(ring, RingDescriptor::Poly { .. }) {
        return Err(Error::UnsupportedRing(format!("{ring}: inverse systems need a polynomial ring")));
    }
    let mons = monomials_checked(ideal)?;
    let q = quotient_of_ideal(ring, &mons).map_err(|_| Error::InvalidInput("the unit ideal has no inverse system".into()))?;
    if !q.is_artinian() {
        return Err(Error::InvalidInput(format!(
            "ideal is not primary to the maximal ideal ({ring} / I has dimension {})",
            q.dimension()
        )));
    }
    let basis = q.standard_monomials()?;
    let n = ring.nvars();
    let generators = basis
        .iter()
        .filter(|b| (0..n).all(|v| !q.is_standard(&b.mul(&Monomial::var(n, v, 1)))))
        .cloned()
        .collect();
    Ok(InverseSystem {
        ideal: crate::algebra::ring::minimize_monomials(&mons),
        basis,
        generators,
    })
}

/// Membership tests for `T/L ≅ R/I` through `1 -> ĵ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoPackage {
    pub image: FreeVec,
    /// `g ĵ ∈ L` for every generator `g` of `I`.
    pub forward: Vec<(Polynomial, bool)>,
    /// Generators of `(L :_R ĵ)` and whether each lies in `I`.
    pub backward: Vec<(Polynomial, bool)>,
}

impl IsoPackage {
    pub fn passes(&self) -> bool {
        self.forward.iter().chain(&self.backward).all(|(_, ok)| *ok)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionlessWitness {
    pub ring: RingDescriptor,
    pub ideal: Vec<Polynomial>,
    pub inverse_system: InverseSystem,
    /// Truncation level `N`.
    pub level: usize,
    /// Every dual generator is realized through `t_i`.
    pub index: usize,
    /// `G = (R^N)^n`.
    pub free_rank: usize,
    pub l_gens: Vec<FreeVec>,
    /// `ĵ` followed by the generators of `L`.
    pub t_gens: Vec<FreeVec>,
    pub iso: IsoPackage,
    /// One certificate per generator of `T`, over the generators of `L`.
    pub certificates: Vec<IntegralityCertificate>,
    /// `dim_k T/L` and `dim_k R/I`.
    pub lengths: (usize, usize),
}

fn quotient_length(gens: &[Polynomial], ring: &RingDescriptor) -> Result<usize> {
    let gb = groebner_basis(gens, MonomialOrder::GrevLex, ring)?;
    let leads: Vec<Monomial> = gb
        .iter()
        .filter_map(|p| p.leading_term(MonomialOrder::GrevLex).map(|(m, _)| m.clone()))
        .collect();
    let q = quotient_of_ideal(ring, &leads).map_err(|_| Error::Verification("colon is the unit ideal".into()))?;
    Ok(q.standard_monomials()?.len())
}

fn linear_certificate(ring: &RingDescriptor, rank: usize, gens: &[FreeVec], k: usize) -> IntegralityCertificate {
    IntegralityCertificate {
        ring: ring.clone(),
        rank,
        element: gens[k].clone(),
        generators: gens.to_vec(),
        degree: 1,
        coefficients: vec![vec![ProductTerm {
            coefficient: -&ring.one(),
            factors: vec![k],
        }]],
    }
}

fn iso_package(
    ring: &RingDescriptor,
    ideal: &[Polynomial],
    l_gens: &[FreeVec],
    image: &FreeVec,
) -> Result<IsoPackage> {
    let mut forward = Vec::new();
    for g in ideal {
        forward.push((g.clone(), module_member(&image.scale_poly(g), l_gens, ring)?));
    }
    let mut backward = Vec::new();
    for g in module_colon_vector(l_gens, image, ring)? {
        let ok = ideal_member(&g, ideal, ring)?;
        backward.push((g, ok));
    }
    Ok(IsoPackage {
        image: image.clone(),
        forward,
        backward,
    })
}

/// `R/I ≅ T/L` with `L ⊆ T ⊆ G` and `T` integral over `L`, fully verified.
pub fn represent_torsionless(ideal: &[Polynomial], ring: &RingDescriptor) -> Result<TorsionlessWitness> {
    if *ring != xy_ring() {
        return Err(Error::UnsupportedRing(format!("{ring}: expected poly QQ [x,y]")));
    }
    let inv = inverse_system(ideal, ring)?;
    let index = inv
        .generators
        .iter()
        .map(|m| m.0[0].max(m.0[1]) as usize + 1)
        .max()
        .expect("an Artinian quotient has a socle");
    let level = 2 * index;
    let trunc = build_truncation(level)?;
    let copies = inv.copies();
    let free_rank = level * copies;
    // x^-a y^-b = x^(i-1-a) y^(i-1-b) t_i
    let top = (index - 1) as u32;
    let mus: Vec<Polynomial> = inv
        .generators
        .iter()
        .map(|m| ring.monomial(&[top - m.0[0], top - m.0[1]]))
        .collect();
    let cert = block_certificate(&trunc, index, &mus)?;
    let l_gens = cert.generators.clone();
    let image = cert.element.clone();
    let iso = iso_package(ring, ideal, &l_gens, &image)?;
    if !iso.passes() {
        return Err(Error::Verification("T/L is not isomorphic to R/I".into()));
    }
    let colon: Vec<Polynomial> = iso.backward.iter().map(|(g, _)| g.clone()).collect();
    let lengths = (quotient_length(&colon, ring)?, quotient_length(ideal, ring)?);
    if lengths.0 != lengths.1 || lengths.1 != inv.span_dimension() {
        return Err(Error::Verification(format!(
            "length mismatch: T/L has {}, R/I has {}",
            lengths.0, lengths.1
        )));
    }
    let mut t_gens = vec![image];
    t_gens.extend(l_gens.iter().cloned());
    let mut certificates = vec![cert];
    for k in 0..l_gens.len() {
        certificates.push(linear_certificate(ring, free_rank, &l_gens, k));
    }
    let w = TorsionlessWitness {
        ring: ring.clone(),
        ideal: ideal.to_vec(),
        inverse_system: inv,
        level,
        index,
        free_rank,
        l_gens,
        t_gens,
        iso,
        certificates,
        lengths,
    };
    verify_witness(&w)?;
    Ok(w)
}

/// Re-checks a witness from its stored data alone.
pub fn verify_witness(w: &TorsionlessWitness) -> Result<()> {
    let fail = |m: String| Err(Error::Verification(m));
    let ring = &w.ring;
    for v in w.t_gens.iter().chain(&w.l_gens) {
        if v.rank() != w.free_rank {
            return fail(format!("vector of rank {} in G of rank {}", v.rank(), w.free_rank));
        }
    }
    for l in &w.l_gens {
        if !module_member(l, &w.t_gens, ring)? {
            return fail("L is not contained in T".into());
        }
    }
    if w.certificates.len() != w.t_gens.len() {
        return fail(format!(
            "{} certificates for {} generators of T",
            w.certificates.len(),
            w.t_gens.len()
        ));
    }
    for (c, t) in w.certificates.iter().zip(&w.t_gens) {
        if c.element != *t || c.generators != w.l_gens || c.ring != *ring {
            return fail("certificate does not match the witness".into());
        }
        c.verify()?;
    }
    let iso = iso_package(ring, &w.ideal, &w.l_gens, &w.iso.image)?;
    if iso != w.iso || !iso.passes() || w.t_gens.first() != Some(&w.iso.image) {
        return fail("isomorphism package does not re-verify".into());
    }
    let colon: Vec<Polynomial> = iso.backward.iter().map(|(g, _)| g.clone()).collect();
    let lengths = (quotient_length(&colon, ring)?, quotient_length(&w.ideal, ring)?);
    if lengths != w.lengths || lengths.0 != lengths.1 {
        return fail(format!("lengths {lengths:?} differ from stored {:?}", w.lengths));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r() -> RingDescriptor {
        xy_ring()
    }

    fn ideal(gens: &[[u32; 2]]) -> Vec<Polynomial> {
        gens.iter().map(|e| r().monomial(e)).collect()
    }

    #[test]
    fn truncation_two() {
        let t = build_truncation(2).unwrap();
        assert_eq!(t.relations().len(), 5);
        assert_eq!(t.d(1), t.c[0]);
    }

    #[test]
    fn telescoping_at_four_and_eight() {
        let t = build_truncation(4).unwrap();
        assert_eq!(t.d(2), &t.c[2].scale_poly(&r().monomial(&[1, 1])) + &t.c[1]);
        build_truncation(8).unwrap();
    }

    #[test]
    fn quadratic_identities() {
        assert!(verify_quadratic_identity(1, &build_truncation(2).unwrap()).unwrap());
        assert!(verify_quadratic_identity(2, &build_truncation(4).unwrap()).unwrap());
        assert!(verify_quadratic_identity(1, &build_truncation(1).unwrap()).is_err());
    }

    #[test]
    fn inverse_systems() {
        let s = inverse_system(&ideal(&[[1, 0], [0, 1]]), &r()).unwrap();
        assert_eq!((s.copies(), s.span_dimension()), (1, 1));
        let s = inverse_system(&ideal(&[[2, 0], [0, 2]]), &r()).unwrap();
        assert_eq!(s.generators, vec![Monomial(vec![1, 1])]);
        assert_eq!(s.span_dimension(), 4);
        let s = inverse_system(&ideal(&[[2, 0], [1, 1], [0, 2]]), &r()).unwrap();
        assert_eq!(s.copies(), 2);
        assert!(s.annihilated());
        assert!(inverse_system(&ideal(&[[1, 0]]), &r()).is_err());
    }

    #[test]
    fn maximal_ideal_witness() {
        let w = represent_torsionless(&ideal(&[[1, 0], [0, 1]]), &r()).unwrap();
        assert_eq!((w.free_rank, w.level, w.lengths), (2, 2, (1, 1)));
        assert_eq!(w.t_gens[0], FreeVec::unit(r().field(), 2, 2, 0));
    }

    #[test]
    fn witnesses_have_expected_lengths() {
        let cases: [(&[[u32; 2]], usize, usize); 3] = [
            (&[[1, 0], [0, 2]], 4, 2),
            (&[[2, 0], [0, 2]], 4, 4),
            (&[[2, 0], [1, 1], [0, 2]], 8, 3),
        ];
        for (gens, rank, len) in cases {
            let w = represent_torsionless(&ideal(gens), &r()).unwrap();
            assert_eq!((w.free_rank, w.lengths.0), (rank, len), "{gens:?}");
        }
    }

    #[test]
    fn tampered_witness_fails() {
        let mut w = represent_torsionless(&ideal(&[[1, 0], [0, 1]]), &r()).unwrap();
        w.lengths = (2, 2);
        assert!(verify_witness(&w).is_err());
    }
}
