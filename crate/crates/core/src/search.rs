//! Search for integrality equations of bounded degree. For each degree `n`
//! the unknown coefficients of `a_1, ..., a_n` are scalars attached to
//! products `mu * k^alpha`, so the search is one linear system over the
//! coefficient field per degree.

use std::collections::BTreeMap;

use crate::algebra::grading::Grading;
use crate::algebra::linalg::{Echelon, SparseVec};
use crate::algebra::{FreeVec, Monomial, Polynomial, RingDescriptor};
use crate::certificate::{IntegralityCertificate, ProductTerm, SymAlgebra};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEGREE: usize = 6;
pub const DEFAULT_SLACK: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_degree: usize,
    /// Extra total degree allowed for coefficients when no grading applies.
    pub slack: u32,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_degree: DEFAULT_MAX_DEGREE,
            slack: DEFAULT_SLACK,
        }
    }
}

impl SearchOptions {
    pub fn with_max_degree(max_degree: usize) -> Self {
        SearchOptions {
            max_degree,
            ..Self::default()
        }
    }
}

/// All multisets of size `j` drawn from `0..n`, as sorted index lists.
fn multisets(n: usize, j: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, j: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, j, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, j, 0, &mut Vec::new(), &mut out);
    out
}

/// Monomials in `nvars` variables of total degree at most `deg`.
fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Monomial> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(0, deg, &mut vec![0; nvars], &mut out);
    out
}

struct Setup<'a> {
    ring: &'a RingDescriptor,
    sym: SymAlgebra,
    y: Polynomial,
    // generator index in the caller's list, and its linear form
    gens: Vec<(usize, Polynomial)>,
    mode: CoefficientMode,
}

enum CoefficientMode {
    // coefficient monomial forced by the grading
    Graded { dy: Vec<i64>, dk: Vec<Vec<i64>> },
    // all standard monomials of an Artinian ring
    Finite(Vec<Monomial>),
    // all monomials with total degree up to a bound
    Bounded { max_total: u32, dmin_y: u32, dmin_k: Vec<u32> },
}

impl Setup<'_> {
    fn allowed(&self, m: &Monomial) -> bool {
        self.ring.is_standard(m)
    }

    /// Admissible coefficient monomials for the product `k^alpha y^(n-j)`.
    fn coefficient_monomials(&self, alpha: &[usize], n: usize, j: usize) -> Vec<Monomial> {
        match &self.mode {
            CoefficientMode::Graded { dy, dk } => {
                let mut mu: Vec<i64> = dy.iter().map(|d| d * j as i64).collect();
                for &a in alpha {
                    for (x, d) in mu.iter_mut().zip(&dk[a]) {
                        *x -= d;
                    }
                }
                if mu.iter().any(|&e| e < 0) {
                    return Vec::new();
                }
                let m = Monomial(mu.into_iter().map(|e| e as u32).collect());
                if self.allowed(&m) {
                    vec![m]
                } else {
                    Vec::new()
                }
            }
            CoefficientMode::Finite(basis) => basis.clone(),
            CoefficientMode::Bounded {
                max_total,
                dmin_y,
                dmin_k,
            } => {
                let used: u32 = alpha.iter().map(|&a| dmin_k[a]).sum::<u32>() + dmin_y * (n - j) as u32;
                if used > *max_total {
                    return Vec::new();
                }
                monomials_up_to(self.ring.nvars(), max_total - used)
                    .into_iter()
                    .filter(|m| self.allowed(m))
                    .collect()
            }
        }
    }
}

fn to_sparse(p: &Polynomial) -> SparseVec<Monomial> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// Searches for an equation of integrality of `y` over the submodule of
/// `R^rank` generated by `k`, of degree at most `opts.max_degree`. A returned
/// certificate has been verified; `None` says nothing about membership.
pub fn free_closure_member(
    y: &FreeVec,
    k: &[FreeVec],
    ring: &RingDescriptor,
    opts: SearchOptions,
) -> Result<Option<IntegralityCertificate>> {
    if opts.max_degree == 0 {
        return Err(Error::InvalidInput("max degree must be at least 1".into()));
    }
    let rank = y.rank();
    for g in k {
        if g.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: g.rank(),
            });
        }
    }
    for v in std::iter::once(y).chain(k) {
        for c in v.coords() {
            ring.check_element(c)?;
        }
    }
    let reduce = |v: &FreeVec| v.map(|c| ring.reduce(c));
    let yr = reduce(y);
    let kr: Vec<FreeVec> = k.iter().map(reduce).collect();
    let sym = SymAlgebra::new(ring, rank);
    let ylin = sym.linear(&yr);
    let certificate = |degree: usize, coefficients: Vec<Vec<ProductTerm>>| IntegralityCertificate {
        ring: ring.clone(),
        rank,
        element: y.clone(),
        generators: k.to_vec(),
        degree,
        coefficients,
    };
    if ylin.is_zero() {
        return Ok(Some(certificate(1, vec![Vec::new()])));
    }

    let mut refs: Vec<&FreeVec> = vec![&yr];
    refs.extend(kr.iter());
    let grading = Grading::detect(ring.nvars(), rank, &refs);
    let mut gens: Vec<(usize, Polynomial)> = Vec::new();
    let mode = match &grading {
        Some(g) => {
            let mut dk = Vec::new();
            for (i, v) in kr.iter().enumerate() {
                if !v.is_zero() && g.same_component(0, i + 1) {
                    gens.push((i, sym.linear(v)));
                    dk.push(g.degrees[i + 1].clone());
                }
            }
            CoefficientMode::Graded {
                dy: g.degrees[0].clone(),
                dk,
            }
        }
        None => {
            for (i, v) in kr.iter().enumerate() {
                if !v.is_zero() {
                    gens.push((i, sym.linear(v)));
                }
            }
            if ring.is_artinian() {
                CoefficientMode::Finite(ring.standard_monomials()?)
            } else {
                let xdeg = |v: &FreeVec, f: fn(&Polynomial) -> Option<u32>, pick: fn(u32, u32) -> u32| {
                    v.coords().iter().filter_map(f).reduce(pick).unwrap_or(0)
                };
                let dmax = refs
                    .iter()
                    .map(|v| xdeg(v, Polynomial::total_degree, u32::max))
                    .max()
                    .unwrap_or(0);
                let dmin_k = gens.iter().map(|(i, _)| xdeg(&kr[*i], Polynomial::min_degree, u32::min)).collect();
                CoefficientMode::Bounded {
                    max_total: opts.max_degree as u32 * dmax + opts.slack,
                    dmin_y: xdeg(&yr, Polynomial::min_degree, u32::min),
                    dmin_k,
                }
            }
        }
    };
    let setup = Setup {
        ring,
        sym,
        y: ylin,
        gens,
        mode,
    };

    for n in 1..=opts.max_degree {
        if let Some(coefficients) = solve_degree(&setup, n) {
            let cert = certificate(n, coefficients).normalize();
            cert.verify()?;
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

fn solve_degree(s: &Setup<'_>, n: usize) -> Option<Vec<Vec<ProductTerm>>> {
    let f = s.ring.field();
    let total = s.sym.nvars();
    let mut ypow = vec![Polynomial::one(f, total)];
    for i in 1..=n {
        ypow.push(s.sym.mul(&ypow[i - 1], &s.y));
    }
    let target = to_sparse(&-&ypow[n]);
    if target.is_empty() {
        return Some(vec![Vec::new(); n]);
    }
    // (j, alpha, mu) for each column
    let mut labels: Vec<(usize, Vec<usize>, Monomial)> = Vec::new();
    let mut ech: Echelon<Monomial> = Echelon::new(f);
    let sym_one = f.one();
    for j in 1..=n {
        for alpha in multisets(s.gens.len(), j) {
            let mus = s.coefficient_monomials(&alpha, n, j);
            if mus.is_empty() {
                continue;
            }
            let mut prod = ypow[n - j].clone();
            for &a in &alpha {
                prod = s.sym.mul(&prod, &s.gens[a].1);
            }
            if prod.is_zero() {
                continue;
            }
            for mu in mus {
                let mut lifted = mu.0.clone();
                lifted.resize(total, 0);
                let col = s.sym.reduce(&prod.mul_term(&Monomial(lifted), &sym_one));
                if col.is_zero() {
                    continue;
                }
                ech.insert(to_sparse(&col), labels.len());
                labels.push((j, alpha.iter().map(|&a| s.gens[a].0).collect(), mu));
            }
        }
    }
    let sol = ech.solve(&target)?;
    let mut coefficients: Vec<Vec<ProductTerm>> = vec![Vec::new(); n];
    let nvars = s.ring.nvars();
    let mut grouped: BTreeMap<(usize, Vec<usize>), Polynomial> = BTreeMap::new();
    for (idx, c) in sol {
        let (j, factors, mu) = &labels[idx];
        let slot = grouped
            .entry((*j, factors.clone()))
            .or_insert_with(|| Polynomial::zero(f, nvars));
        slot.add_term(mu.clone(), &c);
    }
    for ((j, factors), coefficient) in grouped {
        if !coefficient.is_zero() {
            coefficients[j - 1].push(ProductTerm { coefficient, factors });
        }
    }
    Some(coefficients)
}

/// Rank-one case: an equation `z^n + a_1 z^(n-1) + ... + a_n = 0` with
/// `a_j in I^j`.
pub fn certify_ideal_member(
    z: &Polynomial,
    ideal: &[Polynomial],
    ring: &RingDescriptor,
    opts: SearchOptions,
) -> Result<Option<IntegralityCertificate>> {
    let wrap = |p: &Polynomial| FreeVec::new(vec![p.clone()]);
    let gens: Vec<FreeVec> = ideal.iter().map(wrap).collect();
    free_closure_member(&wrap(z), &gens, ring, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn xy() -> RingDescriptor {
        RingDescriptor::poly(Field::Rational, &["x", "y"]).unwrap()
    }

    #[test]
    fn xy_over_squares_needs_degree_two() {
        let r = xy();
        let i = [r.monomial(&[2, 0]), r.monomial(&[0, 2])];
        let c = certify_ideal_member(&r.monomial(&[1, 1]), &i, &r, SearchOptions::with_max_degree(2))
            .unwrap()
            .unwrap();
        assert_eq!(c.degree, 2);
        assert!(c.coefficients[0].is_empty());
        assert_eq!(c.coefficients[1].len(), 1);
        assert_eq!(c.coefficients[1][0].factors, vec![0, 1]);
        assert!(certify_ideal_member(&r.monomial(&[1, 1]), &i, &r, SearchOptions::with_max_degree(1))
            .unwrap()
            .is_none());
    }

    #[test]
    fn members_have_degree_one_certificates() {
        let r = xy();
        let c = certify_ideal_member(&r.var(0), &[r.var(0)], &r, SearchOptions::with_max_degree(1))
            .unwrap()
            .unwrap();
        assert_eq!(c.degree, 1);
        assert_eq!(c.coefficients[0][0].coefficient, -&r.one());
    }

    #[test]
    fn x_is_not_integral_over_x_squared() {
        let r = xy();
        let found = certify_ideal_member(&r.var(0), &[r.monomial(&[2, 0])], &r, SearchOptions::with_max_degree(10)).unwrap();
        assert!(found.is_none());
    }

    #[test]
    fn ungraded_input_uses_degree_bound() {
        // x + y is integral over (x^2, y^2)? No; but (x+y)^2 is in (x^2, xy, y^2)
        let r = xy();
        let s = &r.var(0) + &r.var(1);
        let m2 = [r.monomial(&[2, 0]), r.monomial(&[1, 1]), r.monomial(&[0, 2])];
        let c = certify_ideal_member(&s.pow(2), &m2, &r, SearchOptions::with_max_degree(2)).unwrap().unwrap();
        assert_eq!(c.degree, 1);
        let none = certify_ideal_member(&s, &m2, &r, SearchOptions::with_max_degree(3)).unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let r = xy();
        let y = FreeVec::unit(r.field(), 2, 2, 0);
        let k = [FreeVec::unit(r.field(), 2, 1, 0)];
        assert!(matches!(
            free_closure_member(&y, &k, &r, SearchOptions::default()),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(multisets(0, 1).len(), 0);
        assert_eq!(monomials_up_to(2, 2).len(), 6);
    }
}
