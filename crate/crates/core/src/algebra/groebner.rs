//! Buchberger's algorithm for submodules of free modules over a polynomial
//! ring. Ideals are the rank-one case.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::monomial::{Monomial, MonomialOrder};
use super::poly::{FreeVec, Polynomial};
use super::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub pos: usize,
    pub mon: Monomial,
    pub coef: Scalar,
}

/// A module element as a list of terms sorted from largest to smallest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    terms: Vec<Term>,
}

impl ModPoly {
    pub fn zero() -> Self {
        ModPoly { terms: Vec::new() }
    }

    pub fn from_freevec(v: &FreeVec, order: MonomialOrder) -> Self {
        let mut terms: Vec<Term> = v
            .coords()
            .iter()
            .enumerate()
            .flat_map(|(pos, p)| {
                p.terms().map(move |(m, c)| Term {
                    pos,
                    mon: m.clone(),
                    coef: c.clone(),
                })
            })
            .collect();
        terms.sort_by(|a, b| order.cmp_terms(b.pos, &b.mon, a.pos, &a.mon));
        ModPoly { terms }
    }

    pub fn to_freevec(&self, field: Field, nvars: usize, rank: usize) -> FreeVec {
        let mut coords = vec![Polynomial::zero(field, nvars); rank];
        for t in &self.terms {
            coords[t.pos].add_term(t.mon.clone(), &t.coef);
        }
        FreeVec::new(coords)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    fn monic(mut self) -> Self {
        if let Some(lead) = self.terms.first() {
            let inv = lead.coef.inverse().expect("nonzero lead");
            for t in &mut self.terms {
                t.coef = &t.coef * &inv;
            }
        }
        self
    }

    /// `self - c * mon * other`, merging the sorted term lists.
    fn sub_scaled(&self, c: &Scalar, mon: &Monomial, other: &ModPoly, order: MonomialOrder) -> ModPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|t| Term {
            pos: t.pos,
            mon: t.mon.mul(mon),
            coef: -(c * &t.coef),
        });
        let mut nb = b.next();
        loop {
            match (a.peek(), &nb) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    out.push(nb.take().unwrap());
                    nb = b.next();
                }
                (Some(x), Some(y)) => match order.cmp_terms(x.pos, &x.mon, y.pos, &y.mon) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        out.push(nb.take().unwrap());
                        nb = b.next();
                    }
                    Ordering::Equal => {
                        let s = &x.coef + &y.coef;
                        if !s.is_zero() {
                            out.push(Term {
                                pos: x.pos,
                                mon: x.mon.clone(),
                                coef: s,
                            });
                        }
                        a.next();
                        nb = b.next();
                    }
                },
            }
        }
        ModPoly { terms: out }
    }
}

/// A reduced Gröbner basis of a submodule of `k[x_1..x_n]^rank`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    field: Field,
    nvars: usize,
    rank: usize,
    elems: Vec<ModPoly>,
}

fn lcm_if_same_pos(a: &Term, b: &Term) -> Option<Monomial> {
    (a.pos == b.pos).then(|| a.mon.lcm(&b.mon))
}

impl GroebnerBasis {
    pub fn new(field: Field, nvars: usize, rank: usize, order: MonomialOrder, gens: &[FreeVec]) -> Self {
        let mut basis: Vec<ModPoly> = Vec::new();
        let mut gb = GroebnerBasis {
            order,
            field,
            nvars,
            rank,
            elems: Vec::new(),
        };
        for g in gens {
            let p = gb.reduce_with(&basis, ModPoly::from_freevec(g, order));
            if !p.is_zero() {
                basis.push(p.monic());
            }
        }
        let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for j in 0..basis.len() {
            for i in 0..j {
                pairs.insert((i, j));
            }
        }
        let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
        while let Some(&(i, j)) = pairs.iter().next() {
            pairs.remove(&(i, j));
            done.insert((i, j));
            let (li, lj) = (basis[i].lead().unwrap(), basis[j].lead().unwrap());
            let Some(l) = lcm_if_same_pos(li, lj) else { continue };
            if rank == 1 && li.mon.is_coprime(&lj.mon) {
                continue;
            }
            if Self::chain_criterion(&basis, &done, i, j, &l) {
                continue;
            }
            // leads are monic, so qi * gi - qj * gj cancels them
            let one = gb.field.one();
            let qi = li.mon.quotient_of(&l).unwrap();
            let qj = lj.mon.quotient_of(&l).unwrap();
            let s = ModPoly::zero()
                .sub_scaled(&-&one, &qi, &basis[i], order)
                .sub_scaled(&one, &qj, &basis[j], order);
            let r = gb.reduce_with(&basis, s);
            if !r.is_zero() {
                let k = basis.len();
                basis.push(r.monic());
                for i in 0..k {
                    pairs.insert((i, k));
                }
            }
        }
        gb.elems = gb.interreduce(basis);
        gb
    }

    // Skip (i, j) when some k has lead dividing lcm(i, j) and both (i, k),
    // (j, k) were already treated.
    fn chain_criterion(
        basis: &[ModPoly],
        done: &BTreeSet<(usize, usize)>,
        i: usize,
        j: usize,
        l: &Monomial,
    ) -> bool {
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let pos = basis[i].lead().unwrap().pos;
        (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let lk = basis[k].lead().unwrap();
            lk.pos == pos
                && lk.mon.divides(l)
                && done.contains(&key(i, k))
                && done.contains(&key(j, k))
        })
    }

    fn interreduce(&self, basis: Vec<ModPoly>) -> Vec<ModPoly> {
        let leads: Vec<&Term> = basis.iter().map(|p| p.lead().unwrap()).collect();
        let mut keep: Vec<ModPoly> = Vec::new();
        for (i, p) in basis.iter().enumerate() {
            let li = leads[i];
            let redundant = leads.iter().enumerate().any(|(k, lk)| {
                k != i
                    && lk.pos == li.pos
                    && lk.mon.divides(&li.mon)
                    && (lk.mon != li.mon || k < i)
            });
            if !redundant {
                keep.push(p.clone());
            }
        }
        let mut out = Vec::with_capacity(keep.len());
        for i in 0..keep.len() {
            let others: Vec<ModPoly> = keep
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, p)| p.clone())
                .collect();
            out.push(self.reduce_with(&others, keep[i].clone()).monic());
        }
        let order = self.order;
        out.sort_by(|a, b| {
            let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
            order.cmp_terms(y.pos, &y.mon, x.pos, &x.mon)
        });
        out
    }

    fn reduce_with(&self, basis: &[ModPoly], mut p: ModPoly) -> ModPoly {
        let mut done: Vec<Term> = Vec::new();
        while let Some(t) = p.terms.first().cloned() {
            let div = basis.iter().find(|g| {
                let l = g.lead().unwrap();
                l.pos == t.pos && l.mon.divides(&t.mon)
            });
            match div {
                Some(g) => {
                    let l = g.lead().unwrap();
                    let q = l.mon.quotient_of(&t.mon).unwrap();
                    let c = &t.coef * &l.coef.inverse().unwrap();
                    p = p.sub_scaled(&c, &q, g, self.order);
                }
                None => {
                    done.push(t);
                    p.terms.remove(0);
                }
            }
        }
        ModPoly { terms: done }
    }

    /// Fully reduced normal form.
    pub fn normal_form(&self, v: &FreeVec) -> FreeVec {
        let r = self.reduce_with(&self.elems, ModPoly::from_freevec(v, self.order));
        r.to_freevec(self.field, self.nvars, self.rank)
    }

    pub fn contains(&self, v: &FreeVec) -> bool {
        self.reduce_with(&self.elems, ModPoly::from_freevec(v, self.order)).is_zero()
    }

    pub fn elements(&self) -> Vec<FreeVec> {
        self.elems
            .iter()
            .map(|p| p.to_freevec(self.field, self.nvars, self.rank))
            .collect()
    }

    pub fn mod_elements(&self) -> &[ModPoly] {
        &self.elems
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(f: Field, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_terms(
            f,
            terms[0].0.len(),
            terms.iter().map(|(e, c)| (Monomial(e.to_vec()), f.from_i64(*c))),
        )
    }

    fn ideal_gb(gens: &[Polynomial]) -> Vec<Polynomial> {
        let f = gens[0].field();
        let n = gens[0].nvars();
        let v: Vec<FreeVec> = gens.iter().map(|g| FreeVec::new(vec![g.clone()])).collect();
        GroebnerBasis::new(f, n, 1, MonomialOrder::GrevLex, &v)
            .elements()
            .into_iter()
            .map(|v| v.into_coords().remove(0))
            .collect()
    }

    #[test]
    fn linear_forms_row_reduce() {
        let f = Field::Rational;
        let gb = ideal_gb(&[p(f, &[(&[1, 0], 1), (&[0, 1], 1)]), p(f, &[(&[1, 0], 1), (&[0, 1], -1)])]);
        assert_eq!(gb, vec![p(f, &[(&[1, 0], 1)]), p(f, &[(&[0, 1], 1)])]);
    }

    #[test]
    fn monomial_pair_is_already_a_basis() {
        let f = Field::Rational;
        let gens = [p(f, &[(&[2, 0], 1)]), p(f, &[(&[1, 1], 1)])];
        assert_eq!(ideal_gb(&gens), gens.to_vec());
    }

    #[test]
    fn twisted_cubic_basis_size() {
        // (y - x^2, z - x^3) under grevlex gives y^2 - xz, xy - z, x^2 - y
        let f = Field::Rational;
        let gb = ideal_gb(&[
            p(f, &[(&[0, 1, 0], 1), (&[2, 0, 0], -1)]),
            p(f, &[(&[0, 0, 1], 1), (&[3, 0, 0], -1)]),
        ]);
        assert_eq!(gb.len(), 3);
        for g in &gb {
            assert_eq!(g.total_degree(), Some(2));
        }
    }
}
