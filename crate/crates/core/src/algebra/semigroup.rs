//! Numerical semigroups and the monomial ideals of their semigroup rings,
//! stored as exponent sets "finite part + cofinite threshold".

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cofinite additive submonoid of the naturals given by generators with gcd 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    minimal_generators: Vec<u64>,
    // membership for 0..conductor
    table: Vec<bool>,
    conductor: u64,
}

impl NumericalSemigroup {
    pub fn new(gens: &[u64]) -> Result<Self> {
        let mut generators: Vec<u64> = gens.iter().copied().filter(|&g| g > 0).collect();
        generators.sort_unstable();
        generators.dedup();
        if generators.is_empty() {
            return Err(Error::InvalidInput("semigroup needs a positive generator".into()));
        }
        let g = generators.iter().fold(0u64, |acc, &a| acc.gcd(&a));
        if g != 1 {
            return Err(Error::InvalidInput(format!(
                "semigroup generators {generators:?} have gcd {g}, not 1"
            )));
        }
        // Schur's bound: the Frobenius number is below a_1 * a_k.
        let bound = (generators[0] * generators[generators.len() - 1]) as usize + 1;
        let mut member = vec![false; bound + 1];
        member[0] = true;
        for u in 1..=bound {
            member[u] = generators
                .iter()
                .any(|&a| a as usize <= u && member[u - a as usize]);
        }
        let conductor = match (0..=bound).rev().find(|&u| !member[u]) {
            Some(f) => f as u64 + 1,
            None => 0,
        };
        let table = member[..conductor as usize].to_vec();
        let mut s = NumericalSemigroup {
            generators,
            minimal_generators: Vec::new(),
            table,
            conductor,
        };
        let gens = s.generators.clone();
        s.minimal_generators = gens
            .iter()
            .copied()
            .filter(|&a| !(1..a).any(|b| s.contains(b) && s.contains(a - b)))
            .collect();
        Ok(s)
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn minimal_generators(&self) -> &[u64] {
        &self.minimal_generators
    }

    pub fn contains(&self, u: u64) -> bool {
        u >= self.conductor || self.table[u as usize]
    }

    /// Smallest `c` with `c + N` inside the semigroup.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Largest gap, `None` when the semigroup is all of the naturals.
    pub fn frobenius(&self) -> Option<u64> {
        self.conductor.checked_sub(1)
    }

    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor).filter(|&u| !self.contains(u)).collect()
    }

    pub fn elements_below(&self, bound: u64) -> Vec<u64> {
        (0..bound).filter(|&u| self.contains(u)).collect()
    }

    /// Smallest nonzero element.
    pub fn multiplicity(&self) -> u64 {
        self.minimal_generators[0]
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.generators.iter().map(u64::to_string).collect();
        write!(f, "<{}>", g.join(","))
    }
}

/// A nonzero monomial ideal of `k[S]`: the semigroup elements `u` with `t^u`
/// in the ideal. Canonical form: `finite` lists the members below
/// `threshold`, and every semigroup element at or above `threshold` belongs;
/// `threshold` is as small as possible.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentSet {
    pub finite: BTreeSet<u64>,
    pub threshold: u64,
}

impl ExponentSet {
    /// Builds the set `{u in S : pred(u)}` assuming `pred` holds for every
    /// semigroup element `>= bound`.
    pub fn from_predicate(s: &NumericalSemigroup, bound: u64, pred: impl Fn(u64) -> bool) -> Self {
        let members: Vec<bool> = (0..bound).map(|u| s.contains(u) && pred(u)).collect();
        let mut threshold = bound;
        while threshold > 0 {
            let u = threshold - 1;
            if s.contains(u) && !members[u as usize] {
                break;
            }
            threshold -= 1;
        }
        let finite = (0..threshold).filter(|&u| members[u as usize]).collect();
        ExponentSet { finite, threshold }
    }

    /// The ideal generated by `t^g` for `g` in `gens`.
    pub fn generated(s: &NumericalSemigroup, gens: &[u64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::InvalidInput("zero ideal has no exponent set".into()));
        }
        for &g in gens {
            if !s.contains(g) {
                return Err(Error::InvalidInput(format!("t^{g} is not in k[{s}]")));
            }
        }
        let low = *gens.iter().min().unwrap();
        let bound = low + s.conductor() + 1;
        Ok(Self::from_predicate(s, bound, |u| {
            gens.iter().any(|&g| u >= g && s.contains(u - g))
        }))
    }

    pub fn whole_ring() -> Self {
        ExponentSet {
            finite: BTreeSet::new(),
            threshold: 0,
        }
    }

    pub fn contains(&self, s: &NumericalSemigroup, u: u64) -> bool {
        s.contains(u) && (u >= self.threshold || self.finite.contains(&u))
    }

    pub fn min_element(&self, s: &NumericalSemigroup) -> u64 {
        if let Some(&m) = self.finite.iter().next() {
            return m;
        }
        (self.threshold..).find(|&u| s.contains(u)).unwrap()
    }

    /// Members `u` not of the form `v + w` with `v` a member and `w > 0` in S.
    pub fn minimal_generators(&self, s: &NumericalSemigroup) -> Vec<u64> {
        let bound = self.threshold + s.conductor() + s.multiplicity() + 1;
        (0..bound)
            .filter(|&u| self.contains(s, u))
            .filter(|&u| !(1..=u).any(|w| s.contains(w) && self.contains(s, u - w)))
            .collect()
    }

    pub fn is_subset(&self, s: &NumericalSemigroup, other: &ExponentSet) -> bool {
        let bound = self.threshold.max(other.threshold) + 1;
        (0..bound).all(|u| !self.contains(s, u) || other.contains(s, u))
    }

    pub fn intersect(&self, s: &NumericalSemigroup, other: &ExponentSet) -> ExponentSet {
        let bound = self.threshold.max(other.threshold);
        Self::from_predicate(s, bound, |u| self.contains(s, u) && other.contains(s, u))
    }

    /// Ideal product: `{a + b}`.
    pub fn product(&self, s: &NumericalSemigroup, other: &ExponentSet) -> ExponentSet {
        let a = self.minimal_generators(s);
        let b = other.minimal_generators(s);
        let gens: Vec<u64> = a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect();
        Self::generated(s, &gens).expect("products of members are members")
    }

    /// `(self : other) = {u in S : u + other ⊆ self}`.
    pub fn colon(&self, s: &NumericalSemigroup, other: &ExponentSet) -> ExponentSet {
        // For u >= self.threshold every shift lands in self.
        let members_of_other: Vec<u64> = (0..self.threshold)
            .filter(|&w| other.contains(s, w))
            .collect();
        Self::from_predicate(s, self.threshold, |u| {
            members_of_other
                .iter()
                .all(|&w| self.contains(s, u + w))
        })
    }

    pub fn render(&self, s: &NumericalSemigroup) -> String {
        let mut shown: Vec<String> = self.finite.iter().map(|u| u.to_string()).collect();
        let tail: Vec<u64> = (self.threshold..self.threshold + 3)
            .filter(|&u| s.contains(u))
            .collect();
        shown.extend(tail.iter().map(u64::to_string));
        format!("{{{}, ...}}", shown.join(", "))
    }
}
