use std::collections::BTreeSet;
use std::fmt;

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::scalar::Field;
use super::semigroup::NumericalSemigroup;
use crate::error::{Error, Result};

/// The three exactly computable ring classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    /// `k[x_1, ..., x_n]`.
    Poly { field: Field, vars: Vec<String> },
    /// `k[x_1, ..., x_n] / (monomials)`; `relations` are the minimal generators.
    MonomialQuotient {
        field: Field,
        vars: Vec<String>,
        relations: Vec<Monomial>,
    },
    /// `k[S] = k[t^s : s in S]` inside `k[t]`.
    Semigroup {
        field: Field,
        semigroup: NumericalSemigroup,
    },
}

impl RingDescriptor {
    pub fn poly(field: Field, vars: &[&str]) -> Result<Self> {
        Ok(RingDescriptor::Poly {
            field,
            vars: check_vars(vars.iter().map(|s| s.to_string()).collect())?,
        })
    }

    /// The quotient by the ideal generated by `relations`; an empty list gives
    /// the polynomial ring itself.
    pub fn quotient(field: Field, vars: &[&str], relations: Vec<Monomial>) -> Result<Self> {
        let vars = check_vars(vars.iter().map(|s| s.to_string()).collect())?;
        Self::quotient_named(field, vars, relations)
    }

    pub fn quotient_named(field: Field, vars: Vec<String>, relations: Vec<Monomial>) -> Result<Self> {
        for m in &relations {
            if m.nvars() != vars.len() {
                return Err(Error::InvalidInput(format!(
                    "relation {m} has {} exponents, ring has {} variables",
                    m.nvars(),
                    vars.len()
                )));
            }
            if m.is_one() {
                return Err(Error::InvalidInput("quotient by the unit ideal".into()));
            }
        }
        let relations = minimize_monomials(&relations);
        if relations.is_empty() {
            return Ok(RingDescriptor::Poly { field, vars });
        }
        Ok(RingDescriptor::MonomialQuotient {
            field,
            vars,
            relations,
        })
    }

    pub fn semigroup(field: Field, gens: &[u64]) -> Result<Self> {
        Ok(RingDescriptor::Semigroup {
            field,
            semigroup: NumericalSemigroup::new(gens)?,
        })
    }

    pub fn field(&self) -> Field {
        match self {
            RingDescriptor::Poly { field, .. }
            | RingDescriptor::MonomialQuotient { field, .. }
            | RingDescriptor::Semigroup { field, .. } => *field,
        }
    }

    /// Variables of the carrier polynomial ring (`t` for semigroup rings).
    pub fn nvars(&self) -> usize {
        match self {
            RingDescriptor::Poly { vars, .. } | RingDescriptor::MonomialQuotient { vars, .. } => {
                vars.len()
            }
            RingDescriptor::Semigroup { .. } => 1,
        }
    }

    pub fn var_names(&self) -> Vec<String> {
        match self {
            RingDescriptor::Poly { vars, .. } | RingDescriptor::MonomialQuotient { vars, .. } => {
                vars.clone()
            }
            RingDescriptor::Semigroup { .. } => vec!["t".to_string()],
        }
    }

    pub fn relations(&self) -> &[Monomial] {
        match self {
            RingDescriptor::MonomialQuotient { relations, .. } => relations,
            _ => &[],
        }
    }

    pub fn semigroup_data(&self) -> Option<&NumericalSemigroup> {
        match self {
            RingDescriptor::Semigroup { semigroup, .. } => Some(semigroup),
            _ => None,
        }
    }

    pub fn is_semigroup(&self) -> bool {
        matches!(self, RingDescriptor::Semigroup { .. })
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.field(), self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.field(), self.nvars())
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.field(), self.nvars(), i)
    }

    pub fn monomial(&self, exps: &[u32]) -> Polynomial {
        Polynomial::monomial(self.field(), Monomial(exps.to_vec()))
    }

    /// Whether `t^u`-style monomial `m` is a (nonzero) element of the ring.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        match self {
            RingDescriptor::Poly { .. } => true,
            RingDescriptor::MonomialQuotient { relations, .. } => {
                !relations.iter().any(|g| g.divides(m))
            }
            RingDescriptor::Semigroup { semigroup, .. } => semigroup.contains(m.0[0] as u64),
        }
    }

    /// Canonical representative: drops terms in the defining ideal.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        p.reduce_monomial_ideal(self.relations())
    }

    /// Checks that `p` is an element of this ring (semigroup support, arity).
    pub fn check_element(&self, p: &Polynomial) -> Result<()> {
        if p.nvars() != self.nvars() || p.field() != self.field() {
            return Err(Error::InvalidInput(format!(
                "element over {} variables does not belong to {self}",
                p.nvars()
            )));
        }
        if let RingDescriptor::Semigroup { semigroup, .. } = self {
            for m in p.monomials() {
                if !semigroup.contains(m.0[0] as u64) {
                    return Err(Error::InvalidInput(format!(
                        "t^{} is not in k[{semigroup}]",
                        m.0[0]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Generators of the maximal ideal at the origin.
    pub fn maximal_ideal(&self) -> Vec<Polynomial> {
        match self {
            RingDescriptor::Semigroup { semigroup, .. } => semigroup
                .minimal_generators()
                .iter()
                .map(|&s| self.monomial(&[s as u32]))
                .collect(),
            _ => (0..self.nvars()).map(|i| self.var(i)).collect(),
        }
    }

    /// Minimal primes as variable subsets (monomial rings only).
    pub fn minimal_primes(&self) -> Result<Vec<BTreeSet<usize>>> {
        match self {
            RingDescriptor::Poly { .. } => Ok(vec![BTreeSet::new()]),
            RingDescriptor::MonomialQuotient { relations, .. } => {
                let supports: Vec<Vec<usize>> = relations.iter().map(Monomial::support).collect();
                Ok(minimal_transversals(&supports))
            }
            RingDescriptor::Semigroup { .. } => Ok(vec![BTreeSet::new()]),
        }
    }

    /// Krull dimension.
    pub fn dimension(&self) -> usize {
        match self {
            RingDescriptor::Semigroup { .. } => 1,
            _ => {
                let primes = self.minimal_primes().expect("monomial ring");
                let n = self.nvars();
                primes.iter().map(|p| n - p.len()).max().unwrap_or(0)
            }
        }
    }

    pub fn is_artinian(&self) -> bool {
        !self.is_semigroup() && self.dimension() == 0
    }

    /// The finite monomial k-basis of an Artinian quotient.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        if !self.is_artinian() {
            return Err(Error::NotZeroDimensional(self.dimension()));
        }
        let n = self.nvars();
        let bounds: Vec<u32> = (0..n)
            .map(|i| {
                self.relations()
                    .iter()
                    .filter(|m| m.support() == vec![i])
                    .map(|m| m.0[i])
                    .min()
                    .expect("artinian rings have pure powers")
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        loop {
            let m = Monomial(cur.clone());
            if self.is_standard(&m) {
                out.push(m);
            }
            let mut i = 0;
            loop {
                if i == n {
                    out.sort_by(|a, b| {
                        a.degree().cmp(&b.degree()).then_with(|| b.0.cmp(&a.0))
                    });
                    return Ok(out);
                }
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    /// The same ring with variables renamed in a permuted order:
    /// new variable `j` is old variable `perm[j]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        match self {
            RingDescriptor::Semigroup { .. } => Ok(self.clone()),
            RingDescriptor::Poly { field, vars } | RingDescriptor::MonomialQuotient { field, vars, .. } => {
                let names = perm.iter().map(|&i| vars[i].clone()).collect();
                let rel = self
                    .relations()
                    .iter()
                    .map(|m| Monomial(perm.iter().map(|&i| m.0[i]).collect()))
                    .collect();
                Self::quotient_named(*field, names, rel)
            }
        }
    }
}

fn check_vars(vars: Vec<String>) -> Result<Vec<String>> {
    let mut seen = BTreeSet::new();
    for v in &vars {
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::InvalidInput(format!("bad variable name `{v}`")));
        }
        if !seen.insert(v.clone()) {
            return Err(Error::InvalidInput(format!("duplicate variable `{v}`")));
        }
    }
    Ok(vars)
}

/// Minimal monomial generators, sorted lexicographically descending.
pub fn minimize_monomials(gens: &[Monomial]) -> Vec<Monomial> {
    let mut uniq: Vec<Monomial> = gens.to_vec();
    uniq.sort();
    uniq.dedup();
    let mut out: Vec<Monomial> = uniq
        .iter()
        .filter(|m| !uniq.iter().any(|g| g != *m && g.divides(m)))
        .cloned()
        .collect();
    out.sort_by(|a, b| b.0.cmp(&a.0));
    out
}

/// Minimal sets of variables meeting every support. Each one generates a
/// minimal prime of the monomial ideal with those supports.
pub fn minimal_transversals(supports: &[Vec<usize>]) -> Vec<BTreeSet<usize>> {
    let mut current: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
    for s in supports {
        let mut next = Vec::new();
        for t in &current {
            if s.iter().any(|v| t.contains(v)) {
                next.push(t.clone());
            } else {
                for &v in s {
                    let mut u = t.clone();
                    u.insert(v);
                    next.push(u);
                }
            }
        }
        next.sort();
        next.dedup();
        current = next
            .iter()
            .filter(|a| !next.iter().any(|b| b != *a && b.is_subset(a)))
            .cloned()
            .collect();
    }
    current
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Poly { field, vars } => write!(f, "poly {field} [{}]", vars.join(",")),
            RingDescriptor::MonomialQuotient {
                field,
                vars,
                relations,
            } => {
                let rel: Vec<String> = relations.iter().map(|m| m.render(vars)).collect();
                write!(f, "quot {field} [{}] / ({})", vars.join(","), rel.join(", "))
            }
            RingDescriptor::Semigroup { field, semigroup } => {
                write!(f, "semigroup {field} {semigroup}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn transversals_of_examples() {
        assert_eq!(minimal_transversals(&[vec![0]]), vec![set(&[0])]);
        assert_eq!(minimal_transversals(&[vec![0, 1]]), vec![set(&[0]), set(&[1])]);
        assert_eq!(minimal_transversals(&[vec![0], vec![1]]), vec![set(&[0, 1])]);
        assert_eq!(minimal_transversals(&[]), vec![set(&[])]);
    }

    #[test]
    fn dimension_from_minimal_primes() {
        let f = Field::Rational;
        let r = RingDescriptor::quotient(f, &["x", "y"], vec![Monomial(vec![1, 1])]).unwrap();
        assert_eq!(r.dimension(), 1);
        let a = RingDescriptor::quotient(f, &["x", "y"], vec![Monomial(vec![2, 0]), Monomial(vec![0, 2])]).unwrap();
        assert!(a.is_artinian());
        assert_eq!(a.standard_monomials().unwrap().len(), 4);
        let p = RingDescriptor::poly(f, &["x", "y"]).unwrap();
        assert_eq!(p.dimension(), 2);
        let k = RingDescriptor::poly(f, &[]).unwrap();
        assert!(k.is_artinian());
        assert_eq!(k.standard_monomials().unwrap(), vec![Monomial(vec![])]);
    }

    #[test]
    fn quotient_rejects_unit_relation() {
        assert!(RingDescriptor::quotient(Field::Rational, &["x"], vec![Monomial(vec![0])]).is_err());
    }
}
