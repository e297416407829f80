//! Integrality certificates: explicit equations
//! `y^n + a_1 y^(n-1) + ... + a_n = 0` in the symmetric algebra of a free
//! module, each `a_j` written as an `R`-combination of `j`-fold products of
//! named generators. Verification is pure expansion.

use std::collections::BTreeMap;

use crate::algebra::{FreeVec, Monomial, Polynomial, RingDescriptor};
use crate::error::{Error, Result};

/// The symmetric algebra `R[e_1, ..., e_r]`, flattened into a polynomial ring
/// in `nvars + r` variables. Its degree-one part is `F = R^r`.
#[derive(Clone, Debug)]
pub struct SymAlgebra {
    ring: RingDescriptor,
    rank: usize,
    relations: Vec<Monomial>,
}

impl SymAlgebra {
    pub fn new(ring: &RingDescriptor, rank: usize) -> Self {
        let total = ring.nvars() + rank;
        let relations = ring
            .relations()
            .iter()
            .map(|m| {
                let mut v = m.0.clone();
                v.resize(total, 0);
                Monomial(v)
            })
            .collect();
        SymAlgebra {
            ring: ring.clone(),
            rank,
            relations,
        }
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars() + self.rank
    }

    /// `sum_p v_p e_p`.
    pub fn linear(&self, v: &FreeVec) -> Polynomial {
        let n = self.ring.nvars();
        let total = self.nvars();
        let f = self.ring.field();
        let mut out = Polynomial::zero(f, total);
        for (p, c) in v.coords().iter().enumerate() {
            let e = Monomial::var(total, n + p, 1);
            for (m, s) in c.embed(total, 0).terms() {
                out.add_term(m.mul(&e), s);
            }
        }
        self.reduce(&out)
    }

    /// A ring element placed in e-degree zero.
    pub fn scalar(&self, c: &Polynomial) -> Polynomial {
        self.reduce(&c.embed(self.nvars(), 0))
    }

    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        p.reduce_monomial_ideal(&self.relations)
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.reduce(&(a * b))
    }

    pub fn names(&self) -> Vec<String> {
        let mut names = self.ring.var_names();
        names.extend((1..=self.rank).map(|i| format!("e{i}")));
        names
    }
}

/// One summand `coefficient * g_{f_1} * ... * g_{f_j}` of some `a_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTerm {
    pub coefficient: Polynomial,
    /// Indices into the generator list, sorted, one per factor.
    pub factors: Vec<usize>,
}

/// The proof object for "`element` is integral over the submodule generated by
/// `generators`".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityCertificate {
    pub ring: RingDescriptor,
    pub rank: usize,
    pub element: FreeVec,
    pub generators: Vec<FreeVec>,
    pub degree: usize,
    /// `coefficients[j - 1]` expands `a_j`.
    pub coefficients: Vec<Vec<ProductTerm>>,
}

impl IntegralityCertificate {
    fn fail(msg: impl Into<String>) -> Error {
        Error::Verification(msg.into())
    }

    fn check_shape(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Self::fail("degree must be at least 1"));
        }
        if self.coefficients.len() != self.degree {
            return Err(Self::fail(format!(
                "degree {} but {} coefficient slots",
                self.degree,
                self.coefficients.len()
            )));
        }
        let vecs = std::iter::once(&self.element).chain(&self.generators);
        for v in vecs {
            if v.rank() != self.rank {
                return Err(Self::fail(format!("vector of rank {} in a rank {} certificate", v.rank(), self.rank)));
            }
            for c in v.coords() {
                self.ring.check_element(c).map_err(|e| Self::fail(e.to_string()))?;
            }
        }
        for (j0, terms) in self.coefficients.iter().enumerate() {
            let j = j0 + 1;
            for t in terms {
                if t.factors.len() != j {
                    return Err(Self::fail(format!(
                        "a_{j} uses a product of {} generators",
                        t.factors.len()
                    )));
                }
                if let Some(&bad) = t.factors.iter().find(|&&f| f >= self.generators.len()) {
                    return Err(Self::fail(format!("a_{j} names generator {bad} of {}", self.generators.len())));
                }
                self.ring
                    .check_element(&t.coefficient)
                    .map_err(|e| Self::fail(format!("coefficient in a_{j}: {e}")))?;
            }
        }
        Ok(())
    }

    /// `a_j` expanded in the symmetric algebra.
    pub fn expand_coefficient(&self, sym: &SymAlgebra, j: usize) -> Polynomial {
        let lin: Vec<Polynomial> = self.generators.iter().map(|g| sym.linear(g)).collect();
        let mut acc = Polynomial::zero(self.ring.field(), sym.nvars());
        for t in &self.coefficients[j - 1] {
            let mut prod = sym.scalar(&t.coefficient);
            for &f in &t.factors {
                prod = sym.mul(&prod, &lin[f]);
            }
            acc = &acc + &prod;
        }
        acc
    }

    /// The left side of the equation, fully expanded.
    pub fn expand(&self) -> Result<Polynomial> {
        self.check_shape()?;
        let sym = SymAlgebra::new(&self.ring, self.rank);
        let y = sym.linear(&self.element);
        let n = self.degree;
        let mut powers = vec![Polynomial::one(self.ring.field(), sym.nvars())];
        for i in 1..=n {
            powers.push(sym.mul(&powers[i - 1], &y));
        }
        let mut total = powers[n].clone();
        for j in 1..=n {
            let a = self.expand_coefficient(&sym, j);
            total = &total + &sym.mul(&a, &powers[n - j]);
        }
        Ok(total)
    }

    /// Re-checks the certificate from scratch.
    pub fn verify(&self) -> Result<()> {
        let total = self.expand()?;
        if total.is_zero() {
            Ok(())
        } else {
            Err(Self::fail(format!(
                "equation does not vanish: {} terms remain",
                total.len()
            )))
        }
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_ok()
    }

    /// The highest `j` with a nonzero `a_j` term.
    pub fn used_degree(&self) -> usize {
        self.coefficients
            .iter()
            .rposition(|t| !t.is_empty())
            .map_or(0, |j| j + 1)
    }

    /// Merges duplicate factor lists and drops coefficient terms whose
    /// product vanishes, so that every stored coefficient is load-bearing.
    pub fn normalize(mut self) -> Self {
        let sym = SymAlgebra::new(&self.ring, self.rank);
        let lin: Vec<Polynomial> = self.generators.iter().map(|g| sym.linear(g)).collect();
        for terms in &mut self.coefficients {
            let mut merged: BTreeMap<Vec<usize>, Polynomial> = BTreeMap::new();
            for t in terms.drain(..) {
                let mut f = t.factors;
                f.sort_unstable();
                let slot = merged
                    .entry(f)
                    .or_insert_with(|| Polynomial::zero(t.coefficient.field(), t.coefficient.nvars()));
                *slot = &*slot + &self.ring.reduce(&t.coefficient);
            }
            *terms = merged
                .into_iter()
                .filter_map(|(factors, c)| {
                    let mut prod = Polynomial::one(c.field(), sym.nvars());
                    for &f in &factors {
                        prod = sym.mul(&prod, lin.get(f)?);
                    }
                    let mut coefficient = Polynomial::zero(c.field(), c.nvars());
                    for (m, s) in c.terms() {
                        let single = Polynomial::term(c.field(), m.clone(), s.clone());
                        if !sym.mul(&sym.scalar(&single), &prod).is_zero() {
                            coefficient.add_term(m.clone(), s);
                        }
                    }
                    (!coefficient.is_zero()).then_some(ProductTerm { coefficient, factors })
                })
                .collect();
        }
        self
    }

    /// Human-readable equation, e.g. `y^2 + (-1)*g0*g1 = 0`.
    pub fn equation(&self) -> String {
        let names = self.ring.var_names();
        let mut parts = vec![if self.degree == 1 { "y".to_string() } else { format!("y^{}", self.degree) }];
        for (j0, terms) in self.coefficients.iter().enumerate() {
            let j = j0 + 1;
            if terms.is_empty() {
                continue;
            }
            let summands: Vec<String> = terms
                .iter()
                .map(|t| {
                    let g: Vec<String> = t.factors.iter().map(|f| format!("g{f}")).collect();
                    format!("({})*{}", t.coefficient.render(&names), g.join("*"))
                })
                .collect();
            let ypow = match self.degree - j {
                0 => String::new(),
                1 => "*y".to_string(),
                k => format!("*y^{k}"),
            };
            parts.push(format!("[{}]{ypow}", summands.join(" + ")));
        }
        format!("{} = 0", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn xy_squares() -> IntegralityCertificate {
        let r = RingDescriptor::poly(Field::Rational, &["x", "y"]).unwrap();
        let f = r.field();
        let wrap = |p: Polynomial| FreeVec::new(vec![p]);
        IntegralityCertificate {
            ring: r.clone(),
            rank: 1,
            element: wrap(r.monomial(&[1, 1])),
            generators: vec![wrap(r.monomial(&[2, 0])), wrap(r.monomial(&[0, 2]))],
            degree: 2,
            coefficients: vec![
                vec![],
                vec![ProductTerm {
                    coefficient: Polynomial::constant(f, 2, f.from_i64(-1)),
                    factors: vec![0, 1],
                }],
            ],
        }
    }

    #[test]
    fn xy_over_squares_verifies() {
        let c = xy_squares();
        c.verify().unwrap();
        assert_eq!(c.used_degree(), 2);
    }

    #[test]
    fn wrong_product_length_is_rejected() {
        let mut c = xy_squares();
        c.coefficients[1][0].factors = vec![0];
        assert!(matches!(c.verify(), Err(Error::Verification(_))));
    }

    #[test]
    fn tampered_coefficient_fails() {
        let mut c = xy_squares();
        let t = &mut c.coefficients[1][0];
        let (m, s) = t.coefficient.terms().next().map(|(m, s)| (m.clone(), s.bumped())).unwrap();
        t.coefficient = Polynomial::term(Field::Rational, m, s);
        assert!(c.verify().is_err());
    }

    #[test]
    fn semigroup_coefficients_must_live_in_the_semigroup() {
        let r = RingDescriptor::semigroup(Field::Rational, &[2, 3]).unwrap();
        let f = r.field();
        // t^3 = t * t^2 holds in k[t] but t is not in k[<2,3>]
        let c = IntegralityCertificate {
            ring: r.clone(),
            rank: 1,
            element: FreeVec::new(vec![r.monomial(&[3])]),
            generators: vec![FreeVec::new(vec![r.monomial(&[2])])],
            degree: 1,
            coefficients: vec![vec![ProductTerm {
                coefficient: Polynomial::term(f, Monomial(vec![1]), f.from_i64(-1)),
                factors: vec![0],
            }]],
        };
        assert!(c.verify().is_err());
    }
}
