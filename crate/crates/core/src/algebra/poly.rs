use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::{Monomial, MonomialOrder};
use super::scalar::{Field, Scalar};

/// Sparse multivariate polynomial with exact coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector, so equality and
/// hashing see a canonical form. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: Field, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, nvars: usize, c: Scalar) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn term(field: Field, mon: Monomial, c: Scalar) -> Self {
        let nvars = mon.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mon, c);
        }
        Polynomial {
            field,
            nvars,
            terms,
        }
    }

    pub fn monomial(field: Field, mon: Monomial) -> Self {
        Self::term(field, mon, field.one())
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        Self::monomial(field, Monomial::var(nvars, i, 1))
    }

    pub fn from_terms(
        field: Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// The single monomial of a one-term polynomial.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        if self.terms.len() == 1 {
            self.terms.keys().next()
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(self.field.zero());
        }
        match self.as_monomial() {
            Some(m) if m.is_one() => Some(self.terms[m].clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Scalar)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp_monomials(a.0, b.0))
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field, self.nvars);
        }
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_term(&self, mon: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field, self.nvars);
        }
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.mul(mon), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field, self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Drops every term divisible by one of `ideal` (reduction modulo a
    /// monomial ideal).
    pub fn reduce_monomial_ideal(&self, ideal: &[Monomial]) -> Polynomial {
        if ideal.is_empty() {
            return self.clone();
        }
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !ideal.iter().any(|g| g.divides(m)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Places this polynomial's variables at `offset..offset+nvars` of a ring
    /// with `total` variables.
    pub fn embed(&self, total: usize, offset: usize) -> Polynomial {
        Polynomial {
            field: self.field,
            nvars: total,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut v = vec![0; total];
                    v[offset..offset + self.nvars].copy_from_slice(&m.0);
                    (Monomial(v), c.clone())
                })
                .collect(),
        }
    }

    /// Keeps the variables listed in `keep` (in that order), sending every
    /// other variable to zero.
    pub fn restrict_vars(&self, keep: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(self.field, keep.len());
        for (m, c) in &self.terms {
            let killed = (0..self.nvars).any(|i| m.0[i] > 0 && !keep.contains(&i));
            if !killed {
                out.add_term(Monomial(keep.iter().map(|&i| m.0[i]).collect()), c);
            }
        }
        out
    }

    /// Coefficients must be read in a different field (used by parsers).
    pub fn map_field(&self, field: Field) -> Polynomial {
        Polynomial::from_terms(
            field,
            self.nvars,
            self.terms.iter().map(|(m, c)| {
                let q = match c {
                    Scalar::Rational(q) => field.from_rational(q).expect("representable"),
                    Scalar::Modular { value, .. } => field.from_i64(*value as i64),
                };
                (m.clone(), q)
            }),
        )
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let order = MonomialOrder::Lex;
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| order.cmp_monomials(b.0, a.0));
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.render(names);
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-self.field.one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

/// An element of a free module `R^r`, one polynomial per basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeVec {
    coords: Vec<Polynomial>,
}

impl FreeVec {
    pub fn new(coords: Vec<Polynomial>) -> Self {
        FreeVec { coords }
    }

    pub fn zero(field: Field, nvars: usize, rank: usize) -> Self {
        FreeVec {
            coords: vec![Polynomial::zero(field, nvars); rank],
        }
    }

    /// `f * e_pos`.
    pub fn basis_multiple(rank: usize, pos: usize, f: Polynomial) -> Self {
        let mut coords = vec![Polynomial::zero(f.field(), f.nvars()); rank];
        coords[pos] = f;
        FreeVec { coords }
    }

    pub fn unit(field: Field, nvars: usize, rank: usize, pos: usize) -> Self {
        Self::basis_multiple(rank, pos, Polynomial::one(field, nvars))
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Polynomial {
        &self.coords[i]
    }

    pub fn into_coords(self) -> Vec<Polynomial> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Polynomial::is_zero)
    }

    pub fn scale_poly(&self, f: &Polynomial) -> FreeVec {
        FreeVec {
            coords: self.coords.iter().map(|c| c * f).collect(),
        }
    }

    pub fn mul_term(&self, mon: &Monomial, c: &Scalar) -> FreeVec {
        FreeVec {
            coords: self.coords.iter().map(|p| p.mul_term(mon, c)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> FreeVec {
        FreeVec {
            coords: self.coords.iter().map(f).collect(),
        }
    }

    /// Concatenation `(self | other)` in `R^(r+s)`.
    pub fn concat(&self, other: &FreeVec) -> FreeVec {
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        FreeVec { coords }
    }

    pub fn slice(&self, start: usize, end: usize) -> FreeVec {
        FreeVec {
            coords: self.coords[start..end].to_vec(),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.coords.iter().map(|c| c.render(names)).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl<'a> Add<&'a FreeVec> for &'a FreeVec {
    type Output = FreeVec;
    fn add(self, rhs: &'a FreeVec) -> FreeVec {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        FreeVec {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a FreeVec> for &'a FreeVec {
    type Output = FreeVec;
    fn sub(self, rhs: &'a FreeVec) -> FreeVec {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        FreeVec {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &FreeVec {
    type Output = FreeVec;
    fn neg(self) -> FreeVec {
        FreeVec {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> (Polynomial, Polynomial) {
        let f = Field::Rational;
        (Polynomial::var(f, 2, 0), Polynomial::var(f, 2, 1))
    }

    #[test]
    fn cube_of_sum_lands_in_squares() {
        // (x+y)^3 = x^3 + 3x^2y + 3xy^2 + y^3; every term is divisible by x^2 or y^2
        let (x, y) = xy();
        let s = (&x + &y).pow(3);
        assert_eq!(s.len(), 4);
        let squares = [Monomial(vec![2, 0]), Monomial(vec![0, 2])];
        assert!(s.reduce_monomial_ideal(&squares).is_zero());
        assert!(!(&x + &y).pow(2).reduce_monomial_ideal(&squares).is_zero());
    }

    #[test]
    fn render_is_lex_descending() {
        let (x, y) = xy();
        let p = &(&x.pow(2) - &(&x * &y).scale(&Field::Rational.from_i64(3))) + &Polynomial::one(Field::Rational, 2);
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(p.render(&names), "x^2 - 3*x*y + 1");
    }

    #[test]
    fn restrict_sends_other_vars_to_zero() {
        let (x, y) = xy();
        let p = &(&x * &y) + &y.pow(3);
        let r = p.restrict_vars(&[1]);
        assert_eq!(r, Polynomial::var(Field::Rational, 1, 0).pow(3));
    }
}
