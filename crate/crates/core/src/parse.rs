//! Text formats for rings, polynomials, ideals and module elements.
//!
//! Rings: `poly QQ [x,y]`, `quot QQ [x,y] / (x^2, x*y, y^2)`,
//! `semigroup QQ <2,3>`, with `Fp 7` in place of `QQ`. Polynomials use `^`
//! for powers, an optional `*` between factors, integer (or `p/q`)
//! coefficients and parentheses. Over a semigroup ring the variable is `t`.

use crate::algebra::{Field, FreeVec, Monomial, Polynomial, RingDescriptor};
use crate::error::{Error, Result};

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    // offset of this fragment in the text the user typed
    base: usize,
}

impl Cursor {
    fn new(src: &str, base: usize) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            base,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.base + self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.err(format!("expected `{c}`, found `{found}`")),
                None => self.err(format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn mark(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected `{c}`")),
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        if !self.chars.get(self.pos).is_some_and(|c| c.is_alphabetic()) {
            return self.err("expected an identifier");
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn integer<T: std::str::FromStr>(&mut self) -> Result<T> {
        let at = self.mark();
        let d = self.digits()?;
        d.parse().or_else(|_| {
            self.pos = at;
            self.err(format!("number `{d}` out of range"))
        })
    }

    /// Splits a delimited comma-separated list into fragments with offsets.
    fn list(&mut self, open: char, close: char) -> Result<Vec<(String, usize)>> {
        self.expect(open)?;
        let mut items = Vec::new();
        let mut depth = 0usize;
        let mut start = self.pos;
        loop {
            let Some(&c) = self.chars.get(self.pos) else {
                return self.err(format!("unclosed `{open}`"));
            };
            match c {
                '(' | '[' | '<' => depth += 1,
                ')' | ']' | '>' if depth > 0 => depth -= 1,
                _ if c == close && depth == 0 => {
                    let item: String = self.chars[start..self.pos].iter().collect();
                    if !item.trim().is_empty() || !items.is_empty() {
                        items.push((item, self.base + start));
                    }
                    self.pos += 1;
                    return Ok(items);
                }
                ',' if depth == 0 => {
                    items.push((self.chars[start..self.pos].iter().collect(), self.base + start));
                    start = self.pos + 1;
                }
                _ => {}
            }
            self.pos += 1;
        }
    }
}

fn parse_field(c: &mut Cursor) -> Result<Field> {
    let at = c.mark();
    match c.ident()?.as_str() {
        "QQ" => Ok(Field::Rational),
        "Fp" => {
            let at = c.mark();
            let p: u64 = c.integer()?;
            Field::prime(p).or_else(|e| {
                c.pos = at;
                c.err(e.to_string())
            })
        }
        other => {
            c.pos = at;
            c.err(format!("unknown field `{other}`, expected QQ or Fp p"))
        }
    }
}

fn parse_var_list(c: &mut Cursor) -> Result<Vec<String>> {
    let mut names = Vec::new();
    for (item, at) in c.list('[', ']')? {
        let mut ic = Cursor::new(&item, at);
        names.push(ic.ident()?);
        ic.finish()?;
    }
    Ok(names)
}

/// Parses a ring descriptor.
pub fn parse_ring(text: &str) -> Result<RingDescriptor> {
    let mut c = Cursor::new(text, 0);
    let at = c.mark();
    let kind = c.ident()?;
    let ring = match kind.as_str() {
        "poly" => {
            let field = parse_field(&mut c)?;
            let at = c.mark();
            let vars = parse_var_list(&mut c)?;
            RingDescriptor::quotient_named(field, vars, Vec::new()).or_else(|e| {
                c.pos = at;
                c.err(e.to_string())
            })?
        }
        "quot" => {
            let field = parse_field(&mut c)?;
            let vars_at = c.mark();
            let vars = parse_var_list(&mut c)?;
            let ambient = RingDescriptor::quotient_named(field, vars.clone(), Vec::new()).or_else(|e| {
                c.pos = vars_at;
                c.err(e.to_string())
            })?;
            c.expect('/')?;
            let rel_at = c.mark();
            let mut relations = Vec::new();
            for (item, at) in c.list('(', ')')? {
                let p = parse_poly_at(&item, at, &ambient)?;
                match p.as_monomial() {
                    Some(m) => relations.push(m.clone()),
                    None => return Err(Error::NotMonomial(format!("quotient relation `{}`", item.trim()))),
                }
            }
            RingDescriptor::quotient_named(field, vars, relations).or_else(|e| {
                c.pos = rel_at;
                c.err(e.to_string())
            })?
        }
        "semigroup" => {
            let field = parse_field(&mut c)?;
            let gens_at = c.mark();
            let mut gens = Vec::new();
            for (item, at) in c.list('<', '>')? {
                let mut ic = Cursor::new(&item, at);
                gens.push(ic.integer::<u64>()?);
                ic.finish()?;
            }
            RingDescriptor::semigroup(field, &gens).or_else(|e| {
                c.pos = gens_at;
                c.err(e.to_string())
            })?
        }
        other => {
            c.pos = at;
            return c.err(format!("unknown ring kind `{other}`, expected poly, quot or semigroup"));
        }
    };
    c.finish()?;
    Ok(ring)
}

struct PolyParser<'r> {
    c: Cursor,
    ring: &'r RingDescriptor,
    names: Vec<String>,
    // over a semigroup ring, parse in k[t] and check membership at the end
    nvars: usize,
}

impl PolyParser<'_> {
    fn expr(&mut self) -> Result<Polynomial> {
        let f = self.ring.field();
        let mut acc = Polynomial::zero(f, self.nvars);
        let mut first = true;
        loop {
            let neg = if self.c.eat('-') {
                true
            } else {
                if !first && !self.c.eat('+') {
                    return Ok(acc);
                }
                if first {
                    self.c.eat('+');
                }
                false
            };
            let t = self.product()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            first = false;
        }
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            if self.c.eat('*') {
                acc = &acc * &self.power()?;
                continue;
            }
            match self.c.peek() {
                Some(ch) if ch.is_alphanumeric() || ch == '(' => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.c.eat('^') {
            let e: u32 = self.c.integer()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let f = self.ring.field();
        match self.c.peek() {
            Some('(') => {
                self.c.pos += 1;
                let p = self.expr()?;
                self.c.expect(')')?;
                Ok(p)
            }
            Some(ch) if ch.is_ascii_digit() => {
                let mut text = self.c.digits()?;
                if self.c.peek() == Some('/') && self.c.chars.get(self.c.pos + 1).is_some_and(|d| d.is_ascii_digit()) {
                    self.c.pos += 1;
                    text = format!("{text}/{}", self.c.digits()?);
                }
                let at = self.c.pos;
                let s = f.parse_scalar(&text).or_else(|e| {
                    self.c.pos = at;
                    self.c.err(e.to_string())
                })?;
                Ok(Polynomial::constant(f, self.nvars, s))
            }
            Some(ch) if ch.is_alphabetic() => {
                let at = self.c.mark();
                let name = self.c.ident()?;
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(Polynomial::var(f, self.nvars, i)),
                    None => {
                        self.c.pos = at;
                        self.c.skip_ws();
                        self.c.err(format!("unknown variable `{name}`"))
                    }
                }
            }
            Some(ch) => self.c.err(format!("unexpected `{ch}`")),
            None => self.c.err("unexpected end of input"),
        }
    }
}

fn parse_poly_at(text: &str, base: usize, ring: &RingDescriptor) -> Result<Polynomial> {
    let mut p = PolyParser {
        c: Cursor::new(text, base),
        ring,
        names: ring.var_names(),
        nvars: ring.nvars(),
    };
    if p.c.at_end() {
        return p.c.err("empty polynomial");
    }
    let poly = p.expr()?;
    p.c.finish()?;
    if ring.is_semigroup() {
        ring.check_element(&poly).map_err(|e| Error::Parse {
            pos: base,
            message: e.to_string(),
        })?;
    }
    Ok(ring.reduce(&poly))
}

/// Parses a ring element, reduced to normal form.
pub fn parse_poly(text: &str, ring: &RingDescriptor) -> Result<Polynomial> {
    parse_poly_at(text, 0, ring)
}

/// Parses `(f1, f2, ...)`; the parentheses may be omitted.
pub fn parse_ideal(text: &str, ring: &RingDescriptor) -> Result<Vec<Polynomial>> {
    let mut c = Cursor::new(text, 0);
    let items = if c.peek() == Some('(') && bracket_spans_all(text, '(', ')') {
        let items = c.list('(', ')')?;
        c.finish()?;
        items
    } else if c.at_end() {
        Vec::new()
    } else {
        let mut items = Vec::new();
        let mut start = 0;
        let mut depth = 0usize;
        for (i, ch) in text.chars().enumerate() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    items.push((text.chars().skip(start).take(i - start).collect(), start));
                    start = i + 1;
                }
                _ => {}
            }
        }
        items.push((text.chars().skip(start).collect(), start));
        items
    };
    items.iter().map(|(s, at)| parse_poly_at(s, *at, ring)).collect()
}

// whether the opening bracket at the start closes at the very end
fn bracket_spans_all(text: &str, open: char, close: char) -> bool {
    let t = text.trim();
    let mut depth = 0usize;
    for (i, ch) in t.char_indices() {
        if ch == open {
            depth += 1;
        } else if ch == close {
            depth = depth.saturating_sub(1);
            if depth == 0 {
                return i + ch.len_utf8() == t.len();
            }
        }
    }
    false
}

/// Parses `[f1, ..., fr]` as an element of `R^r`.
pub fn parse_vector(text: &str, ring: &RingDescriptor) -> Result<FreeVec> {
    parse_vector_at(text, 0, ring)
}

fn parse_vector_at(text: &str, base: usize, ring: &RingDescriptor) -> Result<FreeVec> {
    let mut c = Cursor::new(text, base);
    let items = c.list('[', ']')?;
    c.finish()?;
    if items.is_empty() {
        return c.err("a vector needs at least one coordinate");
    }
    let coords = items
        .iter()
        .map(|(s, at)| parse_poly_at(s, *at, ring))
        .collect::<Result<Vec<_>>>()?;
    Ok(FreeVec::new(coords))
}

/// Parses `[..]; [..]; ...`, each of rank `rank`. Empty text is the empty
/// list.
pub fn parse_vectors(text: &str, rank: usize, ring: &RingDescriptor) -> Result<Vec<FreeVec>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(';') {
        if !part.trim().is_empty() {
            let v = parse_vector_at(part, offset, ring)?;
            if v.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: v.rank(),
                });
            }
            out.push(v);
        }
        offset += part.chars().count() + 1;
    }
    Ok(out)
}

/// Parses an element of `R^rank`: a bracketed vector, or a bare polynomial
/// when `rank == 1`.
pub fn parse_element(text: &str, rank: usize, ring: &RingDescriptor) -> Result<FreeVec> {
    let v = if text.trim_start().starts_with('[') {
        parse_vector(text, ring)?
    } else {
        FreeVec::new(vec![parse_poly(text, ring)?])
    };
    if v.rank() != rank {
        return Err(Error::RankMismatch {
            expected: rank,
            found: v.rank(),
        });
    }
    Ok(v)
}

/// Monomials written as polynomials, e.g. for exponent lists.
pub fn parse_monomials(text: &str, ring: &RingDescriptor) -> Result<Vec<Monomial>> {
    let gens = parse_ideal(text, ring)?;
    crate::algebra::ops::monomials_of(&gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rings_round_trip() {
        for text in [
            "poly QQ [x,y]",
            "semigroup QQ <3,5>",
            "quot QQ [x] / (x^2)",
            "quot Fp 7 [x,y] / (x^2, x*y, y^2)",
        ] {
            let r = parse_ring(text).unwrap();
            assert_eq!(r.to_string(), text);
            assert_eq!(parse_ring(&r.to_string()).unwrap(), r);
        }
        assert_eq!(parse_ring("semigroup QQ <3,5>").unwrap().semigroup_data().unwrap().generators(), &[3, 5]);
    }

    #[test]
    fn ring_errors_carry_positions() {
        assert!(matches!(parse_ring("poly QQ [x,y"), Err(Error::Parse { .. })));
        assert!(matches!(parse_ring("ring QQ [x]"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_ring("poly RR [x]"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_ring("quot QQ [x,y] / (x + y)"), Err(Error::NotMonomial(_))));
        assert!(matches!(parse_ring("semigroup QQ <2,4>"), Err(Error::Parse { .. })));
        assert!(matches!(parse_ring("poly Fp 6 [x]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_ring("quot QQ [x] / (z)"), Err(Error::Parse { pos: 15, .. })));
    }

    #[test]
    fn polynomials() {
        let r = parse_ring("poly QQ [x,y]").unwrap();
        let p = parse_poly("3x^2y - 2*x*y + 1", &r).unwrap();
        assert_eq!(p.render(&r.var_names()), "3*x^2*y - 2*x*y + 1");
        assert_eq!(parse_poly("(x+y)^2", &r).unwrap(), parse_poly("x^2 + 2 x y + y^2", &r).unwrap());
        assert_eq!(parse_poly("-x", &r).unwrap(), -&r.var(0));
        assert_eq!(parse_poly("1/2 x", &r).unwrap().render(&r.var_names()), "1/2*x");
        assert!(matches!(parse_poly("x + z", &r), Err(Error::Parse { pos: 4, .. })));
        assert!(parse_poly("", &r).is_err());
        assert!(parse_poly("x +", &r).is_err());
    }

    #[test]
    fn quotient_and_semigroup_elements() {
        let q = parse_ring("quot QQ [x] / (x^2)").unwrap();
        assert!(parse_poly("x^3 + x", &q).unwrap() == q.var(0));
        let s = parse_ring("semigroup QQ <2,3>").unwrap();
        assert!(parse_poly("t^5 + t^2", &s).is_ok());
        assert!(parse_poly("t", &s).is_err());
    }

    #[test]
    fn ideals_and_vectors() {
        let r = parse_ring("poly QQ [x,y]").unwrap();
        assert_eq!(parse_ideal("(x^2, y^2)", &r).unwrap().len(), 2);
        assert_eq!(parse_ideal("x^2, y^2", &r).unwrap().len(), 2);
        assert_eq!(parse_ideal("(x+y)*x", &r).unwrap().len(), 1);
        assert!(parse_ideal("()", &r).unwrap().is_empty());
        let v = parse_vector("[x, y^2]", &r).unwrap();
        assert_eq!(v.rank(), 2);
        let vs = parse_vectors("[x, 0]; [0, y]", 2, &r).unwrap();
        assert_eq!(vs.len(), 2);
        assert!(matches!(parse_vectors("[x]", 2, &r), Err(Error::RankMismatch { .. })));
        assert_eq!(parse_element("x*y", 1, &r).unwrap().rank(), 1);
    }
}
