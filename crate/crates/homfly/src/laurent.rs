//! Sparse Laurent polynomials over arbitrary-precision integers.
//!
//! Values are immutable after construction. Terms are kept in a `BTreeMap`
//! keyed by exponent vectors, so iteration order (ascending lex) is
//! deterministic; the *canonical leading term* used for sign normalization
//! and display is the lex-greatest exponent vector.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;

/// A signed monomial unit `±x1^e1 … xn^en`.
///
/// Over integer coefficients the only invertible scalars are `±1`, so every
/// unit of the Laurent ring has this shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub sign: i8,
    pub exponents: Vec<i64>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { sign: 1, exponents: vec![0; nvars] }
    }

    pub fn is_one(&self) -> bool {
        self.sign == 1 && self.exponents.iter().all(|&e| e == 0)
    }

    pub fn inverse(&self) -> Self {
        Monomial { sign: self.sign, exponents: self.exponents.iter().map(|&e| -e).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.exponents.len(),
            other.exponents.len(),
            "monomial arity mismatch"
        );
        Monomial {
            sign: self.sign * other.sign,
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Sparse Laurent polynomial with named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(vars: &[&str]) -> Self {
        LaurentPoly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &[&str]) -> Self {
        Self::constant(vars, BigInt::one())
    }

    pub fn constant(vars: &[&str], c: BigInt) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    /// Build from a list of `(exponent vector, coefficient)` pairs.
    pub fn from_terms(vars: &[&str], terms: &[(Vec<i64>, BigInt)]) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent vector length mismatch");
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    /// Single term `c * vars^exps`.
    pub fn term(vars: &[&str], exps: Vec<i64>, c: BigInt) -> Self {
        Self::from_terms(vars, &[(exps, c)])
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.iter().all(|&k| k == 0) && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lex order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[i64]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, exps: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<(), Error> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch {
                left: self.vars.join(","),
                right: other.vars.join(","),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_vars(other)?;
        let mut out = Self::zero_like(self);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1
                    .iter()
                    .zip(e2)
                    .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                    .collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero_like(self);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Multiply by a signed monomial unit.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let mut out = Self::zero_like(self);
        for (e, c) in &self.terms {
            let exps: Vec<i64> = e.iter().zip(&m.exponents).map(|(a, b)| a + b).collect();
            let coeff = if m.sign < 0 { -c } else { c.clone() };
            out.terms.insert(exps, coeff);
        }
        out
    }

    fn zero_like(p: &Self) -> Self {
        LaurentPoly { vars: p.vars.clone(), terms: BTreeMap::new() }
    }

    /// Map each source variable to a signed monomial over `target_vars`.
    ///
    /// Images must be units (sign ±1 times a single monomial), so the result
    /// stays a Laurent polynomial.
    pub fn substitute_monomials(
        &self,
        target_vars: &[&str],
        images: &[Monomial],
    ) -> Result<Self, Error> {
        if images.len() != self.vars.len() {
            return Err(Error::VariableMismatch {
                left: self.vars.join(","),
                right: format!("{} images", images.len()),
            });
        }
        let ntarget = target_vars.len();
        for im in images {
            if im.sign != 1 && im.sign != -1 {
                return Err(Error::NotAUnit);
            }
            if im.exponents.len() != ntarget {
                return Err(Error::VariableMismatch {
                    left: format!("{ntarget} target variables"),
                    right: format!("image with {} exponents", im.exponents.len()),
                });
            }
        }
        let mut out = Self::zero(target_vars);
        for (e, c) in &self.terms {
            let mut exps = vec![0i64; ntarget];
            let mut sign = 1i8;
            for (k, &ek) in e.iter().enumerate() {
                let im = &images[k];
                if im.sign < 0 && ek.rem_euclid(2) == 1 {
                    sign = -sign;
                }
                for (j, &ij) in im.exponents.iter().enumerate() {
                    exps[j] += ij
                        .checked_mul(ek)
                        .expect("exponent overflow in substitution");
                }
            }
            let coeff = if sign < 0 { -c } else { c.clone() };
            out.add_term(exps, coeff);
        }
        Ok(out)
    }

    /// Lex-greatest exponent vector (the canonical leading term).
    pub fn leading(&self) -> Option<(&Vec<i64>, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Factor out the signed-monomial unit: returns `(f0, u)` with
    /// `f = u * f0`, `f0` an ordinary polynomial not divisible by any
    /// variable, and the leading coefficient of `f0` positive.
    pub fn unit_normalize(&self) -> Result<(Self, Monomial), Error> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let n = self.vars.len();
        let mut mins = vec![i64::MAX; n];
        for e in self.terms.keys() {
            for (k, &ek) in e.iter().enumerate() {
                mins[k] = mins[k].min(ek);
            }
        }
        let shift = Monomial { sign: 1, exponents: mins.iter().map(|&m| -m).collect() };
        let mut f0 = self.mul_monomial(&shift);
        let mut unit = Monomial { sign: 1, exponents: mins };
        let lead_neg = f0.leading().map(|(_, c)| c.is_negative()).unwrap_or(false);
        if lead_neg {
            f0 = f0.neg();
            unit.sign = -1;
        }
        Ok((f0, unit))
    }

    /// Exact division in the Laurent ring: `Some(q)` with `f = q * g`, or
    /// `None` when no such `q` exists.
    pub fn divide_exact(&self, g: &Self) -> Result<Option<Self>, Error> {
        self.check_vars(g)?;
        if g.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(Some(Self::zero_like(self)));
        }
        let (f0, uf) = self.unit_normalize()?;
        let (g0, ug) = g.unit_normalize()?;
        let q0 = match poly_divide_exact(&f0, &g0) {
            Some(q) => q,
            None => return Ok(None),
        };
        // restore units: f = uf*f0 = uf*(q0*g0) = (uf/ug)*q0 * g
        let adj = Monomial {
            sign: uf.sign * ug.sign,
            exponents: uf
                .exponents
                .iter()
                .zip(&ug.exponents)
                .map(|(a, b)| a - b)
                .collect(),
        };
        Ok(Some(q0.mul_monomial(&adj)))
    }

    pub fn is_homogeneous_of_degree(&self, d: i64) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<i64>() == d)
    }

    /// Exact evaluation at a rational point; errors at a pole.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational, Error> {
        if point.len() != self.vars.len() {
            return Err(Error::VariableMismatch {
                left: self.vars.join(","),
                right: format!("{} coordinates", point.len()),
            });
        }
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut v = BigRational::from(c.clone());
            for (k, &ek) in e.iter().enumerate() {
                if ek == 0 {
                    continue;
                }
                if point[k].is_zero() {
                    if ek < 0 {
                        return Err(Error::PoleAtEvaluation { var: self.vars[k].clone() });
                    }
                    v = BigRational::zero();
                    break;
                }
                let p = pow_rational(&point[k], ek);
                v *= p;
            }
            total += v;
        }
        Ok(total)
    }

    /// Parse from the term grammar: signed integer coefficients, variable
    /// names from this polynomial's list, optional `^` integer exponents,
    /// optional `*`, whitespace ignored.
    pub fn parse(vars: &[&str], input: &str) -> Result<Self, Error> {
        Parser { vars, input: input.as_bytes(), pos: 0 }.parse()
    }
}

fn pow_rational(b: &BigRational, e: i64) -> BigRational {
    let mut r = BigRational::one();
    let mut base = if e < 0 { b.recip() } else { b.clone() };
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            r *= &base;
        }
        let sq = &base * &base;
        base = sq;
        k >>= 1;
    }
    r
}

/// Exact multivariate division of ordinary polynomials (no negative
/// exponents) by lex leading-term reduction. Correct for exact quotients
/// because lex order is multiplicative.
fn poly_divide_exact(f: &LaurentPoly, g: &LaurentPoly) -> Option<LaurentPoly> {
    let (glead, gc) = g.leading().expect("nonzero divisor");
    let glead = glead.clone();
    let gc = gc.clone();
    let mut rem = f.clone();
    let mut q = LaurentPoly::zero_like(f);
    while !rem.is_zero() {
        let (rlead, rc) = rem.leading().unwrap();
        let mono: Vec<i64> = rlead.iter().zip(&glead).map(|(a, b)| a - b).collect();
        if mono.iter().any(|&m| m < 0) {
            return None;
        }
        let (co, r) = num_integer::div_rem(rc.clone(), gc.clone());
        if !r.is_zero() {
            return None;
        }
        let t = LaurentPoly::term(
            &q.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            mono,
            co,
        );
        rem = rem.sub(&t.mul(g).unwrap()).unwrap();
        q = q.add(&t).unwrap();
    }
    Some(q)
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Parser<'a> {
    vars: &'a [&'a str],
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse { position: self.pos, message: msg.to_string() }
    }

    fn parse(mut self) -> Result<LaurentPoly, Error> {
        let mut poly = LaurentPoly::zero(self.vars);
        let mut first = true;
        loop {
            let Some(c) = self.peek() else {
                if first {
                    return Err(self.error("empty input"));
                }
                break;
            };
            let sign = match c {
                b'+' => {
                    self.pos += 1;
                    1
                }
                b'-' => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => return Err(self.error("expected '+' or '-' between terms")),
            };
            let term = self.parse_term(sign)?;
            poly = poly.add(&term).unwrap();
            first = false;
        }
        Ok(poly)
    }

    fn parse_term(&mut self, sign: i32) -> Result<LaurentPoly, Error> {
        let mut coeff: BigInt = BigInt::from(sign);
        let mut exps = vec![0i64; self.vars.len()];
        let mut saw_factor = false;
        loop {
            let Some(c) = self.peek() else { break };
            match c {
                b'0'..=b'9' => {
                    let n = self.parse_uint()?;
                    coeff *= n;
                    saw_factor = true;
                }
                b'*' => {
                    if !saw_factor {
                        return Err(self.error("unexpected '*'"));
                    }
                    self.pos += 1;
                }
                b'+' | b'-' => break,
                _ if c.is_ascii_alphabetic() => {
                    let vi = self.parse_varname()?;
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.parse_int()?
                    } else {
                        1
                    };
                    exps[vi] = exps[vi]
                        .checked_add(e)
                        .ok_or_else(|| self.error("exponent overflow"))?;
                    saw_factor = true;
                }
                _ => return Err(self.error("unexpected character")),
            }
        }
        if !saw_factor {
            return Err(self.error("expected a term"));
        }
        Ok(LaurentPoly::term(self.vars, exps, coeff))
    }

    fn parse_uint(&mut self) -> Result<BigInt, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        let s = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        s.parse::<BigInt>().map_err(|_| self.error("bad integer"))
    }

    fn parse_int(&mut self) -> Result<i64, Error> {
        self.skip_ws();
        let mut sign = 1i64;
        if let Some(c) = self.peek() {
            if c == b'-' {
                sign = -1;
                self.pos += 1;
            } else if c == b'+' {
                self.pos += 1;
            }
        }
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected exponent digits"));
        }
        let s = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        s.parse::<i64>()
            .map(|v| sign * v)
            .map_err(|_| self.error("exponent out of range"))
    }

    fn parse_varname(&mut self) -> Result<usize, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len()
            && (self.input[self.pos].is_ascii_alphanumeric() && !self.input[self.pos].is_ascii_digit()
                || self.input[self.pos] == b'_')
        {
            self.pos += 1;
        }
        // allow trailing digits in names like "x0" only if a declared
        // variable matches greedily
        let mut end = self.pos;
        while end < self.input.len() && self.input[end].is_ascii_digit() {
            end += 1;
        }
        let with_digits = std::str::from_utf8(&self.input[start..end]).unwrap();
        let bare = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        if let Some(i) = self.vars.iter().position(|v| *v == with_digits) {
            self.pos = end;
            return Ok(i);
        }
        if let Some(i) = self.vars.iter().position(|v| *v == bare) {
            return Ok(i);
        }
        self.pos = start;
        Err(self.error(&format!("unknown variable '{bare}'")))
    }
}

// ---------------------------------------------------------------------------
// Display
// ---------------------------------------------------------------------------

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // canonical order: lex-descending exponent vectors
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mut atoms: Vec<String> = Vec::new();
            for (k, &ek) in e.iter().enumerate() {
                if ek == 0 {
                    continue;
                }
                if ek == 1 {
                    atoms.push(self.vars[k].clone());
                } else {
                    atoms.push(format!("{}^{}", self.vars[k], ek));
                }
            }
            if atoms.is_empty() || !mag.is_one() {
                atoms.insert(0, mag.to_string());
            }
            write!(f, "{}", atoms.join("*"))?;
        }
        Ok(())
    }
}
