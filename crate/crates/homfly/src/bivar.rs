//! Sparse bivariate polynomials over the integers, with the variable
//! substitution used for Kronecker factorization (pack y into high powers
//! of x, factor the univariate image, unpack candidate factors).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::laurent::LaurentPoly;
use crate::unipoly::UniPoly;

/// Ordinary polynomial in two variables x, y with integer coefficients.
/// Terms keyed by (x-exponent, y-exponent); stored coefficients nonzero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BivarPoly {
    pub terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert((0, 0), c);
        }
        BivarPoly { terms: t }
    }

    pub fn from_terms(terms: &[((u32, u32), i64)]) -> Self {
        let mut p = Self::zero();
        for &(k, c) in terms {
            p.add_term(k, BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, key: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BivarPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &other.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BivarPoly {
            terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect(),
        }
    }

    /// Positive gcd of coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num_integer::gcd(g, c.clone());
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Leading term under the (x-exponent, y-exponent) lexicographic order.
    pub fn leading_coeff(&self) -> &BigInt {
        self.terms
            .iter()
            .next_back()
            .map(|(_, c)| c)
            .expect("leading coefficient of zero polynomial")
    }

    /// `(sign, content, primitive)` with
    /// `self = sign * content * primitive` and `primitive` having positive
    /// leading coefficient and content 1.
    pub fn primitive_parts(&self) -> (i8, BigInt, BivarPoly) {
        if self.is_zero() {
            return (1, BigInt::zero(), Self::zero());
        }
        let c = self.content();
        let mut p = BivarPoly {
            terms: self.terms.iter().map(|(k, a)| (*k, a / &c)).collect(),
        };
        let mut sign = 1i8;
        if p.leading_coeff().is_negative() {
            p = p.neg();
            sign = -1;
        }
        (sign, c, p)
    }

    /// Smallest x- and y-exponents appearing (the monomial content).
    pub fn min_exponents(&self) -> (u32, u32) {
        let mut mi = u32::MAX;
        let mut mj = u32::MAX;
        for &(i, j) in self.terms.keys() {
            mi = mi.min(i);
            mj = mj.min(j);
        }
        if self.is_zero() {
            (0, 0)
        } else {
            (mi, mj)
        }
    }

    /// Divide out x^a y^b (requires every term divisible).
    pub fn shift_down(&self, a: u32, b: u32) -> Self {
        BivarPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| {
                    assert!(i >= a && j >= b, "monomial shift must divide all terms");
                    ((i - a, j - b), c.clone())
                })
                .collect(),
        }
    }

    /// Exact division over the integers; `None` if not exactly divisible.
    pub fn divide_exact(&self, g: &Self) -> Option<Self> {
        assert!(!g.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let q = self
            .to_laurent()
            .divide_exact(&g.to_laurent())
            .ok()
            .flatten()?;
        Self::from_laurent(&q)
    }

    /// View as a Laurent polynomial in variables x, y.
    pub fn to_laurent(&self) -> LaurentPoly {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (&(i, j), c) in &self.terms {
            terms.push((vec![i as i64, j as i64], c.clone()));
        }
        LaurentPoly::from_terms(&["x", "y"], &terms)
    }

    /// Back from a Laurent polynomial; `None` if any exponent is negative
    /// or the variables are not exactly x, y.
    pub fn from_laurent(f: &LaurentPoly) -> Option<Self> {
        if f.variables() != ["x", "y"] {
            return None;
        }
        let mut out = Self::zero();
        for (exps, c) in f.terms() {
            if exps.iter().any(|&e| e < 0) {
                return None;
            }
            out.add_term((exps[0] as u32, exps[1] as u32), c.clone());
        }
        Some(out)
    }

    /// Substitute y -> x^d: the Kronecker packing. Injective on terms when
    /// d > deg_x(self).
    pub fn pack(&self, d: u32) -> UniPoly {
        let n = self.deg_x() + d * self.deg_y();
        let mut coeffs = vec![BigInt::zero(); n as usize + 1];
        for (&(i, j), c) in &self.terms {
            coeffs[(i + d * j) as usize] += c;
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Inverse of `pack` on polynomials all of whose x-degrees are < d.
    pub fn unpack(u: &UniPoly, d: u32) -> Self {
        let mut out = Self::zero();
        for (e, c) in u.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = e as u32;
            out.add_term((e % d, e / d), c.clone());
        }
        out
    }

    /// Evaluate at integer points.
    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * x.pow(i) * y.pow(j);
        }
        acc
    }

    /// The univariate polynomial `self(x, at)` for an integer `at`.
    pub fn eval_y(&self, at: &BigInt) -> UniPoly {
        let mut coeffs = vec![BigInt::zero(); self.deg_x() as usize + 1];
        for (&(i, j), c) in &self.terms {
            coeffs[i as usize] += c * at.pow(j);
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut printed = false;
            if !mag.is_one() || (i == 0 && j == 0) {
                write!(f, "{mag}")?;
                printed = true;
            }
            for (name, e) in [("x", i), ("y", j)] {
                if e == 0 {
                    continue;
                }
                if printed {
                    write!(f, "*")?;
                }
                if e == 1 {
                    write!(f, "{name}")?;
                } else {
                    write!(f, "{name}^{e}")?;
                }
                printed = true;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let f = BivarPoly::from_terms(&[((1, 0), 1), ((0, 1), 1)]); // x + y
        let g = f.mul(&f); // x^2 + 2xy + y^2
        assert_eq!(
            g,
            BivarPoly::from_terms(&[((2, 0), 1), ((1, 1), 2), ((0, 2), 1)])
        );
        assert_eq!(g.to_string(), "x^2 + 2*x*y + y^2");
        assert_eq!(g.deg_x(), 2);
        assert_eq!(g.deg_y(), 2);
        assert_eq!(g.divide_exact(&f).unwrap(), f);
        let h = BivarPoly::from_terms(&[((1, 0), 1), ((0, 0), 1)]);
        assert!(g.divide_exact(&h).is_none());
    }

    #[test]
    fn pack_unpack_round_trip() {
        let f = BivarPoly::from_terms(&[((2, 0), 3), ((1, 1), -2), ((0, 2), 5), ((0, 0), 7)]);
        let d = f.deg_x() + 1;
        let u = f.pack(d);
        assert_eq!(BivarPoly::unpack(&u, d), f);
        // packing is multiplicative
        let g = BivarPoly::from_terms(&[((1, 0), 1), ((0, 1), 1)]);
        let d2 = f.mul(&g).deg_x() + 1;
        assert_eq!(
            f.mul(&g).pack(d2).coeffs,
            f.pack(d2).mul(&g.pack(d2)).coeffs
        );
    }

    #[test]
    fn eval_and_sections() {
        let f = BivarPoly::from_terms(&[((2, 1), 1), ((0, 0), -4)]); // x^2 y - 4
        assert_eq!(f.eval(&BigInt::from(3), &BigInt::from(2)), BigInt::from(14));
        assert_eq!(f.eval_y(&BigInt::one()), UniPoly::from_i64(&[-4, 0, 1]));
        assert_eq!(f.eval_y(&BigInt::zero()), UniPoly::from_i64(&[-4]));
    }

    #[test]
    fn primitive_and_monomial_content() {
        let f = BivarPoly::from_terms(&[((3, 1), -6), ((1, 2), -9)]);
        let (sign, content, p) = f.primitive_parts();
        assert_eq!(sign, -1);
        assert_eq!(content, BigInt::from(3));
        assert_eq!(p, BivarPoly::from_terms(&[((3, 1), 2), ((1, 2), 3)]));
        assert_eq!(p.min_exponents(), (1, 1));
        assert_eq!(
            p.shift_down(1, 1),
            BivarPoly::from_terms(&[((2, 0), 2), ((0, 1), 3)])
        );
    }
}
