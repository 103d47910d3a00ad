//! Dense univariate polynomials over arbitrary-precision integers:
//! exact arithmetic, modular GCD, Yun square-free decomposition, and the
//! square test over the complex numbers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::Error;
use crate::modp::{self, GfPoly};

/// Dense integer polynomial, coefficients lowest degree first.
/// Invariant: the last stored coefficient is nonzero (zero = empty vec).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UniPoly {
    pub coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = UniPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn x() -> Self {
        UniPoly { coeffs: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; zero polynomial returns `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn lc(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    /// Exact division over the integers; `None` when not exactly divisible.
    pub fn divide_exact(&self, g: &Self) -> Option<Self> {
        assert!(!g.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.deg() < g.deg() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dg = g.deg();
        let n = self.deg();
        let mut q = vec![BigInt::zero(); n - dg + 1];
        for k in (0..=n - dg).rev() {
            let lead = std::mem::take(&mut rem[k + dg]);
            if lead.is_zero() {
                continue;
            }
            let (c, r) = num_integer::div_rem(lead, g.lc().clone());
            if !r.is_zero() {
                return None;
            }
            for i in 0..dg {
                rem[k + i] -= &c * &g.coeffs[i];
            }
            q[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(q))
    }

    /// Positive gcd of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::gcd(g, c.clone());
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Returns `(sign, content, primitive)` with
    /// `self = sign * content * primitive`, `content > 0`, `lc(primitive) > 0`.
    pub fn primitive_parts(&self) -> (i8, BigInt, UniPoly) {
        if self.is_zero() {
            return (1, BigInt::zero(), Self::zero());
        }
        let c = self.content();
        let mut p = UniPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        };
        let mut sign = 1i8;
        if p.lc().is_negative() {
            p = p.neg();
            sign = -1;
        }
        (sign, c, p)
    }

    pub fn primitive_part(&self) -> UniPoly {
        self.primitive_parts().2
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Composition `self(c * x)`.
    pub fn compose_scale_x(&self, c: &BigInt) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut pw = BigInt::one();
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        Self::from_coeffs(out)
    }

    /// Composition `self(1 - x)`.
    pub fn compose_one_minus_x(&self) -> Self {
        // binomial expansion of (1-x)^i accumulated per coefficient
        let mut out = Self::zero();
        let one_minus = Self::from_i64(&[1, -1]);
        let mut pw = Self::one();
        for a in &self.coeffs {
            out = out.add(&pw.scale(a));
            pw = pw.mul(&one_minus);
        }
        out
    }

    pub fn reduce_mod(&self, p: u64) -> GfPoly {
        modp::reduce(self, p)
    }

    /// Primitive gcd over the integers (modular algorithm with CRT and a
    /// final division check); result has positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_parts_signed_content();
        }
        if other.is_zero() {
            return self.primitive_parts_signed_content();
        }
        let (_, ca, a) = self.primitive_parts();
        let (_, cb, b) = other.primitive_parts();
        let content_gcd = num_integer::gcd(ca, cb);
        let pg = primitive_gcd(&a, &b);
        pg.scale(&content_gcd)
    }

    /// `content * primitive` with positive leading coefficient (gcd helper).
    fn primitive_parts_signed_content(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (_, c, p) = self.primitive_parts();
        p.scale(&c)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
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
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{i}")?;
                }
            }
        }
        Ok(())
    }
}

/// GCD of two primitive polynomials via reduction modulo word-size primes,
/// CRT reconstruction, and an exact division check.
fn primitive_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let gamma = num_integer::gcd(a.lc().clone(), b.lc().clone());
    let mut prime = 1u64 << 31;
    let mut best_deg = usize::MAX;
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    loop {
        prime = modp::prev_prime(prime);
        let p = prime;
        if (a.lc() % BigInt::from(p)).is_zero() || (b.lc() % BigInt::from(p)).is_zero() {
            continue;
        }
        let ap = a.reduce_mod(p);
        let bp = b.reduce_mod(p);
        let mut gp = modp::gcd(&ap, &bp, p);
        let d = gp.deg();
        if d == 0 {
            return UniPoly::one();
        }
        if d > best_deg {
            continue; // unlucky prime
        }
        // scale so the leading coefficient is gamma mod p
        let gm = modp::to_mod(&gamma, p);
        gp = modp::scale(&gp, modp::mul(gm, modp::inv(*gp.coeffs.last().unwrap(), p), p), p);
        if d < best_deg {
            best_deg = d;
            modulus = BigInt::from(p);
            acc = gp.coeffs.iter().map(|&c| modp::symmetric(c, p)).collect();
        } else {
            // CRT combine with existing accumulation
            let pb = BigInt::from(p);
            let new_modulus = &modulus * &pb;
            for (i, slot) in acc.iter_mut().enumerate() {
                let cp = if i < gp.coeffs.len() { gp.coeffs[i] } else { 0 };
                *slot = crt_pair(slot, &modulus, cp, p, &new_modulus);
            }
            modulus = new_modulus;
        }
        // attempt to finish: primitive part of the accumulated candidate
        let cand = UniPoly::from_coeffs(acc.clone()).primitive_part();
        if !cand.is_zero()
            && a.divide_exact(&cand).is_some()
            && b.divide_exact(&cand).is_some()
        {
            return cand;
        }
    }
}

/// Combine `x ≡ r1 (mod m1)` and `x ≡ r2 (mod p)` into the symmetric
/// representative modulo `m1*p`.
fn crt_pair(r1: &BigInt, m1: &BigInt, r2: u64, p: u64, new_modulus: &BigInt) -> BigInt {
    let m1_mod_p = modp::to_mod(m1, p);
    let r1_mod_p = modp::to_mod(r1, p);
    let diff = modp::sub(r2, r1_mod_p, p);
    let k = modp::mul(diff, modp::inv(m1_mod_p, p), p);
    let mut x = r1 + m1 * BigInt::from(k);
    // symmetric representative
    let half = new_modulus / 2;
    if x > half {
        x -= new_modulus;
    } else if x < -&half {
        x += new_modulus;
    }
    x
}

/// Yun square-free decomposition of a nonzero polynomial:
/// `f = sign * content * prod_i p_i^i` with the `p_i` primitive, square-free,
/// pairwise coprime, positive leading coefficients. Returns
/// `(sign, content, [(p_i, i)])` listing only nonconstant parts.
pub fn squarefree_decomposition(
    f: &UniPoly,
) -> Result<(i8, BigInt, Vec<(UniPoly, u32)>), Error> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (sign, content, p) = f.primitive_parts();
    if p.is_constant() {
        return Ok((sign, content, Vec::new()));
    }
    let deriv = p.derivative();
    let g = p.gcd(&deriv);
    let mut parts = Vec::new();
    if g.is_constant() {
        parts.push((p, 1));
        return Ok((sign, content, parts));
    }
    let mut c = p.divide_exact(&g).expect("gcd divides");
    let mut d = deriv.divide_exact(&g).expect("gcd divides derivative").sub(&c.derivative());
    let mut i = 1u32;
    while !c.is_constant() {
        let pi = c.gcd(&d);
        if !pi.is_constant() {
            parts.push((pi.clone(), i));
        }
        c = c.divide_exact(&pi).expect("part divides");
        d = d.divide_exact(&pi).expect("part divides").sub(&c.derivative());
        i += 1;
    }
    Ok((sign, content, parts))
}

/// Is `f` the square of a polynomial over the complex numbers?
/// True iff every complex root has even multiplicity; constants (including
/// negative ones and zero) are always squares over C.
pub fn is_square_over_c(f: &UniPoly) -> bool {
    if f.is_zero() || f.is_constant() {
        return true;
    }
    let (_, _, parts) = squarefree_decomposition(f).expect("nonzero");
    parts.iter().all(|(_, m)| m % 2 == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_basics() {
        let f = UniPoly::from_i64(&[1, 2, 1]); // 1 + 2x + x^2
        let g = UniPoly::from_i64(&[1, 1]);
        assert_eq!(g.mul(&g), f);
        assert_eq!(f.divide_exact(&g).unwrap(), g);
        assert_eq!(f.sub(&f), UniPoly::zero());
        assert_eq!(f.derivative(), UniPoly::from_i64(&[2, 2]));
    }

    #[test]
    fn division_rejects_inexact() {
        let f = UniPoly::from_i64(&[1, 0, 1]); // x^2+1
        let g = UniPoly::from_i64(&[1, 1]);
        assert!(f.divide_exact(&g).is_none());
        let h = UniPoly::from_i64(&[2, 2]); // 2x+2 does not divide x+1 over Z
        assert!(g.divide_exact(&h).is_none());
    }

    #[test]
    fn gcd_basics() {
        let f = UniPoly::from_i64(&[-1, 0, 1]); // x^2-1
        let g = UniPoly::from_i64(&[1, 1]); // x+1
        assert_eq!(f.gcd(&g), g);
        let a = UniPoly::from_i64(&[1, 2, 1]).mul(&UniPoly::from_i64(&[-2, 1]));
        let b = UniPoly::from_i64(&[1, 1]).mul(&UniPoly::from_i64(&[5, 1]));
        assert_eq!(a.gcd(&b), UniPoly::from_i64(&[1, 1]));
        // coprime
        let c = UniPoly::from_i64(&[1, 0, 1]);
        let d = UniPoly::from_i64(&[3, 1]);
        assert_eq!(c.gcd(&d), UniPoly::one());
        // content handling
        let e = UniPoly::from_i64(&[6, 6]);
        let h = UniPoly::from_i64(&[4, 4]);
        assert_eq!(e.gcd(&h), UniPoly::from_i64(&[2, 2]));
    }

    #[test]
    fn squarefree_example_from_contract() {
        // (x+1)^2 (x-2) -> [(x+1, 2), (x-2, 1)]
        let f = UniPoly::from_i64(&[1, 1])
            .mul(&UniPoly::from_i64(&[1, 1]))
            .mul(&UniPoly::from_i64(&[-2, 1]));
        let (sign, content, parts) = squarefree_decomposition(&f).unwrap();
        assert_eq!((sign, content), (1, BigInt::one()));
        let mut sorted = parts.clone();
        sorted.sort_by_key(|(_, m)| *m);
        assert_eq!(
            sorted,
            vec![
                (UniPoly::from_i64(&[-2, 1]), 1),
                (UniPoly::from_i64(&[1, 1]), 2),
            ]
        );
    }

    #[test]
    fn squarefree_already_squarefree() {
        let f = UniPoly::from_i64(&[1, 1, 1]); // x^2+x+1
        let (_, _, parts) = squarefree_decomposition(&f).unwrap();
        assert_eq!(parts, vec![(f, 1)]);
    }

    #[test]
    fn squarefree_quartic_cycle_tutte() {
        // T_{C4}(x,1) = x^3+x^2+x+1 is square-free
        let f = UniPoly::from_i64(&[1, 1, 1, 1]);
        let (_, _, parts) = squarefree_decomposition(&f).unwrap();
        assert_eq!(parts, vec![(f, 1)]);
    }

    #[test]
    fn square_over_c_examples() {
        assert!(is_square_over_c(&UniPoly::from_i64(&[1, 2, 1]))); // (x+1)^2
        assert!(!is_square_over_c(&UniPoly::from_i64(&[1, 0, 1]))); // x^2+1
        assert!(is_square_over_c(&UniPoly::from_i64(&[0, 0, 2]))); // 2x^2
        assert!(is_square_over_c(&UniPoly::from_i64(&[-3]))); // constants
        assert!(is_square_over_c(&UniPoly::zero()));
        assert!(!is_square_over_c(&UniPoly::from_i64(&[0, 1]))); // x
        // x^2(x+1)^2 = (x^2+x)^2
        let f = UniPoly::from_i64(&[0, 1, 1]);
        assert!(is_square_over_c(&f.mul(&f)));
    }

    #[test]
    fn compose_helpers() {
        let f = UniPoly::from_i64(&[1, 1, 1]); // 1 + x + x^2
        // f(1-x) = 1 + (1-x) + (1-x)^2 = 3 - 3x + x^2
        assert_eq!(f.compose_one_minus_x(), UniPoly::from_i64(&[3, -3, 1]));
        // f(2x) = 1 + 2x + 4x^2
        assert_eq!(
            f.compose_scale_x(&BigInt::from(2)),
            UniPoly::from_i64(&[1, 2, 4])
        );
    }
}
