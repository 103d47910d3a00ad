//! Hensel lifting: lift a factorization of a monic integer polynomial
//! modulo a prime to a factorization modulo a prime power, using quadratic
//! lifting steps organized in a binary tree over the factor list.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::modp::GfPoly;
use crate::unipoly::UniPoly;

/// Reduce all coefficients into [0, m).
fn red(f: &UniPoly, m: &BigInt) -> UniPoly {
    UniPoly::from_coeffs(f.coeffs.iter().map(|c| c.mod_floor(m)).collect())
}

fn add_m(f: &UniPoly, g: &UniPoly, m: &BigInt) -> UniPoly {
    red(&f.add(g), m)
}

fn sub_m(f: &UniPoly, g: &UniPoly, m: &BigInt) -> UniPoly {
    red(&f.sub(g), m)
}

fn mul_m(f: &UniPoly, g: &UniPoly, m: &BigInt) -> UniPoly {
    red(&f.mul(g), m)
}

/// Division with remainder modulo m by a monic divisor.
fn divmod_monic_m(f: &UniPoly, h: &UniPoly, m: &BigInt) -> (UniPoly, UniPoly) {
    debug_assert!(h.lc().is_one(), "divisor must be monic");
    if f.is_zero() || f.deg() < h.deg() {
        return (UniPoly::zero(), f.clone());
    }
    let dh = h.deg();
    let n = f.deg();
    let mut rem = f.coeffs.clone();
    let mut q = vec![BigInt::zero(); n - dh + 1];
    for k in (0..=n - dh).rev() {
        let c = rem[k + dh].mod_floor(m);
        if c.is_zero() {
            rem[k + dh] = BigInt::zero();
            continue;
        }
        for i in 0..dh {
            rem[k + i] = (&rem[k + i] - &c * &h.coeffs[i]).mod_floor(m);
        }
        rem[k + dh] = BigInt::zero();
        q[k] = c;
    }
    (UniPoly::from_coeffs(q), red(&UniPoly::from_coeffs(rem), m))
}

fn lift_from_gf(f: &GfPoly) -> UniPoly {
    UniPoly::from_coeffs(f.coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

/// One quadratic Hensel step: given f ≡ g·h (mod m) with g, h monic,
/// s·g + t·h ≡ 1 (mod m), deg s < deg h, deg t < deg g, produce the
/// corresponding data modulo m².
fn hensel_step(
    f: &UniPoly,
    g: &UniPoly,
    h: &UniPoly,
    s: &UniPoly,
    t: &UniPoly,
    m: &BigInt,
) -> (UniPoly, UniPoly, UniPoly, UniPoly) {
    let m2 = m * m;
    let e = sub_m(f, &g.mul(h), &m2);
    let (q, r) = divmod_monic_m(&red(&s.mul(&e), &m2), h, &m2);
    let g1 = add_m(&add_m(g, &mul_m(t, &e, &m2), &m2), &mul_m(&q, g, &m2), &m2);
    let h1 = add_m(h, &r, &m2);
    debug_assert!(h1.lc().is_one() && h1.deg() == h.deg());
    debug_assert!(g1.lc().is_one() && g1.deg() == g.deg());

    let b = sub_m(
        &add_m(&mul_m(s, &g1, &m2), &mul_m(t, &h1, &m2), &m2),
        &UniPoly::one(),
        &m2,
    );
    let (c, d) = divmod_monic_m(&red(&s.mul(&b), &m2), &h1, &m2);
    let s1 = sub_m(s, &d, &m2);
    let t1 = sub_m(t, &add_m(&mul_m(t, &b, &m2), &mul_m(&c, &g1, &m2), &m2), &m2);
    (g1, h1, s1, t1)
}

/// Lift `f ≡ g0·h0 (mod p)` with Bezout data to `f ≡ G·H (mod target)`,
/// where `target` is a power of p. Returns (G, H) reduced mod target.
fn lift_pair(
    f: &UniPoly,
    g0: &GfPoly,
    h0: &GfPoly,
    p: u64,
    target: &BigInt,
) -> (UniPoly, UniPoly) {
    let (s0, t0) = crate::modp::bezout(g0, h0, p);
    let mut m = BigInt::from(p);
    let mut g = lift_from_gf(g0);
    let mut h = lift_from_gf(h0);
    let mut s = lift_from_gf(&s0);
    let mut t = lift_from_gf(&t0);
    while &m < target {
        let (g1, h1, s1, t1) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    (red(&g, target), red(&h, target))
}

/// Lift a complete factorization of a monic square-free polynomial from
/// modulo p to modulo `target = p^k`: given monic `f` over the integers and
/// its monic irreducible factors modulo p (pairwise coprime), return monic
/// polynomials modulo target, congruent to the inputs mod p, whose product
/// is ≡ f (mod target). Order is preserved.
pub fn lift_factorization(
    f: &UniPoly,
    factors_p: &[GfPoly],
    p: u64,
    target: &BigInt,
) -> Vec<UniPoly> {
    debug_assert!(f.lc().is_one());
    if factors_p.len() == 1 {
        return vec![red(f, target)];
    }
    let mid = factors_p.len() / 2;
    let (left, right) = factors_p.split_at(mid);
    let mut g0 = GfPoly::one();
    for q in left {
        g0 = crate::modp::mul_poly(&g0, q, p);
    }
    let mut h0 = GfPoly::one();
    for q in right {
        h0 = crate::modp::mul_poly(&h0, q, p);
    }
    let (g, h) = lift_pair(f, &g0, &h0, p, target);
    let mut out = lift_factorization(&g, left, p, target);
    out.extend(lift_factorization(&h, right, p, target));
    out
}
