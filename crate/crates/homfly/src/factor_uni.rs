//! Complete factorization of univariate integer polynomials:
//! square-free splitting (Yun), Berlekamp factorization modulo a small
//! prime, Hensel lifting past the Landau-Mignotte coefficient bound, and
//! subset recombination, with a leading-coefficient substitution so that
//! the lifting stage always works on a monic polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::hensel;
use crate::modp::{self, GfPoly};
use crate::unipoly::{squarefree_decomposition, UniPoly};

/// A complete factorization over the integers: `unit * prod f_i^{m_i}`
/// with each `f_i` primitive, irreducible over the rationals, positive
/// leading coefficient, sorted by (degree, coefficient sequence).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniFactorization {
    pub unit: BigInt,
    pub factors: Vec<(UniPoly, u32)>,
}

impl UniFactorization {
    /// Multiply the factorization back out.
    pub fn expand(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factor a nonzero integer polynomial into irreducibles over the
/// rationals, with the integer content (and sign) reported as the unit.
pub fn factor_univariate(f: &UniPoly) -> Result<UniFactorization, Error> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (sign, content, prim) = f.primitive_parts();
    let unit = BigInt::from(sign) * content;
    let mut factors: Vec<(UniPoly, u32)> = Vec::new();

    // power of x
    let x_mult = prim.coeffs.iter().take_while(|c| c.is_zero()).count();
    let core = UniPoly::from_coeffs(prim.coeffs[x_mult..].to_vec());
    if x_mult > 0 {
        factors.push((UniPoly::x(), x_mult as u32));
    }

    if !core.is_constant() {
        let (_, _, parts) = squarefree_decomposition(&core)?;
        for (part, mult) in parts {
            for irr in factor_squarefree(&part) {
                factors.push((irr, mult));
            }
        }
    }

    factors.sort_by(|a, b| (a.0.deg(), &a.0.coeffs).cmp(&(b.0.deg(), &b.0.coeffs)));
    let result = UniFactorization { unit, factors };
    debug_assert_eq!(&result.expand(), f, "factorization must reconstruct input");
    Ok(result)
}

/// How many candidate primes to compare before picking the one whose
/// modular factorization has the fewest factors.
const PRIME_CANDIDATES: usize = 5;

/// Factor a primitive square-free polynomial with positive leading
/// coefficient and nonzero constant term.
fn factor_squarefree(g: &UniPoly) -> Vec<UniPoly> {
    let n = g.deg();
    if n == 1 {
        return vec![g.clone()];
    }
    let l = g.lc().clone();

    // monic model: M(x) = l^(n-1) * g(x/l), an integer monic polynomial
    let monic = monicize(g, &l);

    // candidate primes: smallest primes keeping g square-free and not
    // dividing the leading coefficient; among those, prefer the one whose
    // Berlekamp factorization is smallest (fewer spurious modular splits)
    let mut best: Option<(u64, Vec<GfPoly>)> = None;
    let mut p = 1u64;
    let mut found = 0usize;
    while found < PRIME_CANDIDATES {
        p = modp::next_prime(p);
        if (&l % BigInt::from(p)).is_zero() {
            continue;
        }
        let gp = g.reduce_mod(p);
        if !modp::is_squarefree(&gp, p) {
            continue;
        }
        found += 1;
        let mp = monic.reduce_mod(p);
        debug_assert!(modp::is_squarefree(&mp, p));
        let fs = modp::berlekamp(&mp, p);
        let better = match &best {
            None => true,
            Some((_, b)) => fs.len() < b.len(),
        };
        if better {
            let done = fs.len() == 1;
            best = Some((p, fs));
            if done {
                break;
            }
        }
    }
    let (p, local) = best.expect("a usable prime always exists for a square-free polynomial");
    if local.len() == 1 {
        return vec![g.clone()];
    }

    // Landau-Mignotte style bound: coefficients of any monic factor of the
    // monic model are below 2^n * (|M|_2 + 1); lift until p^k exceeds twice
    // that so symmetric representatives are faithful.
    let norm2: BigInt = monic.coeffs.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = (norm2 << n) * 2 + 1;
    let mut target = BigInt::from(p);
    while target < bound {
        target = &target * p;
    }

    let lifted = hensel::lift_factorization(&monic, &local, p, &target);
    let monic_factors = recombine(&monic, lifted, &target);

    // undo the monic substitution: a factor A(x) of M corresponds to the
    // primitive part of A(l*x) as a factor of g
    let mut out: Vec<UniPoly> = monic_factors
        .iter()
        .map(|a| a.compose_scale_x(&l).primitive_part())
        .collect();
    debug_assert_eq!(
        out.iter().fold(UniPoly::one(), |acc, f| acc.mul(f)),
        *g,
        "de-monicized factors must reconstruct the square-free part"
    );
    out.sort_by(|a, b| (a.deg(), &a.coeffs).cmp(&(b.deg(), &b.coeffs)));
    out
}

/// `M(x) = l^(n-1) * g(x/l)`: integer, monic, degree n.
fn monicize(g: &UniPoly, l: &BigInt) -> UniPoly {
    if l.is_one() {
        return g.clone();
    }
    let n = g.deg();
    let mut coeffs = Vec::with_capacity(n + 1);
    for (i, c) in g.coeffs.iter().enumerate().take(n) {
        coeffs.push(c * l.pow((n - 1 - i) as u32));
    }
    coeffs.push(BigInt::one());
    UniPoly::from_coeffs(coeffs)
}

/// Centered representative of a mod-m polynomial.
fn center(f: &UniPoly, m: &BigInt) -> UniPoly {
    let half = m / 2;
    UniPoly::from_coeffs(
        f.coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Subset recombination: find the true monic integer factors of `monic`
/// among products of the lifted modular factors, smallest subsets first.
fn recombine(monic: &UniPoly, pool: Vec<UniPoly>, modulus: &BigInt) -> Vec<UniPoly> {
    let mut current = monic.clone();
    let mut pool = pool;
    let mut out = Vec::new();

    'extract: loop {
        let r = pool.len();
        if r == 0 {
            break;
        }
        if r == 1 {
            out.push(current.clone());
            break;
        }
        let trailing = current.coeff(0);
        for size in 1..=r / 2 {
            let mut subset: Vec<usize> = (0..size).collect();
            loop {
                // candidate product over the chosen subset
                let mut prod = UniPoly::one();
                for &i in &subset {
                    prod = hensel_mul(&prod, &pool[i], modulus);
                }
                let cand = center(&prod, modulus);
                // quick necessary condition on the constant term
                let ct = cand.coeff(0);
                let plausible = !ct.is_zero() && (&trailing % &ct).is_zero();
                if plausible {
                    if let Some(q) = current.divide_exact(&cand) {
                        out.push(cand);
                        current = q;
                        let mut keep = Vec::with_capacity(r - size);
                        for (i, f) in pool.into_iter().enumerate() {
                            if !subset.contains(&i) {
                                keep.push(f);
                            }
                        }
                        pool = keep;
                        continue 'extract;
                    }
                }
                if !next_combination(&mut subset, r) {
                    break;
                }
            }
        }
        // no subset of size <= r/2 divides: the remaining cofactor is
        // irreducible and corresponds to the whole pool
        out.push(current.clone());
        break;
    }
    out
}

fn hensel_mul(a: &UniPoly, b: &UniPoly, m: &BigInt) -> UniPoly {
    UniPoly::from_coeffs(a.mul(b).coeffs.iter().map(|c| c.mod_floor(m)).collect())
}

/// Advance `subset` to the next k-combination of {0..n-1} in lexicographic
/// order; returns false when exhausted.
fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        if subset[i] != i + n - k {
            break;
        }
    }
    subset[i] += 1;
    for j in i + 1..k {
        subset[j] = subset[j - 1] + 1;
    }
    true
}
