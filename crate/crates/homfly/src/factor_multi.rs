//! Factorization of bivariate polynomials by Kronecker substitution, and
//! the irreducibility test for homogeneous degree-zero Laurent polynomials
//! in three variables (the shape every knot polynomial here takes).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

use crate::bivar::BivarPoly;
use crate::error::Error;
use crate::factor_uni::factor_univariate;
use crate::laurent::{LaurentPoly, Monomial};
use crate::modp;
use crate::unipoly::UniPoly;

/// Complete factorization of a bivariate integer polynomial:
/// `unit * prod f_i^{m_i}` with each factor primitive, irreducible over the
/// rationals, positive leading coefficient in the (x, y)-lexicographic
/// order, sorted by (total degree, term sequence).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarFactorization {
    pub unit: BigInt,
    pub factors: Vec<(BivarPoly, u32)>,
}

impl BivarFactorization {
    pub fn expand(&self) -> BivarPoly {
        let mut acc = BivarPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.unit.abs().is_one() && self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

fn total_degree(f: &BivarPoly) -> u32 {
    f.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
}

/// Factor a nonzero bivariate integer polynomial into irreducibles over the
/// rationals. Variables are packed into one (y becomes a high power of x,
/// higher than any x-degree that can occur in a factor), the univariate
/// image is factored exactly, and products of subsets of those factors are
/// unpacked and trial-divided back out of the input, smallest subsets first.
pub fn kronecker_factor(f: &BivarPoly) -> Result<BivarFactorization, Error> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (sign, content, prim) = f.primitive_parts();
    let unit = BigInt::from(sign) * content;
    let mut factors: Vec<(BivarPoly, u32)> = Vec::new();

    let (a, b) = prim.min_exponents();
    let core = prim.shift_down(a, b);
    if a > 0 {
        factors.push((BivarPoly::from_terms(&[((1, 0), 1)]), a));
    }
    if b > 0 {
        factors.push((BivarPoly::from_terms(&[((0, 1), 1)]), b));
    }

    if !core.is_constant() {
        let d = core.deg_x() + 1;
        let packed = core.pack(d);
        let uf = factor_univariate(&packed)?;
        debug_assert!(uf.unit.abs().is_one(), "primitive input packs to primitive image");
        let mut pool: Vec<UniPoly> = Vec::new();
        for (g, m) in &uf.factors {
            for _ in 0..*m {
                pool.push(g.clone());
            }
        }
        let mut counts: BTreeMap<BivarPoly, u32> = BTreeMap::new();
        for part in recombine_bivar(&core, pool, d) {
            *counts.entry(part).or_insert(0) += 1;
        }
        factors.extend(counts);
    }

    factors.sort_by(|x, y| {
        (total_degree(&x.0), &x.0.terms).cmp(&(total_degree(&y.0), &y.0.terms))
    });
    let result = BivarFactorization { unit, factors };
    debug_assert_eq!(result.expand(), *f, "factorization must reconstruct input");
    Ok(result)
}

/// Split `core` (primitive, no monomial content, nonconstant) into
/// irreducible bivariate factors, given the exact irreducible factors of
/// its packed univariate image (with multiplicity, as a flat pool).
fn recombine_bivar(core: &BivarPoly, mut pool: Vec<UniPoly>, d: u32) -> Vec<BivarPoly> {
    let mut current = core.clone();
    let mut out = Vec::new();
    'extract: loop {
        let r = pool.len();
        debug_assert!(r > 0, "pool exhausted with cofactor {current}");
        if r == 1 {
            out.push(current);
            break;
        }
        for size in 1..=r / 2 {
            let mut subset: Vec<usize> = (0..size).collect();
            loop {
                let mut prod = UniPoly::one();
                for &i in &subset {
                    prod = prod.mul(&pool[i]);
                }
                let cand = BivarPoly::unpack(&prod, d).primitive_parts().2;
                if let Some(q) = current.divide_exact(&cand) {
                    out.push(cand);
                    current = q;
                    let mut keep = Vec::with_capacity(r - size);
                    for (i, g) in pool.into_iter().enumerate() {
                        if !subset.contains(&i) {
                            keep.push(g);
                        }
                    }
                    pool = keep;
                    continue 'extract;
                }
                if !next_combination(&mut subset, r) {
                    break;
                }
            }
        }
        // no subset of size <= r/2 unpacks to a divisor, so the remaining
        // cofactor is irreducible (all its univariate images stay pooled)
        out.push(current);
        break;
    }
    out
}

/// Advance to the next k-combination of {0..n-1}; false when exhausted.
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

/// Complete factorization of a homogeneous degree-zero Laurent polynomial
/// in variables x, y, z: `monomial * constant * prod f_i^{m_i}` where the
/// monomial is a unit of the Laurent ring, the constant is the integer
/// content (with sign), and each factor is a primitive homogeneous ordinary
/// polynomial in x, y, z with no variable dividing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentFactorization {
    pub monomial: Monomial,
    pub constant: BigInt,
    pub factors: Vec<(LaurentPoly, u32)>,
}

impl LaurentFactorization {
    pub fn expand(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::constant(&["x", "y", "z"], self.constant.clone());
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f).expect("uniform variables");
            }
        }
        acc.mul_monomial(&self.monomial)
    }
}

/// Drop z from a homogeneous degree-zero polynomial in x, y, z (set z = 1);
/// the result determines the input, since the z-exponent of every term is
/// recoverable from homogeneity.
pub fn dehomogenize_z(f: &LaurentPoly) -> Result<LaurentPoly, Error> {
    if f.variables() != ["x", "y", "z"] {
        return Err(Error::VariableMismatch {
            left: f.variables().join(","),
            right: "x,y,z".into(),
        });
    }
    if !f.is_homogeneous_of_degree(0) {
        return Err(Error::NotHomogeneous { expected: 0 });
    }
    let terms: Vec<(Vec<i64>, BigInt)> = f
        .terms()
        .map(|(e, c)| (vec![e[0], e[1]], c.clone()))
        .collect();
    Ok(LaurentPoly::from_terms(&["x", "y"], &terms))
}

/// Inverse of `dehomogenize_z` on ordinary bivariate polynomials: each term
/// x^i y^j becomes x^i y^j z^(-i-j), giving a degree-zero Laurent
/// polynomial in x, y, z.
pub fn rehomogenize(g: &BivarPoly) -> LaurentPoly {
    let terms: Vec<(Vec<i64>, BigInt)> = g
        .terms
        .iter()
        .map(|(&(i, j), c)| {
            let (i, j) = (i as i64, j as i64);
            (vec![i, j, -i - j], c.clone())
        })
        .collect();
    LaurentPoly::from_terms(&["x", "y", "z"], &terms)
}

/// Factor a nonzero homogeneous degree-zero Laurent polynomial in x, y, z
/// over the integer Laurent ring.
pub fn factor_laurent(f: &LaurentPoly) -> Result<LaurentFactorization, Error> {
    let two = dehomogenize_z(f)?;
    let (norm, unit2) = two.unit_normalize()?;
    let biv = BivarPoly::from_laurent(&norm)
        .expect("unit-normalized polynomial has nonnegative exponents");
    let kf = kronecker_factor(&biv)?;

    // carry the two-variable unit into three variables via homogeneity
    let mut monomial = Monomial {
        sign: unit2.sign,
        exponents: vec![
            unit2.exponents[0],
            unit2.exponents[1],
            -(unit2.exponents[0] + unit2.exponents[1]),
        ],
    };
    let mut factors = Vec::with_capacity(kf.factors.len());
    for (g, m) in kf.factors {
        let h = rehomogenize(&g);
        let (hn, w) = h.unit_normalize().expect("factors are nonzero");
        for _ in 0..m {
            monomial = monomial.mul(&w);
        }
        factors.push((hn, m));
    }
    Ok(LaurentFactorization {
        monomial,
        constant: kf.unit,
        factors,
    })
}

/// Is `f` irreducible as an element of the integer Laurent ring in x, y, z?
/// Requires homogeneous degree zero. Units (signed monomials) are not
/// irreducible; an integer constant times a monomial is irreducible exactly
/// when the constant is, i.e. when it is plus or minus a prime.
pub fn is_irreducible_laurent(f: &LaurentPoly) -> Result<bool, Error> {
    let fac = factor_laurent(f)?;
    let poly_count: u32 = fac.factors.iter().map(|(_, m)| *m).sum();
    let content_is_unit = fac.constant.abs().is_one();
    Ok(match (content_is_unit, poly_count) {
        (true, 1) => true,
        (false, 0) => bigint_is_prime(&fac.constant.abs()),
        _ => false,
    })
}

fn bigint_is_prime(n: &BigInt) -> bool {
    use num_traits::ToPrimitive;
    match n.to_u64() {
        Some(v) => modp::is_prime(v),
        None => {
            // out of range for the word-size test; fall back to trial
            // division by small primes only (inputs this large never reach
            // here in practice)
            let mut p = 2u64;
            while p < 100_000 {
                if (n % BigInt::from(p)).is_zero() {
                    return false;
                }
                p = modp::next_prime(p);
            }
            true
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(terms: &[((u32, u32), i64)]) -> BivarPoly {
        BivarPoly::from_terms(terms)
    }

    #[test]
    fn kronecker_splits_product_of_lines() {
        // (x + y)(x - y) = x^2 - y^2
        let f = bp(&[((2, 0), 1), ((0, 2), -1)]);
        let fac = kronecker_factor(&f).unwrap();
        assert_eq!(fac.unit, BigInt::one());
        assert_eq!(
            fac.factors,
            vec![
                (bp(&[((1, 0), 1), ((0, 1), -1)]), 1),
                (bp(&[((1, 0), 1), ((0, 1), 1)]), 1),
            ]
        );
    }

    #[test]
    fn kronecker_monomial_and_content() {
        // -12 x^2 y (x + y)^2
        let f = bp(&[((1, 0), 1), ((0, 1), 1)]);
        let g = f
            .mul(&f)
            .mul(&bp(&[((2, 1), 1)]))
            .scale(&BigInt::from(-12));
        let fac = kronecker_factor(&g).unwrap();
        assert_eq!(fac.unit, BigInt::from(-12));
        assert_eq!(
            fac.factors,
            vec![
                (bp(&[((0, 1), 1)]), 1),
                (bp(&[((1, 0), 1), ((0, 1), 1)]), 2),
                (bp(&[((1, 0), 1)]), 2),
            ]
        );
        assert_eq!(fac.expand(), g);
    }

    #[test]
    fn kronecker_irreducible_quadratic() {
        // x^2 + y^2 is irreducible over Q
        let f = bp(&[((2, 0), 1), ((0, 2), 1)]);
        let fac = kronecker_factor(&f).unwrap();
        assert!(fac.is_irreducible());
        // x^2 + xy + 1 likewise
        let g = bp(&[((2, 0), 1), ((1, 1), 1), ((0, 0), 1)]);
        assert!(kronecker_factor(&g).unwrap().is_irreducible());
    }

    #[test]
    fn kronecker_mixed_multiplicities() {
        // (x + y)^2 (x - y + 1)
        let l = bp(&[((1, 0), 1), ((0, 1), 1)]);
        let m = bp(&[((1, 0), 1), ((0, 1), -1), ((0, 0), 1)]);
        let f = l.mul(&l).mul(&m);
        let fac = kronecker_factor(&f).unwrap();
        assert_eq!(fac.factors, vec![(m, 1), (l, 2)]);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn kronecker_whitney_rank_polynomial_of_k4() {
        // Tutte polynomial of the complete graph on four vertices:
        // x^3 + 3x^2 + 4xy + 2x + y^3 + 3y^2 + 2y -- irreducible
        let f = bp(&[
            ((3, 0), 1),
            ((2, 0), 3),
            ((1, 1), 4),
            ((1, 0), 2),
            ((0, 3), 1),
            ((0, 2), 3),
            ((0, 1), 2),
        ]);
        let fac = kronecker_factor(&f).unwrap();
        assert!(fac.is_irreducible());
    }

    #[test]
    fn laurent_round_trip_through_homogenization() {
        // right trefoil: z^2/y^2 - 2x/y - x^2/y^2
        let f = LaurentPoly::parse(&["x", "y", "z"], "z^2*y^-2-2*x*y^-1-x^2*y^-2").unwrap();
        let two = dehomogenize_z(&f).unwrap();
        let (norm, unit) = two.unit_normalize().unwrap();
        let biv = BivarPoly::from_laurent(&norm).unwrap();
        let back = rehomogenize(&biv);
        // rebuilding from the normalized part and the (homogenized) unit
        // reproduces the input
        let unit3 = Monomial {
            sign: unit.sign,
            exponents: vec![
                unit.exponents[0],
                unit.exponents[1],
                -(unit.exponents[0] + unit.exponents[1]),
            ],
        };
        assert_eq!(back.mul_monomial(&unit3), f);
    }

    #[test]
    fn trefoil_is_irreducible() {
        let f = LaurentPoly::parse(&["x", "y", "z"], "z^2*y^-2-2*x*y^-1-x^2*y^-2").unwrap();
        assert!(is_irreducible_laurent(&f).unwrap());
    }

    #[test]
    fn product_of_trefoils_is_reducible() {
        let f = LaurentPoly::parse(&["x", "y", "z"], "z^2*y^-2-2*x*y^-1-x^2*y^-2").unwrap();
        let mirror = LaurentPoly::parse(&["x", "y", "z"], "z^2*x^-2-2*y*x^-1-y^2*x^-2").unwrap();
        let prod = f.mul(&mirror).unwrap();
        assert!(!is_irreducible_laurent(&prod).unwrap());
        let fac = factor_laurent(&prod).unwrap();
        assert_eq!(fac.factors.iter().map(|(_, m)| *m).sum::<u32>(), 2);
        assert_eq!(fac.expand(), prod);
        // square of one factor: multiplicity survives
        let sq = f.mul(&f).unwrap();
        let fac = factor_laurent(&sq).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 2);
        assert_eq!(fac.expand(), sq);
    }

    #[test]
    fn units_and_constants_are_not_irreducible_polynomials() {
        let one = LaurentPoly::one(&["x", "y", "z"]);
        assert!(!is_irreducible_laurent(&one).unwrap());
        let m = LaurentPoly::parse(&["x", "y", "z"], "-x*y^-1").unwrap();
        assert!(!is_irreducible_laurent(&m).unwrap());
        // 2 * monomial: content is prime, so irreducible in the Laurent ring
        let two = LaurentPoly::parse(&["x", "y", "z"], "2*x*y^-1").unwrap();
        assert!(is_irreducible_laurent(&two).unwrap());
        let six = LaurentPoly::parse(&["x", "y", "z"], "6").unwrap();
        assert!(!is_irreducible_laurent(&six).unwrap());
    }

    #[test]
    fn inhomogeneous_input_rejected() {
        let f = LaurentPoly::parse(&["x", "y", "z"], "x+y^2").unwrap();
        assert!(matches!(
            is_irreducible_laurent(&f),
            Err(Error::NotHomogeneous { .. })
        ));
        let g = LaurentPoly::parse(&["v", "z"], "v+z").unwrap();
        assert!(matches!(
            is_irreducible_laurent(&g),
            Err(Error::VariableMismatch { .. })
        ));
    }

    #[test]
    fn zero_rejected() {
        let z = LaurentPoly::zero(&["x", "y", "z"]);
        assert!(matches!(is_irreducible_laurent(&z), Err(Error::ZeroInput)));
    }
}
