//! From Tutte polynomials to link invariants.
//!
//! For a connected plane multigraph, Jaeger's construction (F. Jaeger,
//! "Tutte polynomials and link polynomials", 1988) produces an oriented
//! link whose HOMFLY polynomial is an exact monomial-weighted substitution
//! into the Tutte polynomial. This module implements that substitution
//! over the homogeneous three-variable Laurent ring, the projective
//! coordinate maps whose composition is coordinatewise squaring, boundary
//! restrictions of the cleared numerator form, a structural irreducibility
//! certificate built from those restrictions, and an exhaustive search for
//! graphs that escape the certificate.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bivar::BivarPoly;
use crate::enumerate::{enumerate_two_connected, is_planar};
use crate::error::Error;
use crate::graph::MultiGraph;
use crate::laurent::{LaurentPoly, Monomial};
use crate::tutte::tutte;
use crate::unipoly::{is_square_over_c, UniPoly};

const VARS: [&str; 3] = ["x", "y", "z"];

/// HOMFLY polynomial of the link associated to a connected multigraph,
/// computed exactly from the Tutte polynomial:
///
/// P = (y/z)^(|V|−1) · (−z/x)^(|E|) · T_G(−x/y, 1 − (x+y)·y/z²)
///
/// Both substitution values and the prefactor are homogeneous of degree 0,
/// so the result always is; it is returned as an exact element of the
/// Laurent ring ℤ[x±, y±, z±].
pub fn homfly_from_tutte(g: &MultiGraph) -> Result<LaurentPoly, Error> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.num_edges() == 0 {
        return Err(Error::Malformed { detail: "graph must have at least one edge".into() });
    }
    let t = tutte(g);
    let n = g.num_vertices() as i64;
    let m = g.num_edges() as i64;

    // first Tutte variable ↦ −x/y, second ↦ 1 − (x+y)·y/z²
    let a = LaurentPoly::term(&VARS, vec![1, -1, 0], BigInt::from(-1));
    let b = LaurentPoly::from_terms(
        &VARS,
        &[
            (vec![0, 0, 0], BigInt::one()),
            (vec![1, 1, -2], BigInt::from(-1)),
            (vec![0, 2, -2], BigInt::from(-1)),
        ],
    );
    let a_pows = laurent_powers(&a, t.deg_x() as usize);
    let b_pows = laurent_powers(&b, t.deg_y() as usize);

    let mut acc = LaurentPoly::zero(&VARS);
    for (&(i, j), c) in &t.terms {
        let term = a_pows[i as usize].mul(&b_pows[j as usize])?.scale(c);
        acc = acc.add(&term)?;
    }

    // prefactor (y/z)^(n−1) · (−z/x)^m as a signed monomial
    let prefactor = Monomial {
        sign: if m % 2 == 0 { 1 } else { -1 },
        exponents: vec![-m, n - 1, m - (n - 1)],
    };
    let p = acc.mul_monomial(&prefactor);
    if !p.is_homogeneous_of_degree(0) {
        return Err(Error::Inconsistency {
            detail: "Tutte substitution produced an inhomogeneous polynomial".into(),
        });
    }
    Ok(p)
}

fn laurent_powers(f: &LaurentPoly, max: usize) -> Vec<LaurentPoly> {
    let mut pows = Vec::with_capacity(max + 1);
    pows.push(LaurentPoly::one(&VARS));
    for i in 1..=max {
        let next = pows[i - 1].mul(f).expect("matching variables");
        pows.push(next);
    }
    pows
}

/// Polynomial in four variables (x0, x1, y0, y1), separately homogeneous in
/// the pair (x0, x1) and in the pair (y0, y1). The zero polynomial is the
/// empty term map and carries no bidegree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiHomogPoly {
    terms: BTreeMap<(u32, u32, u32, u32), BigInt>,
}

impl BiHomogPoly {
    pub fn zero() -> Self {
        BiHomogPoly { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Build from (x0-exp, x1-exp, y0-exp, y1-exp) → coefficient terms.
    /// Duplicates accumulate; exact cancellation is allowed. All surviving
    /// terms must share one bidegree.
    pub fn from_terms(terms: &[((u32, u32, u32, u32), i64)]) -> Result<Self, Error> {
        let mut map: BTreeMap<(u32, u32, u32, u32), BigInt> = BTreeMap::new();
        for &(k, c) in terms {
            let e = map.entry(k).or_insert_with(BigInt::zero);
            *e += BigInt::from(c);
            if e.is_zero() {
                map.remove(&k);
            }
        }
        let p = BiHomogPoly { terms: map };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), Error> {
        let mut deg: Option<(u32, u32)> = None;
        for &(i0, i1, j0, j1) in self.terms.keys() {
            let d = (i0 + i1, j0 + j1);
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return Err(Error::NotBihomogeneous),
                _ => {}
            }
        }
        Ok(())
    }

    /// (x-degree, y-degree) shared by every term; None for the zero
    /// polynomial.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        self.terms.keys().next().map(|&(i0, i1, j0, j1)| (i0 + i1, j0 + j1))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32, u32), &BigInt)> {
        self.terms.iter()
    }

    /// Sum; both operands must share a bidegree (zero is neutral).
    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.bidegree() != other.bidegree() {
            return Err(Error::NotBihomogeneous);
        }
        let mut map = self.terms.clone();
        for (k, c) in &other.terms {
            let e = map.entry(*k).or_insert_with(BigInt::zero);
            *e += c;
            if e.is_zero() {
                map.remove(k);
            }
        }
        Ok(BiHomogPoly { terms: map })
    }

    pub fn neg(&self) -> Self {
        BiHomogPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut map: BTreeMap<(u32, u32, u32, u32), BigInt> = BTreeMap::new();
        for (&(a0, a1, b0, b1), ca) in &self.terms {
            for (&(c0, c1, d0, d1), cb) in &other.terms {
                let k = (a0 + c0, a1 + c1, b0 + d0, b1 + d1);
                let e = map.entry(k).or_insert_with(BigInt::zero);
                *e += ca * cb;
                if e.is_zero() {
                    map.remove(&k);
                }
            }
        }
        BiHomogPoly { terms: map }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiHomogPoly { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BiHomogPoly::from_terms(&[((0, 0, 0, 0), 1)]).expect("constant");
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[BigRational; 4]) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(i0, i1, j0, j1), c) in &self.terms {
            let mut v = BigRational::from(c.clone());
            v *= rat_pow(&point[0], i0);
            v *= rat_pow(&point[1], i1);
            v *= rat_pow(&point[2], j0);
            v *= rat_pow(&point[3], j1);
            acc += v;
        }
        acc
    }

    /// Restriction to (y0, y1) = (1, 0): terms with no y1 factor survive.
    pub fn restrict_y10(&self) -> BinaryForm {
        self.restrict(|&(_, _, _, j1)| j1 == 0)
    }

    /// Restriction to (y0, y1) = (0, 1): terms with no y0 factor survive.
    pub fn restrict_y01(&self) -> BinaryForm {
        self.restrict(|&(_, _, j0, _)| j0 == 0)
    }

    fn restrict(&self, keep: impl Fn(&(u32, u32, u32, u32)) -> bool) -> BinaryForm {
        let degree = self.bidegree().map(|(a, _)| a).unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); degree as usize + 1];
        for (k, c) in &self.terms {
            if keep(k) {
                coeffs[k.0 as usize] += c;
            }
        }
        BinaryForm { degree, dehom: UniPoly::from_coeffs(coeffs) }
    }
}

fn rat_pow(r: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

/// Homogeneous polynomial in (x0, x1) of the stated degree, stored through
/// its dehomogenization at x1 = 1. The multiplicity of x1 as a factor of
/// the form is `degree − deg(dehom)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    pub degree: u32,
    pub dehom: UniPoly,
}

/// Whether the binary form is the square of another binary form over ℂ:
/// the degree must be even and every linear factor must occur with even
/// multiplicity — the factor x1 (multiplicity `degree − deg(dehom)`) and
/// all factors visible in the dehomogenization (checked by square-free
/// multiplicities). The zero form counts as a square.
pub fn is_square_form(f: &BinaryForm) -> bool {
    if f.dehom.is_zero() {
        return true;
    }
    let d = f.dehom.deg();
    let x1_multiplicity = f.degree as usize - d;
    f.degree % 2 == 0 && x1_multiplicity % 2 == 0 && is_square_over_c(&f.dehom)
}

/// Cleared numerator of the Tutte polynomial under the inverse codomain
/// change (x, y) = (1 − x0/x1, 1 − x1·y0/(x0·y1)):
///
/// Σᵢⱼ tᵢⱼ (x1−x0)^i (x0·y1 − x1·y0)^j x1^(r−i) x0^(h1−j) y1^(h1−j)
///
/// with r = |V|−1 and h1 = |E|−|V|+1. The result is bihomogeneous of
/// bidegree (|E|, h1); both degree facts are verified, not assumed.
pub fn tutte_numerator(g: &MultiGraph) -> Result<BiHomogPoly, Error> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.num_vertices() == 0 {
        return Err(Error::Malformed { detail: "graph must have at least one vertex".into() });
    }
    let t = tutte(g);
    tutte_numerator_from(g, &t)
}

fn tutte_numerator_from(g: &MultiGraph, t: &BivarPoly) -> Result<BiHomogPoly, Error> {
    let r = (g.num_vertices() - 1) as u32;
    let h1 = g.cycle_rank() as u32;
    if t.deg_x() != r || t.deg_y() != h1 {
        return Err(Error::Inconsistency {
            detail: format!(
                "Tutte degree ({}, {}) differs from (|V|-1, h1) = ({}, {})",
                t.deg_x(),
                t.deg_y(),
                r,
                h1
            ),
        });
    }
    let u = BiHomogPoly::from_terms(&[((0, 1, 0, 0), 1), ((1, 0, 0, 0), -1)])?; // x1 − x0
    let w = BiHomogPoly::from_terms(&[((1, 0, 0, 1), 1), ((0, 1, 1, 0), -1)])?; // x0·y1 − x1·y0
    let u_pows = bihomog_powers(&u, r as usize);
    let w_pows = bihomog_powers(&w, h1 as usize);

    let mut acc = BiHomogPoly::zero();
    for (&(i, j), c) in &t.terms {
        let mono =
            BiHomogPoly { terms: BTreeMap::from([((h1 - j, r - i, 0, h1 - j), BigInt::one())]) };
        let term = u_pows[i as usize].mul(&w_pows[j as usize]).mul(&mono).scale(c);
        acc = acc.add(&term)?;
    }
    let m = g.num_edges() as u32;
    if acc.bidegree() != Some((m, h1)) {
        return Err(Error::Inconsistency {
            detail: format!("numerator bidegree {:?} differs from (|E|, h1) = ({m}, {h1})", acc.bidegree()),
        });
    }
    Ok(acc)
}

fn bihomog_powers(f: &BiHomogPoly, max: usize) -> Vec<BiHomogPoly> {
    let mut pows = Vec::with_capacity(max + 1);
    pows.push(BiHomogPoly::from_terms(&[((0, 0, 0, 0), 1)]).expect("constant"));
    for i in 1..=max {
        let next = pows[i - 1].mul(f);
        pows.push(next);
    }
    pows
}

/// Rational self-map of P¹×P¹ given by two pairs of bihomogeneous
/// components ([A, B], [C, D]): matched bidegree within each pair.
/// Components of the named maps below share no common factor; composites
/// built by [`RationalMapP1P1::after`] may pick one up, which projective
/// comparison tolerates.
#[derive(Clone, Debug)]
pub struct RationalMapP1P1 {
    pub x_pair: (BiHomogPoly, BiHomogPoly),
    pub y_pair: (BiHomogPoly, BiHomogPoly),
}

impl RationalMapP1P1 {
    pub fn new(
        a: BiHomogPoly,
        b: BiHomogPoly,
        c: BiHomogPoly,
        d: BiHomogPoly,
    ) -> Result<Self, Error> {
        if a.is_zero() && b.is_zero() || c.is_zero() && d.is_zero() {
            return Err(Error::ZeroInput);
        }
        if !a.is_zero() && !b.is_zero() && a.bidegree() != b.bidegree() {
            return Err(Error::NotBihomogeneous);
        }
        if !c.is_zero() && !d.is_zero() && c.bidegree() != d.bidegree() {
            return Err(Error::NotBihomogeneous);
        }
        Ok(RationalMapP1P1 { x_pair: (a, b), y_pair: (c, d) })
    }

    /// Composition self ∘ inner by substituting inner's components for
    /// (x0, x1, y0, y1) in each component of self. Substituting pairs of
    /// matched bidegree keeps every component bihomogeneous.
    pub fn after(&self, inner: &Self) -> Self {
        let comps = [&inner.x_pair.0, &inner.x_pair.1, &inner.y_pair.0, &inner.y_pair.1];
        let subst = |p: &BiHomogPoly| -> BiHomogPoly {
            let mut max = [0u32; 4];
            for (&(i0, i1, j0, j1), _) in p.terms() {
                max[0] = max[0].max(i0);
                max[1] = max[1].max(i1);
                max[2] = max[2].max(j0);
                max[3] = max[3].max(j1);
            }
            let pows: Vec<Vec<BiHomogPoly>> = comps
                .iter()
                .zip(max)
                .map(|(c, m)| bihomog_powers(c, m as usize))
                .collect();
            let mut acc = BiHomogPoly::zero();
            for (&(i0, i1, j0, j1), coeff) in p.terms() {
                let term = pows[0][i0 as usize]
                    .mul(&pows[1][i1 as usize])
                    .mul(&pows[2][j0 as usize])
                    .mul(&pows[3][j1 as usize])
                    .scale(coeff);
                acc = acc
                    .add(&term)
                    .expect("matched-bidegree substitution stays bihomogeneous");
            }
            acc
        };
        RationalMapP1P1 {
            x_pair: (subst(&self.x_pair.0), subst(&self.x_pair.1)),
            y_pair: (subst(&self.y_pair.0), subst(&self.y_pair.1)),
        }
    }

    /// Evaluate all four components at an affine representative
    /// (x0, x1, y0, y1) of a point of P¹×P¹.
    pub fn eval(&self, point: &[BigRational; 4]) -> [[BigRational; 2]; 2] {
        [
            [self.x_pair.0.eval(point), self.x_pair.1.eval(point)],
            [self.y_pair.0.eval(point), self.y_pair.1.eval(point)],
        ]
    }
}

/// Equality as rational maps: cross-multiplied component differences vanish
/// identically. A bidegree mismatch in a cross product means the difference
/// cannot vanish, i.e. the maps differ.
pub fn maps_projectively_equal(f: &RationalMapP1P1, g: &RationalMapP1P1) -> bool {
    let cross = |a1: &BiHomogPoly, b1: &BiHomogPoly, a2: &BiHomogPoly, b2: &BiHomogPoly| {
        // [a1 : b1] == [a2 : b2]  ⟺  a1·b2 − a2·b1 == 0
        match a1.mul(b2).sub(&a2.mul(b1)) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    };
    cross(&f.x_pair.0, &f.x_pair.1, &g.x_pair.0, &g.x_pair.1)
        && cross(&f.y_pair.0, &f.y_pair.1, &g.y_pair.0, &g.y_pair.1)
}

/// Coordinatewise squaring ([x0, x1], [y0, y1]) ↦ ([x0, x1], [y0², y1²]).
pub fn squaring_map() -> RationalMapP1P1 {
    RationalMapP1P1::new(
        BiHomogPoly::from_terms(&[((1, 0, 0, 0), 1)]).unwrap(),
        BiHomogPoly::from_terms(&[((0, 1, 0, 0), 1)]).unwrap(),
        BiHomogPoly::from_terms(&[((0, 0, 2, 0), 1)]).unwrap(),
        BiHomogPoly::from_terms(&[((0, 0, 0, 2), 1)]).unwrap(),
    )
    .expect("constant components")
}

/// The plane substitution behind [`homfly_from_tutte`] at z = 1, as a map
/// of P¹×P¹ in affine charts x = x0/x1, y = y0/y1:
/// (x, y) ↦ (−x/y, 1 − (x+y)·y).
pub fn link_substitution_map() -> RationalMapP1P1 {
    RationalMapP1P1::new(
        // −x/y = [−x0·y1, x1·y0]
        BiHomogPoly::from_terms(&[((1, 0, 0, 1), -1)]).unwrap(),
        BiHomogPoly::from_terms(&[((0, 1, 1, 0), 1)]).unwrap(),
        // 1 − (x+y)·y = [x1·y1² − x0·y0·y1 − x1·y0², x1·y1²]
        BiHomogPoly::from_terms(&[((0, 1, 0, 2), 1), ((1, 0, 1, 1), -1), ((0, 1, 2, 0), -1)])
            .unwrap(),
        BiHomogPoly::from_terms(&[((0, 1, 0, 2), 1)]).unwrap(),
    )
    .expect("matched bidegrees")
}

/// Coordinate change applied before the link substitution:
/// ([x0, x1], [y0, y1]) ↦ (y0(x0−x1)/(x0·y1), x1·y0/(x0·y1)).
pub fn domain_change_map() -> RationalMapP1P1 {
    RationalMapP1P1::new(
        BiHomogPoly::from_terms(&[((1, 0, 1, 0), 1), ((0, 1, 1, 0), -1)]).unwrap(),
        BiHomogPoly::from_terms(&[((1, 0, 0, 1), 1)]).unwrap(),
        BiHomogPoly::from_terms(&[((0, 1, 1, 0), 1)]).unwrap(),
        BiHomogPoly::from_terms(&[((1, 0, 0, 1), 1)]).unwrap(),
    )
    .expect("matched bidegrees")
}

/// Coordinate change applied after the link substitution:
/// (x, y) ↦ ([1−x, 1], [(1−x)(1−y), 1]) in the affine charts.
pub fn codomain_change_map() -> RationalMapP1P1 {
    RationalMapP1P1::new(
        BiHomogPoly::from_terms(&[((0, 1, 0, 0), 1), ((1, 0, 0, 0), -1)]).unwrap(),
        BiHomogPoly::from_terms(&[((0, 1, 0, 0), 1)]).unwrap(),
        // (x1−x0)(y1−y0)
        BiHomogPoly::from_terms(&[
            ((0, 1, 0, 1), 1),
            ((0, 1, 1, 0), -1),
            ((1, 0, 0, 1), -1),
            ((1, 0, 1, 0), 1),
        ])
        .unwrap(),
        BiHomogPoly::from_terms(&[((0, 1, 0, 1), 1)]).unwrap(),
    )
    .expect("matched bidegrees")
}

/// Inverse of [`codomain_change_map`]:
/// ([x0, x1], [y0, y1]) ↦ (1 − x0/x1, 1 − x1·y0/(x0·y1)).
pub fn codomain_change_inverse() -> RationalMapP1P1 {
    RationalMapP1P1::new(
        BiHomogPoly::from_terms(&[((0, 1, 0, 0), 1), ((1, 0, 0, 0), -1)]).unwrap(),
        BiHomogPoly::from_terms(&[((0, 1, 0, 0), 1)]).unwrap(),
        BiHomogPoly::from_terms(&[((1, 0, 0, 1), 1), ((0, 1, 1, 0), -1)]).unwrap(),
        BiHomogPoly::from_terms(&[((1, 0, 0, 1), 1)]).unwrap(),
    )
    .expect("matched bidegrees")
}

/// Verify symbolically that the link substitution, conjugated by the two
/// coordinate changes, is exactly coordinatewise squaring, then re-check
/// the identity at `points` random rational points (rejecting points where
/// either side is indeterminate).
pub fn verify_squaring_identity_at(points: usize, seed: u64) -> bool {
    let composite = codomain_change_map().after(&link_substitution_map().after(&domain_change_map()));
    let target = squaring_map();
    if !maps_projectively_equal(&composite, &target) {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    while checked < points {
        let pt: [BigRational; 4] = std::array::from_fn(|_| {
            BigRational::new(BigInt::from(rng.gen_range(-20i64..=20)), BigInt::from(rng.gen_range(1i64..=20)))
        });
        let lhs = composite.eval(&pt);
        let rhs = target.eval(&pt);
        if [&lhs[0], &lhs[1], &rhs[0], &rhs[1]]
            .iter()
            .any(|pair| pair[0].is_zero() && pair[1].is_zero())
        {
            continue; // indeterminate here; resample
        }
        if !projective_pair_equal(&lhs[0], &rhs[0]) || !projective_pair_equal(&lhs[1], &rhs[1]) {
            return false;
        }
        checked += 1;
    }
    true
}

/// [`verify_squaring_identity_at`] with the standard budget: symbolic proof
/// plus 25 random rational points.
pub fn verify_squaring_identity() -> bool {
    verify_squaring_identity_at(25, 2024)
}

fn projective_pair_equal(a: &[BigRational; 2], b: &[BigRational; 2]) -> bool {
    &a[0] * &b[1] == &a[1] * &b[0]
}

/// The two boundary restrictions of a bivariate polynomial t(x, y):
/// t(1−x, 1), and the top y-row Σᵢ t_{i,d}·(1−x)^i with d the maximal
/// y-exponent. These dehomogenize the restrictions of the cleared
/// numerator form to (y0, y1) = (0, 1) and (1, 0) respectively, up to
/// monomial factors.
pub fn boundary_restrictions(t: &BivarPoly) -> Result<(UniPoly, UniPoly), Error> {
    if t.is_zero() {
        return Err(Error::ZeroInput);
    }
    let full = t.eval_y(&BigInt::one()).compose_one_minus_x();
    let d = t.deg_y();
    let mut coeffs = vec![BigInt::zero(); t.deg_x() as usize + 1];
    for (&(i, j), c) in &t.terms {
        if j == d {
            coeffs[i as usize] = c.clone();
        }
    }
    let top = UniPoly::from_coeffs(coeffs).compose_one_minus_x();
    Ok((full, top))
}

/// Necessary conditions for F(x0, x1, y0², y1²) to factor into two smaller
/// bihomogeneous polynomials: the x-bidegree of F is even and both
/// restrictions F(x0, x1, 1, 0), F(x0, x1, 0, 1) are squares of binary
/// forms over ℂ. Any failure certifies the squared substitution
/// irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareConditions {
    pub degree_even: bool,
    pub sq10: bool,
    pub sq01: bool,
}

pub fn square_restriction_conditions(f: &BiHomogPoly) -> Result<SquareConditions, Error> {
    let (a, _) = f.bidegree().ok_or(Error::ZeroInput)?;
    Ok(SquareConditions {
        degree_even: a % 2 == 0,
        sq10: is_square_form(&f.restrict_y10()),
        sq01: is_square_form(&f.restrict_y01()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    CertifiedIrreducible,
    Inconclusive,
}

/// Condition record of a [`Certificate`]. The first three drive the
/// verdict. The last two are informational cross-references: when
/// `edge_parity`, `sq10` and `sq01` all hold, h1 must be even (the 0-1
/// restriction carries the factor x0^h1), which forces |V| = |E| − h1 + 1
/// odd — so `vertex_parity` is reported for observation, never consulted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateConditions {
    /// |E| is even (equals the x-bidegree parity of the numerator form).
    pub edge_parity: bool,
    /// The (y0, y1) = (1, 0) restriction is a square form over ℂ.
    pub sq10: bool,
    /// The (y0, y1) = (0, 1) restriction is a square form over ℂ.
    pub sq01: bool,
    /// |V| is even — informational only.
    pub vertex_parity: bool,
    /// T_G(x, 1) is a square over ℂ — informational only.
    pub tx1_square: bool,
}

/// Structural irreducibility certificate for the link polynomial of a
/// 2-connected multigraph: if every deciding condition holds the verdict is
/// Inconclusive, otherwise the polynomial is certified irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub graph: String,
    #[serde(rename = "|V|")]
    pub vertices: usize,
    #[serde(rename = "|E|")]
    pub edges: usize,
    pub h1: usize,
    pub conditions: CertificateConditions,
    pub verdict: Verdict,
}

/// Compact deterministic identifier for a graph: vertex count plus edge
/// list in stored (sorted) order.
pub fn graph_id(g: &MultiGraph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("v{}:{}", g.num_vertices(), edges.join(","))
}

pub fn irreducibility_certificate(g: &MultiGraph) -> Result<Certificate, Error> {
    if !g.is_two_connected() {
        return Err(Error::NotTwoConnected);
    }
    let t = tutte(g);
    let numerator = tutte_numerator_from(g, &t)?;
    let sc = square_restriction_conditions(&numerator)?;
    let tx1 = t.eval_y(&BigInt::one());
    let conditions = CertificateConditions {
        edge_parity: g.num_edges() % 2 == 0,
        sq10: sc.sq10,
        sq01: sc.sq01,
        vertex_parity: g.num_vertices() % 2 == 0,
        tx1_square: is_square_over_c(&tx1),
    };
    let verdict = if conditions.edge_parity && conditions.sq10 && conditions.sq01 {
        Verdict::Inconclusive
    } else {
        Verdict::CertifiedIrreducible
    };
    Ok(Certificate {
        graph: graph_id(g),
        vertices: g.num_vertices(),
        edges: g.num_edges(),
        h1: g.cycle_rank(),
        conditions,
        verdict,
    })
}

/// Result of an exhaustive certificate sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    /// Isomorphism classes enumerated within the bounds.
    pub examined: usize,
    /// Classes skipped by the planarity filter.
    pub skipped_nonplanar: usize,
    /// Classes whose certificate verdict is CertifiedIrreducible.
    pub certified: usize,
    /// Certificates with verdict Inconclusive — expected to be empty.
    pub inconclusive: Vec<Certificate>,
}

/// Run the irreducibility certificate over every 2-connected multigraph
/// within the bounds (one representative per isomorphism class, in
/// enumeration order), keeping only graphs that escape certification.
/// Workers split the graphs; the outcome is independent of worker count.
pub fn search_counterexamples(
    max_vertices: usize,
    max_edges: usize,
    simple_only: bool,
    planar_filter: bool,
) -> SearchOutcome {
    let graphs = enumerate_two_connected(max_vertices, max_edges, simple_only);
    let verdicts: Vec<Option<Certificate>> = graphs
        .par_iter()
        .map(|g| {
            if planar_filter && !is_planar(g) {
                None
            } else {
                Some(irreducibility_certificate(g).expect("enumerated graphs are 2-connected"))
            }
        })
        .collect();
    let mut outcome = SearchOutcome {
        examined: graphs.len(),
        skipped_nonplanar: 0,
        certified: 0,
        inconclusive: Vec::new(),
    };
    for cert in verdicts {
        match cert {
            None => outcome.skipped_nonplanar += 1,
            Some(c) if c.verdict == Verdict::CertifiedIrreducible => outcome.certified += 1,
            Some(c) => outcome.inconclusive.push(c),
        }
    }
    outcome
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, dipole};
    use num_traits::Signed;

    fn laurent(terms: &[(Vec<i64>, i64)]) -> LaurentPoly {
        let owned: Vec<(Vec<i64>, BigInt)> =
            terms.iter().map(|(e, c)| (e.clone(), BigInt::from(*c))).collect();
        LaurentPoly::from_terms(&VARS, &owned)
    }

    #[test]
    fn homfly_of_k2_is_one() {
        let k2 = MultiGraph::new(2, &[(0, 1)]).unwrap();
        let p = homfly_from_tutte(&k2).unwrap();
        assert!(p.is_one());
    }

    #[test]
    fn homfly_matches_fixed_values() {
        // expansions verified independently with exact rational arithmetic
        let dip2 = homfly_from_tutte(&dipole(2)).unwrap();
        assert_eq!(
            dip2,
            laurent(&[
                (vec![-1, 2, -1], -1),
                (vec![-1, 0, 1], -1),
                (vec![-2, 3, -1], -1),
                (vec![-2, 1, 1], 1),
            ])
        );

        let dip3 = homfly_from_tutte(&dipole(3)).unwrap();
        assert_eq!(
            dip3,
            laurent(&[
                (vec![-1, 3, -2], -1),
                (vec![-2, 4, -2], -2),
                (vec![-2, 2, 0], 3),
                (vec![-2, 0, 2], 1),
                (vec![-3, 5, -2], -1),
                (vec![-3, 3, 0], 3),
                (vec![-3, 1, 2], -2),
            ])
        );

        let c3 = homfly_from_tutte(&cycle(3)).unwrap();
        assert_eq!(
            c3,
            laurent(&[
                (vec![-1, 0, 1], -1),
                (vec![-2, 3, -1], 1),
                (vec![-2, 1, 1], 1),
                (vec![-3, 4, -1], 1),
                (vec![-3, 2, 1], -1),
            ])
        );

        let c4 = homfly_from_tutte(&cycle(4)).unwrap();
        assert_eq!(
            c4,
            laurent(&[
                (vec![-1, 0, 1], -1),
                (vec![-2, 1, 1], 1),
                (vec![-3, 4, -1], -1),
                (vec![-3, 2, 1], -1),
                (vec![-4, 5, -1], -1),
                (vec![-4, 3, 1], 1),
            ])
        );

        let k4 = homfly_from_tutte(&complete(4)).unwrap();
        assert_eq!(
            k4,
            laurent(&[
                (vec![-3, 6, -3], -1),
                (vec![-3, 0, 3], -1),
                (vec![-4, 7, -3], -3),
                (vec![-4, 5, -1], 6),
                (vec![-4, 3, 1], 4),
                (vec![-4, 1, 3], 3),
                (vec![-5, 8, -3], -3),
                (vec![-5, 6, -1], 12),
                (vec![-5, 4, 1], -7),
                (vec![-5, 2, 3], -6),
                (vec![-6, 9, -3], -1),
                (vec![-6, 7, -1], 6),
                (vec![-6, 5, 1], -11),
                (vec![-6, 3, 3], 6),
            ])
        );
    }

    #[test]
    fn homfly_homogeneous_on_enumerated_graphs() {
        for g in enumerate_two_connected(6, 7, false) {
            let p = homfly_from_tutte(&g).unwrap();
            assert!(!p.is_zero());
            assert!(p.is_homogeneous_of_degree(0));
            // Laurent-ness: a signed monomial unit can always be factored off
            let (normalized, unit) = p.unit_normalize().unwrap();
            assert_eq!(normalized.mul_monomial(&unit), p);
        }
    }

    #[test]
    fn homfly_rejects_bad_inputs() {
        let disconnected = MultiGraph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(homfly_from_tutte(&disconnected), Err(Error::Disconnected));
        let k1 = MultiGraph::new(1, &[]).unwrap();
        assert!(matches!(homfly_from_tutte(&k1), Err(Error::Malformed { .. })));
    }

    #[test]
    fn numerator_fixed_values() {
        // K2: T = x, numerator = x1 − x0, bidegree (1, 0)
        let k2 = MultiGraph::new(2, &[(0, 1)]).unwrap();
        let f = tutte_numerator(&k2).unwrap();
        assert_eq!(
            f,
            BiHomogPoly::from_terms(&[((0, 1, 0, 0), 1), ((1, 0, 0, 0), -1)]).unwrap()
        );
        assert_eq!(f.bidegree(), Some((1, 0)));

        // 2-edge dipole: T = x + y, numerator = −x0²y1 + 2·x0x1y1 − x1²y0
        let f = tutte_numerator(&dipole(2)).unwrap();
        assert_eq!(
            f,
            BiHomogPoly::from_terms(&[((2, 0, 0, 1), -1), ((1, 1, 0, 1), 2), ((0, 2, 1, 0), -1)])
                .unwrap()
        );
        assert_eq!(f.bidegree(), Some((2, 1)));

        // C3: T = x² + x + y
        let f = tutte_numerator(&cycle(3)).unwrap();
        assert_eq!(
            f,
            BiHomogPoly::from_terms(&[
                ((3, 0, 0, 1), 1),
                ((2, 1, 0, 1), -3),
                ((1, 2, 0, 1), 3),
                ((0, 3, 1, 0), -1),
            ])
            .unwrap()
        );
        assert_eq!(f.bidegree(), Some((3, 1)));

        assert_eq!(tutte_numerator(&complete(4)).unwrap().bidegree(), Some((6, 3)));
    }

    #[test]
    fn numerator_bidegree_on_enumerated_graphs() {
        for g in enumerate_two_connected(5, 7, false) {
            let f = tutte_numerator(&g).unwrap();
            assert_eq!(
                f.bidegree(),
                Some((g.num_edges() as u32, g.cycle_rank() as u32)),
                "bidegree mismatch for {}",
                graph_id(&g)
            );
        }
    }

    #[test]
    fn numerator_restrictions_of_c3() {
        let f = tutte_numerator(&cycle(3)).unwrap();
        // (y0,y1)=(0,1): x0³ − 3x0²x1 + 3x0x1² = x0 · (T at (1−x, 1) homogenized)
        let r01 = f.restrict_y01();
        assert_eq!(r01.degree, 3);
        assert_eq!(r01.dehom, UniPoly::from_i64(&[0, 3, -3, 1])); // x³−3x²+3x
        // (y0,y1)=(1,0): −x1³, dehomogenized to the constant −1
        let r10 = f.restrict_y10();
        assert_eq!(r10.degree, 3);
        assert_eq!(r10.dehom, UniPoly::from_i64(&[-1]));
    }

    #[test]
    fn squaring_identity_holds() {
        assert!(verify_squaring_identity());
    }

    #[test]
    fn squaring_identity_at_fixed_point() {
        // affine representative of ([1, 2], [1, 3])
        let composite =
            codomain_change_map().after(&link_substitution_map().after(&domain_change_map()));
        let target = squaring_map();
        let pt: [BigRational; 4] = [
            BigRational::from(BigInt::from(1)),
            BigRational::from(BigInt::from(2)),
            BigRational::from(BigInt::from(1)),
            BigRational::from(BigInt::from(3)),
        ];
        let lhs = composite.eval(&pt);
        let rhs = target.eval(&pt);
        for (l, r) in lhs.iter().zip(rhs.iter()) {
            assert!(!(l[0].is_zero() && l[1].is_zero()));
            assert!(projective_pair_equal(l, r));
        }
    }

    #[test]
    fn squaring_map_branch_counts() {
        // Over any field of characteristic 0, t ↦ t² has at most two roots
        // per value, so the preimages of J at ([x],[y0,y1]) are exactly
        // ([x],[±y0,y1]): two distinct points iff y0·y1 ≠ 0.
        let j = squaring_map();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..20 {
            let x0 = BigRational::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=9)));
            let x1 = BigRational::from(BigInt::from(1));
            let (y0, y1) = if trial < 15 {
                // generic point: y0·y1 ≠ 0
                (
                    BigRational::new(BigInt::from(rng.gen_range(1i64..=9)), BigInt::from(rng.gen_range(1i64..=9))),
                    BigRational::new(BigInt::from(rng.gen_range(1i64..=9)), BigInt::from(rng.gen_range(1i64..=9))),
                )
            } else if trial % 2 == 0 {
                (BigRational::zero(), BigRational::from(BigInt::from(1)))
            } else {
                (BigRational::from(BigInt::from(1)), BigRational::zero())
            };
            let p = [x0.clone(), x1.clone(), y0.clone(), y1.clone()];
            let q = [x0, x1, -y0.clone(), y1.clone()];
            let jp = j.eval(&p);
            let jq = j.eval(&q);
            // same image
            assert!(projective_pair_equal(&jp[0], &jq[0]));
            assert!(projective_pair_equal(&jp[1], &jq[1]));
            // distinct preimages exactly off the branch locus
            let distinct = !projective_pair_equal(&[p[2].clone(), p[3].clone()], &[q[2].clone(), q[3].clone()]);
            assert_eq!(distinct, !(y0.is_zero() || y1.is_zero()));
        }
    }

    #[test]
    fn boundary_restriction_examples() {
        // x + y → (2 − x, 1)
        let t = BivarPoly::from_terms(&[((1, 0), 1), ((0, 1), 1)]);
        let (full, top) = boundary_restrictions(&t).unwrap();
        assert_eq!(full, UniPoly::from_i64(&[2, -1]));
        assert_eq!(top, UniPoly::one());

        // T_C3 = x² + x + y → ((1−x)² + (1−x) + 1, 1)
        let t = BivarPoly::from_terms(&[((2, 0), 1), ((1, 0), 1), ((0, 1), 1)]);
        let (full, top) = boundary_restrictions(&t).unwrap();
        assert_eq!(full, UniPoly::from_i64(&[3, -3, 1]));
        assert_eq!(top, UniPoly::one());

        // t = y → (1, 1)
        let t = BivarPoly::from_terms(&[((0, 1), 1)]);
        let (full, top) = boundary_restrictions(&t).unwrap();
        assert_eq!(full, UniPoly::one());
        assert_eq!(top, UniPoly::one());

        assert_eq!(boundary_restrictions(&BivarPoly::zero()), Err(Error::ZeroInput));
    }

    #[test]
    fn square_condition_examples() {
        // F = x0·y0 + x1·y1: odd x-degree certifies the squared substitution
        let f = BiHomogPoly::from_terms(&[((1, 0, 1, 0), 1), ((0, 1, 0, 1), 1)]).unwrap();
        let sc = square_restriction_conditions(&f).unwrap();
        assert!(!sc.degree_even);
        // cross-check: x·y² + 1 is irreducible
        let squared = BivarPoly::from_terms(&[((1, 2), 1), ((0, 0), 1)]);
        assert!(crate::factor_multi::kronecker_factor(&squared).unwrap().is_irreducible());

        // F = x0²·y0 + x1²·y1: every condition holds, nothing is certified
        let f = BiHomogPoly::from_terms(&[((2, 0, 1, 0), 1), ((0, 2, 0, 1), 1)]).unwrap();
        let sc = square_restriction_conditions(&f).unwrap();
        assert!(sc.degree_even && sc.sq10 && sc.sq01);

        // numerator of C3: x-degree 3 is odd
        let f = tutte_numerator(&cycle(3)).unwrap();
        assert!(!square_restriction_conditions(&f).unwrap().degree_even);
    }

    #[test]
    fn odd_degree_numerators_have_irreducible_squared_substitution() {
        // When the x-bidegree is odd the squared substitution
        // F(x0, x1, y0², y1²), dehomogenized at x1 = y1 = 1, must be
        // irreducible; confirm by complete factorization.
        for g in enumerate_two_connected(4, 5, false) {
            if g.num_edges() % 2 == 0 {
                continue;
            }
            let f = tutte_numerator(&g).unwrap();
            let mut squared = BivarPoly::zero();
            for (&(i0, _, j0, _), c) in f.terms() {
                squared.add_term((i0, 2 * j0), c.clone());
            }
            let fac = crate::factor_multi::kronecker_factor(&squared).unwrap();
            assert!(
                fac.is_irreducible(),
                "squared substitution unexpectedly reducible for {}",
                graph_id(&g)
            );
        }
    }

    #[test]
    fn certificates_of_small_graphs() {
        let c3 = irreducibility_certificate(&cycle(3)).unwrap();
        assert_eq!(c3.verdict, Verdict::CertifiedIrreducible);
        assert!(!c3.conditions.edge_parity); // 3 edges
        assert_eq!((c3.vertices, c3.edges, c3.h1), (3, 3, 1));

        let c4 = irreducibility_certificate(&cycle(4)).unwrap();
        assert_eq!(c4.verdict, Verdict::CertifiedIrreducible);
        assert!(c4.conditions.edge_parity); // 4 edges: parity alone decides nothing
        assert!(!c4.conditions.sq01); // x0·(homogenized 3−3x+x²) has an odd x0 factor
        assert!(!c4.conditions.tx1_square); // x³+x²+x+1 is squarefree

        let k4 = irreducibility_certificate(&complete(4)).unwrap();
        assert_eq!(k4.verdict, Verdict::CertifiedIrreducible);
        assert!(k4.conditions.edge_parity);
        assert!(!k4.conditions.sq01); // x0³ factor, h1 = 3 odd
        assert!(!k4.conditions.tx1_square); // x³+3x²+6x+6 is squarefree

        let dip2 = irreducibility_certificate(&dipole(2)).unwrap();
        assert_eq!(dip2.verdict, Verdict::CertifiedIrreducible);

        let path = MultiGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(irreducibility_certificate(&path), Err(Error::NotTwoConnected));
    }

    #[test]
    fn certificate_serialization_keys() {
        let cert = irreducibility_certificate(&cycle(3)).unwrap();
        let v = serde_json::to_value(&cert).unwrap();
        let obj = v.as_object().unwrap();
        for key in ["graph", "|V|", "|E|", "h1", "conditions", "verdict"] {
            assert!(obj.contains_key(key), "missing key {key}");
        }
        let conds = obj["conditions"].as_object().unwrap();
        for key in ["edge_parity", "sq10", "sq01", "vertex_parity", "tx1_square"] {
            assert!(conds.contains_key(key), "missing condition key {key}");
        }
        assert_eq!(obj["verdict"], serde_json::json!("CertifiedIrreducible"));
        let back: Certificate = serde_json::from_value(v).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn search_results_in_small_ranges_are_frozen() {
        let out = search_counterexamples(3, 3, false, true);
        assert_eq!(out.examined, 3); // two dipoles and C3
        assert_eq!(out.certified, 3);
        assert!(out.inconclusive.is_empty());

        let out = search_counterexamples(4, 6, true, true);
        assert_eq!(out.examined, 4); // C3, C4, K4−e, K4
        assert_eq!(out.skipped_nonplanar, 0);
        assert_eq!(out.certified, 4);
        assert!(out.inconclusive.is_empty());

        // The smallest graph the certificate cannot decide is the triangle
        // with one edge of multiplicity four: |V| = 3, |E| = 6, h1 = 4.
        // Checked by hand and with an independent computer-algebra system:
        //   restriction at (y0,y1) = (1,0):  x1^6            (a square)
        //   restriction at (y0,y1) = (0,1):  x0^4*(x0-3x1)^2 (a square)
        //   T(x,1) = x^2 + 4x + 4 = (x+2)^2                  (a square)
        // Its link polynomial is nonetheless irreducible, so it is not a
        // counterexample to the conjecture — only undecided by these tests.
        let out = search_counterexamples(5, 8, false, true);
        assert_eq!(out.examined, 113);
        assert_eq!(out.skipped_nonplanar, 0);
        assert_eq!(out.certified, 112);
        assert_eq!(out.inconclusive.len(), 1);
        let hit = &out.inconclusive[0];
        assert_eq!(hit.graph, "v3:0-1,0-2,1-2,1-2,1-2,1-2");
        assert_eq!(hit.vertices, 3);
        assert_eq!(hit.edges, 6);
        assert_eq!(hit.h1, 4);
        assert!(hit.conditions.edge_parity && hit.conditions.sq10 && hit.conditions.sq01);
        assert_eq!(out.examined, out.certified + out.skipped_nonplanar + 1);

        let witness = MultiGraph::new(3, &[(0, 1), (0, 2), (1, 2), (1, 2), (1, 2), (1, 2)]).unwrap();
        let p = homfly_from_tutte(&witness).unwrap();
        assert!(crate::factor_multi::is_irreducible_laurent(&p).unwrap());
    }

    #[test]
    fn certificate_soundness_against_exact_factorization() {
        // CertifiedIrreducible must agree with the complete factorization
        // of the link polynomial (graphs small enough to factor directly).
        for g in enumerate_two_connected(4, 6, false) {
            let cert = irreducibility_certificate(&g).unwrap();
            if cert.verdict == Verdict::CertifiedIrreducible {
                let p = homfly_from_tutte(&g).unwrap();
                assert!(
                    crate::factor_multi::is_irreducible_laurent(&p).unwrap(),
                    "certificate wrong for {}",
                    graph_id(&g)
                );
            }
        }
    }

    #[test]
    fn bihomog_validation() {
        assert!(matches!(
            BiHomogPoly::from_terms(&[((1, 0, 0, 0), 1), ((0, 0, 1, 0), 1)]),
            Err(Error::NotBihomogeneous)
        ));
        // exact cancellation leaves zero, which is fine
        let z = BiHomogPoly::from_terms(&[((1, 0, 0, 0), 1), ((1, 0, 0, 0), -1)]).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.bidegree(), None);
        assert_eq!(square_restriction_conditions(&z), Err(Error::ZeroInput));
    }

    #[test]
    fn codomain_change_composes_to_identity() {
        // Σ⁻¹ ∘ Σ is the identity map on the affine chart
        let round = codomain_change_inverse().after(&codomain_change_map());
        let identity = RationalMapP1P1::new(
            BiHomogPoly::from_terms(&[((1, 0, 0, 0), 1)]).unwrap(),
            BiHomogPoly::from_terms(&[((0, 1, 0, 0), 1)]).unwrap(),
            BiHomogPoly::from_terms(&[((0, 0, 1, 0), 1)]).unwrap(),
            BiHomogPoly::from_terms(&[((0, 0, 0, 1), 1)]).unwrap(),
        )
        .unwrap();
        assert!(maps_projectively_equal(&round, &identity));
    }

    #[test]
    fn homfly_sign_convention_spot_check() {
        // exact rational evaluation of P_C3 at (x, y, z) = (2, 3, 5):
        // −z/x + y³/(x²z) + yz/x² + y⁴/(x³z) − y²z/x³ computed two ways
        let p = homfly_from_tutte(&cycle(3)).unwrap();
        let point = [
            BigRational::from(BigInt::from(2)),
            BigRational::from(BigInt::from(3)),
            BigRational::from(BigInt::from(5)),
        ];
        let got = p.evaluate(&point).unwrap();
        let expected = BigRational::new(BigInt::from(-5), BigInt::from(2))
            + BigRational::new(BigInt::from(27), BigInt::from(20))
            + BigRational::new(BigInt::from(15), BigInt::from(4))
            + BigRational::new(BigInt::from(81), BigInt::from(40))
            - BigRational::new(BigInt::from(45), BigInt::from(8));
        assert_eq!(got, expected);
        assert!(got.is_negative() == expected.is_negative());
    }
}
