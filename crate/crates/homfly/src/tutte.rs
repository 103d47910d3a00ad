//! Tutte polynomials of multigraphs: a memoized deletion-contraction
//! computation, an independent oracle by direct rank-sum over edge subsets,
//! spanning-forest counts, and the one-variable face polynomial T(1-x, 1).

use num_bigint::BigInt;
use num_traits::One;
use std::collections::HashMap;

use crate::bivar::BivarPoly;
use crate::error::Error;
use crate::graph::{Dsu, MultiGraph};
use crate::unipoly::UniPoly;

/// Tutte polynomial by deletion-contraction with loop/bridge shortcuts,
/// memoized on the canonical form of each minor.
pub fn tutte(g: &MultiGraph) -> BivarPoly {
    let mut memo: HashMap<(usize, Vec<(usize, usize)>), BivarPoly> = HashMap::new();
    tutte_rec(&g.without_isolated(), &mut memo)
}

fn tutte_rec(
    g: &MultiGraph,
    memo: &mut HashMap<(usize, Vec<(usize, usize)>), BivarPoly>,
) -> BivarPoly {
    if g.num_edges() == 0 {
        return BivarPoly::one();
    }
    let key = g.canonical_form();
    if let Some(t) = memo.get(&key) {
        return t.clone();
    }

    // loops contribute y each
    let loops = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, &(u, v))| u == v)
        .map(|(i, _)| i)
        .collect::<Vec<_>>();
    let result = if !loops.is_empty() {
        let mut h = g.clone();
        for &i in loops.iter().rev() {
            h = h.delete_edge(i);
        }
        let mut y_pow = BivarPoly::one();
        for _ in 0..loops.len() {
            y_pow = y_pow.mul(&BivarPoly::from_terms(&[((0, 1), 1)]));
        }
        y_pow.mul(&tutte_rec(&h.without_isolated(), memo))
    } else {
        let bridges = g.bridges();
        if let Some(&b) = bridges.first() {
            // bridges contribute x each; contract one and recurse
            let x = BivarPoly::from_terms(&[((1, 0), 1)]);
            x.mul(&tutte_rec(&g.contract_edge(b).without_isolated(), memo))
        } else {
            // ordinary edge: delete + contract
            let d = tutte_rec(&g.delete_edge(0).without_isolated(), memo);
            let c = tutte_rec(&g.contract_edge(0).without_isolated(), memo);
            d.add(&c)
        }
    };
    memo.insert(key, result.clone());
    result
}

/// Independent oracle: the rank-sum formula
/// `T(x,y) = sum over A subset of E of (x-1)^(r(E)-r(A)) (y-1)^(|A|-r(A))`,
/// where r(A) = |V| - c(A). Counts are accumulated per exponent pair first,
/// then expanded. Guarded to at most 16 edges.
pub fn tutte_oracle(g: &MultiGraph) -> Result<BivarPoly, Error> {
    let g = g.without_isolated();
    let m = g.num_edges();
    if m > 16 {
        return Err(Error::BoundExceeded {
            detail: format!("rank-sum oracle limited to 16 edges, got {m}"),
        });
    }
    let n = g.num_vertices();
    let rank_full = n - g.components();
    // counts[(i, j)] = number of subsets with corank i, nullity j
    let mut counts: HashMap<(usize, usize), u64> = HashMap::new();
    for mask in 0u32..(1u32 << m) {
        let mut dsu = Dsu::new(n);
        let mut size = 0usize;
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if mask >> i & 1 == 1 {
                size += 1;
                dsu.union(u, v);
            }
        }
        let rank = n - dsu.count();
        *counts.entry((rank_full - rank, size - rank)).or_insert(0) += 1;
    }
    let xm1 = BivarPoly::from_terms(&[((1, 0), 1), ((0, 0), -1)]);
    let ym1 = BivarPoly::from_terms(&[((0, 1), 1), ((0, 0), -1)]);
    let mut acc = BivarPoly::zero();
    for ((i, j), c) in counts {
        let mut term = BivarPoly::constant(BigInt::from(c));
        for _ in 0..i {
            term = term.mul(&xm1);
        }
        for _ in 0..j {
            term = term.mul(&ym1);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Number of spanning forests with exactly j edges, for j = 0 .. r(E):
/// subsets of edges that are acyclic. Guarded to at most 16 edges.
pub fn forest_counts(g: &MultiGraph) -> Result<Vec<u64>, Error> {
    let g = g.without_isolated();
    let m = g.num_edges();
    if m > 16 {
        return Err(Error::BoundExceeded {
            detail: format!("forest enumeration limited to 16 edges, got {m}"),
        });
    }
    let n = g.num_vertices();
    let rank_full = n - g.components();
    let mut counts = vec![0u64; rank_full + 1];
    'subset: for mask in 0u32..(1u32 << m) {
        let mut dsu = Dsu::new(n);
        let mut size = 0usize;
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if mask >> i & 1 == 1 {
                if !dsu.union(u, v) {
                    continue 'subset; // cycle (covers loops too)
                }
                size += 1;
            }
        }
        counts[size] += 1;
    }
    Ok(counts)
}

/// The one-variable restriction T(1-x, 1) of the Tutte polynomial.
pub fn face_polynomial(t: &BivarPoly) -> UniPoly {
    t.eval_y(&BigInt::one()).compose_one_minus_x()
}
