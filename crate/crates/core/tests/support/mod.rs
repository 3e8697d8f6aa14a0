//! Shared helpers for the integration suites: an independent general-width
//! Riesz decomposition oracle, exhaustive unit enumeration, and seeded
//! random generators for algebras, elements, and unital matrices.

use std::collections::HashMap;

use dimea::ea::{Elem, FiniteEffectAlgebra};
use dimea::simplicial::{SimplicialEffectAlgebra, SimplicialMorphism};
use dimea::Int;
use num_traits::ToPrimitive;
use rand::Rng;

/// Decides the Riesz decomposition property at full width by brute force:
/// for every pair of equal-sum sequences of lengths up to `max_len`, a
/// refining matrix with those row and column sums is searched cell by cell.
/// Independent of the library's two-by-two check — different sequence
/// generation and a different search — so agreement is meaningful.
///
/// Returns the first failing pair of sequences, or `None` when every pair
/// refines.
pub fn general_rdp(
    e: &FiniteEffectAlgebra,
    max_len: usize,
) -> Option<(Vec<String>, Vec<String>)> {
    let elems: Vec<Elem> = e.elems().collect();

    // by_len[L - 1][s] lists every length-L sequence with iterated sum s.
    let mut by_len: Vec<HashMap<Elem, Vec<Vec<Elem>>>> = Vec::with_capacity(max_len);
    let mut first: HashMap<Elem, Vec<Vec<Elem>>> = HashMap::new();
    for &x in &elems {
        first.entry(x).or_default().push(vec![x]);
    }
    by_len.push(first);
    for _ in 2..=max_len {
        let prev = by_len.last().expect("at least one length");
        let mut next: HashMap<Elem, Vec<Vec<Elem>>> = HashMap::new();
        for (&s, seqs) in prev {
            for &x in &elems {
                if let Some(t) = e.oplus(s, x) {
                    for seq in seqs {
                        let mut longer = seq.clone();
                        longer.push(x);
                        next.entry(t).or_default().push(longer);
                    }
                }
            }
        }
        by_len.push(next);
    }

    let ids = |seq: &[Elem]| seq.iter().map(|&x| e.id(x).to_owned()).collect();
    for rows_len in 1..=max_len {
        for cols_len in 1..=max_len {
            for (s, rows_list) in &by_len[rows_len - 1] {
                let Some(cols_list) = by_len[cols_len - 1].get(s) else {
                    continue;
                };
                for rows in rows_list {
                    for cols in cols_list {
                        if !refinement_exists(e, &elems, rows, cols) {
                            return Some((ids(rows), ids(cols)));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Searches a matrix `c` with `⊕_j c_ij = rows[i]` and `⊕_i c_ij = cols[j]`.
fn refinement_exists(
    e: &FiniteEffectAlgebra,
    elems: &[Elem],
    rows: &[Elem],
    cols: &[Elem],
) -> bool {
    let mut row_rem = rows.to_vec();
    let mut col_rem = cols.to_vec();
    fill(e, elems, &mut row_rem, &mut col_rem, 0, 0)
}

/// Backtracking over cells in row-major order.  `row_rem`/`col_rem` hold
/// what is still unassigned of each row and column sum; the last cell of a
/// row and the cells of the last row are forced.
fn fill(
    e: &FiniteEffectAlgebra,
    elems: &[Elem],
    row_rem: &mut [Elem],
    col_rem: &mut [Elem],
    i: usize,
    j: usize,
) -> bool {
    let (m, n) = (row_rem.len(), col_rem.len());
    if i == m {
        let zero = e.zero();
        return col_rem.iter().all(|&c| c == zero);
    }
    let ord = e.order();
    let (ni, nj) = if j + 1 == n { (i + 1, 0) } else { (i, j + 1) };

    if j + 1 == n {
        // Last cell of the row: it must absorb the whole row remainder.
        let c = row_rem[i];
        let Some(col_rest) = ord.minus(col_rem[j], c) else {
            return false;
        };
        let (save_r, save_c) = (row_rem[i], col_rem[j]);
        row_rem[i] = e.zero();
        col_rem[j] = col_rest;
        if fill(e, elems, row_rem, col_rem, ni, nj) {
            return true;
        }
        row_rem[i] = save_r;
        col_rem[j] = save_c;
        return false;
    }
    if i + 1 == m {
        // Last row: each cell must absorb the whole column remainder.
        let c = col_rem[j];
        let Some(row_rest) = ord.minus(row_rem[i], c) else {
            return false;
        };
        let (save_r, save_c) = (row_rem[i], col_rem[j]);
        row_rem[i] = row_rest;
        col_rem[j] = e.zero();
        if fill(e, elems, row_rem, col_rem, ni, nj) {
            return true;
        }
        row_rem[i] = save_r;
        col_rem[j] = save_c;
        return false;
    }

    let candidates: Vec<usize> = ord
        .below(row_rem[i])
        .and(ord.below(col_rem[j]))
        .iter()
        .collect();
    for ix in candidates {
        let c = elems[ix];
        let Some(row_rest) = ord.minus(row_rem[i], c) else {
            continue;
        };
        let Some(col_rest) = ord.minus(col_rem[j], c) else {
            continue;
        };
        let (save_r, save_c) = (row_rem[i], col_rem[j]);
        row_rem[i] = row_rest;
        col_rem[j] = col_rest;
        if fill(e, elems, row_rem, col_rem, ni, nj) {
            return true;
        }
        row_rem[i] = save_r;
        col_rem[j] = save_c;
    }
    false
}

/// Every unit vector with nondecreasing entries ≥ 1 whose interval has at
/// most `max_size` elements, i.e. Π(uᵢ+1) ≤ max_size.  One representative
/// per isomorphism class: coordinate order is immaterial.
pub fn sorted_units(max_size: usize) -> Vec<Vec<Int>> {
    fn rec(prefix: &mut Vec<u64>, min: u64, size: usize, max_size: usize, out: &mut Vec<Vec<Int>>) {
        if !prefix.is_empty() {
            out.push(prefix.iter().map(|&x| Int::from(x)).collect());
        }
        let mut next = min;
        while size.saturating_mul(next as usize + 1) <= max_size {
            prefix.push(next);
            rec(prefix, next, size * (next as usize + 1), max_size, out);
            prefix.pop();
            next += 1;
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), 1, 1, max_size, &mut out);
    out
}

/// The number of elements of the interval `[0, u]`.
pub fn interval_size(unit: &[Int]) -> usize {
    unit.iter()
        .map(|u| (u + 1u32).to_usize().expect("desk-scale unit"))
        .product()
}

/// A random unit vector: `rank` entries in `1..=max_entry`.
pub fn random_unit(rng: &mut impl Rng, rank: usize, max_entry: u64) -> Vec<Int> {
    (0..rank)
        .map(|_| Int::from(rng.gen_range(1..=max_entry)))
        .collect()
}

/// A random morphism out of `source`: a `target_rank × source.rank` matrix
/// with entries in `0..=max_entry` and no zero row, whose target unit is
/// the image of the source unit (making it unital by construction).
pub fn random_morphism(
    rng: &mut impl Rng,
    source: &SimplicialEffectAlgebra,
    target_rank: usize,
    max_entry: u64,
) -> SimplicialMorphism {
    let cols = source.rank;
    let mut matrix: Vec<Vec<Int>> = Vec::with_capacity(target_rank);
    for _ in 0..target_rank {
        let mut row: Vec<Int> =
            (0..cols).map(|_| Int::from(rng.gen_range(0..=max_entry))).collect();
        if row.iter().all(|x| x == &Int::from(0u32)) {
            row[rng.gen_range(0..cols)] = Int::from(rng.gen_range(1..=max_entry));
        }
        matrix.push(row);
    }
    let target_unit: Vec<Int> = matrix
        .iter()
        .map(|row| row.iter().zip(&source.unit).map(|(a, b)| a * b).sum())
        .collect();
    let target = SimplicialEffectAlgebra::new(target_unit).expect("no zero rows, so positive");
    SimplicialMorphism::new(source.clone(), target, matrix).expect("unital by construction")
}

/// A uniformly random element of the interval `[0, u]`.
pub fn random_element(rng: &mut impl Rng, alg: &SimplicialEffectAlgebra) -> Vec<Int> {
    alg.unit
        .iter()
        .map(|u| {
            let cap = u.to_u64().expect("desk-scale unit");
            Int::from(rng.gen_range(0..=cap))
        })
        .collect()
}
