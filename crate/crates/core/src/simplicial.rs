//! Intervals `[0, u]` in `ℤⁿ` with coordinatewise order.
//!
//! The free abelian group `ℤⁿ` ordered by the positive cone `ℕⁿ` has an
//! order unit exactly when every coordinate is at least one, and the
//! interval below such a unit is a finite effect algebra: the sum of two
//! vectors is defined when it stays below the unit.  These algebras are
//! exactly the finite effect algebras with Riesz decomposition, which is
//! what [`recognize`] verifies from a bare table.

use crate::ea::{has_rdp, Elem, FiniteEffectAlgebra, RdpWitness};
use crate::jsonnum;
use crate::{Int, Limits};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("coordinate {index} of the unit is {value}, not an order unit")]
    NotOrderUnit { index: usize, value: Int },
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("vector {0} lies outside the interval")]
    OutOfInterval(String),
    #[error("the algebra has {count} elements, over the materialization bound {bound}")]
    TooLarge { count: Int, bound: usize },
    #[error("matrix entry at ({row}, {col}) is negative")]
    NegativeEntry { row: usize, col: usize },
    #[error("matrix sends the source unit to {got}, expected the target unit {expected}")]
    NotUnital { got: String, expected: String },
    #[error("table is not simplicial: {0}")]
    NotSimplicial(String),
    #[error("table fails Riesz decomposition: {0}")]
    NoDecomposition(RdpWitness),
}

/// The group `ℤⁿ` with the coordinatewise order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialGroup {
    pub rank: usize,
}

impl SimplicialGroup {
    /// Order units of `ℤⁿ` are the strictly positive vectors.
    pub fn is_order_unit(&self, v: &[Int]) -> bool {
        v.len() == self.rank && v.iter().all(|x| x > &Int::zero())
    }

    /// The effect algebra `[0, u]`, rejecting non-units.
    pub fn interval(&self, unit: Vec<Int>) -> Result<SimplicialEffectAlgebra, SimplicialError> {
        if unit.len() != self.rank {
            return Err(SimplicialError::RankMismatch {
                expected: self.rank,
                got: unit.len(),
            });
        }
        SimplicialEffectAlgebra::new(unit)
    }
}

/// The interval `[0, u]` in `ℤ^rank`, as an effect algebra.
///
/// Rank zero is allowed and gives the one-element degenerate algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialEffectAlgebra {
    pub rank: usize,
    #[serde(with = "jsonnum::vec")]
    pub unit: Vec<Int>,
}

impl SimplicialEffectAlgebra {
    /// Builds `[0, u]`, requiring every coordinate of `u` to be positive.
    pub fn new(unit: Vec<Int>) -> Result<Self, SimplicialError> {
        if let Some((i, v)) = unit.iter().enumerate().find(|(_, v)| **v < Int::one()) {
            return Err(SimplicialError::NotOrderUnit {
                index: i,
                value: v.clone(),
            });
        }
        Ok(SimplicialEffectAlgebra {
            rank: unit.len(),
            unit,
        })
    }

    pub fn from_json(s: &str) -> Result<Self, String> {
        let raw: SimplicialEffectAlgebra =
            serde_json::from_str(s).map_err(|e| format!("simplicial file: {e}"))?;
        if raw.rank != raw.unit.len() {
            return Err(format!(
                "simplicial file: rank {} does not match unit length {}",
                raw.rank,
                raw.unit.len()
            ));
        }
        SimplicialEffectAlgebra::new(raw.unit).map_err(|e| format!("simplicial file: {e}"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("simplicial serialization cannot fail")
    }

    /// The underlying group and its distinguished order unit.
    pub fn universal_group(&self) -> (SimplicialGroup, Vec<Int>) {
        (SimplicialGroup { rank: self.rank }, self.unit.clone())
    }

    pub fn zero(&self) -> Vec<Int> {
        vec![Int::zero(); self.rank]
    }

    pub fn contains(&self, z: &[Int]) -> bool {
        z.len() == self.rank
            && z.iter()
                .zip(&self.unit)
                .all(|(a, u)| a >= &Int::zero() && a <= u)
    }

    /// The partial sum: defined when the coordinatewise sum stays in the
    /// interval.
    pub fn oplus(&self, a: &[Int], b: &[Int]) -> Result<Option<Vec<Int>>, SimplicialError> {
        for (v, name) in [(a, "left"), (b, "right")] {
            if !self.contains(v) {
                let _ = name;
                return Err(SimplicialError::OutOfInterval(vector_id(v)));
            }
        }
        let sum: Vec<Int> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        Ok(if self.contains(&sum) { Some(sum) } else { None })
    }

    /// `Π (uᵢ + 1)`, the number of elements.
    pub fn count(&self) -> Int {
        self.unit
            .iter()
            .fold(Int::one(), |acc, u| acc * (u + Int::one()))
    }

    /// The standard basis vector `eᵢ`, an atom of the interval.
    pub fn atom(&self, i: usize) -> Vec<Int> {
        let mut v = self.zero();
        v[i] = Int::one();
        v
    }

    /// All elements in canonical order: counting order with the last
    /// coordinate varying fastest.
    pub fn elements(&self, limits: &Limits) -> Result<Vec<Vec<Int>>, SimplicialError> {
        let count = self.count();
        if count > Int::from(limits.materialize_max) {
            return Err(SimplicialError::TooLarge {
                count,
                bound: limits.materialize_max,
            });
        }
        let mut out = Vec::new();
        let mut cur = self.zero();
        loop {
            out.push(cur.clone());
            // Odometer step.
            let mut i = self.rank;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if cur[i] < self.unit[i] {
                    cur[i] += 1;
                    for x in cur.iter_mut().skip(i + 1) {
                        *x = Int::zero();
                    }
                    break;
                }
            }
        }
    }

    /// Position of `z` in the canonical enumeration.
    pub fn position(&self, z: &[Int]) -> Option<usize> {
        if !self.contains(z) {
            return None;
        }
        let mut pos = Int::zero();
        for (zi, ui) in z.iter().zip(&self.unit) {
            pos = pos * (ui + Int::one()) + zi;
        }
        usize::try_from(&pos).ok()
    }

    /// Expands the interval into an explicit sum table whose identifiers
    /// are the canonical vector strings.
    pub fn materialize(&self, limits: &Limits) -> Result<FiniteEffectAlgebra, SimplicialError> {
        let elements = self.elements(limits)?;
        let ids: Vec<String> = elements.iter().map(|z| vector_id(z)).collect();
        let mut triples = Vec::new();
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate().skip(i) {
                let sum: Vec<Int> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if self.contains(&sum) {
                    let k = self.position(&sum).expect("sum is in the interval");
                    triples.push((ids[i].clone(), ids[j].clone(), ids[k].clone()));
                }
            }
        }
        let zero = vector_id(&self.zero());
        let one = vector_id(&self.unit);
        Ok(FiniteEffectAlgebra::new(ids, &zero, &one, &triples)
            .expect("materialized tables are structurally well-formed"))
    }
}

/// Canonical identifier of a vector: `(z1,...,zn)` without spaces.
pub fn vector_id(z: &[Int]) -> String {
    let mut s = String::from("(");
    for (i, x) in z.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "{x}");
    }
    s.push(')');
    s
}

/// Parses the canonical vector identifier format.
pub fn parse_vector_id(s: &str) -> Option<Vec<Int>> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    if inner.is_empty() {
        return Some(Vec::new());
    }
    inner
        .split(',')
        .map(|t| t.trim().parse::<Int>().ok())
        .collect()
}

/// A positive, unital group homomorphism restricted to intervals: a matrix
/// with nonnegative integer entries sending the source unit to the target
/// unit.  Such a matrix automatically maps `[0, u]` into `[0, v]` and
/// preserves all defined sums.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialMorphism {
    pub source: SimplicialEffectAlgebra,
    pub target: SimplicialEffectAlgebra,
    /// `target.rank` rows by `source.rank` columns.
    #[serde(with = "jsonnum::mat")]
    pub matrix: Vec<Vec<Int>>,
}

impl SimplicialMorphism {
    pub fn new(
        source: SimplicialEffectAlgebra,
        target: SimplicialEffectAlgebra,
        matrix: Vec<Vec<Int>>,
    ) -> Result<Self, SimplicialError> {
        if matrix.len() != target.rank {
            return Err(SimplicialError::RankMismatch {
                expected: target.rank,
                got: matrix.len(),
            });
        }
        for (r, row) in matrix.iter().enumerate() {
            if row.len() != source.rank {
                return Err(SimplicialError::RankMismatch {
                    expected: source.rank,
                    got: row.len(),
                });
            }
            if let Some(c) = row.iter().position(|x| x < &Int::zero()) {
                return Err(SimplicialError::NegativeEntry { row: r, col: c });
            }
        }
        let image = mat_vec(&matrix, &source.unit);
        if image != target.unit {
            return Err(SimplicialError::NotUnital {
                got: vector_id(&image),
                expected: vector_id(&target.unit),
            });
        }
        Ok(SimplicialMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(alg: &SimplicialEffectAlgebra) -> Self {
        let n = alg.rank;
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Int::one() } else { Int::zero() })
                    .collect()
            })
            .collect();
        SimplicialMorphism {
            source: alg.clone(),
            target: alg.clone(),
            matrix,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.matrix.iter().enumerate().all(|(i, row)| {
                row.iter()
                    .enumerate()
                    .all(|(j, x)| *x == if i == j { Int::one() } else { Int::zero() })
            })
    }

    pub fn apply(&self, z: &[Int]) -> Result<Vec<Int>, SimplicialError> {
        if !self.source.contains(z) {
            return Err(SimplicialError::OutOfInterval(vector_id(z)));
        }
        Ok(mat_vec(&self.matrix, z))
    }

    /// `self ∘ inner`, requiring `inner.target == self.source`.
    pub fn compose(&self, inner: &SimplicialMorphism) -> Result<SimplicialMorphism, SimplicialError> {
        if inner.target != self.source {
            return Err(SimplicialError::RankMismatch {
                expected: self.source.rank,
                got: inner.target.rank,
            });
        }
        let matrix = mat_mul(&self.matrix, &inner.matrix);
        Ok(SimplicialMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix,
        })
    }
}

pub(crate) fn mat_vec(m: &[Vec<Int>], v: &[Int]) -> Vec<Int> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub(crate) fn mat_mul(a: &[Vec<Int>], b: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Result of recognizing a table as simplicial: the interval, together with
/// the verified coordinate map.
#[derive(Debug, Clone)]
pub struct Recognition {
    pub algebra: SimplicialEffectAlgebra,
    /// Atoms of the table in canonical order; atom `i` is the preimage of
    /// the basis vector `eᵢ`.
    pub atoms: Vec<Elem>,
    /// `coords[e.ix()]` is the coordinate vector of table element `e`.
    pub coords: Vec<Vec<Int>>,
}

/// Decides whether a valid table is the interval below an order unit in
/// some `ℤⁿ`, and if so returns the explicit isomorphism.
///
/// Finite algebras with Riesz decomposition are exactly the simplicial
/// ones, so on failure the returned error carries the decomposition
/// witness.  The basis is the atom list in canonical table order; the unit
/// coordinates are the multiplicities with which each atom occurs in `1`.
pub fn recognize(e: &FiniteEffectAlgebra) -> Result<Recognition, SimplicialError> {
    if let Some(w) = has_rdp(e) {
        return Err(SimplicialError::NoDecomposition(w));
    }
    let atoms = e.atoms();
    let n = atoms.len();
    // Coordinates: the multiplicity of atom i below x is the largest k with
    // k·aᵢ ≤ x.
    let mut coords = Vec::with_capacity(e.len());
    for x in e.elems() {
        let mut v = Vec::with_capacity(n);
        for &a in &atoms {
            let mut k = Int::zero();
            let mut multiple = a;
            while e.leq(multiple, x) {
                k += 1;
                match e.oplus(multiple, a) {
                    Some(next) => multiple = next,
                    None => break,
                }
            }
            v.push(k);
        }
        coords.push(v);
    }
    let unit = coords[e.one().ix()].clone();
    let algebra = SimplicialEffectAlgebra::new(unit)
        .map_err(|err| SimplicialError::NotSimplicial(format!("unit coordinates invalid: {err}")))?;
    // Verify the coordinate map is an isomorphism onto the interval.
    let count = algebra.count();
    if count != Int::from(e.len()) {
        return Err(SimplicialError::NotSimplicial(format!(
            "table has {} elements but the atom multiplicities give {}",
            e.len(),
            count
        )));
    }
    let mut seen = std::collections::HashSet::new();
    for (i, v) in coords.iter().enumerate() {
        if !algebra.contains(v) {
            return Err(SimplicialError::NotSimplicial(format!(
                "element {} maps outside the interval",
                e.id(Elem(i as u32))
            )));
        }
        if !seen.insert(v.clone()) {
            return Err(SimplicialError::NotSimplicial(format!(
                "coordinate map is not injective at {}",
                e.id(Elem(i as u32))
            )));
        }
    }
    for a in e.elems() {
        for b in e.elems() {
            let table_sum = e.oplus(a, b);
            let vec_sum: Vec<Int> = coords[a.ix()]
                .iter()
                .zip(&coords[b.ix()])
                .map(|(x, y)| x + y)
                .collect();
            match table_sum {
                Some(c) => {
                    if coords[c.ix()] != vec_sum {
                        return Err(SimplicialError::NotSimplicial(format!(
                            "coordinates are not additive at {} ⊕ {}",
                            e.id(a),
                            e.id(b)
                        )));
                    }
                }
                None => {
                    if algebra.contains(&vec_sum) {
                        return Err(SimplicialError::NotSimplicial(format!(
                            "{} ⊕ {} is undefined but the coordinates stay below the unit",
                            e.id(a),
                            e.id(b)
                        )));
                    }
                }
            }
        }
    }
    Ok(Recognition {
        algebra,
        atoms,
        coords,
    })
}
