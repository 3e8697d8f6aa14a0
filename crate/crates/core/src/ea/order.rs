//! The order induced by the partial sum: `a ≤ b` iff some `c` has
//! `a ⊕ c = b`.  On a valid algebra the witness `c` is unique, giving the
//! difference `b ⊖ a` and, with `b = 1`, the orthosupplement.

use super::{Elem, FiniteEffectAlgebra};
use crate::bits::Bits;
use std::collections::HashMap;

/// Precomputed order structure of a finite effect algebra.
///
/// Built once per algebra from the sum table; everything here is derived
/// data and meaningful on tables that pass axiom validation.
#[derive(Debug, Clone)]
pub struct OrderData {
    /// `below[b]` is the set of `a` with `a ≤ b`.
    below: Vec<Bits>,
    /// `above[a]` is the set of `b` with `a ≤ b`.
    above: Vec<Bits>,
    /// `(a, b) ↦ c` with `a ⊕ c = b`.
    diff: HashMap<(u32, u32), u32>,
    atoms: Vec<Elem>,
}

impl OrderData {
    pub(super) fn build(e: &FiniteEffectAlgebra) -> OrderData {
        let n = e.len();
        let mut below = vec![Bits::new(n); n];
        let mut above = vec![Bits::new(n); n];
        let mut diff = HashMap::new();
        for (x, y, z) in e.triples() {
            below[z.ix()].set(x.ix());
            below[z.ix()].set(y.ix());
            above[x.ix()].set(z.ix());
            above[y.ix()].set(z.ix());
            diff.entry((x.0, z.0)).or_insert(y.0);
            diff.entry((y.0, z.0)).or_insert(x.0);
        }
        // Atoms: minimal among the nonzero elements.
        let zero = e.zero().ix();
        let mut atoms = Vec::new();
        for a in 0..n {
            if a == zero {
                continue;
            }
            let has_smaller = below[a].iter().any(|x| x != a && x != zero);
            if !has_smaller {
                atoms.push(Elem(a as u32));
            }
        }
        OrderData {
            below,
            above,
            diff,
            atoms,
        }
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.below[b.ix()].get(a.ix())
    }

    /// The element `c` with `a ⊕ c = b`, if `a ≤ b`.
    pub fn minus(&self, b: Elem, a: Elem) -> Option<Elem> {
        self.diff.get(&(a.0, b.0)).copied().map(Elem)
    }

    /// Everything `≤ b`, as a bit set over element indices.
    pub fn below(&self, b: Elem) -> &Bits {
        &self.below[b.ix()]
    }

    /// Everything `≥ a`.
    pub fn above(&self, a: Elem) -> &Bits {
        &self.above[a.ix()]
    }

    pub fn atoms(&self) -> &[Elem] {
        &self.atoms
    }

    /// Whether every pair has a greatest lower and least upper bound.
    pub fn is_lattice(&self, e: &FiniteEffectAlgebra) -> bool {
        let n = e.len();
        for a in 0..n {
            for b in a..n {
                let lower = self.below[a].and(&self.below[b]);
                if !has_greatest(&lower, &self.below) {
                    return false;
                }
                let upper = self.above[a].and(&self.above[b]);
                if !has_least(&upper, &self.above) {
                    return false;
                }
            }
        }
        true
    }
}

/// Whether the set contains an element above all others in the set.
fn has_greatest(set: &Bits, below: &[Bits]) -> bool {
    set.iter().any(|c| set.subset_of(&below[c]))
}

/// Whether the set contains an element below all others in the set.
fn has_least(set: &Bits, above: &[Bits]) -> bool {
    set.iter().any(|c| set.subset_of(&above[c]))
}
