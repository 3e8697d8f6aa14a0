//! Complete enumeration of morphisms and bimorphisms by constraint search.
//!
//! Both searches share one engine: variables take values in the target
//! algebra, and every instantiated sum `x_a ⊕ x_b = x_c` acts as a
//! propagator.  Whenever two of the three values are known the third is
//! forced — by the sum or, using cancellativity of valid targets, by the
//! difference — so branching effectively happens only on generators.
//! Branching follows the canonical variable order and tries target elements
//! in canonical order, which makes the output order deterministic.

use super::{Bimorphism, Elem, FiniteEffectAlgebra, Morphism};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("search space {size} exceeds the configured bound {bound}")]
    SizeLimit { size: usize, bound: usize },
}

/// A sum constraint `x_a ⊕ x_b = x_c` over variable indices.
#[derive(Clone, Copy)]
struct SumTriple {
    a: u32,
    b: u32,
    c: u32,
}

struct Csp<'t> {
    target: &'t FiniteEffectAlgebra,
    vars: usize,
    triples: Vec<SumTriple>,
    /// Variable index → indices of triples mentioning it.
    touching: Vec<Vec<u32>>,
}

impl<'t> Csp<'t> {
    fn new(target: &'t FiniteEffectAlgebra, vars: usize, triples: Vec<SumTriple>) -> Self {
        let mut touching = vec![Vec::new(); vars];
        for (ti, t) in triples.iter().enumerate() {
            for v in [t.a, t.b, t.c] {
                let list = &mut touching[v as usize];
                if list.last() != Some(&(ti as u32)) {
                    list.push(ti as u32);
                }
            }
        }
        Csp {
            target,
            vars,
            triples,
            touching,
        }
    }

    /// Assigns `var = value` and propagates to a fixpoint.  Returns false on
    /// contradiction.  Newly forced assignments are appended to `state`.
    fn assign(&self, state: &mut Vec<Option<Elem>>, var: u32, value: Elem) -> bool {
        let mut queue = vec![(var, value)];
        while let Some((v, val)) = queue.pop() {
            match state[v as usize] {
                Some(prev) if prev == val => continue,
                Some(_) => return false,
                None => state[v as usize] = Some(val),
            }
            for &ti in &self.touching[v as usize] {
                let t = self.triples[ti as usize];
                let (xa, xb, xc) = (
                    state[t.a as usize],
                    state[t.b as usize],
                    state[t.c as usize],
                );
                match (xa, xb, xc) {
                    (Some(a), Some(b), known_c) => match self.target.oplus(a, b) {
                        None => return false,
                        Some(c) => match known_c {
                            Some(c0) if c0 != c => return false,
                            Some(_) => {}
                            None => queue.push((t.c, c)),
                        },
                    },
                    (Some(a), None, Some(c)) => match self.target.minus(c, a) {
                        None => return false,
                        Some(b) => queue.push((t.b, b)),
                    },
                    (None, Some(b), Some(c)) => match self.target.minus(c, b) {
                        None => return false,
                        Some(a) => queue.push((t.a, a)),
                    },
                    _ => {}
                }
            }
        }
        true
    }

    fn satisfied(&self, state: &[Option<Elem>]) -> bool {
        self.triples.iter().all(|t| {
            let (a, b, c) = (
                state[t.a as usize].unwrap(),
                state[t.b as usize].unwrap(),
                state[t.c as usize].unwrap(),
            );
            self.target.oplus(a, b) == Some(c)
        })
    }

    /// Depth-first enumeration of all completions of `seed`.
    fn solve(&self, seed: &[(u32, Elem)]) -> Vec<Vec<Elem>> {
        let mut state: Vec<Option<Elem>> = vec![None; self.vars];
        for &(v, val) in seed {
            if !self.assign(&mut state, v, val) {
                return Vec::new();
            }
        }
        let values: Vec<Elem> = self.target.elems().collect();
        let mut out = Vec::new();
        self.search(state, &values, &mut out);
        out
    }

    fn search(&self, state: Vec<Option<Elem>>, values: &[Elem], out: &mut Vec<Vec<Elem>>) {
        match state.iter().position(|s| s.is_none()) {
            None => {
                if self.satisfied(&state) {
                    out.push(state.into_iter().map(Option::unwrap).collect());
                }
            }
            Some(v) => {
                for &val in values {
                    let mut next = state.clone();
                    if self.assign(&mut next, v as u32, val) {
                        self.search(next, values, out);
                    }
                }
            }
        }
    }
}

/// Instantiates the sum table of `alg` as constraints over variables given
/// by `var`, which maps each element to its variable index.
fn table_constraints(
    alg: &FiniteEffectAlgebra,
    var: impl Fn(Elem) -> u32,
    out: &mut Vec<SumTriple>,
) {
    for (x, y, z) in alg.triples() {
        out.push(SumTriple {
            a: var(x),
            b: var(y),
            c: var(z),
        });
    }
}

/// Enumerates every morphism from `source` to `target`, in canonical order.
///
/// `seed` pins chosen elements to chosen images before the search starts,
/// which is how factorization uniqueness is checked: seed the generators
/// and count completions.  Both algebras must be valid; the search space
/// `|source| · |target|` must stay within `bound`.
pub fn enumerate_morphisms(
    source: &Arc<FiniteEffectAlgebra>,
    target: &Arc<FiniteEffectAlgebra>,
    seed: &[(Elem, Elem)],
    bound: usize,
) -> Result<Vec<Morphism>, EnumerationError> {
    let size = source.len().saturating_mul(target.len());
    if size > bound {
        return Err(EnumerationError::SizeLimit { size, bound });
    }
    let mut triples = Vec::new();
    table_constraints(source, |e| e.0, &mut triples);
    let csp = Csp::new(target, source.len(), triples);
    let mut pinned = vec![
        (source.zero().0, target.zero()),
        (source.one().0, target.one()),
    ];
    pinned.extend(seed.iter().map(|&(e, h)| (e.0, h)));
    Ok(csp
        .solve(&pinned)
        .into_iter()
        .map(|map| Morphism::new(source.clone(), target.clone(), map))
        .collect())
}

/// Enumerates every bimorphism `left × right → target`, in canonical order.
///
/// All three algebras must be valid and the product of their sizes must stay
/// within `bound`.
pub fn enumerate_bimorphisms(
    left: &Arc<FiniteEffectAlgebra>,
    right: &Arc<FiniteEffectAlgebra>,
    target: &Arc<FiniteEffectAlgebra>,
    bound: usize,
) -> Result<Vec<Bimorphism>, EnumerationError> {
    let size = left
        .len()
        .saturating_mul(right.len())
        .saturating_mul(target.len());
    if size > bound {
        return Err(EnumerationError::SizeLimit { size, bound });
    }
    let m = right.len() as u32;
    let var = |e: Elem, f: Elem| e.0 * m + f.0;
    let mut triples = Vec::new();
    for q in right.elems() {
        table_constraints(left, |e| var(e, q), &mut triples);
    }
    for p in left.elems() {
        for (x, y, z) in right.triples() {
            triples.push(SumTriple {
                a: var(p, x),
                b: var(p, y),
                c: var(p, z),
            });
        }
    }
    let csp = Csp::new(target, left.len() * right.len(), triples);
    // β(0, ·) = β(·, 0) = 0 are consequences of additivity; seeding them
    // avoids pointless branching.
    let mut seed = vec![(var(left.one(), right.one()), target.one())];
    for q in right.elems() {
        seed.push((var(left.zero(), q), target.zero()));
    }
    for p in left.elems() {
        seed.push((var(p, right.zero()), target.zero()));
    }
    Ok(csp
        .solve(&seed)
        .into_iter()
        .map(|map| Bimorphism {
            left: left.clone(),
            right: right.clone(),
            target: target.clone(),
            map,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ea::{catalog, validate_bimorphism, validate_morphism};

    const BOUND: usize = 4096;

    #[test]
    fn the_two_element_boolean_admits_exactly_one_self_bimorphism() {
        let c1 = Arc::new(catalog::chain(1));
        let bs = enumerate_bimorphisms(&c1, &c1, &c1, BOUND).unwrap();
        assert_eq!(bs.len(), 1);
        assert!(validate_bimorphism(&bs[0]).is_empty());
    }

    #[test]
    fn no_bimorphism_squashes_a_three_chain_into_itself() {
        // β(1,1) would have to be an element whose fourfold sum is 1.
        let c2 = Arc::new(catalog::chain(2));
        let bs = enumerate_bimorphisms(&c2, &c2, &c2, BOUND).unwrap();
        assert!(bs.is_empty());
    }

    #[test]
    fn multiplication_is_the_only_bimorphism_into_the_full_chain() {
        let c2 = Arc::new(catalog::chain(2));
        let c3 = Arc::new(catalog::chain(3));
        let c6 = Arc::new(catalog::chain(6));
        let bs = enumerate_bimorphisms(&c2, &c3, &c6, BOUND).unwrap();
        assert_eq!(bs.len(), 1);
        let atom_l = c2.element("1").unwrap();
        let atom_r = c3.element("1").unwrap();
        assert_eq!(bs[0].apply(atom_l, atom_r), c6.element("1").unwrap());
    }

    #[test]
    fn every_algebra_has_exactly_one_bimorphism_into_the_degenerate_target() {
        let d = Arc::new(catalog::degenerate());
        let c3 = Arc::new(catalog::chain(3));
        let b2 = Arc::new(catalog::boolean(2));
        let bs = enumerate_bimorphisms(&c3, &b2, &d, BOUND).unwrap();
        assert_eq!(bs.len(), 1);
    }

    #[test]
    fn morphism_enumeration_respects_seeds() {
        let c2 = Arc::new(catalog::chain(2));
        let c4 = Arc::new(catalog::chain(4));
        let all = enumerate_morphisms(&c2, &c4, &[], BOUND).unwrap();
        // The atom can go to 0, 1 or 2 (its double must reach 4 ... it must
        // satisfy 2·image = 4), so only image 2 works.
        assert_eq!(all.len(), 1);
        assert!(validate_morphism(&all[0]).is_empty());
        let forced = enumerate_morphisms(
            &c2,
            &c4,
            &[(c2.element("1").unwrap(), c4.element("1").unwrap())],
            BOUND,
        )
        .unwrap();
        assert!(forced.is_empty());
    }

    #[test]
    fn boolean_self_morphisms_are_the_atom_bijections_and_collapses() {
        // Maps 2² → 2² preserving sums: images of the two atoms must sum to
        // 1, so either the identity, the swap, or sending one atom to 0 and
        // the other to 1.
        let b2 = Arc::new(catalog::boolean(2));
        let ms = enumerate_morphisms(&b2, &b2, &[], BOUND).unwrap();
        assert_eq!(ms.len(), 4);
        for m in &ms {
            assert!(validate_morphism(m).is_empty());
        }
    }

    #[test]
    fn size_limit_is_enforced() {
        let c9 = Arc::new(catalog::chain(9));
        let err = enumerate_bimorphisms(&c9, &c9, &c9, 64).unwrap_err();
        assert!(matches!(err, EnumerationError::SizeLimit { size: 1000, bound: 64 }));
    }

    #[test]
    fn diamond_pairs_need_a_divisible_target() {
        // Into the diamond itself nothing works: β(1, a) would need an
        // element with 2x = 1 that itself halves again, and a, b have no
        // halves.  Into the chain [0, 4] the constant atom-image 1 works.
        let d = Arc::new(catalog::diamond());
        assert!(enumerate_bimorphisms(&d, &d, &d, BOUND).unwrap().is_empty());
        let c4 = Arc::new(catalog::chain(4));
        let bs = enumerate_bimorphisms(&d, &d, &c4, BOUND).unwrap();
        assert!(!bs.is_empty());
        for b in &bs {
            assert!(validate_bimorphism(b).is_empty());
        }
        let a = d.element("a").unwrap();
        let one_of_four = c4.element("1").unwrap();
        assert!(bs.iter().any(|b| b.apply(a, a) == one_of_four));
    }
}
