//! Morphisms and bimorphisms between finite effect algebras.

use super::{Elem, FiniteEffectAlgebra};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A total map preserving the unit and every defined sum.
#[derive(Debug, Clone)]
pub struct Morphism {
    pub source: Arc<FiniteEffectAlgebra>,
    pub target: Arc<FiniteEffectAlgebra>,
    /// `map[e.ix()]` is the image of `e`.
    pub map: Vec<Elem>,
}

impl Morphism {
    pub fn new(
        source: Arc<FiniteEffectAlgebra>,
        target: Arc<FiniteEffectAlgebra>,
        map: Vec<Elem>,
    ) -> Self {
        assert_eq!(map.len(), source.len(), "morphism map must be total");
        Morphism {
            source,
            target,
            map,
        }
    }

    /// Builds the map from identifier pairs, requiring totality.
    pub fn from_pairs(
        source: Arc<FiniteEffectAlgebra>,
        target: Arc<FiniteEffectAlgebra>,
        pairs: &BTreeMap<String, String>,
    ) -> Result<Self, String> {
        let mut map = vec![None; source.len()];
        for (from, to) in pairs {
            let e = source
                .element(from)
                .ok_or_else(|| format!("unknown source element `{from}`"))?;
            let h = target
                .element(to)
                .ok_or_else(|| format!("unknown target element `{to}`"))?;
            map[e.ix()] = Some(h);
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| format!("no image for `{}`", source.id(Elem(i as u32)))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Morphism {
            source,
            target,
            map,
        })
    }

    pub fn apply(&self, e: Elem) -> Elem {
        self.map[e.ix()]
    }

    /// Identifier-to-identifier view used by the JSON format
    /// `{"map": {"x": "y", ...}}`.
    pub fn to_pairs(&self) -> BTreeMap<String, String> {
        self.source
            .elems()
            .map(|e| {
                (
                    self.source.id(e).to_owned(),
                    self.target.id(self.apply(e)).to_owned(),
                )
            })
            .collect()
    }
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        *self.source == *other.source && *self.target == *other.target && self.map == other.map
    }
}

impl Eq for Morphism {}

/// Why a map fails to be a morphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum MorphismViolation {
    #[serde(rename = "unit-not-preserved")]
    UnitNotPreserved { image_of_one: String },
    /// `e ⊕ f` is defined in the source but the images have no sum.
    #[serde(rename = "sum-undefined")]
    SumUndefined { e: String, f: String },
    /// `e ⊕ f` is defined but maps to the wrong element.
    #[serde(rename = "sum-mismatch")]
    SumMismatch {
        e: String,
        f: String,
        expected: String,
        got: String,
    },
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismViolation::UnitNotPreserved { image_of_one } => {
                write!(f, "1 maps to {image_of_one}")
            }
            MorphismViolation::SumUndefined { e, f: q } => {
                write!(f, "{e} ⊕ {q} is defined but the image sum is not")
            }
            MorphismViolation::SumMismatch {
                e,
                f: q,
                expected,
                got,
            } => write!(f, "image of {e} ⊕ {q} is {got}, expected {expected}"),
        }
    }
}

/// Checks unit preservation and preservation of every defined sum.
/// `0 ↦ 0` is a consequence and is not checked separately.
pub fn validate_morphism(m: &Morphism) -> Vec<MorphismViolation> {
    let mut out = Vec::new();
    let (src, tgt) = (&*m.source, &*m.target);
    if m.apply(src.one()) != tgt.one() {
        out.push(MorphismViolation::UnitNotPreserved {
            image_of_one: tgt.id(m.apply(src.one())).to_owned(),
        });
    }
    for (x, y, z) in src.triples() {
        match tgt.oplus(m.apply(x), m.apply(y)) {
            None => out.push(MorphismViolation::SumUndefined {
                e: src.id(x).to_owned(),
                f: src.id(y).to_owned(),
            }),
            Some(w) if w != m.apply(z) => out.push(MorphismViolation::SumMismatch {
                e: src.id(x).to_owned(),
                f: src.id(y).to_owned(),
                expected: tgt.id(m.apply(z)).to_owned(),
                got: tgt.id(w).to_owned(),
            }),
            Some(_) => {}
        }
    }
    out
}

/// A map of two arguments, additive in each slot, sending `(1, 1)` to `1`.
#[derive(Debug, Clone)]
pub struct Bimorphism {
    pub left: Arc<FiniteEffectAlgebra>,
    pub right: Arc<FiniteEffectAlgebra>,
    pub target: Arc<FiniteEffectAlgebra>,
    /// Row-major over `(left, right)`: `map[e.ix() * right.len() + f.ix()]`.
    pub map: Vec<Elem>,
}

impl Bimorphism {
    pub fn apply(&self, e: Elem, f: Elem) -> Elem {
        self.map[e.ix() * self.right.len() + f.ix()]
    }
}

impl PartialEq for Bimorphism {
    fn eq(&self, other: &Self) -> bool {
        *self.left == *other.left
            && *self.right == *other.right
            && *self.target == *other.target
            && self.map == other.map
    }
}

impl Eq for Bimorphism {}

/// Why a two-argument map fails to be a bimorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum BimorphismViolation {
    #[serde(rename = "unit-pair")]
    UnitPair { image: String },
    /// Additivity fails in the named slot at the given sum instance.
    #[serde(rename = "slot-sum-undefined")]
    SlotSumUndefined {
        slot: &'static str,
        x: String,
        y: String,
        other: String,
    },
    #[serde(rename = "slot-sum-mismatch")]
    SlotSumMismatch {
        slot: &'static str,
        x: String,
        y: String,
        other: String,
        expected: String,
        got: String,
    },
}

impl fmt::Display for BimorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BimorphismViolation::UnitPair { image } => write!(f, "β(1, 1) = {image} ≠ 1"),
            BimorphismViolation::SlotSumUndefined { slot, x, y, other } => {
                write!(f, "{slot} slot: β({x}, ·) ⊕ β({y}, ·) undefined at {other}")
            }
            BimorphismViolation::SlotSumMismatch {
                slot,
                x,
                y,
                other,
                expected,
                got,
            } => write!(
                f,
                "{slot} slot: β({x} ⊕ {y}, {other}) = {expected} but the parts sum to {got}"
            ),
        }
    }
}

/// Checks slot-wise additivity on every defined sum against every element
/// of the other side, plus the unit pair condition.
pub fn validate_bimorphism(b: &Bimorphism) -> Vec<BimorphismViolation> {
    let mut out = Vec::new();
    let tgt = &*b.target;
    if b.apply(b.left.one(), b.right.one()) != tgt.one() {
        out.push(BimorphismViolation::UnitPair {
            image: tgt
                .id(b.apply(b.left.one(), b.right.one()))
                .to_owned(),
        });
    }
    for (x, y, z) in b.left.triples() {
        for q in b.right.elems() {
            match tgt.oplus(b.apply(x, q), b.apply(y, q)) {
                None => out.push(BimorphismViolation::SlotSumUndefined {
                    slot: "left",
                    x: b.left.id(x).to_owned(),
                    y: b.left.id(y).to_owned(),
                    other: b.right.id(q).to_owned(),
                }),
                Some(w) if w != b.apply(z, q) => {
                    out.push(BimorphismViolation::SlotSumMismatch {
                        slot: "left",
                        x: b.left.id(x).to_owned(),
                        y: b.left.id(y).to_owned(),
                        other: b.right.id(q).to_owned(),
                        expected: tgt.id(b.apply(z, q)).to_owned(),
                        got: tgt.id(w).to_owned(),
                    })
                }
                Some(_) => {}
            }
        }
    }
    for (x, y, z) in b.right.triples() {
        for p in b.left.elems() {
            match tgt.oplus(b.apply(p, x), b.apply(p, y)) {
                None => out.push(BimorphismViolation::SlotSumUndefined {
                    slot: "right",
                    x: b.right.id(x).to_owned(),
                    y: b.right.id(y).to_owned(),
                    other: b.left.id(p).to_owned(),
                }),
                Some(w) if w != b.apply(p, z) => {
                    out.push(BimorphismViolation::SlotSumMismatch {
                        slot: "right",
                        x: b.right.id(x).to_owned(),
                        y: b.right.id(y).to_owned(),
                        other: b.left.id(p).to_owned(),
                        expected: tgt.id(b.apply(p, z)).to_owned(),
                        got: tgt.id(w).to_owned(),
                    })
                }
                Some(_) => {}
            }
        }
    }
    out
}
