//! Finite effect algebras as explicit partial sum tables.
//!
//! An algebra is given by a list of element identifiers, the two constants,
//! and a table of triples `x ⊕ y = z`.  Each unordered pair is stored once;
//! a file may list both orientations but they must agree, so commutativity
//! is a property of the storage rather than something to check.  Tables are
//! taken literally: `x ⊕ 0 = x` rows must be present in the input, the
//! validator reports their absence instead of inferring them.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::OnceLock;
use thiserror::Error;

mod enumerate;
mod morphism;
mod order;
mod riesz;
mod validate;

pub use enumerate::{enumerate_bimorphisms, enumerate_morphisms, EnumerationError};
pub use morphism::{
    validate_bimorphism, validate_morphism, Bimorphism, BimorphismViolation, Morphism,
    MorphismViolation,
};
pub use order::OrderData;
pub use riesz::{has_rdp, has_rip, RdpWitness, RipWitness};
pub use validate::{validate_axioms, AxiomReport, AxiomViolation};

/// Index of an element inside a [`FiniteEffectAlgebra`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}

/// Structural problems that make a table unusable before any axiom is
/// considered.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("duplicate element identifier `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}` referenced by {1}")]
    UnknownElement(String, &'static str),
    #[error("conflicting table entries: {x} ⊕ {y} given as both {z1} and {z2}")]
    ConflictingSum {
        x: String,
        y: String,
        z1: String,
        z2: String,
    },
    #[error("zero and one coincide but the algebra has {0} elements")]
    ZeroEqualsOne(usize),
    #[error("the algebra has no elements")]
    Empty,
}

/// A finite effect algebra presented as a partial sum table.
///
/// Immutable after construction; derived order data is computed lazily and
/// cached.  Element identifiers are opaque strings, all internal work uses
/// indices into the canonical element list.
pub struct FiniteEffectAlgebra {
    elements: Vec<String>,
    index: HashMap<String, u32>,
    zero: Elem,
    one: Elem,
    /// Keys are index pairs with `k.0 <= k.1`.
    sum: HashMap<(u32, u32), u32>,
    order: OnceLock<OrderData>,
}

impl FiniteEffectAlgebra {
    /// Builds an algebra from identifiers and sum triples given by name.
    ///
    /// Rejects duplicate identifiers, references to unknown elements,
    /// conflicting (including commutativity-conflicting) table entries, and
    /// `zero == one` on a table with more than one element.
    pub fn new(
        elements: Vec<String>,
        zero: &str,
        one: &str,
        triples: &[(String, String, String)],
    ) -> Result<Self, StructureError> {
        if elements.is_empty() {
            return Err(StructureError::Empty);
        }
        let mut index = HashMap::new();
        for (i, id) in elements.iter().enumerate() {
            if index.insert(id.clone(), i as u32).is_some() {
                return Err(StructureError::DuplicateElement(id.clone()));
            }
        }
        let look = |id: &str, role: &'static str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| StructureError::UnknownElement(id.to_owned(), role))
        };
        let zero = Elem(look(zero, "the zero designation")?);
        let one = Elem(look(one, "the one designation")?);
        if zero == one && elements.len() > 1 {
            return Err(StructureError::ZeroEqualsOne(elements.len()));
        }
        let mut sum = HashMap::new();
        for (x, y, z) in triples {
            let xi = look(x, "a sum triple")?;
            let yi = look(y, "a sum triple")?;
            let zi = look(z, "a sum triple")?;
            let key = (xi.min(yi), xi.max(yi));
            if let Some(&prev) = sum.get(&key) {
                if prev != zi {
                    return Err(StructureError::ConflictingSum {
                        x: x.clone(),
                        y: y.clone(),
                        z1: elements[prev as usize].clone(),
                        z2: z.clone(),
                    });
                }
            } else {
                sum.insert(key, zi);
            }
        }
        Ok(FiniteEffectAlgebra {
            elements,
            index,
            zero,
            one,
            sum,
            order: OnceLock::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // `new` rejects empty element lists
    }

    /// The one-element algebra where `0 = 1`.
    pub fn is_degenerate(&self) -> bool {
        self.zero == self.one
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn id(&self, e: Elem) -> &str {
        &self.elements[e.ix()]
    }

    pub fn element(&self, id: &str) -> Option<Elem> {
        self.index.get(id).copied().map(Elem)
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> + 'static {
        (0..self.elements.len() as u32).map(Elem)
    }

    /// The partial sum; `None` when `a ⊕ b` is undefined.
    pub fn oplus(&self, a: Elem, b: Elem) -> Option<Elem> {
        let key = (a.0.min(b.0), a.0.max(b.0));
        self.sum.get(&key).copied().map(Elem)
    }

    /// Folds `⊕` over the given elements, `None` if any partial sum is
    /// undefined.  The fold order is left to right, which is immaterial on
    /// valid algebras.
    pub fn oplus_all(&self, xs: &[Elem]) -> Option<Elem> {
        let mut acc = self.zero;
        for &x in xs {
            acc = self.oplus(acc, x)?;
        }
        Some(acc)
    }

    /// Sum triples with the pair normalized to ascending index order,
    /// sorted by index.
    pub fn triples(&self) -> Vec<(Elem, Elem, Elem)> {
        let mut out: Vec<_> = self
            .sum
            .iter()
            .map(|(&(x, y), &z)| (Elem(x), Elem(y), Elem(z)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Number of stored (unordered) sum entries.
    pub fn table_len(&self) -> usize {
        self.sum.len()
    }

    /// Derived order data (downsets, differences, atoms).  Meaningful on
    /// algebras passing [`validate_axioms`]; computed once and cached.
    pub fn order(&self) -> &OrderData {
        self.order.get_or_init(|| OrderData::build(self))
    }

    /// `a ≤ b` in the induced order: some `c` has `a ⊕ c = b`.
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.order().leq(a, b)
    }

    /// The unique `c` with `a ⊕ c = b`, when `a ≤ b`.
    pub fn minus(&self, b: Elem, a: Elem) -> Option<Elem> {
        self.order().minus(b, a)
    }

    /// The unique `x` with `a ⊕ x = 1`.
    pub fn orthosupplement(&self, a: Elem) -> Option<Elem> {
        self.order().minus(self.one, a)
    }

    /// Minimal nonzero elements in canonical order.
    pub fn atoms(&self) -> Vec<Elem> {
        self.order().atoms().to_vec()
    }

    /// Whether all binary meets and joins exist.
    pub fn is_lattice(&self) -> bool {
        self.order().is_lattice(self)
    }
}

impl Clone for FiniteEffectAlgebra {
    fn clone(&self) -> Self {
        FiniteEffectAlgebra {
            elements: self.elements.clone(),
            index: self.index.clone(),
            zero: self.zero,
            one: self.one,
            sum: self.sum.clone(),
            order: OnceLock::new(),
        }
    }
}

impl PartialEq for FiniteEffectAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
            && self.zero == other.zero
            && self.one == other.one
            && self.sum == other.sum
    }
}

impl Eq for FiniteEffectAlgebra {}

impl std::fmt::Debug for FiniteEffectAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteEffectAlgebra")
            .field("elements", &self.elements)
            .field("zero", &self.id(self.zero))
            .field("one", &self.id(self.one))
            .field("table_len", &self.sum.len())
            .finish()
    }
}

/// Wire format of an algebra table.
#[derive(Serialize, Deserialize)]
struct TableFile {
    elements: Vec<String>,
    zero: String,
    one: String,
    sum: Vec<(String, String, String)>,
}

impl FiniteEffectAlgebra {
    /// Parses the JSON table format:
    /// `{"elements": [...], "zero": "0", "one": "1", "sum": [["x","y","z"], ...]}`.
    pub fn from_json(s: &str) -> Result<Self, String> {
        let file: TableFile =
            serde_json::from_str(s).map_err(|e| format!("table file: {e}"))?;
        FiniteEffectAlgebra::new(file.elements, &file.zero, &file.one, &file.sum)
            .map_err(|e| format!("table file: {e}"))
    }

    /// Serializes to the JSON table format with sum triples sorted
    /// lexicographically by identifier, producing identical bytes for equal
    /// algebras.
    pub fn to_json(&self) -> String {
        let mut sum: Vec<(String, String, String)> = self
            .triples()
            .iter()
            .map(|&(x, y, z)| {
                let (a, b) = if self.id(x) <= self.id(y) {
                    (x, y)
                } else {
                    (y, x)
                };
                (
                    self.id(a).to_owned(),
                    self.id(b).to_owned(),
                    self.id(z).to_owned(),
                )
            })
            .collect();
        sum.sort();
        let file = TableFile {
            elements: self.elements.clone(),
            zero: self.id(self.zero).to_owned(),
            one: self.id(self.one).to_owned(),
            sum,
        };
        serde_json::to_string_pretty(&file).expect("table serialization cannot fail")
    }
}

/// Builders for the small standard algebras used throughout the tests and
/// the CLI examples.
pub mod catalog {
    use super::*;

    /// The chain `0 < 1 < … < n`, i.e. the interval `[0, n]` in `ℤ`.
    /// `chain(1)` is the two-element Boolean algebra.
    pub fn chain(n: u32) -> FiniteEffectAlgebra {
        let elements: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let mut triples = Vec::new();
        for a in 0..=n {
            for b in a..=n {
                if a + b <= n {
                    triples.push((a.to_string(), b.to_string(), (a + b).to_string()));
                }
            }
        }
        FiniteEffectAlgebra::new(elements, "0", &n.to_string(), &triples).unwrap()
    }

    /// The Boolean algebra `2^n` of subsets of an `n`-element set, with
    /// disjoint union as the sum.  Identifiers are bitmask strings.
    pub fn boolean(n: u32) -> FiniteEffectAlgebra {
        let size = 1u32 << n;
        let name = |m: u32| format!("{m:0width$b}", width = n as usize);
        let elements: Vec<String> = (0..size).map(name).collect();
        let mut triples = Vec::new();
        for a in 0..size {
            for b in a..size {
                if a & b == 0 {
                    triples.push((name(a), name(b), name(a | b)));
                }
            }
        }
        FiniteEffectAlgebra::new(elements, &name(0), &name(size - 1), &triples).unwrap()
    }

    /// The four-element algebra `{0, a, b, 1}` where `a ⊕ a = b ⊕ b = 1`
    /// and `a ⊕ b` is undefined.  A lattice with interpolation but without
    /// Riesz decomposition.
    pub fn diamond() -> FiniteEffectAlgebra {
        let elements = ["0", "a", "b", "1"].map(String::from).to_vec();
        let triples: Vec<(String, String, String)> = [
            ("0", "0", "0"),
            ("0", "a", "a"),
            ("0", "b", "b"),
            ("0", "1", "1"),
            ("a", "a", "1"),
            ("b", "b", "1"),
        ]
        .iter()
        .map(|&(x, y, z)| (x.to_owned(), y.to_owned(), z.to_owned()))
        .collect();
        FiniteEffectAlgebra::new(elements, "0", "1", &triples).unwrap()
    }

    /// The one-element algebra where `0 = 1`.
    pub fn degenerate() -> FiniteEffectAlgebra {
        FiniteEffectAlgebra::new(
            vec!["0".to_owned()],
            "0",
            "0",
            &[("0".to_owned(), "0".to_owned(), "0".to_owned())],
        )
        .unwrap()
    }
}
