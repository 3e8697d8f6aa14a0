//! Axiom validation with concrete witnesses.

use super::{Elem, FiniteEffectAlgebra};
use serde::Serialize;
use std::fmt;

/// One failed axiom instance, with the elements that witness the failure.
/// Identifiers are resolved to strings so reports survive serialization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum AxiomViolation {
    /// `x ⊕ 0 = x` is not in the table.  Required explicitly; tables are
    /// never completed by inference.
    #[serde(rename = "missing-zero-sum")]
    MissingZeroSum { x: String },
    /// `a ⊕ b` and `(a ⊕ b) ⊕ c` are defined but `b ⊕ c` or `a ⊕ (b ⊕ c)`
    /// is not.
    #[serde(rename = "associativity-undefined")]
    AssociativityUndefined { a: String, b: String, c: String },
    /// Both associations are defined but differ.
    #[serde(rename = "associativity-mismatch")]
    AssociativityMismatch {
        a: String,
        b: String,
        c: String,
        left: String,
        right: String,
    },
    /// No `x` with `a ⊕ x = 1`.
    #[serde(rename = "orthosupplement-missing")]
    OrthosupplementMissing { a: String },
    /// At least two distinct `x` with `a ⊕ x = 1`.
    #[serde(rename = "orthosupplement-not-unique")]
    OrthosupplementNotUnique {
        a: String,
        first: String,
        second: String,
    },
    /// `a ⊕ 1` is defined for some `a ≠ 0`.
    #[serde(rename = "sum-with-one")]
    SumWithOne { a: String },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::MissingZeroSum { x } => write!(f, "{x} ⊕ 0 is not in the table"),
            AxiomViolation::AssociativityUndefined { a, b, c } => write!(
                f,
                "({a} ⊕ {b}) ⊕ {c} is defined but the re-association is not"
            ),
            AxiomViolation::AssociativityMismatch {
                a,
                b,
                c,
                left,
                right,
            } => write!(f, "({a} ⊕ {b}) ⊕ {c} = {left} but {a} ⊕ ({b} ⊕ {c}) = {right}"),
            AxiomViolation::OrthosupplementMissing { a } => {
                write!(f, "{a} has no x with {a} ⊕ x = 1")
            }
            AxiomViolation::OrthosupplementNotUnique { a, first, second } => {
                write!(f, "{a} ⊕ {first} = 1 and {a} ⊕ {second} = 1")
            }
            AxiomViolation::SumWithOne { a } => write!(f, "{a} ⊕ 1 is defined but {a} ≠ 0"),
        }
    }
}

/// Result of [`validate_axioms`]: the empty report means the table is an
/// effect algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            write!(f, "valid")
        } else {
            writeln!(f, "{} violation(s):", self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  {v}")?;
            }
            Ok(())
        }
    }
}

/// Checks every axiom instance of the partial sum table exhaustively and
/// reports each failure with a witness.  Structural well-formedness is
/// already guaranteed by construction of [`FiniteEffectAlgebra`].
pub fn validate_axioms(e: &FiniteEffectAlgebra) -> AxiomReport {
    let mut violations = Vec::new();
    let n = e.len() as u32;
    let id = |x: Elem| e.id(x).to_owned();

    // Explicit x ⊕ 0 = x rows.
    for x in e.elems() {
        if e.oplus(x, e.zero()) != Some(x) {
            violations.push(AxiomViolation::MissingZeroSum { x: id(x) });
        }
    }

    // Associativity, over ordered defined pairs; commutativity itself is
    // structural, but both orientations of each stored pair participate.
    let mut ordered_pairs = Vec::with_capacity(2 * e.table_len());
    for (x, y, z) in e.triples() {
        ordered_pairs.push((x, y, z));
        if x != y {
            ordered_pairs.push((y, x, z));
        }
    }
    ordered_pairs.sort_unstable();
    for &(a, b, ab) in &ordered_pairs {
        for c in (0..n).map(Elem) {
            let Some(ab_c) = e.oplus(ab, c) else { continue };
            match e.oplus(b, c).and_then(|bc| e.oplus(a, bc)) {
                None => violations.push(AxiomViolation::AssociativityUndefined {
                    a: id(a),
                    b: id(b),
                    c: id(c),
                }),
                Some(a_bc) if a_bc != ab_c => {
                    violations.push(AxiomViolation::AssociativityMismatch {
                        a: id(a),
                        b: id(b),
                        c: id(c),
                        left: id(ab_c),
                        right: id(a_bc),
                    })
                }
                Some(_) => {}
            }
        }
    }

    // Existence and uniqueness of orthosupplements.
    for a in e.elems() {
        let mut sups = e.elems().filter(|&x| e.oplus(a, x) == Some(e.one()));
        match sups.next() {
            None => violations.push(AxiomViolation::OrthosupplementMissing { a: id(a) }),
            Some(first) => {
                if let Some(second) = sups.next() {
                    violations.push(AxiomViolation::OrthosupplementNotUnique {
                        a: id(a),
                        first: id(first),
                        second: id(second),
                    });
                }
            }
        }
    }

    // a ⊕ 1 defined forces a = 0.
    for a in e.elems() {
        if a != e.zero() && e.oplus(a, e.one()).is_some() {
            violations.push(AxiomViolation::SumWithOne { a: id(a) });
        }
    }

    AxiomReport { violations }
}
