//! Generator tuples: finite, rationally independent families in (0, 1]
//! and the exact membership test for their nonnegative integer spans.

use crate::ratmat;
use crate::real::exact::{ExactReal, Radical};
use crate::real::RealError;
use crate::{Int, Rat};
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// The sorted union of the radicals appearing in the given numbers.
pub(crate) fn radical_basis(xs: &[ExactReal]) -> Vec<Radical> {
    let mut basis = BTreeSet::new();
    for x in xs {
        basis.extend(x.coords().keys().copied());
    }
    basis.into_iter().collect()
}

/// One row of rational coordinates per number, over the given basis.
pub(crate) fn coordinate_rows(xs: &[ExactReal], basis: &[Radical]) -> Vec<Vec<Rat>> {
    xs.iter()
        .map(|x| basis.iter().map(|r| x.coordinate(r)).collect())
        .collect()
}

pub(crate) fn independent(xs: &[ExactReal]) -> bool {
    let basis = radical_basis(xs);
    ratmat::rank(&coordinate_rows(xs, &basis)) == xs.len()
}

/// The weights expressing `y` as a nonnegative integer combination of an
/// independent family, or why none exist.
pub(crate) fn span_weights(
    gens: &[ExactReal],
    y: &ExactReal,
) -> Result<Vec<Int>, MembershipFailure> {
    let mut all = gens.to_vec();
    all.push(y.clone());
    let basis = radical_basis(&all);
    let rows = coordinate_rows(gens, &basis);
    // Solve with the generators as columns.
    let matrix: Vec<Vec<Rat>> = (0..basis.len())
        .map(|r| (0..gens.len()).map(|c| rows[c][r].clone()).collect())
        .collect();
    let rhs: Vec<Rat> = basis.iter().map(|r| y.coordinate(r)).collect();
    let solution = ratmat::solve(&matrix, &rhs).ok_or(MembershipFailure::NotInSpan)?;
    let mut weights = Vec::with_capacity(solution.len());
    for (index, q) in solution.iter().enumerate() {
        if !q.is_integer() {
            return Err(MembershipFailure::NonInteger {
                index,
                value: q.clone(),
            });
        }
        let n = q.to_integer();
        if n.is_negative() {
            return Err(MembershipFailure::Negative { index, value: n });
        }
        weights.push(n);
    }
    Ok(weights)
}

/// Why a number fails to lie in the nonnegative integer span of a tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipFailure {
    /// Not even a rational combination of the generators.
    NotInSpan,
    /// The unique rational combination has a non-integer weight.
    NonInteger { index: usize, value: Rat },
    /// The unique integer combination has a negative weight.
    Negative { index: usize, value: Int },
}

impl fmt::Display for MembershipFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MembershipFailure::NotInSpan => write!(f, "is not a rational combination"),
            MembershipFailure::NonInteger { index, value } => {
                write!(f, "needs weight {value} at position {index}, not an integer")
            }
            MembershipFailure::Negative { index, value } => {
                write!(f, "needs weight {value} at position {index}, negative")
            }
        }
    }
}

/// A strictly increasing, rationally independent tuple of exact reals in
/// (0, 1].  Tuples index the stages of the unit-interval system.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GeneratorTuple {
    entries: Vec<ExactReal>,
}

impl GeneratorTuple {
    pub fn new(entries: Vec<ExactReal>) -> Result<Self, RealError> {
        if entries.is_empty() {
            return Err(RealError::Empty);
        }
        let one = ExactReal::one();
        for (i, x) in entries.iter().enumerate() {
            if x.sign() != Ordering::Greater {
                return Err(RealError::NotPositive {
                    index: i,
                    value: x.to_string(),
                });
            }
            if x.compare(&one) == Ordering::Greater {
                return Err(RealError::AboveOne {
                    index: i,
                    value: x.to_string(),
                });
            }
        }
        for i in 1..entries.len() {
            if entries[i - 1].compare(&entries[i]) != Ordering::Less {
                return Err(RealError::NotSorted(i - 1, i));
            }
        }
        if !independent(&entries) {
            return Err(RealError::Dependent);
        }
        Ok(GeneratorTuple { entries })
    }

    /// Builds the tuple from any positive independent family by sorting
    /// it first.
    pub fn from_unsorted(mut entries: Vec<ExactReal>) -> Result<Self, RealError> {
        entries.sort();
        GeneratorTuple::new(entries)
    }

    pub fn from_literals(literals: &[&str]) -> Result<Self, RealError> {
        let entries = literals
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<ExactReal>, _>>()?;
        GeneratorTuple::new(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[ExactReal] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &ExactReal {
        &self.entries[i]
    }

    /// The weights expressing `y` in the nonnegative integer span of the
    /// tuple, unique by independence.
    pub fn membership(&self, y: &ExactReal) -> Result<Vec<Int>, MembershipFailure> {
        span_weights(&self.entries, y)
    }

    /// Whether every entry of `other` lies in this tuple's nonnegative
    /// integer span — the stage order of the unit-interval system.
    pub fn dominates(&self, other: &GeneratorTuple) -> bool {
        other
            .entries
            .iter()
            .all(|x| self.membership(x).is_ok())
    }

    /// The weights expressing 1, required strictly positive: this is the
    /// admissibility test for stage indices.
    pub fn unit_weights(&self) -> Result<Vec<Int>, RealError> {
        let weights = self
            .membership(&ExactReal::one())
            .map_err(|e| RealError::UnitNotPositive {
                tuple: self.to_string(),
                reason: e.to_string(),
            })?;
        if let Some(index) = weights.iter().position(Int::is_zero) {
            return Err(RealError::UnitNotPositive {
                tuple: self.to_string(),
                reason: format!("weight at position {index} is zero"),
            });
        }
        Ok(weights)
    }

    /// The exact value of a nonnegative integer combination of the
    /// entries.
    pub fn combine(&self, weights: &[Int]) -> ExactReal {
        let mut total = ExactReal::zero();
        for (w, x) in weights.iter().zip(&self.entries) {
            total = total.add(&x.scale(&Rat::from_integer(w.clone())));
        }
        total
    }
}

impl fmt::Display for GeneratorTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Serialized as an array of literals: `["1 - 1/2*sqrt2", "1/2*sqrt2"]`.
impl Serialize for GeneratorTuple {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let literals: Vec<String> = self.entries.iter().map(ExactReal::to_string).collect();
        literals.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GeneratorTuple {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let literals = Vec::<String>::deserialize(deserializer)?;
        let entries = literals
            .iter()
            .map(|s| s.parse().map_err(D::Error::custom))
            .collect::<Result<Vec<ExactReal>, _>>()?;
        GeneratorTuple::new(entries).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuple(literals: &[&str]) -> GeneratorTuple {
        GeneratorTuple::from_literals(literals).unwrap()
    }

    #[test]
    fn invariants_are_enforced() {
        assert!(matches!(
            GeneratorTuple::from_literals(&[]),
            Err(RealError::Empty)
        ));
        assert!(matches!(
            GeneratorTuple::from_literals(&["0"]),
            Err(RealError::NotPositive { .. })
        ));
        assert!(matches!(
            GeneratorTuple::from_literals(&["3/2"]),
            Err(RealError::AboveOne { .. })
        ));
        assert!(matches!(
            GeneratorTuple::from_literals(&["1/3", "1/2"]),
            Err(RealError::Dependent)
        ));
        assert!(matches!(
            GeneratorTuple::from_literals(&["sqrt2/2", "1 - sqrt2/2"]),
            Err(RealError::NotSorted(..))
        ));
        assert!(matches!(
            GeneratorTuple::from_literals(&["1/2", "1/2"]),
            Err(RealError::NotSorted(..))
        ));
        // The same family sorts fine.
        let t = tuple(&["1 - sqrt2/2", "sqrt2/2"]);
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn membership_computes_exact_weights() {
        let sixth = tuple(&["1/6"]);
        assert_eq!(sixth.membership(&"1/2".parse().unwrap()), Ok(vec![3.into()]));
        assert_eq!(sixth.membership(&"1".parse().unwrap()), Ok(vec![6.into()]));
        assert_eq!(
            sixth.membership(&"1/4".parse().unwrap()),
            Err(MembershipFailure::NonInteger {
                index: 0,
                value: Rat::new(3.into(), 2.into()),
            })
        );
        assert!(matches!(
            sixth.membership(&"-1/6".parse().unwrap()),
            Err(MembershipFailure::Negative { index: 0, .. })
        ));

        let mixed = tuple(&["1 - sqrt2/2", "sqrt2/2"]);
        assert_eq!(
            mixed.membership(&ExactReal::one()),
            Ok(vec![1.into(), 1.into()])
        );
        assert_eq!(
            mixed.membership(&"sqrt2/2".parse().unwrap()),
            Ok(vec![0.into(), 1.into()])
        );
        // 1/2 = 1/2·(1 - √2/2) + 1/2·(√2/2): rational but not integral.
        assert!(matches!(
            mixed.membership(&"1/2".parse().unwrap()),
            Err(MembershipFailure::NonInteger { .. })
        ));
        assert_eq!(
            mixed.membership(&"sqrt3".parse().unwrap()),
            Err(MembershipFailure::NotInSpan)
        );
    }

    #[test]
    fn unit_weights_demand_strict_positivity() {
        assert_eq!(tuple(&["1/3"]).unit_weights().unwrap(), vec![Int::from(3)]);
        assert_eq!(
            tuple(&["1 - sqrt2/2", "sqrt2/2"]).unit_weights().unwrap(),
            vec![Int::from(1), Int::from(1)]
        );
        // 1 is not an integer combination of (1/2, sqrt3/3).
        let t = tuple(&["1/2", "sqrt3/3"]);
        assert!(matches!(
            t.unit_weights(),
            Err(RealError::UnitNotPositive { .. })
        ));
    }

    #[test]
    fn domination_follows_expressibility() {
        let fine = tuple(&["1/6"]);
        let coarse = tuple(&["1/2"]);
        assert!(fine.dominates(&coarse));
        assert!(!coarse.dominates(&fine));
        assert!(fine.dominates(&fine));
    }

    #[test]
    fn combine_is_the_inverse_direction() {
        let t = tuple(&["1 - sqrt2/2", "sqrt2/2"]);
        let w = t.membership(&ExactReal::one()).unwrap();
        assert_eq!(t.combine(&w), ExactReal::one());
        assert_eq!(t.combine(&[Int::from(0), Int::from(1)]).to_string(), "1/2*sqrt2");
    }

    #[test]
    fn json_is_an_array_of_literals() {
        let t = tuple(&["1 - sqrt2/2", "sqrt2/2"]);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"["1 - 1/2*sqrt2","1/2*sqrt2"]"#);
        let back: GeneratorTuple = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        // Deserialization enforces the invariants.
        assert!(serde_json::from_str::<GeneratorTuple>(r#"["1/2","1/3"]"#).is_err());
    }
}
