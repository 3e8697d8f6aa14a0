//! Stages of the unit-interval system and the intensional directed
//! system built from them.
//!
//! A stage index is a generator tuple that expresses 1 with strictly
//! positive integer weights; its algebra is the integer interval below
//! those weights, and evaluation sends a lattice point to the exact real
//! it denotes.  Transitions re-express one stage's generators in a finer
//! stage.  The full system is intensional: indices are produced on
//! demand, never enumerated.

use crate::dirsys::{DirectedSystem, SystemError};
use crate::real::exact::ExactReal;
use crate::real::lemmas::merge;
use crate::real::tuple::GeneratorTuple;
use crate::real::RealError;
use crate::simplicial::{vector_id, SimplicialEffectAlgebra, SimplicialMorphism};
use crate::{Int, Rat};
use num_traits::{One, Zero};
use std::cmp::Ordering;

/// A stage: the interval algebra named by an admissible generator tuple.
#[derive(Debug, Clone)]
pub struct StageAlgebra {
    pub index: GeneratorTuple,
    /// The weights expressing 1, all strictly positive; also the unit of
    /// the interval.
    pub unit_weights: Vec<Int>,
    pub algebra: SimplicialEffectAlgebra,
}

pub fn stage(index: &GeneratorTuple) -> Result<StageAlgebra, RealError> {
    let unit_weights = index.unit_weights()?;
    let algebra = SimplicialEffectAlgebra::new(unit_weights.clone())
        .map_err(|e| RealError::Internal(format!("stage interval rejected its unit: {e}")))?;
    Ok(StageAlgebra {
        index: index.clone(),
        unit_weights,
        algebra,
    })
}

impl StageAlgebra {
    /// The exact real a stage element denotes.
    pub fn evaluate(&self, z: &[Int]) -> Result<ExactReal, RealError> {
        if !self.algebra.contains(z) {
            return Err(RealError::OutsideStage {
                vector: vector_id(z),
                tuple: self.index.to_string(),
            });
        }
        Ok(self.index.combine(z))
    }

    /// The stage element denoting an exact real, when one exists.  The
    /// weights must be nonnegative integers *and* lie below the unit:
    /// values expressible in the positive span can still overflow the
    /// interval.
    pub fn represent(&self, x: &ExactReal) -> Result<Vec<Int>, RealError> {
        let weights = self.index.membership(x).map_err(|e| RealError::OutsideStage {
            vector: format!("value {x} ({e})"),
            tuple: self.index.to_string(),
        })?;
        if !self.algebra.contains(&weights) {
            return Err(RealError::OutsideStage {
                vector: vector_id(&weights),
                tuple: self.index.to_string(),
            });
        }
        Ok(weights)
    }
}

/// The transition from the stage at `small` into the stage at `big`:
/// column `j` re-expresses the j-th generator of `small`.  Fails when
/// some generator of `small` is not a nonnegative integer combination of
/// `big`.
pub fn transition(
    big: &GeneratorTuple,
    small: &GeneratorTuple,
) -> Result<SimplicialMorphism, RealError> {
    let source = stage(small)?;
    let target = stage(big)?;
    let mut columns = Vec::with_capacity(small.len());
    for (index, x) in small.entries().iter().enumerate() {
        let weights = big.membership(x).map_err(|e| RealError::NotComparable {
            small: small.to_string(),
            big: big.to_string(),
            index,
            reason: e.to_string(),
        })?;
        columns.push(weights);
    }
    let matrix: Vec<Vec<Int>> = (0..big.len())
        .map(|r| (0..small.len()).map(|c| columns[c][r].clone()).collect())
        .collect();
    SimplicialMorphism::new(source.algebra, target.algebra, matrix)
        .map_err(|e| RealError::Internal(format!("transition is not unital: {e}")))
}

/// A point of the unit interval realized inside a concrete stage.
#[derive(Debug, Clone)]
pub struct Approximation {
    pub stage: StageAlgebra,
    pub element: Vec<Int>,
}

impl Approximation {
    pub fn value(&self) -> ExactReal {
        self.stage
            .evaluate(&self.element)
            .expect("an approximation's element lies in its stage")
    }
}

/// Realizes an exact real from [0, 1] inside a stage: rationals land in
/// the cyclic stage of their denominator, irrationals in the two-element
/// stage spanned by the value and its complement.
pub fn approximate(x: &ExactReal) -> Result<Approximation, RealError> {
    let one = ExactReal::one();
    if x.sign() == Ordering::Less || x.compare(&one) == Ordering::Greater {
        return Err(RealError::OutsideUnitInterval {
            value: x.to_string(),
        });
    }
    let (tuple, element) = match x.as_rational() {
        Some(q) => {
            let generator = ExactReal::from_rat(Rat::new(Int::one(), q.denom().clone()));
            let tuple = GeneratorTuple::new(vec![generator])?;
            (tuple, vec![q.numer().clone()])
        }
        None => {
            let complement = one.sub(x);
            let tuple = GeneratorTuple::from_unsorted(vec![x.clone(), complement])?;
            let element = tuple
                .entries()
                .iter()
                .map(|e| if e == x { Int::one() } else { Int::zero() })
                .collect();
            (tuple, element)
        }
    };
    Ok(Approximation {
        stage: stage(&tuple)?,
        element,
    })
}

/// The unit interval as an intensional directed system over stage
/// indices.  Upper bounds are computed by merging; nothing is
/// enumerated.
#[derive(Debug, Clone, Copy, Default)]
pub struct RealSystem;

impl DirectedSystem for RealSystem {
    type Index = GeneratorTuple;

    fn leq(&self, small: &GeneratorTuple, big: &GeneratorTuple) -> Result<bool, SystemError> {
        Ok(big.dominates(small))
    }

    fn upper_bound(
        &self,
        a: &GeneratorTuple,
        b: &GeneratorTuple,
    ) -> Result<GeneratorTuple, SystemError> {
        merge(a, b).map_err(|e| SystemError::Provider(e.to_string()))
    }

    fn algebra(&self, i: &GeneratorTuple) -> Result<SimplicialEffectAlgebra, SystemError> {
        stage(i)
            .map(|s| s.algebra)
            .map_err(|e| SystemError::Provider(e.to_string()))
    }

    fn transition(
        &self,
        big: &GeneratorTuple,
        small: &GeneratorTuple,
    ) -> Result<SimplicialMorphism, SystemError> {
        transition(big, small).map_err(|e| match e {
            RealError::NotComparable {
                small,
                big,
                index,
                reason,
            } => SystemError::NotComparable {
                small,
                big,
                detail: format!(": entry {index} {reason}"),
            },
            other => SystemError::Provider(other.to_string()),
        })
    }
}
