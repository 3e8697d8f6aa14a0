//! Directed systems of interval effect algebras and their finite-stage
//! direct limits.
//!
//! A system assigns an interval algebra to every index of a directed
//! preorder and a transition morphism to every comparable pair, subject to
//! the identity and composition laws.  Direct limits are never materialized:
//! limit elements are `(index, vector)` representatives compared by pushing
//! both to a common upper bound, which the composition law makes
//! independent of the chosen bound.

use crate::ea::{Elem, FiniteEffectAlgebra, Morphism};
use crate::simplicial::{
    vector_id, SimplicialEffectAlgebra, SimplicialError, SimplicialMorphism,
};
use crate::tensor::{tensor_morphisms, tensor_simplicial};
use crate::{Int, Limits};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SystemError {
    #[error("unknown index `{0}`")]
    UnknownIndex(String),
    #[error("no transition stored for `{big} <- {small}`")]
    MissingTransition { big: String, small: String },
    #[error("indices `{a}` and `{b}` have no common upper bound")]
    NoUpperBound { a: String, b: String },
    #[error("`{small}` is not below `{big}`{detail}")]
    NotComparable {
        small: String,
        big: String,
        detail: String,
    },
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error("{0}")]
    Provider(String),
}

/// A directed system: a directed preorder of indices, an interval algebra
/// per index, and a transition morphism per comparable pair.
///
/// `transition(big, small)` is the morphism from the algebra at `small`
/// into the algebra at `big`; implementations must make it deterministic.
pub trait DirectedSystem {
    type Index: Clone + Eq + Ord + fmt::Debug + fmt::Display;

    fn leq(&self, small: &Self::Index, big: &Self::Index) -> Result<bool, SystemError>;

    /// A deterministic common upper bound of the pair.
    fn upper_bound(
        &self,
        a: &Self::Index,
        b: &Self::Index,
    ) -> Result<Self::Index, SystemError>;

    fn algebra(&self, i: &Self::Index) -> Result<SimplicialEffectAlgebra, SystemError>;

    fn transition(
        &self,
        big: &Self::Index,
        small: &Self::Index,
    ) -> Result<SimplicialMorphism, SystemError>;
}

/// A representative of a direct-limit element: a vector at a stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitElement<I> {
    pub index: I,
    pub value: Vec<Int>,
}

/// Whether two representatives describe the same limit element: their
/// images at the system's common upper bound coincide.  The composition
/// law makes the choice of bound immaterial on valid systems.
pub fn limit_eq<S: DirectedSystem>(
    sys: &S,
    x: &LimitElement<S::Index>,
    y: &LimitElement<S::Index>,
) -> Result<bool, SystemError> {
    let k = sys.upper_bound(&x.index, &y.index)?;
    let fx = sys.transition(&k, &x.index)?.apply(&x.value)?;
    let fy = sys.transition(&k, &y.index)?.apply(&y.value)?;
    Ok(fx == fy)
}

/// The partial sum of two limit elements: push both to the common upper
/// bound and add there.  `Ok(None)` means the sum is undefined (it
/// overflows the stage unit); `Err` means the inputs were invalid.
pub fn limit_oplus<S: DirectedSystem>(
    sys: &S,
    x: &LimitElement<S::Index>,
    y: &LimitElement<S::Index>,
) -> Result<Option<LimitElement<S::Index>>, SystemError> {
    let k = sys.upper_bound(&x.index, &y.index)?;
    let fx = sys.transition(&k, &x.index)?.apply(&x.value)?;
    let fy = sys.transition(&k, &y.index)?.apply(&y.value)?;
    let alg = sys.algebra(&k)?;
    Ok(alg
        .oplus(&fx, &fy)?
        .map(|value| LimitElement { index: k, value }))
}

/// One defect found by [`validate_system`].
#[derive(Debug, Clone)]
pub enum SystemViolation {
    /// `f_ii` is not the identity matrix.
    ReflexiveNotIdentity { index: String },
    /// `f_ij ∘ f_jm ≠ f_im` on a sampled chain `m ≤ j ≤ i`.
    CompositionMismatch {
        top: String,
        mid: String,
        bottom: String,
    },
    /// The provider's upper bound is not above one of its arguments.
    UpperBoundNotAbove { a: String, b: String, bound: String },
    /// The provider failed to produce a bound, an algebra, or a transition.
    ProviderFailure { detail: String },
    /// A transition's endpoint algebras disagree with the stage algebras.
    EndpointMismatch { big: String, small: String },
}

impl fmt::Display for SystemViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemViolation::ReflexiveNotIdentity { index } => {
                write!(f, "transition {index} <- {index} is not the identity")
            }
            SystemViolation::CompositionMismatch { top, mid, bottom } => write!(
                f,
                "({top} <- {mid}) ∘ ({mid} <- {bottom}) differs from {top} <- {bottom}"
            ),
            SystemViolation::UpperBoundNotAbove { a, b, bound } => {
                write!(f, "upper bound {bound} of ({a}, {b}) is not above both")
            }
            SystemViolation::ProviderFailure { detail } => write!(f, "provider failure: {detail}"),
            SystemViolation::EndpointMismatch { big, small } => write!(
                f,
                "transition {big} <- {small} does not connect the stage algebras"
            ),
        }
    }
}

/// Outcome of sampled system validation: the indices actually checked
/// (the sample closed under one round of upper bounds) and all defects.
#[derive(Debug, Clone)]
pub struct ValidationReport<I> {
    pub checked: Vec<I>,
    pub violations: Vec<SystemViolation>,
}

impl<I> ValidationReport<I> {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies the directed-system laws on a finite sample: reflexivity gives
/// identities, composition holds on every comparable sampled chain, and
/// every sampled pair has an upper bound above both.  The sample is closed
/// under one round of pairwise upper bounds first.
pub fn validate_system<S: DirectedSystem>(
    sys: &S,
    sample: &[S::Index],
) -> ValidationReport<S::Index> {
    let mut violations = Vec::new();
    let mut checked: Vec<S::Index> = Vec::new();
    for i in sample {
        if !checked.contains(i) {
            checked.push(i.clone());
        }
    }
    let base = checked.clone();
    for a in &base {
        for b in &base {
            match sys.upper_bound(a, b) {
                Ok(k) => {
                    let above = sys.leq(a, &k).unwrap_or(false) && sys.leq(b, &k).unwrap_or(false);
                    if !above {
                        violations.push(SystemViolation::UpperBoundNotAbove {
                            a: a.to_string(),
                            b: b.to_string(),
                            bound: k.to_string(),
                        });
                    }
                    if !checked.contains(&k) {
                        checked.push(k);
                    }
                }
                Err(e) => violations.push(SystemViolation::ProviderFailure {
                    detail: format!("no upper bound for ({a}, {b}): {e}"),
                }),
            }
        }
    }
    // (i1): reflexive transitions are identities.
    for i in &checked {
        match sys.transition(i, i) {
            Ok(t) => {
                if !t.is_identity() {
                    violations.push(SystemViolation::ReflexiveNotIdentity {
                        index: i.to_string(),
                    });
                }
            }
            Err(e) => violations.push(SystemViolation::ProviderFailure {
                detail: format!("transition {i} <- {i}: {e}"),
            }),
        }
    }
    // Transitions connect the right algebras.
    let mut pairs = Vec::new();
    for small in &checked {
        for big in &checked {
            if small == big {
                continue;
            }
            if sys.leq(small, big).unwrap_or(false) {
                pairs.push((big.clone(), small.clone()));
            }
        }
    }
    for (big, small) in &pairs {
        match (sys.transition(big, small), sys.algebra(big), sys.algebra(small)) {
            (Ok(t), Ok(tb), Ok(ts)) => {
                if t.source != ts || t.target != tb {
                    violations.push(SystemViolation::EndpointMismatch {
                        big: big.to_string(),
                        small: small.to_string(),
                    });
                }
            }
            (Err(e), _, _) => violations.push(SystemViolation::ProviderFailure {
                detail: format!("transition {big} <- {small}: {e}"),
            }),
            (_, Err(e), _) | (_, _, Err(e)) => {
                violations.push(SystemViolation::ProviderFailure {
                    detail: format!("stage algebra: {e}"),
                })
            }
        }
    }
    // (i2): composition on all sampled chains bottom ≤ mid ≤ top.
    for bottom in &checked {
        for mid in &checked {
            if !sys.leq(bottom, mid).unwrap_or(false) {
                continue;
            }
            for top in &checked {
                if !sys.leq(mid, top).unwrap_or(false) {
                    continue;
                }
                let chain = (
                    sys.transition(top, mid),
                    sys.transition(mid, bottom),
                    sys.transition(top, bottom),
                );
                match chain {
                    (Ok(tm), Ok(mb), Ok(tb)) => match tm.compose(&mb) {
                        Ok(c) if c.matrix == tb.matrix => {}
                        _ => violations.push(SystemViolation::CompositionMismatch {
                            top: top.to_string(),
                            mid: mid.to_string(),
                            bottom: bottom.to_string(),
                        }),
                    },
                    _ => violations.push(SystemViolation::ProviderFailure {
                        detail: format!("transitions along {top} <- {mid} <- {bottom}"),
                    }),
                }
            }
        }
    }
    ValidationReport {
        checked,
        violations,
    }
}

/// A finite directed system given by explicit tables.
///
/// Indices carry the order of the `indices` list; the upper bound of a
/// pair is the first listed index above both.
#[derive(Debug, Clone)]
pub struct ExplicitSystem {
    indices: Vec<String>,
    /// `leq` as a set of `(small, big)` positions, reflexively closed.
    order: BTreeSet<(usize, usize)>,
    algebras: Vec<SimplicialEffectAlgebra>,
    /// Keyed by `(big, small)` positions; reflexive entries implicit.
    transitions: BTreeMap<(usize, usize), SimplicialMorphism>,
}

#[derive(Serialize, Deserialize)]
struct SystemFile {
    indices: Vec<String>,
    leq: Vec<(String, String)>,
    algebras: BTreeMap<String, SimplicialEffectAlgebra>,
    transitions: BTreeMap<String, MatrixFile>,
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    #[serde(with = "crate::jsonnum::mat")]
    matrix: Vec<Vec<Int>>,
}

impl ExplicitSystem {
    /// Builds and fully checks a finite system: the relation must be a
    /// reflexive (auto-closed), antisymmetric, transitive, directed order
    /// on the listed indices, and a valid transition must be stored for
    /// every strictly comparable pair.
    pub fn new(
        indices: Vec<String>,
        leq_pairs: &[(String, String)],
        algebras: BTreeMap<String, SimplicialEffectAlgebra>,
        transitions: BTreeMap<(String, String), Vec<Vec<Int>>>,
    ) -> Result<Self, String> {
        if indices.is_empty() {
            return Err("system has no indices".to_owned());
        }
        let pos = |name: &str| -> Result<usize, String> {
            indices
                .iter()
                .position(|i| i == name)
                .ok_or_else(|| format!("unknown index `{name}`"))
        };
        let mut seen = BTreeSet::new();
        for i in &indices {
            if !seen.insert(i) {
                return Err(format!("duplicate index `{i}`"));
            }
        }
        let mut order = BTreeSet::new();
        for i in 0..indices.len() {
            order.insert((i, i));
        }
        for (small, big) in leq_pairs {
            order.insert((pos(small)?, pos(big)?));
        }
        for &(a, b) in &order {
            if a != b && order.contains(&(b, a)) {
                return Err(format!(
                    "order is not antisymmetric: `{}` and `{}` are below each other",
                    indices[a], indices[b]
                ));
            }
            for &(c, d) in &order {
                if b == c && !order.contains(&(a, d)) {
                    return Err(format!(
                        "order is not transitive: `{}` ≤ `{}` ≤ `{}` but the pair (`{}`, `{}`) is missing",
                        indices[a], indices[b], indices[d], indices[a], indices[d]
                    ));
                }
            }
        }
        // Directedness.
        for a in 0..indices.len() {
            for b in 0..indices.len() {
                if !(0..indices.len())
                    .any(|k| order.contains(&(a, k)) && order.contains(&(b, k)))
                {
                    return Err(format!(
                        "order is not directed: `{}` and `{}` have no upper bound",
                        indices[a], indices[b]
                    ));
                }
            }
        }
        let algebras: Vec<SimplicialEffectAlgebra> = indices
            .iter()
            .map(|i| {
                algebras
                    .get(i)
                    .cloned()
                    .ok_or_else(|| format!("no algebra for index `{i}`"))
            })
            .collect::<Result<_, _>>()?;
        let mut stored = BTreeMap::new();
        for ((big, small), matrix) in transitions {
            let b = pos(&big)?;
            let s = pos(&small)?;
            if !order.contains(&(s, b)) {
                return Err(format!(
                    "transition `{big} <- {small}` given but `{small}` is not below `{big}`"
                ));
            }
            let m = SimplicialMorphism::new(algebras[s].clone(), algebras[b].clone(), matrix)
                .map_err(|e| format!("transition `{big} <- {small}`: {e}"))?;
            stored.insert((b, s), m);
        }
        for &(s, b) in &order {
            if s != b && !stored.contains_key(&(b, s)) {
                return Err(format!(
                    "missing transition `{} <- {}`",
                    indices[b], indices[s]
                ));
            }
        }
        Ok(ExplicitSystem {
            indices,
            order,
            algebras,
            transitions: stored,
        })
    }

    pub fn indices(&self) -> &[String] {
        &self.indices
    }

    fn pos(&self, name: &str) -> Result<usize, SystemError> {
        self.indices
            .iter()
            .position(|i| i == name)
            .ok_or_else(|| SystemError::UnknownIndex(name.to_owned()))
    }

    /// Parses the JSON system format: `{"indices": [...], "leq": [[small,
    /// big], ...], "algebras": {...}, "transitions": {"big<-small":
    /// {"matrix": [...]}}}`.
    pub fn from_json(s: &str) -> Result<Self, String> {
        let file: SystemFile =
            serde_json::from_str(s).map_err(|e| format!("system file: {e}"))?;
        let mut transitions = BTreeMap::new();
        for (key, m) in file.transitions {
            let (big, small) = key
                .split_once("<-")
                .ok_or_else(|| format!("system file: transition key `{key}` is not `big<-small`"))?;
            transitions.insert(
                (big.trim().to_owned(), small.trim().to_owned()),
                m.matrix,
            );
        }
        ExplicitSystem::new(file.indices, &file.leq, file.algebras, transitions)
            .map_err(|e| format!("system file: {e}"))
    }

    pub fn to_json(&self) -> String {
        let mut leq = Vec::new();
        for &(s, b) in &self.order {
            if s != b {
                leq.push((self.indices[s].clone(), self.indices[b].clone()));
            }
        }
        let algebras = self
            .indices
            .iter()
            .cloned()
            .zip(self.algebras.iter().cloned())
            .collect();
        let transitions = self
            .transitions
            .iter()
            .map(|(&(b, s), m)| {
                (
                    format!("{}<-{}", self.indices[b], self.indices[s]),
                    MatrixFile {
                        matrix: m.matrix.clone(),
                    },
                )
            })
            .collect();
        let file = SystemFile {
            indices: self.indices.clone(),
            leq,
            algebras,
            transitions,
        };
        serde_json::to_string_pretty(&file).expect("system serialization cannot fail")
    }
}

impl DirectedSystem for ExplicitSystem {
    type Index = String;

    fn leq(&self, small: &String, big: &String) -> Result<bool, SystemError> {
        Ok(self.order.contains(&(self.pos(small)?, self.pos(big)?)))
    }

    fn upper_bound(&self, a: &String, b: &String) -> Result<String, SystemError> {
        let (pa, pb) = (self.pos(a)?, self.pos(b)?);
        (0..self.indices.len())
            .find(|&k| self.order.contains(&(pa, k)) && self.order.contains(&(pb, k)))
            .map(|k| self.indices[k].clone())
            .ok_or_else(|| SystemError::NoUpperBound {
                a: a.clone(),
                b: b.clone(),
            })
    }

    fn algebra(&self, i: &String) -> Result<SimplicialEffectAlgebra, SystemError> {
        Ok(self.algebras[self.pos(i)?].clone())
    }

    fn transition(&self, big: &String, small: &String) -> Result<SimplicialMorphism, SystemError> {
        let (pb, ps) = (self.pos(big)?, self.pos(small)?);
        if pb == ps {
            return Ok(SimplicialMorphism::identity(&self.algebras[pb]));
        }
        if !self.order.contains(&(ps, pb)) {
            return Err(SystemError::NotComparable {
                small: small.clone(),
                big: big.clone(),
                detail: String::new(),
            });
        }
        self.transitions
            .get(&(pb, ps))
            .cloned()
            .ok_or_else(|| SystemError::MissingTransition {
                big: big.clone(),
                small: small.clone(),
            })
    }
}

/// A pair index of a tensored system, ordered componentwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProductIndex<I, J>(pub I, pub J);

impl<I: fmt::Display, J: fmt::Display> fmt::Display for ProductIndex<I, J> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

/// The tensor of two directed systems: product indices ordered
/// componentwise, stage algebras tensored, transitions tensored.
#[derive(Debug, Clone)]
pub struct TensorSystem<A, B> {
    pub first: A,
    pub second: B,
}

impl<A: DirectedSystem, B: DirectedSystem> DirectedSystem for TensorSystem<A, B> {
    type Index = ProductIndex<A::Index, B::Index>;

    fn leq(&self, small: &Self::Index, big: &Self::Index) -> Result<bool, SystemError> {
        Ok(self.first.leq(&small.0, &big.0)? && self.second.leq(&small.1, &big.1)?)
    }

    fn upper_bound(&self, a: &Self::Index, b: &Self::Index) -> Result<Self::Index, SystemError> {
        Ok(ProductIndex(
            self.first.upper_bound(&a.0, &b.0)?,
            self.second.upper_bound(&a.1, &b.1)?,
        ))
    }

    fn algebra(&self, i: &Self::Index) -> Result<SimplicialEffectAlgebra, SystemError> {
        let a = self.first.algebra(&i.0)?;
        let b = self.second.algebra(&i.1)?;
        Ok(tensor_simplicial(&a, &b).product)
    }

    fn transition(
        &self,
        big: &Self::Index,
        small: &Self::Index,
    ) -> Result<SimplicialMorphism, SystemError> {
        let f = self.first.transition(&big.0, &small.0)?;
        let g = self.second.transition(&big.1, &small.1)?;
        Ok(tensor_morphisms(&f, &g))
    }
}

/// A finite family of morphisms `h_i` from materialized stages into one
/// table, the data of a cone over the system.
pub struct CompatibleFamily<S: DirectedSystem> {
    pub target: Arc<FiniteEffectAlgebra>,
    /// Pairs of a stage index and the morphism from that stage's
    /// materialized algebra (canonical vector identifiers) into `target`.
    pub maps: Vec<(S::Index, Morphism)>,
}

/// Why a family fails to be a cone, or a mediated value is ambiguous.
#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("family is not compatible: at `{small}` <- `{big}`... h_{big}∘f ≠ h_{small} on {element}")]
    Incompatible {
        big: String,
        small: String,
        element: String,
    },
    #[error("no family index lies above `{0}`")]
    NoCover(String),
    #[error("mediated value is ambiguous: `{via1}` gives {value1}, `{via2}` gives {value2}")]
    Ambiguous {
        via1: String,
        value1: String,
        via2: String,
        value2: String,
    },
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("representative {value} is not in the stage algebra at `{index}`")]
    BadRepresentative { index: String, value: String },
}

impl<S: DirectedSystem> CompatibleFamily<S> {
    /// Checks `h_big ∘ f_(big <- small) = h_small` on every comparable
    /// family pair, element by element.
    pub fn verify(&self, sys: &S, limits: &Limits) -> Result<(), FamilyError> {
        for (i_small, h_small) in &self.maps {
            for (i_big, h_big) in &self.maps {
                if i_small == i_big || !sys.leq(i_small, i_big)? {
                    continue;
                }
                let f = sys.transition(i_big, i_small)?;
                let alg = sys.algebra(i_small)?;
                for z in alg.elements(limits).map_err(SystemError::from)? {
                    let via_big = {
                        let fz = f.apply(&z).map_err(SystemError::from)?;
                        let id = vector_id(&fz);
                        let e = h_big.source.element(&id).ok_or_else(|| {
                            FamilyError::System(SystemError::Provider(format!(
                                "family map at `{i_big}` is not over the canonical materialization (missing `{id}`)"
                            )))
                        })?;
                        h_big.apply(e)
                    };
                    let direct = {
                        let id = vector_id(&z);
                        let e = h_small.source.element(&id).ok_or_else(|| {
                            FamilyError::System(SystemError::Provider(format!(
                                "family map at `{i_small}` is not over the canonical materialization (missing `{id}`)"
                            )))
                        })?;
                        h_small.apply(e)
                    };
                    if via_big != direct {
                        return Err(FamilyError::Incompatible {
                            big: i_big.to_string(),
                            small: i_small.to_string(),
                            element: vector_id(&z),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The mediated value at a representative: push it into a family stage
    /// above its index and apply that stage's map.  Every covering family
    /// stage must give the same answer; disagreement is reported.
    pub fn mediate(
        &self,
        sys: &S,
        at: &LimitElement<S::Index>,
    ) -> Result<Elem, FamilyError> {
        let mut result: Option<(String, Elem)> = None;
        for (i, h) in &self.maps {
            if !sys.leq(&at.index, i)? {
                continue;
            }
            let f = sys.transition(i, &at.index)?;
            let fz = f.apply(&at.value).map_err(|_| FamilyError::BadRepresentative {
                index: at.index.to_string(),
                value: vector_id(&at.value),
            })?;
            let id = vector_id(&fz);
            let e = h.source.element(&id).ok_or_else(|| {
                FamilyError::System(SystemError::Provider(format!(
                    "family map at `{i}` is not over the canonical materialization (missing `{id}`)"
                )))
            })?;
            let value = h.apply(e);
            match &result {
                None => result = Some((i.to_string(), value)),
                Some((via1, v1)) if *v1 != value => {
                    return Err(FamilyError::Ambiguous {
                        via1: via1.clone(),
                        value1: self.target.id(*v1).to_owned(),
                        via2: i.to_string(),
                        value2: self.target.id(value).to_owned(),
                    });
                }
                Some(_) => {}
            }
        }
        result
            .map(|(_, v)| v)
            .ok_or_else(|| FamilyError::NoCover(at.index.to_string()))
    }
}
