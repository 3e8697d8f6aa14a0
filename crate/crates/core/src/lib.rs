//! Exact computational algebra for finite effect algebras.
//!
//! An effect algebra is a set with two constants `0`, `1` and a *partial*
//! binary sum `⊕` subject to commutativity, associativity, unique
//! orthosupplements and the rule that only `0` can be added to `1`.  This
//! crate works with them at desk scale and with exact arithmetic only:
//!
//! * [`ea`] — finite effect algebras as explicit partial sum tables, axiom
//!   validation with concrete witnesses, the induced order, Riesz
//!   decomposition / interpolation checks, morphisms and bimorphisms.
//! * [`simplicial`] — intervals `[0, u]` in `ℤⁿ` under coordinatewise order,
//!   the finite effect algebras they induce, and recognition of tables that
//!   arise this way.
//! * [`tensor`] — tensor products of simplicial effect algebras, the
//!   factorization of bimorphisms through them, and Kronecker products of
//!   morphisms.
//! * [`dirsys`] — directed systems of simplicial algebras, direct-limit
//!   elements, and tensoring of systems.
//! * [`real`] — exact real scalars of the form `q₀ + Σ qᵢ√dᵢ`, tuples of
//!   generators, the reduction lemmas that rebuild a tuple over an
//!   independent positive basis, and the directed system whose limit is the
//!   real unit interval.
//!
//! Everything is deterministic: enumeration orders are fixed, searches are
//! exhaustive within configured [`Limits`], and no floating point is used
//! anywhere (comparisons of irrational scalars go through exact interval
//! refinement).

pub mod bits;
pub mod dirsys;
pub mod ea;
pub mod jsonnum;
pub mod limits;
pub mod ratmat;
pub mod real;
pub mod simplicial;
pub mod tensor;

pub use limits::Limits;

/// Arbitrary-precision signed integer used for all vector coordinates.
pub type Int = num_bigint::BigInt;

/// Arbitrary-precision rational used by the exact linear algebra.
pub type Rat = num_rational::BigRational;
