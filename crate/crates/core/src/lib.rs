//! Exact computations with derivations and polynomial endomorphisms of `K[X,Y]`.
//!
//! The coefficient field is `Q(E)`: rationals extended by formal exponential
//! symbols `E(q) = e^q` for rational `q`. On top of it the crate provides
//! sparse bivariate polynomials, derivations and endomorphisms, invariant
//! subspaces and Jordan–Chevalley splitting of locally finite derivations,
//! the exponential automorphism, and a solver for the elementary
//! automorphisms commuting with a given operator.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod commutant;
pub mod error;
pub mod expmap;
pub mod field;
pub mod jordan;
pub mod linalg;
pub mod mpoly;
pub mod operators;
pub mod poly2;
pub mod scalars;
pub mod upoly;

pub use commutant::{
    contains, elementary_commutant, solution_set_equal, ElementaryShape, ShapeKind, SolutionComponent,
    SolutionSet, UnitConstraint,
};
pub use error::{Error, Result};
pub use expmap::{exp_derivation, exp_lnd, ExpResult};
pub use field::Field;
pub use jordan::{jordan_decompose, JordanPair, SpectrumReport};
pub use operators::{Caps, Derivation, Endomorphism, InvariantSubspace, Operator};
pub use poly2::{Degree, Monomial, Poly2, Var};
pub use scalars::{exp_symbol, ExpPolynomial, Rational, Scalar};
