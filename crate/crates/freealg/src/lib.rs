//! Exact symbolic computation with T-ideals of the free associative algebra
//! on countably many generators.
//!
//! The crate provides, over the rationals or a large prime field:
//!
//! - [`poly`]: words, sparse non-commutative polynomials, endomorphism
//!   application, multihomogeneous decomposition and multilinearization;
//! - [`echelon`]: exact reduced-echelon spans per multidegree;
//! - [`ideal`]: T-ideal handles with graded closure components, formal
//!   products, and truncated inclusion tests;
//! - [`schreier`]: Schreier bases modulo an ideal, free right-module bases
//!   of ideals, and decomposition over such bases;
//! - [`quotient`]: annihilators (I : J) and separators J ÷ U;
//! - [`modalg`]: finite-dimensional algebras and modules, triangular
//!   products, and multilinear identity components;
//! - [`refine`]: the constructive common-refinement procedure for a pair of
//!   ideal-product factorizations, with a replayable certificate;
//! - [`fga`]: the canonical basis of a free group algebra built from
//!   products (1 - x^n), with its order, Schreier checks and index shifts.
//!
//! Everything is truncated by a degree bound and a variable window; results
//! carry provenance flags describing the approximation direction.

pub mod echelon;
pub mod error;
pub mod fga;
pub mod fixtures;
pub mod ideal;
pub mod modalg;
pub mod monomial;
pub mod poly;
pub mod quotient;
pub mod refine;
pub mod scalar;
pub mod schreier;

pub use error::{EngineError, Result};
pub use scalar::{Field, Scalar};
