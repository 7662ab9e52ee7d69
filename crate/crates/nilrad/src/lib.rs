//! Certified decisions on whether a nilpotent Lie algebra, given by structure
//! constants, is an Einstein nilradical.
//!
//! The pipeline is exact wherever possible: rational structure constants,
//! exact derivation algebras, an exact simplex for the nice-basis criterion.
//! Witness laws with radical coefficients run through a float mirror with an
//! absolute tolerance (default `1e-9`).

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod algebra;
pub mod catalog;
pub mod degeneration;
pub mod derivations;
pub mod linalg;
pub mod nicebasis;
pub mod ricci;
pub mod scalar;

pub use algebra::{act, jacobi_violations, parse_law, parse_law_with, series_signature, AnyLaw, LieLaw, SeriesSignature};
pub use scalar::{Rational, Scalar, ScalarKind, DEFAULT_TOL};
