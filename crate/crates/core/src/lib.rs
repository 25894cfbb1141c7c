//! Scalar curvature of monotone Riemannian metrics on spaces of quantum
//! density matrices.
//!
//! A monotone metric is fixed by an operator monotone function `f` with
//! `f(1) = 1` and `f(x) = x f(1/x)`. The crate evaluates such functions and
//! their jets ([`function`]), computes the curvature of qubit states by three
//! independent routes ([`qubit`]) and of `n`-level states from the spectrum
//! ([`nlevel`]), and classifies the maximally mixed state as a local minimum
//! or maximum ([`extremum`]).

pub mod cli;
pub mod error;
pub mod extremum;
pub mod function;
pub mod measure;
pub mod nlevel;
pub mod numeric;
pub mod qubit;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use function::{catalog, function_from_measure, CatalogEntry, MonotoneFunction};
pub use measure::SymmetricMeasure;
pub use nlevel::Spectrum;
