//! Symbolic intersection-theory engine for elliptically fibered varieties.
//!
//! The crate models the pieces needed to compute Euler characteristics of
//! crepant resolutions of Weierstrass models over a base of arbitrary
//! dimension: a truncated graded ring with exact rational coefficients
//! ([`ring`]), pushforward maps for blowups and for the ambient projective
//! bundle ([`pushforward`]), total Chern class bookkeeping along a resolution
//! sequence ([`chern`]), a catalog of G-models with their blowup centers and
//! reference data ([`models`]), and Hodge numbers of Calabi-Yau threefolds
//! ([`hodge`]). The `crepant` binary exposes all of it on the command line.

pub mod chern;
pub mod fixtures;
pub mod hodge;
pub mod models;
pub mod output;
pub mod parse;
pub mod pushforward;
pub mod ring;
pub mod sampling;

pub use ring::{GradedClass, Generator, Ring, RingDescriptor, RingError};
