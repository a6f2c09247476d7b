//! A desk-scale workbench for surjective numbers, asymptotic surjective
//! numbers, and dual F-signature positivity of invariant rings.
//!
//! The crate is organized bottom-up:
//!
//! - [`fp`] — exact dense linear algebra over prime fields;
//! - [`theta`] — the formal class space of indecomposable module labels with
//!   floor, norm and lattice operations, and the estimator for asymptotic
//!   surjective numbers of class vectors;
//! - [`surjlab`] — finite-dimensional modules over small commutative local
//!   algebras, where surjective numbers are computed by brute force; it
//!   supplies the surjection oracle consumed by [`theta`];
//! - [`agl`] — the affine group x ↦ ax + b on F_p together with a generic
//!   multiplication-table group layer and a cocycle-based H¹ solver;
//! - [`kg`] — modular representation theory of the affine group: simples,
//!   projective covers, monomial orbits of symmetric powers, socles,
//!   modules of covariants and first cohomology;
//! - [`criteria`] — the positivity criteria, Kemper's depth formula and the
//!   six-case classification of the invariant rings in the family.

pub mod agl;
pub mod criteria;
pub mod fp;
pub mod kg;
pub mod surjlab;
pub mod theta;

pub use fp::{MatFp, PrimeField};
pub use theta::{IndecRegistry, Rational, ThetaVector};
