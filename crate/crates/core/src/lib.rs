//! Exact arithmetic for counting points of plane curves `P(x, y) = 0` over a
//! prime field whose coordinates are restricted to cosets of a multiplicative
//! subgroup, together with Stepanov-style auxiliary polynomial certificates,
//! polynomial and additive energies, and exact evaluation of the associated
//! upper bounds.
//!
//! The modules are layered bottom-up:
//!
//! - [`ffield`]: prime fields, subgroups, cosets, n-th roots.
//! - [`polyalg`]: univariate and bivariate polynomials, parsing, root finding,
//!   resultants, pseudo-division.
//! - [`modlinalg`]: dense linear algebra mod p.
//! - [`counting`]: exact solution counts and energies.
//! - [`bounds`]: exact (radical-free) bound evaluation.
//! - [`stepanov`]: the auxiliary polynomial construction and its certificate.
//! - [`harness`]: configuration, sweeps, record emission and the CLI.

pub mod bounds;
pub mod counting;
pub mod error;
pub mod ffield;
pub mod harness;
pub mod modlinalg;
pub mod polyalg;
pub mod stepanov;

pub use error::{Error, Result};
pub use ffield::{Coset, FieldCtx, Subgroup};
pub use polyalg::{BiPoly, UniPoly};
