//! Constacyclic codes over GF(p^e) under Galois inner products.
//!
//! A λ-constacyclic code of length n is an ideal of `F_q[X]/<X^n - λ>`. Every
//! such code is described by a q-coset function φ, and this crate builds the
//! code from φ, computes its `p^h`-dual, applies the ring isometries `M_s`,
//! and decides whether (isometrically) Galois self-dual codes exist for given
//! parameters. Brute-force routines in [`oracle`] recompute the same answers
//! by linear algebra and enumeration for cross-checking.

pub mod arith;
pub mod cli;
pub mod codes;
pub mod cosets;
pub mod duality;
pub mod error;
pub mod existence;
pub mod gf;
pub mod oracle;
pub mod polyring;

pub use error::{Error, Result};
