//! Exact bookkeeping for homological projective duality of Veronese
//! embeddings `(P^m, O(d))`.
//!
//! The crate computes sheaf-cohomology tables ([`bott`]), Euler
//! characteristics of complete intersections ([`chern`]), Euler pairings and
//! mutations of exceptional collections ([`kgroup`]) and Ext groups on the
//! universal hyperplane ([`divisor_ext`]). On top of these, [`hpd`] assembles
//! semi-orthogonal decompositions with machine-checked certificates and
//! [`cli`] exposes everything as a batch command-line tool.

mod bigint_serde;

pub mod binomial;
pub mod bott;
pub mod chern;
pub mod cli;
pub mod divisor_ext;
pub mod error;
pub mod hpd;
pub mod kgroup;

pub use error::{Error, Result};
