//! Genera of quotient curves of the Hermitian curve H_q.
//!
//! The pipeline: exact GF(p^k) arithmetic and towers ([`ff`]), the projective
//! plane and Hermitian curve models ([`geometry`]), finitely generated
//! subgroups of PGU(3,q) ([`group`]), the geometric classification of
//! elements with their different-divisor contributions ([`classify`]), the
//! Riemann-Hurwitz genus engine ([`genus`]), the closed-form genus catalog
//! ([`catalog`]), deterministic generator recipes ([`constructions`]),
//! brute-force point counts for quotient plane models ([`counter`]), and the
//! table/registry harness ([`harness`]).

pub mod catalog;
pub mod classify;
pub mod constructions;
pub mod counter;
pub mod error;
pub mod ff;
pub mod genfile;
pub mod genus;
pub mod geometry;
pub mod group;
pub mod harness;

pub use error::{Error, Result};
pub use ff::{embed, field_arith, make_field, mult_order, Field, FieldElem, Poly};
pub use genus::{quotient_genus, GenusReport};
pub use geometry::{HermitianModel, ModelTag, ProjPoint};
pub use group::{closure, proj_order, GeneratedGroup, GroupCtx, GroupElem};
