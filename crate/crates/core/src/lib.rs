//! Exact automorphism analysis for smooth curves of bidegree `(a, b)` on
//! `P1 x P1`.
//!
//! Everything here is exact: scalars live in cyclotomic fields `Q(z_N)` and
//! all polynomial arithmetic is carried out over them. The crate is `no_std`
//! and only needs an allocator.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bipoly;
pub mod classify;
mod error;
pub mod families;
pub mod modp;
pub mod poly;
pub mod resultant;
pub mod scalars;
pub mod smooth;
pub mod surfauto;

pub use bipoly::{BiPoly, BiVarPoly, Corner, SupportSet, Var};
pub use classify::{
    CaseClassification, InvarianceCertificate, QuotientReport, TheoremViolation,
};
pub use error::Error;
pub use families::{FamilyId, FamilySpec};
pub use scalars::{CycloScalar, RootOfUnity};
pub use smooth::{CornerReport, SmoothnessVerdict};
pub use surfauto::{DiagonalAut, Mat2, Order, SurfaceAut};

pub type Result<T> = core::result::Result<T, Error>;
