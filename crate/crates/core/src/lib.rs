//! Numerical Lie theory on the compact classical groups and their symmetric spaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`] and [`matrix`]: complex and order-2 jet arithmetic with dense matrices.
//! * [`groups`]: SO(n), U(n), SU(n), Sp(n), their algebras and Killing forms.
//! * [`spaces`]: the classical compact symmetric spaces with involutions and Cartan maps.
//! * [`field`] and [`calculus`]: scalar fields and the tension field / conformality operator.
//! * [`catalog`]: explicit eigenfunctions and eigenfamilies on every family.
//! * [`builders`] and [`logpower`]: products, polynomial families, harmonic morphisms and
//!   proper p-harmonic functions.
//! * [`verify`]: sampling harnesses producing serialisable reports.

pub mod builders;
pub mod calculus;
pub mod catalog;
pub mod error;
pub mod field;
pub mod groups;
pub mod logpower;
pub mod matrix;
pub mod scalar;
pub mod spaces;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldExpr, ScalarField};
pub use groups::{GroupFamily, GroupSpec};
pub use matrix::{JetMatrix, Mat, Matrix};
pub use scalar::{Jet, Scalar, C64};
pub use spaces::{Ambient, SpaceFamily, SpaceSpec};
