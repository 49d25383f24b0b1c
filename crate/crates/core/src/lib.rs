//! Symbolic intersection theory with exact rational arithmetic.
//!
//! The crate models Chow rings as truncated graded polynomial rings, vector
//! bundles as Chern-class data over them, and builds on those to compute
//! Segre classes, projective-bundle pushforwards, virtual discriminant
//! degrees, branch divisor classes of multisections, and asymptotic
//! Riemann-Roch coefficients. A small script DSL (see [`script`]) exposes the
//! whole surface on the command line.

pub mod bogomolov;
pub mod bundle;
pub mod catalog;
mod comb;
pub mod discriminant;
mod error;
pub mod graded;
pub mod oracle;
pub mod proj;
pub mod script;

pub use bundle::{jet1_line, BundleClass, CharacterClass};
pub use error::{Error, Result};
pub use graded::{
    rat_frac, rat_int, Generator, GradedClass, Integrated, Monomial, Rat, VarietyModel,
};
pub use proj::{FiberedClass, ProjBundle};
