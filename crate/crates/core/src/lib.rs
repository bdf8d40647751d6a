//! Exact computations with U_q(sl₂)-module algebra structures on the
//! quantum plane.

pub mod catalog;
pub mod classical;
pub mod expr;
pub mod hopf;
pub mod qplane;
pub mod repr;
pub mod scalars;

pub use catalog::{build, FamilyTag, SeriesFamily, SeriesLabel, StarPattern};
pub use expr::{parse_expression, render, ExprError, Expression};
pub use hopf::{
    apply, check_module_algebra, conjugate, weight_of, Action, AlgebraElement, DiagonalAutomorphism,
    Evaluator, Generator, Report, WeightPair,
};
pub use qplane::{Monomial, QPlanePoly};
pub use scalars::{quantum_integer, QScalar};
