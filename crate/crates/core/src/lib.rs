//! Exact shuffle-algebra computations for quantum toroidal and super toroidal
//! algebras: kernels, shuffle products, relation checkers and graded dimensions.

pub mod characters;
pub mod exactalg;
pub mod quiver;
pub mod roots;
pub mod shuffle;
pub mod verify;

pub use exactalg::{FactoredProduct, LaurentPoly, Monomial, Rational, RationalFunction, Variable};
