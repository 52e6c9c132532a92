//! Exact and arbitrary-precision scalar arithmetic.

pub mod bigfloat;
pub mod expr;
pub mod gauss;
pub mod poly;
pub mod puiseux;
pub mod ratfunc;

pub use bigfloat::{BigFloat, Complex};
pub use expr::{ScalarExpr, ZeroTest};
pub use gauss::{rat, GaussRational, Rational};
pub use poly::{Monomial, Poly, Symbol};
pub use puiseux::{puiseux_normalize, PuiseuxExpr};
pub use ratfunc::RatFunc;
