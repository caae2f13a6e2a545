//! The exterior algebra on `n` generators over F_p.
//!
//! Degree-r pieces use the colex basis of r-subsets; every dense coordinate
//! vector and operator matrix in the crate is expressed in that basis. For a
//! symplectic space of rank m the generators are `x1..xm, y1..ym` in that
//! order.

mod grammar;
mod monomial;
mod multivector;
mod pullback;

pub use grammar::VariableOrder;
pub use monomial::{binomial, binomial_signed, mono_rank, mono_unrank, monomials, Monomial, MAX_GENERATORS};
pub use multivector::{basis_monomial, left_multiplication_matrix, Multivector};
pub use pullback::{pullback_matrix, wedge_of_rows};
