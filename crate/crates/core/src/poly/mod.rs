//! Monomials, homogeneous forms and the action of differential operators on them.

mod form;
mod monomial;
mod parse;

pub use form::{apply_operator, catalecticant, derivative_space, DerivativeAction, Form};
pub use monomial::{Monomial, MonomialBasis};
pub use parse::parse_form;
