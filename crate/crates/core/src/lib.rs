//! h-vectors of artinian level algebras through Macaulay inverse systems.
//!
//! The crate computes graded dimensions of derivative spaces of forms with
//! exact arithmetic (a word-sized prime field by default, the rationals on
//! request), samples generic level quotients, and evaluates lower bounds for
//! their h-vectors together with the combinatorics (Macaulay expansions,
//! O-sequences) needed to sharpen and check them.

pub mod batch;
pub mod bounds;
pub mod combinatorics;
pub mod error;
pub mod exec;
pub mod field;
pub mod generators;
pub mod identities;
pub mod inverse;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod seed;

pub use error::{Error, Result};
pub use exec::Execution;
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use inverse::{EmpiricalH, HVector, InverseSystemModule, QuotientSample};
pub use poly::{DerivativeAction, Form, Monomial};
