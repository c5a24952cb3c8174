//! Gauss hypergeometric function by power series and by Mellin-Barnes
//! contour integrals, plus checkers for the classical identities that tie
//! the two together.

pub mod contour;
pub mod error;
pub mod gamma;
pub mod identities;
pub mod series;

pub use error::{ErrorKind, MbError, Result};
pub use num_complex::Complex64;
