//! Exact arithmetic in the working ring: truncated formal series in q over
//! half-integer exponents, with integer Laurent-polynomial coefficients in z.

mod halfexp;
mod monomial;
mod qseries;
mod zpoly;

pub use halfexp::HalfExp;
pub use monomial::Monomial;
pub use qseries::{mul_seq, Comparison, Mismatch, QSeries};
#[cfg(feature = "parallel")]
pub use qseries::mul_par;
pub use zpoly::ZPolynomial;
