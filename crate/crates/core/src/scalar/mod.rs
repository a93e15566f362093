//! Exact arithmetic in ℚ extended by square roots of squarefree integers.

mod complex;
mod radical;
mod real;

pub use complex::ExactComplex;
pub use radical::{is_squarefree, normalize_radical, prime_factors};
pub use real::ExactReal;

/// Arbitrary-precision rational, always kept in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// `num/den` as a [`Rational`].
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
