//! Conversion between stored Taylor coefficients and derivatives.
//!
//! Jets and vector-field jets store raw polynomial coefficients: the order-`k`
//! entry multiplies `u^{a1} ... u^{ak}` in the full index sum. Frame
//! coordinates, projective connections and the Schwarzian are written with
//! derivatives, `f^{(k)} = k! * coefficient`. Every crossing between the two
//! goes through this module.

use crate::scalar::{rat, Rational, Scalar};

/// `k!` as a rational.
pub fn factorial(k: usize) -> Rational {
    (1..=k as i64).fold(rat(1, 1), |acc, i| acc * rat(i, 1))
}

/// Order-`k` derivative from the stored order-`k` coefficient.
pub fn derivative_from_coeff<T: Scalar>(k: usize, coeff: &T) -> T {
    coeff.scale(&factorial(k))
}

/// Stored order-`k` coefficient from the order-`k` derivative.
pub fn coeff_from_derivative<T: Scalar>(k: usize, deriv: &T) -> T {
    deriv.scale(&factorial(k).recip())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors() {
        assert_eq!(derivative_from_coeff(2, &rat(3, 1)), rat(6, 1));
        assert_eq!(derivative_from_coeff(3, &rat(1, 1)), rat(6, 1));
        assert_eq!(coeff_from_derivative(3, &rat(12, 1)), rat(2, 1));
        assert_eq!(coeff_from_derivative(1, &rat(5, 7)), rat(5, 7));
    }
}
