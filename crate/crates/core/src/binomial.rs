//! Binomial coefficients in the two flavours the cohomology code needs.
//!
//! [`binomial`] is the combinatorial coefficient, zero whenever either
//! argument is negative or `b > a`. It is what the branch formulas for
//! cohomology dimensions use. [`poly_binomial`] is the polynomial
//! `a (a-1) ... (a-b+1) / b!`, defined for every integer `a`; Euler
//! characteristics are values of it.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// `C(a, b)` with the convention `C(a, b) = 0` for `a < 0`, `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if a < 0 || b < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for j in 0..b {
        // exact at every step: acc = C(a - b + j + 1, j + 1)
        acc = acc * (a - b + j + 1) / (j + 1);
    }
    acc
}

/// The binomial polynomial `x(x-1)...(x-b+1)/b!` evaluated at `x = a`.
///
/// Agrees with [`binomial`] for `a >= 0`; for negative `a` it is
/// `(-1)^b C(b - a - 1, b)`.
pub fn poly_binomial(a: i64, b: u32) -> BigInt {
    let b = i64::from(b);
    if a >= 0 {
        BigInt::from(binomial(a, b))
    } else {
        let magnitude = BigInt::from(binomial(b - a - 1, b));
        if b % 2 == 0 {
            magnitude
        } else {
            -magnitude
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn falling_factorial_quotient(a: i64, b: u32) -> BigInt {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for j in 0..i64::from(b) {
            num *= a - j;
            den *= j + 1;
        }
        num / den
    }

    #[test]
    fn small_values() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(-1, 0), BigUint::zero());
        assert_eq!(binomial(5, -1), BigUint::zero());
    }

    #[test]
    fn poly_binomial_matches_falling_factorial() {
        for a in -15..=15 {
            for b in 0..=8 {
                assert_eq!(
                    poly_binomial(a, b),
                    falling_factorial_quotient(a, b),
                    "a={a} b={b}"
                );
            }
        }
    }

    #[test]
    fn large_arguments_do_not_overflow() {
        // C(100, 50) = 100891344545564193334812497256
        assert_eq!(
            binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
    }
}
