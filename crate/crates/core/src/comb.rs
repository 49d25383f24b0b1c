//! Small exact combinatorial helpers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Binomial coefficient C(n, k); zero when k > n.
pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut value = BigInt::one();
    for i in 0..k {
        value = value * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    value
}

/// k! as a big integer.
pub(crate) fn factorial(k: usize) -> BigInt {
    let mut value = BigInt::one();
    for i in 2..=k {
        value *= BigInt::from(i);
    }
    value
}

/// i^e with 0^0 = 1.
pub(crate) fn int_pow(base: i64, exp: u32) -> BigInt {
    BigInt::from(base).pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 0), BigInt::from(1));
        assert_eq!(binomial(2, 5), BigInt::from(0));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(6), BigInt::from(720));
    }

    #[test]
    fn zero_to_the_zero_is_one() {
        assert_eq!(int_pow(0, 0), BigInt::from(1));
        assert_eq!(int_pow(-2, 3), BigInt::from(-8));
    }
}
