//! Binomial coefficients with arbitrary integer upper index.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{int, Rational};

fn standard(n: u64, r: u64) -> BigInt {
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// `binom(n, r)` for any integers.
///
/// Zero when `r < 0` or when `0 <= n < r`. A negative upper index is
/// rewritten as `(-1)^r binom(|n| + r - 1, r)`.
pub fn gen_binomial(n: i64, r: i64) -> BigInt {
    if r < 0 {
        return BigInt::zero();
    }
    if n >= 0 {
        if r > n {
            return BigInt::zero();
        }
        return standard(n as u64, r as u64);
    }
    let top = n.unsigned_abs() + r as u64 - 1;
    let b = standard(top, r as u64);
    if r % 2 == 0 {
        b
    } else {
        -b
    }
}

/// `x (x-1) ... (x-r+1) / r!` for a rational upper index.
///
/// Agrees with [`gen_binomial`] whenever `x` is an integer.
pub fn falling_binomial(x: &Rational, r: i64) -> Rational {
    if r < 0 {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for i in 0..r {
        acc = acc * (x - int(i)) / int(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use proptest::prelude::*;

    // Brute-force falling factorial over plain i128, independent of the
    // branchy implementation above.
    fn oracle(n: i64, r: i64) -> i128 {
        if r < 0 {
            return 0;
        }
        let mut num: i128 = 1;
        let mut den: i128 = 1;
        for i in 0..r {
            num *= (n - i) as i128;
            den *= (i + 1) as i128;
        }
        num / den
    }

    #[test]
    fn documented_values() {
        assert_eq!(gen_binomial(-2, 1), BigInt::from(-2));
        assert_eq!(gen_binomial(5, 0), BigInt::from(1));
        assert_eq!(gen_binomial(-1, 3), BigInt::from(-1));
        assert_eq!(gen_binomial(3, 5), BigInt::zero());
        assert_eq!(gen_binomial(3, -1), BigInt::zero());
        assert_eq!(gen_binomial(0, 0), BigInt::one());
    }

    #[test]
    fn matches_falling_factorial_oracle() {
        for n in -12..=12 {
            for r in -2..=10 {
                assert_eq!(gen_binomial(n, r), BigInt::from(oracle(n, r)), "({n}, {r})");
            }
        }
    }

    #[test]
    fn rational_upper_index() {
        assert_eq!(falling_binomial(&rat(1, 2), 2), rat(-1, 8));
        for n in -6..=6 {
            for r in 0..6 {
                assert_eq!(falling_binomial(&int(n), r), Rational::from_integer(gen_binomial(n, r)));
            }
        }
    }

    proptest! {
        #[test]
        fn pascal_identity(n in -10i64..=10, r in 0i64..=10) {
            prop_assert_eq!(gen_binomial(n, r) + gen_binomial(n, r - 1), gen_binomial(n + 1, r));
        }
    }
}
