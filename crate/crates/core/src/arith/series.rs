//! Power series in a nilpotent matrix.
//!
//! Every raising operator on a finite (or truncated) weight space is
//! nilpotent, so each series below is a finite sum. Coefficients are
//! polynomials in `h`, which keeps the results inside `Q[h]`.

use num_traits::One;

use super::matrix::HMatrix;
use super::poly::HPoly;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k))
}

pub(crate) fn half_pow(n: u32) -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::one() << n)
}

/// `sum_{n >= 0} coeff(n) a^n`, stopping once `a^n = 0`.
pub fn power_series(a: &HMatrix, coeff: impl Fn(u32) -> HPoly) -> Result<HMatrix> {
    let mut acc = a.zeros_like();
    let mut pow = a.identity_like();
    let mut n = 0u32;
    while !pow.is_zero() {
        if n as usize > a.dim() {
            return Err(Error::NotNilpotent);
        }
        let c = coeff(n);
        if !c.is_zero() {
            acc = &acc + &pow.scale(&c);
        }
        pow = &pow * a;
        n += 1;
    }
    Ok(acc)
}

fn odd(n: u32, f: impl Fn(u32) -> HPoly) -> HPoly {
    if n % 2 == 1 {
        f((n - 1) / 2)
    } else {
        HPoly::zero()
    }
}

fn even(n: u32, f: impl Fn(u32) -> HPoly) -> HPoly {
    if n.is_multiple_of(2) {
        f(n / 2)
    } else {
        HPoly::zero()
    }
}

/// `(2/h) artanh(h z / 2) = sum_k (h/2)^{2k} z^{2k+1} / (2k+1)`.
pub fn artanh_scaled(z: &HMatrix) -> Result<HMatrix> {
    power_series(z, |n| odd(n, |k| HPoly::monomial(half_pow(2 * k) / int(2 * k as i64 + 1), 2 * k)))
}

/// `(2/h) sinh(h x / 2) = sum_k (h/2)^{2k} x^{2k+1} / (2k+1)!`.
pub fn sinh_half_scaled(x: &HMatrix) -> Result<HMatrix> {
    power_series(x, |n| odd(n, |k| HPoly::monomial(half_pow(2 * k) / factorial(2 * k + 1), 2 * k)))
}

/// `sinh(h x / 2)`.
pub fn sinh_half(x: &HMatrix) -> Result<HMatrix> {
    power_series(x, |n| odd(n, |k| HPoly::monomial(half_pow(2 * k + 1) / factorial(2 * k + 1), 2 * k + 1)))
}

/// `cosh(h x / 2)`.
pub fn cosh_half(x: &HMatrix) -> Result<HMatrix> {
    power_series(x, |n| even(n, |k| HPoly::monomial(half_pow(2 * k) / factorial(2 * k), 2 * k)))
}

/// `sinh(h x)`.
pub fn sinh_h(x: &HMatrix) -> Result<HMatrix> {
    power_series(x, |n| odd(n, |k| HPoly::monomial(factorial(2 * k + 1).recip(), 2 * k + 1)))
}

/// `sinh(h x) / h`, written as a series with no division.
pub fn sinh_over_h(x: &HMatrix) -> Result<HMatrix> {
    power_series(x, |n| odd(n, |k| HPoly::monomial(factorial(2 * k + 1).recip(), 2 * k)))
}

/// `cosh(h x)`.
pub fn cosh_h(x: &HMatrix) -> Result<HMatrix> {
    power_series(x, |n| even(n, |k| HPoly::monomial(factorial(2 * k).recip(), 2 * k)))
}

/// `exp(sign * h x)` from the exponential series.
pub fn exp_h(x: &HMatrix, sign: i64) -> Result<HMatrix> {
    power_series(x, |n| HPoly::monomial(int(sign.pow(n)) / factorial(n), n))
}

/// `(1 + s h z / 2) / (1 - s h z / 2) = 1 + 2 sum_{n >= 1} (s h z / 2)^n`.
pub fn cayley_h(z: &HMatrix, sign: i64) -> Result<HMatrix> {
    power_series(z, |n| match n {
        0 => HPoly::one(),
        _ => HPoly::monomial(int(2 * sign.pow(n)) * half_pow(n), n),
    })
}

/// Inverse of a unipotent matrix `I + N` via `sum_n (-N)^n`.
pub fn unipotent_inverse(m: &HMatrix) -> Result<HMatrix> {
    let nil = m - &m.identity_like();
    power_series(&nil, |n| HPoly::from_int(if n % 2 == 0 { 1 } else { -1 }))
}

/// `(2/h) tanh(h x / 2)`, computed as `(2/h) sinh(hx/2) cosh(hx/2)^{-1}`.
pub fn tanh_scaled(x: &HMatrix) -> Result<HMatrix> {
    Ok(&sinh_half_scaled(x)? * &unipotent_inverse(&cosh_half(x)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use num_traits::Zero;

    /// Classical raising matrix on a `d`-dimensional highest-first basis.
    fn shift(d: usize) -> HMatrix {
        let g: Vec<Rational> = (0..d).map(|k| int(d as i64 - 1 - 2 * k as i64)).collect();
        HMatrix::from_fn(g, |r, c| if c == r + 1 { HPoly::one() } else { HPoly::zero() })
    }

    #[test]
    fn artanh_first_correction() {
        // the z^3 coefficient of (2/h) artanh(hz/2) is (1/2)^2 / 3 = h^2/12
        let z = shift(4);
        let x = artanh_scaled(&z).unwrap();
        let want = &z + &z.pow(3).scale(&HPoly::monomial(rat(1, 12), 2));
        assert_eq!(x, want);
    }

    #[test]
    fn tanh_inverts_artanh() {
        for d in 1..=7 {
            let z = shift(d);
            let x = artanh_scaled(&z).unwrap();
            assert_eq!(tanh_scaled(&x).unwrap(), z, "d = {d}");
        }
    }

    #[test]
    fn cayley_matches_exponential() {
        for d in 1..=6 {
            let z = shift(d);
            let x = artanh_scaled(&z).unwrap();
            assert_eq!(cayley_h(&z, 1).unwrap(), exp_h(&x, 1).unwrap());
            assert_eq!(cayley_h(&z, -1).unwrap(), exp_h(&x, -1).unwrap());
            let prod = &cayley_h(&z, 1).unwrap() * &cayley_h(&z, -1).unwrap();
            assert_eq!(prod, z.identity_like());
        }
    }

    #[test]
    fn hyperbolic_identities() {
        let x = artanh_scaled(&shift(6)).unwrap();
        let c = cosh_half(&x).unwrap();
        let s = sinh_half(&x).unwrap();
        // cosh^2 - sinh^2 = 1 and 2 sinh cosh = sinh(hx)
        assert_eq!(&(&c * &c) - &(&s * &s), x.identity_like());
        assert_eq!((&s * &c).scale_rat(&int(2)), sinh_h(&x).unwrap());
        assert_eq!(sinh_h(&x).unwrap().div_h_pow(1).unwrap(), sinh_over_h(&x).unwrap());
        assert_eq!(sinh_half(&x).unwrap().scale_rat(&int(2)).div_h_pow(1).unwrap(), sinh_half_scaled(&x).unwrap());
        assert_eq!(&(&c * &c).scale_rat(&int(2)) - &x.identity_like(), cosh_h(&x).unwrap());
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        let i = HMatrix::identity(vec![Rational::zero(); 2]);
        assert_eq!(power_series(&i, |_| HPoly::one()), Err(Error::NotNilpotent));
    }
}
