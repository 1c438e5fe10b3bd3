//! Exact scalar, polynomial and truncated-series arithmetic.
//!
//! - [`Rational`]: arbitrary precision rationals, always reduced
//! - [`ZPoly`]: dense univariate polynomials in the formal symbol `z`
//! - [`MultiPoly`]: sparse polynomials in `x_1..x_N` with [`ZPoly`] coefficients
//! - [`BiSeries`]: power series in `t` and `u` truncated at inclusive orders

mod multipoly;
mod series;
mod zpoly;

pub use multipoly::{Monomial, MultiPoly};
pub use series::{series_geom_inverse, series_mul, BiSeries};
pub use zpoly::ZPoly;

use num::{BigInt, One, Zero};

pub type Rational = num::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Ordinary binomial `C(n, k)` for any integer `n`; zero when `k < 0`.
pub fn binom_int(n: i64, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    let mut num = BigInt::one();
    for s in 0..k {
        num *= BigInt::from(n - s);
    }
    Rational::new(num, factorial(k as usize))
}

/// `x (x+1) ... (x+n-1)`, with the empty product for `n = 0`.
pub fn rising_factorial(x: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// `binom(z + shift, k)` as a polynomial in `z`.
pub fn binom_z(shift: i64, k: i64) -> ZPoly {
    if k < 0 {
        return ZPoly::zero();
    }
    let mut acc = ZPoly::one();
    for s in 0..k {
        acc = &acc * &ZPoly::linear(rat(shift - s), Rational::one());
    }
    acc.scale(&Rational::new(BigInt::one(), factorial(k as usize)))
}

/// `(-1)^e` as a rational.
pub fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
