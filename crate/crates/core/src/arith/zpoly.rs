use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::{format_rational, Rational};

/// Dense polynomial in `z` over the rationals. `coeffs[d]` is the coefficient
/// of `z^d`; the last stored coefficient is never zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<Rational>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn z() -> Self {
        ZPoly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c0 + c1 z`
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        Self::from_coeffs(vec![c0, c1])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The value when the polynomial does not depend on `z`.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * z + c)
    }

    /// Whether a display of this coefficient needs parentheses when it
    /// multiplies something else.
    pub(crate) fn is_compound(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
    }
}

impl<'a> Add<&'a ZPoly> for &'a ZPoly {
    type Output = ZPoly;

    fn add(self, rhs: &'a ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::from_coeffs((0..n).map(|d| self.coeff(d) + rhs.coeff(d)).collect())
    }
}

impl<'a> Sub<&'a ZPoly> for &'a ZPoly {
    type Output = ZPoly;

    fn sub(self, rhs: &'a ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::from_coeffs((0..n).map(|d| self.coeff(d) - rhs.coeff(d)).collect())
    }
}

impl<'a> Mul<&'a ZPoly> for &'a ZPoly {
    type Output = ZPoly;

    fn mul(self, rhs: &'a ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::from_coeffs(out)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;

    fn neg(self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for ZPoly {
    /// Highest degree first, e.g. `1/2*z^2 - 3/2*z + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mag = format_rational(&abs);
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if d == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
