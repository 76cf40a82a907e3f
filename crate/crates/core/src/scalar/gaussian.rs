//! Gaussian rationals: complex numbers with exact rational real and imaginary parts.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rat::Rat;
use crate::error::{Error, Result};

/// Exact element of Q(i), kept in canonical reduced form by `Rat`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gaussian {
    pub re: Rat,
    pub im: Rat,
}

impl Gaussian {
    pub fn new(re: Rat, im: Rat) -> Self {
        Gaussian { re, im }
    }

    pub fn zero() -> Self {
        Gaussian::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        Gaussian::new(Rat::one(), Rat::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Gaussian::new(Rat::zero(), Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Gaussian::new(Rat::from_int(n), Rat::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Gaussian::new(Rat::from_ratio(num, den), Rat::zero())
    }

    pub fn from_rational(r: Rat) -> Self {
        Gaussian::new(r, Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugation, `i -> -i`.
    pub fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), self.im.neg())
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self> {
        let norm = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let ninv = norm.inv().ok_or(Error::DivisionByZero)?;
        Ok(Gaussian::new(self.re.mul(&ninv), self.im.mul(&ninv).neg()))
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        Gaussian::new(
            self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        )
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        Gaussian::new(self.re.add(&other.re), self.im.add(&other.im))
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        Gaussian::new(self.re.sub(&other.re), self.im.sub(&other.im))
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: Gaussian) -> Gaussian {
        self.add_ref(&rhs)
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: Gaussian) -> Gaussian {
        self.sub_ref(&rhs)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: Gaussian) -> Gaussian {
        self.mul_ref(&rhs)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(self.re.neg(), self.im.neg())
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if !self.re.is_zero() {
            parts.push(self.re.to_string());
        }
        if !self.im.is_zero() {
            let im = if self.im.is_one() {
                "i".to_string()
            } else if self.im.neg().is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", self.im)
            };
            if parts.is_empty() {
                parts.push(im);
            } else if self.im.is_negative() {
                parts.push(format!("- {}", &im[1..]));
            } else {
                parts.push(format!("+ {im}"));
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugation_is_involutive_automorphism() {
        let a = Gaussian::new(Rat::from_ratio(2, 3), Rat::from_int(5));
        let b = Gaussian::from_ratio(-1, 7) + Gaussian::i();
        assert_eq!(a.conj().conj(), a);
        assert_eq!(a.conj().mul_ref(&b.conj()), a.mul_ref(&b).conj());
        assert_eq!(a.conj().add_ref(&b.conj()), a.add_ref(&b).conj());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Gaussian::new(Rat::from_int(3), Rat::from_int(4));
        let inv = a.inv().unwrap();
        assert!(a.mul_ref(&inv).is_one());
        assert_eq!(Gaussian::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Gaussian::zero().to_string(), "0");
        assert_eq!(Gaussian::from_ratio(-1, 2).to_string(), "-1/2");
        assert_eq!((Gaussian::from_int(2) + Gaussian::i()).to_string(), "2 + i");
        assert_eq!((Gaussian::from_int(1) - Gaussian::i()).to_string(), "1 - i");
    }
}
