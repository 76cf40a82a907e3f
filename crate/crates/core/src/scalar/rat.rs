//! Exact rational scalar with an i128 fast path.
//!
//! Coefficients in this crate are almost always tiny (halves and quarters of
//! small integers), so the common case avoids heap allocation entirely and
//! silently promotes to arbitrary precision on overflow.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Normalized rational: reduced, positive denominator.
#[derive(Clone, Debug)]
pub enum Rat {
    Small(i128, i128),
    Big(Box<BigRational>),
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    // Caller guards make 2^127 unreachable here.
    a as i128
}

impl Rat {
    pub fn zero() -> Self {
        Rat::Small(0, 1)
    }

    pub fn one() -> Self {
        Rat::Small(1, 1)
    }

    pub fn from_int(n: i64) -> Self {
        Rat::Small(i128::from(n), 1)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat::small_normalized(i128::from(num), i128::from(den))
    }

    fn small_normalized(mut n: i128, mut d: i128) -> Self {
        if n == 0 {
            return Rat::Small(0, 1);
        }
        // The extreme value has no i128 negation; fall back to big integers.
        if n == i128::MIN || d == i128::MIN {
            return Rat::big_normalized(BigRational::new(BigInt::from(n), BigInt::from(d)));
        }
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_i128(n, d);
        Rat::Small(n / g, d / g)
    }

    fn big_normalized(b: BigRational) -> Self {
        // Demote when both parts fit comfortably.
        if let (Some(n), Some(d)) = (b.numer().to_i128(), b.denom().to_i128()) {
            if n.abs() < (1 << 96) && d.abs() < (1 << 96) {
                return Rat::Small(n, d);
            }
        }
        Rat::Big(Box::new(b))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    pub fn from_big(b: BigRational) -> Self {
        Rat::big_normalized(b)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n == 0,
            Rat::Big(b) => b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Rat::Small(n, d) => *n == 1 && *d == 1,
            Rat::Big(b) => b.is_one(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n < 0,
            Rat::Big(b) => b.is_negative(),
        }
    }

    pub fn add(&self, other: &Rat) -> Rat {
        if let (Rat::Small(n1, d1), Rat::Small(n2, d2)) = (self, other) {
            if let Some(r) = small_add(*n1, *d1, *n2, *d2) {
                return r;
            }
        }
        Rat::big_normalized(self.to_big() + other.to_big())
    }

    pub fn sub(&self, other: &Rat) -> Rat {
        if let (Rat::Small(n1, d1), Rat::Small(n2, d2)) = (self, other) {
            if let Some(neg) = n2.checked_neg() {
                if let Some(r) = small_add(*n1, *d1, neg, *d2) {
                    return r;
                }
            }
        }
        Rat::big_normalized(self.to_big() - other.to_big())
    }

    pub fn mul(&self, other: &Rat) -> Rat {
        if let (Rat::Small(n1, d1), Rat::Small(n2, d2)) = (self, other) {
            if *n1 == i128::MIN || *n2 == i128::MIN {
                return Rat::big_normalized(self.to_big() * other.to_big());
            }
            // Cross-reduce first to keep the products small.
            let g1 = gcd_i128(*n1, *d2).max(1);
            let g2 = gcd_i128(*n2, *d1).max(1);
            let (a, b) = (n1 / g1, d2 / g1);
            let (c, d) = (n2 / g2, d1 / g2);
            if let (Some(n), Some(den)) = (a.checked_mul(c), d.checked_mul(b)) {
                return Rat::small_normalized(n, den);
            }
        }
        Rat::big_normalized(self.to_big() * other.to_big())
    }

    pub fn div(&self, other: &Rat) -> Rat {
        assert!(!other.is_zero(), "division by zero");
        match other {
            Rat::Small(n, d) => self.mul(&Rat::small_normalized(*d, *n)),
            Rat::Big(b) => Rat::big_normalized(self.to_big() / (**b).clone()),
        }
    }

    pub fn neg(&self) -> Rat {
        match self {
            Rat::Small(n, d) => {
                if let Some(m) = n.checked_neg() {
                    Rat::Small(m, *d)
                } else {
                    Rat::big_normalized(-self.to_big())
                }
            }
            Rat::Big(b) => Rat::big_normalized(-(**b).clone()),
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn inv(&self) -> Option<Rat> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rat::Small(n, d) => Rat::small_normalized(*d, *n),
            Rat::Big(b) => Rat::big_normalized(BigRational::one() / (**b).clone()),
        })
    }
}

fn small_add(n1: i128, d1: i128, n2: i128, d2: i128) -> Option<Rat> {
    let g = gcd_i128(d1, d2).max(1);
    let (q1, q2) = (d1 / g, d2 / g);
    let num = n1.checked_mul(q2)?.checked_add(n2.checked_mul(q1)?)?;
    let den = d1.checked_mul(q2)?;
    Some(Rat::small_normalized(num, den))
}

impl PartialEq for Rat {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rat::Small(n1, d1), Rat::Small(n2, d2)) => n1 == n2 && d1 == d2,
            _ => self.to_big() == other.to_big(),
        }
    }
}

impl Eq for Rat {}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rat::Small(n1, d1), Rat::Small(n2, d2)) => {
                match (n1.checked_mul(*d2), n2.checked_mul(*d1)) {
                    (Some(a), Some(b)) => a.cmp(&b),
                    _ => self.to_big().cmp(&other.to_big()),
                }
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(b) => {
                if b.denom().is_one() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Rat::from_ratio(1, 2);
        let b = Rat::from_ratio(-1, 3);
        assert_eq!(a.add(&b), Rat::from_ratio(1, 6));
        assert_eq!(a.mul(&b), Rat::from_ratio(-1, 6));
        assert_eq!(a.sub(&b), Rat::from_ratio(5, 6));
        assert_eq!(a.div(&b), Rat::from_ratio(-3, 2));
        assert_eq!(b.inv().unwrap(), Rat::from_int(-3));
        assert!(Rat::zero().inv().is_none());
        assert!(b.is_negative());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rat::Small(i128::MAX / 2, 1);
        let doubled = big.add(&big);
        // Exact regardless of representation.
        assert_eq!(doubled.to_big(), big.to_big() * BigRational::from_integer(2.into()));
        let back = doubled.sub(&big);
        assert_eq!(back, big);
    }

    #[test]
    fn extreme_values_promote_cleanly() {
        let a = Rat::Small(i128::MIN, 1);
        assert!(!a.neg().is_negative());
        assert_eq!(a.neg().to_big(), -a.to_big());
        let b = Rat::Small(1, 1).add(&a);
        assert_eq!(b.to_big(), a.to_big() + BigRational::one());
        assert_eq!(a.abs().to_big(), -a.to_big());
    }

    #[test]
    fn ordering_and_display() {
        assert!(Rat::from_ratio(1, 3) < Rat::from_ratio(1, 2));
        assert_eq!(Rat::from_ratio(-4, 2).to_string(), "-2");
        assert_eq!(Rat::from_ratio(3, -6).to_string(), "-1/2");
    }
}
