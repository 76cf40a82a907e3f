//! Fractions of multivariate polynomials.
//!
//! Fractions are not fully reduced: equality and zero tests go through
//! cross-multiplication, which keeps the arithmetic exact without multivariate
//! GCDs. Cheap cancellations (monomial content, exact division, monic
//! denominator) keep the terms small at this crate's working scale.

use std::fmt;

use super::gaussian::Gaussian;
use super::poly::Poly;
use crate::error::{Error, Result};

/// A ratio of polynomials with a nonzero denominator.
#[derive(Clone, Debug)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator polynomial");
        let mut rf = RatFn { num, den };
        rf.normalize();
        rf
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn zero() -> Self {
        RatFn::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFn::from_poly(Poly::one())
    }

    pub fn constant(c: Gaussian) -> Self {
        RatFn::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        if !self.den.is_one() {
            // Common monomial factor.
            let cn = self.num.mono_content();
            let cd = self.den.mono_content();
            let mut g = cn;
            for k in 0..g.0.len() {
                g.0[k] = g.0[k].min(cd.0[k]);
            }
            if g.degree() > 0 {
                self.num = self.num.div_mono(&g);
                self.den = self.den.div_mono(&g);
            }
            // Exact polynomial division clears the denominator when possible.
            if let Some(q) = self.num.try_div(&self.den) {
                self.num = q;
                self.den = Poly::one();
            }
        }
        // Monic denominator for a deterministic rendering.
        if let Some((_, lc)) = self.den.leading() {
            if !lc.is_one() {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.num = self.num.scale(&inv);
                self.den = self.den.scale(&inv);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// Cross-multiplication equality: a/b = c/d iff ad - cb = 0.
    pub fn eq_cross(&self, other: &RatFn) -> bool {
        self.num.mul(&other.den).sub(&other.num.mul(&self.den)).is_zero()
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFn::new(self.num.add(&other.num), self.den.clone());
        }
        // When one denominator divides the other, only scale one side.
        if let Some(q) = other.den.try_div(&self.den) {
            return RatFn::new(self.num.mul(&q).add(&other.num), other.den.clone());
        }
        if let Some(q) = self.den.try_div(&other.den) {
            return RatFn::new(self.num.add(&other.num.mul(&q)), self.den.clone());
        }
        RatFn::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        // Cross-cancel cheaply before multiplying out.
        let (mut an, mut bd) = (self.num.clone(), other.den.clone());
        if !bd.is_one() {
            if let Some(q) = an.try_div(&bd) {
                an = q;
                bd = Poly::one();
            }
        }
        let (mut bn, mut ad) = (other.num.clone(), self.den.clone());
        if !ad.is_one() {
            if let Some(q) = bn.try_div(&ad) {
                bn = q;
                ad = Poly::one();
            }
        }
        RatFn::new(an.mul(&bn), ad.mul(&bd))
    }

    pub fn inv(&self) -> Result<RatFn> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFn::new(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Gaussian) -> RatFn {
        if c.is_zero() {
            return RatFn::zero();
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn conj_i(&self) -> RatFn {
        RatFn::new(self.num.conj_i(), self.den.conj_i())
    }

    pub fn flip_vars(&self, flip: &[bool; super::poly::NVARS]) -> RatFn {
        RatFn::new(self.num.flip_vars(flip), self.den.flip_vars(flip))
    }

    /// Quotient-rule derivative with respect to polynomial variable `idx`.
    pub fn deriv(&self, idx: usize) -> RatFn {
        if self.den.is_one() {
            return RatFn::from_poly(self.num.deriv(idx));
        }
        let num = self.num.deriv(idx).mul(&self.den).sub(&self.num.mul(&self.den.deriv(idx)));
        RatFn::new(num, self.den.mul(&self.den))
    }

    pub fn eval(&self, values: &[Gaussian; super::poly::NVARS]) -> Result<Gaussian> {
        let d = self.den.eval(values);
        if d.is_zero() {
            return Err(Error::DivisionByZeroAtSample);
        }
        Ok(self.num.eval(values).mul_ref(&d.inv()?))
    }

    /// Degree of `var` appearing anywhere in the fraction.
    pub fn degree_in(&self, var: usize) -> u16 {
        self.num.degree_in(var).max(self.den.degree_in(var))
    }
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        self.eq_cross(other)
    }
}

impl Eq for RatFn {}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::poly::{VAR_D, VAR_M};

    fn d(k: usize) -> Poly {
        Poly::var(VAR_D[k])
    }

    fn m() -> Poly {
        Poly::var(VAR_M)
    }

    #[test]
    fn cross_multiplication_equality() {
        // m/D1 == (m*D2)/(D1*D2)
        let a = RatFn::new(m(), d(1));
        let b = RatFn::new(m().mul(&d(2)), d(1).mul(&d(2)));
        assert!(a.eq_cross(&b));
        assert!(a.sub(&b).is_zero());
    }

    #[test]
    fn exact_division_normalizes() {
        // (D1^2 - m^2)/(D1 + m) = D1 - m
        let a = RatFn::new(d(1).mul(&d(1)).sub(&m().mul(&m())), d(1).add(&m()));
        assert!(a.den().is_one());
        assert_eq!(a.num(), &d(1).sub(&m()));
    }

    #[test]
    fn inverse_and_product() {
        let a = RatFn::new(m().add(&d(1)), d(2));
        let prod = a.mul(&a.inv().unwrap());
        assert!(prod.is_one());
        assert!(RatFn::zero().inv().is_err());
    }

    #[test]
    fn quotient_rule() {
        // d(1/D1)/dD1 = -1/D1^2
        let a = RatFn::new(Poly::one(), d(1));
        let da = a.deriv(VAR_D[1]);
        let expect = RatFn::new(Poly::one().neg(), d(1).mul(&d(1)));
        assert_eq!(da, expect);
        let _ = VAR_M;
    }
}
