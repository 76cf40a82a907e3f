//! The quadratic extension by the energy symbol `w`, subject to
//! `w^2 = m^2 - D1^2 - D2^2 - D3^2`.

use std::fmt;

use super::gaussian::Gaussian;
use super::rat::Rat;
use super::poly::{rational_sqrt, Poly, NVARS, VAR_D, VAR_M};
use super::ratfn::RatFn;
use crate::error::{Error, Result};

/// Defining polynomial `rho = m^2 - D1^2 - D2^2 - D3^2`, so that `w^2 = rho`.
pub fn omega_square() -> Poly {
    static RHO: std::sync::OnceLock<Poly> = std::sync::OnceLock::new();
    RHO.get_or_init(|| {
        let mut p = Poly::var(VAR_M).mul(&Poly::var(VAR_M));
        for k in 1..=3 {
            let d = Poly::var(VAR_D[k]);
            p = p.sub(&d.mul(&d));
        }
        p
    })
    .clone()
}

fn rho_ratfn() -> &'static RatFn {
    static RHO_RF: std::sync::OnceLock<RatFn> = std::sync::OnceLock::new();
    RHO_RF.get_or_init(|| RatFn::from_poly(omega_square()))
}

fn rho_inv_ratfn() -> &'static RatFn {
    static RHO_INV: std::sync::OnceLock<RatFn> = std::sync::OnceLock::new();
    RHO_INV.get_or_init(|| rho_ratfn().inv().expect("rho nonzero"))
}

/// Element `u + v*w` of the extension field; `w` never appears above the first power.
#[derive(Clone, Debug)]
pub struct FieldElem {
    pub u: RatFn,
    pub v: RatFn,
}

impl FieldElem {
    pub fn new(u: RatFn, v: RatFn) -> Self {
        FieldElem { u, v }
    }

    pub fn zero() -> Self {
        FieldElem::new(RatFn::zero(), RatFn::zero())
    }

    pub fn one() -> Self {
        FieldElem::new(RatFn::one(), RatFn::zero())
    }

    pub fn from_int(n: i64) -> Self {
        FieldElem::new(RatFn::constant(Gaussian::from_int(n)), RatFn::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        FieldElem::new(RatFn::constant(Gaussian::from_ratio(num, den)), RatFn::zero())
    }

    pub fn from_gaussian(c: Gaussian) -> Self {
        FieldElem::new(RatFn::constant(c), RatFn::zero())
    }

    pub fn from_poly(p: Poly) -> Self {
        FieldElem::new(RatFn::from_poly(p), RatFn::zero())
    }

    /// The imaginary unit as a field element.
    pub fn i() -> Self {
        FieldElem::from_gaussian(Gaussian::i())
    }

    /// The mass symbol.
    pub fn m() -> Self {
        FieldElem::from_poly(Poly::var(VAR_M))
    }

    /// The derivative symbol `D_mu`.
    pub fn d(mu: usize) -> Self {
        assert!(mu < 4);
        FieldElem::from_poly(Poly::var(VAR_D[mu]))
    }

    /// The energy symbol `w`.
    pub fn omega() -> Self {
        FieldElem::new(RatFn::zero(), RatFn::one())
    }

    /// Builds `sum coeffs[k] * w^k`, reducing the powers of `w` by the defining
    /// relation. The reduction is confluent; callers may hand the coefficients in
    /// any grouping and land on the same `(u, v)` pair.
    pub fn from_omega_powers(coeffs: &[RatFn]) -> Self {
        let rho = rho_ratfn().clone();
        let mut u = RatFn::zero();
        let mut v = RatFn::zero();
        let mut rho_pow = RatFn::one();
        for (k, c) in coeffs.iter().enumerate() {
            if k > 0 && k % 2 == 0 {
                rho_pow = rho_pow.mul(&rho);
            }
            if k % 2 == 0 {
                u = u.add(&c.mul(&rho_pow));
            } else {
                v = v.add(&c.mul(&rho_pow));
            }
        }
        FieldElem::new(u, v)
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.v.is_zero() && self.u.is_one()
    }

    pub fn eq_elem(&self, other: &FieldElem) -> bool {
        self.u == other.u && self.v == other.v
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        FieldElem::new(self.u.add(&other.u), self.v.add(&other.v))
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        FieldElem::new(self.u.sub(&other.u), self.v.sub(&other.v))
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem::new(self.u.neg(), self.v.neg())
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        let vv = if self.v.is_zero() || other.v.is_zero() {
            RatFn::zero()
        } else {
            self.v.mul(&other.v).mul(rho_ratfn())
        };
        let u = self.u.mul(&other.u).add(&vv);
        let v = self.u.mul(&other.v).add(&self.v.mul(&other.u));
        FieldElem::new(u, v)
    }

    pub fn scale(&self, c: &Gaussian) -> FieldElem {
        FieldElem::new(self.u.scale(c), self.v.scale(c))
    }

    /// Inverse of `u + v*w` by rationalization: `(u - v*w)/(u^2 - v^2*rho)`.
    pub fn inv(&self) -> Result<FieldElem> {
        let norm = self.u.mul(&self.u).sub(&self.v.mul(&self.v).mul(rho_ratfn()));
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ninv = norm.inv()?;
        Ok(FieldElem::new(self.u.mul(&ninv), self.v.neg().mul(&ninv)))
    }

    /// Coefficient conjugation `i -> -i`; fixes `m`, `D_mu` and `w`.
    pub fn conj_i(&self) -> FieldElem {
        FieldElem::new(self.u.conj_i(), self.v.conj_i())
    }

    /// Space parity `D_k -> -D_k` for k = 1..3; fixes `D0`, `m` and `w`.
    pub fn parity(&self) -> FieldElem {
        let mut flip = [false; NVARS];
        for k in 1..=3 {
            flip[VAR_D[k]] = true;
        }
        FieldElem::new(self.u.flip_vars(&flip), self.v.flip_vars(&flip))
    }

    /// Formal adjoint of a scalar symbol: `i -> -i` and `D_mu -> -D_mu` for all mu;
    /// `m` and `w` are fixed.
    pub fn adjoint(&self) -> FieldElem {
        let mut flip = [false; NVARS];
        for k in 0..4 {
            flip[VAR_D[k]] = true;
        }
        FieldElem::new(self.u.flip_vars(&flip).conj_i(), self.v.flip_vars(&flip).conj_i())
    }

    /// Formal partial derivative with respect to `D_mu`, using
    /// `dw/dD_k = -D_k/w = -D_k*w/rho` (k = 1..3) and `dw/dD0 = 0`.
    pub fn deriv_d(&self, mu: usize) -> FieldElem {
        assert!(mu < 4);
        let var = VAR_D[mu];
        let du = self.u.deriv(var);
        let mut dv = self.v.deriv(var);
        if mu != 0 && !self.v.is_zero() {
            let dk = RatFn::from_poly(Poly::var(var));
            let correction = self.v.mul(&dk).mul(rho_inv_ratfn());
            dv = dv.sub(&correction);
        }
        FieldElem::new(du, dv)
    }

    /// Exact evaluation at a sample consistent with the defining relation.
    pub fn eval(&self, sample: &Sample) -> Result<Gaussian> {
        let vals = sample.values();
        let u = self.u.eval(&vals)?;
        let v = self.v.eval(&vals)?;
        Ok(u.add_ref(&v.mul_ref(&Gaussian::from_rational(sample.omega.clone()))))
    }

    /// Degree of variable `var` anywhere in the element.
    pub fn degree_in(&self, var: usize) -> u16 {
        self.u.degree_in(var).max(self.v.degree_in(var))
    }

    pub fn pow(&self, n: u32) -> FieldElem {
        let mut acc = FieldElem::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.eq_elem(other)
    }
}

impl Eq for FieldElem {}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.v.is_zero() {
            return write!(f, "{}", self.u);
        }
        let vtxt = if self.v.is_one() { "w".to_string() } else { format!("({})*w", self.v) };
        if self.u.is_zero() {
            write!(f, "{vtxt}")
        } else {
            write!(f, "{} + {vtxt}", self.u)
        }
    }
}

/// Exact evaluation point. Stores Gaussian-rational values for `D0..D3`
/// together with rational `m` and `omega` satisfying
/// `omega^2 = m^2 - d1^2 - d2^2 - d3^2`.
#[derive(Clone, Debug)]
pub struct Sample {
    pub d: [Gaussian; 4],
    pub m: Rat,
    pub omega: Rat,
}

impl Sample {
    /// Momentum-style sample `D_mu = i*p_mu`, so `omega^2 = m^2 + p1^2 + p2^2 + p3^2`.
    /// Errors unless that sum is a perfect rational square (a Pythagorean choice).
    pub fn momentum(m: i64, p: [i64; 3]) -> Result<Sample> {
        Sample::momentum_with_p0(m, [0, p[0], p[1], p[2]])
    }

    pub fn momentum_with_p0(m: i64, p: [i64; 4]) -> Result<Sample> {
        let mr = Rat::from_int(m);
        let mut w2 = mr.mul(&mr);
        for pk in &p[1..] {
            let pr = Rat::from_int(*pk);
            w2 = w2.add(&pr.mul(&pr));
        }
        let omega = rational_sqrt(&w2)?;
        let d = [
            Gaussian::new(Rat::zero(), Rat::from_int(p[0])),
            Gaussian::new(Rat::zero(), Rat::from_int(p[1])),
            Gaussian::new(Rat::zero(), Rat::from_int(p[2])),
            Gaussian::new(Rat::zero(), Rat::from_int(p[3])),
        ];
        Sample::checked(d, mr, omega)
    }

    /// Real-valued sample `D_k = d_k`, so `omega^2 = m^2 - d1^2 - d2^2 - d3^2`.
    pub fn real_d(m: i64, dvals: [i64; 3]) -> Result<Sample> {
        let mr = Rat::from_int(m);
        let mut w2 = mr.mul(&mr);
        for dk in &dvals {
            let dr = Rat::from_int(*dk);
            w2 = w2.sub(&dr.mul(&dr));
        }
        let omega = rational_sqrt(&w2)?;
        let d = [
            Gaussian::zero(),
            Gaussian::from_int(dvals[0]),
            Gaussian::from_int(dvals[1]),
            Gaussian::from_int(dvals[2]),
        ];
        Sample::checked(d, mr, omega)
    }

    /// Validates the defining relation for explicitly supplied values.
    pub fn checked(d: [Gaussian; 4], m: Rat, omega: Rat) -> Result<Sample> {
        let mg = Gaussian::from_rational(m.clone());
        let mut w2 = mg.mul_ref(&mg);
        for k in 1..=3 {
            w2 = w2.sub_ref(&d[k].mul_ref(&d[k]));
        }
        let og = Gaussian::from_rational(omega.clone());
        if !w2.sub_ref(&og.mul_ref(&og)).is_zero() {
            return Err(Error::InconsistentSample(format!(
                "omega = {omega} does not satisfy omega^2 = m^2 - D1^2 - D2^2 - D3^2"
            )));
        }
        Ok(Sample { d, m, omega })
    }

    /// Values for the polynomial variables, in (D0, D1, D2, D3, m) order.
    pub fn values(&self) -> [Gaussian; NVARS] {
        [
            self.d[0].clone(),
            self.d[1].clone(),
            self.d[2].clone(),
            self.d[3].clone(),
            Gaussian::from_rational(self.m.clone()),
        ]
    }

    /// True when all `D` values are real, which is what realification of
    /// conjugation-carrying operators needs to stay multiplicative.
    pub fn is_real(&self) -> bool {
        self.d.iter().all(|g| g.im.is_zero())
    }
}
