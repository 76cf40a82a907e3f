//! Normal-ordered operator algebra.
//!
//! An operator is a finite sum of terms `X^a * M * C^c` with `a` a multi-index
//! over X0..X3, `M` a 4x4 matrix of scalar field elements and `c` a binary
//! conjugation flag. The normal form keeps X symbols leftmost and the
//! conjugation flag rightmost; products are reordered with the rewrite rules
//!
//!   C*X_mu = X_mu*C,  C*f = conj(f)*C,  C*M = conj(M)*C,  C*C = 1,
//!   f*X_mu = X_mu*f + df/dD_mu,
//!
//! so that `[X_mu, D_nu] = -delta_mu_nu` for all sixteen index pairs.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{binomial, FieldElem, Gaussian, Rat, Sample};

/// Multi-index of X-symbol powers.
pub type XPow = [u16; 4];

/// Key of one normal-form term: X-powers plus the conjugation flag.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TermKey {
    pub x: XPow,
    pub c: bool,
}

impl TermKey {
    pub fn matrix() -> Self {
        TermKey { x: [0; 4], c: false }
    }
}

/// 4x4 matrix over the scalar field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat4(pub [[FieldElem; 4]; 4]);

impl Mat4 {
    pub fn zero() -> Self {
        Mat4(std::array::from_fn(|_| std::array::from_fn(|_| FieldElem::zero())))
    }

    pub fn identity() -> Self {
        let mut m = Mat4::zero();
        for k in 0..4 {
            m.0[k][k] = FieldElem::one();
        }
        m
    }

    pub fn scalar(f: &FieldElem) -> Self {
        let mut m = Mat4::zero();
        for k in 0..4 {
            m.0[k][k] = f.clone();
        }
        m
    }

    /// Builds a matrix from integer Gaussian entries given as (re, im) pairs.
    pub fn from_int_entries(entries: [[(i64, i64); 4]; 4]) -> Self {
        Mat4(std::array::from_fn(|r| {
            std::array::from_fn(|c| {
                let (re, im) = entries[r][c];
                FieldElem::from_gaussian(
                    Gaussian::from_int(re).add_ref(&Gaussian::from_int(im).mul_ref(&Gaussian::i())),
                )
            })
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|row| row.iter().all(FieldElem::is_zero))
    }

    pub fn add(&self, other: &Mat4) -> Mat4 {
        Mat4(std::array::from_fn(|r| std::array::from_fn(|c| self.0[r][c].add(&other.0[r][c]))))
    }

    pub fn neg(&self) -> Mat4 {
        self.map(FieldElem::neg)
    }

    pub fn mul(&self, other: &Mat4) -> Mat4 {
        let mut out = Mat4::zero();
        for r in 0..4 {
            for c in 0..4 {
                let mut acc = FieldElem::zero();
                for k in 0..4 {
                    if self.0[r][k].is_zero() || other.0[k][c].is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.0[r][k].mul(&other.0[k][c]));
                }
                out.0[r][c] = acc;
            }
        }
        out
    }

    pub fn scale(&self, f: &FieldElem) -> Mat4 {
        self.map(|e| e.mul(f))
    }

    pub fn scale_gaussian(&self, g: &Gaussian) -> Mat4 {
        self.map(|e| e.scale(g))
    }

    pub fn map(&self, f: impl Fn(&FieldElem) -> FieldElem) -> Mat4 {
        Mat4(std::array::from_fn(|r| std::array::from_fn(|c| f(&self.0[r][c]))))
    }

    pub fn conj_i(&self) -> Mat4 {
        self.map(FieldElem::conj_i)
    }

    pub fn transpose(&self) -> Mat4 {
        Mat4(std::array::from_fn(|r| std::array::from_fn(|c| self.0[c][r].clone())))
    }

    pub fn trace(&self) -> FieldElem {
        let mut acc = FieldElem::zero();
        for k in 0..4 {
            acc = acc.add(&self.0[k][k]);
        }
        acc
    }

    fn deriv_d(&self, mu: usize) -> Mat4 {
        self.map(|e| e.deriv_d(mu))
    }
}

/// A normal-ordered operator: map from term key to matrix coefficient.
#[derive(Clone, Debug, Default)]
pub struct Operator {
    terms: BTreeMap<TermKey, Mat4>,
}

impl Operator {
    pub fn zero() -> Self {
        Operator { terms: BTreeMap::new() }
    }

    pub fn identity() -> Self {
        Operator::from_matrix(Mat4::identity())
    }

    /// A scalar field element times the identity matrix.
    pub fn scalar(f: FieldElem) -> Self {
        Operator::from_matrix(Mat4::scalar(&f))
    }

    pub fn from_int(n: i64) -> Self {
        Operator::scalar(FieldElem::from_int(n))
    }

    /// The imaginary unit as an operator.
    pub fn i() -> Self {
        Operator::scalar(FieldElem::i())
    }

    /// The conjugation operator `C`.
    pub fn c_hat() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(TermKey { x: [0; 4], c: true }, Mat4::identity());
        Operator { terms }
    }

    /// The coordinate symbol `X_mu`.
    pub fn x(mu: usize) -> Self {
        assert!(mu < 4);
        let mut x = [0u16; 4];
        x[mu] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(TermKey { x, c: false }, Mat4::identity());
        Operator { terms }
    }

    /// The derivative symbol `D_mu` (a scalar).
    pub fn d(mu: usize) -> Self {
        Operator::scalar(FieldElem::d(mu))
    }

    pub fn from_matrix(m: Mat4) -> Self {
        let mut op = Operator::zero();
        op.accumulate(TermKey::matrix(), m);
        op
    }

    pub fn from_term(key: TermKey, m: Mat4) -> Self {
        let mut op = Operator::zero();
        op.accumulate(key, m);
        op
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Mat4)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_x_free(&self) -> bool {
        self.terms.keys().all(|k| k.x == [0; 4])
    }

    pub fn has_c_flag(&self) -> bool {
        self.terms.keys().any(|k| k.c)
    }

    fn accumulate(&mut self, key: TermKey, m: Mat4) {
        if m.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(m);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&m);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Operator) -> Operator {
        let mut out = self.clone();
        for (k, m) in &other.terms {
            out.accumulate(*k, m.clone());
        }
        out
    }

    pub fn sub(&self, other: &Operator) -> Operator {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Operator {
        Operator {
            terms: self.terms.iter().map(|(k, m)| (*k, m.neg())).collect(),
        }
    }

    /// Entrywise multiplication by a constant Gaussian rational. Constants
    /// commute with X symbols and pass the conjugation flag on the left, so no
    /// reordering is needed.
    pub fn scale_gaussian(&self, g: &Gaussian) -> Operator {
        if g.is_zero() {
            return Operator::zero();
        }
        Operator {
            terms: self.terms.iter().map(|(k, m)| (*k, m.scale_gaussian(g))).collect(),
        }
    }

    /// Normal-ordered product.
    pub fn mul(&self, other: &Operator) -> Operator {
        let mut out = Operator::zero();
        for (ka, ma) in &self.terms {
            for (kb, mb) in &other.terms {
                let mb = if ka.c { mb.conj_i() } else { mb.clone() };
                let cflag = ka.c ^ kb.c;
                // Move X^{kb.x} to the left through `ma`:
                // M * X^b = sum_{j <= b} binom(b, j) X^{b-j} * d^j M / dD^j.
                distribute_x(ma, &kb.x, |j, coeff, deriv_ma| {
                    let mut x = [0u16; 4];
                    for t in 0..4 {
                        x[t] = ka.x[t] + kb.x[t] - j[t];
                    }
                    let m = deriv_ma.mul(&mb).scale_gaussian(&coeff);
                    out.accumulate(TermKey { x, c: cflag }, m);
                });
            }
        }
        out
    }

    pub fn commutator(&self, other: &Operator) -> Operator {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn anticommutator(&self, other: &Operator) -> Operator {
        self.mul(other).add(&other.mul(self))
    }

    /// Formal adjoint: `X_mu` and `C` are self-adjoint, `D_mu -> -D_mu`,
    /// `i -> -i`, matrices go to their conjugate transpose, and the factor
    /// order reverses.
    pub fn adjoint(&self) -> Operator {
        let mut out = Operator::zero();
        for (k, m) in &self.terms {
            // (X^a M C^c)^+ = C^c M^+ X^a = conj^c(M^+) X^a C^c.
            let mut madj = m.map(FieldElem::adjoint).transpose();
            if k.c {
                madj = madj.conj_i();
            }
            let cflag = k.c;
            distribute_x(&madj, &k.x, |j, coeff, deriv| {
                let mut x = [0u16; 4];
                for t in 0..4 {
                    x[t] = k.x[t] - j[t];
                }
                out.accumulate(TermKey { x, c: cflag }, deriv.scale_gaussian(&coeff));
            });
        }
        out
    }

    /// Applies the space parity `D_k -> -D_k` to every matrix entry; the X and
    /// conjugation structure is untouched.
    pub fn parity(&self) -> Operator {
        Operator {
            terms: self.terms.iter().map(|(k, m)| (*k, m.map(FieldElem::parity))).collect(),
        }
    }

    /// Flips the sign of every conjugation-flagged term. For a first-order
    /// equation operator `L = i*D0 + (D0-free part)` this is exactly the
    /// cofactor `R` with `L*Q = R*L` when `Q` is invariant.
    pub fn conj_twist(&self) -> Operator {
        Operator {
            terms: self
                .terms
                .iter()
                .map(|(k, m)| (*k, if k.c { m.neg() } else { m.clone() }))
                .collect(),
        }
    }

    pub fn equals(&self, other: &Operator) -> bool {
        self.sub(other).is_zero()
    }

    /// Entrywise derivative with respect to `D_mu` of all matrix coefficients.
    pub fn deriv_d_entries(&self, mu: usize) -> Operator {
        let mut out = Operator::zero();
        for (k, m) in &self.terms {
            out.accumulate(*k, m.deriv_d(mu));
        }
        out
    }

    /// Coefficient of `D0^power` of every matrix entry, as an operator.
    /// Requires all denominators to be D0-free.
    pub fn d0_coefficient(&self, power: u16) -> Result<Operator> {
        let mut out = Operator::zero();
        for (k, m) in &self.terms {
            let coeff = Mat4(std::array::from_fn(|r| {
                std::array::from_fn(|c| d0_coeff_elem(&m.0[r][c], power))
            }));
            // Validate denominators separately so the error survives the closure.
            for row in &m.0 {
                for e in row {
                    if e.u.den().degree_in(crate::scalar::VAR_D[0]) > 0
                        || e.v.den().degree_in(crate::scalar::VAR_D[0]) > 0
                    {
                        return Err(Error::SolverNonPolynomial(
                            "denominator depends on D0".into(),
                        ));
                    }
                }
            }
            out.accumulate(*k, coeff);
        }
        Ok(out)
    }

    /// Exact realification at a sample: the complex 4-component space viewed as
    /// an 8-dimensional real one, with the conjugation flag acting as the block
    /// diag(1, -1). Requires an X-free operator.
    pub fn realify(&self, sample: &Sample) -> Result<RealMat> {
        if !self.is_x_free() {
            return Err(Error::XSymbolsPresent("realify".into()));
        }
        let mut out = RealMat::zero(8);
        for (k, m) in &self.terms {
            let mut value = vec![vec![Gaussian::zero(); 4]; 4];
            for r in 0..4 {
                for c in 0..4 {
                    value[r][c] = m.0[r][c].eval(sample)?;
                }
            }
            for r in 0..4 {
                for c in 0..4 {
                    let re = &value[r][c].re;
                    let im = &value[r][c].im;
                    if k.c {
                        // [[Re, Im], [Im, -Re]] block structure.
                        out.0[r][c] = out.0[r][c].add(re);
                        out.0[r][c + 4] = out.0[r][c + 4].add(im);
                        out.0[r + 4][c] = out.0[r + 4][c].add(im);
                        out.0[r + 4][c + 4] = out.0[r + 4][c + 4].sub(re);
                    } else {
                        // [[Re, -Im], [Im, Re]] block structure.
                        out.0[r][c] = out.0[r][c].add(re);
                        out.0[r][c + 4] = out.0[r][c + 4].sub(im);
                        out.0[r + 4][c] = out.0[r + 4][c].add(im);
                        out.0[r + 4][c + 4] = out.0[r + 4][c + 4].add(re);
                    }
                }
            }
        }
        Ok(out)
    }

    /// True when every matrix entry is constant (no polynomial variables).
    pub fn is_constant_matrix(&self) -> bool {
        self.terms.values().all(|m| {
            m.0.iter().all(|row| {
                row.iter().all(|e| {
                    e.v.is_zero() && e.u.den().is_one() && e.u.num().is_constant()
                })
            })
        })
    }

    /// If the operator is `f * Identity` with no X symbols and no conjugation
    /// flag, returns `f`.
    pub fn as_scalar(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return Some(FieldElem::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (k, m) = self.terms.iter().next()?;
        if k.x != [0; 4] || k.c {
            return None;
        }
        let f = m.0[0][0].clone();
        for r in 0..4 {
            for c in 0..4 {
                if r == c {
                    if !m.0[r][c].eq_elem(&f) {
                        return None;
                    }
                } else if !m.0[r][c].is_zero() {
                    return None;
                }
            }
        }
        Some(f)
    }
}

/// Enumerates multi-indices `j <= b`, handing the caller the binomial weight
/// and the j-th entrywise D-derivative of `m`.
fn distribute_x(m: &Mat4, b: &XPow, mut sink: impl FnMut(XPow, Gaussian, &Mat4)) {
    // Walk axis by axis, differentiating incrementally.
    let mut stack: Vec<(XPow, Gaussian, Mat4)> =
        vec![([0u16; 4], Gaussian::one(), m.clone())];
    for mu in 0..4 {
        if b[mu] == 0 {
            continue;
        }
        let mut next = Vec::new();
        for (j, coeff, mat) in stack {
            let mut cur = mat;
            for step in 0..=b[mu] {
                let mut jj = j;
                jj[mu] = step;
                let w = coeff.mul_ref(&binomial(b[mu], step));
                next.push((jj, w, cur.clone()));
                if step < b[mu] {
                    cur = cur.deriv_d(mu);
                    if cur.is_zero() {
                        // Higher derivatives stay zero; emit remaining steps lazily.
                        break;
                    }
                }
            }
        }
        stack = next;
    }
    for (j, coeff, mat) in &stack {
        if !mat.is_zero() {
            sink(*j, coeff.clone(), mat);
        }
    }
}

fn d0_coeff_elem(e: &FieldElem, power: u16) -> FieldElem {
    use crate::scalar::{Poly, RatFn, VAR_D};
    let pick = |rf: &RatFn| -> RatFn {
        let coeffs = rf.num().coeffs_in_var(VAR_D[0]);
        let num = coeffs.get(usize::from(power)).cloned().unwrap_or_else(Poly::zero);
        RatFn::new(num, rf.den().clone())
    };
    FieldElem::new(pick(&e.u), pick(&e.v))
}

/// Exact rational matrix used by realification and the rank computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealMat(pub Vec<Vec<Rat>>);

impl RealMat {
    pub fn zero(n: usize) -> Self {
        RealMat(vec![vec![Rat::zero(); n]; n])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RealMat::zero(n);
        for k in 0..n {
            m.0[k][k] = Rat::one();
        }
        m
    }

    pub fn mul(&self, other: &RealMat) -> RealMat {
        let n = self.0.len();
        let mut out = RealMat::zero(n);
        for r in 0..n {
            for k in 0..n {
                if self.0[r][k].is_zero() {
                    continue;
                }
                for c in 0..n {
                    if other.0[k][c].is_zero() {
                        continue;
                    }
                    let product = self.0[r][k].mul(&other.0[k][c]);
                    out.0[r][c] = out.0[r][c].add(&product);
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> RealMat {
        RealMat(self.0.iter().map(|row| row.iter().map(|v| v.mul(s)).collect()).collect())
    }

    pub fn add(&self, other: &RealMat) -> RealMat {
        RealMat(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| a.add(b)).collect())
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|row| row.iter().all(Rat::is_zero))
    }

    /// Row-major flattening.
    pub fn flatten(&self) -> Vec<Rat> {
        self.0.iter().flatten().cloned().collect()
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, m) in &self.terms {
            if !first {
                writeln!(f)?;
            }
            first = false;
            let mut head = String::new();
            for mu in 0..4 {
                for _ in 0..k.x[mu] {
                    head.push_str(&format!("X{mu}*"));
                }
            }
            let tail = if k.c { " *C" } else { "" };
            writeln!(f, "term {head}[matrix]{tail}:")?;
            for r in 0..4 {
                let row: Vec<String> = (0..4).map(|c| m.0[r][c].to_string()).collect();
                writeln!(f, "  [ {} ]", row.join(", "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma0() -> Operator {
        Operator::from_matrix(Mat4::from_int_entries([
            [(1, 0), (0, 0), (0, 0), (0, 0)],
            [(0, 0), (1, 0), (0, 0), (0, 0)],
            [(0, 0), (0, 0), (-1, 0), (0, 0)],
            [(0, 0), (0, 0), (0, 0), (-1, 0)],
        ]))
    }

    #[test]
    fn conjugation_is_antilinear_involution() {
        let c = Operator::c_hat();
        let i = Operator::i();
        // C i = -i C
        assert!(c.mul(&i).equals(&i.neg().mul(&c)));
        // C C = 1
        assert!(c.mul(&c).equals(&Operator::identity()));
    }

    #[test]
    fn x_d_reordering() {
        // D1 * X1 = X1*D1 + 1
        let lhs = Operator::d(1).mul(&Operator::x(1));
        let rhs = Operator::x(1).mul(&Operator::d(1)).add(&Operator::identity());
        assert!(lhs.equals(&rhs));
        // [X_mu, D_nu] = -delta for all sixteen pairs
        for mu in 0..4 {
            for nu in 0..4 {
                let comm = Operator::x(mu).commutator(&Operator::d(nu));
                let expect = if mu == nu { Operator::from_int(-1) } else { Operator::zero() };
                assert!(comm.equals(&expect), "pair ({mu},{nu})");
            }
        }
    }

    #[test]
    fn x_equality_respects_reordering() {
        // X1*D1 != D1*X1 (they differ by 1)
        let a = Operator::x(1).mul(&Operator::d(1));
        let b = Operator::d(1).mul(&Operator::x(1));
        assert!(!a.equals(&b));
        assert!(a.sub(&b).equals(&Operator::from_int(-1)));
    }

    #[test]
    fn higher_x_powers_reorder_with_binomials() {
        // f = D1^2, f * X1^2 = X1^2 f + 2 X1 (2 D1) + 2
        let f = Operator::d(1).mul(&Operator::d(1));
        let x2 = Operator::x(1).mul(&Operator::x(1));
        let lhs = f.mul(&x2);
        let rhs = x2
            .mul(&f)
            .add(&Operator::x(1).mul(&Operator::d(1)).scale_gaussian(&Gaussian::from_int(4)))
            .add(&Operator::from_int(2));
        assert!(lhs.equals(&rhs));
    }

    #[test]
    fn adjoint_rules() {
        // (D1)^+ = -D1
        assert!(Operator::d(1).adjoint().equals(&Operator::d(1).neg()));
        // (X1 D2)^+ = -X1 D2
        let a = Operator::x(1).mul(&Operator::d(2));
        assert!(a.adjoint().equals(&a.neg()));
        // (X1 D1)^+ = -X1 D1 - 1
        let b = Operator::x(1).mul(&Operator::d(1));
        assert!(b.adjoint().equals(&b.neg().sub(&Operator::identity())));
        // adjoint is an involution on a mixed term
        let m = gamma0().mul(&Operator::i()).mul(&Operator::x(2)).mul(&Operator::d(3));
        assert!(m.adjoint().adjoint().equals(&m));
    }

    #[test]
    fn realify_blocks() {
        let s = Sample::momentum(3, [0, 0, 4]).unwrap();
        let id = Operator::identity().realify(&s).unwrap();
        assert_eq!(id, RealMat::identity(8));
        let i_real = Operator::i().realify(&s).unwrap();
        // [[0, -1], [1, 0]] block pattern
        let mut expect = RealMat::zero(8);
        for k in 0..4 {
            expect.0[k][k + 4] = Rat::from_int(-1);
            expect.0[k + 4][k] = Rat::from_int(1);
        }
        assert_eq!(i_real, expect);
        let c_real = Operator::c_hat().realify(&s).unwrap();
        let mut expect = RealMat::zero(8);
        for k in 0..4 {
            expect.0[k][k] = Rat::from_int(1);
            expect.0[k + 4][k + 4] = Rat::from_int(-1);
        }
        assert_eq!(c_real, expect);
        assert!(Operator::x(0).realify(&s).is_err());
    }

    #[test]
    fn scalar_views() {
        let half_i = Operator::i().scale_gaussian(&Gaussian::from_ratio(1, 2));
        let f = half_i.as_scalar().unwrap();
        assert_eq!(f, FieldElem::i().scale(&Gaussian::from_ratio(1, 2)));
        assert!(gamma0().as_scalar().is_none());
        assert!(Operator::c_hat().as_scalar().is_none());
    }
}
