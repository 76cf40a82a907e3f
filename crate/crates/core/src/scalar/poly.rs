//! Sparse multivariate polynomials in (D0, D1, D2, D3, m) over the Gaussian rationals.
//!
//! Terms are kept in a vector sorted by the monomial order, so addition is a
//! linear merge and the leading term is the last entry.

use std::fmt;

use super::gaussian::Gaussian;
use super::rat::Rat;
use crate::error::{Error, Result};

/// Number of polynomial variables.
pub const NVARS: usize = 5;
/// Variable index of the derivative symbol `D_mu`, mu = 0..3.
pub const VAR_D: [usize; 4] = [0, 1, 2, 3];
/// Variable index of the mass symbol.
pub const VAR_M: usize = 4;
/// Display names, ordered D0 < D1 < D2 < D3 < m.
pub const VAR_NAMES: [&str; NVARS] = ["D0", "D1", "D2", "D3", "m"];

/// Exponent vector of a monomial.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Mono(pub [u16; NVARS]);

impl Mono {
    pub fn unit() -> Self {
        Mono([0; NVARS])
    }

    pub fn var(idx: usize) -> Self {
        let mut e = [0u16; NVARS];
        e[idx] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = [0u16; NVARS];
        for k in 0..NVARS {
            e[k] = self.0[k] + other.0[k];
        }
        Mono(e)
    }

    pub fn divides(&self, other: &Mono) -> bool {
        (0..NVARS).all(|k| self.0[k] <= other.0[k])
    }

    pub fn div(&self, other: &Mono) -> Mono {
        let mut e = [0u16; NVARS];
        for k in 0..NVARS {
            e[k] = self.0[k] - other.0[k];
        }
        Mono(e)
    }

    pub fn is_unit(&self) -> bool {
        self.0 == [0; NVARS]
    }
}

// Graded lexicographic order with m the most significant variable on ties.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for k in (0..NVARS).rev() {
                match self.0[k].cmp(&other.0[k]) {
                    std::cmp::Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial: terms sorted ascending by monomial, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    terms: Vec<(Mono, Gaussian)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Gaussian::one())
    }

    pub fn constant(c: Gaussian) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(Mono::unit(), c)] }
        }
    }

    pub fn var(idx: usize) -> Self {
        Poly { terms: vec![(Mono::var(idx), Gaussian::one())] }
    }

    /// Builds from arbitrary (monomial, coefficient) pairs.
    pub fn from_terms(mut list: Vec<(Mono, Gaussian)>) -> Self {
        list.sort_by_key(|t| t.0);
        let mut terms: Vec<(Mono, Gaussian)> = Vec::with_capacity(list.len());
        for (m, c) in list {
            if c.is_zero() {
                continue;
            }
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    *lc = lc.add_ref(&c);
                    if lc.is_zero() {
                        terms.pop();
                    }
                }
                _ => terms.push((m, c)),
            }
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_unit() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_unit())
    }

    pub fn constant_value(&self) -> Option<Gaussian> {
        if self.is_zero() {
            Some(Gaussian::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Gaussian)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under the graded lexicographic order.
    pub fn leading(&self) -> Option<(&Mono, &Gaussian)> {
        self.terms.last().map(|(m, c)| (m, c))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                std::cmp::Ordering::Less => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    terms.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = self.terms[i].1.add_ref(&other.terms[j].1);
                    if !c.is_zero() {
                        terms.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        Poly { terms }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        // Shorter factor outside; single-term factors are a plain map.
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            return large.mul_term(m, c);
        }
        let mut acc = std::collections::BTreeMap::new();
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.mul(mb);
                let c = ca.mul_ref(cb);
                match acc.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = e.get().add_ref(&c);
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
        }
        Poly { terms: acc.into_iter().collect() }
    }

    fn mul_term(&self, m: &Mono, c: &Gaussian) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc.mul_ref(c))).collect(),
        }
    }

    pub fn scale(&self, c: &Gaussian) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (*m, v.mul_ref(c))).collect() }
    }

    /// Complex conjugation on coefficients only; variables stay fixed.
    pub fn conj_i(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect() }
    }

    /// Substitutes `var -> -var` for every variable with `flip[var] = true`.
    pub fn flip_vars(&self, flip: &[bool; NVARS]) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let odd: u32 = (0..NVARS)
                        .filter(|&k| flip[k])
                        .map(|k| u32::from(m.0[k]))
                        .sum();
                    let c = if odd % 2 == 1 { -c.clone() } else { c.clone() };
                    (*m, c)
                })
                .collect(),
        }
    }

    /// Formal partial derivative with respect to variable `idx`.
    pub fn deriv(&self, idx: usize) -> Poly {
        // Lowering one fixed exponent preserves the term order.
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut lowered = *m;
            lowered.0[idx] = e - 1;
            terms.push((lowered, c.mul_ref(&Gaussian::from_int(i64::from(e)))));
        }
        Poly { terms }
    }

    /// Exact evaluation at Gaussian-rational values for all five variables.
    pub fn eval(&self, values: &[Gaussian; NVARS]) -> Gaussian {
        let mut acc = Gaussian::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for k in 0..NVARS {
                for _ in 0..m.0[k] {
                    term = term.mul_ref(&values[k]);
                }
            }
            acc = acc.add_ref(&term);
        }
        acc
    }

    /// Largest monomial dividing every term (the monomial content). Unit for zero.
    pub fn mono_content(&self) -> Mono {
        let mut acc: Option<[u16; NVARS]> = None;
        for (m, _) in &self.terms {
            match acc {
                None => acc = Some(m.0),
                Some(ref mut a) => {
                    for k in 0..NVARS {
                        a[k] = a[k].min(m.0[k]);
                    }
                    if *a == [0; NVARS] {
                        break;
                    }
                }
            }
        }
        Mono(acc.unwrap_or([0; NVARS]))
    }

    pub fn div_mono(&self, m: &Mono) -> Poly {
        Poly { terms: self.terms.iter().map(|(k, v)| (k.div(m), v.clone())).collect() }
    }

    /// Attempts exact polynomial division, returning `None` when not divisible.
    pub fn try_div(&self, den: &Poly) -> Option<Poly> {
        if den.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (dm, dc) = den.leading().expect("nonzero");
        if !dm.divides(self.leading().expect("nonzero").0) {
            return None;
        }
        let dc_inv = dc.inv().expect("leading coefficient nonzero");
        let mut rem = self.clone();
        let mut quot: Vec<(Mono, Gaussian)> = Vec::new();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = rm.div(dm);
            let qc = rc.mul_ref(&dc_inv);
            rem = rem.sub(&den.mul_term(&qm, &qc));
            quot.push((qm, qc));
        }
        // Quotient terms were produced in strictly descending order.
        quot.reverse();
        Some(Poly { terms: quot })
    }

    /// Converts to a univariate coefficient list in `var` (index 0 = constant term).
    pub fn coeffs_in_var(&self, var: usize) -> Vec<Poly> {
        let max = self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0);
        let mut buckets = vec![Vec::new(); usize::from(max) + 1];
        for (m, c) in &self.terms {
            let mut rest = *m;
            let e = usize::from(rest.0[var]);
            rest.0[var] = 0;
            buckets[e].push((rest, c.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    /// Maximum exponent of `var` across all terms.
    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }
}

fn mono_text(m: &Mono) -> String {
    let mut pieces = Vec::new();
    for k in 0..NVARS {
        for _ in 0..m.0[k] {
            pieces.push(VAR_NAMES[k].to_string());
        }
    }
    pieces.join("*")
}

/// Renders one coefficient for use in a product position (parenthesized when needed).
fn coeff_text(c: &Gaussian) -> (bool, String) {
    // (is_negative_prefix, text without sign handling for pure real/imag cases)
    if c.im.is_zero() {
        (c.re.is_negative(), c.re.abs().to_string())
    } else if c.re.is_zero() {
        let mag = c.im.abs();
        let txt = if mag.is_one() { "i".to_string() } else { format!("{mag}*i") };
        (c.im.is_negative(), txt)
    } else {
        (false, format!("({c})"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, ctext) = coeff_text(c);
            let mtext = mono_text(m);
            let body = if mtext.is_empty() {
                ctext
            } else if ctext == "1" {
                mtext
            } else {
                format!("{ctext}*{mtext}")
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
                out.push_str(&body);
            } else {
                out.push_str(if neg { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        write!(f, "{out}")
    }
}

/// Rational square root check used by sample validation; errors unless `r = s^2`.
pub fn rational_sqrt(r: &Rat) -> Result<Rat> {
    if r.is_negative() {
        return Err(Error::InconsistentSample(format!("{r} has no rational square root")));
    }
    let big = r.to_big();
    let n = big.numer().sqrt();
    let d = big.denom().sqrt();
    let cand = Rat::from_big(num_rational::BigRational::new(n, d));
    if cand.mul(&cand) == *r {
        Ok(cand)
    } else {
        Err(Error::InconsistentSample(format!("{r} is not a perfect rational square")))
    }
}

/// Binomial coefficient as an exact rational; zero when k exceeds n.
pub fn binomial(n: u16, k: u16) -> Gaussian {
    if k > n {
        return Gaussian::zero();
    }
    let mut acc = Rat::one();
    for j in 0..k {
        acc = acc.mul(&Rat::from_ratio(i64::from(n - j), i64::from(j + 1)));
    }
    Gaussian::from_rational(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(k: usize) -> Poly {
        Poly::var(VAR_D[k])
    }

    fn m() -> Poly {
        Poly::var(VAR_M)
    }

    #[test]
    fn arithmetic_and_ordering() {
        // (D1 + m)^2 = D1^2 + 2*D1*m + m^2
        let p = d(1).add(&m());
        let sq = p.mul(&p);
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.to_string(), "m*m + 2*D1*m + D1*D1");
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn derivative() {
        // d(D2^2)/dD2 = 2*D2
        let p = d(2).mul(&d(2));
        assert_eq!(p.deriv(VAR_D[2]), d(2).scale(&Gaussian::from_int(2)));
        assert!(p.deriv(VAR_M).is_zero());
    }

    #[test]
    fn exact_division() {
        let num = d(1).mul(&d(1)).sub(&m().mul(&m())); // D1^2 - m^2
        let den = d(1).add(&m());
        let q = num.try_div(&den).unwrap();
        assert_eq!(q, d(1).sub(&m()));
        assert!(num.try_div(&d(2)).is_none());
        // Larger split: (D1+m)(D2+m)(D3+m) divided by (D2+m)
        let prod = d(1).add(&m()).mul(&d(2).add(&m())).mul(&d(3).add(&m()));
        let q = prod.try_div(&d(2).add(&m())).unwrap();
        assert_eq!(q, d(1).add(&m()).mul(&d(3).add(&m())));
    }

    #[test]
    fn flip_and_conj() {
        let p = d(1).add(&Poly::constant(Gaussian::i()).mul(&m()));
        let mut flip = [false; NVARS];
        flip[VAR_D[1]] = true;
        assert_eq!(p.flip_vars(&flip), d(1).neg().add(&Poly::constant(Gaussian::i()).mul(&m())));
        assert_eq!(p.conj_i(), d(1).add(&Poly::constant(Gaussian::i()).mul(&m()).neg()));
    }

    #[test]
    fn coeff_buckets() {
        // D0^2*m + D0*D1 + 7
        let p = Poly::from_terms(vec![
            (Mono([2, 0, 0, 0, 1]), Gaussian::one()),
            (Mono([1, 1, 0, 0, 0]), Gaussian::one()),
            (Mono::unit(), Gaussian::from_int(7)),
        ]);
        let buckets = p.coeffs_in_var(VAR_D[0]);
        assert_eq!(buckets.len(), 3);
        assert_eq!(buckets[0], Poly::constant(Gaussian::from_int(7)));
        assert_eq!(buckets[1], d(1));
        assert_eq!(buckets[2], m());
    }

    #[test]
    fn sqrt_check() {
        let r = Rat::from_ratio(25, 4);
        assert_eq!(rational_sqrt(&r).unwrap(), Rat::from_ratio(5, 2));
        assert!(rational_sqrt(&Rat::from_int(7)).is_err());
    }
}
