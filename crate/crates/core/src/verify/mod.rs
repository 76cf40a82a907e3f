//! Structure-constant verification, invariance analysis, the maximal-invariance
//! solver, Casimir computations and the convention audit.

pub mod audit;
pub mod report;
pub mod suites;

use crate::catalog::{Catalog, GeneratorSet};
use crate::error::{Error, Result};
use crate::linalg;
use crate::operator::Operator;
use crate::scalar::{FieldElem, Gaussian, Rat, Sample};

pub use report::{CheckRecord, render_reports, Status, SuiteReport};

/// Expected right-hand sides for every bracket of a generator family.
#[derive(Clone, Debug)]
pub enum StructureSpec {
    /// `[s_AB, s_CD] = d_AC s_BD + d_CB s_DA + d_BD s_AC + d_DA s_CB`.
    So6Delta,
    /// `[s_ab, s_cd] = -g_ac s_bd - g_cb s_da - g_bd s_ac - g_da s_cb`.
    SoMetric(Vec<i8>),
    /// Rotation sector as `SoMetric`, plus
    /// `[j_ab, p_r] = eps*(g_ar p_b - g_br p_a)` and `[p, p] = 0`.
    Poincare { metric: Vec<i8>, eps_translation: i8 },
}

impl StructureSpec {
    fn metric_entry(&self, idx: u8) -> i8 {
        match self {
            StructureSpec::So6Delta => -1,
            StructureSpec::SoMetric(g) | StructureSpec::Poincare { metric: g, .. } => {
                g[usize::from(idx)]
            }
        }
    }

    /// Expected value of `[rot(a,b), rot(c,d)]`.
    fn rotation_bracket(&self, gens: &GeneratorSet, ab: (u8, u8), cd: (u8, u8)) -> Operator {
        let (a, b) = ab;
        let (c, d) = cd;
        match self {
            StructureSpec::So6Delta => {
                let delta = |x: u8, y: u8| -> i64 { i64::from(x == y) };
                let mut acc = Operator::zero();
                for (w, op) in [
                    (delta(a, c), gens.rotation(b, d)),
                    (delta(c, b), gens.rotation(d, a)),
                    (delta(b, d), gens.rotation(a, c)),
                    (delta(d, a), gens.rotation(c, b)),
                ] {
                    if w != 0 {
                        acc = acc.add(&op.scale_gaussian(&Gaussian::from_int(w)));
                    }
                }
                acc
            }
            StructureSpec::SoMetric(_) | StructureSpec::Poincare { .. } => {
                let g = |x: u8| i64::from(self.metric_entry(x));
                let delta = |x: u8, y: u8| -> i64 { i64::from(x == y) };
                let mut acc = Operator::zero();
                for (w, op) in [
                    (-delta(a, c) * g(a), gens.rotation(b, d)),
                    (-delta(c, b) * g(c), gens.rotation(d, a)),
                    (-delta(b, d) * g(b), gens.rotation(a, c)),
                    (-delta(d, a) * g(d), gens.rotation(c, b)),
                ] {
                    if w != 0 {
                        acc = acc.add(&op.scale_gaussian(&Gaussian::from_int(w)));
                    }
                }
                acc
            }
        }
    }

    /// Expected value of `[rot(a,b), trans(r)]` for a Poincare family.
    fn translation_bracket(&self, gens: &GeneratorSet, ab: (u8, u8), r: u8) -> Operator {
        let StructureSpec::Poincare { eps_translation, .. } = self else {
            return Operator::zero();
        };
        let (a, b) = ab;
        let g = |x: u8| i64::from(self.metric_entry(x));
        let mut acc = Operator::zero();
        if a == r {
            acc = acc.add(&gens.translation(b).scale_gaussian(&Gaussian::from_int(g(a))));
        }
        if b == r {
            acc = acc.sub(&gens.translation(a).scale_gaussian(&Gaussian::from_int(g(b))));
        }
        acc.scale_gaussian(&Gaussian::from_int(i64::from(*eps_translation)))
    }
}

/// Verifies every pairwise commutator of a generator family against the
/// structure specification.
pub fn check_structure(gens: &GeneratorSet, spec: &StructureSpec, cat: &Catalog) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    let pairs = gens.rotation_pairs();
    for (i, &ab) in pairs.iter().enumerate() {
        for &cd in pairs.iter().skip(i + 1) {
            let lhs = gens.rotation(ab.0, ab.1).commutator(&gens.rotation(cd.0, cd.1));
            let rhs = spec.rotation_bracket(gens, ab, cd);
            let name = format!(
                "[{0}({1},{2}), {0}({3},{4})]",
                rotation_symbol(gens),
                ab.0,
                ab.1,
                cd.0,
                cd.1
            );
            records.push(compare(&name, &lhs, &rhs, cat));
        }
    }
    if let StructureSpec::Poincare { .. } = spec {
        let trans = gens.translation_indices();
        for &ab in &pairs {
            for &r in &trans {
                let lhs = gens.rotation(ab.0, ab.1).commutator(gens.translation(r));
                let rhs = spec.translation_bracket(gens, ab, r);
                let name = format!("[j({},{}), p{}]", ab.0, ab.1, r);
                records.push(compare(&name, &lhs, &rhs, cat));
            }
        }
        for (i, &mu) in trans.iter().enumerate() {
            for &nu in trans.iter().skip(i + 1) {
                let lhs = gens.translation(mu).commutator(gens.translation(nu));
                let name = format!("[p{mu}, p{nu}]");
                records.push(compare(&name, &lhs, &Operator::zero(), cat));
            }
        }
    }
    records
}

fn rotation_symbol(gens: &GeneratorSet) -> &'static str {
    if gens.is_poincare() {
        "j"
    } else {
        "s"
    }
}

/// Asserts `[a, b] = 0` for every cross pair of two families.
pub fn check_mutual_commute(
    a: &[(String, Operator)],
    b: &[(String, Operator)],
    cat: &Catalog,
) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    for (na, oa) in a {
        for (nb, ob) in b {
            let lhs = oa.commutator(ob);
            records.push(compare(&format!("[{na}, {nb}]"), &lhs, &Operator::zero(), cat));
        }
    }
    records
}

/// Builds a pass/fail record comparing two operators exactly.
pub fn compare(name: &str, lhs: &Operator, rhs: &Operator, cat: &Catalog) -> CheckRecord {
    let residual = lhs.sub(rhs);
    let ltxt = crate::dsl::format(lhs, cat);
    let rtxt = crate::dsl::format(rhs, cat);
    if residual.is_zero() {
        CheckRecord::pass(name, ltxt, rtxt)
    } else {
        CheckRecord::fail(name, ltxt, rtxt, crate::dsl::format(&residual, cat))
    }
}

/// Invariance mode.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Strict,
    Weak,
}

/// Outcome of an invariance check: pass iff the residual vanishes.
#[derive(Clone, Debug)]
pub struct InvarianceVerdict {
    pub mode: Mode,
    pub cofactor: Operator,
    pub residual: Operator,
}

impl InvarianceVerdict {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Requires `L = i*D0 + (D0-free part)` with no X symbols and no conjugation
/// flag; both equation operators have this shape.
fn validate_equation_operator(l: &Operator) -> Result<()> {
    if !l.is_x_free() || l.has_c_flag() {
        return Err(Error::UnsupportedEquationOperator(
            "equation operator must be X-free and conjugation-free".into(),
        ));
    }
    let d0_coeff = l.d0_coefficient(1)?;
    if !d0_coeff.equals(&Operator::i()) {
        return Err(Error::UnsupportedEquationOperator(
            "equation operator must be first order in D0 with coefficient i".into(),
        ));
    }
    let rest = l.sub(&Operator::scalar(FieldElem::i().mul(&FieldElem::d(0))));
    if !rest.d0_coefficient(1)?.is_zero() {
        return Err(Error::UnsupportedEquationOperator(
            "D0 appears beyond the leading first-order term".into(),
        ));
    }
    Ok(())
}

/// Strict mode: residual is `[Q, L]`. Weak mode: the unique cofactor candidate
/// is the conjugation-graded twist of `Q` (matching the D0-linear coefficient
/// of `L*Q`); the residual is `L*Q - R*L`, and invariance holds exactly when it
/// vanishes.
pub fn invariance_check(q: &Operator, l: &Operator, mode: Mode) -> Result<InvarianceVerdict> {
    validate_equation_operator(l)?;
    match mode {
        Mode::Strict => Ok(InvarianceVerdict {
            mode,
            cofactor: Operator::zero(),
            residual: q.commutator(l),
        }),
        Mode::Weak => {
            let cofactor = q.conj_twist();
            let residual = l.mul(q).sub(&cofactor.mul(l));
            Ok(InvarianceVerdict { mode, cofactor, residual })
        }
    }
}

/// Closed-form weak-invariance criterion for a constant X-free operator:
/// the linear part must commute with gamma0 and the conjugation-flagged part
/// must anticommute with it. Kept as an independent oracle for the solver.
pub fn commutant_criterion(q: &Operator, cat: &Catalog) -> bool {
    let g0 = cat.gamma(0).expect("gamma0");
    for (key, mat) in q.terms() {
        let part = Operator::from_matrix(mat.clone());
        let ok = if key.c {
            part.anticommutator(&g0).is_zero()
        } else {
            part.commutator(&g0).is_zero()
        };
        if !ok {
            return false;
        }
    }
    true
}

/// Result of the maximal-invariance computation over a basis.
pub struct MaximalInvariance {
    /// Real dimension of the solution space.
    pub dimension: usize,
    /// Nullspace coordinates (rows) relative to the input basis.
    pub coords: Vec<Vec<Rat>>,
    /// Solution basis as operators.
    pub basis: Vec<Operator>,
}

/// Solves, over exact rationals, for all real-linear combinations of the basis
/// that pass weak invariance against `L` by matching coefficients in normal
/// form. Residual entries must stay polynomial (denominator one), which holds
/// for any constant-matrix basis.
pub fn maximal_invariance(
    basis: &[(String, Operator)],
    l: &Operator,
) -> Result<MaximalInvariance> {
    validate_equation_operator(l)?;
    let mut columns: Vec<std::collections::BTreeMap<CoordKey, Rat>> = Vec::new();
    for (name, e) in basis {
        if !e.is_x_free() {
            return Err(Error::XSymbolsPresent(format!("basis element {name}")));
        }
        let residual = l.mul(e).sub(&e.conj_twist().mul(l));
        columns.push(linearize(&residual)?);
    }
    // Union of constraint rows.
    let mut row_keys = std::collections::BTreeSet::new();
    for col in &columns {
        row_keys.extend(col.keys().cloned());
    }
    let row_keys: Vec<CoordKey> = row_keys.into_iter().collect();
    let mut rows = Vec::with_capacity(row_keys.len());
    for key in &row_keys {
        let row: Vec<Rat> = columns
            .iter()
            .map(|col| col.get(key).cloned().unwrap_or_else(Rat::zero))
            .collect();
        rows.push(row);
    }
    let coords = linalg::nullspace(rows, basis.len());
    let mut ops = Vec::with_capacity(coords.len());
    for vec in &coords {
        let mut acc = Operator::zero();
        for (c, (_, e)) in vec.iter().zip(basis) {
            if !c.is_zero() {
                acc = acc.add(&e.scale_gaussian(&Gaussian::from_rational(c.clone())));
            }
        }
        ops.push(acc);
    }
    Ok(MaximalInvariance { dimension: coords.len(), coords, basis: ops })
}

/// Key of one rational coordinate of an operator in normal form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct CoordKey {
    x: [u16; 4],
    c: bool,
    row: usize,
    col: usize,
    omega_part: bool,
    mono: Vec<u16>,
    imag: bool,
}

fn linearize(op: &Operator) -> Result<std::collections::BTreeMap<CoordKey, Rat>> {
    let mut out = std::collections::BTreeMap::new();
    for (key, mat) in op.terms() {
        for r in 0..4 {
            for c in 0..4 {
                let e = &mat.0[r][c];
                for (omega_part, rf) in [(false, &e.u), (true, &e.v)] {
                    if rf.is_zero() {
                        continue;
                    }
                    if !rf.den().is_one() {
                        return Err(Error::SolverNonPolynomial(format!(
                            "entry ({r},{c}) has denominator {}",
                            rf.den()
                        )));
                    }
                    for (mono, coeff) in rf.num().terms() {
                        let base = CoordKey {
                            x: key.x,
                            c: key.c,
                            row: r,
                            col: c,
                            omega_part,
                            mono: mono.0.to_vec(),
                            imag: false,
                        };
                        push_coord(&mut out, base, coeff);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn push_coord(
    out: &mut std::collections::BTreeMap<CoordKey, Rat>,
    base: CoordKey,
    coeff: &Gaussian,
) {
    for (imag, val) in [(false, &coeff.re), (true, &coeff.im)] {
        if val.is_zero() {
            continue;
        }
        let mut key = base.clone();
        key.imag = imag;
        out.insert(key, val.clone());
    }
}

/// Exact coordinates of constant X-free operators in a fixed basis, computed
/// through realification (an isomorphism onto 8x8 real matrices for the
/// 64-element basis).
pub struct BasisCoords {
    inverse: Vec<Vec<Rat>>,
    sample: Sample,
    size: usize,
}

impl BasisCoords {
    pub fn new(basis: &[(String, Operator)], sample: &Sample) -> Result<BasisCoords> {
        let mut matrix = Vec::new();
        for (_, op) in basis {
            matrix.push(op.realify(sample)?.flatten());
        }
        // Columns of the transition matrix are the realified basis vectors.
        let n = matrix.len();
        let dim = matrix[0].len();
        if n != dim {
            return Err(Error::SolverNonPolynomial(format!(
                "basis size {n} does not match realified dimension {dim}"
            )));
        }
        let transition: Vec<Vec<Rat>> =
            (0..dim).map(|r| (0..n).map(|c| matrix[c][r].clone()).collect()).collect();
        let inverse = linalg::inverse(&transition).ok_or_else(|| {
            Error::SolverNonPolynomial("basis realification is singular".into())
        })?;
        Ok(BasisCoords { inverse, sample: sample.clone(), size: n })
    }

    pub fn coords(&self, op: &Operator) -> Result<Vec<Rat>> {
        let vec = op.realify(&self.sample)?.flatten();
        Ok(linalg::apply(&self.inverse, &vec))
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

/// Row-reduced span with fast membership tests.
pub struct SpanReducer {
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl SpanReducer {
    pub fn new(mut rows: Vec<Vec<Rat>>) -> SpanReducer {
        let pivots = linalg::row_reduce(&mut rows);
        rows.truncate(pivots.len());
        SpanReducer { rows, pivots }
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = x.sub(&factor.mul(r));
                    }
                }
            }
        }
        v.iter().all(Rat::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// `p0^2 - p1^2 - p2^2 - p3^2` for a ten-generator Poincare family.
pub fn casimir_p2(gens: &GeneratorSet) -> Result<Operator> {
    if !gens.is_poincare() {
        return Err(Error::NotAPoincareSet(gens.name.clone()));
    }
    let p0 = gens.translation(0);
    let mut acc = p0.mul(p0);
    for k in 1..=3u8 {
        let pk = gens.translation(k);
        acc = acc.sub(&pk.mul(pk));
    }
    Ok(acc)
}

/// Components `w^mu = (1/2) eps^{mu nu rho sigma} j_nurho p_sigma`.
pub fn pauli_lubanski_vector(gens: &GeneratorSet, lc: i8) -> Result<[Operator; 4]> {
    if !gens.is_poincare() {
        return Err(Error::NotAPoincareSet(gens.name.clone()));
    }
    let mut out = [Operator::zero(), Operator::zero(), Operator::zero(), Operator::zero()];
    for mu in 0..4usize {
        let mut acc = Operator::zero();
        for nu in 0..4usize {
            for rho in 0..4usize {
                for sigma in 0..4usize {
                    let sign = crate::catalog::levi_civita_4([mu, nu, rho, sigma], lc);
                    if sign == 0 {
                        continue;
                    }
                    let term = gens
                        .rotation(nu as u8, rho as u8)
                        .mul(gens.translation(sigma as u8))
                        .scale_gaussian(&Gaussian::from_int(sign));
                    acc = acc.add(&term);
                }
            }
        }
        out[mu] = acc.scale_gaussian(&Gaussian::from_ratio(1, 2));
    }
    Ok(out)
}

/// `w^2 = g_mumu (w^mu)^2` with the metric of the family.
pub fn pauli_lubanski_w2(gens: &GeneratorSet, lc: i8) -> Result<Operator> {
    let w = pauli_lubanski_vector(gens, lc)?;
    let mut acc = Operator::zero();
    for mu in 0..4usize {
        let sign = i64::from(gens.metric_entry(mu as u8));
        acc = acc.add(&w[mu].mul(&w[mu]).scale_gaussian(&Gaussian::from_int(sign)));
    }
    Ok(acc)
}

/// Evaluates `sum coeffs[k] * A^k` and tests it for exact zero.
pub fn annihilator_check(a: &Operator, coeffs: &[FieldElem]) -> bool {
    let mut acc = Operator::zero();
    let mut power = Operator::identity();
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            power = power.mul(a);
        }
        if !c.is_zero() {
            acc = acc.add(&Operator::scalar(c.clone()).mul(&power));
        }
    }
    acc.is_zero()
}
