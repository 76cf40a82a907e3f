//! Catalog of named operators: gamma matrices, the 16-element and 64-element
//! bases, the rotation generator families, the normalized conjugators and the
//! equation operators with their ten-generator Poincare families.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::operator::{Mat4, Operator};
use crate::scalar::{FieldElem, Gaussian};

/// Momentum form used inside the conjugator `V` and the Dirac hamiltonian.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PForm {
    /// `p_k = -i * D_k`.
    MinusID,
    /// `p_k = D_k`.
    D,
}

/// Reading of the printed coordinate symbols `x_k` in generator formulas.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum XSign {
    /// `x_k` is the coordinate itself (+X_k).
    Contravariant,
    /// `x_k` is the lowered component (-X_k).
    Covariant,
}

impl XSign {
    pub fn factor(self) -> i64 {
        match self {
            XSign::Contravariant => 1,
            XSign::Covariant => -1,
        }
    }
}

/// Sign and index conventions left implicit by the printed formulas. The
/// convention audit enumerates these toggles and records the assignment under
/// which every suite passes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Conventions {
    pub p_form: PForm,
    pub x_sign: XSign,
    /// Sign in `[j_munu, p_rho] = eps*(g_murho p_nu - g_nurho p_mu)`.
    pub eps_translation: i8,
    /// Sign of the Levi-Civita symbol with indices (0,1,2,3).
    pub levi_civita: i8,
}

impl Default for Conventions {
    fn default() -> Self {
        // The assignment selected by the audit.
        Conventions {
            p_form: PForm::MinusID,
            x_sign: XSign::Covariant,
            eps_translation: -1,
            levi_civita: 1,
        }
    }
}

impl Conventions {
    pub fn all_assignments() -> Vec<Conventions> {
        let mut out = Vec::new();
        for &p_form in &[PForm::MinusID, PForm::D] {
            for &x_sign in &[XSign::Covariant, XSign::Contravariant] {
                for &eps_translation in &[-1i8, 1] {
                    for &levi_civita in &[1i8, -1] {
                        out.push(Conventions { p_form, x_sign, eps_translation, levi_civita });
                    }
                }
            }
        }
        out
    }

    pub fn describe(&self) -> Vec<(String, String)> {
        vec![
            (
                "p_form".into(),
                match self.p_form {
                    PForm::MinusID => "minus_i_d".into(),
                    PForm::D => "d".into(),
                },
            ),
            (
                "x_sign".into(),
                match self.x_sign {
                    XSign::Covariant => "covariant".into(),
                    XSign::Contravariant => "contravariant".into(),
                },
            ),
            ("eps_translation".into(), format!("{:+}", self.eps_translation)),
            ("levi_civita".into(), format!("{:+}", self.levi_civita)),
        ]
    }
}

/// Kind tag of a generator family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SetKind {
    So6,
    So15,
    So13,
    Poincare,
}

/// Named, indexed family of operators: antisymmetric rotation members plus an
/// optional translation sector, together with the diagonal metric signature.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub name: String,
    pub kind: SetKind,
    pub metric: Vec<i8>,
    rotations: BTreeMap<(u8, u8), Operator>,
    translations: BTreeMap<u8, Operator>,
}

impl GeneratorSet {
    pub fn new(name: &str, kind: SetKind, metric: Vec<i8>) -> Self {
        GeneratorSet {
            name: name.to_string(),
            kind,
            metric,
            rotations: BTreeMap::new(),
            translations: BTreeMap::new(),
        }
    }

    pub fn insert_rotation(&mut self, a: u8, b: u8, op: Operator) {
        assert!(a < b, "rotation members are stored with ascending indices");
        self.rotations.insert((a, b), op);
    }

    pub fn insert_translation(&mut self, mu: u8, op: Operator) {
        self.translations.insert(mu, op);
    }

    /// Rotation member with antisymmetry applied; zero on the diagonal.
    pub fn rotation(&self, a: u8, b: u8) -> Operator {
        if a == b {
            return Operator::zero();
        }
        if a < b {
            self.rotations[&(a, b)].clone()
        } else {
            self.rotations[&(b, a)].neg()
        }
    }

    pub fn translation(&self, mu: u8) -> &Operator {
        &self.translations[&mu]
    }

    pub fn rotation_pairs(&self) -> Vec<(u8, u8)> {
        self.rotations.keys().copied().collect()
    }

    pub fn translation_indices(&self) -> Vec<u8> {
        self.translations.keys().copied().collect()
    }

    pub fn metric_entry(&self, idx: u8) -> i8 {
        self.metric[usize::from(idx)]
    }

    pub fn is_poincare(&self) -> bool {
        self.kind == SetKind::Poincare && self.translations.len() == 4
    }

    /// Deterministic (name, operator) listing: translations first.
    pub fn members(&self) -> Vec<(String, Operator)> {
        let mut out = Vec::new();
        for (mu, op) in &self.translations {
            out.push((format!("p{mu}"), op.clone()));
        }
        for ((a, b), op) in &self.rotations {
            out.push((format!("j({a},{b})"), op.clone()));
        }
        out
    }
}

/// Square-root-free similarity transform: `forward * inverse = norm * 1`.
#[derive(Clone, Debug)]
pub struct NormalizedConjugator {
    pub name: String,
    pub forward: Operator,
    pub inverse: Operator,
    pub norm: FieldElem,
}

/// Direction of a similarity transform.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    /// `N * Q * N' / n`.
    Forward,
    /// `N' * Q * N / n`.
    Inverse,
}

impl NormalizedConjugator {
    /// Conjugates an X-free operator. The normalizer is central against X-free
    /// operands only, hence the precondition.
    pub fn conjugate(&self, q: &Operator, direction: Direction) -> Result<Operator> {
        if !q.is_x_free() {
            return Err(Error::XSymbolsPresent(format!("conjugation by {}", self.name)));
        }
        let scale = Operator::scalar(self.norm.inv()?);
        let out = match direction {
            Direction::Forward => self.forward.mul(q).mul(&self.inverse),
            Direction::Inverse => self.inverse.mul(q).mul(&self.forward),
        };
        Ok(out.mul(&scale))
    }

    /// Conjugates an operator of X-degree at most one, in the inverse
    /// direction. Writing the unnormalized transform as `N/sqrt(n)`, the X
    /// symbols pick up the rational correction
    /// `X_mu -> X_mu - N' (dN/dD_mu) / n + (dn/dD_mu) / (2n)`,
    /// so no square roots appear.
    pub fn conjugate_degree_one(&self, q: &Operator) -> Result<Operator> {
        let n_inv = self.norm.inv()?;
        // Split q = sum_mu X_mu * a_mu + b.
        let mut linear: [Operator; 4] =
            [Operator::zero(), Operator::zero(), Operator::zero(), Operator::zero()];
        let mut rest = Operator::zero();
        for (key, mat) in q.terms() {
            let degree: u16 = key.x.iter().sum();
            if degree == 0 {
                rest = rest.add(&Operator::from_term(*key, mat.clone()));
            } else if degree == 1 {
                let mu = key.x.iter().position(|&e| e == 1).expect("degree one");
                let stripped = crate::operator::TermKey { x: [0; 4], c: key.c };
                linear[mu] =
                    linear[mu].add(&Operator::from_term(stripped, mat.clone()));
            } else {
                return Err(Error::XSymbolsPresent(
                    "degree-one conjugation of an operator with higher X powers".into(),
                ));
            }
        }
        let mut out = self.conjugate(&rest, Direction::Inverse)?;
        for mu in 0..4 {
            if linear[mu].is_zero() {
                continue;
            }
            let a_conj = self.conjugate(&linear[mu], Direction::Inverse)?;
            // X_mu passes through with its correction term.
            let dn_fwd = self.forward.deriv_d_entries(mu);
            let correction = self
                .inverse
                .mul(&dn_fwd)
                .mul(&Operator::scalar(n_inv.clone()))
                .neg()
                .add(&Operator::scalar(
                    self.norm
                        .deriv_d(mu)
                        .mul(&n_inv)
                        .scale(&Gaussian::from_ratio(1, 2)),
                ));
            let x_conj = Operator::x(mu).add(&correction);
            out = out.add(&x_conj.mul(&a_conj));
        }
        Ok(out)
    }
}

/// Flavor of the ten-generator family attached to the first-order equation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flavor {
    /// Spin one-half generators only.
    Fermi,
    /// Tensor-scalar generators (the additional conjugation-carrying terms).
    TensorScalar,
}

/// Built catalog; construction verifies the defining identities that the
/// remaining objects rely on.
pub struct Catalog {
    pub conv: Conventions,
    gammas: Vec<Operator>,
    eps: Operator,
}

impl Catalog {
    pub fn new(conv: Conventions) -> Self {
        let g0 = Operator::from_matrix(Mat4::from_int_entries([
            [(1, 0), (0, 0), (0, 0), (0, 0)],
            [(0, 0), (1, 0), (0, 0), (0, 0)],
            [(0, 0), (0, 0), (-1, 0), (0, 0)],
            [(0, 0), (0, 0), (0, 0), (-1, 0)],
        ]));
        let g1 = Operator::from_matrix(Mat4::from_int_entries([
            [(0, 0), (0, 0), (0, 0), (1, 0)],
            [(0, 0), (0, 0), (1, 0), (0, 0)],
            [(0, 0), (-1, 0), (0, 0), (0, 0)],
            [(-1, 0), (0, 0), (0, 0), (0, 0)],
        ]));
        let g2 = Operator::from_matrix(Mat4::from_int_entries([
            [(0, 0), (0, 0), (0, 0), (0, -1)],
            [(0, 0), (0, 0), (0, 1), (0, 0)],
            [(0, 0), (0, 1), (0, 0), (0, 0)],
            [(0, -1), (0, 0), (0, 0), (0, 0)],
        ]));
        let g3 = Operator::from_matrix(Mat4::from_int_entries([
            [(0, 0), (0, 0), (1, 0), (0, 0)],
            [(0, 0), (0, 0), (0, 0), (-1, 0)],
            [(-1, 0), (0, 0), (0, 0), (0, 0)],
            [(0, 0), (1, 0), (0, 0), (0, 0)],
        ]));
        let g4 = g0.mul(&g1).mul(&g2).mul(&g3);
        let g5 = g1.mul(&g3).mul(&Operator::c_hat());
        let g6 = Operator::i().mul(&g1).mul(&g3).mul(&Operator::c_hat());
        let eps = Operator::i().mul(&g0);
        let gammas = vec![g0, g1, g2, g3, g4, g5, g6];
        let catalog = Catalog { conv, gammas, eps };
        // Self-check: eps = -gamma1*gamma2*gamma3*gamma4*gamma5*gamma6.
        let mut chain = catalog.gammas[1].clone();
        for idx in 2..=6 {
            chain = chain.mul(&catalog.gammas[idx]);
        }
        assert!(
            catalog.eps.equals(&chain.neg()),
            "epsilon-hat identity failed at catalog construction"
        );
        catalog
    }

    pub fn gamma(&self, idx: usize) -> Result<Operator> {
        self.gammas
            .get(idx)
            .cloned()
            .ok_or_else(|| Error::IndexOutOfRange(format!("gamma({idx}); valid range is 0..=6")))
    }

    pub fn epsilon_hat(&self) -> Operator {
        self.eps.clone()
    }

    pub fn identity(&self) -> Operator {
        Operator::identity()
    }

    /// `s(a,b) = (1/4)[gamma_a, gamma_b]` for any a, b in 0..=6, a != b.
    pub fn s_pair(&self, a: usize, b: usize) -> Result<Operator> {
        if a == b {
            return Err(Error::IndexOutOfRange(format!("s({a},{b}) needs distinct indices")));
        }
        let ga = self.gamma(a)?;
        let gb = self.gamma(b)?;
        Ok(ga.commutator(&gb).scale_gaussian(&Gaussian::from_ratio(1, 4)))
    }

    /// The sixteen-element basis: identity, the ten quarter-commutators over
    /// gamma indices 0..4, and the five halved gammas filling the sixth slot.
    pub fn cd_basis(&self) -> Vec<(String, Operator)> {
        let mut out = vec![("1".to_string(), Operator::identity())];
        for a in 0..=4usize {
            for b in (a + 1)..=4usize {
                out.push((format!("s({a},{b})"), self.s_pair(a, b).expect("valid indices")));
            }
        }
        for a in 0..=4usize {
            out.push((
                format!("gamma{a}/2"),
                self.gamma(a).expect("valid").scale_gaussian(&Gaussian::from_ratio(1, 2)),
            ));
        }
        out
    }

    /// Fifteen-generator family closing on the six-dimensional metric
    /// diag(+1,-1,-1,-1,-1,-1).
    pub fn so15_genset(&self) -> GeneratorSet {
        let mut set = GeneratorSet::new("so15", SetKind::So15, vec![1, -1, -1, -1, -1, -1]);
        for a in 0..=5u8 {
            for b in (a + 1)..=5u8 {
                let op = if b == 5 {
                    self.gamma(a as usize)
                        .expect("valid")
                        .scale_gaussian(&Gaussian::from_ratio(1, 2))
                } else {
                    self.s_pair(a as usize, b as usize).expect("valid")
                };
                set.insert_rotation(a, b, op);
            }
        }
        set
    }

    /// The 64-element extension: each basis matrix times 1, i, C and i*C.
    pub fn ercd_basis(&self) -> Vec<(String, Operator)> {
        let cd = self.cd_basis();
        let mut out = Vec::with_capacity(64);
        for (name, op) in &cd {
            out.push((name.clone(), op.clone()));
        }
        for (name, op) in &cd {
            out.push((format!("i*{name}"), Operator::i().mul(op)));
        }
        for (name, op) in &cd {
            out.push((format!("C*{name}"), Operator::c_hat().mul(op)));
        }
        for (name, op) in &cd {
            out.push((format!("i*C*{name}"), Operator::i().mul(&Operator::c_hat()).mul(op)));
        }
        out
    }

    /// `s_AB = (1/4)[gamma_A, gamma_B]` for A, B = 1..6.
    pub fn so6_gen(&self, a: usize, b: usize) -> Result<Operator> {
        if !(1..=6).contains(&a) || !(1..=6).contains(&b) {
            return Err(Error::IndexOutOfRange(format!("so6 generator ({a},{b}); indices run 1..=6")));
        }
        self.s_pair(a, b)
    }

    pub fn so6_genset(&self) -> GeneratorSet {
        let mut set = GeneratorSet::new("so6", SetKind::So6, vec![-1; 6]);
        for a in 1..=6u8 {
            for b in (a + 1)..=6u8 {
                set.insert_rotation(a, b, self.so6_gen(a as usize, b as usize).expect("valid"));
            }
        }
        set
    }

    /// The 32 elements spanning the invariance algebra: the fifteen so(6)
    /// generators, their eps-multiples, eps itself and the identity.
    pub fn a32_basis(&self) -> Vec<(String, Operator)> {
        let mut out = Vec::with_capacity(32);
        for a in 1..=6usize {
            for b in (a + 1)..=6usize {
                out.push((format!("s({a},{b})"), self.so6_gen(a, b).expect("valid")));
            }
        }
        for a in 1..=6usize {
            for b in (a + 1)..=6usize {
                out.push((
                    format!("eps*s({a},{b})"),
                    self.eps.mul(&self.so6_gen(a, b).expect("valid")),
                ));
            }
        }
        out.push(("eps".to_string(), self.eps.clone()));
        out.push(("1".to_string(), Operator::identity()));
        out
    }

    fn check_spacetime_pair(&self, mu: usize, nu: usize) -> Result<()> {
        if mu > 3 || nu > 3 || mu == nu {
            return Err(Error::IndexOutOfRange(format!(
                "spacetime pair ({mu},{nu}); indices run 0..=3 and must differ"
            )));
        }
        Ok(())
    }

    /// First spin one-half realization: boosts `(i/2) gamma_k gamma_4`,
    /// rotations `(1/4)[gamma_m, gamma_k]`.
    pub fn s_i(&self, mu: usize, nu: usize) -> Result<Operator> {
        self.check_spacetime_pair(mu, nu)?;
        if mu > nu {
            return Ok(self.s_i(nu, mu)?.neg());
        }
        if mu == 0 {
            let k = nu;
            Ok(self
                .gamma(k)?
                .mul(&self.gamma(4)?)
                .scale_gaussian(&Gaussian::from_ratio(1, 2).mul_ref(&Gaussian::i())))
        } else {
            self.s_pair(mu, nu)
        }
    }

    /// Second spin one-half realization, the six printed conjugation-carrying
    /// members; other index orders follow by antisymmetry.
    pub fn s_ii(&self, mu: usize, nu: usize) -> Result<Operator> {
        self.check_spacetime_pair(mu, nu)?;
        let half = Gaussian::from_ratio(1, 2);
        let half_i = half.mul_ref(&Gaussian::i());
        let g0 = self.gamma(0)?;
        let g2 = self.gamma(2)?;
        let c = Operator::c_hat();
        let table: Option<Operator> = match (mu, nu) {
            (0, 1) => Some(g2.mul(&c).scale_gaussian(&half_i)),
            (0, 2) => Some(g2.mul(&c).scale_gaussian(&half).neg()),
            (0, 3) => Some(g0.scale_gaussian(&half).neg()),
            (1, 2) => Some(Operator::identity().scale_gaussian(&half_i)),
            (3, 1) => Some(g0.mul(&g2).mul(&c).scale_gaussian(&half_i)),
            (2, 3) => Some(g0.mul(&g2).mul(&c).scale_gaussian(&half)),
            _ => None,
        };
        match table {
            Some(op) => Ok(op),
            None => Ok(self.s_ii(nu, mu)?.neg()),
        }
    }

    /// Tensor-scalar sum of the two realizations.
    pub fn s_ts(&self, mu: usize, nu: usize) -> Result<Operator> {
        Ok(self.s_i(mu, nu)?.add(&self.s_ii(mu, nu)?))
    }

    /// Vector combination: boosts flip the first realization's sign.
    pub fn s_v(&self, mu: usize, nu: usize) -> Result<Operator> {
        self.check_spacetime_pair(mu, nu)?;
        if mu == 0 {
            Ok(self.s_i(mu, nu)?.neg().add(&self.s_ii(mu, nu)?))
        } else if nu == 0 {
            Ok(self.s_v(nu, mu)?.neg())
        } else {
            self.s_ts(mu, nu)
        }
    }

    fn lorentz_family(&self, name: &str, f: impl Fn(usize, usize) -> Result<Operator>) -> GeneratorSet {
        let mut set = GeneratorSet::new(name, SetKind::So13, vec![1, -1, -1, -1]);
        for a in 0..=3u8 {
            for b in (a + 1)..=3u8 {
                set.insert_rotation(a, b, f(a as usize, b as usize).expect("valid"));
            }
        }
        set
    }

    pub fn s_i_genset(&self) -> GeneratorSet {
        self.lorentz_family("lorentz-I", |a, b| self.s_i(a, b))
    }

    pub fn s_ii_genset(&self) -> GeneratorSet {
        self.lorentz_family("lorentz-II", |a, b| self.s_ii(a, b))
    }

    pub fn s_ts_genset(&self) -> GeneratorSet {
        self.lorentz_family("lorentz-TS", |a, b| self.s_ts(a, b))
    }

    pub fn s_v_genset(&self) -> GeneratorSet {
        self.lorentz_family("lorentz-V", |a, b| self.s_v(a, b))
    }

    /// Momentum operator used inside `V` and the Dirac hamiltonian.
    pub fn momentum(&self, k: usize) -> Operator {
        match self.conv.p_form {
            PForm::MinusID => Operator::scalar(FieldElem::i().neg().mul(&FieldElem::d(k))),
            PForm::D => Operator::d(k),
        }
    }

    fn gamma_dot_p(&self) -> Operator {
        let mut acc = Operator::zero();
        for k in 1..=3 {
            acc = acc.add(&self.gammas[k].mul(&self.momentum(k)));
        }
        acc
    }

    /// The transform between the two pictures, stored square-root free:
    /// `forward = gamma.p + w + m`, `inverse = forward(p -> -p)`, and the
    /// normalizer is their product.
    pub fn v_conjugator(&self) -> NormalizedConjugator {
        let omega_plus_m = Operator::scalar(FieldElem::omega().add(&FieldElem::m()));
        let forward = self.gamma_dot_p().add(&omega_plus_m);
        let inverse = forward.parity();
        let norm = forward
            .mul(&inverse)
            .as_scalar()
            .expect("V normalizer is scalar");
        NormalizedConjugator { name: "V".to_string(), forward, inverse, norm }
    }

    /// The Bose-transition matrix, stored scaled by sqrt(2) with normalizer 2.
    pub fn w_conjugator(&self) -> NormalizedConjugator {
        let linear = Operator::from_matrix(Mat4::from_int_entries([
            [(0, 0), (-1, 0), (0, 0), (0, 0)],
            [(0, 0), (0, 1), (0, 0), (0, 0)],
            [(-1, 0), (0, 0), (0, 0), (0, 0)],
            [(-1, 0), (0, 0), (0, 0), (0, 0)],
        ]));
        let cpart = Operator::from_matrix(Mat4::from_int_entries([
            [(0, 0), (0, 0), (0, 0), (1, 0)],
            [(0, 0), (0, 0), (0, 0), (0, 1)],
            [(0, 0), (0, 0), (1, 0), (0, 0)],
            [(0, 0), (0, 0), (-1, 0), (0, 0)],
        ]))
        .mul(&Operator::c_hat());
        let forward = linear.add(&cpart);
        let inv_linear = Operator::from_matrix(Mat4::from_int_entries([
            [(0, 0), (0, 0), (-1, 0), (-1, 0)],
            [(-1, 0), (0, -1), (0, 0), (0, 0)],
            [(0, 0), (0, 0), (0, 0), (0, 0)],
            [(0, 0), (0, 0), (0, 0), (0, 0)],
        ]));
        let inv_cpart = Operator::from_matrix(Mat4::from_int_entries([
            [(0, 0), (0, 0), (0, 0), (0, 0)],
            [(0, 0), (0, 0), (0, 0), (0, 0)],
            [(0, 0), (0, 0), (1, 0), (-1, 0)],
            [(1, 0), (0, 1), (0, 0), (0, 0)],
        ]))
        .mul(&Operator::c_hat());
        let inverse = inv_linear.add(&inv_cpart);
        let norm = forward
            .mul(&inverse)
            .as_scalar()
            .expect("W normalizer is scalar");
        NormalizedConjugator { name: "W".to_string(), forward, inverse, norm }
    }

    /// First-order equation operator in the diagonal picture: `i*D0 - gamma0*w`.
    pub fn fw_operator(&self) -> Operator {
        Operator::scalar(FieldElem::i().mul(&FieldElem::d(0)))
            .sub(&self.gammas[0].mul(&Operator::scalar(FieldElem::omega())))
    }

    /// `H_D = gamma0*(gamma.p + m)`.
    pub fn dirac_hamiltonian(&self) -> Operator {
        self.gammas[0].mul(&self.gamma_dot_p().add(&Operator::scalar(FieldElem::m())))
    }

    /// `i*D0 - H_D`.
    pub fn dirac_operator(&self) -> Operator {
        Operator::scalar(FieldElem::i().mul(&FieldElem::d(0))).sub(&self.dirac_hamiltonian())
    }

    /// The printed closed forms of the conjugated second-realization spins.
    pub fn shat(&self, mu: usize, nu: usize) -> Result<Operator> {
        self.check_spacetime_pair(mu, nu)?;
        let half = Gaussian::from_ratio(1, 2);
        let half_i = half.mul_ref(&Gaussian::i());
        let g2 = self.gamma(2)?;
        let c = Operator::c_hat();
        let hd = self.dirac_hamiltonian();
        let inv_2w = Operator::scalar(
            FieldElem::omega()
                .scale(&Gaussian::from_int(2))
                .inv()
                .expect("omega is invertible"),
        );
        let table: Option<Operator> = match (mu, nu) {
            (0, 1) => Some(g2.mul(&c).scale_gaussian(&half_i)),
            (0, 2) => Some(g2.mul(&c).scale_gaussian(&half).neg()),
            (0, 3) => Some(hd.mul(&inv_2w).neg()),
            (1, 2) => Some(Operator::identity().scale_gaussian(&half_i)),
            (3, 1) => Some(Operator::i().mul(&hd).mul(&inv_2w).mul(&g2).mul(&c)),
            (2, 3) => Some(hd.mul(&inv_2w).mul(&g2).mul(&c)),
            _ => None,
        };
        match table {
            Some(op) => Ok(op),
            None => Ok(self.shat(nu, mu)?.neg()),
        }
    }

    /// Vector of rotation components `(s_23, s_31, s_12)` for the requested flavor.
    fn spin_vector(&self, flavor: Flavor) -> [Operator; 3] {
        let pick = |a: usize, b: usize| -> Operator {
            let s1 = self.s_i(a, b).expect("valid");
            match flavor {
                Flavor::Fermi => s1,
                Flavor::TensorScalar => s1.add(&self.s_ii(a, b).expect("valid")),
            }
        };
        [pick(2, 3), pick(3, 1), pick(1, 2)]
    }

    fn rotation_spin(&self, flavor: Flavor, l: usize, n: usize) -> Operator {
        let s1 = self.s_i(l, n).expect("valid");
        match flavor {
            Flavor::Fermi => s1,
            Flavor::TensorScalar => s1.add(&self.s_ii(l, n).expect("valid")),
        }
    }

    /// Ten Poincare generators attached to the diagonal-picture equation.
    pub fn fw_genset(&self, flavor: Flavor) -> GeneratorSet {
        let name = match flavor {
            Flavor::Fermi => "fw-fermi",
            Flavor::TensorScalar => "fw-ts",
        };
        let mut set = GeneratorSet::new(name, SetKind::Poincare, vec![1, -1, -1, -1]);
        // Translations: p0 = -i gamma0 w, p_n = D_n.
        set.insert_translation(
            0,
            self.gammas[0].mul(&Operator::scalar(FieldElem::i().neg().mul(&FieldElem::omega()))),
        );
        for n in 1..=3u8 {
            set.insert_translation(n, Operator::d(n as usize));
        }
        let sigma = Gaussian::from_int(self.conv.x_sign.factor());
        // Rotations: j_ln = x_l D_n - x_n D_l + spin.
        for l in 1..=3u8 {
            for n in (l + 1)..=3u8 {
                let orb = Operator::x(l as usize)
                    .mul(&Operator::d(n as usize))
                    .sub(&Operator::x(n as usize).mul(&Operator::d(l as usize)))
                    .scale_gaussian(&sigma);
                set.insert_rotation(l, n, orb.add(&self.rotation_spin(flavor, l as usize, n as usize)));
            }
        }
        // Boosts: j_0k = x0 D_k + i gamma0 (x_k w + D_k/(2w) + (s x D)_k/(w+m)).
        let spin = self.spin_vector(flavor);
        let inv_w_plus_m = FieldElem::omega().add(&FieldElem::m()).inv().expect("nonzero");
        let inv_2w = FieldElem::omega().scale(&Gaussian::from_int(2)).inv().expect("nonzero");
        for k in 1..=3u8 {
            let ku = k as usize;
            let mut inner = Operator::x(ku)
                .mul(&Operator::scalar(FieldElem::omega()))
                .scale_gaussian(&sigma);
            inner = inner.add(&Operator::scalar(FieldElem::d(ku).mul(&inv_2w)));
            for l in 1..=3usize {
                for m in 1..=3usize {
                    let sign = levi_civita_3(ku, l, m);
                    if sign == 0 {
                        continue;
                    }
                    let term = spin[l - 1]
                        .mul(&Operator::scalar(FieldElem::d(m).mul(&inv_w_plus_m)))
                        .scale_gaussian(&Gaussian::from_int(sign));
                    inner = inner.add(&term);
                }
            }
            let boost = Operator::x(0)
                .mul(&Operator::d(ku))
                .add(&Operator::i().mul(&self.gammas[0]).mul(&inner));
            set.insert_rotation(0, k, boost);
        }
        set
    }

    /// Ten Poincare generators attached to the first-order Dirac operator.
    pub fn dirac_genset(&self) -> GeneratorSet {
        let mut set = GeneratorSet::new("dirac", SetKind::Poincare, vec![1, -1, -1, -1]);
        let p0hat = Operator::i().neg().mul(&self.dirac_hamiltonian());
        set.insert_translation(0, p0hat.clone());
        for n in 1..=3u8 {
            set.insert_translation(n, Operator::d(n as usize));
        }
        let sigma = Gaussian::from_int(self.conv.x_sign.factor());
        // Rotations: j_kl = x_k D_l - x_l D_k + s_kl + shat_kl.
        for k in 1..=3u8 {
            for l in (k + 1)..=3u8 {
                let orb = Operator::x(k as usize)
                    .mul(&Operator::d(l as usize))
                    .sub(&Operator::x(l as usize).mul(&Operator::d(k as usize)))
                    .scale_gaussian(&sigma);
                let spin = self
                    .s_pair(k as usize, l as usize)
                    .expect("valid")
                    .add(&self.shat(k as usize, l as usize).expect("valid"));
                set.insert_rotation(k, l, orb.add(&spin));
            }
        }
        // Boosts: j_0k = x0 D_k - x_k p0hat - s_0k + eps_kln shat_0l D_n/(w+m).
        // The x_k coefficient is -1 (not -i) and the pure-matrix spin term
        // enters with a minus sign: that is the exact conjugate of the
        // diagonal-picture boost, and the only form that closes.
        let inv_w_plus_m = FieldElem::omega().add(&FieldElem::m()).inv().expect("nonzero");
        for k in 1..=3u8 {
            let ku = k as usize;
            let mut op = Operator::x(0).mul(&Operator::d(ku));
            let xk_term = Operator::x(ku)
                .mul(&p0hat)
                .neg()
                .scale_gaussian(&sigma);
            op = op.add(&xk_term);
            op = op.sub(&self.s_pair(0, ku).expect("valid"));
            for l in 1..=3usize {
                for n in 1..=3usize {
                    let sign = levi_civita_3(ku, l, n);
                    if sign == 0 {
                        continue;
                    }
                    let term = self
                        .shat(0, l)
                        .expect("valid")
                        .mul(&Operator::scalar(FieldElem::d(n).mul(&inv_w_plus_m)))
                        .scale_gaussian(&Gaussian::from_int(sign));
                    op = op.add(&term);
                }
            }
            set.insert_rotation(0, k, op);
        }
        set
    }

    /// Equation operator a generator set is verified against.
    pub fn equation_operator_for(&self, set_name: &str) -> Result<Operator> {
        match set_name {
            "fw-fermi" | "fw-ts" => Ok(self.fw_operator()),
            "dirac" => Ok(self.dirac_operator()),
            other => Err(Error::UnknownName(format!("equation operator for {other}"))),
        }
    }

    /// The sixteen products of distinct gammas (indices 0..3), each with the
    /// sign of its square, used to decompose constant matrices.
    pub fn gamma_monomials(&self) -> Vec<(String, Operator, Gaussian)> {
        let mut out = Vec::with_capacity(16);
        for mask in 0u8..16 {
            let mut name_parts = Vec::new();
            let mut op = Operator::identity();
            for idx in 0..4 {
                if mask & (1 << idx) != 0 {
                    name_parts.push(format!("gamma{idx}"));
                    op = op.mul(&self.gammas[idx]);
                }
            }
            let square = op
                .mul(&op)
                .as_scalar()
                .expect("gamma monomial squares to a scalar")
                .u
                .num()
                .constant_value()
                .expect("constant");
            // inverse = op * (1/square)
            let inv_scale = square.inv().expect("nonzero");
            out.push((name_parts.join("*"), op, inv_scale));
        }
        out
    }
}

/// Three-dimensional Levi-Civita sign with indices in 1..=3.
pub fn levi_civita_3(a: usize, b: usize, c: usize) -> i64 {
    match (a, b, c) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// Four-dimensional Levi-Civita sign for distinct indices in 0..=3 relative to
/// the reference order (0,1,2,3); `lc` is the convention sign of that order.
pub fn levi_civita_4(idx: [usize; 4], lc: i8) -> i64 {
    let mut seen = [false; 4];
    for &k in &idx {
        if k > 3 || seen[k] {
            return 0;
        }
        seen[k] = true;
    }
    let mut perm = idx;
    let mut sign = 1i64;
    for i in 0..4 {
        while perm[i] != i {
            let j = perm[i];
            perm.swap(i, j);
            sign = -sign;
        }
    }
    sign * i64::from(lc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog() -> Catalog {
        Catalog::new(Conventions::default())
    }

    #[test]
    fn clifford_relations() {
        let cat = catalog();
        let g = |k: usize| cat.gamma(k).unwrap();
        let metric = [1i64, -1, -1, -1];
        for mu in 0..4 {
            for nu in 0..4 {
                let anti = g(mu).anticommutator(&g(nu));
                let expect = if mu == nu {
                    Operator::from_int(2 * metric[mu])
                } else {
                    Operator::zero()
                };
                assert!(anti.equals(&expect), "anticommutator ({mu},{nu})");
            }
        }
        // gamma4 = gamma0*gamma1*gamma2*gamma3 squares to -1.
        assert!(g(4).mul(&g(4)).equals(&Operator::from_int(-1)));
    }

    #[test]
    fn antilinear_gammas() {
        let cat = catalog();
        let g5 = cat.gamma(5).unwrap();
        let g6 = cat.gamma(6).unwrap();
        // gamma5*gamma6 = i
        assert!(g5.mul(&g6).equals(&Operator::i()));
        for k in [5usize, 6] {
            let gk = cat.gamma(k).unwrap();
            assert!(gk.mul(&gk).equals(&Operator::from_int(-1)), "gamma{k} squared");
        }
        // all six anticommute pairwise
        for a in 1..=6usize {
            for b in (a + 1)..=6usize {
                let anti = cat.gamma(a).unwrap().anticommutator(&cat.gamma(b).unwrap());
                assert!(anti.is_zero(), "({a},{b})");
            }
        }
        assert!(cat.gamma(7).is_err());
    }

    #[test]
    fn epsilon_hat_properties() {
        let cat = catalog();
        let eps = cat.epsilon_hat();
        assert!(eps.mul(&eps).equals(&Operator::from_int(-1)));
        assert!(eps.commutator(&cat.gamma(0).unwrap()).is_zero());
    }

    #[test]
    fn basis_sizes() {
        let cat = catalog();
        assert_eq!(cat.cd_basis().len(), 16);
        assert_eq!(cat.ercd_basis().len(), 64);
        assert_eq!(cat.a32_basis().len(), 32);
        assert_eq!(cat.so6_genset().rotation_pairs().len(), 15);
        assert_eq!(cat.so15_genset().rotation_pairs().len(), 15);
    }

    #[test]
    fn printed_spin_entries() {
        let cat = catalog();
        // s(0,1) = (1/2) gamma0 gamma1
        let expect = cat
            .gamma(0)
            .unwrap()
            .mul(&cat.gamma(1).unwrap())
            .scale_gaussian(&Gaussian::from_ratio(1, 2));
        assert!(cat.s_pair(0, 1).unwrap().equals(&expect));
        // second realization: s12 = i/2, s03 = -(1/2) gamma0
        assert!(cat
            .s_ii(1, 2)
            .unwrap()
            .equals(&Operator::i().scale_gaussian(&Gaussian::from_ratio(1, 2))));
        assert!(cat
            .s_ii(0, 3)
            .unwrap()
            .equals(&cat.gamma(0).unwrap().scale_gaussian(&Gaussian::from_ratio(1, 2)).neg()));
        // antisymmetry through the accessor
        assert!(cat.s_ii(2, 1).unwrap().equals(&cat.s_ii(1, 2).unwrap().neg()));
        assert!(cat.s_i(1, 0).unwrap().equals(&cat.s_i(0, 1).unwrap().neg()));
        // vector combination at (0,1)
        let expect = cat.s_i(0, 1).unwrap().neg().add(&cat.s_ii(0, 1).unwrap());
        assert!(cat.s_v(0, 1).unwrap().equals(&expect));
        assert!(cat.s_v(1, 2).unwrap().equals(&cat.s_ts(1, 2).unwrap()));
    }

    #[test]
    fn six_component_entries() {
        let cat = catalog();
        // s(5,6) = (1/4)[gamma5, gamma6] = i/2
        let expect = Operator::i().scale_gaussian(&Gaussian::from_ratio(1, 2));
        assert!(cat.s_pair(5, 6).unwrap().equals(&expect));
        // the sixth-slot members of the fifteen-generator family are halved gammas
        let set = cat.so15_genset();
        let expect = cat.gamma(2).unwrap().scale_gaussian(&Gaussian::from_ratio(1, 2));
        assert!(set.rotation(2, 5).equals(&expect));
        assert!(set.rotation(5, 2).equals(&expect.neg()));
    }

    #[test]
    fn conjugator_normalizers() {
        let cat = catalog();
        let v = cat.v_conjugator();
        // forward * inverse = 2w(w+m) both ways
        let expect = FieldElem::omega()
            .scale(&Gaussian::from_int(2))
            .mul(&FieldElem::omega().add(&FieldElem::m()));
        assert_eq!(v.norm, expect);
        assert!(v
            .inverse
            .mul(&v.forward)
            .equals(&Operator::scalar(v.norm.clone())));
        let w = cat.w_conjugator();
        assert_eq!(w.norm, FieldElem::from_int(2));
        assert!(w.forward.mul(&w.inverse).equals(&Operator::from_int(2)));
        assert!(w.inverse.mul(&w.forward).equals(&Operator::from_int(2)));
    }

    #[test]
    fn conjugation_examples() {
        let cat = catalog();
        let v = cat.v_conjugator();
        // V^{-1} (gamma0 w) V = H_D under the default momentum form
        let fw_matrix = cat
            .gamma(0)
            .unwrap()
            .mul(&Operator::scalar(FieldElem::omega()));
        let got = v.conjugate(&fw_matrix, Direction::Inverse).unwrap();
        assert!(got.equals(&cat.dirac_hamiltonian()));
        // shat(0,3) = V^{-1} s^II(0,3) V
        let got = v.conjugate(&cat.s_ii(0, 3).unwrap(), Direction::Inverse).unwrap();
        assert!(got.equals(&cat.shat(0, 3).unwrap()));
        // identity is fixed by W
        let w = cat.w_conjugator();
        let got = w.conjugate(&Operator::identity(), Direction::Forward).unwrap();
        assert!(got.equals(&Operator::identity()));
        // X-carrying operand is rejected
        assert!(v.conjugate(&Operator::x(1), Direction::Forward).is_err());
    }

    #[test]
    fn equation_operators() {
        let cat = catalog();
        let l = cat.fw_operator();
        // gamma0 commutes with both terms
        assert!(cat.gamma(0).unwrap().commutator(&l).is_zero());
        // H_D squared equals w^2 as a polynomial identity
        let hd = cat.dirac_hamiltonian();
        let w2 = Operator::scalar(FieldElem::omega().mul(&FieldElem::omega()));
        assert!(hd.mul(&hd).equals(&w2));
        // the conjugation operator sees the i flip: C*L != L*C
        let c = Operator::c_hat();
        assert!(!c.mul(&l).equals(&l.mul(&c)));
    }

    #[test]
    fn parity_flips_the_momentum_part() {
        let cat = catalog();
        // gamma.p is odd, gamma0*w is even
        let gp = cat.gamma_dot_p();
        assert!(gp.parity().equals(&gp.neg()));
        let g0w = cat.gamma(0).unwrap().mul(&Operator::scalar(FieldElem::omega()));
        assert!(g0w.parity().equals(&g0w));
        assert!(Operator::x(1).mul(&Operator::d(1)).parity().equals(
            &Operator::x(1).mul(&Operator::d(1)).neg()
        ));
    }

    #[test]
    fn genset_shapes() {
        let cat = catalog();
        for set in [
            cat.fw_genset(Flavor::Fermi),
            cat.fw_genset(Flavor::TensorScalar),
            cat.dirac_genset(),
        ] {
            assert!(set.is_poincare());
            assert_eq!(set.members().len(), 10);
        }
        // fw p0 = -i gamma0 w
        let set = cat.fw_genset(Flavor::TensorScalar);
        let expect = cat
            .gamma(0)
            .unwrap()
            .mul(&Operator::scalar(FieldElem::i().neg().mul(&FieldElem::omega())));
        assert!(set.translation(0).equals(&expect));
    }

    #[test]
    fn levi_civita_signs() {
        assert_eq!(levi_civita_3(1, 2, 3), 1);
        assert_eq!(levi_civita_3(2, 1, 3), -1);
        assert_eq!(levi_civita_3(1, 1, 2), 0);
        assert_eq!(levi_civita_4([0, 1, 2, 3], 1), 1);
        assert_eq!(levi_civita_4([1, 0, 2, 3], 1), -1);
        assert_eq!(levi_civita_4([1, 0, 2, 3], -1), 1);
        assert_eq!(levi_civita_4([0, 0, 2, 3], 1), 0);
    }
}
