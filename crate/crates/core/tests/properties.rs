//! Property tests for the scalar substrate and the operator algebra.

use std::sync::OnceLock;

use proptest::prelude::*;

use ercd_core::catalog::{Catalog, Conventions, Direction};
use ercd_core::dsl;
use ercd_core::operator::Operator;
use ercd_core::scalar::{FieldElem, Gaussian, Mono, Poly, Rat, RatFn, Sample, NVARS};

fn catalog() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(|| Catalog::new(Conventions::default()))
}

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rat::from_ratio(n, d))
}

fn gaussian_strategy() -> impl Strategy<Value = Gaussian> {
    (rat_strategy(), rat_strategy()).prop_map(|(re, im)| Gaussian::new(re, im))
}

fn mono_strategy() -> impl Strategy<Value = Mono> {
    proptest::array::uniform5(0u16..=1).prop_map(Mono)
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((mono_strategy(), gaussian_strategy()), 0..3)
        .prop_map(Poly::from_terms)
}

fn nonzero_poly_strategy() -> impl Strategy<Value = Poly> {
    poly_strategy().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfn_strategy() -> impl Strategy<Value = RatFn> {
    (poly_strategy(), nonzero_poly_strategy()).prop_map(|(n, d)| RatFn::new(n, d))
}

fn field_strategy() -> impl Strategy<Value = FieldElem> {
    (ratfn_strategy(), ratfn_strategy()).prop_map(|(u, v)| FieldElem::new(u, v))
}

fn nonzero_field_strategy() -> impl Strategy<Value = FieldElem> {
    field_strategy().prop_filter("nonzero", |f| !f.is_zero())
}

/// Field elements with denominators drawn from the shapes the catalog
/// actually produces; keeps the quotient-rule checks from exploding.
fn tame_field_strategy() -> impl Strategy<Value = FieldElem> {
    let den = prop_oneof![
        Just(Poly::one()),
        Just(Poly::var(1)),
        Just(Poly::var(NVARS - 1)),
        Just(ercd_core::scalar::omega_square()),
        Just(Poly::var(1).mul(&Poly::var(1))
            .add(&Poly::var(2).mul(&Poly::var(2)))
            .add(&Poly::var(3).mul(&Poly::var(3)))),
    ];
    (poly_strategy(), den.clone(), poly_strategy(), den)
        .prop_map(|(nu, du, nv, dv)| FieldElem::new(RatFn::new(nu, du), RatFn::new(nv, dv)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_ring_axioms(a in field_strategy(), b in field_strategy(), c in field_strategy()) {
        // associativity of both operations
        prop_assert!(a.add(&b).add(&c).eq_elem(&a.add(&b.add(&c))));
        prop_assert!(a.mul(&b).mul(&c).eq_elem(&a.mul(&b.mul(&c))));
        // commutativity
        prop_assert!(a.mul(&b).eq_elem(&b.mul(&a)));
        prop_assert!(a.add(&b).eq_elem(&b.add(&a)));
        // distributivity
        prop_assert!(a.mul(&b.add(&c)).eq_elem(&a.mul(&b).add(&a.mul(&c))));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn field_inverse_laws(a in nonzero_field_strategy()) {
        let inv = a.inv().unwrap();
        prop_assert!(a.mul(&inv).is_one());
        prop_assert!(inv.inv().unwrap().eq_elem(&a));
    }

    #[test]
    fn conj_and_parity_are_commuting_involutive_automorphisms(
        a in field_strategy(),
        b in field_strategy(),
    ) {
        prop_assert!(a.conj_i().conj_i().eq_elem(&a));
        prop_assert!(a.parity().parity().eq_elem(&a));
        prop_assert!(a.conj_i().parity().eq_elem(&a.parity().conj_i()));
        prop_assert!(a.mul(&b).conj_i().eq_elem(&a.conj_i().mul(&b.conj_i())));
        prop_assert!(a.mul(&b).parity().eq_elem(&a.parity().mul(&b.parity())));
        prop_assert!(a.add(&b).conj_i().eq_elem(&a.conj_i().add(&b.conj_i())));
    }

    #[test]
    fn derivative_satisfies_leibniz(
        a in tame_field_strategy(),
        b in tame_field_strategy(),
        mu in 0usize..4,
    ) {
        let lhs = a.mul(&b).deriv_d(mu);
        let rhs = a.deriv_d(mu).mul(&b).add(&a.mul(&b.deriv_d(mu)));
        prop_assert!(lhs.eq_elem(&rhs));
    }

    #[test]
    fn omega_reduction_confluence(coeffs in proptest::collection::vec(ratfn_strategy(), 1..5)) {
        let direct = FieldElem::from_omega_powers(&coeffs);
        // Horner grouping reduces the powers in the opposite order.
        let w = FieldElem::omega();
        let mut horner = FieldElem::zero();
        for c in coeffs.iter().rev() {
            horner = horner.mul(&w).add(&FieldElem::new(c.clone(), RatFn::zero()));
        }
        prop_assert!(direct.eq_elem(&horner));
    }
}

// ---------------------------------------------------------------------------
// Operator-level properties
// ---------------------------------------------------------------------------

fn atom(idx: usize) -> Operator {
    let cat = catalog();
    match idx {
        0..=6 => cat.gamma(idx).unwrap(),
        7 => cat.epsilon_hat(),
        8 => Operator::c_hat(),
        9 => Operator::i(),
        10 => Operator::scalar(FieldElem::omega()),
        11..=14 => Operator::d(idx - 11),
        15..=18 => Operator::x(idx - 15),
        _ => Operator::identity(),
    }
}

fn xfree_atom(idx: usize) -> Operator {
    atom(idx % 15)
}

fn word_strategy() -> impl Strategy<Value = Operator> {
    proptest::collection::vec(0usize..19, 1..4)
        .prop_map(|ids| ids.into_iter().map(atom).fold(Operator::identity(), |a, b| a.mul(&b)))
}

fn xfree_word_strategy() -> impl Strategy<Value = Operator> {
    proptest::collection::vec(0usize..15, 1..4)
        .prop_map(|ids| {
            ids.into_iter().map(xfree_atom).fold(Operator::identity(), |a, b| a.mul(&b))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn operator_product_is_associative(
        a in word_strategy(),
        b in word_strategy(),
        c in word_strategy(),
    ) {
        prop_assert!(a.mul(&b).mul(&c).equals(&a.mul(&b.mul(&c))));
    }

    #[test]
    fn adjoint_is_an_involutive_antihomomorphism(a in word_strategy(), b in word_strategy()) {
        prop_assert!(a.adjoint().adjoint().equals(&a));
        prop_assert!(a.mul(&b).adjoint().equals(&b.adjoint().mul(&a.adjoint())));
    }

    #[test]
    fn parity_is_an_involution(a in word_strategy()) {
        prop_assert!(a.parity().parity().equals(&a));
    }

    #[test]
    fn parity_is_multiplicative_on_x_free_operators(
        a in xfree_word_strategy(),
        b in xfree_word_strategy(),
    ) {
        // The parity substitution touches matrix entries only, so it is a
        // homomorphism exactly on the X-free subalgebra (where it is used).
        prop_assert!(a.mul(&b).parity().equals(&a.parity().mul(&b.parity())));
    }

    #[test]
    fn realification_is_multiplicative_at_real_samples(
        a in xfree_word_strategy(),
        b in xfree_word_strategy(),
    ) {
        // Conjugation-carrying operators realify multiplicatively only where
        // the substituted D values are real.
        let sample = Sample::real_d(5, [0, 0, 3]).unwrap();
        let lhs = a.mul(&b).realify(&sample).unwrap();
        let rhs = a.realify(&sample).unwrap().mul(&b.realify(&sample).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_preserves_commutators(a in xfree_word_strategy(), b in xfree_word_strategy()) {
        let cat = catalog();
        for conj in [cat.v_conjugator(), cat.w_conjugator()] {
            let lhs = conj.conjugate(&a.commutator(&b), Direction::Inverse).unwrap();
            let rhs = conj
                .conjugate(&a, Direction::Inverse)
                .unwrap()
                .commutator(&conj.conjugate(&b, Direction::Inverse).unwrap());
            prop_assert!(lhs.equals(&rhs));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dsl_format_round_trips(a in xfree_word_strategy(), b in xfree_word_strategy()) {
        let cat = catalog();
        let op = a.add(&b);
        let text = dsl::format(&op, cat);
        let back = dsl::elaborate(&dsl::parse(&text).unwrap(), cat).unwrap();
        prop_assert!(back.equals(&op), "round trip through {}", text);
    }

    #[test]
    fn dsl_never_panics_on_arbitrary_input(text in "[ -~]{0,40}") {
        let _ = dsl::parse(&text).map(|ast| dsl::elaborate(&ast, catalog()));
    }

    #[test]
    fn dsl_never_panics_on_arbitrary_bytes(bytes in proptest::collection::vec(any::<u8>(), 0..32)) {
        if let Ok(text) = std::str::from_utf8(&bytes) {
            let _ = dsl::parse(text).map(|ast| dsl::elaborate(&ast, catalog()));
        }
    }
}

#[test]
fn x_d_commutators_are_minus_delta() {
    for mu in 0..4 {
        for nu in 0..4 {
            let comm = Operator::x(mu).commutator(&Operator::d(nu));
            let expect = if mu == nu {
                Operator::from_int(-1)
            } else {
                Operator::zero()
            };
            assert!(comm.equals(&expect), "pair ({mu},{nu})");
        }
    }
}

#[test]
fn conjugation_flag_squares_to_identity() {
    let c = Operator::c_hat();
    assert!(c.mul(&c).equals(&Operator::identity()));
}

#[test]
fn normal_form_fixed_by_identity_product() {
    let cat = catalog();
    for (name, op) in cat.ercd_basis() {
        assert!(op.mul(&Operator::identity()).equals(&op), "{name}");
    }
    for (name, op) in cat.a32_basis() {
        assert!(Operator::identity().mul(&op).equals(&op), "{name}");
    }
}
