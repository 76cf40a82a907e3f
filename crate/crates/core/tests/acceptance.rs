//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Every check is exact; there are no numerical tolerances anywhere.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ercd_core::catalog::{Catalog, Conventions, Flavor};
use ercd_core::operator::Operator;
use ercd_core::scalar::{FieldElem, Gaussian, Mono, Poly, Rat, RatFn, Sample, NVARS};
use ercd_core::verify::audit::convention_audit;
use ercd_core::verify::suites::{realified_annihilator_oracle, run_suite};
use ercd_core::verify::{pauli_lubanski_w2, SuiteReport};

fn catalog() -> Catalog {
    Catalog::new(Conventions::default())
}

fn sample() -> Sample {
    Sample::momentum(3, [0, 0, 4]).unwrap()
}

fn require_suite(criterion: &str, name: &str, expected_checks: usize) -> SuiteReport {
    let report = run_suite(name, &catalog(), &sample()).unwrap();
    let ok = report.passed() && report.checks.len() == expected_checks;
    println!(
        "{} criterion {criterion}: suite {name} ({}/{} checks, expected {expected_checks})",
        if ok { "PASS" } else { "FAIL" },
        report.pass_count(),
        report.checks.len(),
    );
    if !ok {
        for c in &report.checks {
            if c.status != ercd_core::verify::Status::Pass {
                eprintln!("  failing check: {} residual={:?}", c.name, c.residual);
            }
        }
    }
    assert!(ok, "criterion {criterion}");
    report
}

#[test]
fn criterion_01_so15_closure() {
    // 15 generators, 105 unordered pairs, metric diag(+1,-1,-1,-1,-1,-1).
    require_suite("1", "so15", 105);
}

#[test]
fn criterion_02_so6_closure_and_centrality() {
    // identity check + 105 brackets + 15 centrality checks.
    require_suite("2", "so6", 121);
}

#[test]
fn criterion_03_ercd_rank_64() {
    require_suite("3", "ercd-rank", 1);
}

#[test]
fn criterion_04_maximal_invariance() {
    // dimension + commutant agreement + 32 containments + closure + center + identity.
    require_suite("4", "a32", 37);
}

#[test]
fn criterion_05_lorentz_families() {
    // 15 + 15 brackets, 36 cross-commutators, 15 + 15 brackets.
    require_suite("5", "lorentz", 96);
}

#[test]
fn criterion_06_bose_transform() {
    // two normalizer identities + 15 transformed brackets.
    require_suite("6", "bose-transform", 17);
}

#[test]
fn criterion_07_v_transform() {
    // 2 normalizers + map + HD^2 + six shat identities + ten generator conjugates.
    require_suite("7", "fw-dirac-map", 20);
}

#[test]
fn criterion_08_poincare_closure_and_invariance() {
    // 45 brackets + (weak invariance + anti-self-adjointness) per generator.
    require_suite("8", "poincare-fw", 65);
    require_suite("8", "poincare-dirac", 65);
    // Fermi flavor: same shape plus its two Casimir lines.
    require_suite("8", "fermi-case", 67);
}

#[test]
fn criterion_09_casimirs() {
    // P^2 x3, fermi w^2, two annihilators with two nonzero factors each.
    require_suite("9", "casimir", 10);
    // Independent oracle: realified annihilator at a real Pythagorean sample.
    let cat = catalog();
    let real = Sample::real_d(5, [0, 0, 3]).unwrap();
    let w2 = pauli_lubanski_w2(&cat.fw_genset(Flavor::TensorScalar), cat.conv.levi_civita).unwrap();
    let (ann, nz1, nz2) = realified_annihilator_oracle(&w2, &real).unwrap();
    let ok = ann && nz1 && nz2;
    println!(
        "{} criterion 9: realified annihilator oracle at m=5, d=(0,0,3)",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok);
    // And the fermi value against the same oracle.
    let w2f = pauli_lubanski_w2(&cat.fw_genset(Flavor::Fermi), cat.conv.levi_civita).unwrap();
    let got = w2f.realify(&real).unwrap();
    let m2 = real.m.mul(&real.m);
    let expect = ercd_core::operator::RealMat::identity(8)
        .scale(&Rat::from_ratio(-3, 4).mul(&m2));
    let ok = got == expect;
    println!(
        "{} criterion 9: realified fermi spin value at m=5, d=(0,0,3)",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok);
}

#[test]
fn criterion_10_convention_audit() {
    let outcome = convention_audit();
    let ok = outcome.selected.is_some() && outcome.report.passed();
    println!(
        "{} criterion 10: convention audit selects an assignment ({} assignments checked)",
        if ok { "PASS" } else { "FAIL" },
        outcome.report.checks.len() - 1,
    );
    assert!(ok);
    let selected = outcome.selected.unwrap();
    assert_eq!(selected, Conventions::default());
}

// ---------------------------------------------------------------------------
// Criterion 11: randomized substrate suites, >= 500 cases each, seeded.
// ---------------------------------------------------------------------------

fn random_rat(rng: &mut StdRng) -> Rat {
    Rat::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

fn random_gaussian(rng: &mut StdRng) -> Gaussian {
    Gaussian::new(random_rat(rng), random_rat(rng))
}

fn random_poly(rng: &mut StdRng) -> Poly {
    let n = rng.gen_range(0..3);
    let mut terms = Vec::new();
    for _ in 0..n {
        let mut e = [0u16; NVARS];
        for slot in e.iter_mut() {
            *slot = rng.gen_range(0..=1);
        }
        terms.push((Mono(e), random_gaussian(rng)));
    }
    Poly::from_terms(terms)
}

fn random_nonzero_poly(rng: &mut StdRng) -> Poly {
    loop {
        let p = random_poly(rng);
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_field(rng: &mut StdRng) -> FieldElem {
    FieldElem::new(
        RatFn::new(random_poly(rng), random_nonzero_poly(rng)),
        RatFn::new(random_poly(rng), random_nonzero_poly(rng)),
    )
}

fn random_xfree_word(rng: &mut StdRng, cat: &Catalog) -> Operator {
    let len = rng.gen_range(1..=3);
    let mut op = Operator::identity();
    for _ in 0..len {
        let atom = match rng.gen_range(0..15) {
            k @ 0..=6 => cat.gamma(k).unwrap(),
            7 => cat.epsilon_hat(),
            8 => Operator::c_hat(),
            9 => Operator::i(),
            10 => Operator::scalar(FieldElem::omega()),
            k => Operator::d(k - 11),
        };
        op = op.mul(&atom);
    }
    op
}

#[test]
fn criterion_11_substrate_property_suites() {
    let mut rng = StdRng::seed_from_u64(0x5ca1ab1e);
    let cat = catalog();

    // Ring and field axioms.
    let mut failures = 0usize;
    for _ in 0..1000 {
        let (a, b, c) = (random_field(&mut rng), random_field(&mut rng), random_field(&mut rng));
        let ok = a.mul(&b).mul(&c).eq_elem(&a.mul(&b.mul(&c)))
            && a.mul(&b).eq_elem(&b.mul(&a))
            && a.mul(&b.add(&c)).eq_elem(&a.mul(&b).add(&a.mul(&c)))
            && a.add(&b).add(&c).eq_elem(&a.add(&b.add(&c)));
        if !ok {
            failures += 1;
        }
    }
    println!(
        "{} criterion 11: ring/field axioms (1000 cases, {failures} failures)",
        if failures == 0 { "PASS" } else { "FAIL" }
    );
    assert_eq!(failures, 0);

    // Reduction confluence for powers of w.
    let mut failures = 0usize;
    for _ in 0..500 {
        let len = rng.gen_range(1..=5);
        let coeffs: Vec<RatFn> = (0..len)
            .map(|_| RatFn::new(random_poly(&mut rng), random_nonzero_poly(&mut rng)))
            .collect();
        let direct = FieldElem::from_omega_powers(&coeffs);
        let w = FieldElem::omega();
        let mut horner = FieldElem::zero();
        for c in coeffs.iter().rev() {
            horner = horner.mul(&w).add(&FieldElem::new(c.clone(), RatFn::zero()));
        }
        if !direct.eq_elem(&horner) {
            failures += 1;
        }
    }
    println!(
        "{} criterion 11: omega-reduction confluence (500 cases, {failures} failures)",
        if failures == 0 { "PASS" } else { "FAIL" }
    );
    assert_eq!(failures, 0);

    // Antilinearity of the conjugation operator.
    let mut failures = 0usize;
    let c_hat = Operator::c_hat();
    for _ in 0..500 {
        let f = random_field(&mut rng);
        let lhs = c_hat.mul(&Operator::scalar(f.clone()));
        let rhs = Operator::scalar(f.conj_i()).mul(&c_hat);
        if !lhs.equals(&rhs) {
            failures += 1;
        }
    }
    println!(
        "{} criterion 11: conjugation antilinearity (500 cases, {failures} failures)",
        if failures == 0 { "PASS" } else { "FAIL" }
    );
    assert_eq!(failures, 0);

    // X-D reordering: all sixteen pairs exactly, plus the general rule
    // f*X_mu = X_mu*f + df/dD_mu on random scalars.
    let mut failures = 0usize;
    for mu in 0..4 {
        for nu in 0..4 {
            let comm = Operator::x(mu).commutator(&Operator::d(nu));
            let expect = if mu == nu { Operator::from_int(-1) } else { Operator::zero() };
            if !comm.equals(&expect) {
                failures += 1;
            }
        }
    }
    for _ in 0..500 {
        let f = random_field(&mut rng);
        let mu = rng.gen_range(0..4);
        let lhs = Operator::scalar(f.clone()).mul(&Operator::x(mu));
        let rhs = Operator::x(mu)
            .mul(&Operator::scalar(f.clone()))
            .add(&Operator::scalar(f.deriv_d(mu)));
        if !lhs.equals(&rhs) {
            failures += 1;
        }
    }
    println!(
        "{} criterion 11: X-D reordering (16 + 500 cases, {failures} failures)",
        if failures == 0 { "PASS" } else { "FAIL" }
    );
    assert_eq!(failures, 0);

    // Adjoint antihomomorphism.
    let mut failures = 0usize;
    for _ in 0..500 {
        let a = random_xfree_word(&mut rng, &cat);
        let b = random_xfree_word(&mut rng, &cat);
        let with_x = rng.gen_range(0..4);
        let (a, b) = match with_x {
            0 => (a.mul(&Operator::x(rng.gen_range(0..4))), b),
            1 => (a, b.mul(&Operator::x(rng.gen_range(0..4)))),
            _ => (a, b),
        };
        if !a.mul(&b).adjoint().equals(&b.adjoint().mul(&a.adjoint())) {
            failures += 1;
        }
    }
    println!(
        "{} criterion 11: adjoint antihomomorphism (500 cases, {failures} failures)",
        if failures == 0 { "PASS" } else { "FAIL" }
    );
    assert_eq!(failures, 0);

    // Realification multiplicativity at a real-valued sample.
    let real = Sample::real_d(5, [0, 0, 3]).unwrap();
    let mut failures = 0usize;
    for _ in 0..500 {
        let a = random_xfree_word(&mut rng, &cat);
        let b = random_xfree_word(&mut rng, &cat);
        let lhs = a.mul(&b).realify(&real).unwrap();
        let rhs = a.realify(&real).unwrap().mul(&b.realify(&real).unwrap());
        if lhs != rhs {
            failures += 1;
        }
    }
    println!(
        "{} criterion 11: realification multiplicativity (500 cases, {failures} failures)",
        if failures == 0 { "PASS" } else { "FAIL" }
    );
    assert_eq!(failures, 0);
}
