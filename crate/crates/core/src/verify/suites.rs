//! Named verification suites shared by the command-line front end and the
//! acceptance tests.

use crate::catalog::{Catalog, Direction, Flavor};
use crate::error::{Error, Result};
use crate::linalg;
use crate::operator::Operator;
use crate::scalar::{FieldElem, Gaussian, Rat, Sample};
use crate::verify::report::{CheckRecord, SuiteReport};
use crate::verify::{
    annihilator_check, casimir_p2, check_mutual_commute, check_structure, commutant_criterion,
    compare, invariance_check, maximal_invariance, pauli_lubanski_w2, BasisCoords, Mode,
    SpanReducer, StructureSpec,
};

pub const SUITE_NAMES: [&str; 11] = [
    "so15",
    "so6",
    "ercd-rank",
    "a32",
    "lorentz",
    "poincare-fw",
    "poincare-dirac",
    "fw-dirac-map",
    "bose-transform",
    "casimir",
    "fermi-case",
];

/// Runs one named suite under the catalog's conventions.
pub fn run_suite(name: &str, cat: &Catalog, sample: &Sample) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(name, &cat.conv);
    match name {
        "so15" => suite_so15(cat, &mut report),
        "so6" => suite_so6(cat, &mut report),
        "ercd-rank" => suite_ercd_rank(cat, sample, &mut report)?,
        "a32" => suite_a32(cat, sample, &mut report)?,
        "lorentz" => suite_lorentz(cat, &mut report),
        "poincare-fw" => suite_poincare(cat, Some(Flavor::TensorScalar), &mut report)?,
        "poincare-dirac" => suite_poincare(cat, None, &mut report)?,
        "fw-dirac-map" => suite_fw_dirac_map(cat, &mut report)?,
        "bose-transform" => suite_bose_transform(cat, &mut report),
        "casimir" => suite_casimir(cat, &mut report)?,
        "fermi-case" => suite_fermi_case(cat, &mut report)?,
        other => return Err(Error::UnknownName(format!("suite {other}"))),
    }
    Ok(report)
}

fn suite_so15(cat: &Catalog, report: &mut SuiteReport) {
    let gens = cat.so15_genset();
    let spec = StructureSpec::SoMetric(gens.metric.clone());
    report.extend(check_structure(&gens, &spec, cat));
}

fn suite_so6(cat: &Catalog, report: &mut SuiteReport) {
    // eps identity: i*gamma0 = -gamma1*...*gamma6.
    let mut chain = cat.gamma(1).expect("valid");
    for idx in 2..=6 {
        chain = chain.mul(&cat.gamma(idx).expect("valid"));
    }
    report.push(compare("eps = -gamma1*gamma2*gamma3*gamma4*gamma5*gamma6", &cat.epsilon_hat(), &chain.neg(), cat));
    let gens = cat.so6_genset();
    report.extend(check_structure(&gens, &StructureSpec::So6Delta, cat));
    // Centrality of eps.
    let eps = cat.epsilon_hat();
    for (a, b) in gens.rotation_pairs() {
        let lhs = gens.rotation(a, b).commutator(&eps);
        report.push(compare(&format!("[s({a},{b}), eps]"), &lhs, &Operator::zero(), cat));
    }
}

fn suite_ercd_rank(cat: &Catalog, sample: &Sample, report: &mut SuiteReport) -> Result<()> {
    let basis = cat.ercd_basis();
    let mut rows = Vec::with_capacity(basis.len());
    for (_, op) in &basis {
        rows.push(op.realify(sample)?.flatten());
    }
    let rank = linalg::rank(rows);
    let record = if rank == 64 {
        CheckRecord::pass("realified rank of the 64-element basis", "64", "64")
    } else {
        CheckRecord::fail(
            "realified rank of the 64-element basis",
            rank.to_string(),
            "64",
            format!("rank deficit {}", 64 - rank),
        )
    };
    report.push(record.with_note(format!("{} basis elements realified", basis.len())));
    Ok(())
}

fn suite_a32(cat: &Catalog, sample: &Sample, report: &mut SuiteReport) -> Result<()> {
    let basis = cat.ercd_basis();
    let l = cat.fw_operator();
    let sol = maximal_invariance(&basis, &l)?;
    report.push(if sol.dimension == 32 {
        CheckRecord::pass("weak-invariance solution dimension", "32", "32")
    } else {
        CheckRecord::fail(
            "weak-invariance solution dimension",
            sol.dimension.to_string(),
            "32",
            "dimension mismatch",
        )
    });
    // Agreement with the closed-form commutant criterion on all 64 elements.
    let mut disagreements = Vec::new();
    for (name, e) in &basis {
        let verdict = invariance_check(e, &l, Mode::Weak)?;
        if verdict.passed() != commutant_criterion(e, cat) {
            disagreements.push(name.clone());
        }
    }
    report.push(if disagreements.is_empty() {
        CheckRecord::pass(
            "solver agrees with the gamma0-commutant criterion",
            "agreement on 64 of 64 basis elements",
            "64 of 64",
        )
    } else {
        CheckRecord::fail(
            "solver agrees with the gamma0-commutant criterion",
            format!("{} disagreements", disagreements.len()),
            "0 disagreements",
            disagreements.join(", "),
        )
    });
    // Containment of the 32 listed elements.
    let coords = BasisCoords::new(&basis, sample)?;
    let span = SpanReducer::new(sol.coords.clone());
    for (name, op) in cat.a32_basis() {
        let v = coords.coords(&op)?;
        report.push(if span.contains(&v) {
            CheckRecord::pass(format!("{name} lies in the solution span"), name.clone(), "in span")
        } else {
            CheckRecord::fail(
                format!("{name} lies in the solution span"),
                name.clone(),
                "in span",
                "outside the solution span",
            )
        });
    }
    // The span is closed under commutators.
    let mut outside = 0usize;
    let mut pairs = 0usize;
    for i in 0..sol.basis.len() {
        for j in (i + 1)..sol.basis.len() {
            let bracket = sol.basis[i].commutator(&sol.basis[j]);
            pairs += 1;
            if !span.contains(&coords.coords(&bracket)?) {
                outside += 1;
            }
        }
    }
    report.push(if outside == 0 {
        CheckRecord::pass(
            "solution span closes under commutators",
            format!("{pairs} brackets inside"),
            "all inside",
        )
    } else {
        CheckRecord::fail(
            "solution span closes under commutators",
            format!("{outside} brackets escape"),
            "all inside",
            "span not closed",
        )
    });
    // eps is central in the solved algebra.
    let eps = cat.epsilon_hat();
    let central = sol.basis.iter().all(|b| eps.commutator(b).is_zero());
    report.push(if central {
        CheckRecord::pass("eps is central in the solution span", "all brackets vanish", "0")
    } else {
        CheckRecord::fail("eps is central in the solution span", "nonzero bracket", "0", "eps not central")
    });
    // The identity is a solution.
    let id_ok = span.contains(&coords.coords(&Operator::identity())?);
    report.push(if id_ok {
        CheckRecord::pass("identity lies in the solution span", "1", "in span")
    } else {
        CheckRecord::fail("identity lies in the solution span", "1", "in span", "missing")
    });
    Ok(())
}

fn suite_lorentz(cat: &Catalog, report: &mut SuiteReport) {
    let metric = vec![1, -1, -1, -1];
    let spec = StructureSpec::SoMetric(metric);
    for gens in [cat.s_i_genset(), cat.s_ii_genset()] {
        for mut record in check_structure(&gens, &spec, cat) {
            record.name = format!("{}: {}", gens.name, record.name);
            report.push(record);
        }
    }
    // All 36 cross-commutators vanish.
    let family = |f: &dyn Fn(usize, usize) -> Operator, tag: &str| -> Vec<(String, Operator)> {
        let mut out = Vec::new();
        for a in 0..=3usize {
            for b in (a + 1)..=3usize {
                out.push((format!("{tag}({a},{b})"), f(a, b)));
            }
        }
        out
    };
    let s_i = family(&|a, b| cat.s_i(a, b).expect("valid"), "sI");
    let s_ii = family(&|a, b| cat.s_ii(a, b).expect("valid"), "sII");
    report.extend(check_mutual_commute(&s_i, &s_ii, cat));
    let spec = StructureSpec::SoMetric(vec![1, -1, -1, -1]);
    for gens in [cat.s_ts_genset(), cat.s_v_genset()] {
        for mut record in check_structure(&gens, &spec, cat) {
            record.name = format!("{}: {}", gens.name, record.name);
            report.push(record);
        }
    }
}

fn suite_poincare(cat: &Catalog, flavor: Option<Flavor>, report: &mut SuiteReport) -> Result<()> {
    let gens = match flavor {
        Some(f) => cat.fw_genset(f),
        None => cat.dirac_genset(),
    };
    let spec = StructureSpec::Poincare {
        metric: vec![1, -1, -1, -1],
        eps_translation: cat.conv.eps_translation,
    };
    report.extend(check_structure(&gens, &spec, cat));
    let l = cat.equation_operator_for(&gens.name)?;
    for (name, op) in gens.members() {
        let verdict = invariance_check(&op, &l, Mode::Weak)?;
        let strict = invariance_check(&op, &l, Mode::Strict)?;
        let note = if strict.passed() {
            "strict commutation also holds"
        } else {
            "weak (on-shell) invariance; strict commutator is nonzero"
        };
        report.push(
            invariance_record(&gens.name, &name, &verdict, cat).with_note(note),
        );
        // Primary generators are anti-self-adjoint.
        let adj = op.adjoint();
        report.push(compare(
            &format!("{}: adjoint({name}) = -{name}", gens.name),
            &adj,
            &op.neg(),
            cat,
        ));
    }
    Ok(())
}

fn invariance_record(
    set: &str,
    name: &str,
    verdict: &crate::verify::InvarianceVerdict,
    cat: &Catalog,
) -> CheckRecord {
    let check = format!("{set}: weak invariance of {name}");
    if verdict.passed() {
        CheckRecord::pass(check, "residual", "0")
    } else {
        CheckRecord::fail(check, "residual", "0", crate::dsl::format(&verdict.residual, cat))
    }
}

fn suite_fw_dirac_map(cat: &Catalog, report: &mut SuiteReport) -> Result<()> {
    let v = cat.v_conjugator();
    let norm = Operator::scalar(v.norm.clone());
    report.push(compare("V: forward*inverse = 2w(w+m)", &v.forward.mul(&v.inverse), &norm, cat));
    report.push(compare("V: inverse*forward = 2w(w+m)", &v.inverse.mul(&v.forward), &norm, cat));
    let fw_matrix = cat.gamma(0)?.mul(&Operator::scalar(FieldElem::omega()));
    let mapped = v.conjugate(&fw_matrix, Direction::Inverse)?;
    report.push(compare("V conjugation maps gamma0*w to HD", &mapped, &cat.dirac_hamiltonian(), cat));
    let hd = cat.dirac_hamiltonian();
    let w2 = Operator::scalar(FieldElem::omega().mul(&FieldElem::omega()));
    report.push(compare("HD^2 = w^2", &hd.mul(&hd), &w2, cat));
    for (mu, nu) in [(0usize, 1usize), (0, 2), (0, 3), (1, 2), (3, 1), (2, 3)] {
        let conj = v.conjugate(&cat.s_ii(mu, nu)?, Direction::Inverse)?;
        report.push(compare(
            &format!("shat({mu},{nu}) = V-conjugate of sII({mu},{nu})"),
            &conj,
            &cat.shat(mu, nu)?,
            cat,
        ));
    }
    // Every generator of the first-order Dirac family is the exact conjugate
    // of its diagonal-picture counterpart.
    let fw = cat.fw_genset(Flavor::TensorScalar);
    let dirac = cat.dirac_genset();
    for ((name, q_fw), (_, q_dirac)) in fw.members().into_iter().zip(dirac.members()) {
        let truth = v.conjugate_degree_one(&q_fw)?;
        report.push(compare(
            &format!("dirac {name} = V-conjugate of fw-ts {name}"),
            &q_dirac,
            &truth,
            cat,
        ));
    }
    Ok(())
}

fn suite_bose_transform(cat: &Catalog, report: &mut SuiteReport) {
    let w = cat.w_conjugator();
    let two = Operator::from_int(2);
    report.push(compare("W: forward*inverse = 2", &w.forward.mul(&w.inverse), &two, cat));
    report.push(compare("W: inverse*forward = 2", &w.inverse.mul(&w.forward), &two, cat));
    // The conjugated tensor-scalar family satisfies the same relations.
    let mut gens = crate::catalog::GeneratorSet::new(
        "lorentz-Bose",
        crate::catalog::SetKind::So13,
        vec![1, -1, -1, -1],
    );
    for a in 0..=3u8 {
        for b in (a + 1)..=3u8 {
            let conj = w
                .conjugate(&cat.s_ts(a as usize, b as usize).expect("valid"), Direction::Forward)
                .expect("X-free");
            gens.insert_rotation(a, b, conj);
        }
    }
    let spec = StructureSpec::SoMetric(vec![1, -1, -1, -1]);
    for mut record in check_structure(&gens, &spec, cat) {
        record.name = format!("Bose: {}", record.name);
        report.push(record);
    }
}

fn suite_casimir(cat: &Catalog, report: &mut SuiteReport) -> Result<()> {
    let minus_m2 = Operator::scalar(FieldElem::m().mul(&FieldElem::m())).neg();
    for gens in [
        cat.fw_genset(Flavor::Fermi),
        cat.fw_genset(Flavor::TensorScalar),
        cat.dirac_genset(),
    ] {
        let p2 = casimir_p2(&gens)?;
        report.push(compare(&format!("{}: P^2 = -m^2", gens.name), &p2, &minus_m2, cat));
    }
    let lc = cat.conv.levi_civita;
    // Spin one-half value for the Fermi family.
    let fermi = cat.fw_genset(Flavor::Fermi);
    let w2 = pauli_lubanski_w2(&fermi, lc)?;
    let expect = Operator::scalar(
        FieldElem::m().mul(&FieldElem::m()).scale(&Gaussian::from_ratio(-3, 4)),
    );
    report.push(compare("fw-fermi: w^2 = -(3/4) m^2", &w2, &expect, cat));
    // Tensor-scalar annihilator with both factors nonzero.
    let m2_twice = FieldElem::m().mul(&FieldElem::m()).scale(&Gaussian::from_int(2));
    for gens in [cat.fw_genset(Flavor::TensorScalar), cat.dirac_genset()] {
        let w2 = pauli_lubanski_w2(&gens, lc)?;
        let ann = annihilator_check(&w2, &[FieldElem::zero(), m2_twice.clone(), FieldElem::one()]);
        report.push(if ann {
            CheckRecord::pass(
                format!("{}: w^2 (w^2 + 2m^2) = 0", gens.name),
                "annihilator evaluates to zero",
                "0",
            )
        } else {
            CheckRecord::fail(
                format!("{}: w^2 (w^2 + 2m^2) = 0", gens.name),
                "annihilator is nonzero",
                "0",
                "annihilator fails",
            )
        });
        report.push(compare_nonzero(&format!("{}: w^2 factor is nonzero", gens.name), &w2));
        let shifted = w2.add(&Operator::scalar(m2_twice.clone()));
        report.push(compare_nonzero(
            &format!("{}: w^2 + 2m^2 factor is nonzero", gens.name),
            &shifted,
        ));
    }
    Ok(())
}

fn compare_nonzero(name: &str, op: &Operator) -> CheckRecord {
    if op.is_zero() {
        CheckRecord::fail(name, "0", "nonzero", "operator vanishes")
    } else {
        CheckRecord::pass(name, "nonzero", "nonzero")
    }
}

fn suite_fermi_case(cat: &Catalog, report: &mut SuiteReport) -> Result<()> {
    suite_poincare(cat, Some(Flavor::Fermi), report)?;
    let gens = cat.fw_genset(Flavor::Fermi);
    let minus_m2 = Operator::scalar(FieldElem::m().mul(&FieldElem::m())).neg();
    report.push(compare("fw-fermi: P^2 = -m^2", &casimir_p2(&gens)?, &minus_m2, cat));
    let w2 = pauli_lubanski_w2(&gens, cat.conv.levi_civita)?;
    let expect = Operator::scalar(
        FieldElem::m().mul(&FieldElem::m()).scale(&Gaussian::from_ratio(-3, 4)),
    );
    report.push(compare("fw-fermi: w^2 = -(3/4) m^2", &w2, &expect, cat));
    Ok(())
}

/// Exact realified annihilator oracle at a real-valued sample: evaluates the
/// operator to an 8x8 rational matrix and checks `R(R + 2m^2) = 0` with both
/// factors nonzero. Independent of the operator-level annihilator path.
pub fn realified_annihilator_oracle(
    w2: &Operator,
    sample: &Sample,
) -> Result<(bool, bool, bool)> {
    let r = w2.realify(sample)?;
    let m2 = sample.m.mul(&sample.m);
    let two_m2 = Rat::from_int(2).mul(&m2);
    let shifted = r.add(&crate::operator::RealMat::identity(8).scale(&two_m2));
    let product = r.mul(&shifted);
    Ok((product.is_zero(), !r.is_zero(), !shifted.is_zero()))
}
