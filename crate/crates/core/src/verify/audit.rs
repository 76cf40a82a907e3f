//! Convention audit: enumerates the finite toggle space and reports which
//! assignments make the transform identities, the Poincare closures, the weak
//! invariance of every generator and the Casimir values hold simultaneously.

use crate::catalog::{Catalog, Conventions, Direction, Flavor};
use crate::error::Result;
use crate::operator::Operator;
use crate::scalar::{FieldElem, Gaussian};
use crate::verify::report::{CheckRecord, SuiteReport};
use crate::verify::{
    annihilator_check, casimir_p2, check_structure, invariance_check, pauli_lubanski_w2, Mode,
    Status, StructureSpec,
};

/// Audit outcome: the first passing assignment, if any, plus the per-assignment
/// report.
pub struct AuditOutcome {
    pub selected: Option<Conventions>,
    pub report: SuiteReport,
}

/// Runs the audit over all sixteen toggle assignments.
pub fn convention_audit() -> AuditOutcome {
    let mut selected = None;
    let mut records = Vec::new();
    for conv in Conventions::all_assignments() {
        let label: Vec<String> =
            conv.describe().iter().map(|(k, v)| format!("{k}={v}")).collect();
        let label = format!("audited assignment {}", label.join(" "));
        // Enumeration rows are data, not gates: each records its verdict in
        // the note; only the summary check below decides pass or fail.
        match audit_assignment(&conv) {
            Ok(()) => {
                if selected.is_none() {
                    selected = Some(conv);
                }
                records.push(
                    CheckRecord::pass(label, "assignment verdict", "enumerated")
                        .with_note("holds: transform, closure, invariance and casimir stages pass"),
                );
            }
            Err(stage) => {
                records.push(
                    CheckRecord::pass(label, "assignment verdict", "enumerated")
                        .with_note(format!("rejected at {stage}")),
                );
            }
        }
    }
    let header_conv = selected.unwrap_or_default();
    let mut report = SuiteReport::new("audit", &header_conv);
    report.extend(records);
    if selected.is_none() {
        report.push(CheckRecord::fail(
            "at least one assignment passes",
            "some toggle assignment",
            "satisfies every audited identity",
            "no assignment passed",
        ));
    } else {
        report.push(
            CheckRecord::pass(
                "at least one assignment passes",
                "some toggle assignment",
                "satisfies every audited identity",
            )
            .with_note("the first passing assignment is recorded in the conventions block"),
        );
    }
    AuditOutcome { selected, report }
}

/// Verifies one assignment, returning the first failing check's name.
fn audit_assignment(conv: &Conventions) -> std::result::Result<(), String> {
    let cat = Catalog::new(*conv);
    stage_transform(&cat).map_err(|e| format!("transform stage: {e}"))?;
    stage_closure(&cat).map_err(|e| format!("closure stage: {e}"))?;
    stage_invariance(&cat).map_err(|e| format!("invariance stage: {e}"))?;
    stage_casimir(&cat).map_err(|e| format!("casimir stage: {e}"))?;
    Ok(())
}

fn stage_transform(cat: &Catalog) -> std::result::Result<(), String> {
    let v = cat.v_conjugator();
    let norm = Operator::scalar(v.norm.clone());
    if !v.forward.mul(&v.inverse).equals(&norm) {
        return Err("V forward*inverse = norm".into());
    }
    if !v.inverse.mul(&v.forward).equals(&norm) {
        return Err("V inverse*forward = norm".into());
    }
    let fw_matrix = must(cat.gamma(0)).mul(&Operator::scalar(FieldElem::omega()));
    let hd = cat.dirac_hamiltonian();
    let mapped = v
        .conjugate(&fw_matrix, Direction::Inverse)
        .map_err(|e| format!("conjugation failed: {e}"))?;
    if !mapped.equals(&hd) {
        return Err("V maps gamma0*w to HD".into());
    }
    let w2 = Operator::scalar(FieldElem::omega().mul(&FieldElem::omega()));
    if !hd.mul(&hd).equals(&w2) {
        return Err("HD^2 = w^2".into());
    }
    for (mu, nu) in [(0usize, 1usize), (0, 2), (0, 3), (1, 2), (3, 1), (2, 3)] {
        let conj = v
            .conjugate(&must(cat.s_ii(mu, nu)), Direction::Inverse)
            .map_err(|e| format!("conjugation failed: {e}"))?;
        if !conj.equals(&must(cat.shat(mu, nu))) {
            return Err(format!("shat({mu},{nu}) reproduction"));
        }
    }
    Ok(())
}

fn poincare_spec(cat: &Catalog) -> StructureSpec {
    StructureSpec::Poincare {
        metric: vec![1, -1, -1, -1],
        eps_translation: cat.conv.eps_translation,
    }
}

fn stage_closure(cat: &Catalog) -> std::result::Result<(), String> {
    let spec = poincare_spec(cat);
    for gens in [
        cat.fw_genset(Flavor::Fermi),
        cat.fw_genset(Flavor::TensorScalar),
        cat.dirac_genset(),
    ] {
        for record in check_structure(&gens, &spec, cat) {
            if record.status == Status::Fail {
                return Err(format!("{} in {}", record.name, gens.name));
            }
        }
    }
    Ok(())
}

fn stage_invariance(cat: &Catalog) -> std::result::Result<(), String> {
    for gens in [
        cat.fw_genset(Flavor::Fermi),
        cat.fw_genset(Flavor::TensorScalar),
        cat.dirac_genset(),
    ] {
        let l = must(cat.equation_operator_for(&gens.name));
        for (name, op) in gens.members() {
            let verdict = invariance_check(&op, &l, Mode::Weak)
                .map_err(|e| format!("invariance precondition: {e}"))?;
            if !verdict.passed() {
                return Err(format!("weak invariance of {name} in {}", gens.name));
            }
        }
    }
    Ok(())
}

fn stage_casimir(cat: &Catalog) -> std::result::Result<(), String> {
    let minus_m2 =
        Operator::scalar(FieldElem::m().mul(&FieldElem::m())).neg();
    for gens in [
        cat.fw_genset(Flavor::Fermi),
        cat.fw_genset(Flavor::TensorScalar),
        cat.dirac_genset(),
    ] {
        let p2 = casimir_p2(&gens).map_err(|e| format!("casimir: {e}"))?;
        if !p2.equals(&minus_m2) {
            return Err(format!("P^2 = -m^2 for {}", gens.name));
        }
    }
    let lc = cat.conv.levi_civita;
    let fermi = cat.fw_genset(Flavor::Fermi);
    let w2 = pauli_lubanski_w2(&fermi, lc).map_err(|e| format!("casimir: {e}"))?;
    let expect = Operator::scalar(
        FieldElem::m()
            .mul(&FieldElem::m())
            .scale(&Gaussian::from_ratio(-3, 4)),
    );
    if !w2.equals(&expect) {
        return Err("w^2 = -(3/4) m^2 for fw-fermi".into());
    }
    let ts = cat.fw_genset(Flavor::TensorScalar);
    let w2 = pauli_lubanski_w2(&ts, lc).map_err(|e| format!("casimir: {e}"))?;
    let m2_twice = FieldElem::m().mul(&FieldElem::m()).scale(&Gaussian::from_int(2));
    if !annihilator_check(&w2, &[FieldElem::zero(), m2_twice.clone(), FieldElem::one()]) {
        return Err("w^2 (w^2 + 2m^2) = 0 for fw-ts".into());
    }
    if w2.is_zero() {
        return Err("w^2 nonzero for fw-ts".into());
    }
    if w2.add(&Operator::scalar(m2_twice)).is_zero() {
        return Err("w^2 + 2m^2 nonzero for fw-ts".into());
    }
    Ok(())
}

fn must<T>(r: Result<T>) -> T {
    r.expect("catalog indices are valid")
}
