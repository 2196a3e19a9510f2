//! Independent cross-checks of a computed basis: plain Buchberger on the
//! instance generators, the Buchberger criterion, and evaluation on the
//! enumerated solution set.

use std::fmt;

use crate::buchberger::{buchberger, is_groebner, reduce_basis, reduces_to_zero, GroebnerBasis, Limits};
use crate::csp::{enumerate_solutions, ideal_generators, vanishing_member, CspInstance, DEFAULT_SOLUTION_CAP};
use crate::poly::MonomialOrder;

/// Named pass/fail results of one oracle run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<(String, bool)>,
}

impl Report {
    fn push(&mut self, name: &str, ok: bool) {
        self.checks.push((name.to_string(), ok));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, ok) in &self.checks {
            writeln!(f, "{} {name}", if *ok { "PASS" } else { "FAIL" })?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("reference computation gave up: {0}")]
    Budget(String),
    #[error("solution enumeration hit the cap of {0} tuples")]
    Enumeration(usize),
}

/// Reduced grlex basis of the instance generators by plain Buchberger.
pub fn reference_basis(inst: &CspInstance, limits: &Limits) -> Result<GroebnerBasis, OracleError> {
    let gb = buchberger(&ideal_generators(inst), &MonomialOrder::grlex(), limits)
        .map_err(|e| OracleError::Budget(e.to_string()))?;
    Ok(reduce_basis(&gb))
}

/// Checks a candidate grlex basis of `inst`, truncated at `d` or complete.
///
/// Truncated candidates must equal the truncated reference exactly. Complete
/// ones must satisfy the criterion, contain every generator, and reduce to
/// the reference. Either way every element has to vanish on `Sol(C)`.
pub fn check_basis(inst: &CspInstance, candidate: &GroebnerBasis, limits: &Limits) -> Result<Report, OracleError> {
    let ord = MonomialOrder::grlex();
    let mut report = Report::default();
    let reference = reference_basis(inst, limits)?;
    match candidate.truncation() {
        Some(d) => {
            let want = reference.truncate(d);
            report.push("equals truncated reference basis", candidate.elements() == want.elements());
        }
        None => {
            report.push("buchberger criterion", is_groebner(candidate.elements(), &ord));
            let gens = ideal_generators(inst);
            report.push(
                "generators reduce to zero",
                gens.iter().all(|g| reduces_to_zero(g, candidate.elements(), &ord)),
            );
            let reduced = reduce_basis(&GroebnerBasis::new(candidate.elements().to_vec(), ord.clone(), false));
            report.push("reduced form equals reference basis", reduced.elements() == reference.elements());
        }
    }
    let sols = enumerate_solutions(inst, DEFAULT_SOLUTION_CAP);
    if sols.truncated {
        return Err(OracleError::Enumeration(DEFAULT_SOLUTION_CAP));
    }
    let vanish = candidate
        .elements()
        .iter()
        .all(|f| vanishing_member(f, &sols).expect("complete solution set"));
    report.push("elements vanish on every solution", vanish);
    Ok(report)
}
