use std::collections::BTreeSet;

use super::DualDiscError;
use crate::csp::{Constraint, CspInstance};
use crate::poly::Rational;

/// Outcome of arc consistency: pruned value sets per variable, or a proof
/// that some variable has no supported value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AcOutcome {
    Feasible(Vec<BTreeSet<Rational>>),
    Infeasible,
}

pub(crate) type Relation<'a> = Box<dyn Fn(&Rational, &Rational) -> bool + 'a>;

/// The binary relation of a permutation, complete or two-fan constraint.
pub(crate) fn binary_relation(c: &Constraint) -> Result<(usize, usize, Relation<'_>), DualDiscError> {
    Ok(match c {
        Constraint::Permutation { i, j, pairs } => (
            *i,
            *j,
            Box::new(move |a: &Rational, b: &Rational| pairs.iter().any(|(u, v)| u == a && v == b)),
        ),
        Constraint::Complete { i, di, j, dj } => (
            *i,
            *j,
            Box::new(move |a: &Rational, b: &Rational| di.contains(a) && dj.contains(b)),
        ),
        Constraint::TwoFan { i, a: ca, di, j, b: cb, dj } => (
            *i,
            *j,
            Box::new(move |a: &Rational, b: &Rational| {
                (a == ca && dj.contains(b)) || (b == cb && di.contains(a))
            }),
        ),
        other => return Err(DualDiscError::Unsupported(format!("{:?}", other.tag()))),
    })
}

/// AC-3 style fixpoint over the binary constraints of `inst`.
pub fn arc_consistency(inst: &CspInstance) -> Result<AcOutcome, DualDiscError> {
    let rels = inst
        .constraints()
        .iter()
        .map(binary_relation)
        .collect::<Result<Vec<_>, _>>()?;
    let mut doms: Vec<BTreeSet<Rational>> =
        vec![inst.domain().iter().cloned().collect(); inst.nvars()];
    loop {
        let mut changed = false;
        for (i, j, rel) in &rels {
            let keep_i: BTreeSet<Rational> = doms[*i]
                .iter()
                .filter(|a| doms[*j].iter().any(|b| rel(a, b)))
                .cloned()
                .collect();
            let keep_j: BTreeSet<Rational> = doms[*j]
                .iter()
                .filter(|b| keep_i.iter().any(|a| rel(a, b)))
                .cloned()
                .collect();
            if keep_i.len() != doms[*i].len() || keep_j.len() != doms[*j].len() {
                changed = true;
                doms[*i] = keep_i;
                doms[*j] = keep_j;
            }
        }
        if doms.iter().any(BTreeSet::is_empty) {
            return Ok(AcOutcome::Infeasible);
        }
        if !changed {
            return Ok(AcOutcome::Feasible(doms));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csp::{enumerate_solutions, parse_instance};
    use crate::poly::rat;

    fn set(v: &[i64]) -> BTreeSet<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn fans_prune_x1_and_x3() {
        let inst = parse_instance(crate::csp::tests::FANS).unwrap();
        let AcOutcome::Feasible(doms) = arc_consistency(&inst).unwrap() else {
            panic!("instance is satisfiable");
        };
        assert_eq!(doms, vec![set(&[2]), set(&[0, 1, 2]), set(&[1])]);
        // every pruned domain is a superset of the projection of Sol(C)
        let sols = enumerate_solutions(&inst, 1000);
        for t in sols.tuples() {
            for (k, v) in t.iter().enumerate() {
                assert!(doms[k].contains(v));
            }
        }
    }

    #[test]
    fn empty_intersection_is_infeasible() {
        let inst = parse_instance("vars 2\ndomain 0,1,2\nperm x1 x2 : 0->1\ncomplete x1 {2} x2 {0,1,2}\n").unwrap();
        assert_eq!(arc_consistency(&inst).unwrap(), AcOutcome::Infeasible);
    }

    #[test]
    fn unconstrained_keeps_full_domains() {
        let inst = parse_instance("vars 2\ndomain 0,1,2\n").unwrap();
        assert_eq!(
            arc_consistency(&inst).unwrap(),
            AcOutcome::Feasible(vec![set(&[0, 1, 2]), set(&[0, 1, 2])])
        );
    }

    #[test]
    fn other_constraints_are_rejected() {
        let inst = parse_instance("vars 2\nxor x1 ^ x2 = 1\n").unwrap();
        assert!(matches!(arc_consistency(&inst), Err(DualDiscError::Unsupported(_))));
    }
}
