use std::collections::BTreeSet;

use super::ac::{arc_consistency, binary_relation, AcOutcome};
use super::cf::{cf_basis, classify, Family};
use super::cpc::{build_cpcs, cpc_basis, Chains, Perm};
use super::DualDiscError;
use crate::buchberger::{reduces_to_zero, GroebnerBasis};
use crate::csp::{Constraint, CspInstance};
use crate::poly::{MonomialOrder, Polynomial, Rational};

/// Counters from one run of [`combined_basis_with_stats`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CombinedStats {
    pub restarts: u64,
    pub chains: usize,
}

/// Grlex Gröbner basis of the ideal of a dual-discriminator instance.
pub fn combined_basis(inst: &CspInstance) -> Result<GroebnerBasis, DualDiscError> {
    combined_basis_with_stats(inst).map(|(g, _)| g)
}

enum Step {
    Stable,
    Restart,
    Infeasible,
}

/// Runs arc consistency, builds the chains, then alternates between
/// completing the complete/two-fan part and pushing what it learns into the
/// chains until neither side changes.
pub fn combined_basis_with_stats(inst: &CspInstance) -> Result<(GroebnerBasis, CombinedStats), DualDiscError> {
    let n = inst.nvars();
    let domain = inst.domain().to_vec();
    let ord = MonomialOrder::grlex();
    let unit = |stats| Ok((GroebnerBasis::unit(n, MonomialOrder::grlex()), stats));
    let mut stats = CombinedStats::default();

    let doms = match arc_consistency(inst)? {
        AcOutcome::Feasible(d) => d,
        AcOutcome::Infeasible => return unit(stats),
    };

    let mut perms = Vec::new();
    let mut pool: Vec<Polynomial> = (0..n).map(|v| Polynomial::vanishing_on(n, v, doms[v].iter())).collect();
    for c in inst.constraints() {
        let _ = binary_relation(c)?;
        match c {
            Constraint::Permutation { i, j, pairs } => perms.push(Perm { i: *i, j: *j, pairs: pairs.clone() }),
            Constraint::Complete { i, di, j, dj } => {
                pool.push(Polynomial::vanishing_on(n, *i, di.iter()));
                pool.push(Polynomial::vanishing_on(n, *j, dj.iter()));
            }
            Constraint::TwoFan { i, a, di, j, b, dj } => {
                pool.push(&Polynomial::linear_factor(n, *i, a) * &Polynomial::linear_factor(n, *j, b));
                pool.push(Polynomial::vanishing_on(n, *i, di.iter()));
                pool.push(Polynomial::vanishing_on(n, *j, dj.iter()));
            }
            _ => unreachable!("rejected by binary_relation"),
        }
    }
    let Ok(mut chains) = build_cpcs(&perms) else {
        return unit(stats);
    };

    let dsize = domain.len() as u64;
    let budget = 16 + n as u64 * dsize + 2 * (n as u64).pow(2) * dsize.pow(4);
    let mut g = pool;
    loop {
        if stats.restarts > budget {
            return Err(DualDiscError::Internal(format!("no fixpoint after {budget} restarts")));
        }
        let cf = cf_basis(&g, &chains, &doms, &domain)?;
        if cf.basis.is_unit() {
            return unit(stats);
        }
        g = cf.basis.into_elements();
        let mut grew = false;
        for p in &cf.pending {
            match chains.add(p) {
                Ok(changed) => grew |= changed,
                Err(_) => return unit(stats),
            }
        }
        if grew {
            stats.restarts += 1;
            continue;
        }
        match sweep(&mut g, &mut chains, n, &domain)? {
            Step::Stable => break,
            Step::Restart => stats.restarts += 1,
            Step::Infeasible => return unit(stats),
        }
    }

    let mut out = g;
    for c in chains.cpcs() {
        out.extend(cpc_basis(c, n)?.into_elements());
    }
    if out.iter().any(Polynomial::is_unit) {
        return unit(stats);
    }
    stats.chains = chains.cpcs().len();
    Ok((GroebnerBasis::new(out, ord, false), stats))
}

/// One pass over the complete/two-fan elements that touch chained variables.
fn sweep(g: &mut Vec<Polynomial>, chains: &mut Chains, n: usize, domain: &[Rational]) -> Result<Step, DualDiscError> {
    let ord = MonomialOrder::grlex();
    let lin = |v: usize, a: &Rational| Polynomial::linear_factor(n, v, a);
    let fan = |p: usize, a: &Rational, q: usize, b: &Rational| &lin(p, a) * &lin(q, b);
    let mut drop = Vec::new();

    for (k, f) in g.clone().iter().enumerate() {
        match classify(f, domain) {
            Some(Family::Domain { var, values }) => {
                let Some(c) = chains.chain_of(var) else { continue };
                let cpc = &mut chains.cpcs_mut()[c];
                let shrunk = cpc.retain(|at| values.contains(&at(var)));
                if cpc.rows().is_empty() {
                    return Ok(Step::Infeasible);
                }
                let allowed = cpc.allowed(var);
                g[k] = Polynomial::vanishing_on(n, var, allowed.iter());
                if shrunk {
                    return Ok(Step::Restart);
                }
            }
            Some(Family::Fan { i, a, j, b }) => {
                let (ci, cj) = (chains.chain_of(i), chains.chain_of(j));
                let (p, a, q, b, cp, cq) = match (ci, cj) {
                    (None, None) => continue,
                    (Some(cp), cq) => (i, a, j, b, cp, cq),
                    (None, Some(cq)) => (j, b, i, a, cq, None),
                };
                if cq == Some(cp) {
                    let cpc = &mut chains.cpcs_mut()[cp];
                    let filtered = cpc.retain(|at| at(p) == a || at(q) == b);
                    if cpc.rows().is_empty() {
                        return Ok(Step::Infeasible);
                    }
                    if filtered {
                        g.remove(k);
                        return Ok(Step::Restart);
                    }
                    drop.push(k);
                    continue;
                }
                let cpc_p = &chains.cpcs()[cp];
                if !cpc_p.allowed(p).contains(&a) {
                    g.push(lin(q, &b));
                    return Ok(Step::Restart);
                }
                let mut family = Vec::new();
                match cq {
                    Some(cq) => {
                        let cpc_q = &chains.cpcs()[cq];
                        if !cpc_q.allowed(q).contains(&b) {
                            g.push(lin(p, &a));
                            return Ok(Step::Restart);
                        }
                        for &u in cpc_p.vars() {
                            let au = cpc_p.sigma(p, u, &a).expect("a is allowed");
                            for &w in cpc_q.vars() {
                                let bw = cpc_q.sigma(q, w, &b).expect("b is allowed");
                                family.push(fan(u, &au, w, &bw));
                            }
                        }
                    }
                    None => {
                        for &u in cpc_p.vars() {
                            let au = cpc_p.sigma(p, u, &a).expect("a is allowed");
                            family.push(fan(u, &au, q, &b));
                        }
                    }
                }
                if family.iter().any(|h| !reduces_to_zero(h, g, &ord)) {
                    g.extend(family);
                    return Ok(Step::Restart);
                }
            }
            Some(Family::Line { .. }) | Some(Family::Unit) => {}
            None => {
                return Err(DualDiscError::Internal(format!("basis element {f} has no recognised shape")));
            }
        }
    }
    if drop.is_empty() {
        return Ok(Step::Stable);
    }
    for k in drop.into_iter().rev() {
        g.remove(k);
    }
    Ok(Step::Stable)
}

/// Domains after arc consistency, as used for the chains' value sets.
pub fn pruned_domains(inst: &CspInstance) -> Result<Option<Vec<BTreeSet<Rational>>>, DualDiscError> {
    Ok(match arc_consistency(inst)? {
        AcOutcome::Feasible(d) => Some(d),
        AcOutcome::Infeasible => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buchberger::{buchberger, is_groebner, reduce_basis, Limits};
    use crate::csp::{enumerate_solutions, ideal_generators, parse_instance, vanishing_member};
    use crate::poly::parse_polynomial;

    fn check(inst: &CspInstance) {
        let gb = combined_basis(inst).unwrap();
        let ord = MonomialOrder::grlex();
        assert!(is_groebner(gb.elements(), &ord), "not a basis for\n{inst}\n{gb}");
        let reference = buchberger(&ideal_generators(inst), &ord, &Limits::default()).unwrap();
        let reference = reduce_basis(&reference);
        assert_eq!(reduce_basis(&gb).elements(), reference.elements(), "\n{inst}");
        let sols = enumerate_solutions(inst, 100_000);
        for f in gb.elements() {
            assert!(vanishing_member(f, &sols).unwrap());
        }
    }

    #[test]
    fn fans() {
        let inst = parse_instance(crate::csp::tests::FANS).unwrap();
        let gb = combined_basis(&inst).unwrap();
        let p = |s: &str| parse_polynomial(s, Some(3)).unwrap();
        assert!(gb.elements().contains(&p("x1 - 2")));
        assert!(gb.elements().contains(&p("x3 - 1")));
        check(&inst);
    }

    #[test]
    fn small_instances() {
        for src in [
            "vars 3\ndomain 0,1,2\nperm x1 x2 : 0->1, 1->2, 2->0\ntwofan x2 0 {0,1,2} x3 1 {0,1,2}\n",
            "vars 3\ndomain 0,1,2\nperm x1 x2 : 0->1, 1->2, 2->0\ntwofan x1 0 {0,1,2} x2 0 {0,1,2}\n",
            "vars 4\ndomain 0,1,2\nperm x1 x2 : 0->1, 1->2, 2->0\nperm x3 x4 : 0->0, 1->2, 2->1\ntwofan x2 1 {0,1,2} x4 2 {0,1,2}\n",
            "vars 3\ndomain 0,1\ntwofan x1 1 {0,1} x2 0 {0,1}\ntwofan x1 0 {0,1} x2 1 {0,1}\ntwofan x2 1 {0,1} x3 1 {0,1}\n",
            "vars 2\ndomain 0,1,2\nperm x1 x2 : 0->1\ncomplete x1 {2} x2 {0,1,2}\n",
        ] {
            check(&parse_instance(src).unwrap());
        }
    }

    #[test]
    fn infeasible_is_unit() {
        let inst = parse_instance("vars 2\ndomain 0,1,2\nperm x1 x2 : 0->1, 1->0\ncomplete x1 {2} x2 {0,1,2}\n").unwrap();
        assert!(combined_basis(&inst).unwrap().is_unit());
    }

    #[test]
    fn random_instances_match_buchberger() {
        use crate::random::random_dualdisc_instance;
        use rand::{Rng, SeedableRng};
        use rand_chacha::ChaCha8Rng;

        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..120 {
            let n = rng.gen_range(2..=5);
            let dsize = rng.gen_range(2..=3);
            let m = rng.gen_range(1..=2 * n);
            let planted = rng.gen_bool(0.7);
            check(&random_dualdisc_instance(&mut rng, n, dsize, m, planted));
        }
    }
}
