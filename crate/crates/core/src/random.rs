//! Seeded random instances for the oracle checks.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::csp::{Constraint, CspInstance};
use crate::minority::Xor;
use crate::poly::{rat, Rational};

/// The generator behind every seeded check.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `r` random XOR rows over `n` variables; each variable is included with
/// probability one half.
pub fn random_xors<R: Rng>(rng: &mut R, n: usize, r: usize) -> Vec<Xor> {
    (0..r)
        .map(|_| Xor::new((0..n).filter(|_| rng.gen_bool(0.5)).collect(), rng.gen()))
        .collect()
}

/// A random Boolean instance made of XOR constraints.
pub fn random_gf2_instance<R: Rng>(rng: &mut R, n: usize, r: usize) -> CspInstance {
    let cs = random_xors(rng, n, r).into_iter().map(Constraint::Gf2Linear).collect();
    CspInstance::new(n, vec![rat(0), rat(1)], cs).expect("valid xor instance")
}

/// A random dual-discriminator instance with domain `{0, …, dsize−1}` and
/// `m` constraints drawn from permutation, complete and two-fan.
///
/// With `planted` every constraint is chosen to hold at a hidden assignment,
/// so the instance is satisfiable.
pub fn random_dualdisc_instance<R: Rng>(rng: &mut R, n: usize, dsize: usize, m: usize, planted: bool) -> CspInstance {
    assert!(n >= 2 && dsize >= 2);
    let domain: Vec<Rational> = (0..dsize as i64).map(rat).collect();
    let hidden: Vec<usize> = (0..n).map(|_| rng.gen_range(0..dsize)).collect();
    let mut inst = CspInstance::new(n, domain, Vec::new()).expect("valid domain");
    let subset = |rng: &mut R, must: Option<usize>| -> BTreeSet<Rational> {
        let mut s: BTreeSet<usize> = (0..dsize).filter(|_| rng.gen_bool(0.6)).collect();
        match must {
            Some(v) => {
                s.insert(v);
            }
            None if s.is_empty() => {
                s.insert(rng.gen_range(0..dsize));
            }
            None => {}
        }
        s.into_iter().map(|v| rat(v as i64)).collect()
    };
    while inst.constraints().len() < m {
        let i = rng.gen_range(0..n);
        let j = loop {
            let j = rng.gen_range(0..n);
            if j != i {
                break j;
            }
        };
        let (hi, hj) = (hidden[i], hidden[j]);
        let c = match rng.gen_range(0..3) {
            0 => {
                let mut image: Vec<usize> = (0..dsize).collect();
                image.shuffle(rng);
                if planted {
                    let at = image.iter().position(|&v| v == hj).expect("permutation");
                    image.swap(at, hi);
                }
                let keep: Vec<usize> = (0..dsize)
                    .filter(|&a| rng.gen_bool(0.8) || (planted && a == hi))
                    .collect();
                Constraint::Permutation {
                    i,
                    j,
                    pairs: keep.into_iter().map(|a| (rat(a as i64), rat(image[a] as i64))).collect(),
                }
            }
            1 => Constraint::Complete {
                i,
                di: subset(rng, planted.then_some(hi)),
                j,
                dj: subset(rng, planted.then_some(hj)),
            },
            _ => {
                // planted: one of the two centres matches the hidden value
                let (a, b) = if !planted {
                    (rng.gen_range(0..dsize), rng.gen_range(0..dsize))
                } else if rng.gen_bool(0.5) {
                    (hi, rng.gen_range(0..dsize))
                } else {
                    (rng.gen_range(0..dsize), hj)
                };
                let mut di = subset(rng, planted.then_some(hi));
                let mut dj = subset(rng, planted.then_some(hj));
                di.insert(rat(a as i64));
                dj.insert(rat(b as i64));
                Constraint::TwoFan { i, a: rat(a as i64), di, j, b: rat(b as i64), dj }
            }
        };
        inst.push(c).expect("generated constraints are valid");
    }
    inst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csp::enumerate_solutions;

    #[test]
    fn planted_instances_are_satisfiable() {
        let mut rng = seeded(3);
        for _ in 0..50 {
            let inst = random_dualdisc_instance(&mut rng, 5, 3, 6, true);
            assert!(!enumerate_solutions(&inst, 1000).is_empty(), "{inst}");
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let a = random_dualdisc_instance(&mut seeded(9), 4, 3, 5, false);
        let b = random_dualdisc_instance(&mut seeded(9), 4, 3, 5, false);
        assert_eq!(a, b);
        let x = random_gf2_instance(&mut seeded(9), 6, 3);
        assert_eq!(x.constraints().len(), 3);
        assert!(x.is_boolean());
    }
}
