//! Acceptance suite. Runs without the libtest harness and prints one
//! `PASS`/`FAIL` line per criterion; exits nonzero if any criterion fails.

use std::cell::RefCell;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use combideal::buchberger::{buchberger, is_groebner, reduce_basis, reduces_to_zero, GroebnerBasis, Limits};
use combideal::csp::{
    enumerate_solutions, ideal_generators, parse_instance, vanishing_member, CspInstance, SolutionSet,
    DEFAULT_SOLUTION_CAP,
};
use combideal::dualdisc::combined_basis;
use combideal::imp::{query, Certificate, MembershipProof};
use combideal::minority::{build_g1, convert_with_stats, gf2_rref, lift_equation, truncated_basis, Gf2Equation, Xor};
use combideal::oracle::reference_basis;
use combideal::poly::{divide, parse_polynomial, rat};
use combideal::random::{random_dualdisc_instance, random_gf2_instance, random_xors, seeded};
use combideal::{Monomial, MonomialOrder, Polynomial};

const PARITY: &str = "vars 5\nxor x1 ^ x3 ^ x4 = 0\nxor x2 ^ x3 ^ x5 = 1\n";
const FANS: &str = "\
vars 3
domain 0,1,2
twofan x1 2 {0,2} x2 1 {0,1,2}
twofan x1 2 {0,2} x3 1 {1,2}
twofan x2 0 {0,1,2} x3 1 {1,2}
complete x1 {1,2} x3 {1}
";

const WORKED_BASIS: [&str; 13] = [
    "x5^2 - x5",
    "x4^2 - x4",
    "x3*x5 - 1/2*(x2 + x3 + x5 - 1)",
    "x3*x4 - 1/2*(-x1 + x3 + x4)",
    "x3^2 - x3",
    "x2*x5 - 1/2*(x2 + x3 + x5 - 1)",
    "x2*x3 - 1/2*(x2 + x3 + x5 - 1)",
    "x2^2 - x2",
    "x1*x5 + x2*x4 - 1/2*(x1 + x2 + x4 + x5 - 1)",
    "x1*x4 - 1/2*(x1 - x3 + x4)",
    "x1*x3 - 1/2*(x1 + x3 - x4)",
    "x1*x2 + x4*x5 - 1/2*(x1 + x2 + x4 + x5 - 1)",
    "x1^2 - x1",
];

/// Every grlex division performed here, as (input degree, remainder degree).
struct DivisionLog(RefCell<Vec<(u32, u32, bool)>>);

impl DivisionLog {
    fn record(&self, f: &Polynomial, r: &Polynomial) {
        let rdeg = if r.is_zero() { 0 } else { r.degree() };
        self.0.borrow_mut().push((f.degree(), rdeg, r.is_zero() || rdeg <= f.degree()));
    }

    fn divide(&self, f: &Polynomial, basis: &[Polynomial]) -> combideal::poly::Division {
        let div = divide(f, basis, &MonomialOrder::grlex()).expect("division");
        self.record(f, &div.remainder);
        div
    }

    fn query(&self, f: &Polynomial, basis: &GroebnerBasis, d: u32) -> (bool, MembershipProof) {
        let out = query(f, basis, d).expect("query");
        if basis.order().kind() == MonomialOrder::grlex().kind() {
            self.record(f, &out.1.remainder);
        }
        out
    }
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn p(src: &str, n: usize) -> Polynomial {
    parse_polynomial(src, Some(n)).expect("polynomial")
}

fn solutions(inst: &CspInstance) -> SolutionSet {
    let sols = enumerate_solutions(inst, DEFAULT_SOLUTION_CAP);
    assert!(!sols.truncated, "solution cap reached");
    sols
}

fn same_set(a: &[Polynomial], b: &[Polynomial]) -> bool {
    a.len() == b.len() && a.iter().all(|f| b.contains(f)) && b.iter().all(|f| a.contains(f))
}

fn secs(t: Duration) -> String {
    format!("{:.2}s", t.as_secs_f64())
}

fn random_monomial<R: Rng>(rng: &mut R, n: usize, max_deg: u32) -> Monomial {
    let deg = rng.gen_range(0..=max_deg);
    let mut exps = vec![0u32; n];
    for _ in 0..deg {
        exps[rng.gen_range(0..n)] += 1;
    }
    Monomial::from_exponents(exps)
}

fn random_coeff<R: Rng>(rng: &mut R) -> combideal::Rational {
    loop {
        let c = combideal::Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=3).into());
        if c != rat(0) {
            return c;
        }
    }
}

fn random_poly<R: Rng>(rng: &mut R, n: usize, max_deg: u32, terms: usize) -> Polynomial {
    let mut f = Polynomial::zero(n);
    for _ in 0..terms {
        f.add_term(random_monomial(rng, n, max_deg), random_coeff(rng));
    }
    f
}

/// A member of degree ≤ d built from basis elements of degree ≤ d.
fn random_member<R: Rng>(rng: &mut R, basis: &GroebnerBasis, n: usize, d: u32) -> Polynomial {
    let usable: Vec<&Polynomial> = basis.elements().iter().filter(|g| g.degree() <= d).collect();
    let mut f = Polynomial::zero(n);
    if usable.is_empty() {
        return f;
    }
    for _ in 0..rng.gen_range(1..=3) {
        let g = usable[rng.gen_range(0..usable.len())];
        let m = random_monomial(rng, n, d - g.degree());
        f = &f + &g.mul_term(&m, &random_coeff(rng));
    }
    f
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let inst = parse_instance(PARITY).expect("instance");
    let gb = truncated_basis(&inst.xors().expect("xors"), 5, 2).expect("basis");
    let elapsed = start.elapsed();
    let want: Vec<Polynomial> = WORKED_BASIS.iter().map(|s| p(s, 5)).collect();
    let exact = same_set(gb.elements(), &want);
    let ok = exact && gb.len() == 13 && elapsed < Duration::from_secs(1);
    outcome(ok, format!("{} elements, exact match {exact}, {}", gb.len(), secs(elapsed)))
}

fn lift_example() -> Outcome {
    let lifted = lift_equation(&Gf2Equation::new(0, vec![1, 2], false), 3, 20).expect("lift");
    let want = p("x1 - x2 - x3 + 2*x2*x3", 3);
    outcome(lifted == want, format!("lift = {lifted}"))
}

fn minority_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(2024);
    let (mut cases, mut bad) = (0usize, Vec::new());
    while cases < 210 {
        let n: usize = rng.gen_range(1..=12);
        let r = rng.gen_range(n.saturating_sub(6)..=n.min(6));
        let d = (cases % 3) as u32 + 1;
        let inst = random_gf2_instance(&mut rng, n, r);
        let xors = inst.xors().expect("xors");
        // the plain reference gets expensive beyond six free variables
        if gf2_rref(&xors, n).is_ok_and(|sys| n - sys.rank() > 6) {
            continue;
        }
        let ours = truncated_basis(&xors, n, d).expect("convert");
        let gens = match gf2_rref(&xors, n) {
            Ok(sys) => build_g1(&sys).expand(1 << 13).expect("expand"),
            Err(_) => ideal_generators(&inst),
        };
        let limits = Limits { max_steps: 50_000_000 };
        let full = buchberger(&gens, &MonomialOrder::grlex(), &limits).expect("buchberger");
        let reference = reduce_basis(&full).truncate(d);
        if !same_set(ours.elements(), reference.elements()) {
            bad.push(format!("n={n} r={r} d={d}"));
        }
        cases += 1;
    }
    let elapsed = start.elapsed();

    // growth: average monomials processed at (n, n/2) versus (2n, n)
    let mut growth = Vec::new();
    let mut growth_ok = true;
    for d in 1..=3u32 {
        let avg = |n: usize| -> (f64, f64) {
            let (mut m, mut t, mut k) = (0u64, 0u64, 0u64);
            for s in 0..20u64 {
                let mut rng = seeded(7000 + s);
                let Ok(sys) = gf2_rref(&random_xors(&mut rng, n, n / 2), n) else { continue };
                let c = convert_with_stats(&sys, d).expect("convert");
                m += c.stats.monomials;
                t += c.stats.term_ops;
                k += 1;
            }
            (m as f64 / k as f64, t as f64 / k as f64)
        };
        let (m6, t6) = avg(6);
        let (m12, t12) = avg(12);
        let ratio = m12 / m6;
        growth_ok &= ratio <= 2.0 * f64::from(1u32 << d);
        growth.push(format!("d={d} monomials x{ratio:.1} term_ops x{:.1}", t12 / t6));
    }
    let ok = bad.is_empty() && growth_ok && elapsed < Duration::from_secs(300);
    outcome(
        ok,
        format!(
            "{cases} systems, {} mismatches{}, {}; growth n=6->12: {}",
            bad.len(),
            bad.first().map(|s| format!(" (first {s})")).unwrap_or_default(),
            secs(elapsed),
            growth.join(", ")
        ),
    )
}

struct Corpus {
    name: String,
    inst: CspInstance,
    basis: GroebnerBasis,
    d: u32,
}

fn membership_corpus() -> Vec<Corpus> {
    let mut out = Vec::new();
    let parity = parse_instance(PARITY).expect("instance");
    out.push(Corpus {
        name: "parity d=2".into(),
        basis: truncated_basis(&parity.xors().unwrap(), 5, 2).unwrap(),
        inst: parity,
        d: 2,
    });
    let mut rng = seeded(77);
    for (n, r, d) in [(6, 2, 2), (8, 3, 3), (10, 4, 2)] {
        let inst = loop {
            let inst = random_gf2_instance(&mut rng, n, r);
            if gf2_rref(&inst.xors().unwrap(), n).is_ok() {
                break inst;
            }
        };
        out.push(Corpus {
            name: format!("gf2 n={n} r={r} d={d}"),
            basis: truncated_basis(&inst.xors().unwrap(), n, d).unwrap(),
            inst,
            d,
        });
    }
    let ex = parse_instance(FANS).expect("instance");
    out.push(Corpus { name: "dualdisc fans".into(), basis: combined_basis(&ex).unwrap(), inst: ex, d: 3 });
    for (n, dsize) in [(5, 3), (7, 2)] {
        let inst = random_dualdisc_instance(&mut rng, n, dsize, n + 2, true);
        out.push(Corpus {
            name: format!("dualdisc n={n} |D|={dsize}"),
            basis: combined_basis(&inst).unwrap(),
            inst,
            d: 3,
        });
    }
    out
}

fn membership(corpus: &[Corpus], log: &DivisionLog) -> Outcome {
    let mut rng = seeded(4);
    let mut details = Vec::new();
    let mut ok = true;
    for c in corpus {
        let n = c.inst.nvars();
        let sols = solutions(&c.inst);
        let (mut members, mut disagreements) = (0, 0);
        for k in 0..500 {
            let f = match k % 3 {
                0 => random_member(&mut rng, &c.basis, n, c.d),
                1 => {
                    // f − NF(f) is a member
                    let f = random_poly(&mut rng, n, c.d, 4);
                    let r = log.divide(&f, c.basis.elements()).remainder;
                    &f - &r
                }
                _ => {
                    let terms = rng.gen_range(1..=5);
                    random_poly(&mut rng, n, c.d, terms)
                }
            };
            let (member, _) = log.query(&f, &c.basis, c.d);
            members += usize::from(member);
            if member != vanishing_member(&f, &sols).expect("vanishing") {
                disagreements += 1;
            }
        }
        ok &= disagreements == 0 && members > 0 && members < 500;
        details.push(format!("{}: {members}/500 members, {disagreements} disagreements", c.name));
    }
    outcome(ok, details.join("; "))
}

fn certificates(corpus: &[Corpus], log: &DivisionLog) -> Outcome {
    let mut rng = seeded(5);
    let (mut proofs, mut failures, mut tampered, mut accepted) = (0, 0, 0, 0);
    for c in corpus {
        let n = c.inst.nvars();
        let ord = c.basis.order();
        for _ in 0..100 {
            let f = random_member(&mut rng, &c.basis, n, c.d);
            let (member, proof) = log.query(&f, &c.basis, c.d);
            if !member {
                failures += 1;
                continue;
            }
            proofs += 1;
            let cert = Certificate::new(&f, &proof, &c.basis).expect("certificate");
            let mut sum = Polynomial::zero(n);
            let mut side = true;
            for (id, h) in proof.basis_ids.iter().zip(&proof.cofactors) {
                let prod = h * &c.basis.elements()[*id];
                if let (Some(lp), Some(lf)) = (prod.leading_monomial(ord), f.leading_monomial(ord)) {
                    side &= ord.cmp(lp, lf) != std::cmp::Ordering::Greater;
                }
                sum = &sum + &prod;
            }
            let json = cert.to_json();
            let back = Certificate::from_json(&json).expect("parse");
            let good = sum == f
                && side
                && cert.verify() == Ok(true)
                && back.query == cert.query
                && back.proof == cert.proof
                && back.basis.elements() == cert.basis.elements()
                && back.basis.order() == cert.basis.order()
                && back.to_json() == json
                && back.verify() == Ok(true);
            if !good {
                failures += 1;
            }

            // single-coefficient perturbation of one cofactor
            let mut bad = proof.clone();
            let k = rng.gen_range(0..bad.cofactors.len());
            let m = random_monomial(&mut rng, n, 1);
            bad.cofactors[k].add_term(m, random_coeff(&mut rng));
            tampered += 1;
            let rejected = match Certificate::new(&f, &bad, &c.basis) {
                Ok(cert) => {
                    let reparsed = Certificate::from_json(&cert.to_json());
                    cert.verify() != Ok(true) && reparsed.map_or(true, |r| r.verify() != Ok(true))
                }
                Err(_) => true,
            };
            if !rejected {
                accepted += 1;
            }
        }
    }
    outcome(
        failures == 0 && accepted == 0 && proofs > 0,
        format!("{proofs} certificates, {failures} failures; {tampered} tampered, {accepted} accepted"),
    )
}

fn dualdisc_criterion() -> (Outcome, Outcome) {
    let start = Instant::now();
    let mut rng = seeded(31);
    let grlex = MonomialOrder::grlex();
    let (mut cases, mut failures, mut infeasible) = (0, Vec::new(), 0);
    let mut worst = [0u32; 2];
    while cases < 120 {
        let n = rng.gen_range(2..=10);
        let dsize = rng.gen_range(2..=3);
        let m = rng.gen_range(n..=3 * n);
        let planted = rng.gen_bool(0.75);
        let inst = random_dualdisc_instance(&mut rng, n, dsize, m, planted);
        let gb = combined_basis(&inst).expect("combined basis");
        let sols = solutions(&inst);
        infeasible += usize::from(sols.is_empty());
        let crit = is_groebner(gb.elements(), &grlex);
        let gens = ideal_generators(&inst).iter().all(|g| reduces_to_zero(g, gb.elements(), &grlex));
        let vanish = gb.elements().iter().all(|f| vanishing_member(f, &sols).expect("vanishing"));
        if !(crit && gens && vanish) {
            failures.push(format!("n={n} |D|={dsize} m={m}"));
        }
        worst[dsize - 2] = worst[dsize - 2].max(gb.max_degree());
        cases += 1;
    }
    let elapsed = start.elapsed();
    let c6 = outcome(
        failures.is_empty() && elapsed < Duration::from_secs(300),
        format!(
            "{cases} instances ({infeasible} infeasible), {} failures{}, {}",
            failures.len(),
            failures.first().map(|s| format!(" (first {s})")).unwrap_or_default(),
            secs(elapsed)
        ),
    );
    let c7 = outcome(
        worst[0] <= 2 && worst[1] <= 6,
        format!("max degree {} for |D|=2 (bound 2), {} for |D|=3 (bound 6)", worst[0], worst[1]),
    );
    (c6, c7)
}

fn infeasibility(log: &DivisionLog) -> Outcome {
    let mut rng = seeded(8);
    let (mut cases, mut bad) = (0, 0);
    let one = |n: usize| Polynomial::one(n);

    for _ in 0..30 {
        let n = rng.gen_range(2..=8);
        let r = rng.gen_range(1..=4);
        let mut xors = random_xors(&mut rng, n, r);
        let mut contra = xors[rng.gen_range(0..xors.len())].clone();
        contra = Xor::new(contra.vars.clone(), !contra.parity);
        xors.push(contra);
        let gb = truncated_basis(&xors, n, 2).expect("basis");
        let (member, _) = log.query(&one(n), &gb, 2);
        cases += 1;
        if !(gb.is_unit() && member) {
            bad += 1;
        }
    }

    let fixed = parse_instance("vars 2\ndomain 0,1,2\nperm x1 x2 : 0->1, 1->0\ncomplete x1 {2} x2 {0,1,2}\n")
        .expect("instance");
    let mut dual = vec![fixed];
    while dual.len() < 30 {
        let n = rng.gen_range(2..=6);
        let dsize = rng.gen_range(2..=3);
        let inst = random_dualdisc_instance(&mut rng, n, dsize, 3 * n, false);
        if solutions(&inst).is_empty() {
            dual.push(inst);
        }
    }
    for inst in &dual {
        let n = inst.nvars();
        let gb = combined_basis(inst).expect("basis");
        let (member, _) = log.query(&one(n), &gb, 0);
        let reference = reference_basis(inst, &Limits::default()).expect("reference");
        cases += 1;
        if !(gb.is_unit() && member && reference.is_unit()) {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{cases} contradictory instances, {bad} without basis {{1}}"))
}

fn division_example(log: &DivisionLog) -> Outcome {
    // x = x1, y = x2
    let f = p("x1*x2^2 - x2^3", 2);
    let g1 = p("x1*x2 - 1", 2);
    let g2 = p("x2^2 - 1", 2);
    let a = log.divide(&f, &[g2.clone(), g1.clone()]);
    let b = log.divide(&f, &[g1, g2]);
    let want = p("x1 - x2", 2);
    let ok = a.remainder == want && b.remainder.is_zero();
    outcome(ok, format!("(g2, g1) remainder {}; (g1, g2) remainder {}", a.remainder, b.remainder))
}

fn division_stress(log: &DivisionLog) {
    let mut rng = seeded(10);
    for _ in 0..500 {
        let n = rng.gen_range(1..=5);
        let basis: Vec<Polynomial> = (0..rng.gen_range(1..=4))
            .map(|_| random_poly(&mut rng, n, 3, 3))
            .filter(|g| !g.is_zero())
            .collect();
        let f = random_poly(&mut rng, n, 4, 6);
        log.divide(&f, &basis);
    }
}

fn main() -> ExitCode {
    let log = DivisionLog(RefCell::new(Vec::new()));
    let corpus = membership_corpus();
    let (c6, c7) = dualdisc_criterion();
    let results = [
        ("1 worked example", worked_example()),
        ("2 lift of x1+x2+x3=0", lift_example()),
        ("3 minority oracle equivalence", minority_oracle()),
        ("4 membership semantics", membership(&corpus, &log)),
        ("5 certificate round trip", certificates(&corpus, &log)),
        ("6 dual-disc criterion", c6),
        ("7 dual-disc degree bound", c7),
        ("8 infeasibility", infeasibility(&log)),
        ("9 division order dependence", division_example(&log)),
    ];
    division_stress(&log);
    let calls = log.0.borrow();
    let violations = calls.iter().filter(|c| !c.2).count();
    let c10 = outcome(violations == 0, format!("{} grlex divisions, {violations} violations", calls.len()));

    let mut all = true;
    for (name, o) in results.iter().chain([("10 grlex remainder degree", c10)].iter()) {
        all &= o.ok;
        println!("{} criterion {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
