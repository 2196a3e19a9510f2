use std::cmp::Ordering;

use proptest::prelude::*;

use super::*;

fn p(s: &str, n: usize) -> Polynomial {
    parse_polynomial(s, Some(n)).unwrap()
}

fn mono(e: &[u32]) -> Monomial {
    Monomial::from_exponents(e.to_vec())
}

#[test]
fn compare_examples() {
    let grlex = MonomialOrder::grlex();
    let lex = MonomialOrder::lex();
    // x1 vs x2*x3
    assert_eq!(grlex.compare(&mono(&[1, 0, 0]), &mono(&[0, 1, 1])).unwrap(), Ordering::Less);
    assert_eq!(lex.compare(&mono(&[1, 0]), &mono(&[0, 1])).unwrap(), Ordering::Greater);
    // x1*x5 vs x2*x4
    assert_eq!(
        grlex.compare(&mono(&[1, 0, 0, 0, 1]), &mono(&[0, 1, 0, 1, 0])).unwrap(),
        Ordering::Greater
    );
    assert!(matches!(
        grlex.compare(&mono(&[1]), &mono(&[1, 0])),
        Err(PolyError::VariableCount { .. })
    ));
}

#[test]
fn priority_reorders_variables() {
    let ord = MonomialOrder::with_priority(OrderKind::Lex, vec![1, 0]).unwrap();
    assert_eq!(ord.cmp(&mono(&[1, 0]), &mono(&[0, 1])), Ordering::Less);
    assert!(MonomialOrder::with_priority(OrderKind::Lex, vec![0, 0]).is_err());
    let key = ord.key(&mono(&[3, 5]));
    assert_eq!(ord.monomial_from_key(&key), mono(&[3, 5]));
}

#[test]
fn arithmetic_examples() {
    assert_eq!(&p("x1 + x2", 2) + &p("-x2", 2), p("x1", 2));
    assert_eq!(&p("x1 - 1", 1) * &p("x1 + 1", 1), p("x1^2 - 1", 1));
    let xor = p("x1 + x2 - 2*x1*x2", 2);
    let half = ratio(1, 2);
    assert_eq!((&p("x1 + x2", 2) - &xor).scale(&half), p("x1*x2", 2));
    assert!((&xor - &xor).is_zero());
}

#[test]
fn division_example_both_orders() {
    let ord = MonomialOrder::grlex();
    let f = p("x1*x2^2 - x2^3", 2);
    let g1 = p("x1*x2 - 1", 2);
    let g2 = p("x2^2 - 1", 2);

    let d = divide(&f, &[g1.clone(), g2.clone()], &ord).unwrap();
    assert_eq!(d.quotients, vec![p("x2", 2), p("-x2", 2)]);
    assert!(d.remainder.is_zero());

    let d = divide(&f, &[g2.clone(), g1.clone()], &ord).unwrap();
    assert_eq!(d.quotients, vec![p("x1 - x2", 2), Polynomial::zero(2)]);
    assert_eq!(d.remainder, p("x1 - x2", 2));
}

#[test]
fn division_edge_cases() {
    let ord = MonomialOrder::grlex();
    let f = p("x1^2 + 3*x2", 2);
    let d = divide(&f, &[], &ord).unwrap();
    assert_eq!(d.remainder, f);
    assert!(d.quotients.is_empty());

    let d = divide(&f, std::slice::from_ref(&f), &ord).unwrap();
    assert!(d.remainder.is_zero());
    assert_eq!(d.quotients, vec![Polynomial::one(2)]);

    assert_eq!(divide(&f, &[Polynomial::zero(2)], &ord), Err(PolyError::ZeroDivisor));
}

#[test]
fn s_polynomial_two_fan_pair() {
    // f = (x1 - a)(x2 - b), g = (x1 - c)(x2 - d) with a=1, b=2, c=0, d=1.
    let ord = MonomialOrder::grlex();
    let f = p("(x1 - 1)*(x2 - 2)", 2);
    let g = p("(x1 - 0)*(x2 - 1)", 2);
    // (d−b)x1 + (c−a)x2 + ab − cd
    assert_eq!(s_polynomial(&f, &g, &ord).unwrap(), p("-x1 - x2 + 2", 2));
    assert!(s_polynomial(&f, &f, &ord).unwrap().is_zero());
    assert_eq!(
        s_polynomial(&f, &Polynomial::zero(2), &ord),
        Err(PolyError::ZeroInput)
    );
}

#[test]
fn s_polynomial_coprime_reduces_to_zero() {
    let ord = MonomialOrder::grlex();
    let f = p("x1^2 - x1", 2);
    let g = p("x2^2 - x2", 2);
    let s = s_polynomial(&f, &g, &ord).unwrap();
    assert_eq!(s, p("-x1*x2^2 + x1^2*x2", 2));
    assert!(divide(&s, &[f, g], &ord).unwrap().remainder.is_zero());
}

#[test]
fn display_is_grlex_descending() {
    let f = p("1 - x2 + 3/2*x1^2*x3", 3);
    assert_eq!(f.to_string(), "3/2*x1^2*x3 - x2 + 1");
    assert_eq!(p("-x1 - 1/2", 1).to_string(), "-x1 - 1/2");
    assert_eq!(Polynomial::zero(3).to_string(), "0");
}

#[test]
fn parser_accepts_implicit_products_and_reports_positions() {
    assert_eq!(p("3/2x1 x2", 2), p("3/2*x1*x2", 2));
    assert_eq!(p("x1/2", 1), p("1/2*x1", 1));
    assert_eq!(p("-(x1 - 1)^2", 1), p("-x1^2 + 2*x1 - 1", 1));
    let e = parse_polynomial("x1 + \n  x3 $", Some(3)).unwrap_err();
    assert_eq!((e.line, e.column), (2, 6));
    let e = parse_polynomial("x1 + x4", Some(3)).unwrap_err();
    assert_eq!((e.line, e.column), (1, 6));
    assert!(parse_polynomial("x0", None).is_err());
    assert!(parse_polynomial("x1 / x2", None).is_err());
    assert!(parse_polynomial("", None).is_err());
    assert_eq!(parse_polynomial("x7", None).unwrap().nvars(), 7);
}

#[test]
fn eval_and_rename() {
    let f = p("x1*x2 - 1/2*x3", 3);
    assert_eq!(f.eval(&[rat(2), rat(3), rat(1)]), ratio(11, 2));
    let g = f.rename(&[2, 0, 1], 3);
    assert_eq!(g, p("x3*x1 - 1/2*x2", 3));
}

const N: usize = 3;

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0u32..4, N).prop_map(Monomial::from_exponents)
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((arb_monomial(), -4i64..5, 1i64..4), 0..6).prop_map(|ts| {
        Polynomial::from_terms(N, ts.into_iter().map(|(m, a, b)| (m, ratio(a, b))))
    })
}

fn arb_order() -> impl Strategy<Value = MonomialOrder> {
    (prop::bool::ANY, Just(vec![0usize, 1, 2]).prop_shuffle()).prop_map(|(g, perm)| {
        let kind = if g { OrderKind::Grlex } else { OrderKind::Lex };
        MonomialOrder::with_priority(kind, perm).unwrap()
    })
}

proptest! {
    #[test]
    fn order_laws(a in arb_monomial(), b in arb_monomial(), c in arb_monomial(), ord in arb_order()) {
        let ab = ord.cmp(&a, &b);
        prop_assert_eq!(ab.reverse(), ord.cmp(&b, &a));
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        if ab == Ordering::Greater && ord.cmp(&b, &c) == Ordering::Greater {
            prop_assert_eq!(ord.cmp(&a, &c), Ordering::Greater);
        }
        prop_assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), ab);
        if ord.is_graded() && a.degree() < b.degree() {
            prop_assert_eq!(ab, Ordering::Less);
        }
    }

    #[test]
    fn division_identity(f in arb_poly(), basis in proptest::collection::vec(arb_poly(), 0..4), ord in arb_order()) {
        let basis: Vec<_> = basis.into_iter().filter(|g| !g.is_zero()).collect();
        let d = divide(&f, &basis, &ord).unwrap();
        let mut total = d.remainder.clone();
        for (q, g) in d.quotients.iter().zip(&basis) {
            total = &total + &(q * g);
            let prod = q * g;
            if let (Some(lp), Some(lf)) = (prod.leading_monomial(&ord), f.leading_monomial(&ord)) {
                prop_assert_ne!(ord.cmp(lp, lf), Ordering::Greater);
            }
        }
        prop_assert_eq!(&total, &f);
        for (m, _) in d.remainder.terms() {
            for g in &basis {
                prop_assert!(!g.leading_monomial(&ord).unwrap().divides(m));
            }
        }
        if ord.is_graded() {
            prop_assert!(d.remainder.degree() <= f.degree());
        }
    }

    #[test]
    fn s_polynomial_cancels_leading_terms(f in arb_poly(), g in arb_poly(), ord in arb_order()) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let s = s_polynomial(&f, &g, &ord).unwrap();
        let lcm = f.leading_monomial(&ord).unwrap().lcm(g.leading_monomial(&ord).unwrap());
        if let Some(lm) = s.leading_monomial(&ord) {
            prop_assert_eq!(ord.cmp(lm, &lcm), Ordering::Less);
        }
    }

    #[test]
    fn print_parse_round_trip(f in arb_poly()) {
        let text = f.to_string();
        prop_assert_eq!(parse_polynomial(&text, Some(N)).unwrap(), f);
    }
}
