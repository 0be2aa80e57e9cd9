use proptest::prelude::*;

use pdm_core::expr::{diff, eval, is_zero, parse, parse_prefix, simplify, Bindings, Expr, NoFunctions, ProbeConfig, Verdict};

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        Just(Expr::x1()),
        Just(Expr::x2()),
        (-3i64..=3).prop_map(Expr::int),
        (1i64..=3, 2i64..=4).prop_map(|(a, b)| Expr::frac(a, b)),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), 0i64..=3).prop_map(|(a, n)| a.powi(n)),
            inner.clone().prop_map(|a| Expr::sin(&a)),
            inner.clone().prop_map(|a| Expr::cos(&a)),
            inner.prop_map(|a| Expr::exp(&(Expr::frac(1, 4) * Expr::sin(&a)))),
        ]
    })
}

fn at(x1: f64, x2: f64) -> Bindings {
    [("x1".to_string(), x1), ("x2".to_string(), x2)].into_iter().collect()
}

fn value(e: &Expr, b: &Bindings) -> f64 {
    eval(e, b, &NoFunctions).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, .. ProptestConfig::default() })]

    #[test]
    fn mixed_partials_commute(e in expr()) {
        let a = diff(&diff(&e, "x1"), "x2");
        let b = diff(&diff(&e, "x2"), "x1");
        let z = is_zero(&(a - b), &ProbeConfig::default());
        prop_assert_ne!(z.verdict, Verdict::ProvenNonzero);
    }

    #[test]
    fn derivative_matches_finite_difference(e in expr(), x1 in -1.5f64..1.5, x2 in -1.5f64..1.5) {
        let h = 1e-5;
        let d = diff(&e, "x1");
        let fd = (value(&e, &at(x1 + h, x2)) - value(&e, &at(x1 - h, x2))) / (2.0 * h);
        prop_assert!(close(fd, value(&d, &at(x1, x2)), 1e-5), "{} : {} vs {}", e, fd, value(&d, &at(x1, x2)));
    }

    #[test]
    fn printed_forms_parse_back(e in expr()) {
        let s = simplify(&e);
        prop_assert_eq!(parse(&s.to_string()).map(|p| simplify(&p)).unwrap(), s.clone());
        prop_assert_eq!(parse_prefix(&s.to_prefix()).unwrap(), s);
    }

    #[test]
    fn simplification_preserves_value(e in expr(), x1 in -1.5f64..1.5, x2 in -1.5f64..1.5) {
        let b = at(x1, x2);
        prop_assert!(close(value(&e, &b), value(&simplify(&e), &b), 1e-9));
    }
}
