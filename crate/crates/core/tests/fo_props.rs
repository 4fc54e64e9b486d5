use std::collections::BTreeMap;

use proptest::prelude::*;
use rcfw::fo::{parse_formula, serialize, Expr, Formula};
use rcfw::poly::{rat, Rat};
use rcfw::sa::Rel;

const VARS: [&str; 3] = ["x", "y", "z"];

fn expr_strategy() -> impl Strategy<Value = Expr> {
    prop::collection::vec((prop::collection::vec(0u32..=2, 3), -4i64..=4, 1i64..=3), 0..4).prop_map(|terms| {
        terms.into_iter().fold(Expr::zero(), |acc, (e, n, d)| {
            let mut t = Expr::constant(rat(n, d));
            for (v, k) in VARS.iter().zip(e) {
                t = &t * &Expr::var(v).pow(k);
            }
            &acc + &t
        })
    })
}

fn rel_strategy() -> impl Strategy<Value = Rel> {
    prop_oneof![Just(Rel::Lt), Just(Rel::Eq), Just(Rel::Gt)]
}

fn qf_strategy() -> impl Strategy<Value = Formula> {
    let leaf = (expr_strategy(), rel_strategy()).prop_map(|(e, r)| Formula::Atom(e, r));
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..3).prop_map(Formula::And),
            prop::collection::vec(inner.clone(), 0..3).prop_map(Formula::Or),
            inner.prop_map(|f| Formula::Not(Box::new(f))),
        ]
    })
}

fn formula_strategy() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        (expr_strategy(), rel_strategy()).prop_map(|(e, r)| Formula::Atom(e, r)),
        prop::collection::vec(expr_strategy(), 1..3).prop_map(|args| Formula::Member { set: "S".into(), args }),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..3).prop_map(Formula::And),
            prop::collection::vec(inner.clone(), 0..3).prop_map(Formula::Or),
            inner.clone().prop_map(|f| Formula::Not(Box::new(f))),
            (prop::sample::subsequence(VARS.to_vec(), 1..3), inner.clone())
                .prop_map(|(vs, f)| Formula::Exists(vs.iter().map(|s| s.to_string()).collect(), Box::new(f))),
            (prop::sample::subsequence(VARS.to_vec(), 1..3), inner)
                .prop_map(|(vs, f)| Formula::ForAll(vs.iter().map(|s| s.to_string()).collect(), Box::new(f))),
        ]
    })
}

fn env_strategy() -> impl Strategy<Value = BTreeMap<String, Rat>> {
    prop::collection::vec((-6i64..=6, 1i64..=3), 3).prop_map(|v| {
        VARS.iter()
            .zip(v)
            .map(|(n, (a, b))| (n.to_string(), rat(a, b)))
            .collect()
    })
}

fn no_double_binding(f: &Formula, scope: &mut Vec<String>) -> bool {
    match f {
        Formula::And(v) | Formula::Or(v) => v.iter().all(|g| no_double_binding(g, scope)),
        Formula::Not(g) => no_double_binding(g, scope),
        Formula::Exists(vs, g) | Formula::ForAll(vs, g) => {
            let n = scope.len();
            for v in vs {
                if scope.contains(v) {
                    return false;
                }
                scope.push(v.clone());
            }
            let ok = no_double_binding(g, scope);
            scope.truncate(n);
            ok
        }
        _ => true,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sexpr_round_trip(f in formula_strategy()) {
        let text = serialize(&f);
        prop_assert_eq!(parse_formula(&text).unwrap(), f);
    }

    #[test]
    fn normalized_round_trip(f in formula_strategy()) {
        let g = f.normalize();
        prop_assert!(no_double_binding(&g, &mut g.free_real_vars().into_iter().collect()));
        prop_assert_eq!(g.free_real_vars(), f.free_real_vars());
        prop_assert_eq!(parse_formula(&serialize(&g)).unwrap(), g);
    }

    #[test]
    fn de_morgan(a in qf_strategy(), b in qf_strategy(), env in env_strategy()) {
        let lhs = Formula::Not(Box::new(Formula::And(vec![a.clone(), b.clone()])));
        let rhs = Formula::Or(vec![Formula::Not(Box::new(a.clone())), Formula::Not(Box::new(b.clone()))]);
        prop_assert_eq!(lhs.eval_qf(&env).unwrap(), rhs.eval_qf(&env).unwrap());
        let lhs = Formula::Not(Box::new(Formula::Or(vec![a.clone(), b.clone()])));
        let rhs = Formula::And(vec![Formula::Not(Box::new(a)), Formula::Not(Box::new(b))]);
        prop_assert_eq!(lhs.eval_qf(&env).unwrap(), rhs.eval_qf(&env).unwrap());
    }
}

#[test]
fn eval_qf_examples() {
    let x = Expr::var("x");
    let mut env = BTreeMap::new();
    env.insert("x".to_string(), rat(0, 1));
    let f = Formula::lt(&(&x * &x), &Expr::int(1));
    assert!(f.eval_qf(&env).unwrap());
    let g = Formula::And(vec![Formula::eq(&x, &Expr::zero()), Formula::gt(&x, &Expr::zero())]);
    assert!(!g.eval_qf(&env).unwrap());
    let h = Formula::gt(&Expr::var("y"), &Expr::zero());
    assert!(matches!(h.eval_qf(&env), Err(rcfw::Error::UnboundVariable(_))));
}
