use proptest::prelude::*;
use rcfw::poly::{isolate_roots, rat, resultant, sign_at, sylvester_determinant, AlgReal, Poly, Rat, UPoly};

fn poly_strategy(arity: usize, max_deg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, arity), -5i64..=5), 0..5)
        .prop_map(move |terms| Poly::from_terms(arity, terms.into_iter().map(|(e, c)| (e, rat(c, 1)))).unwrap())
}

fn point_strategy(arity: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec((-9i64..=9, 1i64..=4), arity).prop_map(|v| v.into_iter().map(|(n, d)| rat(n, d)).collect())
}

fn sign(r: &Rat) -> i8 {
    use num_traits::{Signed, Zero};
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eval_is_a_ring_homomorphism(p in poly_strategy(3, 3), q in poly_strategy(3, 3), x in point_strategy(3)) {
        let s = (&p + &q).eval(&x).unwrap();
        prop_assert_eq!(s, p.eval(&x).unwrap() + q.eval(&x).unwrap());
        let m = (&p * &q).eval(&x).unwrap();
        prop_assert_eq!(m, p.eval(&x).unwrap() * q.eval(&x).unwrap());
    }

    #[test]
    fn derivative_linear_and_leibniz(p in poly_strategy(2, 3), q in poly_strategy(2, 3), i in 0usize..2) {
        let d = |f: &Poly| f.derivative(i).unwrap();
        prop_assert_eq!(d(&(&p + &q)), &d(&p) + &d(&q));
        prop_assert_eq!(d(&(&p * &q)), &(&d(&p) * &q) + &(&p * &d(&q)));
    }

    #[test]
    fn resultant_matches_sylvester(p in poly_strategy(2, 3), q in poly_strategy(2, 3)) {
        prop_assume!(p.degree_in(1) > 0 || q.degree_in(1) > 0);
        prop_assert_eq!(resultant(&p, &q, 1).unwrap(), sylvester_determinant(&p, &q, 1).unwrap());
    }

    #[test]
    fn resultant_vanishes_on_common_factor(f in poly_strategy(2, 2), a in poly_strategy(2, 2), b in poly_strategy(2, 2)) {
        prop_assume!(f.degree_in(1) > 0 && !a.is_zero() && !b.is_zero());
        let p = &f * &a;
        let q = &f * &b;
        prop_assert!(resultant(&p, &q, 1).unwrap().is_zero());
    }

    #[test]
    fn resultant_nonzero_for_coprime(a in -6i64..6, b in -6i64..6, c in 1i64..4) {
        // y^2 - a and c*y - b share no factor unless b^2 = a c^2
        let names: Vec<String> = vec!["y".into()];
        let p = rcfw::poly::parse_poly_with(&format!("y^2 - {a}"), &names).unwrap();
        let q = rcfw::poly::parse_poly_with(&format!("{c}*y - {b}"), &names).unwrap();
        let r = resultant(&p, &q, 0).unwrap();
        prop_assert_eq!(r.is_zero(), b * b == a * c * c);
    }

    #[test]
    fn isolation_brackets_every_sign_change(c in prop::collection::vec(-6i64..=6, 1..6)) {
        let p = UPoly::from_ints(&c);
        prop_assume!(!p.is_zero());
        let roots = isolate_roots(&p).unwrap();
        for w in roots.windows(2) {
            prop_assert!(w[0].upper() <= w[1].lower() || w[0] < w[1]);
            prop_assert!(w[0] < w[1]);
        }
        let sf = p.square_free();
        // every sign change of the square-free part on a grid lies in some interval
        let grid: Vec<Rat> = (-80..=80).map(|k| rat(k, 8)).collect();
        for w in grid.windows(2) {
            let (sa, sb) = (sf.sign_at(&w[0]), sf.sign_at(&w[1]));
            if sa * sb < 0 {
                let hit = roots.iter().any(|r| r.upper() > &w[0] && r.lower() < &w[1]);
                prop_assert!(hit, "sign change in ({}, {}) not bracketed", w[0], w[1]);
            }
            if sa == 0 {
                prop_assert!(roots.iter().any(|r| r.as_rat() == Some(&w[0])));
            }
        }
    }

    #[test]
    fn sign_at_rational_points_agrees_with_eval(p in poly_strategy(3, 3), x in point_strategy(3)) {
        let ax: Vec<AlgReal> = x.iter().cloned().map(AlgReal::from_rat).collect();
        prop_assert_eq!(sign_at(&p, &ax).unwrap(), sign(&p.eval(&x).unwrap()));
    }
}
