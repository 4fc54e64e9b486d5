use num_rational::BigRational;
use proptest::prelude::*;
use rcfw::pl::*;
use rcfw::poly::Rat;

fn k(text: &str) -> SimplicialComplex {
    parse_complex(text).unwrap()
}

fn step(line: &str) -> CollapseStep {
    CollapseStep::parse(line).unwrap()
}

fn simplex_cert() -> HomotopyCertificate {
    HomotopyCertificate::parse("base: abc\nfixed: a\ntarget: a\nC ab abc\nC b bc\nC c ac\n").unwrap()
}

#[test]
fn search_on_the_triangle() {
    let r = collapse_search(&k("abc"), &k("a"), 100_000).unwrap();
    let SearchOutcome::Certificate(c) = r.outcome else {
        panic!("no certificate");
    };
    let lines: Vec<String> = c.steps.iter().map(|s| s.to_string()).collect();
    assert_eq!(lines, ["C ab abc", "C b bc", "C c ac"]);
    assert_eq!(verify_certificate(&c), Verification::Accept);
    assert_eq!(c, simplex_cert());
}

#[test]
fn simplices_collapse() {
    for d in 1..=4 {
        let s = simplex(d);
        let r = collapse_search(&s, &k("a"), 100_000).unwrap();
        let SearchOutcome::Certificate(c) = r.outcome else {
            panic!("simplex of dimension {d}");
        };
        assert_eq!(c.steps.len(), (s.len() - 1) / 2);
        assert!(verify_certificate(&c).accepted());
    }
}

#[test]
fn complexes_without_free_faces() {
    let dunce = dunce_hat();
    assert_eq!(dunce.f_vector(), vec![8, 24, 17]);
    assert_eq!(dunce.euler_characteristic(), 1);
    let bing = bing_house();
    assert_eq!(bing.f_vector(), vec![75, 246, 172]);
    assert_eq!(bing.euler_characteristic(), 1);
    for c in [k("ab ac bc"), dunce.clone(), bing.clone(), simplex_boundary(3)] {
        assert!(free_faces(&c).is_empty());
        let target = SimplicialComplex::from_facets(&[vec![c.labels()[0].clone()]]).unwrap();
        let r = collapse_search(&c, &target, 100_000).unwrap();
        assert!(matches!(r.outcome, SearchOutcome::Exhausted(Exhaustion::Complete)));
        assert!(r.expanded <= 1);
    }
}

#[test]
fn budget_exhaustion() {
    // the cone over the dunce hat collapses, but not in two states
    let cone = dunce_hat().cone("0").unwrap();
    let r = collapse_search(&cone, &k("0"), 2).unwrap();
    assert!(matches!(r.outcome, SearchOutcome::Exhausted(Exhaustion::Budget)));
    assert_eq!(r.expanded, 2);
}

#[test]
fn cones_collapse() {
    for base in [dunce_hat(), bing_house()] {
        let cone = base.cone("z").unwrap();
        let r = collapse_search(&cone, &k("z"), 100_000).unwrap();
        let SearchOutcome::Certificate(c) = r.outcome else {
            panic!("cone did not collapse");
        };
        assert!(verify_certificate(&c).accepted());
    }
}

#[test]
fn certificate_examples() {
    let good = simplex_cert();
    assert!(verify_certificate(&good).accepted());
    let mut swapped = good.clone();
    swapped.steps.swap(1, 2);
    assert!(matches!(
        verify_certificate(&swapped),
        Verification::Reject { index: 1, .. }
    ));
    let mut rel = good.clone();
    rel.fixed = k("ab");
    rel.target = k("ab");
    assert!(matches!(
        verify_certificate(&rel),
        Verification::Reject { index: 0, .. }
    ));
    let mut absent = good.clone();
    absent.steps[2] = step("C c cd");
    assert!(matches!(
        verify_certificate(&absent),
        Verification::Reject { index: 2, .. }
    ));
    let mut short = good.clone();
    short.steps.pop();
    assert!(matches!(
        verify_certificate(&short),
        Verification::Reject { index: 2, .. }
    ));
    assert_eq!(HomotopyCertificate::parse(&good.to_string()).unwrap(), good);
}

#[test]
fn expansions_in_certificates() {
    // the last collapse names a simplex that is already gone
    let stale =
        HomotopyCertificate::parse("base: ab\nfixed: a\ntarget: a\nE c bc\nE ac abc\nC ab abc\nC b bc\nC b bc\n")
            .unwrap();
    assert!(matches!(
        verify_certificate(&stale),
        Verification::Reject { index: 4, .. }
    ));
    let ok = HomotopyCertificate::parse("base: ab\nfixed: a\ntarget: a\nE c bc\nE ac abc\nC ab abc\nC b bc\nC c ac\n")
        .unwrap();
    assert!(verify_certificate(&ok).accepted());
}

#[test]
fn collar_examples() {
    let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let b = barycenter(2);
    assert_eq!(collar_cone_map(&CollarPoint::Simplex(b.clone()), 2).unwrap(), b);
    let x = vec![r(1, 2), r(1, 2), r(0, 1)];
    assert_eq!(collar_cone_map(&CollarPoint::Collar(x.clone(), r(1, 1)), 2).unwrap(), x);
    assert_eq!(
        collar_cone_map(&CollarPoint::Collar(x.clone(), r(0, 1)), 2).unwrap(),
        collar_cone_map(&CollarPoint::Simplex(x.clone()), 2).unwrap()
    );
    assert!(collar_cone_map(&CollarPoint::Simplex(vec![r(1, 2), r(1, 3), r(0, 1)]), 2).is_err());
    assert!(collar_cone_map(&CollarPoint::Collar(x.clone(), r(3, 2)), 2).is_err());
    assert!(collar_cone_map(&CollarPoint::Collar(b, r(1, 2)), 2).is_err());
    assert!(collar_cone_map(&CollarPoint::Simplex(x), 3).is_err());
}

fn random_complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0u8..7, 1..=4), 1..8).prop_map(|facets| {
        let f: Vec<Vec<String>> = facets
            .into_iter()
            .map(|s| s.into_iter().map(|v| ((b'a' + v) as char).to_string()).collect())
            .collect();
        SimplicialComplex::from_facets(&f).unwrap()
    })
}

fn barycentric(m: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(0i64..20, m + 1).prop_filter_map("nonzero", |w| {
        let s: i64 = w.iter().sum();
        (s > 0).then(|| w.iter().map(|&a| BigRational::new(a.into(), s.into())).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn collapse_then_expand_is_identity(c in random_complex(), pick in 0usize..100) {
        let free = c.free_faces();
        prop_assume!(!free.is_empty());
        let (s, t) = free[pick % free.len()].clone();
        let col = CollapseStep { kind: StepKind::Collapse, sigma: s.clone(), tau: t.clone() };
        let smaller = c.apply_collapse(&col).unwrap();
        prop_assert_eq!(smaller.euler_characteristic(), c.euler_characteristic());
        let exp = CollapseStep { kind: StepKind::Expansion, sigma: s, tau: t };
        prop_assert_eq!(smaller.apply_expansion(&exp).unwrap(), c);
    }

    #[test]
    fn search_certificates_verify(c in random_complex()) {
        let v = SimplicialComplex::from_facets(&[vec![c.labels()[0].clone()]]).unwrap();
        let r = collapse_search(&c, &v, 2_000).unwrap();
        if let SearchOutcome::Certificate(cert) = r.outcome {
            prop_assert!(verify_certificate(&cert).accepted());
            let mut cur = cert.base.clone();
            for s in &cert.steps {
                cur = cur.apply(s).unwrap();
                prop_assert_eq!(cur.euler_characteristic(), c.euler_characteristic());
            }
        } else if c.free_faces().is_empty() {
            prop_assert!(r.expanded <= 1);
        }
    }

    #[test]
    fn collar_is_barycentric(x in (1usize..5).prop_flat_map(barycentric), l in 0i64..=8, zero in 0usize..5) {
        let inner = collar_cone_map(&CollarPoint::Simplex(x.clone()), x.len() - 1).unwrap();
        prop_assert!(is_barycentric(&inner));
        let mut y = x.clone();
        let z = zero % y.len();
        let w = y[z].clone();
        y[z] = BigRational::from_integer(0.into());
        let j = (z + 1) % y.len();
        y[j] = &y[j] + w;
        prop_assume!(y.iter().any(|c| *c == BigRational::from_integer(0.into())));
        let lam = BigRational::new(l.into(), 8.into());
        let out = collar_cone_map(&CollarPoint::Collar(y.clone(), lam), y.len() - 1).unwrap();
        prop_assert!(is_barycentric(&out));
        let at0 = collar_cone_map(&CollarPoint::Collar(y.clone(), BigRational::from_integer(0.into())), y.len() - 1).unwrap();
        prop_assert_eq!(at0, collar_cone_map(&CollarPoint::Simplex(y), x.len() - 1).unwrap());
    }
}
