//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rcfw::cad::{connected_components, decide, dimension, sets_equal};
use rcfw::fo::{compile_boundary, compile_submanifold, parse_infix, Binding, PredicateInstance};
use rcfw::pl::{
    barycenter, bing_house, collapse_search, collar_cone_map, dunce_hat, free_faces, greedy_collapse, is_barycentric,
    parse_complex, simplex, verify_certificate, CollarPoint, Exhaustion, HomotopyCertificate, SearchOutcome,
    SimplicialComplex, Verification,
};
use rcfw::poly::{rat, AlgReal, Poly, Rat};
use rcfw::sa::{
    decode, encode, monomial_count, monomials, parse_descriptions, ParamPoint, Rel, SaDescription, SignCond,
};
use rcfw::topo::{
    boundary_equals, check_curve_manifold, compactness_check, regularity_check, verify_homeo, Check, ManifoldVerdict,
    Regularity,
};

const CORPUS: &str = include_str!("corpus/sets.sa");

const ROUND_TRIP_INSTANCES: usize = 100;
const ROUND_TRIP_POINTS: usize = 1000;
const ROUND_TRIP_LIMIT: Duration = Duration::from_secs(120);
const CORPUS_INSTANCE_LIMIT: Duration = Duration::from_secs(10);
const QE_LIMIT: Duration = Duration::from_secs(30);
const WITNESS_TOL: f64 = 1e-6;
const SEARCH_BUDGET: usize = 100_000;
const MIN_CHECKED_STEPS: usize = 1000;
const COLLAR_POINTS: usize = 100;

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus() -> Vec<(SaDescription, i64, usize)> {
    let sets = parse_descriptions(CORPUS).expect("corpus parses");
    let expected: Vec<(i64, usize)> = CORPUS
        .lines()
        .filter(|l| l.starts_with("set "))
        .map(|l| {
            let (_, tail) = l.split_once('#').expect("expected values");
            let (d, c) = tail.split_once(',').expect("two values");
            (d.trim().parse().unwrap(), c.trim().parse().unwrap())
        })
        .collect();
    assert_eq!(sets.len(), expected.len());
    sets.into_iter().zip(expected).map(|(s, (d, c))| (s, d, c)).collect()
}

fn named(name: &str) -> SaDescription {
    corpus()
        .into_iter()
        .find(|(s, _, _)| s.name == name)
        .expect("corpus set")
        .0
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, q: u32) -> Poly {
    let mons = monomials(n, q);
    loop {
        let terms: Vec<(Vec<u32>, Rat)> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let e = mons[rng.gen_range(0..mons.len())].clone();
                let mut c = 0;
                while c == 0 {
                    c = rng.gen_range(-3i64..=3);
                }
                (e, rat(c, 1))
            })
            .collect();
        let p = Poly::from_terms(n, terms).unwrap();
        if !p.is_constant() {
            return p;
        }
    }
}

fn random_description(rng: &mut ChaCha8Rng, n: usize, p: usize, q: u32) -> SaDescription {
    let atoms = rng.gen_range(1..=p);
    let mut conjuncts: Vec<Vec<SignCond>> = Vec::new();
    for i in 0..atoms {
        let rel = [Rel::Lt, Rel::Eq, Rel::Gt][rng.gen_range(0..3)];
        let atom = SignCond::new(random_poly(rng, n, q), rel);
        if i == 0 || rng.gen_bool(0.5) {
            conjuncts.push(vec![atom]);
        } else {
            conjuncts.last_mut().unwrap().push(atom);
        }
    }
    SaDescription::new("S", n, conjuncts).unwrap()
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    (0..n)
        .map(|_| {
            if rng.gen_bool(0.2) {
                rat(rng.gen_range(-2..=2), 1)
            } else {
                rat(rng.gen_range(-24..=24), rng.gen_range(1..=6))
            }
        })
        .collect()
}

fn round_trip() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut cad_checked = 0;
    for i in 0..ROUND_TRIP_INSTANCES {
        let n = 1 + i % 3;
        let p = rng.gen_range(1..=4);
        let q = rng.gen_range(1..=3);
        let d = random_description(&mut rng, n, p, q);
        let a = encode(&d, p, q).map_err(|e| format!("encode #{i}: {e}"))?;
        let reparsed = ParamPoint::parse(&a.to_string()).map_err(|e| format!("param text #{i}: {e}"))?;
        ensure(reparsed == a, || format!("param text #{i} changed"))?;
        let back = decode(&a).map_err(|e| format!("decode #{i}: {e}"))?;
        for _ in 0..ROUND_TRIP_POINTS {
            let x = random_point(&mut rng, n);
            let (u, v) = (d.member(&x).unwrap(), back.member(&x).unwrap());
            ensure(u == v, || format!("#{i} ({d}) disagrees at {x:?}"))?;
        }
        if n <= 2 {
            let eq = sets_equal(&d, &back).map_err(|e| format!("#{i}: {e}"))?;
            ensure(eq, || format!("#{i} ({d}) decodes to a different set"))?;
            cad_checked += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < ROUND_TRIP_LIMIT, || format!("took {t:.1?}"))?;
    Ok(format!(
        "{ROUND_TRIP_INSTANCES} instances x {ROUND_TRIP_POINTS} points, {cad_checked} set equalities, {t:.1?}"
    ))
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i))
}

fn monomial_counts() -> Verdict {
    let mut checked = 0;
    for n in 0..=6usize {
        for q in 0..=6u32 {
            let oracle = factorial(n + q as usize) / (factorial(n) * factorial(q as usize));
            ensure(monomial_count(n, q) == oracle, || format!("n={n} q={q}"))?;
            ensure(BigUint::from(monomials(n, q).len()) == oracle, || {
                format!("enumeration n={n} q={q}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (n, q) pairs"))
}

fn cad_corpus() -> Verdict {
    let sets = corpus();
    ensure(sets.len() >= 12, || "corpus too small".into())?;
    let mut slowest = Duration::ZERO;
    for (s, dim, comps) in &sets {
        let start = Instant::now();
        let d = dimension(s).map_err(|e| format!("{}: {e}", s.name))?;
        let c = connected_components(s).map_err(|e| format!("{}: {e}", s.name))?;
        let t = start.elapsed();
        ensure(d == *dim && c == *comps, || {
            format!("{}: dim {d} components {c}, expected {dim}, {comps}", s.name)
        })?;
        ensure(t < CORPUS_INSTANCE_LIMIT, || format!("{} took {t:.1?}", s.name))?;
        slowest = slowest.max(t);
    }
    Ok(format!("{} named sets, slowest {slowest:.1?}", sets.len()))
}

const SENTENCES: [(&str, bool); 10] = [
    ("forall x. x^2 + 1 > 0", true),
    ("exists x. x^2 + 1 = 0", false),
    ("forall x. exists y. y^2 = x", false),
    ("exists x. forall y. (y - x)^2 >= 0", true),
    ("forall x. x >= 0 -> exists y. y^2 = x", true),
    ("exists x, y. x^2 + y^2 = 1 and x = y", true),
    ("exists x. x^2 - 2 = 0 and x > 1 and x < 3/2", true),
    ("forall x, y. x^2 + y^2 >= 2*x*y", true),
    ("exists x, y, z. x^2 + y^2 + z^2 < 0", false),
    ("forall a, b. exists x. x^2 + a*x + b = 0", false),
];

fn qe() -> Verdict {
    let start = Instant::now();
    for (text, truth) in SENTENCES {
        let f = parse_infix(text).map_err(|e| format!("{text}: {e}"))?;
        let v = decide(&f).map_err(|e| format!("{text}: {e}"))?;
        ensure(v == truth, || format!("{text}: got {v}"))?;
    }
    let t = start.elapsed();
    ensure(t < QE_LIMIT, || format!("took {t:.1?}"))?;
    Ok(format!("{} sentences, {t:.1?}", SENTENCES.len()))
}

fn near_origin(p: &[AlgReal]) -> bool {
    p.iter().all(|c| c.to_f64().abs() < WITNESS_TOL)
}

fn manifolds() -> Verdict {
    let v = check_curve_manifold(&named("circle")).map_err(|e| e.to_string())?;
    ensure(matches!(v, ManifoldVerdict::ManifoldNoBoundary), || {
        format!("circle: {v}")
    })?;
    let v = check_curve_manifold(&named("segment")).map_err(|e| e.to_string())?;
    ensure(
        matches!(&v, ManifoldVerdict::ManifoldWithBoundary(b) if b.len() == 2),
        || format!("segment: {v}"),
    )?;
    let v = check_curve_manifold(&named("lemniscate")).map_err(|e| e.to_string())?;
    ensure(matches!(&v, ManifoldVerdict::NotManifold(w) if near_origin(w)), || {
        format!("lemniscate: {v}")
    })?;
    let axes = named("axes");
    let r = regularity_check(&axes.polys()[0], &axes).map_err(|e| e.to_string())?;
    ensure(matches!(&r, Regularity::Fail(w) if near_origin(w)), || {
        format!("axes: {r}")
    })?;
    Ok("circle, segment, lemniscate, axes".into())
}

fn compiler_agreement() -> Verdict {
    let line_sets: Vec<SaDescription> = corpus()
        .into_iter()
        .filter(|(s, _, _)| s.ambient == 1)
        .map(|t| t.0)
        .collect();
    let targets: Vec<SaDescription> = ["{ x^2 + 1 = 0 }", "{ x^2 - 1 = 0 }", "{ x = 0 }", "{ x + 1 = 0 }"]
        .iter()
        .map(|b| parse_descriptions(&format!("set T in R^1 := {b}")).unwrap().remove(0))
        .collect();
    let mut instances = 0;
    for s in &line_sets {
        let dim = dimension(s).map_err(|e| e.to_string())?;
        let full = dim == 1 || dim == -1;
        let verdict = check_curve_manifold(s).map_err(|e| e.to_string())?;
        let inst = PredicateInstance::submanifold(1, 1, 0, Binding::Set(s.clone()));
        let compiled = decide(&compile_submanifold(&inst).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let checked = matches!(verdict, ManifoldVerdict::ManifoldNoBoundary) && full;
        ensure(compiled == checked, || {
            format!("submanifold {}: compiled {compiled}, checked {checked}", s.name)
        })?;
        instances += 1;
        for t in &targets {
            let inst = PredicateInstance::boundary(1, 1, 0, Binding::Set(s.clone()));
            let f = compile_boundary(&inst, &Binding::Set(t.clone())).map_err(|e| e.to_string())?;
            let compiled = decide(&f).map_err(|e| e.to_string())?;
            let checked = boundary_equals(s, t).map_err(|e| e.to_string())? == Some(true) && full;
            ensure(compiled == checked, || {
                format!("boundary {} by {t}: compiled {compiled}, checked {checked}", s.name)
            })?;
            instances += 1;
        }
    }
    ensure(instances >= 6, || "too few instances".into())?;
    Ok(format!("{instances} instances over {} sets", line_sets.len()))
}

fn homeo_case(x: &str, y: &str, g: &str) -> Result<Check, String> {
    let p = |t: &str| parse_descriptions(t).unwrap().remove(0);
    verify_homeo(&p(x), &p(y), &p(g)).map_err(|e| e.to_string())
}

fn identity_graph(s: &SaDescription) -> SaDescription {
    let diag = SignCond::new(rcfw::poly::parse_poly("y - x", 2).unwrap(), Rel::Eq);
    let conjuncts = s
        .conjuncts
        .iter()
        .map(|c| {
            let mut lifted: Vec<SignCond> = c.iter().map(|a| SignCond::new(a.poly.remap(2, &[0]), a.rel)).collect();
            lifted.push(diag.clone());
            lifted
        })
        .collect();
    SaDescription::new("G", 2, conjuncts).unwrap()
}

fn homeomorphisms() -> Verdict {
    let c = homeo_case(
        "set X in R^1 := { x >= -1, x <= 1 }",
        "set Y in R^1 := { x >= -1, x <= 1 }",
        "set G in R^2 := { y - x^3 = 0, x >= -1, x <= 1 }",
    )?;
    ensure(c == Check::Accept, || format!("x^3: {c}"))?;
    let c = homeo_case(
        "set X in R^1 := { x >= -1, x <= 1 }",
        "set Y in R^1 := { x >= 0, x <= 1 }",
        "set G in R^2 := { y - x^2 = 0, x >= -1, x <= 1 }",
    )?;
    ensure(c == Check::Reject("injective".into()), || format!("x^2: {c}"))?;
    let c = homeo_case(
        "set X in R^1 := { x >= 0, x <= 1 }",
        "set Y in R^1 := { x >= 0, x <= 2 }",
        "set G in R^2 := { y - 2*x = 0, x >= 0, x <= 1 }",
    )?;
    ensure(c == Check::Accept, || format!("2x: {c}"))?;
    let mut compact = Vec::new();
    for (s, _, _) in corpus().into_iter().filter(|(s, _, _)| s.ambient == 1) {
        if compactness_check(&s).map_err(|e| e.to_string())?.compact() {
            let c = verify_homeo(&s, &s, &identity_graph(&s)).map_err(|e| format!("{}: {e}", s.name))?;
            ensure(c == Check::Accept, || format!("identity on {}: {c}", s.name))?;
            compact.push(s.name);
        }
    }
    Ok(format!("x^3, x^2, 2x, identity on {}", compact.join(" ")))
}

fn replay_with_euler(c: &HomotopyCertificate, steps: &mut usize) -> Result<(), String> {
    ensure(verify_certificate(c).accepted(), || {
        format!("certificate on {} rejected", c.base)
    })?;
    let chi = c.base.euler_characteristic();
    let mut cur = c.base.clone();
    for s in &c.steps {
        cur = cur.apply(s).map_err(|e| e.to_string())?;
        *steps += 1;
        ensure(cur.euler_characteristic() == chi, || format!("chi changed at {s}"))?;
    }
    Ok(())
}

fn certificate(k: &SimplicialComplex, target: &str) -> Result<HomotopyCertificate, String> {
    let y = parse_complex(target).unwrap();
    let r = collapse_search(k, &y, SEARCH_BUDGET).map_err(|e| e.to_string())?;
    match r.outcome {
        SearchOutcome::Certificate(c) => Ok(c),
        SearchOutcome::Exhausted(why) => Err(format!("no collapse of {} onto {target}: {why:?}", k.dim())),
    }
}

fn mutation(text: &str, index: usize) -> Result<(), String> {
    let c = HomotopyCertificate::parse(text).map_err(|e| e.to_string())?;
    match verify_certificate(&c) {
        Verification::Reject { index: i, .. } if i == index => Ok(()),
        v => Err(format!("expected rejection at {index}, got {v}")),
    }
}

fn collapses() -> Verdict {
    let mut steps = 0;
    for d in 1..=4 {
        replay_with_euler(&certificate(&simplex(d), "a")?, &mut steps)?;
    }
    let stuck = [
        ("hollow triangle", parse_complex("ab ac bc").unwrap()),
        ("dunce hat", dunce_hat()),
        ("Bing's house", bing_house()),
    ];
    for (name, k) in &stuck {
        ensure(free_faces(k).is_empty(), || format!("{name} has free faces"))?;
        let v = SimplicialComplex::from_facets(&[vec![k.labels()[0].clone()]]).unwrap();
        let r = collapse_search(k, &v, SEARCH_BUDGET).map_err(|e| e.to_string())?;
        ensure(
            matches!(r.outcome, SearchOutcome::Exhausted(Exhaustion::Complete)),
            || format!("{name} not exhausted"),
        )?;
    }
    for base in [dunce_hat(), bing_house()] {
        let cone = base.cone("z").map_err(|e| e.to_string())?;
        replay_with_euler(&certificate(&cone, "z")?, &mut steps)?;
        let first = cone.labels()[0].clone();
        let (walk, rest) = greedy_collapse(&cone, &SimplicialComplex::from_facets(&[vec![first]]).unwrap())
            .map_err(|e| e.to_string())?;
        let c = HomotopyCertificate {
            base: cone.clone(),
            fixed: rest.clone(),
            target: rest,
            steps: walk,
        };
        replay_with_euler(&c, &mut steps)?;
    }
    ensure(steps >= MIN_CHECKED_STEPS, || format!("only {steps} steps"))?;
    let good = "base: abc\nfixed: a\ntarget: a\n";
    // reorder
    mutation(&format!("{good}C ab abc\nC c ac\nC b bc\n"), 1)?;
    mutation(&format!("{good}C b bc\nC ab abc\nC c ac\n"), 0)?;
    // rel-Y violation
    mutation("base: abc\nfixed: c\ntarget: c\nC ab abc\nC b bc\nC c ac\n", 2)?;
    mutation("base: abc\nfixed: ab\ntarget: ab\nC ab abc\nC b bc\nC c ac\n", 0)?;
    // absent coface
    mutation(&format!("{good}C ab abc\nC b bc\nC c cd\n"), 2)?;
    mutation(&format!("{good}C ab abd\nC b bc\nC c ac\n"), 0)?;
    Ok(format!(
        "{steps} steps with chi checked, 6 mutations rejected at the right step"
    ))
}

fn random_barycentric(rng: &mut ChaCha8Rng, m: usize) -> Vec<Rat> {
    loop {
        let w: Vec<i64> = (0..=m).map(|_| rng.gen_range(0..12)).collect();
        let s: i64 = w.iter().sum();
        if s > 0 {
            return w.iter().map(|&a| BigRational::new(a.into(), s.into())).collect();
        }
    }
}

fn collar() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc011a7);
    let zero = rat(0, 1);
    for i in 0..COLLAR_POINTS {
        let m = 1 + i % 4;
        let x = random_barycentric(&mut rng, m);
        let inner = collar_cone_map(&CollarPoint::Simplex(x.clone()), m).map_err(|e| e.to_string())?;
        ensure(is_barycentric(&inner), || format!("simplex branch at {x:?}"))?;
        // push one coordinate onto the next to land on the boundary
        let mut y = x;
        let k = rng.gen_range(0..=m);
        let w = std::mem::replace(&mut y[k], zero.clone());
        let j = (k + 1) % (m + 1);
        y[j] = &y[j] + w;
        let at0 = collar_cone_map(&CollarPoint::Collar(y.clone(), zero.clone()), m).map_err(|e| e.to_string())?;
        let direct = collar_cone_map(&CollarPoint::Simplex(y.clone()), m).map_err(|e| e.to_string())?;
        ensure(at0 == direct, || format!("branches differ at {y:?}"))?;
        let at1 = collar_cone_map(&CollarPoint::Collar(y.clone(), rat(1, 1)), m).map_err(|e| e.to_string())?;
        ensure(at1 == y, || format!("lambda = 1 moved {y:?}"))?;
        let lam = rat(rng.gen_range(0..=16), 16);
        let mid = collar_cone_map(&CollarPoint::Collar(y.clone(), lam), m).map_err(|e| e.to_string())?;
        ensure(is_barycentric(&at0) && is_barycentric(&mid), || {
            format!("collar output at {y:?}")
        })?;
    }
    ensure(is_barycentric(&barycenter(3)), || "barycenter".into())?;
    Ok(format!("{COLLAR_POINTS} points"))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("encode/decode round trip", round_trip),
        ("monomial count", monomial_counts),
        ("CAD corpus", cad_corpus),
        ("QE ground truth", qe),
        ("manifold classification", manifolds),
        ("compiler/checker agreement", compiler_agreement),
        ("homeomorphism verification", homeomorphisms),
        ("collapse engine", collapses),
        ("collar map", collar),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = f();
        let t = start.elapsed();
        match v {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({t:.1?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why} ({t:.1?})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
