use rcfw::cad::{
    connected_components, decide, decompose, dimension, is_empty, set_cells, sets_equal, topology, CellKind,
};
use rcfw::fo::{parse_infix, Formula};
use rcfw::poly::parse_poly;
use rcfw::sa::{decode, encode, parse_description, SaDescription};

fn set(text: &str) -> SaDescription {
    parse_description(text).unwrap()
}

#[test]
fn line_and_circle_cell_counts() {
    let t = decompose(&[parse_poly("x", 1).unwrap()], 1).unwrap();
    assert_eq!(t.len(), 3);
    let t = decompose(&[parse_poly("x^2 + y^2 - 1", 2).unwrap()], 2).unwrap();
    assert_eq!(t.len(), 13);
    let mut per_stack = vec![0usize; 5];
    for c in t.cells() {
        per_stack[c.index[0] - 1] += 1;
    }
    assert_eq!(per_stack, vec![1, 3, 5, 3, 1]);
    t.verify().unwrap();
    let t = decompose(&[], 2).unwrap();
    assert_eq!(t.len(), 1);
    assert!(decompose(&[parse_poly("x1", 4).unwrap()], 4).is_err());
}

#[test]
fn circle_cells() {
    let c = set("set C in R^2 := { x^2 + y^2 - 1 = 0 }");
    let t = decompose(&c.polys(), 2).unwrap();
    let cells = set_cells(&t, &c).unwrap();
    // zero-sign cells of the 13-cell tree: the points over x = -1 and x = 1
    // and the two arcs over -1 < x < 1
    assert_eq!(cells.len(), 4);
    assert!(cells.iter().all(|c| c.signs == vec![0]));
    assert_eq!(cells.iter().filter(|c| c.dim == 0).count(), 2);
    assert_eq!(
        cells
            .iter()
            .filter(|c| c.kinds == vec![CellKind::Sector, CellKind::Section])
            .count(),
        2
    );
    assert!(set_cells(&t, &SaDescription::empty("E", 2)).unwrap().is_empty());
    let everything = SaDescription::everything("R", 2);
    let t2 = decompose(&everything.polys(), 2).unwrap();
    assert_eq!(set_cells(&t2, &everything).unwrap().len(), t2.len());
    let other = set("set D in R^2 := { x - y = 0 }");
    assert!(set_cells(&t, &other).is_err());
}

#[test]
fn dimensions_and_emptiness() {
    assert_eq!(dimension(&set("set C in R^2 := { x^2 + y^2 - 1 = 0 }")).unwrap(), 1);
    assert_eq!(dimension(&set("set D in R^2 := { x^2 + y^2 - 1 < 0 }")).unwrap(), 2);
    assert_eq!(dimension(&set("set E in R^2 := { x^2 + y^2 + 1 = 0 }")).unwrap(), -1);
    assert!(is_empty(&set("set E in R^1 := { x^2 < 0 }")).unwrap());
    assert!(!sets_equal(&set("set A in R^1 := { x > 0 }"), &set("set B in R^1 := { x >= 0 }")).unwrap());
    let c = set("set C in R^2 := { x^2 + y^2 - 1 = 0 }");
    let back = decode(&encode(&c, 1, 2).unwrap()).unwrap();
    assert!(sets_equal(&c, &back).unwrap());
}

#[test]
fn components() {
    assert_eq!(
        connected_components(&set("set P in R^1 := { x^2 - 1 = 0 }")).unwrap(),
        2
    );
    assert_eq!(
        connected_components(&set("set C in R^2 := { x^2 + y^2 - 1 = 0 }")).unwrap(),
        1
    );
    assert_eq!(
        connected_components(&set("set H in R^2 := { x*y - 1 = 0 }")).unwrap(),
        2
    );
    assert_eq!(connected_components(&set("set X in R^2 := { x*y = 0 }")).unwrap(), 1);
    assert_eq!(
        connected_components(&set(
            "set A in R^2 := { x^2 + y^2 - 1 < 0 } | { (x-3)^2 + y^2 - 1 <= 0 }"
        ))
        .unwrap(),
        2
    );
    assert_eq!(
        connected_components(&set(
            "set T in R^2 := { x^2 + y^2 - 1 <= 0 } | { (x-2)^2 + y^2 - 1 <= 0 }"
        ))
        .unwrap(),
        1
    );
}

#[test]
fn boundedness_from_topology() {
    let c = set("set H in R^2 := { x*y - 1 = 0, x > 0, x < 1 }");
    let t = decompose(&c.polys(), 2).unwrap();
    let top = topology(&t).unwrap();
    let inside = rcfw::cad::membership(&t, &c).unwrap();
    assert!(inside.iter().zip(&top.bounded).any(|(i, b)| *i && !*b));
}

#[test]
fn decide_examples() {
    assert!(decide(&parse_infix("forall x. x^2 + 1 > 0").unwrap()).unwrap());
    assert!(!decide(&parse_infix("exists x. x^2 + 1 = 0").unwrap()).unwrap());
    assert!(!decide(&parse_infix("forall x. exists y. y^2 = x").unwrap()).unwrap());
    assert!(decide(&parse_infix("forall x. x >= 0 -> exists y. y^2 = x").unwrap()).unwrap());
    assert!(decide(&parse_infix("exists x, y. x^2 + y^2 = 1 and x = y").unwrap()).unwrap());
    assert!(decide(&parse_infix("forall x, y. exists z. z^2 + x^2 < y^2 + 1 + z^4").unwrap()).unwrap());
    assert!(decide(&parse_infix("1 < 2 and not 2 < 1").unwrap()).unwrap());
    let big = parse_infix("forall a, b, c, d. a + b + c + d = 0 or a > 0").unwrap();
    assert!(matches!(decide(&big), Err(rcfw::Error::Capacity(_))));
    let open = Formula::Atom(rcfw::fo::Expr::var("x"), rcfw::sa::Rel::Gt);
    assert!(matches!(decide(&open), Err(rcfw::Error::UnboundVariable(_))));
}
