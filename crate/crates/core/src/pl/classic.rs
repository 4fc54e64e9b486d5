use crate::pl::complex::SimplicialComplex;

fn letters(k: usize) -> Vec<String> {
    (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

/// The full `d`-simplex on the vertices `a, b, c, ...` (`d <= 25`).
pub fn simplex(d: usize) -> SimplicialComplex {
    SimplicialComplex::from_facets(&[letters(d + 1)]).expect("distinct labels")
}

/// The boundary of the `d`-simplex, `d >= 1`.
pub fn simplex_boundary(d: usize) -> SimplicialComplex {
    let v = letters(d + 1);
    let facets: Vec<Vec<String>> = (0..=d)
        .map(|i| {
            v.iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, s)| s.clone())
                .collect()
        })
        .collect();
    SimplicialComplex::from_facets(&facets).expect("distinct labels")
}

/// Facets of the 8-vertex dunce hat.
pub const DUNCE_HAT: &str = "124 234 135 125 236 136 137 237 128 345 256 167 278 148 456 467 478";

/// The 8-vertex triangulation of the dunce hat: 17 triangles, no free face.
pub fn dunce_hat() -> SimplicialComplex {
    SimplicialComplex::parse(DUNCE_HAT).expect("fixed text")
}

/// Unit squares of Bing's house in the box `[0,4] x [0,4] x [0,2]`, as
/// `(normal axis, level, lower corner in the other two axes)`.
///
/// The box boundary and the floor `z = 1` bound two rooms. The lower room is
/// crossed by a square tube over the column `[1,2] x [1,2]` that opens in the
/// bottom face and in the floor, giving access to the upper room from below.
/// The upper room is crossed by a tube over `[2,3] x [2,3]` opening in the top
/// face and the floor. Each room has one wall joining its tube to the side of
/// the box: `y = 1, x in [0,1]` below and `y = 3, x in [3,4]` above.
pub fn bing_squares() -> Vec<(char, u32, u32, u32)> {
    let (a, b) = ((1, 1), (2, 2));
    let mut sq = Vec::new();
    for x in 0..4 {
        for y in 0..4 {
            if (x, y) != a {
                sq.push(('z', 0, x, y));
            }
            if (x, y) != b {
                sq.push(('z', 2, x, y));
            }
            if (x, y) != a && (x, y) != b {
                sq.push(('z', 1, x, y));
            }
        }
    }
    for z in 0..2 {
        for t in 0..4 {
            sq.extend([('x', 0, t, z), ('x', 4, t, z), ('y', 0, t, z), ('y', 4, t, z)]);
        }
    }
    for ((x, y), z) in [(a, 0), (b, 1)] {
        sq.extend([('x', x, y, z), ('x', x + 1, y, z), ('y', y, x, z), ('y', y + 1, x, z)]);
    }
    sq.extend([('y', 1, 0, 0), ('y', 3, 3, 1)]);
    sq
}

/// Bing's house: each square of [`bing_squares`] split along the diagonal
/// through its lower corner. Vertices are labelled `xyz` by their grid
/// coordinates, e.g. `120`. 75 vertices, 246 edges, 172 triangles.
pub fn bing_house() -> SimplicialComplex {
    let mut facets = Vec::new();
    for (axis, c, u, v) in bing_squares() {
        let p = |du: u32, dv: u32| {
            let (x, y, z) = match axis {
                'z' => (u + du, v + dv, c),
                'x' => (c, u + du, v + dv),
                _ => (u + du, c, v + dv),
            };
            format!("{x}{y}{z}")
        };
        facets.push(vec![p(0, 0), p(1, 0), p(1, 1)]);
        facets.push(vec![p(0, 0), p(1, 1), p(0, 1)]);
    }
    SimplicialComplex::from_facets(&facets).expect("distinct labels")
}
