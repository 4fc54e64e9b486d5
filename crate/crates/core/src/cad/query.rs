use crate::cad::topology::topology;
use crate::cad::tree::{decompose, CadCell, CadTree};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::sa::SaDescription;

/// Positions of the description's polynomials among the tree inputs.
fn atom_positions(t: &CadTree, d: &SaDescription) -> Result<Vec<Vec<(usize, crate::sa::Rel)>>> {
    if d.ambient != t.ambient() {
        return Err(Error::Dimension {
            expected: t.ambient(),
            found: d.ambient,
        });
    }
    d.conjuncts
        .iter()
        .map(|c| {
            c.iter()
                .map(|a| {
                    t.inputs()
                        .iter()
                        .position(|p| p == &a.poly)
                        .map(|i| (i, a.rel))
                        .ok_or_else(|| {
                            Error::Inconsistency(format!("polynomial {} is not an input of the decomposition", a.poly))
                        })
                })
                .collect()
        })
        .collect()
}

/// Membership of each cell of `t` in `d`.
pub fn membership(t: &CadTree, d: &SaDescription) -> Result<Vec<bool>> {
    let atoms = atom_positions(t, d)?;
    Ok(t.cells()
        .iter()
        .map(|c| atoms.iter().any(|conj| conj.iter().all(|(i, r)| r.holds(c.signs[*i]))))
        .collect())
}

/// Cells whose sign vectors satisfy some conjunct of `d`.
pub fn set_cells<'a>(t: &'a CadTree, d: &SaDescription) -> Result<Vec<&'a CadCell>> {
    let m = membership(t, d)?;
    Ok(t.cells().iter().zip(m).filter(|(_, b)| *b).map(|(c, _)| c).collect())
}

fn check_ambient(n: usize) -> Result<()> {
    if n > crate::cad::MAX_CAD_DIM {
        return Err(Error::Unsupported(format!("ambient dimension {n} exceeds 3")));
    }
    Ok(())
}

/// Decomposition adapted to the given descriptions, all in the same ambient space.
pub fn decompose_for(ds: &[&SaDescription]) -> Result<CadTree> {
    let n = ds.first().map(|d| d.ambient).unwrap_or(0);
    check_ambient(n)?;
    let mut polys: Vec<Poly> = Vec::new();
    for d in ds {
        if d.ambient != n {
            return Err(Error::Dimension {
                expected: n,
                found: d.ambient,
            });
        }
        for p in d.polys() {
            if !polys.contains(&p) {
                polys.push(p);
            }
        }
    }
    decompose(&polys, n)
}

/// Largest cell dimension in the set, `-1` when empty.
pub fn dimension(d: &SaDescription) -> Result<i64> {
    let t = decompose_for(&[d])?;
    Ok(set_cells(&t, d)?.iter().map(|c| c.dim as i64).max().unwrap_or(-1))
}

pub fn is_empty(d: &SaDescription) -> Result<bool> {
    if d.conjuncts.is_empty() {
        check_ambient(d.ambient)?;
        return Ok(true);
    }
    let t = decompose_for(&[d])?;
    Ok(set_cells(&t, d)?.is_empty())
}

pub fn sets_equal(a: &SaDescription, b: &SaDescription) -> Result<bool> {
    let t = decompose_for(&[a, b])?;
    Ok(membership(&t, a)? == membership(&t, b)?)
}

/// `a` is a subset of `b`.
pub fn is_subset(a: &SaDescription, b: &SaDescription) -> Result<bool> {
    let t = decompose_for(&[a, b])?;
    Ok(membership(&t, a)?.iter().zip(membership(&t, b)?).all(|(x, y)| !x || y))
}

/// Components of a set in `R^1` or `R^2` by union-find over cell adjacency.
pub fn connected_components(d: &SaDescription) -> Result<usize> {
    if d.ambient > 2 {
        return Err(Error::Unsupported(format!(
            "connected components are computed only in dimension at most 2, not {}",
            d.ambient
        )));
    }
    let t = decompose_for(&[d])?;
    let inside = membership(&t, d)?;
    let top = topology(&t)?;
    Ok(components_of(&inside, &top.closure))
}

pub fn components_of(inside: &[bool], closure: &[Vec<usize>]) -> usize {
    let mut parent: Vec<usize> = (0..inside.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut j = i;
        while p[j] != r {
            let next = p[j];
            p[j] = r;
            j = next;
        }
        r
    }
    for (i, cl) in closure.iter().enumerate() {
        if !inside[i] {
            continue;
        }
        for &j in cl {
            if inside[j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut roots: Vec<usize> = (0..inside.len())
        .filter(|&i| inside[i])
        .map(|i| find(&mut parent, i))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}
