use crate::poly::{principal_subresultant, Poly};

/// Projection factor sets per level: `levels[k]` holds primitive,
/// square-free, pairwise coprime polynomials with main variable `x_k`.
pub(crate) fn projection_sets(inputs: &[Poly], n: usize) -> Vec<Vec<Poly>> {
    let mut levels: Vec<Vec<Poly>> = vec![Vec::new(); n];
    for p in inputs {
        add_factor(&mut levels, p);
    }
    for k in (1..n).rev() {
        levels[k] = coprime_basis(std::mem::take(&mut levels[k]), k);
        let proj = project(&levels[k], k);
        for q in proj {
            add_factor(&mut levels, &q);
        }
    }
    if n > 0 {
        levels[0] = coprime_basis(std::mem::take(&mut levels[0]), 0);
    }
    levels
}

/// Files the content and the square-free primitive part of `q` under their
/// main variables.
fn add_factor(levels: &mut [Vec<Poly>], q: &Poly) {
    if q.is_constant() {
        return;
    }
    let j = q.main_var().expect("nonconstant");
    let c = q.content_in(j);
    if !c.is_constant() {
        add_factor(levels, &c);
    }
    let pp = q.primitive_part_in(j).square_free().normalized();
    if !levels[j].contains(&pp) {
        levels[j].push(pp);
    }
}

/// Refines a set of polynomials with main variable `x_k` until the members
/// are pairwise coprime. Common factors free of `x_k` are dropped here; they
/// were already filed under lower levels as contents.
fn coprime_basis(mut set: Vec<Poly>, k: usize) -> Vec<Poly> {
    'outer: loop {
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                let g = Poly::gcd(&set[i], &set[j]);
                if g.degree_in(k) == 0 {
                    continue;
                }
                let a = set[i].div_exact(&g).expect("gcd divides");
                let b = set[j].div_exact(&g).expect("gcd divides");
                set.swap_remove(j);
                set.swap_remove(i);
                for f in [g, a, b] {
                    if f.degree_in(k) > 0 {
                        let f = f.primitive_part_in(k).square_free().normalized();
                        if !set.contains(&f) {
                            set.push(f);
                        }
                    }
                }
                continue 'outer;
            }
        }
        break;
    }
    set.sort_by(|a, b| {
        (a.degree(), a.num_terms())
            .cmp(&(b.degree(), b.num_terms()))
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    set
}

/// Reducta of `a` in `x_k`, stopping after the first one whose leading
/// coefficient is a nonzero constant.
fn reducta(a: &Poly, k: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut b = a.clone();
    while !b.is_zero() && b.degree_in(k) > 0 {
        let done = b.lc_in(k).is_constant();
        out.push(b.clone());
        if done {
            break;
        }
        b = b.reductum_in(k);
    }
    out
}

/// Full projection of a set of level-`k` polynomials: leading coefficients
/// and discriminant-type principal subresultants of every reductum, plus the
/// principal subresultants of every pair.
fn project(set: &[Poly], k: usize) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::new();
    let mut push = |q: Poly| {
        if !q.is_constant() {
            let q = q.normalized();
            if !out.contains(&q) {
                out.push(q);
            }
        }
    };
    for (ai, a) in set.iter().enumerate() {
        let red = reducta(a, k);
        for b in &red {
            push(b.lc_in(k));
            let db = b.derivative(k).expect("index in range");
            let d = db.degree_in(k) as usize;
            for j in 0..d {
                push(principal_subresultant(b, &db, k, j));
            }
        }
        for a2 in &set[ai + 1..] {
            for b in &red {
                let d = (b.degree_in(k).min(a2.degree_in(k))) as usize;
                for j in 0..d {
                    push(principal_subresultant(b, a2, k, j));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn circle_projects_to_endpoints() {
        let c = parse_poly("x^2 + y^2 - 1", 2).unwrap();
        let l = projection_sets(&[c], 2);
        assert_eq!(l[0], vec![parse_poly("x^2 - 1", 2).unwrap()]);
        assert_eq!(l[1].len(), 1);
    }

    #[test]
    fn common_factors_split() {
        let a = parse_poly("(y - x)*(y + 1)", 2).unwrap();
        let b = parse_poly("(y - x)*(y - 2)", 2).unwrap();
        let l = projection_sets(&[a, b], 2);
        assert_eq!(l[1].len(), 3);
    }
}
