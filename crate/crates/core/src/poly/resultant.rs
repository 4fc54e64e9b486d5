use super::mpoly::Poly;
use crate::error::{Error, Result};

/// Resultant of `p` and `q` with respect to `x_i` by the subresultant
/// pseudo-remainder sequence.
///
/// Sign convention: the determinant of the Sylvester matrix whose first
/// `deg q` rows hold the shifted coefficients of `p`. So
/// `res_y(y^2 - x, 2y) = -4x` and `res_x(x - a, x - b) = a - b`.
pub fn resultant(p: &Poly, q: &Poly, i: usize) -> Result<Poly> {
    check_index(p, i)?;
    let arity = p.arity();
    if p.is_zero() || q.is_zero() {
        return Ok(Poly::zero(arity));
    }
    let (da, db) = (p.degree_in(i), q.degree_in(i));
    if da == 0 && db == 0 {
        return Err(Error::Degenerate(format!(
            "both polynomials are constant in variable {i}"
        )));
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut s = Poly::one(arity);
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            s = -&s;
        }
    }
    let mut g = Poly::one(arity);
    let mut h = Poly::one(arity);
    while b.degree_in(i) > 0 {
        let (dega, degb) = (a.degree_in(i), b.degree_in(i));
        let delta = dega - degb;
        if dega % 2 == 1 && degb % 2 == 1 {
            s = -&s;
        }
        let r = a.prem(&b, i);
        a = b;
        let div = &g * &h.pow(delta);
        b = r.div_exact(&div).expect("subresultant division is exact");
        if b.is_zero() {
            return Ok(Poly::zero(arity));
        }
        g = a.lc_in(i);
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
    }
    let dega = a.degree_in(i);
    let lb = b.lc_in(i);
    // h^(1 - dega) * lb^dega
    let res = if dega == 0 {
        h
    } else {
        lb.pow(dega)
            .div_exact(&h.pow(dega - 1))
            .expect("subresultant division is exact")
    };
    Ok(&s * &res)
}

fn check_index(p: &Poly, i: usize) -> Result<()> {
    if i >= p.arity() {
        Err(Error::IndexOutOfRange {
            index: i,
            arity: p.arity(),
        })
    } else {
        Ok(())
    }
}

/// Determinant by fraction-free Bareiss elimination.
pub(crate) fn bareiss(mut m: Vec<Vec<Poly>>, arity: usize) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(arity);
    }
    let mut sign = false;
    let mut prev = Poly::one(arity);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Poly::zero(arity),
            }
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let v = &(&m[r][c] * &m[k][k]) - &(&m[r][k] * &m[k][c]);
                m[r][c] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// Rows of the Sylvester-type matrix for the `j`-th subresultant: `deg q - j`
/// shifted copies of `p` followed by `deg p - j` of `q`, columns indexed by
/// descending powers of `x_i` from `deg p + deg q - j - 1` down to 0.
fn sylvester_rows(p: &Poly, q: &Poly, i: usize, j: usize) -> Vec<Vec<Poly>> {
    let m = p.degree_in(i) as usize;
    let n = q.degree_in(i) as usize;
    let cols = m + n - j;
    let pc = p.coeffs_in(i);
    let qc = q.coeffs_in(i);
    let zero = Poly::zero(p.arity());
    let mut rows = Vec::new();
    for (coeffs, count) in [(&pc, n - j), (&qc, m - j)] {
        for k in 0..count {
            // row holds x^(count-1-k) * poly
            let shift = count - 1 - k;
            let mut row = vec![zero.clone(); cols];
            for (e, c) in coeffs.iter().enumerate() {
                let power = e + shift;
                row[cols - 1 - power] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Resultant as the determinant of the Sylvester matrix (reference oracle).
pub fn sylvester_determinant(p: &Poly, q: &Poly, i: usize) -> Result<Poly> {
    check_index(p, i)?;
    if p.degree_in(i) == 0 && q.degree_in(i) == 0 {
        return Err(Error::Degenerate(format!(
            "both polynomials are constant in variable {i}"
        )));
    }
    if p.is_zero() || q.is_zero() {
        return Ok(Poly::zero(p.arity()));
    }
    Ok(bareiss(sylvester_rows(p, q, i, 0), p.arity()))
}

/// Coefficients (lowest degree first, length `j + 1`) of the `j`-th
/// subresultant of `p` and `q` with respect to `x_i`, as determinants.
/// Requires `j <= min(deg p, deg q)` and `j < max(deg p, deg q)`.
pub fn subresultant_coeffs(p: &Poly, q: &Poly, i: usize, j: usize) -> Vec<Poly> {
    let m = p.degree_in(i) as usize;
    let n = q.degree_in(i) as usize;
    assert!(j <= m.min(n) && j < m.max(n), "subresultant index out of range");
    let rows = sylvester_rows(p, q, i, j);
    let size = m + n - 2 * j;
    let cols = m + n - j;
    let lead = size - 1;
    (0..=j)
        .map(|k| {
            let col = cols - 1 - k;
            let mat: Vec<Vec<Poly>> = rows
                .iter()
                .map(|r| {
                    let mut v: Vec<Poly> = r[..lead].to_vec();
                    v.push(r[col].clone());
                    v
                })
                .collect();
            bareiss(mat, p.arity())
        })
        .collect()
}

/// Principal subresultant coefficient `psc_j(p, q)` with respect to `x_i`.
pub fn principal_subresultant(p: &Poly, q: &Poly, i: usize, j: usize) -> Poly {
    let m = p.degree_in(i) as usize;
    let n = q.degree_in(i) as usize;
    if j == m.min(n) && m == n {
        // S_j for j = deg p = deg q is not defined by the determinant
        // formula; the conventional value is the leading coefficient of q.
        return q.lc_in(i);
    }
    let rows = sylvester_rows(p, q, i, j);
    let size = m + n - 2 * j;
    let mat: Vec<Vec<Poly>> = rows.into_iter().map(|r| r[..size].to_vec()).collect();
    bareiss(mat, p.arity())
}

/// Discriminant of `p` with respect to `x_i`:
/// `(-1)^(d(d-1)/2) res(p, p') / lc(p)`.
pub fn discriminant(p: &Poly, i: usize) -> Result<Poly> {
    let d = p.degree_in(i);
    if d == 0 {
        return Err(Error::Degenerate(
            "discriminant of a polynomial constant in the variable".into(),
        ));
    }
    let dp = p.derivative(i)?;
    let r = resultant(p, &dp, i)?;
    let q = r
        .div_exact(&p.lc_in(i))
        .expect("leading coefficient divides the resultant");
    let sgn = (d as u64 * (d as u64 - 1) / 2) % 2 == 1;
    Ok(if sgn { -&q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::{parse_poly, parse_poly_with};

    fn p2(s: &str) -> Poly {
        parse_poly(s, 2).unwrap()
    }

    #[test]
    fn documented_values() {
        assert_eq!(resultant(&p2("y^2 - x"), &p2("2*y"), 1).unwrap(), p2("-4*x"));
        let names: Vec<String> = ["x", "a", "b"].iter().map(|s| s.to_string()).collect();
        let a = parse_poly_with("x - a", &names).unwrap();
        let b = parse_poly_with("x - b", &names).unwrap();
        assert_eq!(resultant(&a, &b, 0).unwrap(), parse_poly_with("a - b", &names).unwrap());
        assert!(resultant(&p2("y^2 - x"), &p2("y^2 - x"), 1).unwrap().is_zero());
        assert!(matches!(
            resultant(&p2("x"), &p2("x + 1"), 1),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn matches_sylvester() {
        let cases = [
            ("x*y^3 + y - 2", "y^2 + x*y + 1"),
            ("y^2 + x^2 - 1", "y - x"),
            ("3*y^4 - x*y + x^2", "2*y^3 + y^2 - x"),
            ("y + 1", "x*y^2 - 3"),
            ("x^2 - 1", "y^3 - y"),
        ];
        for (a, b) in cases {
            let (a, b) = (p2(a), p2(b));
            assert_eq!(
                resultant(&a, &b, 1).unwrap(),
                sylvester_determinant(&a, &b, 1).unwrap(),
                "{a} / {b}"
            );
        }
    }

    #[test]
    fn subresultants() {
        // gcd of degree 1 shows up as S_1
        let a = p2("(y - x)*(y^2 + 1)");
        let b = p2("(y - x)*(y + 2)");
        assert!(principal_subresultant(&a, &b, 1, 0).is_zero());
        let s1 = subresultant_coeffs(&a, &b, 1, 1);
        let s1p = Poly::from_coeffs_in(2, 1, &s1);
        assert_eq!(s1p.normalized(), p2("y - x").normalized());
        let d = discriminant(&p2("y^2 - x"), 1).unwrap();
        assert_eq!(d, p2("4*x"));
    }
}
