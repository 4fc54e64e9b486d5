use super::{Rel, SaDescription, SignCond};
use crate::error::{Error, Result};
use crate::poly::parse::{default_var_names, show, text_end, tokenize, PolyParser, Tok};
use crate::poly::Poly;

/// Parses exactly one `set` definition.
pub fn parse_description(text: &str) -> Result<SaDescription> {
    let mut all = parse_descriptions(text)?;
    match all.len() {
        1 => Ok(all.pop().expect("one element")),
        0 => Err(Error::syntax(1, 1, "no set definition")),
        _ => Err(Error::syntax(1, 1, "expected a single set definition")),
    }
}

/// Parses a file of `set` definitions; `#` starts a comment.
pub fn parse_descriptions(text: &str) -> Result<Vec<SaDescription>> {
    let cleaned: String = text
        .lines()
        .map(|l| match l.find('#') {
            Some(i) => format!("{}{}", &l[..i], " ".repeat(l[i..].chars().count())),
            None => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n");
    let toks = tokenize(&cleaned, 1, 1)?;
    let end = text_end(&cleaned, 1, 1);
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < toks.len() {
        let (d, next) = parse_one(&toks, pos, end)?;
        out.push(d);
        pos = next;
    }
    Ok(out)
}

fn at(toks: &[(Tok, usize, usize)], pos: usize, end: (usize, usize)) -> (usize, usize) {
    toks.get(pos).map(|t| (t.1, t.2)).unwrap_or(end)
}

fn expect_ident(
    toks: &[(Tok, usize, usize)],
    pos: &mut usize,
    end: (usize, usize),
    word: Option<&str>,
) -> Result<String> {
    match toks.get(*pos) {
        Some((Tok::Ident(s), _, _)) if word.is_none_or(|w| w == s) => {
            *pos += 1;
            Ok(s.clone())
        }
        Some((t, l, c)) => Err(Error::syntax(
            *l,
            *c,
            format!(
                "expected {}, found {}",
                word.map(|w| format!("`{w}`")).unwrap_or("a name".into()),
                show(t)
            ),
        )),
        None => {
            let (l, c) = end;
            Err(Error::syntax(l, c, "unexpected end of input"))
        }
    }
}

fn expect_sym(toks: &[(Tok, usize, usize)], pos: &mut usize, end: (usize, usize), c: char) -> Result<()> {
    match toks.get(*pos) {
        Some((Tok::Sym(s), _, _)) if *s == c => {
            *pos += 1;
            Ok(())
        }
        Some((t, l, col)) => Err(Error::syntax(*l, *col, format!("expected `{c}`, found {}", show(t)))),
        None => Err(Error::syntax(end.0, end.1, format!("expected `{c}`"))),
    }
}

fn var_like_index(s: &str) -> Option<usize> {
    match s {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        _ => s
            .strip_prefix('x')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&k| k >= 1)
            .map(|k| k - 1),
    }
}

type Dnf = Vec<Vec<SignCond>>;

fn parse_one(toks: &[(Tok, usize, usize)], start: usize, end: (usize, usize)) -> Result<(SaDescription, usize)> {
    let mut pos = start;
    expect_ident(toks, &mut pos, end, Some("set"))?;
    let name = expect_ident(toks, &mut pos, end, None)?;
    expect_ident(toks, &mut pos, end, Some("in"))?;
    expect_ident(toks, &mut pos, end, Some("R"))?;
    expect_sym(toks, &mut pos, end, '^')?;
    let n = match toks.get(pos) {
        Some((Tok::Num(v), l, c)) => {
            let n: usize = if v.is_integer() {
                v.to_integer()
                    .try_into()
                    .map_err(|_| Error::syntax(*l, *c, "dimension too large"))?
            } else {
                return Err(Error::syntax(*l, *c, "dimension must be a natural number"));
            };
            pos += 1;
            n
        }
        _ => {
            let (l, c) = at(toks, pos, end);
            return Err(Error::syntax(l, c, "expected the dimension"));
        }
    };
    if n == 0 {
        let (l, c) = at(toks, pos - 1, end);
        return Err(Error::syntax(l, c, "dimension must be positive"));
    }
    expect_sym(toks, &mut pos, end, ':')?;
    expect_sym(toks, &mut pos, end, '=')?;

    // end of this definition: next `set` keyword at clause level or end
    let stop = (pos..toks.len())
        .find(|&i| matches!(&toks[i].0, Tok::Ident(s) if s == "set"))
        .unwrap_or(toks.len());
    let names = default_var_names(n);
    let indexed: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    for (t, l, c) in &toks[pos..stop] {
        if let Tok::Ident(s) = t {
            if s == "empty" {
                continue;
            }
            let known = names.contains(s) || indexed.contains(s);
            if !known {
                if let Some(k) = var_like_index(s) {
                    return Err(Error::Dimension {
                        expected: n,
                        found: k + 1,
                    });
                }
                return Err(Error::syntax(*l, *c, format!("unknown variable `{s}`")));
            }
        }
    }
    if let Some((Tok::Ident(s), _, _)) = toks.get(pos) {
        if s == "empty" {
            if pos + 1 != stop {
                let (l, c) = at(toks, pos + 1, end);
                return Err(Error::syntax(l, c, "unexpected input after `empty`"));
            }
            return Ok((SaDescription::empty(name, n), stop));
        }
    }
    let sub_end = at(toks, stop, end);
    let mut p = PolyParser::from_tokens(toks[..stop].to_vec(), n, &names, sub_end);
    p.alt = Some(&indexed);
    p.pos = pos;
    let mut conjuncts: Dnf = Vec::new();
    loop {
        conjuncts.extend(parse_clause(&mut p)?);
        if !p.eat('|') {
            break;
        }
    }
    if p.pos != stop {
        return p.err("expected `|` or the end of the definition");
    }
    Ok((SaDescription::new(name, n, conjuncts)?, stop))
}

pub(crate) enum RelOp {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

pub(crate) fn rel_op(p: &mut PolyParser) -> Option<RelOp> {
    let op = match p.peek() {
        Some(Tok::Sym('<')) => RelOp::Lt,
        Some(Tok::Sym('>')) => RelOp::Gt,
        Some(Tok::Sym('=')) => RelOp::Eq,
        Some(Tok::Sym('!')) => RelOp::Ne,
        Some(Tok::Sym('≤')) => RelOp::Le,
        Some(Tok::Sym('≥')) => RelOp::Ge,
        Some(Tok::Sym('≠')) => RelOp::Ne,
        _ => return None,
    };
    p.pos += 1;
    let op = match op {
        RelOp::Lt if p.eat('=') => RelOp::Le,
        RelOp::Gt if p.eat('=') => RelOp::Ge,
        RelOp::Eq => {
            p.eat('=');
            RelOp::Eq
        }
        RelOp::Ne => {
            if !p.eat('=') {
                p.pos -= 1;
                if matches!(p.peek(), Some(Tok::Sym('≠'))) {
                    p.pos += 1;
                    return Some(RelOp::Ne);
                }
                return None;
            }
            RelOp::Ne
        }
        o => o,
    };
    Some(op)
}

/// `f op g` as a disjunction of sign conditions on `f - g`.
pub(crate) fn literal_dnf(f: Poly, op: &RelOp) -> Dnf {
    let atom = |r| vec![SignCond::new(f.clone(), r)];
    match op {
        RelOp::Lt => vec![atom(Rel::Lt)],
        RelOp::Le => vec![atom(Rel::Lt), atom(Rel::Eq)],
        RelOp::Eq => vec![atom(Rel::Eq)],
        RelOp::Ne => vec![atom(Rel::Lt), atom(Rel::Gt)],
        RelOp::Ge => vec![atom(Rel::Gt), atom(Rel::Eq)],
        RelOp::Gt => vec![atom(Rel::Gt)],
    }
}

fn and_dnf(a: Dnf, b: Dnf) -> Dnf {
    let mut out = Vec::new();
    for x in &a {
        for y in &b {
            let mut v = x.clone();
            v.extend(y.iter().cloned());
            out.push(v);
        }
    }
    out
}

fn parse_clause(p: &mut PolyParser) -> Result<Dnf> {
    if !p.eat('{') {
        return p.err("expected `{`");
    }
    let mut dnf: Dnf = vec![vec![]];
    loop {
        let mut lhs = p.expr()?;
        let mut any = false;
        while let Some(op) = rel_op(p) {
            let rhs = p.expr()?;
            dnf = and_dnf(dnf, literal_dnf(&lhs - &rhs, &op));
            lhs = rhs;
            any = true;
        }
        if !any {
            return p.err("expected a comparison `<`, `=`, `>`, `<=`, `>=` or `!=`");
        }
        if p.eat(',') {
            continue;
        }
        if p.eat('}') {
            break;
        }
        return p.err("expected `,` or `}`");
    }
    Ok(dnf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sa::complexity_of;

    #[test]
    fn examples() {
        let c = parse_description("set S in R^2 := { x^2 + y^2 - 1 = 0 }").unwrap();
        assert_eq!(c.ambient, 2);
        assert_eq!(c.conjuncts.len(), 1);
        let u = parse_description("set S in R^1 := { x > 0 } | { x = 0 }").unwrap();
        assert_eq!(u.conjuncts.len(), 2);
        match parse_description("set S in R^2 := { x^2 + y < }") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 29)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_description("set S in R^2 := { z > 0 }"),
            Err(Error::Dimension { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn sugar_and_round_trip() {
        let s = parse_description("set I in R^1 := { 0 <= x <= 1 }").unwrap();
        assert_eq!(s.conjuncts.len(), 4);
        assert_eq!(complexity_of(&s).q, 1);
        let e = parse_description("set E in R^2 := empty").unwrap();
        assert!(e.conjuncts.is_empty());
        for text in [
            "set S in R^2 := { x^2 + y^2 - 1 = 0 }",
            "set T in R^1 := { x > 0 } | { x = 0, x - 1 < 0 }",
            "set E in R^3 := empty",
            "set L in R^2 := { x^4 + 2*x^2*y^2 + y^4 - x^2 + y^2 = 0 }",
        ] {
            let d = parse_description(text).unwrap();
            assert_eq!(d.to_string(), text);
            assert_eq!(parse_description(&d.to_string()).unwrap(), d);
        }
    }

    #[test]
    fn multiple_definitions_and_comments() {
        let ds =
            parse_descriptions("# corpus\nset A in R^1 := { x > 0 }\nset B in R^1 := { x1 < 0 } # tail\n").unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds[1].name, "B");
    }
}
