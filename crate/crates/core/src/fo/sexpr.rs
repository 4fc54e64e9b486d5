use std::cmp::Reverse;

use crate::error::{Error, Result};
use crate::fo::expr::Expr;
use crate::fo::formula::Formula;
use crate::poly::{fmt_rat, is_one, parse_rat, sign_of, Rat};
use crate::sa::Rel;

/// Prefix notation. An atom `e rel 0` prints as `(rel P N)` where `P` holds the
/// positive terms and the constant, `N` the negated negative terms.
pub fn to_sexpr(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

fn write_formula(f: &Formula, out: &mut String) {
    match f {
        Formula::Atom(e, r) => {
            let (p, n) = split(e);
            out.push('(');
            out.push_str(r.symbol());
            out.push(' ');
            out.push_str(&p);
            out.push(' ');
            out.push_str(&n);
            out.push(')');
        }
        Formula::Member { set, args } => {
            out.push_str("(in ");
            out.push_str(set);
            for a in args {
                out.push(' ');
                out.push_str(&expr_sexpr(a));
            }
            out.push(')');
        }
        Formula::And(v) if v.is_empty() => out.push_str("true"),
        Formula::Or(v) if v.is_empty() => out.push_str("false"),
        Formula::And(v) | Formula::Or(v) => {
            out.push_str(if matches!(f, Formula::And(_)) { "(and" } else { "(or" });
            for g in v {
                out.push(' ');
                write_formula(g, out);
            }
            out.push(')');
        }
        Formula::Not(g) => {
            out.push_str("(not ");
            write_formula(g, out);
            out.push(')');
        }
        Formula::Exists(vs, g) | Formula::ForAll(vs, g) => {
            out.push_str(if matches!(f, Formula::Exists(..)) {
                "(exists ("
            } else {
                "(forall ("
            });
            let decls: Vec<String> = vs.iter().map(|v| format!("({v} Real)")).collect();
            out.push_str(&decls.join(" "));
            out.push_str(") ");
            write_formula(g, out);
            out.push(')');
        }
    }
}

type Term = (Vec<u32>, Rat);

fn sorted_terms(e: &Expr) -> Vec<Term> {
    let mut t: Vec<Term> = e.poly().terms().iter().map(|(m, c)| (m.clone(), c.clone())).collect();
    t.sort_by_key(|(m, _)| Reverse((m.iter().sum::<u32>(), m.clone())));
    t
}

fn term_sexpr(vars: &[String], m: &[u32], c: &Rat) -> String {
    let mut factors: Vec<String> = Vec::new();
    for (v, &k) in vars.iter().zip(m) {
        match k {
            0 => {}
            1 => factors.push(v.clone()),
            k => factors.push(format!("(^ {v} {k})")),
        }
    }
    if factors.is_empty() {
        return fmt_rat(c);
    }
    let one = is_one(c);
    if one && factors.len() == 1 {
        return factors.pop().unwrap();
    }
    let mut parts = Vec::new();
    if !one {
        parts.push(fmt_rat(c));
    }
    parts.extend(factors);
    format!("(* {})", parts.join(" "))
}

fn sum_sexpr(terms: Vec<String>) -> String {
    match terms.len() {
        0 => "0".into(),
        1 => terms.into_iter().next().unwrap(),
        _ => format!("(+ {})", terms.join(" ")),
    }
}

fn split(e: &Expr) -> (String, String) {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (m, c) in sorted_terms(e) {
        let constant = m.iter().all(|&k| k == 0);
        if constant || sign_of(&c) > 0 {
            pos.push(term_sexpr(e.vars(), &m, &c));
        } else {
            neg.push(term_sexpr(e.vars(), &m, &-c));
        }
    }
    (sum_sexpr(pos), sum_sexpr(neg))
}

/// Single expression in prefix notation.
pub fn expr_sexpr(e: &Expr) -> String {
    sum_sexpr(
        sorted_terms(e)
            .into_iter()
            .map(|(m, c)| term_sexpr(e.vars(), &m, &c))
            .collect(),
    )
}

#[derive(Clone, Debug)]
enum SExp {
    Sym(String, usize),
    List(Vec<SExp>, usize),
}

impl SExp {
    fn offset(&self) -> usize {
        match self {
            SExp::Sym(_, o) | SExp::List(_, o) => *o,
        }
    }
}

struct Reader<'a> {
    text: &'a str,
    pos: usize,
}

impl Reader<'_> {
    fn skip_ws(&mut self) {
        let b = self.text.as_bytes();
        while self.pos < b.len() {
            if b[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            } else if b[self.pos] == b';' {
                while self.pos < b.len() && b[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn read(&mut self) -> Result<SExp> {
        self.skip_ws();
        let start = self.pos;
        let b = self.text.as_bytes();
        if self.pos >= b.len() {
            return Err(err_at(self.text, start, "unexpected end of input"));
        }
        match b[self.pos] {
            b'(' => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    if self.pos >= b.len() {
                        return Err(err_at(self.text, start, "unclosed parenthesis"));
                    }
                    if b[self.pos] == b')' {
                        self.pos += 1;
                        return Ok(SExp::List(items, start));
                    }
                    items.push(self.read()?);
                }
            }
            b')' => Err(err_at(self.text, start, "unexpected `)`")),
            _ => {
                while self.pos < b.len()
                    && !b[self.pos].is_ascii_whitespace()
                    && b[self.pos] != b'('
                    && b[self.pos] != b')'
                {
                    self.pos += 1;
                }
                Ok(SExp::Sym(self.text[start..self.pos].to_string(), start))
            }
        }
    }
}

fn err_at(text: &str, offset: usize, msg: &str) -> Error {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
    Error::syntax(line, column, msg)
}

/// Parses one formula in prefix notation.
pub fn parse_sexpr(text: &str) -> Result<Formula> {
    let mut r = Reader { text, pos: 0 };
    let s = r.read()?;
    r.skip_ws();
    if r.pos < text.len() {
        return Err(err_at(text, r.pos, "trailing input"));
    }
    formula(text, &s)
}

fn is_set_name(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn is_var_name(s: &str) -> bool {
    is_set_name(s) && !matches!(s, "true" | "false")
}

fn formula(text: &str, s: &SExp) -> Result<Formula> {
    let items = match s {
        SExp::Sym(t, o) => {
            return match t.as_str() {
                "true" => Ok(Formula::tru()),
                "false" => Ok(Formula::fls()),
                _ => Err(err_at(text, *o, &format!("expected a formula, found `{t}`"))),
            }
        }
        SExp::List(items, o) => {
            if items.is_empty() {
                return Err(err_at(text, *o, "empty list"));
            }
            items
        }
    };
    let head = match &items[0] {
        SExp::Sym(h, _) => h.as_str(),
        l => return Err(err_at(text, l.offset(), "expected an operator")),
    };
    let args = &items[1..];
    let arity = |k: usize| -> Result<()> {
        if args.len() != k {
            Err(err_at(text, s.offset(), &format!("`{head}` takes {k} arguments")))
        } else {
            Ok(())
        }
    };
    let rel = |r: Rel, swap: bool, neg: bool| -> Result<Formula> {
        arity(2)?;
        let a = expr(text, &args[0])?;
        let b = expr(text, &args[1])?;
        let at = if swap {
            Formula::Atom(&b - &a, r)
        } else {
            Formula::Atom(&a - &b, r)
        };
        Ok(if neg { Formula::not(at) } else { at })
    };
    match head {
        "<" => rel(Rel::Lt, false, false),
        "=" => rel(Rel::Eq, false, false),
        ">" => rel(Rel::Gt, false, false),
        "<=" => rel(Rel::Gt, false, true),
        ">=" => rel(Rel::Lt, false, true),
        "and" | "or" => {
            let v = args.iter().map(|a| formula(text, a)).collect::<Result<Vec<_>>>()?;
            Ok(if head == "and" { Formula::And(v) } else { Formula::Or(v) })
        }
        "not" => {
            arity(1)?;
            Ok(Formula::not(formula(text, &args[0])?))
        }
        "=>" => {
            arity(2)?;
            Ok(Formula::Or(vec![
                Formula::not(formula(text, &args[0])?),
                formula(text, &args[1])?,
            ]))
        }
        "exists" | "forall" => {
            arity(2)?;
            let decls = match &args[0] {
                SExp::List(d, _) => d,
                d => return Err(err_at(text, d.offset(), "expected a variable list")),
            };
            let mut vars = Vec::new();
            for d in decls {
                match d {
                    SExp::List(p, _) if p.len() == 2 => match (&p[0], &p[1]) {
                        (SExp::Sym(v, _), SExp::Sym(t, to)) if is_var_name(v) => {
                            if t != "Real" {
                                return Err(err_at(text, *to, "only sort Real is supported"));
                            }
                            vars.push(v.clone());
                        }
                        _ => return Err(err_at(text, d.offset(), "expected (name Real)")),
                    },
                    _ => return Err(err_at(text, d.offset(), "expected (name Real)")),
                }
            }
            let body = Box::new(formula(text, &args[1])?);
            Ok(if head == "exists" {
                Formula::Exists(vars, body)
            } else {
                Formula::ForAll(vars, body)
            })
        }
        "in" => {
            let name = match args.first() {
                Some(SExp::Sym(n, _)) if is_set_name(n) => n.clone(),
                _ => return Err(err_at(text, s.offset(), "expected a set name after `in`")),
            };
            let es = args[1..].iter().map(|a| expr(text, a)).collect::<Result<Vec<_>>>()?;
            Ok(Formula::Member { set: name, args: es })
        }
        h => Err(err_at(text, items[0].offset(), &format!("unknown connective `{h}`"))),
    }
}

fn expr(text: &str, s: &SExp) -> Result<Expr> {
    match s {
        SExp::Sym(t, o) => {
            if let Some(r) = parse_rat(t) {
                Ok(Expr::constant(r))
            } else if is_var_name(t) {
                Ok(Expr::var(t))
            } else {
                Err(err_at(text, *o, &format!("bad term `{t}`")))
            }
        }
        SExp::List(items, o) => {
            let head = match items.first() {
                Some(SExp::Sym(h, _)) => h.as_str(),
                _ => return Err(err_at(text, *o, "expected an arithmetic operator")),
            };
            let args = items[1..].iter().map(|a| expr(text, a)).collect::<Result<Vec<_>>>()?;
            match head {
                "+" => Ok(args.iter().fold(Expr::zero(), |a, b| &a + b)),
                "*" => Ok(args.iter().fold(Expr::int(1), |a, b| &a * b)),
                "-" if args.len() == 1 => Ok(-&args[0]),
                "-" if args.len() > 1 => Ok(args[1..].iter().fold(args[0].clone(), |a, b| &a - b)),
                "^" if args.len() == 2 => {
                    let k = args[1]
                        .constant_value()
                        .filter(|k| k.is_integer() && sign_of(k) >= 0 && k <= &Rat::from_integer(64.into()))
                        .ok_or_else(|| err_at(text, items[2].offset(), "exponent must be an integer in 0..=64"))?;
                    Ok(args[0].pow(k.to_integer().try_into().unwrap_or(0u32)))
                }
                "/" if args.len() == 2 => {
                    let d = args[1]
                        .constant_value()
                        .filter(|d| sign_of(d) != 0)
                        .ok_or_else(|| err_at(text, items[2].offset(), "division by a nonzero constant only"))?;
                    Ok(args[0].scale(&(Rat::from_integer(1.into()) / d)))
                }
                h => Err(err_at(text, *o, &format!("bad arithmetic form `{h}`"))),
            }
        }
    }
}
