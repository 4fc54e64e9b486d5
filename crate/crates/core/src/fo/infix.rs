use crate::error::{Error, Result};
use crate::fo::expr::Expr;
use crate::fo::formula::Formula;
use crate::poly::{parse_rat, sign_of, Rat};
use crate::sa::Rel;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Sym(&'static str),
}

const SYMS: [&str; 22] = [
    "<->", "->", "<=", ">=", "!=", "==", "&&", "||", "/\\", "\\/", "≤", "≥", "≠", "<", ">", "=", "+", "-", "*", "/",
    "^", "!",
];

fn lex(text: &str) -> Result<Vec<(Tok, usize, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = (line, col);
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_digit() || chars[j] == '.') {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            let r = parse_rat(&s).ok_or_else(|| Error::syntax(start.0, start.1, format!("bad number `{s}`")))?;
            out.push((Tok::Num(r), start.0, start.1));
            col += j - i;
            i = j;
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '\'') {
                j += 1;
            }
            out.push((Tok::Ident(chars[i..j].iter().collect()), start.0, start.1));
            col += j - i;
            i = j;
            continue;
        }
        if let Some(tok) = "().,~∀∃¬∧∨→↔".chars().position(|d| d == c) {
            let sym = [
                "(", ")", ".", ",", "!", "forall", "exists", "!", "&&", "||", "->", "<->",
            ][tok];
            if sym == "forall" || sym == "exists" {
                out.push((Tok::Ident(sym.into()), start.0, start.1));
            } else {
                out.push((Tok::Sym(sym), start.0, start.1));
            }
            i += 1;
            col += 1;
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        match SYMS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                let n = s.chars().count();
                let canon = match *s {
                    "/\\" => "&&",
                    "\\/" => "||",
                    "==" => "=",
                    "≤" => "<=",
                    "≥" => ">=",
                    "≠" => "!=",
                    s => s,
                };
                out.push((Tok::Sym(canon), start.0, start.1));
                i += n;
                col += n;
            }
            None => return Err(Error::syntax(start.0, start.1, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct P {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

fn is_set_ident(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_uppercase())
}

fn keyword(s: &str) -> bool {
    matches!(
        s,
        "and" | "or" | "not" | "forall" | "exists" | "true" | "false" | "implies" | "iff"
    )
}

impl P {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (l, c) = self.toks.get(self.pos).map(|t| (t.1, t.2)).unwrap_or(self.end);
        Err(Error::syntax(l, c, msg))
    }

    fn sym(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(t)) if *t == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self, w: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(t)) if t == w) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.sym(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let a = self.implication()?;
        if self.sym("<->") || self.word("iff") {
            let b = self.formula()?;
            return Ok(Formula::iff(a, b));
        }
        Ok(a)
    }

    fn implication(&mut self) -> Result<Formula> {
        let a = self.disjunction()?;
        if self.sym("->") || self.word("implies") {
            let b = self.implication()?;
            return Ok(Formula::Or(vec![Formula::not(a), b]));
        }
        Ok(a)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut v = vec![self.conjunction()?];
        while self.sym("||") || self.word("or") {
            v.push(self.conjunction()?);
        }
        Ok(if v.len() == 1 { v.pop().unwrap() } else { Formula::Or(v) })
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut v = vec![self.unary()?];
        while self.sym("&&") || self.word("and") {
            v.push(self.unary()?);
        }
        Ok(if v.len() == 1 {
            v.pop().unwrap()
        } else {
            Formula::And(v)
        })
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.sym("!") || self.word("not") {
            return Ok(Formula::not(self.unary()?));
        }
        for q in ["forall", "exists"] {
            if self.word(q) {
                let mut vars = Vec::new();
                loop {
                    match self.peek().cloned() {
                        Some(Tok::Ident(v)) if !keyword(&v) && !is_set_ident(&v) => {
                            self.pos += 1;
                            vars.push(v);
                            self.sym(",");
                        }
                        _ => break,
                    }
                }
                if vars.is_empty() {
                    return self.err("expected a bound variable");
                }
                self.expect(".")?;
                let body = Box::new(self.formula()?);
                return Ok(if q == "forall" {
                    Formula::ForAll(vars, body)
                } else {
                    Formula::Exists(vars, body)
                });
            }
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula> {
        if self.word("true") {
            return Ok(Formula::tru());
        }
        if self.word("false") {
            return Ok(Formula::fls());
        }
        if matches!(self.peek(), Some(Tok::Sym("("))) {
            let save = self.pos;
            self.pos += 1;
            if let Ok(f) = self.formula() {
                if self.sym(")") && !self.continues_term() {
                    return Ok(f);
                }
            }
            self.pos = save;
        }
        if let Some(Tok::Ident(name)) = self.peek().cloned() {
            if is_set_ident(&name) && matches!(self.peek_at(1), Some(Tok::Sym("("))) {
                self.pos += 2;
                let mut args = vec![self.expr()?];
                while self.sym(",") {
                    args.push(self.expr()?);
                }
                self.expect(")")?;
                return Ok(Formula::Member { set: name, args });
            }
        }
        self.comparison()
    }

    fn continues_term(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Sym(
                "+" | "-" | "*" | "/" | "^" | "<" | ">" | "=" | "<=" | ">=" | "!="
            ))
        )
    }

    fn rel(&mut self) -> Option<&'static str> {
        match self.peek() {
            Some(Tok::Sym(s @ ("<" | ">" | "=" | "<=" | ">=" | "!="))) => {
                let s = *s;
                self.pos += 1;
                Some(s)
            }
            _ => None,
        }
    }

    fn comparison(&mut self) -> Result<Formula> {
        let mut lhs = self.expr()?;
        let mut atoms = Vec::new();
        while let Some(op) = self.rel() {
            let rhs = self.expr()?;
            let d = &lhs - &rhs;
            atoms.push(match op {
                "<" => Formula::Atom(d, Rel::Lt),
                ">" => Formula::Atom(d, Rel::Gt),
                "=" => Formula::Atom(d, Rel::Eq),
                "<=" => Formula::not(Formula::Atom(d, Rel::Gt)),
                ">=" => Formula::not(Formula::Atom(d, Rel::Lt)),
                _ => Formula::not(Formula::Atom(d, Rel::Eq)),
            });
            lhs = rhs;
        }
        match atoms.len() {
            0 => self.err("expected a comparison"),
            1 => Ok(atoms.pop().unwrap()),
            _ => Ok(Formula::And(atoms)),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = if self.sym("-") {
            -&self.term()?
        } else {
            self.sym("+");
            self.term()?
        };
        loop {
            if self.sym("+") {
                acc = &acc + &self.term()?;
            } else if self.sym("-") {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.power()?;
        loop {
            if self.sym("*") {
                acc = &acc * &self.power()?;
            } else if self.sym("/") {
                let at = self.pos;
                let d = self.power()?;
                match d.constant_value().filter(|d| sign_of(d) != 0) {
                    Some(d) => acc = acc.scale(&(Rat::from_integer(1.into()) / d)),
                    None => {
                        self.pos = at;
                        return self.err("division by a nonzero constant only");
                    }
                }
            } else if matches!(self.toks.get(self.pos.wrapping_sub(1)).map(|t| &t.0), Some(Tok::Num(_)))
                && matches!(self.peek(), Some(Tok::Ident(v)) if !keyword(v) && !is_set_ident(v))
            {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.sym("^") {
            match self.peek().cloned() {
                Some(Tok::Num(k)) if k.is_integer() && k <= Rat::from_integer(64.into()) => {
                    self.pos += 1;
                    return Ok(base.pow(k.to_integer().try_into().unwrap_or(0u32)));
                }
                _ => return self.err("exponent must be an integer in 0..=64"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(Expr::constant(r))
            }
            Some(Tok::Ident(v)) if !keyword(&v) && !is_set_ident(&v) => {
                self.pos += 1;
                Ok(Expr::var(&v))
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            Some(Tok::Sym("-")) => {
                self.pos += 1;
                Ok(-&self.atom()?)
            }
            _ => self.err("expected a term"),
        }
    }
}

/// Parses infix syntax such as `forall x. x^2 + 1 > 0 -> exists y. S(x, y)`.
/// Set parameters are identifiers starting with an uppercase letter.
pub fn parse_infix(text: &str) -> Result<Formula> {
    let toks = lex(text)?;
    let lines: Vec<&str> = text.split('\n').collect();
    let end = (lines.len(), lines.last().map(|l| l.chars().count()).unwrap_or(0) + 1);
    let mut p = P { toks, pos: 0, end };
    let f = p.formula()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fo::sexpr::{parse_sexpr, to_sexpr};

    #[test]
    fn agrees_with_prefix() {
        let a = parse_infix("forall x. exists y. y = x").unwrap();
        assert_eq!(
            a,
            parse_sexpr("(forall ((x Real)) (exists ((y Real)) (= y x)))").unwrap()
        );
        let b = parse_infix("x^2 - 2 > 0").unwrap();
        assert_eq!(to_sexpr(&b), "(> (+ (^ x 2) -2) 0)");
    }

    #[test]
    fn parentheses_and_chains() {
        let f = parse_infix("(x + 1)*(x - 1) < 0 and (0 <= y < 1 or S(x, y))").unwrap();
        assert!(matches!(f, Formula::And(ref v) if v.len() == 2));
        let g = parse_infix("((x < 1))").unwrap();
        assert_eq!(g, Formula::Atom(&Expr::var("x") - &Expr::int(1), Rel::Lt));
        let h = parse_infix("not x = 0 -> 2x != 1").unwrap();
        assert!(matches!(h, Formula::Or(_)));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_infix("x <"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_infix("forall . x > 0"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_infix("x / y > 0"), Err(Error::Syntax { .. })));
    }
}
