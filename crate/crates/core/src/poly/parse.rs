use super::mpoly::Poly;
use super::rat::{parse_rat, Rat};
use crate::error::{Error, Result};

/// `x, y, z` for up to three variables, `x1..xn` beyond.
pub fn default_var_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// Parses a polynomial in `n` variables named `x, y, z` or `x1..xn`.
pub fn parse_poly(text: &str, n: usize) -> Result<Poly> {
    let names = default_var_names(n);
    let indexed: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut p = PolyParser::new(text, n, &names, 1, 1)?;
    p.alt = Some(&indexed);
    p.parse_all()
}

/// Parses a polynomial over the given variable names.
pub fn parse_poly_with(text: &str, names: &[String]) -> Result<Poly> {
    PolyParser::new(text, names.len(), names, 1, 1)?.parse_all()
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Num(Rat),
    Ident(String),
    Sym(char),
}

/// Tokenizer shared by the polynomial, description and formula parsers.
/// Positions are (line, column), 1-based.
pub(crate) fn tokenize(text: &str, line0: usize, col0: usize) -> Result<Vec<(Tok, usize, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (line0, col0);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let (l, cstart) = (line, col);
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let s = if s.starts_with('.') { format!("0{s}") } else { s };
            let v = parse_rat(&s).ok_or_else(|| Error::syntax(l, cstart, format!("bad number `{s}`")))?;
            col += i - start;
            out.push((Tok::Num(v), l, cstart));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push((Tok::Ident(chars[start..i].iter().collect()), l, cstart));
            continue;
        }
        out.push((Tok::Sym(c), l, cstart));
        i += 1;
        col += 1;
    }
    Ok(out)
}

pub(crate) struct PolyParser<'a> {
    pub toks: Vec<(Tok, usize, usize)>,
    pub pos: usize,
    pub arity: usize,
    pub names: &'a [String],
    pub alt: Option<&'a [String]>,
    pub end: (usize, usize),
}

impl<'a> PolyParser<'a> {
    fn new(text: &str, arity: usize, names: &'a [String], line: usize, col: usize) -> Result<Self> {
        let toks = tokenize(text, line, col)?;
        let end = text_end(text, line, col);
        Ok(PolyParser {
            toks,
            pos: 0,
            arity,
            names,
            alt: None,
            end,
        })
    }

    pub fn from_tokens(toks: Vec<(Tok, usize, usize)>, arity: usize, names: &'a [String], end: (usize, usize)) -> Self {
        PolyParser {
            toks,
            pos: 0,
            arity,
            names,
            alt: None,
            end,
        }
    }

    fn parse_all(&mut self) -> Result<Poly> {
        let p = self.expr()?;
        if let Some((t, l, c)) = self.toks.get(self.pos) {
            return Err(Error::syntax(*l, *c, format!("unexpected {}", show(t))));
        }
        Ok(p)
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    pub fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| (t.1, t.2)).unwrap_or(self.end)
    }

    pub fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(Error::syntax(l, c, msg))
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let (l, c) = self.here();
                let d = self.power()?;
                match d.constant_value() {
                    Some(v) if v != Rat::from_integer(0.into()) => acc = acc.scale(&v.recip()),
                    _ => return Err(Error::syntax(l, c, "division by a non-constant or zero")),
                }
            } else if matches!(
                self.peek(),
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('('))
            ) {
                if matches!(self.peek(), Some(Tok::Ident(s)) if !self.is_var(s)) {
                    return Ok(acc);
                }
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(v)) if v.is_integer() && v >= Rat::from_integer(0.into()) => {
                    self.pos += 1;
                    let e: u32 = v
                        .to_integer()
                        .try_into()
                        .map_err(|_| Error::syntax(self.here().0, self.here().1, "exponent too large"))?;
                    if e > 64 {
                        return self.err("exponent too large");
                    }
                    Ok(base.pow(e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn is_var(&self, s: &str) -> bool {
        self.var_index(s).is_some()
    }

    fn var_index(&self, s: &str) -> Option<usize> {
        self.names
            .iter()
            .position(|n| n == s)
            .or_else(|| self.alt.and_then(|a| a.iter().position(|n| n == s)))
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Poly::constant(self.arity, v))
            }
            Some(Tok::Ident(s)) => match self.var_index(&s) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Poly::var(self.arity, i))
                }
                None => self.err(format!("unknown variable `{s}`")),
            },
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let p = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(p)
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(-&self.power()?)
            }
            Some(t) => self.err(format!("unexpected {}", show(&t))),
            None => self.err("unexpected end of input"),
        }
    }
}

pub(crate) fn show(t: &Tok) -> String {
    match t {
        Tok::Num(v) => format!("number `{v}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
    }
}

pub(crate) fn text_end(text: &str, line: usize, col: usize) -> (usize, usize) {
    let (mut l, mut c) = (line, col);
    for ch in text.chars() {
        if ch == '\n' {
            l += 1;
            c = 1;
        } else {
            c += 1;
        }
    }
    (l, c)
}
