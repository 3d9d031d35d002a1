//! Single-pass recursive-descent parser.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::eval::{eval, Value};
use super::expr::{Expr, E};
use crate::lincomb::Rational;
use crate::term::{Alphabet, RESERVED};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    LParen,
    RParen,
    Comma,
    Semi,
    Plus,
    Minus,
    Star,
    Slash,
    End,
}

#[derive(Debug, Clone)]
struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
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
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            let s: String = chars[start..i].iter().collect();
            Tok::Num(s.parse().expect("digits"))
        } else {
            i += 1;
            col += 1;
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                _ => return Err(ParseError { line: l0, col: c0, msg: format!("unexpected character `{c}`") }),
            }
        };
        out.push(Lexed { tok, line: l0, col: c0 });
    }
    out.push(Lexed { tok: Tok::End, line, col });
    Ok(out)
}

/// Identifiers that would be generators, in order of first appearance.
pub fn identifiers(text: &str) -> Result<Vec<String>, ParseError> {
    let toks = lex(text)?;
    let mut out: Vec<String> = Vec::new();
    for (i, t) in toks.iter().enumerate() {
        if let Tok::Ident(s) = &t.tok {
            let call = matches!(toks.get(i + 1).map(|x| &x.tok), Some(Tok::LParen));
            if s != "_" && !call && !RESERVED.contains(&s.as_str()) && !out.contains(s) {
                out.push(s.clone());
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Lexed>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let t = &self.toks[self.pos];
        Err(ParseError { line: t.line, col: t.col, msg: msg.into() })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn sum(&mut self) -> Result<E, ParseError> {
        let mut terms = vec![self.term(false)?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term(false)?);
                }
                Tok::Minus => {
                    self.bump();
                    terms.push(self.term(true)?);
                }
                _ => break,
            }
        }
        if terms.len() == 1 && terms[0].0.is_one() {
            return Ok(terms.pop().unwrap().1);
        }
        Ok(Expr::Sum(terms).arc())
    }

    fn term(&mut self, mut neg: bool) -> Result<(Rational, E), ParseError> {
        while *self.peek() == Tok::Minus {
            self.bump();
            neg = !neg;
        }
        let sign = |q: Rational| if neg { -q } else { q };
        if let Tok::Num(n) = self.peek().clone() {
            self.bump();
            let mut d = BigInt::one();
            if *self.peek() == Tok::Slash {
                self.bump();
                match self.bump() {
                    Tok::Num(m) if !m.is_zero() => d = m,
                    Tok::Num(_) => {
                        self.pos -= 1;
                        return self.err("zero denominator");
                    }
                    _ => {
                        self.pos -= 1;
                        return self.err("expected a denominator");
                    }
                }
            }
            let q = sign(Rational::new(n.clone(), d));
            if *self.peek() == Tok::Star {
                self.bump();
                return Ok((q, self.factor()?));
            }
            if n.is_zero() {
                return Ok((Rational::one(), Expr::Zero.arc()));
            }
            return self.err("expected `*` after a coefficient");
        }
        Ok((sign(Rational::one()), self.factor()?))
    }

    fn args(&mut self) -> Result<Vec<E>, ParseError> {
        let mut out = Vec::new();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(self.sum()?);
            match self.bump() {
                Tok::Comma => continue,
                Tok::RParen => return Ok(out),
                _ => {
                    self.pos -= 1;
                    return self.err("expected `,` or `)`");
                }
            }
        }
    }

    fn graft_args(&mut self) -> Result<(Vec<E>, E), ParseError> {
        let mut branches = Vec::new();
        loop {
            branches.push(self.sum()?);
            match self.bump() {
                Tok::Comma => continue,
                Tok::Semi => break,
                _ => {
                    self.pos -= 1;
                    return self.err("expected `,` or `;`");
                }
            }
        }
        let (line, col) = (self.toks[self.pos].line, self.toks[self.pos].col);
        let root = self.sum()?;
        self.expect(Tok::RParen, "`)`")?;
        if !root.contains_hole() {
            let ok = match eval(&root, None) {
                Ok(Value::A(a)) => a.keys().all(|t| t.is_root()),
                _ => false,
            };
            if !ok {
                return Err(ParseError { line, col, msg: "graft root must be a generator or a bracket".into() });
            }
        }
        Ok((branches, root))
    }

    fn factor(&mut self) -> Result<E, ParseError> {
        let at = self.pos;
        match self.bump() {
            Tok::LParen => {
                let e = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) if name == "_" => Ok(Expr::Hole.arc()),
            Tok::Ident(name) if RESERVED.contains(&name.as_str()) => {
                if *self.peek() != Tok::LParen {
                    return self.err(format!("`{name}` must be followed by `(`"));
                }
                self.bump();
                if name == "gr" || name == "sg" {
                    let (bs, r) = self.graft_args()?;
                    return Ok(if name == "gr" { Expr::Gr(bs, r) } else { Expr::Sg(bs, r) }.arc());
                }
                let mut a = self.args()?;
                let arity = |n: usize, a: &[E]| a.len() == n;
                let bad = |p: &Self, want: &str| -> Result<E, ParseError> {
                    let t = &p.toks[at];
                    Err(ParseError { line: t.line, col: t.col, msg: format!("`{name}` takes {want}") })
                };
                match name.as_str() {
                    "bk" if arity(2, &a) => Ok(Expr::Bk(a.remove(0), a.remove(0)).arc()),
                    "tri" if arity(2, &a) => Ok(Expr::Tri(a.remove(0), a.remove(0)).arc()),
                    "lb" if arity(2, &a) => Ok(Expr::Lb(a.remove(0), a.remove(0)).arc()),
                    "tb" if arity(3, &a) => Ok(Expr::Tb(a.remove(0), a.remove(0), a.remove(0)).arc()),
                    "s" if !a.is_empty() => Ok(Expr::S(a).arc()),
                    "w" => Ok(Expr::W(a).arc()),
                    "bk" | "tri" | "lb" => bad(self, "2 arguments"),
                    "tb" => bad(self, "3 arguments"),
                    _ => bad(self, "at least 1 argument"),
                }
            }
            Tok::Ident(name) => {
                if *self.peek() == Tok::LParen {
                    self.pos = at;
                    return self.err(format!("unknown constructor `{name}`"));
                }
                match self.alphabet.get(&name) {
                    Some(g) => Ok(Expr::Gen(g.clone()).arc()),
                    None => {
                        self.pos = at;
                        self.err(format!("unknown generator `{name}`"))
                    }
                }
            }
            _ => {
                self.pos = at;
                self.err("expected an expression")
            }
        }
    }
}

/// Parses `text` with identifiers resolved against `alphabet`.
pub fn parse(text: &str, alphabet: &Alphabet) -> Result<E, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, alphabet };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}
