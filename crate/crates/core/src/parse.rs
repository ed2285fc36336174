//! Recursive-descent parser for the polynomial expression grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)*
//! atom   := coeff | var | '(' expr ')'
//! coeff  := integer | integer '/' integer
//! ```

use num_bigint::BigInt;

use crate::coeff::Base;
use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Int(s.parse().expect("digits parse"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Ident(s)));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a [String],
    base: &'a Base,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Signed terms of an expression, in source order.
    fn terms(&mut self) -> Result<Vec<MultiPoly>> {
        let mut out = Vec::new();
        let mut negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let t = self.term()?;
            out.push(if negate { t.neg(self.base) } else { t });
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let ts = self.terms()?;
        Ok(ts
            .iter()
            .fold(MultiPoly::zero(self.nvars()), |acc, t| acc.add(self.base, t)))
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = acc.mul(self.base, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let mut acc = self.atom()?;
        while self.eat('^') {
            let e = match self.peek() {
                Some(Tok::Int(n)) => n.clone(),
                _ => return self.err("expected a natural-number exponent"),
            };
            self.at += 1;
            let e: u32 = match e.try_into() {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            };
            acc = pow(self.base, &acc, e);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                let c = if self.peek() == Some(&Tok::Sym('/')) {
                    self.at += 1;
                    let d = match self.peek() {
                        Some(Tok::Int(d)) => d.clone(),
                        _ => return self.err("expected an integer denominator"),
                    };
                    let pos = self.pos();
                    self.at += 1;
                    self.base
                        .from_fraction(&n, &d)
                        .map_err(|e| match e {
                            Error::Parse { msg, .. } => Error::Parse { pos, msg },
                            e => e,
                        })?
                } else {
                    self.base.from_bigint(&n)
                };
                Ok(MultiPoly::constant(self.base, self.nvars(), c))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(MultiPoly::var(self.base, self.nvars(), i)),
                    None => Err(Error::UnknownVariable(name)),
                }
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub(crate) fn pow(base: &Base, p: &MultiPoly, mut e: u32) -> MultiPoly {
    let mut acc = MultiPoly::constant(base, p.nvars(), base.one());
    let mut b = p.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(base, &b);
        }
        e >>= 1;
        if e > 0 {
            b = b.mul(base, &b);
        }
    }
    acc
}

fn parser<'a>(src: &str, vars: &'a [String], base: &'a Base) -> Result<Parser<'a>> {
    Ok(Parser {
        toks: tokenize(src)?,
        at: 0,
        end: src.len(),
        vars,
        base,
    })
}

/// Parses an expression into an unreduced polynomial over `vars`.
pub fn parse_expr(src: &str, vars: &[String], base: &Base) -> Result<MultiPoly> {
    let mut p = parser(src, vars, base)?;
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses an expression and returns its top-level signed terms in source order.
pub fn parse_terms(src: &str, vars: &[String], base: &Base) -> Result<Vec<MultiPoly>> {
    let mut p = parser(src, vars, base)?;
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let ts = p.terms()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(ts)
}

/// Canonical text form: terms in descending graded-lex order, explicit `*`,
/// `^` for powers, unit coefficients omitted.
pub fn format_poly(p: &MultiPoly, vars: &[String], base: &Base) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().rev().enumerate() {
        let neg = base.is_negative(c);
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = base.fmt_abs(c);
        let mono = format_monomial(m, vars);
        match (mono.is_empty(), abs == "1") {
            (true, _) => out.push_str(&abs),
            (false, true) => out.push_str(&mono),
            (false, false) => {
                out.push_str(&abs);
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    out
}

pub fn format_monomial(m: &Monomial, vars: &[String]) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                vars[i].clone()
            } else {
                format!("{}^{}", vars[i], e)
            }
        })
        .collect();
    parts.join("*")
}
