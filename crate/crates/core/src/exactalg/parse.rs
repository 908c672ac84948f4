//! Expression parser shared by polynomials, localized elements and operators.
//!
//! Grammar: integer literals, identifiers `[a-zA-Z][a-zA-Z0-9_]*`, `d_<var>` for
//! ∂/∂var (operator targets only), `+ - * / ^`, parentheses. `/` requires a unit
//! divisor; `^` takes a nonnegative integer literal.

use num_bigint::BigInt;

use super::field::Rat;
use super::loc::{LocElem, Ring};
use super::mpoly::{MPoly, Vars};
use crate::error::{Error, Result};

/// Values an expression can be parsed into.
pub trait ExprTarget: Sized + Clone {
    type Ctx;
    fn int(ctx: &Self::Ctx, n: BigInt) -> Self;
    fn var(ctx: &Self::Ctx, name: &str) -> Result<Self>;
    fn dvar(_ctx: &Self::Ctx, name: &str) -> Result<Self> {
        Err(Error::Input(format!("operator token d_{name} not allowed here")))
    }
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    fn pow(&self, k: u32) -> Self;
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Int(s[st..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else if c == '−' {
            // tolerate the typographic minus
            out.push((i, Tok::Op('-')));
            i += c.len_utf8();
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a, T: ExprTarget> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ctx: &'a T::Ctx,
}

impl<'a, T: ExprTarget> Parser<'a, T> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<R>(&self, msg: impl Into<String>) -> Result<R> {
        Err(Error::Parse { pos: self.here(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<T> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<T> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let at = self.here();
                let d = self.unary()?;
                acc = acc.div(&d).map_err(|e| Error::Parse { pos: at, msg: e.to_string() })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<T> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<T> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let k: u32 = n.try_into().map_err(|_| Error::Parse { pos: self.here(), msg: "exponent too large".into() })?;
                    Ok(base.pow(k))
                }
                _ => self.err("`^` needs a nonnegative integer literal"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<T> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(T::int(self.ctx, n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let r = match name.strip_prefix("d_") {
                    Some(v) if !v.is_empty() => T::dvar(self.ctx, v),
                    _ => T::var(self.ctx, &name),
                };
                r.map_err(|e| Error::Parse { pos: at, msg: e.to_string() })
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(v)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_expr<T: ExprTarget>(ctx: &T::Ctx, s: &str) -> Result<T> {
    let toks = lex(s)?;
    let mut p = Parser::<T> { toks, pos: 0, end: s.len(), ctx };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

impl ExprTarget for MPoly {
    type Ctx = Vars;
    fn int(ctx: &Vars, n: BigInt) -> Self {
        MPoly::constant(ctx, Rat::from_integer(n))
    }
    fn var(ctx: &Vars, name: &str) -> Result<Self> {
        MPoly::var(ctx, name)
    }
    fn add(&self, o: &Self) -> Self {
        MPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        MPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        MPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        MPoly::neg(self)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        match o.constant_value() {
            Some(c) if c != Rat::from_integer(0.into()) => Ok(self.scale(&c.recip())),
            _ => Err(Error::NotAUnit(o.render())),
        }
    }
    fn pow(&self, k: u32) -> Self {
        MPoly::pow(self, k)
    }
}

impl ExprTarget for LocElem {
    type Ctx = Ring;
    fn int(ctx: &Ring, n: BigInt) -> Self {
        LocElem::constant(ctx, Rat::from_integer(n))
    }
    fn var(ctx: &Ring, name: &str) -> Result<Self> {
        LocElem::var(ctx, name)
    }
    fn add(&self, o: &Self) -> Self {
        LocElem::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        LocElem::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        LocElem::mul(self, o)
    }
    fn neg(&self) -> Self {
        LocElem::neg(self)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        LocElem::div(self, o)
    }
    fn pow(&self, k: u32) -> Self {
        LocElem::pow(self, k)
    }
}

pub fn parse_poly(vars: &Vars, s: &str) -> Result<MPoly> {
    parse_expr(vars, s)
}

pub fn parse_loc(ring: &Ring, s: &str) -> Result<LocElem> {
    parse_expr(ring, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::mpoly::vars_of;

    #[test]
    fn precedence_and_printing() {
        let v = vars_of(&["x", "lam"]);
        let p = parse_poly(&v, "(x^2 - lam)*(x^2-lam)").unwrap();
        assert_eq!(p.render(), "x^4 - 2*x^2*lam + lam^2");
        assert_eq!(parse_poly(&v, "-x^2 + 3/4*lam").unwrap().render(), "-x^2 + 3/4*lam");
        assert_eq!(parse_poly(&v, "2 - -x").unwrap().render(), "x + 2");
    }

    #[test]
    fn errors_carry_positions() {
        let v = vars_of(&["x"]);
        assert!(matches!(parse_poly(&v, "x + y"), Err(Error::Parse { pos: 4, .. })));
        assert!(parse_poly(&v, "x^").is_err());
        assert!(parse_poly(&v, "1/x").is_err());
        assert!(parse_poly(&v, "d_x").is_err());
        assert!(parse_poly(&v, "(x").is_err());
        assert!(parse_poly(&v, "x x").is_err());
    }
}
