//! Surface syntax for algebra elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := primary ('^' '-'? int)?
//! primary:= int | 'q' | 'v' | 'z' | 'delta' | atom | map '(' expr ')' | '(' expr ')'
//! atom   := ('g' | 'T' | 'f') '[' letters ']'
//! map    := 'F' | 'E' | 'incl' | 'psi' ('^' '-'? int)?
//! ```
//!
//! Division is by scalars only. Negative powers apply to scalars and to `g`/`T` atoms.
//! `F` and `incl` read their argument one level down (`F`: `TL-hat_n` into `TL-hat_{n+1}`,
//! `incl`: `TL_n` into `TL-hat_{n+1}`); `E` reads its argument in `TL-hat_{n+1}` from `TL_n`.

use std::fmt;

use num_bigint::BigInt;

use crate::algebra::{Basis, Element};
use crate::error::{Error, Result};
use crate::homs::{apply_e, apply_f, apply_psi, incl};
use crate::ring::{Constant, RingElem};
use crate::words::{Heap, Letter, System};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    F,
    E,
    Incl,
    Psi(i64),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Const(Constant),
    Atom { basis: Basis, system: System, word: Vec<Letter> },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Map { kind: MapKind, target: System, arg: Box<Expr> },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Word(String),
    Sym(char),
}

fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn nested(pos: usize, e: Error) -> Error {
    match e {
        Error::Usage(msg) => parse_err(pos, msg),
        other => parse_err(pos, other.to_string()),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|c| c.1).collect();
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if ch.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|c| c.1).collect())));
        } else if ch == '[' {
            let start = i + 1;
            while i < chars.len() && chars[i].1 != ']' {
                i += 1;
            }
            if i == chars.len() {
                return Err(parse_err(pos, "unclosed '['"));
            }
            out.push((pos, Tok::Word(chars[start..i].iter().map(|c| c.1).collect())));
            i += 1;
        } else if "+-*/^()".contains(ch) {
            out.push((pos, Tok::Sym(ch)));
            i += 1;
        } else {
            return Err(parse_err(pos, format!("unexpected character {ch:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(parse_err(self.pos(), format!("expected '{c}'")))
        }
    }

    fn int_exponent(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(k)) => {
                self.i += 1;
                let k: i64 = k.try_into().map_err(|_| parse_err(pos, "exponent too large"))?;
                Ok(if neg { -k } else { k })
            }
            _ => Err(parse_err(pos, "expected an integer exponent")),
        }
    }

    fn expr(&mut self, sys: System) -> Result<Expr> {
        let mut lhs = self.term(sys)?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term(sys)?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term(sys)?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self, sys: System) -> Result<Expr> {
        let mut lhs = self.unary(sys)?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary(sys)?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary(sys)?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self, sys: System) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary(sys)?)));
        }
        let base = self.primary(sys)?;
        if self.eat('^') {
            let pos = self.pos();
            let k = self.int_exponent()?;
            if k < 0 && !base.invertible_surface() {
                return Err(parse_err(pos, "only scalars and g/T atoms may be inverted"));
            }
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn map_source(&self, kind: MapKind, sys: System, pos: usize) -> Result<System> {
        let bad = |what: &str| parse_err(pos, format!("{what} cannot be applied in system {sys}"));
        match kind {
            MapKind::F if sys.affine && sys.rank >= 2 => Ok(System::affine(sys.rank - 1)),
            MapKind::F => Err(bad("F")),
            MapKind::E if !sys.affine => Ok(System::affine(sys.rank)),
            MapKind::E => Err(bad("E")),
            MapKind::Incl if sys.affine => Ok(System::finite(sys.rank)),
            MapKind::Incl => Err(bad("incl")),
            MapKind::Psi(_) if sys.affine => Ok(sys),
            MapKind::Psi(_) => Err(bad("psi")),
        }
    }

    fn primary(&mut self, sys: System) -> Result<Expr> {
        let pos = self.pos();
        let tok = self.peek().cloned().ok_or_else(|| parse_err(pos, "unexpected end of input"))?;
        self.i += 1;
        match tok {
            Tok::Int(k) => Ok(Expr::Int(k)),
            Tok::Sym('(') => {
                let e = self.expr(sys)?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if let Some(c) = Constant::parse(&name) {
                    return Ok(Expr::Const(c));
                }
                if let Ok(basis) = name.parse::<Basis>() {
                    let wpos = self.pos();
                    let Some(Tok::Word(w)) = self.peek().cloned() else {
                        return Err(parse_err(wpos, "expected '[' after basis symbol"));
                    };
                    self.i += 1;
                    let word = sys.parse_word(&w).map_err(|e| nested(wpos, e))?;
                    Heap::from_word(&sys, &word).map_err(|e| nested(wpos, e))?;
                    return Ok(Expr::Atom { basis, system: sys, word });
                }
                let kind = match name.as_str() {
                    "F" => MapKind::F,
                    "E" => MapKind::E,
                    "incl" => MapKind::Incl,
                    "psi" => MapKind::Psi(if self.eat('^') { self.int_exponent()? } else { 1 }),
                    _ => return Err(parse_err(pos, format!("unknown name {name:?}"))),
                };
                let inner = self.map_source(kind, sys, pos)?;
                self.expect('(')?;
                let arg = self.expr(inner)?;
                self.expect(')')?;
                Ok(Expr::Map { kind, target: sys, arg: Box::new(arg) })
            }
            Tok::Word(_) => Err(parse_err(pos, "letters must follow g, T or f")),
            Tok::Sym(c) => Err(parse_err(pos, format!("unexpected '{c}'"))),
        }
    }
}

/// Parses `text` as an element of `system`.
pub fn parse(text: &str, system: System) -> Result<Expr> {
    let mut p = Parser { toks: tokenize(text)?, i: 0, end: text.len() };
    let e = p.expr(system)?;
    if p.i < p.toks.len() {
        return Err(parse_err(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Parses and evaluates in one step.
pub fn parse_element(text: &str, system: System) -> Result<Element> {
    parse(text, system)?.eval(system)
}

impl Expr {
    fn invertible_surface(&self) -> bool {
        match self {
            Expr::Atom { basis, .. } => *basis != Basis::F,
            _ => self.is_scalar(),
        }
    }

    /// Whether the expression contains no atoms or maps.
    pub fn is_scalar(&self) -> bool {
        match self {
            Expr::Int(_) | Expr::Const(_) => true,
            Expr::Atom { .. } | Expr::Map { .. } => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.is_scalar(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.is_scalar() && b.is_scalar(),
        }
    }

    pub fn eval(&self, sys: System) -> Result<Element> {
        Ok(match self {
            Expr::Int(k) => Element::scalar(sys, RingElem::from_bigint(k.clone())),
            Expr::Const(c) => Element::scalar(sys, RingElem::constant(*c)),
            Expr::Atom { basis, system, word } => {
                system.ensure_same(&sys)?;
                Element::from_word(sys, *basis, word)?
            }
            Expr::Neg(a) => a.eval(sys)?.neg(),
            Expr::Add(a, b) => a.eval(sys)?.plus(&b.eval(sys)?)?,
            Expr::Sub(a, b) => a.eval(sys)?.minus(&b.eval(sys)?)?,
            Expr::Mul(a, b) => a.eval(sys)?.mul(&b.eval(sys)?)?,
            Expr::Div(a, b) => {
                let d = b.eval(sys)?.as_scalar().ok_or_else(|| Error::Usage("division is by scalars only".into()))?;
                a.eval(sys)?.scale(&d.inv()?)
            }
            Expr::Pow(a, k) => {
                let x = a.eval(sys)?;
                let base = if *k < 0 {
                    match x.as_scalar() {
                        Some(c) => Element::scalar(sys, c.inv()?),
                        None => x.monomial_inverse()?,
                    }
                } else {
                    x
                };
                base.pow(k.unsigned_abs() as u32)?
            }
            Expr::Map { kind, target, arg } => {
                target.ensure_same(&sys)?;
                match kind {
                    MapKind::F => apply_f(sys.rank, &arg.eval(System::affine(sys.rank - 1))?)?,
                    MapKind::E => apply_e(sys.rank, &arg.eval(System::affine(sys.rank))?)?,
                    MapKind::Incl => incl(sys.rank, &arg.eval(System::finite(sys.rank))?)?,
                    MapKind::Psi(d) => apply_psi(&arg.eval(sys)?, *d)?,
                }
            }
        })
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.prec() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(k) => write!(f, "{k}"),
            Expr::Const(c) => f.write_str(match c {
                Constant::Q => "q",
                Constant::V => "v",
                Constant::Delta => "delta",
                Constant::Z => "z",
            }),
            Expr::Atom { basis, system, word } => write!(f, "{basis}[{}]", system.format_word(word)),
            Expr::Neg(a) => {
                f.write_str("-")?;
                wrap(f, a, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                wrap(f, a, 2)?;
                f.write_str(if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                wrap(f, b, 3)
            }
            Expr::Pow(a, k) => {
                wrap(f, a, 5)?;
                write!(f, "^{k}")
            }
            Expr::Map { kind, arg, .. } => {
                match kind {
                    MapKind::F => f.write_str("F")?,
                    MapKind::E => f.write_str("E")?,
                    MapKind::Incl => f.write_str("incl")?,
                    MapKind::Psi(1) => f.write_str("psi")?,
                    MapKind::Psi(d) => write!(f, "psi^{d}")?,
                }
                write!(f, "({arg})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const AT2: System = System::affine(2);

    #[test]
    fn atom() {
        let e = parse("g[s2 s1 a]", AT2).unwrap();
        assert_eq!(e, Expr::Atom { basis: Basis::G, system: AT2, word: vec![2, 1, 0] });
    }

    #[test]
    fn quadratic_right_side() {
        let x = parse_element("(q-1)*g[s1] + q", AT2).unwrap();
        assert_eq!(x, parse_element("g[s1]*g[s1]", AT2).unwrap());
    }

    #[test]
    fn inverse_cancels() {
        assert_eq!(parse_element("g[s1]^-1 * g[s1]", AT2).unwrap(), Element::one(AT2));
        assert_eq!(parse_element("(1+q)^-1*(1+q)", AT2).unwrap(), Element::one(AT2));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("f[s1]^-1", AT2), Err(Error::Parse { .. })));
        assert!(matches!(parse("(g[s1]+1)^-1", AT2), Err(Error::Parse { .. })));
        assert!(matches!(parse("g[s7]", AT2), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse("g[s1] +", AT2), Err(Error::Parse { pos: 7, .. })));
        assert!(parse("g[s1 s1]", AT2).is_err());
        assert!(parse_element("g[s1]/g[s2]", AT2).is_err());
    }

    #[test]
    fn maps() {
        let x = parse_element("F(g[a])", AT2).unwrap();
        let direct = parse_element("g[s2]*g[a]*g[s2]^-1", AT2).unwrap();
        assert_eq!(x, direct);
        let e = parse_element("E(g[a])", System::finite(2)).unwrap();
        assert_eq!(e, parse_element("g[s1]*g[s2]*g[s1]^-1", System::finite(2)).unwrap());
        assert_eq!(parse_element("psi^3(g[s1])", AT2).unwrap(), parse_element("g[s1]", AT2).unwrap());
    }

    #[test]
    fn print_round_trip() {
        for s in ["-g[s1]^2 + (q - 1)/(v + 1)*T[s2 a]", "psi^-1(g[a]) - 2*(g[s1] - g[s2])", "F(g[s1 a])*g[s2]"] {
            let e = parse(s, AT2).unwrap();
            assert_eq!(parse(&e.to_string(), AT2).unwrap(), e, "{s}");
        }
        for s in ["(q-1)/(q+1)*g[s2 s1] - v*f[s1] + 3", "1/(2*q^3)*T[s1 s2] - (1-q)/(2*v)", "g[a]^-1*g[s1]^-1"] {
            let x = parse_element(s, AT2).unwrap();
            assert_eq!(parse_element(&x.to_text(), AT2).unwrap(), x, "{s}");
        }
    }
}
