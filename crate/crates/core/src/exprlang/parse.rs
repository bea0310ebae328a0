use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{ParseError, SourceSpan};
use crate::jetspace;
use crate::kernel::{Coeff, Dep, Expr, Generator, MultiIndex, Param, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Prime,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Underscore,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::End => "end of input".to_string(),
            Tok::Prime => "`'`".to_string(),
            Tok::Plus => "`+`".to_string(),
            Tok::Minus => "`-`".to_string(),
            Tok::Star => "`*`".to_string(),
            Tok::Slash => "`/`".to_string(),
            Tok::Caret => "`^`".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
            Tok::LBracket => "`[`".to_string(),
            Tok::RBracket => "`]`".to_string(),
            Tok::Comma => "`,`".to_string(),
            Tok::Underscore => "`_`".to_string(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize, usize)>,
}

fn span_of(src: &str, start: usize, end: usize) -> SourceSpan {
    let before = &src[..start.min(src.len())];
    let line = before.matches('\n').count() as u32 + 1;
    let col_start = before.rfind('\n').map(|i| i + 1).unwrap_or(0);
    let column = src[col_start..start.min(src.len())].chars().count() as u32 + 1;
    SourceSpan { line, column, start, end }
}

fn error(src: &str, start: usize, end: usize, message: impl Into<String>) -> ParseError {
    ParseError { message: message.into(), span: span_of(src, start, end) }
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut lx = Lexer { src, toks: Vec::new() };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            let start = i;
            let single = match c {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    i += 1;
                    continue;
                }
                b'\'' => Some(Tok::Prime),
                b'+' => Some(Tok::Plus),
                b'-' => Some(Tok::Minus),
                b'*' => Some(Tok::Star),
                b'/' => Some(Tok::Slash),
                b'^' => Some(Tok::Caret),
                b'(' => Some(Tok::LParen),
                b')' => Some(Tok::RParen),
                b'[' => Some(Tok::LBracket),
                b']' => Some(Tok::RBracket),
                b',' => Some(Tok::Comma),
                b'_' => Some(Tok::Underscore),
                _ => None,
            };
            if let Some(t) = single {
                lx.toks.push((t, start, start + 1));
                i += 1;
            } else if c.is_ascii_digit() {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < bytes.len() && bytes[i] == b'.' && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                lx.toks.push((Tok::Num(src[start..i].to_string()), start, i));
            } else if c.is_ascii_alphabetic() {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                lx.toks.push((Tok::Ident(src[start..i].to_string()), start, i));
            } else {
                let ch = src[start..].chars().next().expect("in bounds");
                return Err(error(src, start, start + ch.len_utf8(), format!("unexpected character `{ch}`")));
            }
        }
        lx.toks.push((Tok::End, lx.src.len(), lx.src.len()));
        Ok(lx.toks)
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

/// Parses an expression; calls are expanded and the result is canonical.
pub fn parse(text: &str) -> PResult<Expr> {
    let toks = Lexer::run(text)?;
    let mut p = Parser { src: text, toks, pos: 0 };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        t => Err(p.err_here(format!("unexpected {}", t.describe()))),
    }
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn bump(&mut self) -> (Tok, usize, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, msg: impl Into<String>) -> ParseError {
        let (_, s, e) = self.toks[self.pos];
        error(self.src, s, e, msg)
    }

    fn err_span(&self, start: usize, end: usize, msg: impl Into<String>) -> ParseError {
        error(self.src, start, end, msg)
    }

    fn expect(&mut self, want: Tok) -> PResult<usize> {
        if *self.peek() == want {
            Ok(self.bump().2)
        } else {
            Err(self.err_here(format!("expected {}, found {}", want.describe(), self.peek().describe())))
        }
    }

    fn lift<T>(&self, start: usize, end: usize, r: crate::Result<T>) -> PResult<T> {
        r.map_err(|e| self.err_span(start, end, e.to_string()))
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Tok::Slash => {
                    let (_, s, _) = self.bump();
                    let d = self.factor()?;
                    let end = self.toks[self.pos.saturating_sub(1)].2;
                    acc = self.lift(s, end, acc.div(&d))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> PResult<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let (n, s, e) = self.nat()?;
            let n = i32::try_from(n).map_err(|_| self.err_span(s, e, "exponent too large"))?;
            return self.lift(s, e, base.pow(n));
        }
        Ok(base)
    }

    fn nat(&mut self) -> PResult<(u64, usize, usize)> {
        match self.peek().clone() {
            Tok::Num(n) if !n.contains('.') => {
                let (_, s, e) = self.bump();
                let v = n.parse::<u64>().map_err(|_| self.err_span(s, e, "integer too large"))?;
                Ok((v, s, e))
            }
            t => Err(self.err_here(format!("expected a natural number, found {}", t.describe()))),
        }
    }

    fn small_nat(&mut self) -> PResult<u8> {
        let (n, s, e) = self.nat()?;
        u8::try_from(n).map_err(|_| self.err_span(s, e, "derivative order too large"))
    }

    fn atom(&mut self) -> PResult<Expr> {
        let (tok, s, e) = self.bump();
        match tok {
            Tok::Num(n) => Ok(Expr::constant(Coeff::real(number(&n)))),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(name) => self.ident(&name, s, e),
            t => Err(self.err_span(s, e, format!("unexpected {}", t.describe()))),
        }
    }

    fn ident(&mut self, name: &str, s: usize, e: usize) -> PResult<Expr> {
        match name {
            "i" => return Ok(Expr::imag_unit()),
            "t" => return Ok(Expr::var(Generator::T)),
            "x" => return Ok(Expr::var(Generator::X)),
            "y" => return Ok(Expr::var(Generator::Y)),
            "lambda" => return Ok(Expr::var(Generator::Param(Param::Lambda))),
            "mu" => return Ok(Expr::var(Generator::Param(Param::Mu))),
            "eps" => return Ok(Expr::var(Generator::Param(Param::Eps))),
            "J" | "D" | "Delta" | "E" | "Dt" | "Dx" | "Dy" => return self.call(name, s, e),
            _ => {}
        }
        if let Some(dep) = dep_of(name) {
            return self.jet(dep);
        }
        if let Some(id) = name.strip_prefix('A').filter(|r| !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit())) {
            let id: u16 = id.parse().map_err(|_| self.err_span(s, e, "function index too large"))?;
            return self.arbfun(id, s, e);
        }
        Err(self.err_span(s, e, format!("unknown identifier `{name}`")))
    }

    fn jet(&mut self, dep: Dep) -> PResult<Expr> {
        let idx = match self.peek() {
            Tok::Underscore => {
                self.bump();
                let (tok, s, e) = self.bump();
                let letters = match tok {
                    Tok::Ident(l) if l.bytes().all(|b| matches!(b, b't' | b'x' | b'y')) => l,
                    t => return Err(self.err_span(s, e, format!("expected jet subscript of t, x, y, found {}", t.describe()))),
                };
                let mut idx = MultiIndex::new(0, 0, 0);
                for b in letters.bytes() {
                    let k = match b {
                        b't' => &mut idx.t,
                        b'x' => &mut idx.x,
                        _ => &mut idx.y,
                    };
                    *k = k.checked_add(1).ok_or_else(|| self.err_span(s, e, "derivative order too large"))?;
                }
                idx
            }
            Tok::LBracket => {
                self.bump();
                let t = self.small_nat()?;
                self.expect(Tok::Comma)?;
                let x = self.small_nat()?;
                self.expect(Tok::Comma)?;
                let y = self.small_nat()?;
                self.expect(Tok::RBracket)?;
                MultiIndex::new(t, x, y)
            }
            _ => MultiIndex::new(0, 0, 0),
        };
        Ok(Expr::var(Generator::Jet(dep, idx)))
    }

    fn arbfun(&mut self, id: u16, s: usize, e: usize) -> PResult<Expr> {
        let mut order: u16 = 0;
        match self.peek() {
            Tok::Prime => {
                while *self.peek() == Tok::Prime {
                    self.bump();
                    order += 1;
                }
            }
            Tok::Caret => {
                self.bump();
                self.expect(Tok::LParen)?;
                let (n, ns, ne) = self.nat()?;
                order = u16::try_from(n).map_err(|_| self.err_span(ns, ne, "derivative order too large"))?;
                self.expect(Tok::RParen)?;
            }
            Tok::Underscore => {
                return Err(self.err_span(
                    s,
                    self.toks[self.pos].2,
                    format!("A{id} depends on t only; write derivatives as A{id}'(t)"),
                ));
            }
            _ => {}
        }
        if *self.peek() != Tok::LParen || *self.peek_at(1) != Tok::Ident("t".to_string()) {
            return Err(self.err_span(s, e, format!("A{id} must be applied to t, as in A{id}(t)")));
        }
        self.bump();
        self.bump();
        self.expect(Tok::RParen)?;
        Ok(Expr::var(Generator::ArbFun { id, order }))
    }

    fn call(&mut self, name: &str, s: usize, e: usize) -> PResult<Expr> {
        self.expect(Tok::LParen)?;
        let a = self.expr()?;
        let b = if *self.peek() == Tok::Comma {
            self.bump();
            Some(self.expr()?)
        } else {
            None
        };
        let end = self.expect(Tok::RParen)?;
        let arity = if name == "J" { 2 } else { 1 };
        let got = if b.is_some() { 2 } else { 1 };
        if got != arity {
            return Err(self.err_span(s, e, format!("{name} takes {arity} argument(s), got {got}")));
        }
        let r = match name {
            "J" => jetspace::jacobian_bracket(&a, b.as_ref().expect("arity checked")),
            "D" => jetspace::d_mixed(&a),
            "Delta" => jetspace::laplacian(&a),
            "E" => jetspace::scaling_e(&a),
            "Dt" => jetspace::dt(&a),
            "Dx" => jetspace::dx(&a),
            _ => jetspace::dy(&a),
        };
        self.lift(s, end, r)
    }
}

fn dep_of(name: &str) -> Option<Dep> {
    match name {
        "u" => Some(Dep::U),
        "s" => Some(Dep::S),
        "q" => Some(Dep::Q),
        "p" => Some(Dep::P),
        _ => None,
    }
}

fn number(text: &str) -> Rational {
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    let digits = format!("{int}{frac}");
    let n = BigInt::parse_bytes(digits.as_bytes(), 10).expect("lexer produced digits");
    let d = num_traits::pow(BigInt::from(10), frac.len());
    Rational::from_bigints(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(dep: Dep, t: u8, x: u8, y: u8) -> Expr {
        Expr::var(Generator::jet(dep, t, x, y))
    }

    #[test]
    fn bracket_expands() {
        let e = parse("J(u, D(u))").unwrap();
        let expect = j(Dep::U, 0, 1, 0).mul(&j(Dep::U, 0, 1, 2)).sub(&j(Dep::U, 0, 0, 1).mul(&j(Dep::U, 0, 2, 1)));
        assert_eq!(e, expect);
    }

    #[test]
    fn notations_agree() {
        assert!(parse("u[1,1,1] - u_txy").unwrap().is_zero());
        assert_eq!(parse("u_yxt").unwrap(), j(Dep::U, 1, 1, 1));
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("-x^2").unwrap(), parse("-(x^2)").unwrap());
        assert_eq!(parse("1 - 2 - 3").unwrap(), Expr::int(-4));
        assert_eq!(parse("8/2/2").unwrap(), Expr::int(2));
        assert_eq!(parse("2*3^2").unwrap(), Expr::int(18));
        assert_eq!(parse("--1").unwrap(), Expr::int(1));
        assert_eq!(parse("0.25").unwrap(), Expr::ratio(1, 4));
    }

    #[test]
    fn arbitrary_functions() {
        assert_eq!(parse("A1(t)").unwrap(), Expr::var(Generator::ArbFun { id: 1, order: 0 }));
        assert_eq!(parse("A2''(t)").unwrap(), Expr::var(Generator::ArbFun { id: 2, order: 2 }));
        assert_eq!(parse("A3^(5)(t)").unwrap(), Expr::var(Generator::ArbFun { id: 3, order: 5 }));
        assert_eq!(parse("Dt(A1'(t))").unwrap(), parse("A1''(t)").unwrap());
        assert!(parse("Dx(A1(t))").unwrap().is_zero());
    }

    #[test]
    fn errors_have_spans() {
        let e = parse("u_x +\n  foo").unwrap_err();
        assert_eq!((e.span.line, e.span.column), (2, 3));
        assert!(e.message.contains("unknown identifier"));
        assert!(parse("A1_x(t)").unwrap_err().message.contains("depends on t only"));
        assert!(parse("A1").is_err());
        assert!(parse("1/(x - x)").unwrap_err().message.contains("zero divisor"));
        assert!(parse("J(u)").is_err());
        assert!(parse("x^2^2").is_err());
        assert!(parse("").is_err());
        assert!(parse("u_z").is_err());
        assert!(parse("é").is_err());
    }

    #[test]
    fn imaginary_unit() {
        assert_eq!(parse("i^2").unwrap(), Expr::int(-1));
        assert_eq!(parse("(1+i)*(1-i)").unwrap(), Expr::int(2));
    }

    #[test]
    fn cosymmetry_text() {
        let e = parse("s - lambda*t*x*y - (mu + 2*eps)*t*u").unwrap();
        assert_eq!(e.generators().len(), 8);
    }
}
