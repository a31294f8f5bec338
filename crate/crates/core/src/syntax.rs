//! Polynomial expression syntax.
//!
//! ```text
//! expr   := [+|-] term ((+|-) term)*
//! term   := factor ((*|/) factor)*      divisors must be nonzero constants
//! factor := atom [^ uint]
//! atom   := number | ident | ( expr )   the identifier `i` is the imaginary unit
//! ```
//!
//! `Display` on [`MultiPoly`] prints in this grammar, and parsing the printed
//! form gives back the same polynomial.

use std::iter::Peekable;
use std::str::CharIndices;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational as Q;
use crate::poly::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::Ident(s) => format!("identifier {s}"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars: Peekable<CharIndices> = src.char_indices().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&(_, c)) = chars.peek() {
        let (tl, tc) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
                col += 1;
            }
            Tok::Num(s.parse().expect("digits"))
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
                col += 1;
            }
            Tok::Ident(s)
        } else {
            chars.next();
            col += 1;
            match c {
                '+' => Tok::Plus,
                '-' | '\u{2212}' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(Error::Syntax {
                        line: tl,
                        column: tc,
                        message: format!("unexpected character {other:?}"),
                    })
                }
            }
        };
        out.push(Token {
            tok,
            line: tl,
            column: tc,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(t: &Token, message: String) -> Error {
        Error::Syntax {
            line: t.line,
            column: t.column,
            message,
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let negate = match self.peek().tok {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.peek().clone();
                    let d = self.factor()?;
                    let inv = d.as_constant().and_then(|c| c.inv()).ok_or_else(|| {
                        Self::error_at(&at, format!("divisor {d} is not a nonzero constant"))
                    })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match t.tok.clone() {
            Tok::Num(n) => {
                let e: u32 = n
                    .try_into()
                    .map_err(|_| Self::error_at(&t, "exponent too large".into()))?;
                Ok(base.pow(e))
            }
            other => Err(Self::error_at(
                &t,
                format!("expected a non-negative integer exponent, found {}", describe(&other)),
            )),
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let t = self.bump();
        match t.tok.clone() {
            Tok::Num(n) => Ok(MultiPoly::constant(Q::from_bigint(n))),
            Tok::Ident(s) if s == "i" => Ok(MultiPoly::constant(Q::i())),
            Tok::Ident(s) => Ok(MultiPoly::var(&s)),
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(Self::error_at(
                        &close,
                        format!("expected ')', found {}", describe(&close.tok)),
                    ));
                }
                Ok(inner)
            }
            other => Err(Self::error_at(
                &t,
                format!("expected a number, variable or '(', found {}", describe(&other)),
            )),
        }
    }
}

pub fn parse_poly(src: &str) -> Result<MultiPoly> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let out = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(Parser::error_at(
            &t,
            format!("unexpected {}", describe(&t.tok)),
        ));
    }
    Ok(out)
}

/// A constant expression such as `-1/2*i` or `(1 - i)/2`.
pub fn parse_constant(src: &str) -> Result<Q> {
    let p = parse_poly(src)?;
    p.as_constant()
        .ok_or_else(|| Error::Input(format!("{src:?} is not a constant")))
}

/// `u1 -> u_{1}`, `alpha -> \alpha`.
pub fn latex_var(v: &str) -> String {
    if v == "alpha" {
        return "\\alpha".into();
    }
    let split = v.find(|c: char| c.is_ascii_digit());
    match split {
        Some(k) if k > 0 => format!("{}_{{{}}}", &v[..k], &v[k..]),
        _ => v.to_string(),
    }
}

fn latex_rational(r: &num_rational::BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

/// Coefficient without sign handling: `\frac{1}{2}`, `i`, `\left(1-i\right)`.
fn latex_coeff(c: &Q) -> String {
    let (re, im) = (c.re(), c.im());
    let one = num_rational::BigRational::from_integer(1.into());
    match (re.is_zero(), im.is_zero()) {
        (_, true) => latex_rational(&re),
        (true, false) => {
            if im == one {
                "i".into()
            } else {
                format!("{}i", latex_rational(&im))
            }
        }
        (false, false) => {
            let sign = if im.is_negative() { "-" } else { "+" };
            let im = im.abs();
            let im = if im == one {
                "i".to_string()
            } else {
                format!("{}i", latex_rational(&im))
            };
            format!("\\left({}{sign}{im}\\right)", latex_rational(&re))
        }
    }
}

pub fn latex_poly(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (powers, c)) in p.terms().rev().enumerate() {
        let neg = if c.is_real() {
            c.re().is_negative()
        } else {
            c.re().is_zero() && c.im().is_negative()
        };
        let mag = if neg { -c } else { c.clone() };
        let mono: String = powers
            .iter()
            .map(|(v, e)| {
                let v = latex_var(v);
                match e {
                    1 => v,
                    e if *e < 10 => format!("{v}^{e}"),
                    e => format!("{v}^{{{e}}}"),
                }
            })
            .collect();
        let body = if mono.is_empty() {
            latex_coeff(&mag)
        } else if mag.is_one() {
            mono
        } else {
            format!("{}{mono}", latex_coeff(&mag))
        };
        match (k == 0, neg) {
            (true, false) => {}
            (true, true) => out.push('-'),
            (false, false) => out.push('+'),
            (false, true) => out.push('-'),
        }
        out.push_str(&body);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_parse() {
        let p = parse_poly("z^2 - 1").unwrap();
        assert_eq!(p.to_string(), "z^2 - 1");
        let p = parse_poly("(1-i)/2*z^3").unwrap();
        assert_eq!(p.coeff(&[("z", 3)]), Q::new(Q::ratio(1, 2).re(), Q::ratio(-1, 2).re()));
    }

    #[test]
    fn error_column() {
        match parse_poly("z^^2") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 3)),
            other => panic!("{other:?}"),
        }
        match parse_poly("x +\n  y)") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 4)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("x/y"), Err(Error::Syntax { column: 3, .. })));
        assert!(matches!(parse_poly("x/0"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn print_parse_fixed_point() {
        for s in [
            "1/2*(y*z + 3*z*w^2 + 3*x*y*w + x*w^3)",
            "x^2*w^2 + 2*w*(3*z - z^3)/2 + y^2*(z^2/4 - 1)",
            "(1-i)/2*z^3 + (1+i)/2*z - i*x*u1 + 7",
            "-i*z2 - 3/4",
        ] {
            let p = parse_poly(s).unwrap();
            let printed = p.to_string();
            assert_eq!(parse_poly(&printed).unwrap(), p, "{printed}");
        }
    }

    #[test]
    fn latex_forms() {
        let p = parse_poly("1/2*(y*z + x*w^3) - u1").unwrap();
        assert_eq!(latex_poly(&p), "\\frac{1}{2}xw^3+\\frac{1}{2}yz-u_{1}");
        let p = parse_poly("(1-i)/2*z^3").unwrap();
        assert_eq!(latex_poly(&p), "\\left(\\frac{1}{2}-\\frac{1}{2}i\\right)z^3");
    }
}
