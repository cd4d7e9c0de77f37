//! Infix text form of rational functions.
//!
//! Grammar (standard precedence, `^` binds tightest and takes an integer
//! exponent, possibly negative):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' ['-'] integer)?
//! atom  := integer | variable | '(' expr ')'
//! variable := [a-z][a-z0-9_]*
//! ```
//!
//! [`format_rf`] writes polynomials with terms in ascending total degree and
//! no spaces, e.g. `1+q+q^2+q^3`, and fractions as `(num)/(den)`. The output
//! always re-parses to an equal value.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{MultiPoly, Rational, RationalFunction};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
            }
            'a'..='z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Tok::Var(src[start..i].to_string())));
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push((i, Tok::Op(c)));
                i += 1;
            }
            _ => {
                return Err(Error::Parse { offset: i, message: format!("unexpected character {c:?}") });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.offset(), message: message.into() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let at = self.offset();
                let d = self.unary()?;
                if d.is_zero() {
                    return Err(Error::Parse { offset: at, message: "division by zero".into() });
                }
                acc = &acc / &d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let at = self.offset();
        let Some(Tok::Int(n)) = self.peek().cloned() else {
            return self.err("expected integer exponent");
        };
        self.pos += 1;
        let e: i64 =
            i64::try_from(&n).map_err(|_| Error::Parse { offset: at, message: "exponent too large".into() })?;
        let e = if neg { -e } else { e };
        base.pow(e).map_err(|_| Error::Parse { offset: at, message: "negative power of zero".into() })
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(RationalFunction::from_rational(Rational::from_integer(n)))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(RationalFunction::var(&v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an infix scalar expression.
pub fn parse_rf(src: &str) -> Result<RationalFunction> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len() };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Writes a polynomial, ascending by total degree then exponent vector.
pub fn format_poly(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<_> = p.terms().iter().collect();
    terms.sort_by_key(|(e, _)| (e.iter().sum::<u32>(), (*e).clone()));
    let mut out = String::new();
    for (i, (e, c)) in terms.into_iter().enumerate() {
        let mono: Vec<String> = p
            .vars()
            .iter()
            .zip(e.iter())
            .filter(|(_, &k)| k > 0)
            .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
            .collect();
        let mono = mono.join("*");
        let negative = c.is_negative();
        let mag = c.abs();
        let body = if mono.is_empty() {
            format_rational(&mag)
        } else if mag.is_one() {
            mono
        } else {
            format!("{}*{}", format_rational(&mag), mono)
        };
        match (i, negative) {
            (_, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (0, false) => out.push_str(&body),
            (_, false) => {
                out.push('+');
                out.push_str(&body);
            }
        }
    }
    out
}

pub fn format_rf(r: &RationalFunction) -> String {
    if r.den().is_one() {
        format_poly(r.num())
    } else {
        format!("({})/({})", format_poly(r.num()), format_poly(r.den()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rf_equal;

    #[test]
    fn parse_and_print_geometric_sum() {
        let r = parse_rf("(q^4 - 1)/(q - 1)").unwrap();
        let s = parse_rf("1+q+q^2+q^3").unwrap();
        assert!(rf_equal(&r, &s));
        assert_eq!(format_rf(&s), "1+q+q^2+q^3");
    }

    #[test]
    fn precedence() {
        let a = parse_rf("-q^2").unwrap();
        assert_eq!(format_rf(&a), "-q^2");
        let b = parse_rf("2*q+3/2").unwrap();
        assert_eq!(format_rf(&b), "3/2+2*q");
        let c = parse_rf("1-2*3").unwrap();
        assert_eq!(c, RationalFunction::from_int(-5));
        let d = parse_rf("12/3/2").unwrap();
        assert_eq!(d, RationalFunction::from_int(2));
    }

    #[test]
    fn negative_exponent() {
        let a = parse_rf("q^-1").unwrap();
        assert!(rf_equal(&a, &parse_rf("1/q").unwrap()));
        assert_eq!(format_rf(&a), "(1)/(q)");
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(parse_rf("q +"), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!(parse_rf("Q"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse_rf("(q"), Err(Error::Parse { .. })));
        assert!(matches!(parse_rf("1/(q-q)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_rf("q q"), Err(Error::Parse { .. })));
    }

    #[test]
    fn multivariate_round_trip() {
        let r = parse_rf("(a*b - 3/4*c^2)/(a + 1)").unwrap();
        let back = parse_rf(&format_rf(&r)).unwrap();
        assert!(rf_equal(&r, &back));
    }
}
