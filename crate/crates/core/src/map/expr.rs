//! Recursive-descent parser for map expressions over `Q(x)`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' | '(' expr ')'
//! ```
//!
//! Fractions are written with `/`. Floating-point literals are rejected.

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{BigRational, PolyQ};
use crate::error::{Error, Result};

const MAX_INTERMEDIATE_DEGREE: usize = 4096;

/// An element of `Q(x)` kept as a reduced fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    pub num: PolyQ,
    pub den: PolyQ,
}

impl RatFunc {
    pub fn from_poly(p: PolyQ) -> Self {
        RatFunc { num: p, den: PolyQ::one() }
    }

    fn reduced(num: PolyQ, den: PolyQ) -> Self {
        if num.is_zero() {
            return Self::from_poly(PolyQ::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap());
        let l = den.lead().expect("nonzero denominator").recip();
        RatFunc { num: num.scale(&l), den: den.scale(&l) }
    }

    fn add(&self, o: &Self) -> Self {
        Self::reduced(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    fn sub(&self, o: &Self) -> Self {
        Self::reduced(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den)
    }

    fn mul(&self, o: &Self) -> Self {
        Self::reduced(&self.num * &o.num, &self.den * &o.den)
    }

    fn div(&self, o: &Self) -> Option<Self> {
        if o.num.is_zero() {
            return None;
        }
        Some(Self::reduced(&self.num * &o.den, &self.den * &o.num))
    }

    fn pow(&self, k: u32) -> Self {
        RatFunc { num: self.num.pow(k as usize), den: self.den.pow(k as usize) }
    }

    fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    X,
    Op(char),
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == '.' || chars[i] == 'e' || chars[i] == 'E') {
                    return Err(Error::Syntax {
                        position: i,
                        message: "floating-point literals are not supported; write fractions with '/'".into(),
                    });
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((start, Tok::Int(digits.parse().expect("digits"))));
            }
            '.' => {
                return Err(Error::Syntax {
                    position: i,
                    message: "floating-point literals are not supported; write fractions with '/'".into(),
                })
            }
            'x' | 'X' => {
                out.push((i, Tok::X));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' => {
                out.push((i, Tok::Op(c)));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            other => {
                return Err(Error::Syntax {
                    position: i,
                    message: format!("unexpected character '{other}'"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    max_exponent: u32,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.here(), message: message.into() })
    }

    fn check_degree(&self, v: RatFunc) -> Result<RatFunc> {
        if v.degree() > MAX_INTERMEDIATE_DEGREE {
            return Err(Error::Resource {
                cap: "intermediate expression degree",
                limit: MAX_INTERMEDIATE_DEGREE as u128,
            });
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            let at = self.here();
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == '*' {
                self.check_degree(acc.mul(&rhs))?
            } else {
                match acc.div(&rhs) {
                    Some(v) => self.check_degree(v)?,
                    None => {
                        return Err(Error::Degenerate(format!("division by zero at position {at}")))
                    }
                }
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                let v = self.unary()?;
                Ok(RatFunc { num: -&v.num, den: v.den })
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let exp = match self.peek().cloned() {
                Some(Tok::Int(n)) => n,
                _ => return self.err("expected a nonnegative integer exponent"),
            };
            let k: u32 = match u32::try_from(&exp) {
                Ok(k) if k <= self.max_exponent => k,
                _ => {
                    return Err(Error::Resource {
                        cap: "parser exponent",
                        limit: self.max_exponent as u128,
                    })
                }
            };
            self.pos += 1;
            if let Some(Tok::Op('^')) = self.peek() {
                return self.err("chained exponents need parentheses");
            }
            return self.check_degree(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(RatFunc::from_poly(PolyQ::constant(BigRational::from_integer(n))))
            }
            Some(Tok::X) => {
                self.pos += 1;
                Ok(RatFunc::from_poly(PolyQ::x()))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            Some(Tok::RParen) => self.err("unexpected ')'"),
            Some(Tok::Op(c)) => self.err(format!("unexpected operator '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an expression into a reduced element of `Q(x)`.
pub fn parse_rational_function(src: &str, max_exponent: u32) -> Result<RatFunc> {
    let toks = tokenize(src)?;
    let mut parser = Parser { toks, pos: 0, end: src.chars().count(), max_exponent };
    if parser.toks.is_empty() {
        return parser.err("empty expression");
    }
    let v = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return parser.err("unexpected trailing input");
    }
    debug_assert!(v.den.lead().is_some_and(One::is_one));
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<RatFunc> {
        parse_rational_function(s, 256)
    }

    #[test]
    fn precedence_and_unary_minus() {
        let v = parse("-x^2 + 3*x - 1/2").unwrap();
        assert_eq!(v.num, PolyQ::new(vec![
            BigRational::new((-1).into(), 2.into()),
            BigRational::from_integer(3.into()),
            BigRational::from_integer((-1).into()),
        ]));
        assert_eq!(v.den, PolyQ::one());
    }

    #[test]
    fn fractions_reduce() {
        let v = parse("(x^2 - 1)/(x - 1)").unwrap();
        assert_eq!(v.num, PolyQ::from_ints(&[1, 1]));
        assert_eq!(v.den, PolyQ::one());
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse("x^2 +"), Err(Error::Syntax { position: 5, .. })));
        assert!(matches!(parse("x^2 + 1.5"), Err(Error::Syntax { position: 7, .. })));
        assert!(matches!(parse("x ^ y"), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(parse("(x + 1"), Err(Error::Syntax { position: 6, .. })));
        assert!(matches!(parse("x x"), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn division_by_zero_is_degenerate() {
        assert!(matches!(parse("x/(x - x)"), Err(Error::Degenerate(_))));
    }

    #[test]
    fn exponent_cap() {
        assert!(matches!(parse("x^100000"), Err(Error::Resource { .. })));
        assert_eq!(parse("x^0").unwrap().num, PolyQ::one());
    }
}
