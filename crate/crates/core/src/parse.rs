//! Reading polynomials in `alpha`/`α` and `beta`/`β` with rational
//! coefficients.
//!
//! Grammar: integers, `+ - * / ^`, parentheses and unary minus, with `^`
//! binding tightest. Division is only by nonzero constants, exponents are
//! constant non-negative integers, and juxtaposition (`2alpha`) is an
//! error.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::bipoly::BiPoly;
use crate::error::ParseError;
use crate::qfield::{QElem, Rat};

/// Exponents above this are refused rather than expanded.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Alpha,
    Beta,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
            }
            out.push((pos, Tok::Num(s.parse().expect("digits"))));
            continue;
        }
        if c.is_alphabetic() && c != 'α' && c != 'β' {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
            }
            let tok = match s.as_str() {
                "alpha" => Tok::Alpha,
                "beta" => Tok::Beta,
                "sqrt" => return Err(ParseError::RadicalLiteral { pos }),
                _ => return Err(syntax(pos, format!("unknown name '{s}'"))),
            };
            out.push((pos, tok));
            continue;
        }
        chars.next();
        let tok = match c {
            'α' => Tok::Alpha,
            'β' => Tok::Beta,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '√' => return Err(ParseError::RadicalLiteral { pos }),
            _ => return Err(syntax(pos, format!("unexpected character '{c}'"))),
        };
        out.push((pos, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &(usize, Tok) {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn infix_power(tok: &Tok) -> Option<(u8, u8)> {
        match tok {
            Tok::Plus | Tok::Minus => Some((10, 11)),
            Tok::Star | Tok::Slash => Some((20, 21)),
            // right associative
            Tok::Caret => Some((31, 30)),
            _ => None,
        }
    }

    fn expr(&mut self, min_bp: u8) -> Result<BiPoly, ParseError> {
        let (pos, tok) = self.bump();
        let mut lhs = match tok {
            Tok::Num(n) => BiPoly::from_rat(Rat::from_integer(n)),
            Tok::Alpha => BiPoly::alpha(),
            Tok::Beta => BiPoly::beta(),
            Tok::Minus => -self.expr(25)?,
            Tok::Plus => self.expr(25)?,
            Tok::LParen => {
                let inner = self.expr(0)?;
                match self.bump() {
                    (_, Tok::RParen) => inner,
                    (p, _) => return Err(syntax(p, "expected ')'")),
                }
            }
            Tok::End => return Err(syntax(pos, "unexpected end of input")),
            other => return Err(syntax(pos, format!("unexpected {other:?}"))),
        };
        loop {
            let (pos, tok) = self.peek().clone();
            if matches!(tok, Tok::Num(_) | Tok::Alpha | Tok::Beta | Tok::LParen) {
                return Err(syntax(pos, "implicit multiplication; write '*'"));
            }
            let Some((lbp, rbp)) = Self::infix_power(&tok) else {
                break;
            };
            if lbp < min_bp {
                break;
            }
            self.bump();
            let rhs = self.expr(rbp)?;
            lhs = match tok {
                Tok::Plus => &lhs + &rhs,
                Tok::Minus => &lhs - &rhs,
                Tok::Star => &lhs * &rhs,
                Tok::Slash => {
                    let c = rhs.as_constant().ok_or(ParseError::NonConstantDivisor { pos })?;
                    if c.is_zero() {
                        return Err(ParseError::DivisionByZero { pos });
                    }
                    lhs.scale(&c.inv().expect("nonzero"))
                }
                Tok::Caret => {
                    let e = exponent(&rhs).ok_or(ParseError::BadExponent { pos })?;
                    lhs.pow(e)
                }
                _ => unreachable!(),
            };
        }
        Ok(lhs)
    }
}

fn exponent(p: &BiPoly) -> Option<u32> {
    if p.is_zero() {
        return Some(0);
    }
    let c: QElem = p.as_constant()?;
    let r = c.as_rational()?;
    if !r.is_integer() || r.is_negative() {
        return None;
    }
    r.to_integer().to_u32().filter(|&e| e <= MAX_EXPONENT)
}

/// Parses an expression into an exact polynomial.
pub fn parse_expr(text: &str) -> Result<BiPoly, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let out = p.expr(0)?;
    match p.peek() {
        (_, Tok::End) => Ok(out),
        (pos, Tok::RParen) => Err(syntax(*pos, "unbalanced ')'")),
        (pos, _) => Err(syntax(*pos, "unexpected trailing input")),
    }
}

/// Parses `p/q` or an integer.
pub fn parse_rational(text: &str) -> Result<Rat, ParseError> {
    let p = parse_expr(text)?;
    if p.is_zero() {
        return Ok(Rat::zero());
    }
    p.as_constant()
        .and_then(|c| c.as_rational().cloned())
        .ok_or_else(|| syntax(0, format!("'{text}' is not a rational number")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::tests::arb_poly;
    use crate::bipoly::Monomial;
    use crate::qfield::ratio;
    use proptest::prelude::*;

    fn a() -> BiPoly {
        BiPoly::alpha()
    }
    fn b() -> BiPoly {
        BiPoly::beta()
    }

    #[test]
    fn examples() {
        let c = parse_expr("alpha^2 + alpha*beta - beta^2").unwrap();
        assert_eq!(c, &(&(&a() * &a()) + &(&a() * &b())) - &(&b() * &b()));
        let g = parse_expr("1/2*(-3*alpha^3 - beta^3 + 3*alpha*beta^2)").unwrap();
        assert_eq!(g.coeff(Monomial::new(1, 2)), QElem::from(ratio(3, 2)));
        assert_eq!(g.coeff(Monomial::new(3, 0)), QElem::from(ratio(-3, 2)));
        assert_eq!(parse_expr("beta^2").unwrap(), &b() * &b());
        assert_eq!(parse_expr("α β".replace(' ', "*").as_str()).unwrap(), &a() * &b());
        assert_eq!(parse_expr("-alpha^2").unwrap(), -&(&a() * &a()));
        assert_eq!(parse_expr("2^3^2").unwrap(), BiPoly::from_int(512));
        assert_eq!(parse_expr("(alpha+1)^(1+1)").unwrap(), parse_expr("alpha^2+2*alpha+1").unwrap());
        assert_eq!(parse_expr("alpha/2 - beta/(1/2)").unwrap(), parse_expr("1/2*alpha - 2*beta").unwrap());
        assert_eq!(parse_rational("-3/6").unwrap(), ratio(-1, 2));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_expr("2alpha"), Err(ParseError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_expr("alpha beta"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expr("alpha^-1"), Err(ParseError::BadExponent { pos: 5 })));
        assert!(matches!(parse_expr("alpha^(1/2)"), Err(ParseError::BadExponent { .. })));
        assert!(matches!(parse_expr("alpha^beta"), Err(ParseError::BadExponent { .. })));
        assert!(matches!(parse_expr("1/alpha"), Err(ParseError::NonConstantDivisor { pos: 1 })));
        assert!(matches!(parse_expr("1/(2-2)"), Err(ParseError::DivisionByZero { .. })));
        assert!(matches!(parse_expr("sqrt(5)"), Err(ParseError::RadicalLiteral { pos: 0 })));
        assert!(matches!(parse_expr("(alpha"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expr("alpha)"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expr("gamma"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expr(""), Err(ParseError::Syntax { .. })));
        assert!(parse_rational("alpha").is_err());
    }

    proptest! {
        #[test]
        fn render_round_trip(p in arb_poly(4)) {
            prop_assert_eq!(parse_expr(&p.to_string()).unwrap(), p.clone());
            prop_assert_eq!(parse_expr(&p.render_with("α", "β")).unwrap(), p);
        }
    }
}
