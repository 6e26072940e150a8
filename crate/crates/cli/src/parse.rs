//! Input parsing: integer-coefficient polynomial expressions in x with
//! `+ - * ^` and parentheses (juxtaposition like `2x` also multiplies), or
//! a JSON object `{"coeffs": [c0, c1, ...]}` with coefficients low to high.

use num_bigint::BigInt;
use num_traits::Zero;
use subfields_core::arith::z_poly::ZPoly;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error: {}", self.0)
    }
}

impl std::error::Error for ParseError {}

pub fn parse_poly(input: &str) -> Result<ZPoly, ParseError> {
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Err(ParseError("empty input".into()));
    }
    if trimmed.starts_with('{') {
        parse_json(trimmed)
    } else {
        Parser::new(trimmed)?.parse()
    }
}

fn parse_json(input: &str) -> Result<ZPoly, ParseError> {
    let v: serde_json::Value =
        serde_json::from_str(input).map_err(|e| ParseError(format!("invalid JSON: {e}")))?;
    let coeffs = v
        .get("coeffs")
        .and_then(|c| c.as_array())
        .ok_or_else(|| ParseError("expected {\"coeffs\": [...]}".into()))?;
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        let big = match c {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| ParseError(format!("coefficient {n} is not an integer"))),
            serde_json::Value::String(s) => s
                .parse::<BigInt>()
                .map_err(|_| ParseError(format!("coefficient {s:?} is not an integer"))),
            other => Err(ParseError(format!("unsupported coefficient {other}"))),
        }?;
        out.push(big);
    }
    Ok(ZPoly::new(out))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    X,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn new(s: &str) -> Result<Self, ParseError> {
        let mut toks = vec![];
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match c {
                ' ' | '\t' | '\n' | '\r' => i += 1,
                '+' => {
                    toks.push(Tok::Plus);
                    i += 1;
                }
                '-' | '−' => {
                    toks.push(Tok::Minus);
                    i += 1;
                }
                '*' => {
                    toks.push(Tok::Star);
                    i += 1;
                }
                '^' => {
                    toks.push(Tok::Caret);
                    i += 1;
                }
                '(' => {
                    toks.push(Tok::LParen);
                    i += 1;
                }
                ')' => {
                    toks.push(Tok::RParen);
                    i += 1;
                }
                'x' | 'X' => {
                    toks.push(Tok::X);
                    i += 1;
                }
                '0'..='9' => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let lit: String = chars[start..i].iter().collect();
                    toks.push(Tok::Int(lit.parse().unwrap()));
                }
                other => return Err(ParseError(format!("unexpected character {other:?}"))),
            }
        }
        Ok(Parser { toks, pos: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse(&mut self) -> Result<ZPoly, ParseError> {
        let e = self.expr()?;
        if self.pos != self.toks.len() {
            return Err(ParseError("trailing input after expression".into()));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<ZPoly, ParseError> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ZPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = acc.mul(&self.unary()?);
                }
                // implicit multiplication: 2x, 2(x+1), x(x+1), (x+1)(x-1)
                Some(Tok::X) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.unary()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ZPoly, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ZPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            let exp = match self.next() {
                Some(Tok::Int(n)) => n,
                _ => return Err(ParseError("exponent must be a nonnegative integer".into())),
            };
            let exp: u32 = exp
                .try_into()
                .map_err(|_| ParseError("exponent out of range".into()))?;
            if exp > 4096 {
                return Err(ParseError("exponent out of range".into()));
            }
            let mut acc = ZPoly::one();
            for _ in 0..exp {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ZPoly, ParseError> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(ZPoly::new(vec![n])),
            Some(Tok::X) => Ok(ZPoly::from_i64(&[0, 1])),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.next() != Some(Tok::RParen) {
                    return Err(ParseError("missing closing parenthesis".into()));
                }
                Ok(e)
            }
            other => Err(ParseError(format!("unexpected token {other:?}"))),
        }
    }
}

/// Render an integer polynomial the way the inputs are written.
pub fn render_zpoly(p: &ZPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for i in (0..p.coeffs.len()).rev() {
        let c = p.coeff(i);
        if c.is_zero() {
            continue;
        }
        let (sign, mag) = if c < BigInt::zero() {
            ("-", -c.clone())
        } else {
            ("+", c.clone())
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(if sign == "-" { " - " } else { " + " });
        }
        let show_coeff = mag != BigInt::from(1) || i == 0;
        if show_coeff {
            out.push_str(&mag.to_string());
        }
        if i >= 1 {
            if show_coeff {
                out.push('*');
            }
            out.push('x');
            if i >= 2 {
                out.push_str(&format!("^{i}"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_expressions() {
        assert_eq!(parse_poly("x^6-2").unwrap(), ZPoly::from_i64(&[-2, 0, 0, 0, 0, 0, 1]));
        assert_eq!(parse_poly("x^2 - x - 1").unwrap(), ZPoly::from_i64(&[-1, -1, 1]));
        assert_eq!(parse_poly("2x + 1").unwrap(), ZPoly::from_i64(&[1, 2]));
        assert_eq!(parse_poly("(x+1)*(x-1)").unwrap(), ZPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(parse_poly("(x+1)(x-1)").unwrap(), ZPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(parse_poly("-x^3").unwrap(), ZPoly::from_i64(&[0, 0, 0, -1]));
        assert_eq!(parse_poly("x^4+1").unwrap(), ZPoly::from_i64(&[1, 0, 0, 0, 1]));
    }

    #[test]
    fn json_input() {
        assert_eq!(
            parse_poly(r#"{"coeffs": [-2, 0, 0, 0, 0, 0, 1]}"#).unwrap(),
            ZPoly::from_i64(&[-2, 0, 0, 0, 0, 0, 1])
        );
        assert_eq!(
            parse_poly(r#"{"coeffs": ["-2", "0", "1"]}"#).unwrap(),
            ZPoly::from_i64(&[-2, 0, 1])
        );
        assert!(parse_poly(r#"{"coeffs": [0.5]}"#).is_err());
    }

    #[test]
    fn errors() {
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x^-2").is_err());
        assert!(parse_poly("x + (").is_err());
        assert!(parse_poly("y^2").is_err());
        assert!(parse_poly("x^2 2").is_err());
    }

    #[test]
    fn render_roundtrip() {
        for s in ["x^6 - 2", "x^2 - x - 1", "2*x + 1", "x^4 + x^2 + 1"] {
            let p = parse_poly(s).unwrap();
            assert_eq!(parse_poly(&render_zpoly(&p)).unwrap(), p);
        }
        assert_eq!(render_zpoly(&ZPoly::from_i64(&[-2, 0, 0, 0, 0, 0, 1])), "x^6 - 2");
    }
}
