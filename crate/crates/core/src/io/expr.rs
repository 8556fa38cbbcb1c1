//! Parser for scalar expressions such as `(t^2-1)/(t+2)` or `1/2*a+3`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Field, FieldDescriptor, Q, Scalar};

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u32 = 4096;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: Option<(char, Scalar)>,
}

/// Parses an arithmetic expression over `field`. The only indeterminate
/// allowed is `t` for Q(t) and `a` for a number field; Q has none.
/// Supports `+ - * / ^`, parentheses, integers, decimals and implicit
/// multiplication before a symbol or parenthesis (`2t`, `(t+1)(t-1)`).
pub fn parse_scalar(s: &str, field: &FieldDescriptor) -> Result<Scalar, String> {
    let var = match field {
        FieldDescriptor::Q => None,
        FieldDescriptor::Qt => Some(('t', field.generator().unwrap())),
        FieldDescriptor::NumberField(_) => Some(('a', field.generator().unwrap())),
    };
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        var,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(format!("unexpected {:?} at offset {}", p.src[p.pos] as char, p.pos));
    }
    Ok(v)
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar, String> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, String> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err("division by zero".into());
                    }
                    acc = &acc / &d;
                }
                Some(c) if c == b'(' || c.is_ascii_alphabetic() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, String> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar, String> {
        let base = self.primary()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| format!("expected an exponent at offset {start}"))?;
        if e > MAX_EXPONENT {
            return Err(format!("exponent {e} is too large"));
        }
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * &base;
        }
        if neg {
            if acc.is_zero() {
                return Err("division by zero".into());
            }
            acc = acc.inv();
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Scalar, String> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(format!("expected ')' at offset {}", self.pos));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                match &self.var {
                    Some((v, value)) if *v == c as char => Ok(value.clone()),
                    _ => Err(format!("unknown symbol {:?}", c as char)),
                }
            }
            Some(c) => Err(format!("unexpected {:?} at offset {}", c as char, self.pos)),
            None => Err("unexpected end of expression".into()),
        }
    }

    fn number(&mut self) -> Result<Scalar, String> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let (int, frac) = text.split_once('.').unwrap_or((text, ""));
        if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
            return Err(format!("malformed number {text:?}"));
        }
        let digits = format!("{int}{frac}");
        let n: BigInt = digits.parse().map_err(|_| format!("malformed number {text:?}"))?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let q = Q::new(n, den);
        Ok(if q.is_zero() { Scalar::zero() } else { Scalar::Rat(q) })
    }
}

/// Canonical string of a scalar: `a/b` for rationals, reduced expressions
/// in `t` or `a` otherwise.
pub fn scalar_string(s: &Scalar) -> String {
    s.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{NumberField, Poly};
    use std::sync::Arc;

    fn qt(s: &str) -> String {
        scalar_string(&parse_scalar(s, &FieldDescriptor::Qt).unwrap())
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(qt("(t-1)/(t-1)"), "1");
        assert_eq!(qt("(t^2-1)/(t+2)"), "(t^2-1)/(t+2)");
        assert_eq!(qt("(t^2-1)/(t-1)"), "t+1");
        assert_eq!(qt("2t/4"), "1/2*t");
        assert_eq!(qt("-t^2"), "-t^2");
        assert_eq!(qt("0.25"), "1/4");
        assert_eq!(qt("t^-1"), "1/t");
        assert_eq!(qt(" 3 / 6 "), "1/2");
        assert_eq!(qt("1/(2t+2)"), "1/2/(t+1)");
    }

    #[test]
    fn round_trips() {
        for s in ["(t^2-1)/(t+2)", "1/2*t", "-t/(t+1)", "1/2/(t+1)", "(1/3*t^2-t)/(t^2+5)", "-1/t"] {
            assert_eq!(qt(&qt(s)), qt(s), "{s}");
        }
    }

    #[test]
    fn number_field_expressions() {
        let k = Arc::new(NumberField::new(Poly::new(vec![Q::from_integer((-2).into()), Q::zero(), Q::one()])).unwrap());
        let f = FieldDescriptor::NumberField(k);
        assert_eq!(scalar_string(&parse_scalar("a*a", &f).unwrap()), "2");
        assert_eq!(scalar_string(&parse_scalar("1/(a+1)", &f).unwrap()), "a-1");
    }

    #[test]
    fn errors() {
        assert!(parse_scalar("t", &FieldDescriptor::Q).is_err());
        assert!(parse_scalar("1/0", &FieldDescriptor::Q).is_err());
        assert!(parse_scalar("(1", &FieldDescriptor::Q).is_err());
        assert!(parse_scalar("1 2", &FieldDescriptor::Q).is_err());
        assert_eq!(qt("(t+1)(t-1)"), "t^2-1");
        assert!(parse_scalar("x", &FieldDescriptor::Qt).is_err());
        assert!(parse_scalar("", &FieldDescriptor::Q).is_err());
    }
}
