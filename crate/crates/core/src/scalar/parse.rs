//! Recursive-descent parser for the scalar text format.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' exponent)?
//! exponent:= '-'? integer | '(' '-'? integer ')'
//! atom    := integer | name | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants; negative powers only of
//! monomials.

use num_bigint::BigInt;

use super::{LaurentPoly, Rational, Scalar};
use crate::error::{Error, Result};

/// Parses `text` using only the listed parameter names.
pub fn parse_scalar(text: &str, params: &[&str]) -> Result<Scalar> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        params,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    params: &'a [&'a str],
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let rhs = self.unary()?;
                match rhs.as_rational() {
                    Some(q) if q == Rational::from_integer(0.into()) => {
                        self.pos = at;
                        return Err(Error::DivisionByZero);
                    }
                    Some(q) => acc = &acc * &Scalar::from_rational(q.recip()),
                    None => {
                        self.pos = at;
                        return Err(Error::NonConstantDivision);
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.eat(b'-') {
            Ok(-&self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        self.skip_ws();
        let Some(digits) = self.digits() else {
            return Err(self.err("expected integer exponent"));
        };
        let mag: i64 = digits.parse().map_err(|_| Error::ExponentOverflow)?;
        let k = i32::try_from(if neg { -mag } else { mag }).map_err(|_| Error::ExponentOverflow)?;
        if paren && !self.eat(b')') {
            return Err(self.err("expected `)`"));
        }
        if k >= 0 {
            return base.pow(k);
        }
        if base.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let is_monomial = base.is_laurent() && base.numerator().as_monomial().is_some();
        if !is_monomial {
            return Err(Error::NonConstantDivision);
        }
        base.pow(k)
    }

    fn digits(&mut self) -> Option<&str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                let n: BigInt = d.parse().expect("ascii digits");
                Ok(Scalar::from_rational(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if !self.params.contains(&name) {
                    self.pos = start;
                    return Err(Error::UnknownParameter(name.to_string()));
                }
                Ok(Scalar::from_poly(LaurentPoly::param(name)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial() {
        let s = parse_scalar("a^2", &["a"]).unwrap();
        assert_eq!(s.to_string(), "a^2");
    }

    #[test]
    fn x_of_the_examples() {
        let s = parse_scalar("a - a^-1", &["a"]).unwrap();
        assert_eq!(s.to_string(), "a - a^-1");
    }

    #[test]
    fn square_expands() {
        let s = parse_scalar("(a - a^-1)^2", &["a"]).unwrap();
        assert_eq!(s.to_string(), "a^2 - 2 + a^-2");
    }

    #[test]
    fn rational_coefficients() {
        let s = parse_scalar("nu/2", &["nu"]).unwrap();
        assert_eq!(s.to_string(), "1/2*nu");
        let t = parse_scalar("-3/4*a^(-2)", &["a"]).unwrap();
        assert_eq!(t.to_string(), "-3/4*a^-2");
    }

    #[test]
    fn syntax_error_position() {
        match parse_scalar("a + * 2", &["a"]) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_scalar("(a", &["a"]), Err(Error::Syntax { .. })));
    }

    #[test]
    fn unknown_parameter() {
        assert_eq!(parse_scalar("b + 1", &["a"]), Err(Error::UnknownParameter("b".into())));
    }

    #[test]
    fn bad_divisions() {
        assert_eq!(parse_scalar("1/a", &["a"]), Err(Error::NonConstantDivision));
        assert_eq!(parse_scalar("a/(2-2)", &["a"]), Err(Error::DivisionByZero));
        assert_eq!(parse_scalar("(a+1)^-1", &["a"]), Err(Error::NonConstantDivision));
        assert_eq!(parse_scalar("a^99999999999", &["a"]), Err(Error::ExponentOverflow));
    }
}
