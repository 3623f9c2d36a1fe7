//! Recursive-descent parser for the ASCII polynomial grammar:
//!
//! ```text
//! expr   = ["+"|"-"] term { ("+"|"-") term }
//! term   = [coeff "*"] factor { "*" factor } | coeff
//! factor = var ["^" uint] | param ["^" uint]
//! coeff  = integer | integer "/" integer
//! ```
//!
//! Variables and the parameter are declared by the caller, never inferred.
//! Whitespace is ignored; identical monomials are merged by addition.

use super::{Coefficient, ExponentVector, Polynomial};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn parse_poly(text: &str, vars: &[String], param: Option<&str>) -> Result<Polynomial> {
    let mut seen = std::collections::HashSet::new();
    for name in vars.iter().map(String::as_str).chain(param) {
        if !seen.insert(name) {
            return Err(Error::Syntax {
                pos: 0,
                message: format!("identifier `{name}` declared twice"),
            });
        }
    }
    Parser {
        bytes: text.as_bytes(),
        pos: 0,
        vars,
        param,
    }
    .parse()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    vars: &'a [String],
    param: Option<&'a str>,
}

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<Polynomial> {
        let mut poly = Polynomial::zero(self.vars.to_vec(), self.param.map(str::to_string));
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.syntax("empty input"));
        }
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                negate = true;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (ev, coeff) = self.term()?;
            poly.add_term(ev, if negate { coeff.neg() } else { coeff });
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                Some(c) => {
                    return Err(self.syntax(format!("expected `+` or `-`, found `{}`", c as char)))
                }
            }
        }
        Ok(poly)
    }

    fn term(&mut self) -> Result<(ExponentVector, Coefficient)> {
        self.skip_ws();
        let mut scalar = BigRational::one();
        let mut exponents = vec![0u32; self.vars.len()];
        let mut param_pow = 0u32;

        if matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == b'-') {
            scalar = self.coefficient()?;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                // bare constant term
                return Ok((
                    ExponentVector::zeros(self.vars.len()),
                    self.make_coeff(scalar, 0),
                ));
            }
        }
        loop {
            self.factor(&mut exponents, &mut param_pow)?;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((
            ExponentVector::new(exponents),
            self.make_coeff(scalar, param_pow),
        ))
    }

    fn make_coeff(&self, scalar: BigRational, param_pow: u32) -> Coefficient {
        if param_pow == 0 {
            Coefficient::from_rational(scalar)
        } else {
            Coefficient::from_param_term(param_pow, scalar)
        }
    }

    fn factor(&mut self, exponents: &mut [u32], param_pow: &mut u32) -> Result<()> {
        self.skip_ws();
        let start = self.pos;
        let name = self.identifier()?;
        let exp = self.optional_exponent()?;
        if let Some(i) = self.vars.iter().position(|v| v == &name) {
            exponents[i] = exponents[i].checked_add(exp).ok_or_else(|| Error::Syntax {
                pos: start,
                message: "exponent overflow".into(),
            })?;
            Ok(())
        } else if self.param == Some(name.as_str()) {
            *param_pow = param_pow.checked_add(exp).ok_or_else(|| Error::Syntax {
                pos: start,
                message: "exponent overflow".into(),
            })?;
            Ok(())
        } else {
            Err(Error::UnknownIdentifier { pos: start, name })
        }
    }

    fn optional_exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        if self.peek() == Some(b'-') {
            return Err(Error::NegativeExponent { pos: self.pos });
        }
        let digits = self.digits()?;
        digits.parse::<u32>().map_err(|_| Error::Syntax {
            pos: self.pos,
            message: "exponent out of range".into(),
        })
    }

    fn coefficient(&mut self) -> Result<BigRational> {
        let num = self.integer()?;
        self.skip_ws();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let den_pos = self.pos;
            let den = self.integer()?;
            if den.is_zero() {
                return Err(Error::Syntax {
                    pos: den_pos,
                    message: "zero denominator".into(),
                });
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let digits = self.digits()?;
        let value: BigInt = digits.parse().expect("digits parse as BigInt");
        Ok(if negative { -value } else { value })
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax("expected digits"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .to_string())
    }

    fn identifier(&mut self) -> Result<String> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.pos += 1,
            _ => return Err(self.syntax("expected an identifier")),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii identifier")
            .to_string())
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            message: message.into(),
        }
    }
}
