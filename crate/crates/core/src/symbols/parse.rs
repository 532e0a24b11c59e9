//! Symbol expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*'? unary)*          implicit product: "2z", "3(1+z)"
//! unary   := ('+' | '-') unary | power
//! power   := primary ('^' integer)?       negative exponents only on monomials
//! primary := number 'i'? | 'i' | 'z' | '(' expr ')'
//! ```
//!
//! Division is not part of the grammar.

use num_complex::Complex64;

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

pub fn parse_symbol(text: &str) -> Result<LaurentPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty expression"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err(&format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    if !v.is_finite() {
        return Err(Error::Parse {
            pos: 0,
            msg: "non-finite coefficient".into(),
        });
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => return Err(self.err("division is not supported")),
                Some(b) if b == b'(' || b == b'z' || b == b'i' || b.is_ascii_digit() || b == b'.' => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPoly> {
        self.skip_ws();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        let (base, is_monomial) = self.primary()?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let k = self.integer()?;
        if is_monomial {
            return Ok(base.shift(k - 1));
        }
        if k < 0 {
            return Err(Error::Parse {
                pos: at,
                msg: "negative exponent on a non-monomial (division is not supported)".into(),
            });
        }
        if k > 4096 {
            return Err(Error::Parse {
                pos: at,
                msg: "exponent too large".into(),
            });
        }
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = &out * &base;
        }
        Ok(out)
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse::<i64>().map_err(|_| Error::Parse {
            pos: start,
            msg: "expected integer exponent".into(),
        })
    }

    /// Returns the value and whether it is the bare variable `z`.
    fn primary(&mut self) -> Result<(LaurentPoly, bool)> {
        self.skip_ws();
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                Ok((LaurentPoly::basis(1), true))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok((LaurentPoly::constant(Complex64::new(0.0, 1.0)), false))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok((v, false))
            }
            Some(b) if b.is_ascii_digit() || b == b'.' => {
                let x = self.number()?;
                if self.peek() == Some(b'i') {
                    self.pos += 1;
                    Ok((LaurentPoly::constant(Complex64::new(0.0, x)), false))
                } else {
                    Ok((LaurentPoly::constant(Complex64::new(x, 0.0)), false))
                }
            }
            Some(b) => Err(self.err(&format!("unexpected '{}'", b as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit() || b == b'.') {
            self.pos += 1;
        }
        if matches!(self.peek(), Some(b'e') | Some(b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'-') | Some(b'+')) {
                self.pos += 1;
            }
            if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                    self.pos += 1;
                }
            } else {
                self.pos = save;
            }
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse::<f64>().map_err(|_| Error::Parse {
            pos: start,
            msg: format!("bad number '{s}'"),
        })
    }
}
