//! Recursive-descent parser for the symbol grammar:
//!
//! ```text
//! symbol  := term (("+"|"-") term)* ;
//! term    := factor ("*" factor)* ;
//! factor  := atom ("^" number)? ;
//! atom    := complex | "z" | "(" symbol ")" | "blaschke(" complex ("," complex)* ")" ;
//! complex := float | float ("+"|"-") float "i" ;
//! ```
//!
//! A leading `-` on a term is accepted. The complex-literal rule is greedy:
//! `2-3i*z` reads as `(2-3i)*z`.

use num_complex::Complex64;

use super::{Base, Exponent, Factor, SymbolExpr, Term};
use crate::error::{Error, Result};

pub fn parse_symbol(text: &str) -> Result<SymbolExpr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let expr = p.symbol()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    expr.normalized()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { position: self.pos, message: message.into() }
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn symbol(&mut self) -> Result<SymbolExpr> {
        let mut terms = Vec::new();
        let negate = self.peek() == Some(b'-') && !self.starts_signed_number();
        if negate {
            self.pos += 1;
        }
        let mut t = self.term()?;
        if negate {
            t.coeff = -t.coeff;
        }
        terms.push(t);
        loop {
            let sign = match self.peek() {
                Some(b'+') => 1.0,
                Some(b'-') => -1.0,
                _ => break,
            };
            self.pos += 1;
            let mut t = self.term()?;
            t.coeff *= sign;
            terms.push(t);
        }
        Ok(SymbolExpr { terms })
    }

    fn term(&mut self) -> Result<Term> {
        let mut term = Term::constant(Complex64::new(1.0, 0.0));
        loop {
            match self.factor()? {
                Atomic::Constant(c) => term.coeff *= c,
                Atomic::Factor(f) => term.factors.push(f),
            }
            if !self.eat(b'*') {
                break;
            }
        }
        Ok(term)
    }

    fn factor(&mut self) -> Result<Atomic> {
        let atom = self.atom()?;
        if !self.eat(b'^') {
            return Ok(atom);
        }
        let start = self.pos;
        let e = self.float()?;
        let exponent = Exponent::from_f64(e);
        Ok(match atom {
            Atomic::Constant(c) => Atomic::Constant(super::pow_complex(c, exponent)),
            Atomic::Factor(mut f) => {
                if f.exponent != Exponent::Int(1) {
                    self.pos = start;
                    return Err(self.error("nested exponent"));
                }
                f.exponent = exponent;
                Atomic::Factor(f)
            }
        })
    }

    fn atom(&mut self) -> Result<Atomic> {
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                Ok(Atomic::Factor(Factor { base: Base::Z, exponent: Exponent::Int(1) }))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.symbol()?;
                self.expect(b')')?;
                Ok(Atomic::Factor(Factor {
                    base: Base::Group(Box::new(inner)),
                    exponent: Exponent::Int(1),
                }))
            }
            Some(b'b') => {
                let start = self.pos;
                if !self.src[self.pos..].starts_with(b"blaschke") {
                    return Err(self.error("unknown identifier"));
                }
                self.pos += "blaschke".len();
                self.expect(b'(')?;
                let mut zeros = vec![self.complex()?];
                while self.eat(b',') {
                    zeros.push(self.complex()?);
                }
                self.expect(b')')?;
                if let Some(a) = zeros.iter().find(|a| a.norm() >= 1.0) {
                    let err = Error::InvalidSymbol(format!(
                        "Blaschke zero {a} at position {start} has modulus {} >= 1",
                        a.norm()
                    ));
                    return Err(err);
                }
                Ok(Atomic::Factor(Factor {
                    base: Base::Blaschke { zeros },
                    exponent: Exponent::Int(1),
                }))
            }
            Some(c) if c.is_ascii_digit() || c == b'.' || c == b'-' || c == b'+' => {
                Ok(Atomic::Constant(self.complex()?))
            }
            Some(_) => Err(self.error("expected a number, 'z', '(' or 'blaschke('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn starts_signed_number(&mut self) -> bool {
        self.skip_ws();
        matches!(self.src.get(self.pos), Some(b'-') | Some(b'+'))
            && matches!(self.src.get(self.pos + 1), Some(c) if c.is_ascii_digit() || *c == b'.')
    }

    /// `float | float ("+"|"-") float "i" | float "i"`
    fn complex(&mut self) -> Result<Complex64> {
        let re = self.float()?;
        if self.eat(b'i') {
            return Ok(Complex64::new(0.0, re));
        }
        let save = self.pos;
        if matches!(self.peek(), Some(b'+') | Some(b'-')) && self.starts_signed_number() {
            if let Ok(im) = self.float() {
                if self.eat(b'i') {
                    return Ok(Complex64::new(re, im));
                }
            }
        }
        self.pos = save;
        Ok(Complex64::new(re, 0.0))
    }

    fn float(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        let mut end = self.pos;
        let s = self.src;
        if end < s.len() && (s[end] == b'-' || s[end] == b'+') {
            end += 1;
        }
        let digits_start = end;
        while end < s.len() && (s[end].is_ascii_digit() || s[end] == b'.') {
            end += 1;
        }
        if end == digits_start {
            return Err(self.error("expected a number"));
        }
        if end < s.len() && (s[end] == b'e' || s[end] == b'E') {
            let mut k = end + 1;
            if k < s.len() && (s[k] == b'-' || s[k] == b'+') {
                k += 1;
            }
            if k < s.len() && s[k].is_ascii_digit() {
                while k < s.len() && s[k].is_ascii_digit() {
                    k += 1;
                }
                end = k;
            }
        }
        let text = std::str::from_utf8(&s[start..end]).expect("ascii slice");
        let v: f64 = text.parse().map_err(|_| self.error(format!("malformed number '{text}'")))?;
        self.pos = end;
        Ok(v)
    }
}

enum Atomic {
    Constant(Complex64),
    Factor(Factor),
}
