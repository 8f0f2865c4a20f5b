//! Recursive-descent parser.
//!
//! ```text
//! expr     := term (("+"|"-") term)*
//! term     := factor (("*"|"/") factor)*
//! factor   := "-"? atom ("^" exponent)?
//! atom     := number | "z1" | "z2" | func "(" expr ")" | "(" expr ")"
//! exponent := "-"? number | "(" expr ")"      (the expr must be constant)
//! func     := "exp" | "sin" | "cos"
//! number   := digits ["." digits] [("e"|"E") ["+"|"-"] digits] ["i"]
//! ```
//!
//! `-2^2` is `-(2^2)`. A parenthesized sum of two literals such as `(1+2i)`
//! is folded to a single constant.

use std::sync::Arc;

use super::{evaluate, simplify, Expr};
use crate::error::{Error, Result};
use crate::numerics::{c, ComplexScalar, ZERO};

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error(&["+", "-", "*", "/", "end of input"]));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, expected: &[&str]) -> Error {
        Error::Syntax {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
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

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.eat(byte) {
            Ok(())
        } else {
            Err(self.error(&[std::str::from_utf8(&[byte]).unwrap_or("?")]))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Arc::new(lhs), Arc::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Arc::new(lhs), Arc::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Arc::new(lhs), Arc::new(self.factor()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Arc::new(lhs), Arc::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let negate = self.eat(b'-');
        let base = self.atom()?;
        let powered = self.eat(b'^');
        let e = if powered {
            let p = self.exponent()?;
            base.pow(p)
        } else {
            base
        };
        Ok(match (negate, &e) {
            (true, Expr::Const(v)) if !powered => Expr::Const(-*v),
            (true, _) => -e,
            (false, _) => e,
        })
    }

    fn exponent(&mut self) -> Result<ComplexScalar> {
        if self.peek() == Some(b'(') {
            let start = self.pos;
            self.pos += 1;
            let inner = self.expr()?;
            self.expect(b')')?;
            if !inner.is_constant() {
                self.pos = start;
                return Err(self.error(&["constant exponent"]));
            }
            return evaluate(&simplify(&inner), ZERO, ZERO).map_err(|_| {
                self.pos = start;
                self.error(&["finite constant exponent"])
            });
        }
        let negate = self.eat(b'-');
        let v = self.number().ok_or_else(|| self.error(&["number", "("]))?;
        Ok(if negate { -v } else { v })
    }

    fn atom(&mut self) -> Result<Expr> {
        let expected = ["number", "z1", "z2", "exp", "sin", "cos", "("];
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(fold_literal_pair(inner))
            }
            Some(ch) if ch.is_ascii_digit() || ch == b'.' => self
                .number()
                .map(Expr::Const)
                .ok_or_else(|| self.error(&["number"])),
            Some(ch) if ch.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let word = &self.src[start..self.pos];
                match word {
                    b"z1" => Ok(Expr::z1()),
                    b"z2" => Ok(Expr::z2()),
                    b"exp" | b"sin" | b"cos" => {
                        self.expect(b'(')?;
                        let arg = self.expr()?;
                        self.expect(b')')?;
                        Ok(match word {
                            b"exp" => arg.exp(),
                            b"sin" => arg.sin(),
                            _ => arg.cos(),
                        })
                    }
                    _ => {
                        self.pos = start;
                        Err(self.error(&expected))
                    }
                }
            }
            _ => Err(self.error(&expected)),
        }
    }

    fn number(&mut self) -> Option<ComplexScalar> {
        self.skip_ws();
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut count = digits(self);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            count += digits(self);
        }
        if count == 0 {
            self.pos = start;
            return None;
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = mark;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).ok()?;
        let value: f64 = text.parse().ok()?;
        let imaginary = self.src.get(self.pos) == Some(&b'i')
            && !self
                .src
                .get(self.pos + 1)
                .is_some_and(|b| b.is_ascii_alphanumeric());
        if imaginary {
            self.pos += 1;
            Some(c(0.0, value))
        } else {
            Some(c(value, 0.0))
        }
    }
}

/// `(a + bi)` written as a parenthesized sum of literals becomes one constant.
fn fold_literal_pair(e: Expr) -> Expr {
    match &e {
        Expr::Add(a, b) | Expr::Sub(a, b) => match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) if x.im == 0.0 && y.re == 0.0 => {
                if matches!(e, Expr::Add(..)) {
                    Expr::Const(c(x.re, y.im))
                } else {
                    Expr::Const(c(x.re, -y.im))
                }
            }
            _ => e,
        },
        _ => e,
    }
}
