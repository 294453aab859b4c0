//! Text grammar for polynomials.
//!
//! ```text
//! poly  ::= ('+' | '-')? term (('+' | '-') term)*
//! term  ::= coeff? ('*'? var ('^' int)?)*
//! coeff ::= int ('/' int)?
//! var   ::= 'x' int
//! ```
//! Whitespace is ignored everywhere.

use num_bigint::BigInt;
use num_traits::One;

use super::field::Field;
use super::monomial::{Monomial, MAX_VARS};
use super::poly::{Polynomial, Ring};
use crate::error::{AlgebraError, Result};

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Parser { chars, pos: 0, src }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |&(o, _)| o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(AlgebraError::Syntax { offset: self.offset(), message: message.into() })
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some(self.chars[start..self.pos].iter().map(|&(_, c)| c).collect())
        }
    }

    /// `x` followed by digits, or any other identifier (which is then unknown).
    fn identifier(&mut self) -> String {
        let start = self.pos;
        if self.peek() == Some('x') {
            self.pos += 1;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
        } else {
            while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                self.pos += 1;
            }
        }
        self.chars[start..self.pos].iter().map(|&(_, c)| c).collect()
    }
}

/// Parses `text` into a normalized polynomial of `ring`.
///
/// Coefficients are reduced into the ring's field; a denominator divisible by
/// the characteristic is a syntax error.
pub fn parse_polynomial<F: Field>(text: &str, ring: &Ring<F>) -> Result<Polynomial<F>> {
    let field = ring.field();
    let mut p = Parser::new(text);
    let mut terms: Vec<(F::Elem, Monomial)> = Vec::new();
    if p.peek().is_none() {
        return p.err("empty polynomial");
    }
    let mut first = true;
    loop {
        let mut negative = false;
        match p.peek() {
            Some('+') => p.pos += 1,
            Some('-') => {
                negative = true;
                p.pos += 1
            }
            Some(_) if first => {}
            Some(c) => return p.err(format!("expected '+' or '-', found '{c}'")),
            None => break,
        }
        first = false;
        // coefficient
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut seen_anything = false;
        if let Some(d) = p.digits() {
            num = d.parse().unwrap();
            seen_anything = true;
            if p.peek() == Some('/') {
                p.pos += 1;
                match p.digits() {
                    Some(d) => den = d.parse().unwrap(),
                    None => return p.err("expected denominator after '/'"),
                }
            }
        }
        let mut exps = [0u32; MAX_VARS];
        loop {
            let save = p.pos;
            if p.peek() == Some('*') {
                p.pos += 1;
            }
            match p.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let name = p.identifier();
                    let index = name
                        .strip_prefix('x')
                        .filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()))
                        .and_then(|d| d.parse::<usize>().ok());
                    let index = match index {
                        Some(i) if i < ring.nvars() => i,
                        _ => {
                            return Err(AlgebraError::UnknownVariable {
                                name,
                                nvars: ring.nvars(),
                            });
                        }
                    };
                    let mut e = 1u32;
                    if p.peek() == Some('^') {
                        p.pos += 1;
                        match p.digits() {
                            Some(d) => {
                                e = d.parse().map_err(|_| AlgebraError::ExponentOverflow)?;
                            }
                            None => return p.err("expected exponent after '^'"),
                        }
                    }
                    exps[index] += e;
                    seen_anything = true;
                }
                _ => {
                    if p.pos != save {
                        return p.err("expected a variable after '*'");
                    }
                    break;
                }
            }
        }
        if !seen_anything {
            return p.err("expected a term");
        }
        if let Some(c) = p.peek() {
            if c != '+' && c != '-' {
                return p.err(format!("unexpected '{c}'"));
            }
        }
        let mut c = field.from_ratio(&num, &den).ok_or(AlgebraError::Syntax {
            offset: p.offset(),
            message: "denominator vanishes in the coefficient field".into(),
        })?;
        if negative {
            c = field.neg(&c);
        }
        let mon = Monomial::from_exponents(&exps[..ring.nvars()])?;
        terms.push((c, mon));
    }
    Ok(ring.from_terms(terms))
}
