//! Text form of multivectors.
//!
//! ```text
//! expr   := term (('+'|'-') term)* ;
//! term   := [coeff '*'] mono | coeff ;
//! mono   := var ('^' var)* ;
//! var    := ('x'|'y') digits ;
//! coeff  := digits ;
//! ```
//!
//! Whitespace is ignored. A leading sign on the first term is accepted.

use super::multivector::Multivector;
use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::linalg::Prime;

/// Generator names `x1 < … < xm < y1 < … < ym`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VariableOrder {
    m: usize,
}

impl VariableOrder {
    pub fn new(m: usize) -> Self {
        VariableOrder { m }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        2 * self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn name(&self, i: usize) -> String {
        assert!(i < 2 * self.m, "generator {i} out of range");
        if i < self.m {
            format!("x{}", i + 1)
        } else {
            format!("y{}", i - self.m + 1)
        }
    }

    pub fn names(&self) -> Vec<String> {
        (0..2 * self.m).map(|i| self.name(i)).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        let (head, digits) = name.split_at(name.char_indices().nth(1).map_or(name.len(), |(i, _)| i));
        let k: usize = digits.parse().ok()?;
        if k == 0 || k > self.m || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        match head {
            "x" => Some(k - 1),
            "y" => Some(self.m + k - 1),
            _ => None,
        }
    }
}

pub(crate) fn print(mv: &Multivector, order: &VariableOrder) -> String {
    assert_eq!(mv.n(), order.len(), "variable order does not match the algebra");
    print_with(mv, |i| order.name(i))
}

pub(crate) fn print_with(mv: &Multivector, name: impl Fn(usize) -> String) -> String {
    if mv.is_zero() {
        return "0".to_string();
    }
    let terms: Vec<String> = mv
        .terms()
        .iter()
        .map(|(mono, &c)| {
            let names: Vec<String> = mono.indices().into_iter().map(&name).collect();
            match (names.is_empty(), c) {
                (true, _) => c.to_string(),
                (false, 1) => names.join("^"),
                (false, _) => format!("{c}*{}", names.join("^")),
            }
        })
        .collect();
    terms.join(" + ")
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    p: Prime,
    m: usize,
}

pub(crate) fn parse(text: &str, p: Prime, m: usize) -> Result<Multivector> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        p,
        m,
    };
    parser.expr()
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

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Multivector> {
        let mut acc = Multivector::zero(self.p, 2 * self.m);
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let term = self.term()?;
            acc = &acc + &if negative { -&term } else { term };
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(c) => return self.error(format!("expected '+' or '-', found '{}'", c as char)),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Multivector> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.digits_mod_p();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    Ok(self.mono()?.scale(coeff))
                } else {
                    Ok(Multivector::one(self.p, 2 * self.m).scale(coeff))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => self.mono(),
            Some(c) => self.error(format!("expected a term, found '{}'", c as char)),
            None => self.error("expected a term, found end of input"),
        }
    }

    fn digits_mod_p(&mut self) -> u32 {
        let mut v = 0u32;
        while let Some(&c) = self.src.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            v = self.p.add(self.p.mul(v, 10 % self.p.get()), (c - b'0') as u32 % self.p.get());
            self.pos += 1;
        }
        v
    }

    fn mono(&mut self) -> Result<Multivector> {
        let mut acc = Multivector::one(self.p, 2 * self.m);
        loop {
            let i = self.var()?;
            acc = acc.wedge(&Multivector::monomial(self.p, 2 * self.m, Monomial::generator(i), 1))?;
            if self.peek() == Some(b'^') {
                self.pos += 1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn var(&mut self) -> Result<usize> {
        let start = match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => self.pos,
            Some(c) => return self.error(format!("expected a variable, found '{}'", c as char)),
            None => return self.error("expected a variable, found end of input"),
        };
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let (head, digits) = name.split_at(1);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || !matches!(head, "x" | "y") {
            return Err(Error::UnknownVariable {
                name: name.to_string(),
                position: start,
            });
        }
        let k: usize = digits.parse().unwrap_or(usize::MAX);
        if k == 0 {
            return Err(Error::UnknownVariable {
                name: name.to_string(),
                position: start,
            });
        }
        if k > self.m {
            return Err(Error::VariableOutOfRange {
                name: name.to_string(),
                position: start,
                m: self.m,
            });
        }
        Ok(if head == "x" { k - 1 } else { self.m + k - 1 })
    }
}
