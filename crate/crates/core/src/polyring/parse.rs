//! Text parser for homogeneous forms.
//!
//! ```text
//! form := term ( ('+' | '-') term )*
//! term := [integer] ( '*'? var )*
//! var  := 'x' index ( '^' exponent )?
//! ```
//!
//! Whitespace is insignificant and a leading sign is accepted. Integer
//! literals are reduced modulo the field characteristic.

use super::field::PrimeField;
use super::form::{HomogeneousForm, MAX_DIMENSION};
use super::monomial::Monomial;
use super::PolyError;

struct RawTerm {
    position: usize,
    coeff: u64,
    vars: Vec<(usize, u32, usize)>,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> PolyError {
        PolyError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    /// Digits (whitespace allowed between them is not); returns digit slice.
    fn digits(&mut self) -> Option<&'a [u8]> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.bytes[start..self.pos])
    }

    fn small_number(&mut self, what: &str) -> Result<u32, PolyError> {
        let start = self.pos;
        let d = self.digits().ok_or_else(|| self.error(format!("expected {what}")))?;
        let s = std::str::from_utf8(d).unwrap();
        s.parse::<u32>().map_err(|_| PolyError::Syntax {
            position: start,
            message: format!("{what} too large"),
        })
    }
}

fn reduce_digits(digits: &[u8], field: PrimeField) -> u64 {
    digits
        .iter()
        .fold(0u64, |acc, &b| field.add(field.mul(acc, 10), (b - b'0') as u64))
}

fn parse_terms(text: &str, field: PrimeField) -> Result<Vec<RawTerm>, PolyError> {
    let mut cur = Cursor {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut negate = match cur.peek() {
        Some(b'-') => {
            cur.pos += 1;
            true
        }
        Some(b'+') => {
            cur.pos += 1;
            false
        }
        None => return Err(cur.error("empty form")),
        _ => false,
    };
    loop {
        let position = {
            cur.skip_ws();
            cur.pos
        };
        let mut coeff = match cur.digits() {
            Some(d) => reduce_digits(d, field),
            None => 1,
        };
        let had_integer = cur.pos != position;
        if cur.peek() == Some(b'/') || cur.peek() == Some(b'.') {
            return Err(cur.error("only integer coefficients are accepted"));
        }
        let mut vars = Vec::new();
        loop {
            match cur.peek() {
                Some(b'*') => {
                    cur.pos += 1;
                    if cur.peek() != Some(b'x') {
                        return Err(cur.error("expected a variable after '*'"));
                    }
                }
                Some(b'x') => {}
                _ => break,
            }
            let var_pos = cur.pos;
            cur.pos += 1; // 'x'
            if !matches!(cur.bytes.get(cur.pos), Some(b) if b.is_ascii_digit()) {
                return Err(cur.error("expected a variable index after 'x'"));
            }
            let index = cur.small_number("variable index")? as usize;
            let exponent = if cur.peek() == Some(b'^') {
                cur.pos += 1;
                cur.small_number("exponent")?
            } else {
                1
            };
            vars.push((index, exponent, var_pos));
        }
        if !had_integer && vars.is_empty() {
            return Err(cur.error("expected a term"));
        }
        if negate {
            coeff = field.neg(coeff);
        }
        terms.push(RawTerm { position, coeff, vars });
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                negate = false;
            }
            Some(b'-') => {
                cur.pos += 1;
                negate = true;
            }
            Some(b'/') => return Err(cur.error("only integer coefficients are accepted")),
            Some(c) => return Err(cur.error(format!("unexpected character '{}'", c as char))),
        }
    }
    Ok(terms)
}

fn build(terms: Vec<RawTerm>, n: usize, field: PrimeField) -> Result<HomogeneousForm, PolyError> {
    if n > MAX_DIMENSION {
        return Err(PolyError::DimensionTooLarge(n));
    }
    let mut degree = None;
    let mut collected = Vec::with_capacity(terms.len());
    for t in terms {
        let mut exps = vec![0u32; n + 1];
        for (index, e, pos) in t.vars {
            if index > n {
                return Err(PolyError::VariableOutOfRange {
                    index,
                    n,
                    position: pos,
                });
            }
            exps[index] += e;
        }
        let deg: u32 = exps.iter().sum();
        if exps.iter().any(|&e| e > u16::MAX as u32) {
            return Err(PolyError::Syntax {
                position: t.position,
                message: "exponent too large".into(),
            });
        }
        match degree {
            None => degree = Some(deg),
            Some(d) if d != deg => {
                return Err(PolyError::NotHomogeneous {
                    expected: d,
                    found: deg,
                })
            }
            _ => {}
        }
        let m = Monomial::new(exps.into_iter().map(|e| e as u16).collect());
        collected.push((m, t.coeff));
    }
    HomogeneousForm::from_terms(n, degree.unwrap_or(0), field, collected)
}

/// Parses `text` as a form in `x_0..x_n` over `field`.
pub fn parse_form(text: &str, n: usize, field: PrimeField) -> Result<HomogeneousForm, PolyError> {
    build(parse_terms(text, field)?, n, field)
}

/// Parses `text`, taking `n` to be the largest variable index that occurs.
pub fn parse_form_infer(text: &str, field: PrimeField) -> Result<HomogeneousForm, PolyError> {
    let terms = parse_terms(text, field)?;
    let n = terms.iter().flat_map(|t| t.vars.iter().map(|v| v.0)).max().unwrap_or(0);
    build(terms, n, field)
}
