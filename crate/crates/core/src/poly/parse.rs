//! Parser for homogeneous forms written as
//!
//! ```text
//! expression := term (('+'|'-') term)*
//! term       := [integer '*'] factor ('*' factor)*
//! factor     := 'y' index ['^' exponent]
//! ```
//!
//! Whitespace is ignored, variable indices are 1-based and a single
//! leading sign is accepted. Positions in errors are byte offsets.

use num_bigint::BigInt;

use super::form::Form;
use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::field::Field;

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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.bytes[start..self.pos]).unwrap())
    }
}

pub fn parse_form<F: Field>(text: &str, num_vars: usize, degree: usize, field: &F) -> Result<Form<F>> {
    let mut cur = Cursor { bytes: text.as_bytes(), pos: 0 };
    let mut form = Form::zero(num_vars, degree);
    let mut negative = if cur.eat(b'-') {
        true
    } else {
        cur.eat(b'+');
        false
    };
    loop {
        let (coeff, mono) = parse_term(&mut cur, num_vars)?;
        if mono.degree() != degree {
            return Err(Error::DegreeMismatch { expected: degree, found: mono.degree() });
        }
        let mut c = field.from_bigint(&coeff);
        if negative {
            c = field.neg(&c);
        }
        form.add_term(field, mono, &c);
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                negative = false;
            }
            Some(b'-') => {
                cur.pos += 1;
                negative = true;
            }
            Some(c) => return cur.error(format!("unexpected `{}`", c as char)),
        }
    }
    if form.is_zero() {
        return Err(Error::ZeroForm);
    }
    Ok(form)
}

fn parse_term(cur: &mut Cursor<'_>, num_vars: usize) -> Result<(BigInt, Monomial)> {
    let mut exps = vec![0u32; num_vars];
    let coeff = match cur.digits() {
        Some(d) => {
            let c: BigInt = d.parse().expect("digit run parses");
            if !cur.eat(b'*') {
                return cur.error("expected `*` after coefficient");
            }
            c
        }
        None => BigInt::from(1),
    };
    loop {
        parse_factor(cur, &mut exps)?;
        if !cur.eat(b'*') {
            break;
        }
    }
    Ok((coeff, Monomial::new(exps)))
}

fn parse_factor(cur: &mut Cursor<'_>, exps: &mut [u32]) -> Result<()> {
    if !cur.eat(b'y') {
        return match cur.peek() {
            None => cur.error("unexpected end of input, expected a variable"),
            Some(c) => cur.error(format!("expected a variable `y<index>`, found `{}`", c as char)),
        };
    }
    let index_pos = cur.pos;
    let Some(digits) = cur.digits() else {
        return cur.error("expected a variable index after `y`");
    };
    let index: usize = match digits.parse() {
        Ok(i) => i,
        Err(_) => return Err(Error::Syntax { pos: index_pos, msg: "variable index too large".into() }),
    };
    if index == 0 || index > exps.len() {
        return Err(Error::VariableOutOfRange { index, num_vars: exps.len() });
    }
    let exponent = if cur.eat(b'^') {
        let pos = cur.pos;
        let Some(d) = cur.digits() else {
            return cur.error("expected an exponent after `^`");
        };
        d.parse::<u32>()
            .map_err(|_| Error::Syntax { pos, msg: "exponent too large".into() })?
    } else {
        1
    };
    exps[index - 1] += exponent;
    Ok(())
}
