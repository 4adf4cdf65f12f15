//! Shared term parser for `1 + x1^2*t1^-1 - 3*x2`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::{Error, Result};

/// A parsed term: coefficient, raw torsion exponents, free exponents.
pub(crate) type RawTerm = (BigInt, Vec<i64>, Vec<i64>);

fn err(col: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 0,
        column: col + 1,
        message: message.into(),
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    i: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(err(start, "expected a number"));
        }
        let text = core::str::from_utf8(&self.s[start..self.i]).expect("ascii digits");
        text.parse().map_err(|_| err(start, "bad number"))
    }

    fn signed_small(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(b'-') {
            self.i += 1;
            true
        } else {
            false
        };
        let at = self.i;
        let n: i64 = self.number()?.try_into().map_err(|_| err(at, "exponent too large"))?;
        Ok(if neg { -n } else { n })
    }
}

pub(crate) fn parse_terms(text: &str, torsion: usize, free: usize) -> Result<Vec<RawTerm>> {
    let mut c = Cursor {
        s: text.as_bytes(),
        i: 0,
    };
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut sign = BigInt::one();
        match c.peek() {
            None if !first => break,
            None => return Err(err(c.i, "empty element")),
            Some(b'+') if !first => c.i += 1,
            Some(b'-') => {
                c.i += 1;
                sign = -sign;
            }
            Some(_) if first => {}
            Some(ch) => return Err(err(c.i, format!("unexpected `{}`", ch as char))),
        }
        first = false;
        let mut coeff = sign;
        let mut tor = vec![0i64; torsion];
        let mut fr = vec![0i64; free];
        loop {
            match c.peek() {
                Some(d) if d.is_ascii_digit() => coeff *= c.number()?,
                Some(g @ (b'x' | b't')) => {
                    let at = c.i;
                    c.i += 1;
                    let idx: usize = c.number()?.try_into().map_err(|_| err(at, "bad generator index"))?;
                    let e = if c.peek() == Some(b'^') {
                        c.i += 1;
                        c.signed_small()?
                    } else {
                        1
                    };
                    let (slot, kind) = if g == b'x' {
                        (&mut tor, "torsion")
                    } else {
                        (&mut fr, "free")
                    };
                    if idx == 0 || idx > slot.len() {
                        return Err(err(at, format!("no {kind} generator {}{idx}", g as char)));
                    }
                    slot[idx - 1] += e;
                }
                Some(ch) => return Err(err(c.i, format!("unexpected `{}`", ch as char))),
                None => return Err(err(c.i, "unexpected end of element")),
            }
            if c.peek() == Some(b'*') {
                c.i += 1;
            } else {
                break;
            }
        }
        terms.push((coeff, tor, fr));
    }
    Ok(terms)
}

/// Renders a monomial as `x1^2*t1^-1`, or `1` when trivial.
pub(crate) fn render_monomial(torsion: &[u64], free: &[i64]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in torsion.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{e}", i + 1)),
        }
    }
    for (i, &e) in free.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("t{}", i + 1)),
            _ => parts.push(format!("t{}^{e}", i + 1)),
        }
    }
    if parts.is_empty() {
        String::from("1")
    } else {
        parts.join("*")
    }
}
