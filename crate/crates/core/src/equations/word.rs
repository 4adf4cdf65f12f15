use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{Error, Result};

/// One letter of a fully expanded word: a coefficient symbol or a variable,
/// each with exponent `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Coeff(usize, i8),
    Var(usize, i8),
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::Coeff(c, s) => Letter::Coeff(c, -s),
            Letter::Var(v, s) => Letter::Var(v, -s),
        }
    }

    fn base(self) -> (bool, usize) {
        match self {
            Letter::Coeff(c, _) => (false, c),
            Letter::Var(v, _) => (true, v),
        }
    }

    fn sign(self) -> i8 {
        match self {
            Letter::Coeff(_, s) | Letter::Var(_, s) => s,
        }
    }
}

/// A flat word: no commutator, conjugation or power nodes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: i64) -> Word {
        let unit = if k < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(unit.0.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            v.extend_from_slice(&unit.0);
        }
        Word(v)
    }

    /// `self^u = u⁻¹ self u`.
    pub fn conjugate(&self, u: &Word) -> Word {
        u.inverse().concat(self).concat(u)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().concat(&b.inverse()).concat(a).concat(b)
    }

    pub fn exponent_sum(&self, var: usize) -> i64 {
        self.0
            .iter()
            .map(|l| match *l {
                Letter::Var(v, s) if v == var => s as i64,
                _ => 0,
            })
            .sum()
    }

    /// Renders the word in the input syntax, grouping runs of a letter into
    /// powers. Parsing the output gives back the same word.
    pub fn render(&self, vars: &[String], coeffs: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i + 1;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let run = (j - i) as i64 * l.sign() as i64;
            let name = match l.base() {
                (true, v) => &vars[v],
                (false, c) => &coeffs[c],
            };
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(name);
            if run != 1 {
                out.push('^');
                out.push_str(&run.to_string());
            }
            i = j;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Caret,
    Star,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn tokenize(text: &str, line: usize) -> Result<Vec<(Tok, usize)>> {
    let err = |column: usize, message: String| Error::Parse { line, column, message };
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\r' => i += 1,
            '^' => {
                toks.push((Tok::Caret, col));
                i += 1;
            }
            '*' | '·' => {
                toks.push((Tok::Star, col));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, col));
                i += 1;
            }
            '[' => {
                toks.push((Tok::LBracket, col));
                i += 1;
            }
            ']' => {
                toks.push((Tok::RBracket, col));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, col));
                i += 1;
            }
            '-' | '+' | '0'..='9' => {
                let start = i;
                if c == '-' || c == '+' {
                    i += 1;
                }
                let digits = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits {
                    return Err(err(col, "expected digits after sign".into()));
                }
                let s: String = chars[start..i].iter().collect();
                let v = s
                    .trim_start_matches('+')
                    .parse()
                    .map_err(|_| err(col, alloc::format!("integer `{s}` out of range")))?;
                toks.push((Tok::Int(v), col));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            other => return Err(err(col, alloc::format!("unexpected character `{other}`"))),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
    vars: &'a [String],
    coeffs: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.col(),
            message: message.into(),
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(alloc::format!("expected {what}")))
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = Word::default();
        loop {
            match self.peek() {
                None | Some(Tok::RParen) | Some(Tok::RBracket) | Some(Tok::Comma) => return Ok(w),
                Some(Tok::Star) => self.pos += 1,
                _ => {
                    let f = self.factor()?;
                    w.0.extend(f.0);
                }
            }
        }
    }

    fn factor(&mut self) -> Result<Word> {
        let mut w = self.atom()?;
        while self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(k)) => {
                    self.pos += 1;
                    w = w.pow(k);
                }
                Some(Tok::LParen) => {
                    self.pos += 1;
                    let u = self.word()?;
                    self.expect(Tok::RParen, "`)` closing the conjugator")?;
                    w = w.conjugate(&u);
                }
                Some(Tok::Ident(_)) => {
                    let u = self.atom()?;
                    w = w.conjugate(&u);
                }
                _ => return Err(self.error("expected an integer or a conjugator after `^`")),
            }
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                let letter = if let Some(v) = self.vars.iter().position(|x| *x == name) {
                    Letter::Var(v, 1)
                } else if let Some(c) = self.coeffs.iter().position(|x| *x == name) {
                    Letter::Coeff(c, 1)
                } else {
                    return Err(Error::Undeclared(name));
                };
                self.pos += 1;
                Ok(Word(alloc::vec![letter]))
            }
            Some(Tok::Int(1)) => {
                self.pos += 1;
                Ok(Word::default())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(w)
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(Tok::Comma, "`,` inside a commutator")?;
                let b = self.word()?;
                self.expect(Tok::RBracket, "`]` closing a commutator")?;
                Ok(Word::commutator(&a, &b))
            }
            _ => Err(self.error("expected a symbol, `1`, `(` or `[`")),
        }
    }
}

/// Parses a word. Juxtaposition (or `*`) is the product, `^k` an integer
/// power, `^(u)` or `^a` conjugation `u⁻¹ · u`, `[u,v]` the commutator
/// `u⁻¹v⁻¹uv`, and `1` the empty word. `line` is used in error locations.
pub fn parse_word(text: &str, line: usize, vars: &[String], coeffs: &[String]) -> Result<Word> {
    let toks = tokenize(text, line)?;
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        end_col: text.chars().count() + 1,
        vars,
        coeffs,
    };
    let w = p.word()?;
    if p.pos != p.toks.len() {
        return Err(p.error("unexpected token"));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn names(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn flat_word() {
        let w = parse_word("x g1", 1, &names(&["x"]), &names(&["g1"])).unwrap();
        assert_eq!(w.0, vec![Letter::Var(0, 1), Letter::Coeff(0, 1)]);
    }

    #[test]
    fn commutator_and_powers() {
        let vars = names(&["x", "y"]);
        let w = parse_word("[x,y] x^2 g1 y^-3", 1, &vars, &names(&["g1"])).unwrap();
        assert_eq!(w.exponent_sum(0), 2);
        assert_eq!(w.exponent_sum(1), -3);
        assert_eq!(
            &w.0[..4],
            &[
                Letter::Var(0, -1),
                Letter::Var(1, -1),
                Letter::Var(0, 1),
                Letter::Var(1, 1)
            ]
        );
        assert_eq!(w.0.len(), 4 + 2 + 1 + 3);
    }

    #[test]
    fn conjugation() {
        let w = parse_word("x^(g1)", 1, &names(&["x"]), &names(&["g1"])).unwrap();
        assert_eq!(w.0, vec![Letter::Coeff(0, -1), Letter::Var(0, 1), Letter::Coeff(0, 1)]);
        assert_eq!(w.exponent_sum(0), 1);
        let w2 = parse_word("x^g1", 1, &names(&["x"]), &names(&["g1"])).unwrap();
        assert_eq!(w, w2);
    }

    #[test]
    fn errors_carry_locations() {
        let e = parse_word("x ^ ]", 3, &names(&["x"]), &[]).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 5, .. }), "{e:?}");
        assert_eq!(
            parse_word("x z", 1, &names(&["x"]), &[]).unwrap_err(),
            Error::Undeclared("z".into())
        );
        assert!(parse_word("[x, x", 1, &names(&["x"]), &[]).is_err());
    }

    #[test]
    fn render_round_trip() {
        let vars = names(&["x", "y"]);
        let coeffs = names(&["g"]);
        let w = parse_word("[x,y] x^2 g y^-3 (x g)^-2 1", 1, &vars, &coeffs).unwrap();
        let text = w.render(&vars, &coeffs);
        assert_eq!(parse_word(&text, 1, &vars, &coeffs).unwrap(), w);
        assert_eq!(Word::default().render(&vars, &coeffs), "1");
    }
}
