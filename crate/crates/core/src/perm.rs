//! Permutations of `{1..n}` written in cycle notation.
//!
//! Internally points are zero-based; cycle notation is one-based, as usual.
//! Products compose left to right: `(p * q)(i) = q(p(i))`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = alloc::vec![false; images.len()];
        for &i in &images {
            let i = i as usize;
            if i >= images.len() || seen[i] {
                return Err(Error::Invalid("image list is not a bijection".into()));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0.get(i).map_or(i, |&j| j as usize)
    }

    /// Extends the ground set with fixed points.
    pub fn extended(&self, degree: usize) -> Self {
        let mut v = self.0.clone();
        v.extend(self.0.len() as u32..degree.max(self.0.len()) as u32);
        Perm(v)
    }

    pub fn then(&self, other: &Perm) -> Perm {
        let n = self.degree().max(other.degree());
        Perm((0..n).map(|i| other.apply(self.apply(i)) as u32).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = alloc::vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j as usize] = i as u32;
        }
        Perm(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` or `(1,2,3)(4,5)`.
    /// The empty string and `()` denote the identity.
    pub fn parse_cycles(text: &str) -> Result<Self> {
        let err = |column: usize, message: &str| Error::Parse {
            line: 1,
            column,
            message: message.into(),
        };
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut number = String::new();
        let flush = |number: &mut String, current: &mut Option<Vec<usize>>, col| -> Result<()> {
            if number.is_empty() {
                return Ok(());
            }
            let v: usize = number.parse().map_err(|_| err(col, "bad point"))?;
            if v == 0 {
                return Err(err(col, "points are numbered from 1"));
            }
            match current {
                Some(c) => c.push(v - 1),
                None => return Err(err(col, "point outside a cycle")),
            }
            number.clear();
            Ok(())
        };
        for (col, ch) in text.char_indices() {
            match ch {
                '(' => {
                    if current.is_some() {
                        return Err(err(col + 1, "nested cycle"));
                    }
                    current = Some(Vec::new());
                }
                ')' => {
                    flush(&mut number, &mut current, col + 1)?;
                    match current.take() {
                        Some(c) => cycles.push(c),
                        None => return Err(err(col + 1, "unbalanced `)`")),
                    }
                }
                '0'..='9' => number.push(ch),
                ',' | ' ' | '\t' => flush(&mut number, &mut current, col + 1)?,
                _ => return Err(err(col + 1, "unexpected character in cycle notation")),
            }
        }
        if current.is_some() || !number.is_empty() {
            return Err(err(text.len(), "unterminated cycle"));
        }
        let degree = cycles.iter().flatten().map(|&p| p + 1).max().unwrap_or(0);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = alloc::vec![false; degree];
        for c in &cycles {
            for (k, &p) in c.iter().enumerate() {
                if touched[p] {
                    return Err(err(1, "cycles are not disjoint"));
                }
                touched[p] = true;
                images[p] = c[(k + 1) % c.len()] as u32;
            }
        }
        Ok(Perm(images))
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = alloc::vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut c = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                c.push(i);
                i = self.apply(i);
            }
            out.push(c);
        }
        out
    }
}

/// Compact cycle notation without spaces, e.g. `(1,2,3)(4,5)`; identity is `()`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parse_and_print() {
        let p = Perm::parse_cycles("(1 2 3)(4 5)").unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 4, 3]);
        assert_eq!(p.to_string(), "(1,2,3)(4,5)");
        assert_eq!(Perm::parse_cycles(&p.to_string()).unwrap(), p);
        assert!(Perm::parse_cycles("()").unwrap().is_identity());
        assert!(Perm::parse_cycles("(1 2)(2 3)").is_err());
        assert!(Perm::parse_cycles("(1 2").is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::parse_cycles("(1 2)").unwrap();
        let b = Perm::parse_cycles("(2 3)").unwrap();
        // 1 -> 2 -> 3
        assert_eq!(a.then(&b).apply(0), 2);
        assert!(a.then(&a.inverse()).is_identity());
    }
}
