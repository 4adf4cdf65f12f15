//! Dense matrices over the prime field `Z_p`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::is_prime;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

fn inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0
    let (mut acc, mut base, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    /// Reduces integer entries modulo `p`.
    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(p, rows.len(), cols)?;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Invalid("ragged matrix".into()));
            }
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v.rem_euclid(p as i64) as u64);
            }
        }
        Ok(m)
    }

    pub fn identity(p: u64, n: usize) -> Result<Self> {
        let mut m = Self::zeros(p, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Row echelon form in place; returns the pivot columns and the
    /// determinant factor accumulated by the row operations (sign and scaling).
    fn eliminate(&mut self) -> (Vec<usize>, u64) {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut det = 1u64;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
                det = (p - det) % p;
            }
            let pv = self.get(r, c);
            det = det * pv % p;
            let pinv = inv(pv, p);
            for j in c..self.cols {
                let v = self.get(r, j) * pinv % p;
                self.set(r, j, v);
            }
            for i in r + 1..self.rows {
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = (self.get(i, j) + p - f * self.get(r, j) % p) % p;
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, det)
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().0.len()
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<u64> {
        if self.rows != self.cols {
            return Err(Error::pre("determinant of a non-square matrix"));
        }
        let (pivots, det) = self.clone().eliminate();
        Ok(if pivots.len() == self.rows { det } else { 0 })
    }

    pub fn is_nonsingular(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// When the rows are independent, columns of a nonsingular maximal minor.
    pub fn independent_columns(&self) -> Option<Vec<usize>> {
        let (pivots, _) = self.clone().eliminate();
        (pivots.len() == self.rows).then_some(pivots)
    }

    pub fn select_columns(&self, cols: &[usize]) -> FpMatrix {
        let mut m = FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: cols.len(),
            data: vec![0; self.rows * cols.len()],
        };
        for i in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                m.set(i, k, self.get(i, c));
            }
        }
        m
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows || self.p != other.p {
            return Err(Error::pre("incompatible matrices"));
        }
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols)?;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_of_worked_matrix() {
        let rows = [vec![2, -3, 0], vec![0, 0, 1], vec![1, 1, 1]];
        assert_eq!(FpMatrix::from_rows(5, &rows).unwrap().rank(), 2);
        assert_eq!(FpMatrix::from_rows(2, &rows).unwrap().rank(), 3);
        // det = -5
        assert_eq!(FpMatrix::from_rows(7, &rows).unwrap().determinant().unwrap(), 2);
        assert_eq!(FpMatrix::from_rows(3, &rows).unwrap().determinant().unwrap(), 1);
    }

    #[test]
    fn identity_rank() {
        for p in [2, 3, 5, 7] {
            assert_eq!(FpMatrix::identity(p, 4).unwrap().rank(), 4);
        }
        assert!(FpMatrix::zeros(4, 1, 1).is_err());
    }

    #[test]
    fn minor_selection() {
        let m = FpMatrix::from_rows(2, &[vec![1, 1, 0], vec![1, 1, 1]]).unwrap();
        let cols = m.independent_columns().unwrap();
        assert!(m.select_columns(&cols).is_nonsingular());
        let dep = FpMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(dep.independent_columns().is_none());
    }
}
