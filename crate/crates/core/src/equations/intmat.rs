use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::fp::FpMatrix;
use crate::{Error, Result};

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows_with_cols(rows, rows.first().map_or(0, Vec::len))
    }

    pub fn from_rows_with_cols(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged integer matrix");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_i64()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::pre("incompatible matrix shapes"));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
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

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += k * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + k * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// `col[dst] += k * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + k * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    /// Fraction-free (Bareiss) elimination; returns the rank and, for a square
    /// full-rank matrix, the determinant.
    fn bareiss(&self) -> (usize, BigInt) {
        let mut a = self.clone();
        let mut prev = BigInt::one();
        let mut sign = 1i32;
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(pr) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                a.swap_rows(pr, r);
                sign = -sign;
            }
            for i in r + 1..a.rows {
                for j in c + 1..a.cols {
                    let v = (a.get(r, c) * a.get(i, j) - a.get(i, c) * a.get(r, j)) / &prev;
                    a.set(i, j, v);
                }
                a.set(i, c, BigInt::zero());
            }
            prev = a.get(r, c).clone();
            r += 1;
        }
        let det = if r == a.rows && a.rows == a.cols {
            if a.rows == 0 {
                BigInt::one()
            } else {
                prev * sign
            }
        } else {
            BigInt::zero()
        };
        (r, det)
    }

    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::pre("determinant of a non-square matrix"));
        }
        Ok(self.bareiss().1)
    }

    /// Rank over the rationals.
    pub fn rank_rational(&self) -> usize {
        self.bareiss().0
    }

    pub fn to_fp(&self, p: u64) -> Result<FpMatrix> {
        let mut m = FpMatrix::zeros(p, self.rows, self.cols)?;
        let bp = BigInt::from(p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j).mod_floor(&bp);
                m.set(i, j, v.to_u64().expect("residue fits in u64"));
            }
        }
        Ok(m)
    }

    /// Rank over `Z_p`.
    pub fn rank_mod_p(&self, p: u64) -> Result<usize> {
        Ok(self.to_fp(p)?.rank())
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for IntMatrix {
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
    fn worked_example() {
        let m = IntMatrix::from_rows(&[vec![2, -3, 0], vec![0, 0, 1], vec![1, 1, 1]]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(-5));
        assert_eq!(m.rank_rational(), 3);
        assert_eq!(m.rank_mod_p(5).unwrap(), 2);
        assert_eq!(m.rank_mod_p(2).unwrap(), 3);
        assert_eq!(alloc::format!("{m}"), "[[2,-3,0],[0,0,1],[1,1,1]]");
    }

    #[test]
    fn degenerate_shapes() {
        let empty = IntMatrix::zeros(0, 3);
        assert_eq!(empty.rank_rational(), 0);
        assert_eq!(IntMatrix::zeros(0, 0).determinant().unwrap(), BigInt::one());
        let z = IntMatrix::zeros(2, 2);
        assert_eq!(z.determinant().unwrap(), BigInt::zero());
        assert!(IntMatrix::zeros(2, 3).determinant().is_err());
        assert!(z.rank_mod_p(4).is_err());
    }
}
