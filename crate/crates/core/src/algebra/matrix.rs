use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::element::{AbelianGroupSpec, AlgebraElement};
use crate::fp::FpMatrix;
use crate::{Error, Result};

/// Largest operator dimension [`AlgebraMatrix::regular_representation`] builds.
const MAX_OPERATOR_DIM: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A matrix over `Z_p D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMatrix {
    spec: Arc<AbelianGroupSpec>,
    rows: usize,
    cols: usize,
    entries: Vec<AlgebraElement>,
}

impl AlgebraMatrix {
    pub fn from_rows(spec: &Arc<AbelianGroupSpec>, rows: Vec<Vec<AlgebraElement>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Invalid("ragged matrix".into()));
            }
            for e in r {
                if e.spec() != spec {
                    return Err(Error::SpecMismatch);
                }
                entries.push(e);
            }
        }
        Ok(AlgebraMatrix {
            spec: spec.clone(),
            rows: n,
            cols,
            entries,
        })
    }

    pub fn parse(spec: &Arc<AbelianGroupSpec>, rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|t| AlgebraElement::parse(spec, t)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Self::from_rows(spec, rows)
    }

    pub fn spec(&self) -> &Arc<AbelianGroupSpec> {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.entries[i * self.cols + j]
    }

    pub fn mul(&self, other: &AlgebraMatrix) -> Result<AlgebraMatrix> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::pre("incompatible matrix shapes"));
        }
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(other.cols);
            for j in 0..other.cols {
                let mut acc = AlgebraElement::zero(&self.spec);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j))?)?;
                }
                row.push(acc);
            }
            rows.push(row);
        }
        Self::from_rows(&self.spec, rows)
    }

    /// Entrywise augmentation, a matrix over `Z_p`.
    pub fn augmentation_matrix(&self) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.spec.p, self.rows, self.cols).expect("spec prime is checked");
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).augmentation());
            }
        }
        m
    }

    /// The `Z_p`-linear operator `v ↦ M v` (left) or `v ↦ v M` (right) on
    /// `(Z_p D)^n`, in the basis (coordinate, group element).
    ///
    /// `M` is a left (right) zero divisor exactly when the left (right)
    /// operator is singular.
    pub fn regular_representation(&self, side: Side) -> Result<FpMatrix> {
        let mons = self.spec.monomials()?;
        let d = mons.len();
        let (out_dim, in_dim) = match side {
            Side::Left => (self.rows * d, self.cols * d),
            Side::Right => (self.cols * d, self.rows * d),
        };
        if out_dim.max(in_dim) > MAX_OPERATOR_DIM {
            return Err(Error::cap(
                "regular representation dimension",
                out_dim.max(in_dim) as u128,
                MAX_OPERATOR_DIM as u128,
            ));
        }
        let mut op = FpMatrix::zeros(self.spec.p, out_dim, in_dim)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let entry = self.get(i, j);
                // entry·h has coefficient of g·h⁻¹ at g
                for (hi, h) in mons.iter().enumerate() {
                    for (m, c) in entry.shift(h).terms() {
                        let g = self.spec.monomial_index(m);
                        match side {
                            Side::Left => op.set(i * d + g, j * d + hi, c),
                            Side::Right => op.set(j * d + g, i * d + hi, c),
                        }
                    }
                }
            }
        }
        Ok(op)
    }
}

impl fmt::Display for AlgebraMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// A nonsingular augmentation matrix; by the augmentation argument `M` is
/// then not a zero divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonZeroDivisorCertificate {
    pub augmentation: FpMatrix,
    pub determinant: u64,
}

/// Certifies a square matrix over `Z_p D` as a non-zero-divisor. `None`
/// means "not certified", not "zero divisor".
pub fn certify_non_zero_divisor(m: &AlgebraMatrix) -> Result<Option<NonZeroDivisorCertificate>> {
    if m.rows != m.cols {
        return Err(Error::pre("matrix is not square"));
    }
    let augmentation = m.augmentation_matrix();
    let determinant = augmentation.determinant()?;
    Ok((determinant != 0).then_some(NonZeroDivisorCertificate {
        augmentation,
        determinant,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    /// Not certified, and the finite oracle exhibits a zero divisor.
    RefutedByOracle,
    /// Not certified, and no oracle decision (infinite algebra, or the oracle
    /// found no zero divisor).
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Certified => "certified",
            Verdict::RefutedByOracle => "refuted-by-oracle",
            Verdict::Unknown => "unknown",
        })
    }
}

pub fn decide_non_zero_divisor(m: &AlgebraMatrix) -> Result<Verdict> {
    if certify_non_zero_divisor(m)?.is_some() {
        return Ok(Verdict::Certified);
    }
    if !m.spec.is_finite() {
        return Ok(Verdict::Unknown);
    }
    let left = m.regular_representation(Side::Left)?.is_nonsingular();
    let right = m.regular_representation(Side::Right)?.is_nonsingular();
    Ok(if left && right {
        Verdict::Unknown
    } else {
        Verdict::RefutedByOracle
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn c2() -> Arc<AbelianGroupSpec> {
        Arc::new(AbelianGroupSpec::new(2, alloc::vec![1], 0).unwrap())
    }

    #[test]
    fn certificates() {
        let s = c2();
        let x = AlgebraMatrix::parse(&s, &[&["x1"]]).unwrap();
        assert!(certify_non_zero_divisor(&x).unwrap().is_some());
        assert!(x.regular_representation(Side::Left).unwrap().is_nonsingular());
        let y = AlgebraMatrix::parse(&s, &[&["1 + x1"]]).unwrap();
        assert!(certify_non_zero_divisor(&y).unwrap().is_none());
        assert_eq!(decide_non_zero_divisor(&y).unwrap(), Verdict::RefutedByOracle);
        assert_eq!(
            y.regular_representation(Side::Left).unwrap(),
            FpMatrix::from_rows(2, &[alloc::vec![1, 1], alloc::vec![1, 1]]).unwrap()
        );
        let t = AlgebraMatrix::parse(&s, &[&["1", "1 + x1"], &["0", "1"]]).unwrap();
        let cert = certify_non_zero_divisor(&t).unwrap().unwrap();
        assert_eq!(cert.augmentation, FpMatrix::identity(2, 2).unwrap());
        assert_eq!(cert.determinant, 1);
    }

    #[test]
    fn operators() {
        let s = c2();
        let one = AlgebraMatrix::parse(&s, &[&["1"]]).unwrap();
        assert_eq!(
            one.regular_representation(Side::Right).unwrap(),
            FpMatrix::identity(2, 2).unwrap()
        );
        let s3 = Arc::new(AbelianGroupSpec::new(3, alloc::vec![1], 0).unwrap());
        let x = AlgebraMatrix::parse(&s3, &[&["x1"]]).unwrap();
        let op = x.regular_representation(Side::Left).unwrap();
        assert!(op.is_nonsingular());
        assert_eq!(op.rank(), 3);
        let free = Arc::new(AbelianGroupSpec::new(2, alloc::vec![], 1).unwrap());
        let t = AlgebraMatrix::parse(&free, &[&["t1"]]).unwrap();
        assert!(t.regular_representation(Side::Left).is_err());
        // rectangular operators on both sides
        let r = AlgebraMatrix::parse(&s, &[&["1", "x1"]]).unwrap();
        let l = r.regular_representation(Side::Left).unwrap();
        assert_eq!((l.rows(), l.cols()), (2, 4));
        let rr = r.regular_representation(Side::Right).unwrap();
        assert_eq!((rr.rows(), rr.cols()), (4, 2));
    }

    #[test]
    fn matrix_product() {
        let s = c2();
        let a = AlgebraMatrix::parse(&s, &[&["1", "x1"], &["0", "1"]]).unwrap();
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.to_string(), "[[1, 0], [0, 1]]");
    }
}
