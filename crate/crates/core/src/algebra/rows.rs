use alloc::sync::Arc;
use alloc::vec::Vec;

use super::element::{AbelianGroupSpec, AlgebraElement};
use crate::fp::FpMatrix;
use crate::{Error, Result};

/// Rows of equal length over `Z_p D`, i.e. elements of a free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowFamily {
    spec: Arc<AbelianGroupSpec>,
    width: usize,
    rows: Vec<Vec<AlgebraElement>>,
}

impl RowFamily {
    pub fn new(spec: &Arc<AbelianGroupSpec>, width: usize, rows: Vec<Vec<AlgebraElement>>) -> Result<Self> {
        for r in &rows {
            if r.len() != width {
                return Err(Error::Invalid("rows of different lengths".into()));
            }
            if r.iter().any(|e| e.spec() != spec) {
                return Err(Error::SpecMismatch);
            }
        }
        Ok(RowFamily {
            spec: spec.clone(),
            width,
            rows,
        })
    }

    pub fn spec(&self) -> &Arc<AbelianGroupSpec> {
        &self.spec
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[Vec<AlgebraElement>] {
        &self.rows
    }

    pub fn augmentation(&self) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.spec.p, self.rows.len(), self.width).expect("spec prime is checked");
        for (i, r) in self.rows.iter().enumerate() {
            for (j, e) in r.iter().enumerate() {
                m.set(i, j, e.augmentation());
            }
        }
        m
    }

    /// `Σ c_i · row_i`.
    pub fn combine(&self, coeffs: &[AlgebraElement]) -> Result<Vec<AlgebraElement>> {
        let mut acc = alloc::vec![AlgebraElement::zero(&self.spec); self.width];
        for (c, r) in coeffs.iter().zip(&self.rows) {
            for (a, e) in acc.iter_mut().zip(r) {
                *a = a.add(&c.mul(e)?)?;
            }
        }
        Ok(acc)
    }
}

/// A nonsingular maximal minor of the augmented rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowCertificate {
    pub columns: Vec<usize>,
    pub minor: FpMatrix,
    pub determinant: u64,
}

/// Certifies independence over `Z_p D` by independence of the augmented
/// rows over `Z_p`. `None` means "not certified".
pub fn certify_row_independence(rows: &RowFamily) -> Result<Option<RowCertificate>> {
    let aug = rows.augmentation();
    let Some(columns) = aug.independent_columns() else {
        return Ok(None);
    };
    let minor = aug.select_columns(&columns);
    let determinant = minor.determinant()?;
    debug_assert_ne!(determinant, 0);
    Ok(Some(RowCertificate {
        columns,
        minor,
        determinant,
    }))
}

/// Exhaustive search for a nonzero coefficient tuple annihilating the rows,
/// over a finite algebra. Tries at most `work` tuples.
pub fn find_annihilator(rows: &RowFamily, work: u128) -> Result<Option<Vec<AlgebraElement>>> {
    let spec = &rows.spec;
    let d = spec
        .group_order()
        .ok_or_else(|| Error::pre("the group has a free part"))? as u32;
    let r = rows.rows.len() as u32;
    let total = (spec.p as u128).checked_pow(d * r).unwrap_or(u128::MAX);
    if total > work {
        return Err(Error::cap("annihilator search", total, work));
    }
    let p = spec.p as u128;
    for code in 1..total {
        let mut c = code;
        let mut coeffs = Vec::with_capacity(r as usize);
        for _ in 0..r {
            let mut digits = Vec::with_capacity(d as usize);
            for _ in 0..d {
                digits.push((c % p) as u64);
                c /= p;
            }
            coeffs.push(AlgebraElement::from_coefficients(spec, &digits)?);
        }
        if rows.combine(&coeffs)?.iter().all(AlgebraElement::is_zero) {
            return Ok(Some(coeffs));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn family(rows: &[&[&str]]) -> RowFamily {
        let s = Arc::new(AbelianGroupSpec::new(2, vec![1], 0).unwrap());
        let width = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|t| AlgebraElement::parse(&s, t).unwrap()).collect())
            .collect();
        RowFamily::new(&s, width, rows).unwrap()
    }

    #[test]
    fn independent_rows() {
        let f = family(&[&["1", "0"], &["x1", "1"]]);
        let cert = certify_row_independence(&f).unwrap().unwrap();
        assert_eq!(cert.columns, [0, 1]);
        assert_eq!(find_annihilator(&f, 1 << 20).unwrap(), None);
    }

    #[test]
    fn dependent_rows() {
        let f = family(&[&["1", "1"], &["x1", "x1"]]);
        assert!(certify_row_independence(&f).unwrap().is_none());
        let ann = find_annihilator(&f, 1 << 20).unwrap().unwrap();
        assert!(f.combine(&ann).unwrap().iter().all(AlgebraElement::is_zero));
    }

    #[test]
    fn empty_family() {
        let f = family(&[]);
        assert!(certify_row_independence(&f).unwrap().is_some());
    }

    #[test]
    fn ragged_rows_rejected() {
        let s = Arc::new(AbelianGroupSpec::new(2, vec![1], 0).unwrap());
        let one = AlgebraElement::one(&s);
        assert!(RowFamily::new(&s, 2, vec![vec![one]]).is_err());
    }
}
