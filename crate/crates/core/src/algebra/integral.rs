use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::element::Monomial;
use super::parse::{parse_terms, render_monomial};
use crate::equations::IntMatrix;
use crate::{Error, Result};

/// `D = C_{n_1} × … × C_{n_l} × Z^r` for the integral group ring `Z D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegralSpec {
    pub torsion_orders: Vec<u64>,
    pub free_rank: usize,
}

impl IntegralSpec {
    pub fn new(torsion_orders: Vec<u64>, free_rank: usize) -> Result<Self> {
        if torsion_orders.contains(&0) {
            return Err(Error::pre("torsion orders must be positive"));
        }
        Ok(IntegralSpec {
            torsion_orders,
            free_rank,
        })
    }

    fn identity(&self) -> Monomial {
        Monomial {
            torsion: vec![0; self.torsion_orders.len()],
            free: vec![0; self.free_rank],
        }
    }
}

/// An element of `Z D` with exact integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegralElement {
    spec: Arc<IntegralSpec>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntegralElement {
    pub fn zero(spec: &Arc<IntegralSpec>) -> Self {
        IntegralElement {
            spec: spec.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(spec: &Arc<IntegralSpec>) -> Self {
        Self::monomial(spec, spec.identity(), BigInt::one())
    }

    pub fn constant(spec: &Arc<IntegralSpec>, c: i64) -> Self {
        Self::monomial(spec, spec.identity(), BigInt::from(c))
    }

    pub fn monomial(spec: &Arc<IntegralSpec>, m: Monomial, c: BigInt) -> Self {
        let mut e = Self::zero(spec);
        e.add_term(m, c);
        e
    }

    /// The group element with torsion exponents `torsion` (reduced) and
    /// free exponents `free`.
    pub fn group_element(spec: &Arc<IntegralSpec>, torsion: &[u64], free: &[i64]) -> Self {
        let torsion = torsion.iter().zip(&spec.torsion_orders).map(|(e, n)| e % n).collect();
        Self::monomial(
            spec,
            Monomial {
                torsion,
                free: free.to_vec(),
            },
            BigInt::one(),
        )
    }

    pub fn spec(&self) -> &Arc<IntegralSpec> {
        &self.spec
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        IntegralElement {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(&self.spec);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.spec);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b, &self.spec.torsion_orders), ca * cb);
            }
        }
        Ok(out)
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn parse(spec: &Arc<IntegralSpec>, text: &str) -> Result<Self> {
        let mut e = Self::zero(spec);
        for (c, tor, free) in parse_terms(text, spec.torsion_orders.len(), spec.free_rank)? {
            let torsion = tor
                .iter()
                .zip(&spec.torsion_orders)
                .map(|(&t, &n)| t.rem_euclid(n as i64) as u64)
                .collect();
            e.add_term(Monomial { torsion, free }, c);
        }
        Ok(e)
    }
}

impl fmt::Display for IntegralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = render_monomial(&m.torsion, &m.free);
            match (mag.is_one(), mono == "1") {
                (true, _) => f.write_str(&mono)?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// A nonsingular maximal minor of the augmented rows over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCertificate {
    pub columns: Vec<usize>,
    pub determinant: BigInt,
}

/// Certifies independence of rows over `Z[Z^r]` (and hence over `Q[Z^r]`)
/// by full rational rank of the augmented rows.
pub fn certify_row_independence_rational(rows: &[Vec<IntegralElement>]) -> Result<Option<RationalCertificate>> {
    let width = rows.first().map_or(0, Vec::len);
    for r in rows {
        if r.len() != width {
            return Err(Error::Invalid("rows of different lengths".into()));
        }
        if r.iter().any(|e| !e.spec.torsion_orders.is_empty()) {
            return Err(Error::pre("the group has torsion"));
        }
        if r.iter().any(|e| e.spec != rows[0][0].spec) {
            return Err(Error::SpecMismatch);
        }
    }
    let mut aug = IntMatrix::zeros(rows.len(), width);
    for (i, r) in rows.iter().enumerate() {
        for (j, e) in r.iter().enumerate() {
            aug.set(i, j, e.augmentation());
        }
    }
    // greedy column choice keeps the rank growing
    let mut columns: Vec<usize> = Vec::new();
    for j in 0..width {
        if columns.len() == rows.len() {
            break;
        }
        let mut trial = columns.clone();
        trial.push(j);
        if select(&aug, &trial).rank_rational() == trial.len() {
            columns = trial;
        }
    }
    if columns.len() < rows.len() {
        return Ok(None);
    }
    let determinant = select(&aug, &columns).determinant()?;
    Ok(Some(RationalCertificate { columns, determinant }))
}

fn select(m: &IntMatrix, cols: &[usize]) -> IntMatrix {
    let mut out = IntMatrix::zeros(m.rows(), cols.len());
    for i in 0..m.rows() {
        for (k, &c) in cols.iter().enumerate() {
            out.set(i, k, m.get(i, c).clone());
        }
    }
    out
}
