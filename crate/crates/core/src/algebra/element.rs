use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::parse::{parse_terms, render_monomial};
use crate::arith::is_prime;
use crate::{Error, Result};

/// `D = C_{p^{k_1}} × … × C_{p^{k_l}} × Z^r`, with coefficients in `Z_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupSpec {
    pub p: u64,
    pub torsion_exponents: Vec<u32>,
    pub free_rank: usize,
}

impl AbelianGroupSpec {
    pub fn new(p: u64, torsion_exponents: Vec<u32>, free_rank: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if torsion_exponents.contains(&0) {
            return Err(Error::pre("torsion exponents must be at least 1"));
        }
        if torsion_exponents.iter().any(|&k| p.checked_pow(k).is_none()) {
            return Err(Error::pre("torsion factor too large"));
        }
        Ok(AbelianGroupSpec {
            p,
            torsion_exponents,
            free_rank,
        })
    }

    pub fn torsion_moduli(&self) -> Vec<u64> {
        self.torsion_exponents.iter().map(|&k| self.p.pow(k)).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// `|D|` for a finite spec.
    pub fn group_order(&self) -> Option<u128> {
        self.is_finite()
            .then(|| self.torsion_moduli().iter().map(|&m| m as u128).product())
    }

    /// All group elements of a finite spec, in canonical order.
    pub fn monomials(&self) -> Result<Vec<Monomial>> {
        let n = self
            .group_order()
            .ok_or_else(|| Error::pre("the group has a free part"))?;
        let moduli = self.torsion_moduli();
        Ok((0..n as usize)
            .map(|mut idx| {
                let mut t = vec![0; moduli.len()];
                for (l, &m) in moduli.iter().enumerate().rev() {
                    t[l] = (idx % m as usize) as u64;
                    idx /= m as usize;
                }
                Monomial {
                    torsion: t,
                    free: Vec::new(),
                }
            })
            .collect())
    }

    /// Position of a monomial in [`Self::monomials`].
    pub fn monomial_index(&self, m: &Monomial) -> usize {
        self.torsion_moduli()
            .iter()
            .zip(&m.torsion)
            .fold(0, |acc, (&md, &e)| acc * md as usize + e as usize)
    }
}

impl fmt::Display for AbelianGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.torsion_exponents.iter().map(|k| format!("{k}")).collect();
        write!(f, "p={} torsion={} free={}", self.p, t.join(","), self.free_rank)
    }
}

/// A group element of `D`: reduced torsion exponents and free exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub torsion: Vec<u64>,
    pub free: Vec<i64>,
}

impl Monomial {
    pub fn identity(spec: &AbelianGroupSpec) -> Self {
        Monomial {
            torsion: vec![0; spec.torsion_exponents.len()],
            free: vec![0; spec.free_rank],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.torsion.iter().all(|&e| e == 0) && self.free.iter().all(|&e| e == 0)
    }

    pub(crate) fn mul(&self, other: &Monomial, moduli: &[u64]) -> Monomial {
        Monomial {
            torsion: self
                .torsion
                .iter()
                .zip(&other.torsion)
                .zip(moduli)
                .map(|((a, b), m)| (a + b) % m)
                .collect(),
            free: self.free.iter().zip(&other.free).map(|(a, b)| a + b).collect(),
        }
    }

    pub(crate) fn inverse(&self, moduli: &[u64]) -> Monomial {
        Monomial {
            torsion: self.torsion.iter().zip(moduli).map(|(&a, &m)| (m - a) % m).collect(),
            free: self.free.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_monomial(&self.torsion, &self.free))
    }
}

/// An element of `Z_p D`. Terms are kept in canonical order with nonzero
/// coefficients in `1..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    spec: Arc<AbelianGroupSpec>,
    terms: BTreeMap<Monomial, u64>,
}

impl AlgebraElement {
    pub fn zero(spec: &Arc<AbelianGroupSpec>) -> Self {
        AlgebraElement {
            spec: spec.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(spec: &Arc<AbelianGroupSpec>) -> Self {
        Self::monomial(spec, Monomial::identity(spec), 1)
    }

    pub fn constant(spec: &Arc<AbelianGroupSpec>, c: i64) -> Self {
        Self::monomial(spec, Monomial::identity(spec), c.rem_euclid(spec.p as i64) as u64)
    }

    pub fn monomial(spec: &Arc<AbelianGroupSpec>, m: Monomial, c: u64) -> Self {
        let mut e = Self::zero(spec);
        e.add_term(m, c);
        e
    }

    /// The torsion generator `x_{i+1}`.
    pub fn torsion_generator(spec: &Arc<AbelianGroupSpec>, i: usize) -> Self {
        let mut m = Monomial::identity(spec);
        m.torsion[i] = 1 % spec.torsion_moduli()[i];
        Self::monomial(spec, m, 1)
    }

    /// The free generator `t_{i+1}`.
    pub fn free_generator(spec: &Arc<AbelianGroupSpec>, i: usize) -> Self {
        let mut m = Monomial::identity(spec);
        m.free[i] = 1;
        Self::monomial(spec, m, 1)
    }

    /// Builds an element from coefficients indexed like [`AbelianGroupSpec::monomials`].
    pub fn from_coefficients(spec: &Arc<AbelianGroupSpec>, coeffs: &[u64]) -> Result<Self> {
        let mons = spec.monomials()?;
        if mons.len() != coeffs.len() {
            return Err(Error::pre("wrong number of coefficients"));
        }
        let mut e = Self::zero(spec);
        for (m, &c) in mons.into_iter().zip(coeffs) {
            e.add_term(m, c);
        }
        Ok(e)
    }

    /// Dense coefficient vector of an element of a finite algebra.
    pub fn coefficients(&self) -> Result<Vec<u64>> {
        let n = self
            .spec
            .group_order()
            .ok_or_else(|| Error::pre("the group has a free part"))? as usize;
        let mut v = vec![0; n];
        for (m, &c) in &self.terms {
            v[self.spec.monomial_index(m)] = c;
        }
        Ok(v)
    }

    pub fn spec(&self) -> &Arc<AbelianGroupSpec> {
        &self.spec
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: u64) {
        let p = self.spec.p;
        let c = c % p;
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = (*o.get() + c) % p;
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
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
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let p = self.spec.p;
        AlgebraElement {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), p - c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: u64) -> Self {
        let mut out = Self::zero(&self.spec);
        for (m, &c) in &self.terms {
            out.add_term(m.clone(), c * (k % self.spec.p));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let moduli = self.spec.torsion_moduli();
        let p = self.spec.p;
        let mut out = Self::zero(&self.spec);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                out.add_term(a.mul(b, &moduli), ca * cb % p);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::one(&self.spec);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same spec");
            }
            base = base.mul(&base).expect("same spec");
            k >>= 1;
        }
        acc
    }

    /// Multiplication by a group element.
    pub fn shift(&self, g: &Monomial) -> Self {
        let moduli = self.spec.torsion_moduli();
        AlgebraElement {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(m, &c)| (m.mul(g, &moduli), c)).collect(),
        }
    }

    /// The involution `g ↦ g^{-1}` extended linearly.
    pub fn conjugate(&self) -> Self {
        let moduli = self.spec.torsion_moduli();
        AlgebraElement {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(m, &c)| (m.inverse(&moduli), c)).collect(),
        }
    }

    /// Sum of coefficients in `Z_p`.
    pub fn augmentation(&self) -> u64 {
        self.terms.values().fold(0, |a, &c| (a + c) % self.spec.p)
    }

    /// Sends the torsion generator `x_{var+1}` to 1, leaving the other
    /// generators alone.
    pub fn partial_augmentation(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.spec);
        for (m, &c) in &self.terms {
            let mut m = m.clone();
            m.torsion[var] = 0;
            out.add_term(m, c);
        }
        out
    }

    /// Writes `self = Σ_t M_t (x−1)^t`, `x` the torsion generator `var`,
    /// with every `M_t` free of `x`. There are `p^k` coefficients.
    pub fn nilpotent_basis_expansion(&self, var: usize) -> Result<Vec<AlgebraElement>> {
        let moduli = self.spec.torsion_moduli();
        let n = *moduli
            .get(var)
            .ok_or_else(|| Error::pre(format!("no torsion generator x{}", var + 1)))?;
        let p = self.spec.p;
        let mut parts = vec![Self::zero(&self.spec); n as usize];
        // x^e = Σ_t C(e,t) (x−1)^t
        for (m, &c) in &self.terms {
            let e = m.torsion[var];
            let mut rest = m.clone();
            rest.torsion[var] = 0;
            for (t, part) in parts.iter_mut().enumerate().take(e as usize + 1) {
                let b = binomial_mod_p(e, t as u64, p);
                part.add_term(rest.clone(), b * c % p);
            }
        }
        Ok(parts)
    }

    /// Inverse of [`Self::nilpotent_basis_expansion`].
    pub fn reassemble(parts: &[AlgebraElement], var: usize) -> Result<AlgebraElement> {
        let spec = parts.first().ok_or_else(|| Error::pre("no coefficients"))?.spec.clone();
        let x = Self::torsion_generator(&spec, var);
        let step = x.sub(&Self::one(&spec))?;
        let mut power = Self::one(&spec);
        let mut acc = Self::zero(&spec);
        for part in parts {
            acc = acc.add(&part.mul(&power)?)?;
            power = power.mul(&step)?;
        }
        Ok(acc)
    }

    pub fn parse(spec: &Arc<AbelianGroupSpec>, text: &str) -> Result<Self> {
        let moduli = spec.torsion_moduli();
        let p = BigInt::from(spec.p);
        let mut e = Self::zero(spec);
        for (c, tor, free) in parse_terms(text, moduli.len(), spec.free_rank)? {
            let torsion = tor
                .iter()
                .zip(&moduli)
                .map(|(&t, &m)| t.rem_euclid(m as i64) as u64)
                .collect();
            let c = c.mod_floor(&p).to_u64().expect("reduced mod p");
            e.add_term(Monomial { torsion, free }, c);
        }
        Ok(e)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (c, m.is_identity()) {
                (1, _) => write!(f, "{m}")?,
                (_, true) => write!(f, "{c}")?,
                _ => write!(f, "{c}*{m}")?,
            }
        }
        Ok(())
    }
}

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binomial_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        // small binomial C(a, b) with a < p
        let mut c = 1u128;
        for i in 0..b {
            c = c * (a - i) as u128 / (i + 1) as u128;
        }
        acc = acc * (c % p as u128) as u64 % p;
        n /= p;
        k /= p;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn spec(p: u64, t: &[u32], r: usize) -> Arc<AbelianGroupSpec> {
        Arc::new(AbelianGroupSpec::new(p, t.to_vec(), r).unwrap())
    }

    #[test]
    fn ring_examples() {
        let s = spec(2, &[1], 0);
        let x = AlgebraElement::torsion_generator(&s, 0);
        let e = AlgebraElement::one(&s);
        assert_eq!(e.mul(&x).unwrap(), x);
        let y = e.add(&x).unwrap();
        assert!(y.mul(&y).unwrap().is_zero());
        let s3 = spec(3, &[1], 0);
        let x = AlgebraElement::torsion_generator(&s3, 0);
        let d = x.sub(&AlgebraElement::one(&s3)).unwrap();
        assert!(d.pow(3).is_zero());
        assert!(!d.pow(2).is_zero());
    }

    #[test]
    fn nilpotency_identities() {
        for (p, k) in [(2u64, 1u32), (2, 2), (3, 1), (5, 1)] {
            let s = spec(p, &[k], 0);
            let x = AlgebraElement::torsion_generator(&s, 0);
            let d = x.sub(&AlgebraElement::one(&s)).unwrap();
            assert!(d.pow(p.pow(k)).is_zero(), "({p},{k})");
            assert!(!d.pow(p.pow(k) - 1).is_zero(), "({p},{k})");
        }
    }

    #[test]
    fn augmentation_examples() {
        let s = spec(3, &[1], 0);
        assert_eq!(AlgebraElement::parse(&s, "1 + x1 + x1^2").unwrap().augmentation(), 0);
        assert_eq!(AlgebraElement::parse(&s, "x1").unwrap().augmentation(), 1);
    }

    #[test]
    fn expansion_examples() {
        let s = spec(2, &[1], 0);
        let m = AlgebraElement::parse(&s, "x1").unwrap();
        let parts = m.nilpotent_basis_expansion(0).unwrap();
        // a0 + a1 x = (a0 + a1) + a1 (x - 1)
        assert_eq!(parts[0], AlgebraElement::one(&s));
        assert_eq!(parts[1], AlgebraElement::one(&s));
        let s4 = spec(2, &[2], 0);
        let m = AlgebraElement::parse(&s4, "x1^2").unwrap();
        let parts = m.nilpotent_basis_expansion(0).unwrap();
        assert_eq!(parts.len(), 4);
        assert_eq!(parts[0], AlgebraElement::one(&s4));
        assert_eq!(parts[0], m.partial_augmentation(0));
        assert!(parts[1].is_zero());
        assert_eq!(parts[2], AlgebraElement::one(&s4));
        assert_eq!(AlgebraElement::reassemble(&parts, 0).unwrap(), m);
        let z = AlgebraElement::zero(&s4);
        assert!(z
            .nilpotent_basis_expansion(0)
            .unwrap()
            .iter()
            .all(AlgebraElement::is_zero));
    }

    #[test]
    fn parse_and_print() {
        let s = spec(5, &[1, 1], 1);
        let e = AlgebraElement::parse(&s, "1 + x1^2*t1^-1 - 2*x2 + x1^7").unwrap();
        assert_eq!(e.to_string(), "1 + 3*x2 + x1^2*t1^-1 + x1^2");
        assert_eq!(AlgebraElement::parse(&s, &e.to_string()).unwrap(), e);
        assert_eq!(AlgebraElement::parse(&s, "x1 - x1").unwrap().to_string(), "0");
        assert!(AlgebraElement::parse(&s, "x3").is_err());
        assert!(AlgebraElement::parse(&s, "1 +").is_err());
    }

    #[test]
    fn spec_mismatch() {
        let a = AlgebraElement::one(&spec(2, &[1], 0));
        let b = AlgebraElement::one(&spec(3, &[1], 0));
        assert_eq!(a.add(&b), Err(Error::SpecMismatch));
    }

    #[test]
    fn lucas() {
        assert_eq!(binomial_mod_p(4, 2, 2), 0);
        assert_eq!(binomial_mod_p(4, 2, 5), 1);
        assert_eq!(binomial_mod_p(3, 1, 2), 1);
        assert_eq!(binomial_mod_p(2, 3, 7), 0);
    }
}
