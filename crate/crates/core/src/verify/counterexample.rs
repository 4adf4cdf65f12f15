use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::algebra::{IntegralElement, IntegralSpec};
use crate::arith::{inv_mod, is_prime};
use crate::equations::{EquationSystem, Letter, Word};
use crate::group::{cyclic, direct_product, Elem, FiniteGroup};
use crate::wreath::{wreath_product, WreathGroup};
use crate::{Caps, Error, Result};

/// The equation
/// `x^n (x^n)^a … (x^n)^{a^{p-1}} x^m (x^m)^b … (x^m)^{b^{q-1}} = c c^{ab}`
/// over `G = C_2 ≀ (C_p × C_q)`, with `np + mq = 1`.
#[derive(Clone, Debug)]
pub struct CounterexampleInstance {
    pub p: u64,
    pub q: u64,
    pub n: i64,
    pub m: i64,
    /// `C_p × C_q`; `(i, j)` has index `i·q + j`.
    pub top: FiniteGroup,
    /// `None` in symbolic mode.
    pub wreath: Option<WreathGroup>,
    /// Variable `x`, coefficients `a, b, c`; bound when the group is realized.
    pub equation: EquationSystem,
}

impl CounterexampleInstance {
    pub fn order(&self) -> u128 {
        (1u128 << (self.p * self.q)) * (self.p * self.q) as u128
    }

    /// Readable form, in the word syntax.
    pub fn display(&self) -> String {
        let mut parts = Vec::new();
        for (k, e, g) in [(self.p, self.n, "a"), (self.q, self.m, "b")] {
            let x = if e == 1 { String::from("x") } else { format!("x^{e}") };
            for i in 0..k {
                let conj = match i {
                    0 => None,
                    1 => Some(String::from(g)),
                    _ => Some(format!("({g}^{i})")),
                };
                parts.push(match (conj, e == 1) {
                    (None, _) => x.clone(),
                    (Some(c), true) => format!("x^{c}"),
                    (Some(c), false) => format!("({x})^{c}"),
                });
            }
        }
        format!("{} = c c^(a b)", parts.join(" "))
    }
}

/// Elements `a`, `b`, `c` of the realized wreath product.
pub fn counterexample_coefficients(w: &WreathGroup, q: u64) -> [Elem; 3] {
    let a = w.top_element(q as usize);
    let b = w.top_element(1);
    let c = w.delta(0, 1);
    [a, b, c]
}

pub fn counterexample_build(p: u64, q: u64, symbolic: bool, caps: &Caps) -> Result<CounterexampleInstance> {
    for r in [p, q] {
        if !is_prime(r) {
            return Err(Error::NotPrime(r));
        }
    }
    if p == q {
        return Err(Error::pre("p and q must be distinct"));
    }
    // least positive n with np ≡ 1 (mod q)
    let n = inv_mod(p as i64, q as i64).expect("distinct primes are coprime");
    let n = if n == 0 { q as i64 } else { n };
    let m = (1 - n * p as i64) / q as i64;
    debug_assert_eq!(n * p as i64 + m * q as i64, 1);

    let mut equation = EquationSystem::new(vec!["x".into()], vec!["a".into(), "b".into(), "c".into()])?;
    let x = Word(vec![Letter::Var(0, 1)]);
    let a = Word(vec![Letter::Coeff(0, 1)]);
    let b = Word(vec![Letter::Coeff(1, 1)]);
    let c = Word(vec![Letter::Coeff(2, 1)]);
    let mut lhs = Word::default();
    for (k, e, g) in [(p, n, &a), (q, m, &b)] {
        for i in 0..k {
            lhs = lhs.concat(&x.pow(e).conjugate(&g.pow(i as i64)));
        }
    }
    let ab = a.concat(&b);
    let rhs = c.concat(&c.conjugate(&ab));
    equation.push_word(lhs.concat(&rhs.inverse()))?;

    let top = direct_product(&cyclic(p as usize)?, &cyclic(q as usize)?, caps)?;
    let order = (1u128 << (p * q).min(127)) * (p * q) as u128;
    let cap = caps.wreath_order.min(caps.group_order) as u128;
    let wreath = if symbolic {
        None
    } else if order > cap {
        return Err(Error::cap("counterexample group order", order, cap));
    } else {
        let w = wreath_product(&cyclic(2)?, &top, caps)?;
        equation.bind(w.group().clone(), counterexample_coefficients(&w, q).to_vec())?;
        Some(w)
    };
    Ok(CounterexampleInstance {
        p,
        q,
        n,
        m,
        top,
        wreath,
        equation,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    /// `n(1+b)(1+a+…+a^{p-1}) + m(1+a)(1+b+…+b^{q-1})`.
    pub s: IntegralElement,
    /// `S` was zero, which makes the ring identity vacuous.
    pub s_is_zero: bool,
    /// `S(1+ab) = S(a+b)` in `Z[C_p × C_q]`.
    pub ring_identity: bool,
    /// `(cc^{ab})^{1+ab}` and `(cc^{ab})^{a+b}`, when the group is realized.
    pub left: Option<String>,
    pub right: Option<String>,
    /// The two sides differ.
    pub group_inequality: Option<bool>,
    /// Both sides agree with the coordinates predicted by the group-ring
    /// exponents `(1+ab)^2` and `(1+ab)(a+b)` reduced mod 2.
    pub coordinates_agree: Option<bool>,
}

impl ObstructionReport {
    /// Both halves of the argument hold, with a nonzero `S`.
    pub fn confirmed(&self) -> bool {
        self.ring_identity
            && !self.s_is_zero
            && self.group_inequality == Some(true)
            && self.coordinates_agree == Some(true)
    }
}

fn geometric(spec: &Arc<IntegralSpec>, gen: usize, k: u64) -> Result<IntegralElement> {
    let mut acc = IntegralElement::zero(spec);
    for i in 0..k {
        let mut t = vec![0u64; 2];
        t[gen] = i;
        acc = acc.add(&IntegralElement::group_element(spec, &t, &[]))?;
    }
    Ok(acc)
}

pub fn obstruction_check(inst: &CounterexampleInstance) -> Result<ObstructionReport> {
    obstruction_check_forced(inst, false)
}

/// With `force_zero_s`, `S` is replaced by 0; the group part is still computed.
pub fn obstruction_check_forced(inst: &CounterexampleInstance, force_zero_s: bool) -> Result<ObstructionReport> {
    let (p, q) = (inst.p, inst.q);
    let spec = Arc::new(IntegralSpec::new(vec![p, q], 0)?);
    let one = IntegralElement::one(&spec);
    let a = IntegralElement::group_element(&spec, &[1, 0], &[]);
    let b = IntegralElement::group_element(&spec, &[0, 1], &[]);
    let ab = a.mul(&b)?;
    let s = if force_zero_s {
        IntegralElement::zero(&spec)
    } else {
        let first = one.add(&b)?.mul(&geometric(&spec, 0, p)?)?.scale(&BigInt::from(inst.n));
        let second = one.add(&a)?.mul(&geometric(&spec, 1, q)?)?.scale(&BigInt::from(inst.m));
        first.add(&second)?
    };
    let e_left = one.add(&ab)?;
    let e_right = a.add(&b)?;
    let ring_identity = s.mul(&e_left)?.sub(&s.mul(&e_right)?)?.is_zero();

    let (mut left, mut right, mut group_inequality, mut coordinates_agree) = (None, None, None, None);
    if let Some(w) = &inst.wreath {
        let g = w.group();
        let [ga, gb, gc] = counterexample_coefficients(w, q);
        let gab = g.mul(ga, gb);
        let y = g.mul(gc, g.conj(gc, gab));
        let l = g.mul(y, g.conj(y, gab));
        let r = g.mul(g.conj(y, ga), g.conj(y, gb));
        // c^{g} has a single 1 at coordinate g, so y^{E} has coordinates E mod 2
        let predicted = |e: &IntegralElement| -> Result<Elem> {
            let base = e_left.mul(e)?;
            let mut f = vec![0usize; inst.top.order()];
            for (mono, coeff) in base.terms() {
                let idx = mono.torsion[0] as usize * q as usize + mono.torsion[1] as usize;
                f[idx] = usize::from(coeff.is_odd());
            }
            Ok(w.encode(&f, 0))
        };
        coordinates_agree = Some(predicted(&e_left)? == l && predicted(&e_right)? == r);
        left = Some(g.element_name(l).to_string());
        right = Some(g.element_name(r).to_string());
        group_inequality = Some(l != r);
    }
    Ok(ObstructionReport {
        s_is_zero: s.is_zero(),
        s,
        ring_identity,
        left,
        right,
        group_inequality,
        coordinates_agree,
    })
}
