use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::product::{extend_top, WreathGroup};
use crate::algebra::{AbelianGroupSpec, AlgebraElement, Monomial, RowFamily};
use crate::equations::{
    evaluate_word, is_p_nonsingular, solve_abelian, AbelianDecomposition, EquationSystem, IntMatrix, Letter, Word,
};
use crate::group::{Elem, Homomorphism};
use crate::{Caps, Error, Result};

/// A letter of a normalized word: a constant of the base, or
/// `d^{-1} x_i^{sign} d` for a top element `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WLetter {
    Base(Elem),
    Var { var: usize, sign: i8, conj: Elem },
}

/// A system over a wreath product after the change of variables
/// `x_i = x_i'·β_i`, written with base constants and top-conjugated
/// variables only.
#[derive(Clone, Debug)]
pub struct WreathSystem {
    pub wreath: WreathGroup,
    /// From the wreath product the system was given over into [`Self::wreath`].
    pub embedding: Homomorphism,
    pub variables: Vec<String>,
    /// `β_i` in the top group.
    pub shift: Vec<Elem>,
    pub words: Vec<Vec<WLetter>>,
    /// The input words with their coefficient values in [`Self::wreath`].
    pub original: Vec<Word>,
    pub coefficient_values: Vec<Elem>,
    pub exponent_matrix: IntMatrix,
}

impl WreathSystem {
    /// Values of the normalized words at `x'`.
    pub fn evaluate(&self, primed: &[Elem]) -> Vec<Elem> {
        let g = self.wreath.group();
        self.words
            .iter()
            .map(|w| {
                w.iter().fold(0, |acc, l| {
                    let v = match *l {
                        WLetter::Base(a) => a,
                        WLetter::Var { var, sign, conj } => {
                            let x = if sign < 0 { g.inv(primed[var]) } else { primed[var] };
                            g.conj(x, self.wreath.top_element(conj))
                        }
                    };
                    g.mul(acc, v)
                })
            })
            .collect()
    }

    /// Values of the input words at `x`.
    pub fn evaluate_original(&self, xs: &[Elem]) -> Vec<Elem> {
        self.original
            .iter()
            .map(|w| evaluate_word(self.wreath.group(), w, &self.coefficient_values, xs))
            .collect()
    }
}

fn check_bound(w: &WreathGroup, system: &EquationSystem) -> Result<Vec<Elem>> {
    let binding = system
        .binding()
        .ok_or_else(|| Error::pre("the system is not bound to a group"))?;
    if *binding.group != **w.group() {
        return Err(Error::pre("the system is not bound to this wreath product"));
    }
    Ok(binding.values.clone())
}

/// Normalizes with a given solution `β` (top elements) of the image system
/// over the top group.
pub fn normalize_with_shift(w: &WreathGroup, system: &EquationSystem, shift: &[Elem]) -> Result<WreathSystem> {
    let values = check_bound(w, system)?;
    build(w, Homomorphism::identity(w.group()), system, values, shift.to_vec())
}

fn build(
    w: &WreathGroup,
    embedding: Homomorphism,
    system: &EquationSystem,
    coefficient_values: Vec<Elem>,
    shift: Vec<Elem>,
) -> Result<WreathSystem> {
    if shift.len() != system.num_variables() {
        return Err(Error::pre("one top element per variable is needed"));
    }
    let g = w.group();
    let top = w.top();
    let mut words = Vec::with_capacity(system.num_equations());
    for word in system.words() {
        let mut prefix = 0;
        let mut out = Vec::new();
        for l in word.letters() {
            match *l {
                Letter::Coeff(c, s) => {
                    let v = coefficient_values[c];
                    let v = if s < 0 { g.inv(v) } else { v };
                    let t = w.top_component(v);
                    let a = g.mul(v, g.inv(w.top_element(t)));
                    let a = g.conj(a, w.top_element(top.inv(prefix)));
                    if a != 0 {
                        out.push(WLetter::Base(a));
                    }
                    prefix = top.mul(prefix, t);
                }
                Letter::Var(i, s) if s > 0 => {
                    out.push(WLetter::Var {
                        var: i,
                        sign: 1,
                        conj: top.inv(prefix),
                    });
                    prefix = top.mul(prefix, shift[i]);
                }
                Letter::Var(i, _) => {
                    prefix = top.mul(prefix, top.inv(shift[i]));
                    out.push(WLetter::Var {
                        var: i,
                        sign: -1,
                        conj: top.inv(prefix),
                    });
                }
            }
        }
        if prefix != 0 {
            return Err(Error::pre("the shift does not solve the system over the top group"));
        }
        words.push(out);
    }
    Ok(WreathSystem {
        wreath: w.clone(),
        embedding,
        variables: system.variables().to_vec(),
        shift,
        words,
        original: system.words().to_vec(),
        coefficient_values,
        exponent_matrix: system.exponent_matrix(),
    })
}

/// Changes variables so that every coefficient lies in the base.
///
/// The image of the system over the abelian top group is solved in a finite
/// abelian extension `B'`; when `B' ≠ B` the wreath product is rebuilt over
/// `B'`.
pub fn normalize_top_component(w: &WreathGroup, system: &EquationSystem, p: u64, caps: &Caps) -> Result<WreathSystem> {
    let values = check_bound(w, system)?;
    let top = w.top();
    if !top.is_abelian() {
        return Err(Error::pre("the top group is not abelian"));
    }
    if !is_p_nonsingular(system, p)? {
        return Err(Error::pre(format!("the system is not {p}-nonsingular")));
    }
    let mut image = EquationSystem::new(system.variables().to_vec(), system.coefficients().to_vec())?;
    for word in system.words() {
        image.push_word(word.clone())?;
    }
    image.bind(top.clone(), values.iter().map(|&v| w.top_component(v)).collect())?;
    let sol = solve_abelian(&image, caps)?;
    if sol.raised_by.iter().all(|&e| e == 0) {
        let back = sol.embedding.inverse();
        let shift = sol.assignment.iter().map(|&y| back.apply(y)).collect();
        return build(w, Homomorphism::identity(w.group()), system, values, shift);
    }
    let (w2, hom) = extend_top(w, &sol.extended_group, &sol.embedding, caps)?;
    let values2 = values.iter().map(|&v| hom.apply(v)).collect();
    build(&w2, hom, system, values2, sol.assignment.clone())
}

/// The coordinate systems `f_{j,b}` over the base group `H`.
///
/// Variable `y_{i,b}` has index `i·|B| + b`, equation `f_{j,b}` index
/// `j·|B| + b`. Coefficient `h<k>` is bound to element `k` of `H`.
#[derive(Clone, Debug)]
pub struct TransformedSystem {
    pub system: EquationSystem,
    pub source: WreathSystem,
}

impl TransformedSystem {
    pub fn top_order(&self) -> usize {
        self.source.wreath.top().order()
    }
}

pub fn lemma2_transform(ws: &WreathSystem) -> Result<TransformedSystem> {
    let w = &ws.wreath;
    let (h, top) = (w.base(), w.top());
    let nb = top.order();
    let mut vars = Vec::with_capacity(ws.variables.len() * nb);
    for v in &ws.variables {
        for b in top.elements() {
            vars.push(format!("{v}_{b}"));
        }
    }
    let coeffs = h.elements().map(|k| format!("h{k}")).collect();
    let mut system = EquationSystem::new(vars, coeffs)?;
    for word in &ws.words {
        for b in top.elements() {
            let letters = word
                .iter()
                .filter_map(|l| match *l {
                    WLetter::Base(a) => {
                        let c = w.coordinate(a, b);
                        (c != 0).then_some(Letter::Coeff(c, 1))
                    }
                    WLetter::Var { var, sign, conj } => Some(Letter::Var(var * nb + top.mul(b, top.inv(conj)), sign)),
                })
                .collect();
            system.push_word(Word(letters))?;
        }
    }
    system.bind(h.clone(), h.elements().collect())?;
    Ok(TransformedSystem {
        system,
        source: ws.clone(),
    })
}

/// Rows `m_{j,b}` over `Z_p[B]` read off the coordinate systems.
#[derive(Clone, Debug)]
pub struct RowsReport {
    pub spec: Arc<AbelianGroupSpec>,
    /// `m_{j,1}` for every equation `j`.
    pub rows: RowFamily,
    /// `m_{j,b}` at index `j·|B| + b`.
    pub all_rows: Vec<Vec<AlgebraElement>>,
    /// The monomial of every element of `B`.
    pub monomials: Vec<Monomial>,
    /// `m_{j,b} = b·m_{j,1}` for all `j, b`.
    pub relation_holds: bool,
    /// The augmentation of `m_{j,1}` is the exponent-sum row of equation `j` mod `p`.
    pub augmentation_matches: bool,
}

pub fn extract_rows(ts: &TransformedSystem, p: u64) -> Result<RowsReport> {
    let top = ts.source.wreath.top();
    let nb = top.order();
    let dec = AbelianDecomposition::of(top)?;
    if dec.group.factors.iter().any(|&(q, _)| q != p) {
        return Err(Error::pre(format!("the top group is not an abelian {p}-group")));
    }
    let spec = Arc::new(AbelianGroupSpec::new(
        p,
        dec.group.factors.iter().map(|&(_, k)| k).collect(),
        0,
    )?);
    let monomials: Vec<Monomial> = top
        .elements()
        .map(|b| Monomial {
            torsion: dec.coords(b).to_vec(),
            free: Vec::new(),
        })
        .collect();
    let nvars = ts.source.variables.len();
    let mut all_rows = Vec::with_capacity(ts.system.num_equations());
    for word in ts.system.words() {
        let mut row = vec![AlgebraElement::zero(&spec); nvars];
        for l in word.letters() {
            if let Letter::Var(idx, s) = *l {
                let c = if s < 0 { p - 1 } else { 1 };
                let term = AlgebraElement::monomial(&spec, monomials[idx % nb].clone(), c);
                row[idx / nb] = row[idx / nb].add(&term)?;
            }
        }
        all_rows.push(row);
    }
    let neq = ts.source.words.len();
    let relation_holds = (0..neq).all(|j| {
        top.elements().all(|b| {
            all_rows[j * nb + b]
                .iter()
                .zip(&all_rows[j * nb])
                .all(|(mb, m1)| *mb == m1.shift(&monomials[b]))
        })
    });
    let firsts: Vec<Vec<AlgebraElement>> = (0..neq).map(|j| all_rows[j * nb].clone()).collect();
    let m = &ts.source.exponent_matrix;
    let augmentation_matches = firsts.iter().enumerate().all(|(j, row)| {
        row.iter().enumerate().all(|(i, e)| {
            let expected = m.get(j, i) % num_bigint::BigInt::from(p);
            let expected = ((expected + num_bigint::BigInt::from(p)) % num_bigint::BigInt::from(p))
                .try_into()
                .unwrap_or(u64::MAX);
            e.augmentation() == expected
        })
    });
    let rows = RowFamily::new(&spec, nvars, firsts)?;
    Ok(RowsReport {
        spec,
        rows,
        all_rows,
        monomials,
        relation_holds,
        augmentation_matches,
    })
}

/// Assembles `x_i = ((y_{i,b})_b, 1)·β_i` from a solution of the coordinate
/// systems and verifies it against the input system.
pub fn reconstruct_solution(ts: &TransformedSystem, pointwise: &[Elem]) -> Result<Vec<Elem>> {
    let nb = ts.top_order();
    let nvars = ts.source.variables.len();
    if pointwise.len() != nvars * nb {
        return Err(Error::pre("wrong number of coordinate values"));
    }
    if !ts.system.is_solution(pointwise)? {
        return Err(Error::pre("the coordinate assignment fails some f_{j,b}"));
    }
    let w = &ts.source.wreath;
    let g = w.group();
    let primed: Vec<Elem> = (0..nvars)
        .map(|i| w.encode(&pointwise[i * nb..(i + 1) * nb], 0))
        .collect();
    let xs: Vec<Elem> = primed
        .iter()
        .zip(&ts.source.shift)
        .map(|(&x, &b)| g.mul(x, w.top_element(b)))
        .collect();
    if ts.source.evaluate(&primed).iter().any(|&v| v != 0) || ts.source.evaluate_original(&xs).iter().any(|&v| v != 0) {
        return Err(Error::Invalid(
            "internal error: reconstructed solution fails verification".into(),
        ));
    }
    Ok(xs)
}
