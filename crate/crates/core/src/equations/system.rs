use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::intmat::IntMatrix;
use super::word::{parse_word, Letter, Word};
use crate::group::{Elem, FiniteGroup};
use crate::{Error, Result};

/// Coefficient values in a concrete group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binding {
    pub group: Arc<FiniteGroup>,
    /// Element for each coefficient symbol, by symbol index.
    pub values: Vec<Elem>,
}

/// A finite system of equations `w_j = 1` over declared variables and
/// coefficient symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSystem {
    variables: Vec<String>,
    coefficients: Vec<String>,
    words: Vec<Word>,
    binding: Option<Binding>,
}

impl EquationSystem {
    pub fn new(variables: Vec<String>, coefficients: Vec<String>) -> Result<Self> {
        let mut all: Vec<&String> = variables.iter().chain(&coefficients).collect();
        all.sort();
        if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("symbol `{}` declared twice", w[0])));
        }
        if let Some(bad) = all.iter().find(|s| !valid_ident(s)) {
            return Err(Error::Invalid(format!("`{bad}` is not a valid identifier")));
        }
        Ok(EquationSystem {
            variables,
            coefficients,
            words: Vec::new(),
            binding: None,
        })
    }

    /// Parses and appends one equation `word = 1`.
    pub fn push_equation(&mut self, text: &str, line: usize) -> Result<()> {
        let w = parse_word(text, line, &self.variables, &self.coefficients)?;
        self.words.push(w);
        Ok(())
    }

    /// Appends an already expanded word, checking that its symbols are declared.
    pub fn push_word(&mut self, w: Word) -> Result<()> {
        for l in w.letters() {
            let ok = match *l {
                Letter::Var(v, _) => v < self.variables.len(),
                Letter::Coeff(c, _) => c < self.coefficients.len(),
            };
            if !ok {
                return Err(Error::Undeclared(format!("{l:?}")));
            }
        }
        self.words.push(w);
        Ok(())
    }

    pub fn bind(&mut self, group: Arc<FiniteGroup>, values: Vec<Elem>) -> Result<()> {
        if values.len() != self.coefficients.len() {
            return Err(Error::Invalid(format!(
                "{} coefficient values for {} symbols",
                values.len(),
                self.coefficients.len()
            )));
        }
        if values.iter().any(|&v| v >= group.order()) {
            return Err(Error::Invalid("coefficient value outside the group".into()));
        }
        self.binding = Some(Binding { group, values });
        Ok(())
    }

    /// Binds coefficients by element name.
    pub fn bind_by_name(&mut self, group: Arc<FiniteGroup>, pairs: &[(String, String)]) -> Result<()> {
        let mut values = alloc::vec![usize::MAX; self.coefficients.len()];
        for (sym, elem) in pairs {
            let c = self
                .coefficients
                .iter()
                .position(|s| s == sym)
                .ok_or_else(|| Error::Undeclared(sym.clone()))?;
            values[c] = group
                .find(elem)
                .ok_or_else(|| Error::Invalid(format!("group {} has no element `{elem}`", group.name())))?;
        }
        if let Some(c) = values.iter().position(|&v| v == usize::MAX) {
            return Err(Error::Invalid(format!(
                "coefficient `{}` is not bound",
                self.coefficients[c]
            )));
        }
        self.bind(group, values)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn coefficients(&self) -> &[String] {
        &self.coefficients
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn binding(&self) -> Option<&Binding> {
        self.binding.as_ref()
    }

    pub fn num_equations(&self) -> usize {
        self.words.len()
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    /// Entry `(j, i)` is the exponent sum of variable `i` in word `j`.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .words
            .iter()
            .map(|w| (0..self.variables.len()).map(|i| w.exponent_sum(i)).collect())
            .collect();
        IntMatrix::from_rows_with_cols(&rows, self.variables.len())
    }

    pub fn render_equation(&self, j: usize) -> String {
        self.words[j].render(&self.variables, &self.coefficients)
    }

    fn bound(&self) -> Result<&Binding> {
        self.binding
            .as_ref()
            .ok_or_else(|| Error::pre("the system is not bound to a group"))
    }

    /// Value of word `j` under an assignment of the variables.
    pub fn evaluate(&self, j: usize, assignment: &[Elem]) -> Result<Elem> {
        let b = self.bound()?;
        Ok(evaluate_word(&b.group, &self.words[j], &b.values, assignment))
    }

    pub fn is_solution(&self, assignment: &[Elem]) -> Result<bool> {
        let b = self.bound()?;
        if assignment.len() != self.variables.len() {
            return Err(Error::Invalid(
                "assignment length differs from the number of variables".into(),
            ));
        }
        Ok(self
            .words
            .iter()
            .all(|w| evaluate_word(&b.group, w, &b.values, assignment) == 0))
    }
}

/// Evaluates a word in `g` with coefficient and variable values.
pub fn evaluate_word(g: &FiniteGroup, w: &Word, coeffs: &[Elem], vars: &[Elem]) -> Elem {
    w.letters().iter().fold(0, |acc, l| {
        let (x, s) = match *l {
            Letter::Coeff(c, s) => (coeffs[c], s),
            Letter::Var(v, s) => (vars[v], s),
        };
        g.mul(acc, if s < 0 { g.inv(x) } else { x })
    })
}

fn valid_ident(s: &str) -> bool {
    let mut it = s.chars();
    it.next().is_some_and(|c| c.is_alphabetic() || c == '_') && it.all(|c| c.is_alphanumeric() || c == '_')
}
