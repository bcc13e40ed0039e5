//! Word-parallel truth tables.
//!
//! A table over `n` atoms is a bit vector of length `2^n`; bit `m` holds the
//! value in the model whose binary expansion is `m`, first atom most
//! significant (the same order as [`Model::all_over`]).

use std::collections::BTreeSet;

use thiserror::Error;

use crate::formula::{Atom, Formula, Model};

/// Hard ceiling on the number of distinct non-logical atoms a tautology
/// check may range over.
pub const DEFAULT_MAX_ATOMS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TautologyError {
    #[error("tautology check needs {atoms} atoms, budget is {budget}")]
    AtomBudget { atoms: usize, budget: usize },
}

/// Outcome of an exhaustive tautology check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tautology {
    Holds,
    Fails(Model),
}

impl Tautology {
    pub fn holds(&self) -> bool {
        matches!(self, Tautology::Holds)
    }

    pub fn countermodel(&self) -> Option<&Model> {
        match self {
            Tautology::Holds => None,
            Tautology::Fails(m) => Some(m),
        }
    }
}

pub(crate) struct Tables {
    atoms: Vec<Atom>,
    columns: Vec<Vec<u64>>,
    words: usize,
    mask: u64,
}

impl Tables {
    pub(crate) fn new(atoms: BTreeSet<Atom>, budget: usize) -> Result<Tables, TautologyError> {
        let atoms: Vec<Atom> = atoms.into_iter().collect();
        let n = atoms.len();
        if n > budget {
            return Err(TautologyError::AtomBudget { atoms: n, budget });
        }
        let bits = 1usize << n;
        let words = bits.div_ceil(64);
        let mask = if bits >= 64 { u64::MAX } else { (1u64 << bits) - 1 };
        let columns = (0..n)
            .map(|k| {
                let shift = n - 1 - k;
                (0..words)
                    .map(|w| {
                        let mut v = 0u64;
                        for b in 0..64 {
                            if (w * 64 + b) >> shift & 1 == 1 {
                                v |= 1 << b;
                            }
                        }
                        v & mask
                    })
                    .collect()
            })
            .collect();
        Ok(Tables {
            atoms,
            columns,
            words,
            mask,
        })
    }

    pub(crate) fn ones(&self) -> Vec<u64> {
        vec![self.mask; self.words]
    }

    pub(crate) fn zeros(&self) -> Vec<u64> {
        vec![0; self.words]
    }

    fn column(&self, atom: &Atom) -> Vec<u64> {
        match atom {
            Atom::Top => self.ones(),
            Atom::Bottom => self.zeros(),
            a => {
                let k = self
                    .atoms
                    .binary_search(a)
                    .expect("atom collected before building tables");
                self.columns[k].clone()
            }
        }
    }

    pub(crate) fn eval(&self, f: &Formula) -> Vec<u64> {
        match f {
            Formula::Atom(a) => self.column(a),
            Formula::NegAtom(a) => {
                let mut c = self.column(a);
                for w in &mut c {
                    *w = !*w & self.mask;
                }
                c
            }
            Formula::And(l, r) => {
                let mut a = self.eval(l);
                for (x, y) in a.iter_mut().zip(self.eval(r)) {
                    *x &= y;
                }
                a
            }
            Formula::Or(l, r) => {
                let mut a = self.eval(l);
                for (x, y) in a.iter_mut().zip(self.eval(r)) {
                    *x |= y;
                }
                a
            }
        }
    }

    /// Tautology verdict for a table, with the first falsifying model.
    pub(crate) fn verdict(&self, table: &[u64]) -> Tautology {
        for (w, word) in table.iter().enumerate() {
            let missing = !*word & self.mask;
            if missing != 0 {
                let m = w * 64 + missing.trailing_zeros() as usize;
                let n = self.atoms.len();
                let model = self
                    .atoms
                    .iter()
                    .enumerate()
                    .map(|(k, a)| (a.clone(), m >> (n - 1 - k) & 1 == 1))
                    .collect();
                return Tautology::Fails(model);
            }
        }
        Tautology::Holds
    }
}

/// Exhaustive classical tautology check of a formula.
pub fn formula_tautology(f: &Formula, budget: usize) -> Result<Tautology, TautologyError> {
    let tables = Tables::new(f.atoms(), budget)?;
    let t = tables.eval(f);
    Ok(tables.verdict(&t))
}
