//! Cirquents: a pool of oformulas and a structure of ogroups over it.
//!
//! Positions are 1-based throughout, for both oformulas and ogroups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::formula::{match_into, Atom, EvalError, Formula, Model, Substitution};
use crate::truth::{Tables, Tautology, TautologyError};

/// A group: a set of 1-based pool positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Group(BTreeSet<usize>);

impl Group {
    pub fn new() -> Group {
        Group::default()
    }

    pub fn contains(&self, position: usize) -> bool {
        self.0.contains(&position)
    }

    pub fn insert(&mut self, position: usize) -> bool {
        self.0.insert(position)
    }

    pub fn remove(&mut self, position: usize) -> bool {
        self.0.remove(&position)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Applies `f` to every member, dropping members mapped to `None`.
    pub fn remap(&self, mut f: impl FnMut(usize) -> Option<usize>) -> Group {
        Group(self.0.iter().filter_map(|&i| f(i)).collect())
    }
}

impl<const N: usize> From<[usize; N]> for Group {
    fn from(members: [usize; N]) -> Group {
        Group(members.into_iter().collect())
    }
}

impl FromIterator<usize> for Group {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Group {
        Group(iter.into_iter().collect())
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// A cirquent. Equality is strict: same pool sequence and same ogroup
/// sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cirquent {
    pub pool: Vec<Formula>,
    pub groups: Vec<Group>,
}

/// A structural defect found by [`Cirquent::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    /// 1-based ogroup position.
    pub group: usize,
    pub index: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ogroup {}: {}", self.group, self.message)
    }
}

/// Binarity of a cirquent, read off general-atom occurrence counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BinarityClass {
    NotBinary,
    BinaryNotNormal,
    NormalBinary,
}

impl BinarityClass {
    pub fn is_binary(self) -> bool {
        self != BinarityClass::NotBinary
    }

    pub fn is_normal(self) -> bool {
        self == BinarityClass::NormalBinary
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BinarityClass::NotBinary => "not-binary",
            BinarityClass::BinaryNotNormal => "binary-not-normal",
            BinarityClass::NormalBinary => "normal-binary",
        }
    }
}

impl fmt::Display for BinarityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Cirquent {
    pub fn new(pool: Vec<Formula>, groups: Vec<Group>) -> Cirquent {
        Cirquent { pool, groups }
    }

    pub fn empty() -> Cirquent {
        Cirquent::default()
    }

    /// `(⟨{1}⟩, ⟨f⟩)`.
    pub fn from_formula(f: Formula) -> Cirquent {
        Cirquent::new(vec![f], vec![Group::from([1])])
    }

    pub fn is_empty(&self) -> bool {
        self.pool.is_empty() && self.groups.is_empty()
    }

    /// The oformula at a 1-based position.
    pub fn oformula(&self, position: usize) -> Option<&Formula> {
        position.checked_sub(1).and_then(|i| self.pool.get(i))
    }

    /// 1-based positions of the ogroups containing `position`.
    pub fn groups_containing(&self, position: usize) -> Vec<usize> {
        self.groups
            .iter()
            .enumerate()
            .filter(|(_, g)| g.contains(position))
            .map(|(k, _)| k + 1)
            .collect()
    }

    pub fn is_homeless(&self, position: usize) -> bool {
        !self.groups.iter().any(|g| g.contains(position))
    }

    /// Arity consistency: every ogroup member names a pool position.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let k = self.pool.len();
        let mut out = Vec::new();
        for (g, group) in self.groups.iter().enumerate() {
            for i in group.iter() {
                if i == 0 || i > k {
                    out.push(Diagnostic {
                        group: g + 1,
                        index: i,
                        message: format!("index {i} out of range"),
                    });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// True iff every ogroup contains an oformula true in `model`.
    pub fn evaluate(&self, model: &Model) -> Result<bool, EvalError> {
        let values = self
            .pool
            .iter()
            .map(|f| f.evaluate(model))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self
            .groups
            .iter()
            .all(|g| g.iter().any(|i| values.get(i - 1).copied().unwrap_or(false))))
    }

    /// Non-logical atoms of the whole pool.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.pool.iter().flat_map(|f| f.atoms()).collect()
    }

    /// Exhaustive tautology check over every model of the pool's atoms.
    pub fn tautology(&self, budget: usize) -> Result<Tautology, TautologyError> {
        let tables = Tables::new(self.atoms(), budget)?;
        let values: Vec<Vec<u64>> = self.pool.iter().map(|f| tables.eval(f)).collect();
        let mut acc = tables.ones();
        for g in &self.groups {
            let mut any = tables.zeros();
            for i in g.iter() {
                if let Some(v) = values.get(i - 1) {
                    for (x, y) in any.iter_mut().zip(v) {
                        *x |= y;
                    }
                }
            }
            for (x, y) in acc.iter_mut().zip(any) {
                *x &= y;
            }
        }
        Ok(tables.verdict(&acc))
    }

    pub fn is_tautology(&self) -> Result<Tautology, TautologyError> {
        self.tautology(crate::truth::DEFAULT_MAX_ATOMS)
    }

    /// Occurrence counts of each general atom, split by polarity
    /// (positive, negative).
    pub fn general_occurrences(&self) -> BTreeMap<&str, (usize, usize)> {
        let mut counts: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
        for f in &self.pool {
            f.for_each_literal(&mut |a, negative| {
                if let Atom::General(n) = a {
                    let e = counts.entry(n.as_str()).or_default();
                    if negative {
                        e.1 += 1;
                    } else {
                        e.0 += 1;
                    }
                }
            });
        }
        counts
    }

    pub fn binarity(&self) -> BinarityClass {
        let mut class = BinarityClass::NormalBinary;
        for (pos, neg) in self.general_occurrences().into_values() {
            match pos + neg {
                0 | 1 => {}
                2 if pos == 1 => {}
                2 => class = BinarityClass::BinaryNotNormal,
                _ => return BinarityClass::NotBinary,
            }
        }
        class
    }

    /// Substitutes in every oformula; the structure is untouched.
    pub fn substitute(&self, s: &Substitution) -> Cirquent {
        Cirquent {
            pool: self.pool.iter().map(|f| f.substitute(s)).collect(),
            groups: self.groups.clone(),
        }
    }

    /// The substitution witnessing that `target` is an instance of `self`.
    pub fn match_instance(&self, target: &Cirquent) -> Option<Substitution> {
        if self.groups != target.groups || self.pool.len() != target.pool.len() {
            return None;
        }
        let mut s = Substitution::new();
        for (p, t) in self.pool.iter().zip(&target.pool) {
            if !match_into(p, t, &mut s) {
                return None;
            }
        }
        Some(s)
    }

    pub fn render(&self) -> String {
        crate::diagram::render(self)
    }
}

impl fmt::Display for Cirquent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(<")?;
        for (k, g) in self.groups.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">, <")?;
        for (k, x) in self.pool.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(">)")
    }
}
