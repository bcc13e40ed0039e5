//! Atoms, negation-normal formulas, classical evaluation, substitution and
//! matching.
//!
//! Formulas are kept in negation normal form at all times: `¬` only ever
//! sits directly over a non-logical atom. Every constructor and operation in
//! this module preserves that.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// An atom of the language.
///
/// General atoms are written with an uppercase initial, non-logical
/// elementary atoms with a lowercase initial. `Top` and `Bottom` are the
/// logical (elementary) atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    General(String),
    Elementary(String),
    Top,
    Bottom,
}

impl Atom {
    /// Builds a non-logical atom whose sort is fixed by the case of the first
    /// letter. Returns `None` unless the name is an identifier starting with
    /// an ASCII letter.
    pub fn named(name: &str) -> Option<Atom> {
        let mut chars = name.chars();
        let first = chars.next()?;
        if !first.is_ascii_alphabetic()
            || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            return None;
        }
        Some(if first.is_ascii_uppercase() {
            Atom::General(name.to_string())
        } else {
            Atom::Elementary(name.to_string())
        })
    }

    pub fn general(name: impl Into<String>) -> Atom {
        Atom::General(name.into())
    }

    pub fn elementary(name: impl Into<String>) -> Atom {
        Atom::Elementary(name.into())
    }

    pub fn is_general(&self) -> bool {
        matches!(self, Atom::General(_))
    }

    pub fn is_logical(&self) -> bool {
        matches!(self, Atom::Top | Atom::Bottom)
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            Atom::General(n) | Atom::Elementary(n) => Some(n),
            Atom::Top | Atom::Bottom => None,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::General(n) | Atom::Elementary(n) => f.write_str(n),
            Atom::Top => f.write_str("1"),
            Atom::Bottom => f.write_str("0"),
        }
    }
}

/// A negation-normal propositional formula.
///
/// `NegAtom` never holds a logical atom; use [`Formula::not_atom`] to build
/// negated atoms so that `¬⊤`/`¬⊥` fold to `⊥`/`⊤`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Atom),
    NegAtom(Atom),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(atom: Atom) -> Formula {
        Formula::Atom(atom)
    }

    pub fn top() -> Formula {
        Formula::Atom(Atom::Top)
    }

    pub fn bottom() -> Formula {
        Formula::Atom(Atom::Bottom)
    }

    /// `¬a`, folded for logical atoms.
    pub fn not_atom(atom: Atom) -> Formula {
        match atom {
            Atom::Top => Formula::bottom(),
            Atom::Bottom => Formula::top(),
            a => Formula::NegAtom(a),
        }
    }

    pub fn and(left: Formula, right: Formula) -> Formula {
        Formula::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Formula, right: Formula) -> Formula {
        Formula::Or(Box::new(left), Box::new(right))
    }

    /// Parses the ASCII concrete syntax. See [`crate::syntax`].
    pub fn parse(text: &str) -> Result<Formula, crate::syntax::ParseError> {
        crate::syntax::parse_formula(text)
    }

    /// The De Morgan dual. An involution.
    pub fn negate(&self) -> Formula {
        match self {
            Formula::Atom(a) => Formula::not_atom(a.clone()),
            Formula::NegAtom(a) => Formula::Atom(a.clone()),
            Formula::And(l, r) => Formula::or(l.negate(), r.negate()),
            Formula::Or(l, r) => Formula::and(l.negate(), r.negate()),
        }
    }

    /// True for atoms and negated atoms, including `⊤` and `⊥`.
    pub fn is_literal(&self) -> bool {
        matches!(self, Formula::Atom(_) | Formula::NegAtom(_))
    }

    /// True iff no general atom occurs.
    pub fn is_elementary(&self) -> bool {
        match self {
            Formula::Atom(a) | Formula::NegAtom(a) => !a.is_general(),
            Formula::And(l, r) | Formula::Or(l, r) => l.is_elementary() && r.is_elementary(),
        }
    }

    /// Number of tree nodes; a negated atom counts as one leaf.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::NegAtom(_) => 1,
            Formula::And(l, r) | Formula::Or(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Visits every literal leaf left to right, passing the atom and whether
    /// the occurrence is negative.
    pub fn for_each_literal<'a>(&'a self, visit: &mut impl FnMut(&'a Atom, bool)) {
        match self {
            Formula::Atom(a) => visit(a, false),
            Formula::NegAtom(a) => visit(a, true),
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.for_each_literal(visit);
                r.for_each_literal(visit);
            }
        }
    }

    /// Non-logical atoms, in sorted order.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.for_each_literal(&mut |a, _| {
            if !a.is_logical() {
                out.insert(a.clone());
            }
        });
        out
    }

    /// Classical value under `model`.
    pub fn evaluate(&self, model: &Model) -> Result<bool, EvalError> {
        match self {
            Formula::Atom(a) => model.value(a),
            Formula::NegAtom(a) => model.value(a).map(|v| !v),
            Formula::And(l, r) => Ok(l.evaluate(model)? && r.evaluate(model)?),
            Formula::Or(l, r) => Ok(l.evaluate(model)? || r.evaluate(model)?),
        }
    }

    /// Homomorphic replacement of general atoms. A negative occurrence `¬P`
    /// becomes the negation of the image of `P`.
    pub fn substitute(&self, s: &Substitution) -> Formula {
        match self {
            Formula::Atom(Atom::General(n)) => match s.get(n) {
                Some(img) => img.clone(),
                None => self.clone(),
            },
            Formula::NegAtom(Atom::General(n)) => match s.get(n) {
                Some(img) => img.negate(),
                None => self.clone(),
            },
            Formula::Atom(_) | Formula::NegAtom(_) => self.clone(),
            Formula::And(l, r) => Formula::and(l.substitute(s), r.substitute(s)),
            Formula::Or(l, r) => Formula::or(l.substitute(s), r.substitute(s)),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_formula(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("atom `{0}` is not assigned by the model")]
    Unassigned(Atom),
}

/// A classical model: truth values for non-logical atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Model {
    values: BTreeMap<Atom, bool>,
}

impl Model {
    pub fn new() -> Model {
        Model::default()
    }

    pub fn set(&mut self, atom: Atom, value: bool) {
        if !atom.is_logical() {
            self.values.insert(atom, value);
        }
    }

    pub fn with(mut self, atom: Atom, value: bool) -> Model {
        self.set(atom, value);
        self
    }

    pub fn value(&self, atom: &Atom) -> Result<bool, EvalError> {
        match atom {
            Atom::Top => Ok(true),
            Atom::Bottom => Ok(false),
            a => self
                .values
                .get(a)
                .copied()
                .ok_or_else(|| EvalError::Unassigned(a.clone())),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, bool)> {
        self.values.iter().map(|(a, v)| (a, *v))
    }

    /// Every model over `atoms`, in binary counting order (first atom is the
    /// most significant bit).
    pub fn all_over(atoms: &[Atom]) -> impl Iterator<Item = Model> + '_ {
        let n = atoms.len();
        (0u64..(1u64 << n)).map(move |bits| {
            let mut m = Model::new();
            for (k, a) in atoms.iter().enumerate() {
                m.set(a.clone(), bits >> (n - 1 - k) & 1 == 1);
            }
            m
        })
    }
}

impl FromIterator<(Atom, bool)> for Model {
    fn from_iter<I: IntoIterator<Item = (Atom, bool)>>(iter: I) -> Self {
        let mut m = Model::new();
        for (a, v) in iter {
            m.set(a, v);
        }
        m
    }
}

/// A substitution of formulas for general atoms. Elementary atoms are always
/// fixed, so keys are general atom names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Substitution {
    map: BTreeMap<String, Formula>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn insert(&mut self, general: impl Into<String>, image: Formula) -> Option<Formula> {
        self.map.insert(general.into(), image)
    }

    pub fn with(mut self, general: impl Into<String>, image: Formula) -> Substitution {
        self.insert(general, image);
        self
    }

    pub fn get(&self, general: &str) -> Option<&Formula> {
        self.map.get(general)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Formula)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Every image is a bare atom (a negated atom does not qualify).
    pub fn is_atomic_level(&self) -> bool {
        self.map.values().all(|f| matches!(f, Formula::Atom(_)))
    }

    pub fn apply(&self, f: &Formula) -> Formula {
        f.substitute(self)
    }
}

impl FromIterator<(String, Formula)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (String, Formula)>>(iter: I) -> Self {
        Substitution {
            map: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (name, img)) in self.map.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{name} := {img}")?;
        }
        f.write_str("}")
    }
}

/// Extends `partial` to the minimal `s` with `s(pattern) == target`, if one
/// exists.
pub fn match_formula(
    pattern: &Formula,
    target: &Formula,
    partial: &Substitution,
) -> Option<Substitution> {
    let mut s = partial.clone();
    match_into(pattern, target, &mut s).then_some(s)
}

pub(crate) fn match_into(pattern: &Formula, target: &Formula, s: &mut Substitution) -> bool {
    match (pattern, target) {
        (Formula::Atom(Atom::General(n)), _) => bind(s, n, target.clone()),
        (Formula::NegAtom(Atom::General(n)), _) => bind(s, n, target.negate()),
        (Formula::Atom(_) | Formula::NegAtom(_), _) => pattern == target,
        (Formula::And(pl, pr), Formula::And(tl, tr)) | (Formula::Or(pl, pr), Formula::Or(tl, tr)) => {
            match_into(pl, tl, s) && match_into(pr, tr, s)
        }
        _ => false,
    }
}

fn bind(s: &mut Substitution, name: &str, image: Formula) -> bool {
    match s.get(name) {
        Some(existing) => *existing == image,
        None => {
            s.insert(name, image);
            true
        }
    }
}

/// Supplies atom names of the form `{prefix}{k}` that avoid a set of taken
/// names.
#[derive(Debug, Clone)]
pub struct FreshNames {
    prefix: String,
    next: usize,
    taken: BTreeSet<String>,
}

impl FreshNames {
    pub fn new(prefix: &str, taken: impl IntoIterator<Item = String>) -> FreshNames {
        FreshNames {
            prefix: prefix.to_string(),
            next: 1,
            taken: taken.into_iter().collect(),
        }
    }

    pub fn avoid(&mut self, name: impl Into<String>) {
        self.taken.insert(name.into());
    }

    pub fn next_name(&mut self) -> String {
        loop {
            let candidate = format!("{}{}", self.prefix, self.next);
            self.next += 1;
            if self.taken.insert(candidate.clone()) {
                return candidate;
            }
        }
    }
}
