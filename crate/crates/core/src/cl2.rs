//! CL2: formulas with the choice connectives `⊓` (written `*`) and `⊔`
//! (written `+`), elementarization, stability, Rules (a), (b), (c), a
//! decision procedure, and the passage between CL2 proofs of CL6 formulas
//! and binary tautologies.
//!
//! A CL2 proof is stored as a list of steps in post-order: every premise
//! comes before its conclusion, and the goal is the last step. For a goal
//! without choice connectives the list is a chain whose first step is the
//! Rule (a) leaf.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cirquent::Cirquent;
use crate::formula::{match_formula, Atom, Formula, FreshNames, Substitution};
use crate::syntax::ParseError;
use crate::truth::{formula_tautology, TautologyError, DEFAULT_MAX_ATOMS};

/// A CL2 formula: a negation-normal formula that may also contain `⊓`
/// (`ChAnd`) and `⊔` (`ChOr`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cl2Formula {
    Atom(Atom),
    NegAtom(Atom),
    And(Box<Cl2Formula>, Box<Cl2Formula>),
    Or(Box<Cl2Formula>, Box<Cl2Formula>),
    ChAnd(Box<Cl2Formula>, Box<Cl2Formula>),
    ChOr(Box<Cl2Formula>, Box<Cl2Formula>),
}

impl Cl2Formula {
    pub fn parse(text: &str) -> Result<Cl2Formula, ParseError> {
        crate::syntax::parse_cl2_formula(text)
    }

    fn not_atom(a: Atom) -> Cl2Formula {
        match a {
            Atom::Top => Cl2Formula::Atom(Atom::Bottom),
            Atom::Bottom => Cl2Formula::Atom(Atom::Top),
            a => Cl2Formula::NegAtom(a),
        }
    }

    /// De Morgan dual; `⊓` and `⊔` are dual to each other.
    pub fn negate(&self) -> Cl2Formula {
        let pair = |l: &Cl2Formula, r: &Cl2Formula| (Box::new(l.negate()), Box::new(r.negate()));
        match self {
            Cl2Formula::Atom(a) => Cl2Formula::not_atom(a.clone()),
            Cl2Formula::NegAtom(a) => Cl2Formula::Atom(a.clone()),
            Cl2Formula::And(l, r) => {
                let (l, r) = pair(l, r);
                Cl2Formula::Or(l, r)
            }
            Cl2Formula::Or(l, r) => {
                let (l, r) = pair(l, r);
                Cl2Formula::And(l, r)
            }
            Cl2Formula::ChAnd(l, r) => {
                let (l, r) = pair(l, r);
                Cl2Formula::ChOr(l, r)
            }
            Cl2Formula::ChOr(l, r) => {
                let (l, r) = pair(l, r);
                Cl2Formula::ChAnd(l, r)
            }
        }
    }

    /// The same formula as a CL6 formula, if it has no choice connectives.
    pub fn to_cl6(&self) -> Option<Formula> {
        Some(match self {
            Cl2Formula::Atom(a) => Formula::Atom(a.clone()),
            Cl2Formula::NegAtom(a) => Formula::NegAtom(a.clone()),
            Cl2Formula::And(l, r) => Formula::and(l.to_cl6()?, r.to_cl6()?),
            Cl2Formula::Or(l, r) => Formula::or(l.to_cl6()?, r.to_cl6()?),
            Cl2Formula::ChAnd(..) | Cl2Formula::ChOr(..) => return None,
        })
    }

    /// Neither general atoms nor choice connectives.
    pub fn is_elementary(&self) -> bool {
        match self {
            Cl2Formula::Atom(a) | Cl2Formula::NegAtom(a) => !a.is_general(),
            Cl2Formula::And(l, r) | Cl2Formula::Or(l, r) => l.is_elementary() && r.is_elementary(),
            Cl2Formula::ChAnd(..) | Cl2Formula::ChOr(..) => false,
        }
    }

    pub fn choice_count(&self) -> usize {
        match self {
            Cl2Formula::Atom(_) | Cl2Formula::NegAtom(_) => 0,
            Cl2Formula::And(l, r) | Cl2Formula::Or(l, r) => l.choice_count() + r.choice_count(),
            Cl2Formula::ChAnd(l, r) | Cl2Formula::ChOr(l, r) => {
                1 + l.choice_count() + r.choice_count()
            }
        }
    }

    fn children(&self) -> Option<(&Cl2Formula, &Cl2Formula)> {
        match self {
            Cl2Formula::Atom(_) | Cl2Formula::NegAtom(_) => None,
            Cl2Formula::And(l, r)
            | Cl2Formula::Or(l, r)
            | Cl2Formula::ChAnd(l, r)
            | Cl2Formula::ChOr(l, r) => Some((l, r)),
        }
    }

    fn for_each_literal<'a>(&'a self, visit: &mut impl FnMut(&'a Atom, bool)) {
        match self {
            Cl2Formula::Atom(a) => visit(a, false),
            Cl2Formula::NegAtom(a) => visit(a, true),
            _ => {
                let (l, r) = self.children().expect("compound");
                l.for_each_literal(visit);
                r.for_each_literal(visit);
            }
        }
    }

    /// Number of general-atom occurrences, either polarity.
    pub fn general_occurrences(&self) -> usize {
        let mut n = 0;
        self.for_each_literal(&mut |a, _| n += a.is_general() as usize);
        n
    }

    /// Names of all non-logical atoms.
    pub fn atom_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.for_each_literal(&mut |a, _| {
            if let Some(n) = a.name() {
                out.insert(n.to_string());
            }
        });
        out
    }

    /// The subformula at `path`.
    pub fn at(&self, path: &OccurrencePath) -> Option<&Cl2Formula> {
        let mut node = self;
        for side in &path.0 {
            let (l, r) = node.children()?;
            node = match side {
                Side::Left => l,
                Side::Right => r,
            };
        }
        Some(node)
    }

    /// True iff `path` addresses a subformula with no choice connective
    /// strictly above it.
    pub fn is_surface(&self, path: &OccurrencePath) -> bool {
        let mut node = self;
        for side in &path.0 {
            if matches!(node, Cl2Formula::ChAnd(..) | Cl2Formula::ChOr(..)) {
                return false;
            }
            let Some((l, r)) = node.children() else {
                return false;
            };
            node = match side {
                Side::Left => l,
                Side::Right => r,
            };
        }
        true
    }

    /// A copy with the subformula at `path` replaced.
    pub fn replace(&self, path: &OccurrencePath, new: Cl2Formula) -> Option<Cl2Formula> {
        self.replace_from(&path.0, new)
    }

    fn replace_from(&self, path: &[Side], new: Cl2Formula) -> Option<Cl2Formula> {
        let Some((first, rest)) = path.split_first() else {
            return Some(new);
        };
        let (l, r) = self.children()?;
        let (l, r) = match first {
            Side::Left => (l.replace_from(rest, new)?, r.clone()),
            Side::Right => (l.clone(), r.replace_from(rest, new)?),
        };
        let (l, r) = (Box::new(l), Box::new(r));
        Some(match self {
            Cl2Formula::And(..) => Cl2Formula::And(l, r),
            Cl2Formula::Or(..) => Cl2Formula::Or(l, r),
            Cl2Formula::ChAnd(..) => Cl2Formula::ChAnd(l, r),
            Cl2Formula::ChOr(..) => Cl2Formula::ChOr(l, r),
            Cl2Formula::Atom(_) | Cl2Formula::NegAtom(_) => unreachable!("leaves have no children"),
        })
    }

    /// Surface subformulas with their paths, in preorder. Choice nodes are
    /// listed but not entered.
    pub fn surface(&self) -> Vec<(OccurrencePath, &Cl2Formula)> {
        let mut out = Vec::new();
        let mut stack = vec![(Vec::new(), self)];
        while let Some((path, node)) = stack.pop() {
            if let Cl2Formula::And(l, r) | Cl2Formula::Or(l, r) = node {
                let mut rp = path.clone();
                rp.push(Side::Right);
                stack.push((rp, r.as_ref()));
                let mut lp = path.clone();
                lp.push(Side::Left);
                stack.push((lp, l.as_ref()));
            }
            out.push((OccurrencePath(path), node));
        }
        out
    }

    fn rename_atoms(&self, rename: &mut impl FnMut(&Atom) -> Option<Atom>) -> Cl2Formula {
        match self {
            Cl2Formula::Atom(a) => Cl2Formula::Atom(rename(a).unwrap_or_else(|| a.clone())),
            Cl2Formula::NegAtom(a) => Cl2Formula::NegAtom(rename(a).unwrap_or_else(|| a.clone())),
            _ => {
                let (l, r) = self.children().expect("compound");
                let (l, r) = (Box::new(l.rename_atoms(rename)), Box::new(r.rename_atoms(rename)));
                match self {
                    Cl2Formula::And(..) => Cl2Formula::And(l, r),
                    Cl2Formula::Or(..) => Cl2Formula::Or(l, r),
                    Cl2Formula::ChAnd(..) => Cl2Formula::ChAnd(l, r),
                    _ => Cl2Formula::ChOr(l, r),
                }
            }
        }
    }
}

impl From<&Formula> for Cl2Formula {
    fn from(f: &Formula) -> Cl2Formula {
        match f {
            Formula::Atom(a) => Cl2Formula::Atom(a.clone()),
            Formula::NegAtom(a) => Cl2Formula::NegAtom(a.clone()),
            Formula::And(l, r) => {
                Cl2Formula::And(Box::new(l.as_ref().into()), Box::new(r.as_ref().into()))
            }
            Formula::Or(l, r) => {
                Cl2Formula::Or(Box::new(l.as_ref().into()), Box::new(r.as_ref().into()))
            }
        }
    }
}

impl From<Formula> for Cl2Formula {
    fn from(f: Formula) -> Cl2Formula {
        Cl2Formula::from(&f)
    }
}

impl fmt::Display for Cl2Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_cl2_formula(self))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A path from the root to a subformula. Serialized as a string of `l`
/// and `r`; the root is the empty string.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OccurrencePath(pub Vec<Side>);

impl fmt::Display for OccurrencePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Side::Left => "l",
                Side::Right => "r",
            })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for OccurrencePath {
    type Err = String;

    fn from_str(s: &str) -> Result<OccurrencePath, String> {
        s.chars()
            .map(|c| match c {
                'l' => Ok(Side::Left),
                'r' => Ok(Side::Right),
                other => Err(format!("bad path character `{other}`")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(OccurrencePath)
    }
}

impl Serialize for OccurrencePath {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OccurrencePath {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<OccurrencePath, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Surface general literals and `⊔`-subformulas become `⊥`, surface
/// `⊓`-subformulas become `⊤`.
pub fn elementarize(f: &Cl2Formula) -> Formula {
    match f {
        Cl2Formula::Atom(a) | Cl2Formula::NegAtom(a) if a.is_general() => Formula::bottom(),
        Cl2Formula::Atom(a) => Formula::Atom(a.clone()),
        Cl2Formula::NegAtom(a) => Formula::NegAtom(a.clone()),
        Cl2Formula::And(l, r) => Formula::and(elementarize(l), elementarize(r)),
        Cl2Formula::Or(l, r) => Formula::or(elementarize(l), elementarize(r)),
        Cl2Formula::ChOr(..) => Formula::bottom(),
        Cl2Formula::ChAnd(..) => Formula::top(),
    }
}

/// Whether the elementarization is a classical tautology.
pub fn is_stable(f: &Cl2Formula, max_atoms: usize) -> Result<bool, TautologyError> {
    Ok(formula_tautology(&elementarize(f), max_atoms)?.holds())
}

/// The rule of a CL2 step, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "rule")]
pub enum Cl2Rule {
    /// Rule (a): the conclusion is stable and the premises are exactly the
    /// `⊓`-resolutions of its surface `⊓`-subformulas.
    #[serde(rename = "a")]
    A,
    /// Rule (b): the premise picks `side` of the surface `⊔` at `path`.
    #[serde(rename = "b")]
    B { path: OccurrencePath, side: Side },
    /// Rule (c): the premise replaces the positive general atom at
    /// `paths[0]` and the negative one at `paths[1]` by `fresh`.
    #[serde(rename = "c")]
    C {
        paths: [OccurrencePath; 2],
        fresh: String,
    },
}

/// One way to read a formula as the conclusion of a rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cl2Option {
    pub rule: Cl2Rule,
    pub premises: Vec<Cl2Formula>,
}

/// The premise set of Rule (a) for `f`, without the stability check:
/// both resolutions of every surface `⊓`, duplicates removed.
pub fn rule_a_premises(f: &Cl2Formula) -> Vec<Cl2Formula> {
    let mut out: Vec<Cl2Formula> = Vec::new();
    for (path, node) in f.surface() {
        if let Cl2Formula::ChAnd(l, r) = node {
            for side in [l, r] {
                let p = f.replace(&path, side.as_ref().clone()).expect("path from surface()");
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// The first `c{k}` not occurring in `f`.
pub fn fresh_atom_for(f: &Cl2Formula) -> String {
    FreshNames::new("c", f.atom_names()).next_name()
}

/// Every rule reading of `f` as a conclusion, in canonical order: Rule (a)
/// first, then Rule (b) by surface `⊔` in preorder (left before right),
/// then Rule (c) pairs ordered by the preorder positions of their two
/// occurrences.
pub fn expand(f: &Cl2Formula, max_atoms: usize) -> Result<Vec<Cl2Option>, TautologyError> {
    let mut out = Vec::new();
    if is_stable(f, max_atoms)? {
        out.push(Cl2Option {
            rule: Cl2Rule::A,
            premises: rule_a_premises(f),
        });
    }
    let surface = f.surface();
    for (path, node) in &surface {
        if let Cl2Formula::ChOr(l, r) = node {
            for (side, g) in [(Side::Left, l), (Side::Right, r)] {
                out.push(Cl2Option {
                    rule: Cl2Rule::B {
                        path: path.clone(),
                        side,
                    },
                    premises: vec![f.replace(path, g.as_ref().clone()).expect("surface path")],
                });
            }
        }
    }
    let mut pairs = Vec::new();
    for (i, (pp, pos)) in surface.iter().enumerate() {
        let Cl2Formula::Atom(Atom::General(name)) = pos else {
            continue;
        };
        for (j, (np, neg)) in surface.iter().enumerate() {
            if let Cl2Formula::NegAtom(Atom::General(other)) = neg {
                if other == name {
                    pairs.push(((i.min(j), i.max(j)), pp, np));
                }
            }
        }
    }
    pairs.sort_by_key(|(key, _, _)| *key);
    if !pairs.is_empty() {
        let fresh = fresh_atom_for(f);
        let atom = Atom::elementary(fresh.clone());
        for (_, pp, np) in pairs {
            let premise = f
                .replace(pp, Cl2Formula::Atom(atom.clone()))
                .and_then(|g| g.replace(np, Cl2Formula::NegAtom(atom.clone())))
                .expect("surface paths");
            out.push(Cl2Option {
                rule: Cl2Rule::C {
                    paths: [pp.clone(), np.clone()],
                    fresh: fresh.clone(),
                },
                premises: vec![premise],
            });
        }
    }
    Ok(out)
}

/// A step of a CL2 proof.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cl2Step {
    pub formula: Cl2Formula,
    #[serde(flatten)]
    pub rule: Cl2Rule,
    /// Indices of earlier steps that are this step's premises.
    #[serde(default)]
    pub premises: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cl2Proof {
    pub steps: Vec<Cl2Step>,
}

impl Cl2Proof {
    pub fn goal(&self) -> Option<&Cl2Formula> {
        self.steps.last().map(|s| &s.formula)
    }

    pub fn check(&self) -> Result<(), Cl2Violation> {
        check_cl2_proof(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("CL2 proofs always serialize")
    }

    pub fn from_json(text: &str) -> Result<Cl2Proof, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Limits for [`decide_cl2`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cl2Budget {
    pub max_general_occurrences: usize,
    pub max_choices: usize,
    /// Distinct search states (formulas up to renaming of introduced atoms).
    pub max_states: usize,
    pub max_atoms: usize,
}

impl Default for Cl2Budget {
    fn default() -> Cl2Budget {
        Cl2Budget {
            max_general_occurrences: 12,
            max_choices: 6,
            max_states: 200_000,
            max_atoms: DEFAULT_MAX_ATOMS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Cl2Error {
    #[error("{what} is {found}, budget is {limit}")]
    Budget {
        what: &'static str,
        found: usize,
        limit: usize,
    },
    #[error(transparent)]
    Tautology(#[from] TautologyError),
}

/// Evidence that the search space was exhausted without a proof.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cl2Exhaustion {
    /// Distinct formulas refuted during the search.
    pub explored: usize,
    /// The Rule (c) pairings available at the goal, all refuted.
    pub pairings: Vec<[OccurrencePath; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cl2Decision {
    Provable(Cl2Proof),
    Unprovable(Cl2Exhaustion),
}

impl Cl2Decision {
    pub fn proof(&self) -> Option<&Cl2Proof> {
        match self {
            Cl2Decision::Provable(p) => Some(p),
            Cl2Decision::Unprovable(_) => None,
        }
    }

    pub fn is_provable(&self) -> bool {
        matches!(self, Cl2Decision::Provable(_))
    }
}

struct Tree {
    formula: Cl2Formula,
    rule: Cl2Rule,
    children: Vec<Tree>,
}

impl Tree {
    fn linearize(self, steps: &mut Vec<Cl2Step>) -> usize {
        let premises = self.children.into_iter().map(|c| c.linearize(steps)).collect();
        steps.push(Cl2Step {
            formula: self.formula,
            rule: self.rule,
            premises,
        });
        steps.len() - 1
    }
}

struct Search<'a> {
    budget: &'a Cl2Budget,
    goal_atoms: BTreeSet<String>,
    refuted: HashSet<Cl2Formula>,
    states: usize,
}

impl Search<'_> {
    /// Renames atoms foreign to the goal by order of first occurrence.
    fn canonical(&self, f: &Cl2Formula) -> Cl2Formula {
        let mut seen: BTreeMap<String, Atom> = BTreeMap::new();
        f.rename_atoms(&mut |a| match a {
            Atom::Elementary(n) if !self.goal_atoms.contains(n) => {
                let k = seen.len() + 1;
                Some(
                    seen.entry(n.clone())
                        .or_insert_with(|| Atom::elementary(format!("#{k}")))
                        .clone(),
                )
            }
            _ => None,
        })
    }

    fn prove(&mut self, f: &Cl2Formula) -> Result<Option<Tree>, Cl2Error> {
        let key = self.canonical(f);
        if self.refuted.contains(&key) {
            return Ok(None);
        }
        self.states += 1;
        if self.states > self.budget.max_states {
            return Err(Cl2Error::Budget {
                what: "number of search states",
                found: self.states,
                limit: self.budget.max_states,
            });
        }
        'options: for option in expand(f, self.budget.max_atoms)? {
            let mut children = Vec::with_capacity(option.premises.len());
            for p in &option.premises {
                match self.prove(p)? {
                    Some(t) => children.push(t),
                    None => continue 'options,
                }
            }
            return Ok(Some(Tree {
                formula: f.clone(),
                rule: option.rule,
                children,
            }));
        }
        self.refuted.insert(key);
        Ok(None)
    }
}

/// Decides CL2-provability by exhaustive depth-first search over
/// [`expand`], remembering refuted formulas up to renaming of the atoms
/// introduced by Rule (c).
pub fn decide_cl2(f: &Cl2Formula, budget: &Cl2Budget) -> Result<Cl2Decision, Cl2Error> {
    let general = f.general_occurrences();
    if general > budget.max_general_occurrences {
        return Err(Cl2Error::Budget {
            what: "number of general-atom occurrences",
            found: general,
            limit: budget.max_general_occurrences,
        });
    }
    let choices = f.choice_count();
    if choices > budget.max_choices {
        return Err(Cl2Error::Budget {
            what: "number of choice connectives",
            found: choices,
            limit: budget.max_choices,
        });
    }
    let mut search = Search {
        budget,
        goal_atoms: f.atom_names(),
        refuted: HashSet::new(),
        states: 0,
    };
    match search.prove(f)? {
        Some(tree) => {
            let mut steps = Vec::new();
            tree.linearize(&mut steps);
            Ok(Cl2Decision::Provable(Cl2Proof { steps }))
        }
        None => {
            let pairings = expand(f, budget.max_atoms)?
                .into_iter()
                .filter_map(|o| match o.rule {
                    Cl2Rule::C { paths, .. } => Some(paths),
                    _ => None,
                })
                .collect();
            Ok(Cl2Decision::Unprovable(Cl2Exhaustion {
                explored: search.refuted.len(),
                pairings,
            }))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("CL2 step {step}: {reason}")]
pub struct Cl2Violation {
    pub step: usize,
    pub reason: String,
}

/// Checks a CL2 proof: tree shape of the premise links and every rule's
/// side conditions, including Rule (a) stability and premise-set
/// exactness and Rule (c) freshness.
pub fn check_cl2_proof(p: &Cl2Proof) -> Result<(), Cl2Violation> {
    let fail = |step: usize, reason: String| Err(Cl2Violation { step, reason });
    if p.steps.is_empty() {
        return fail(0, "proof has no steps".into());
    }
    let mut used = vec![false; p.steps.len()];
    for (k, step) in p.steps.iter().enumerate() {
        for &i in &step.premises {
            if i >= k {
                return fail(k, format!("premise {i} does not precede the step"));
            }
            if std::mem::replace(&mut used[i], true) {
                return fail(k, format!("step {i} is used as a premise twice"));
            }
        }
    }
    if let Some(i) = used[..used.len() - 1].iter().position(|u| !u) {
        return fail(i, "step is never used and is not the goal".into());
    }
    for (k, step) in p.steps.iter().enumerate() {
        if let Err(reason) = check_cl2_step(p, step) {
            return fail(k, reason);
        }
    }
    Ok(())
}

fn check_cl2_step(p: &Cl2Proof, step: &Cl2Step) -> Result<(), String> {
    let f = &step.formula;
    let premises: Vec<&Cl2Formula> = step.premises.iter().map(|&i| &p.steps[i].formula).collect();
    match &step.rule {
        Cl2Rule::A => {
            if !is_stable(f, DEFAULT_MAX_ATOMS).map_err(|e| e.to_string())? {
                return Err("Rule (a) applied to an unstable formula".into());
            }
            let expected = rule_a_premises(f);
            let got: BTreeSet<&Cl2Formula> = premises.iter().copied().collect();
            if got.len() != premises.len()
                || got != expected.iter().collect::<BTreeSet<_>>()
            {
                return Err("Rule (a) premises are not the required premise set".into());
            }
            Ok(())
        }
        Cl2Rule::B { path, side } => {
            let [premise] = premises[..] else {
                return Err("Rule (b) takes one premise".into());
            };
            let Some(Cl2Formula::ChOr(l, r)) = f.at(path).filter(|_| f.is_surface(path)) else {
                return Err(format!("no surface ⊔ at path `{path}`"));
            };
            let chosen = match side {
                Side::Left => l,
                Side::Right => r,
            };
            if f.replace(path, chosen.as_ref().clone()).as_ref() != Some(premise) {
                return Err("Rule (b) premise does not match the chosen disjunct".into());
            }
            Ok(())
        }
        Cl2Rule::C { paths, fresh } => {
            let [premise] = premises[..] else {
                return Err("Rule (c) takes one premise".into());
            };
            let [pp, np] = paths;
            let (Some(Cl2Formula::Atom(pa)), Some(Cl2Formula::NegAtom(na))) = (f.at(pp), f.at(np))
            else {
                return Err("Rule (c) paths must address a positive and a negative literal".into());
            };
            if !pa.is_general() || pa != na {
                return Err("Rule (c) literals must be opposite occurrences of one general atom".into());
            }
            if !f.is_surface(pp) || !f.is_surface(np) {
                return Err("Rule (c) occurrences must be surface occurrences".into());
            }
            let atom = match Atom::named(fresh) {
                Some(a @ Atom::Elementary(_)) => a,
                _ => return Err(format!("`{fresh}` is not a non-logical elementary atom")),
            };
            if f.atom_names().contains(fresh) {
                return Err(format!("atom `{fresh}` already occurs in the conclusion"));
            }
            let expected = f
                .replace(pp, Cl2Formula::Atom(atom.clone()))
                .and_then(|g| g.replace(np, Cl2Formula::NegAtom(atom)));
            if expected.as_ref() != Some(premise) {
                return Err("Rule (c) premise does not match the replacement".into());
            }
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("invalid CL2 proof: {0}")]
    Invalid(#[from] Cl2Violation),
    #[error("the goal contains choice connectives")]
    NotCl6Goal,
    #[error("proof is not a Rule (a) leaf followed by a Rule (c) chain")]
    NotChain,
    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

/// From a CL2 proof of a CL6 formula `F`, builds a binary tautology `h′`
/// and a substitution `σ` with `σ(h′) = F`.
///
/// Leaves of the Rule (a) formula are read left to right. A general literal
/// (elementarized to `⊥`) becomes a fresh positive general atom standing
/// for that literal. An atom introduced by Rule (c) becomes one fresh
/// general atom, keeping the polarity of each of its two occurrences, that
/// stands for the general atom it replaced. Everything else, including
/// `⊤`/`⊥` already in `F`, is kept. Fresh atoms are `S1`, `S2`, … in order
/// of first occurrence.
pub fn extract_binary_tautology(p: &Cl2Proof) -> Result<(Formula, Substitution), ExtractError> {
    check_cl2_proof(p)?;
    let goal = p
        .goal()
        .and_then(Cl2Formula::to_cl6)
        .ok_or(ExtractError::NotCl6Goal)?;
    let first = &p.steps[0];
    if first.rule != Cl2Rule::A || !first.premises.is_empty() {
        return Err(ExtractError::NotChain);
    }
    let mut introduced: BTreeMap<&str, String> = BTreeMap::new();
    for (k, step) in p.steps.iter().enumerate().skip(1) {
        let Cl2Rule::C { paths, fresh } = &step.rule else {
            return Err(ExtractError::NotChain);
        };
        if step.premises != [k - 1] {
            return Err(ExtractError::NotChain);
        }
        let Some(Cl2Formula::Atom(Atom::General(replaced))) = step.formula.at(&paths[0]) else {
            return Err(ExtractError::NotChain);
        };
        introduced.insert(fresh, replaced.clone());
    }
    let leaf = first.formula.to_cl6().ok_or(ExtractError::NotCl6Goal)?;

    let mut taken = first.formula.atom_names();
    taken.extend(p.goal().expect("non-empty").atom_names());
    let mut names = FreshNames::new("S", taken);
    let mut sigma = Substitution::new();
    let mut for_introduced: BTreeMap<String, String> = BTreeMap::new();
    let mut abstract_leaf = |a: &Atom, negative: bool| -> Formula {
        match a {
            Atom::General(_) => {
                let s = names.next_name();
                let literal = if negative {
                    Formula::NegAtom(a.clone())
                } else {
                    Formula::Atom(a.clone())
                };
                sigma.insert(s.clone(), literal);
                Formula::Atom(Atom::general(s))
            }
            Atom::Elementary(n) if introduced.contains_key(n.as_str()) => {
                let s = for_introduced
                    .entry(n.clone())
                    .or_insert_with(|| {
                        let s = names.next_name();
                        let replaced = &introduced[n.as_str()];
                        sigma.insert(s.clone(), Formula::Atom(Atom::general(replaced.clone())));
                        s
                    })
                    .clone();
                let atom = Atom::general(s);
                if negative {
                    Formula::NegAtom(atom)
                } else {
                    Formula::Atom(atom)
                }
            }
            _ => {
                if negative {
                    Formula::NegAtom(a.clone())
                } else {
                    Formula::Atom(a.clone())
                }
            }
        }
    };
    let hprime = map_leaves(&leaf, &mut abstract_leaf);

    if !Cirquent::from_formula(hprime.clone()).binarity().is_binary() {
        return Err(ExtractError::Postcondition(format!("{hprime} is not binary")));
    }
    let taut = formula_tautology(&hprime, DEFAULT_MAX_ATOMS)
        .map_err(|e| ExtractError::Postcondition(e.to_string()))?;
    if !taut.holds() {
        return Err(ExtractError::Postcondition(format!("{hprime} is not a tautology")));
    }
    if hprime.substitute(&sigma) != goal || match_formula(&hprime, &goal, &sigma).is_none() {
        return Err(ExtractError::Postcondition(format!(
            "{goal} is not the instance {sigma} of {hprime}"
        )));
    }
    Ok((hprime, sigma))
}

fn map_leaves(f: &Formula, leaf: &mut impl FnMut(&Atom, bool) -> Formula) -> Formula {
    match f {
        Formula::Atom(a) => leaf(a, false),
        Formula::NegAtom(a) => leaf(a, true),
        Formula::And(l, r) => Formula::and(map_leaves(l, leaf), map_leaves(r, leaf)),
        Formula::Or(l, r) => Formula::or(map_leaves(l, leaf), map_leaves(r, leaf)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PremiseError {
    #[error("{0} is not a normal binary formula")]
    NotNormalBinary(Formula),
    #[error("{0} is not a tautology")]
    NotTautology(Formula),
    #[error("substitution {0} is not atomic-level")]
    NotAtomicLevel(Substitution),
    #[error(transparent)]
    Budget(#[from] TautologyError),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

/// From a normal binary tautology `t` and an atomic-level `σ`, builds a
/// stable CL6 formula `g` and a CL2 proof of `σ(t)` whose Rule (a) leaf is
/// `g`.
///
/// In `g`, an atom of `t` with one occurrence is replaced by its image; a
/// married atom (two occurrences) is replaced by its image when that is
/// elementary, and otherwise by a fresh elementary atom `c1`, `c2`, … that
/// Rule (c) steps then turn back into the image, in order.
pub fn build_stable_premise(
    t: &Formula,
    sigma: &Substitution,
) -> Result<(Cl2Formula, Cl2Proof), PremiseError> {
    if !Cirquent::from_formula(t.clone()).binarity().is_normal() {
        return Err(PremiseError::NotNormalBinary(t.clone()));
    }
    if !formula_tautology(t, DEFAULT_MAX_ATOMS)?.holds() {
        return Err(PremiseError::NotTautology(t.clone()));
    }
    if !sigma.is_atomic_level() {
        return Err(PremiseError::NotAtomicLevel(sigma.clone()));
    }
    let f = t.substitute(sigma);
    let counts = Cirquent::from_formula(t.clone())
        .general_occurrences()
        .into_iter()
        .map(|(n, (pos, neg))| (n.to_string(), pos + neg))
        .collect::<BTreeMap<_, _>>();

    let mut taken = crate::formula::Formula::atoms(&f)
        .into_iter()
        .chain(t.atoms())
        .filter_map(|a| a.name().map(str::to_string))
        .collect::<BTreeSet<_>>();
    taken.extend(sigma.iter().map(|(k, _)| k.to_string()));
    let mut names = FreshNames::new("c", taken);
    // fresh elementary atom -> general image, in allocation order
    let mut revert: Vec<(String, Atom)> = Vec::new();
    let mut fresh_for: BTreeMap<String, Atom> = BTreeMap::new();
    let mut build = |a: &Atom, negative: bool| -> Formula {
        let image = match a {
            Atom::General(n) => {
                let image = match sigma.get(n) {
                    Some(Formula::Atom(img)) => img.clone(),
                    _ => a.clone(),
                };
                if counts.get(n).copied() == Some(2) && image.is_general() {
                    fresh_for
                        .entry(n.clone())
                        .or_insert_with(|| {
                            let c = names.next_name();
                            revert.push((c.clone(), image.clone()));
                            Atom::elementary(c)
                        })
                        .clone()
                } else {
                    image
                }
            }
            _ => a.clone(),
        };
        if negative {
            Formula::not_atom(image)
        } else {
            Formula::Atom(image)
        }
    };
    let g = map_leaves(t, &mut build);
    let g2 = Cl2Formula::from(&g);
    if !is_stable(&g2, DEFAULT_MAX_ATOMS)? {
        return Err(PremiseError::Postcondition(format!("{g} is not stable")));
    }

    let mut steps = vec![Cl2Step {
        formula: g2.clone(),
        rule: Cl2Rule::A,
        premises: Vec::new(),
    }];
    let mut current = g2.clone();
    for (c, image) in revert {
        let (mut pos, mut neg) = (None, None);
        for (path, node) in current.surface() {
            match node {
                Cl2Formula::Atom(Atom::Elementary(n)) if *n == c => pos = Some(path),
                Cl2Formula::NegAtom(Atom::Elementary(n)) if *n == c => neg = Some(path),
                _ => {}
            }
        }
        let (Some(pp), Some(np)) = (pos, neg) else {
            return Err(PremiseError::Postcondition(format!(
                "married atom `{c}` lacks an occurrence of each polarity"
            )));
        };
        current = current
            .replace(&pp, Cl2Formula::Atom(image.clone()))
            .and_then(|h| h.replace(&np, Cl2Formula::NegAtom(image.clone())))
            .expect("paths found in current formula");
        let k = steps.len();
        steps.push(Cl2Step {
            formula: current.clone(),
            rule: Cl2Rule::C {
                paths: [pp, np],
                fresh: c,
            },
            premises: vec![k - 1],
        });
    }
    if current != Cl2Formula::from(&f) {
        return Err(PremiseError::Postcondition(format!(
            "chain ends at {current}, expected {f}"
        )));
    }
    let proof = Cl2Proof { steps };
    check_cl2_proof(&proof).map_err(|v| PremiseError::Postcondition(v.to_string()))?;
    Ok((g2, proof))
}
