//! The eight CL6 rules, applied top-down (premises to conclusion) and read
//! bottom-up, plus the proof checker.
//!
//! All positions in rule parameters are 1-based. Exchange, ∨- and
//! ∧-introduction act on positions `i` and `i + 1` of the premise.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cirquent::{Cirquent, Group};
use crate::formula::Formula;

/// One application of a CL6 rule, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum RuleApplication {
    AxiomEmpty,
    AxiomNot {
        #[serde(rename = "F")]
        formula: Formula,
    },
    AxiomTop,
    Mix,
    ExchangeOformula {
        i: usize,
    },
    ExchangeOgroup {
        i: usize,
    },
    WeakenOgroup {
        g: usize,
        i: usize,
    },
    WeakenPool {
        i: usize,
        #[serde(rename = "F")]
        formula: Formula,
    },
    Duplicate {
        g: usize,
    },
    Contract {
        i: usize,
    },
    OrIntro {
        i: usize,
    },
    AndIntro {
        i: usize,
    },
}

impl RuleApplication {
    pub fn name(&self) -> &'static str {
        match self {
            RuleApplication::AxiomEmpty => "axiom-empty",
            RuleApplication::AxiomNot { .. } => "axiom-not",
            RuleApplication::AxiomTop => "axiom-top",
            RuleApplication::Mix => "mix",
            RuleApplication::ExchangeOformula { .. } => "exchange-oformula",
            RuleApplication::ExchangeOgroup { .. } => "exchange-ogroup",
            RuleApplication::WeakenOgroup { .. } => "weaken-ogroup",
            RuleApplication::WeakenPool { .. } => "weaken-pool",
            RuleApplication::Duplicate { .. } => "duplicate",
            RuleApplication::Contract { .. } => "contract",
            RuleApplication::OrIntro { .. } => "or-intro",
            RuleApplication::AndIntro { .. } => "and-intro",
        }
    }

    /// Number of premises the rule takes.
    pub fn arity(&self) -> usize {
        match self {
            RuleApplication::AxiomEmpty
            | RuleApplication::AxiomNot { .. }
            | RuleApplication::AxiomTop => 0,
            RuleApplication::Mix => 2,
            _ => 1,
        }
    }

    pub fn is_axiom(&self) -> bool {
        self.arity() == 0
    }
}

impl fmt::Display for RuleApplication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        match self {
            RuleApplication::AxiomEmpty | RuleApplication::AxiomTop | RuleApplication::Mix => {
                Ok(())
            }
            RuleApplication::AxiomNot { formula } => write!(f, " F={formula}"),
            RuleApplication::ExchangeOformula { i }
            | RuleApplication::ExchangeOgroup { i }
            | RuleApplication::Contract { i }
            | RuleApplication::OrIntro { i }
            | RuleApplication::AndIntro { i } => write!(f, " i={i}"),
            RuleApplication::WeakenOgroup { g, i } => write!(f, " g={g} i={i}"),
            RuleApplication::WeakenPool { i, formula } => write!(f, " i={i} F={formula}"),
            RuleApplication::Duplicate { g } => write!(f, " g={g}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("{rule} takes {expected} premise(s), got {found}")]
    PremiseCount {
        rule: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("premise is malformed: {0}")]
    MalformedPremise(String),
    #[error("{what} position {position} out of range (size {size})")]
    OutOfRange {
        what: &'static str,
        position: usize,
        size: usize,
    },
    #[error("ogroup {g} already contains oformula {i}")]
    ArcExists { g: usize, i: usize },
    #[error("ogroup {g} does not contain oformula {i}")]
    ArcMissing { g: usize, i: usize },
    #[error("contraction requires identical oformulas")]
    NotIdentical,
    #[error("contraction requires elementary oformulas")]
    NotElementary,
    #[error("oformula {i} is not a {expected}")]
    WrongConnective { i: usize, expected: &'static str },
    #[error("oformula {i} is not contained by any ogroup")]
    NotGrouped { i: usize },
    #[error("ogroups not in the required form: {0}")]
    BadSplit(String),
    #[error("ogroups {g} and {next} are not identical")]
    NotDuplicated { g: usize, next: usize },
    #[error("oformula {i} is not a homeless copy of the weakened formula")]
    NotWeakened { i: usize },
    #[error("conclusion is not the {0} axiom")]
    NotAxiom(&'static str),
    #[error("{0} has no unique bottom-up reading")]
    NotInvertible(&'static str),
}

fn in_range(what: &'static str, position: usize, size: usize) -> Result<(), RuleError> {
    if position == 0 || position > size {
        Err(RuleError::OutOfRange {
            what,
            position,
            size,
        })
    } else {
        Ok(())
    }
}

// Index maps shared by every rule that inserts or merges oformulas.

/// A new oformula lands at `at`; positions from `at` on move up by one.
fn after_insert(at: usize) -> impl Fn(usize) -> usize {
    move |j| if j >= at { j + 1 } else { j }
}

/// Positions `at` and `at + 1` collapse into `at`; later ones move down.
fn after_merge(at: usize) -> impl Fn(usize) -> usize {
    move |j| if j > at { j - 1 } else { j }
}

/// Position `at` disappears; later ones move down.
fn after_remove(at: usize) -> impl Fn(usize) -> Option<usize> {
    move |j| match j.cmp(&at) {
        std::cmp::Ordering::Less => Some(j),
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Greater => Some(j - 1),
    }
}

fn remap_all(groups: &[Group], f: impl Fn(usize) -> usize) -> Vec<Group> {
    groups.iter().map(|g| g.remap(|j| Some(f(j)))).collect()
}

/// The axiom `(⟨{1,2}⟩, ⟨F, ¬F⟩)`.
pub fn axiom_not(formula: &Formula) -> Cirquent {
    Cirquent::new(
        vec![formula.clone(), formula.negate()],
        vec![Group::from([1, 2])],
    )
}

/// The axiom `(⟨{1}⟩, ⟨⊤⟩)`.
pub fn axiom_top() -> Cirquent {
    Cirquent::from_formula(Formula::top())
}

/// Applies a rule top-down.
pub fn apply_rule(rule: &RuleApplication, premises: &[Cirquent]) -> Result<Cirquent, RuleError> {
    if premises.len() != rule.arity() {
        return Err(RuleError::PremiseCount {
            rule: rule.name(),
            expected: rule.arity(),
            found: premises.len(),
        });
    }
    for p in premises {
        if let Some(d) = p.validate().into_iter().next() {
            return Err(RuleError::MalformedPremise(d.to_string()));
        }
    }
    match rule {
        RuleApplication::AxiomEmpty => Ok(Cirquent::empty()),
        RuleApplication::AxiomNot { formula } => Ok(axiom_not(formula)),
        RuleApplication::AxiomTop => Ok(axiom_top()),
        RuleApplication::Mix => Ok(mix(&premises[0], &premises[1])),
        RuleApplication::ExchangeOformula { i } => exchange_oformula(&premises[0], *i),
        RuleApplication::ExchangeOgroup { i } => exchange_ogroup(&premises[0], *i),
        RuleApplication::WeakenOgroup { g, i } => {
            let p = &premises[0];
            in_range("ogroup", *g, p.groups.len())?;
            in_range("oformula", *i, p.pool.len())?;
            let mut out = p.clone();
            if !out.groups[g - 1].insert(*i) {
                return Err(RuleError::ArcExists { g: *g, i: *i });
            }
            Ok(out)
        }
        RuleApplication::WeakenPool { i, formula } => {
            let p = &premises[0];
            in_range("insertion", *i, p.pool.len() + 1)?;
            let mut pool = p.pool.clone();
            pool.insert(i - 1, formula.clone());
            Ok(Cirquent::new(pool, remap_all(&p.groups, after_insert(*i))))
        }
        RuleApplication::Duplicate { g } => {
            let p = &premises[0];
            in_range("ogroup", *g, p.groups.len())?;
            let mut out = p.clone();
            out.groups.insert(*g, p.groups[g - 1].clone());
            Ok(out)
        }
        RuleApplication::Contract { i } => contract(&premises[0], *i),
        RuleApplication::OrIntro { i } => or_intro(&premises[0], *i),
        RuleApplication::AndIntro { i } => and_intro(&premises[0], *i),
    }
}

fn mix(a: &Cirquent, b: &Cirquent) -> Cirquent {
    let shift = a.pool.len();
    let mut pool = a.pool.clone();
    pool.extend(b.pool.iter().cloned());
    let mut groups = a.groups.clone();
    groups.extend(remap_all(&b.groups, |j| j + shift));
    Cirquent::new(pool, groups)
}

fn adjacent_pair(p: &Cirquent, i: usize) -> Result<(), RuleError> {
    in_range("oformula", i, p.pool.len())?;
    in_range("oformula", i + 1, p.pool.len())
}

fn exchange_oformula(p: &Cirquent, i: usize) -> Result<Cirquent, RuleError> {
    adjacent_pair(p, i)?;
    let mut pool = p.pool.clone();
    pool.swap(i - 1, i);
    let swap = |j: usize| {
        if j == i {
            i + 1
        } else if j == i + 1 {
            i
        } else {
            j
        }
    };
    Ok(Cirquent::new(pool, remap_all(&p.groups, swap)))
}

fn exchange_ogroup(p: &Cirquent, i: usize) -> Result<Cirquent, RuleError> {
    in_range("ogroup", i, p.groups.len())?;
    in_range("ogroup", i + 1, p.groups.len())?;
    let mut out = p.clone();
    out.groups.swap(i - 1, i);
    Ok(out)
}

fn contract(p: &Cirquent, i: usize) -> Result<Cirquent, RuleError> {
    adjacent_pair(p, i)?;
    let (first, second) = (&p.pool[i - 1], &p.pool[i]);
    if first != second {
        return Err(RuleError::NotIdentical);
    }
    if !first.is_elementary() {
        return Err(RuleError::NotElementary);
    }
    let mut pool = p.pool.clone();
    pool.remove(i);
    Ok(Cirquent::new(pool, remap_all(&p.groups, after_merge(i))))
}

fn or_intro(p: &Cirquent, i: usize) -> Result<Cirquent, RuleError> {
    adjacent_pair(p, i)?;
    let mut grouped = false;
    for (k, g) in p.groups.iter().enumerate() {
        match (g.contains(i), g.contains(i + 1)) {
            (true, true) => grouped = true,
            (false, false) => {}
            _ => {
                return Err(RuleError::BadSplit(format!(
                    "ogroup {} contains only one of oformulas {i} and {}",
                    k + 1,
                    i + 1
                )))
            }
        }
    }
    if !grouped {
        return Err(RuleError::NotGrouped { i });
    }
    let mut pool = p.pool.clone();
    let right = pool.remove(i);
    let left = std::mem::replace(&mut pool[i - 1], Formula::top());
    pool[i - 1] = Formula::or(left, right);
    Ok(Cirquent::new(pool, remap_all(&p.groups, after_merge(i))))
}

fn and_intro(p: &Cirquent, i: usize) -> Result<Cirquent, RuleError> {
    adjacent_pair(p, i)?;
    let merge = after_merge(i);
    let mut groups = Vec::with_capacity(p.groups.len());
    let mut pairs = 0;
    let mut k = 0;
    while k < p.groups.len() {
        let g = &p.groups[k];
        match (g.contains(i), g.contains(i + 1)) {
            (false, false) => {
                groups.push(g.remap(|j| Some(merge(j))));
                k += 1;
            }
            (true, true) => {
                return Err(RuleError::BadSplit(format!(
                    "ogroup {} contains both oformulas {i} and {}",
                    k + 1,
                    i + 1
                )))
            }
            (false, true) => {
                return Err(RuleError::BadSplit(format!(
                    "ogroup {} contains oformula {} without a preceding partner",
                    k + 1,
                    i + 1
                )))
            }
            (true, false) => {
                let partner = p.groups.get(k + 1).ok_or_else(|| {
                    RuleError::BadSplit(format!("ogroup {} has no partner", k + 1))
                })?;
                let rest_e = g.remap(|j| (j != i).then_some(j));
                let rest_f = partner.remap(|j| (j != i + 1).then_some(j));
                if partner.contains(i) || !partner.contains(i + 1) || rest_e != rest_f {
                    return Err(RuleError::BadSplit(format!(
                        "ogroups {} and {} are not a split pair",
                        k + 1,
                        k + 2
                    )));
                }
                groups.push(g.remap(|j| Some(merge(j))));
                pairs += 1;
                k += 2;
            }
        }
    }
    if pairs == 0 {
        return Err(RuleError::NotGrouped { i });
    }
    let mut pool = p.pool.clone();
    let right = pool.remove(i);
    let left = std::mem::replace(&mut pool[i - 1], Formula::top());
    pool[i - 1] = Formula::and(left, right);
    Ok(Cirquent::new(pool, groups))
}

/// Reads a rule bottom-up: the premises from which `rule` yields
/// `conclusion`. Mix and contraction have no unique reading and are refused.
pub fn premises_schema(
    rule: &RuleApplication,
    conclusion: &Cirquent,
) -> Result<Vec<Cirquent>, RuleError> {
    if let Some(d) = conclusion.validate().into_iter().next() {
        return Err(RuleError::MalformedPremise(d.to_string()));
    }
    let c = conclusion;
    match rule {
        RuleApplication::AxiomEmpty => axiom_check(c.is_empty(), "empty"),
        RuleApplication::AxiomNot { formula } => axiom_check(*c == axiom_not(formula), "¬"),
        RuleApplication::AxiomTop => axiom_check(*c == axiom_top(), "⊤"),
        RuleApplication::Mix => Err(RuleError::NotInvertible("mix")),
        RuleApplication::Contract { .. } => Err(RuleError::NotInvertible("contract")),
        RuleApplication::ExchangeOformula { i } => Ok(vec![exchange_oformula(c, *i)?]),
        RuleApplication::ExchangeOgroup { i } => Ok(vec![exchange_ogroup(c, *i)?]),
        RuleApplication::WeakenOgroup { g, i } => {
            in_range("ogroup", *g, c.groups.len())?;
            in_range("oformula", *i, c.pool.len())?;
            let mut out = c.clone();
            if !out.groups[g - 1].remove(*i) {
                return Err(RuleError::ArcMissing { g: *g, i: *i });
            }
            Ok(vec![out])
        }
        RuleApplication::WeakenPool { i, formula } => {
            in_range("oformula", *i, c.pool.len())?;
            if c.pool[i - 1] != *formula || !c.is_homeless(*i) {
                return Err(RuleError::NotWeakened { i: *i });
            }
            Ok(vec![remove_oformula(c, *i)])
        }
        RuleApplication::Duplicate { g } => {
            in_range("ogroup", *g, c.groups.len())?;
            in_range("ogroup", g + 1, c.groups.len())?;
            if c.groups[g - 1] != c.groups[*g] {
                return Err(RuleError::NotDuplicated { g: *g, next: g + 1 });
            }
            let mut out = c.clone();
            out.groups.remove(*g);
            Ok(vec![out])
        }
        RuleApplication::OrIntro { i } => {
            let (e, f) = match c.oformula(*i) {
                Some(Formula::Or(e, f)) => (e, f),
                Some(_) => {
                    return Err(RuleError::WrongConnective {
                        i: *i,
                        expected: "disjunction",
                    })
                }
                None => return Err(out_of_pool(*i, c)),
            };
            if c.is_homeless(*i) {
                return Err(RuleError::NotGrouped { i: *i });
            }
            let pool = split_pool(c, *i, e, f);
            let shift = after_insert(i + 1);
            let groups = c
                .groups
                .iter()
                .map(|g| {
                    let mut out = g.remap(|j| Some(shift(j)));
                    if g.contains(*i) {
                        out.insert(i + 1);
                    }
                    out
                })
                .collect();
            Ok(vec![Cirquent::new(pool, groups)])
        }
        RuleApplication::AndIntro { i } => {
            let (e, f) = match c.oformula(*i) {
                Some(Formula::And(e, f)) => (e, f),
                Some(_) => {
                    return Err(RuleError::WrongConnective {
                        i: *i,
                        expected: "conjunction",
                    })
                }
                None => return Err(out_of_pool(*i, c)),
            };
            if c.is_homeless(*i) {
                return Err(RuleError::NotGrouped { i: *i });
            }
            let pool = split_pool(c, *i, e, f);
            let shift = after_insert(i + 1);
            let mut groups = Vec::with_capacity(c.groups.len() + 1);
            for g in &c.groups {
                let base = g.remap(|j| Some(shift(j)));
                if g.contains(*i) {
                    let mut with_f = base.clone();
                    with_f.remove(*i);
                    with_f.insert(i + 1);
                    groups.push(base);
                    groups.push(with_f);
                } else {
                    groups.push(base);
                }
            }
            Ok(vec![Cirquent::new(pool, groups)])
        }
    }
}

fn axiom_check(ok: bool, which: &'static str) -> Result<Vec<Cirquent>, RuleError> {
    if ok {
        Ok(Vec::new())
    } else {
        Err(RuleError::NotAxiom(which))
    }
}

fn out_of_pool(i: usize, c: &Cirquent) -> RuleError {
    RuleError::OutOfRange {
        what: "oformula",
        position: i,
        size: c.pool.len(),
    }
}

fn split_pool(c: &Cirquent, i: usize, e: &Formula, f: &Formula) -> Vec<Formula> {
    let mut pool = c.pool.clone();
    pool[i - 1] = e.clone();
    pool.insert(i, f.clone());
    pool
}

/// Drops the oformula at `i` and every arc to it.
pub(crate) fn remove_oformula(c: &Cirquent, i: usize) -> Cirquent {
    let mut pool = c.pool.clone();
    pool.remove(i - 1);
    let drop = after_remove(i);
    Cirquent::new(pool, c.groups.iter().map(|g| g.remap(&drop)).collect())
}

/// The premise of a contraction at `i` whose first copy keeps the arcs of
/// the ogroups in `first` and whose second copy keeps the arcs of `second`
/// (1-based ogroup positions). The oformula at `i` is duplicated in place.
pub fn contraction_premise(
    conclusion: &Cirquent,
    i: usize,
    first: &[usize],
    second: &[usize],
) -> Result<Cirquent, RuleError> {
    in_range("oformula", i, conclusion.pool.len())?;
    let mut pool = conclusion.pool.clone();
    pool.insert(i, pool[i - 1].clone());
    let shift = after_insert(i + 1);
    let groups = conclusion
        .groups
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let mut out = g.remap(|j| (j != i).then(|| shift(j)));
            if g.contains(i) {
                if first.contains(&(k + 1)) {
                    out.insert(i);
                }
                if second.contains(&(k + 1)) {
                    out.insert(i + 1);
                }
            }
            out
        })
        .collect();
    Ok(Cirquent::new(pool, groups))
}

/// A failed step check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepViolation {
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error("conclusion mismatch: rule yields {expected}, claimed {claimed}")]
    ConclusionMismatch { expected: String, claimed: String },
}

/// Checks that `rule` applied to `premises` yields exactly `claimed`.
pub fn check_step(
    premises: &[Cirquent],
    rule: &RuleApplication,
    claimed: &Cirquent,
) -> Result<(), StepViolation> {
    let got = apply_rule(rule, premises)?;
    if got != *claimed {
        return Err(StepViolation::ConclusionMismatch {
            expected: got.to_string(),
            claimed: claimed.to_string(),
        });
    }
    Ok(())
}

/// A proof node: a cirquent, the rule that concludes it, and the ids of its
/// premises in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofNode {
    pub id: usize,
    pub cirquent: Cirquent,
    pub rule: RuleApplication,
    pub premises: Vec<usize>,
}

/// A proof tree stored as a node list; `root` is the id of the node proving
/// the end cirquent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Proof {
    pub nodes: Vec<ProofNode>,
    pub root: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at node {node} (path {path:?}): {reason}")]
pub struct ProofViolation {
    pub node: usize,
    /// Premise indices leading from the root to the offending node.
    pub path: Vec<usize>,
    pub reason: String,
}

impl Proof {
    /// Starts an empty node list. Nodes get consecutive ids.
    pub fn builder() -> ProofBuilder {
        ProofBuilder { nodes: Vec::new() }
    }

    pub fn node(&self, id: usize) -> Option<&ProofNode> {
        self.nodes
            .get(id)
            .filter(|n| n.id == id)
            .or_else(|| self.nodes.iter().find(|n| n.id == id))
    }

    /// The proved cirquent.
    pub fn conclusion(&self) -> Option<&Cirquent> {
        self.node(self.root).map(|n| &n.cirquent)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn uses(&self, rule_name: &str) -> bool {
        self.nodes.iter().any(|n| n.rule.name() == rule_name)
    }

    /// Verifies every node against its premises, walking from the root.
    pub fn check(&self) -> Result<(), ProofViolation> {
        check_proof(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("proofs always serialize")
    }

    pub fn from_json(text: &str) -> Result<Proof, serde_json::Error> {
        serde_json::from_str(text)
    }
}

pub struct ProofBuilder {
    nodes: Vec<ProofNode>,
}

impl ProofBuilder {
    pub fn add(&mut self, cirquent: Cirquent, rule: RuleApplication, premises: Vec<usize>) -> usize {
        let id = self.nodes.len();
        self.nodes.push(ProofNode {
            id,
            cirquent,
            rule,
            premises,
        });
        id
    }

    pub fn cirquent(&self, id: usize) -> &Cirquent {
        &self.nodes[id].cirquent
    }

    pub fn finish(self, root: usize) -> Proof {
        Proof {
            nodes: self.nodes,
            root,
        }
    }
}

/// Checks a whole proof: the node list must form a tree rooted at `root`,
/// and every node must pass [`check_step`] against its premises. Reports the
/// first violation in depth-first order from the root.
pub fn check_proof(proof: &Proof) -> Result<(), ProofViolation> {
    let mut index: HashMap<usize, usize> = HashMap::with_capacity(proof.nodes.len());
    for (k, n) in proof.nodes.iter().enumerate() {
        if index.insert(n.id, k).is_some() {
            return Err(ProofViolation {
                node: n.id,
                path: Vec::new(),
                reason: format!("duplicate node id {}", n.id),
            });
        }
    }
    if !index.contains_key(&proof.root) {
        return Err(ProofViolation {
            node: proof.root,
            path: Vec::new(),
            reason: "root node does not exist".into(),
        });
    }
    let mut seen: HashSet<usize> = HashSet::with_capacity(proof.nodes.len());
    let mut stack = vec![(proof.root, Vec::new())];
    while let Some((id, path)) = stack.pop() {
        let fail = |reason: String| ProofViolation {
            node: id,
            path: path.clone(),
            reason,
        };
        if !seen.insert(id) {
            return Err(fail("node is used more than once".into()));
        }
        let node = &proof.nodes[index[&id]];
        let mut premises = Vec::with_capacity(node.premises.len());
        for pid in &node.premises {
            match index.get(pid) {
                Some(&k) => premises.push(proof.nodes[k].cirquent.clone()),
                None => return Err(fail(format!("premise node {pid} does not exist"))),
            }
        }
        if let Some(d) = node.cirquent.validate().into_iter().next() {
            return Err(fail(format!("malformed cirquent: {d}")));
        }
        check_step(&premises, &node.rule, &node.cirquent).map_err(|e| fail(e.to_string()))?;
        for (k, pid) in node.premises.iter().enumerate().rev() {
            let mut child = path.clone();
            child.push(k);
            stack.push((*pid, child));
        }
    }
    if let Some(n) = proof.nodes.iter().find(|n| !seen.contains(&n.id)) {
        return Err(ProofViolation {
            node: n.id,
            path: Vec::new(),
            reason: "node is not reachable from the root".into(),
        });
    }
    Ok(())
}
