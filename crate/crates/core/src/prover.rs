//! The constructive CL6 prover.
//!
//! [`prove_cirquent`] proves binary tautologies directly. It works
//! bottom-up in five phases, each ending in a cirquent with a checked
//! shape:
//!
//! 1. split grouped compound oformulas with ∨/∧-introduction until every
//!    grouped oformula is a literal (`B`);
//! 2. keep one witness per ogroup (a `⊤`, or a pair of opposite literals)
//!    and weaken everything else away (`C`);
//! 3. contract so no elementary oformula is shared by two ogroups (`D`);
//! 4. merge ogroups with identical content by duplication (`E`);
//! 5. sort the pool into one block per ogroup with exchanges and prove `E`
//!    by a right-leaning chain of mixes over axioms.
//!
//! [`prove_formula`] handles arbitrary formulas: it decides the formula in
//! CL2, extracts a binary tautology of which the formula is an instance,
//! proves that, and lifts the proof with [`substitute_proof`].

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calculus::{
    apply_rule, axiom_not, axiom_top, contraction_premise, premises_schema, Proof,
    RuleApplication,
};
use crate::cirquent::{BinarityClass, Cirquent};
use crate::cl2::{decide_cl2, extract_binary_tautology, Cl2Budget, Cl2Decision, Cl2Exhaustion, Cl2Formula};
use crate::formula::{Atom, Formula, FreshNames, Model, Substitution};
use crate::truth::{Tautology, TautologyError, DEFAULT_MAX_ATOMS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OformulaTag {
    Oliteral,
    Homeless,
    Neither,
}

/// Per-oformula classification; `⊤` and `⊥` count as literals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialLiteralReport {
    pub cirquent: Cirquent,
    pub tags: Vec<OformulaTag>,
}

impl EssentialLiteralReport {
    pub fn is_essentially_literal(&self) -> bool {
        !self.tags.contains(&OformulaTag::Neither)
    }
}

pub fn is_essentially_literal(c: &Cirquent) -> EssentialLiteralReport {
    let tags = c
        .pool
        .iter()
        .enumerate()
        .map(|(k, f)| {
            if f.is_literal() {
                OformulaTag::Oliteral
            } else if c.is_homeless(k + 1) {
                OformulaTag::Homeless
            } else {
                OformulaTag::Neither
            }
        })
        .collect();
    EssentialLiteralReport {
        cirquent: c.clone(),
        tags,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProverConfig {
    pub max_atoms: usize,
    pub cl2: Cl2Budget,
}

impl Default for ProverConfig {
    fn default() -> ProverConfig {
        ProverConfig {
            max_atoms: DEFAULT_MAX_ATOMS,
            cl2: Cl2Budget::default(),
        }
    }
}

/// Why a goal has no proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The goal is binary and some model falsifies it.
    Countermodel(Model),
    /// CL2 search found no proof.
    Cl2Exhausted(Cl2Exhaustion),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProveOutcome {
    Proved(Proof),
    NotProvable(Witness),
    BudgetExceeded(String),
}

impl ProveOutcome {
    pub fn proof(&self) -> Option<&Proof> {
        match self {
            ProveOutcome::Proved(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_proved(&self) -> bool {
        matches!(self, ProveOutcome::Proved(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProveError {
    #[error("cirquent is not binary")]
    NotBinary,
    #[error("malformed cirquent: {0}")]
    Malformed(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// The cirquents reached at the end of phases 1 to 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseTrace {
    pub literal: Cirquent,
    pub witnessed: Cirquent,
    pub separated: Cirquent,
    pub merged: Cirquent,
}

/// Proves a cirquent if it is a binary tautology; reports a countermodel
/// if it is binary and falsifiable. Non-binary input is refused.
pub fn prove_cirquent(a: &Cirquent, config: &ProverConfig) -> Result<ProveOutcome, ProveError> {
    if let Some(d) = a.validate().into_iter().next() {
        return Err(ProveError::Malformed(d.to_string()));
    }
    if !a.binarity().is_binary() {
        return Err(ProveError::NotBinary);
    }
    match a.tautology(config.max_atoms) {
        Err(e) => Ok(ProveOutcome::BudgetExceeded(e.to_string())),
        Ok(Tautology::Fails(m)) => Ok(ProveOutcome::NotProvable(Witness::Countermodel(m))),
        Ok(Tautology::Holds) => {
            let (proof, _) = build_proof(a)?;
            Ok(ProveOutcome::Proved(proof))
        }
    }
}

fn invariant(ok: bool, what: impl FnOnce() -> String) -> Result<(), ProveError> {
    if ok {
        Ok(())
    } else {
        Err(ProveError::Invariant(what()))
    }
}

/// Rule applications recorded bottom-up: each entry's conclusion is the
/// previous entry's premise.
struct Spine {
    steps: Vec<(Cirquent, RuleApplication)>,
    current: Cirquent,
}

impl Spine {
    fn step(&mut self, rule: RuleApplication) -> Result<(), ProveError> {
        let premise = premises_schema(&rule, &self.current)
            .map_err(|e| ProveError::Invariant(format!("{rule} not applicable: {e}")))?
            .pop()
            .ok_or_else(|| ProveError::Invariant(format!("{rule} has no premise")))?;
        self.push(rule, premise);
        Ok(())
    }

    fn push(&mut self, rule: RuleApplication, premise: Cirquent) {
        let conclusion = std::mem::replace(&mut self.current, premise);
        self.steps.push((conclusion, rule));
    }
}

fn binary_at(c: &Cirquent, phase: &str) -> Result<(), ProveError> {
    invariant(c.binarity() != BinarityClass::NotBinary, || {
        format!("binarity lost after {phase}")
    })
}

/// 1-based positions of oformulas belonging to two or more ogroups.
pub fn shared_oformulas(c: &Cirquent) -> Vec<usize> {
    (1..=c.pool.len())
        .filter(|&i| c.groups_containing(i).len() >= 2)
        .collect()
}

fn is_witness_group(c: &Cirquent, g: usize) -> bool {
    let members: Vec<&Formula> = c.groups[g].iter().filter_map(|i| c.oformula(i)).collect();
    match members[..] {
        [f] => *f == Formula::top(),
        [x, y] => opposite_literals(x, y),
        _ => false,
    }
}

fn opposite_literals(x: &Formula, y: &Formula) -> bool {
    match (x, y) {
        (Formula::Atom(a), Formula::NegAtom(b)) | (Formula::NegAtom(a), Formula::Atom(b)) => {
            a == b && !a.is_logical()
        }
        _ => false,
    }
}

/// Runs phases 1 to 5 on a binary tautology and returns the checked proof
/// together with the intermediate cirquents.
pub fn build_proof(a: &Cirquent) -> Result<(Proof, PhaseTrace), ProveError> {
    let mut spine = Spine {
        steps: Vec::new(),
        current: a.clone(),
    };

    // phase 1
    loop {
        let c = &spine.current;
        let Some(i) = (1..=c.pool.len()).find(|&i| !c.pool[i - 1].is_literal() && !c.is_homeless(i))
        else {
            break;
        };
        let rule = match c.pool[i - 1] {
            Formula::Or(..) => RuleApplication::OrIntro { i },
            _ => RuleApplication::AndIntro { i },
        };
        spine.step(rule)?;
    }
    let literal = spine.current.clone();
    invariant(is_essentially_literal(&literal).is_essentially_literal(), || {
        "phase 1 did not reach an essentially literal cirquent".into()
    })?;
    binary_at(&literal, "phase 1")?;
    invariant(
        literal.is_tautology().map(|t| t.holds()).unwrap_or(false),
        || "phase 1 result is not a tautology".into(),
    )?;

    // phase 2
    let witnesses = literal
        .groups
        .iter()
        .enumerate()
        .map(|(g, group)| {
            pick_witness(&literal, group.iter().collect())
                .ok_or_else(|| ProveError::Invariant(format!("ogroup {} has no witness", g + 1)))
        })
        .collect::<Result<Vec<BTreeSet<usize>>, _>>()?;
    for g in (1..=literal.groups.len()).rev() {
        let members: Vec<usize> = literal.groups[g - 1].iter().collect();
        for &i in members.iter().rev() {
            if !witnesses[g - 1].contains(&i) {
                spine.step(RuleApplication::WeakenOgroup { g, i })?;
            }
        }
    }
    for i in (1..=spine.current.pool.len()).rev() {
        if spine.current.is_homeless(i) {
            let formula = spine.current.pool[i - 1].clone();
            spine.step(RuleApplication::WeakenPool { i, formula })?;
        }
    }
    let witnessed = spine.current.clone();
    invariant(
        (0..witnessed.groups.len()).all(|g| is_witness_group(&witnessed, g)),
        || format!("phase 2 left an ogroup that is not a bare witness: {witnessed}"),
    )?;
    invariant(
        (1..=witnessed.pool.len()).all(|i| !witnessed.is_homeless(i)),
        || "phase 2 left a homeless oformula".into(),
    )?;
    binary_at(&witnessed, "phase 2")?;

    // phase 3
    for i in (1..=spine.current.pool.len()).rev() {
        let mut at = i;
        loop {
            let c = &spine.current;
            let owners = c.groups_containing(at);
            if owners.len() < 2 || !c.pool[at - 1].is_elementary() {
                break;
            }
            let premise = contraction_premise(c, at, &owners[..1], &owners[1..])
                .map_err(|e| ProveError::Invariant(e.to_string()))?;
            spine.push(RuleApplication::Contract { i: at }, premise);
            at += 1;
        }
    }
    let separated = spine.current.clone();
    invariant(
        shared_oformulas(&separated)
            .iter()
            .all(|&i| !separated.pool[i - 1].is_elementary()),
        || "phase 3 left a shared elementary oformula".into(),
    )?;
    binary_at(&separated, "phase 3")?;

    // phase 4
    while let Some((a, b)) = first_identical_pair(&spine.current) {
        for j in (a + 1..b).rev() {
            spine.step(RuleApplication::ExchangeOgroup { i: j })?;
        }
        spine.step(RuleApplication::Duplicate { g: a })?;
    }
    let merged = spine.current.clone();
    invariant(first_identical_pair(&merged).is_none(), || {
        "phase 4 left identical ogroups".into()
    })?;
    invariant(shared_oformulas(&merged).is_empty(), || {
        "phase 4 left a shared oformula".into()
    })?;
    binary_at(&merged, "phase 4")?;

    // phase 5
    let owner = |c: &Cirquent, i: usize| c.groups_containing(i)[0];
    loop {
        let c = &spine.current;
        let Some(i) = (1..c.pool.len()).find(|&i| owner(c, i) > owner(c, i + 1)) else {
            break;
        };
        spine.step(RuleApplication::ExchangeOformula { i })?;
    }
    let sorted = spine.current.clone();
    let mut builder = Proof::builder();
    let mut axioms = Vec::with_capacity(sorted.groups.len());
    for group in &sorted.groups {
        let first = group.iter().next().expect("witness groups are non-empty");
        let f = sorted.pool[first - 1].clone();
        let (c, rule) = if f == Formula::top() {
            (axiom_top(), RuleApplication::AxiomTop)
        } else {
            (axiom_not(&f), RuleApplication::AxiomNot { formula: f })
        };
        axioms.push(builder.add(c, rule, Vec::new()));
    }
    let mut top = match axioms.pop() {
        None => builder.add(Cirquent::empty(), RuleApplication::AxiomEmpty, Vec::new()),
        Some(last) => last,
    };
    for &ax in axioms.iter().rev() {
        let conclusion = apply_rule(
            &RuleApplication::Mix,
            &[builder.cirquent(ax).clone(), builder.cirquent(top).clone()],
        )
        .map_err(|e| ProveError::Invariant(e.to_string()))?;
        top = builder.add(conclusion, RuleApplication::Mix, vec![ax, top]);
    }
    invariant(*builder.cirquent(top) == sorted, || {
        format!("axiom blocks do not assemble to {sorted}")
    })?;
    for (conclusion, rule) in spine.steps.into_iter().rev() {
        top = builder.add(conclusion, rule, vec![top]);
    }
    let proof = builder.finish(top);
    proof
        .check()
        .map_err(|v| ProveError::Invariant(format!("emitted proof fails the checker: {v}")))?;
    Ok((
        proof,
        PhaseTrace {
            literal,
            witnessed,
            separated,
            merged,
        },
    ))
}

/// A `⊤` if the ogroup has one, else the lexicographically least pair of
/// opposite non-logical literals. `⊥` is never chosen.
fn pick_witness(c: &Cirquent, members: Vec<usize>) -> Option<BTreeSet<usize>> {
    if let Some(&i) = members.iter().find(|&&i| c.pool[i - 1] == Formula::top()) {
        return Some(BTreeSet::from([i]));
    }
    for (k, &i) in members.iter().enumerate() {
        for &j in &members[k + 1..] {
            if opposite_literals(&c.pool[i - 1], &c.pool[j - 1]) {
                return Some(BTreeSet::from([i, j]));
            }
        }
    }
    None
}

/// The first pair `a < b` (1-based) of ogroups with the same content.
fn first_identical_pair(c: &Cirquent) -> Option<(usize, usize)> {
    for a in 0..c.groups.len() {
        for b in a + 1..c.groups.len() {
            if c.groups[a] == c.groups[b] {
                return Some((a + 1, b + 1));
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstitutionError {
    #[error("input proof fails the checker: {0}")]
    InvalidProof(String),
    #[error("contraction at node {node} would contract non-elementary {formula}")]
    NonElementaryContraction { node: usize, formula: Formula },
}

/// Applies `s` to every cirquent of a proof. The rules stay the same;
/// formula parameters of axioms and pool weakenings are substituted too.
pub fn substitute_proof(p: &Proof, s: &Substitution) -> Result<Proof, SubstitutionError> {
    p.check()
        .map_err(|v| SubstitutionError::InvalidProof(v.to_string()))?;
    let mut out = p.clone();
    for node in &mut out.nodes {
        node.cirquent = node.cirquent.substitute(s);
        match &mut node.rule {
            RuleApplication::AxiomNot { formula } | RuleApplication::WeakenPool { formula, .. } => {
                *formula = formula.substitute(s);
            }
            RuleApplication::Contract { i } => {
                let f = &node.cirquent.pool[*i - 1];
                if !f.is_elementary() {
                    return Err(SubstitutionError::NonElementaryContraction {
                        node: node.id,
                        formula: f.clone(),
                    });
                }
            }
            _ => {}
        }
    }
    out.check()
        .map_err(|v| SubstitutionError::InvalidProof(format!("after substitution: {v}")))?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("{0} is not binary")]
    NotBinary(Cirquent),
    #[error("not a tautology; countermodel {0:?}")]
    NotTautology(Model),
    #[error(transparent)]
    Budget(#[from] TautologyError),
    #[error("target is not an instance of the pattern")]
    NoMatch,
    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

/// Output of [`normalize_binary`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalBinary {
    /// The input pattern with one occurrence of each same-polarity pair
    /// renamed apart.
    pub normal: Cirquent,
    /// A normal binary tautology of which the target is an atomic-level
    /// instance.
    pub pattern: Cirquent,
    /// Atomic-level, with `sigma2(pattern) = target`.
    pub sigma2: Substitution,
}

/// Given a binary tautology `b` and an instance `a` of it, finds a normal
/// binary tautology of which `a` is an atomic-level instance.
///
/// The second of two same-polarity occurrences of a general atom `P` is
/// renamed to a fresh `Q{k}`. Then every general atom whose image is not a
/// bare atom is replaced by its image with each non-logical atom
/// occurrence renamed to a fresh general `X{k}`.
pub fn normalize_binary(b: &Cirquent, a: &Cirquent) -> Result<NormalBinary, NormalizeError> {
    if !b.binarity().is_binary() {
        return Err(NormalizeError::NotBinary(b.clone()));
    }
    if let Tautology::Fails(m) = b.is_tautology()? {
        return Err(NormalizeError::NotTautology(m));
    }
    let sigma = b.match_instance(a).ok_or(NormalizeError::NoMatch)?;

    let mut taken: BTreeSet<String> = BTreeSet::new();
    for c in [a, b] {
        taken.extend(c.atoms().iter().filter_map(|x| x.name().map(str::to_string)));
    }
    taken.extend(sigma.iter().map(|(k, _)| k.to_string()));

    let mut q_names = FreshNames::new("Q", taken.clone());
    let mut sigma1 = sigma.clone();
    let mut seen: BTreeSet<(String, bool)> = BTreeSet::new();
    let counts = b.general_occurrences();
    let normal_pool: Vec<Formula> = b
        .pool
        .iter()
        .map(|f| {
            map_literals(f, &mut |atom, negative| match atom {
                Atom::General(n) => {
                    let (pos, neg) = counts[n.as_str()];
                    let same_polarity = if negative { neg == 2 } else { pos == 2 };
                    if same_polarity && !seen.insert((n.clone(), negative)) {
                        let q = q_names.next_name();
                        if let Some(img) = sigma.get(n) {
                            sigma1.insert(q.clone(), img.clone());
                        } else {
                            sigma1.insert(q.clone(), Formula::Atom(atom.clone()));
                        }
                        literal(Atom::general(q), negative)
                    } else {
                        literal(atom.clone(), negative)
                    }
                }
                _ => literal(atom.clone(), negative),
            })
        })
        .collect();
    let normal = Cirquent::new(normal_pool, b.groups.clone());

    let mut taken2 = taken;
    taken2.extend(normal.atoms().iter().filter_map(|x| x.name().map(str::to_string)));
    let mut x_names = FreshNames::new("X", taken2);
    let mut sigma_prime = Substitution::new();
    let mut sigma2 = Substitution::new();
    for (name, img) in sigma1.iter() {
        match img {
            Formula::Atom(_) => {
                sigma2.insert(name, img.clone());
            }
            _ => {
                let fresh = map_literals(img, &mut |atom, negative| {
                    if atom.is_logical() {
                        return literal(atom.clone(), negative);
                    }
                    let x = x_names.next_name();
                    sigma2.insert(x.clone(), Formula::Atom(atom.clone()));
                    literal(Atom::general(x), negative)
                });
                sigma_prime.insert(name, fresh);
            }
        }
    }
    let pattern = normal.substitute(&sigma_prime);

    let check = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(NormalizeError::Postcondition(what.to_string()))
        }
    };
    check(normal.binarity().is_normal(), "renamed pattern is not normal binary")?;
    check(pattern.binarity().is_normal(), "result is not normal binary")?;
    check(pattern.is_tautology()?.holds(), "result is not a tautology")?;
    check(sigma2.is_atomic_level(), "sigma2 is not atomic-level")?;
    check(pattern.substitute(&sigma2) == *a, "sigma2(result) differs from the target")?;
    Ok(NormalBinary {
        normal,
        pattern,
        sigma2,
    })
}

fn literal(atom: Atom, negative: bool) -> Formula {
    if negative {
        Formula::not_atom(atom)
    } else {
        Formula::Atom(atom)
    }
}

fn map_literals(f: &Formula, leaf: &mut impl FnMut(&Atom, bool) -> Formula) -> Formula {
    match f {
        Formula::Atom(a) => leaf(a, false),
        Formula::NegAtom(a) => leaf(a, true),
        Formula::And(l, r) => Formula::and(map_literals(l, leaf), map_literals(r, leaf)),
        Formula::Or(l, r) => Formula::or(map_literals(l, leaf), map_literals(r, leaf)),
    }
}

/// Proves a formula through CL2: decide, extract a binary tautology `h′`
/// with `σ(h′) = f`, prove `h′`, substitute.
pub fn prove_formula(f: &Formula, config: &ProverConfig) -> Result<ProveOutcome, ProveError> {
    let goal = Cirquent::from_formula(f.clone());
    let budget = Cl2Budget {
        max_atoms: config.max_atoms,
        ..config.cl2.clone()
    };
    let cl2 = match decide_cl2(&Cl2Formula::from(f), &budget) {
        Err(e) => return Ok(ProveOutcome::BudgetExceeded(e.to_string())),
        Ok(Cl2Decision::Unprovable(ex)) => {
            return Ok(ProveOutcome::NotProvable(Witness::Cl2Exhausted(ex)))
        }
        Ok(Cl2Decision::Provable(p)) => p,
    };
    let (hprime, sigma) = extract_binary_tautology(&cl2)
        .map_err(|e| ProveError::Invariant(format!("extraction failed: {e}")))?;
    let pattern = Cirquent::from_formula(hprime);
    invariant(pattern.match_instance(&goal).is_some(), || {
        "goal is not an instance of the extracted tautology".into()
    })?;
    let proof = match prove_cirquent(&pattern, config)? {
        ProveOutcome::Proved(p) => p,
        ProveOutcome::BudgetExceeded(m) => return Ok(ProveOutcome::BudgetExceeded(m)),
        ProveOutcome::NotProvable(_) => {
            return Err(ProveError::Invariant(
                "extracted tautology was not provable".into(),
            ))
        }
    };
    let lifted = substitute_proof(&proof, &sigma).map_err(|e| ProveError::Invariant(e.to_string()))?;
    invariant(lifted.conclusion() == Some(&goal), || {
        "lifted proof does not conclude the goal".into()
    })?;
    Ok(ProveOutcome::Proved(lifted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cirquent::Group;

    fn f(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    fn c(pool: &[&str], groups: &[&[usize]]) -> Cirquent {
        Cirquent::new(
            pool.iter().map(|s| f(s)).collect(),
            groups.iter().map(|g| g.iter().copied().collect::<Group>()).collect(),
        )
    }

    fn prove(a: &Cirquent) -> Proof {
        match prove_cirquent(a, &ProverConfig::default()).unwrap() {
            ProveOutcome::Proved(p) => p,
            other => panic!("not proved: {other:?}"),
        }
    }

    #[test]
    fn essentially_literal_examples() {
        assert!(is_essentially_literal(&c(&["p", "~P"], &[&[1, 2]])).is_essentially_literal());
        let r = is_essentially_literal(&c(&["p | q"], &[&[1]]));
        assert_eq!(r.tags, vec![OformulaTag::Neither]);
        let r = is_essentially_literal(&c(&["p | q"], &[]));
        assert_eq!(r.tags, vec![OformulaTag::Homeless]);
        assert!(r.is_essentially_literal());
    }

    #[test]
    fn excluded_middle() {
        let p = prove(&Cirquent::from_formula(f("p | ~p")));
        let rules: Vec<&str> = p.nodes.iter().map(|n| n.rule.name()).collect();
        assert_eq!(rules, vec!["axiom-not", "or-intro"]);
    }

    #[test]
    fn axiom_is_its_own_proof() {
        let p = prove(&c(&["P", "~P"], &[&[1, 2]]));
        assert_eq!(p.len(), 1);
        assert_eq!(p.nodes[0].rule.name(), "axiom-not");
    }

    #[test]
    fn contraction_is_used_for_p_implies_p_and_p() {
        let p = prove(&Cirquent::from_formula(f("~p | (p & p)")));
        assert!(p.uses("contract"));
    }

    #[test]
    fn non_binary_is_refused_and_falsifiable_has_countermodel() {
        let a = Cirquent::from_formula(f("~P | (P & P)"));
        assert_eq!(prove_cirquent(&a, &ProverConfig::default()), Err(ProveError::NotBinary));
        let a = Cirquent::from_formula(f("P | q"));
        let out = prove_cirquent(&a, &ProverConfig::default()).unwrap();
        let ProveOutcome::NotProvable(Witness::Countermodel(m)) = out else {
            panic!("expected a countermodel")
        };
        assert!(!a.evaluate(&m).unwrap());
    }

    #[test]
    fn empty_and_groupless_cirquents() {
        let p = prove(&Cirquent::empty());
        assert_eq!(p.len(), 1);
        let p = prove(&c(&["p & q", "P"], &[]));
        assert!(p.uses("weaken-pool"));
    }

    #[test]
    fn phases_reach_their_shapes() {
        let a = c(
            &["(p | ~p) & (q | ~q | 1)", "P | 1", "~P & 1"],
            &[&[1], &[1, 2, 3], &[2], &[3, 2]],
        );
        let (proof, trace) = build_proof(&a).unwrap();
        assert_eq!(proof.conclusion(), Some(&a));
        assert!(is_essentially_literal(&trace.literal).is_essentially_literal());
        assert!(shared_oformulas(&trace.merged).is_empty());
        assert!(first_identical_pair(&trace.merged).is_none());
    }

    #[test]
    fn shared_axiom_pairs_are_merged_by_duplication() {
        let a = c(&["P", "~P"], &[&[1, 2], &[1, 2]]);
        let p = prove(&a);
        assert!(p.uses("duplicate"));
    }

    #[test]
    fn substitution_examples() {
        let ax = c(&["S", "~S"], &[&[1, 2]]);
        let p = prove(&ax);
        let s = Substitution::new().with("S", f("p | q"));
        let lifted = substitute_proof(&p, &s).unwrap();
        assert_eq!(lifted.conclusion(), Some(&c(&["p | q", "~p & ~q"], &[&[1, 2]])));
        assert_eq!(
            lifted.nodes[0].rule,
            RuleApplication::AxiomNot { formula: f("p | q") }
        );
        assert_eq!(substitute_proof(&p, &Substitution::new()).unwrap(), p);

        let p = prove(&Cirquent::from_formula(f("(~Q | Q) & (1 | r)")));
        let s = Substitution::new().with("Q", f("P & q"));
        let lifted = substitute_proof(&p, &s).unwrap();
        assert_eq!(lifted.len(), p.len());
        for (x, y) in p.nodes.iter().zip(&lifted.nodes) {
            assert_eq!(x.rule.name(), y.rule.name());
            assert_eq!(x.premises, y.premises);
        }
    }

    #[test]
    fn normalize_examples() {
        let b = Cirquent::from_formula(f("(P | q | ~q) & (P | s | ~s)"));
        let a = b.substitute(&Substitution::new().with("P", f("p")));
        let n = normalize_binary(&b, &a).unwrap();
        assert_eq!(n.pattern, Cirquent::from_formula(f("(P | q | ~q) & (Q1 | s | ~s)")));
        assert_eq!(
            n.sigma2,
            Substitution::new().with("P", f("p")).with("Q1", f("p"))
        );

        let b = Cirquent::from_formula(f("~P | P"));
        let n = normalize_binary(&b, &b).unwrap();
        assert_eq!(n.pattern, b);

        let a = Cirquent::from_formula(f("~(p & q) | p & q"));
        let n = normalize_binary(&b, &a).unwrap();
        assert_eq!(n.pattern, Cirquent::from_formula(f("~X1 | ~X2 | X1 & X2")));
        assert_eq!(
            n.sigma2,
            Substitution::new().with("X1", f("p")).with("X2", f("q"))
        );
    }

    #[test]
    fn normalize_preconditions() {
        let b = Cirquent::from_formula(f("P | Q"));
        assert!(matches!(normalize_binary(&b, &b), Err(NormalizeError::NotTautology(_))));
        let b = Cirquent::from_formula(f("~P | P"));
        let a = Cirquent::from_formula(f("p | ~q"));
        assert_eq!(normalize_binary(&b, &a), Err(NormalizeError::NoMatch));
    }

    #[test]
    fn prove_formula_examples() {
        let cfg = ProverConfig::default();
        let out = prove_formula(&f("p -> p & p"), &cfg).unwrap();
        assert!(out.proof().unwrap().uses("contract"));
        let out = prove_formula(&f("P -> P & P"), &cfg).unwrap();
        assert!(matches!(out, ProveOutcome::NotProvable(Witness::Cl2Exhausted(_))));
        let out = prove_formula(&f("P | ~P"), &cfg).unwrap();
        assert_eq!(
            out.proof().unwrap().conclusion(),
            Some(&Cirquent::from_formula(f("P | ~P")))
        );
    }
}
