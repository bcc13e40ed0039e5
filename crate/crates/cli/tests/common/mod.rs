//! Independent oracles and random generators shared by the integration
//! tests. Nothing here calls the library's own evaluation, tautology or
//! binarity code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use cirquent::calculus::{apply_rule, RuleApplication};
use cirquent::cirquent::{Cirquent, Group};
use cirquent::formula::{Atom, Formula};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub type Assignment = BTreeMap<String, bool>;

fn key(a: &Atom) -> Option<String> {
    match a {
        Atom::General(n) => Some(format!("G:{n}")),
        Atom::Elementary(n) => Some(format!("e:{n}")),
        Atom::Top | Atom::Bottom => None,
    }
}

fn atom_value(a: &Atom, m: &Assignment) -> bool {
    match a {
        Atom::Top => true,
        Atom::Bottom => false,
        other => m[&key(other).unwrap()],
    }
}

pub fn eval(f: &Formula, m: &Assignment) -> bool {
    match f {
        Formula::Atom(a) => atom_value(a, m),
        Formula::NegAtom(a) => !atom_value(a, m),
        Formula::And(l, r) => eval(l, m) && eval(r, m),
        Formula::Or(l, r) => eval(l, m) || eval(r, m),
    }
}

fn collect_keys(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Atom(a) | Formula::NegAtom(a) => out.extend(key(a)),
        Formula::And(l, r) | Formula::Or(l, r) => {
            collect_keys(l, out);
            collect_keys(r, out);
        }
    }
}

pub fn keys_of(cs: &[&Cirquent]) -> Vec<String> {
    let mut out = BTreeSet::new();
    for c in cs {
        for f in &c.pool {
            collect_keys(f, &mut out);
        }
    }
    out.into_iter().collect()
}

pub fn assignments(keys: &[String]) -> Vec<Assignment> {
    (0..1u32 << keys.len())
        .map(|bits| {
            keys.iter()
                .enumerate()
                .map(|(k, name)| (name.clone(), bits >> k & 1 == 1))
                .collect()
        })
        .collect()
}

/// Every ogroup has a true member.
pub fn cirquent_true(c: &Cirquent, m: &Assignment) -> bool {
    c.groups
        .iter()
        .all(|g| g.iter().any(|i| eval(&c.pool[i - 1], m)))
}

pub fn cirquent_tautology(c: &Cirquent) -> bool {
    assignments(&keys_of(&[c]))
        .iter()
        .all(|m| cirquent_true(c, m))
}

pub fn formula_tautology(f: &Formula) -> bool {
    let mut keys = BTreeSet::new();
    collect_keys(f, &mut keys);
    let keys: Vec<String> = keys.into_iter().collect();
    assignments(&keys).iter().all(|m| eval(f, m))
}

/// (positive, negative) occurrence counts per general atom name.
pub fn general_counts(c: &Cirquent) -> BTreeMap<String, (usize, usize)> {
    fn walk(f: &Formula, out: &mut BTreeMap<String, (usize, usize)>) {
        match f {
            Formula::Atom(Atom::General(n)) => out.entry(n.clone()).or_default().0 += 1,
            Formula::NegAtom(Atom::General(n)) => out.entry(n.clone()).or_default().1 += 1,
            Formula::Atom(_) | Formula::NegAtom(_) => {}
            Formula::And(l, r) | Formula::Or(l, r) => {
                walk(l, out);
                walk(r, out);
            }
        }
    }
    let mut out = BTreeMap::new();
    for f in &c.pool {
        walk(f, &mut out);
    }
    out
}

/// (binary, normal binary).
pub fn binarity(c: &Cirquent) -> (bool, bool) {
    let counts = general_counts(c);
    let binary = counts.values().all(|(p, n)| p + n <= 2);
    let normal = binary && counts.values().all(|(p, n)| p + n < 2 || (*p == 1 && *n == 1));
    (binary, normal)
}

pub fn general_names(c: &Cirquent) -> BTreeSet<String> {
    general_counts(c).into_keys().collect()
}

/// Simultaneous substitution of general atoms.
pub fn subst(f: &Formula, s: &BTreeMap<String, Formula>) -> Formula {
    match f {
        Formula::Atom(Atom::General(n)) => s.get(n).cloned().unwrap_or_else(|| f.clone()),
        Formula::NegAtom(Atom::General(n)) => s
            .get(n)
            .map(negate)
            .unwrap_or_else(|| f.clone()),
        Formula::Atom(_) | Formula::NegAtom(_) => f.clone(),
        Formula::And(l, r) => Formula::and(subst(l, s), subst(r, s)),
        Formula::Or(l, r) => Formula::or(subst(l, s), subst(r, s)),
    }
}

pub fn negate(f: &Formula) -> Formula {
    match f {
        Formula::Atom(Atom::Top) => Formula::Atom(Atom::Bottom),
        Formula::Atom(Atom::Bottom) => Formula::Atom(Atom::Top),
        Formula::Atom(a) => Formula::NegAtom(a.clone()),
        Formula::NegAtom(a) => Formula::Atom(a.clone()),
        Formula::And(l, r) => Formula::or(negate(l), negate(r)),
        Formula::Or(l, r) => Formula::and(negate(l), negate(r)),
    }
}

pub fn size(f: &Formula) -> usize {
    match f {
        Formula::Atom(_) | Formula::NegAtom(_) => 1,
        Formula::And(l, r) | Formula::Or(l, r) => 1 + size(l) + size(r),
    }
}

// ---------------------------------------------------------------------
// Pattern search: is `f` an instance of some binary tautology?
//
// A pattern is obtained from `f` by replacing pairwise disjoint subtrees
// with general atoms: a subtree alone gets its own atom; two subtrees with
// equal or complementary content may share one (positively twice, or once
// each way). Untouched general atoms of `f` stay and count too.

type Path = Vec<bool>;

fn subtrees(f: &Formula, path: &mut Path, out: &mut Vec<(Path, Formula)>) {
    out.push((path.clone(), f.clone()));
    if let Formula::And(l, r) | Formula::Or(l, r) = f {
        path.push(false);
        subtrees(l, path, out);
        path.pop();
        path.push(true);
        subtrees(r, path, out);
        path.pop();
    }
}

fn is_prefix(a: &Path, b: &Path) -> bool {
    a.len() <= b.len() && b[..a.len()] == a[..]
}

fn rebuild(f: &Formula, path: &mut Path, replace: &BTreeMap<Path, Formula>) -> Formula {
    if let Some(r) = replace.get(path) {
        return r.clone();
    }
    match f {
        Formula::And(l, r) | Formula::Or(l, r) => {
            path.push(false);
            let l2 = rebuild(l, path, replace);
            path.pop();
            path.push(true);
            let r2 = rebuild(r, path, replace);
            path.pop();
            if matches!(f, Formula::And(..)) {
                Formula::and(l2, r2)
            } else {
                Formula::or(l2, r2)
            }
        }
        _ => f.clone(),
    }
}

fn pattern_ok(p: &Formula) -> bool {
    let c = Cirquent::from_formula(p.clone());
    binarity(&c).0 && formula_tautology(p)
}

fn try_matchings(
    f: &Formula,
    chosen: &[(Path, Formula)],
    k: usize,
    used: &mut Vec<bool>,
    replace: &mut BTreeMap<Path, Formula>,
    next_atom: usize,
) -> bool {
    let Some(i) = (k..chosen.len()).find(|&i| !used[i]) else {
        return pattern_ok(&rebuild(f, &mut Vec::new(), replace));
    };
    used[i] = true;
    let atom = Atom::general(format!("Z{next_atom}"));
    replace.insert(chosen[i].0.clone(), Formula::Atom(atom.clone()));
    if try_matchings(f, chosen, i + 1, used, replace, next_atom + 1) {
        return true;
    }
    for j in i + 1..chosen.len() {
        if used[j] {
            continue;
        }
        let other = if chosen[j].1 == chosen[i].1 {
            Formula::Atom(atom.clone())
        } else if chosen[j].1 == negate(&chosen[i].1) {
            Formula::NegAtom(atom.clone())
        } else {
            continue;
        };
        used[j] = true;
        replace.insert(chosen[j].0.clone(), other);
        if try_matchings(f, chosen, i + 1, used, replace, next_atom + 1) {
            return true;
        }
        replace.remove(&chosen[j].0);
        used[j] = false;
    }
    replace.remove(&chosen[i].0);
    used[i] = false;
    false
}

fn choose_disjoint(
    f: &Formula,
    all: &[(Path, Formula)],
    k: usize,
    chosen: &mut Vec<(Path, Formula)>,
) -> bool {
    if k == all.len() {
        let mut used = vec![false; chosen.len()];
        return try_matchings(f, chosen, 0, &mut used, &mut BTreeMap::new(), 1);
    }
    if choose_disjoint(f, all, k + 1, chosen) {
        return true;
    }
    let (path, sub) = &all[k];
    if chosen.iter().any(|(p, _)| is_prefix(p, path) || is_prefix(path, p)) {
        return false;
    }
    chosen.push((path.clone(), sub.clone()));
    let found = choose_disjoint(f, all, k + 1, chosen);
    chosen.pop();
    found
}

pub fn instance_of_binary_tautology(f: &Formula) -> bool {
    let mut all = Vec::new();
    subtrees(f, &mut Vec::new(), &mut all);
    choose_disjoint(f, &all, 0, &mut Vec::new())
}

// ---------------------------------------------------------------------
// Random generation.

pub fn atoms(names: &[&str]) -> Vec<Atom> {
    names.iter().map(|n| Atom::named(n).unwrap()).collect()
}

pub fn random_literal(rng: &mut StdRng, atoms: &[Atom]) -> Formula {
    match rng.gen_range(0..10) {
        0 => Formula::top(),
        1 => Formula::bottom(),
        _ => {
            let a = atoms.choose(rng).unwrap().clone();
            if rng.gen_bool(0.5) {
                Formula::Atom(a)
            } else {
                Formula::not_atom(a)
            }
        }
    }
}

pub fn random_formula(rng: &mut StdRng, atoms: &[Atom], depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.4) {
        return random_literal(rng, atoms);
    }
    let l = random_formula(rng, atoms, depth - 1);
    let r = random_formula(rng, atoms, depth - 1);
    if rng.gen_bool(0.5) {
        Formula::and(l, r)
    } else {
        Formula::or(l, r)
    }
}

pub fn random_group(rng: &mut StdRng, k: usize, skip: &[usize]) -> Group {
    (1..=k)
        .filter(|i| !skip.contains(i) && rng.gen_bool(0.45))
        .collect()
}

pub fn random_groups(rng: &mut StdRng, k: usize, max_groups: usize) -> Vec<Group> {
    let n = rng.gen_range(0..=max_groups);
    (0..n).map(|_| random_group(rng, k, &[])).collect()
}

pub fn random_cirquent(rng: &mut StdRng, atoms: &[Atom], min_pool: usize, max_pool: usize) -> Cirquent {
    let k = rng.gen_range(min_pool..=max_pool);
    let pool = (0..k).map(|_| random_formula(rng, atoms, 2)).collect();
    Cirquent::new(pool, random_groups(rng, k, 3))
}

pub fn random_elementary(rng: &mut StdRng, elementary: &[Atom]) -> Formula {
    random_formula(rng, elementary, 1)
}

/// One rule application with its premises and computed conclusion.
#[derive(Clone, Debug)]
pub struct Application {
    pub rule: RuleApplication,
    pub premises: Vec<Cirquent>,
    pub conclusion: Cirquent,
}

pub const RULE_KINDS: usize = 12;

/// A valid application of rule kind `kind % RULE_KINDS` over `atoms`
/// (general ones first letter uppercase), pools of at most six
/// oformulas. Premises are built directly, not through the library's
/// bottom-up schema.
pub fn random_application(rng: &mut StdRng, atoms: &[Atom], kind: usize) -> Application {
    loop {
        if let Some(app) = try_application(rng, atoms, kind % RULE_KINDS) {
            return app;
        }
    }
}

fn try_application(rng: &mut StdRng, atoms: &[Atom], kind: usize) -> Option<Application> {
    let elementary: Vec<Atom> = atoms.iter().filter(|a| !a.is_general()).cloned().collect();
    let (rule, premises) = match kind {
        0 => (RuleApplication::AxiomEmpty, vec![]),
        1 => (
            RuleApplication::AxiomNot {
                formula: random_formula(rng, atoms, 2),
            },
            vec![],
        ),
        2 => (RuleApplication::AxiomTop, vec![]),
        3 => {
            let a_size = rng.gen_range(0..=3);
            let b_size = rng.gen_range(0..=(6 - a_size).min(3));
            let generals: Vec<&Atom> = atoms.iter().filter(|a| a.is_general()).collect();
            let (left, right): (Vec<Atom>, Vec<Atom>) = if rng.gen_bool(0.5) && generals.len() >= 2 {
                let mut l = elementary.clone();
                l.push(generals[0].clone());
                let mut r = elementary.clone();
                r.push(generals[1].clone());
                (l, r)
            } else {
                (atoms.to_vec(), atoms.to_vec())
            };
            let a = random_cirquent(rng, &left, a_size, a_size);
            let b = random_cirquent(rng, &right, b_size, b_size);
            (RuleApplication::Mix, vec![a, b])
        }
        4 => {
            let p = random_cirquent(rng, atoms, 2, 6);
            let i = rng.gen_range(1..p.pool.len());
            (RuleApplication::ExchangeOformula { i }, vec![p])
        }
        5 => {
            let mut p = random_cirquent(rng, atoms, 0, 6);
            while p.groups.len() < 2 {
                p.groups.push(random_group(rng, p.pool.len(), &[]));
            }
            let i = rng.gen_range(1..p.groups.len());
            (RuleApplication::ExchangeOgroup { i }, vec![p])
        }
        6 => {
            let p = random_cirquent(rng, atoms, 1, 6);
            let free: Vec<(usize, usize)> = (1..=p.groups.len())
                .flat_map(|g| (1..=p.pool.len()).map(move |i| (g, i)))
                .filter(|&(g, i)| !p.groups[g - 1].contains(i))
                .collect();
            let &(g, i) = free.choose(rng)?;
            (RuleApplication::WeakenOgroup { g, i }, vec![p])
        }
        7 => {
            let p = random_cirquent(rng, atoms, 0, 5);
            let i = rng.gen_range(1..=p.pool.len() + 1);
            let formula = random_formula(rng, atoms, 2);
            (RuleApplication::WeakenPool { i, formula }, vec![p])
        }
        8 => {
            let p = random_cirquent(rng, atoms, 0, 6);
            if p.groups.is_empty() {
                return None;
            }
            let g = rng.gen_range(1..=p.groups.len());
            (RuleApplication::Duplicate { g }, vec![p])
        }
        9 => {
            let k = rng.gen_range(2..=6);
            let i = rng.gen_range(1..k);
            let f = random_elementary(rng, &elementary);
            let pool = (1..=k)
                .map(|j| {
                    if j == i || j == i + 1 {
                        f.clone()
                    } else {
                        random_formula(rng, atoms, 2)
                    }
                })
                .collect();
            let groups = random_groups(rng, k, 3);
            (RuleApplication::Contract { i }, vec![Cirquent::new(pool, groups)])
        }
        10 => {
            let k = rng.gen_range(2..=6);
            let i = rng.gen_range(1..k);
            let pool = (0..k).map(|_| random_formula(rng, atoms, 2)).collect();
            let n = rng.gen_range(1..=3);
            let both = rng.gen_range(0..n);
            let groups = (0..n)
                .map(|g| {
                    let mut group = random_group(rng, k, &[i, i + 1]);
                    if g == both || rng.gen_bool(0.4) {
                        group.insert(i);
                        group.insert(i + 1);
                    }
                    group
                })
                .collect();
            (RuleApplication::OrIntro { i }, vec![Cirquent::new(pool, groups)])
        }
        _ => {
            let k = rng.gen_range(2..=6);
            let i = rng.gen_range(1..k);
            let pool = (0..k).map(|_| random_formula(rng, atoms, 2)).collect();
            let n = rng.gen_range(1..=3);
            let split = rng.gen_range(0..n);
            let mut groups = Vec::new();
            for g in 0..n {
                let rest = random_group(rng, k, &[i, i + 1]);
                if g == split || rng.gen_bool(0.4) {
                    let mut e = rest.clone();
                    e.insert(i);
                    let mut f = rest;
                    f.insert(i + 1);
                    groups.push(e);
                    groups.push(f);
                } else {
                    groups.push(rest);
                }
            }
            (RuleApplication::AndIntro { i }, vec![Cirquent::new(pool, groups)])
        }
    };
    let conclusion = apply_rule(&rule, &premises).ok()?;
    Some(Application {
        rule,
        premises,
        conclusion,
    })
}
