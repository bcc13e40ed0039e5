//! Exhaustive formula generation and per-formula verdicts.
//!
//! Formulas are generated by node count (a negated atom is one leaf), then
//! in a fixed structural order: leaves in the order given by [`Leaves`];
//! compound formulas by connective (`&` before `|`), then by left operand
//! size, then by left operand, then by right operand.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cirquent::{BinarityClass, Cirquent};
use crate::cl2::{decide_cl2, Cl2Decision, Cl2Formula};
use crate::formula::{Atom, Formula};
use crate::prover::{prove_formula, ProveError, ProveOutcome, ProverConfig};
use crate::truth::{formula_tautology, TautologyError};

/// The leaf alphabet: each atom followed by its negation, then `1` and `0`
/// when constants are included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leaves(Vec<Formula>);

impl Leaves {
    pub fn new(atoms: &[Atom], constants: bool) -> Leaves {
        let mut out = Vec::new();
        for a in atoms {
            out.push(Formula::Atom(a.clone()));
            out.push(Formula::not_atom(a.clone()));
        }
        if constants {
            out.push(Formula::top());
            out.push(Formula::bottom());
        }
        out.dedup();
        Leaves(out)
    }

    pub fn as_slice(&self) -> &[Formula] {
        &self.0
    }
}

/// Number of formulas with exactly `nodes` nodes.
pub fn count_formulas(leaves: &Leaves, nodes: usize) -> u128 {
    let mut counts = vec![0u128; nodes + 1];
    for n in 1..=nodes {
        counts[n] = if n == 1 {
            leaves.0.len() as u128
        } else if n % 2 == 1 {
            (1..n - 1)
                .step_by(2)
                .map(|l| 2 * counts[l] * counts[n - 1 - l])
                .sum()
        } else {
            0
        };
    }
    counts[nodes]
}

/// Calls `visit` on every formula with at most `max_nodes` nodes, in
/// generation order. Only formulas smaller than the largest size are kept
/// in memory.
pub fn for_each_formula(leaves: &Leaves, max_nodes: usize, mut visit: impl FnMut(&Formula)) {
    if max_nodes == 0 {
        return;
    }
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); max_nodes + 1];
    for n in (1..=max_nodes).step_by(2) {
        let last = n + 2 > max_nodes;
        if n == 1 {
            for f in &leaves.0 {
                visit(f);
            }
            if !last {
                by_size[1] = leaves.0.clone();
            }
            continue;
        }
        let mut kept = Vec::new();
        for op in [Formula::and as fn(Formula, Formula) -> Formula, Formula::or] {
            for ls in (1..n - 1).step_by(2) {
                for l in &by_size[ls] {
                    for r in &by_size[n - 1 - ls] {
                        let f = op(l.clone(), r.clone());
                        visit(&f);
                        if !last {
                            kept.push(f);
                        }
                    }
                }
            }
        }
        by_size[n] = kept;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Provable,
    Unprovable,
    Budget,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Provable => "provable",
            Status::Unprovable => "unprovable",
            Status::Budget => "budget",
        }
    }
}

/// The decision record for one formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub formula: String,
    pub cl6: Status,
    pub cl2: Status,
    pub classical: bool,
    pub binarity: BinarityClass,
}

impl Verdict {
    /// Both procedures decided and they disagree.
    pub fn is_mismatch(&self) -> bool {
        self.cl6 != Status::Budget && self.cl2 != Status::Budget && self.cl6 != self.cl2
    }

    pub fn csv_header() -> &'static str {
        "formula,cl6,cl2,classical,binarity"
    }

    pub fn to_csv(&self) -> String {
        format!(
            "\"{}\",{},{},{},{}",
            self.formula,
            self.cl6.as_str(),
            self.cl2.as_str(),
            self.classical,
            self.binarity
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerdictError {
    #[error(transparent)]
    Prover(#[from] ProveError),
    #[error(transparent)]
    Budget(#[from] TautologyError),
}

/// A verdict together with the outcomes it was read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assessment {
    pub verdict: Verdict,
    pub cl6: ProveOutcome,
    pub cl2: Option<Cl2Decision>,
}

/// Runs the CL6 prover and the CL2 decider independently on `f`.
pub fn assess(f: &Formula, config: &ProverConfig) -> Result<Assessment, VerdictError> {
    let cl6 = prove_formula(f, config)?;
    let budget = crate::cl2::Cl2Budget {
        max_atoms: config.max_atoms,
        ..config.cl2.clone()
    };
    let cl2 = decide_cl2(&Cl2Formula::from(f), &budget).ok();
    let classical = formula_tautology(f, config.max_atoms)?.holds();
    let verdict = Verdict {
        formula: f.to_string(),
        cl6: match cl6 {
            ProveOutcome::Proved(_) => Status::Provable,
            ProveOutcome::NotProvable(_) => Status::Unprovable,
            ProveOutcome::BudgetExceeded(_) => Status::Budget,
        },
        cl2: match &cl2 {
            Some(Cl2Decision::Provable(_)) => Status::Provable,
            Some(Cl2Decision::Unprovable(_)) => Status::Unprovable,
            None => Status::Budget,
        },
        classical,
        binarity: Cirquent::from_formula(f.clone()).binarity(),
    };
    Ok(Assessment { verdict, cl6, cl2 })
}
