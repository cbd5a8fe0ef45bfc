//! Grounding and stable-model reasoning for normal programs with weak
//! constraints.

mod ground;
mod program;
mod solve;
mod text;

pub use ground::{ground, ground_naive, ground_with_cap, AtomId, GroundProgram, DEFAULT_MAX_GROUND_ATOMS};
pub use program::{Atom, Program, Rule, Term, WeakConstraint};
pub use solve::{answer_sets, compare_costs, cost, is_stable, optimal_answer_sets, AnswerSet, CostVector, DEFAULT_MAX_MODELS};
pub use text::parse_program;

use crate::error::Result;

/// Resource limits for grounding and search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_ground_atoms: usize,
    pub max_models: usize,
    /// Candidate override sets the semantic checker may explore.
    pub max_subsets: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_ground_atoms: DEFAULT_MAX_GROUND_ATOMS, max_models: DEFAULT_MAX_MODELS, max_subsets: 1 << 20 }
    }
}

/// Outcome of a cautious query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Entailment {
    Entailed,
    NotEntailed,
    /// no (optimal) answer set exists
    Inconsistent,
}

/// Ground program together with its optimal answer sets.
#[derive(Debug, Clone)]
pub struct Solution {
    pub ground: GroundProgram,
    pub models: Vec<AnswerSet>,
    pub cost: Option<CostVector>,
}

impl Solution {
    /// Models rendered as sorted atom strings.
    pub fn rendered(&self) -> Vec<Vec<String>> {
        self.models.iter().map(|m| render_model(&self.ground, m)).collect()
    }

    /// True in every model; `Inconsistent` when there are none.
    pub fn cautious(&self, atom: &Atom) -> Entailment {
        if self.models.is_empty() {
            return Entailment::Inconsistent;
        }
        match self.ground.lookup(atom) {
            Some(id) if self.models.iter().all(|m| m.contains(id)) => Entailment::Entailed,
            _ => Entailment::NotEntailed,
        }
    }
}

pub fn render_model(gp: &GroundProgram, m: &AnswerSet) -> Vec<String> {
    let mut v: Vec<String> = m.atoms.iter().map(|&a| gp.render(a)).collect();
    v.sort();
    v
}

/// Grounds `p` and keeps the optimal answer sets.
pub fn solve_optimal(p: &Program, caps: Caps) -> Result<Solution> {
    let ground = ground_with_cap(p, caps.max_ground_atoms)?;
    let (models, cost) = optimal_answer_sets(&ground, caps.max_models)?;
    Ok(Solution { ground, models, cost })
}

/// Grounds `p` and keeps every answer set.
pub fn solve_all(p: &Program, caps: Caps) -> Result<Solution> {
    let ground = ground_with_cap(p, caps.max_ground_atoms)?;
    let models = answer_sets(&ground, caps.max_models)?;
    Ok(Solution { ground, models, cost: None })
}

/// Whether `atom` holds in every optimal answer set of `p`.
pub fn cautious_entails(p: &Program, atom: &Atom, caps: Caps) -> Result<Entailment> {
    Ok(solve_optimal(p, caps)?.cautious(atom))
}
