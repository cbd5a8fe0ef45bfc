//! Stable model enumeration and optimization over a ground program.
//!
//! Search branches on atoms that occur under default negation. Each node is
//! propagated with the alternating fixpoint restricted by the current
//! assumptions, which yields a lower bound (certainly true atoms) and an
//! upper bound (possibly true atoms). A leaf is reached when every negated
//! atom is decided; the lower bound then is the least model of the reduct.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::asp::ground::{AtomId, GroundProgram, TermId};
use crate::error::{Error, Result};

/// Sum of violated weights per priority level.
pub type CostVector = BTreeMap<i64, i64>;

/// Lexicographic comparison, highest level first; absent levels count as 0.
pub fn compare_costs(a: &CostVector, b: &CostVector) -> Ordering {
    let mut levels: Vec<i64> = a.keys().chain(b.keys()).copied().collect();
    levels.sort_unstable_by(|x, y| y.cmp(x));
    levels.dedup();
    for l in levels {
        let (x, y) = (a.get(&l).copied().unwrap_or(0), b.get(&l).copied().unwrap_or(0));
        match x.cmp(&y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// A stable model as a sorted list of atom ids of its ground program.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnswerSet {
    pub atoms: Vec<AtomId>,
}

impl AnswerSet {
    pub fn contains(&self, id: AtomId) -> bool {
        self.atoms.binary_search(&id).is_ok()
    }
}

/// Called on every model found; returning false stops the search.
type Visit<'a> = dyn FnMut(&Solver, &[Val], &Bounds) -> Result<bool> + 'a;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Val {
    Unknown,
    True,
    False,
}

/// Precomputed occurrence lists.
struct Solver<'a> {
    gp: &'a GroundProgram,
    n: usize,
    /// rules with the atom in their positive body
    pos_occ: Vec<Vec<u32>>,
    naf: Vec<AtomId>,
    /// violation keys with the bodies that trigger them
    weak_keys: Vec<(i64, i64, Vec<Vec<AtomId>>)>,
    prune: bool,
    max_models: usize,
}

struct Bounds {
    lower: Vec<bool>,
    upper: Vec<bool>,
}

impl<'a> Solver<'a> {
    fn new(gp: &'a GroundProgram, max_models: usize) -> Self {
        let n = gp.num_atoms();
        let mut pos_occ = vec![Vec::new(); n];
        for (i, r) in gp.rules.iter().enumerate() {
            for &a in &r.pos {
                pos_occ[a as usize].push(i as u32);
            }
        }
        let mut is_naf = vec![false; n];
        for r in &gp.rules {
            r.neg.iter().for_each(|&a| is_naf[a as usize] = true);
        }
        for c in &gp.constraints {
            c.neg.iter().for_each(|&a| is_naf[a as usize] = true);
        }
        let naf = (0..n as AtomId).filter(|&a| is_naf[a as usize]).collect();
        let mut keys: HashMap<&[TermId], usize> = HashMap::new();
        let mut weak_keys: Vec<(i64, i64, Vec<Vec<AtomId>>)> = Vec::new();
        for w in &gp.weak {
            let idx = *keys.entry(w.key.as_slice()).or_insert_with(|| {
                weak_keys.push((w.level, w.weight, Vec::new()));
                weak_keys.len() - 1
            });
            weak_keys[idx].2.push(w.body.clone());
        }
        let prune = gp.weak.iter().all(|w| w.weight >= 0);
        Solver { gp, n, pos_occ, naf, weak_keys, prune, max_models }
    }

    /// Least model of the rules accepted by `enabled`.
    fn lfp(&self, enabled: impl Fn(&[AtomId]) -> bool) -> Vec<bool> {
        let rules = &self.gp.rules;
        let on: Vec<bool> = rules.iter().map(|r| enabled(&r.neg)).collect();
        let mut missing: Vec<usize> = rules.iter().map(|r| r.pos.len()).collect();
        let mut model = vec![false; self.n];
        let mut queue = Vec::new();
        for (i, r) in rules.iter().enumerate() {
            if on[i] && missing[i] == 0 && !model[r.head as usize] {
                model[r.head as usize] = true;
                queue.push(r.head);
            }
        }
        while let Some(a) = queue.pop() {
            for &ri in &self.pos_occ[a as usize] {
                let ri = ri as usize;
                missing[ri] -= 1;
                if on[ri] && missing[ri] == 0 {
                    let h = rules[ri].head as usize;
                    if !model[h] {
                        model[h] = true;
                        queue.push(h as AtomId);
                    }
                }
            }
        }
        model
    }

    /// Alternating fixpoint under the assumptions; `None` on conflict.
    fn propagate(&self, assign: &[Val]) -> Option<Bounds> {
        let mut lower = vec![false; self.n];
        let mut upper = vec![true; self.n];
        loop {
            let known_false = |a: AtomId, upper: &[bool]| assign[a as usize] == Val::False || !upper[a as usize];
            let new_lower = self.lfp(|neg| neg.iter().all(|&a| known_false(a, &upper)));
            let known_true = |a: AtomId| assign[a as usize] == Val::True || new_lower[a as usize];
            let new_upper = self.lfp(|neg| !neg.iter().any(|&a| known_true(a)));
            let stable = new_lower == lower && new_upper == upper;
            lower = new_lower;
            upper = new_upper;
            if stable {
                break;
            }
        }
        for &a in &self.naf {
            match assign[a as usize] {
                Val::True if !upper[a as usize] => return None,
                Val::False if lower[a as usize] => return None,
                _ => {}
            }
        }
        for c in &self.gp.constraints {
            let pos_true = c.pos.iter().all(|&a| lower[a as usize]);
            let neg_false = c.neg.iter().all(|&a| assign[a as usize] == Val::False || !upper[a as usize]);
            if pos_true && neg_false {
                return None;
            }
        }
        Some(Bounds { lower, upper })
    }

    fn cost_of(&self, model: &[bool]) -> CostVector {
        let mut cost = CostVector::new();
        for (level, weight, bodies) in &self.weak_keys {
            if bodies.iter().any(|b| b.iter().all(|&a| model[a as usize])) {
                *cost.entry(*level).or_insert(0) += weight;
            }
        }
        cost.retain(|_, v| *v != 0);
        cost
    }

    fn is_leaf(&self, assign: &[Val], b: &Bounds) -> bool {
        self.naf.iter().all(|&a| assign[a as usize] != Val::Unknown || b.upper[a as usize] == b.lower[a as usize])
    }

    fn to_answer_set(model: &[bool]) -> AnswerSet {
        AnswerSet { atoms: (0..model.len() as AtomId).filter(|&a| model[a as usize]).collect() }
    }

    fn all(&self) -> Result<Vec<AnswerSet>> {
        let mut out = Vec::new();
        let mut assign = vec![Val::Unknown; self.n];
        let max = self.max_models;
        self.search_collect(&mut assign, &mut |s, assign, b| {
            if s.is_leaf(assign, b) {
                out.push(Self::to_answer_set(&b.lower));
                if out.len() > max {
                    return Err(Error::CapExceeded { what: "answer set", limit: max });
                }
            }
            Ok(true)
        })?;
        out.sort();
        Ok(out)
    }

    fn search_collect(
        &self,
        assign: &mut Vec<Val>,
        visit: &mut Visit<'_>,
    ) -> Result<()> {
        let Some(b) = self.propagate(assign) else { return Ok(()) };
        if !visit(self, assign, &b)? {
            return Ok(());
        }
        if self.is_leaf(assign, &b) {
            return Ok(());
        }
        let pick = self
            .naf
            .iter()
            .copied()
            .find(|&a| assign[a as usize] == Val::Unknown && b.upper[a as usize] && !b.lower[a as usize])
            .expect("undecided atom at inner node");
        for v in [Val::False, Val::True] {
            assign[pick as usize] = v;
            self.search_collect(assign, visit)?;
        }
        assign[pick as usize] = Val::Unknown;
        Ok(())
    }

    fn optimal(&self) -> Result<(Vec<AnswerSet>, Option<CostVector>)> {
        let mut best: Option<CostVector> = None;
        let mut out: Vec<AnswerSet> = Vec::new();
        let mut assign = vec![Val::Unknown; self.n];
        let max = self.max_models;
        let prune = self.prune;
        self.search_collect(&mut assign, &mut |s, assign, b| {
            if prune {
                if let Some(best) = &best {
                    // violations already certain in every model below this node
                    if compare_costs(&s.cost_of(&b.lower), best) == Ordering::Greater {
                        return Ok(false);
                    }
                }
            }
            if s.is_leaf(assign, b) {
                let cost = s.cost_of(&b.lower);
                let ord = best.as_ref().map_or(Ordering::Less, |bc| compare_costs(&cost, bc));
                match ord {
                    Ordering::Less => {
                        best = Some(cost);
                        out.clear();
                        out.push(Self::to_answer_set(&b.lower));
                    }
                    Ordering::Equal => {
                        out.push(Self::to_answer_set(&b.lower));
                        if out.len() > max {
                            return Err(Error::CapExceeded { what: "answer set", limit: max });
                        }
                    }
                    Ordering::Greater => {}
                }
            }
            Ok(true)
        })?;
        out.sort();
        Ok((out, best))
    }
}

pub const DEFAULT_MAX_MODELS: usize = 100_000;

/// Every stable model of `gp`, sorted by atom ids.
pub fn answer_sets(gp: &GroundProgram, max_models: usize) -> Result<Vec<AnswerSet>> {
    Solver::new(gp, max_models).all()
}

/// Stable models with lexicographically minimal cost, with that cost.
pub fn optimal_answer_sets(gp: &GroundProgram, max_models: usize) -> Result<(Vec<AnswerSet>, Option<CostVector>)> {
    Solver::new(gp, max_models).optimal()
}

/// Cost of a stable model: per level, the weights of distinct violated
/// weak-constraint tuples.
pub fn cost(gp: &GroundProgram, m: &AnswerSet) -> CostVector {
    let s = Solver::new(gp, usize::MAX);
    let mut model = vec![false; gp.num_atoms()];
    m.atoms.iter().for_each(|&a| model[a as usize] = true);
    s.cost_of(&model)
}

/// Checks stability of a candidate set directly: it must equal the least
/// model of its reduct and satisfy every constraint.
pub fn is_stable(gp: &GroundProgram, m: &AnswerSet) -> bool {
    let s = Solver::new(gp, usize::MAX);
    let mut model = vec![false; gp.num_atoms()];
    m.atoms.iter().for_each(|&a| model[a as usize] = true);
    let reduct = s.lfp(|neg| neg.iter().all(|&a| !model[a as usize]));
    reduct == model
        && gp
            .constraints
            .iter()
            .all(|c| !(c.pos.iter().all(|&a| model[a as usize]) && c.neg.iter().all(|&a| !model[a as usize])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asp::ground::{ground, ground_naive};
    use crate::asp::text::parse_program;

    fn models(text: &str) -> Vec<Vec<String>> {
        let gp = ground(&parse_program(text).unwrap()).unwrap();
        answer_sets(&gp, 1000)
            .unwrap()
            .iter()
            .map(|m| {
                let mut v: Vec<String> = m.atoms.iter().map(|&a| gp.render(a)).collect();
                v.sort();
                v
            })
            .collect()
    }

    #[test]
    fn even_loop_has_two_models() {
        let m = models("a :- not b. b :- not a.");
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn odd_loop_has_none() {
        assert!(models("a :- not a.").is_empty());
    }

    #[test]
    fn constraint_filters() {
        let m = models("a :- not b. b :- not a. :- a.");
        assert_eq!(m, vec![vec!["b".to_string()]]);
    }

    #[test]
    fn positive_loop_is_unfounded() {
        let m = models("a :- b. b :- a. c :- not a.");
        assert_eq!(m, vec![vec!["c".to_string()]]);
    }

    #[test]
    fn optimum_respects_levels() {
        let p = parse_program("a :- not b. b :- not a. :~ a. [1@2,a] :~ b. [5@1,b]").unwrap();
        let gp = ground(&p).unwrap();
        let (opt, cost) = optimal_answer_sets(&gp, 10).unwrap();
        assert_eq!(opt.len(), 1);
        assert_eq!(cost.unwrap(), CostVector::from([(1, 5)]));
    }

    #[test]
    fn duplicate_weak_tuples_count_once() {
        let p = parse_program("p(1). p(2). :~ p(X). [1@1] :~ p(X). [1@2,X]").unwrap();
        let gp = ground(&p).unwrap();
        let (_, cost) = optimal_answer_sets(&gp, 10).unwrap();
        assert_eq!(cost.unwrap(), CostVector::from([(1, 1), (2, 2)]));
    }

    #[test]
    fn naive_and_intelligent_agree() {
        let text = "e(1,2). e(2,1). e(2,3). in(X) :- e(X,Y), not out(X). out(X) :- e(X,Y), not in(X). \
                    :- in(X), in(Y), e(X,Y). r(Y) :- in(X), e(X,Y), X != Y.";
        let p = parse_program(text).unwrap();
        let a = ground(&p).unwrap();
        let b = ground_naive(&p).unwrap();
        let render = |gp: &GroundProgram, ms: Vec<AnswerSet>| {
            let mut out: Vec<Vec<String>> = ms
                .into_iter()
                .map(|m| {
                    let mut v: Vec<String> = m.atoms.iter().map(|&x| gp.render(x)).collect();
                    v.sort();
                    v
                })
                .collect();
            out.sort();
            out
        };
        let ma = answer_sets(&a, 100).unwrap();
        let mb = answer_sets(&b, 100).unwrap();
        assert!(!ma.is_empty());
        assert_eq!(render(&a, ma), render(&b, mb));
    }
}
