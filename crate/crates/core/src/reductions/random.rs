//! Seeded random instances: small repositories for cross-checking and
//! source instances for the three constructions.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CnfInstance, QbfInstance};
use crate::kb::{Axiom, Sckr, BOT};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Size bounds for [`random_sckr`].
#[derive(Debug, Clone, Copy)]
pub struct SckrParams {
    pub max_contexts: usize,
    pub max_axioms: usize,
    pub max_defeasible: usize,
}

impl Default for SckrParams {
    fn default() -> Self {
        SckrParams { max_contexts: 3, max_axioms: 6, max_defeasible: 3 }
    }
}

const INDS: [&str; 3] = ["a", "b", "c"];
const CONCEPTS: [&str; 3] = ["A", "B", "C"];
const ROLES: [&str; 2] = ["R", "S"];

/// A ranked repository with at most three contexts, three individuals,
/// three concepts and two roles.
pub fn random_sckr(rng: &mut impl Rng, p: SckrParams) -> Sckr {
    let mut k = Sckr::new();
    // chain, fork below one parent, or join below two roots
    let n = rng.gen_range(1..=p.max_contexts.clamp(1, 3));
    let ctxs: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    match (n, rng.gen_range(0..3)) {
        (1, _) => k.add_context("c0", 0),
        (2, _) => {
            k.add_context("c0", 0);
            k.add_context("c1", 1);
            k.add_cover("c1", "c0");
        }
        (_, 0) => {
            for (i, c) in ctxs.iter().enumerate() {
                k.add_context(c.clone(), i as u32);
            }
            k.add_cover("c1", "c0");
            k.add_cover("c2", "c1");
        }
        (_, 1) => {
            k.add_context("c0", 0);
            k.add_context("c1", 1);
            k.add_context("c2", 1);
            k.add_cover("c1", "c0");
            k.add_cover("c2", "c0");
        }
        _ => {
            k.add_context("c0", 0);
            k.add_context("c1", 0);
            k.add_context("c2", 1);
            k.add_cover("c2", "c0");
            k.add_cover("c2", "c1");
        }
    }
    let count = rng.gen_range(1..=p.max_axioms);
    let mut defeasible = 0;
    for _ in 0..count {
        let ax = random_axiom(rng, &ctxs);
        let ctx = ctxs.choose(rng).unwrap().clone();
        if ax.may_be_defeasible() && defeasible < p.max_defeasible && rng.gen_bool(0.6) {
            defeasible += 1;
            k.add_defeasible(ctx, ax);
        } else {
            k.add_strict(ctx, ax);
        }
    }
    k
}

fn random_axiom(rng: &mut impl Rng, ctxs: &[String]) -> Axiom {
    let i = |r: &mut dyn rand::RngCore| INDS.choose(r).unwrap().to_string();
    let c = |r: &mut dyn rand::RngCore| CONCEPTS.choose(r).unwrap().to_string();
    let ro = |r: &mut dyn rand::RngCore| ROLES.choose(r).unwrap().to_string();
    // assertions and inclusions dominate; the remaining shapes are rarer
    match rng.gen_range(0..30) {
        0..=5 => Axiom::ConceptAssertion { concept: c(rng), ind: i(rng) },
        6..=7 => Axiom::NegConceptAssertion { concept: c(rng), ind: i(rng) },
        8..=10 => Axiom::RoleAssertion { role: ro(rng), subj: i(rng), obj: i(rng) },
        11 => Axiom::NegRoleAssertion { role: ro(rng), subj: i(rng), obj: i(rng) },
        12..=15 => Axiom::SubClass { sub: c(rng), sup: if rng.gen_bool(0.15) { BOT.into() } else { c(rng) } },
        16 => Axiom::SubConj { left: c(rng), right: c(rng), sup: c(rng) },
        17 => Axiom::SubExists { role: ro(rng), filler: c(rng), sup: c(rng) },
        18 => Axiom::SupExists { sub: c(rng), role: ro(rng), ind: i(rng) },
        19 => Axiom::SupForall { sub: c(rng), role: ro(rng), filler: c(rng) },
        20 => Axiom::SupAtMostOne { sub: c(rng), role: ro(rng) },
        21 => Axiom::SubRole { sub: ro(rng), sup: ro(rng) },
        22 => Axiom::RoleChain { first: ro(rng), second: ro(rng), sup: ro(rng) },
        23 => Axiom::DisjointRoles { left: ro(rng), right: ro(rng) },
        24 => Axiom::InverseRoles { left: ro(rng), right: ro(rng) },
        25 => Axiom::Irreflexive { role: ro(rng) },
        26 => Axiom::EvalConcept { concept: c(rng), ctx: ctxs.choose(rng).unwrap().clone(), sup: c(rng) },
        27 => Axiom::EvalRole { role: ro(rng), ctx: ctxs.choose(rng).unwrap().clone(), sup: ro(rng) },
        28 => match rng.gen_range(0..4) {
            0 => Axiom::Nominal { ind: i(rng), sup: c(rng) },
            1 => Axiom::TopAssertion { ind: i(rng) },
            2 => Axiom::NotEqual { left: i(rng), right: i(rng) },
            _ => Axiom::BotAssertion { ind: i(rng) },
        },
        _ => Axiom::Equal { left: i(rng), right: i(rng) },
    }
}

/// Monotone three-literal clauses over `vars` variables.
pub fn random_monotone_cnf(rng: &mut impl Rng, vars: usize, clauses: usize) -> CnfInstance {
    let cs = (0..clauses)
        .map(|_| {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            let mut c = [0i32; 3];
            for l in c.iter_mut() {
                *l = sign * rng.gen_range(1..=vars as i32);
            }
            c
        })
        .collect();
    CnfInstance { vars, clauses: cs }
}

/// One instance for the parity construction: when `qualifying`, every
/// satisfying assignment other than all-false sets the first variable and
/// one exists; otherwise only the all-false assignment satisfies it.
pub fn random_odd_instance(rng: &mut impl Rng, max_vars: usize, qualifying: bool) -> CnfInstance {
    loop {
        let vars = rng.gen_range(1..=max_vars);
        if !qualifying {
            let mut e = random_monotone_cnf(rng, vars, 0);
            for v in 1..=vars as i32 {
                let w = rng.gen_range(1..=vars as i32);
                e.clauses.push([-v, -v, -w]);
            }
            e.clauses.shuffle(rng);
            if e.models(super::DEFAULT_MAX_VARS).map(|m| m.len() == 1).unwrap_or(false) {
                return e;
            }
            continue;
        }
        let m = rng.gen_range(1..=3);
        let mut e = random_monotone_cnf(rng, vars, m);
        // at least one positive clause rules out all-false
        if !e.clauses.iter().any(|c| c[0] > 0) {
            e.clauses.push([1, 1, 1]);
        }
        let ms = e.models(super::DEFAULT_MAX_VARS).unwrap_or_default();
        if !ms.is_empty() && ms.iter().all(|a| a[0]) {
            return e;
        }
    }
}

/// `l` parity instances of which a random prefix qualifies.
pub fn random_odd_family(rng: &mut impl Rng, l: usize, max_vars: usize) -> Vec<CnfInstance> {
    let q = rng.gen_range(0..=l);
    (0..l).map(|k| random_odd_instance(rng, max_vars, k < q)).collect()
}

/// A formula with coupling clauses, `mu` satisfying the matrix for every
/// `X` and all alternatives flipping the first `Y'` variable.
pub fn random_qbf(rng: &mut impl Rng, max_x: usize, max_y: usize) -> QbfInstance {
    loop {
        let x = rng.gen_range(1..=max_x);
        let y = rng.gen_range(1..=max_y);
        let vars = 2 * x + y;
        let mut clauses = Vec::new();
        for i in 1..=x as i32 {
            clauses.push([i, i + x as i32, i + x as i32]);
            clauses.push([-i, -i - x as i32, -i - x as i32]);
        }
        // extra clauses mention only X and Y'
        let pick = |r: &mut ChaCha8Rng| -> i32 {
            let v = r.gen_range(0..x + y);
            if v < x {
                v as i32 + 1
            } else {
                (2 * x + (v - x)) as i32 + 1
            }
        };
        let mut inner = ChaCha8Rng::seed_from_u64(rng.gen());
        for _ in 0..rng.gen_range(0..=3) {
            let sign = if inner.gen_bool(0.5) { 1 } else { -1 };
            clauses.push([sign * pick(&mut inner), sign * pick(&mut inner), sign * pick(&mut inner)]);
        }
        let mu: Vec<bool> = (0..y).map(|_| rng.gen_bool(0.5)).collect();
        let q = QbfInstance { x, y, cnf: CnfInstance { vars, clauses }, mu };
        if q.check().is_ok() {
            return q;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid_and_deterministic() {
        let mut r1 = rng(5);
        let mut r2 = rng(5);
        for _ in 0..100 {
            let k = random_sckr(&mut r1, SckrParams::default());
            assert!(k.validate().is_ok(), "{k:?}");
            assert!(k.contexts.is_ranked());
            assert_eq!(k, random_sckr(&mut r2, SckrParams::default()));
        }
    }

    #[test]
    fn reduction_sources_meet_preconditions() {
        let mut r = rng(9);
        for l in [2, 4] {
            let f = random_odd_family(&mut r, l, 3);
            assert!(super::super::check_odd_sat(&f).is_ok());
        }
        for _ in 0..5 {
            assert!(random_qbf(&mut r, 2, 2).check().is_ok());
        }
    }
}
