//! Generators for the hardness constructions and their brute-force
//! evaluators.
//!
//! Each generator yields a repository, the queries that decide the encoded
//! problem and the answers computed by brute force on the source instance.

mod cnf;
mod normalize;
pub mod random;

pub use cnf::{lexmax_assignment, parse_dimacs, CnfInstance, DEFAULT_MAX_VARS};
pub use normalize::{clause_axioms, normalize_to_rl, Conjunct};

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::asp::Entailment;
use crate::error::{Error, Result};
use crate::frontend;
use crate::kb::{Axiom, QueryAtom, Sckr, BOT};
use crate::oracle::Mode;

/// A generated repository with its decisive queries.
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub sckr: Sckr,
    pub queries: Vec<QueryAtom>,
    /// brute-force answer per query, when known
    pub expected: Vec<Option<Entailment>>,
    pub mode: Mode,
}

impl GeneratedInstance {
    /// The `.ckr` text.
    pub fn ckr_text(&self) -> String {
        frontend::serialize(&self.sckr)
    }

    /// Sidecar listing the preference mode and one `query` line per query,
    /// each followed by its expected verdict when known.
    pub fn sidecar_text(&self) -> String {
        let mut s = String::new();
        let mode = match self.mode {
            Mode::Global => "global",
            Mode::Induced => "induced-local",
        };
        let _ = writeln!(s, "mode={mode}");
        for (q, e) in self.queries.iter().zip(&self.expected) {
            let _ = writeln!(s, "query={q}");
            if let Some(e) = e {
                let _ = writeln!(s, "expected={}", verdict(*e));
            }
        }
        s
    }
}

/// Text form of a verdict as printed by the command line.
pub fn verdict(e: Entailment) -> &'static str {
    match e {
        Entailment::Entailed => "entailed",
        Entailment::NotEntailed => "not-entailed",
        Entailment::Inconsistent => "inconsistent",
    }
}

fn bool_verdict(b: bool) -> Entailment {
    if b {
        Entailment::Entailed
    } else {
        Entailment::NotEntailed
    }
}

fn concept(concept: &str, ind: &str) -> Axiom {
    Axiom::ConceptAssertion { concept: concept.into(), ind: ind.into() }
}

fn sub(a: &str, b: &str) -> Axiom {
    Axiom::SubClass { sub: a.into(), sup: b.into() }
}

fn query(c: &str, ind: &str, ctx: &str) -> QueryAtom {
    QueryAtom::Concept { concept: c.into(), ind: ind.into(), ctx: ctx.into() }
}

/// Axioms shared by all three constructions: `T` and `F` are disjoint
/// subconcepts of `A`, and a clause individual may not see three true
/// (negative clause) or three false (positive clause) variables.
fn core_axioms() -> Result<Vec<Axiom>> {
    let mut v = vec![
        Axiom::SubConj { left: "T".into(), right: "F".into(), sup: BOT.into() },
        sub("T", "A"),
        sub("F", "A"),
    ];
    v.extend(clause_axioms(&["N1", "N2", "N3"], "T", "A")?);
    v.extend(clause_axioms(&["P1", "P2", "P3"], "F", "A")?);
    Ok(v)
}

/// Role facts linking clause individual `ind` to its variables.
fn clause_facts(clause: &[i32; 3], ind: &str, var: impl Fn(usize) -> String) -> Vec<Axiom> {
    let pos = clause[0] > 0;
    clause
        .iter()
        .enumerate()
        .map(|(j, &l)| Axiom::RoleAssertion {
            role: format!("{}{}", if pos { "P" } else { "N" }, j + 1),
            subj: ind.into(),
            obj: var(l.unsigned_abs() as usize),
        })
        .collect()
}

/// Repository whose preferred models follow the lexicographically largest
/// satisfying assignment of `e`; the query asks for the last variable.
///
/// Contexts form a chain `c0 < c1 < ... < c{n+1}` with levels growing
/// downward, so `c_i` (holding `D(V_i => T)`) outranks `c_j` for `i < j`.
pub fn gen_lexmax_sat(e: &CnfInstance) -> Result<GeneratedInstance> {
    e.require_monotone()?;
    let n = e.vars;
    if n == 0 {
        return Err(Error::Precondition("instance without variables".into()));
    }
    let mut k = Sckr::new();
    let ctx = |i: usize| format!("c{i}");
    k.add_context(ctx(0), n as u32 + 1);
    for i in 1..=n + 1 {
        k.add_context(ctx(i), (n + 1 - i) as u32);
        k.add_cover(ctx(i - 1), ctx(i));
    }
    for i in 1..=n {
        k.add_defeasible(ctx(n + 1), sub(&format!("V{i}"), "F"));
        k.add_defeasible(ctx(i), sub(&format!("V{i}"), "T"));
    }
    for a in core_axioms()? {
        k.add_strict(ctx(0), a);
    }
    for i in 1..=n {
        k.add_strict(ctx(0), concept(&format!("V{i}"), &format!("x{i}")));
    }
    for (i, c) in e.clauses.iter().enumerate() {
        for a in clause_facts(c, &format!("k{}", i + 1), |v| format!("x{v}")) {
            k.add_strict(ctx(0), a);
        }
    }
    k.validate()?;
    let expected = match lexmax_assignment(e, DEFAULT_MAX_VARS)? {
        None => Entailment::Inconsistent,
        Some(a) => bool_verdict(a[n - 1]),
    };
    Ok(GeneratedInstance {
        sckr: k,
        queries: vec![query("T", &format!("x{n}"), "c0")],
        expected: vec![Some(expected)],
        mode: Mode::Global,
    })
}

/// Whether `e` has a satisfying assignment that is not all false.
fn qualifies(e: &CnfInstance) -> Result<bool> {
    Ok(e.models(DEFAULT_MAX_VARS)?.iter().any(|a| a.iter().any(|&b| b)))
}

/// Whether an odd number of the instances has a satisfying assignment that
/// is not all false.
pub fn odd_sat_value(instances: &[CnfInstance]) -> Result<bool> {
    let mut count = 0;
    for e in instances {
        count += qualifies(e)? as usize;
    }
    Ok(count % 2 == 1)
}

/// Checks the normalizations the parity construction relies on.
pub fn check_odd_sat(instances: &[CnfInstance]) -> Result<()> {
    let l = instances.len();
    if l < 2 || l % 2 == 1 {
        return Err(Error::Precondition(format!("need an even, positive number of instances, got {l}")));
    }
    let mut prev = true;
    for (k, e) in instances.iter().enumerate() {
        e.require_monotone()?;
        let ms = e.models(DEFAULT_MAX_VARS)?;
        if e.vars == 0 || ms.is_empty() {
            return Err(Error::Precondition(format!("instance {} is unsatisfiable", k + 1)));
        }
        if ms.iter().any(|a| a.iter().any(|&b| b) && !a[0]) {
            return Err(Error::Precondition(format!(
                "instance {} has a satisfying assignment that is neither all false nor sets its first variable",
                k + 1
            )));
        }
        let q = ms.iter().any(|a| a[0]);
        if q && !prev {
            return Err(Error::Precondition(format!("instance {} qualifies but its predecessor does not", k + 1)));
        }
        prev = q;
    }
    Ok(())
}

/// Three-context repository in which `O(a)@c0` is entailed iff an odd
/// number of the instances qualify.
///
/// Instances are paired as (1,2), (3,4), ...: `Y` marks the head of a pair
/// whose first instance sets its first variable and whose second does not,
/// and `a` reaches every pair head through `R`.
pub fn gen_odd_sat(instances: &[CnfInstance]) -> Result<GeneratedInstance> {
    check_odd_sat(instances)?;
    let mut k = Sckr::new();
    k.add_context("c0", 2);
    k.add_context("c1", 1);
    k.add_context("c2", 0);
    k.add_cover("c0", "c1");
    k.add_cover("c1", "c2");
    k.add_defeasible("c2", sub("V", "F"));
    k.add_defeasible("c1", sub("V", "T"));
    let mut c0 = core_axioms()?;
    c0.extend(normalize_to_rl(
        &[Conjunct::Atomic("T".into()), Conjunct::Exists { role: "C".into(), filler: vec!["F".into()] }],
        "Y",
    )?);
    c0.extend(normalize_to_rl(&[Conjunct::Exists { role: "R".into(), filler: vec!["Y".into()] }], "O")?);
    let var = |k: usize, j: usize| format!("x{k}_{j}");
    for (i, e) in instances.iter().enumerate() {
        for j in 1..=e.vars {
            c0.push(concept("V", &var(i + 1, j)));
        }
        for (ci, c) in e.clauses.iter().enumerate() {
            c0.extend(clause_facts(c, &format!("k{}_{}", i + 1, ci + 1), |v| var(i + 1, v)));
        }
    }
    for pair in 0..instances.len() / 2 {
        let head = var(2 * pair + 1, 1);
        c0.push(Axiom::RoleAssertion { role: "C".into(), subj: head.clone(), obj: var(2 * pair + 2, 1) });
        c0.push(Axiom::RoleAssertion { role: "R".into(), subj: "a".into(), obj: head });
    }
    for a in c0 {
        k.add_strict("c0", a);
    }
    k.validate()?;
    Ok(GeneratedInstance {
        sckr: k,
        queries: vec![query("O", "a", "c0")],
        expected: vec![Some(bool_verdict(odd_sat_value(instances)?))],
        mode: Mode::Global,
    })
}

/// A formula `forall X exists Y' != mu . E(X, X', Y')` where `X'` is the
/// complement of `X`. Variables of `cnf` are numbered `X` first, then `X'`,
/// then `Y'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QbfInstance {
    pub x: usize,
    pub y: usize,
    pub cnf: CnfInstance,
    pub mu: Vec<bool>,
}

impl QbfInstance {
    fn full(&self, sigma: &[bool], ys: &[bool]) -> Vec<bool> {
        let mut a: Vec<bool> = sigma.to_vec();
        a.extend(sigma.iter().map(|b| !b));
        a.extend_from_slice(ys);
        a
    }

    fn all(n: usize) -> impl Iterator<Item = Vec<bool>> {
        (0..1u64 << n).map(move |bits| (0..n).map(|i| bits >> i & 1 == 1).collect())
    }

    /// Alternatives to `mu` that satisfy the matrix under `sigma`.
    fn alternatives(&self, sigma: &[bool]) -> Vec<Vec<bool>> {
        Self::all(self.y).filter(|ys| *ys != self.mu && self.cnf.satisfied_by(&self.full(sigma, ys))).collect()
    }

    fn var_name(&self, v: usize) -> String {
        if v <= self.x {
            format!("x{v}")
        } else if v <= 2 * self.x {
            format!("xp{}", v - self.x)
        } else {
            format!("y{}", v - 2 * self.x)
        }
    }

    /// Checks the shape the construction needs: coupling clauses for every
    /// `x_i`, `mu` satisfying the matrix for every `X`, and every
    /// alternative to `mu` differing from it on the first `Y'` variable.
    pub fn check(&self) -> Result<()> {
        self.cnf.require_monotone()?;
        if self.y == 0 || self.mu.len() != self.y || self.cnf.vars != 2 * self.x + self.y {
            return Err(Error::Precondition("variable counts do not match the formula".into()));
        }
        if self.x + self.y > DEFAULT_MAX_VARS {
            return Err(Error::CapExceeded { what: "variables", limit: DEFAULT_MAX_VARS });
        }
        let lits: Vec<BTreeSet<i32>> = self.cnf.clauses.iter().map(|c| c.iter().copied().collect()).collect();
        for i in 1..=self.x as i32 {
            let xp = i + self.x as i32;
            for want in [BTreeSet::from([i, xp]), BTreeSet::from([-i, -xp])] {
                if !lits.contains(&want) {
                    return Err(Error::Precondition(format!("missing coupling clause {want:?}")));
                }
            }
        }
        for sigma in Self::all(self.x) {
            if !self.cnf.satisfied_by(&self.full(&sigma, &self.mu)) {
                return Err(Error::Precondition(format!("mu does not satisfy the matrix under {sigma:?}")));
            }
            if self.alternatives(&sigma).iter().any(|ys| ys[0] == self.mu[0]) {
                return Err(Error::Precondition("an alternative to mu keeps the first Y' variable".into()));
            }
        }
        Ok(())
    }
}

/// Truth of `forall X exists Y' != mu . E(X, not X, Y')`.
pub fn qbf_value(q: &QbfInstance) -> Result<bool> {
    if q.x + q.y > DEFAULT_MAX_VARS {
        return Err(Error::CapExceeded { what: "variables", limit: DEFAULT_MAX_VARS });
    }
    Ok(QbfInstance::all(q.x).all(|sigma| !q.alternatives(&sigma).is_empty()))
}

/// Repository deciding the formula under induced local preference, in the
/// three-level variant with one context pair per variable. Every middle
/// context `c_p` is a connector for `c0`; for `Y'` the middle contexts hold
/// the axioms that `mu` overrides.
pub fn gen_qbf(q: &QbfInstance) -> Result<GeneratedInstance> {
    q.check()?;
    let mut k = Sckr::new();
    k.add_context("c0", 2);
    let mut c0 = core_axioms()?;
    for v in 1..=q.cnf.vars {
        let p = q.var_name(v);
        let (mid, top) = (format!("c_{p}"), format!("c_{p}_hat"));
        k.add_context(mid.clone(), 1);
        k.add_context(top.clone(), 0);
        k.add_cover("c0", mid.clone());
        k.add_cover(mid.clone(), top.clone());
        let vc = format!("V_{p}");
        // for Y' the middle context carries the value mu does not choose
        let (mid_sup, top_sup) = match v.checked_sub(2 * q.x + 1) {
            Some(j) if q.mu[j] => ("F", "T"),
            _ => ("T", "F"),
        };
        k.add_defeasible(mid, sub(&vc, mid_sup));
        k.add_defeasible(top, sub(&vc, top_sup));
        c0.push(concept(&vc, &p));
    }
    for (i, c) in q.cnf.clauses.iter().enumerate() {
        c0.extend(clause_facts(c, &format!("k{}", i + 1), |v| q.var_name(v)));
    }
    for a in c0 {
        k.add_strict("c0", a);
    }
    k.validate()?;
    let flipped = if q.mu[0] { "F" } else { "T" };
    Ok(GeneratedInstance {
        sckr: k,
        queries: vec![query(flipped, "y1", "c0")],
        expected: vec![Some(bool_verdict(qbf_value(q)?))],
        mode: Mode::Induced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asp::Caps;
    use crate::oracle::Oracle;

    fn cnf(n: usize, c: Vec<[i32; 3]>) -> CnfInstance {
        CnfInstance::new(n, c).unwrap()
    }

    fn oracle_verdict(g: &GeneratedInstance, q: &QueryAtom) -> Entailment {
        Oracle::new(&g.sckr, Caps::default()).unwrap().entails(q, g.mode).unwrap()
    }

    #[test]
    fn lexmax_examples() {
        let g = gen_lexmax_sat(&cnf(1, vec![[1, 1, 1]])).unwrap();
        assert_eq!(g.expected[0], Some(Entailment::Entailed));
        assert_eq!(oracle_verdict(&g, &g.queries[0]), Entailment::Entailed);
        let g = gen_lexmax_sat(&cnf(1, vec![[-1, -1, -1]])).unwrap();
        assert_eq!(oracle_verdict(&g, &g.queries[0]), Entailment::NotEntailed);
        assert_eq!(oracle_verdict(&g, &query("F", "x1", "c0")), Entailment::Entailed);
        let g = gen_lexmax_sat(&cnf(2, vec![[1, 2, 2], [-1, -2, -2]])).unwrap();
        assert_eq!(g.expected[0], Some(Entailment::NotEntailed));
        assert_eq!(oracle_verdict(&g, &g.queries[0]), Entailment::NotEntailed);
        assert!(gen_lexmax_sat(&cnf(2, vec![[1, -2, 2]])).is_err());
        assert!(g.sckr.contexts.is_ranked());
    }

    #[test]
    fn odd_examples() {
        let forced = cnf(1, vec![[1, 1, 1]]);
        let none = cnf(1, vec![[-1, -1, -1]]);
        let g = gen_odd_sat(&[forced.clone(), forced.clone()]).unwrap();
        assert_eq!(g.expected[0], Some(Entailment::NotEntailed));
        assert_eq!(oracle_verdict(&g, &g.queries[0]), Entailment::NotEntailed);
        let g = gen_odd_sat(&[forced.clone(), none.clone()]).unwrap();
        assert_eq!(g.expected[0], Some(Entailment::Entailed));
        assert_eq!(oracle_verdict(&g, &g.queries[0]), Entailment::Entailed);
        assert!(gen_odd_sat(&[none.clone(), forced.clone()]).is_err());
        assert!(gen_odd_sat(&[forced]).is_err());
    }

    #[test]
    fn qbf_examples() {
        let coupling = vec![[1, 2, 2], [-1, -2, -2]];
        // y unconstrained: flipping is always possible
        let q = QbfInstance { x: 1, y: 1, cnf: cnf(3, coupling.clone()), mu: vec![false] };
        assert!(qbf_value(&q).unwrap());
        let g = gen_qbf(&q).unwrap();
        assert!(g.sckr.contexts.is_connector("c_y1", "c0"));
        assert_eq!(oracle_verdict(&g, &g.queries[0]), Entailment::Entailed);
        // x1 forces y1 false, so no alternative exists when x1 is true
        let mut c = coupling;
        c.push([-1, -3, -3]);
        let q = QbfInstance { x: 1, y: 1, cnf: cnf(3, c), mu: vec![false] };
        assert!(!qbf_value(&q).unwrap());
        let g = gen_qbf(&q).unwrap();
        assert_eq!(oracle_verdict(&g, &g.queries[0]), Entailment::NotEntailed);
        assert!(g.sidecar_text().starts_with("mode=induced-local\n"));
    }
}
