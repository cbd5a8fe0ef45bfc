//! Direct model-theoretic reasoning, independent of the program translation.
//!
//! Models are enumerated by searching over sets of exceptions: for a set
//! `chi` the least model `M(chi)` is computed by closing the asserted facts
//! under every axiom instance that `chi` does not suspend. A set is kept when
//! `M(chi)` is clash free and every exception in it is justified, i.e. the
//! literal the axiom would have produced is inconsistent with `M(chi)`.
//! Preferred models are then selected by comparing exception profiles.

mod compile;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};

use compile::{Assumption, Compiled, Interp, Lit};

use crate::asp::{Atom, Caps, Entailment, Term};
use crate::error::{Error, Result};
use crate::frontend::{BcqAtom, QTerm};
use crate::kb::{Overriding, QueryAtom, Sckr};
use crate::translate;

/// How preferred models are selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// one lexicographic comparison of exceptions per home level; needs a
    /// ranked hierarchy
    Global,
    /// comparison per context, grouping exceptions by the connector above
    /// their home
    Induced,
}

/// A justified model: the exceptions and the facts of its least model.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CasModel {
    pub overridings: BTreeSet<Overriding>,
    pub facts: BTreeSet<QueryAtom>,
}

#[derive(Debug, Clone)]
struct Found {
    chi: Vec<Assumption>,
    model: Interp,
}

pub struct Oracle {
    c: Compiled,
    k: Sckr,
    caps: Caps,
}

impl Oracle {
    pub fn new(k: &Sckr, caps: Caps) -> Result<Self> {
        k.validate()?;
        Ok(Oracle { c: Compiled::new(k), k: k.clone(), caps })
    }

    fn set(chi: &[Assumption]) -> HashSet<Assumption> {
        chi.iter().copied().collect()
    }

    fn least_model(&self, chi: &HashSet<Assumption>) -> Interp {
        self.c.close(chi, self.c.base())
    }

    fn env(&self, chi: &HashSet<Assumption>, m: &Interp, l: Lit) -> Interp {
        let mut e = m.clone();
        self.c.add(&mut e, l);
        self.c.close(chi, e)
    }

    fn justified(&self, a: &Assumption, chi: &HashSet<Assumption>, m: &Interp) -> bool {
        let tests = self.c.tests(a, m);
        !tests.is_empty()
            && tests.iter().all(|t| match t {
                None => true,
                Some(l) => self.c.clashes(chi, &self.env(chi, m, *l), false),
            })
    }

    fn search(&self) -> Result<Vec<Found>> {
        let m0 = self.least_model(&HashSet::new());
        let cands = self.c.candidates(&m0);
        let mut out = Vec::new();
        let mut budget = self.caps.max_subsets;
        let mut inset = Vec::new();
        self.dfs(&cands, 0, &mut inset, &mut out, &mut budget)?;
        Ok(out)
    }

    fn dfs(
        &self,
        cands: &[Assumption],
        i: usize,
        inset: &mut Vec<Assumption>,
        out: &mut Vec<Found>,
        budget: &mut usize,
    ) -> Result<()> {
        if *budget == 0 {
            return Err(Error::CapExceeded { what: "exception sets", limit: self.caps.max_subsets });
        }
        *budget -= 1;
        let ins = Self::set(inset);
        let mut all = ins.clone();
        all.extend(cands[i..].iter().copied());
        // every remaining candidate in: fewest facts, most suspensions
        let lower = self.least_model(&all);
        if self.c.clashes(&all, &lower, true) {
            return Ok(());
        }
        let upper = if i == cands.len() { lower.clone() } else { self.least_model(&ins) };
        for a in inset.iter() {
            if self.c.tests(a, &upper).is_empty() {
                return Ok(());
            }
            for l in self.c.tests(a, &lower).into_iter().flatten() {
                if !self.c.clashes(&ins, &self.env(&ins, &upper, l), false) {
                    return Ok(());
                }
            }
        }
        if i == cands.len() {
            if inset.iter().all(|a| self.justified(a, &ins, &lower)) {
                out.push(Found { chi: inset.clone(), model: lower });
            }
            return Ok(());
        }
        inset.push(cands[i]);
        self.dfs(cands, i + 1, inset, out, budget)?;
        inset.pop();
        self.dfs(cands, i + 1, inset, out, budget)
    }

    fn to_model(&self, f: &Found) -> CasModel {
        CasModel {
            overridings: f.chi.iter().map(|a| self.c.overriding(a)).collect(),
            facts: self.c.literals(&f.model).into_iter().map(|l| self.fact(l)).collect(),
        }
    }

    fn fact(&self, l: Lit) -> QueryAtom {
        let (p, args, ctx) = self.c.lit_names(l);
        match args.as_slice() {
            [x] => QueryAtom::Concept { concept: p, ind: x.clone(), ctx },
            [x, y] => QueryAtom::Role { role: p, subj: x.clone(), obj: y.clone(), ctx },
            _ => unreachable!(),
        }
    }

    /// Every justified model, in canonical order.
    pub fn justified_models(&self) -> Result<Vec<CasModel>> {
        let mut v: Vec<CasModel> = self.search()?.iter().map(|f| self.to_model(f)).collect();
        v.sort();
        Ok(v)
    }

    /// Exceptions counted per level of their home context.
    pub fn profile(&self, m: &CasModel) -> Vec<u32> {
        let max = self.c.levels.iter().copied().max().unwrap_or(0) as usize;
        let mut p = vec![0; max + 1];
        for o in &m.overridings {
            p[self.k.contexts.levels[&o.home] as usize] += 1;
        }
        p
    }

    /// Exception profiles per (context, connector group) pair.
    fn local_profiles(&self, m: &CasModel) -> BTreeMap<(String, Option<String>), Vec<u32>> {
        let max = self.c.levels.iter().copied().max().unwrap_or(0) as usize;
        let cs = &self.k.contexts;
        let mut out: BTreeMap<(String, Option<String>), Vec<u32>> = BTreeMap::new();
        for o in &m.overridings {
            let group = cs.parents(&o.at).filter(|p| cs.is_connector(p, &o.at)).find(|p| {
                *p == o.home || cs.ancestors(p).contains(&o.home)
            });
            let key = (o.at.clone(), group.map(str::to_string));
            out.entry(key).or_insert_with(|| vec![0; max + 1])[cs.levels[&o.home] as usize] += 1;
        }
        out
    }

    /// Whether `a` is strictly preferred to `b`.
    fn better(&self, a: &CasModel, b: &CasModel, mode: Mode) -> bool {
        match mode {
            Mode::Global => lex(&self.profile(a), &self.profile(b)) == Ordering::Less,
            Mode::Induced => {
                let (pa, pb) = (self.local_profiles(a), self.local_profiles(b));
                let keys: BTreeSet<_> = pa.keys().chain(pb.keys()).collect();
                let zero = vec![0; self.c.levels.iter().copied().max().unwrap_or(0) as usize + 1];
                let mut strict = false;
                for k in keys {
                    match lex(pa.get(k).unwrap_or(&zero), pb.get(k).unwrap_or(&zero)) {
                        Ordering::Greater => return false,
                        Ordering::Less => strict = true,
                        Ordering::Equal => {}
                    }
                }
                strict
            }
        }
    }

    /// Justified models not beaten by any other.
    pub fn preferred_models(&self, mode: Mode) -> Result<Vec<CasModel>> {
        if mode == Mode::Global && !self.k.contexts.is_ranked() {
            return Err(Error::Precondition("global preference needs a ranked hierarchy".into()));
        }
        let all = self.justified_models()?;
        Ok(all.iter().filter(|m| !all.iter().any(|o| self.better(o, m, mode))).cloned().collect())
    }

    /// Whether `m` is exactly a justified model: its exceptions are
    /// justified and its facts are the least model they induce.
    pub fn check_model(&self, m: &CasModel) -> bool {
        let Some(chi) = m.overridings.iter().map(|o| self.c.assumption(o)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        let set = Self::set(&chi);
        let lm = self.least_model(&set);
        if self.c.clashes(&set, &lm, true) || !chi.iter().all(|a| self.justified(a, &set, &lm)) {
            return false;
        }
        let facts: BTreeSet<QueryAtom> = self.c.literals(&lm).into_iter().map(|l| self.fact(l)).collect();
        facts == m.facts
    }

    /// Whether `m` is a justified model that no other justified model is
    /// preferred to.
    pub fn is_preferred_model(&self, m: &CasModel, mode: Mode) -> Result<bool> {
        if !self.check_model(m) {
            return Ok(false);
        }
        if mode == Mode::Global && !self.k.contexts.is_ranked() {
            return Err(Error::Precondition("global preference needs a ranked hierarchy".into()));
        }
        Ok(!self.justified_models()?.iter().any(|o| self.better(o, m, mode)))
    }

    /// Every exception the repository admits, whether or not its premise
    /// can hold.
    pub fn candidate_assumptions(&self) -> Vec<Overriding> {
        self.c.all_assumptions().iter().map(|a| self.c.overriding(a)).collect()
    }

    /// Whether `q` holds in every preferred model.
    pub fn entails(&self, q: &QueryAtom, mode: Mode) -> Result<Entailment> {
        q.check(&self.k)?;
        let ms = self.preferred_models(mode)?;
        Ok(if ms.is_empty() {
            Entailment::Inconsistent
        } else if ms.iter().all(|m| m.facts.contains(q)) {
            Entailment::Entailed
        } else {
            Entailment::NotEntailed
        })
    }

    /// Whether every preferred model has a match of the conjunctive query
    /// over the named individuals.
    pub fn entails_bcq(&self, atoms: &[BcqAtom], mode: Mode) -> Result<Entailment> {
        let ms = self.preferred_models(mode)?;
        if ms.is_empty() {
            return Ok(Entailment::Inconsistent);
        }
        let ok = ms.iter().all(|m| self.matches(atoms, &mut BTreeMap::new(), m));
        Ok(if ok { Entailment::Entailed } else { Entailment::NotEntailed })
    }

    fn matches(&self, atoms: &[BcqAtom], bind: &mut BTreeMap<String, String>, m: &CasModel) -> bool {
        let Some((first, rest)) = atoms.split_first() else { return true };
        let terms: Vec<&QTerm> = match first {
            BcqAtom::Concept { arg, .. } => vec![arg],
            BcqAtom::Role { subj, obj, .. } => vec![subj, obj],
        };
        let free: Vec<String> = terms
            .iter()
            .filter_map(|t| match t {
                QTerm::Var(v) if !bind.contains_key(v) => Some(v.clone()),
                _ => None,
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        self.assign(&free, first, rest, bind, m)
    }

    fn assign(
        &self,
        free: &[String],
        first: &BcqAtom,
        rest: &[BcqAtom],
        bind: &mut BTreeMap<String, String>,
        m: &CasModel,
    ) -> bool {
        if let Some((v, more)) = free.split_first() {
            for ind in &self.c.inds {
                bind.insert(v.clone(), ind.clone());
                if self.assign(more, first, rest, bind, m) {
                    bind.remove(v);
                    return true;
                }
            }
            bind.remove(v);
            return false;
        }
        let val = |t: &QTerm| match t {
            QTerm::Var(v) => bind[v].clone(),
            QTerm::Ind(i) => i.clone(),
        };
        let fact = match first {
            BcqAtom::Concept { concept, arg, ctx } => {
                QueryAtom::Concept { concept: concept.clone(), ind: val(arg), ctx: ctx.clone() }
            }
            BcqAtom::Role { role, subj, obj, ctx } => {
                QueryAtom::Role { role: role.clone(), subj: val(subj), obj: val(obj), ctx: ctx.clone() }
            }
        };
        m.facts.contains(&fact) && self.matches(rest, bind, m)
    }

    /// The answer set the translation should have for model `m`, rendered
    /// as atom strings. `None` if `m` is not a justified model.
    pub fn herbrand(&self, m: &CasModel) -> Option<BTreeSet<String>> {
        if !self.check_model(m) {
            return None;
        }
        let chi: Vec<Assumption> = m.overridings.iter().map(|o| self.c.assumption(o)).collect::<Option<_>>()?;
        let set = Self::set(&chi);
        let lm = self.least_model(&set);
        let mut out: BTreeSet<String> = translate::facts(&self.k).iter().map(|a| a.to_string()).collect();
        let main = Term::cst("main");
        for l in self.c.literals(&lm) {
            out.insert(self.fact_atom(l, main.clone()).to_string());
        }
        for o in &m.overridings {
            out.extend(translate::ovr_atom(o).map(|a| a.to_string()));
            out.extend(translate::ovrlevel_atom(o, self.k.contexts.levels[&o.home]).map(|a| a.to_string()));
        }
        let tests: BTreeSet<Lit> = self.c.candidates(&lm).iter().flat_map(|a| self.c.tests(a, &lm)).flatten().collect();
        for l in tests {
            let t = self.env_term(l);
            out.insert(Atom::new("test", vec![t.clone()]).to_string());
            let e = self.env(&set, &lm, l);
            for f in self.c.literals(&e) {
                out.insert(self.fact_atom(f, t.clone()).to_string());
            }
            let verdict = if self.c.clashes(&set, &e, false) { "unsat" } else { "test_fails" };
            out.insert(Atom::new(verdict, vec![t]).to_string());
        }
        Some(out)
    }

    fn fact_atom(&self, l: Lit, env: Term) -> Atom {
        let n = translate::name;
        let (p, args, ctx) = self.c.lit_names(l);
        match args.as_slice() {
            [x] => Atom::new("instd", vec![n(x), n(&p), n(&ctx), env]),
            [x, y] => Atom::new("tripled", vec![n(x), n(&p), n(y), n(&ctx), env]),
            _ => unreachable!(),
        }
    }

    fn env_term(&self, l: Lit) -> Term {
        let n = translate::name;
        let (p, args, ctx) = self.c.lit_names(l);
        match args.as_slice() {
            [x] => Term::Func("nlit".into(), vec![n(x), n(&p), n(&ctx)]),
            [x, y] => Term::Func("nrel".into(), vec![n(x), n(&p), n(y), n(&ctx)]),
            _ => unreachable!(),
        }
    }


}

/// Compares profiles from the highest level down; fewer exceptions win.
fn lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::asp::solve_optimal;
    use crate::frontend::{parse, parse_query};

    const EX1: &str = "context ctop level 0. context cbot level 1. cbot < ctop.\n\
        module ctop { D(A => B). } module cbot { A(a). -B(a). }";

    fn oracle(text: &str) -> Oracle {
        Oracle::new(&parse(text).unwrap(), Caps::default()).unwrap()
    }

    fn engine_models(text: &str) -> BTreeSet<BTreeSet<String>> {
        let sol = solve_optimal(&translate::translate(&parse(text).unwrap()).unwrap(), Caps::default()).unwrap();
        sol.rendered().into_iter().map(|m| m.into_iter().collect()).collect()
    }

    fn agree(text: &str) {
        let o = oracle(text);
        let mine: BTreeSet<BTreeSet<String>> =
            o.preferred_models(Mode::Global).unwrap().iter().map(|m| o.herbrand(m).unwrap()).collect();
        let theirs = engine_models(text);
        if mine != theirs {
            for (a, b) in mine.iter().zip(theirs.iter()) {
                eprintln!("oracle only: {:?}", a.difference(b).collect::<Vec<_>>());
                eprintln!("engine only: {:?}", b.difference(a).collect::<Vec<_>>());
            }
            panic!("{} vs {} models for\n{text}", mine.len(), theirs.len());
        }
    }

    #[test]
    fn reference_examples() {
        let o = oracle(EX1);
        let ms = o.preferred_models(Mode::Global).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].overridings.len(), 1);
        let q = parse_query("B(a)@cbot").unwrap();
        assert_eq!(o.entails(&q, Mode::Global).unwrap(), Entailment::NotEntailed);
        let o2 = oracle(&EX1.replace("-B(a).", ""));
        assert_eq!(o2.entails(&q, Mode::Global).unwrap(), Entailment::Entailed);
    }

    #[test]
    fn herbrand_matches_engine() {
        agree(EX1);
        agree(&EX1.replace("-B(a).", ""));
        agree(
            "context c0 level 0. context c1 level 1. context c2 level 2. c1 < c0. c2 < c1.\n\
             module c0 { D(A => B). D(B => C). Inv(R, S). } \
             module c1 { R(a,b). D(-C(a)). } module c2 { A(a). A(b). -B(b). -S(b,a). }",
        );
        agree(
            "context c0 level 0. context c1 level 1. c1 < c0.\n\
             module c0 { D(A => max1 R). D(Irr(R)). } module c1 { A(a). R(a,b). R(a,c). R(b,b). }",
        );
    }

    #[test]
    fn candidate_space() {
        assert_eq!(oracle(EX1).candidate_assumptions().len(), 1);
        let k = "context t level 0. context u level 1. u < t. module t { D(R =>r S). } module u { R(a,b). }";
        assert_eq!(oracle(k).candidate_assumptions().len(), 4);
        assert!(oracle("context c level 0. module c { A(a). }").candidate_assumptions().is_empty());
    }

    #[test]
    fn inconsistent_without_models() {
        let o = oracle("context c level 0. module c { A(a). -A(a). }");
        let q = parse_query("A(a)@c").unwrap();
        assert_eq!(o.entails(&q, Mode::Global).unwrap(), Entailment::Inconsistent);
    }

    #[test]
    fn perturbed_models_rejected() {
        let o = oracle(EX1);
        let m = o.preferred_models(Mode::Global).unwrap().remove(0);
        assert!(o.check_model(&m));
        let mut dropped = m.clone();
        dropped.overridings.clear();
        assert!(!o.check_model(&dropped));
        let mut extra = m.clone();
        extra.facts.insert(parse_query("B(a)@ctop").unwrap());
        assert!(!o.check_model(&extra));
        let mut fewer = m.clone();
        let f = fewer.facts.iter().next().unwrap().clone();
        fewer.facts.remove(&f);
        assert!(!o.check_model(&fewer));
    }
}
