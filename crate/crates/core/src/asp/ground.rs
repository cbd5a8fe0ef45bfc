//! Bottom-up grounding.
//!
//! The intelligent grounder computes the atoms derivable when negative
//! literals are ignored (semi-naive evaluation) and instantiates rules only
//! over that set. Negative literals over underivable atoms are dropped.

use std::collections::{BTreeMap, HashMap};

use crate::asp::program::{Atom, Program, Rule, Term};
use crate::error::{Error, Result};

pub type TermId = u32;
pub type AtomId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum GTerm {
    Str(u32),
    Const(u32),
    Int(i64),
    Func(u32, Vec<TermId>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct GAtom {
    pred: u32,
    args: Vec<TermId>,
}

#[derive(Debug, Default, Clone)]
struct Interner {
    names: Vec<String>,
    ids: HashMap<String, u32>,
}

impl Interner {
    fn intern(&mut self, s: &str) -> u32 {
        if let Some(&id) = self.ids.get(s) {
            return id;
        }
        let id = self.names.len() as u32;
        self.names.push(s.to_string());
        self.ids.insert(s.to_string(), id);
        id
    }

    fn get(&self, s: &str) -> Option<u32> {
        self.ids.get(s).copied()
    }
}

#[derive(Debug, Default, Clone)]
struct Store {
    syms: Interner,
    terms: Vec<GTerm>,
    term_ids: HashMap<GTerm, TermId>,
}

impl Store {
    fn term(&mut self, t: GTerm) -> TermId {
        if let Some(&id) = self.term_ids.get(&t) {
            return id;
        }
        let id = self.terms.len() as TermId;
        self.terms.push(t.clone());
        self.term_ids.insert(t, id);
        id
    }

    fn ground_term(&mut self, t: &Term) -> TermId {
        let g = match t {
            Term::Str(s) => GTerm::Str(self.syms.intern(s)),
            Term::Const(s) => GTerm::Const(self.syms.intern(s)),
            Term::Int(n) => GTerm::Int(*n),
            Term::Func(f, args) => {
                let f = self.syms.intern(f);
                let args = args.iter().map(|a| self.ground_term(a)).collect();
                GTerm::Func(f, args)
            }
            Term::Var(v) => panic!("variable {v} in ground term"),
        };
        self.term(g)
    }

    /// Looks a ground term up without interning it.
    fn find_term(&self, t: &Term) -> Option<TermId> {
        let g = match t {
            Term::Str(s) => GTerm::Str(self.syms.get(s)?),
            Term::Const(s) => GTerm::Const(self.syms.get(s)?),
            Term::Int(n) => GTerm::Int(*n),
            Term::Func(f, args) => {
                let f = self.syms.get(f)?;
                let args = args.iter().map(|a| self.find_term(a)).collect::<Option<Vec<_>>>()?;
                GTerm::Func(f, args)
            }
            Term::Var(_) => return None,
        };
        self.term_ids.get(&g).copied()
    }

    fn to_term(&self, id: TermId) -> Term {
        match &self.terms[id as usize] {
            GTerm::Str(s) => Term::Str(self.syms.names[*s as usize].clone()),
            GTerm::Const(s) => Term::Const(self.syms.names[*s as usize].clone()),
            GTerm::Int(n) => Term::Int(*n),
            GTerm::Func(f, args) => {
                Term::Func(self.syms.names[*f as usize].clone(), args.iter().map(|a| self.to_term(*a)).collect())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundRule {
    pub head: AtomId,
    pub pos: Vec<AtomId>,
    pub neg: Vec<AtomId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundConstraint {
    pub pos: Vec<AtomId>,
    pub neg: Vec<AtomId>,
}

/// One ground weak constraint instance. `key` identifies the violation:
/// instances sharing a key are counted once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundWeak {
    pub body: Vec<AtomId>,
    pub weight: i64,
    pub level: i64,
    pub key: Vec<TermId>,
}

/// A variable-free program over interned atoms.
#[derive(Debug, Clone, Default)]
pub struct GroundProgram {
    store: Store,
    atoms: Vec<GAtom>,
    atom_ids: HashMap<GAtom, AtomId>,
    pub rules: Vec<GroundRule>,
    pub constraints: Vec<GroundConstraint>,
    pub weak: Vec<GroundWeak>,
}

impl GroundProgram {
    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom(&self, id: AtomId) -> Atom {
        let a = &self.atoms[id as usize];
        Atom { pred: self.store.syms.names[a.pred as usize].clone(), args: a.args.iter().map(|t| self.store.to_term(*t)).collect() }
    }

    pub fn render(&self, id: AtomId) -> String {
        self.atom(id).to_string()
    }

    pub fn lookup(&self, atom: &Atom) -> Option<AtomId> {
        let pred = self.store.syms.get(&atom.pred)?;
        let args = atom.args.iter().map(|t| self.store.find_term(t)).collect::<Option<Vec<_>>>()?;
        self.atom_ids.get(&GAtom { pred, args }).copied()
    }

    pub fn predicate(&self, id: AtomId) -> &str {
        &self.store.syms.names[self.atoms[id as usize].pred as usize]
    }

    pub fn key_terms(&self, key: &[TermId]) -> Vec<Term> {
        key.iter().map(|t| self.store.to_term(*t)).collect()
    }

    fn intern_atom(&mut self, a: GAtom) -> (AtomId, bool) {
        if let Some(&id) = self.atom_ids.get(&a) {
            return (id, false);
        }
        let id = self.atoms.len() as AtomId;
        self.atoms.push(a.clone());
        self.atom_ids.insert(a, id);
        (id, true)
    }
}

#[derive(Debug, Clone)]
enum Pat {
    Var(usize),
    Ground(TermId),
    Func(u32, Vec<Pat>),
}

#[derive(Debug, Clone)]
struct CAtom {
    pred: u32,
    args: Vec<Pat>,
}

#[derive(Debug, Clone)]
enum Kind {
    Rule(CAtom),
    Constraint,
    Weak { weight: i64, level: Pat, key: Vec<Pat> },
}

#[derive(Debug, Clone)]
struct CRule {
    kind: Kind,
    pos: Vec<CAtom>,
    neg: Vec<CAtom>,
    neq: Vec<(Pat, Pat)>,
    nvars: usize,
}

fn compile_term(t: &Term, vars: &mut Vec<String>, store: &mut Store) -> Pat {
    match t {
        Term::Var(v) => {
            let i = vars.iter().position(|x| x == v).unwrap_or_else(|| {
                vars.push(v.clone());
                vars.len() - 1
            });
            Pat::Var(i)
        }
        Term::Func(f, args) if !t.is_ground() => {
            let f = store.syms.intern(f);
            Pat::Func(f, args.iter().map(|a| compile_term(a, vars, store)).collect())
        }
        _ => Pat::Ground(store.ground_term(t)),
    }
}

fn compile_atom(a: &Atom, vars: &mut Vec<String>, store: &mut Store) -> CAtom {
    CAtom { pred: store.syms.intern(&a.pred), args: a.args.iter().map(|t| compile_term(t, vars, store)).collect() }
}

fn compile_rule(r: &Rule, kind_weak: Option<(i64, &Term, &[Term])>, store: &mut Store) -> Result<CRule> {
    if kind_weak.is_none() {
        if let Some(v) = r.unsafe_vars().first() {
            return Err(Error::UnsafeRule(format!("variable {v} in '{r}'")));
        }
    }
    let mut vars = Vec::new();
    let pos: Vec<CAtom> = r.pos.iter().map(|a| compile_atom(a, &mut vars, store)).collect();
    let bound = vars.len();
    let neg = r.neg.iter().map(|a| compile_atom(a, &mut vars, store)).collect();
    let neq = r.neq.iter().map(|(x, y)| (compile_term(x, &mut vars, store), compile_term(y, &mut vars, store))).collect();
    let kind = match (kind_weak, &r.head) {
        (Some((weight, level, key)), _) => Kind::Weak {
            weight,
            level: compile_term(level, &mut vars, store),
            key: key.iter().map(|t| compile_term(t, &mut vars, store)).collect(),
        },
        (None, Some(h)) => Kind::Rule(compile_atom(h, &mut vars, store)),
        (None, None) => Kind::Constraint,
    };
    if vars.len() > bound {
        return Err(Error::UnsafeRule(format!("variable {} is not bound by a positive literal", vars[bound])));
    }
    Ok(CRule { kind, pos, neg, neq, nvars: vars.len() })
}

fn instantiate(p: &Pat, b: &[Option<TermId>], store: &mut Store) -> TermId {
    match p {
        Pat::Var(i) => b[*i].expect("bound variable"),
        Pat::Ground(t) => *t,
        Pat::Func(f, args) => {
            let args = args.iter().map(|a| instantiate(a, b, store)).collect();
            store.term(GTerm::Func(*f, args))
        }
    }
}

/// Value of a pattern if all of its variables are bound.
fn try_value(p: &Pat, b: &[Option<TermId>], store: &Store) -> Option<TermId> {
    match p {
        Pat::Var(i) => b[*i],
        Pat::Ground(t) => Some(*t),
        Pat::Func(f, args) => {
            let args = args.iter().map(|a| try_value(a, b, store)).collect::<Option<Vec<_>>>()?;
            store.term_ids.get(&GTerm::Func(*f, args)).copied().or(Some(TermId::MAX))
        }
    }
}

fn unify(p: &Pat, t: TermId, b: &mut [Option<TermId>], trail: &mut Vec<usize>, store: &Store) -> bool {
    match p {
        Pat::Var(i) => match b[*i] {
            Some(v) => v == t,
            None => {
                b[*i] = Some(t);
                trail.push(*i);
                true
            }
        },
        Pat::Ground(g) => *g == t,
        Pat::Func(f, args) => match &store.terms[t as usize] {
            GTerm::Func(g, targs) if g == f && targs.len() == args.len() => {
                args.iter().zip(targs.iter()).all(|(a, ta)| unify(a, *ta, b, trail, store))
            }
            _ => false,
        },
    }
}

/// Derivable atoms with per-predicate and per-argument indexes. Ids grow in
/// insertion order, which the semi-naive rounds rely on.
#[derive(Default)]
struct Index {
    by_pred: HashMap<u32, Vec<AtomId>>,
    by_arg: HashMap<(u32, usize, TermId), Vec<AtomId>>,
}

impl Index {
    fn add(&mut self, id: AtomId, a: &GAtom) {
        self.by_pred.entry(a.pred).or_default().push(id);
        for (i, t) in a.args.iter().enumerate() {
            self.by_arg.entry((a.pred, i, *t)).or_default().push(id);
        }
    }

    fn candidates(&self, lit: &CAtom, b: &[Option<TermId>], store: &Store) -> &[AtomId] {
        let mut best: &[AtomId] = self.by_pred.get(&lit.pred).map(Vec::as_slice).unwrap_or(&[]);
        for (i, p) in lit.args.iter().enumerate() {
            if let Some(t) = try_value(p, b, store) {
                let list = self.by_arg.get(&(lit.pred, i, t)).map(Vec::as_slice).unwrap_or(&[]);
                if list.len() < best.len() {
                    best = list;
                }
            }
        }
        best
    }
}

#[derive(Clone, Copy)]
enum Range {
    Old,
    Delta,
    All,
}

struct Grounder {
    gp: GroundProgram,
    index: Index,
    max_atoms: usize,
}

struct RawRule {
    head: AtomId,
    pos: Vec<AtomId>,
    neg: Vec<GAtom>,
}

impl Grounder {
    fn add_atom(&mut self, a: GAtom) -> Result<AtomId> {
        let (id, fresh) = self.gp.intern_atom(a.clone());
        if fresh {
            self.index.add(id, &a);
            if self.gp.atoms.len() > self.max_atoms {
                return Err(Error::CapExceeded { what: "ground atom", limit: self.max_atoms });
            }
        }
        Ok(id)
    }

    fn ground_atom(&mut self, c: &CAtom, b: &[Option<TermId>]) -> GAtom {
        GAtom { pred: c.pred, args: c.args.iter().map(|p| instantiate(p, b, &mut self.gp.store)).collect() }
    }

    /// Enumerates the bindings of `order` over the current atoms, honouring
    /// the id ranges of a semi-naive round.
    #[allow(clippy::too_many_arguments)]
    fn join(
        &self,
        rule: &CRule,
        order: &[(usize, Range)],
        bounds: (AtomId, AtomId),
        depth: usize,
        b: &mut Vec<Option<TermId>>,
        body: &mut Vec<AtomId>,
        out: &mut Vec<(Vec<Option<TermId>>, Vec<AtomId>)>,
    ) {
        if depth == order.len() {
            let mut ordered = vec![0; rule.pos.len()];
            for (k, (i, _)) in order.iter().enumerate() {
                ordered[*i] = body[k];
            }
            out.push((b.clone(), ordered));
            return;
        }
        let (li, range) = order[depth];
        let lit = &rule.pos[li];
        let (lo, hi) = bounds;
        let cands = self.index.candidates(lit, b, &self.gp.store);
        let (from, to) = match range {
            Range::Old => (0, lo),
            Range::Delta => (lo, hi),
            Range::All => (0, hi),
        };
        let start = cands.partition_point(|&id| id < from);
        let mut trail = Vec::new();
        for &id in &cands[start..] {
            if id >= to {
                break;
            }
            let atom = &self.gp.atoms[id as usize];
            if atom.pred != lit.pred || atom.args.len() != lit.args.len() {
                continue;
            }
            trail.clear();
            let ok = lit.args.iter().zip(atom.args.iter()).all(|(p, t)| unify(p, *t, b, &mut trail, &self.gp.store));
            if ok {
                body.push(id);
                self.join(rule, order, bounds, depth + 1, b, body, out);
                body.pop();
            }
            for v in trail.drain(..) {
                b[v] = None;
            }
        }
    }

    fn neq_ok(&mut self, rule: &CRule, b: &[Option<TermId>]) -> bool {
        rule.neq.iter().all(|(x, y)| instantiate(x, b, &mut self.gp.store) != instantiate(y, b, &mut self.gp.store))
    }
}

/// Join order starting at `first`, then greedily the literal with the most
/// arguments already bound.
fn join_order(rule: &CRule, first: Option<usize>) -> Vec<usize> {
    let n = rule.pos.len();
    let mut order = Vec::with_capacity(n);
    let mut bound = vec![false; rule.nvars];
    let mark = |lit: &CAtom, bound: &mut Vec<bool>| {
        fn walk(p: &Pat, bound: &mut Vec<bool>) {
            match p {
                Pat::Var(i) => bound[*i] = true,
                Pat::Func(_, a) => a.iter().for_each(|x| walk(x, bound)),
                Pat::Ground(_) => {}
            }
        }
        lit.args.iter().for_each(|p| walk(p, bound));
    };
    if let Some(f) = first {
        order.push(f);
        mark(&rule.pos[f], &mut bound);
    }
    while order.len() < n {
        let score = |lit: &CAtom| {
            lit.args
                .iter()
                .filter(|p| match p {
                    Pat::Var(i) => bound[*i],
                    Pat::Ground(_) => true,
                    Pat::Func(..) => false,
                })
                .count()
        };
        let next = (0..n)
            .filter(|i| !order.contains(i))
            .max_by_key(|&i| (score(&rule.pos[i]), std::cmp::Reverse(i)))
            .expect("remaining literal");
        order.push(next);
        mark(&rule.pos[next], &mut bound);
    }
    order
}

pub const DEFAULT_MAX_GROUND_ATOMS: usize = 2_000_000;

/// Grounds `p` over its positively derivable atoms.
pub fn ground(p: &Program) -> Result<GroundProgram> {
    ground_with_cap(p, DEFAULT_MAX_GROUND_ATOMS)
}

pub fn ground_with_cap(p: &Program, max_atoms: usize) -> Result<GroundProgram> {
    let mut g = Grounder { gp: GroundProgram::default(), index: Index::default(), max_atoms };
    let mut rules = Vec::new();
    let mut checks = Vec::new();
    for r in &p.rules {
        let c = compile_rule(r, None, &mut g.gp.store)?;
        if r.head.is_some() {
            rules.push(c);
        } else {
            checks.push(c);
        }
    }
    for w in &p.weak {
        let r = Rule { head: None, pos: w.body.clone(), ..Default::default() };
        checks.push(compile_rule(&r, Some((w.weight, &w.level, &w.terms)), &mut g.gp.store)?);
    }

    for f in &p.facts {
        if !f.is_ground() {
            return Err(Error::UnsafeRule(format!("non-ground fact {f}")));
        }
        let pred = g.gp.store.syms.intern(&f.pred);
        let args = f.args.iter().map(|t| g.gp.store.ground_term(t)).collect();
        let id = g.add_atom(GAtom { pred, args })?;
        g.gp.rules.push(GroundRule { head: id, pos: vec![], neg: vec![] });
    }

    let mut raw: Vec<RawRule> = Vec::new();
    // rules with an empty positive body fire once
    for r in rules.iter().filter(|r| r.pos.is_empty()) {
        let b = vec![None; r.nvars];
        if !g.neq_ok(r, &b) {
            continue;
        }
        let Kind::Rule(h) = &r.kind else { unreachable!() };
        let head = g.ground_atom(h, &b);
        let neg = r.neg.iter().map(|n| g.ground_atom(n, &b)).collect();
        let head = g.add_atom(head)?;
        raw.push(RawRule { head, pos: vec![], neg });
    }

    let orders: Vec<Vec<Vec<usize>>> =
        rules.iter().map(|r| (0..r.pos.len()).map(|i| join_order(r, Some(i))).collect()).collect();
    let mut lo: AtomId = 0;
    loop {
        let hi = g.gp.atoms.len() as AtomId;
        if lo == hi {
            break;
        }
        for (ri, r) in rules.iter().enumerate() {
            for (di, order) in orders[ri].iter().enumerate() {
                let annotated: Vec<(usize, Range)> = order
                    .iter()
                    .map(|&i| {
                        let range = match i.cmp(&di) {
                            std::cmp::Ordering::Less => Range::Old,
                            std::cmp::Ordering::Equal => Range::Delta,
                            std::cmp::Ordering::Greater => Range::All,
                        };
                        (i, range)
                    })
                    .collect();
                let mut found = Vec::new();
                let mut b = vec![None; r.nvars];
                g.join(r, &annotated, (lo, hi), 0, &mut b, &mut Vec::new(), &mut found);
                for (b, pos) in found {
                    if !g.neq_ok(r, &b) {
                        continue;
                    }
                    let Kind::Rule(h) = &r.kind else { unreachable!() };
                    let head = g.ground_atom(h, &b);
                    let neg = r.neg.iter().map(|n| g.ground_atom(n, &b)).collect();
                    let head = g.add_atom(head)?;
                    raw.push(RawRule { head, pos, neg });
                }
            }
        }
        lo = hi;
    }

    let resolve = |gp: &GroundProgram, neg: Vec<GAtom>| -> Vec<AtomId> {
        let mut out: Vec<AtomId> = neg.into_iter().filter_map(|a| gp.atom_ids.get(&a).copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    };
    for r in raw {
        let neg = resolve(&g.gp, r.neg);
        g.gp.rules.push(GroundRule { head: r.head, pos: r.pos, neg });
    }

    let hi = g.gp.atoms.len() as AtomId;
    for c in &checks {
        let order: Vec<(usize, Range)> = join_order(c, None).into_iter().map(|i| (i, Range::All)).collect();
        let mut found = Vec::new();
        let mut b = vec![None; c.nvars];
        g.join(c, &order, (0, hi), 0, &mut b, &mut Vec::new(), &mut found);
        for (b, pos) in found {
            if !g.neq_ok(c, &b) {
                continue;
            }
            match &c.kind {
                Kind::Constraint => {
                    let neg = c.neg.iter().map(|n| g.ground_atom(n, &b)).collect();
                    let neg = resolve(&g.gp, neg);
                    g.gp.constraints.push(GroundConstraint { pos, neg });
                }
                Kind::Weak { weight, level, key } => {
                    let lv = instantiate(level, &b, &mut g.gp.store);
                    let GTerm::Int(level) = g.gp.store.terms[lv as usize] else {
                        return Err(Error::UnsafeRule("weak constraint level must be an integer".into()));
                    };
                    let mut k = vec![g.gp.store.term(GTerm::Int(*weight)), lv];
                    k.extend(key.iter().map(|p| instantiate(p, &b, &mut g.gp.store)));
                    g.gp.weak.push(GroundWeak { body: pos, weight: *weight, level, key: k });
                }
                Kind::Rule(_) => unreachable!(),
            }
        }
    }
    Ok(g.gp)
}

/// Instantiates every rule over all constants of a function-free program.
/// Exponential; intended for cross-checking the intelligent grounder.
pub fn ground_naive(p: &Program) -> Result<GroundProgram> {
    let mut gp = GroundProgram::default();
    let mut universe: Vec<Term> = Vec::new();
    let note = |t: &Term, u: &mut Vec<Term>| {
        if t.is_ground() && !u.contains(t) {
            u.push(t.clone());
        }
    };
    for a in p.facts.iter().chain(p.rules.iter().flat_map(|r| r.head.iter().chain(&r.pos).chain(&r.neg))) {
        for t in &a.args {
            if matches!(t, Term::Func(..)) {
                return Err(Error::Precondition("naive grounding needs a function-free program".into()));
            }
            note(t, &mut universe);
        }
    }
    universe.sort();
    let atom = |gp: &mut GroundProgram, a: &Atom| -> AtomId {
        let pred = gp.store.syms.intern(&a.pred);
        let args = a.args.iter().map(|t| gp.store.ground_term(t)).collect();
        gp.intern_atom(GAtom { pred, args }).0
    };
    for f in &p.facts {
        let id = atom(&mut gp, f);
        gp.rules.push(GroundRule { head: id, pos: vec![], neg: vec![] });
    }
    let subst = |a: &Atom, m: &BTreeMap<&str, &Term>| Atom {
        pred: a.pred.clone(),
        args: a.args.iter().map(|t| if let Term::Var(v) = t { m[v.as_str()].clone() } else { t.clone() }).collect(),
    };
    let weak_rules: Vec<Rule> = p.weak.iter().map(|w| Rule { head: None, pos: w.body.clone(), ..Default::default() }).collect();
    let all_rules: Vec<(&Rule, Option<&crate::asp::program::WeakConstraint>)> =
        p.rules.iter().map(|r| (r, None)).chain(weak_rules.iter().zip(p.weak.iter().map(Some))).collect();
    for (r, weak) in all_rules {
        let mut vars: Vec<&str> = Vec::new();
        for a in r.head.iter().chain(&r.pos).chain(&r.neg) {
            for v in a.vars() {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
        if let Some(w) = weak {
            for t in std::iter::once(&w.level).chain(&w.terms) {
                let mut vs = Vec::new();
                t.collect_vars(&mut vs);
                for v in vs {
                    if !vars.contains(&v) {
                        vars.push(v);
                    }
                }
            }
        }
        let n = vars.len();
        let total = universe.len().checked_pow(n as u32).unwrap_or(usize::MAX);
        for code in 0..total {
            let mut m = BTreeMap::new();
            let mut c = code;
            for v in &vars {
                m.insert(*v, &universe[c % universe.len()]);
                c /= universe.len().max(1);
            }
            let sub_t = |t: &Term| if let Term::Var(v) = t { m[v.as_str()].clone() } else { t.clone() };
            if r.neq.iter().any(|(x, y)| sub_t(x) == sub_t(y)) {
                continue;
            }
            let pos: Vec<AtomId> = r.pos.iter().map(|a| atom(&mut gp, &subst(a, &m))).collect();
            let mut neg: Vec<AtomId> = r.neg.iter().map(|a| atom(&mut gp, &subst(a, &m))).collect();
            neg.sort_unstable();
            neg.dedup();
            match (&r.head, weak) {
                (_, Some(w)) => {
                    let lv = gp.store.ground_term(&sub_t(&w.level));
                    let GTerm::Int(level) = gp.store.terms[lv as usize] else {
                        return Err(Error::UnsafeRule("weak constraint level must be an integer".into()));
                    };
                    let mut key = vec![gp.store.term(GTerm::Int(w.weight)), lv];
                    key.extend(w.terms.iter().map(|t| gp.store.ground_term(&sub_t(t))));
                    gp.weak.push(GroundWeak { body: pos, weight: w.weight, level, key });
                }
                (Some(h), None) => {
                    let head = atom(&mut gp, &subst(h, &m));
                    gp.rules.push(GroundRule { head, pos, neg });
                }
                (None, None) => gp.constraints.push(GroundConstraint { pos, neg }),
            }
        }
    }
    Ok(gp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asp::text::parse_program;

    #[test]
    fn grounds_only_derivable_instances() {
        let p = parse_program("e(1,2). e(2,3). p(X,Y) :- e(X,Y). p(X,Z) :- p(X,Y), e(Y,Z). q(X) :- p(X,Y), not r(X).")
            .unwrap();
        let g = ground(&p).unwrap();
        let names: Vec<String> = (0..g.num_atoms() as u32).map(|i| g.render(i)).collect();
        assert!(names.contains(&"p(1,3)".to_string()));
        assert!(!names.iter().any(|n| n.starts_with("r(")));
        // `not r(X)` is dropped since r is underivable
        assert!(g.rules.iter().all(|r| r.neg.is_empty()));
    }

    #[test]
    fn function_terms_unify() {
        let p = parse_program("t(f(1,a)). u(X,Y) :- t(f(X,Y)). v :- u(1,a).").unwrap();
        let g = ground(&p).unwrap();
        assert!(g.lookup(&parse_program("v.").unwrap().facts[0]).is_some());
    }

    #[test]
    fn cap_is_enforced() {
        let p = parse_program("n(0). n(1). n(2). p(X,Y,Z) :- n(X), n(Y), n(Z).").unwrap();
        assert!(matches!(ground_with_cap(&p, 10), Err(Error::CapExceeded { .. })));
    }
}
