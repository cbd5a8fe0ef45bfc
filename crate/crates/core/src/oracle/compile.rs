//! Dense representation of a repository and its least-model computation.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::kb::{Axiom, Overriding, Sckr, BOT, TOP};

pub type Ix = u32;

/// Semantic content of an axiom. Statements that produce the same key in
/// the same context are merged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Key {
    Inst(Ix, Ix),
    NInst(Ix, Ix),
    Triple(Ix, Ix, Ix),
    NTriple(Ix, Ix, Ix),
    Eq(Ix, Ix),
    SubClass(Ix, Ix),
    SubConj(Ix, Ix, Ix),
    SubEx(Ix, Ix, Ix),
    SupEx(Ix, Ix, Ix),
    Forall(Ix, Ix, Ix),
    LeqOne(Ix, Ix),
    SubRole(Ix, Ix),
    Chain(Ix, Ix, Ix),
    Dis(Ix, Ix),
    Inv(Ix, Ix),
    Irr(Ix),
    Eval(Ix, Ix, Ix),
    EvalR(Ix, Ix, Ix),
}

impl Key {
    /// Number of individuals an exception to this axiom is about.
    pub fn arity(&self) -> usize {
        match self {
            Key::Inst(..) | Key::NInst(..) => 1,
            Key::Triple(..) | Key::NTriple(..) => 2,
            Key::SubClass(..) | Key::SubConj(..) | Key::SubEx(..) | Key::SupEx(..) | Key::Irr(..) => 1,
            Key::Forall(..) | Key::SubRole(..) | Key::Dis(..) | Key::Inv(..) => 2,
            Key::LeqOne(..) | Key::Chain(..) => 3,
            Key::Eq(..) | Key::Eval(..) | Key::EvalR(..) => 0,
        }
    }
}

/// A ground literal `A(x)@c` or `R(x,y)@c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lit {
    C { c: Ix, a: Ix, x: Ix },
    R { c: Ix, r: Ix, x: Ix, y: Ix },
}

/// An exception: axiom number, context where it is suspended and the tuple
/// of individuals, packed 16 bits per position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assumption {
    pub axiom: u32,
    pub at: Ix,
    pub tuple: u64,
}

pub fn pack(xs: &[Ix]) -> u64 {
    xs.iter().rev().fold(0u64, |acc, x| (acc << 16) | (*x as u64 + 1))
}

pub fn unpack(mut t: u64) -> Vec<Ix> {
    let mut out = Vec::new();
    while t != 0 {
        out.push((t & 0xFFFF) as Ix - 1);
        t >>= 16;
    }
    out
}

#[derive(Debug, Clone)]
pub struct CompiledAxiom {
    pub key: Key,
    pub home: Ix,
    pub defeasible: bool,
    /// `home` itself followed by every context strictly below it
    pub scope: Vec<Ix>,
}

/// A set of named facts over all contexts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interp {
    concepts: Vec<bool>,
    roles: Vec<bool>,
}

pub struct Compiled {
    pub inds: Vec<String>,
    pub concepts: Vec<String>,
    pub roles: Vec<String>,
    pub ctxs: Vec<String>,
    pub levels: Vec<u32>,
    pub axioms: Vec<CompiledAxiom>,
    pub top: Ix,
    pub bot: Ix,
    pub has_eq: bool,
}

fn index_of(v: &[String], s: &str) -> Ix {
    v.binary_search_by(|x| x.as_str().cmp(s)).expect("registered name") as Ix
}

impl Compiled {
    pub fn new(k: &Sckr) -> Self {
        let syms = k.symbols();
        let inds: Vec<String> = syms.individuals.iter().cloned().collect();
        let mut concepts: BTreeSet<String> = syms.concepts.clone();
        concepts.insert(TOP.to_string());
        concepts.insert(BOT.to_string());
        let concepts: Vec<String> = concepts.into_iter().collect();
        let roles: Vec<String> = syms.roles.iter().cloned().collect();
        let ctxs: Vec<String> = k.contexts.levels.keys().cloned().collect();
        let levels = ctxs.iter().map(|c| k.contexts.levels[c]).collect();
        let above: Vec<Vec<Ix>> =
            ctxs.iter().map(|c| k.contexts.ancestors(c).iter().map(|a| index_of(&ctxs, a)).collect()).collect();
        let (i, cn, r, cx) = (
            |s: &str| index_of(&inds, s),
            |s: &str| index_of(&concepts, s),
            |s: &str| index_of(&roles, s),
            |s: &str| index_of(&ctxs, s),
        );
        let mut merged: BTreeMap<(Ix, Key), bool> = BTreeMap::new();
        let mut has_eq = false;
        for (ctx, st) in k.statements() {
            let key = match &st.axiom {
                Axiom::ConceptAssertion { concept, ind } | Axiom::Nominal { ind, sup: concept } => {
                    Key::Inst(cn(concept), i(ind))
                }
                Axiom::TopAssertion { ind } => Key::Inst(cn(TOP), i(ind)),
                Axiom::BotAssertion { ind } => Key::Inst(cn(BOT), i(ind)),
                Axiom::NegConceptAssertion { concept, ind } => Key::NInst(cn(concept), i(ind)),
                Axiom::RoleAssertion { role, subj, obj } => Key::Triple(r(role), i(subj), i(obj)),
                Axiom::NegRoleAssertion { role, subj, obj } => Key::NTriple(r(role), i(subj), i(obj)),
                Axiom::Equal { left, right } => {
                    has_eq = true;
                    Key::Eq(i(left), i(right))
                }
                Axiom::NotEqual { .. } => continue,
                Axiom::SubClass { sub, sup } => Key::SubClass(cn(sub), cn(sup)),
                Axiom::SubConj { left, right, sup } => Key::SubConj(cn(left), cn(right), cn(sup)),
                Axiom::SubExists { role, filler, sup } => Key::SubEx(r(role), cn(filler), cn(sup)),
                Axiom::SupExists { sub, role, ind } => Key::SupEx(cn(sub), r(role), i(ind)),
                Axiom::SupForall { sub, role, filler } => Key::Forall(cn(sub), r(role), cn(filler)),
                Axiom::SupAtMostOne { sub, role } => Key::LeqOne(cn(sub), r(role)),
                Axiom::SubRole { sub, sup } => Key::SubRole(r(sub), r(sup)),
                Axiom::RoleChain { first, second, sup } => Key::Chain(r(first), r(second), r(sup)),
                Axiom::DisjointRoles { left, right } => Key::Dis(r(left), r(right)),
                Axiom::InverseRoles { left, right } => Key::Inv(r(left), r(right)),
                Axiom::Irreflexive { role } => Key::Irr(r(role)),
                Axiom::EvalConcept { concept, ctx: c1, sup } => Key::Eval(cn(concept), cx(c1), cn(sup)),
                Axiom::EvalRole { role, ctx: c1, sup } => Key::EvalR(r(role), cx(c1), r(sup)),
            };
            *merged.entry((cx(ctx), key)).or_insert(false) |= st.defeasible;
        }
        let axioms = merged
            .into_iter()
            .map(|((home, key), defeasible)| {
                let mut scope = vec![home];
                for (c, ups) in above.iter().enumerate() {
                    if ups.contains(&home) {
                        scope.push(c as Ix);
                    }
                }
                CompiledAxiom { key, home, defeasible, scope }
            })
            .collect();
        let (top, bot) = (index_of(&concepts, TOP), index_of(&concepts, BOT));
        Compiled { inds, concepts, roles, ctxs, levels, axioms, top, bot, has_eq }
    }

    pub fn empty(&self) -> Interp {
        let (nc, ni) = (self.ctxs.len(), self.inds.len());
        Interp { concepts: vec![false; nc * self.concepts.len() * ni], roles: vec![false; nc * self.roles.len() * ni * ni] }
    }

    fn ci(&self, c: Ix, a: Ix, x: Ix) -> usize {
        ((c as usize * self.concepts.len()) + a as usize) * self.inds.len() + x as usize
    }

    fn ri(&self, c: Ix, r: Ix, x: Ix, y: Ix) -> usize {
        let n = self.inds.len();
        (((c as usize * self.roles.len()) + r as usize) * n + x as usize) * n + y as usize
    }

    pub fn has_c(&self, m: &Interp, c: Ix, a: Ix, x: Ix) -> bool {
        m.concepts[self.ci(c, a, x)]
    }

    pub fn has_r(&self, m: &Interp, c: Ix, r: Ix, x: Ix, y: Ix) -> bool {
        m.roles[self.ri(c, r, x, y)]
    }

    /// Adds a literal; true if it was new.
    pub fn add(&self, m: &mut Interp, l: Lit) -> bool {
        let slot = match l {
            Lit::C { c, a, x } => &mut m.concepts[self.ci(c, a, x)],
            Lit::R { c, r, x, y } => &mut m.roles[self.ri(c, r, x, y)],
        };
        !std::mem::replace(slot, true)
    }

    pub fn literals(&self, m: &Interp) -> Vec<Lit> {
        let mut out = Vec::new();
        let n = self.inds.len() as Ix;
        for c in 0..self.ctxs.len() as Ix {
            for a in 0..self.concepts.len() as Ix {
                for x in 0..n {
                    if self.has_c(m, c, a, x) {
                        out.push(Lit::C { c, a, x });
                    }
                }
            }
            for r in 0..self.roles.len() as Ix {
                for x in 0..n {
                    for y in 0..n {
                        if self.has_r(m, c, r, x, y) {
                            out.push(Lit::R { c, r, x, y });
                        }
                    }
                }
            }
        }
        out
    }

    /// Facts every model starts from: the universal concept everywhere.
    pub fn base(&self) -> Interp {
        let mut m = self.empty();
        for c in 0..self.ctxs.len() as Ix {
            for x in 0..self.inds.len() as Ix {
                self.add(&mut m, Lit::C { c, a: self.top, x });
            }
        }
        m
    }

    fn blocked(&self, chi: &HashSet<Assumption>, ax: usize, c: Ix, tuple: &[Ix]) -> bool {
        let a = &self.axioms[ax];
        a.defeasible && c != a.home && chi.contains(&Assumption { axiom: ax as u32, at: c, tuple: pack(tuple) })
    }

    /// Closes `m` under every axiom instance not suspended by `chi`.
    pub fn close(&self, chi: &HashSet<Assumption>, mut m: Interp) -> Interp {
        let n = self.inds.len() as Ix;
        loop {
            let mut changed = false;
            for (ai, ax) in self.axioms.iter().enumerate() {
                for &c in &ax.scope {
                    let bl = |t: &[Ix]| self.blocked(chi, ai, c, t);
                    match ax.key {
                        Key::Inst(a, x) => {
                            if !bl(&[x]) {
                                changed |= self.add(&mut m, Lit::C { c, a, x });
                            }
                        }
                        Key::Triple(r, x, y) => {
                            if !bl(&[x, y]) {
                                changed |= self.add(&mut m, Lit::R { c, r, x, y });
                            }
                        }
                        Key::SubClass(a, b) => {
                            for x in 0..n {
                                if self.has_c(&m, c, a, x) && !bl(&[x]) {
                                    changed |= self.add(&mut m, Lit::C { c, a: b, x });
                                }
                            }
                        }
                        Key::SubConj(a1, a2, b) => {
                            for x in 0..n {
                                if self.has_c(&m, c, a1, x) && self.has_c(&m, c, a2, x) && !bl(&[x]) {
                                    changed |= self.add(&mut m, Lit::C { c, a: b, x });
                                }
                            }
                        }
                        Key::SubEx(r, a, b) => {
                            for x in 0..n {
                                let fires = (0..n).any(|w| self.has_r(&m, c, r, x, w) && self.has_c(&m, c, a, w));
                                if fires && !bl(&[x]) {
                                    changed |= self.add(&mut m, Lit::C { c, a: b, x });
                                }
                            }
                        }
                        Key::SupEx(a, r, w) => {
                            for x in 0..n {
                                if self.has_c(&m, c, a, x) && !bl(&[x]) {
                                    changed |= self.add(&mut m, Lit::R { c, r, x, y: w });
                                }
                            }
                        }
                        Key::Forall(a, r, b) => {
                            for x in 0..n {
                                if !self.has_c(&m, c, a, x) {
                                    continue;
                                }
                                for y in 0..n {
                                    if self.has_r(&m, c, r, x, y) && !bl(&[x, y]) {
                                        changed |= self.add(&mut m, Lit::C { c, a: b, x: y });
                                    }
                                }
                            }
                        }
                        Key::SubRole(r, s) => {
                            for x in 0..n {
                                for y in 0..n {
                                    if self.has_r(&m, c, r, x, y) && !bl(&[x, y]) {
                                        changed |= self.add(&mut m, Lit::R { c, r: s, x, y });
                                    }
                                }
                            }
                        }
                        Key::Chain(r, s, t) => {
                            for x in 0..n {
                                for y in 0..n {
                                    if !self.has_r(&m, c, r, x, y) {
                                        continue;
                                    }
                                    for z in 0..n {
                                        if self.has_r(&m, c, s, y, z) && !bl(&[x, y, z]) {
                                            changed |= self.add(&mut m, Lit::R { c, r: t, x, y: z });
                                        }
                                    }
                                }
                            }
                        }
                        Key::Inv(r, s) => {
                            for x in 0..n {
                                for y in 0..n {
                                    if bl(&[x, y]) {
                                        continue;
                                    }
                                    if self.has_r(&m, c, r, x, y) {
                                        changed |= self.add(&mut m, Lit::R { c, r: s, x: y, y: x });
                                    }
                                    if self.has_r(&m, c, s, y, x) {
                                        changed |= self.add(&mut m, Lit::R { c, r, x, y });
                                    }
                                }
                            }
                        }
                        Key::Eval(a, c1, b) => {
                            for x in 0..n {
                                if self.has_c(&m, c1, a, x) {
                                    changed |= self.add(&mut m, Lit::C { c, a: b, x });
                                }
                            }
                        }
                        Key::EvalR(r, c1, s) => {
                            for x in 0..n {
                                for y in 0..n {
                                    if self.has_r(&m, c1, r, x, y) {
                                        changed |= self.add(&mut m, Lit::R { c, r: s, x, y });
                                    }
                                }
                            }
                        }
                        Key::NInst(..)
                        | Key::NTriple(..)
                        | Key::Eq(..)
                        | Key::LeqOne(..)
                        | Key::Dis(..)
                        | Key::Irr(..) => {}
                    }
                }
            }
            if !changed {
                return m;
            }
        }
    }

    /// Whether some axiom instance not suspended by `chi` is violated.
    /// `main` enables the equality check, which only concerns the model
    /// itself.
    pub fn clashes(&self, chi: &HashSet<Assumption>, m: &Interp, main: bool) -> bool {
        let n = self.inds.len() as Ix;
        if main && self.has_eq {
            return true;
        }
        for c in 0..self.ctxs.len() as Ix {
            if (0..n).any(|x| self.has_c(m, c, self.bot, x)) {
                return true;
            }
        }
        for (ai, ax) in self.axioms.iter().enumerate() {
            for &c in &ax.scope {
                let bl = |t: &[Ix]| self.blocked(chi, ai, c, t);
                let hit = match ax.key {
                    Key::NInst(a, x) => self.has_c(m, c, a, x) && !bl(&[x]),
                    Key::NTriple(r, x, y) => self.has_r(m, c, r, x, y) && !bl(&[x, y]),
                    Key::LeqOne(a, r) => (0..n).any(|x| {
                        self.has_c(m, c, a, x)
                            && (0..n).any(|x1| {
                                (0..n).any(|x2| {
                                    x1 != x2
                                        && self.has_r(m, c, r, x, x1)
                                        && self.has_r(m, c, r, x, x2)
                                        && !bl(&[x, x1, x2])
                                })
                            })
                    }),
                    Key::Dis(r, s) => (0..n).any(|x| {
                        (0..n).any(|y| self.has_r(m, c, r, x, y) && self.has_r(m, c, s, x, y) && !bl(&[x, y]))
                    }),
                    Key::Irr(r) => (0..n).any(|x| self.has_r(m, c, r, x, x) && !bl(&[x])),
                    _ => false,
                };
                if hit {
                    return true;
                }
            }
        }
        false
    }

    /// Per direction whose premise holds in `m`: the literal an exception
    /// would have to clash with, or `None` when the premise alone is the
    /// clash. Empty when no premise holds.
    pub fn tests(&self, a: &Assumption, m: &Interp) -> Vec<Option<Lit>> {
        let ax = &self.axioms[a.axiom as usize];
        let c = a.at;
        let t = unpack(a.tuple);
        let n = self.inds.len() as Ix;
        let hc = |a: Ix, x: Ix| self.has_c(m, c, a, x);
        let hr = |r: Ix, x: Ix, y: Ix| self.has_r(m, c, r, x, y);
        let one = |ok: bool, l: Option<Lit>| if ok { vec![l] } else { vec![] };
        match ax.key {
            Key::Inst(a, x) => vec![Some(Lit::C { c, a, x })],
            Key::Triple(r, x, y) => vec![Some(Lit::R { c, r, x, y })],
            Key::NInst(a, x) => one(hc(a, x), None),
            Key::NTriple(r, x, y) => one(hr(r, x, y), None),
            Key::SubClass(a, b) => one(hc(a, t[0]), Some(Lit::C { c, a: b, x: t[0] })),
            Key::SubConj(a1, a2, b) => one(hc(a1, t[0]) && hc(a2, t[0]), Some(Lit::C { c, a: b, x: t[0] })),
            Key::SubEx(r, a, b) => {
                one((0..n).any(|w| hr(r, t[0], w) && hc(a, w)), Some(Lit::C { c, a: b, x: t[0] }))
            }
            Key::SupEx(a, r, w) => one(hc(a, t[0]), Some(Lit::R { c, r, x: t[0], y: w })),
            Key::Forall(a, r, b) => one(hc(a, t[0]) && hr(r, t[0], t[1]), Some(Lit::C { c, a: b, x: t[1] })),
            Key::LeqOne(a, r) => one(hc(a, t[0]) && t[1] != t[2] && hr(r, t[0], t[1]) && hr(r, t[0], t[2]), None),
            Key::SubRole(r, s) => one(hr(r, t[0], t[1]), Some(Lit::R { c, r: s, x: t[0], y: t[1] })),
            Key::Chain(r, s, u) => {
                one(hr(r, t[0], t[1]) && hr(s, t[1], t[2]), Some(Lit::R { c, r: u, x: t[0], y: t[2] }))
            }
            Key::Dis(r, s) => one(hr(r, t[0], t[1]) && hr(s, t[0], t[1]), None),
            Key::Inv(r, s) => {
                let (x, y) = (t[0], t[1]);
                let mut out = Vec::new();
                if hr(r, x, y) {
                    out.push(Some(Lit::R { c, r: s, x: y, y: x }));
                }
                if hr(s, y, x) {
                    out.push(Some(Lit::R { c, r, x, y }));
                }
                out
            }
            Key::Irr(r) => one(hr(r, t[0], t[0]), None),
            Key::Eq(..) | Key::Eval(..) | Key::EvalR(..) => vec![],
        }
    }

    /// Every exception the language allows: a defeasible axiom, a context
    /// strictly below its home and a tuple of individuals.
    pub fn all_assumptions(&self) -> Vec<Assumption> {
        let n = self.inds.len() as Ix;
        let mut out = BTreeSet::new();
        for (ai, ax) in self.axioms.iter().enumerate() {
            if !ax.defeasible {
                continue;
            }
            let tuples: Vec<Vec<Ix>> = match ax.key {
                Key::Inst(_, x) | Key::NInst(_, x) => vec![vec![x]],
                Key::Triple(_, x, y) | Key::NTriple(_, x, y) => vec![vec![x, y]],
                k => {
                    let mut ts = vec![vec![]];
                    for _ in 0..k.arity() {
                        ts = ts
                            .into_iter()
                            .flat_map(|t: Vec<Ix>| (0..n).map(move |x| [t.clone(), vec![x]].concat()))
                            .collect();
                    }
                    ts
                }
            };
            for &c in &ax.scope[1..] {
                for t in &tuples {
                    out.insert(Assumption { axiom: ai as u32, at: c, tuple: pack(t) });
                }
            }
        }
        out.into_iter().collect()
    }

    /// The exceptions whose premise holds in `m`.
    pub fn candidates(&self, m: &Interp) -> Vec<Assumption> {
        self.all_assumptions().into_iter().filter(|a| !self.tests(a, m).is_empty()).collect()
    }

    /// An axiom standing for the compiled key, for reporting.
    pub fn axiom_of(&self, ax: usize) -> Axiom {
        let (i, c, r, x) = (
            |k: Ix| self.inds[k as usize].clone(),
            |k: Ix| self.concepts[k as usize].clone(),
            |k: Ix| self.roles[k as usize].clone(),
            |k: Ix| self.ctxs[k as usize].clone(),
        );
        match self.axioms[ax].key {
            Key::Inst(a, ind) => Axiom::ConceptAssertion { concept: c(a), ind: i(ind) },
            Key::NInst(a, ind) => Axiom::NegConceptAssertion { concept: c(a), ind: i(ind) },
            Key::Triple(ro, s, o) => Axiom::RoleAssertion { role: r(ro), subj: i(s), obj: i(o) },
            Key::NTriple(ro, s, o) => Axiom::NegRoleAssertion { role: r(ro), subj: i(s), obj: i(o) },
            Key::Eq(a, b) => Axiom::Equal { left: i(a), right: i(b) },
            Key::SubClass(a, b) => Axiom::SubClass { sub: c(a), sup: c(b) },
            Key::SubConj(a, b, d) => Axiom::SubConj { left: c(a), right: c(b), sup: c(d) },
            Key::SubEx(ro, a, b) => Axiom::SubExists { role: r(ro), filler: c(a), sup: c(b) },
            Key::SupEx(a, ro, w) => Axiom::SupExists { sub: c(a), role: r(ro), ind: i(w) },
            Key::Forall(a, ro, b) => Axiom::SupForall { sub: c(a), role: r(ro), filler: c(b) },
            Key::LeqOne(a, ro) => Axiom::SupAtMostOne { sub: c(a), role: r(ro) },
            Key::SubRole(a, b) => Axiom::SubRole { sub: r(a), sup: r(b) },
            Key::Chain(a, b, d) => Axiom::RoleChain { first: r(a), second: r(b), sup: r(d) },
            Key::Dis(a, b) => Axiom::DisjointRoles { left: r(a), right: r(b) },
            Key::Inv(a, b) => Axiom::InverseRoles { left: r(a), right: r(b) },
            Key::Irr(a) => Axiom::Irreflexive { role: r(a) },
            Key::Eval(a, c1, b) => Axiom::EvalConcept { concept: c(a), ctx: x(c1), sup: c(b) },
            Key::EvalR(a, c1, b) => Axiom::EvalRole { role: r(a), ctx: x(c1), sup: r(b) },
        }
    }

    pub fn overriding(&self, a: &Assumption) -> Overriding {
        let ax = &self.axioms[a.axiom as usize];
        Overriding {
            axiom: self.axiom_of(a.axiom as usize),
            home: self.ctxs[ax.home as usize].clone(),
            at: self.ctxs[a.at as usize].clone(),
            tuple: unpack(a.tuple).into_iter().map(|x| self.inds[x as usize].clone()).collect(),
        }
    }

    /// Inverse of [`Compiled::overriding`] for exceptions to defeasible axioms.
    pub fn assumption(&self, o: &Overriding) -> Option<Assumption> {
        let home = self.ctxs.binary_search(&o.home).ok()? as Ix;
        let at = self.ctxs.binary_search(&o.at).ok()? as Ix;
        let tuple: Vec<Ix> =
            o.tuple.iter().map(|t| self.inds.binary_search(t).ok().map(|x| x as Ix)).collect::<Option<_>>()?;
        let axiom = (0..self.axioms.len()).find(|&i| {
            self.axioms[i].home == home && self.axioms[i].defeasible && self.axiom_of(i) == o.axiom
        })?;
        Some(Assumption { axiom: axiom as u32, at, tuple: pack(&tuple) })
    }

    pub fn lit_names(&self, l: Lit) -> (String, Vec<String>, String) {
        match l {
            Lit::C { c, a, x } => {
                (self.concepts[a as usize].clone(), vec![self.inds[x as usize].clone()], self.ctxs[c as usize].clone())
            }
            Lit::R { c, r, x, y } => (
                self.roles[r as usize].clone(),
                vec![self.inds[x as usize].clone(), self.inds[y as usize].clone()],
                self.ctxs[c as usize].clone(),
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_pack() {
        for t in [vec![], vec![0], vec![3, 0, 7]] {
            assert_eq!(unpack(pack(&t)), t);
        }
    }
}
