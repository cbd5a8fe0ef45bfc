//! In-memory model of a simple contextualized knowledge repository.
//!
//! Names are kept as strings at this layer; the grounder and the oracle intern
//! them into dense ids of their own.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Diagnostic, Error};

/// Concept name reserved for the universal concept.
pub const TOP: &str = "top";
/// Concept name reserved for the empty concept.
pub const BOT: &str = "bot";

/// The four disjoint name sorts of a repository.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NameKind {
    Individual,
    Concept,
    Role,
    Context,
}

impl fmt::Display for NameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NameKind::Individual => "individual",
            NameKind::Concept => "concept",
            NameKind::Role => "role",
            NameKind::Context => "context",
        })
    }
}

/// One axiom in normal form. Field names follow the surface syntax.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// `A(a)`
    ConceptAssertion { concept: String, ind: String },
    /// `-A(a)`
    NegConceptAssertion { concept: String, ind: String },
    /// `R(a,b)`
    RoleAssertion { role: String, subj: String, obj: String },
    /// `-R(a,b)`
    NegRoleAssertion { role: String, subj: String, obj: String },
    /// `a = b`
    Equal { left: String, right: String },
    /// `a != b`
    NotEqual { left: String, right: String },
    /// `{a} => B`
    Nominal { ind: String, sup: String },
    /// `Top(a)`
    TopAssertion { ind: String },
    /// `Bot(a)`
    BotAssertion { ind: String },
    /// `A => B`
    SubClass { sub: String, sup: String },
    /// `A and B => C`
    SubConj { left: String, right: String, sup: String },
    /// `R some A => B`
    SubExists { role: String, filler: String, sup: String },
    /// `A => R some {a}`
    SupExists { sub: String, role: String, ind: String },
    /// `A => R only B`
    SupForall { sub: String, role: String, filler: String },
    /// `A => max1 R`
    SupAtMostOne { sub: String, role: String },
    /// `R =>r S`
    SubRole { sub: String, sup: String },
    /// `R o S =>r T`
    RoleChain { first: String, second: String, sup: String },
    /// `Dis(R,S)`
    DisjointRoles { left: String, right: String },
    /// `Inv(R,S)`
    InverseRoles { left: String, right: String },
    /// `Irr(R)`
    Irreflexive { role: String },
    /// `eval(A,c) => B`
    EvalConcept { concept: String, ctx: String, sup: String },
    /// `evalr(R,c) =>r S`
    EvalRole { role: String, ctx: String, sup: String },
}

impl Axiom {
    /// Shapes that may carry the defeasibility flag.
    pub fn may_be_defeasible(&self) -> bool {
        !matches!(
            self,
            Axiom::Equal { .. }
                | Axiom::NotEqual { .. }
                | Axiom::Nominal { .. }
                | Axiom::TopAssertion { .. }
                | Axiom::BotAssertion { .. }
                | Axiom::EvalConcept { .. }
                | Axiom::EvalRole { .. }
        )
    }

    /// Short shape tag used in diagnostics.
    pub fn shape(&self) -> &'static str {
        match self {
            Axiom::ConceptAssertion { .. } => "inst",
            Axiom::NegConceptAssertion { .. } => "ninst",
            Axiom::RoleAssertion { .. } => "triple",
            Axiom::NegRoleAssertion { .. } => "ntriple",
            Axiom::Equal { .. } => "eq",
            Axiom::NotEqual { .. } => "neq",
            Axiom::Nominal { .. } => "nom",
            Axiom::TopAssertion { .. } => "top",
            Axiom::BotAssertion { .. } => "bot",
            Axiom::SubClass { .. } => "subc",
            Axiom::SubConj { .. } => "subcnj",
            Axiom::SubExists { .. } => "subex",
            Axiom::SupExists { .. } => "supex",
            Axiom::SupForall { .. } => "forall",
            Axiom::SupAtMostOne { .. } => "leqone",
            Axiom::SubRole { .. } => "subr",
            Axiom::RoleChain { .. } => "subrc",
            Axiom::DisjointRoles { .. } => "dis",
            Axiom::InverseRoles { .. } => "inv",
            Axiom::Irreflexive { .. } => "irr",
            Axiom::EvalConcept { .. } => "eval",
            Axiom::EvalRole { .. } => "evalr",
        }
    }

    /// Every name mentioned by the axiom together with the sort its
    /// position implies.
    pub fn names(&self) -> Vec<(NameKind, &str)> {
        use NameKind::*;
        match self {
            Axiom::ConceptAssertion { concept, ind } | Axiom::NegConceptAssertion { concept, ind } => {
                vec![(Concept, concept), (Individual, ind)]
            }
            Axiom::RoleAssertion { role, subj, obj } | Axiom::NegRoleAssertion { role, subj, obj } => {
                vec![(Role, role), (Individual, subj), (Individual, obj)]
            }
            Axiom::Equal { left, right } | Axiom::NotEqual { left, right } => {
                vec![(Individual, left), (Individual, right)]
            }
            Axiom::Nominal { ind, sup } => vec![(Individual, ind), (Concept, sup)],
            Axiom::TopAssertion { ind } => vec![(Individual, ind), (Concept, TOP)],
            Axiom::BotAssertion { ind } => vec![(Individual, ind), (Concept, BOT)],
            Axiom::SubClass { sub, sup } => vec![(Concept, sub), (Concept, sup)],
            Axiom::SubConj { left, right, sup } => vec![(Concept, left), (Concept, right), (Concept, sup)],
            Axiom::SubExists { role, filler, sup } => vec![(Role, role), (Concept, filler), (Concept, sup)],
            Axiom::SupExists { sub, role, ind } => vec![(Concept, sub), (Role, role), (Individual, ind)],
            Axiom::SupForall { sub, role, filler } => vec![(Concept, sub), (Role, role), (Concept, filler)],
            Axiom::SupAtMostOne { sub, role } => vec![(Concept, sub), (Role, role)],
            Axiom::SubRole { sub, sup } => vec![(Role, sub), (Role, sup)],
            Axiom::RoleChain { first, second, sup } => vec![(Role, first), (Role, second), (Role, sup)],
            Axiom::DisjointRoles { left, right } | Axiom::InverseRoles { left, right } => {
                vec![(Role, left), (Role, right)]
            }
            Axiom::Irreflexive { role } => vec![(Role, role)],
            Axiom::EvalConcept { concept, ctx, sup } => vec![(Concept, concept), (Context, ctx), (Concept, sup)],
            Axiom::EvalRole { role, ctx, sup } => vec![(Role, role), (Context, ctx), (Role, sup)],
        }
    }
}

/// An axiom together with its defeasibility flag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Statement {
    pub axiom: Axiom,
    pub defeasible: bool,
}

impl Statement {
    pub fn strict(axiom: Axiom) -> Self {
        Statement { axiom, defeasible: false }
    }

    pub fn defeasible(axiom: Axiom) -> Self {
        Statement { axiom, defeasible: true }
    }
}

/// Names registered per sort. Derived from the axioms of a repository.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolTable {
    pub individuals: BTreeSet<String>,
    pub concepts: BTreeSet<String>,
    pub roles: BTreeSet<String>,
}

impl SymbolTable {
    pub fn contains(&self, kind: NameKind, name: &str) -> bool {
        match kind {
            NameKind::Individual => self.individuals.contains(name),
            NameKind::Concept => self.concepts.contains(name),
            NameKind::Role => self.roles.contains(name),
            NameKind::Context => false,
        }
    }

    fn insert(&mut self, kind: NameKind, name: &str) {
        let set = match kind {
            NameKind::Individual => &mut self.individuals,
            NameKind::Concept => &mut self.concepts,
            NameKind::Role => &mut self.roles,
            NameKind::Context => return,
        };
        if !set.contains(name) {
            set.insert(name.to_string());
        }
    }
}

/// Contexts with their levels and the covering relation.
///
/// A cover `(lower, upper)` means `lower` is directly below `upper`; levels
/// grow downwards.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ContextStructure {
    pub levels: BTreeMap<String, u32>,
    pub covers: BTreeSet<(String, String)>,
}

impl ContextStructure {
    pub fn contains(&self, ctx: &str) -> bool {
        self.levels.contains_key(ctx)
    }

    pub fn level(&self, ctx: &str) -> Option<u32> {
        self.levels.get(ctx).copied()
    }

    /// Weak-constraint priority of a context.
    pub fn significance(&self, ctx: &str) -> Option<u32> {
        self.level(ctx).map(|l| l + 1)
    }

    pub fn parents<'a>(&'a self, ctx: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.covers.iter().filter(move |(lo, _)| lo == ctx).map(|(_, up)| up.as_str())
    }

    pub fn children<'a>(&'a self, ctx: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.covers.iter().filter(move |(_, up)| up == ctx).map(|(lo, _)| lo.as_str())
    }

    /// All contexts strictly above `ctx`.
    pub fn ancestors(&self, ctx: &str) -> BTreeSet<String> {
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<String> = self.parents(ctx).map(str::to_string).collect();
        while let Some(c) = queue.pop_front() {
            if seen.insert(c.clone()) {
                queue.extend(self.parents(&c).map(str::to_string));
            }
        }
        seen
    }

    /// Pairs `(c, c')` with `c` strictly below `c'`, in canonical order.
    pub fn strict_below(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for c in self.levels.keys() {
            for up in self.ancestors(c) {
                out.push((c.clone(), up));
            }
        }
        out
    }

    /// True when every cover edge spans exactly one level.
    pub fn is_ranked(&self) -> bool {
        self.covers.iter().all(|(lo, up)| match (self.level(lo), self.level(up)) {
            (Some(l), Some(u)) => l == u + 1,
            _ => false,
        })
    }

    /// Whether `upper` directly covers `ctx` and every downward path from a
    /// context above `upper` to `ctx` passes through `upper`.
    pub fn is_connector(&self, upper: &str, ctx: &str) -> bool {
        if !self.covers.contains(&(ctx.to_string(), upper.to_string())) {
            return false;
        }
        for start in self.ancestors(upper) {
            // search downwards from `start`, never entering `upper`
            let mut seen = BTreeSet::new();
            let mut queue = VecDeque::from([start.clone()]);
            while let Some(c) = queue.pop_front() {
                if c == ctx {
                    return false;
                }
                if !seen.insert(c.clone()) {
                    continue;
                }
                for ch in self.children(&c) {
                    if ch != upper {
                        queue.push_back(ch.to_string());
                    }
                }
            }
        }
        true
    }

    fn has_cycle(&self) -> bool {
        // Kahn's algorithm over the cover edges
        let mut indeg: BTreeMap<&str, usize> = self.levels.keys().map(|c| (c.as_str(), 0)).collect();
        for (lo, _) in &self.covers {
            if let Some(d) = indeg.get_mut(lo.as_str()) {
                *d += 1;
            }
        }
        let mut queue: VecDeque<&str> = indeg.iter().filter(|(_, d)| **d == 0).map(|(c, _)| *c).collect();
        let mut done = 0;
        while let Some(c) = queue.pop_front() {
            done += 1;
            for (lo, up) in &self.covers {
                if up == c {
                    let d = indeg.get_mut(lo.as_str()).expect("declared");
                    *d -= 1;
                    if *d == 0 {
                        queue.push_back(lo);
                    }
                }
            }
        }
        done != self.levels.len()
    }
}

/// A repository: context structure plus one module of statements per context.
///
/// Statement order inside a module is preserved; everything else iterates in
/// name order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Sckr {
    pub contexts: ContextStructure,
    pub modules: BTreeMap<String, Vec<Statement>>,
}

impl Sckr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_context(&mut self, name: impl Into<String>, level: u32) {
        self.contexts.levels.insert(name.into(), level);
    }

    pub fn add_cover(&mut self, lower: impl Into<String>, upper: impl Into<String>) {
        self.contexts.covers.insert((lower.into(), upper.into()));
    }

    pub fn add_statement(&mut self, ctx: impl Into<String>, st: Statement) {
        self.modules.entry(ctx.into()).or_default().push(st);
    }

    pub fn add_strict(&mut self, ctx: impl Into<String>, axiom: Axiom) {
        self.add_statement(ctx, Statement::strict(axiom));
    }

    pub fn add_defeasible(&mut self, ctx: impl Into<String>, axiom: Axiom) {
        self.add_statement(ctx, Statement::defeasible(axiom));
    }

    /// Statements of a context, empty when it has no module.
    pub fn module(&self, ctx: &str) -> &[Statement] {
        self.modules.get(ctx).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Every `(context, statement)` pair in canonical order.
    pub fn statements(&self) -> impl Iterator<Item = (&str, &Statement)> {
        self.modules.iter().flat_map(|(c, sts)| sts.iter().map(move |s| (c.as_str(), s)))
    }

    /// Symbol table induced by the axioms.
    pub fn symbols(&self) -> SymbolTable {
        let mut t = SymbolTable::default();
        for (_, st) in self.statements() {
            for (kind, name) in st.axiom.names() {
                t.insert(kind, name);
            }
        }
        t
    }

    /// Copy with every module sorted, so permuted inputs compare equal.
    pub fn canonicalized(&self) -> Sckr {
        let mut k = self.clone();
        for sts in k.modules.values_mut() {
            sts.sort();
        }
        k
    }

    pub fn has_equality(&self) -> bool {
        self.statements().any(|(_, s)| matches!(s.axiom, Axiom::Equal { .. }))
    }

    /// Checks the structural invariants and returns every violation found.
    pub fn validate(&self) -> Result<(), Error> {
        let mut diags = Vec::new();
        let cs = &self.contexts;
        for (lo, up) in &cs.covers {
            for c in [lo, up] {
                if !cs.contains(c) {
                    diags.push(Diagnostic::new(format!("cover edge mentions undeclared context '{c}'")));
                }
            }
            if let (Some(l), Some(u)) = (cs.level(lo), cs.level(up)) {
                if l <= u {
                    diags.push(Diagnostic::new(format!(
                        "context '{lo}' (level {l}) must have a larger level than '{up}' (level {u})"
                    )));
                }
            }
        }
        if diags.is_empty() && cs.has_cycle() {
            diags.push(Diagnostic::new("cover relation is cyclic"));
        }
        let mut kinds: BTreeMap<&str, NameKind> = BTreeMap::new();
        for c in cs.levels.keys() {
            kinds.insert(c, NameKind::Context);
        }
        for (ctx, st) in self.statements() {
            if !cs.contains(ctx) {
                diags.push(Diagnostic::new(format!("module for undeclared context '{ctx}'")));
            }
            if st.defeasible && !st.axiom.may_be_defeasible() {
                diags.push(Diagnostic::new(format!(
                    "axiom of shape '{}' in context '{ctx}' cannot be defeasible",
                    st.axiom.shape()
                )));
            }
            for (kind, name) in st.axiom.names() {
                if kind == NameKind::Context && !cs.contains(name) {
                    diags.push(Diagnostic::new(format!("eval refers to undeclared context '{name}'")));
                }
                match kinds.get(name) {
                    Some(k) if *k != kind => diags.push(Diagnostic::new(format!(
                        "name '{name}' used as {kind} but already used as {k}"
                    ))),
                    Some(_) => {}
                    None => {
                        kinds.insert(name, kind);
                    }
                }
            }
        }
        if diags.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(diags))
        }
    }
}

/// A defeasible axiom of context `home` not applied to `tuple` in the
/// lower context `at`.
///
/// The tuple lists the individuals the exception is about; for assertions
/// these are the asserted individuals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Overriding {
    pub axiom: Axiom,
    pub home: String,
    pub at: String,
    pub tuple: Vec<String>,
}

/// An atomic query `A(a)@c` or `R(a,b)@c`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QueryAtom {
    Concept { concept: String, ind: String, ctx: String },
    Role { role: String, subj: String, obj: String, ctx: String },
}

impl QueryAtom {
    pub fn ctx(&self) -> &str {
        match self {
            QueryAtom::Concept { ctx, .. } | QueryAtom::Role { ctx, .. } => ctx,
        }
    }

    /// Checks that every name is registered with the right sort.
    pub fn check(&self, k: &Sckr) -> Result<(), Error> {
        let syms = k.symbols();
        let mut missing = Vec::new();
        if !k.contexts.contains(self.ctx()) {
            missing.push(format!("unknown context '{}'", self.ctx()));
        }
        let names: Vec<(NameKind, &str)> = match self {
            QueryAtom::Concept { concept, ind, .. } => vec![(NameKind::Concept, concept), (NameKind::Individual, ind)],
            QueryAtom::Role { role, subj, obj, .. } => {
                vec![(NameKind::Role, role), (NameKind::Individual, subj), (NameKind::Individual, obj)]
            }
        };
        for (kind, n) in names {
            if !syms.contains(kind, n) && !(kind == NameKind::Concept && (n == TOP || n == BOT)) {
                missing.push(format!("unknown {kind} '{n}'"));
            }
        }
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::Query(missing.join("; ")))
        }
    }
}

impl fmt::Display for QueryAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryAtom::Concept { concept, ind, ctx } => write!(f, "{concept}({ind})@{ctx}"),
            QueryAtom::Role { role, subj, obj, ctx } => write!(f, "{role}({subj},{obj})@{ctx}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> ContextStructure {
        let mut k = Sckr::new();
        k.add_context("a", 0);
        k.add_context("b", 1);
        k.add_context("c", 2);
        k.add_cover("b", "a");
        k.add_cover("c", "b");
        k.contexts
    }

    #[test]
    fn strict_below_is_transitive() {
        let cs = chain();
        let pairs = cs.strict_below();
        assert_eq!(pairs.len(), 3);
        assert!(pairs.contains(&("c".into(), "a".into())));
        assert_eq!(cs.significance("c"), Some(3));
    }

    #[test]
    fn connector_on_chain_and_diamond() {
        let cs = chain();
        assert!(cs.is_connector("b", "c"));
        assert!(!cs.is_connector("a", "c"));

        let mut k = Sckr::new();
        k.add_context("t", 0);
        k.add_context("l", 1);
        k.add_context("r", 1);
        k.add_context("bot", 2);
        for (lo, up) in [("l", "t"), ("r", "t"), ("bot", "l"), ("bot", "r")] {
            k.add_cover(lo, up);
        }
        assert!(!k.contexts.is_connector("l", "bot"));
        assert!(k.contexts.is_ranked());
    }

    #[test]
    fn validation_reports_level_and_kind_errors() {
        let mut k = Sckr::new();
        k.add_context("a", 1);
        k.add_context("b", 1);
        k.add_cover("b", "a");
        k.add_strict("a", Axiom::ConceptAssertion { concept: "A".into(), ind: "x".into() });
        k.add_strict("a", Axiom::RoleAssertion { role: "A".into(), subj: "x".into(), obj: "x".into() });
        k.add_defeasible("a", Axiom::EvalConcept { concept: "A".into(), ctx: "b".into(), sup: "A".into() });
        let Err(Error::Validation(d)) = k.validate() else { panic!("expected diagnostics") };
        assert_eq!(d.len(), 3, "{d:?}");
    }

    #[test]
    fn cycle_detected() {
        let mut k = Sckr::new();
        k.add_context("a", 0);
        k.add_context("b", 1);
        k.add_cover("b", "a");
        k.add_cover("a", "b");
        assert!(k.validate().is_err());
    }
}
