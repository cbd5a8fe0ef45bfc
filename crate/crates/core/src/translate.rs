//! Translation of a repository into a normal program with weak constraints.
//!
//! Every fact carries the context it holds in; derived facts also carry an
//! environment term, `main` for the model itself and `nlit(..)`/`nrel(..)` for
//! the test copies used to check whether an exception is justified.

use std::sync::OnceLock;

use crate::asp::{parse_program, Atom, Program, Rule, Term, WeakConstraint};
use crate::error::Result;
use crate::kb::{Axiom, Overriding, QueryAtom, Sckr, BOT, TOP};

/// A named rule schema.
#[derive(Debug, Clone)]
pub struct Schema {
    pub label: &'static str,
    pub item: SchemaItem,
}

#[derive(Debug, Clone)]
pub enum SchemaItem {
    Rule(Rule),
    Weak(WeakConstraint),
}

const SCHEMAS: &[(&str, &str)] = &[
    // deduction within a context
    ("prl-instd", "instd(X,Z,C,T) :- insta(X,Z,C,T)."),
    ("prl-tripled", "tripled(X,R,Y,C,T) :- triplea(X,R,Y,C,T)."),
    ("prl-ninstd", "unsat(T) :- ninsta(X,Z,C), instd(X,Z,C,T)."),
    ("prl-ntripled", "unsat(T) :- ntriplea(X,R,Y,C), tripled(X,R,Y,C,T)."),
    ("prl-eq", "unsat(T) :- eq(X,Y,C,T)."),
    ("prl-top", "instd(X,top,C,main) :- nom(X,C)."),
    ("prl-bot", "unsat(T) :- instd(X,bot,C,T)."),
    ("prl-subc", "instd(X,Z,C,T) :- subClass(Y,Z,C), instd(X,Y,C,T)."),
    ("prl-subcnj", "instd(X,Z,C,T) :- subConj(Y1,Y2,Z,C), instd(X,Y1,C,T), instd(X,Y2,C,T)."),
    ("prl-subex", "instd(X,Z,C,T) :- subEx(V,Y,Z,C), tripled(X,V,X1,C,T), instd(X1,Y,C,T)."),
    ("prl-supex", "tripled(X,R,X1,C,T) :- supEx(Y,R,X1,C), instd(X,Y,C,T)."),
    ("prl-supforall", "instd(Y,Z1,C,T) :- supForall(Z,R,Z1,C), instd(X,Z,C,T), tripled(X,R,Y,C,T)."),
    (
        "prl-leqone",
        "unsat(T) :- supLeqOne(Z,R,C), instd(X,Z,C,T), tripled(X,R,X1,C,T), tripled(X,R,X2,C,T), X1 != X2.",
    ),
    ("prl-subr", "tripled(X,W,X1,C,T) :- subRole(V,W,C), tripled(X,V,X1,C,T)."),
    ("prl-subrc", "tripled(X,W,Z,C,T) :- subRChain(U,V,W,C), tripled(X,U,Y,C,T), tripled(Y,V,Z,C,T)."),
    ("prl-dis", "unsat(T) :- dis(U,V,C), tripled(X,U,Y,C,T), tripled(X,V,Y,C,T)."),
    ("prl-inv1", "tripled(Y,V,X,C,T) :- inv(U,V,C), tripled(X,U,Y,C,T)."),
    ("prl-inv2", "tripled(Y,U,X,C,T) :- inv(U,V,C), tripled(X,V,Y,C,T)."),
    ("prl-irr", "unsat(T) :- irr(U,C), tripled(X,U,X,C,T)."),
    ("prl-sat", ":- unsat(main)."),
    // evaluation of other contexts
    ("plc-subevalat", "instd(X,B,C,T) :- subEval(A,C1,B,C), instd(X,A,C1,T)."),
    ("plc-subevalr", "tripled(X,S,Y,C,T) :- subEvalR(R,C1,S,C), tripled(X,R,Y,C1,T)."),
    ("plc-subevalatp", "instd(X,B,C,T) :- subEval(A,C1,B,C2), instd(X,A,C1,T), prec(C,C2)."),
    ("plc-subevalrp", "tripled(X,S,Y,C,T) :- subEvalR(R,C1,S,C2), tripled(X,R,Y,C1,T), prec(C,C2)."),
    // overriding
    ("ovr-inst", "ovr(insta,X,Y,C1,C) :- def_insta(X,Y,C1), prec(C,C1), not test_fails(nlit(X,Y,C))."),
    (
        "ovr-triple",
        "ovr(triplea,X,R,Y,C1,C) :- def_triplea(X,R,Y,C1), prec(C,C1), not test_fails(nrel(X,R,Y,C)).",
    ),
    ("ovr-ninst", "ovr(ninsta,X,Y,C1,C) :- def_ninsta(X,Y,C1), prec(C,C1), instd(X,Y,C,main)."),
    (
        "ovr-ntriple",
        "ovr(ntriplea,X,R,Y,C1,C) :- def_ntriplea(X,R,Y,C1), prec(C,C1), tripled(X,R,Y,C,main).",
    ),
    (
        "ovr-subc",
        "ovr(subClass,X,Y,Z,C1,C) :- def_subclass(Y,Z,C1), prec(C,C1), instd(X,Y,C,main), \
         not test_fails(nlit(X,Z,C)).",
    ),
    (
        "ovr-cnj",
        "ovr(subConj,X,Y1,Y2,Z,C1,C) :- def_subcnj(Y1,Y2,Z,C1), prec(C,C1), instd(X,Y1,C,main), \
         instd(X,Y2,C,main), not test_fails(nlit(X,Z,C)).",
    ),
    (
        "ovr-subex",
        "ovr(subEx,X,R,Y,Z,C1,C) :- def_subex(R,Y,Z,C1), prec(C,C1), tripled(X,R,W,C,main), \
         instd(W,Y,C,main), not test_fails(nlit(X,Z,C)).",
    ),
    (
        "ovr-supex",
        "ovr(supEx,X,Y,R,W,C1,C) :- def_supex(Y,R,W,C1), prec(C,C1), instd(X,Y,C,main), \
         not test_fails(nrel(X,R,W,C)).",
    ),
    (
        "ovr-forall",
        "ovr(supForall,X,Y,Z,R,W,C1,C) :- def_supforall(Z,R,W,C1), prec(C,C1), instd(X,Z,C,main), \
         tripled(X,R,Y,C,main), not test_fails(nlit(Y,W,C)).",
    ),
    (
        "ovr-leqone",
        "ovr(supLeqOne,X,X1,X2,Z,R,C1,C) :- def_supleqone(Z,R,C1), prec(C,C1), instd(X,Z,C,main), \
         tripled(X,R,X1,C,main), tripled(X,R,X2,C,main), X1 != X2.",
    ),
    (
        "ovr-subr",
        "ovr(subRole,X,Y,R,S,C1,C) :- def_subr(R,S,C1), prec(C,C1), tripled(X,R,Y,C,main), \
         not test_fails(nrel(X,S,Y,C)).",
    ),
    (
        "ovr-subrc",
        "ovr(subRChain,X,Y,Z,R,S,Tr,C1,C) :- def_subrc(R,S,Tr,C1), prec(C,C1), tripled(X,R,Y,C,main), \
         tripled(Y,S,Z,C,main), not test_fails(nrel(X,Tr,Z,C)).",
    ),
    (
        "ovr-dis",
        "ovr(dis,X,Y,R,S,C1,C) :- def_dis(R,S,C1), prec(C,C1), tripled(X,R,Y,C,main), tripled(X,S,Y,C,main).",
    ),
    (
        "ovr-inv1",
        "ovr(inv,X,Y,R,S,C1,C) :- def_inv(R,S,C1), prec(C,C1), tripled(X,R,Y,C,main), \
         not test_fails(nrel(Y,S,X,C)).",
    ),
    (
        "ovr-inv2",
        "ovr(inv,X,Y,R,S,C1,C) :- def_inv(R,S,C1), prec(C,C1), tripled(Y,S,X,C,main), \
         not test_fails(nrel(X,R,Y,C)).",
    ),
    ("ovr-irr", "ovr(irr,X,R,C1,C) :- def_irr(R,C1), prec(C,C1), tripled(X,R,X,C,main)."),
    // inheritance along the hierarchy
    ("prop-inst", "instd(X,Z,C,T) :- insta(X,Z,C1,T), prec(C,C1), not ovr(insta,X,Z,C1,C)."),
    (
        "prop-triple",
        "tripled(X,R,Y,C,T) :- triplea(X,R,Y,C1,T), prec(C,C1), not ovr(triplea,X,R,Y,C1,C).",
    ),
    ("prop-ninst", "unsat(T) :- ninsta(X,Z,C1), instd(X,Z,C,T), prec(C,C1), not ovr(ninsta,X,Z,C1,C)."),
    (
        "prop-ntriple",
        "unsat(T) :- ntriplea(X,R,Y,C1), tripled(X,R,Y,C,T), prec(C,C1), not ovr(ntriplea,X,R,Y,C1,C).",
    ),
    (
        "prop-subc",
        "instd(X,Z,C,T) :- subClass(Y,Z,C1), instd(X,Y,C,T), prec(C,C1), not ovr(subClass,X,Y,Z,C1,C).",
    ),
    (
        "prop-cnj",
        "instd(X,Z,C,T) :- subConj(Y1,Y2,Z,C1), instd(X,Y1,C,T), instd(X,Y2,C,T), prec(C,C1), \
         not ovr(subConj,X,Y1,Y2,Z,C1,C).",
    ),
    (
        "prop-subex",
        "instd(X,Z,C,T) :- subEx(V,Y,Z,C1), tripled(X,V,X1,C,T), instd(X1,Y,C,T), prec(C,C1), \
         not ovr(subEx,X,V,Y,Z,C1,C).",
    ),
    (
        "prop-supex",
        "tripled(X,R,X1,C,T) :- supEx(Y,R,X1,C1), instd(X,Y,C,T), prec(C,C1), not ovr(supEx,X,Y,R,X1,C1,C).",
    ),
    (
        "prop-forall",
        "instd(Y,Z1,C,T) :- supForall(Z,R,Z1,C1), instd(X,Z,C,T), tripled(X,R,Y,C,T), prec(C,C1), \
         not ovr(supForall,X,Y,Z,R,Z1,C1,C).",
    ),
    (
        "prop-leqone",
        "unsat(T) :- supLeqOne(Z,R,C1), instd(X,Z,C,T), tripled(X,R,X1,C,T), tripled(X,R,X2,C,T), X1 != X2, \
         prec(C,C1), not ovr(supLeqOne,X,X1,X2,Z,R,C1,C).",
    ),
    (
        "prop-subr",
        "tripled(X,W,X1,C,T) :- subRole(V,W,C1), tripled(X,V,X1,C,T), prec(C,C1), \
         not ovr(subRole,X,X1,V,W,C1,C).",
    ),
    (
        "prop-subrc",
        "tripled(X,W,Z,C,T) :- subRChain(U,V,W,C1), tripled(X,U,Y,C,T), tripled(Y,V,Z,C,T), prec(C,C1), \
         not ovr(subRChain,X,Y,Z,U,V,W,C1,C).",
    ),
    (
        "prop-dis",
        "unsat(T) :- dis(U,V,C1), tripled(X,U,Y,C,T), tripled(X,V,Y,C,T), prec(C,C1), \
         not ovr(dis,X,Y,U,V,C1,C).",
    ),
    (
        "prop-inv1",
        "tripled(Y,V,X,C,T) :- inv(U,V,C1), tripled(X,U,Y,C,T), prec(C,C1), not ovr(inv,X,Y,U,V,C1,C).",
    ),
    (
        "prop-inv2",
        "tripled(X,U,Y,C,T) :- inv(U,V,C1), tripled(Y,V,X,C,T), prec(C,C1), not ovr(inv,X,Y,U,V,C1,C).",
    ),
    ("prop-irr", "unsat(T) :- irr(U,C1), tripled(X,U,X,C,T), prec(C,C1), not ovr(irr,X,U,C1,C)."),
    // test environments
    ("test-inst", "test(nlit(X,Y,C)) :- def_insta(X,Y,C1), prec(C,C1)."),
    ("constr-inst", ":- test_fails(nlit(X,Y,C)), ovr(insta,X,Y,C1,C)."),
    ("test-triple", "test(nrel(X,R,Y,C)) :- def_triplea(X,R,Y,C1), prec(C,C1)."),
    ("constr-triple", ":- test_fails(nrel(X,R,Y,C)), ovr(triplea,X,R,Y,C1,C)."),
    ("test-subc", "test(nlit(X,Z,C)) :- def_subclass(Y,Z,C1), instd(X,Y,C,main), prec(C,C1)."),
    ("constr-subc", ":- test_fails(nlit(X,Z,C)), ovr(subClass,X,Y,Z,C1,C)."),
    (
        "test-subcnj",
        "test(nlit(X,Z,C)) :- def_subcnj(Y1,Y2,Z,C1), instd(X,Y1,C,main), instd(X,Y2,C,main), prec(C,C1).",
    ),
    ("constr-subcnj", ":- test_fails(nlit(X,Z,C)), ovr(subConj,X,Y1,Y2,Z,C1,C)."),
    (
        "test-subex",
        "test(nlit(X,Z,C)) :- def_subex(R,Y,Z,C1), tripled(X,R,W,C,main), instd(W,Y,C,main), prec(C,C1).",
    ),
    ("constr-subex", ":- test_fails(nlit(X,Z,C)), ovr(subEx,X,R,Y,Z,C1,C)."),
    ("test-supex", "test(nrel(X,R,W,C)) :- def_supex(Y,R,W,C1), instd(X,Y,C,main), prec(C,C1)."),
    ("constr-supex", ":- test_fails(nrel(X,R,W,C)), ovr(supEx,X,Y,R,W,C1,C)."),
    (
        "test-supforall",
        "test(nlit(Y,W,C)) :- def_supforall(Z,R,W,C1), instd(X,Z,C,main), tripled(X,R,Y,C,main), prec(C,C1).",
    ),
    ("constr-supforall", ":- test_fails(nlit(Y,W,C)), ovr(supForall,X,Y,Z,R,W,C1,C)."),
    ("test-subr", "test(nrel(X,S,Y,C)) :- def_subr(R,S,C1), tripled(X,R,Y,C,main), prec(C,C1)."),
    ("constr-subr", ":- test_fails(nrel(X,S,Y,C)), ovr(subRole,X,Y,R,S,C1,C)."),
    (
        "test-subrc",
        "test(nrel(X,Tr,Z,C)) :- def_subrc(R,S,Tr,C1), tripled(X,R,Y,C,main), tripled(Y,S,Z,C,main), prec(C,C1).",
    ),
    ("constr-subrc", ":- test_fails(nrel(X,Tr,Z,C)), ovr(subRChain,X,Y,Z,R,S,Tr,C1,C)."),
    ("test-inv1", "test(nrel(Y,S,X,C)) :- def_inv(R,S,C1), tripled(X,R,Y,C,main), prec(C,C1)."),
    ("test-inv2", "test(nrel(X,R,Y,C)) :- def_inv(R,S,C1), tripled(Y,S,X,C,main), prec(C,C1)."),
    (
        "constr-inv1",
        ":- test_fails(nrel(Y,S,X,C)), ovr(inv,X,Y,R,S,C1,C), tripled(X,R,Y,C,main).",
    ),
    (
        "constr-inv2",
        ":- test_fails(nrel(X,R,Y,C)), ovr(inv,X,Y,R,S,C1,C), tripled(Y,S,X,C,main).",
    ),
    ("test-fails1", "test_fails(nlit(X,Z,C)) :- instd(X,Z,C,nlit(X,Z,C)), not unsat(nlit(X,Z,C))."),
    (
        "test-fails2",
        "test_fails(nrel(X,R,Y,C)) :- tripled(X,R,Y,C,nrel(X,R,Y,C)), not unsat(nrel(X,R,Y,C)).",
    ),
    ("test-add1", "instd(X,Z,C,nlit(X,Z,C)) :- test(nlit(X,Z,C))."),
    ("test-add2", "tripled(X,R,Y,C,nrel(X,R,Y,C)) :- test(nrel(X,R,Y,C))."),
    ("test-copy1", "instd(X1,Y1,C,T) :- instd(X1,Y1,C,main), test(T)."),
    ("test-copy2", "tripled(X1,R,Y1,C,T) :- tripled(X1,R,Y1,C,main), test(T)."),
    // preference: one violation per overridden instance, at the level of its home context
    ("pref-inst", "ovrlevel_insta(X,Y,C1,C,N) :- ovr(insta,X,Y,C1,C), level(C1,N)."),
    ("wconst-inst", ":~ ovrlevel_insta(X,Y,C1,C,N). [1@N,insta,X,Y,C1,C]"),
    ("pref-triple", "ovrlevel_triplea(X,R,Y,C1,C,N) :- ovr(triplea,X,R,Y,C1,C), level(C1,N)."),
    ("wconst-triple", ":~ ovrlevel_triplea(X,R,Y,C1,C,N). [1@N,triplea,X,R,Y,C1,C]"),
    ("pref-ninst", "ovrlevel_ninsta(X,Y,C1,C,N) :- ovr(ninsta,X,Y,C1,C), level(C1,N)."),
    ("wconst-ninst", ":~ ovrlevel_ninsta(X,Y,C1,C,N). [1@N,ninsta,X,Y,C1,C]"),
    ("pref-ntriple", "ovrlevel_ntriplea(X,R,Y,C1,C,N) :- ovr(ntriplea,X,R,Y,C1,C), level(C1,N)."),
    ("wconst-ntriple", ":~ ovrlevel_ntriplea(X,R,Y,C1,C,N). [1@N,ntriplea,X,R,Y,C1,C]"),
    ("pref-subc", "ovrlevel_subClass(X,Y,Z,C1,C,N) :- ovr(subClass,X,Y,Z,C1,C), level(C1,N)."),
    ("wconst-subc", ":~ ovrlevel_subClass(X,Y,Z,C1,C,N). [1@N,subClass,X,Y,Z,C1,C]"),
    ("pref-subcnj", "ovrlevel_subConj(X,Y1,Y2,Z,C1,C,N) :- ovr(subConj,X,Y1,Y2,Z,C1,C), level(C1,N)."),
    ("wconst-subcnj", ":~ ovrlevel_subConj(X,Y1,Y2,Z,C1,C,N). [1@N,subConj,X,Y1,Y2,Z,C1,C]"),
    ("pref-subex", "ovrlevel_subEx(X,R,Y,Z,C1,C,N) :- ovr(subEx,X,R,Y,Z,C1,C), level(C1,N)."),
    ("wconst-subex", ":~ ovrlevel_subEx(X,R,Y,Z,C1,C,N). [1@N,subEx,X,R,Y,Z,C1,C]"),
    ("pref-supex", "ovrlevel_supEx(X,Y,R,W,C1,C,N) :- ovr(supEx,X,Y,R,W,C1,C), level(C1,N)."),
    ("wconst-supex", ":~ ovrlevel_supEx(X,Y,R,W,C1,C,N). [1@N,supEx,X,Y,R,W,C1,C]"),
    (
        "pref-supforall",
        "ovrlevel_supForall(X,Y,Z,R,W,C1,C,N) :- ovr(supForall,X,Y,Z,R,W,C1,C), level(C1,N).",
    ),
    ("wconst-supforall", ":~ ovrlevel_supForall(X,Y,Z,R,W,C1,C,N). [1@N,supForall,X,Y,Z,R,W,C1,C]"),
    (
        "pref-leqone",
        "ovrlevel_supLeqOne(X,X1,X2,Z,R,C1,C,N) :- ovr(supLeqOne,X,X1,X2,Z,R,C1,C), level(C1,N).",
    ),
    ("wconst-leqone", ":~ ovrlevel_supLeqOne(X,X1,X2,Z,R,C1,C,N). [1@N,supLeqOne,X,X1,X2,Z,R,C1,C]"),
    ("pref-subr", "ovrlevel_subRole(X,Y,R,S,C1,C,N) :- ovr(subRole,X,Y,R,S,C1,C), level(C1,N)."),
    ("wconst-subr", ":~ ovrlevel_subRole(X,Y,R,S,C1,C,N). [1@N,subRole,X,Y,R,S,C1,C]"),
    (
        "pref-subrc",
        "ovrlevel_subRChain(X,Y,Z,R,S,Tr,C1,C,N) :- ovr(subRChain,X,Y,Z,R,S,Tr,C1,C), level(C1,N).",
    ),
    ("wconst-subrc", ":~ ovrlevel_subRChain(X,Y,Z,R,S,Tr,C1,C,N). [1@N,subRChain,X,Y,Z,R,S,Tr,C1,C]"),
    ("pref-dis", "ovrlevel_dis(X,Y,R,S,C1,C,N) :- ovr(dis,X,Y,R,S,C1,C), level(C1,N)."),
    ("wconst-dis", ":~ ovrlevel_dis(X,Y,R,S,C1,C,N). [1@N,dis,X,Y,R,S,C1,C]"),
    ("pref-inv", "ovrlevel_inv(X,Y,R,S,C1,C,N) :- ovr(inv,X,Y,R,S,C1,C), level(C1,N)."),
    ("wconst-inv", ":~ ovrlevel_inv(X,Y,R,S,C1,C,N). [1@N,inv,X,Y,R,S,C1,C]"),
    ("pref-irr", "ovrlevel_irr(X,R,C1,C,N) :- ovr(irr,X,R,C1,C), level(C1,N)."),
    ("wconst-irr", ":~ ovrlevel_irr(X,R,C1,C,N). [1@N,irr,X,R,C1,C]"),
];

/// The fixed, input-independent part of every translation.
pub fn fixed_rules() -> &'static [Schema] {
    static RULES: OnceLock<Vec<Schema>> = OnceLock::new();
    RULES.get_or_init(|| {
        SCHEMAS
            .iter()
            .map(|(label, text)| {
                let p = parse_program(text).unwrap_or_else(|e| panic!("schema {label}: {e}"));
                let item = match (p.rules.into_iter().next(), p.weak.into_iter().next()) {
                    (Some(r), None) => SchemaItem::Rule(r),
                    (None, Some(w)) => SchemaItem::Weak(w),
                    _ => panic!("schema {label} must hold exactly one statement"),
                };
                Schema { label, item }
            })
            .collect()
    })
}

/// Name of a concept, role, individual or context as a program term.
pub fn name(s: &str) -> Term {
    if s == TOP || s == BOT {
        Term::cst(s)
    } else {
        Term::str(s)
    }
}

fn main_env() -> Term {
    Term::cst("main")
}

fn atom(pred: &str, args: Vec<Term>) -> Atom {
    Atom::new(pred, args)
}

/// Facts for one axiom holding in `ctx`, as for a strict axiom.
pub fn input_strict(ax: &Axiom, ctx: &str) -> Vec<Atom> {
    let c = name(ctx);
    let n = name;
    let f = match ax {
        Axiom::ConceptAssertion { concept, ind } | Axiom::Nominal { ind, sup: concept } => {
            atom("insta", vec![n(ind), n(concept), c, main_env()])
        }
        Axiom::TopAssertion { ind } => atom("insta", vec![n(ind), n(TOP), c, main_env()]),
        Axiom::BotAssertion { ind } => atom("insta", vec![n(ind), n(BOT), c, main_env()]),
        Axiom::NegConceptAssertion { concept, ind } => atom("ninsta", vec![n(ind), n(concept), c]),
        Axiom::RoleAssertion { role, subj, obj } => atom("triplea", vec![n(subj), n(role), n(obj), c, main_env()]),
        Axiom::NegRoleAssertion { role, subj, obj } => atom("ntriplea", vec![n(subj), n(role), n(obj), c]),
        Axiom::Equal { left, right } => atom("eq", vec![n(left), n(right), c, main_env()]),
        Axiom::NotEqual { .. } => return Vec::new(),
        Axiom::SubClass { sub, sup } => atom("subClass", vec![n(sub), n(sup), c]),
        Axiom::SubConj { left, right, sup } => atom("subConj", vec![n(left), n(right), n(sup), c]),
        Axiom::SubExists { role, filler, sup } => atom("subEx", vec![n(role), n(filler), n(sup), c]),
        Axiom::SupExists { sub, role, ind } => atom("supEx", vec![n(sub), n(role), n(ind), c]),
        Axiom::SupForall { sub, role, filler } => atom("supForall", vec![n(sub), n(role), n(filler), c]),
        Axiom::SupAtMostOne { sub, role } => atom("supLeqOne", vec![n(sub), n(role), c]),
        Axiom::SubRole { sub, sup } => atom("subRole", vec![n(sub), n(sup), c]),
        Axiom::RoleChain { first, second, sup } => atom("subRChain", vec![n(first), n(second), n(sup), c]),
        Axiom::DisjointRoles { left, right } => atom("dis", vec![n(left), n(right), c]),
        Axiom::InverseRoles { left, right } => atom("inv", vec![n(left), n(right), c]),
        Axiom::Irreflexive { role } => atom("irr", vec![n(role), c]),
        Axiom::EvalConcept { concept, ctx: c1, sup } => atom("subEval", vec![n(concept), n(c1), n(sup), c]),
        Axiom::EvalRole { role, ctx: c1, sup } => atom("subEvalR", vec![n(role), n(c1), n(sup), c]),
    };
    vec![f]
}

/// Facts for a defeasible axiom: the `def_*` marker plus the strict facts,
/// which make the axiom hold unconditionally in its own context.
pub fn input_defeasible(ax: &Axiom, ctx: &str) -> Vec<Atom> {
    let c = name(ctx);
    let n = name;
    let def = match ax {
        Axiom::ConceptAssertion { concept, ind } => atom("def_insta", vec![n(ind), n(concept), c]),
        Axiom::NegConceptAssertion { concept, ind } => atom("def_ninsta", vec![n(ind), n(concept), c]),
        Axiom::RoleAssertion { role, subj, obj } => atom("def_triplea", vec![n(subj), n(role), n(obj), c]),
        Axiom::NegRoleAssertion { role, subj, obj } => atom("def_ntriplea", vec![n(subj), n(role), n(obj), c]),
        Axiom::SubClass { sub, sup } => atom("def_subclass", vec![n(sub), n(sup), c]),
        Axiom::SubConj { left, right, sup } => atom("def_subcnj", vec![n(left), n(right), n(sup), c]),
        Axiom::SubExists { role, filler, sup } => atom("def_subex", vec![n(role), n(filler), n(sup), c]),
        Axiom::SupExists { sub, role, ind } => atom("def_supex", vec![n(sub), n(role), n(ind), c]),
        Axiom::SupForall { sub, role, filler } => atom("def_supforall", vec![n(sub), n(role), n(filler), c]),
        Axiom::SupAtMostOne { sub, role } => atom("def_supleqone", vec![n(sub), n(role), c]),
        Axiom::SubRole { sub, sup } => atom("def_subr", vec![n(sub), n(sup), c]),
        Axiom::RoleChain { first, second, sup } => atom("def_subrc", vec![n(first), n(second), n(sup), c]),
        Axiom::DisjointRoles { left, right } => atom("def_dis", vec![n(left), n(right), c]),
        Axiom::InverseRoles { left, right } => atom("def_inv", vec![n(left), n(right), c]),
        Axiom::Irreflexive { role } => atom("def_irr", vec![n(role), c]),
        _ => return input_strict(ax, ctx),
    };
    let mut out = vec![def];
    out.extend(input_strict(ax, ctx));
    out
}

/// All input facts of a repository, sorted and without duplicates.
pub fn facts(k: &Sckr) -> Vec<Atom> {
    let mut out = Vec::new();
    for (lo, up) in k.contexts.strict_below() {
        out.push(atom("prec", vec![name(&lo), name(&up)]));
    }
    let syms = k.symbols();
    for (c, level) in &k.contexts.levels {
        out.push(atom("level", vec![name(c), Term::Int(*level as i64 + 1)]));
        for a in &syms.individuals {
            out.push(atom("nom", vec![name(a), name(c)]));
        }
        for a in &syms.concepts {
            out.push(atom("cls", vec![name(a), name(c)]));
        }
        for r in &syms.roles {
            out.push(atom("rol", vec![name(r), name(c)]));
        }
    }
    for (c, st) in k.statements() {
        if st.defeasible {
            out.extend(input_defeasible(&st.axiom, c));
        } else {
            out.extend(input_strict(&st.axiom, c));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The full program for a validated repository.
pub fn translate(k: &Sckr) -> Result<Program> {
    k.validate()?;
    let mut p = Program { facts: facts(k), ..Program::default() };
    for s in fixed_rules() {
        match &s.item {
            SchemaItem::Rule(r) => p.rules.push(r.clone()),
            SchemaItem::Weak(w) => p.weak.push(w.clone()),
        }
    }
    Ok(p)
}

/// The program atom deciding a query in the main environment.
pub fn output_atom(q: &QueryAtom) -> Atom {
    match q {
        QueryAtom::Concept { concept, ind, ctx } => {
            atom("instd", vec![name(ind), name(concept), name(ctx), main_env()])
        }
        QueryAtom::Role { role, subj, obj, ctx } => {
            atom("tripled", vec![name(subj), name(role), name(obj), name(ctx), main_env()])
        }
    }
}

fn text(t: &Term) -> Option<String> {
    match t {
        Term::Str(s) | Term::Const(s) => Some(s.clone()),
        _ => None,
    }
}

/// Predicate tag and axiom arguments used in `ovr` atoms.
fn ovr_layout(ax: &Axiom) -> Option<(&'static str, Vec<&str>)> {
    Some(match ax {
        Axiom::ConceptAssertion { concept, .. } => ("insta", vec![concept.as_str()]),
        Axiom::RoleAssertion { role, .. } => ("triplea", vec![role.as_str()]),
        Axiom::NegConceptAssertion { concept, .. } => ("ninsta", vec![concept.as_str()]),
        Axiom::NegRoleAssertion { role, .. } => ("ntriplea", vec![role.as_str()]),
        Axiom::SubClass { sub, sup } => ("subClass", vec![sub, sup]),
        Axiom::SubConj { left, right, sup } => ("subConj", vec![left, right, sup]),
        Axiom::SubExists { role, filler, sup } => ("subEx", vec![role, filler, sup]),
        Axiom::SupExists { sub, role, ind } => ("supEx", vec![sub, role, ind]),
        Axiom::SupForall { sub, role, filler } => ("supForall", vec![sub, role, filler]),
        Axiom::SupAtMostOne { sub, role } => ("supLeqOne", vec![sub, role]),
        Axiom::SubRole { sub, sup } => ("subRole", vec![sub, sup]),
        Axiom::RoleChain { first, second, sup } => ("subRChain", vec![first, second, sup]),
        Axiom::DisjointRoles { left, right } => ("dis", vec![left, right]),
        Axiom::InverseRoles { left, right } => ("inv", vec![left, right]),
        Axiom::Irreflexive { role } => ("irr", vec![role]),
        _ => return None,
    })
}

/// The `ovr` atom recording an overriding.
pub fn ovr_atom(o: &Overriding) -> Option<Atom> {
    let (tag, axargs) = ovr_layout(&o.axiom)?;
    let mut args = vec![Term::cst(tag)];
    match &o.axiom {
        // role assertions put the role between subject and object
        Axiom::RoleAssertion { .. } | Axiom::NegRoleAssertion { .. } => {
            args.push(name(o.tuple.first()?));
            args.push(name(axargs[0]));
            args.push(name(o.tuple.get(1)?));
        }
        Axiom::ConceptAssertion { .. } | Axiom::NegConceptAssertion { .. } => {
            args.push(name(o.tuple.first()?));
            args.push(name(axargs[0]));
        }
        _ => {
            args.extend(o.tuple.iter().map(|s| name(s)));
            args.extend(axargs.iter().map(|s| name(s)));
        }
    }
    args.push(name(&o.home));
    args.push(name(&o.at));
    Some(Atom::new("ovr", args))
}

/// The `ovrlevel_*` atom paired with an overriding.
pub fn ovrlevel_atom(o: &Overriding, home_level: u32) -> Option<Atom> {
    let ovr = ovr_atom(o)?;
    let Term::Const(tag) = &ovr.args[0] else { return None };
    let mut args: Vec<Term> = ovr.args[1..].to_vec();
    args.push(Term::Int(home_level as i64 + 1));
    Some(Atom::new(format!("ovrlevel_{tag}"), args))
}

/// Reads an `ovr` atom back into the overriding it records.
pub fn decode_ovr(a: &Atom) -> Option<Overriding> {
    if a.pred != "ovr" || a.args.len() < 3 {
        return None;
    }
    let Term::Const(tag) = &a.args[0] else { return None };
    let s: Vec<String> = a.args[1..].iter().map(text).collect::<Option<_>>()?;
    let (home, at) = (s[s.len() - 2].clone(), s[s.len() - 1].clone());
    let v = &s[..s.len() - 2];
    let own = |x: &str| x.to_string();
    let (axiom, tuple) = match (tag.as_str(), v) {
        ("insta", [x, a]) => (Axiom::ConceptAssertion { concept: own(a), ind: own(x) }, vec![own(x)]),
        ("ninsta", [x, a]) => (Axiom::NegConceptAssertion { concept: own(a), ind: own(x) }, vec![own(x)]),
        ("triplea", [x, r, y]) => {
            (Axiom::RoleAssertion { role: own(r), subj: own(x), obj: own(y) }, vec![own(x), own(y)])
        }
        ("ntriplea", [x, r, y]) => {
            (Axiom::NegRoleAssertion { role: own(r), subj: own(x), obj: own(y) }, vec![own(x), own(y)])
        }
        ("subClass", [x, a, b]) => (Axiom::SubClass { sub: own(a), sup: own(b) }, vec![own(x)]),
        ("subConj", [x, a1, a2, b]) => {
            (Axiom::SubConj { left: own(a1), right: own(a2), sup: own(b) }, vec![own(x)])
        }
        ("subEx", [x, r, a, b]) => (Axiom::SubExists { role: own(r), filler: own(a), sup: own(b) }, vec![own(x)]),
        ("supEx", [x, a, r, w]) => (Axiom::SupExists { sub: own(a), role: own(r), ind: own(w) }, vec![own(x)]),
        ("supForall", [x, y, a, r, b]) => {
            (Axiom::SupForall { sub: own(a), role: own(r), filler: own(b) }, vec![own(x), own(y)])
        }
        ("supLeqOne", [x, x1, x2, a, r]) => {
            (Axiom::SupAtMostOne { sub: own(a), role: own(r) }, vec![own(x), own(x1), own(x2)])
        }
        ("subRole", [x, y, r, s2]) => (Axiom::SubRole { sub: own(r), sup: own(s2) }, vec![own(x), own(y)]),
        ("subRChain", [x, y, z, r, s2, t]) => (
            Axiom::RoleChain { first: own(r), second: own(s2), sup: own(t) },
            vec![own(x), own(y), own(z)],
        ),
        ("dis", [x, y, r, s2]) => (Axiom::DisjointRoles { left: own(r), right: own(s2) }, vec![own(x), own(y)]),
        ("inv", [x, y, r, s2]) => (Axiom::InverseRoles { left: own(r), right: own(s2) }, vec![own(x), own(y)]),
        ("irr", [x, r]) => (Axiom::Irreflexive { role: own(r) }, vec![own(x)]),
        _ => return None,
    };
    Some(Overriding { axiom, home, at, tuple })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse;

    const EX1: &str = "context ctop level 0. context cbot level 1. cbot < ctop.\n\
        module ctop { D(A => B). } module cbot { A(a). -B(a). }";

    #[test]
    fn schema_inventory() {
        let rules = fixed_rules();
        let weak = rules.iter().filter(|s| matches!(s.item, SchemaItem::Weak(_))).count();
        assert_eq!(weak, 15);
        let labels: std::collections::BTreeSet<_> = rules.iter().map(|s| s.label).collect();
        assert_eq!(labels.len(), rules.len());
        for l in ["prop-subc", "prl-sat", "test-copy1", "constr-inv2", "ovr-leqone"] {
            assert!(labels.contains(l), "{l}");
        }
    }

    #[test]
    fn reference_facts() {
        let k = parse(EX1).unwrap();
        let text = translate(&k).unwrap().emit_text();
        for f in [
            "def_subclass(\"A\",\"B\",\"ctop\").",
            "subClass(\"A\",\"B\",\"ctop\").",
            "insta(\"a\",\"A\",\"cbot\",main).",
            "ninsta(\"a\",\"B\",\"cbot\").",
            "prec(\"cbot\",\"ctop\").",
            "level(\"ctop\",1).",
            "level(\"cbot\",2).",
            ":- unsat(main).",
        ] {
            assert!(text.lines().any(|l| l == f), "missing {f}");
        }
        assert_eq!(text.matches(":~").count(), 15);
    }

    #[test]
    fn reference_answer_sets() {
        use crate::asp::{solve_optimal, Caps, Entailment};
        let sol = solve_optimal(&translate(&parse(EX1).unwrap()).unwrap(), Caps::default()).unwrap();
        assert_eq!(sol.models.len(), 1);
        let m = &sol.rendered()[0];
        assert!(m.contains(&"ovr(subClass,\"a\",\"A\",\"B\",\"ctop\",\"cbot\")".to_string()));
        assert!(!m.iter().any(|a| a.starts_with("instd(\"a\",\"B\",\"cbot\",main")));
        assert_eq!(sol.cost, Some([(1, 1)].into()));

        let ex2 = EX1.replace("-B(a).", "");
        let sol = solve_optimal(&translate(&parse(&ex2).unwrap()).unwrap(), Caps::default()).unwrap();
        assert_eq!(sol.models.len(), 1);
        assert!(!sol.rendered()[0].iter().any(|a| a.starts_with("ovr(")));
        let q = output_atom(&crate::frontend::parse_query("B(a)@cbot").unwrap());
        assert_eq!(sol.cautious(&q), Entailment::Entailed);
    }

    #[test]
    fn ovr_atoms_round_trip() {
        let o = Overriding {
            axiom: Axiom::RoleChain { first: "R".into(), second: "S".into(), sup: "T".into() },
            home: "c1".into(),
            at: "c0".into(),
            tuple: vec!["a".into(), "b".into(), "c".into()],
        };
        let a = ovr_atom(&o).unwrap();
        assert_eq!(a.to_string(), "ovr(subRChain,\"a\",\"b\",\"c\",\"R\",\"S\",\"T\",\"c1\",\"c0\")");
        assert_eq!(decode_ovr(&a), Some(o.clone()));
        let t = Overriding {
            axiom: Axiom::RoleAssertion { role: "R".into(), subj: "a".into(), obj: "b".into() },
            home: "c1".into(),
            at: "c0".into(),
            tuple: vec!["a".into(), "b".into()],
        };
        assert_eq!(decode_ovr(&ovr_atom(&t).unwrap()), Some(t));
        assert_eq!(ovrlevel_atom(&o, 0).unwrap().pred, "ovrlevel_subRChain");
    }
}
