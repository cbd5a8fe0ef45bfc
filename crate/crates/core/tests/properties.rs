use std::collections::BTreeSet;

use proptest::prelude::*;

use sckr::asp::{answer_sets, ground, ground_naive, parse_program, render_model, Atom, GroundProgram, Program, Rule, Term};
use sckr::frontend::{parse, serialize};
use sckr::reductions::random::{random_sckr, rng, SckrParams};
use sckr::translate::translate;

const PREDS: [&str; 4] = ["p", "q", "r", "s"];
const CONSTS: [&str; 2] = ["a", "b"];

fn x() -> Term {
    Term::var("X")
}

#[derive(Debug, Clone)]
struct RuleSpec {
    head: Option<usize>,
    pos: usize,
    extra: Option<usize>,
    neg: Option<usize>,
}

fn rule_spec() -> impl Strategy<Value = RuleSpec> {
    (
        prop::option::weighted(0.85, 0..PREDS.len()),
        0..PREDS.len(),
        prop::option::of(0..PREDS.len()),
        prop::option::of(0..PREDS.len()),
    )
        .prop_map(|(head, pos, extra, neg)| RuleSpec { head, pos, extra, neg })
}

/// Unary programs over two constants: at most eight atoms, so every subset
/// can be checked.
fn program() -> impl Strategy<Value = Program> {
    (prop::collection::vec((0..PREDS.len(), 0..CONSTS.len()), 0..4), prop::collection::vec(rule_spec(), 0..6)).prop_map(
        |(facts, rules)| {
            let at = |p: usize, t: Term| Atom::new(PREDS[p], vec![t]);
            let mut prog = Program::default();
            // a domain predicate keeps every rule safe
            for c in CONSTS {
                prog.facts.push(Atom::new("d", vec![Term::str(c)]));
            }
            prog.facts.extend(facts.into_iter().map(|(p, c)| at(p, Term::str(CONSTS[c]))));
            for r in rules {
                let mut pos = vec![Atom::new("d", vec![x()]), at(r.pos, x())];
                pos.extend(r.extra.map(|e| at(e, x())));
                prog.rules.push(Rule {
                    head: r.head.map(|h| at(h, x())),
                    pos,
                    neg: r.neg.into_iter().map(|n| at(n, x())).collect(),
                    neq: vec![],
                });
            }
            prog
        },
    )
}

fn least_model(gp: &GroundProgram, candidate: &BTreeSet<u32>) -> BTreeSet<u32> {
    let mut m = BTreeSet::new();
    loop {
        let before = m.len();
        for r in &gp.rules {
            if r.neg.iter().all(|a| !candidate.contains(a)) && r.pos.iter().all(|a| m.contains(a)) {
                m.insert(r.head);
            }
        }
        if m.len() == before {
            return m;
        }
    }
}

/// Stable models by checking every atom subset against its reduct.
fn brute_force(gp: &GroundProgram) -> BTreeSet<Vec<String>> {
    let n = gp.num_atoms() as u32;
    assert!(n <= 16, "too many atoms for brute force: {n}");
    let mut out = BTreeSet::new();
    for bits in 0u32..(1 << n) {
        let cand: BTreeSet<u32> = (0..n).filter(|i| bits >> i & 1 == 1).collect();
        if least_model(gp, &cand) != cand {
            continue;
        }
        let violated = gp
            .constraints
            .iter()
            .any(|c| c.pos.iter().all(|a| cand.contains(a)) && c.neg.iter().all(|a| !cand.contains(a)));
        if !violated {
            let mut v: Vec<String> = cand.iter().map(|&a| gp.render(a)).collect();
            v.sort();
            out.insert(v);
        }
    }
    out
}

fn solved(gp: &GroundProgram) -> BTreeSet<Vec<String>> {
    answer_sets(gp, 1 << 16).unwrap().iter().map(|m| render_model(gp, m)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solver_matches_brute_force(p in program()) {
        let gp = ground(&p).unwrap();
        prop_assert_eq!(solved(&gp), brute_force(&gp));
    }

    #[test]
    fn grounders_agree(p in program()) {
        let smart = ground(&p).unwrap();
        let naive = ground_naive(&p).unwrap();
        prop_assert_eq!(solved(&smart), solved(&naive));
    }

    #[test]
    fn emitted_programs_parse_back(p in program()) {
        let text = p.emit_text();
        prop_assert_eq!(parse_program(&text).unwrap().emit_text(), text);
    }

    #[test]
    fn repositories_round_trip(seed in any::<u64>()) {
        let k = random_sckr(&mut rng(seed), SckrParams::default());
        let text = serialize(&k);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &k);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn translations_parse_back(seed in any::<u64>()) {
        let k = random_sckr(&mut rng(seed), SckrParams::default());
        let text = translate(&k).unwrap().emit_text();
        let again = parse_program(&text).unwrap();
        prop_assert_eq!(again.emit_text(), text);
    }
}
