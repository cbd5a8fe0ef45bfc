//! JSON model reports shared by the program pipeline and the oracle.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::asp::{self, Solution, Term};
use crate::error::{Error, Result};
use crate::frontend::format_axiom;
use crate::kb::{Axiom, Overriding, QueryAtom, Sckr};
use crate::oracle::CasModel;
use crate::translate::decode_ovr;

/// JSON Schema describing [`Report`].
pub const SCHEMA: &str = include_str!("../schema/model-report.schema.json");

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ContextFacts {
    pub concepts: BTreeMap<String, Vec<String>>,
    pub roles: BTreeMap<String, Vec<(String, String)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OverridingReport {
    pub axiom: String,
    pub home: String,
    pub at: String,
    pub tuple: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModelReport {
    pub facts_by_context: BTreeMap<String, ContextFacts>,
    pub overridings: Vec<OverridingReport>,
    /// violations per weak-constraint level, keyed by the level as text
    pub cost: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub models: Vec<ModelReport>,
    pub count: usize,
}

impl Report {
    fn new(mut models: Vec<ModelReport>) -> Self {
        models.sort();
        Report { count: models.len(), models }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn add_fact(map: &mut BTreeMap<String, ContextFacts>, f: &QueryAtom) {
    match f {
        QueryAtom::Concept { concept, ind, ctx } => {
            map.entry(ctx.clone()).or_default().concepts.entry(concept.clone()).or_default().push(ind.clone())
        }
        QueryAtom::Role { role, subj, obj, ctx } => map
            .entry(ctx.clone())
            .or_default()
            .roles
            .entry(role.clone())
            .or_default()
            .push((subj.clone(), obj.clone())),
    }
}

fn finish(mut facts: BTreeMap<String, ContextFacts>, ovr: &[Overriding], cost: BTreeMap<String, i64>) -> ModelReport {
    for cf in facts.values_mut() {
        cf.concepts.values_mut().for_each(|v| v.sort());
        cf.roles.values_mut().for_each(|v| v.sort());
    }
    let mut overridings: Vec<OverridingReport> = ovr
        .iter()
        .map(|o| OverridingReport {
            axiom: format_axiom(&o.axiom),
            home: o.home.clone(),
            at: o.at.clone(),
            tuple: o.tuple.clone(),
        })
        .collect();
    overridings.sort();
    ModelReport { facts_by_context: facts, overridings, cost }
}

fn name(t: &Term) -> Option<String> {
    match t {
        Term::Str(s) | Term::Const(s) => Some(s.clone()),
        _ => None,
    }
}

/// Report for the answer sets of a solved translation.
pub fn from_solution(sol: &Solution) -> Report {
    let models = sol
        .models
        .iter()
        .map(|m| {
            let mut facts = BTreeMap::new();
            let mut ovr = Vec::new();
            let main = Term::cst("main");
            for &id in &m.atoms {
                let a = sol.ground.atom(id);
                let s: Vec<Option<String>> = a.args.iter().map(name).collect();
                match (a.pred.as_str(), s.as_slice()) {
                    ("instd", [Some(x), Some(c), Some(ctx), _]) if a.args[3] == main => add_fact(
                        &mut facts,
                        &QueryAtom::Concept { concept: c.clone(), ind: x.clone(), ctx: ctx.clone() },
                    ),
                    ("tripled", [Some(x), Some(r), Some(y), Some(ctx), _]) if a.args[4] == main => add_fact(
                        &mut facts,
                        &QueryAtom::Role { role: r.clone(), subj: x.clone(), obj: y.clone(), ctx: ctx.clone() },
                    ),
                    ("ovr", _) => ovr.extend(decode_ovr(&a)),
                    _ => {}
                }
            }
            let cost = asp::cost(&sol.ground, m).into_iter().filter(|(_, v)| *v != 0).map(|(l, v)| (l.to_string(), v)).collect();
            finish(facts, &ovr, cost)
        })
        .collect();
    Report::new(models)
}

/// Report for oracle models; the cost counts exceptions per significance
/// of their home context, as the weak constraints do.
pub fn from_models(k: &Sckr, ms: &[CasModel]) -> Report {
    let models = ms
        .iter()
        .map(|m| {
            let mut facts = BTreeMap::new();
            m.facts.iter().for_each(|f| add_fact(&mut facts, f));
            let mut cost = BTreeMap::new();
            for o in &m.overridings {
                let sig = k.contexts.significance(&o.home).unwrap_or(0);
                *cost.entry(sig.to_string()).or_insert(0) += 1;
            }
            let ovr: Vec<Overriding> = m.overridings.iter().cloned().collect();
            finish(facts, &ovr, cost)
        })
        .collect();
    Report::new(models)
}

/// Reads oracle models back from a report. Overridden axioms are matched
/// against the rendered defeasible axioms of `k`.
pub fn to_models(k: &Sckr, r: &Report) -> Result<Vec<CasModel>> {
    let known: BTreeMap<String, &Axiom> =
        k.statements().filter(|(_, s)| s.defeasible).map(|(_, s)| (format_axiom(&s.axiom), &s.axiom)).collect();
    r.models
        .iter()
        .map(|m| {
            let mut facts = BTreeSet::new();
            for (ctx, cf) in &m.facts_by_context {
                for (concept, inds) in &cf.concepts {
                    for ind in inds {
                        facts.insert(QueryAtom::Concept { concept: concept.clone(), ind: ind.clone(), ctx: ctx.clone() });
                    }
                }
                for (role, pairs) in &cf.roles {
                    for (subj, obj) in pairs {
                        facts.insert(QueryAtom::Role {
                            role: role.clone(),
                            subj: subj.clone(),
                            obj: obj.clone(),
                            ctx: ctx.clone(),
                        });
                    }
                }
            }
            let overridings = m
                .overridings
                .iter()
                .map(|o| {
                    let axiom = known
                        .get(&o.axiom)
                        .ok_or_else(|| Error::Query(format!("no defeasible axiom '{}'", o.axiom)))?;
                    Ok(Overriding { axiom: (*axiom).clone(), home: o.home.clone(), at: o.at.clone(), tuple: o.tuple.clone() })
                })
                .collect::<Result<_>>()?;
            Ok(CasModel { overridings, facts })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asp::{solve_optimal, Caps};
    use crate::frontend::parse;
    use crate::oracle::{Mode, Oracle};
    use crate::translate::translate;

    #[test]
    fn pipelines_report_alike() {
        let k = parse(
            "context ctop level 0. context cbot level 1. cbot < ctop.\n\
             module ctop { D(A => B). } module cbot { A(a). -B(a). }",
        )
        .unwrap();
        let a = from_solution(&solve_optimal(&translate(&k).unwrap(), Caps::default()).unwrap());
        let o = Oracle::new(&k, Caps::default()).unwrap();
        let b = from_models(&k, &o.preferred_models(Mode::Global).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.count, 1);
        assert_eq!(a.models[0].overridings[0].axiom, "A => B");
        assert_eq!(a.models[0].cost, BTreeMap::from([("1".to_string(), 1)]));
        let back: Report = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(back, a);
        let ms = to_models(&k, &back).unwrap();
        assert!(ms.iter().all(|m| o.check_model(m)));
    }

    #[test]
    fn schema_lists_report_fields() {
        let s: serde_json::Value = serde_json::from_str(SCHEMA).unwrap();
        assert_eq!(s["required"], serde_json::json!(["models", "count"]));
        let model = &s["$defs"]["model"]["required"];
        assert_eq!(model, &serde_json::json!(["facts_by_context", "overridings", "cost"]));
    }
}
