//! Splitting of conjunctive inclusions into normal-form axioms.

use crate::error::{Error, Result};
use crate::kb::Axiom;

/// One conjunct on the left of an inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conjunct {
    Atomic(String),
    /// `∃role.(filler_1 ⊓ ... ⊓ filler_k)`
    Exists { role: String, filler: Vec<String> },
}

fn conj_chain(names: &[String], sup: &str, join: &str, out: &mut Vec<Axiom>) -> String {
    let mut acc = names[0].clone();
    for (i, n) in names.iter().enumerate().skip(1) {
        let next = if i + 1 == names.len() { sup.to_string() } else { format!("{acc}{join}{n}") };
        out.push(Axiom::SubConj { left: acc, right: n.clone(), sup: next.clone() });
        acc = next;
    }
    acc
}

/// Normal-form axioms equivalent to `lhs_1 ⊓ ... ⊓ lhs_k ⊑ sup` over the
/// original names. Fresh concept names are built from the operand names, so
/// repeated calls agree.
pub fn normalize_to_rl(lhs: &[Conjunct], sup: &str) -> Result<Vec<Axiom>> {
    if lhs.is_empty() {
        return Err(Error::Precondition("unsupported shape: empty left-hand side".into()));
    }
    let mut out = Vec::new();
    let mut names = Vec::new();
    let single = lhs.len() == 1;
    for c in lhs {
        match c {
            Conjunct::Atomic(a) => names.push(a.clone()),
            Conjunct::Exists { role, filler } => {
                if filler.is_empty() {
                    return Err(Error::Precondition(format!("unsupported shape: empty filler under {role}")));
                }
                let joined = filler.concat();
                let f = if filler.len() == 1 { filler[0].clone() } else { conj_chain(filler, &joined, "", &mut out) };
                let name = if single { sup.to_string() } else { format!("{role}_{f}") };
                out.push(Axiom::SubExists { role: role.clone(), filler: f, sup: name.clone() });
                names.push(name);
            }
        }
    }
    if single {
        if let Conjunct::Atomic(a) = &lhs[0] {
            out.push(Axiom::SubClass { sub: a.clone(), sup: sup.to_string() });
        }
    } else {
        conj_chain(&names, sup, "_", &mut out);
    }
    let mut seen = std::collections::BTreeSet::new();
    out.retain(|a| seen.insert(a.clone()));
    Ok(out)
}

/// `⊓_j ∃roles_j.(left ⊓ right) ⊑ ⊥`, the clause-violation shape.
pub fn clause_axioms(roles: &[&str], left: &str, right: &str) -> Result<Vec<Axiom>> {
    let lhs: Vec<Conjunct> = roles
        .iter()
        .map(|r| Conjunct::Exists { role: r.to_string(), filler: vec![left.to_string(), right.to_string()] })
        .collect();
    normalize_to_rl(&lhs, crate::kb::BOT)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::BOT;

    fn fresh(axs: &[Axiom], given: &[&str]) -> std::collections::BTreeSet<String> {
        axs.iter()
            .flat_map(|a| a.names())
            .filter(|(k, _)| *k == crate::kb::NameKind::Concept)
            .map(|(_, n)| n.to_string())
            .filter(|n| !given.contains(&n.as_str()) && n != BOT)
            .collect()
    }

    #[test]
    fn clause_shape() {
        let axs = clause_axioms(&["N1", "N2", "N3"], "T", "A").unwrap();
        assert_eq!(axs.len(), 6);
        assert_eq!(fresh(&axs, &["T", "A"]).len(), 5);
        assert_eq!(axs, clause_axioms(&["N1", "N2", "N3"], "T", "A").unwrap());
        let one = clause_axioms(&["P"], "F", "A").unwrap();
        assert_eq!(
            one,
            vec![
                Axiom::SubConj { left: "F".into(), right: "A".into(), sup: "FA".into() },
                Axiom::SubExists { role: "P".into(), filler: "FA".into(), sup: BOT.into() },
            ]
        );
    }

    #[test]
    fn mixed_and_errors() {
        let lhs = [Conjunct::Atomic("T".into()), Conjunct::Exists { role: "C".into(), filler: vec!["F".into()] }];
        let axs = normalize_to_rl(&lhs, "Y").unwrap();
        assert_eq!(
            axs,
            vec![
                Axiom::SubExists { role: "C".into(), filler: "F".into(), sup: "C_F".into() },
                Axiom::SubConj { left: "T".into(), right: "C_F".into(), sup: "Y".into() },
            ]
        );
        assert!(normalize_to_rl(&[], "Y").is_err());
        assert!(normalize_to_rl(&[Conjunct::Exists { role: "R".into(), filler: vec![] }], "Y").is_err());
    }
}
