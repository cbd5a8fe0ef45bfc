//! Three-literal CNF instances, DIMACS input and brute-force evaluation.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Largest variable count the brute-force evaluators accept by default.
pub const DEFAULT_MAX_VARS: usize = 20;

/// A CNF whose clauses have exactly three (possibly repeated) literals.
/// Literal `v` is variable `v` (1-based), `-v` its negation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfInstance {
    pub vars: usize,
    pub clauses: Vec<[i32; 3]>,
}

impl CnfInstance {
    pub fn new(vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        for c in &clauses {
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > vars {
                    return Err(Error::Precondition(format!("literal {l} out of range 1..={vars}")));
                }
            }
        }
        Ok(CnfInstance { vars, clauses })
    }

    /// Every clause is all positive or all negative.
    pub fn is_monotone(&self) -> bool {
        self.clauses.iter().all(|c| c.iter().all(|&l| l > 0) || c.iter().all(|&l| l < 0))
    }

    pub fn require_monotone(&self) -> Result<()> {
        match self.clauses.iter().find(|c| !(c.iter().all(|&l| l > 0) || c.iter().all(|&l| l < 0))) {
            None => Ok(()),
            Some(c) => Err(Error::Precondition(format!("clause {c:?} mixes positive and negative literals"))),
        }
    }

    /// `assign[i]` is the value of variable `i + 1`.
    pub fn satisfied_by(&self, assign: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| assign[l.unsigned_abs() as usize - 1] == (l > 0)))
    }

    /// All satisfying assignments, lexicographically largest first
    /// (variable 1 most significant, true before false).
    pub fn models(&self, max_vars: usize) -> Result<Vec<Vec<bool>>> {
        if self.vars > max_vars {
            return Err(Error::CapExceeded { what: "variables", limit: max_vars });
        }
        let n = self.vars;
        Ok((0..1u64 << n)
            .rev()
            .map(|bits| (0..n).map(|i| bits >> (n - 1 - i) & 1 == 1).collect::<Vec<_>>())
            .filter(|a| self.satisfied_by(a))
            .collect())
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for c in &self.clauses {
            let _ = writeln!(s, "{} {} {} 0", c[0], c[1], c[2]);
        }
        s
    }
}

/// The lexicographically largest satisfying assignment, `None` if `e` is
/// unsatisfiable.
pub fn lexmax_assignment(e: &CnfInstance, max_vars: usize) -> Result<Option<Vec<bool>>> {
    Ok(e.models(max_vars)?.into_iter().next())
}

/// Reads DIMACS CNF. Clauses with one or two literals are padded by
/// repeating their last literal.
pub fn parse_dimacs(text: &str) -> Result<CnfInstance> {
    let mut vars = None;
    let mut declared = 0usize;
    let mut clauses = Vec::new();
    let mut cur: Vec<i32> = Vec::new();
    let mut last_line = 0;
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        last_line = ln + 1;
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 || f[1] != "cnf" {
                return Err(Error::parse(ln + 1, 1, "expected 'p cnf <vars> <clauses>'"));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(ln + 1, 1, format!("bad number '{s}'")));
            vars = Some(num(f[2])?);
            declared = num(f[3])?;
            continue;
        }
        let Some(n) = vars else {
            return Err(Error::parse(ln + 1, 1, "clause before the problem line"));
        };
        for tok in line.split_whitespace() {
            let l: i32 = tok.parse().map_err(|_| Error::parse(ln + 1, 1, format!("bad literal '{tok}'")))?;
            if l == 0 {
                let padded = match cur.as_slice() {
                    [a] => [*a, *a, *a],
                    [a, b] => [*a, *b, *b],
                    [a, b, c] => [*a, *b, *c],
                    [] => return Err(Error::parse(ln + 1, 1, "empty clause")),
                    _ => return Err(Error::parse(ln + 1, 1, "clause with more than three literals")),
                };
                clauses.push(padded);
                cur.clear();
            } else if l.unsigned_abs() as usize > n {
                return Err(Error::parse(ln + 1, 1, format!("literal {l} exceeds {n} variables")));
            } else {
                cur.push(l);
            }
        }
    }
    if !cur.is_empty() {
        return Err(Error::parse(last_line, 1, "unterminated clause"));
    }
    let Some(vars) = vars else {
        return Err(Error::parse(1, 1, "missing problem line"));
    };
    if clauses.len() != declared {
        return Err(Error::parse(last_line, 1, format!("{} clauses, header says {declared}", clauses.len())));
    }
    CnfInstance::new(vars, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_padding() {
        let e = parse_dimacs("c x\np cnf 3 3\n1 0\n-1 -2 0\n1 2 3 0\n").unwrap();
        assert_eq!(e.clauses, vec![[1, 1, 1], [-1, -2, -2], [1, 2, 3]]);
        assert!(e.is_monotone());
        assert_eq!(parse_dimacs(&e.to_dimacs()).unwrap(), e);
        assert!(parse_dimacs("p cnf 2 1\n1 -2 0\n").unwrap().require_monotone().is_err());
        assert!(parse_dimacs("p cnf 1 1\n2 0\n").is_err());
        assert!(parse_dimacs("p cnf 4 1\n1 2 3 4 0\n").is_err());
    }

    #[test]
    fn lexmax() {
        let one = |c: Vec<[i32; 3]>, n| CnfInstance::new(n, c).unwrap();
        assert_eq!(lexmax_assignment(&one(vec![[1, 1, 1]], 1), 20).unwrap(), Some(vec![true]));
        assert_eq!(lexmax_assignment(&one(vec![[-1, -1, -1]], 1), 20).unwrap(), Some(vec![false]));
        assert_eq!(lexmax_assignment(&one(vec![[1, 1, 1], [-1, -1, -1]], 1), 20).unwrap(), None);
        let e = one(vec![[1, 2, 2], [-1, -2, -2]], 2);
        assert_eq!(lexmax_assignment(&e, 20).unwrap(), Some(vec![true, false]));
        assert!(lexmax_assignment(&one(vec![], 21), 20).is_err());
    }
}
