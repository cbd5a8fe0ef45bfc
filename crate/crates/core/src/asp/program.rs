use std::fmt;

/// A term of a normal program.
///
/// `Str` is a quoted constant, `Const` a bare lowercase constant such as
/// `main`; the two never compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Str(String),
    Const(String),
    Int(i64),
    Var(String),
    Func(String, Vec<Term>),
}

impl Term {
    pub fn str(s: impl Into<String>) -> Self {
        Term::Str(s.into())
    }

    pub fn cst(s: impl Into<String>) -> Self {
        Term::Const(s.into())
    }

    pub fn var(s: impl Into<String>) -> Self {
        Term::Var(s.into())
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Func(_, args) => args.iter().all(Term::is_ground),
            _ => true,
        }
    }

    pub fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::Var(v) => {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
            Term::Func(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            _ => {}
        }
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Str(s) => {
                f.write_str("\"")?;
                for c in s.chars() {
                    match c {
                        '"' => f.write_str("\\\"")?,
                        '\\' => f.write_str("\\\\")?,
                        '\n' => f.write_str("\\n")?,
                        c => write!(f, "{c}")?,
                    }
                }
                f.write_str("\"")
            }
            Term::Const(s) | Term::Var(s) => f.write_str(s),
            Term::Int(n) => write!(f, "{n}"),
            Term::Func(name, args) => {
                f.write_str(name)?;
                write_args(f, args)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: impl Into<String>, args: Vec<Term>) -> Self {
        Atom { pred: pred.into(), args }
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn vars(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.args.iter().for_each(|a| a.collect_vars(&mut out));
        out
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pred)?;
        if self.args.is_empty() {
            Ok(())
        } else {
            write_args(f, &self.args)
        }
    }
}

/// `head :- pos, neq, not neg.`; a missing head makes it a constraint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Rule {
    pub head: Option<Atom>,
    pub pos: Vec<Atom>,
    pub neg: Vec<Atom>,
    pub neq: Vec<(Term, Term)>,
}

impl Rule {
    /// Variables of the head, negative literals and comparisons that the
    /// positive body does not bind.
    pub fn unsafe_vars(&self) -> Vec<String> {
        let mut bound = Vec::new();
        self.pos.iter().for_each(|a| a.args.iter().for_each(|t| t.collect_vars(&mut bound)));
        let mut used = Vec::new();
        if let Some(h) = &self.head {
            h.args.iter().for_each(|t| t.collect_vars(&mut used));
        }
        self.neg.iter().for_each(|a| a.args.iter().for_each(|t| t.collect_vars(&mut used)));
        for (l, r) in &self.neq {
            l.collect_vars(&mut used);
            r.collect_vars(&mut used);
        }
        used.into_iter().filter(|v| !bound.contains(v)).map(str::to_string).collect()
    }
}

fn write_body(f: &mut fmt::Formatter<'_>, pos: &[Atom], neq: &[(Term, Term)], neg: &[Atom]) -> fmt::Result {
    let mut first = true;
    let mut sep = |f: &mut fmt::Formatter<'_>| {
        if first {
            first = false;
            Ok(())
        } else {
            f.write_str(", ")
        }
    };
    for a in pos {
        sep(f)?;
        write!(f, "{a}")?;
    }
    for (l, r) in neq {
        sep(f)?;
        write!(f, "{l} != {r}")?;
    }
    for a in neg {
        sep(f)?;
        write!(f, "not {a}")?;
    }
    Ok(())
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let has_body = !(self.pos.is_empty() && self.neg.is_empty() && self.neq.is_empty());
        match (&self.head, has_body) {
            (Some(h), false) => write!(f, "{h}."),
            (Some(h), true) => {
                write!(f, "{h} :- ")?;
                write_body(f, &self.pos, &self.neq, &self.neg)?;
                f.write_str(".")
            }
            (None, _) => {
                f.write_str(":- ")?;
                write_body(f, &self.pos, &self.neq, &self.neg)?;
                f.write_str(".")
            }
        }
    }
}

/// `:~ body. [weight@level, terms]`. Violations are counted once per
/// distinct ground `(weight, level, terms)` tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeakConstraint {
    pub body: Vec<Atom>,
    pub weight: i64,
    pub level: Term,
    pub terms: Vec<Term>,
}

impl fmt::Display for WeakConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(":~ ")?;
        write_body(f, &self.body, &[], &[])?;
        write!(f, ". [{}@{}", self.weight, self.level)?;
        for t in &self.terms {
            write!(f, ",{t}")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    pub facts: Vec<Atom>,
    pub rules: Vec<Rule>,
    pub weak: Vec<WeakConstraint>,
}

impl Program {
    /// Deterministic text form readable by [`crate::asp::parse_program`].
    pub fn emit_text(&self) -> String {
        let mut out = String::new();
        for a in &self.facts {
            out.push_str(&a.to_string());
            out.push_str(".\n");
        }
        for r in &self.rules {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        for w in &self.weak {
            out.push_str(&w.to_string());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        let r = Rule {
            head: Some(Atom::new("p", vec![Term::var("X")])),
            pos: vec![Atom::new("q", vec![Term::var("X"), Term::str("a b")])],
            neg: vec![Atom::new("r", vec![Term::Func("f".into(), vec![Term::var("X")])])],
            neq: vec![(Term::var("X"), Term::cst("main"))],
        };
        assert_eq!(r.to_string(), "p(X) :- q(X,\"a b\"), X != main, not r(f(X)).");
        let w = WeakConstraint {
            body: vec![Atom::new("o", vec![Term::var("N")])],
            weight: 1,
            level: Term::var("N"),
            terms: vec![Term::cst("o")],
        };
        assert_eq!(w.to_string(), ":~ o(N). [1@N,o]");
        assert!(Rule { head: None, pos: vec![Atom::new("u", vec![])], ..Default::default() }.unsafe_vars().is_empty());
    }
}
