//! The `.ckr` surface syntax: parser, serializer and query syntax.
//!
//! ```text
//! context ctop level 0.
//! context cbot level 1.
//! cbot < ctop.
//! module ctop { D(A => B). }
//! module cbot { A(a). -B(a). }
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::kb::{Axiom, NameKind, QueryAtom, Sckr, Statement, BOT, TOP};

/// Words that cannot be used as names.
pub const RESERVED: &[&str] = &[
    "context", "level", "module", "and", "some", "only", "max1", "o", "D", "Dis", "Inv", "Irr", "eval", "evalr",
    "Top", "Bot",
];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Var(String),
    Int(u32),
    Dot,
    LParen,
    RParen,
    Comma,
    LBrace,
    RBrace,
    Lt,
    Eq,
    Neq,
    Arrow,
    ArrowR,
    Minus,
    At,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Var(s) => format!("'?{s}'"),
            Tok::Int(n) => format!("'{n}'"),
            Tok::Dot => "'.'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::Lt => "'<'".into(),
            Tok::Eq => "'='".into(),
            Tok::Neq => "'!='".into(),
            Tok::Arrow => "'=>'".into(),
            Tok::ArrowR => "'=>r'".into(),
            Tok::Minus => "'-'".into(),
            Tok::At => "'@'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut bump = |n: usize, i: &mut usize| {
            *i += n;
            col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                bump(1, &mut i);
                continue;
            }
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            _ => {}
        }
        let tok = match c {
            '.' => {
                bump(1, &mut i);
                Tok::Dot
            }
            '(' => {
                bump(1, &mut i);
                Tok::LParen
            }
            ')' => {
                bump(1, &mut i);
                Tok::RParen
            }
            ',' => {
                bump(1, &mut i);
                Tok::Comma
            }
            '{' => {
                bump(1, &mut i);
                Tok::LBrace
            }
            '}' => {
                bump(1, &mut i);
                Tok::RBrace
            }
            '<' => {
                bump(1, &mut i);
                Tok::Lt
            }
            '-' => {
                bump(1, &mut i);
                Tok::Minus
            }
            '@' => {
                bump(1, &mut i);
                Tok::At
            }
            '!' if chars.get(i + 1) == Some(&'=') => {
                bump(2, &mut i);
                Tok::Neq
            }
            '=' if chars.get(i + 1) == Some(&'>') => {
                let role = chars.get(i + 2) == Some(&'r') && !chars.get(i + 3).copied().is_some_and(is_name_char);
                if role {
                    bump(3, &mut i);
                    Tok::ArrowR
                } else {
                    bump(2, &mut i);
                    Tok::Arrow
                }
            }
            '=' => {
                bump(1, &mut i);
                Tok::Eq
            }
            '?' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && is_name_char(chars[j]) {
                    j += 1;
                }
                if j == start {
                    return Err(Error::parse(l0, c0, "expected a variable name after '?'"));
                }
                let name: String = chars[start..j].iter().collect();
                bump(j - i, &mut i);
                Tok::Var(name)
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j < chars.len() && is_name_char(chars[j]) {
                    while j < chars.len() && is_name_char(chars[j]) {
                        j += 1;
                    }
                    let name: String = chars[i..j].iter().collect();
                    bump(j - i, &mut i);
                    Tok::Ident(name)
                } else {
                    let digits: String = chars[i..j].iter().collect();
                    let n = digits
                        .parse::<u32>()
                        .map_err(|_| Error::parse(l0, c0, format!("integer '{digits}' out of range")))?;
                    bump(j - i, &mut i);
                    Tok::Int(n)
                }
            }
            c if is_name_char(c) => {
                let mut j = i;
                while j < chars.len() && is_name_char(chars[j]) {
                    j += 1;
                }
                let name: String = chars[i..j].iter().collect();
                bump(j - i, &mut i);
                Tok::Ident(name)
            }
            other => return Err(Error::parse(l0, c0, format!("unexpected character '{other}'"))),
        };
        out.push(Spanned { tok, line: l0, col: c0 });
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    kinds: BTreeMap<String, NameKind>,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser { toks: lex(text)?, pos: 0, kinds: BTreeMap::new() })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, n: usize) -> &Tok {
        let i = (self.pos + n).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(Error::parse(l, c, message))
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.next();
            Ok(())
        } else {
            self.err(format!("expected {}, found {}", want.describe(), self.peek().describe()))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        if self.is_kw(kw) {
            self.next();
            Ok(())
        } else {
            self.err(format!("expected '{kw}', found {}", self.peek().describe()))
        }
    }

    /// A name in a position that fixes its sort.
    fn name(&mut self, kind: NameKind) -> Result<String> {
        let (l, c) = self.here();
        let Tok::Ident(s) = self.peek().clone() else {
            return self.err(format!("expected a {kind} name, found {}", self.peek().describe()));
        };
        if RESERVED.contains(&s.as_str()) {
            return self.err(format!("'{s}' is a reserved word"));
        }
        if (s == TOP || s == BOT) && kind != NameKind::Concept {
            return self.err(format!("'{s}' is reserved for the built-in concept"));
        }
        match self.kinds.get(&s) {
            Some(k) if *k != kind => {
                return Err(Error::parse(l, c, format!("name '{s}' used as {kind} but already used as {k}")));
            }
            Some(_) => {}
            None => {
                self.kinds.insert(s.clone(), kind);
            }
        }
        self.next();
        Ok(s)
    }

    fn document(&mut self) -> Result<Sckr> {
        let mut k = Sckr::new();
        let mut pending_covers = Vec::new();
        let mut pending_modules = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::Eof => break,
                Tok::Ident(s) if s == "context" => {
                    self.next();
                    let pos = self.here();
                    let name = self.name(NameKind::Context)?;
                    self.keyword("level")?;
                    let Tok::Int(level) = self.next() else {
                        return self.err("expected an integer level");
                    };
                    self.expect(Tok::Dot)?;
                    if k.contexts.contains(&name) {
                        return Err(Error::parse(pos.0, pos.1, format!("context '{name}' declared twice")));
                    }
                    k.add_context(name, level);
                }
                Tok::Ident(s) if s == "module" => {
                    self.next();
                    let pos = self.here();
                    let name = self.name(NameKind::Context)?;
                    pending_modules.push((pos, name.clone()));
                    self.expect(Tok::LBrace)?;
                    while *self.peek() != Tok::RBrace {
                        if *self.peek() == Tok::Eof {
                            return self.err("unterminated module");
                        }
                        let st = self.statement()?;
                        k.add_statement(name.clone(), st);
                    }
                    self.next();
                    k.modules.entry(name).or_default();
                }
                Tok::Ident(_) => {
                    let pos = self.here();
                    let lower = self.name(NameKind::Context)?;
                    self.expect(Tok::Lt)?;
                    let upper = self.name(NameKind::Context)?;
                    self.expect(Tok::Dot)?;
                    pending_covers.push((pos, lower, upper));
                }
                other => return self.err(format!("unexpected {}", other.describe())),
            }
        }
        for ((l, c), lower, upper) in pending_covers {
            for n in [&lower, &upper] {
                if !k.contexts.contains(n) {
                    return Err(Error::parse(l, c, format!("undeclared context '{n}'")));
                }
            }
            let (lv, uv) = (k.contexts.levels[&lower], k.contexts.levels[&upper]);
            if lv <= uv {
                return Err(Error::parse(
                    l,
                    c,
                    format!("'{lower}' (level {lv}) must have a larger level than '{upper}' (level {uv})"),
                ));
            }
            k.add_cover(lower, upper);
        }
        for ((l, c), name) in pending_modules {
            if !k.contexts.contains(&name) {
                return Err(Error::parse(l, c, format!("module for undeclared context '{name}'")));
            }
        }
        // remove empty modules so parse(serialize(k)) is stable
        k.modules.retain(|_, v| !v.is_empty());
        k.validate()?;
        Ok(k)
    }

    fn statement(&mut self) -> Result<Statement> {
        let pos = self.here();
        let defeasible = self.is_kw("D") && *self.peek_at(1) == Tok::LParen;
        let axiom = if defeasible {
            self.next();
            self.next();
            let a = self.axiom()?;
            self.expect(Tok::RParen)?;
            a
        } else {
            self.axiom()?
        };
        self.expect(Tok::Dot)?;
        if defeasible && !axiom.may_be_defeasible() {
            return Err(Error::parse(
                pos.0,
                pos.1,
                format!("axiom of shape '{}' cannot be defeasible", axiom.shape()),
            ));
        }
        Ok(Statement { axiom, defeasible })
    }

    fn args(&mut self, kinds: &[NameKind]) -> Result<Vec<String>> {
        self.expect(Tok::LParen)?;
        let mut out = Vec::new();
        for (i, k) in kinds.iter().enumerate() {
            if i > 0 {
                self.expect(Tok::Comma)?;
            }
            out.push(self.name(*k)?);
        }
        self.expect(Tok::RParen)?;
        Ok(out)
    }

    /// `NAME(a)` or `NAME(a,b)`; the arity decides the sort of `NAME`.
    fn assertion(&mut self) -> Result<(String, String, Option<String>)> {
        let binary = *self.peek_at(3) == Tok::Comma;
        let head = self.name(if binary { NameKind::Role } else { NameKind::Concept })?;
        if binary {
            let a = self.args(&[NameKind::Individual, NameKind::Individual])?;
            Ok((head, a[0].clone(), Some(a[1].clone())))
        } else {
            let a = self.args(&[NameKind::Individual])?;
            Ok((head, a[0].clone(), None))
        }
    }

    fn axiom(&mut self) -> Result<Axiom> {
        use NameKind::*;
        match self.peek().clone() {
            Tok::Minus => {
                self.next();
                Ok(match self.assertion()? {
                    (concept, ind, None) => Axiom::NegConceptAssertion { concept, ind },
                    (role, subj, Some(obj)) => Axiom::NegRoleAssertion { role, subj, obj },
                })
            }
            Tok::LBrace => {
                self.next();
                let ind = self.name(Individual)?;
                self.expect(Tok::RBrace)?;
                self.expect(Tok::Arrow)?;
                let sup = self.name(Concept)?;
                Ok(Axiom::Nominal { ind, sup })
            }
            Tok::Ident(kw) if *self.peek_at(1) == Tok::LParen && RESERVED.contains(&kw.as_str()) => {
                self.next();
                match kw.as_str() {
                    "Dis" | "Inv" => {
                        let a = self.args_after_open(&[Role, Role])?;
                        let (left, right) = (a[0].clone(), a[1].clone());
                        Ok(if kw == "Dis" {
                            Axiom::DisjointRoles { left, right }
                        } else {
                            Axiom::InverseRoles { left, right }
                        })
                    }
                    "Irr" => {
                        let a = self.args_after_open(&[Role])?;
                        Ok(Axiom::Irreflexive { role: a[0].clone() })
                    }
                    "Top" | "Bot" => {
                        let a = self.args_after_open(&[Individual])?;
                        let ind = a[0].clone();
                        Ok(if kw == "Top" { Axiom::TopAssertion { ind } } else { Axiom::BotAssertion { ind } })
                    }
                    "eval" => {
                        let a = self.args_after_open(&[Concept, Context])?;
                        self.expect(Tok::Arrow)?;
                        let sup = self.name(Concept)?;
                        Ok(Axiom::EvalConcept { concept: a[0].clone(), ctx: a[1].clone(), sup })
                    }
                    "evalr" => {
                        let a = self.args_after_open(&[Role, Context])?;
                        self.expect(Tok::ArrowR)?;
                        let sup = self.name(Role)?;
                        Ok(Axiom::EvalRole { role: a[0].clone(), ctx: a[1].clone(), sup })
                    }
                    "D" => self.err("nested 'D(' is not allowed"),
                    _ => self.err(format!("'{kw}' is a reserved word")),
                }
            }
            Tok::Ident(_) => self.axiom_from_name(),
            other => self.err(format!("expected an axiom, found {}", other.describe())),
        }
    }

    fn args_after_open(&mut self, kinds: &[NameKind]) -> Result<Vec<String>> {
        // the caller consumed the keyword; `args` consumes the parenthesis
        self.args(kinds)
    }

    fn axiom_from_name(&mut self) -> Result<Axiom> {
        use NameKind::*;
        match self.peek_at(1).clone() {
            Tok::LParen => Ok(match self.assertion()? {
                (concept, ind, None) => Axiom::ConceptAssertion { concept, ind },
                (role, subj, Some(obj)) => Axiom::RoleAssertion { role, subj, obj },
            }),
            Tok::Eq => {
                let left = self.name(Individual)?;
                self.next();
                let right = self.name(Individual)?;
                Ok(Axiom::Equal { left, right })
            }
            Tok::Neq => {
                let left = self.name(Individual)?;
                self.next();
                let right = self.name(Individual)?;
                Ok(Axiom::NotEqual { left, right })
            }
            Tok::ArrowR => {
                let sub = self.name(Role)?;
                self.next();
                let sup = self.name(Role)?;
                Ok(Axiom::SubRole { sub, sup })
            }
            Tok::Ident(w) if w == "and" => {
                let left = self.name(Concept)?;
                self.next();
                let right = self.name(Concept)?;
                self.expect(Tok::Arrow)?;
                let sup = self.name(Concept)?;
                Ok(Axiom::SubConj { left, right, sup })
            }
            Tok::Ident(w) if w == "some" => {
                let role = self.name(Role)?;
                self.next();
                let filler = self.name(Concept)?;
                self.expect(Tok::Arrow)?;
                let sup = self.name(Concept)?;
                Ok(Axiom::SubExists { role, filler, sup })
            }
            Tok::Ident(w) if w == "o" => {
                let first = self.name(Role)?;
                self.next();
                let second = self.name(Role)?;
                self.expect(Tok::ArrowR)?;
                let sup = self.name(Role)?;
                Ok(Axiom::RoleChain { first, second, sup })
            }
            Tok::Arrow => {
                let sub = self.name(Concept)?;
                self.next();
                if self.is_kw("max1") {
                    self.next();
                    let role = self.name(Role)?;
                    return Ok(Axiom::SupAtMostOne { sub, role });
                }
                match self.peek_at(1).clone() {
                    Tok::Ident(w) if w == "some" => {
                        let role = self.name(Role)?;
                        self.next();
                        self.expect(Tok::LBrace)?;
                        let ind = self.name(Individual)?;
                        self.expect(Tok::RBrace)?;
                        Ok(Axiom::SupExists { sub, role, ind })
                    }
                    Tok::Ident(w) if w == "only" => {
                        let role = self.name(Role)?;
                        self.next();
                        let filler = self.name(Concept)?;
                        Ok(Axiom::SupForall { sub, role, filler })
                    }
                    _ => {
                        let sup = self.name(Concept)?;
                        Ok(Axiom::SubClass { sub, sup })
                    }
                }
            }
            other => {
                self.next();
                self.err(format!("unexpected {} in axiom", other.describe()))
            }
        }
    }

    fn query(&mut self) -> Result<QueryAtom> {
        let (head, subj, obj) = self.assertion()?;
        self.expect(Tok::At)?;
        let ctx = self.name(NameKind::Context)?;
        Ok(match obj {
            None => QueryAtom::Concept { concept: head, ind: subj, ctx },
            Some(obj) => QueryAtom::Role { role: head, subj, obj, ctx },
        })
    }
}

/// Parses and validates a `.ckr` document.
pub fn parse(text: &str) -> Result<Sckr> {
    Parser::new(text)?.document()
}

/// Parses `A(a)@c` or `R(a,b)@c`.
pub fn parse_query(text: &str) -> Result<QueryAtom> {
    let mut p = Parser::new(text)?;
    let q = p.query()?;
    if *p.peek() != Tok::Eof {
        return p.err(format!("trailing {}", p.peek().describe()));
    }
    Ok(q)
}

/// A term of a conjunctive query.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QTerm {
    Var(String),
    Ind(String),
}

/// One atom of a boolean conjunctive query.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BcqAtom {
    Concept { concept: String, arg: QTerm, ctx: String },
    Role { role: String, subj: QTerm, obj: QTerm, ctx: String },
}

/// Parses a comma separated conjunction such as `A(?x)@c, R(?x,b)@c`.
pub fn parse_bcq(text: &str) -> Result<Vec<BcqAtom>> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    loop {
        let Tok::Ident(head) = p.next() else {
            return p.err("expected a concept or role name");
        };
        p.expect(Tok::LParen)?;
        let mut terms = Vec::new();
        loop {
            match p.next() {
                Tok::Var(v) => terms.push(QTerm::Var(v)),
                Tok::Ident(i) => terms.push(QTerm::Ind(i)),
                _ => return p.err("expected an individual or ?variable"),
            }
            match p.next() {
                Tok::Comma => continue,
                Tok::RParen => break,
                _ => return p.err("expected ',' or ')'"),
            }
        }
        p.expect(Tok::At)?;
        let Tok::Ident(ctx) = p.next() else {
            return p.err("expected a context name");
        };
        let mut terms = terms.into_iter();
        out.push(match (terms.next(), terms.next(), terms.next()) {
            (Some(arg), None, None) => BcqAtom::Concept { concept: head, arg, ctx },
            (Some(subj), Some(obj), None) => BcqAtom::Role { role: head, subj, obj, ctx },
            _ => return p.err("query atoms take one or two arguments"),
        });
        match p.next() {
            Tok::Comma => continue,
            Tok::Eof => break,
            other => return p.err(format!("unexpected {}", other.describe())),
        }
    }
    Ok(out)
}

/// Renders one axiom without the defeasibility wrapper.
pub fn format_axiom(a: &Axiom) -> String {
    match a {
        Axiom::ConceptAssertion { concept, ind } => format!("{concept}({ind})"),
        Axiom::NegConceptAssertion { concept, ind } => format!("-{concept}({ind})"),
        Axiom::RoleAssertion { role, subj, obj } => format!("{role}({subj},{obj})"),
        Axiom::NegRoleAssertion { role, subj, obj } => format!("-{role}({subj},{obj})"),
        Axiom::Equal { left, right } => format!("{left} = {right}"),
        Axiom::NotEqual { left, right } => format!("{left} != {right}"),
        Axiom::Nominal { ind, sup } => format!("{{{ind}}} => {sup}"),
        Axiom::TopAssertion { ind } => format!("Top({ind})"),
        Axiom::BotAssertion { ind } => format!("Bot({ind})"),
        Axiom::SubClass { sub, sup } => format!("{sub} => {sup}"),
        Axiom::SubConj { left, right, sup } => format!("{left} and {right} => {sup}"),
        Axiom::SubExists { role, filler, sup } => format!("{role} some {filler} => {sup}"),
        Axiom::SupExists { sub, role, ind } => format!("{sub} => {role} some {{{ind}}}"),
        Axiom::SupForall { sub, role, filler } => format!("{sub} => {role} only {filler}"),
        Axiom::SupAtMostOne { sub, role } => format!("{sub} => max1 {role}"),
        Axiom::SubRole { sub, sup } => format!("{sub} =>r {sup}"),
        Axiom::RoleChain { first, second, sup } => format!("{first} o {second} =>r {sup}"),
        Axiom::DisjointRoles { left, right } => format!("Dis({left},{right})"),
        Axiom::InverseRoles { left, right } => format!("Inv({left},{right})"),
        Axiom::Irreflexive { role } => format!("Irr({role})"),
        Axiom::EvalConcept { concept, ctx, sup } => format!("eval({concept},{ctx}) => {sup}"),
        Axiom::EvalRole { role, ctx, sup } => format!("evalr({role},{ctx}) =>r {sup}"),
    }
}

pub fn format_statement(s: &Statement) -> String {
    if s.defeasible {
        format!("D({}).", format_axiom(&s.axiom))
    } else {
        format!("{}.", format_axiom(&s.axiom))
    }
}

/// Canonical text: contexts by level then name, cover edges, then one module
/// block per non-empty module.
pub fn serialize(k: &Sckr) -> String {
    let mut ctxs: Vec<(&String, &u32)> = k.contexts.levels.iter().collect();
    ctxs.sort_by_key(|(n, l)| (**l, n.as_str()));
    let mut out = String::new();
    for (name, level) in &ctxs {
        let _ = writeln!(out, "context {name} level {level}.");
    }
    for (lo, up) in &k.contexts.covers {
        let _ = writeln!(out, "{lo} < {up}.");
    }
    for (name, _) in &ctxs {
        let sts = k.module(name);
        if sts.is_empty() {
            continue;
        }
        let _ = writeln!(out, "module {name} {{");
        for s in sts {
            let _ = writeln!(out, "  {}", format_statement(s));
        }
        out.push_str("}\n");
    }
    out
}

/// Non-fatal remarks about a parsed repository.
pub fn warnings(k: &Sckr) -> Vec<String> {
    let mut out = Vec::new();
    for (ctx, st) in k.statements() {
        if let Axiom::Equal { left, right } = &st.axiom {
            out.push(format!(
                "equality {left} = {right} in context '{ctx}' clashes with unique names; the repository has no models"
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const EX1: &str = "context ctop level 0.\ncontext cbot level 1.\ncbot < ctop.\n\
        module ctop { D(A => B). }\nmodule cbot { A(a). -B(a). }\n";

    #[test]
    fn parses_reference_example() {
        let k = parse(EX1).unwrap();
        assert_eq!(k.contexts.levels.len(), 2);
        assert_eq!(k.module("ctop"), &[Statement::defeasible(Axiom::SubClass { sub: "A".into(), sup: "B".into() })]);
        assert_eq!(k.module("cbot").len(), 2);
        let text = serialize(&k);
        assert_eq!(text.matches("D(").count(), 1);
        assert_eq!(parse(&text).unwrap(), k);
    }

    #[test]
    fn every_shape_round_trips() {
        let text = "context c level 0. context d level 1. d < c.\nmodule c {\n\
            A(a). -A(b). R(a,b). -R(b,a). a = b. a != b. {a} => A. Top(a). Bot(b).\n\
            A => B. A and B => C. R some A => B. A => R some {a}. A => R only B. A => max1 R.\n\
            R =>r S. R o S =>r T. Dis(R,S). Inv(R,S). Irr(R). eval(A,d) => B. evalr(R,d) =>r S.\n\
            D(A(a)). D(R(a,b)). D(-A(a)). D(-R(a,b)). D(A => B). D(A and B => C). D(R some A => B).\n\
            D(A => R some {a}). D(A => R only B). D(A => max1 R). D(R =>r S). D(R o S =>r T).\n\
            D(Dis(R,S)). D(Inv(R,S)). D(Irr(R)).\n}\n";
        let k = parse(text).unwrap();
        assert_eq!(k.module("c").len(), 37);
        assert_eq!(parse(&serialize(&k)).unwrap(), k);
    }

    #[test]
    fn empty_document() {
        let k = parse("").unwrap();
        assert!(k.contexts.levels.is_empty());
        assert_eq!(serialize(&k), "");
    }

    #[test]
    fn level_violation_points_at_edge() {
        let err = parse("context a level 0.\ncontext b level 0.\nb < a.\n").unwrap_err();
        let Error::Parse { line, col, .. } = err else { panic!("{err}") };
        assert_eq!((line, col), (3, 1));
    }

    #[test]
    fn defeasible_eval_rejected() {
        let err = parse("context a level 0. context b level 1. b < a. module b { D(eval(A,a) => B). }").unwrap_err();
        assert!(err.to_string().contains("cannot be defeasible"), "{err}");
    }

    #[test]
    fn kind_conflict_rejected() {
        let err = parse("context a level 0. module a { A(x). R(A,x). }").unwrap_err();
        assert!(err.to_string().contains("already used as"), "{err}");
    }

    #[test]
    fn unknown_module_context() {
        assert!(parse("context a level 0. module b { A(x). }").is_err());
    }

    #[test]
    fn queries() {
        assert_eq!(
            parse_query("B(a)@cbot").unwrap(),
            QueryAtom::Concept { concept: "B".into(), ind: "a".into(), ctx: "cbot".into() }
        );
        assert!(matches!(parse_query("R(a,b)@c").unwrap(), QueryAtom::Role { .. }));
        let q = parse_bcq("A(?x)@c, R(?x,b)@c").unwrap();
        assert_eq!(q.len(), 2);
    }

    #[test]
    fn equality_warns() {
        let k = parse("context a level 0. module a { x = y. }").unwrap();
        assert_eq!(warnings(&k).len(), 1);
    }
}
