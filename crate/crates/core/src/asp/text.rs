//! Reader for the program dialect produced by [`Program::emit_text`].

use crate::asp::program::{Atom, Program, Rule, Term, WeakConstraint};
use crate::error::{Error, Result};

struct Reader<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Reader<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.line, self.col, message))
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == b'%' {
                while self.peek().is_some_and(|c| c != b'\n') {
                    self.bump();
                }
            } else if c.is_ascii_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            for _ in 0..s.len() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected '{s}'"))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_' || c == b'\'') {
            self.bump();
        }
        if start == self.pos {
            return self.err("expected an identifier");
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn at_word(&self, w: &str) -> bool {
        let rest = &self.src[self.pos..];
        rest.starts_with(w.as_bytes())
            && !rest.get(w.len()).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
    }

    fn term(&mut self) -> Result<Term> {
        self.skip_ws();
        match self.peek() {
            Some(b'"') => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return self.err("unterminated string"),
                        Some(b'"') => break,
                        Some(b'\\') => match self.bump() {
                            Some(b'n') => s.push('\n'),
                            Some(c) => s.push(c as char),
                            None => return self.err("unterminated string"),
                        },
                        Some(c) => {
                            // re-decode multi-byte sequences
                            let start = self.pos - 1;
                            let mut end = self.pos;
                            if c >= 0x80 {
                                while self.peek().is_some_and(|b| (b & 0xC0) == 0x80) {
                                    self.bump();
                                    end = self.pos;
                                }
                            }
                            s.push_str(&String::from_utf8_lossy(&self.src[start..end]));
                        }
                    }
                }
                Ok(Term::Str(s))
            }
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let start = self.pos;
                self.bump();
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
                let s = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                match s.parse() {
                    Ok(n) => Ok(Term::Int(n)),
                    Err(_) => self.err(format!("bad integer '{s}'")),
                }
            }
            Some(c) if c.is_ascii_uppercase() || c == b'_' => Ok(Term::Var(self.ident()?)),
            Some(c) if c.is_ascii_lowercase() => {
                let name = self.ident()?;
                if self.peek() == Some(b'(') {
                    Ok(Term::Func(name, self.arg_list()?))
                } else {
                    Ok(Term::Const(name))
                }
            }
            _ => self.err("expected a term"),
        }
    }

    fn arg_list(&mut self) -> Result<Vec<Term>> {
        self.expect("(")?;
        let mut args = vec![self.term()?];
        while self.eat(",") {
            args.push(self.term()?);
        }
        self.expect(")")?;
        Ok(args)
    }

    fn atom(&mut self) -> Result<Atom> {
        self.skip_ws();
        if !self.peek().is_some_and(|c| c.is_ascii_lowercase()) {
            return self.err("expected a predicate name");
        }
        let pred = self.ident()?;
        let args = if self.peek() == Some(b'(') { self.arg_list()? } else { Vec::new() };
        Ok(Atom { pred, args })
    }

    fn body(&mut self, rule: &mut Rule) -> Result<()> {
        loop {
            self.skip_ws();
            if self.at_word("not") {
                self.eat("not");
                rule.neg.push(self.atom()?);
            } else {
                let save = (self.pos, self.line, self.col);
                let first = self.term()?;
                if self.eat("!=") {
                    let rhs = self.term()?;
                    rule.neq.push((first, rhs));
                } else {
                    (self.pos, self.line, self.col) = save;
                    rule.pos.push(self.atom()?);
                }
            }
            if !self.eat(",") {
                return Ok(());
            }
        }
    }

    fn program(&mut self) -> Result<Program> {
        let mut p = Program::default();
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(p);
            }
            let (line, col) = (self.line, self.col);
            if self.eat(":~") {
                let mut r = Rule::default();
                self.body(&mut r)?;
                if !r.neg.is_empty() || !r.neq.is_empty() {
                    return self.err("weak constraint bodies must be positive");
                }
                self.expect(".")?;
                self.expect("[")?;
                let weight = match self.term()? {
                    Term::Int(n) => n,
                    _ => return self.err("weight must be an integer"),
                };
                self.expect("@")?;
                let level = self.term()?;
                let mut terms = Vec::new();
                while self.eat(",") {
                    terms.push(self.term()?);
                }
                self.expect("]")?;
                let w = WeakConstraint { body: r.pos, weight, level, terms };
                let check = Rule {
                    head: Some(Atom::new("w", std::iter::once(w.level.clone()).chain(w.terms.clone()).collect())),
                    pos: w.body.clone(),
                    ..Default::default()
                };
                if let Some(v) = check.unsafe_vars().first() {
                    return Err(Error::parse(line, col, format!("unsafe variable {v} in weak constraint")));
                }
                p.weak.push(w);
                continue;
            }
            let mut r = Rule::default();
            if self.eat(":-") {
                self.body(&mut r)?;
            } else {
                r.head = Some(self.atom()?);
                if self.eat(":-") {
                    self.body(&mut r)?;
                }
            }
            self.expect(".")?;
            if let Some(v) = r.unsafe_vars().first() {
                return Err(Error::parse(line, col, format!("unsafe variable {v}")));
            }
            let is_fact = r.pos.is_empty() && r.neg.is_empty() && r.neq.is_empty();
            match (is_fact, r.head.take()) {
                (true, Some(h)) => p.facts.push(h),
                (_, head) => {
                    r.head = head;
                    p.rules.push(r);
                }
            }
        }
    }
}

/// Reads a program written in the emitted dialect: facts, normal rules,
/// constraints, `!=` comparisons and weak constraints.
pub fn parse_program(text: &str) -> Result<Program> {
    Reader { src: text.as_bytes(), pos: 0, line: 1, col: 1 }.program()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_all_statement_forms() {
        let text = "p(\"a\",main,3).\nq(X) :- p(X,Y,Z), X != Y, not r(f(X)).\n:- q(X), not s.\n:~ q(X). [1@2,X]\n";
        let p = parse_program(text).unwrap();
        assert_eq!(p.facts.len(), 1);
        assert_eq!(p.rules.len(), 2);
        assert_eq!(p.weak.len(), 1);
        assert_eq!(p.emit_text(), text);
    }

    #[test]
    fn rejects_unsafe_rules() {
        assert!(parse_program("p(X) :- not q(X).").is_err());
        assert!(parse_program("p(X).").is_err());
    }

    #[test]
    fn reports_position() {
        let Err(Error::Parse { line, .. }) = parse_program("p.\nq :- .") else { panic!() };
        assert_eq!(line, 2);
    }
}
