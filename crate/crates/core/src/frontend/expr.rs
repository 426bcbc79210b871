//! Prefix Boolean expressions: `expr := name | '(' op expr+ ')'` with
//! `op` one of `+ * - !`. Commas count as whitespace.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CsgExpr {
    Leaf(String),
    Union(Vec<CsgExpr>),
    Intersect(Vec<CsgExpr>),
    /// First argument minus all the others.
    Diff(Vec<CsgExpr>),
    Complement(Box<CsgExpr>),
}

impl CsgExpr {
    pub fn leaf(name: &str) -> Self {
        CsgExpr::Leaf(name.to_string())
    }

    /// Leaf names in order of first appearance.
    pub fn names(&self) -> Vec<String> {
        fn walk(e: &CsgExpr, out: &mut Vec<String>) {
            match e {
                CsgExpr::Leaf(n) => {
                    if !out.contains(n) {
                        out.push(n.clone());
                    }
                }
                CsgExpr::Union(a) | CsgExpr::Intersect(a) | CsgExpr::Diff(a) => {
                    a.iter().for_each(|x| walk(x, out))
                }
                CsgExpr::Complement(x) => walk(x, out),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Replaces leaves bound in `defs`.
    pub fn substitute(&self, defs: &HashMap<String, CsgExpr>) -> CsgExpr {
        let all = |a: &[CsgExpr]| a.iter().map(|x| x.substitute(defs)).collect();
        match self {
            CsgExpr::Leaf(n) => defs.get(n).cloned().unwrap_or_else(|| self.clone()),
            CsgExpr::Union(a) => CsgExpr::Union(all(a)),
            CsgExpr::Intersect(a) => CsgExpr::Intersect(all(a)),
            CsgExpr::Diff(a) => CsgExpr::Diff(all(a)),
            CsgExpr::Complement(x) => CsgExpr::Complement(Box::new(x.substitute(defs))),
        }
    }
}

impl fmt::Display for CsgExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (op, args): (&str, &[CsgExpr]) = match self {
            CsgExpr::Leaf(n) => return f.write_str(n),
            CsgExpr::Complement(x) => return write!(f, "(! {x})"),
            CsgExpr::Union(a) => ("+", a),
            CsgExpr::Intersect(a) => ("*", a),
            CsgExpr::Diff(a) => ("-", a),
        };
        write!(f, "({op}")?;
        for a in args {
            write!(f, " {a}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Eq,
    Op(char),
    Name(&'a str),
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok<'_>)>> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some((i, c)) = it.next() {
        let tok = match c {
            c if c.is_whitespace() || c == ',' => continue,
            '(' => Tok::Open,
            ')' => Tok::Close,
            '=' => Tok::Eq,
            '+' | '*' | '-' | '!' => Tok::Op(c),
            c if is_name_start(c) => {
                let mut end = i + c.len_utf8();
                while let Some(&(j, d)) = it.peek() {
                    if !is_name_char(d) {
                        break;
                    }
                    end = j + d.len_utf8();
                    it.next();
                }
                Tok::Name(&text[i..end])
            }
            c => return Err(Error::Parse { offset: i, message: format!("unexpected character `{c}`") }),
        };
        out.push((i, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset, message: message.into() })
    }

    fn peek(&self) -> Option<&Tok<'a>> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn expr(&mut self) -> Result<CsgExpr> {
        let at = self.offset();
        match self.toks.get(self.pos).map(|t| t.1.clone()) {
            None => self.err(at, "expected an expression"),
            Some(Tok::Name(n)) => {
                self.pos += 1;
                Ok(CsgExpr::leaf(n))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let op_at = self.offset();
                let op = match self.peek() {
                    Some(Tok::Op(c)) => *c,
                    None => return self.err(op_at, "unbalanced parenthesis"),
                    _ => return self.err(op_at, "expected an operator"),
                };
                self.pos += 1;
                let mut args = Vec::new();
                loop {
                    match self.peek() {
                        Some(Tok::Close) => break,
                        None => return self.err(self.end, "unbalanced parenthesis"),
                        _ => args.push(self.expr()?),
                    }
                }
                self.pos += 1;
                match (op, args.len()) {
                    (_, 0) => self.err(op_at, format!("operator `{op}` needs arguments")),
                    ('-' | '!', 1) => Ok(CsgExpr::Complement(Box::new(args.pop().unwrap()))),
                    ('!', _) => self.err(op_at, "`!` takes one argument"),
                    ('+' | '*', 1) => self.err(op_at, format!("`{op}` needs at least two arguments")),
                    ('+', _) => Ok(CsgExpr::Union(args)),
                    ('*', _) => Ok(CsgExpr::Intersect(args)),
                    _ => Ok(CsgExpr::Diff(args)),
                }
            }
            Some(Tok::Close) => self.err(at, "unbalanced parenthesis"),
            Some(_) => self.err(at, "expected a name or `(`"),
        }
    }
}

/// Parses a single expression.
pub fn parse_csg(text: &str) -> Result<CsgExpr> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0, end: text.len() };
    if p.toks.is_empty() {
        return p.err(0, "empty expression");
    }
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err(p.offset(), "trailing input after expression");
    }
    Ok(e)
}

/// Parses `let NAME = expr` definitions followed by one expression, and
/// substitutes the definitions into it.
pub fn parse_program(text: &str) -> Result<CsgExpr> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0, end: text.len() };
    let mut defs: HashMap<String, CsgExpr> = HashMap::new();
    while p.peek() == Some(&Tok::Name("let")) {
        p.pos += 1;
        let at = p.offset();
        let Some(Tok::Name(name)) = p.peek().cloned() else {
            return p.err(at, "expected a name after `let`");
        };
        p.pos += 1;
        if p.peek() != Some(&Tok::Eq) {
            return p.err(p.offset(), "expected `=`");
        }
        p.pos += 1;
        let e = p.expr()?.substitute(&defs);
        defs.insert(name.to_string(), e);
    }
    if p.pos == p.toks.len() {
        return p.err(p.end, "empty expression");
    }
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err(p.offset(), "trailing input after expression");
    }
    Ok(e.substitute(&defs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use CsgExpr::*;

    fn l(n: &str) -> CsgExpr {
        CsgExpr::leaf(n)
    }

    #[test]
    fn nested_prefix_form() {
        let e = parse_csg("(- (* Y Z) (+ X1 X2 X3))").unwrap();
        assert_eq!(e, Diff(vec![Intersect(vec![l("Y"), l("Z")]), Union(vec![l("X1"), l("X2"), l("X3")])]));
        assert_eq!(parse_csg(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn commas_and_leaf() {
        assert_eq!(parse_csg("A").unwrap(), l("A"));
        assert_eq!(parse_csg("(+,A,B)").unwrap(), Union(vec![l("A"), l("B")]));
    }

    #[test]
    fn unary_forms_are_complement() {
        let c = Complement(Box::new(l("A")));
        assert_eq!(parse_csg("(- A)").unwrap(), c);
        assert_eq!(parse_csg("(! A)").unwrap(), c);
        assert_eq!(c.to_string(), "(! A)");
    }

    #[test]
    fn error_offsets() {
        let bad = |s: &str| match parse_csg(s) {
            Err(Error::Parse { offset, .. }) => offset,
            r => panic!("{s:?} gave {r:?}"),
        };
        assert_eq!(bad("(+ A (¡bad))"), 6);
        assert_eq!(bad("(+ A B"), 6);
        assert_eq!(bad("(+ A)"), 1);
        assert_eq!(bad("(/ A B)"), 1);
        assert_eq!(bad("(! A B)"), 1);
        assert_eq!(bad(""), 0);
        assert_eq!(bad("A B"), 2);
        assert_eq!(bad(")"), 0);
    }

    #[test]
    fn let_bindings_substitute() {
        let e = parse_program("let U = (+ A B)\nlet V = (* U C)\n(- V A)").unwrap();
        assert_eq!(e, Diff(vec![Intersect(vec![Union(vec![l("A"), l("B")]), l("C")]), l("A")]));
        assert_eq!(e.names(), vec!["A", "B", "C"]);
        assert!(parse_program("let U = A").is_err());
    }
}
