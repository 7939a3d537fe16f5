//! Word templates with integer parameters.
//!
//! ```text
//! a{i+1}             indexed generator name
//! (W)^6  (W)^{g-1}   powers; (W)^-{expr} for negative computed exponents
//! [W ; k=1..g-1]     concatenation over an ascending range (empty if lo > hi)
//! [W ; k=g-1 downto 3]
//! $a7                placeholder replaced by a supplied word
//! ```
//! Expansion yields text in the ordinary word grammar.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("template syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("division {0}/{1} is not exact")]
    InexactDivision(i64, i64),
    #[error("negative index {0}")]
    NegativeIndex(i64),
    #[error("no value for placeholder `${0}`")]
    MissingPlaceholder(String),
}

pub type Env = BTreeMap<String, i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Expr {
    Num(i64),
    Var(String),
    Bin(Box<Expr>, char, Box<Expr>),
    Neg(Box<Expr>),
}

impl Expr {
    fn eval(&self, env: &Env) -> Result<i64, TemplateError> {
        Ok(match self {
            Expr::Num(n) => *n,
            Expr::Var(v) => *env.get(v).ok_or_else(|| TemplateError::UnboundVariable(v.clone()))?,
            Expr::Neg(e) => -e.eval(env)?,
            Expr::Bin(a, op, b) => {
                let (x, y) = (a.eval(env)?, b.eval(env)?);
                match op {
                    '+' => x + y,
                    '-' => x - y,
                    '*' => x * y,
                    '/' => {
                        if y == 0 || x % y != 0 {
                            return Err(TemplateError::InexactDivision(x, y));
                        }
                        x / y
                    }
                    _ => unreachable!("operators restricted by parser"),
                }
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Gen { stem: String, index: Option<Expr>, inverse: bool },
    Group { body: Vec<Node>, exponent: Option<Expr> },
    Range { body: Vec<Node>, var: String, lo: Expr, hi: Expr, descending: bool },
    Placeholder { name: String, inverse: bool },
}

/// A parsed template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    source: String,
    nodes: Vec<Node>,
}

impl Template {
    pub fn parse(source: &str) -> Result<Self, TemplateError> {
        let mut p = TParser { s: source.as_bytes(), pos: 0 };
        let nodes = p.word(None)?;
        p.ws();
        if p.pos != p.s.len() {
            return Err(p.err("unexpected character"));
        }
        Ok(Template {
            source: source.to_string(),
            nodes,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Expands to word text under `env`, with `$name` placeholders from `words`.
    pub fn expand(&self, env: &Env, words: &BTreeMap<String, String>) -> Result<String, TemplateError> {
        let mut out = Vec::new();
        expand_nodes(&self.nodes, &mut env.clone(), words, &mut out)?;
        Ok(out.join(" "))
    }

    /// Placeholder names used by the template.
    pub fn placeholders(&self) -> Vec<String> {
        fn walk(nodes: &[Node], out: &mut Vec<String>) {
            for n in nodes {
                match n {
                    Node::Placeholder { name, .. } => {
                        if !out.contains(name) {
                            out.push(name.clone())
                        }
                    }
                    Node::Group { body, .. } | Node::Range { body, .. } => walk(body, out),
                    Node::Gen { .. } => {}
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.nodes, &mut out);
        out
    }
}

fn expand_nodes(
    nodes: &[Node],
    env: &mut Env,
    words: &BTreeMap<String, String>,
    out: &mut Vec<String>,
) -> Result<(), TemplateError> {
    for n in nodes {
        match n {
            Node::Gen { stem, index, inverse } => {
                let mut name = stem.clone();
                if let Some(e) = index {
                    let v = e.eval(env)?;
                    if v < 0 {
                        return Err(TemplateError::NegativeIndex(v));
                    }
                    name.push_str(&v.to_string());
                }
                if *inverse {
                    name.push('\'');
                }
                out.push(name);
            }
            Node::Group { body, exponent } => {
                let k = match exponent {
                    Some(e) => e.eval(env)?,
                    None => 1,
                };
                let mut inner = Vec::new();
                expand_nodes(body, env, words, &mut inner)?;
                out.push(format!("({})^{}", inner.join(" "), k));
            }
            Node::Range {
                body,
                var,
                lo,
                hi,
                descending,
            } => {
                let (a, b) = (lo.eval(env)?, hi.eval(env)?);
                let saved = env.get(var).copied();
                let values: Vec<i64> = if *descending {
                    (b..=a).rev().collect()
                } else {
                    (a..=b).collect()
                };
                for v in values {
                    env.insert(var.clone(), v);
                    expand_nodes(body, env, words, out)?;
                }
                match saved {
                    Some(v) => env.insert(var.clone(), v),
                    None => env.remove(var),
                };
            }
            Node::Placeholder { name, inverse } => {
                let w = words
                    .get(name)
                    .ok_or_else(|| TemplateError::MissingPlaceholder(name.clone()))?;
                out.push(format!("({})^{}", w, if *inverse { -1 } else { 1 }));
            }
        }
    }
    Ok(())
}

struct TParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl TParser<'_> {
    fn err(&self, message: &str) -> TemplateError {
        TemplateError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), TemplateError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit() || c == b'_') {
            self.pos += 1;
        }
        String::from_utf8(self.s[start..self.pos].to_vec()).expect("ascii")
    }

    fn prime(&mut self) -> bool {
        if self.peek() == Some(b'\'') {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self, close: Option<u8>) -> Result<Vec<Node>, TemplateError> {
        let mut nodes = Vec::new();
        loop {
            self.ws();
            match self.peek() {
                None => {
                    if close.is_some() {
                        return Err(self.err("unterminated group"));
                    }
                    break;
                }
                Some(c) if Some(c) == close => break,
                Some(b';') if close == Some(b';') => break,
                Some(b'(') => {
                    self.pos += 1;
                    let body = self.word(Some(b')'))?;
                    self.expect(b')')?;
                    let exponent = if self.eat(b'^') { Some(self.exponent()?) } else { None };
                    nodes.push(Node::Group { body, exponent });
                }
                Some(b'[') => {
                    self.pos += 1;
                    let body = self.word(Some(b';'))?;
                    self.expect(b';')?;
                    self.ws();
                    let var = self.ident();
                    if var.is_empty() {
                        return Err(self.err("expected range variable"));
                    }
                    self.expect(b'=')?;
                    let lo = self.expr()?;
                    self.ws();
                    let descending = if self.s[self.pos..].starts_with(b"..") {
                        self.pos += 2;
                        false
                    } else if self.s[self.pos..].starts_with(b"downto") {
                        self.pos += 6;
                        true
                    } else {
                        return Err(self.err("expected `..` or `downto`"));
                    };
                    let hi = self.expr()?;
                    self.expect(b']')?;
                    nodes.push(Node::Range {
                        body,
                        var,
                        lo,
                        hi,
                        descending,
                    });
                }
                Some(b'$') => {
                    self.pos += 1;
                    let name = self.ident();
                    if name.is_empty() {
                        return Err(self.err("expected placeholder name"));
                    }
                    let inverse = self.prime();
                    nodes.push(Node::Placeholder { name, inverse });
                }
                Some(c) if c.is_ascii_lowercase() => {
                    let stem = self.ident();
                    let index = if self.peek() == Some(b'{') {
                        self.pos += 1;
                        let e = self.expr()?;
                        self.expect(b'}')?;
                        Some(e)
                    } else {
                        None
                    };
                    let inverse = self.prime();
                    nodes.push(Node::Gen { stem, index, inverse });
                }
                Some(_) => return Err(self.err("unexpected character")),
            }
        }
        Ok(nodes)
    }

    fn exponent(&mut self) -> Result<Expr, TemplateError> {
        self.ws();
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = if self.peek() == Some(b'{') {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(b'}')?;
            e
        } else {
            self.number()?
        };
        Ok(if negative { Expr::Neg(Box::new(e)) } else { e })
    }

    fn number(&mut self) -> Result<Expr, TemplateError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected number"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        text.parse().map(Expr::Num).map_err(|_| self.err("number too large"))
    }

    fn expr(&mut self) -> Result<Expr, TemplateError> {
        let mut lhs = self.term()?;
        loop {
            self.ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Bin(Box::new(lhs), '+', Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Bin(Box::new(lhs), '-', Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, TemplateError> {
        let mut lhs = self.atom()?;
        loop {
            self.ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Bin(Box::new(lhs), '*', Box::new(self.atom()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Bin(Box::new(lhs), '/', Box::new(self.atom()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, TemplateError> {
        self.ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.atom()?)))
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_ascii_lowercase() => {
                if self.s[self.pos..].starts_with(b"downto") {
                    return Err(self.err("expected expression"));
                }
                Ok(Expr::Var(self.ident()))
            }
            _ => Err(self.err("expected expression")),
        }
    }
}

/// Evaluates an integer expression such as `(g-4)/2`.
pub fn eval_expr(text: &str, env: &Env) -> Result<i64, TemplateError> {
    let mut p = TParser { s: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    e.eval(env)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, i64)]) -> Env {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    fn expand(t: &str, e: &[(&str, i64)]) -> String {
        Template::parse(t).unwrap().expand(&env(e), &BTreeMap::new()).unwrap()
    }

    #[test]
    fn indexed_names() {
        assert_eq!(expand("a{i} a{i+1}'", &[("i", 2)]), "a2 a3'");
        assert_eq!(expand("bbar{(g-2)/2} b{0}", &[("g", 8)]), "bbar3 b0");
        assert_eq!(expand("e f y2", &[]), "e f y2");
    }

    #[test]
    fn groups_and_ranges() {
        assert_eq!(expand("(a1 a2)^-6", &[]), "(a1 a2)^-6");
        assert_eq!(expand("(a1)^{(g-1)/2}", &[("g", 7)]), "(a1)^3");
        assert_eq!(expand("(a1)^-{g}", &[("g", 7)]), "(a1)^-7");
        assert_eq!(expand("[a{k} ; k=1..g-1]", &[("g", 4)]), "a1 a2 a3");
        assert_eq!(expand("[a{k} a{k+1} ; k=g-1 downto 3]", &[("g", 5)]), "a4 a5 a3 a4");
        assert_eq!(expand("[a{k} ; k=3..2]", &[]), "");
        assert_eq!(expand("([a{k} ; k=1..2])^{g}", &[("g", 3)]), "(a1 a2)^3");
    }

    #[test]
    fn placeholders() {
        let t = Template::parse("b0 $a7'").unwrap();
        assert_eq!(t.placeholders(), vec!["a7".to_string()]);
        let mut w = BTreeMap::new();
        w.insert("a7".to_string(), "a1".to_string());
        assert_eq!(t.expand(&Env::new(), &w).unwrap(), "b0 (a1)^-1");
        assert_eq!(
            t.expand(&Env::new(), &BTreeMap::new()),
            Err(TemplateError::MissingPlaceholder("a7".into()))
        );
    }

    #[test]
    fn errors() {
        assert!(Template::parse("a{i").is_err());
        assert!(Template::parse("(a1").is_err());
        assert!(Template::parse("[a1 ; k=1 to 2]").is_err());
        assert!(Template::parse("a1 #").is_err());
        assert_eq!(
            Template::parse("a{i}").unwrap().expand(&Env::new(), &BTreeMap::new()),
            Err(TemplateError::UnboundVariable("i".into()))
        );
        assert_eq!(eval_expr("(g-1)/2", &env(&[("g", 6)])), Err(TemplateError::InexactDivision(5, 2)));
        assert_eq!(eval_expr("2*i+3", &env(&[("i", 2)])), Ok(7));
        assert!(matches!(
            Template::parse("a{g-7}").unwrap().expand(&env(&[("g", 6)]), &BTreeMap::new()),
            Err(TemplateError::NegativeIndex(-1))
        ));
    }
}
