//! Derivation certificates: a start word, a list of rewrite steps, and a
//! target, replayed letter by letter.
//!
//! ```text
//! ctx surface: g=3 n=1
//! ctx gen: a1 a2 e f ta
//! ctx classes: catalog
//! ctx class ta: μ1+μ2
//! ctx rel[A2]: a1 a2 a1 a2' a1' a2'
//! ctx macro phi: e' a3
//! ctx push p1: crosscap right=a2 left=e'
//! ctx trivial td
//! start: …
//! step rewrite <pos> <label> : <lhs> -> <rhs>
//! step conj <pos> [<F>] <s> -> <s'> : <lhs> -> <rhs>
//! step expand <pos> <symbol>
//! step contract <pos> <symbol>
//! step reduce
//! step schema <pos> chain <c1> … <ck> | <b0> [<b1>] : <lhs> -> <rhs>
//! step schema <pos> lantern <d1> <d2> <d3> | <d4> <d5> <d6> <d7> : <lhs> -> <rhs>
//! step schema <pos> boundary-trivial <s> : <lhs> -> <rhs>
//! step schema <pos> extended-lantern <p> <q> -> <r> : <lhs> -> <rhs>
//! target: …
//! ```
//!
//! Positions are 0-based letter offsets in the current word. Words stay
//! unreduced until a `reduce` step. `1` denotes the empty word.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::catalog::{curve_name, frozen_classes};
use crate::homology::{evaluate, transvection, Assignment, Mod2Class, Mod2Matrix, SurfaceModel};
use crate::presentation::canonical_relator;
use crate::schema::{gen_chain, gen_lantern, ClassMap, PushKind, PushMacro, TwistSymbol};
use crate::word::{free_reduce, parse_letters, Alphabet, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepKind {
    Rewrite { label: String },
    Conjugation { conjugator: Vec<Letter>, from: Letter, to: Letter },
    Expand { symbol: Letter },
    Contract { symbol: Letter },
    Reduce,
    Chain { curves: Vec<TwistSymbol>, boundary: Vec<TwistSymbol> },
    Lantern { curves: [Option<TwistSymbol>; 7] },
    BoundaryTrivial { symbol: TwistSymbol },
    ExtendedLantern { first: String, second: String, product: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub line: usize,
    pub position: usize,
    pub kind: StepKind,
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertContext {
    pub alphabet: Arc<Alphabet>,
    pub surface: Option<SurfaceModel>,
    pub classes: ClassMap,
    pub macros: BTreeMap<String, Vec<Letter>>,
    pub relators: BTreeMap<String, Word>,
    pub pushes: BTreeMap<String, PushMacro>,
    pub trivial: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub context: CertContext,
    pub start: Vec<Letter>,
    pub steps: Vec<Step>,
    pub target: Vec<Letter>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for CertParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for CertParseError {}

/// Outcome of [`check_certificate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertReport {
    Valid { steps: usize },
    /// `step` is 1-based; 0 means the context or the final comparison.
    Invalid { step: usize, line: usize, reason: String },
}

impl CertReport {
    pub fn is_valid(&self) -> bool {
        matches!(self, CertReport::Valid { .. })
    }

    pub fn failing_step(&self) -> Option<usize> {
        match self {
            CertReport::Valid { .. } => None,
            CertReport::Invalid { step, .. } => Some(*step),
        }
    }
}

impl fmt::Display for CertReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertReport::Valid { steps } => write!(f, "valid ({steps} steps)"),
            CertReport::Invalid { step, line, reason } => write!(f, "invalid at step {step} (line {line}): {reason}"),
        }
    }
}

fn render(alphabet: &Alphabet, letters: &[Letter]) -> String {
    if letters.is_empty() {
        return "1".to_string();
    }
    letters
        .iter()
        .map(|l| format!("{}{}", alphabet.name(l.gen), if l.inverse { "'" } else { "" }))
        .collect::<Vec<_>>()
        .join(" ")
}

fn inverse_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inv()).collect()
}

impl Certificate {
    pub fn parse(text: &str) -> Result<Certificate, CertParseError> {
        Parser::default().run(text)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.context.alphabet
    }

    pub fn start_word(&self) -> Word {
        Word::from_letters(&self.context.alphabet, self.start.iter().copied())
    }

    pub fn target_word(&self) -> Word {
        Word::from_letters(&self.context.alphabet, self.target.iter().copied())
    }

    pub fn used_labels(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .steps
            .iter()
            .filter_map(|s| match &s.kind {
                StepKind::Rewrite { label } => Some(label.clone()),
                _ => None,
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn uses_label(&self, label: &str) -> bool {
        self.used_labels().iter().any(|l| l == label)
    }

    pub fn relator_word(&self, label: &str) -> Option<Word> {
        self.context.relators.get(label).cloned()
    }

    pub fn render_letters(&self, letters: &[Letter]) -> String {
        render(&self.context.alphabet, letters)
    }

    /// Words after each step, starting with the start word.
    pub fn trace(&self) -> Result<Vec<Vec<Letter>>, CertReport> {
        let mut words = vec![self.start.clone()];
        let mut cur = self.start.clone();
        for (i, step) in self.steps.iter().enumerate() {
            cur = apply_step(&self.context, &cur, step).map_err(|reason| CertReport::Invalid {
                step: i + 1,
                line: step.line,
                reason,
            })?;
            words.push(cur.clone());
        }
        Ok(words)
    }

    /// Mod-2 image of every symbol: twists by class, macros and pushes by their words.
    pub fn assignment(&self) -> Result<Assignment, String> {
        context_assignment(&self.context)
    }
}

fn context_assignment(ctx: &CertContext) -> Result<Assignment, String> {
    let m = ctx.surface.as_ref().ok_or("certificate declares no surface")?;
    let mut a = Assignment::new();
    for name in ctx.alphabet.names() {
        if ctx.macros.contains_key(name) || ctx.pushes.contains_key(name) {
            continue;
        }
        let class = ctx.classes.get(name).ok_or_else(|| format!("no class for `{name}`"))?;
        a.insert(name.clone(), transvection(m, *class).map_err(|e| format!("{name}: {e}"))?);
    }
    for (name, p) in &ctx.pushes {
        a.insert(name.clone(), p.image(m, &ctx.classes).map_err(|e| e.to_string())?);
    }
    // macros may refer to earlier macros
    let mut pending: Vec<&String> = ctx.macros.keys().collect();
    while !pending.is_empty() {
        let before = pending.len();
        pending.retain(|name| {
            let w = Word::from_letters(&ctx.alphabet, ctx.macros[*name].iter().copied());
            match evaluate(&w, m.rank(), &a) {
                Ok(img) => {
                    a.insert((*name).clone(), img);
                    false
                }
                Err(_) => true,
            }
        });
        if pending.len() == before {
            return Err(format!("macros refer to each other cyclically: {pending:?}"));
        }
    }
    Ok(a)
}

fn letters_matrix(ctx: &CertContext, letters: &[Letter]) -> Result<Mod2Matrix, String> {
    let m = ctx.surface.as_ref().ok_or("certificate declares no surface")?;
    let a = context_assignment(ctx)?;
    let w = Word::from_letters(&ctx.alphabet, free_reduce(letters.iter().copied()));
    evaluate(&w, m.rank(), &a).map_err(|e| e.to_string())
}

/// `lhs · rhs^-1` freely reduced, as a word.
fn relation_word(ctx: &CertContext, lhs: &[Letter], rhs: &[Letter]) -> Word {
    let letters: Vec<Letter> = lhs.iter().copied().chain(inverse_letters(rhs)).collect();
    Word::from_letters(&ctx.alphabet, free_reduce(letters))
}

fn same_relation(a: &Word, b: &Word) -> bool {
    canonical_relator(a) == canonical_relator(b)
}

fn splice(cur: &[Letter], pos: usize, lhs: &[Letter], rhs: &[Letter], ctx: &CertContext) -> Result<Vec<Letter>, String> {
    if pos + lhs.len() > cur.len() || cur[pos..pos + lhs.len()] != *lhs {
        let end = (pos + lhs.len()).min(cur.len());
        let found = if pos <= cur.len() { render(&ctx.alphabet, &cur[pos..end]) } else { "nothing".into() };
        return Err(format!(
            "expected `{}` at position {pos}, found `{found}`",
            render(&ctx.alphabet, lhs)
        ));
    }
    let mut out = cur[..pos].to_vec();
    out.extend_from_slice(rhs);
    out.extend_from_slice(&cur[pos + lhs.len()..]);
    Ok(out)
}

fn class_of_symbol(ctx: &CertContext, s: &TwistSymbol) -> Result<Mod2Class, String> {
    ctx.classes.get(&s.name).copied().ok_or_else(|| format!("no class for `{}`", s.name))
}

fn apply_step(ctx: &CertContext, cur: &[Letter], step: &Step) -> Result<Vec<Letter>, String> {
    let name = |l: &Letter| ctx.alphabet.name(l.gen).to_string();
    match &step.kind {
        StepKind::Reduce => Ok(free_reduce(cur.iter().copied())),
        StepKind::Expand { symbol } => {
            let body = ctx
                .macros
                .get(&name(symbol))
                .or_else(|| None)
                .cloned()
                .or_else(|| {
                    ctx.pushes
                        .get(&name(symbol))
                        .and_then(|p| p.word(&ctx.alphabet).ok())
                        .map(|w| w.letters().to_vec())
                })
                .ok_or_else(|| format!("`{}` is not a macro", name(symbol)))?;
            let body = if symbol.inverse { inverse_letters(&body) } else { body };
            splice(cur, step.position, &[*symbol], &body, ctx)
        }
        StepKind::Contract { symbol } => {
            let body = ctx
                .macros
                .get(&name(symbol))
                .cloned()
                .or_else(|| {
                    ctx.pushes
                        .get(&name(symbol))
                        .and_then(|p| p.word(&ctx.alphabet).ok())
                        .map(|w| w.letters().to_vec())
                })
                .ok_or_else(|| format!("`{}` is not a macro", name(symbol)))?;
            let body = if symbol.inverse { inverse_letters(&body) } else { body };
            splice(cur, step.position, &body, &[*symbol], ctx)
        }
        StepKind::Rewrite { label } => {
            let rel = ctx
                .relators
                .get(label)
                .ok_or_else(|| format!("no relator `{label}` in context"))?;
            let next = splice(cur, step.position, &step.lhs, &step.rhs, ctx)?;
            let rw = relation_word(ctx, &step.lhs, &step.rhs);
            if !same_relation(&rw, rel) {
                return Err(format!(
                    "`{}` = `{}` is not a consequence of {label} by rotation",
                    render(&ctx.alphabet, &step.lhs),
                    render(&ctx.alphabet, &step.rhs)
                ));
            }
            Ok(next)
        }
        StepKind::Conjugation { conjugator, from, to } => {
            let next = splice(cur, step.position, &step.lhs, &step.rhs, ctx)?;
            // F s F^-1 = s'
            let mut rel: Vec<Letter> = conjugator.clone();
            rel.push(*from);
            rel.extend(inverse_letters(conjugator));
            rel.push(to.inv());
            let rel = Word::from_letters(&ctx.alphabet, free_reduce(rel));
            if !same_relation(&relation_word(ctx, &step.lhs, &step.rhs), &rel) {
                return Err("rewrite is not the stated conjugation".into());
            }
            let m = ctx.surface.as_ref().ok_or("conjugation needs a surface")?;
            let cf = class_of_symbol(ctx, &TwistSymbol::new(&name(from)))?;
            let ct = class_of_symbol(ctx, &TwistSymbol::new(&name(to)))?;
            let f = letters_matrix(ctx, conjugator)?;
            if f.apply(cf) != ct {
                return Err(format!(
                    "image of {} under the conjugator is {}, not {} ({})",
                    name(from),
                    m.format_class(f.apply(cf)),
                    name(to),
                    m.format_class(ct)
                ));
            }
            Ok(next)
        }
        StepKind::Chain { curves, boundary } => {
            let m = ctx.surface.as_ref().ok_or("chain needs a surface")?;
            let rel = gen_chain(m, &ctx.alphabet, curves, boundary, &ctx.classes).map_err(|e| e.to_string())?;
            let next = splice(cur, step.position, &step.lhs, &step.rhs, ctx)?;
            if !same_relation(&relation_word(ctx, &step.lhs, &step.rhs), &rel) {
                return Err("rewrite is not the stated chain relation".into());
            }
            Ok(next)
        }
        StepKind::Lantern { curves } => {
            let m = ctx.surface.as_ref().ok_or("lantern needs a surface")?;
            let rel = gen_lantern(m, &ctx.alphabet, curves, &ctx.classes).map_err(|e| e.to_string())?;
            let next = splice(cur, step.position, &step.lhs, &step.rhs, ctx)?;
            if !same_relation(&relation_word(ctx, &step.lhs, &step.rhs), &rel) {
                return Err("rewrite is not the stated lantern relation".into());
            }
            Ok(next)
        }
        StepKind::BoundaryTrivial { symbol } => {
            if !ctx.trivial.contains(&symbol.name) {
                return Err(format!("`{}` is not declared trivial", symbol.name));
            }
            if !class_of_symbol(ctx, symbol)?.is_zero() {
                return Err(format!("`{}` bounds a disk but has a nonzero class", symbol.name));
            }
            let next = splice(cur, step.position, &step.lhs, &step.rhs, ctx)?;
            let rel = Word::from_letters(&ctx.alphabet, [symbol.letter(&ctx.alphabet).map_err(|e| e.to_string())?]);
            if !same_relation(&relation_word(ctx, &step.lhs, &step.rhs), &rel) {
                return Err("rewrite is not the removal of a trivial twist".into());
            }
            Ok(next)
        }
        StepKind::ExtendedLantern { first, second, product } => {
            let get = |n: &String| ctx.pushes.get(n).ok_or_else(|| format!("`{n}` is not a push"));
            let (p, q, r) = (get(first)?, get(second)?, get(product)?);
            if p.kind != q.kind || q.kind != r.kind {
                return Err("pushes of different kinds".into());
            }
            let a = context_assignment(ctx)?;
            let img = |n: &String| a.get(n).cloned().ok_or_else(|| format!("no image for `{n}`"));
            if img(first)?.compose(&img(second)?) != img(product)? {
                return Err(format!("mod-2 images do not satisfy {product} = {first} {second}"));
            }
            let next = splice(cur, step.position, &step.lhs, &step.rhs, ctx)?;
            let sym = |n: &String| TwistSymbol::new(n).letter(&ctx.alphabet).map_err(|e| e.to_string());
            let rel = Word::from_letters(&ctx.alphabet, free_reduce([sym(first)?, sym(second)?, sym(product)?.inv()]));
            if !same_relation(&relation_word(ctx, &step.lhs, &step.rhs), &rel) {
                return Err("rewrite is not the stated extended lantern relation".into());
            }
            Ok(next)
        }
    }
}

/// Replays every step; Valid iff each step's rewrite is exact and justified,
/// and the final word equals the target letter for letter.
pub fn check_certificate(cert: &Certificate) -> CertReport {
    if let Some(m) = &cert.context.surface {
        for (name, c) in &cert.context.classes {
            if !m.contains(*c) {
                return CertReport::Invalid {
                    step: 0,
                    line: 0,
                    reason: format!("class of `{name}` outside the surface basis"),
                };
            }
        }
    }
    let words = match cert.trace() {
        Ok(w) => w,
        Err(report) => return report,
    };
    let last = words.last().expect("start word");
    if *last != cert.target {
        return CertReport::Invalid {
            step: 0,
            line: 0,
            reason: format!(
                "derivation ends in `{}`, target is `{}`",
                render(&cert.context.alphabet, last),
                render(&cert.context.alphabet, &cert.target)
            ),
        };
    }
    CertReport::Valid {
        steps: cert.steps.len(),
    }
}

/// Mod-2 image of every intermediate word.
pub fn homology_trace(cert: &Certificate) -> Result<Vec<Mod2Matrix>, String> {
    let words = cert.trace().map_err(|r| r.to_string())?;
    words.iter().map(|w| letters_matrix(&cert.context, w)).collect()
}

#[derive(Default)]
struct Parser {
    alphabet: Option<Arc<Alphabet>>,
    surface: Option<SurfaceModel>,
    catalog_classes: bool,
    macros: BTreeMap<String, String>,
    relators: BTreeMap<String, String>,
    pushes: Vec<(usize, String, String)>,
    trivial: Vec<String>,
    start: Option<(usize, String)>,
    target: Option<(usize, String)>,
    steps: Vec<(usize, String)>,
}

impl Parser {
    fn run(mut self, text: &str) -> Result<Certificate, CertParseError> {
        let mut class_lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let err = |message: &str| CertParseError {
                line,
                message: message.to_string(),
            };
            if let Some(rest) = s.strip_prefix("ctx ") {
                let rest = rest.trim();
                if let Some(v) = rest.strip_prefix("surface:") {
                    let (mut g, mut n) = (None, None);
                    for part in v.split_whitespace() {
                        if let Some(x) = part.strip_prefix("g=") {
                            g = x.parse().ok();
                        } else if let Some(x) = part.strip_prefix("n=") {
                            n = x.parse().ok();
                        }
                    }
                    let (g, n) = g.zip(n).ok_or_else(|| err("expected `ctx surface: g=<g> n=<n>`"))?;
                    self.surface = Some(SurfaceModel::new(g, n).map_err(|e| err(&e.to_string()))?);
                } else if let Some(v) = rest.strip_prefix("gen:") {
                    if self.alphabet.is_some() {
                        return Err(err("second `ctx gen` line"));
                    }
                    self.alphabet = Some(Alphabet::new(v.split_whitespace()).map_err(|e| err(&e.to_string()))?);
                } else if let Some(v) = rest.strip_prefix("classes:") {
                    if v.trim() != "catalog" {
                        return Err(err("only `ctx classes: catalog` is supported"));
                    }
                    self.catalog_classes = true;
                } else if let Some(v) = rest.strip_prefix("class ") {
                    let (name, class) = v.split_once(':').ok_or_else(|| err("expected `ctx class <name>: <class>`"))?;
                    class_lines.push((line, name.trim().to_string(), class.trim().to_string()));
                } else if let Some(v) = rest.strip_prefix("macro ") {
                    let (name, body) = v.split_once(':').ok_or_else(|| err("expected `ctx macro <name>: <word>`"))?;
                    self.macros.insert(name.trim().to_string(), body.trim().to_string());
                } else if let Some(v) = rest.strip_prefix("rel[") {
                    let (label, body) = v.split_once("]:").ok_or_else(|| err("expected `ctx rel[<label>]: <word>`"))?;
                    if self.relators.insert(label.to_string(), body.trim().to_string()).is_some() {
                        return Err(err("duplicate relator label"));
                    }
                } else if let Some(v) = rest.strip_prefix("push ") {
                    let (name, body) = v.split_once(':').ok_or_else(|| err("expected `ctx push <name>: …`"))?;
                    self.pushes.push((line, name.trim().to_string(), body.trim().to_string()));
                } else if let Some(v) = rest.strip_prefix("trivial ") {
                    self.trivial.extend(v.split_whitespace().map(str::to_string));
                } else {
                    return Err(err("unknown context line"));
                }
            } else if let Some(v) = s.strip_prefix("start:") {
                self.start = Some((line, v.trim().to_string()));
            } else if let Some(v) = s.strip_prefix("target:") {
                self.target = Some((line, v.trim().to_string()));
            } else if let Some(v) = s.strip_prefix("step ") {
                self.steps.push((line, v.trim().to_string()));
            } else {
                return Err(err("unrecognised line"));
            }
        }
        let alphabet = self.alphabet.clone().ok_or(CertParseError {
            line: 0,
            message: "missing `ctx gen` line".into(),
        })?;
        let word = |line: usize, text: &str| -> Result<Vec<Letter>, CertParseError> {
            if text.trim() == "1" {
                return Ok(Vec::new());
            }
            parse_letters(text, &alphabet).map_err(|e| CertParseError {
                line,
                message: e.to_string(),
            })
        };
        let mut classes = ClassMap::new();
        if self.catalog_classes {
            let m = self.surface.as_ref().ok_or(CertParseError {
                line: 0,
                message: "`ctx classes: catalog` needs `ctx surface`".into(),
            })?;
            for name in alphabet.names() {
                if let Some(curve) = curve_name(name) {
                    if let Some(c) = frozen_classes().get(&curve, m.genus(), m.boundary()) {
                        classes.insert(name.clone(), c);
                    }
                }
            }
        }
        for (line, name, text) in class_lines {
            let m = self.surface.as_ref().ok_or(CertParseError {
                line,
                message: "`ctx class` needs `ctx surface`".into(),
            })?;
            if !alphabet.contains(&name) {
                return Err(CertParseError {
                    line,
                    message: format!("class for unknown symbol `{name}`"),
                });
            }
            let c = m.parse_class(&text).map_err(|e| CertParseError {
                line,
                message: e.to_string(),
            })?;
            classes.insert(name, c);
        }
        let mut macros = BTreeMap::new();
        for (name, body) in &self.macros {
            if !alphabet.contains(name) {
                return Err(CertParseError {
                    line: 0,
                    message: format!("macro `{name}` is not in `ctx gen`"),
                });
            }
            macros.insert(name.clone(), word(0, body)?);
        }
        let mut relators = BTreeMap::new();
        for (label, body) in &self.relators {
            relators.insert(
                label.clone(),
                Word::from_letters(&alphabet, free_reduce(word(0, body)?)),
            );
        }
        let mut pushes = BTreeMap::new();
        for (line, name, body) in &self.pushes {
            let err = |m: &str| CertParseError {
                line: *line,
                message: m.to_string(),
            };
            let mut parts = body.split_whitespace();
            let kind = parts
                .next()
                .and_then(PushKind::parse)
                .ok_or_else(|| err("expected `point` or `crosscap`"))?;
            let (mut right, mut left) = (None, None);
            for p in parts {
                if let Some(v) = p.strip_prefix("right=") {
                    right = (v != "1").then(|| TwistSymbol::parse(v));
                } else if let Some(v) = p.strip_prefix("left=") {
                    left = (v != "1").then(|| TwistSymbol::parse(v));
                } else {
                    return Err(err("expected `right=` or `left=`"));
                }
            }
            for s in [&right, &left].into_iter().flatten() {
                if !alphabet.contains(&s.name) {
                    return Err(err(&format!("unknown symbol `{}`", s.name)));
                }
            }
            if !alphabet.contains(name) {
                return Err(err(&format!("push `{name}` is not in `ctx gen`")));
            }
            pushes.insert(
                name.clone(),
                PushMacro {
                    loop_name: name.clone(),
                    kind,
                    right,
                    left,
                },
            );
        }
        let (sl, st) = self.start.clone().ok_or(CertParseError {
            line: 0,
            message: "missing `start:`".into(),
        })?;
        let (tl, tt) = self.target.clone().ok_or(CertParseError {
            line: 0,
            message: "missing `target:`".into(),
        })?;
        let start = word(sl, &st)?;
        let target = word(tl, &tt)?;
        let mut steps = Vec::new();
        for (line, text) in &self.steps {
            steps.push(parse_step(*line, text, &alphabet, &word)?);
        }
        Ok(Certificate {
            context: CertContext {
                alphabet,
                surface: self.surface,
                classes,
                macros,
                relators,
                pushes,
                trivial: self.trivial,
            },
            start,
            steps,
            target,
        })
    }
}

fn parse_step(
    line: usize,
    text: &str,
    alphabet: &Arc<Alphabet>,
    word: &dyn Fn(usize, &str) -> Result<Vec<Letter>, CertParseError>,
) -> Result<Step, CertParseError> {
    let err = |message: &str| CertParseError {
        line,
        message: message.to_string(),
    };
    let single = |s: &str| -> Result<Letter, CertParseError> {
        let l = word(line, s)?;
        match l[..] {
            [one] => Ok(one),
            _ => Err(err(&format!("expected a single symbol, got `{s}`"))),
        }
    };
    let (head, sides) = match text.split_once(" : ") {
        Some((h, s)) => (h.trim(), Some(s.trim())),
        None => (text.trim(), None),
    };
    let (lhs, rhs) = match sides {
        Some(s) => {
            let (l, r) = s.split_once("->").ok_or_else(|| err("expected `<lhs> -> <rhs>`"))?;
            (word(line, l)?, word(line, r)?)
        }
        None => (Vec::new(), Vec::new()),
    };
    let mut parts = head.split_whitespace();
    let kind_name = parts.next().ok_or_else(|| err("empty step"))?;
    if kind_name == "reduce" {
        return Ok(Step {
            line,
            position: 0,
            kind: StepKind::Reduce,
            lhs,
            rhs,
        });
    }
    let position: usize = parts
        .next()
        .and_then(|p| p.parse().ok())
        .ok_or_else(|| err("expected a position"))?;
    let rest: Vec<&str> = parts.collect();
    let need_sides = || sides.ok_or_else(|| err("expected ` : <lhs> -> <rhs>`"));
    let kind = match kind_name {
        "rewrite" => {
            need_sides()?;
            let [label] = rest[..] else {
                return Err(err("expected `rewrite <pos> <label>`"));
            };
            StepKind::Rewrite { label: label.to_string() }
        }
        "expand" | "contract" => {
            let [sym] = rest[..] else {
                return Err(err("expected a symbol"));
            };
            let symbol = single(sym)?;
            if kind_name == "expand" {
                StepKind::Expand { symbol }
            } else {
                StepKind::Contract { symbol }
            }
        }
        "conj" => {
            need_sides()?;
            let joined = rest.join(" ");
            let inner = joined
                .strip_prefix('[')
                .and_then(|r| r.split_once(']'))
                .ok_or_else(|| err("expected `[<conjugator>]`"))?;
            let conjugator = word(line, inner.0)?;
            let (from, to) = inner.1.split_once("->").ok_or_else(|| err("expected `<s> -> <s'>`"))?;
            StepKind::Conjugation {
                conjugator,
                from: single(from.trim())?,
                to: single(to.trim())?,
            }
        }
        "schema" => {
            need_sides()?;
            let (which, args) = rest.split_first().ok_or_else(|| err("expected a schema kind"))?;
            let known = |s: &str| -> Result<TwistSymbol, CertParseError> {
                let t = TwistSymbol::parse(s);
                if alphabet.contains(&t.name) {
                    Ok(t)
                } else {
                    Err(err(&format!("unknown symbol `{}`", t.name)))
                }
            };
            match *which {
                "chain" => {
                    let bar = args.iter().position(|a| *a == "|");
                    let (c, b) = match bar {
                        Some(i) => (&args[..i], &args[i + 1..]),
                        None => (args, &[][..]),
                    };
                    StepKind::Chain {
                        curves: c.iter().map(|s| known(s)).collect::<Result<_, _>>()?,
                        boundary: b.iter().filter(|s| **s != "-").map(|s| known(s)).collect::<Result<_, _>>()?,
                    }
                }
                "lantern" => {
                    let syms: Vec<&str> = args.iter().copied().filter(|a| *a != "|").collect();
                    if syms.len() != 7 {
                        return Err(err("lantern takes seven curves (`-` for a trivial one)"));
                    }
                    let mut curves: [Option<TwistSymbol>; 7] = Default::default();
                    for (i, s) in syms.iter().enumerate() {
                        curves[i] = if *s == "-" { None } else { Some(known(s)?) };
                    }
                    StepKind::Lantern { curves }
                }
                "boundary-trivial" => {
                    let [s] = args else {
                        return Err(err("boundary-trivial takes one symbol"));
                    };
                    StepKind::BoundaryTrivial { symbol: known(s)? }
                }
                "extended-lantern" => {
                    let [p, q, arrow, r] = args else {
                        return Err(err("expected `extended-lantern <p> <q> -> <r>`"));
                    };
                    if *arrow != "->" {
                        return Err(err("expected `->`"));
                    }
                    for s in [p, q, r] {
                        known(s)?;
                    }
                    StepKind::ExtendedLantern {
                        first: p.to_string(),
                        second: q.to_string(),
                        product: r.to_string(),
                    }
                }
                other => return Err(err(&format!("unknown schema `{other}`"))),
            }
        }
        other => return Err(err(&format!("unknown step kind `{other}`"))),
    };
    Ok(Step {
        line,
        position,
        kind,
        lhs,
        rhs,
    })
}

/// Shipped certificates, by file name.
pub fn shipped_certificates() -> Vec<(&'static str, &'static str)> {
    vec![
        ("b2_1.cert", include_str!("../data/b2_1.cert")),
        ("b2_2.cert", include_str!("../data/b2_2.cert")),
        ("lemma_push_telescope.cert", include_str!("../data/lemma_push_telescope.cert")),
    ]
}
