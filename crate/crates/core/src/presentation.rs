//! Finite presentations: data model, text format, Tietze moves, simplification.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::abelian::{abelian_invariants, AbelianInvariants};
use crate::cert::{check_certificate, Certificate};
use crate::word::{is_valid_generator_name, parse_word_with, Alphabet, Letter, ParseLimits, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("generator `{0}` already in alphabet")]
    NameCollision(String),
    #[error("no relator defines generator `{0}`")]
    NoDefiningRelator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("no relator labelled `{0}`")]
    UnknownLabel(String),
    #[error("relator `{label}` may not be removed: {reason}")]
    RemovalRefused { label: String, reason: String },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("invalid presentation: {0}")]
    Invalid(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    pub word: Word,
    pub label: String,
    /// Human-readable guard the relator was instantiated under.
    pub guard: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Arc<Alphabet>,
    relators: Vec<Relator>,
}

/// Problems found by [`validate_source`] or [`Presentation::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    UnknownGenerator { label: String, name: String },
    Unreduced { label: String },
    DuplicateLabel(String),
    DuplicateGenerator(String),
    InvalidName(String),
    Syntax { label: String, message: String },
    ForeignAlphabet { label: String },
}

impl Diagnostic {
    /// Unreduced relators are accepted (and reduced); everything else blocks loading.
    pub fn is_error(&self) -> bool {
        !matches!(self, Diagnostic::Unreduced { .. })
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::UnknownGenerator { label, name } => write!(f, "UnknownGenerator: `{name}` in relator {label}"),
            Diagnostic::Unreduced { label } => write!(f, "Unreduced: relator {label} is not freely reduced"),
            Diagnostic::DuplicateLabel(l) => write!(f, "DuplicateLabel: {l}"),
            Diagnostic::DuplicateGenerator(g) => write!(f, "DuplicateGenerator: {g}"),
            Diagnostic::InvalidName(g) => write!(f, "InvalidName: {g}"),
            Diagnostic::Syntax { label, message } => write!(f, "SyntaxError: relator {label}: {message}"),
            Diagnostic::ForeignAlphabet { label } => write!(f, "ForeignAlphabet: relator {label}"),
        }
    }
}

/// Line-level contents of a presentation file, before word parsing.
#[derive(Debug, Clone, Default)]
pub struct PresentationSource {
    pub generators: Vec<String>,
    pub relators: Vec<SourceRelator>,
}

#[derive(Debug, Clone)]
pub struct SourceRelator {
    pub label: String,
    pub text: String,
    pub guard: Option<String>,
    pub line: usize,
}

/// Splits a presentation file into generator and relator lines.
///
/// A `# guard: <text>` comment attaches to the next relator line.
pub fn parse_source(text: &str) -> Result<PresentationSource, PresentationError> {
    let mut src = PresentationSource::default();
    let mut pending_guard: Option<String> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(g) = comment.trim().strip_prefix("guard:") {
                pending_guard = Some(g.trim().to_string());
            }
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("gen:") {
            src.generators.extend(rest.split_whitespace().map(str::to_string));
        } else if let Some(rest) = trimmed.strip_prefix("rel[") {
            let close = rest.find("]:").ok_or_else(|| PresentationError::Format {
                line,
                message: "expected `rel[<label>]: <word>`".into(),
            })?;
            let label = rest[..close].to_string();
            if label.is_empty() {
                return Err(PresentationError::Format {
                    line,
                    message: "empty relator label".into(),
                });
            }
            src.relators.push(SourceRelator {
                label,
                text: rest[close + 2..].trim().to_string(),
                guard: pending_guard.take(),
                line,
            });
        } else {
            return Err(PresentationError::Format {
                line,
                message: format!("unrecognized line `{trimmed}`"),
            });
        }
    }
    Ok(src)
}

/// Checks a source for unknown generators, unreduced relators, and duplicates.
pub fn validate_source(src: &PresentationSource) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let mut seen = HashSet::new();
    let mut good = Vec::new();
    for g in &src.generators {
        if !is_valid_generator_name(g) {
            diags.push(Diagnostic::InvalidName(g.clone()));
        } else if !seen.insert(g.clone()) {
            diags.push(Diagnostic::DuplicateGenerator(g.clone()));
        } else {
            good.push(g.clone());
        }
    }
    let alphabet = Alphabet::new(&good).expect("names checked above");
    let mut labels = HashSet::new();
    for r in &src.relators {
        if !labels.insert(r.label.clone()) {
            diags.push(Diagnostic::DuplicateLabel(r.label.clone()));
        }
        match parse_word_with(&r.text, &alphabet, ParseLimits::default()) {
            Ok(p) if p.cancelled => diags.push(Diagnostic::Unreduced { label: r.label.clone() }),
            Ok(_) => {}
            Err(WordError::UnknownGenerator(name)) => diags.push(Diagnostic::UnknownGenerator {
                label: r.label.clone(),
                name,
            }),
            Err(e) => diags.push(Diagnostic::Syntax {
                label: r.label.clone(),
                message: e.to_string(),
            }),
        }
    }
    diags
}

/// Parses a presentation file; fails on any error-level diagnostic.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let src = parse_source(text)?;
    Presentation::from_source(&src)
}

fn word_order(alphabet: &Alphabet, a: &[Letter], b: &[Letter]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = alphabet
            .name(x.gen)
            .cmp(alphabet.name(y.gen))
            .then(x.inverse.cmp(&y.inverse));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

/// Cyclically reduced form of `w`, choosing the least rotation of `w` or `w⁻¹`
/// under the order (generator name, positive before inverse).
pub fn canonical_relator(w: &Word) -> Word {
    let (core, _) = w.cyclic_reduce();
    if core.is_empty() {
        return core;
    }
    let alphabet = core.alphabet().clone();
    let inv = core.inverse();
    let mut best: Option<Vec<Letter>> = None;
    for base in [core.letters(), inv.letters()] {
        let n = base.len();
        for s in 0..n {
            let rot: Vec<Letter> = base[s..].iter().chain(&base[..s]).copied().collect();
            if best
                .as_ref()
                .map_or(true, |b| word_order(&alphabet, &rot, b) == Ordering::Less)
            {
                best = Some(rot);
            }
        }
    }
    Word::from_letters(&alphabet, best.expect("nonempty"))
}

/// Why a relator may be deleted.
pub enum RemovalJustification<'a> {
    FreelyTrivial,
    Duplicate,
    /// A valid certificate proving `start = target` where `start · target⁻¹` is the
    /// relator (up to rotation and inversion), not using the relator itself.
    Certified(&'a Certificate),
}

impl Presentation {
    pub fn new(alphabet: Arc<Alphabet>) -> Self {
        Presentation {
            alphabet,
            relators: Vec::new(),
        }
    }

    pub fn with_relators(alphabet: Arc<Alphabet>, relators: Vec<Relator>) -> Self {
        Presentation { alphabet, relators }
    }

    pub fn from_source(src: &PresentationSource) -> Result<Presentation, PresentationError> {
        let diags = validate_source(src);
        if let Some(d) = diags.iter().find(|d| d.is_error()) {
            return Err(PresentationError::Invalid(d.to_string()));
        }
        let alphabet = Alphabet::new(&src.generators)?;
        let mut p = Presentation::new(alphabet.clone());
        for r in &src.relators {
            let word = parse_word_with(&r.text, &alphabet, ParseLimits::default())?.word;
            p.relators.push(Relator {
                word,
                label: r.label.clone(),
                guard: r.guard.clone(),
            });
        }
        Ok(p)
    }

    /// Appends a relator without checks.
    pub fn push(&mut self, label: impl Into<String>, word: Word, guard: Option<String>) {
        self.relators.push(Relator {
            word,
            label: label.into(),
            guard,
        });
    }

    /// Parses `text` over this alphabet and appends it.
    pub fn push_text(&mut self, label: &str, text: &str) -> Result<(), PresentationError> {
        let word = crate::word::parse_word(text, &self.alphabet)?;
        self.push(label, word, None);
        Ok(())
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn relator(&self, label: &str) -> Option<&Relator> {
        self.relators.iter().find(|r| r.label == label)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.relators.iter().map(|r| r.label.as_str()).collect()
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut diags = Vec::new();
        let mut labels = HashSet::new();
        for r in &self.relators {
            if !labels.insert(r.label.as_str()) {
                diags.push(Diagnostic::DuplicateLabel(r.label.clone()));
            }
            if **r.word.alphabet() != *self.alphabet {
                diags.push(Diagnostic::ForeignAlphabet { label: r.label.clone() });
            }
        }
        diags
    }

    /// Serializes in the `gen:` / `rel[...]:` file format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("gen:");
        for g in self.alphabet.names() {
            out.push(' ');
            out.push_str(g);
        }
        out.push('\n');
        for r in &self.relators {
            if let Some(g) = &r.guard {
                out.push_str(&format!("# guard: {g}\n"));
            }
            if r.word.is_empty() {
                out.push_str(&format!("rel[{}]:\n", r.label));
            } else {
                out.push_str(&format!("rel[{}]: {}\n", r.label, r.word));
            }
        }
        out
    }

    /// Relator matrix of exponent sums (rows: relators, columns: generators).
    pub fn exponent_matrix(&self) -> Vec<Vec<BigInt>> {
        self.relators
            .iter()
            .map(|r| {
                (0..self.alphabet.len())
                    .map(|g| BigInt::from(r.word.exponent_sum_index(g)))
                    .collect()
            })
            .collect()
    }

    pub fn abelianization(&self) -> AbelianInvariants {
        abelian_invariants(&self.exponent_matrix(), self.alphabet.len())
    }

    /// Adds generator `name` with relator `name · defining⁻¹`.
    pub fn tietze_add_generator(&self, name: &str, defining: &Word) -> Result<Presentation, PresentationError> {
        if self.alphabet.contains(name) {
            return Err(PresentationError::NameCollision(name.to_string()));
        }
        if !is_valid_generator_name(name) {
            return Err(WordError::InvalidName(name.to_string()).into());
        }
        let mut names: Vec<String> = self.alphabet.names().to_vec();
        names.push(name.to_string());
        let alphabet = Alphabet::new(&names)?;
        let mut relators = Vec::with_capacity(self.relators.len() + 1);
        for r in &self.relators {
            relators.push(Relator {
                word: r.word.rehome(&alphabet)?,
                label: r.label.clone(),
                guard: r.guard.clone(),
            });
        }
        let g = Word::generator(&alphabet, name)?;
        let def = g.multiply(&defining.rehome(&alphabet)?.inverse())?;
        let mut label = format!("def_{name}");
        while relators.iter().any(|r| r.label == label) {
            label.push('_');
        }
        relators.push(Relator {
            word: def,
            label,
            guard: None,
        });
        Ok(Presentation { alphabet, relators })
    }

    /// Expresses `name` through a relator in which it occurs exactly once,
    /// substitutes everywhere, drops that relator and any relator that becomes trivial.
    pub fn tietze_remove_generator(&self, name: &str) -> Result<Presentation, PresentationError> {
        let gen = self
            .alphabet
            .index_of(name)
            .ok_or_else(|| PresentationError::UnknownGenerator(name.to_string()))?;
        let defining = self
            .relators
            .iter()
            .enumerate()
            .filter(|(_, r)| r.word.occurrences(gen) == 1)
            .min_by_key(|(i, r)| (r.word.len(), *i))
            .map(|(i, _)| i)
            .ok_or_else(|| PresentationError::NoDefiningRelator(name.to_string()))?;
        Ok(self.eliminate(gen, defining))
    }

    /// Like [`Presentation::tietze_remove_generator`], but through the relator `label`.
    pub fn tietze_remove_generator_using(&self, name: &str, label: &str) -> Result<Presentation, PresentationError> {
        let gen = self
            .alphabet
            .index_of(name)
            .ok_or_else(|| PresentationError::UnknownGenerator(name.to_string()))?;
        let idx = self
            .relators
            .iter()
            .position(|r| r.label == label)
            .ok_or_else(|| PresentationError::UnknownLabel(label.to_string()))?;
        if self.relators[idx].word.occurrences(gen) != 1 {
            return Err(PresentationError::NoDefiningRelator(name.to_string()));
        }
        Ok(self.eliminate(gen, idx))
    }

    /// Replaces `name` by `image` (a word over the remaining generators) in every
    /// relator. Relators are kept even when they become trivial.
    pub fn substitute_generator(&self, name: &str, image: &Word) -> Result<Presentation, PresentationError> {
        if !self.alphabet.contains(name) {
            return Err(PresentationError::UnknownGenerator(name.to_string()));
        }
        let names: Vec<String> = self.alphabet.names().iter().filter(|n| *n != name).cloned().collect();
        let alphabet = Alphabet::new(&names).expect("subset of valid alphabet");
        let image = image.rehome(&alphabet)?;
        let mut map = BTreeMap::new();
        map.insert(name.to_string(), image);
        let mut relators = Vec::new();
        for r in &self.relators {
            relators.push(Relator {
                word: r.word.substitute(&alphabet, &map)?,
                label: r.label.clone(),
                guard: r.guard.clone(),
            });
        }
        Ok(Presentation { alphabet, relators })
    }

    fn eliminate(&self, gen: usize, defining: usize) -> Presentation {
        let name = self.alphabet.name(gen).to_string();
        let letters = self.relators[defining].word.letters();
        let pos = letters.iter().position(|l| l.gen == gen).expect("occurs once");
        // u g^s v = 1  =>  g^s = u⁻¹ v⁻¹ = (v u)⁻¹
        let names: Vec<String> = self.alphabet.names().iter().filter(|n| **n != name).cloned().collect();
        let alphabet = Alphabet::new(&names).expect("subset of valid alphabet");
        let vu: Vec<Letter> = letters[pos + 1..].iter().chain(&letters[..pos]).copied().collect();
        let vu = Word::from_letters(self.alphabet(), vu).rehome(&alphabet).expect("generator-free");
        let image = if letters[pos].inverse { vu } else { vu.inverse() };
        let mut map = BTreeMap::new();
        map.insert(name, image);
        let mut relators = Vec::new();
        for (i, r) in self.relators.iter().enumerate() {
            if i == defining {
                continue;
            }
            let word = r.word.substitute(&alphabet, &map).expect("all generators mapped");
            if word.is_empty() {
                continue;
            }
            relators.push(Relator {
                word,
                label: r.label.clone(),
                guard: r.guard.clone(),
            });
        }
        Presentation { alphabet, relators }
    }

    /// Deletes a relator when the justification holds; never changes the group.
    pub fn remove_relator(&self, label: &str, why: RemovalJustification<'_>) -> Result<Presentation, PresentationError> {
        let idx = self
            .relators
            .iter()
            .position(|r| r.label == label)
            .ok_or_else(|| PresentationError::UnknownLabel(label.to_string()))?;
        let target = &self.relators[idx].word;
        let refuse = |reason: &str| PresentationError::RemovalRefused {
            label: label.to_string(),
            reason: reason.to_string(),
        };
        match why {
            RemovalJustification::FreelyTrivial => {
                if !target.is_empty() {
                    return Err(refuse("relator is not freely trivial"));
                }
            }
            RemovalJustification::Duplicate => {
                let key = canonical_relator(target);
                let dup = self
                    .relators
                    .iter()
                    .enumerate()
                    .any(|(i, r)| i != idx && canonical_relator(&r.word) == key);
                if !dup {
                    return Err(refuse("no other relator has the same canonical form"));
                }
            }
            RemovalJustification::Certified(cert) => {
                let report = check_certificate(cert);
                if !report.is_valid() {
                    return Err(refuse(&format!("certificate invalid: {report}")));
                }
                if cert.uses_label(label) {
                    return Err(refuse("certificate uses the relator it removes"));
                }
                for used in cert.used_labels() {
                    let ours = self.relator(&used).ok_or_else(|| refuse(&format!("certificate uses unknown relator {used}")))?;
                    let theirs = cert
                        .relator_word(&used)
                        .and_then(|w| w.rehome(&self.alphabet).ok())
                        .ok_or_else(|| refuse(&format!("certificate relator {used} not over this alphabet")))?;
                    if canonical_relator(&ours.word) != canonical_relator(&theirs) {
                        return Err(refuse(&format!("certificate relator {used} differs from presentation")));
                    }
                }
                let over = |w: Word| w.rehome(&self.alphabet).map_err(|_| refuse("certificate words not over this alphabet"));
                let start = over(cert.start_word())?;
                let end = over(cert.target_word())?;
                let relation = start.multiply(&end.inverse()).expect("same alphabet");
                if canonical_relator(&relation) != canonical_relator(target) {
                    return Err(refuse("certificate does not derive this relator"));
                }
            }
        }
        let mut relators = self.relators.clone();
        relators.remove(idx);
        Ok(Presentation {
            alphabet: self.alphabet.clone(),
            relators,
        })
    }

    /// Greedy cleanup to a fixpoint: canonical relator forms, no empty or
    /// duplicate relators, and no generator defined by a relator of length ≤ 2.
    pub fn simplify(&self) -> Presentation {
        let mut p = self.clone();
        loop {
            let mut seen = HashSet::new();
            let mut relators = Vec::new();
            for r in &p.relators {
                let word = canonical_relator(&r.word);
                if word.is_empty() || !seen.insert(word.letters().to_vec()) {
                    continue;
                }
                relators.push(Relator {
                    word,
                    label: r.label.clone(),
                    guard: r.guard.clone(),
                });
            }
            p.relators = relators;
            match p.elimination_candidate() {
                Some((gen, idx)) => p = p.eliminate(gen, idx),
                None => return p,
            }
        }
    }

    /// First relator of length ≤ 2 that expresses a generator through a different one
    /// (or trivially); within it, the generator latest in alphabet order.
    fn elimination_candidate(&self) -> Option<(usize, usize)> {
        for (i, r) in self.relators.iter().enumerate() {
            let letters = r.word.letters();
            match letters {
                [single] => return Some((single.gen, i)),
                [x, y] if x.gen != y.gen => return Some((x.gen.max(y.gen), i)),
                _ => {}
            }
        }
        None
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{} ∣ ", self.alphabet.names().join(", "))?;
        let rels: Vec<String> = self.relators.iter().map(|r| r.word.to_string()).collect();
        write!(f, "{}⟩", rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn pres(text: &str) -> Presentation {
        parse_presentation(text).unwrap()
    }

    #[test]
    fn file_round_trip() {
        let p = pres("# T(N_{3,0})\ngen: a1 a2\nrel[braid]: a1 a2 a1 a2' a1' a2'\n# guard: always\nrel[six]: (a1 a2)^6\n");
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relator("six").unwrap().guard.as_deref(), Some("always"));
        let again = pres(&p.to_text());
        assert_eq!(again, p);
    }

    #[test]
    fn validate_examples() {
        let ok = parse_source("gen: a1\nrel[r]: a1 a1\n").unwrap();
        assert!(validate_source(&ok).is_empty());
        assert!(pres("gen: a1\nrel[r]: a1 a1\n").validate().is_empty());

        let unknown = parse_source("gen: a1\nrel[r]: b\n").unwrap();
        assert_eq!(
            validate_source(&unknown),
            vec![Diagnostic::UnknownGenerator {
                label: "r".into(),
                name: "b".into()
            }]
        );

        let dup = parse_source("gen: a1 a2\nrel[A2]: a1 a2 a1 a2' a1' a2'\nrel[A2]: a1 a1\n").unwrap();
        assert_eq!(validate_source(&dup), vec![Diagnostic::DuplicateLabel("A2".into())]);

        let unred = parse_source("gen: a1 a2\nrel[u]: a1 a2 a2' a1\n").unwrap();
        assert_eq!(validate_source(&unred), vec![Diagnostic::Unreduced { label: "u".into() }]);
        assert!(parse_presentation("gen: a1 a2\nrel[u]: a1 a2 a2' a1\n").is_ok());
        assert!(parse_presentation("gen: a1\nrel[r]: b\n").is_err());

        let mut p = pres("gen: a1\nrel[x]: a1\n");
        let w = parse_word("a1 a1", p.alphabet()).unwrap();
        p.push("x", w, None);
        assert_eq!(p.validate(), vec![Diagnostic::DuplicateLabel("x".into())]);
    }

    #[test]
    fn format_errors() {
        assert!(matches!(parse_source("gen a1\n"), Err(PresentationError::Format { line: 1, .. })));
        assert!(matches!(
            parse_source("gen: a1\nrel[]: a1\n"),
            Err(PresentationError::Format { line: 2, .. })
        ));
        assert!(matches!(
            parse_source("gen: a1\nrel[x] a1\n"),
            Err(PresentationError::Format { line: 2, .. })
        ));
    }

    #[test]
    fn add_generator() {
        let p = pres("gen: a1 a2 a3 a4\n");
        let def = parse_word("(a1 a2 a3 a4)^5", p.alphabet()).unwrap();
        let q = p.tietze_add_generator("rho", &def).unwrap();
        assert_eq!(q.relators()[0].word.to_string(), format!("rho {}", def.inverse()));

        let t = pres("gen: a1\nrel[r]: a1 a1\n");
        let q = t.tietze_add_generator("g", &Word::empty(t.alphabet())).unwrap();
        assert_eq!(q.relators()[1].word.to_string(), "g");
        let q = t
            .tietze_add_generator("g", &parse_word("a1 a1", t.alphabet()).unwrap())
            .unwrap();
        assert_eq!(q.abelianization(), t.abelianization());
        assert_eq!(q.abelianization(), AbelianInvariants::from_small(0, &[2]));
        assert_eq!(
            t.tietze_add_generator("a1", &Word::empty(t.alphabet())),
            Err(PresentationError::NameCollision("a1".into()))
        );
    }

    #[test]
    fn remove_generator() {
        let p = pres("gen: a1 y2\nrel[r1]: y2\nrel[r2]: a1' y2 a1\nrel[r3]: a1 a1\n");
        let q = p.tietze_remove_generator("y2").unwrap();
        assert_eq!(q.to_text(), "gen: a1\nrel[r3]: a1 a1\n");

        let p = pres("gen: a b\nrel[r]: b a'\n");
        let q = p.tietze_remove_generator("b").unwrap();
        assert_eq!(q.to_text(), "gen: a\n");

        let p = pres("gen: a b\nrel[r]: b b a\n");
        assert_eq!(
            p.tietze_remove_generator("b"),
            Err(PresentationError::NoDefiningRelator("b".into()))
        );
    }

    #[test]
    fn remove_generator_from_middle_of_relator() {
        let p = pres("gen: a b c\nrel[d]: a b' c\nrel[u]: b b\n");
        let q = p.tietze_remove_generator("b").unwrap();
        // b = c a
        assert_eq!(q.relators()[0].word.to_string(), "c a c a");
        assert_eq!(q.abelianization(), p.abelianization());
    }

    #[test]
    fn canonical_form() {
        let a = Alphabet::new(["a1", "y2"]).unwrap();
        let w = parse_word("y2 a1 y2' a1'", &a).unwrap();
        assert_eq!(canonical_relator(&w).to_string(), "a1 y2 a1' y2'");
        let b = Alphabet::new(["a1", "a2"]).unwrap();
        let braid = parse_word("a1 a2 a1 a2' a1' a2'", &b).unwrap();
        assert_eq!(canonical_relator(&braid), braid);
        let other = parse_word("a1' a2' a1' a2 a1 a2", &b).unwrap();
        assert_eq!(canonical_relator(&other), braid);
        assert_eq!(canonical_relator(&parse_word("a2 a1 a1'", &b).unwrap()).to_string(), "a2");
    }

    #[test]
    fn simplify_examples() {
        let p = pres("gen: a1 y2\nrel[r1]: y2\nrel[r2]: y2'\nrel[r3]: a1 a1\n");
        assert_eq!(p.simplify().to_text(), "gen: a1\nrel[r3]: a1 a1\n");

        let q = pres("gen: a1 a2\nrel[b]: a1 a2 a1 a2' a1' a2'\nrel[c]: (a1 a2)^6\n");
        assert_eq!(q.simplify(), q);

        let d = pres("gen: a1 a2\nrel[b]: a1 a2 a1 a2' a1' a2'\nrel[b2]: a2 a1 a2 a1' a2' a1'\n");
        assert_eq!(d.simplify().relator_count(), 1);
    }

    #[test]
    fn remove_relator_rules() {
        let p = pres("gen: a1\nrel[e]: a1 a1'\nrel[x]: a1 a1\nrel[y]: a1' a1'\n");
        assert!(p.remove_relator("e", RemovalJustification::FreelyTrivial).is_ok());
        assert!(p.remove_relator("x", RemovalJustification::FreelyTrivial).is_err());
        assert!(p.remove_relator("x", RemovalJustification::Duplicate).is_ok());
        let single = pres("gen: a1\nrel[x]: a1 a1\n");
        assert!(single.remove_relator("x", RemovalJustification::Duplicate).is_err());
        assert!(matches!(
            p.remove_relator("zz", RemovalJustification::Duplicate),
            Err(PresentationError::UnknownLabel(_))
        ));
    }
}
