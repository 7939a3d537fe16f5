//! Free-group words over named generator alphabets.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Default bound on `|k|` in `(W)^k`.
pub const DEFAULT_MAX_EXPONENT: i64 = (1 << 31) - 1;
/// Default cap on the number of letters in any word produced by the parser.
pub const DEFAULT_MAX_LENGTH: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("syntax error at byte {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("exponent {value} exceeds bound {bound}")]
    ExponentOverflow { value: String, bound: i64 },
    #[error("word length {length} exceeds cap {cap}")]
    LengthCap { length: usize, cap: usize },
    #[error("words are over different alphabets")]
    AlphabetMismatch,
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
}

/// Returns true for names matching `[a-z][a-z0-9_]*`.
pub fn is_valid_generator_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

/// A validated generator name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(String);

impl Generator {
    pub fn new(name: &str) -> Result<Self, WordError> {
        if is_valid_generator_name(name) {
            Ok(Generator(name.to_string()))
        } else {
            Err(WordError::InvalidName(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Ordered set of generator names.
#[derive(Debug, Clone)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>, WordError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut list = Vec::new();
        let mut index = HashMap::new();
        for name in names {
            let name = name.as_ref();
            if !is_valid_generator_name(name) {
                return Err(WordError::InvalidName(name.to_string()));
            }
            if index.insert(name.to_string(), list.len()).is_some() {
                return Err(WordError::DuplicateGenerator(name.to_string()));
            }
            list.push(name.to_string());
        }
        Ok(Arc::new(Alphabet { names: list, index }))
    }

    pub fn from_generators(gens: &[Generator]) -> Result<Arc<Self>, WordError> {
        Self::new(gens.iter().map(|g| g.name()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }
}

fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A generator or its inverse, by alphabet index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// Appends `letter` to a reduced stack, cancelling if possible. Returns true on cancellation.
fn push_reduced(stack: &mut Vec<Letter>, letter: Letter) -> bool {
    if let Some(&last) = stack.last() {
        if last.cancels(letter) {
            stack.pop();
            return true;
        }
    }
    stack.push(letter);
    false
}

pub fn free_reduce(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out = Vec::new();
    for l in letters {
        push_reduced(&mut out, l);
    }
    out
}

/// A freely reduced word.
#[derive(Clone)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    letters: Vec<Letter>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && same_alphabet(&self.alphabet, &other.alphabet)
    }
}

impl Eq for Word {}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.alphabet.name(l.gen))?;
            if l.inverse {
                f.write_str("'")?;
            }
        }
        Ok(())
    }
}

impl Word {
    pub fn empty(alphabet: &Arc<Alphabet>) -> Self {
        Word {
            alphabet: alphabet.clone(),
            letters: Vec::new(),
        }
    }

    /// Builds a word from arbitrary letters, reducing freely.
    pub fn from_letters(alphabet: &Arc<Alphabet>, letters: impl IntoIterator<Item = Letter>) -> Self {
        let letters = free_reduce(letters);
        debug_assert!(letters.iter().all(|l| l.gen < alphabet.len()));
        Word {
            alphabet: alphabet.clone(),
            letters,
        }
    }

    pub fn generator(alphabet: &Arc<Alphabet>, name: &str) -> Result<Self, WordError> {
        let gen = alphabet
            .index_of(name)
            .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
        Ok(Word {
            alphabet: alphabet.clone(),
            letters: vec![Letter::new(gen, false)],
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Result<Word, WordError> {
        if !same_alphabet(&self.alphabet, &other.alphabet) {
            return Err(WordError::AlphabetMismatch);
        }
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Ok(Word {
            alphabet: self.alphabet.clone(),
            letters,
        })
    }

    pub fn inverse(&self) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// `f · w · f⁻¹`, reduced.
    pub fn conjugate(f: &Word, w: &Word) -> Result<Word, WordError> {
        f.multiply(w)?.multiply(&f.inverse())
    }

    /// Splits the word as `conjugator · core · conjugator⁻¹` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let n = self.letters.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k].cancels(self.letters[n - 1 - k]) {
            k += 1;
        }
        let core = self.letters[k..n - k].to_vec();
        let conj = self.letters[..k].to_vec();
        (
            Word {
                alphabet: self.alphabet.clone(),
                letters: core,
            },
            Word {
                alphabet: self.alphabet.clone(),
                letters: conj,
            },
        )
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(a), Some(b)) => self.letters.len() == 1 || !a.cancels(*b),
            _ => true,
        }
    }

    /// Signed count of occurrences of the named generator (0 if absent from the alphabet).
    pub fn exponent_sum(&self, name: &str) -> i64 {
        match self.alphabet.index_of(name) {
            Some(g) => self.exponent_sum_index(g),
            None => 0,
        }
    }

    pub fn exponent_sum_index(&self, gen: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| if l.inverse { -1 } else { 1 })
            .sum()
    }

    pub fn occurrences(&self, gen: usize) -> usize {
        self.letters.iter().filter(|l| l.gen == gen).count()
    }

    /// Length of `self^k` after reduction, without building it.
    pub fn power_length(&self, k: i64) -> usize {
        if k == 0 || self.is_empty() {
            return 0;
        }
        let (core, conj) = self.cyclic_reduce();
        2 * conj.len() + core.len() * k.unsigned_abs() as usize
    }

    pub fn power(&self, k: i64) -> Word {
        if k == 0 || self.is_empty() {
            return Word::empty(&self.alphabet);
        }
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let (core, conj) = base.cyclic_reduce();
        let mut letters = conj.letters.clone();
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&core.letters);
        }
        letters.extend(conj.letters.iter().rev().map(|l| l.inv()));
        Word {
            alphabet: self.alphabet.clone(),
            letters: free_reduce(letters),
        }
    }

    /// Homomorphic image into `target`. Generators absent from `map` go to the
    /// same-named generator of `target`.
    pub fn substitute(&self, target: &Arc<Alphabet>, map: &BTreeMap<String, Word>) -> Result<Word, WordError> {
        let mut images: Vec<Option<Word>> = vec![None; self.alphabet.len()];
        let mut out: Vec<Letter> = Vec::new();
        for &l in &self.letters {
            if images[l.gen].is_none() {
                let name = self.alphabet.name(l.gen);
                let image = match map.get(name) {
                    Some(w) => {
                        if !same_alphabet(&w.alphabet, target) {
                            return Err(WordError::AlphabetMismatch);
                        }
                        w.clone()
                    }
                    None => Word::generator(target, name)?,
                };
                images[l.gen] = Some(image);
            }
            let image = images[l.gen].as_ref().expect("image computed above");
            if l.inverse {
                for &m in image.letters.iter().rev() {
                    push_reduced(&mut out, m.inv());
                }
            } else {
                for &m in &image.letters {
                    push_reduced(&mut out, m);
                }
            }
        }
        Ok(Word {
            alphabet: target.clone(),
            letters: out,
        })
    }

    /// Re-expresses the word over another alphabet by generator name.
    pub fn rehome(&self, target: &Arc<Alphabet>) -> Result<Word, WordError> {
        self.substitute(target, &BTreeMap::new())
    }

    /// Indices of generators that occur in the word.
    pub fn support(&self) -> Vec<usize> {
        let mut seen: Vec<usize> = self.letters.iter().map(|l| l.gen).collect();
        seen.sort_unstable();
        seen.dedup();
        seen
    }
}

/// Parser limits.
#[derive(Debug, Clone, Copy)]
pub struct ParseLimits {
    pub max_exponent: i64,
    pub max_length: usize,
}

impl Default for ParseLimits {
    fn default() -> Self {
        ParseLimits {
            max_exponent: DEFAULT_MAX_EXPONENT,
            max_length: DEFAULT_MAX_LENGTH,
        }
    }
}

/// Result of parsing, recording whether free cancellation happened.
#[derive(Debug, Clone)]
pub struct ParsedWord {
    pub word: Word,
    pub cancelled: bool,
}

pub fn parse_word(text: &str, alphabet: &Arc<Alphabet>) -> Result<Word, WordError> {
    parse_word_with(text, alphabet, ParseLimits::default()).map(|p| p.word)
}

pub fn parse_word_with(text: &str, alphabet: &Arc<Alphabet>, limits: ParseLimits) -> Result<ParsedWord, WordError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        alphabet,
        limits,
        cancelled: false,
        reduce: true,
    };
    let letters = parser.word(0)?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error("unexpected character"));
    }
    Ok(ParsedWord {
        word: Word {
            alphabet: alphabet.clone(),
            letters,
        },
        cancelled: parser.cancelled,
    })
}

/// Parses with the same grammar but keeps the letters exactly as written
/// (powers are repeated, nothing cancels).
pub fn parse_letters(text: &str, alphabet: &Arc<Alphabet>) -> Result<Vec<Letter>, WordError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        alphabet,
        limits: ParseLimits::default(),
        cancelled: false,
        reduce: false,
    };
    let letters = parser.word(0)?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error("unexpected character"));
    }
    Ok(letters)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    alphabet: &'a Arc<Alphabet>,
    limits: ParseLimits,
    cancelled: bool,
    reduce: bool,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> WordError {
        WordError::SyntaxError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn append(&mut self, out: &mut Vec<Letter>, letters: &[Letter]) -> Result<(), WordError> {
        for &l in letters {
            if !self.reduce {
                out.push(l);
            } else if push_reduced(out, l) {
                self.cancelled = true;
            }
        }
        if out.len() > self.limits.max_length {
            return Err(WordError::LengthCap {
                length: out.len(),
                cap: self.limits.max_length,
            });
        }
        Ok(())
    }

    fn word(&mut self, depth: usize) -> Result<Vec<Letter>, WordError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b')') if depth > 0 => break,
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.word(depth + 1)?;
                    self.skip_ws();
                    if self.peek() != Some(b')') {
                        return Err(self.error("expected `)`"));
                    }
                    self.pos += 1;
                    self.skip_ws();
                    if self.peek() != Some(b'^') {
                        return Err(self.error("expected `^` after `)`"));
                    }
                    self.pos += 1;
                    self.skip_ws();
                    let k = self.signed_int()?;
                    let base = Word {
                        alphabet: self.alphabet.clone(),
                        letters: inner,
                    };
                    let length = base.power_length(k);
                    if length > self.limits.max_length {
                        return Err(WordError::LengthCap {
                            length,
                            cap: self.limits.max_length,
                        });
                    }
                    if base.len() * (k.unsigned_abs() as usize) != length {
                        self.cancelled = true;
                    }
                    if self.reduce {
                        let expanded = base.power(k);
                        self.append(&mut out, &expanded.letters)?;
                    } else {
                        let unit: Vec<Letter> = if k < 0 {
                            base.letters.iter().rev().map(|l| l.inv()).collect()
                        } else {
                            base.letters.clone()
                        };
                        for _ in 0..k.unsigned_abs() {
                            self.append(&mut out, &unit)?;
                        }
                    }
                }
                Some(c) if c.is_ascii_lowercase() => {
                    let start = self.pos;
                    while let Some(c) = self.peek() {
                        if c.is_ascii_lowercase() || c.is_ascii_digit() || c == b'_' {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                    let gen = self
                        .alphabet
                        .index_of(name)
                        .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
                    let inverse = if self.peek() == Some(b'\'') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    self.append(&mut out, &[Letter::new(gen, inverse)])?;
                    match self.peek() {
                        None | Some(b'(') | Some(b')') => {}
                        Some(c) if c.is_ascii_whitespace() => {}
                        Some(_) => return Err(self.error("expected whitespace between terms")),
                    }
                }
                Some(_) => return Err(self.error("unexpected character")),
            }
        }
        Ok(out)
    }

    fn signed_int(&mut self) -> Result<i64, WordError> {
        let start = self.pos;
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let digits_start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.error("expected integer exponent"));
        }
        let digits = std::str::from_utf8(&self.src[digits_start..self.pos]).expect("ascii");
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let overflow = || WordError::ExponentOverflow {
            value: text.to_string(),
            bound: self.limits.max_exponent,
        };
        let magnitude: i64 = digits.parse().map_err(|_| overflow())?;
        if magnitude > self.limits.max_exponent {
            return Err(overflow());
        }
        Ok(if negative { -magnitude } else { magnitude })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Arc<Alphabet> {
        Alphabet::new(["a1", "a2", "e", "y2", "y"]).unwrap()
    }

    fn w(text: &str) -> Word {
        parse_word(text, &abc()).unwrap()
    }

    #[test]
    fn inverse_pair_cancels() {
        assert!(w("a1 a1'").is_empty());
    }

    #[test]
    fn exponent_expands() {
        assert_eq!(w("(a1 a2)^6").to_string(), "a1 a2 a1 a2 a1 a2 a1 a2 a1 a2 a1 a2");
        assert_eq!(w("(a1 a2)^-2").to_string(), "a2' a1' a2' a1'");
        assert!(w("(a1 a2)^0").is_empty());
    }

    #[test]
    fn braid_relator_parses() {
        let b = w("a1 a2 a1 a2' a1' a2'");
        assert_eq!(b.len(), 6);
        assert_eq!(b.to_string(), "a1 a2 a1 a2' a1' a2'");
    }

    #[test]
    fn nested_groups() {
        assert_eq!(w("((a1)^2 a2)^2").to_string(), "a1 a1 a2 a1 a1 a2");
        assert_eq!(w("a1(a2)^1a1").to_string(), "a1 a2 a1");
    }

    #[test]
    fn parse_errors() {
        let a = abc();
        assert_eq!(parse_word("b", &a), Err(WordError::UnknownGenerator("b".into())));
        assert_eq!(parse_word("a1a2", &a), Err(WordError::UnknownGenerator("a1a2".into())));
        assert!(matches!(parse_word("(a1", &a), Err(WordError::SyntaxError { position: 3, .. })));
        assert!(matches!(parse_word("(a1)", &a), Err(WordError::SyntaxError { .. })));
        assert!(matches!(parse_word("a1^2", &a), Err(WordError::SyntaxError { position: 2, .. })));
        assert!(matches!(parse_word("A1", &a), Err(WordError::SyntaxError { position: 0, .. })));
        assert!(matches!(parse_word("(a1)^", &a), Err(WordError::SyntaxError { .. })));
        assert!(matches!(parse_word("a1''", &a), Err(WordError::SyntaxError { .. })));
        assert!(matches!(
            parse_word("(a1)^2147483648", &a),
            Err(WordError::ExponentOverflow { .. })
        ));
        assert!(matches!(
            parse_word("(a1)^99999999999999999999999", &a),
            Err(WordError::ExponentOverflow { .. })
        ));
    }

    #[test]
    fn exponent_bound_is_inclusive() {
        let limits = ParseLimits {
            max_exponent: 5,
            max_length: 100,
        };
        assert!(parse_word_with("(a1 a1')^2147483647", &abc(), ParseLimits::default()).is_ok());
        assert!(parse_word_with("(a1)^5", &abc(), limits).is_ok());
        assert!(parse_word_with("(a1)^-5", &abc(), limits).is_ok());
        assert!(matches!(
            parse_word_with("(a1)^6", &abc(), limits),
            Err(WordError::ExponentOverflow { .. })
        ));
    }

    #[test]
    fn length_cap_is_an_error() {
        let limits = ParseLimits {
            max_exponent: DEFAULT_MAX_EXPONENT,
            max_length: 10,
        };
        assert!(parse_word_with("(a1 a2)^5", &abc(), limits).is_ok());
        assert_eq!(
            parse_word_with("(a1 a2)^6", &abc(), limits).unwrap_err(),
            WordError::LengthCap { length: 12, cap: 10 }
        );
        // Conjugated powers only pay for the core.
        assert!(parse_word_with("(a1 a2 a1')^8", &abc(), limits).is_ok());
    }

    #[test]
    fn cancellation_is_reported() {
        let a = abc();
        assert!(!parse_word_with("a1 a2", &a, ParseLimits::default()).unwrap().cancelled);
        assert!(parse_word_with("a1 a2 a2' e", &a, ParseLimits::default()).unwrap().cancelled);
        assert!(parse_word_with("(a1 a2 a1')^2", &a, ParseLimits::default()).unwrap().cancelled);
    }

    #[test]
    fn multiply_examples() {
        assert!(w("a1 a2").multiply(&w("a2' a1'")).unwrap().is_empty());
        assert_eq!(w("a1").multiply(&w("a1")).unwrap().to_string(), "a1 a1");
        let b = Alphabet::new(["a2", "e", "a1"]).unwrap();
        let x = parse_word("a2 e a1", &b).unwrap();
        assert_eq!(x.multiply(&x).unwrap().to_string(), "a2 e a1 a2 e a1");
        let other = Alphabet::new(["a1"]).unwrap();
        assert_eq!(
            w("a1").multiply(&parse_word("a1", &other).unwrap()),
            Err(WordError::AlphabetMismatch)
        );
    }

    #[test]
    fn equal_alphabets_by_content_are_compatible() {
        let a = Alphabet::new(["a1", "a2"]).unwrap();
        let b = Alphabet::new(["a1", "a2"]).unwrap();
        let x = parse_word("a1", &a).unwrap();
        let y = parse_word("a2", &b).unwrap();
        assert_eq!(x.multiply(&y).unwrap().to_string(), "a1 a2");
    }

    #[test]
    fn invert_examples() {
        assert!(Word::empty(&abc()).inverse().is_empty());
        assert_eq!(w("a1 a2").inverse().to_string(), "a2' a1'");
        assert_eq!(w("(a1 a2)^6").inverse(), w("(a2' a1')^6"));
    }

    #[test]
    fn conjugate_examples() {
        let e = Word::empty(&abc());
        assert_eq!(Word::conjugate(&e, &w("a1 a2")).unwrap(), w("a1 a2"));
        assert_eq!(Word::conjugate(&w("a1"), &w("a1")).unwrap(), w("a1"));
        let c = Word::conjugate(&w("y2"), &w("a1")).unwrap();
        assert_eq!(c.to_string(), "y2 a1 y2'");
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (core, conj) = w("a2' a1 a2").cyclic_reduce();
        assert_eq!((core.to_string(), conj.to_string()), ("a1".into(), "a2'".into()));
        let (core, conj) = w("a1 a2 a1'").cyclic_reduce();
        assert_eq!((core.to_string(), conj.to_string()), ("a2".into(), "a1".into()));
        let b = w("a1 a2 a1 a2' a1' a2'");
        let (core, conj) = b.cyclic_reduce();
        assert_eq!(core, b);
        assert!(conj.is_empty());
        let (core, conj) = w("a1 a2 a2 a1'").cyclic_reduce();
        assert_eq!((core.to_string(), conj.to_string()), ("a2 a2".into(), "a1".into()));
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(w("y a1 y' a1").exponent_sum("y"), 0);
        assert_eq!(w("(a1 y)^2").exponent_sum("y"), 2);
        assert_eq!(Word::empty(&abc()).exponent_sum("a1"), 0);
        assert_eq!(w("a1").exponent_sum("nope"), 0);
    }

    #[test]
    fn substitute_examples() {
        let src = Alphabet::new(["a1", "a2", "a3", "a4", "rho"]).unwrap();
        let dst = Alphabet::new(["a1", "a2", "a3", "a4"]).unwrap();
        let image = parse_word("(a1 a2 a3 a4)^5", &dst).unwrap();
        let mut map = BTreeMap::new();
        map.insert("rho".to_string(), image.clone());
        let rho = parse_word("rho", &src).unwrap();
        assert_eq!(rho.substitute(&dst, &map).unwrap(), image);
        let x = parse_word("a1 a2' a3", &src).unwrap();
        assert_eq!(x.substitute(&src, &BTreeMap::new()).unwrap(), x);
        let cancel = parse_word("rho rho'", &src).unwrap();
        assert!(cancel.substitute(&dst, &map).unwrap().is_empty());
        assert_eq!(
            rho.substitute(&dst, &BTreeMap::new()),
            Err(WordError::UnknownGenerator("rho".into()))
        );
    }

    #[test]
    fn names() {
        assert!(is_valid_generator_name("a1"));
        assert!(is_valid_generator_name("bbar_2"));
        assert!(!is_valid_generator_name("1a"));
        assert!(!is_valid_generator_name(""));
        assert!(!is_valid_generator_name("aB"));
        assert!(Generator::new("").is_err());
        assert_eq!(
            Alphabet::new(["a", "a"]).unwrap_err(),
            WordError::DuplicateGenerator("a".into())
        );
    }
}
