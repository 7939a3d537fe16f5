//! Relator generators for the infinite relation schemata: chain, lantern,
//! extended lantern, and point/crosscap push macros.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::homology::{transvection, HomologyError, Mod2Class, Mod2Matrix, SurfaceModel};
use crate::word::{Alphabet, Letter, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("bad chain configuration: {0}")]
    BadChainConfiguration(String),
    #[error("bad lantern configuration: {0}")]
    BadLanternConfiguration(String),
    #[error("push `{0}` lacks side data")]
    MissingSideData(String),
    #[error("no class for `{0}`")]
    MissingClass(String),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A twist about a named curve; `inverse` selects the opposite orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistSymbol {
    pub name: String,
    pub inverse: bool,
}

impl TwistSymbol {
    pub fn new(name: &str) -> Self {
        TwistSymbol {
            name: name.to_string(),
            inverse: false,
        }
    }

    /// Parses `name` or `name'`.
    pub fn parse(text: &str) -> Self {
        match text.strip_suffix('\'') {
            Some(n) => TwistSymbol {
                name: n.to_string(),
                inverse: true,
            },
            None => TwistSymbol::new(text),
        }
    }

    pub fn inv(&self) -> Self {
        TwistSymbol {
            name: self.name.clone(),
            inverse: !self.inverse,
        }
    }

    pub fn letter(&self, alphabet: &Alphabet) -> Result<Letter, WordError> {
        let gen = alphabet
            .index_of(&self.name)
            .ok_or_else(|| WordError::UnknownGenerator(self.name.clone()))?;
        Ok(Letter::new(gen, self.inverse))
    }
}

impl fmt::Display for TwistSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.name, if self.inverse { "'" } else { "" })
    }
}

/// Curve classes by symbol name.
pub type ClassMap = BTreeMap<String, Mod2Class>;

fn class_of(classes: &ClassMap, s: &TwistSymbol) -> Result<Mod2Class, SchemaError> {
    classes.get(&s.name).copied().ok_or_else(|| SchemaError::MissingClass(s.name.clone()))
}

fn word_of(alphabet: &Arc<Alphabet>, symbols: &[&TwistSymbol]) -> Result<Word, SchemaError> {
    let letters = symbols.iter().map(|s| s.letter(alphabet)).collect::<Result<Vec<_>, _>>()?;
    Ok(Word::from_letters(alphabet, letters))
}

/// Order of the curves along the path their pairing graph forms, if it is a path.
pub fn chain_path(m: &SurfaceModel, classes: &[Mod2Class]) -> Option<Vec<usize>> {
    let k = classes.len();
    if k == 0 {
        return None;
    }
    let adj = |i: usize, j: usize| i != j && m.pairing(classes[i], classes[j]);
    let degree = |i: usize| (0..k).filter(|&j| adj(i, j)).count();
    let edges: usize = (0..k).map(degree).sum::<usize>() / 2;
    if edges != k - 1 || (0..k).any(|i| degree(i) > 2) {
        return None;
    }
    let start = (0..k).find(|&i| degree(i) <= 1)?;
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(next) = (0..k).find(|&j| j != prev && adj(cur, j)) {
        path.push(next);
        prev = cur;
        cur = next;
    }
    (path.len() == k).then_some(path)
}

/// k-chain relator `(t1 … tk)^(k+1) (b0 b1)^-1` for odd k, `(t1 … tk)^(2k+2) b0^-1`
/// for even k. Boundary curves that bound a disk or a Möbius band are left out.
///
/// The curves may be listed in any product order whose pairing graph is a path.
/// Required mod 2: every curve two-sided, path pairings 1 and the rest 0, and
/// each boundary class equal to the sum of every other curve along the path
/// (odd k) or 0 (even k); a left-out boundary forces that sum to be 0.
pub fn gen_chain(
    m: &SurfaceModel,
    alphabet: &Arc<Alphabet>,
    curves: &[TwistSymbol],
    boundary: &[TwistSymbol],
    classes: &ClassMap,
) -> Result<Word, SchemaError> {
    let k = curves.len();
    let bad = |msg: String| SchemaError::BadChainConfiguration(msg);
    if k == 0 {
        return Err(bad("empty chain".into()));
    }
    let max_boundary = if k % 2 == 1 { 2 } else { 1 };
    if boundary.len() > max_boundary {
        return Err(bad(format!("a {k}-chain has at most {max_boundary} boundary curves")));
    }
    let cls = curves.iter().map(|c| class_of(classes, c)).collect::<Result<Vec<_>, _>>()?;
    for (c, &x) in curves.iter().zip(&cls) {
        if !m.is_two_sided(x) {
            return Err(bad(format!("{c} is one-sided")));
        }
    }
    let path = chain_path(m, &cls).ok_or_else(|| bad("pairing graph is not a path".into()))?;
    let expected = if k % 2 == 1 {
        path.iter().step_by(2).fold(Mod2Class::ZERO, |acc, &i| acc + cls[i])
    } else {
        Mod2Class::ZERO
    };
    for b in boundary {
        let x = class_of(classes, b)?;
        if x != expected {
            return Err(bad(format!(
                "boundary {b} has class {}, expected {}",
                m.format_class(x),
                m.format_class(expected)
            )));
        }
    }
    if boundary.len() < max_boundary && !expected.is_zero() {
        return Err(bad(format!(
            "left-out boundary curve needs class 0, chain gives {}",
            m.format_class(expected)
        )));
    }
    let refs: Vec<&TwistSymbol> = curves.iter().collect();
    let unit = word_of(alphabet, &refs)?;
    let power = if k % 2 == 1 { k + 1 } else { 2 * k + 2 };
    let rhs = word_of(alphabet, &boundary.iter().collect::<Vec<_>>())?;
    Ok(unit.power(power as i64).multiply(&rhs.inverse())?)
}

/// Lantern relator `d1 d2 d3 (d4 d5 d6 d7)^-1`; `None` marks a curve bounding
/// a disk (or the marked point, for the extended lantern) and is left out.
///
/// Required mod 2: all classes two-sided with pairwise pairing 0,
/// d4+d5+d6+d7 = 0, and {d1,d2,d3} = {d4+d5, d4+d6, d4+d7} as multisets.
pub fn gen_lantern(
    m: &SurfaceModel,
    alphabet: &Arc<Alphabet>,
    curves: &[Option<TwistSymbol>; 7],
    classes: &ClassMap,
) -> Result<Word, SchemaError> {
    let bad = |msg: String| SchemaError::BadLanternConfiguration(msg);
    let mut cls = [Mod2Class::ZERO; 7];
    for (i, c) in curves.iter().enumerate() {
        if let Some(s) = c {
            cls[i] = class_of(classes, s)?;
            if !m.is_two_sided(cls[i]) {
                return Err(bad(format!("{s} is one-sided")));
            }
        }
    }
    for i in 0..7 {
        for j in i + 1..7 {
            if m.pairing(cls[i], cls[j]) {
                return Err(bad(format!("d{} and d{} intersect mod 2", i + 1, j + 1)));
            }
        }
    }
    if !(cls[3] + cls[4] + cls[5] + cls[6]).is_zero() {
        return Err(bad("boundary classes do not sum to 0".into()));
    }
    let mut interior = vec![cls[0].0, cls[1].0, cls[2].0];
    let mut sums = vec![(cls[3] + cls[4]).0, (cls[3] + cls[5]).0, (cls[3] + cls[6]).0];
    interior.sort_unstable();
    sums.sort_unstable();
    if interior != sums {
        return Err(bad("interior classes are not the pairwise boundary sums".into()));
    }
    let lhs: Vec<&TwistSymbol> = curves[..3].iter().flatten().collect();
    let rhs: Vec<&TwistSymbol> = curves[3..].iter().flatten().collect();
    Ok(word_of(alphabet, &lhs)?.multiply(&word_of(alphabet, &rhs)?.inverse())?)
}

/// Extended lantern: the lantern with d7 bounding the marked point.
pub fn gen_extended_lantern(
    m: &SurfaceModel,
    alphabet: &Arc<Alphabet>,
    curves: &[Option<TwistSymbol>; 6],
    classes: &ClassMap,
) -> Result<Word, SchemaError> {
    let [a, b, c, d, e, f] = curves.clone();
    gen_lantern(m, alphabet, &[a, b, c, d, e, f, None], classes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PushKind {
    Point,
    Crosscap,
}

impl PushKind {
    pub fn parse(s: &str) -> Option<PushKind> {
        match s {
            "point" => Some(PushKind::Point),
            "crosscap" => Some(PushKind::Crosscap),
            _ => None,
        }
    }
}

/// Twists about the two boundary curves of a loop's regular neighbourhood;
/// `None` for a curve that is null-homotopic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideData {
    pub right: Option<TwistSymbol>,
    pub left: Option<TwistSymbol>,
}

/// A pushing map along a loop, `right · left^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushMacro {
    pub loop_name: String,
    pub kind: PushKind,
    pub right: Option<TwistSymbol>,
    pub left: Option<TwistSymbol>,
}

impl PushMacro {
    pub fn word(&self, alphabet: &Arc<Alphabet>) -> Result<Word, SchemaError> {
        let mut syms = Vec::new();
        if let Some(r) = &self.right {
            syms.push(r.clone());
        }
        if let Some(l) = &self.left {
            syms.push(l.inv());
        }
        word_of(alphabet, &syms.iter().collect::<Vec<_>>())
    }

    /// Mod-2 image `T(right) T(left)^-1`.
    pub fn image(&self, m: &SurfaceModel, classes: &ClassMap) -> Result<Mod2Matrix, SchemaError> {
        let mut out = Mod2Matrix::identity(m.rank());
        for s in [&self.right, &self.left].into_iter().flatten() {
            out = out.compose(&transvection(m, class_of(classes, s)?)?);
        }
        Ok(out)
    }
}

pub fn expand_push(kind: PushKind, loop_name: &str, side: Option<SideData>) -> Result<PushMacro, SchemaError> {
    let side = side.ok_or_else(|| SchemaError::MissingSideData(loop_name.to_string()))?;
    Ok(PushMacro {
        loop_name: loop_name.to_string(),
        kind,
        right: side.right,
        left: side.left,
    })
}

/// Uniformly random two-sided class (rejection sampling).
pub fn random_two_sided<R: Rng>(m: &SurfaceModel, rng: &mut R) -> Mod2Class {
    let mask = if m.rank() == 64 { u64::MAX } else { (1u64 << m.rank()) - 1 };
    loop {
        let c = Mod2Class(rng.gen::<u64>() & mask);
        if m.is_two_sided(c) {
            return c;
        }
    }
}

/// Product of `steps` transvections about random two-sided classes.
pub fn random_isometry<R: Rng>(m: &SurfaceModel, rng: &mut R, steps: usize) -> Mod2Matrix {
    let mut out = Mod2Matrix::identity(m.rank());
    for _ in 0..steps {
        let t = transvection(m, random_two_sided(m, rng)).expect("two-sided");
        out = out.compose(&t);
    }
    out
}

/// Standard k-chain α1, …, αk (αi = μi + μ(i+1)) on N_{k+1} or larger, with the
/// boundary class the chain forces.
pub fn standard_chain(m: &SurfaceModel, k: usize) -> Option<(Vec<Mod2Class>, Mod2Class)> {
    if k == 0 || k + 1 > m.genus() {
        return None;
    }
    let curves: Vec<Mod2Class> = (1..=k).map(|i| m.crosscap_range(i, i + 1)).collect();
    let boundary = if k % 2 == 1 {
        curves.iter().step_by(2).fold(Mod2Class::ZERO, |a, &c| a + c)
    } else {
        Mod2Class::ZERO
    };
    Some((curves, boundary))
}

/// A lantern configuration on N_g, g ≥ 4: d4 = μ1+μ2, d5 = μ3+μ4,
/// d6 = μ1+…+μ4, d7 = 0, interiors the pairwise sums.
pub fn standard_lantern(m: &SurfaceModel) -> Option<[Mod2Class; 7]> {
    if m.genus() < 4 {
        return None;
    }
    let d4 = m.crosscap_range(1, 2);
    let d5 = m.crosscap_range(3, 4);
    let d6 = m.crosscap_range(1, 4);
    let d7 = d4 + d5 + d6;
    Some([d4 + d5, d4 + d6, d4 + d7, d4, d5, d6, d7])
}
