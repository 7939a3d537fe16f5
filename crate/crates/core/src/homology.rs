//! Mod-2 first homology of N_{g,n} and the transvection action of Dehn twists.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::presentation::Presentation;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("class {0} is one-sided (self-pairing 1)")]
    OneSidedClass(String),
    #[error("no matrix assigned to generator `{0}`")]
    MissingAssignment(String),
    #[error("rank {0} exceeds the supported maximum of 64")]
    RankTooLarge(usize),
    #[error("cannot parse class `{0}`")]
    BadClass(String),
    #[error("genus must be at least 1")]
    BadGenus,
}

/// Standard model: basis μ₁…μ_g (crosscaps) then ∂₁…∂_{n−1} (boundaries).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurfaceModel {
    genus: usize,
    boundary: usize,
}

/// A vector of H₁(N_{g,n}; Z/2) as a bitmask over the model basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mod2Class(pub u64);

impl Mod2Class {
    pub const ZERO: Mod2Class = Mod2Class(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn add(self, other: Mod2Class) -> Mod2Class {
        Mod2Class(self.0 ^ other.0)
    }

    pub fn bit(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
}

impl std::ops::Add for Mod2Class {
    type Output = Mod2Class;
    fn add(self, rhs: Mod2Class) -> Mod2Class {
        Mod2Class(self.0 ^ rhs.0)
    }
}

impl SurfaceModel {
    pub fn new(genus: usize, boundary: usize) -> Result<Self, HomologyError> {
        if genus == 0 {
            return Err(HomologyError::BadGenus);
        }
        let m = SurfaceModel { genus, boundary };
        if m.rank() > 64 {
            return Err(HomologyError::RankTooLarge(m.rank()));
        }
        Ok(m)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn boundary(&self) -> usize {
        self.boundary
    }

    pub fn rank(&self) -> usize {
        self.genus + self.boundary.saturating_sub(1)
    }

    fn crosscap_mask(&self) -> u64 {
        if self.genus == 64 {
            u64::MAX
        } else {
            (1u64 << self.genus) - 1
        }
    }

    fn full_mask(&self) -> u64 {
        if self.rank() == 64 {
            u64::MAX
        } else {
            (1u64 << self.rank()) - 1
        }
    }

    /// μ_i, 1-based.
    pub fn crosscap(&self, i: usize) -> Mod2Class {
        assert!(i >= 1 && i <= self.genus, "crosscap index out of range");
        Mod2Class(1 << (i - 1))
    }

    /// ∂_j, 1-based, j < n.
    pub fn boundary_class(&self, j: usize) -> Mod2Class {
        assert!(j >= 1 && j < self.boundary, "boundary index out of range");
        Mod2Class(1 << (self.genus + j - 1))
    }

    /// μ_lo + … + μ_hi.
    pub fn crosscap_range(&self, lo: usize, hi: usize) -> Mod2Class {
        (lo..=hi).fold(Mod2Class::ZERO, |acc, i| acc + self.crosscap(i))
    }

    pub fn basis(&self) -> Vec<Mod2Class> {
        (0..self.rank()).map(|i| Mod2Class(1 << i)).collect()
    }

    /// All classes of the model, in increasing bitmask order.
    pub fn all_classes(&self) -> impl Iterator<Item = Mod2Class> {
        let top = self.full_mask();
        (0..=top).map(Mod2Class)
    }

    pub fn pairing(&self, x: Mod2Class, y: Mod2Class) -> bool {
        (x.0 & y.0 & self.crosscap_mask()).count_ones() % 2 == 1
    }

    pub fn is_two_sided(&self, c: Mod2Class) -> bool {
        !self.pairing(c, c)
    }

    pub fn contains(&self, c: Mod2Class) -> bool {
        c.0 & !self.full_mask() == 0
    }

    pub fn format_class(&self, c: Mod2Class) -> String {
        if c.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for i in 0..self.rank() {
            if c.bit(i) {
                if i < self.genus {
                    parts.push(format!("μ{}", i + 1));
                } else {
                    parts.push(format!("∂{}", i - self.genus + 1));
                }
            }
        }
        parts.join("+")
    }

    /// Parses `0` or sums like `μ1+μ3+∂1` (ASCII `mu1`, `d1` also accepted).
    pub fn parse_class(&self, text: &str) -> Result<Mod2Class, HomologyError> {
        let bad = || HomologyError::BadClass(text.to_string());
        let t = text.trim();
        if t == "0" {
            return Ok(Mod2Class::ZERO);
        }
        let mut c = Mod2Class::ZERO;
        for term in t.split('+') {
            let term = term.trim();
            let (is_mu, digits) = if let Some(d) = term.strip_prefix('μ').or_else(|| term.strip_prefix("mu")) {
                (true, d)
            } else if let Some(d) = term.strip_prefix('∂').or_else(|| term.strip_prefix('d')) {
                (false, d)
            } else {
                return Err(bad());
            };
            let i: usize = digits.parse().map_err(|_| bad())?;
            let v = if is_mu {
                if i == 0 || i > self.genus {
                    return Err(bad());
                }
                self.crosscap(i)
            } else {
                if i == 0 || i >= self.boundary {
                    return Err(bad());
                }
                self.boundary_class(i)
            };
            c = c + v;
        }
        Ok(c)
    }
}

/// Square 0/1 matrix stored by columns (column j is the image of basis vector j).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mod2Matrix {
    cols: Vec<u64>,
}

impl fmt::Debug for Mod2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mod2Matrix[")?;
        for (j, c) in self.cols.iter().enumerate() {
            if j > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c:b}")?;
        }
        write!(f, "]")
    }
}

impl Mod2Matrix {
    pub fn identity(rank: usize) -> Self {
        Mod2Matrix {
            cols: (0..rank).map(|i| 1u64 << i).collect(),
        }
    }

    pub fn from_columns(cols: Vec<u64>) -> Self {
        Mod2Matrix { cols }
    }

    pub fn columns(&self) -> &[u64] {
        &self.cols
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    pub fn is_identity(&self) -> bool {
        self.cols.iter().enumerate().all(|(i, &c)| c == 1u64 << i)
    }

    pub fn apply(&self, x: Mod2Class) -> Mod2Class {
        let mut out = 0u64;
        let mut bits = x.0;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            out ^= self.cols[j];
            bits &= bits - 1;
        }
        Mod2Class(out)
    }

    /// `self · other` (apply `other` first).
    pub fn compose(&self, other: &Mod2Matrix) -> Mod2Matrix {
        Mod2Matrix {
            cols: other.cols.iter().map(|&c| self.apply(Mod2Class(c)).0).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Mod2Matrix {
        let mut out = Mod2Matrix::identity(self.rank());
        for _ in 0..k {
            out = out.compose(self);
        }
        out
    }

    /// Inverse by Gaussian elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Mod2Matrix> {
        let n = self.rank();
        // Row-reduce rows of [A | I]; rows are read off the columns.
        let mut rows: Vec<(u64, u64)> = (0..n)
            .map(|i| {
                let mut r = 0u64;
                for (j, &c) in self.cols.iter().enumerate() {
                    if c >> i & 1 == 1 {
                        r |= 1 << j;
                    }
                }
                (r, 1u64 << i)
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| rows[r].0 >> col & 1 == 1)?;
            rows.swap(col, pivot);
            let p = rows[col];
            for r in 0..n {
                if r != col && rows[r].0 >> col & 1 == 1 {
                    rows[r].0 ^= p.0;
                    rows[r].1 ^= p.1;
                }
            }
        }
        // rows[i].1 is row i of the inverse.
        let mut cols = vec![0u64; n];
        for (i, row) in rows.iter().enumerate() {
            for (j, col) in cols.iter_mut().enumerate() {
                if row.1 >> j & 1 == 1 {
                    *col |= 1 << i;
                }
            }
        }
        Some(Mod2Matrix { cols })
    }

    pub fn preserves_pairing(&self, m: &SurfaceModel) -> bool {
        let basis = m.basis();
        basis.iter().all(|&x| {
            basis
                .iter()
                .all(|&y| m.pairing(self.apply(x), self.apply(y)) == m.pairing(x, y))
        })
    }
}

/// Action of the twist about a curve of class `c`: x ↦ x + ⟨x,c⟩c.
pub fn transvection(m: &SurfaceModel, c: Mod2Class) -> Result<Mod2Matrix, HomologyError> {
    if !m.is_two_sided(c) {
        return Err(HomologyError::OneSidedClass(m.format_class(c)));
    }
    Ok(Mod2Matrix {
        cols: m
            .basis()
            .into_iter()
            .map(|x| if m.pairing(x, c) { (x + c).0 } else { x.0 })
            .collect(),
    })
}

/// Generator name → matrix.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    matrices: BTreeMap<String, Mod2Matrix>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, m: Mod2Matrix) {
        self.matrices.insert(name.into(), m);
    }

    pub fn get(&self, name: &str) -> Option<&Mod2Matrix> {
        self.matrices.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.matrices.keys()
    }

    /// Assigns transvections for named classes.
    pub fn from_classes<'a>(
        m: &SurfaceModel,
        classes: impl IntoIterator<Item = (&'a str, Mod2Class)>,
    ) -> Result<Self, HomologyError> {
        let mut a = Assignment::new();
        for (name, c) in classes {
            a.insert(name, transvection(m, c)?);
        }
        Ok(a)
    }
}

/// Image of `w` (letters applied right to left as mapping classes, so the
/// product is taken in word order).
pub fn evaluate(w: &Word, rank: usize, assign: &Assignment) -> Result<Mod2Matrix, HomologyError> {
    let alphabet = w.alphabet();
    let mut cache: Vec<Option<(Mod2Matrix, Mod2Matrix)>> = vec![None; alphabet.len()];
    let mut acc = Mod2Matrix::identity(rank);
    for l in w.letters() {
        if cache[l.gen].is_none() {
            let name = alphabet.name(l.gen);
            let m = assign
                .get(name)
                .ok_or_else(|| HomologyError::MissingAssignment(name.to_string()))?;
            let inv = m
                .inverse()
                .ok_or_else(|| HomologyError::MissingAssignment(format!("{name} (singular)")))?;
            cache[l.gen] = Some((m.clone(), inv));
        }
        let (m, inv) = cache[l.gen].as_ref().expect("filled above");
        acc = acc.compose(if l.inverse { inv } else { m });
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorCheck {
    pub label: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub rows: Vec<RelatorCheck>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.rows.iter().filter(|r| !r.pass).map(|r| r.label.as_str()).collect()
    }
}

/// Pass iff the relator's image is the identity.
pub fn verify_relators(p: &Presentation, m: &SurfaceModel, assign: &Assignment) -> Result<VerificationReport, HomologyError> {
    for g in p.alphabet().names() {
        if assign.get(g).is_none() {
            return Err(HomologyError::MissingAssignment(g.clone()));
        }
    }
    let mut rows = Vec::with_capacity(p.relator_count());
    for r in p.relators() {
        let image = evaluate(&r.word, m.rank(), assign)?;
        rows.push(RelatorCheck {
            label: r.label.clone(),
            pass: image.is_identity(),
        });
    }
    Ok(VerificationReport { rows })
}

/// Constraint on curve classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    Pairing { a: String, b: String, value: bool },
    Fixed { name: String, class: Mod2Class },
    /// The word over curve names must act as the identity (twists about the named curves).
    Relator { label: String, word: Word },
}

impl Constraint {
    pub fn pairing(a: &str, b: &str, value: bool) -> Self {
        Constraint::Pairing {
            a: a.to_string(),
            b: b.to_string(),
            value,
        }
    }

    fn names(&self) -> Vec<String> {
        match self {
            Constraint::Pairing { a, b, .. } => vec![a.clone(), b.clone()],
            Constraint::Fixed { name, .. } => vec![name.clone()],
            Constraint::Relator { word, .. } => word.support().into_iter().map(|g| word.alphabet().name(g).to_string()).collect(),
        }
    }

    fn holds(&self, m: &SurfaceModel, classes: &BTreeMap<String, Mod2Class>) -> bool {
        match self {
            Constraint::Pairing { a, b, value } => m.pairing(classes[a], classes[b]) == *value,
            Constraint::Fixed { name, class } => classes[name] == *class,
            Constraint::Relator { word, .. } => {
                let mut assign = Assignment::new();
                for g in word.support() {
                    let name = word.alphabet().name(g);
                    match transvection(m, classes[name]) {
                        Ok(t) => assign.insert(name, t),
                        Err(_) => return false,
                    }
                }
                evaluate(word, m.rank(), &assign).map_or(false, |x| x.is_identity())
            }
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Pairing { a, b, value } => write!(f, "pairing({a},{b})={}", u8::from(*value)),
            Constraint::Fixed { name, class } => write!(f, "{name}={:#b}", class.0),
            Constraint::Relator { label, .. } => write!(f, "relator {label}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved {
        /// First solution in search order (unknowns in order, candidates by increasing bitmask).
        classes: BTreeMap<String, Mod2Class>,
        /// For each unknown, how many values keep every constraint satisfied with
        /// the other classes held at the chosen solution.
        alternatives: BTreeMap<String, usize>,
    },
    Unsatisfiable {
        violated: Vec<Constraint>,
    },
}

/// Backtracking search for classes of the `unknowns`; every curve is two-sided.
/// Names in constraints that are neither unknown nor fixed by a `Fixed` constraint
/// are rejected as unsatisfiable.
pub fn class_solver(m: &SurfaceModel, unknowns: &[String], constraints: &[Constraint]) -> SolveOutcome {
    let mut fixed = BTreeMap::new();
    for c in constraints {
        if let Constraint::Fixed { name, class } = c {
            if let Some(prev) = fixed.insert(name.clone(), *class) {
                if prev != *class {
                    return SolveOutcome::Unsatisfiable {
                        violated: constraints
                            .iter()
                            .filter(|x| matches!(x, Constraint::Fixed { name: n, .. } if n == name))
                            .cloned()
                            .collect(),
                    };
                }
            }
        }
    }
    let position = |name: &str| unknowns.iter().position(|u| u == name);
    // Each non-fixed constraint is checked once its last unknown is assigned.
    let mut by_level: Vec<Vec<&Constraint>> = vec![Vec::new(); unknowns.len()];
    for c in constraints {
        if matches!(c, Constraint::Fixed { .. }) {
            continue;
        }
        let mut level = None;
        for n in c.names() {
            match position(&n) {
                Some(p) => level = Some(level.map_or(p, |l: usize| l.max(p))),
                None if fixed.contains_key(&n) => {}
                None => {
                    return SolveOutcome::Unsatisfiable { violated: vec![c.clone()] };
                }
            }
        }
        match level {
            Some(l) => by_level[l].push(c),
            None => {
                if !c.holds(m, &fixed) {
                    return SolveOutcome::Unsatisfiable { violated: vec![c.clone()] };
                }
            }
        }
    }
    for (name, class) in &fixed {
        if !m.is_two_sided(*class) {
            return SolveOutcome::Unsatisfiable {
                violated: vec![Constraint::Fixed {
                    name: name.clone(),
                    class: *class,
                }],
            };
        }
    }
    let candidates: Vec<Mod2Class> = m.all_classes().filter(|&c| m.is_two_sided(c)).collect();
    let mut state = fixed.clone();
    let mut deepest: (usize, Vec<Constraint>) = (0, Vec::new());
    let found = search(m, unknowns, &by_level, &candidates, 0, &mut state, &mut deepest);
    if !found {
        let mut violated = deepest.1;
        violated.dedup();
        return SolveOutcome::Unsatisfiable { violated };
    }
    let all: Vec<&Constraint> = by_level.iter().flatten().copied().collect();
    let mut alternatives = BTreeMap::new();
    for u in unknowns {
        let chosen = state[u];
        let mut count = 0;
        let mut trial = state.clone();
        for &v in &candidates {
            trial.insert(u.clone(), v);
            if all.iter().all(|c| c.holds(m, &trial)) {
                count += 1;
            }
        }
        trial.insert(u.clone(), chosen);
        alternatives.insert(u.clone(), count);
    }
    SolveOutcome::Solved {
        classes: state,
        alternatives,
    }
}

fn search(
    m: &SurfaceModel,
    unknowns: &[String],
    by_level: &[Vec<&Constraint>],
    candidates: &[Mod2Class],
    level: usize,
    state: &mut BTreeMap<String, Mod2Class>,
    deepest: &mut (usize, Vec<Constraint>),
) -> bool {
    if level == unknowns.len() {
        return true;
    }
    let name = &unknowns[level];
    let mut rejected: Vec<Constraint> = Vec::new();
    for &v in candidates {
        state.insert(name.clone(), v);
        match by_level[level].iter().find(|c| !c.holds(m, state)) {
            Some(c) => {
                if !rejected.contains(c) {
                    rejected.push((*c).clone());
                }
            }
            None => {
                if search(m, unknowns, by_level, candidates, level + 1, state, deepest) {
                    return true;
                }
            }
        }
    }
    state.remove(name);
    if level >= deepest.0 && !rejected.is_empty() {
        *deepest = (level, rejected);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{parse_word, Alphabet};
    use proptest::prelude::*;

    fn model(g: usize, n: usize) -> SurfaceModel {
        SurfaceModel::new(g, n).unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(model(3, 0).rank(), 3);
        assert_eq!(model(3, 1).rank(), 3);
        assert_eq!(model(3, 4).rank(), 6);
        assert!(SurfaceModel::new(0, 1).is_err());
        assert!(SurfaceModel::new(60, 10).is_err());
    }

    #[test]
    fn pairing_rules() {
        let m = model(3, 3);
        assert!(m.pairing(m.crosscap(1), m.crosscap(1)));
        assert!(!m.pairing(m.crosscap(1), m.crosscap(2)));
        assert!(!m.pairing(m.boundary_class(1), m.boundary_class(1)));
        assert!(!m.pairing(m.boundary_class(2), m.crosscap(3) + m.boundary_class(2)));
    }

    #[test]
    fn class_text() {
        let m = model(4, 2);
        let c = m.crosscap(1) + m.crosscap(3) + m.boundary_class(1);
        assert_eq!(m.format_class(c), "μ1+μ3+∂1");
        assert_eq!(m.parse_class("μ1+μ3+∂1").unwrap(), c);
        assert_eq!(m.parse_class("mu1+mu3+d1").unwrap(), c);
        assert_eq!(m.parse_class("0").unwrap(), Mod2Class::ZERO);
        assert!(m.parse_class("μ5").is_err());
        assert!(m.parse_class("∂2").is_err());
        assert!(m.parse_class("x1").is_err());
    }

    #[test]
    fn transvection_examples() {
        let m = model(3, 0);
        let t = transvection(&m, m.crosscap(1) + m.crosscap(2)).unwrap();
        assert_eq!(t.apply(m.crosscap(1)), m.crosscap(2));
        assert_eq!(t.apply(m.crosscap(2)), m.crosscap(1));
        assert_eq!(t.apply(m.crosscap(3)), m.crosscap(3));

        let m21 = model(2, 1);
        assert!(transvection(&m21, Mod2Class::ZERO).unwrap().is_identity());
        assert!(matches!(
            transvection(&m, m.crosscap(1)),
            Err(HomologyError::OneSidedClass(_))
        ));
    }

    fn n30() -> (SurfaceModel, Assignment, std::sync::Arc<Alphabet>) {
        let m = model(3, 0);
        let a = Assignment::from_classes(
            &m,
            [("a1", m.crosscap_range(1, 2)), ("a2", m.crosscap_range(2, 3))],
        )
        .unwrap();
        (m, a, Alphabet::new(["a1", "a2", "b"]).unwrap())
    }

    #[test]
    fn evaluate_examples() {
        let (m, a, al) = n30();
        let braid = parse_word("a1 a2 a1 a2' a1' a2'", &al).unwrap();
        assert!(evaluate(&braid, m.rank(), &a).unwrap().is_identity());
        let five = parse_word("(a1 a2)^5", &al).unwrap();
        let img = evaluate(&five, m.rank(), &a).unwrap();
        assert!(!img.is_identity());
        // (a1 a2) is a 3-cycle on μ1, μ2, μ3; its fifth power is its square.
        let three = evaluate(&parse_word("a1 a2", &al).unwrap(), m.rank(), &a).unwrap();
        assert_eq!(img, three.pow(2));
        assert!(three.pow(3).is_identity());
        assert!(evaluate(&Word::empty(&al), 3, &a).unwrap().is_identity());
        assert_eq!(
            evaluate(&parse_word("b", &al).unwrap(), 3, &a),
            Err(HomologyError::MissingAssignment("b".into()))
        );
    }

    #[test]
    fn verify_examples() {
        let (m, a, _) = n30();
        let mut p = crate::presentation::parse_presentation("gen: a1 a2\nrel[A2]: a1 a2 a1 a2' a1' a2'\nrel[bad]: (a1 a2)^5\n").unwrap();
        let r = verify_relators(&p, &m, &a).unwrap();
        assert_eq!(r.failures(), vec!["bad"]);
        p = crate::presentation::parse_presentation("gen: a1 a2\n").unwrap();
        let r = verify_relators(&p, &m, &a).unwrap();
        assert!(r.rows.is_empty() && r.all_pass());
    }

    #[test]
    fn solver_examples() {
        let m = model(4, 1);
        let fixed = [
            Constraint::Fixed {
                name: "alpha1".into(),
                class: m.crosscap_range(1, 2),
            },
            Constraint::Fixed {
                name: "alpha2".into(),
                class: m.crosscap_range(2, 3),
            },
        ];
        let mut cs = fixed.to_vec();
        cs.push(Constraint::pairing("alpha1", "epsilon", true));
        cs.push(Constraint::pairing("alpha2", "epsilon", false));
        cs.push(Constraint::pairing("epsilon", "epsilon", false));
        match class_solver(&m, &["epsilon".into()], &cs) {
            SolveOutcome::Solved { classes, alternatives } => {
                let e = classes["epsilon"];
                assert!(m.pairing(e, m.crosscap_range(1, 2)));
                assert!(!m.pairing(e, m.crosscap_range(2, 3)));
                assert!(alternatives["epsilon"] >= 1);
            }
            other => panic!("{other:?}"),
        }

        let bad = vec![Constraint::pairing("x", "x", false), Constraint::pairing("x", "x", true)];
        match class_solver(&m, &["x".into()], &bad) {
            SolveOutcome::Unsatisfiable { violated } => {
                assert!(violated.contains(&bad[1]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn solver_brute_force_agrees() {
        // Every solution class must satisfy all pairings; compare counts with brute force.
        let m = model(4, 1);
        let a1 = m.crosscap_range(1, 2);
        let a2 = m.crosscap_range(2, 3);
        let cs = vec![
            Constraint::Fixed { name: "a1".into(), class: a1 },
            Constraint::Fixed { name: "a2".into(), class: a2 },
            Constraint::pairing("a1", "e", true),
            Constraint::pairing("a2", "e", false),
        ];
        let brute: Vec<Mod2Class> = (0..16u64)
            .map(Mod2Class)
            .filter(|&e| m.is_two_sided(e) && m.pairing(a1, e) && !m.pairing(a2, e))
            .collect();
        match class_solver(&m, &["e".into()], &cs) {
            SolveOutcome::Solved { classes, alternatives } => {
                assert_eq!(classes["e"], brute[0]);
                assert_eq!(alternatives["e"], brute.len());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn matrix_inverse() {
        let m = model(5, 2);
        let t1 = transvection(&m, m.crosscap_range(1, 2)).unwrap();
        let t2 = transvection(&m, m.crosscap_range(2, 5) + m.boundary_class(1)).unwrap();
        let p = t1.compose(&t2);
        let inv = p.inverse().unwrap();
        assert!(p.compose(&inv).is_identity());
        assert!(inv.compose(&p).is_identity());
        let singular = Mod2Matrix::from_columns(vec![1, 1]);
        assert!(singular.inverse().is_none());
    }

    proptest! {
        #[test]
        fn transvections_are_involutive_isometries(g in 1usize..9, n in 0usize..4, bits in any::<u64>()) {
            let m = model(g, n);
            let c = Mod2Class(bits & ((1u64 << m.rank()) - 1));
            prop_assume!(m.is_two_sided(c));
            let t = transvection(&m, c).unwrap();
            prop_assert!(t.compose(&t).is_identity());
            prop_assert!(t.preserves_pairing(&m));
            prop_assert_eq!(t.is_identity(), c.is_zero() || m.basis().iter().all(|&x| !m.pairing(x, c)));
        }
    }
}
