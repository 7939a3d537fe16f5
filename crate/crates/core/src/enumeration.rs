//! Coset enumeration (HLT with a coincidence queue) and Reidemeister–Schreier rewriting.

use std::collections::VecDeque;
use std::sync::Arc;

use thiserror::Error;

use crate::presentation::{Presentation, Relator};
use crate::word::{is_valid_generator_name, Alphabet, Letter, Word};

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

/// Reads `TWISTKIT_MAX_COSETS`, falling back to [`DEFAULT_MAX_COSETS`].
pub fn max_cosets_from_env() -> usize {
    std::env::var("TWISTKIT_MAX_COSETS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_COSETS)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("invalid subgroup spec: {0}")]
    InvalidSubgroupSpec(String),
    #[error("coset table is incomplete")]
    IncompleteTable,
}

/// Subgroup given by generating words, or as the kernel of a map to Z/2.
#[derive(Debug, Clone)]
pub enum SubgroupSpec {
    Generators(Vec<Word>),
    Parity(ParitySpec),
}

#[derive(Debug, Clone)]
pub struct ParitySpec {
    /// Generators sent to 1; the first one is the designated coset representative.
    pub odd: Vec<String>,
    /// Use `y⁻¹` instead of `y` as the representative of the odd coset.
    pub inverse_representative: bool,
}

impl SubgroupSpec {
    pub fn trivial() -> Self {
        SubgroupSpec::Generators(Vec::new())
    }

    pub fn parity(odd: &str) -> Self {
        SubgroupSpec::Parity(ParitySpec {
            odd: vec![odd.to_string()],
            inverse_representative: false,
        })
    }

    pub fn parity_inverse(odd: &str) -> Self {
        SubgroupSpec::Parity(ParitySpec {
            odd: vec![odd.to_string()],
            inverse_representative: true,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableStatus {
    Complete,
    Inconclusive,
}

/// Coset table, standardized when complete. Columns are `2·gen` for a generator
/// and `2·gen + 1` for its inverse; coset 0 is the subgroup.
#[derive(Debug, Clone)]
pub struct CosetTable {
    alphabet: Arc<Alphabet>,
    rows: Vec<Vec<Option<usize>>>,
    status: TableStatus,
    transversal: Vec<Word>,
    /// Total cosets ever defined during enumeration.
    pub defined: usize,
    /// Designated odd generator, for parity subgroups.
    odd_generator: Option<(usize, bool)>,
}

impl CosetTable {
    pub fn status(&self) -> TableStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == TableStatus::Complete
    }

    /// Number of cosets; equals the index when complete.
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn transversal(&self) -> &[Word] {
        &self.transversal
    }

    pub fn entry(&self, coset: usize, letter: Letter) -> Option<usize> {
        self.rows[coset][column(letter)]
    }

    /// Coset reached from `coset` by reading `w`, if defined.
    pub fn trace(&self, coset: usize, w: &Word) -> Option<usize> {
        w.letters().iter().try_fold(coset, |c, &l| self.entry(c, l))
    }

    /// Every relator traced from every coset returns to its start, and every entry
    /// has a matching inverse entry.
    pub fn is_consistent(&self, p: &Presentation) -> bool {
        if !self.is_complete() {
            return false;
        }
        for (c, row) in self.rows.iter().enumerate() {
            for (col, &e) in row.iter().enumerate() {
                match e {
                    Some(d) if self.rows[d][col ^ 1] == Some(c) => {}
                    _ => return false,
                }
            }
        }
        (0..self.index()).all(|c| p.relators().iter().all(|r| self.trace(c, &r.word) == Some(c)))
    }
}

fn column(l: Letter) -> usize {
    2 * l.gen + usize::from(l.inverse)
}

fn letter_of(col: usize) -> Letter {
    Letter::new(col / 2, col % 2 == 1)
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    queue: VecDeque<usize>,
    max: usize,
    overflow: bool,
}

impl Enumerator {
    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = c;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, col: usize) -> bool {
        if self.table.len() >= self.max {
            self.overflow = true;
            return false;
        }
        let d = self.table.len();
        self.table.push(vec![None; self.cols]);
        self.parent.push(d);
        self.table[c][col] = Some(d);
        self.table[d][col ^ 1] = Some(c);
        true
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (x, y) = (self.rep(a), self.rep(b));
        if x != y {
            let (lo, hi) = (x.min(y), x.max(y));
            self.parent[hi] = lo;
            self.queue.push_back(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        while let Some(g) = self.queue.pop_front() {
            for col in 0..self.cols {
                if let Some(d) = self.table[g][col] {
                    self.table[g][col] = None;
                    if self.table[d][col ^ 1] == Some(g) {
                        self.table[d][col ^ 1] = None;
                    }
                    let mu = self.rep(g);
                    let nu = self.rep(d);
                    if let Some(t) = self.table[mu][col] {
                        self.merge(nu, t);
                    } else if let Some(t) = self.table[nu][col ^ 1] {
                        self.merge(mu, t);
                    } else {
                        self.table[mu][col] = Some(nu);
                        self.table[nu][col ^ 1] = Some(mu);
                    }
                }
            }
        }
    }

    /// Scans `w` from `start`, defining cosets as needed so the scan completes.
    fn scan_and_fill(&mut self, start: usize, w: &[Letter]) {
        if w.is_empty() {
            return;
        }
        let r = w.len();
        let mut f = start;
        let mut b = start;
        let mut i = 0usize;
        let mut j = r; // exclusive
        loop {
            while i < j {
                match self.table[f][column(w[i])] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == r {
                if f != start {
                    self.coincidence(f, start);
                }
                return;
            }
            while j > i {
                match self.table[b][column(w[j - 1].inv())] {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i + 1 {
                if i == j {
                    if f != b {
                        self.coincidence(f, b);
                    }
                }
                return;
            }
            if j == i + 1 {
                let col = column(w[i]);
                self.table[f][col] = Some(b);
                self.table[b][col ^ 1] = Some(f);
                return;
            }
            if !self.define(f, column(w[i])) {
                return;
            }
        }
    }
}

/// Kernel generators of a parity map, with the designated odd generator.
fn parity_generators(p: &Presentation, spec: &ParitySpec) -> Result<(Vec<Word>, (usize, bool)), EnumerationError> {
    let a = p.alphabet();
    let mut odd = vec![false; a.len()];
    for name in &spec.odd {
        let g = a
            .index_of(name)
            .ok_or_else(|| EnumerationError::InvalidSubgroupSpec(format!("unknown generator `{name}`")))?;
        odd[g] = true;
    }
    let first = spec
        .odd
        .first()
        .ok_or_else(|| EnumerationError::InvalidSubgroupSpec("parity map sends every generator to 0".into()))?;
    let y = a.index_of(first).expect("checked above");
    for r in p.relators() {
        let parity: i64 = (0..a.len()).filter(|&g| odd[g]).map(|g| r.word.exponent_sum_index(g)).sum();
        if parity % 2 != 0 {
            return Err(EnumerationError::InvalidSubgroupSpec(format!(
                "relator {} has odd parity; the map is not defined on the group",
                r.label
            )));
        }
    }
    let rep_y = Word::from_letters(a, [Letter::new(y, spec.inverse_representative)]);
    let one = Word::empty(a);
    let mut gens = Vec::new();
    for rep in [&one, &rep_y] {
        let rep_odd = !rep.is_empty();
        for g in 0..a.len() {
            let x = Word::from_letters(a, [Letter::new(g, false)]);
            let target_odd = rep_odd ^ odd[g];
            let back = if target_odd { &rep_y } else { &one };
            let s = rep.multiply(&x).and_then(|w| w.multiply(&back.inverse())).expect("same alphabet");
            if !s.is_empty() {
                gens.push(s);
            }
        }
    }
    Ok((gens, (y, spec.inverse_representative)))
}

/// HLT coset enumeration. Returns an `Inconclusive` table when `max_cosets` is reached.
pub fn todd_coxeter(p: &Presentation, spec: &SubgroupSpec, max_cosets: usize) -> Result<CosetTable, EnumerationError> {
    let alphabet = p.alphabet().clone();
    let (subgens, odd_generator) = match spec {
        SubgroupSpec::Generators(ws) => {
            let mut out = Vec::new();
            for w in ws {
                out.push(w.rehome(&alphabet).map_err(|e| EnumerationError::InvalidSubgroupSpec(e.to_string()))?);
            }
            (out, None)
        }
        SubgroupSpec::Parity(ps) => {
            let (g, y) = parity_generators(p, ps)?;
            (g, Some(y))
        }
    };
    let cols = 2 * alphabet.len();
    let mut e = Enumerator {
        cols,
        table: vec![vec![None; cols]],
        parent: vec![0],
        queue: VecDeque::new(),
        max: max_cosets.max(1),
        overflow: false,
    };
    for w in &subgens {
        e.scan_and_fill(0, w.letters());
        if e.overflow {
            break;
        }
    }
    let rels: Vec<Vec<Letter>> = p.relators().iter().map(|r| r.word.letters().to_vec()).collect();
    let mut alpha = 0;
    while !e.overflow && alpha < e.table.len() {
        for r in &rels {
            if !e.live(alpha) || e.overflow {
                break;
            }
            e.scan_and_fill(alpha, r);
        }
        for col in 0..cols {
            if !e.live(alpha) || e.overflow {
                break;
            }
            if e.table[alpha][col].is_none() {
                e.define(alpha, col);
            }
        }
        alpha += 1;
    }
    let defined = e.table.len();
    if e.overflow {
        return Ok(CosetTable {
            alphabet: alphabet.clone(),
            rows: e.table,
            status: TableStatus::Inconclusive,
            transversal: Vec::new(),
            defined,
            odd_generator,
        });
    }
    let (rows, transversal) = standardize(&alphabet, &e);
    let mut table = CosetTable {
        alphabet,
        rows,
        status: TableStatus::Complete,
        transversal,
        defined,
        odd_generator,
    };
    if let Some((y, inverse)) = odd_generator {
        let l = Letter::new(y, inverse);
        if let Some(c) = table.entry(0, l) {
            if c != 0 {
                table.transversal[c] = Word::from_letters(&table.alphabet, [l]);
            }
        }
    }
    debug_assert!(table.is_consistent(p));
    Ok(table)
}

/// Renumbers live cosets in BFS order and records shortlex Schreier representatives.
fn standardize(alphabet: &Arc<Alphabet>, e: &Enumerator) -> (Vec<Vec<Option<usize>>>, Vec<Word>) {
    let n = e.table.len();
    let mut new_id = vec![usize::MAX; n];
    let mut order = vec![0usize];
    let mut reps: Vec<Vec<Letter>> = vec![Vec::new()];
    new_id[0] = 0;
    let mut k = 0;
    while k < order.len() {
        let c = order[k];
        for col in 0..e.cols {
            let d = e.table[c][col].expect("complete table");
            if new_id[d] == usize::MAX {
                new_id[d] = order.len();
                order.push(d);
                let mut rep = reps[k].clone();
                rep.push(letter_of(col));
                reps.push(rep);
            }
        }
        k += 1;
    }
    let rows = order
        .iter()
        .map(|&c| e.table[c].iter().map(|d| Some(new_id[d.expect("complete")])).collect())
        .collect();
    let transversal = reps.into_iter().map(|r| Word::from_letters(alphabet, r)).collect();
    (rows, transversal)
}

/// Output of Reidemeister–Schreier rewriting.
#[derive(Debug, Clone)]
pub struct SchreierPresentation {
    pub presentation: Presentation,
    /// Schreier generators before pruning: index × alphabet size.
    pub raw_generator_count: usize,
    /// Rewritten relators: index × relator count.
    pub raw_relator_count: usize,
    /// Surviving generator names with their words in the parent group.
    pub generator_words: Vec<(String, Word)>,
}

/// Subgroup presentation on Schreier generators `rep(c)·x·rep(c·x)⁻¹`.
///
/// Naming: the generator for `x` at the trivial coset is `x`; for a parity subgroup,
/// the one equal to `y²` is `y2`; all others are `x_c<k>` with `k` the coset number.
pub fn reidemeister_schreier(p: &Presentation, t: &CosetTable) -> Result<SchreierPresentation, EnumerationError> {
    if !t.is_complete() {
        return Err(EnumerationError::IncompleteTable);
    }
    let a = p.alphabet();
    let index = t.index();
    let mut ids: Vec<Vec<Option<usize>>> = vec![vec![None; a.len()]; index];
    let mut names: Vec<String> = Vec::new();
    let mut words: Vec<Word> = Vec::new();
    let y_square = t.odd_generator.map(|(y, _)| Word::from_letters(a, [Letter::new(y, false), Letter::new(y, false)]));
    for c in 0..index {
        for g in 0..a.len() {
            let x = Word::from_letters(a, [Letter::new(g, false)]);
            let d = t.entry(c, Letter::new(g, false)).expect("complete");
            let s = t.transversal[c]
                .multiply(&x)
                .and_then(|w| w.multiply(&t.transversal[d].inverse()))
                .expect("same alphabet");
            if s.is_empty() {
                continue;
            }
            let mut name = if c == 0 && s == x {
                a.name(g).to_string()
            } else if y_square.as_ref() == Some(&s) || y_square.as_ref().map(|y| y.inverse()) == Some(s.clone()) {
                format!("{}2", a.name(g))
            } else {
                format!("{}_c{}", a.name(g), c)
            };
            while names.contains(&name) || !is_valid_generator_name(&name) {
                name.push('_');
            }
            ids[c][g] = Some(names.len());
            names.push(name);
            words.push(s);
        }
    }
    let sub = Alphabet::new(&names).expect("names validated");
    let mut out = Presentation::new(sub.clone());
    for c in 0..index {
        for r in p.relators() {
            let mut coset = c;
            let mut letters = Vec::new();
            for &l in r.word.letters() {
                if l.inverse {
                    let prev = t.entry(coset, l).expect("complete");
                    if let Some(id) = ids[prev][l.gen] {
                        letters.push(Letter::new(id, true));
                    }
                    coset = prev;
                } else {
                    if let Some(id) = ids[coset][l.gen] {
                        letters.push(Letter::new(id, false));
                    }
                    coset = t.entry(coset, l).expect("complete");
                }
            }
            debug_assert_eq!(coset, c);
            out.push(
                format!("{}/c{}", r.label, c),
                Word::from_letters(&sub, letters),
                r.guard.clone(),
            );
        }
    }
    Ok(SchreierPresentation {
        presentation: out,
        raw_generator_count: index * a.len(),
        raw_relator_count: index * p.relator_count(),
        generator_words: names.into_iter().zip(words).collect(),
    })
}

/// Relabels relators of a simplified subgroup presentation by position.
pub fn relabel_sequential(p: &Presentation, prefix: &str) -> Presentation {
    let relators = p
        .relators()
        .iter()
        .enumerate()
        .map(|(i, r)| Relator {
            word: r.word.clone(),
            label: format!("{prefix}{}", i + 1),
            guard: r.guard.clone(),
        })
        .collect();
    Presentation::with_relators(p.alphabet().clone(), relators)
}
