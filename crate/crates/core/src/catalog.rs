//! Presentations of twist subgroups T(N_{g,n}) (n ≤ 1) and of three small
//! mapping class groups, instantiated from guarded relator families.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::homology::{
    class_solver, evaluate, transvection, Assignment, Constraint, HomologyError, Mod2Class, Mod2Matrix, SolveOutcome,
    SurfaceModel,
};
use crate::presentation::{parse_presentation, Presentation, PresentationError};
use crate::template::{eval_expr, Env, Template, TemplateError};
use crate::word::{parse_word, Alphabet, Letter, Word, WordError};

pub const DEFAULT_MANIFEST: &str = include_str!("../data/families.manifest");
pub const FROZEN_CLASSES: &str = include_str!("../data/classes.txt");

const M_N2_0: &str = include_str!("../data/m_n2_0.pres");
const M_N2_1: &str = include_str!("../data/m_n2_1.pres");
const M_N3_0: &str = include_str!("../data/m_n3_0.pres");
const T_N1_0: &str = include_str!("../data/t_n1_0.pres");
const T_N1_1: &str = include_str!("../data/t_n1_1.pres");
const T_N2_0: &str = include_str!("../data/t_n2_0.pres");
const T_N2_1: &str = include_str!("../data/t_n2_1.pres");
const T_N3_0: &str = include_str!("../data/t_n3_0.pres");

/// Largest genus covered by the frozen class table.
pub const MAX_TABLE_GENUS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("inadmissible parameters for {entry}: g={g}, n={n}")]
    InadmissibleParameters { entry: String, g: usize, n: usize },
    #[error("unknown curve `{name}` at g={g}, n={n}")]
    UnknownCurve { name: String, g: usize, n: usize },
    #[error("manifest line {line}: {message}")]
    Manifest { line: usize, message: String },
    #[error("class table line {line}: {message}")]
    ClassTable { line: usize, message: String },
    #[error("family {label}: {source}")]
    Template { label: String, source: TemplateError },
    #[error("family {label}: {source}")]
    Word { label: String, source: WordError },
    #[error("class solver: {0}")]
    Unsolvable(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// Catalog entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntryId {
    MN20,
    MN21,
    MN30,
    TSmall,
    TNg1Odd,
    TNg1Even,
    TNg0Odd,
    TNg0Even,
}

impl EntryId {
    pub const ALL: [EntryId; 8] = [
        EntryId::MN20,
        EntryId::MN21,
        EntryId::MN30,
        EntryId::TSmall,
        EntryId::TNg1Odd,
        EntryId::TNg1Even,
        EntryId::TNg0Odd,
        EntryId::TNg0Even,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EntryId::MN20 => "m_n2_0",
            EntryId::MN21 => "m_n2_1",
            EntryId::MN30 => "m_n3_0",
            EntryId::TSmall => "t_small",
            EntryId::TNg1Odd => "t_ng1_odd",
            EntryId::TNg1Even => "t_ng1_even",
            EntryId::TNg0Odd => "t_ng0_odd",
            EntryId::TNg0Even => "t_ng0_even",
        }
    }

    pub fn parse(s: &str) -> Result<EntryId, CatalogError> {
        EntryId::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| CatalogError::UnknownEntry(s.to_string()))
    }

    pub fn description(self) -> &'static str {
        match self {
            EntryId::MN20 => "M(N_{2,0}) = <a1, y | a1^2, y^2, (a1 y)^2>",
            EntryId::MN21 => "M(N_{2,1}) = <a1, y | y a1 y^-1 a1>",
            EntryId::MN30 => "M(N_{3,0}) = <a1, a2, y | braid, (a1 a2)^6, y^2, (a1 y)^2, (a2 y)^2>",
            EntryId::TSmall => "T(N_{g,n}) for g+n <= 3, n <= 1",
            EntryId::TNg1Odd => "T(N_{g,1}) for g >= 3 odd or g = 4",
            EntryId::TNg1Even => "T(N_{g,1}) for g >= 6 even",
            EntryId::TNg0Odd => "T(N_{g,0}) for g >= 5 odd",
            EntryId::TNg0Even => "T(N_{g,0}) for g >= 4 even",
        }
    }

    /// Whether the entry describes a mapping class group rather than a twist subgroup.
    pub fn is_mapping_class_group(self) -> bool {
        matches!(self, EntryId::MN20 | EntryId::MN21 | EntryId::MN30)
    }

    pub fn admissible(self, g: usize, n: usize) -> bool {
        match self {
            EntryId::MN20 => (g, n) == (2, 0),
            EntryId::MN21 => (g, n) == (2, 1),
            EntryId::MN30 => (g, n) == (3, 0),
            EntryId::TSmall => matches!((g, n), (1, 0) | (1, 1) | (2, 0) | (2, 1) | (3, 0)),
            EntryId::TNg1Odd => n == 1 && ((g >= 3 && g % 2 == 1) || g == 4),
            EntryId::TNg1Even => n == 1 && g >= 6 && g % 2 == 0,
            EntryId::TNg0Odd => n == 0 && g >= 5 && g % 2 == 1,
            EntryId::TNg0Even => n == 0 && g >= 4 && g % 2 == 0,
        }
    }

    /// The twist-subgroup entry covering (g, n), if any.
    pub fn twist_entry_for(g: usize, n: usize) -> Option<EntryId> {
        [
            EntryId::TSmall,
            EntryId::TNg1Odd,
            EntryId::TNg1Even,
            EntryId::TNg0Odd,
            EntryId::TNg0Even,
        ]
        .into_iter()
        .find(|e| e.admissible(g, n))
    }
}

impl fmt::Display for EntryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which part of the presentation a family belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Series {
    /// Relations for every T(N_{g,1}) presentation (and hence every closed one).
    Base,
    /// Extra relations for even g ≥ 6.
    EvenExtra,
    /// Closed surfaces, odd g ≥ 5 (generator rho).
    OddClosed,
    /// Closed surfaces, even g ≥ 4 (generator rhobar).
    EvenClosed,
}

type IndexVar = (&'static str, &'static str, &'static str);

struct FamilyRule {
    label: &'static str,
    series: Series,
    guard: fn(i64) -> bool,
    vars: &'static [IndexVar],
    index_filter: fn(&Env) -> bool,
    superfluous_closed_odd: bool,
    superfluous_closed_even: bool,
    opt_in: bool,
}

fn any_index(_: &Env) -> bool {
    true
}

const fn rule(label: &'static str, series: Series, guard: fn(i64) -> bool) -> FamilyRule {
    FamilyRule {
        label,
        series,
        guard,
        vars: &[],
        index_filter: any_index,
        superfluous_closed_odd: false,
        superfluous_closed_even: false,
        opt_in: false,
    }
}

const fn indexed(label: &'static str, series: Series, guard: fn(i64) -> bool, vars: &'static [IndexVar]) -> FamilyRule {
    FamilyRule {
        label,
        series,
        guard,
        vars,
        index_filter: any_index,
        superfluous_closed_odd: false,
        superfluous_closed_even: false,
        opt_in: false,
    }
}

fn always(_: i64) -> bool {
    true
}

use Series::*;

/// Guard predicates, one per family. Index ranges are (variable, low, high),
/// inclusive, evaluated in order.
static RULES: &[FamilyRule] = &[
    // (A1) a_i a_j = a_j a_i for g ≥ 4, |i − j| > 1
    indexed("A1", Base, |g| g >= 4, &[("i", "1", "g-1"), ("j", "i+2", "g-1")]),
    // (A2) a_i a_{i+1} a_i = a_{i+1} a_i a_{i+1} for i = 1, …, g − 2
    indexed("A2", Base, always, &[("i", "1", "g-2")]),
    // (A3) a_i b = b a_i for g ≥ 4, i ≠ 4
    FamilyRule {
        index_filter: |env| env["i"] != 4,
        ..indexed("A3", Base, |g| g >= 4, &[("i", "1", "g-1")])
    },
    // (A4) b a_4 b = a_4 b a_4 for g ≥ 5
    rule("A4", Base, |g| g >= 5),
    // (A5) for g ≥ 5
    rule("A5", Base, |g| g >= 5),
    // (A6) for g ≥ 7
    rule("A6", Base, |g| g >= 7),
    // (Ā1₁) e a_j = a_j e for g ≥ 5, j ≥ 4
    FamilyRule {
        superfluous_closed_even: true,
        ..indexed("Ā1₁", Base, |g| g >= 5, &[("j", "4", "g-1")])
    },
    // (Ā1₂) f a_j = a_j f for g ≥ 5, j ≥ 4
    FamilyRule {
        superfluous_closed_odd: true,
        ..indexed("Ā1₂", Base, |g| g >= 5, &[("j", "4", "g-1")])
    },
    // (Ā2₁) a_1 e a_1 = e a_1 e
    FamilyRule {
        superfluous_closed_even: true,
        ..rule("Ā2₁", Base, always)
    },
    // (Ā2₂) a_3⁻¹ e a_3⁻¹ = e a_3⁻¹ e for g ≥ 4
    FamilyRule {
        superfluous_closed_even: true,
        ..rule("Ā2₂", Base, |g| g >= 4)
    },
    // (Ā2₃) a_1 f a_1 = f a_1 f
    rule("Ā2₃", Base, always),
    // (Ā3₁) a_1 c = c a_1 for g = 4, 5
    rule("Ā3₁", Base, |g| g == 4 || g == 5),
    // (Ā3₂) e c = c e for g = 4, 5
    rule("Ā3₂", Base, |g| g == 4 || g == 5),
    // (Ā4) c a_4 c = a_4 c a_4 for g = 5, 6
    rule("Ā4", Base, |g| g == 5 || g == 6),
    // (Ā5) for g = 5, 6
    rule("Ā5", Base, |g| g == 5 || g == 6),
    // (Ā6) for g = 7, 8
    rule("Ā6", Base, |g| g == 7 || g == 8),
    // (B̄1) for g ≥ 4
    rule("B̄1", Base, |g| g >= 4),
    // (B̄2₁) y² equals a word in a_1, a_2, e, f
    rule("B̄2₁", Base, always),
    // (B̄2₂)
    FamilyRule {
        superfluous_closed_odd: true,
        ..rule("B̄2₂", Base, always)
    },
    // (B̄3) y² a_3 = a_3 y² for g ≥ 4
    rule("B̄3", Base, |g| g >= 4),
    // (B̄4₁) e a_2 = a_2 e
    rule("B̄4₁", Base, always),
    // (B̄4₂) f a_2 = a_2 f
    FamilyRule {
        superfluous_closed_odd: true,
        ..rule("B̄4₂", Base, always)
    },
    // (B̄6₁) for g ≥ 4
    rule("B̄6₁", Base, |g| g >= 4),
    // (B̄6₂) for g = 4, 5
    rule("B̄6₂", Base, |g| g == 4 || g == 5),
    // (B̄7₁) for g ≥ 6
    rule("B̄7₁", Base, |g| g >= 6),
    // (B̄7₂) for g ≥ 6
    rule("B̄7₂", Base, |g| g >= 6),
    // (B̄8₁) for g ≥ 5
    rule("B̄8₁", Base, |g| g >= 5),
    // (B̄8₂) for g = 5, 6
    rule("B̄8₂", Base, |g| g == 5 || g == 6),
    // (A7) b_0 = a, b_1 = b; the first read with a placeholder for `a`
    rule("A7(b0)", EvenExtra, always),
    rule("A7(b1)", EvenExtra, always),
    // (A8) for 1 ≤ i ≤ (g − 4)/2
    indexed("A8", EvenExtra, always, &[("i", "1", "(g-4)/2")]),
    // (A9a) for g = 6
    rule("A9a", EvenExtra, |g| g == 6),
    // (A9b) for g ≥ 8
    rule("A9b", EvenExtra, |g| g >= 8),
    // (Ā7a) b̄_0 = a_1⁻¹, b̄_1 = c for g = 6
    rule("Ā7a(bbar0)", EvenExtra, |g| g == 6),
    rule("Ā7a(bbar1)", EvenExtra, |g| g == 6),
    // (Ā7b) b̄_1 = c for g = 8
    rule("Ā7b", EvenExtra, |g| g == 8),
    // (Ā7c) b̄_i = z b_i z⁻¹ for i = (g − 6)/2, (g − 4)/2, i ≥ 2; z needs a_g
    FamilyRule {
        index_filter: |env| env["i"] >= 2,
        opt_in: true,
        ..indexed("Ā7c", EvenExtra, |g| g >= 8, &[("i", "(g-6)/2", "(g-4)/2")])
    },
    // (Ā8a) for g = 6
    rule("Ā8a", EvenExtra, |g| g == 6),
    // (Ā8b) for g ≥ 8
    rule("Ā8b", EvenExtra, |g| g >= 8),
    // (Ā9a) for g = 6
    rule("Ā9a", EvenExtra, |g| g == 6),
    // (Ā9b) for g ≥ 8
    rule("Ā9b", EvenExtra, |g| g >= 8),
    // Closed surfaces, g ≥ 5 odd: generator rho.
    rule("C1a", OddClosed, always),
    rule("C̄1a", OddClosed, always),
    // (C2) for 1 ≤ i ≤ g − 1
    indexed("C2", OddClosed, always, &[("i", "1", "g-1")]),
    rule("C̄2", OddClosed, always),
    rule("C̄5₁", OddClosed, always),
    rule("C3", OddClosed, always),
    rule("C̄4a", OddClosed, always),
    // Closed surfaces, g ≥ 4 even: generator rhobar.
    rule("C1b", EvenClosed, always),
    rule("C̄2₁", EvenClosed, always),
    // (C̄2₂) for 3 ≤ i ≤ g − 1
    indexed("C̄2₂", EvenClosed, always, &[("i", "3", "g-1")]),
    rule("C̄2₃", EvenClosed, always),
    rule("C̄5₂", EvenClosed, always),
    rule("C̄3", EvenClosed, always),
    rule("C̄4", EvenClosed, always),
];

/// A relator family: guard predicate from code, template and guard text from a manifest.
#[derive(Clone)]
pub struct RelatorFamily {
    pub label: String,
    pub guard_text: String,
    pub template: Template,
    rule: &'static FamilyRule,
}

impl fmt::Debug for RelatorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RelatorFamily({} guard {:?})", self.label, self.guard_text)
    }
}

impl RelatorFamily {
    pub fn series(&self) -> Series {
        self.rule.series
    }

    pub fn superfluous_in_closed(&self, g: usize) -> bool {
        if g % 2 == 1 {
            self.rule.superfluous_closed_odd
        } else {
            self.rule.superfluous_closed_even
        }
    }

    pub fn is_opt_in(&self) -> bool {
        self.rule.opt_in
    }

    pub fn guard_holds(&self, g: usize) -> bool {
        (self.rule.guard)(g as i64)
    }

    /// All index assignments passing the guard's index conditions.
    pub fn index_envs(&self, g: usize) -> Result<Vec<Env>, CatalogError> {
        let mut envs = vec![Env::from([("g".to_string(), g as i64)])];
        for (var, lo, hi) in self.rule.vars {
            let mut next = Vec::new();
            for env in &envs {
                let err = |source| CatalogError::Template {
                    label: self.label.clone(),
                    source,
                };
                let a = eval_expr(lo, env).map_err(err)?;
                let b = eval_expr(hi, env).map_err(err)?;
                for v in a..=b {
                    let mut e = env.clone();
                    e.insert(var.to_string(), v);
                    next.push(e);
                }
            }
            envs = next;
        }
        envs.retain(|e| (self.rule.index_filter)(e));
        Ok(envs)
    }

    pub fn instance_label(&self, env: &Env) -> String {
        if self.rule.vars.is_empty() {
            return self.label.clone();
        }
        let parts: Vec<String> = self.rule.vars.iter().map(|(v, _, _)| format!("{v}={}", env[*v])).collect();
        format!("{}({})", self.label, parts.join(","))
    }
}

/// Relator families keyed by label, in manifest order.
#[derive(Debug, Clone)]
pub struct Manifest {
    families: Vec<RelatorFamily>,
}

impl Manifest {
    /// The shipped manifest.
    pub fn builtin() -> &'static Manifest {
        static M: OnceLock<Manifest> = OnceLock::new();
        M.get_or_init(|| Manifest::parse(DEFAULT_MANIFEST).expect("shipped manifest is valid"))
    }

    /// Parses `family <label> guard "<text>" template "<template>"` lines.
    ///
    /// Every built-in family must appear exactly once, with its built-in guard text;
    /// templates may differ.
    pub fn parse(text: &str) -> Result<Manifest, CatalogError> {
        let mut families: Vec<RelatorFamily> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let err = |message: String| CatalogError::Manifest { line, message };
            let rest = t
                .strip_prefix("family ")
                .ok_or_else(|| err("expected `family <label> guard \"…\" template \"…\"`".into()))?;
            let (label, rest) = rest.split_once(' ').ok_or_else(|| err("missing guard".into()))?;
            let rest = rest
                .trim_start()
                .strip_prefix("guard \"")
                .ok_or_else(|| err("expected `guard \"`".into()))?;
            let (guard, rest) = rest.split_once('"').ok_or_else(|| err("unterminated guard text".into()))?;
            let rest = rest
                .trim_start()
                .strip_prefix("template \"")
                .ok_or_else(|| err("expected `template \"`".into()))?;
            let tmpl = rest
                .strip_suffix('"')
                .ok_or_else(|| err("template must end the line with `\"`".into()))?;
            if tmpl.contains('"') {
                return Err(err("stray quote in template".into()));
            }
            let rule = RULES
                .iter()
                .find(|r| r.label == label)
                .ok_or_else(|| err(format!("unknown family `{label}`")))?;
            if families.iter().any(|f| f.label == label) {
                return Err(err(format!("family `{label}` listed twice")));
            }
            let template = Template::parse(tmpl).map_err(|e| err(format!("{label}: {e}")))?;
            families.push(RelatorFamily {
                label: label.to_string(),
                guard_text: guard.to_string(),
                template,
                rule,
            });
        }
        for r in RULES {
            if !families.iter().any(|f| f.label == r.label) {
                return Err(CatalogError::Manifest {
                    line: 0,
                    message: format!("family `{}` missing", r.label),
                });
            }
        }
        let m = Manifest { families };
        if let Some(builtin) = BUILTIN_GUARDS.get() {
            for f in &m.families {
                if builtin.get(&f.label) != Some(&f.guard_text) {
                    return Err(CatalogError::Manifest {
                        line: 0,
                        message: format!("guard text of `{}` differs from the built-in guard", f.label),
                    });
                }
            }
        }
        Ok(m)
    }

    pub fn families(&self) -> &[RelatorFamily] {
        &self.families
    }

    pub fn family(&self, label: &str) -> Option<&RelatorFamily> {
        self.families.iter().find(|f| f.label == label)
    }

    pub fn to_text(&self) -> String {
        self.families
            .iter()
            .map(|f| format!("family {} guard \"{}\" template \"{}\"\n", f.label, f.guard_text, f.template.source()))
            .collect()
    }
}

static BUILTIN_GUARDS: OnceLock<BTreeMap<String, String>> = OnceLock::new();

fn init_builtin_guards() {
    BUILTIN_GUARDS.get_or_init(|| {
        Manifest::builtin()
            .families
            .iter()
            .map(|f| (f.label.clone(), f.guard_text.clone()))
            .collect()
    });
}

/// Loads a manifest that overrides templates of the shipped one.
pub fn load_manifest(text: &str) -> Result<Manifest, CatalogError> {
    init_builtin_guards();
    Manifest::parse(text)
}

/// Instantiation switches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstantiateOptions {
    /// Eliminate rho through (C1a), or replace rhobar by its word in the other generators.
    pub subst_rho: bool,
    /// Word that b0 equals in (A7).
    pub assume_a7: String,
    /// Instantiate opt-in families (Ā7c); requires `ag_reading`.
    pub include_flagged: bool,
    /// A reading of the out-of-range a_g used by Ā7c.
    pub ag_reading: Option<String>,
    /// Leave out families marked superfluous for closed surfaces.
    pub drop_superfluous: bool,
}

impl Default for InstantiateOptions {
    fn default() -> Self {
        InstantiateOptions {
            subst_rho: false,
            assume_a7: "a1".to_string(),
            include_flagged: false,
            ag_reading: None,
            drop_superfluous: false,
        }
    }
}

impl InstantiateOptions {
    pub fn substituted() -> Self {
        InstantiateOptions {
            subst_rho: true,
            ..Default::default()
        }
    }

    /// One-line description for report headers.
    pub fn provenance(&self) -> String {
        format!(
            "subst_rho={} assume_a7={} include_flagged={} ag={} drop_superfluous={}",
            self.subst_rho,
            self.assume_a7,
            self.include_flagged,
            self.ag_reading.as_deref().unwrap_or("-"),
            self.drop_superfluous
        )
    }
}

/// Generators of a twist-subgroup entry, in presentation order.
pub fn twist_generators(entry: EntryId, g: usize, n: usize) -> Result<Vec<String>, CatalogError> {
    check_admissible(entry, g, n)?;
    if entry == EntryId::TSmall || entry.is_mapping_class_group() {
        return Ok(small_presentation(entry, g, n)?.alphabet().names().to_vec());
    }
    let mut gens: Vec<String> = (1..g).map(|i| format!("a{i}")).collect();
    gens.extend(["e", "f", "y2"].map(String::from));
    if g >= 4 {
        gens.extend(["b", "c"].map(String::from));
    }
    if g % 2 == 0 && g >= 6 {
        gens.extend((0..=(g - 2) / 2).map(|i| format!("b{i}")));
        gens.extend([(g - 6) / 2, (g - 4) / 2, (g - 2) / 2].map(|i| format!("bbar{i}")));
    }
    match entry {
        EntryId::TNg0Odd => gens.push("rho".into()),
        EntryId::TNg0Even => gens.push("rhobar".into()),
        _ => {}
    }
    Ok(gens)
}

fn check_admissible(entry: EntryId, g: usize, n: usize) -> Result<(), CatalogError> {
    if entry.admissible(g, n) {
        Ok(())
    } else {
        Err(CatalogError::InadmissibleParameters {
            entry: entry.name().to_string(),
            g,
            n,
        })
    }
}

fn small_presentation(entry: EntryId, g: usize, n: usize) -> Result<Presentation, CatalogError> {
    let text = match (entry, g, n) {
        (EntryId::MN20, ..) => M_N2_0,
        (EntryId::MN21, ..) => M_N2_1,
        (EntryId::MN30, ..) => M_N3_0,
        (EntryId::TSmall, 1, 0) => T_N1_0,
        (EntryId::TSmall, 1, 1) => T_N1_1,
        (EntryId::TSmall, 2, 0) => T_N2_0,
        (EntryId::TSmall, 2, 1) => T_N2_1,
        (EntryId::TSmall, 3, 0) => T_N3_0,
        _ => {
            return Err(CatalogError::InadmissibleParameters {
                entry: entry.name().to_string(),
                g,
                n,
            })
        }
    };
    Ok(parse_presentation(text)?)
}

/// Raw text of the shipped presentation files, by file name.
pub fn shipped_presentation_files() -> Vec<(&'static str, &'static str)> {
    vec![
        ("m_n2_0.pres", M_N2_0),
        ("m_n2_1.pres", M_N2_1),
        ("m_n3_0.pres", M_N3_0),
        ("t_n1_0.pres", T_N1_0),
        ("t_n1_1.pres", T_N1_1),
        ("t_n2_0.pres", T_N2_0),
        ("t_n2_1.pres", T_N2_1),
        ("t_n3_0.pres", T_N3_0),
    ]
}

fn family_applies(f: &RelatorFamily, entry: EntryId, g: usize) -> bool {
    let series_ok = match f.series() {
        Series::Base => true,
        Series::EvenExtra => g % 2 == 0 && g >= 6,
        Series::OddClosed => entry == EntryId::TNg0Odd,
        Series::EvenClosed => entry == EntryId::TNg0Even,
    };
    series_ok && f.guard_holds(g)
}

/// Template for the product a_1 … a_{g−1} raised to the g-th power.
const CHAIN_POWER: &str = "([a{k} ; k=1..g-1])^{g}";
/// Word equal to rhobar for even closed surfaces.
const RHOBAR_WORD: &str = "([a{k} ; k=2..g-1] e' [a{k} ; k=3..g-1])^{(g-2)/2} [a{k} ; k=2..g-1]";

fn expand_fixed(template: &str, g: usize, alphabet: &Arc<Alphabet>) -> Result<Word, CatalogError> {
    let env = Env::from([("g".to_string(), g as i64)]);
    let text = Template::parse(template)
        .and_then(|t| t.expand(&env, &BTreeMap::new()))
        .map_err(|source| CatalogError::Template {
            label: template.to_string(),
            source,
        })?;
    parse_word(&text, alphabet).map_err(|source| CatalogError::Word {
        label: template.to_string(),
        source,
    })
}

/// The word rhobar is replaced by (even closed surfaces).
pub fn rhobar_word(g: usize, alphabet: &Arc<Alphabet>) -> Result<Word, CatalogError> {
    expand_fixed(RHOBAR_WORD, g, alphabet)
}

/// (a_1 … a_{g−1})^g, the word rho is eliminated through.
pub fn chain_power_word(g: usize, alphabet: &Arc<Alphabet>) -> Result<Word, CatalogError> {
    expand_fixed(CHAIN_POWER, g, alphabet)
}

pub fn instantiate(entry: EntryId, g: usize, n: usize, opts: &InstantiateOptions) -> Result<Presentation, CatalogError> {
    instantiate_with(Manifest::builtin(), entry, g, n, opts)
}

/// Emits all and only the guard-passing relator instances for (g, n).
pub fn instantiate_with(
    manifest: &Manifest,
    entry: EntryId,
    g: usize,
    n: usize,
    opts: &InstantiateOptions,
) -> Result<Presentation, CatalogError> {
    check_admissible(entry, g, n)?;
    if entry == EntryId::TSmall || entry.is_mapping_class_group() {
        return small_presentation(entry, g, n);
    }
    let alphabet = Alphabet::new(twist_generators(entry, g, n)?).map_err(|source| CatalogError::Word {
        label: entry.name().to_string(),
        source,
    })?;
    let mut placeholders = BTreeMap::new();
    placeholders.insert("a7".to_string(), opts.assume_a7.clone());
    if let Some(ag) = &opts.ag_reading {
        placeholders.insert("ag".to_string(), ag.clone());
    }
    let closed = matches!(entry, EntryId::TNg0Odd | EntryId::TNg0Even);
    let mut p = Presentation::new(alphabet.clone());
    for f in manifest.families() {
        if !family_applies(f, entry, g) {
            continue;
        }
        if f.is_opt_in() && !opts.include_flagged {
            continue;
        }
        if closed && opts.drop_superfluous && f.superfluous_in_closed(g) {
            continue;
        }
        for env in f.index_envs(g)? {
            let text = f.template.expand(&env, &placeholders).map_err(|source| CatalogError::Template {
                label: f.label.clone(),
                source,
            })?;
            let word = parse_word(&text, &alphabet).map_err(|source| CatalogError::Word {
                label: f.instance_label(&env),
                source,
            })?;
            p.push(f.instance_label(&env), word, Some(f.guard_text.clone()));
        }
    }
    if opts.subst_rho {
        p = match entry {
            EntryId::TNg0Odd => p.tietze_remove_generator_using("rho", "C1a")?,
            EntryId::TNg0Even => {
                let names: Vec<&String> = alphabet.names().iter().filter(|n| *n != "rhobar").collect();
                let target = Alphabet::new(names).expect("subset of valid names");
                let w = rhobar_word(g, &target)?;
                p.substitute_generator("rhobar", &w)?
            }
            _ => p,
        };
    }
    Ok(p)
}

pub fn relator_count(entry: EntryId, g: usize, n: usize, opts: &InstantiateOptions) -> Result<usize, CatalogError> {
    Ok(instantiate(entry, g, n, opts)?.relator_count())
}

/// Curve whose twist a generator denotes, if it is a twist.
pub fn curve_name(generator: &str) -> Option<String> {
    let fixed = match generator {
        "b" => Some("beta"),
        "c" => Some("gamma"),
        "e" => Some("epsilon"),
        "f" => Some("zeta"),
        "y2" => Some("delta"),
        _ => None,
    };
    if let Some(f) = fixed {
        return Some(f.to_string());
    }
    let numbered = |prefix: &str| {
        generator
            .strip_prefix(prefix)
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .map(str::to_string)
    };
    if let Some(d) = numbered("bbar") {
        return Some(format!("betabar{d}"));
    }
    if let Some(d) = numbered("a") {
        return Some(format!("alpha{d}"));
    }
    if let Some(d) = numbered("b") {
        return Some(format!("beta{d}"));
    }
    None
}

/// Seed classes: α_i = μ_i + μ_{i+1}, β = μ_1 + … + μ_4, β_i = μ_1 + … + μ_{2i+2}.
pub fn seed_class(m: &SurfaceModel, curve: &str) -> Option<Mod2Class> {
    let g = m.genus();
    if curve == "beta" {
        return (g >= 4).then(|| m.crosscap_range(1, 4));
    }
    if let Some(i) = curve.strip_prefix("alpha").and_then(|d| d.parse::<usize>().ok()) {
        return (i >= 1 && i < g).then(|| m.crosscap_range(i, i + 1));
    }
    if let Some(i) = curve
        .strip_prefix("beta")
        .filter(|d| !d.starts_with("bar"))
        .and_then(|d| d.parse::<usize>().ok())
    {
        return (2 * i + 2 <= g).then(|| m.crosscap_range(1, 2 * i + 2));
    }
    None
}

/// Frozen curve classes per surface.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClassTable {
    surfaces: BTreeMap<(usize, usize), Vec<(String, Mod2Class)>>,
}

impl ClassTable {
    pub fn parse(text: &str) -> Result<ClassTable, CatalogError> {
        let mut t = ClassTable::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let err = |message: &str| CatalogError::ClassTable {
                line,
                message: message.to_string(),
            };
            let rest = s.strip_prefix("class ").ok_or_else(|| err("expected `class`"))?;
            let (head, class_text) = rest.split_once(':').ok_or_else(|| err("expected `:`"))?;
            let parts: Vec<&str> = head.split_whitespace().collect();
            let [name, gs, ns] = parts[..] else {
                return Err(err("expected `class <name> g=<g> n=<n>:`"));
            };
            let g: usize = gs
                .strip_prefix("g=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| err("bad genus"))?;
            let n: usize = ns
                .strip_prefix("n=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| err("bad boundary count"))?;
            let m = SurfaceModel::new(g, n).map_err(|e| err(&e.to_string()))?;
            let class = m.parse_class(class_text).map_err(|e| err(&e.to_string()))?;
            let entries = t.surfaces.entry((g, n)).or_default();
            if entries.iter().any(|(k, _)| k == name) {
                return Err(err("duplicate class"));
            }
            entries.push((name.to_string(), class));
        }
        Ok(t)
    }

    pub fn get(&self, name: &str, g: usize, n: usize) -> Option<Mod2Class> {
        self.surfaces
            .get(&(g, n))
            .and_then(|v| v.iter().find(|(k, _)| k == name).map(|(_, c)| *c))
    }

    pub fn surface(&self, g: usize, n: usize) -> &[(String, Mod2Class)] {
        self.surfaces.get(&(g, n)).map_or(&[], |v| v.as_slice())
    }

    pub fn surfaces(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.surfaces.keys().copied()
    }
}

pub fn frozen_classes() -> &'static ClassTable {
    static T: OnceLock<ClassTable> = OnceLock::new();
    T.get_or_init(|| ClassTable::parse(FROZEN_CLASSES).expect("shipped class table is valid"))
}

/// Frozen class of a named curve.
pub fn curve_class(name: &str, g: usize, n: usize) -> Result<Mod2Class, CatalogError> {
    frozen_classes().get(name, g, n).ok_or_else(|| CatalogError::UnknownCurve {
        name: name.to_string(),
        g,
        n,
    })
}

/// One solved curve class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedClass {
    pub curve: String,
    pub class: Mod2Class,
    pub seeded: bool,
    /// Admissible values with all other classes fixed (1 means determined).
    pub alternatives: usize,
}

/// Pairing constraint implied by a commutator or braid relator between two twists.
fn shape_constraint(w: &Word) -> Option<(usize, usize, bool)> {
    let l = w.letters();
    let n = l.len();
    for s in 0..n {
        let at = |k: usize| l[(s + k) % n];
        if n == 4 && at(0).gen != at(1).gen && at(2) == at(0).inv() && at(3) == at(1).inv() {
            return Some((at(0).gen, at(1).gen, false));
        }
        if n == 6
            && at(0).gen != at(1).gen
            && at(2) == at(0)
            && at(3) == at(1).inv()
            && at(4) == at(0).inv()
            && at(5) == at(1).inv()
        {
            return Some((at(0).gen, at(1).gen, true));
        }
    }
    None
}

/// Pairing constraints read off commutator and braid relators, plus every
/// relator as a full identity constraint, over curve names.
pub fn relator_constraints(p: &Presentation) -> Result<Vec<Constraint>, CatalogError> {
    let mut curves = Vec::new();
    for g in p.alphabet().names() {
        curves.push(curve_name(g).ok_or_else(|| CatalogError::UnknownCurve {
            name: g.clone(),
            g: 0,
            n: 0,
        })?);
    }
    let curve_alphabet = Alphabet::new(&curves).map_err(|source| CatalogError::Word {
        label: "curves".into(),
        source,
    })?;
    let mut out = Vec::new();
    for r in p.relators() {
        let word = Word::from_letters(&curve_alphabet, r.word.letters().iter().copied());
        if let Some((a, b, value)) = shape_constraint(&word) {
            out.push(Constraint::pairing(&curves[a], &curves[b], value));
        }
        out.push(Constraint::Relator {
            label: r.label.clone(),
            word,
        });
    }
    Ok(out)
}

/// Surfaces (g, n) with g ≤ 8, n ≤ 1 that carry twist generators.
pub fn table_surfaces() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for g in 2..=MAX_TABLE_GENUS {
        for n in [0, 1] {
            if EntryId::twist_entry_for(g, n).is_some() {
                out.push((g, n));
            }
        }
    }
    out
}

/// Solves for the classes of every twist generator at (g, n): seeds fixed,
/// the rest found by [`class_solver`] from the substituted presentation.
pub fn derive_classes(g: usize, n: usize) -> Result<Vec<DerivedClass>, CatalogError> {
    let entry = EntryId::twist_entry_for(g, n).ok_or(CatalogError::InadmissibleParameters {
        entry: "twist subgroup".into(),
        g,
        n,
    })?;
    let p = instantiate(entry, g, n, &InstantiateOptions::substituted())?;
    let m = SurfaceModel::new(g, n)?;
    let curves: Vec<String> = p
        .alphabet()
        .names()
        .iter()
        .map(|x| curve_name(x).expect("twist generator"))
        .collect();
    let mut constraints = Vec::new();
    let mut unknowns = Vec::new();
    for c in &curves {
        match seed_class(&m, c) {
            Some(class) => constraints.push(Constraint::Fixed {
                name: c.clone(),
                class,
            }),
            None => unknowns.push(c.clone()),
        }
    }
    constraints.extend(relator_constraints(&p)?);
    match class_solver(&m, &unknowns, &constraints) {
        SolveOutcome::Solved { classes, alternatives } => Ok(curves
            .iter()
            .map(|c| DerivedClass {
                curve: c.clone(),
                class: classes[c],
                seeded: !unknowns.contains(c),
                alternatives: alternatives.get(c).copied().unwrap_or(1),
            })
            .collect()),
        SolveOutcome::Unsatisfiable { violated } => Err(CatalogError::Unsolvable(format!(
            "g={g} n={n}: {}",
            violated.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
        ))),
    }
}

/// Renders the class table file for all [`table_surfaces`].
pub fn render_class_table() -> Result<String, CatalogError> {
    let mut out = String::new();
    out.push_str("# Mod-2 classes of the curves whose twists generate T(N_{g,n}).\n");
    out.push_str("# Basis μ1..μg (crosscaps); pairing is the identity on μ.\n");
    out.push_str("# Seeds: alpha_i = μi+μ(i+1), beta = μ1+..+μ4, beta_i = μ1+..+μ(2i+2).\n");
    out.push_str("# Other classes: first solution of the class solver over pairing\n");
    out.push_str("# constraints (commutator and braid relators) and full relator checks,\n");
    out.push_str("# candidates tried in increasing bitmask order.\n");
    out.push_str("# Regenerate with `twistkit catalog classes`.\n");
    for (g, n) in table_surfaces() {
        out.push('\n');
        let m = SurfaceModel::new(g, n)?;
        for d in derive_classes(g, n)? {
            if d.seeded {
                out.push_str(&format!("# {} seeded\n", d.curve));
            } else if d.alternatives == 1 {
                out.push_str(&format!("# {} solved, unique\n", d.curve));
            } else {
                out.push_str(&format!(
                    "# {} solved, ambiguous: {} admissible values with the others fixed\n",
                    d.curve, d.alternatives
                ));
            }
            out.push_str(&format!("class {} g={g} n={n}: {}\n", d.curve, m.format_class(d.class)));
        }
    }
    Ok(out)
}

/// Matrices for every generator of `p` at (g, n) from a class table.
///
/// Twists act by transvections. The crosscap slide `y` acts trivially mod 2.
/// `rho` and `rhobar` get the images of the words they equal.
pub fn homology_assignment(p: &Presentation, g: usize, n: usize, table: &ClassTable) -> Result<Assignment, CatalogError> {
    let m = SurfaceModel::new(g, n)?;
    let mut assign = Assignment::new();
    let mut deferred = Vec::new();
    for name in p.alphabet().names() {
        if name == "y" {
            assign.insert(name.clone(), Mod2Matrix::identity(m.rank()));
        } else if name == "rho" || name == "rhobar" {
            deferred.push(name.clone());
        } else {
            let curve = curve_name(name).ok_or_else(|| CatalogError::UnknownCurve {
                name: name.clone(),
                g,
                n,
            })?;
            let class = table.get(&curve, g, n).ok_or(CatalogError::UnknownCurve { name: curve, g, n })?;
            assign.insert(name.clone(), transvection(&m, class)?);
        }
    }
    for name in deferred {
        let word = if name == "rho" {
            chain_power_word(g, p.alphabet())?
        } else {
            rhobar_word(g, p.alphabet())?
        };
        let image = evaluate(&word, m.rank(), &assign)?;
        assign.insert(name, image);
    }
    Ok(assign)
}

/// Checks that every generator of a twist presentation maps to the named curve's twist.
pub fn is_twist_generator(name: &str) -> bool {
    curve_name(name).is_some()
}

/// Parity of a relator under y ↦ 1, everything else ↦ 0.
pub fn y_parity(w: &Word) -> i64 {
    w.exponent_sum("y").rem_euclid(2)
}

/// Letters of a word in the index order of its alphabet (helper for tests and reports).
pub fn letter_names(w: &Word) -> Vec<String> {
    w.letters()
        .iter()
        .map(|l: &Letter| {
            let mut s = w.alphabet().name(l.gen).to_string();
            if l.inverse {
                s.push('\'');
            }
            s
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_covers_rules() {
        let m = Manifest::builtin();
        assert_eq!(m.families().len(), RULES.len());
        let again = load_manifest(&m.to_text()).unwrap();
        assert_eq!(again.to_text(), m.to_text());
    }

    #[test]
    fn manifest_rejects_bad_input() {
        let text = Manifest::builtin().to_text();
        assert!(load_manifest(&text.replace("family A4 guard \"g≥5\"", "family A4 guard \"g≥4\"")).is_err());
        let dropped: String = text.lines().filter(|l| !l.contains("family A4 ")).map(|l| format!("{l}\n")).collect();
        assert!(load_manifest(&dropped).is_err());
        assert!(load_manifest(&format!("{text}family A4 guard \"g≥5\" template \"b\"\n")).is_err());
        assert!(load_manifest(&format!("{text}family Z9 guard \"x\" template \"b\"\n")).is_err());
        assert!(load_manifest("famly A1\n").is_err());
    }

    #[test]
    fn labels_are_unicode_tags() {
        let m = Manifest::builtin();
        for tag in ["Ā2₁", "B̄2₂", "C̄4a", "Ā8b", "A5"] {
            assert!(m.family(tag).is_some(), "{tag}");
        }
    }

    #[test]
    fn entries_parse() {
        for e in EntryId::ALL {
            assert_eq!(EntryId::parse(e.name()).unwrap(), e);
        }
        assert!(EntryId::parse("t_big").is_err());
    }

    #[test]
    fn curve_names() {
        assert_eq!(curve_name("a3").as_deref(), Some("alpha3"));
        assert_eq!(curve_name("b"), Some("beta".into()));
        assert_eq!(curve_name("b2"), Some("beta2".into()));
        assert_eq!(curve_name("bbar0"), Some("betabar0".into()));
        assert_eq!(curve_name("y2"), Some("delta".into()));
        assert_eq!(curve_name("rho"), None);
        assert_eq!(curve_name("y"), None);
    }

    #[test]
    fn index_ranges() {
        let m = Manifest::builtin();
        let a1 = m.family("A1").unwrap();
        let labels: Vec<String> = a1.index_envs(5).unwrap().iter().map(|e| a1.instance_label(e)).collect();
        assert_eq!(labels, ["A1(i=1,j=3)", "A1(i=1,j=4)", "A1(i=2,j=4)"]);
        let a3 = m.family("A3").unwrap();
        assert_eq!(a3.index_envs(6).unwrap().len(), 4);
        let c = m.family("Ā7c").unwrap();
        assert_eq!(c.index_envs(8).unwrap().len(), 1);
        assert_eq!(c.index_envs(10).unwrap().len(), 2);
    }
}
