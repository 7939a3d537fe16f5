use std::path::Path;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistkit_core::catalog::{
    derive_classes, frozen_classes, homology_assignment, instantiate_with, load_manifest, render_class_table,
    ClassTable, EntryId, InstantiateOptions, Manifest, Series, FROZEN_CLASSES,
};
use twistkit_core::cert::{check_certificate, homology_trace, shipped_certificates, Certificate};
use twistkit_core::enumeration::{max_cosets_from_env, reidemeister_schreier, todd_coxeter, SubgroupSpec};
use twistkit_core::homology::{evaluate, transvection, verify_relators, Assignment};
use twistkit_core::presentation::{canonical_relator, parse_presentation, Presentation};
use twistkit_core::schema::{
    chain_path, expand_push, gen_chain, gen_extended_lantern, gen_lantern, random_two_sided, standard_chain,
    standard_lantern, ClassMap, PushKind, SideData, TwistSymbol,
};
use twistkit_core::{parse_word, Alphabet, Mod2Class, SurfaceModel};

use crate::report::{status, Report};
use crate::{
    AbelianizeArgs, CertCommand, FamilyOptions, InstantiateArgs, RsArgs, SchemaCommand, SelftestArgs, TcArgs,
    VerifyArgs,
};

pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

type CmdResult = Result<Outcome, String>;

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_presentation(path: &Path) -> Result<Presentation, String> {
    parse_presentation(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn entry(name: &str) -> Result<EntryId, String> {
    EntryId::parse(name).map_err(|e| e.to_string())
}

fn options(f: &FamilyOptions) -> InstantiateOptions {
    InstantiateOptions {
        subst_rho: f.subst_rho,
        assume_a7: f.assume_a7.clone(),
        include_flagged: f.include_flagged,
        ag_reading: f.ag.clone(),
        drop_superfluous: f.drop_superfluous,
    }
}

fn manifest(f: &FamilyOptions) -> Result<Manifest, String> {
    match &f.manifest {
        Some(p) => load_manifest(&read(p)?).map_err(|e| format!("{}: {e}", p.display())),
        None => Ok(Manifest::builtin().clone()),
    }
}

fn family_config(f: &FamilyOptions) -> String {
    let m = f.manifest.as_ref().map_or("builtin".to_string(), |p| p.display().to_string());
    format!("{} manifest={m}", options(f).provenance())
}

/// The boundary count an entry admits, when there is only one.
fn default_boundary(e: EntryId, g: usize, given: Option<usize>) -> Result<usize, String> {
    if let Some(n) = given {
        return Ok(n);
    }
    let ns: Vec<usize> = (0..=1).filter(|&n| e.admissible(g, n)).collect();
    match ns[..] {
        [n] => Ok(n),
        [] => Err(format!("{e} does not admit genus {g}")),
        _ => Err(format!("{e} at genus {g}: pass --boundary")),
    }
}

/// `5`, `3..8` (inclusive) or `3,5,7`.
fn parse_genus(text: &str) -> Result<Vec<usize>, String> {
    let bad = || format!("bad genus `{text}`");
    let out: Vec<usize> = if let Some((a, b)) = text.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        (a..=b).collect()
    } else {
        text.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    if out.is_empty() {
        return Err(format!("empty genus range `{text}`"));
    }
    Ok(out)
}

pub fn catalog_list() -> CmdResult {
    let mut r = Report::new("catalog list", "-", 0, &["entry", "admissible", "description"]);
    for e in EntryId::ALL {
        let mut adm = Vec::new();
        for g in 1..=8 {
            for n in 0..=1 {
                if e.admissible(g, n) {
                    adm.push(format!("({g},{n})"));
                }
            }
        }
        let more = if matches!(e, EntryId::TNg1Odd | EntryId::TNg1Even | EntryId::TNg0Odd | EntryId::TNg0Even) {
            " …"
        } else {
            ""
        };
        r.row(&[e.name(), &format!("{}{more}", adm.join(" ")), e.description()]);
    }
    r.emit(None)?;
    Ok(Outcome::Pass)
}

pub fn catalog_show(name: &str, genus: Option<usize>, boundary: Option<usize>, f: &FamilyOptions) -> CmdResult {
    let e = entry(name)?;
    match genus {
        Some(g) => {
            let n = default_boundary(e, g, boundary)?;
            let p = instantiate_with(&manifest(f)?, e, g, n, &options(f)).map_err(|e| e.to_string())?;
            let config = format!("entry={e} genus={g} boundary={n} {}", family_config(f));
            let mut r = Report::new("catalog show", &config, 0, &["label", "guard", "word"]);
            for rel in p.relators() {
                r.row(&[&rel.label, rel.guard.as_deref().unwrap_or("-"), &rel.word.to_string()]);
            }
            r.emit(None)?;
        }
        None => {
            if e == EntryId::TSmall || e.is_mapping_class_group() {
                println!("{}: {}", e, e.description());
                return Ok(Outcome::Pass);
            }
            let m = manifest(f)?;
            let mut r = Report::new("catalog show", &format!("entry={e}"), 0, &["family", "guard", "template"]);
            for fam in m.families() {
                let applies = match fam.series() {
                    Series::Base => true,
                    Series::EvenExtra => matches!(e, EntryId::TNg1Even | EntryId::TNg0Even),
                    Series::OddClosed => e == EntryId::TNg0Odd,
                    Series::EvenClosed => e == EntryId::TNg0Even,
                };
                if applies {
                    r.row(&[&fam.label, &fam.guard_text, fam.template.source()]);
                }
            }
            r.emit(None)?;
        }
    }
    Ok(Outcome::Pass)
}

pub fn catalog_manifest() -> CmdResult {
    print!("{}", Manifest::builtin().to_text());
    Ok(Outcome::Pass)
}

pub fn catalog_classes(check: bool) -> CmdResult {
    let text = render_class_table().map_err(|e| e.to_string())?;
    if check {
        let same = text == FROZEN_CLASSES;
        println!("frozen class table {}", if same { "matches" } else { "differs from" });
        if !same {
            for (g, n) in twistkit_core::catalog::table_surfaces() {
                for d in derive_classes(g, n).map_err(|e| e.to_string())? {
                    if frozen_classes().get(&d.curve, g, n) != Some(d.class) {
                        println!("{}\tg={g} n={n}", d.curve);
                    }
                }
            }
        }
        return Ok(Outcome::from(same));
    }
    print!("{text}");
    Ok(Outcome::Pass)
}

pub fn instantiate(args: &InstantiateArgs) -> CmdResult {
    let e = entry(&args.entry)?;
    let n = default_boundary(e, args.genus, args.boundary)?;
    let f = &args.family;
    let p = instantiate_with(&manifest(f)?, e, args.genus, n, &options(f)).map_err(|e| e.to_string())?;
    println!("# {e} g={} n={n}", args.genus);
    println!("# {}", family_config(f));
    print!("{}", p.to_text());
    Ok(Outcome::Pass)
}

struct Target {
    entry: Option<EntryId>,
    g: usize,
    n: usize,
    presentation: Presentation,
}

fn verify_targets(args: &VerifyArgs) -> Result<Vec<Target>, String> {
    let f = &args.family;
    let opts = options(f);
    let m = manifest(f)?;
    let inst = |e: EntryId, g: usize, n: usize| -> Result<Target, String> {
        let presentation = instantiate_with(&m, e, g, n, &opts).map_err(|e| e.to_string())?;
        Ok(Target {
            entry: Some(e),
            g,
            n,
            presentation,
        })
    };
    let mut out = Vec::new();
    if args.all {
        for n in [1, 0] {
            for g in 2..=8 {
                if let Some(e) = EntryId::twist_entry_for(g, n) {
                    out.push(inst(e, g, n)?);
                }
            }
        }
    } else if let Some(name) = &args.entry {
        let e = entry(name)?;
        let genera = parse_genus(args.genus.as_deref().ok_or("--entry needs --genus")?)?;
        for g in genera {
            let ns: Vec<usize> = match args.boundary {
                Some(n) => vec![n],
                None => (0..=1).collect(),
            };
            for n in ns {
                if e.admissible(g, n) {
                    out.push(inst(e, g, n)?);
                }
            }
        }
        if out.is_empty() {
            return Err(format!("{e} admits none of the requested (g, n)"));
        }
    } else if let Some(path) = &args.pres {
        let genera = parse_genus(args.genus.as_deref().ok_or("--pres needs --genus")?)?;
        let [g] = genera[..] else {
            return Err("--pres takes a single genus".into());
        };
        out.push(Target {
            entry: None,
            g,
            n: args.boundary.unwrap_or(0),
            presentation: read_presentation(path)?,
        });
    } else if let Some(text) = &args.genus {
        for g in parse_genus(text)? {
            let ns: Vec<usize> = match args.boundary {
                Some(n) => vec![n],
                None => vec![1, 0],
            };
            for n in ns {
                if let Some(e) = EntryId::twist_entry_for(g, n) {
                    out.push(inst(e, g, n)?);
                }
            }
        }
        if out.is_empty() {
            return Err(format!("no twist-subgroup entry for genus {text}"));
        }
    } else {
        return Err("one of --entry, --pres, --genus or --all is required".into());
    }
    Ok(out)
}

pub fn verify(args: &VerifyArgs) -> CmdResult {
    let targets = verify_targets(args)?;
    let table = match &args.classes {
        Some(p) => ClassTable::parse(&read(p)?).map_err(|e| format!("{}: {e}", p.display()))?,
        None => frozen_classes().clone(),
    };
    let scope = if args.all {
        "all".to_string()
    } else if args.pres.is_none() {
        format!(
            "entry={} genus={} boundary={}",
            args.entry.as_deref().unwrap_or("auto"),
            args.genus.as_deref().unwrap_or("-"),
            args.boundary.map_or("any".to_string(), |n| n.to_string())
        )
    } else {
        format!(
            "pres={} genus={} boundary={}",
            args.pres.as_ref().map(|p| p.display().to_string()).unwrap_or_default(),
            args.genus.as_deref().unwrap_or("-"),
            args.boundary.unwrap_or(0)
        )
    };
    let classes = args.classes.as_ref().map_or("frozen".to_string(), |p| p.display().to_string());
    let config = format!("{scope} {} classes={classes}", family_config(&args.family));
    let mut r = Report::new("verify", &config, args.output.seed, &["label", "genus", "status"]);
    let (mut total, mut failed) = (0, 0);
    for t in &targets {
        let m = SurfaceModel::new(t.g, t.n).map_err(|e| e.to_string())?;
        let assign = homology_assignment(&t.presentation, t.g, t.n, &table).map_err(|e| e.to_string())?;
        let report = verify_relators(&t.presentation, &m, &assign).map_err(|e| e.to_string())?;
        let name = t.entry.map_or("pres".to_string(), |e| e.to_string());
        r.comment(&format!("{name} g={} n={}", t.g, t.n));
        for row in &report.rows {
            r.row(&[&row.label, &t.g.to_string(), status(row.pass)]);
            total += 1;
            if !row.pass {
                failed += 1;
            }
        }
    }
    r.emit(args.output.report.as_deref())?;
    eprintln!("verify: {total} relators, {failed} failed");
    Ok(Outcome::from(failed == 0))
}

fn max_cosets(flag: Option<usize>) -> usize {
    flag.unwrap_or_else(max_cosets_from_env)
}

fn subgroup(p: &Presentation, subgens: Option<&str>, parity: Option<&str>) -> Result<SubgroupSpec, String> {
    if let Some(y) = parity {
        return Ok(SubgroupSpec::parity(y));
    }
    let mut words = Vec::new();
    for part in subgens.unwrap_or("").split(';') {
        if !part.trim().is_empty() {
            words.push(parse_word(part, p.alphabet()).map_err(|e| e.to_string())?);
        }
    }
    Ok(SubgroupSpec::Generators(words))
}

pub fn tc(args: &TcArgs) -> CmdResult {
    let p = read_presentation(&args.pres)?;
    let spec = subgroup(&p, args.subgens.as_deref(), args.parity.as_deref())?;
    let cap = max_cosets(args.max_cosets);
    let t = todd_coxeter(&p, &spec, cap).map_err(|e| e.to_string())?;
    let sub = match (&args.parity, &args.subgens) {
        (Some(y), _) => format!("parity={y}"),
        (None, Some(s)) => format!("subgens={s}"),
        (None, None) => "trivial".to_string(),
    };
    let config = format!("pres={} {sub} max_cosets={cap}", args.pres.display());
    let mut r = Report::new("tc", &config, 0, &["key", "value"]);
    r.row(&["status", if t.is_complete() { "complete" } else { "inconclusive" }]);
    if t.is_complete() {
        r.row(&["index", &t.index().to_string()]);
        r.row(&["consistent", &t.is_consistent(&p).to_string()]);
        for (c, w) in t.transversal().iter().enumerate() {
            let rep = if w.is_empty() { "1".to_string() } else { w.to_string() };
            r.row(&[&format!("rep{}", c + 1), &rep]);
        }
        if args.table {
            let a = p.alphabet();
            for c in 0..t.index() {
                let mut cells = Vec::new();
                for g in 0..a.len() {
                    for inverse in [false, true] {
                        let l = twistkit_core::word::Letter::new(g, inverse);
                        let d = t.entry(c, l).map_or("-".to_string(), |d| (d + 1).to_string());
                        cells.push(format!("{}{}={d}", a.name(g), if inverse { "'" } else { "" }));
                    }
                }
                r.row(&[&format!("row{}", c + 1), &cells.join(" ")]);
            }
        }
    }
    r.emit(None)?;
    Ok(Outcome::Pass)
}

pub fn rs(args: &RsArgs) -> CmdResult {
    let p = read_presentation(&args.pres)?;
    let spec = if args.inverse_representative {
        SubgroupSpec::parity_inverse(&args.parity)
    } else {
        SubgroupSpec::parity(&args.parity)
    };
    let cap = max_cosets(args.max_cosets);
    let t = todd_coxeter(&p, &spec, cap).map_err(|e| e.to_string())?;
    if !t.is_complete() {
        return Err(format!("coset enumeration inconclusive within {cap} cosets"));
    }
    let rs = reidemeister_schreier(&p, &t).map_err(|e| e.to_string())?;
    let out = if args.simplify {
        rs.presentation.simplify()
    } else {
        rs.presentation
    };
    let mut text = format!(
        "# twistkit {} rs parity={} simplify={} index={}\n# schreier generators {} (raw), relators {} (raw)\n",
        env!("CARGO_PKG_VERSION"),
        args.parity,
        args.simplify,
        t.index(),
        rs.raw_generator_count,
        rs.raw_relator_count
    );
    text.push_str(&out.to_text());
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(Outcome::Pass)
}

pub fn abelianize(args: &AbelianizeArgs) -> CmdResult {
    let (p, what) = match (&args.pres, &args.entry) {
        (Some(path), _) => (read_presentation(path)?, format!("pres={}", path.display())),
        (None, Some(name)) => {
            let e = entry(name)?;
            let g = args.genus.ok_or("--entry needs --genus")?;
            let n = default_boundary(e, g, args.boundary)?;
            let p = instantiate_with(&manifest(&args.family)?, e, g, n, &options(&args.family))
                .map_err(|e| e.to_string())?;
            (p, format!("entry={e} genus={g} boundary={n} {}", family_config(&args.family)))
        }
        (None, None) => return Err("one of --pres or --entry is required".into()),
    };
    let inv = p.abelianization();
    let mut r = Report::new("abelianize", &what, 0, &["free_rank", "torsion", "group"]);
    let torsion: Vec<String> = inv.torsion.iter().map(|d| d.to_string()).collect();
    let torsion = if torsion.is_empty() { "-".to_string() } else { torsion.join(",") };
    r.row(&[&inv.free_rank.to_string(), &torsion, &inv.to_string()]);
    r.emit(None)?;
    Ok(Outcome::Pass)
}

fn parse_classes(m: &SurfaceModel, text: &str) -> Result<Vec<Mod2Class>, String> {
    text.split(';')
        .map(|c| m.parse_class(c.trim()).map_err(|e| e.to_string()))
        .collect()
}

fn image_is_identity(m: &SurfaceModel, w: &twistkit_core::Word, classes: &ClassMap) -> Result<bool, String> {
    let a = Assignment::from_classes(m, classes.iter().map(|(n, c)| (n.as_str(), *c))).map_err(|e| e.to_string())?;
    Ok(evaluate(w, m.rank(), &a).map_err(|e| e.to_string())?.is_identity())
}

pub fn schema(cmd: &SchemaCommand) -> CmdResult {
    match cmd {
        SchemaCommand::Chain {
            genus,
            boundary,
            k,
            classes,
            boundary_classes,
        } => {
            let m = SurfaceModel::new(*genus, *boundary).map_err(|e| e.to_string())?;
            let curves = match (classes, k) {
                (Some(text), _) => parse_classes(&m, text)?,
                (None, Some(k)) => standard_chain(&m, *k).ok_or(format!("no standard {k}-chain on N_{genus}"))?.0,
                (None, None) => return Err("pass --k or --classes".into()),
            };
            let k = curves.len();
            let forced = match chain_path(&m, &curves) {
                Some(path) if k % 2 == 1 => path.iter().step_by(2).fold(Mod2Class::ZERO, |s, &i| s + curves[i]),
                _ => Mod2Class::ZERO,
            };
            let b = match boundary_classes {
                Some(text) => parse_classes(&m, text)?,
                None if k % 2 == 1 => vec![forced, forced],
                None => vec![forced],
            };
            let names: Vec<String> = (1..=k).map(|i| format!("c{i}")).collect();
            let bnames: Vec<String> = (0..b.len()).map(|i| format!("b{i}")).collect();
            let alphabet = Alphabet::new(names.iter().chain(&bnames)).map_err(|e| e.to_string())?;
            let map: ClassMap = names.iter().cloned().zip(curves).chain(bnames.iter().cloned().zip(b)).collect();
            let syms: Vec<TwistSymbol> = names.iter().map(|n| TwistSymbol::new(n)).collect();
            let bsyms: Vec<TwistSymbol> = bnames.iter().map(|n| TwistSymbol::new(n)).collect();
            let w = gen_chain(&m, &alphabet, &syms, &bsyms, &map).map_err(|e| e.to_string())?;
            schema_report("schema chain", &m, &map, &w)
        }
        SchemaCommand::Lantern {
            genus,
            boundary,
            classes,
            extended,
        } => {
            let m = SurfaceModel::new(*genus, *boundary).map_err(|e| e.to_string())?;
            let d: Vec<Mod2Class> = match classes {
                Some(text) => parse_classes(&m, text)?,
                None => standard_lantern(&m).ok_or("the standard lantern needs genus ≥ 4")?.to_vec(),
            };
            let want = if *extended { 6 } else { 7 };
            if d.len() != want {
                return Err(format!("expected {want} classes, got {}", d.len()));
            }
            let names: Vec<String> = (1..=want).map(|i| format!("d{i}")).collect();
            let alphabet = Alphabet::new(&names).map_err(|e| e.to_string())?;
            let map: ClassMap = names.iter().cloned().zip(d).collect();
            let w = if *extended {
                let six = std::array::from_fn(|i| Some(TwistSymbol::new(&names[i])));
                gen_extended_lantern(&m, &alphabet, &six, &map)
            } else {
                let seven = std::array::from_fn(|i| Some(TwistSymbol::new(&names[i])));
                gen_lantern(&m, &alphabet, &seven, &map)
            }
            .map_err(|e| e.to_string())?;
            schema_report("schema lantern", &m, &map, &w)
        }
        SchemaCommand::Push {
            kind,
            loop_name,
            right,
            left,
        } => {
            let k = PushKind::parse(kind).ok_or(format!("unknown push kind `{kind}`"))?;
            let side = SideData {
                right: right.as_deref().map(TwistSymbol::parse),
                left: left.as_deref().map(TwistSymbol::parse),
            };
            let p = expand_push(k, loop_name, Some(side)).map_err(|e| e.to_string())?;
            let names: Vec<String> = [&p.right, &p.left].into_iter().flatten().map(|s| s.name.clone()).collect();
            let alphabet = Alphabet::new(&names).map_err(|e| e.to_string())?;
            let w = p.word(&alphabet).map_err(|e| e.to_string())?;
            let body = if w.is_empty() { "1".to_string() } else { w.to_string() };
            println!("{loop_name} := {body}");
            Ok(Outcome::Pass)
        }
    }
}

fn schema_report(cmd: &str, m: &SurfaceModel, map: &ClassMap, w: &twistkit_core::Word) -> CmdResult {
    let pass = image_is_identity(m, w, map)?;
    let classes: Vec<String> = map.iter().map(|(n, c)| format!("{n}={}", m.format_class(*c))).collect();
    let config = format!("genus={} boundary={} {}", m.genus(), m.boundary(), classes.join(" "));
    let mut r = Report::new(cmd, &config, 0, &["relator", "status"]);
    let text = if w.is_empty() { "1".to_string() } else { w.to_string() };
    r.row(&[&text, status(pass)]);
    r.emit(None)?;
    Ok(Outcome::from(pass))
}

fn check_one(r: &mut Report, name: &str, text: &str) -> Result<bool, String> {
    let c = Certificate::parse(text).map_err(|e| format!("{name}: {e}"))?;
    let report = check_certificate(&c);
    let steady = report.is_valid()
        && homology_trace(&c)
            .map(|m| m.windows(2).all(|w| w[0] == w[1]))
            .unwrap_or(false);
    let pass = report.is_valid() && steady;
    let detail = if report.is_valid() && !steady {
        "homology image changes along the derivation".to_string()
    } else {
        report.to_string()
    };
    r.row(&[name, status(pass), &detail]);
    Ok(pass)
}

pub fn cert(cmd: &CertCommand) -> CmdResult {
    match cmd {
        CertCommand::Check { files, shipped } => {
            if files.is_empty() && !shipped {
                return Err("no certificate given (pass files or --shipped)".into());
            }
            let mut inputs = Vec::new();
            if *shipped {
                for (n, t) in shipped_certificates() {
                    inputs.push((n.to_string(), t.to_string()));
                }
            }
            for f in files {
                inputs.push((f.display().to_string(), read(f)?));
            }
            let mut r = Report::new("cert check", &format!("shipped={shipped}"), 0, &["certificate", "status", "detail"]);
            let mut all = true;
            for (name, text) in &inputs {
                all &= check_one(&mut r, name, text)?;
            }
            r.emit(None)?;
            Ok(Outcome::from(all))
        }
        CertCommand::Show { name } => {
            let (_, text) = shipped_certificates()
                .into_iter()
                .find(|(n, _)| n == name || n.trim_end_matches(".cert") == name)
                .ok_or(format!("no shipped certificate `{name}`"))?;
            print!("{text}");
            Ok(Outcome::Pass)
        }
    }
}

fn shipped_pres(name: &str) -> Presentation {
    let (_, text) = twistkit_core::catalog::shipped_presentation_files()
        .into_iter()
        .find(|(n, _)| *n == name)
        .expect("shipped file");
    parse_presentation(text).expect("shipped file parses")
}

fn canonical_words(p: &Presentation) -> Vec<String> {
    p.relators().iter().map(|r| canonical_relator(&r.word).to_string()).collect()
}

pub fn selftest(args: &SelftestArgs) -> CmdResult {
    let config = format!("cases={}", args.cases);
    let mut r = Report::new("selftest", &config, args.output.seed, &["check", "status", "detail"]);
    let mut all = true;
    let mut record = |r: &mut Report, name: &str, pass: bool, detail: String| {
        all &= pass;
        r.row(&[name, status(pass), &detail]);
    };

    for (m, t) in [("m_n2_0.pres", "t_n2_0.pres"), ("m_n2_1.pres", "t_n2_1.pres"), ("m_n3_0.pres", "t_n3_0.pres")] {
        let p = shipped_pres(m);
        let got = todd_coxeter(&p, &SubgroupSpec::parity("y"), 1000)
            .ok()
            .and_then(|tab| reidemeister_schreier(&p, &tab).ok())
            .map(|rs| rs.presentation.simplify());
        let want = shipped_pres(t);
        let pass = got.as_ref().is_some_and(|g| {
            g.alphabet().names() == want.alphabet().names() && canonical_words(g) == canonical_words(&want)
        });
        record(&mut r, &format!("rs {m}"), pass, got.map_or("-".into(), |g| g.to_string()));
    }

    let m20 = shipped_pres("m_n2_0.pres");
    let order = todd_coxeter(&m20, &SubgroupSpec::trivial(), 1000).map(|t| t.index()).unwrap_or(0);
    record(&mut r, "order M(N_{2,0})", order == 4, order.to_string());

    let mut total = 0;
    let mut failures = Vec::new();
    let start = Instant::now();
    for n in [1, 0] {
        for g in 2..=8 {
            let Some(e) = EntryId::twist_entry_for(g, n) else { continue };
            let p = instantiate_with(Manifest::builtin(), e, g, n, &InstantiateOptions::substituted())
                .map_err(|e| e.to_string())?;
            let m = SurfaceModel::new(g, n).map_err(|e| e.to_string())?;
            let a = homology_assignment(&p, g, n, frozen_classes()).map_err(|e| e.to_string())?;
            let rep = verify_relators(&p, &m, &a).map_err(|e| e.to_string())?;
            total += rep.rows.len();
            failures.extend(rep.failures().iter().map(|l| format!("{l}@{g},{n}")));
        }
    }
    let detail = format!("{total} relators, {} failed, {:.2}s", failures.len(), start.elapsed().as_secs_f64());
    record(&mut r, "homology catalog", failures.is_empty(), detail);

    let m = SurfaceModel::new(3, 0).map_err(|e| e.to_string())?;
    let alpha = Alphabet::new(["a1", "a2"]).map_err(|e| e.to_string())?;
    let bad = parse_word("(a1 a2)^5", &alpha).map_err(|e| e.to_string())?;
    let map = ClassMap::from([("a1".into(), m.crosscap_range(1, 2)), ("a2".into(), m.crosscap_range(2, 3))]);
    let caught = !image_is_identity(&m, &bad, &map)?;
    record(&mut r, "negative (a1 a2)^5", caught, String::new());

    let mut rng = ChaCha8Rng::seed_from_u64(args.output.seed);
    let mut ok = 0;
    for i in 0..args.cases {
        let model = SurfaceModel::new(1 + i % 8, i % 3).map_err(|e| e.to_string())?;
        let c = random_two_sided(&model, &mut rng);
        let t = transvection(&model, c).map_err(|e| e.to_string())?;
        if t.compose(&t).is_identity() && t.preserves_pairing(&model) {
            ok += 1;
        }
    }
    record(&mut r, "transvections", ok == args.cases, format!("{ok}/{}", args.cases));

    for (name, text) in shipped_certificates() {
        let valid = Certificate::parse(text).map(|c| check_certificate(&c).is_valid()).unwrap_or(false);
        record(&mut r, &format!("cert {name}"), valid, String::new());
    }
    r.emit(args.output.report.as_deref())?;
    Ok(Outcome::from(all))
}
