//! `twistkit`: catalog instantiation, coset enumeration, Reidemeister–Schreier,
//! abelianization, mod-2 homology checks and certificate replay.
//!
//! Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or input error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "twistkit", version, about = "Presentations of twist subgroups of non-orientable mapping class groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the relator catalog.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Print a catalog presentation in presentation-file format.
    Instantiate(InstantiateArgs),
    /// Check relators against the mod-2 homology representation.
    Verify(VerifyArgs),
    /// Todd–Coxeter coset enumeration.
    Tc(TcArgs),
    /// Reidemeister–Schreier presentation of a parity subgroup.
    Rs(RsArgs),
    /// Abelian invariants via Smith normal form.
    Abelianize(AbelianizeArgs),
    /// Generate chain and lantern relators and check their homology image.
    Schema {
        #[command(subcommand)]
        command: SchemaCommand,
    },
    /// Replay derivation certificates.
    Cert {
        #[command(subcommand)]
        command: CertCommand,
    },
    /// Run the built-in regression checks.
    Selftest(SelftestArgs),
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Entries and their admissible (g, n).
    List,
    /// Families of an entry, or its instantiated relators when a genus is given.
    Show {
        #[arg(long)]
        entry: String,
        #[arg(long)]
        genus: Option<usize>,
        #[arg(long)]
        boundary: Option<usize>,
        #[command(flatten)]
        family: FamilyOptions,
    },
    /// Same as the top-level `instantiate`.
    Instantiate(InstantiateArgs),
    /// Print the built-in guard manifest.
    Manifest,
    /// Re-derive the curve class table; `--check` compares it with the frozen one.
    Classes {
        #[arg(long)]
        check: bool,
    },
}

#[derive(Args, Clone)]
pub struct FamilyOptions {
    /// Eliminate rho through (C1a), or replace rhobar by its word.
    #[arg(long)]
    pub subst_rho: bool,
    /// Word b0 equals in (A7).
    #[arg(long, default_value = "a1")]
    pub assume_a7: String,
    /// Instantiate opt-in families (Ā7c); needs `--ag`.
    #[arg(long)]
    pub include_flagged: bool,
    /// Reading of the out-of-range a_g used by Ā7c.
    #[arg(long)]
    pub ag: Option<String>,
    /// Leave out families marked superfluous for closed surfaces.
    #[arg(long)]
    pub drop_superfluous: bool,
    /// Guard manifest to use instead of the built-in one.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Args)]
pub struct InstantiateArgs {
    #[arg(long)]
    pub entry: String,
    #[arg(long)]
    pub genus: usize,
    /// Defaults to the only boundary count the entry admits.
    #[arg(long)]
    pub boundary: Option<usize>,
    #[command(flatten)]
    pub family: FamilyOptions,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, conflicts_with_all = ["pres", "all"])]
    pub entry: Option<String>,
    /// Presentation file; generators are read as twists about catalog curves.
    #[arg(long, conflicts_with = "all")]
    pub pres: Option<PathBuf>,
    /// Every twist-subgroup entry with g ≤ 8.
    #[arg(long)]
    pub all: bool,
    /// Single genus, `lo..hi` (inclusive) or a comma list. Without `--entry` or
    /// `--pres`, each genus uses the twist-subgroup entry covering it.
    #[arg(long)]
    pub genus: Option<String>,
    #[arg(long)]
    pub boundary: Option<usize>,
    /// Curve class table to use instead of the frozen one.
    #[arg(long)]
    pub classes: Option<PathBuf>,
    #[command(flatten)]
    pub family: FamilyOptions,
    #[command(flatten)]
    pub output: OutputOptions,
}

#[derive(Args, Clone)]
pub struct OutputOptions {
    /// Write the TSV report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Recorded in the report header; drives randomized checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args)]
pub struct TcArgs {
    #[arg(long)]
    pub pres: PathBuf,
    /// Subgroup generators separated by `;` (empty for the trivial subgroup).
    #[arg(long, conflicts_with = "parity")]
    pub subgens: Option<String>,
    /// Kernel of the map sending this generator to 1 and the others to 0.
    #[arg(long)]
    pub parity: Option<String>,
    /// Defaults to TWISTKIT_MAX_COSETS, then 10^6.
    #[arg(long)]
    pub max_cosets: Option<usize>,
    /// Also print the coset table.
    #[arg(long)]
    pub table: bool,
}

#[derive(Args)]
pub struct RsArgs {
    #[arg(long)]
    pub pres: PathBuf,
    #[arg(long)]
    pub parity: String,
    #[arg(long)]
    pub simplify: bool,
    /// Use y⁻¹ rather than y as the odd coset representative.
    #[arg(long)]
    pub inverse_representative: bool,
    #[arg(long)]
    pub max_cosets: Option<usize>,
    /// Write the presentation here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct AbelianizeArgs {
    #[arg(long, conflicts_with = "entry")]
    pub pres: Option<PathBuf>,
    #[arg(long, requires = "genus")]
    pub entry: Option<String>,
    #[arg(long)]
    pub genus: Option<usize>,
    #[arg(long)]
    pub boundary: Option<usize>,
    #[command(flatten)]
    pub family: FamilyOptions,
}

#[derive(Subcommand)]
pub enum SchemaCommand {
    /// k-chain relator; the standard chain α1 … αk unless `--classes` is given.
    Chain {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 0)]
        boundary: usize,
        #[arg(long)]
        k: Option<usize>,
        /// Curve classes separated by `;`, e.g. `μ1+μ2;μ2+μ3`.
        #[arg(long)]
        classes: Option<String>,
        /// Boundary classes separated by `;`; defaults to the forced ones.
        #[arg(long)]
        boundary_classes: Option<String>,
    },
    /// Lantern relator; the standard lantern unless `--classes` gives d1;…;d7.
    Lantern {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 0)]
        boundary: usize,
        #[arg(long)]
        classes: Option<String>,
        /// Drop d7 (the curve around the marked point).
        #[arg(long)]
        extended: bool,
    },
    /// Pushing map macro `right · left⁻¹`.
    Push {
        #[arg(long, default_value = "crosscap")]
        kind: String,
        #[arg(long = "loop")]
        loop_name: String,
        #[arg(long)]
        right: Option<String>,
        #[arg(long)]
        left: Option<String>,
    },
}

#[derive(Subcommand)]
pub enum CertCommand {
    /// Check certificate files, or the shipped ones with `--shipped`.
    Check {
        files: Vec<PathBuf>,
        #[arg(long)]
        shipped: bool,
    },
    /// Print a shipped certificate.
    Show { name: String },
}

#[derive(Args)]
pub struct SelftestArgs {
    /// Random classes for the transvection checks.
    #[arg(long, default_value_t = 10_000)]
    pub cases: usize,
    #[command(flatten)]
    pub output: OutputOptions,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Catalog { command } => match command {
            CatalogCommand::List => commands::catalog_list(),
            CatalogCommand::Show {
                entry,
                genus,
                boundary,
                family,
            } => commands::catalog_show(&entry, genus, boundary, &family),
            CatalogCommand::Instantiate(args) => commands::instantiate(&args),
            CatalogCommand::Manifest => commands::catalog_manifest(),
            CatalogCommand::Classes { check } => commands::catalog_classes(check),
        },
        Command::Instantiate(args) => commands::instantiate(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::Tc(args) => commands::tc(&args),
        Command::Rs(args) => commands::rs(&args),
        Command::Abelianize(args) => commands::abelianize(&args),
        Command::Schema { command } => commands::schema(&command),
        Command::Cert { command } => commands::cert(&command),
        Command::Selftest(args) => commands::selftest(&args),
    };
    match result {
        Ok(commands::Outcome::Pass) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("twistkit: {e}");
            ExitCode::from(2)
        }
    }
}
