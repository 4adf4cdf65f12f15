//! Command-line definition and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands;
use crate::config::{parse_primes, Config, Format};
use crate::formats::report::{emit_all, Report};

/// Exit status: verdicts as expected.
pub const EXIT_OK: i32 = 0;
/// A check produced a result contradicting the expected verdict.
pub const EXIT_DEVIATION: i32 = 1;
/// Bad input, missing file, exceeded cap, usage error.
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "groupeq",
    version,
    about = "Equations over finite groups: exponent-sum analysis, group-ring certificates, wreath-product transforms and structural audits",
    after_help = "Defaults: caps group=4096 wreath=4096 subgroup=512 isomorphism=128 brute-force=10000000 \
                  enumeration=12; primes 2,3,5,7,11,13; format text; jobs 1; seed 0.\n\
                  Exit status: 0 verdicts as expected, 1 deviation found, 2 operational error."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct GlobalArgs {
    /// Config file (key = value); otherwise $GROUPEQ_CONFIG or ./groupeq.conf.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: Option<u32>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Primes reported by analyze-system, comma separated.
    #[arg(long, global = true)]
    pub primes: Option<String>,
    /// Largest group realized as a Cayley table.
    #[arg(long, global = true)]
    pub group_cap: Option<usize>,
    /// Largest wreath product realized.
    #[arg(long, global = true)]
    pub wreath_cap: Option<usize>,
    /// Largest group whose subgroups are enumerated.
    #[arg(long, global = true)]
    pub subgroup_cap: Option<usize>,
    /// Largest order for the isomorphism search.
    #[arg(long, global = true)]
    pub iso_cap: Option<usize>,
    /// Most assignments tried by a brute-force search.
    #[arg(long, global = true)]
    pub brute_cap: Option<u128>,
    /// Largest order accepted by enumerate.
    #[arg(long, global = true)]
    pub enum_cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exponent-sum matrix of a system: Smith invariants and the
    /// non-singular, p-nonsingular and unimodular verdicts.
    AnalyzeSystem {
        system: PathBuf,
        /// Extra prime to report (repeatable).
        #[arg(long = "prime")]
        prime: Vec<u64>,
    },
    /// Structural summary of a group file.
    Group { group: PathBuf },
    /// Metabelian test and search for an abelian normal subgroup with an
    /// abelian p-group quotient.
    Classify { group: PathBuf },
    /// Classify every group of a catalog directory and summarize per order.
    AuditCatalog {
        dir: PathBuf,
        /// Restrict to these orders, comma separated.
        #[arg(long)]
        orders: Option<String>,
        /// Random unimodular one-variable equations solved in each p-group of
        /// order at most 16.
        #[arg(long, default_value_t = 0)]
        pk_trials: usize,
    },
    /// Move the top components of the coefficients out, split the system
    /// over the wreath product into coordinate systems over the base and
    /// certify the group-ring rows.
    WreathTransform {
        system: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        top: PathBuf,
        #[arg(long)]
        prime: u64,
    },
    /// Certify independence of rows over a group ring by augmentation.
    CertifyRows { file: PathBuf },
    /// Build the one-variable unimodular equation over C2 wr (Cp x Cq) and
    /// check the obstruction to metabelian solutions.
    Counterexample {
        /// First prime.
        #[arg(long)]
        p: u64,
        /// Second prime, distinct from the first.
        #[arg(long)]
        q: u64,
        /// Only the group-ring part; no group is realized.
        #[arg(long)]
        symbolic: bool,
        /// Replace S by zero (anomaly check).
        #[arg(long)]
        force_zero_s: bool,
        /// Also search for a solution inside the realized group.
        #[arg(long)]
        brute_force: bool,
    },
    /// Least solution of a system in a finite group, by exhaustive search.
    Solve {
        system: PathBuf,
        /// Group to bind the coefficients in; overrides the system's bind line.
        #[arg(long)]
        group: Option<PathBuf>,
        /// Cross-check against a search in reverse order.
        #[arg(long)]
        reverse_check: bool,
    },
    /// All groups of order n up to isomorphism, checked against the known counts.
    Enumerate {
        n: usize,
        /// Write one group file per group into this directory.
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

/// Results of a command.
#[derive(Debug, Default)]
pub struct Outcome {
    pub reports: Vec<Report>,
    pub deviation: bool,
}

pub fn resolve_config(g: &GlobalArgs) -> anyhow::Result<Config> {
    let mut c = Config::load(g.config.as_deref())?;
    if let Some(f) = g.format {
        c.format = f;
    }
    if let Some(j) = g.jobs {
        c.jobs = j as usize;
    }
    if let Some(s) = g.seed {
        c.seed = s;
    }
    if let Some(p) = &g.primes {
        c.primes = parse_primes(p)?;
    }
    let caps = &mut c.caps;
    let positive = |name: &str, v: u128| {
        if v == 0 {
            anyhow::bail!("--{name} must be positive")
        }
        Ok(())
    };
    if let Some(v) = g.group_cap {
        positive("group-cap", v as u128)?;
        caps.group_order = v;
    }
    if let Some(v) = g.wreath_cap {
        positive("wreath-cap", v as u128)?;
        caps.wreath_order = v;
    }
    if let Some(v) = g.subgroup_cap {
        positive("subgroup-cap", v as u128)?;
        caps.subgroup_order = v;
    }
    if let Some(v) = g.iso_cap {
        positive("iso-cap", v as u128)?;
        caps.isomorphism_order = v;
    }
    if let Some(v) = g.brute_cap {
        positive("brute-cap", v)?;
        caps.brute_force_work = v;
    }
    if let Some(v) = g.enum_cap {
        positive("enum-cap", v as u128)?;
        caps.enumeration_order = v;
    }
    Ok(c)
}

pub fn render(outcome: &Outcome, format: Format) -> String {
    match format {
        Format::Structured => emit_all(&outcome.reports),
        Format::Text => outcome
            .reports
            .iter()
            .map(Report::emit_text)
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

pub fn execute(cmd: &Command, config: &Config) -> anyhow::Result<Outcome> {
    let pool = crate::parallel::pool(config.jobs)?;
    pool.install(|| commands::dispatch(cmd, config))
}

/// Runs the binary with `args`, writing to `out`/`err`; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = resolve_config(&cli.global).and_then(|c| execute(&cli.command, &c).map(|o| (o, c.format)));
    match result {
        Ok((outcome, format)) => {
            let _ = out.write_all(render(&outcome, format).as_bytes());
            if outcome.deviation {
                EXIT_DEVIATION
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}
