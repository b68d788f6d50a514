//! Command dispatch for the `gerbe` binary.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails (or a
//! computation is refused because its inputs fail their checks), 2 for usage,
//! I/O and parse errors.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use gerbe_core::cech::{
    self, bundle_check, check_all, check_connection, check_cocycle, check_curving, check_derived,
    coboundary_report, compute_curving, remark_check, verify_comd1, GenerateParams,
    GerbeData,
};
use gerbe_core::crossed::InstanceKind;
use gerbe_core::format::{parse_dataset, print_dataset, Dataset, RingSpec};
use gerbe_core::poly::default_vars;
use gerbe_core::report::RunReport;
use gerbe_core::suite::{self, EquivParams, SuiteParams};
use gerbe_core::Error;

#[derive(Parser, Debug)]
#[command(name = "gerbe", version, about = "Exact checks for gerbes with connective structure")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Also write the report as JSON to this path.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Seeded identities of the form calculus.
    Identities {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long, default_value_t = 2)]
        degree: u16,
    },
    /// Combinatorial versus classical differentials and pairings.
    Equiv {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        one_forms: usize,
        #[arg(long, default_value_t = 10)]
        two_forms: usize,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        size: usize,
        #[arg(long, default_value_t = 2)]
        degree: u16,
    },
    /// Crossed-module axioms on seeded samples.
    Axioms {
        #[arg(long, default_value = "INNER")]
        instance: String,
        #[arg(long, default_value_t = 2)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Every check applicable to the data present in a dataset file.
    Check { file: PathBuf },
    /// Emit the dataset with ν, δ and ω filled in.
    Curvature {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Transport a dataset along the coboundary in `--by` and check everything.
    Coboundary {
        file: PathBuf,
        #[arg(long)]
        by: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Principal-bundle checks on `[g1 i j]` / `[omega1 i]` data.
    Bundle { file: PathBuf },
    /// Exact data: trivial gerbe transported by a seeded coboundary.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        cover: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        degree: u16,
        /// `gerbe`: transported gerbe data with its coboundary; `shift`: a
        /// coboundary with r ≡ 1, θ ≡ 1; `bundle`: gauge-transported bundle data.
        #[arg(long, value_enum, default_value_t = GenKind::Gerbe)]
        kind: GenKind,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The `r ≡ 1`, `θ ≡ 1` reduction of the 3-curvature transport.
    Remark {
        file: PathBuf,
        #[arg(long)]
        by: PathBuf,
    },
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Gerbe,
    Shift,
    Bundle,
}

/// What a command produced.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<RunReport>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: Error },
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Core(Error::Precondition(_)) => 1,
            _ => 2,
        }
    }
}

fn load(path: &Path) -> Result<Dataset, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    parse_dataset(&text).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn usage(msg: &str) -> CliError {
    CliError::Usage(msg.to_string())
}

/// The gerbe layers of a dataset; stored derived data are kept as given.
fn gerbe_data(ds: &Dataset) -> Result<GerbeData, CliError> {
    let cm = ds.crossed_module();
    let cocycle = ds.cocycle.clone().ok_or_else(|| usage("dataset has no [lambda]/[g] sections"))?;
    let connection = ds.connection.clone().ok_or_else(|| usage("dataset has no [m]/[gamma] sections"))?;
    let curving = ds.curving.clone().ok_or_else(|| usage("dataset has no [B] sections"))?;
    match ds.derived.clone() {
        Some(derived) => Ok(GerbeData { cocycle, connection, curving, derived }),
        None => Ok(GerbeData::new(cm.as_ref(), cocycle, connection, curving)?),
    }
}

fn with_gerbe(ds: &Dataset, data: &GerbeData) -> Dataset {
    let mut out = ds.clone();
    out.cocycle = Some(data.cocycle.clone());
    out.connection = Some(data.connection.clone());
    out.curving = Some(data.curving.clone());
    out.derived = Some(data.derived.clone());
    out
}

fn check_dataset(ds: &Dataset, file: &Path) -> Result<RunReport, CliError> {
    let cm = ds.crossed_module();
    let cm = cm.as_ref();
    let mut rep = RunReport::new("check").param("file", file.display());
    let mut any = false;
    if let Some(c) = &ds.cocycle {
        any = true;
        rep.merge(check_cocycle(cm, c));
        if let Some(conn) = &ds.connection {
            rep.merge(check_connection(cm, c, conn)?);
            rep.merge(verify_comd1(cm, c, conn)?);
            if let Some(b) = &ds.curving {
                let derived = match &ds.derived {
                    Some(d) => {
                        rep.merge(check_derived(cm, c, conn, b, d)?);
                        d.clone()
                    }
                    None => compute_curving(cm, c, conn, b)?,
                };
                rep.merge(check_curving(cm, c, conn, b, &derived)?);
            }
        }
    }
    if let Some(b) = &ds.bundle {
        any = true;
        rep.merge(bundle_check(b)?);
    }
    if !any {
        return Err(usage("dataset has neither gerbe nor bundle data to check"));
    }
    Ok(rep)
}

const DESK: (usize, usize, usize, u16) = (4, 4, 3, 2);

fn desk_warning(cover: usize, dim: usize, size: usize, degree: u16) -> Option<String> {
    let (n, d, k, g) = DESK;
    (cover > n || dim > d || size > k || degree > g).then(|| {
        format!(
            "warning: parameters exceed the desk-scale bounds (cover <= {n}, dim <= {d}, size <= {k}, degree <= {g}); exact arithmetic may be slow\n"
        )
    })
}

enum Produced {
    Report(RunReport),
    Text(String),
}

fn dispatch(cmd: &Command, stderr: &mut String) -> Result<Produced, CliError> {
    Ok(match cmd {
        Command::Identities { seed, trials, dim, size, degree } => {
            if let Some(w) = desk_warning(0, *dim, *size, *degree) {
                stderr.push_str(&w);
            }
            let p = SuiteParams { seed: *seed, trials: *trials, dim: *dim, size: *size, degree: *degree };
            Produced::Report(suite::forms_suite(p)?)
        }
        Command::Equiv { seed, one_forms, two_forms, dim, size, degree } => {
            if let Some(w) = desk_warning(0, *dim, *size, *degree) {
                stderr.push_str(&w);
            }
            let p = EquivParams {
                seed: *seed,
                one_forms: *one_forms,
                two_forms: *two_forms,
                dim: *dim,
                size: *size,
                degree: *degree,
            };
            Produced::Report(suite::equivalence_suite(p)?)
        }
        Command::Axioms { instance, size, seed, samples, dim } => {
            let kind = InstanceKind::from_tag(instance)
                .ok_or_else(|| usage(&format!("unknown instance `{instance}` (INNER or ABELIAN)")))?;
            if *size == 0 || *size > 8 || *dim == 0 || *dim > 8 {
                return Err(usage("size and dim must be between 1 and 8"));
            }
            let cm = kind.build(*size);
            Produced::Report(suite::check_crossed_axioms(cm.as_ref(), *seed, *samples, *dim))
        }
        Command::Check { file } => Produced::Report(check_dataset(&load(file)?, file)?),
        Command::Curvature { file, output } => {
            let ds = load(file)?;
            let data = gerbe_data(&Dataset { derived: None, ..ds.clone() })?;
            let text = print_dataset(&with_gerbe(&ds, &data));
            match output {
                Some(p) => {
                    write(p, &text)?;
                    Produced::Text(String::new())
                }
                None => Produced::Text(text),
            }
        }
        Command::Coboundary { file, by, output } => {
            let ds = load(file)?;
            let by_ds = load(by)?;
            let cb = by_ds.coboundary.ok_or_else(|| usage("--by file has no [r]/[theta]/[e]/[n] sections"))?;
            let cm = ds.crossed_module();
            if by_ds.instance != ds.instance || by_ds.size != ds.size || by_ds.cover != ds.cover || by_ds.ring != ds.ring {
                return Err(usage("--by file disagrees with the dataset on ring, instance, size or cover"));
            }
            let data = gerbe_data(&ds)?;
            let mut rep = check_all(cm.as_ref(), &data)?;
            let (primed, after) = coboundary_report(cm.as_ref(), &cb, &data)?;
            rep.merge(after);
            let mut rep = RunReport { command: "coboundary".into(), ..rep };
            rep = rep.param("file", file.display()).param("by", by.display());
            if let Some(p) = output {
                write(p, &print_dataset(&with_gerbe(&ds, &primed)))?;
            }
            Produced::Report(rep)
        }
        Command::Bundle { file } => {
            let ds = load(file)?;
            let b = ds.bundle.ok_or_else(|| usage("dataset has no [g1]/[omega1] sections"))?;
            let rep = bundle_check(&b)?;
            Produced::Report(RunReport { command: "bundle".into(), ..rep }.param("file", file.display()))
        }
        Command::Generate { seed, cover, dim, size, degree, kind, output } => {
            if let Some(w) = desk_warning(*cover, *dim, *size, *degree) {
                stderr.push_str(&w);
            }
            if *size == 0 || *size > 8 || *dim > 12 || *cover > 8 {
                return Err(usage("size must be 1..=8, dim at most 12, cover at most 8"));
            }
            let p = GenerateParams { seed: *seed, cover: *cover, dim: *dim, size: *size, degree: *degree };
            let text = generate_text(p, *kind)?;
            match output {
                Some(p) => {
                    write(p, &text)?;
                    Produced::Text(String::new())
                }
                None => Produced::Text(text),
            }
        }
        Command::Remark { file, by } => {
            let ds = load(file)?;
            let by_ds = load(by)?;
            let cb = by_ds.coboundary.ok_or_else(|| usage("--by file has no [r]/[theta]/[e]/[n] sections"))?;
            let cm = ds.crossed_module();
            let data = gerbe_data(&ds)?;
            let rep = remark_check(cm.as_ref(), &data, &cb)?;
            Produced::Report(RunReport { command: "remark".into(), ..rep }.param("file", file.display()).param("by", by.display()))
        }
    })
}

/// Seeded dataset text over `INNER`. Gerbe data carry the coboundary that
/// produced them from the trivial gerbe.
pub fn generate_text(p: GenerateParams, kind: GenKind) -> Result<String, Error> {
    let cm = InstanceKind::Inner.build(p.size);
    let ring = RingSpec { dim: p.dim, vars: default_vars(p.dim) };
    let mut ds = Dataset::new(ring, InstanceKind::Inner, p.size, p.cover);
    match kind {
        GenKind::Gerbe => {
            let (data, cb) = cech::generate_exact(cm.as_ref(), p)?;
            ds = with_gerbe(&ds, &data);
            ds.coboundary = Some(cb);
        }
        GenKind::Shift => ds.coboundary = Some(cech::generate_shift(cm.as_ref(), p)),
        GenKind::Bundle => ds.bundle = Some(cech::generate_bundle(p)),
    }
    Ok(print_dataset(&ds))
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let mut stderr = String::new();
    let produced = dispatch(&cli.command, &mut stderr);
    match produced {
        Ok(Produced::Text(t)) => Outcome { code: 0, stdout: t, stderr, report: None },
        Ok(Produced::Report(rep)) => {
            if let Some(p) = &cli.report {
                if let Err(e) = write(p, &rep.to_json()) {
                    stderr.push_str(&format!("error: {e}\n"));
                    return Outcome { code: 2, stdout: rep.to_text(), stderr, report: Some(rep) };
                }
            }
            let code = if rep.passed() { 0 } else { 1 };
            Outcome { code, stdout: rep.to_text(), stderr, report: Some(rep) }
        }
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            Outcome { code: e.code(), stdout: String::new(), stderr, report: None }
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { code, stdout: text, stderr: String::new(), report: None }
            } else {
                Outcome { code, stdout: String::new(), stderr: text, report: None }
            }
        }
    }
}
