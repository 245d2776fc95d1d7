use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use duclab_core::clifford::DEFAULT_PERIOD_CAP;
use duclab_core::schedule::{LambdaSchedule, Preset};
use duclab_core::sim::mbqc::Boundary;
use duclab_core::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "duclab", version, about = "Dual-unitary Clifford circuits as measurement-based computers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Period, algebra dimension and label per k, as TSV.
    Table(TableArgs),
    /// Text (or PGM) picture of the columns O_k(l).
    Spacetime(SpacetimeArgs),
    /// Run one verification suite; exit 1 if any check fails.
    Verify(VerifyArgs),
    /// One adaptive measurement trajectory with byproduct tracking.
    MbqcRun(MbqcArgs),
    /// Parse a schedule and report its basic data.
    ScheduleCheck(ScheduleCheckArgs),
}

/// Exactly one of `--preset` and `--schedule-file`; the preset defaults to all-ones.
#[derive(Debug, Args, Clone)]
pub struct ScheduleSource {
    /// a..j, or all-ones / all-zeros
    #[arg(long, conflicts_with = "schedule_file")]
    pub preset: Option<String>,
    /// Plain-text schedule: "k period_t" then period_t rows of k bits.
    #[arg(long)]
    pub schedule_file: Option<PathBuf>,
    /// Print the lambda rule before the output.
    #[arg(long)]
    pub explain: bool,
}

pub enum Source {
    Preset(Preset),
    File(LambdaSchedule),
}

impl ScheduleSource {
    pub fn resolve(&self) -> Result<Source> {
        if let Some(path) = &self.schedule_file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            return Ok(Source::File(text.parse()?));
        }
        let name = self.preset.as_deref().unwrap_or("all-ones");
        Ok(Source::Preset(name.parse()?))
    }
}

impl Source {
    pub fn schedule(&self, k: usize) -> Result<LambdaSchedule> {
        match self {
            Source::Preset(p) => p.schedule(k),
            Source::File(s) if s.k() == k => Ok(s.clone()),
            Source::File(s) => Err(Error::Domain(format!(
                "schedule file is for k = {}, asked for k = {k}",
                s.k()
            ))),
        }
    }

    /// k values to use when none were given.
    pub fn fixed_k(&self) -> Option<usize> {
        match self {
            Source::Preset(_) => None,
            Source::File(s) => Some(s.k()),
        }
    }

    pub fn explain(&self) -> String {
        match self {
            Source::Preset(p) => p.explain(),
            Source::File(s) => format!(
                "schedule file: k = {}, {} layer(s), applied cyclically; row l lists lambda for virtual qubits 1..k",
                s.k(),
                s.period_t()
            ),
        }
    }
}

/// A list of integers: `5`, `2..7` (inclusive), `2..=7`, `3,7,11`, or `7..31:4` with a step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntList(pub Vec<usize>);

impl FromStr for IntList {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad integer {t:?}"));
        let mut out = Vec::new();
        for part in s.split(',') {
            let (range, step) = match part.split_once(':') {
                Some((r, st)) => (r, num(st)?),
                None => (part, 1),
            };
            if step == 0 {
                return Err("step must be positive".into());
            }
            if let Some((a, b)) = range.split_once("..") {
                let b = b.strip_prefix('=').unwrap_or(b);
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(format!("empty range {range:?}"));
                }
                out.extend((a..=b).step_by(step));
            } else {
                out.push(num(range)?);
            }
        }
        Ok(IntList(out))
    }
}

#[derive(Debug, Args, Clone)]
pub struct Caps {
    #[arg(long, default_value_t = DEFAULT_PERIOD_CAP)]
    pub period_cap: u64,
    /// Largest closure to build; defaults to 4^k - 1.
    #[arg(long)]
    pub closure_cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub source: ScheduleSource,
    #[arg(long, conflicts_with = "k_range")]
    pub k: Option<usize>,
    #[arg(long)]
    pub k_range: Option<IntList>,
    #[command(flatten)]
    pub caps: Caps,
    /// Aligned columns instead of TSV.
    #[arg(long)]
    pub pretty: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpacetimeArgs {
    #[command(flatten)]
    pub source: ScheduleSource,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_PERIOD_CAP)]
    pub period_cap: u64,
    /// Prepend the I/Z marker row read off the first row.
    #[arg(long)]
    pub symmetry_row: bool,
    /// Also write the grid as a plain PGM image.
    #[arg(long)]
    pub pgm: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemma1,
    Lemma2,
    Lemma3,
    Theorem1,
    Recurrence,
    DualUnitarity,
    Byproduct,
    Symmetry,
    Injectivity,
    Entropy,
    Matchgate,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub suite: Suite,
    #[command(flatten)]
    pub source: ScheduleSource,
    /// k values (single, range or list); each suite has its own default.
    #[arg(long, alias = "k-range")]
    pub k: Option<IntList>,
    /// r values for the lemma3 suite.
    #[arg(long)]
    pub r: Option<IntList>,
    /// Chain length for the simulation suites.
    #[arg(long = "N", alias = "n")]
    pub n: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub caps: Caps,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MbqcArgs {
    #[command(flatten)]
    pub source: ScheduleSource,
    #[arg(long = "N", alias = "n")]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated angles; random from the seed when absent.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub angles: Option<Vec<f64>>,
    #[arg(long, default_value = "open")]
    pub boundary: Boundary,
    /// Trajectory log destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Z-basis statistics of the corrected logical state, as TSV.
    #[arg(long)]
    pub distribution: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScheduleCheckArgs {
    #[command(flatten)]
    pub source: ScheduleSource,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_PERIOD_CAP)]
    pub period_cap: u64,
    /// Also check the stabilizers of a resource state on this many sites.
    #[arg(long = "N", alias = "n")]
    pub n: Option<usize>,
    #[arg(long, default_value = "open")]
    pub boundary: Boundary,
}
