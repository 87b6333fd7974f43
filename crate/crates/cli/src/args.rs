use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sobmul_core::{DomainSpec, Family, Rational, SpaceSpec};

#[derive(Debug, Parser)]
#[command(name = "sobmul", version, about = "Decide and numerically check Sobolev multiplication and embedding estimates")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide W^{s,p} -> W^{t,q} (or the H/Bpp analogue).
    CheckEmbed(EmbedArgs),
    /// Decide W^{s1,p1} x W^{s2,p2} -> W^{s,p} (or the H/Bpp analogue).
    CheckMult(MultArgs),
    /// Interpolate two space specs at theta.
    Interp(InterpArgs),
    /// Empirically check boundedness of a proved multiplication estimate.
    Verify(VerifyArgs),
    /// Reproduce the growth of the g_N counter-example ratio.
    Counterexample(CounterexampleArgs),
    /// Replay the certificate in a JSON verdict.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DomainArg {
    Rn,
    Bounded,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "W")]
    W,
    #[value(name = "H")]
    H,
    #[value(name = "Bpp")]
    Bpp,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::W => Family::W,
            FamilyArg::H => Family::H,
            FamilyArg::Bpp => Family::Bpp,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SpaceArgs {
    /// Spatial dimension.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    #[arg(long, value_enum)]
    pub domain: DomainArg,
    #[arg(long, value_enum)]
    pub family: FamilyArg,
}

impl SpaceArgs {
    pub fn spec(&self, s: &Rational, p: &Rational) -> SpaceSpec {
        let domain = match self.domain {
            DomainArg::Rn => DomainSpec::whole(self.n),
            DomainArg::Bounded => DomainSpec::bounded(self.n),
        };
        SpaceSpec::new(self.family.into(), s.clone(), p.clone(), domain)
    }
}

#[derive(Debug, Clone, Args)]
pub struct MultArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub s1: Rational,
    #[arg(long)]
    pub p1: Rational,
    #[arg(long, allow_hyphen_values = true)]
    pub s2: Rational,
    #[arg(long)]
    pub p2: Rational,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Rational,
    #[arg(long)]
    pub p: Rational,
}

#[derive(Debug, Clone, Args)]
pub struct EmbedArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Source smoothness.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Rational,
    /// Source integrability.
    #[arg(long)]
    pub p: Rational,
    /// Target smoothness.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Rational,
    /// Target integrability.
    #[arg(long)]
    pub q: Rational,
}

#[derive(Debug, Clone, Args)]
pub struct InterpArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub s0: Rational,
    #[arg(long)]
    pub p0: Rational,
    #[arg(long, allow_hyphen_values = true)]
    pub s1: Rational,
    #[arg(long)]
    pub p1: Rational,
    #[arg(long)]
    pub theta: Rational,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub query: MultArgs,
    /// Random pairs per bandwidth.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Points per axis (power of two); chosen per bandwidth if omitted.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [16usize, 32, 64, 128])]
    pub bandwidths: Vec<usize>,
    /// Spectral decay exponent of the random inputs.
    #[arg(long, default_value_t = 1.0)]
    pub decay: f64,
    /// Directory receiving the JSON and CSV report.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct CounterexampleArgs {
    #[arg(long, default_value = "1/2")]
    pub s: Rational,
    #[arg(long, default_value = "4")]
    pub p1: Rational,
    #[arg(long, default_value = "2")]
    pub p: Rational,
    /// Smoothness of the fixed factor f.
    #[arg(long, default_value = "1")]
    pub s2: Rational,
    /// Integrability of the fixed factor f.
    #[arg(long, default_value = "2")]
    pub p2: Rational,
    /// Largest N; the fit uses N = 1..=Nmax.
    #[arg(long = "Nmax", default_value_t = 7)]
    pub n_max: u32,
    /// Points on the 1D torus (power of two).
    #[arg(long, default_value_t = 1 << 14)]
    pub grid: usize,
    /// Directory receiving the JSON and CSV report.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    /// Verdict JSON as written by `check-mult --json` or `check-embed --json`.
    pub input: PathBuf,
}
