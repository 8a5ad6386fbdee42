//! `ofa`: batch verification driver writing versioned JSON reports.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use ofa_core::form_ring::Family;
use ofa_core::OfaError;

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

mod commands;
mod ring;

pub const SCHEMA: &str = "ofa-report/1";

#[derive(Parser)]
#[command(name = "ofa", version, about = "Verify odd form rings, unitary groups and 2-step nilpotent modules over finite rings")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; reports do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyArg {
    Lin,
    Symp,
    OrthEven,
    OrthOdd,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct Target {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Hyperbolic rank.
    #[arg(long)]
    pub n: usize,
    /// `zmod:m`, `gf:q`, `gf:p:c0,c1,..` or `prod:(A;B)`.
    #[arg(long)]
    pub ring: String,
}

impl Target {
    pub fn family(&self) -> Family {
        match self.family {
            FamilyArg::Lin => Family::Lin(self.n),
            FamilyArg::Symp => Family::Symp(self.n),
            FamilyArg::OrthEven => Family::OrthEven(self.n),
            FamilyArg::OrthOdd => Family::OrthOdd(self.n),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Args, Debug, Serialize)]
pub struct AxiomsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub target: Target,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub mode: Mode,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    /// Required in sampled mode.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct GroupArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub target: Target,
    #[arg(long, default_value_t = ofa_core::unitary::GROUP_CAP)]
    pub cap: usize,
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    /// Dimension, basis and center of the odd form algebra.
    Build(Target),
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// List every element of the unitary group.
    Enumerate(GroupArgs),
    Order(GroupArgs),
    /// Order plus determinant and Dickson data where defined.
    Invariants(GroupArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct SoOddArgs {
    #[arg(long)]
    pub ring: String,
    /// Also compare the image of the Dickson kernel with an enumeration of SO(3).
    #[arg(long)]
    pub with_image: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct ConstructArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub target: Target,
    #[arg(long, default_value_t = 1 << 20)]
    pub cap: u64,
    #[arg(long, default_value_t = 200)]
    pub samples: u64,
    /// Required by `canonical` and `compare`.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum ConstructCmd {
    /// Orders of the naive pair (T, Xi) and its unitary group.
    Naive(ConstructArgs),
    /// Canonical pair against the preset odd form parameter.
    Canonical(ConstructArgs),
    /// Canonical morphism and unitary group comparison.
    Compare(ConstructArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    Xy,
    Heisenberg,
}

#[derive(Args, Debug, Serialize)]
pub struct Nil2Args {
    /// Module JSON as written by `nil2 extend`.
    #[arg(long, conflicts_with = "preset")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Registered extension: f2-f4, f3-f9 or z4-gr4.
    #[arg(long, default_value = "f2-f4")]
    pub ext: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct CounterexampleArgs {
    #[arg(long, default_value_t = 4)]
    pub modulus: u64,
}

#[derive(Subcommand, Debug)]
pub enum Nil2Cmd {
    /// Extend scalars along the registered extension.
    Extend(Nil2Args),
    /// Injectivity of M0 into the extension.
    Probe(Nil2Args),
    /// Extend, descend along the canonical datum and compare.
    Descend(Nil2Args),
    /// The quotient of the xy-module over (Z/m)[s]/(s^2 - 2) extended to F2.
    Counterexample(CounterexampleArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct CliffordArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub ring: String,
    #[arg(long, default_value_t = 1 << 20)]
    pub cap: u64,
}

#[derive(Subcommand, Debug)]
pub enum CliffordCmd {
    /// Enumerate Spin and its vector representation.
    Spin(CliffordArgs),
    /// Presentation relations of the even Clifford algebra.
    Relations(CliffordArgs),
    /// Center of the even Clifford algebra.
    Center(CliffordArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct ParabolicArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub target: Target,
    /// Rank of the standard hyperbolic family; defaults to n.
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    pub cap: usize,
}

#[derive(Subcommand)]
enum Cmd {
    Algebra {
        #[command(subcommand)]
        action: AlgebraCmd,
    },
    /// Odd form ring and augmentation axioms, structure relations, specialness.
    Axioms(AxiomsArgs),
    Group {
        #[command(subcommand)]
        action: GroupCmd,
    },
    /// Dickson kernel of the odd orthogonal group of rank 1 against SO(3).
    SoOddSplit(SoOddArgs),
    Construct {
        #[command(subcommand)]
        action: ConstructCmd,
    },
    /// Half determinant of the split quadratic module.
    Hdet(Target),
    Nil2 {
        #[command(subcommand)]
        action: Nil2Cmd,
    },
    Clifford {
        #[command(subcommand)]
        action: CliffordCmd,
    },
    /// Parabolic subgroup of a standard hyperbolic family.
    Parabolic(ParabolicArgs),
}

/// Result of one command: a payload and whether every check passed.
pub struct Outcome {
    pub passed: bool,
    pub result: Value,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(OfaError),
}

impl From<OfaError> for CliError {
    fn from(e: OfaError) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "usage error: {s}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

fn params<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("flags serialize")
}

fn dispatch(cmd: &Cmd) -> (&'static str, Value, Result<Outcome, CliError>) {
    use commands as c;
    match cmd {
        Cmd::Algebra { action: AlgebraCmd::Build(t) } => ("algebra build", params(t), c::algebra_build(t)),
        Cmd::Axioms(a) => ("axioms", params(a), c::axioms(a)),
        Cmd::Group { action } => match action {
            GroupCmd::Enumerate(a) => ("group enumerate", params(a), c::group_enumerate(a)),
            GroupCmd::Order(a) => ("group order", params(a), c::group_order(a)),
            GroupCmd::Invariants(a) => ("group invariants", params(a), c::group_invariants(a)),
        },
        Cmd::SoOddSplit(a) => ("so-odd-split", params(a), c::so_odd_split(a)),
        Cmd::Construct { action } => match action {
            ConstructCmd::Naive(a) => ("construct naive", params(a), c::construct_naive(a)),
            ConstructCmd::Canonical(a) => ("construct canonical", params(a), c::construct_canonical(a)),
            ConstructCmd::Compare(a) => ("construct compare", params(a), c::construct_compare(a)),
        },
        Cmd::Hdet(t) => ("hdet", params(t), c::hdet(t)),
        Cmd::Nil2 { action } => match action {
            Nil2Cmd::Extend(a) => ("nil2 extend", params(a), c::nil2_extend(a)),
            Nil2Cmd::Probe(a) => ("nil2 probe", params(a), c::nil2_probe(a)),
            Nil2Cmd::Descend(a) => ("nil2 descend", params(a), c::nil2_descend(a)),
            Nil2Cmd::Counterexample(a) => ("nil2 counterexample", params(a), c::nil2_counterexample(a)),
        },
        Cmd::Clifford { action } => match action {
            CliffordCmd::Spin(a) => ("clifford spin", params(a), c::clifford_spin(a)),
            CliffordCmd::Relations(a) => ("clifford relations", params(a), c::clifford_relations(a)),
            CliffordCmd::Center(a) => ("clifford center", params(a), c::clifford_center(a)),
        },
        Cmd::Parabolic(a) => ("parabolic", params(a), c::parabolic(a)),
    }
}

fn emit(out: Option<&PathBuf>, v: &Value) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(v).expect("report serializes") + "\n";
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("ofa: cannot set up {j} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let (command, flags, res) = dispatch(&cli.cmd);
    let (code, report) = match res {
        Ok(o) => (
            if o.passed { 0 } else { 1 },
            json!({"schema": SCHEMA, "command": command, "flags": flags, "passed": o.passed, "result": o.result}),
        ),
        Err(e) => {
            eprintln!("ofa: {e}");
            (2, json!({"schema": SCHEMA, "command": command, "flags": flags, "passed": false, "error": e.to_string()}))
        }
    };
    if let Err(e) = emit(cli.out.as_ref(), &report) {
        eprintln!("ofa: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
