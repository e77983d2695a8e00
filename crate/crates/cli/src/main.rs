mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use finsym_core::{Error, Limits};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "finsym", version, about = "Exact computations for finite-symmetry TFTs")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Largest number of states an exhaustive enumeration may visit
    /// (clamped to 2^24).
    #[arg(long, global = true, env = "FINSYM_MAX_ENUM")]
    max_enum: Option<u64>,

    /// Worker threads for enumerations. Results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cohomology of a preset manifold (or a JSON chain complex).
    Cohomology(CohomologyArgs),
    /// Path-integral value of a π-finite target on a manifold.
    Partition(PartitionArgs),
    /// Matrix of a 2d bordism in the finite gauge theory.
    Bordism(BordismArgs),
    /// Perron–Frobenius dimensions and obstructions of a fusion ring.
    Fusion(FusionArgs),
    /// Allowed line operators for a boundary condition (A′, q).
    Lines(LinesArgs),
    /// Anyon data of the minimal abelian TFT A^{N,p}.
    Anyons(AnyonsArgs),
    /// Yang–Mills θ = π test, fractional instantons, chiral defect fusion.
    Anomaly(AnomalyArgs),
    /// The ℤ_N Gauss sum.
    Gauss(GaussArgs),
    /// Ising partition functions, gauging and Kramers–Wannier duality.
    Ising(IsingArgs),
    /// State space, cylinder and pants of the 2d theory for an abelian group.
    Problem1(Problem1Args),
}

#[derive(Args, Debug)]
pub struct CohomologyArgs {
    /// Manifold expression, e.g. `torus:3`, `circle*interval`, `rp:2+point`.
    #[arg(long, required_unless_present = "complex")]
    pub manifold: Option<String>,
    /// JSON chain complex file with `cells` and `boundaries`.
    #[arg(long, conflicts_with_all = ["manifold", "relative"])]
    pub complex: Option<std::path::PathBuf>,
    /// Coefficient group, e.g. `Z2`, `Z2xZ4`.
    #[arg(long, default_value = "Z2")]
    pub coeff: String,
    /// Single degree; all degrees when omitted.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Cohomology relative to the whole boundary.
    #[arg(long)]
    pub relative: bool,
    /// Also count cocycles and coboundaries by enumeration.
    #[arg(long)]
    pub enumerate: bool,
}

#[derive(Args, Debug)]
pub struct PartitionArgs {
    /// `BG:S3`, `B:Z2` (same as `BG:Z2`), `B2:Z2`, `B3:Z3`, ...
    #[arg(long)]
    pub target: String,
    #[arg(long)]
    pub manifold: String,
    /// Cohomological weight in ℚ/ℤ; only `0` is implemented.
    #[arg(long, default_value = "0")]
    pub twist: String,
}

#[derive(Args, Debug)]
pub struct BordismArgs {
    /// cylinder, pants, copants, cap, cup, sphere, torus, surface:g
    #[arg(long, default_value = "pants")]
    pub shape: String,
    #[arg(long, default_value = "Z2")]
    pub group: String,
    /// Instead of a matrix, compare Tr(cylinder) on n circles with the
    /// closed value.
    #[arg(long)]
    pub trace_circles: Option<usize>,
}

#[derive(Args, Debug)]
pub struct FusionArgs {
    /// `group:G` or `ty:A`, with G a group name such as `S3` or `Z2xZ2`.
    #[arg(long, required_unless_present_any = ["file", "quotient_defect"])]
    pub ring: Option<String>,
    /// JSON fusion ring with `labels`, `unit`, `N`, `dual`.
    #[arg(long, conflicts_with = "ring")]
    pub file: Option<std::path::PathBuf>,
    /// Print Σ_g g and its square in the group ring of this group.
    #[arg(long, conflicts_with_all = ["ring", "file"])]
    pub quotient_defect: Option<String>,
}

#[derive(Args, Debug)]
pub struct LinesArgs {
    /// Ambient group A.
    #[arg(long, default_value = "Z2")]
    pub ambient: String,
    /// Subgroup A′ (`0` for trivial).
    #[arg(long, default_value = "0")]
    pub subgroup: String,
    /// Values q(g′ᵢ) on the generators of A′, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub q: Vec<String>,
    /// Cross terms b(g′ᵢ, g′ⱼ) for i < j, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub cross: Vec<String>,
    /// Images of the generators of A′ in A, e.g. `1,0;0,2`. Defaults to the
    /// standard embedding into the last factors.
    #[arg(long)]
    pub embed: Option<String>,
}

#[derive(Args, Debug)]
pub struct AnyonsArgs {
    #[arg(long = "N")]
    pub n: u64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub p: i64,
    /// Also report the S¹×S² projector acting on the flux sector Lᵐ.
    #[arg(long, allow_negative_numbers = true)]
    pub flux: Option<i64>,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["ym_theta_pi", "instanton", "chiral"])))]
pub struct AnomalyArgs {
    /// SU(N) Yang–Mills at θ = π.
    #[arg(long)]
    pub ym_theta_pi: Option<u64>,
    /// Fractional instanton number for PSU(N); needs `--P`.
    #[arg(long, requires = "pontryagin")]
    pub instanton: Option<u64>,
    /// Pontryagin square ∫𝔓(w₂).
    #[arg(long = "P", id = "pontryagin", allow_negative_numbers = true)]
    pub pontryagin: Option<i64>,
    /// Restrict to spin manifolds.
    #[arg(long)]
    pub spin: bool,
    /// Two chiral defect angles `p/N`.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub chiral: Option<Vec<String>>,
}

#[derive(Args, Debug)]
pub struct GaussArgs {
    #[arg(long = "N")]
    pub n: u64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub p: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum IsingMethod {
    Brute,
    Transfer,
}

#[derive(Args, Debug)]
pub struct IsingArgs {
    #[arg(long = "L")]
    pub l: usize,
    #[arg(long = "T")]
    pub t: usize,
    #[arg(long, required_unless_present = "sweep")]
    pub beta: Option<f64>,
    /// `lo:hi:n`, n evenly spaced temperatures (one row each).
    #[arg(long, conflicts_with = "beta")]
    pub sweep: Option<String>,
    /// `all` or comma-separated sector keys `00,10,01,11` (h_x h_t).
    #[arg(long, default_value = "all")]
    pub sectors: String,
    /// Include the gauged partition function ½ Σ_h Z[h].
    #[arg(long)]
    pub gauge: bool,
    /// Include β∨ and the Kramers–Wannier ratio.
    #[arg(long)]
    pub kw: bool,
    #[arg(long, value_enum, default_value = "brute")]
    pub method: IsingMethod,
}

#[derive(Args, Debug)]
pub struct Problem1Args {
    #[arg(long, default_value = "Z2")]
    pub group: String,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Invalid(_) | Error::Unsupported(_) => 2,
        Error::GuardExceeded { .. } => 3,
        Error::NoConvergence(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let limits = match cli.max_enum {
        Some(m) => Limits::new(m, cli.threads),
        None => Limits::default().with_threads(cli.threads),
    };
    match commands::run(&cli.command, &limits) {
        Ok(v) => {
            print!("{}", output::render(&output::round_floats(v), cli.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
