mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "closurelab", version, about = "Integral closure of ideals and modules, with checkable certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Ring, e.g. `poly QQ [x,y]`, `quot QQ [x] / (x^2)` or `semigroup QQ <2,3>`.
    #[arg(long, global = true)]
    pub ring: Option<String>,
    /// Largest equation degree tried by certificate search.
    #[arg(long, global = true, env = "CLOSURELAB_MAX_DEGREE", default_value_t = 6)]
    pub max_degree: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the JSON report here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(clap::Args, Clone, Debug, Default)]
pub struct ModuleArgs {
    /// Element of M: a vector `[p1, ..., pr]`, or a monomial when M is an ideal.
    pub element: String,
    /// Rank of the free cover.
    #[arg(long, default_value_t = 1)]
    pub rank: usize,
    /// Relations of M, `;`-separated vectors.
    #[arg(long, default_value = "")]
    pub relations: String,
    /// Generators of L as lifts, `;`-separated vectors.
    #[arg(long, default_value = "")]
    pub sub: String,
    /// M as a monomial ideal of the ring.
    #[arg(long, requires = "sub_ideal")]
    pub ambient: Option<String>,
    /// L as a monomial ideal inside `--ambient`.
    #[arg(long, requires = "ambient")]
    pub sub_ideal: Option<String>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Integral closure of a monomial ideal.
    IdealClosure {
        #[arg(long)]
        ideal: String,
    },
    /// Whether an element is integral over an ideal.
    Member {
        element: String,
        #[arg(long)]
        ideal: String,
    },
    /// Liftable integral closure membership.
    Lic(ModuleArgs),
    /// Rees integral closure membership.
    Rees(ModuleArgs),
    /// Both verdicts side by side.
    Compare(ModuleArgs),
    /// Socle of an Artinian ring.
    Socle,
    /// Conductor and Frobenius number of a semigroup ring.
    Conductor,
    /// The integral test ideal in dimension 0, 1 or 2.
    Tau {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
        dim: u8,
        /// Sampled parameter exponents in dimension 1, comma-separated.
        #[arg(long)]
        exponents: Option<String>,
        /// Number of colon stages in dimension 2.
        #[arg(long, default_value_t = 4)]
        stages: u32,
    },
    /// One stage of the local cohomology direct limit.
    LcProbe {
        /// Parameter variables by index, comma-separated; all by default.
        #[arg(long)]
        params: Option<String>,
        #[arg(long, default_value_t = 1)]
        t: u32,
    },
    /// Randomized property suite.
    Props {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = Suite::Properties)]
        suite: Suite,
    },
    /// Torsionless representation of a cyclic module, or checks on a
    /// truncated injective-hull presentation.
    Torsionless {
        #[arg(long, required_unless_present = "truncation")]
        ideal: Option<String>,
        #[arg(long, conflicts_with = "ideal")]
        truncation: Option<usize>,
    },
    /// Re-check the certificates and witnesses in a JSON file.
    Verify { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Properties,
    Dim0,
    Cross,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    match commands::run(&cli, args, start) {
        Ok(report) => {
            if let Some(path) = &cli.out {
                let text = serde_json::to_string_pretty(&report).expect("reports serialize");
                if let Err(e) = std::fs::write(path, text + "\n") {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize")),
                Format::Text => print!("{}", render::text(&report)),
            }
            ExitCode::from(render::exit_code(&report))
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
