//! `torimaps`: enumerate toroidal maps, build canonical orientations, run the
//! mobile bijection, print counting series, verify identities and draw maps.

mod commands;
mod error;
mod files;
mod render;
mod verify;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use error::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "torimaps", version, about = "Toroidal maps, balanced orientations and mobiles")]
struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate rooted maps by genus, vertex count and face degrees.
    Enumerate(EnumerateArgs),
    /// Compute the canonical orientation of a face-rooted map.
    Orient(OrientArgs),
    /// Map an oriented map to its mobile, or close a mobile into a map.
    Biject(BijectArgs),
    /// Print the coefficients of a counting series.
    Series(SeriesArgs),
    /// Run one verification suite.
    Verify(VerifyArgs),
    /// Draw a map or a mobile on the flat torus as SVG.
    Render(RenderArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["count", "emit"])))]
pub struct EnumerateArgs {
    #[arg(long, default_value_t = 1)]
    pub genus: usize,
    #[arg(long)]
    pub vertices: usize,
    /// Face rule: all=D, at-least=D, even-at-least=D, single=D or root=D,min=M.
    #[arg(long)]
    pub faces: String,
    /// Edge bound; derived from Euler's formula when every face has degree D.
    #[arg(long)]
    pub max_edges: Option<usize>,
    /// Filters: essential-girth=D, girth-at-least=K, bipartite, in-m=D, in-l=D, in-f=D.
    #[arg(long = "filter")]
    pub filters: Vec<String>,
    /// One output per map with a root face instead of one per root corner.
    #[arg(long)]
    pub face_rooted: bool,
    #[arg(long)]
    pub count: bool,
    /// Directory receiving one map file per generated map.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OrientArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub d: usize,
    /// Halve the orientation of a bipartite map of even face degree.
    #[arg(long)]
    pub bipartite_halve: bool,
    /// Canonical Z-orientation of a map in L_d instead of the balanced one.
    #[arg(long)]
    pub z_regime: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("direction").required(true).args(["forward", "inverse"])))]
pub struct BijectArgs {
    /// Oriented map to mobile.
    #[arg(long)]
    pub forward: bool,
    /// Mobile to oriented map.
    #[arg(long)]
    pub inverse: bool,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Mobile family whose membership is required.
    #[arg(long, value_enum, requires = "param")]
    pub family: Option<FamilyArg>,
    /// Parameter of the family (d or b).
    #[arg(long)]
    pub param: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    U,
    UBal,
    HatU,
    HatUBal,
    V,
    VBal,
    HatV,
    HatVBal,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    /// triangulation, quadrangulation, bip-quad-all, loopless-tri-all, W<d> or V<b>.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub order: usize,
    /// Face degree marked by the planar systems (default d for W<d>, 2b for V<b>).
    #[arg(long)]
    pub xdelta: Option<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 3)]
    pub d: usize,
    #[arg(long, default_value_t = 2)]
    pub max_n: usize,
    /// Restrict to bipartite maps and the halved mobile families.
    #[arg(long)]
    pub bipartite: bool,
    /// Check maps in L_d with their canonical Z-orientations.
    #[arg(long)]
    pub l_family: bool,
    /// Truncation order of the series cross-check.
    #[arg(long, default_value_t = 20)]
    pub order: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Roundtrip,
    Uniqueness,
    GammaLinearity,
    Epsilon,
    Parity,
    Counting,
    SeriesCrosscheck,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    /// A map file, or a mobile in JSON.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Side of the fundamental domain in pixels.
    #[arg(long, default_value_t = 400)]
    pub size: u32,
}

fn run(cli: Cli) -> CliResult<()> {
    let format = cli.format;
    match cli.command {
        Command::Enumerate(a) => commands::enumerate(&a, format),
        Command::Orient(a) => commands::orient(&a, format),
        Command::Biject(a) => commands::biject(&a, format),
        Command::Series(a) => commands::series(&a, format),
        Command::Verify(a) => verify::run(&a, format),
        Command::Render(a) => render::run(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = catch_unwind(AssertUnwindSafe(|| run(cli)))
        .unwrap_or_else(|_| Err(CliError::Internal("assertion failure".into())));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("torimaps: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
