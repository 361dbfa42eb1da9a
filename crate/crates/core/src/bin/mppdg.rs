use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mppdg::harness::{self, RunConfig};
use mppdg::list_problems;

#[derive(Parser)]
#[command(name = "mppdg", version, about = "DG convection-diffusion runs with a bound-preserving flux limiter")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one simulation and print its report.
    Run(RunArgs),
    /// Run a mesh sweep and print the error table.
    Converge {
        #[command(flatten)]
        run: RunArgs,
        /// Cells per direction, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "16,32,64,128")]
        meshes: Vec<usize>,
    },
    /// Compare DG and MPPDG extremes on one of the bound suites.
    Bounds {
        /// porous-1d, bl-1d, bl-2d, rigid, swirl or vortex.
        suite: String,
        /// Replace the suite's cell counts.
        #[arg(long, value_delimiter = ',')]
        meshes: Option<Vec<usize>>,
        /// Directory for bounds.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List registered problems and their parameters.
    ListProblems,
}

#[derive(Args)]
struct RunArgs {
    /// key=value file with the same option names; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    /// Problem parameter, repeatable.
    #[arg(long = "param", value_name = "KEY=VAL")]
    params: Vec<String>,
    #[arg(long)]
    order: Option<String>,
    #[arg(long)]
    cells: Option<String>,
    #[arg(long)]
    cells_y: Option<String>,
    #[arg(long)]
    tfinal: Option<String>,
    #[arg(long)]
    cflc: Option<String>,
    #[arg(long)]
    cfld: Option<String>,
    /// on or off.
    #[arg(long)]
    p3_scaling: Option<String>,
    /// on or off.
    #[arg(long)]
    mpp: Option<String>,
    /// auto, off or the parameter M.
    #[arg(long)]
    tvb: Option<String>,
    /// standard or printed.
    #[arg(long)]
    flux_form: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    seed: Option<String>,
}

impl RunArgs {
    fn config(&self) -> mppdg::Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::from_config_file(p)?,
            None => RunConfig::default(),
        };
        for p in &self.params {
            cfg.set("param", p)?;
        }
        let flags = [
            ("problem", &self.problem),
            ("order", &self.order),
            ("cells", &self.cells),
            ("cells-y", &self.cells_y),
            ("tfinal", &self.tfinal),
            ("cflc", &self.cflc),
            ("cfld", &self.cfld),
            ("p3-scaling", &self.p3_scaling),
            ("mpp", &self.mpp),
            ("tvb", &self.tvb),
            ("flux-form", &self.flux_form),
            ("out", &self.out),
            ("seed", &self.seed),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        Ok(cfg)
    }
}

fn run(cli: Cli) -> mppdg::Result<()> {
    harness::init_threads()?;
    match cli.command {
        Command::Run(args) => {
            let out = harness::run_single(&args.config()?)?;
            println!("{}", serde_json::to_string_pretty(&out.report)?);
        }
        Command::Converge { run, meshes } => {
            let table = harness::run_convergence(&run.config()?, &meshes)?;
            print!("{}", table.render());
        }
        Command::Bounds { suite, meshes, out } => {
            let report = harness::run_bounds_suite(&suite, meshes.as_deref())?;
            print!("{}", report.render());
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir)?;
                std::fs::write(dir.join("bounds.json"), serde_json::to_string_pretty(&report)?)?;
            }
        }
        Command::ListProblems => {
            for p in list_problems() {
                let params: Vec<String> = p.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                println!("{:<22} {}D  {:<24} {}", p.name, p.dimension, params.join(" "), p.summary);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
