use clap::Parser;
use fracharvest_cli::config::RunConfig;
use fracharvest_cli::error::CliError;
use std::path::PathBuf;
use std::process::ExitCode;

/// Classical and fractional optimal harvesting experiments.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Args {
    /// JSON scenario file.
    #[arg(long)]
    config: PathBuf,

    /// Overrides the fractional order from the config.
    #[arg(long)]
    alpha: Option<f64>,

    /// Overrides the number of grid intervals on [0, T].
    #[arg(long)]
    grid_points: Option<usize>,

    /// Also write an SVG line chart next to each trajectory CSV.
    #[arg(long)]
    plots: bool,

    /// Overrides the output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(args: Args) -> Result<(), CliError> {
    let mut config = RunConfig::load(&args.config)?;
    if let Some(alpha) = args.alpha {
        config.alpha = alpha;
    }
    if let Some(n) = args.grid_points {
        config.grid_points = n;
    }
    if let Some(out) = args.out {
        config.output_dir = out;
    }
    let summary = fracharvest_cli::run(&config, args.plots)?;
    for f in &summary.files {
        println!("wrote {}", f.display());
    }
    if let Some(p) = summary.profits {
        println!("classical profit:    {:.6}", p.classical_profit);
        println!("fractional profit:   {:.6}", p.fractional_profit);
        if let Some(c) = p.cross_policy_profit {
            println!("cross-policy profit: {c:.6}");
        }
        println!("relative gap:        {:.4}%", 100.0 * p.relative_gap);
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
