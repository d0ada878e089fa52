use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use masim_cli::{
    emit_csv, emit_plot_script, load_config, run_vary_aggregation, run_vary_sources, Error,
    ExperimentConfig,
};
use masim_core::MetricsRow;

#[derive(Parser)]
#[command(
    name = "masim",
    version,
    about = "Mobile-agent data-gathering benchmark for wireless sensor networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the benchmark scenarios and write CSV results plus gnuplot scripts
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Experiment config file; omitted means the built-in defaults
    #[arg(long)]
    config: Option<PathBuf>,

    /// Which sweep to run
    #[arg(long, value_enum, default_value_t = Scenario::Both)]
    scenario: Scenario,

    /// Output directory (defaults to run.output_path from the config)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Planner subset, comma-separated: CMIP,CL-MIP,GIGM-MIP
    #[arg(long)]
    planner: Option<String>,

    /// Seed list, comma-separated
    #[arg(long)]
    seeds: Option<String>,

    /// Partition count: an integer or `auto`
    #[arg(long)]
    k: Option<String>,

    /// Agent payload threshold in bits: a number or `auto`
    #[arg(long = "ma-dpt")]
    ma_dpt: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scenario {
    Sources,
    Aggregation,
    Both,
}

fn main() {
    let cli = Cli::parse();
    match cli.command {
        Command::Simulate(args) => {
            if let Err(error) = simulate(&args) {
                eprintln!("{error}");
                std::process::exit(error.exit_code());
            }
        }
    }
}

fn simulate(args: &SimulateArgs) -> Result<(), Error> {
    let mut config = match &args.config {
        Some(path) => load_config(path)?,
        None => ExperimentConfig::default(),
    };
    config.apply_overrides(
        args.planner.as_deref(),
        args.seeds.as_deref(),
        args.k.as_deref(),
        args.ma_dpt.as_deref(),
    )?;

    let out_dir = args
        .out
        .clone()
        .unwrap_or_else(|| config.output_path.clone());
    std::fs::create_dir_all(&out_dir).map_err(|source| Error::Output {
        path: out_dir.clone(),
        source,
    })?;

    if matches!(args.scenario, Scenario::Sources | Scenario::Both) {
        let rows = run_vary_sources(&config)?;
        write_scenario(&rows, &out_dir, "vary_sources")?;
    }
    if matches!(args.scenario, Scenario::Aggregation | Scenario::Both) {
        let rows = run_vary_aggregation(&config)?;
        write_scenario(&rows, &out_dir, "vary_aggregation")?;
    }
    Ok(())
}

fn write_scenario(rows: &[MetricsRow], out_dir: &std::path::Path, stem: &str) -> Result<(), Error> {
    let csv_path = out_dir.join(format!("{stem}.csv"));
    let gp_path = out_dir.join(format!("{stem}.gp"));
    emit_csv(rows, &csv_path)?;
    emit_plot_script(rows, &gp_path)?;
    println!(
        "{stem}: {} rows -> {} (plot script: {})",
        rows.len(),
        csv_path.display(),
        gp_path.display()
    );

    let mut planners: Vec<&str> = rows.iter().map(|r| r.planner.as_str()).collect();
    planners.sort_unstable();
    planners.dedup();
    for planner in planners {
        let subset: Vec<&MetricsRow> = rows.iter().filter(|r| r.planner == planner).collect();
        let n = subset.len() as f64;
        let duration: f64 = subset.iter().map(|r| r.task_duration_s).sum::<f64>() / n;
        let throughput: f64 = subset.iter().map(|r| r.throughput_bps).sum::<f64>() / n;
        let energy: f64 = subset.iter().map(|r| r.energy_j).sum::<f64>() / n;
        println!(
            "  {planner:<8} mean duration {duration:.4} s | mean throughput {throughput:.1} bit/s | mean energy {energy:.4} J"
        );
    }
    Ok(())
}
