use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;
use vshsim::experiments::{run_experiment, Experiment, ExperimentError, ExperimentSpec};

/// Run a device or array experiment and write its CSV tables.
#[derive(Parser, Debug)]
#[command(name = "simulate", version)]
struct Cli {
    /// fig4_sm, fig4_rdm, fig4_wt, fig5_map, fig7_pattern, fig8_area,
    /// fig9_margins, fig10_scaling, compare or dump-iv
    experiment: String,
    /// Configuration file layered over the shipped defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Override a configuration key, e.g. `--set eirw.J_ex=0.6`.
    #[arg(long = "set", value_name = "KEY=VALUE", value_parser = parse_pair)]
    set: Vec<(String, String)>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

fn parse_pair(s: &str) -> Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got `{s}`"))?;
    let (k, v) = (k.trim(), v.trim());
    if k.is_empty() || v.is_empty() {
        return Err(format!("expected KEY=VALUE, got `{s}`"));
    }
    Ok((k.to_string(), v.to_string()))
}

fn run(cli: Cli) -> Result<String, ExperimentError> {
    let experiment =
        Experiment::parse(&cli.experiment).ok_or_else(|| ExperimentError::UnknownExperiment(cli.experiment.clone()))?;
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(ExperimentError::Input("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| ExperimentError::Input(format!("cannot start thread pool: {e}")))?;
    }
    let spec = ExperimentSpec { experiment, config: cli.config, out_dir: cli.out, overrides: cli.set, seed: cli.seed };
    let report = run_experiment(&spec)?;
    let mut text = report.summary;
    for f in &report.files {
        text.push_str(&format!("wrote {}\n", f.display()));
    }
    Ok(text)
}

fn main() -> ExitCode {
    // Usage errors share the configuration exit status; 2 is reserved for
    // solver failures.
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
