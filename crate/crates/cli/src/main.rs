use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use photosub_cli::{run_figure, run_fit, validate_suite, write_outputs, CliError, ExperimentConfig, Figure, SweepResult};

const SWEEP_HELP: &str = "CSV columns: x, W00, xi_bar, theta_bar, theta0, Vx, Vp, C, g, s. \
W00, Vx, Vp and C are after losses (losses.eta_hom, sampling.T).";

#[derive(Parser)]
#[command(name = "photosub", version, about = "Photon-subtracted pulsed squeezed light: figure sweeps, fits and validation")]
struct Cli {
    /// TOML configuration (dotted keys; unknown keys are rejected). Defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory. Without it, CSV goes to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Seed for the randomized validation draws.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// W(0,0) vs squeezing s (sweep.fig5), narrow filter.
    #[command(after_help = SWEEP_HELP)]
    Fig5,
    /// W(0,0) vs homodyne slit transmission (sweep.fig6, log-spaced) at s = sweep.s, finite filter.
    #[command(after_help = SWEEP_HELP)]
    Fig6,
    /// W(0,0) vs pump waist ratio w_P/w (sweep.fig7) at s = sweep.s or fixed pump (sweep.fig7_hold).
    #[command(after_help = SWEEP_HELP)]
    Fig7,
    /// Mixing angles theta_bar and theta0 vs squeezing s (sweep.fig8).
    #[command(after_help = SWEEP_HELP)]
    Fig8,
    /// Sections W(x,0), W(0,p) at s = sweep.s with the empirical best fits.
    #[command(after_help = "CSV columns: x, W_x0, W_0p, emp_xi_x0, emp_xi_0p and, with fit.enable_g, emp_xi_g_x0, emp_xi_g_0p.")]
    Fig9,
    /// Fit the empirical model (xi, and g when fit.enable_g) at s = sweep.s.
    #[command(after_help = "CSV columns: x (0 = xi only, 1 = xi and g), xi_emp, g_emp, fit_error_pct.")]
    FitEmpirical,
    /// Run every oracle comparison and invariant check; exits with 3 on any failure.
    Validate,
    /// Print the effective configuration.
    ShowConfig,
}

fn emit(result: &SweepResult, cli: &Cli, cfg: &ExperimentConfig) -> Result<(), CliError> {
    let dir = cli.out.clone().or_else(|| cfg.output.dir.clone());
    let (csv, svg) = match cli.format {
        Format::Csv => (true, false),
        Format::Svg => (false, true),
        Format::Both => (true, true),
    };
    match dir {
        Some(dir) => {
            write_outputs(result, &dir, csv, svg)?;
            eprintln!("wrote {} output to {}", result.meta.command, dir.display());
            Ok(())
        }
        None if !svg => {
            print!("{}", result.to_csv());
            Ok(())
        }
        None => Err(CliError::Config("SVG output needs --out or output.dir".into())),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.output.seed = seed;
    }
    let figure = |fig| run_figure(&cfg, fig).and_then(|r| emit(&r, cli, &cfg));
    match cli.command {
        Command::Fig5 => figure(Figure::Fig5),
        Command::Fig6 => figure(Figure::Fig6),
        Command::Fig7 => figure(Figure::Fig7),
        Command::Fig8 => figure(Figure::Fig8),
        Command::Fig9 => figure(Figure::Fig9),
        Command::FitEmpirical => emit(&run_fit(&cfg)?, cli, &cfg),
        Command::Validate => {
            let report = validate_suite(&cfg, cfg.output.seed)?;
            println!("{report}");
            match report.failures() {
                0 => Ok(()),
                n => Err(CliError::Validation(n)),
            }
        }
        Command::ShowConfig => {
            print!("{}", cfg.to_toml());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
