//! Figure sweeps, empirical fits and the validation suite behind the
//! `photosub` command.

pub mod config;
pub mod error;
pub mod figures;
pub mod result;
pub mod svg;
pub mod validate;

use std::path::Path;

pub use config::ExperimentConfig;
pub use error::CliError;
pub use figures::{run_figure, run_fit, Figure};
pub use result::{SweepResult, SweepRow};
pub use validate::{validate_suite, Report};

/// Line plot of a result table, or `None` for tables without a plot layout.
pub fn plot(result: &SweepResult) -> Option<String> {
    let x = result.column("x")?;
    let command = result.meta.command.as_str();
    let (y_label, wanted): (&str, Vec<(&str, &str)>) = match command {
        "fig5" | "fig6" | "fig7" => ("W(0,0)", vec![("W00", "W(0,0) after losses")]),
        "fig8" => ("mixing angle (rad)", vec![("theta_bar", "theta_bar"), ("theta0", "theta_0")]),
        "fig9" => (
            "W",
            vec![
                ("W_x0", "W(x,0)"),
                ("W_0p", "W(0,p)"),
                ("emp_xi_x0", "xi fit, (x,0)"),
                ("emp_xi_0p", "xi fit, (0,p)"),
                ("emp_xi_g_x0", "xi+g fit, (x,0)"),
                ("emp_xi_g_0p", "xi+g fit, (0,p)"),
            ],
        ),
        _ => return None,
    };
    let columns: Vec<(&str, Vec<f64>, bool)> = wanted
        .into_iter()
        .filter_map(|(col, label)| result.column(col).map(|y| (label, y, col.starts_with("emp"))))
        .collect();
    let plot = svg::Plot {
        title: command,
        x_label: &result.meta.x_label,
        y_label,
        log_x: command == "fig6",
        series: columns.iter().map(|(label, y, dashed)| svg::Series { label, x: &x, y, dashed: *dashed }).collect(),
    };
    Some(plot.render())
}

/// Writes `<dir>/<command>.csv` and/or `.svg`.
pub fn write_outputs(result: &SweepResult, dir: &Path, csv: bool, svg: bool) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;
    let stem = dir.join(&result.meta.command);
    if csv {
        std::fs::write(stem.with_extension("csv"), result.to_csv())?;
    }
    if svg {
        match plot(result) {
            Some(doc) => std::fs::write(stem.with_extension("svg"), doc)?,
            None => log::warn!("no plot layout for {}; SVG skipped", result.meta.command),
        }
    }
    Ok(())
}
