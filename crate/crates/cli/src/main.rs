use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use srmc::{
    cmd_dump_table, cmd_efficiency, cmd_simulate, cmd_sweep, default_config_toml,
    efficiency_table, parse_set_arg, CliError,
};

/// Simulator and analysis toolkit for a three-phase matrix converter driving
/// a series-resonant battery charger.
#[derive(Parser)]
#[command(name = "srmc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Table,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run one simulation and write waveform.csv, events.csv, analysis.json,
    /// and manifest.json.
    Simulate {
        /// TOML configuration file; omitted keys fall back to defaults.
        #[arg(short, long)]
        config: Option<PathBuf>,
        /// Output directory.
        #[arg(short, long, default_value = "out")]
        out: PathBuf,
        /// Override one configuration key, e.g. --set tank.L=30e-6.
        #[arg(long = "set", value_name = "PATH=VALUE")]
        sets: Vec<String>,
    },
    /// Run the cross product of parameter grids and write summary.csv.
    Sweep {
        #[arg(short, long)]
        config: Option<PathBuf>,
        #[arg(short, long, default_value = "out")]
        out: PathBuf,
        /// Sweep axis, e.g. --set control.fixed_freq=105e3,110e3,120e3.
        /// Repeat for a multi-dimensional grid.
        #[arg(long = "set", value_name = "PATH=V1,V2,...", required = true)]
        sets: Vec<String>,
        /// Maximum concurrent runs.
        #[arg(short = 'j', long, default_value_t = 4)]
        parallel: usize,
    },
    /// Evaluate the analytic conduction-loss / efficiency model.
    Efficiency {
        /// Battery charge power (W).
        #[arg(long, default_value_t = 13_000.0)]
        p_batt: f64,
        /// On-resistance of one composite device (ohm); a comma list sweeps.
        #[arg(long, value_delimiter = ',', default_values_t = [0.030])]
        r_ds: Vec<f64>,
        /// Transformer primary operating voltage (V).
        #[arg(long, default_value_t = 447.75)]
        v_pri: f64,
        /// Transformer secondary operating voltage (V).
        #[arg(long, default_value_t = 375.0)]
        v_sec: f64,
        /// Assumed transformer loss (W).
        #[arg(long, default_value_t = 90.0)]
        p_loss_tx: f64,
        /// Print JSON instead of the text table.
        #[arg(long)]
        json: bool,
    },
    /// Print the sector/PWM-to-gate switching table.
    DumpTable {
        #[arg(long, value_enum, default_value_t = TableFormat::Table)]
        format: TableFormat,
    },
    /// Print the built-in defaults as a TOML configuration.
    PrintDefaults,
}

fn quiet() -> bool {
    std::env::var_os("SRMC_QUIET").is_some()
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate { config, out, sets } => {
            let overrides = sets
                .iter()
                .map(|s| parse_set_arg(s))
                .collect::<Result<Vec<_>, _>>()?;
            let result = cmd_simulate(config.as_deref(), &overrides, &out)?;
            if !quiet() {
                println!(
                    "{} samples, {} events -> {}",
                    result.trace.records.len(),
                    result.trace.events.len(),
                    result.out_dir.display()
                );
                print!("{}", srmc::output::report_text(&result.report));
            }
            Ok(())
        }
        Command::Sweep {
            config,
            out,
            sets,
            parallel,
        } => {
            let mut axes = Vec::new();
            for s in &sets {
                let (path, values) = parse_set_arg(s)?;
                let values: Vec<String> =
                    values.split(',').map(|v| v.trim().to_string()).collect();
                axes.push((path, values));
            }
            let result = cmd_sweep(config.as_deref(), &[], &axes, parallel, &out)?;
            if !quiet() {
                println!(
                    "{} runs ({} failed) -> {}",
                    result.rows.len(),
                    result.failures,
                    result.summary_path.display()
                );
            }
            if result.failures > 0 {
                return Err(CliError::PartialSweep(format!(
                    "{} of {} runs failed",
                    result.failures,
                    result.rows.len()
                )));
            }
            Ok(())
        }
        Command::Efficiency {
            p_batt,
            r_ds,
            v_pri,
            v_sec,
            p_loss_tx,
            json,
        } => {
            let rows = cmd_efficiency(p_batt, &r_ds, v_pri, v_sec, p_loss_tx)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&rows).expect("rows serialize")
                );
            } else {
                print!("{}", efficiency_table(&rows));
            }
            Ok(())
        }
        Command::DumpTable { format } => {
            print!("{}", cmd_dump_table(matches!(format, TableFormat::Csv)));
            Ok(())
        }
        Command::PrintDefaults => {
            print!("{}", default_config_toml());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
