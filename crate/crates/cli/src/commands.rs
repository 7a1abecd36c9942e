//! Command implementations behind the CLI surface.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use srmc_core::analysis::{
    conduction_loss_model, dc_link_envelope_check, detect_zvs_events, power_balance,
    EfficiencyReport,
};
use srmc_core::circuit::run_simulation;
use srmc_core::modulation::SWITCHING_TABLE;
use srmc_core::{SimConfig64, SimTrace64};

use crate::config::build_config;
use crate::error::CliError;
use crate::output::{
    analyze, write_events_csv, write_gnuplot, write_waveform_csv, AnalysisReport, RunManifest,
};

/// Result of one `simulate` invocation.
pub struct SimulateOutput {
    pub trace: SimTrace64,
    pub report: AnalysisReport,
    pub out_dir: PathBuf,
}

/// Run one simulation and write waveform.csv, events.csv, analysis.json,
/// manifest.json, and plot.gnuplot into `out_dir`.
pub fn cmd_simulate(
    config_path: Option<&Path>,
    overrides: &[(String, String)],
    out_dir: &Path,
) -> Result<SimulateOutput, CliError> {
    let cfg = build_config(config_path, overrides)?;
    std::fs::create_dir_all(out_dir)?;
    let manifest = RunManifest::new(&cfg);

    let trace = run_simulation(&cfg).map_err(CliError::from)?;
    let report = analyze(&trace);

    write_waveform_csv(&trace, &out_dir.join("waveform.csv"))?;
    write_events_csv(&trace, &out_dir.join("events.csv"))?;
    std::fs::write(
        out_dir.join("analysis.json"),
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
    )?;
    std::fs::write(
        out_dir.join("manifest.json"),
        serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n",
    )?;
    write_gnuplot(&out_dir.join("plot.gnuplot"))?;

    Ok(SimulateOutput {
        trace,
        report,
        out_dir: out_dir.to_path_buf(),
    })
}

/// Render the switching table. `csv` gives one machine-readable row per
/// table entry; otherwise an aligned human-readable table is produced.
pub fn cmd_dump_table(csv: bool) -> String {
    let mut out = String::new();
    if csv {
        out.push_str("sector,pwm_a,pwm_b,pwm_c,AtH,AtL,AbH,AbL,BtH,BtL,BbH,BbL,CtH,CtL,CbH,CbL\n");
        for row in &SWITCHING_TABLE {
            out.push_str(&format!(
                "{},{},{},{}",
                row.sector,
                u8::from(row.select.0),
                u8::from(row.select.1),
                u8::from(row.select.2)
            ));
            for drive in &row.drives {
                out.push(',');
                out.push_str(drive.symbol());
            }
            out.push('\n');
        }
    } else {
        out.push_str(
            "sector  pwm_a pwm_b pwm_c | AtH AtL AbH AbL | BtH BtL BbH BbL | CtH CtL CbH CbL\n",
        );
        for row in &SWITCHING_TABLE {
            out.push_str(&format!(
                "{:^6}  {:^5} {:^5} {:^5} |",
                row.sector,
                u8::from(row.select.0),
                u8::from(row.select.1),
                u8::from(row.select.2)
            ));
            for (i, drive) in row.drives.iter().enumerate() {
                out.push_str(&format!(" {:>3}", drive.symbol()));
                if i % 4 == 3 && i != 11 {
                    out.push_str(" |");
                }
            }
            out.push('\n');
        }
    }
    out
}

/// One efficiency evaluation plus the inputs that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct EfficiencyRow {
    pub p_batt: f64,
    pub r_ds: f64,
    pub v_pri: f64,
    pub v_sec: f64,
    #[serde(flatten)]
    pub report: EfficiencyReport<f64>,
}

/// Evaluate the conduction-loss model, optionally sweeping `r_ds`.
pub fn cmd_efficiency(
    p_batt: f64,
    r_ds_values: &[f64],
    v_pri: f64,
    v_sec: f64,
    p_loss_tx: f64,
) -> Result<Vec<EfficiencyRow>, CliError> {
    if !(p_batt > 0.0) || !(v_pri > 0.0) || !(v_sec > 0.0) || p_loss_tx < 0.0 {
        return Err(CliError::Config(
            "efficiency inputs must be positive (p_loss_tx may be zero)".to_string(),
        ));
    }
    if r_ds_values.is_empty() || r_ds_values.iter().any(|r| !(*r > 0.0)) {
        return Err(CliError::Config(
            "r_ds values must be positive".to_string(),
        ));
    }
    Ok(r_ds_values
        .iter()
        .map(|&r_ds| EfficiencyRow {
            p_batt,
            r_ds,
            v_pri,
            v_sec,
            report: conduction_loss_model(p_batt, r_ds, v_pri, v_sec, p_loss_tx),
        })
        .collect())
}

/// Text table for efficiency rows.
pub fn efficiency_table(rows: &[EfficiencyRow]) -> String {
    let mut out = String::from(
        "p_batt [W]  r_ds [mOhm]  i_pri_rms [A]  p_loss_pri [W]  p_loss_sec [W]  p_loss_tx [W]  efficiency\n",
    );
    for row in rows {
        out.push_str(&format!(
            "{:>10.1}  {:>11.1}  {:>13.3}  {:>14.2}  {:>14.2}  {:>13.1}  {:>9.4}%\n",
            row.p_batt,
            row.r_ds * 1e3,
            row.report.i_pri_rms,
            row.report.p_loss_pri,
            row.report.p_loss_sec,
            row.report.p_loss_tx,
            row.report.efficiency * 100.0
        ));
    }
    out
}

/// Outcome of one sweep point.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub index: usize,
    pub overrides: Vec<(String, String)>,
    pub status: String,
    pub avg_power: Option<f64>,
    pub zvs_fraction: Option<f64>,
    pub envelope_max_dev: Option<f64>,
    pub residual_fraction: Option<f64>,
}

/// Sweep result: rows in grid order plus the failure count.
pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    pub failures: usize,
    pub summary_path: PathBuf,
}

/// Run the cross product of the sweep sets concurrently (up to `parallel`
/// workers) and write one summary row per run, in grid order regardless of
/// completion order.
pub fn cmd_sweep(
    config_path: Option<&Path>,
    base_overrides: &[(String, String)],
    sets: &[(String, Vec<String>)],
    parallel: usize,
    out_dir: &Path,
) -> Result<SweepOutput, CliError> {
    if sets.is_empty() {
        return Err(CliError::Config(
            "sweep needs at least one --set path=v1,v2,... axis".to_string(),
        ));
    }
    // Grid order: first axis outermost, matching the order given.
    let mut combos: Vec<Vec<(String, String)>> = vec![Vec::new()];
    for (path, values) in sets {
        let mut next = Vec::with_capacity(combos.len() * values.len());
        for combo in &combos {
            for v in values {
                let mut c = combo.clone();
                c.push((path.clone(), v.clone()));
                next.push(c);
            }
        }
        combos = next;
    }

    std::fs::create_dir_all(out_dir)?;
    let n = combos.len();
    let results: Mutex<Vec<Option<SweepRow>>> = Mutex::new(vec![None; n]);
    let next_index = AtomicUsize::new(0);
    let workers = parallel.clamp(1, n);

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next_index.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let mut overrides = base_overrides.to_vec();
                overrides.extend(combos[i].iter().cloned());
                let row = run_sweep_point(config_path, &overrides, i, &combos[i]);
                results.lock().expect("no poisoned workers")[i] = Some(row);
            });
        }
    });

    let rows: Vec<SweepRow> = results
        .into_inner()
        .expect("all workers joined")
        .into_iter()
        .map(|r| r.expect("every index filled"))
        .collect();
    let failures = rows.iter().filter(|r| r.status != "ok").count();

    let summary_path = out_dir.join("summary.csv");
    let mut text = String::from(
        "index,overrides,status,avg_power,zvs_fraction,envelope_max_dev,residual_fraction\n",
    );
    for row in &rows {
        let overrides = row
            .overrides
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        text.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.index,
            overrides,
            row.status,
            opt(row.avg_power),
            opt(row.zvs_fraction),
            opt(row.envelope_max_dev),
            opt(row.residual_fraction)
        ));
    }
    std::fs::write(&summary_path, text)?;

    Ok(SweepOutput {
        rows,
        failures,
        summary_path,
    })
}

fn run_sweep_point(
    config_path: Option<&Path>,
    overrides: &[(String, String)],
    index: usize,
    combo: &[(String, String)],
) -> SweepRow {
    let outcome: Result<(SimConfig64, SimTrace64), CliError> = build_config(config_path, overrides)
        .and_then(|cfg| Ok((cfg, run_simulation(&cfg).map_err(CliError::from)?)));
    match outcome {
        Ok((cfg, trace)) => {
            let skip = 2.0 / cfg.modulator.lf_carrier_freq;
            let zvs = detect_zvs_events(&trace, skip);
            let env = dc_link_envelope_check(&trace, skip);
            let balance = power_balance(&trace);
            SweepRow {
                index,
                overrides: combo.to_vec(),
                status: "ok".to_string(),
                avg_power: Some(balance.avg_power),
                zvs_fraction: Some(zvs.zvs_fraction()),
                envelope_max_dev: Some(env.max_rel_deviation),
                residual_fraction: Some(balance.residual_fraction),
            }
        }
        Err(e) => SweepRow {
            index,
            overrides: combo.to_vec(),
            status: e.to_string().replace(',', ";"),
            avg_power: None,
            zvs_fraction: None,
            envelope_max_dev: None,
            residual_fraction: None,
        },
    }
}
