//! File outputs: waveform/event CSVs, analysis JSON, run manifest, and a
//! companion gnuplot script.

use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use srmc_core::analysis::{
    cycle_averaged_input_currents, dc_link_envelope_check, detect_zvs_events,
    input_current_quality, per_hf_cycle_power, power_balance, PfReport, ZvsSummary,
};
use srmc_core::{SimConfig64, SimTrace64};

use crate::error::CliError;

/// Pinned waveform CSV header.
pub const WAVEFORM_HEADER: &str = "t,va,vb,vc,sector,pwm_a,pwm_b,pwm_c,AtH,AtL,AbH,AbL,BtH,BtL,BbH,BbL,CtH,CtL,CbH,CbL,v_mx,i_L,v_C,i_batt,p_out,f_hf";

/// Pinned events CSV header.
pub const EVENTS_HEADER: &str = "t,kind,device,zvs";

/// Startup interval excluded from the ZVS/envelope statistics, in LF PWM
/// periods: the tank starts discharged, so the first cycles have no
/// freewheeling current and would misread as hard switching.
pub const STARTUP_SKIP_LF_PERIODS: f64 = 2.0;

fn bit(b: bool) -> u8 {
    u8::from(b)
}

/// Write the decimated waveform samples in the pinned column order.
pub fn write_waveform_csv(trace: &SimTrace64, path: &Path) -> Result<(), CliError> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "{WAVEFORM_HEADER}")?;
    for r in &trace.records {
        write!(
            w,
            "{},{},{},{},{}",
            r.t,
            r.v.va,
            r.v.vb,
            r.v.vc,
            r.sector.index()
        )?;
        write!(
            w,
            ",{},{},{}",
            bit(r.select.pwm_a),
            bit(r.select.pwm_b),
            bit(r.select.pwm_c)
        )?;
        for g in r.gates.0 {
            write!(w, ",{}", bit(g))?;
        }
        writeln!(
            w,
            ",{},{},{},{},{},{}",
            r.v_mx, r.tank.i_l, r.tank.v_c, r.i_batt, r.p_out, r.f_hf
        )?;
    }
    w.flush()?;
    Ok(())
}

/// Write the event log.
pub fn write_events_csv(trace: &SimTrace64, path: &Path) -> Result<(), CliError> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "{EVENTS_HEADER}")?;
    for e in &trace.events {
        let device = e.device.map(|d| d.name()).unwrap_or("");
        let zvs = match e.zvs_precondition {
            Some(true) => "1",
            Some(false) => "0",
            None => "",
        };
        writeln!(w, "{},{},{},{}", e.t, e.kind.as_str(), device, zvs)?;
    }
    w.flush()?;
    Ok(())
}

/// Companion plotting script for the waveform CSV.
pub fn write_gnuplot(path: &Path) -> Result<(), CliError> {
    let script = "\
# gnuplot companion for waveform.csv (run from the output directory)
set datafile separator ','
set key autotitle columnhead
set xlabel 't [s]'
set terminal pngcairo size 1400,900
set output 'waveforms.png'
set multiplot layout 3,1
set ylabel 'V'
plot 'waveform.csv' using 1:21 with lines title 'v_mx'
set ylabel 'A'
plot 'waveform.csv' using 1:22 with lines title 'i_L'
set ylabel 'V / A'
plot 'waveform.csv' using 1:2 with lines title 'va', \\
     '' using 1:3 with lines title 'vb', \\
     '' using 1:4 with lines title 'vc', \\
     '' using 1:24 with lines title 'i_batt'
unset multiplot
";
    std::fs::write(path, script)?;
    Ok(())
}

/// Deterministic run identifier: SHA-256 over the canonical JSON form of the
/// configuration.
pub fn run_id(cfg: &SimConfig64) -> String {
    let canonical = serde_json::to_string(cfg).expect("config serializes");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

/// Run metadata written next to the data files.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub run_id: String,
    pub start_time: String,
    pub config: SimConfig64,
}

impl RunManifest {
    pub fn new(cfg: &SimConfig64) -> Self {
        RunManifest {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            run_id: run_id(cfg),
            start_time: chrono::Utc::now().to_rfc3339(),
            config: *cfg,
        }
    }
}

/// DC-link envelope section of the analysis report.
#[derive(Debug, Clone, Serialize)]
pub struct DcLinkSection {
    pub max_rel_deviation: f64,
    pub v_sim_min: f64,
    pub v_sim_max: f64,
    pub v_theory_min: f64,
    pub v_theory_max: f64,
    pub lf_cycles_checked: usize,
}

/// Energy/power section of the analysis report.
#[derive(Debug, Clone, Serialize)]
pub struct PowerSection {
    pub e_in: f64,
    pub e_out: f64,
    pub delta_tank: f64,
    pub residual: f64,
    pub residual_fraction: f64,
    pub avg_power: f64,
    pub power_cmd: f64,
    pub per_cycle_power_min: f64,
    pub per_cycle_power_max: f64,
    pub cycles_after_settle: usize,
    pub settle_skipped_s: f64,
}

/// Full analysis written as `analysis.json`.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub run_id: String,
    pub zvs_summary: ZvsSummary<f64>,
    pub power_factor: Option<PfReport<f64>>,
    pub power_factor_note: Option<String>,
    pub dc_link: DcLinkSection,
    pub power: PowerSection,
}

/// Post-process a finished trace into the standard report.
pub fn analyze(trace: &SimTrace64) -> AnalysisReport {
    let cfg = &trace.config;
    let lf_period = 1.0 / cfg.modulator.lf_carrier_freq;
    let skip = STARTUP_SKIP_LF_PERIODS * lf_period;

    let zvs = detect_zvs_events(trace, skip);
    let envelope = dc_link_envelope_check(trace, skip);

    let (power_factor, power_factor_note) = match cycle_averaged_input_currents(trace, lf_period)
        .and_then(|avg| input_current_quality(&avg, &cfg.grid, cfg.battery.power_cmd))
    {
        Ok(report) => (Some(report), None),
        Err(e) => (None, Some(e.to_string())),
    };

    let balance = power_balance(trace);
    let settle = skip.max(0.2 * trace.simulated_duration());
    let mut per_min = f64::INFINITY;
    let mut per_max = f64::NEG_INFINITY;
    let mut cycles = 0usize;
    for (t, p) in per_hf_cycle_power(trace) {
        if t < settle {
            continue;
        }
        per_min = per_min.min(p);
        per_max = per_max.max(p);
        cycles += 1;
    }
    if cycles == 0 {
        per_min = 0.0;
        per_max = 0.0;
    }

    AnalysisReport {
        run_id: run_id(cfg),
        zvs_summary: zvs.summary,
        power_factor,
        power_factor_note,
        dc_link: DcLinkSection {
            max_rel_deviation: envelope.max_rel_deviation,
            v_sim_min: envelope.v_sim_min,
            v_sim_max: envelope.v_sim_max,
            v_theory_min: envelope.v_theory_min,
            v_theory_max: envelope.v_theory_max,
            lf_cycles_checked: envelope.cycles.len(),
        },
        power: PowerSection {
            e_in: balance.e_in,
            e_out: balance.e_out,
            delta_tank: balance.delta_tank,
            residual: balance.residual,
            residual_fraction: balance.residual_fraction,
            avg_power: balance.avg_power,
            power_cmd: cfg.battery.power_cmd,
            per_cycle_power_min: per_min,
            per_cycle_power_max: per_max,
            cycles_after_settle: cycles,
            settle_skipped_s: settle,
        },
    }
}

/// Human-readable rendering of the analysis report.
pub fn report_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("run id        {}\n", report.run_id));
    let z = &report.zvs_summary;
    out.push_str(&format!(
        "zvs           {}/{} soft turn-ons (hf {}/{}, lf transitions {}/{})\n",
        z.zvs_events,
        z.total_events,
        z.hf_zvs_events,
        z.hf_events,
        z.lf_transition_zvs_events,
        z.lf_transition_events
    ));
    if let Some(t) = z.mean_diode_conduction_time {
        out.push_str(&format!("              mean diode conduction {:.1} ns\n", t * 1e9));
    }
    match &report.power_factor {
        Some(pf) => out.push_str(&format!(
            "power factor  k_fit {:.5} A/V vs k_theory {:.5} (r^2 {:.4}), thd {:.2}%, displacement {:.3} deg\n",
            pf.k_fit,
            pf.k_theory,
            pf.r_squared,
            pf.thd * 100.0,
            pf.displacement_angle_deg
        )),
        None => out.push_str(&format!(
            "power factor  not computed ({})\n",
            report
                .power_factor_note
                .as_deref()
                .unwrap_or("insufficient data")
        )),
    }
    out.push_str(&format!(
        "dc link       tracking deviation {:.2}% over {} LF cycles, sim [{:.1}, {:.1}] V\n",
        report.dc_link.max_rel_deviation * 100.0,
        report.dc_link.lf_cycles_checked,
        report.dc_link.v_sim_min,
        report.dc_link.v_sim_max
    ));
    let p = &report.power;
    out.push_str(&format!(
        "power         avg {:.1} W of {:.1} W commanded; per-cycle [{:.1}, {:.1}] W\n",
        p.avg_power, p.power_cmd, p.per_cycle_power_min, p.per_cycle_power_max
    ));
    out.push_str(&format!(
        "energy        in {:.3} J, out {:.3} J, tank {:+.3} J, residual fraction {:.2e}\n",
        p.e_in, p.e_out, p.delta_tank, p.residual_fraction
    ));
    out
}
