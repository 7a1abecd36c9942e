//! DC-link envelope verification.
//!
//! Under balanced voltages the duty-weighted average voltage the bridge
//! presents to the resonant stage is `V_dc(t) = 1.5 * V_in^2 / |V_clamped(t)|`,
//! spanning `[1.5 V_in, sqrt(3) V_in]` over a sector.

use serde::{Deserialize, Serialize};

use crate::circuit::SimTrace;
use crate::scalar::{lit, Scalar};

/// Analytic DC-link voltage for a clamped-phase voltage magnitude (V).
pub fn dc_link_voltage<T: Scalar>(vin_amplitude: T, v_clamped: T) -> T {
    lit::<T>(1.5) * vin_amplitude * vin_amplitude / v_clamped.abs()
}

/// Per-LF-cycle comparison of simulated plateau average vs the analytic value.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct EnvelopeCycle<T> {
    pub t_start: T,
    /// Mean of |v_mx| over the LF cycle (V).
    pub v_sim: T,
    /// Mean analytic DC-link voltage over the same samples (V).
    pub v_theory: T,
    pub rel_deviation: T,
}

/// Envelope-tracking report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnvelopeReport<T> {
    pub cycles: Vec<EnvelopeCycle<T>>,
    pub max_rel_deviation: T,
    /// Extremes of the simulated per-cycle averages (V).
    pub v_sim_min: T,
    pub v_sim_max: T,
    /// Extremes of the analytic value over the analyzed span (V).
    pub v_theory_min: T,
    pub v_theory_max: T,
}

/// Compare the duty-weighted |v_mx| average against the analytic DC-link
/// voltage, one LF PWM cycle at a time. Requires full-duty HF operation
/// (phase_shift = 0); cycles that start before `ignore_before` are skipped
/// so the discharged-tank startup (where dead-time intervals hold zero
/// volts) does not register as tracking error.
pub fn dc_link_envelope_check<T: Scalar>(trace: &SimTrace<T>, ignore_before: T) -> EnvelopeReport<T> {
    let lf_period = T::one() / trace.config.modulator.lf_carrier_freq;
    let vin = trace.config.grid.vin_amplitude;

    let mut cycles = Vec::new();
    let mut idx = 0usize;
    let records = &trace.records;
    while idx < records.len() {
        let t0 = records[idx].t;
        let cycle_index = (t0 / lf_period + lit::<T>(1e-9)).floor();
        let t_cycle_start = cycle_index * lf_period;
        let t_cycle_end = t_cycle_start + lf_period;

        let mut sum_sim = T::zero();
        let mut sum_theory = T::zero();
        let mut count = 0usize;
        let mut j = idx;
        while j < records.len() && records[j].t < t_cycle_end {
            let r = &records[j];
            sum_sim += r.v_mx.abs();
            sum_theory += dc_link_voltage(vin, r.v.get(r.sector.clamped_phase()));
            count += 1;
            j += 1;
        }
        let complete = j < records.len();
        if complete && count > 0 && t_cycle_start >= ignore_before {
            let n = T::from_usize(count).unwrap();
            let v_sim = sum_sim / n;
            let v_theory = sum_theory / n;
            cycles.push(EnvelopeCycle {
                t_start: t_cycle_start,
                v_sim,
                v_theory,
                rel_deviation: ((v_sim - v_theory) / v_theory).abs(),
            });
        }
        idx = j;
        if !complete {
            break;
        }
    }

    let mut report = EnvelopeReport {
        max_rel_deviation: T::zero(),
        v_sim_min: T::infinity(),
        v_sim_max: T::neg_infinity(),
        v_theory_min: T::infinity(),
        v_theory_max: T::neg_infinity(),
        cycles,
    };
    for c in &report.cycles {
        report.max_rel_deviation = report.max_rel_deviation.max(c.rel_deviation);
        report.v_sim_min = report.v_sim_min.min(c.v_sim);
        report.v_sim_max = report.v_sim_max.max(c.v_sim);
        report.v_theory_min = report.v_theory_min.min(c.v_theory);
        report.v_theory_max = report.v_theory_max.max(c.v_theory);
    }
    report
}
