//! Grid phase-current reconstruction and PWM-cycle averaging.

use crate::circuit::{solve_bridge, BridgeConnection, Record, SimTrace, CURRENT_EPS};
use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

/// Uniformly sampled cycle-averaged phase currents.
#[derive(Clone, Debug)]
pub struct AveragedCurrents<T> {
    /// Sample timestamps (s), taken from the underlying records.
    pub t: Vec<T>,
    /// Nominal sample spacing (s).
    pub sample_dt: T,
    pub i_a: Vec<T>,
    pub i_b: Vec<T>,
    pub i_c: Vec<T>,
}

impl<T: Scalar> AveragedCurrents<T> {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn phase(&self, idx: usize) -> &[T] {
        match idx {
            0 => &self.i_a,
            1 => &self.i_b,
            _ => &self.i_c,
        }
    }
}

/// Instantaneous phase currents implied by one record: the connected pair
/// carries the tank current (positive into the converter on the top rail),
/// everything else is zero.
pub fn instantaneous_phase_currents<T: Scalar>(record: &Record<T>) -> [T; 3] {
    let conn = solve_bridge(
        &record.gates,
        &record.v,
        record.tank.i_l,
        lit::<T>(CURRENT_EPS),
    )
    .unwrap_or(BridgeConnection::Held);
    let mut currents = [T::zero(); 3];
    if let Some((top, bottom)) = conn.pair() {
        currents[top.index()] = record.tank.i_l;
        currents[bottom.index()] = -record.tank.i_l;
    }
    currents
}

/// Sliding-mean the reconstructed phase currents with a window of width
/// `window` seconds (at least one LF PWM period). Only samples whose full
/// centered window fits inside the trace are emitted.
pub fn cycle_averaged_input_currents<T: Scalar>(
    trace: &SimTrace<T>,
    window: T,
) -> Result<AveragedCurrents<T>> {
    let lf_period = T::one() / trace.config.modulator.lf_carrier_freq;
    // Tolerate float fuzz when the caller passes exactly one LF period.
    if window < lf_period * lit::<T>(1.0 - 1e-9) {
        return Err(Error::WindowTooShort {
            window: window.to_f64().unwrap_or(f64::NAN),
            lf_period: lf_period.to_f64().unwrap_or(f64::NAN),
        });
    }
    let sample_dt = trace.sample_dt();
    let w = (window / sample_dt)
        .round()
        .to_usize()
        .unwrap_or(usize::MAX)
        .max(1);
    let n = trace.records.len();
    if n <= w {
        return Err(Error::InsufficientData(format!(
            "{n} samples cannot host a {w}-sample averaging window"
        )));
    }

    // Prefix sums per phase; mean over [j, j+w) assigned to the center.
    let mut prefix = vec![[T::zero(); 3]; n + 1];
    for (j, r) in trace.records.iter().enumerate() {
        let i = instantaneous_phase_currents(r);
        for p in 0..3 {
            prefix[j + 1][p] = prefix[j][p] + i[p];
        }
    }

    let out_len = n - w;
    let mut t = Vec::with_capacity(out_len);
    let mut i_a = Vec::with_capacity(out_len);
    let mut i_b = Vec::with_capacity(out_len);
    let mut i_c = Vec::with_capacity(out_len);
    let wt = T::from_usize(w).unwrap();
    for j in 0..out_len {
        let mean = |p: usize| (prefix[j + w][p] - prefix[j][p]) / wt;
        t.push(trace.records[j + w / 2].t);
        i_a.push(mean(0));
        i_b.push(mean(1));
        i_c.push(mean(2));
    }
    Ok(AveragedCurrents {
        t,
        sample_dt,
        i_a,
        i_b,
        i_c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::SimConfig;

    #[test]
    fn too_short_window_is_rejected() {
        let cfg = SimConfig::<f64>::default();
        let trace = crate::circuit::SimTrace {
            config: cfg,
            records: Vec::new(),
            events: Vec::new(),
            half_cycles: Vec::new(),
            initial_state: Default::default(),
            final_state: Default::default(),
            e_in_total: 0.0,
            e_out_total: 0.0,
        };
        let lf_period = 1.0 / cfg.modulator.lf_carrier_freq;
        assert!(matches!(
            cycle_averaged_input_currents(&trace, 0.5 * lf_period),
            Err(Error::WindowTooShort { .. })
        ));
    }
}
