//! Energy bookkeeping over a trace.

use serde::{Deserialize, Serialize};

use crate::circuit::SimTrace;
use crate::scalar::Scalar;

/// Integrated energy flows (J) and their mismatch.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct PowerBalance<T> {
    /// Energy drawn from the grid (J).
    pub e_in: T,
    /// Energy delivered to the battery (J).
    pub e_out: T,
    /// Change of stored tank energy (J).
    pub delta_tank: T,
    /// `e_in - e_out - delta_tank`; resistive loss plus integrator error (J).
    pub residual: T,
    /// Residual as a fraction of `e_in` (0 for an empty trace).
    pub residual_fraction: T,
    /// Mean battery power over the simulated span (W).
    pub avg_power: T,
}

/// Integrate grid-side and battery-side power over the trace.
///
/// The energies are accumulated by the runner inside the same RK4 stages as
/// the state update, so with a lossless tank the residual measures pure
/// integrator quality.
pub fn power_balance<T: Scalar>(trace: &SimTrace<T>) -> PowerBalance<T> {
    let e_in = trace.e_in_total;
    let e_out = trace.e_out_total;
    let delta_tank =
        trace.final_state.energy(&trace.config.tank) - trace.initial_state.energy(&trace.config.tank);
    let residual = e_in - e_out - delta_tank;
    let duration = trace.simulated_duration();
    PowerBalance {
        e_in,
        e_out,
        delta_tank,
        residual,
        residual_fraction: if e_in.abs() > T::zero() {
            residual / e_in
        } else {
            T::zero()
        },
        avg_power: if duration > T::zero() {
            e_out / duration
        } else {
            T::zero()
        },
    }
}

/// Battery power averaged over each full HF cycle (two half-cycles), as
/// `(t_cycle_start, mean power)` pairs. Used to check the constant-power
/// contract at per-cycle granularity.
pub fn per_hf_cycle_power<T: Scalar>(trace: &SimTrace<T>) -> Vec<(T, T)> {
    let halves = &trace.half_cycles;
    let mut out = Vec::with_capacity(halves.len() / 2);
    let mut i = 0usize;
    while i + 1 < halves.len() {
        let a = &halves[i];
        let b = &halves[i + 1];
        let dt = a.dt * T::from_u32(a.n_steps).unwrap() + b.dt * T::from_u32(b.n_steps).unwrap();
        if dt > T::zero() {
            out.push((a.t_start, (a.e_out_delta + b.e_out_delta) / dt));
        }
        i += 2;
    }
    out
}
