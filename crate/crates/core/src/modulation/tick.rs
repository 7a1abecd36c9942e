//! One-shot modulator evaluation.

use crate::error::{Error, Result};
use crate::scalar::{frac, Scalar};

use super::hf::hf_bridge_signals;
use super::pwm::{lf_duty_cycles, lf_pwm_select};
use super::sector::detect_sector;
use super::table::map_gates;
use super::types::{DutyTriple, GateVector, ModulatorConfig, PhaseSelect, PhaseVoltages, SectorId};

/// Evaluate the full modulator at one instant.
///
/// Composes sector detection, duty computation, carrier comparison, the HF
/// bridge pattern, and the switching-table lookup. The LF carrier comparison
/// is evaluated at the midpoint of the containing HF half-period, so
/// phase-leg handovers land on the nearest half-period boundary.
pub fn modulator_tick<T: Scalar>(
    t: T,
    v: &PhaseVoltages<T>,
    hf_freq: T,
    cfg: &ModulatorConfig<T>,
) -> Result<(GateVector, SectorId, PhaseSelect, DutyTriple<T>)> {
    if hf_freq < cfg.hf_freq_min || hf_freq > cfg.hf_freq_max {
        return Err(Error::Contract(format!(
            "hf_freq {hf_freq} outside the configured band [{}, {}]",
            cfg.hf_freq_min, cfg.hf_freq_max
        )));
    }
    let period = T::one() / hf_freq;
    let half = period / T::from_f64(2.0).unwrap();

    let sector = detect_sector(v)?;
    let duties = lf_duty_cycles(v, sector)?;

    // Quantize the LF comparison to the containing half-period: sampling the
    // carrier at the half midpoint rounds LF edges to the nearest boundary.
    let t_half_mid = ((t / half).floor() + T::from_f64(0.5).unwrap()) * half;
    let carrier_phase = frac(t_half_mid * cfg.lf_carrier_freq);
    let select = lf_pwm_select(&duties, sector, carrier_phase);

    let mut t_in_period = t - (t / period).floor() * period;
    if t_in_period < T::zero() {
        t_in_period += period;
    }
    if t_in_period >= period {
        t_in_period = T::zero();
    }
    let h = hf_bridge_signals(t_in_period, period, cfg.dead_time, cfg.phase_shift)?;
    let gates = map_gates(sector, &select, &h)?;
    Ok((gates, sector, select, duties))
}
