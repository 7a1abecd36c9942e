//! Low-frequency PWM layer: duty cycles and phase selection.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::types::{DutyTriple, Phase, PhaseSelect, PhaseVoltages, SectorId};

/// Duty cycles for the three input phases within a sector.
///
/// The clamped phase stays connected for the whole LF period (duty 1); each
/// modulated phase gets `|V_x| / |V_clamped|`, clipped to [0, 1]. For a
/// balanced source the two modulated duties sum to exactly 1.
pub fn lf_duty_cycles<T: Scalar>(v: &PhaseVoltages<T>, s: SectorId) -> Result<DutyTriple<T>> {
    let v_clamp = v.get(s.clamped_phase()).abs();
    if v_clamp == T::zero() {
        return Err(Error::DegenerateSector);
    }
    let duty_of = |phase: Phase| -> T {
        if phase == s.clamped_phase() {
            T::one()
        } else {
            (v.get(phase).abs() / v_clamp).min(T::one())
        }
    };
    Ok(DutyTriple {
        d_a: duty_of(Phase::A),
        d_b: duty_of(Phase::B),
        d_c: duty_of(Phase::C),
    })
}

/// Compare the LF carrier against the duty cycles to select the active pair.
///
/// The clamped phase is always selected. Of the two modulated phases (in
/// a, b, c order) the first is selected while the sawtooth carrier phase is
/// below its duty; otherwise the second is, so exactly two bits are ever set.
pub fn lf_pwm_select<T: Scalar>(d: &DutyTriple<T>, s: SectorId, carrier_phase: T) -> PhaseSelect {
    let [first, second] = s.modulated_phases();
    let first_on = carrier_phase < d.get(first);

    let mut select = PhaseSelect {
        pwm_a: false,
        pwm_b: false,
        pwm_c: false,
    };
    let mut set = |phase: Phase, on: bool| match phase {
        Phase::A => select.pwm_a = on,
        Phase::B => select.pwm_b = on,
        Phase::C => select.pwm_c = on,
    };
    set(s.clamped_phase(), true);
    set(first, first_on);
    set(second, !first_on);
    select
}
