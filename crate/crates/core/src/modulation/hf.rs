//! High-frequency H-bridge drive pattern.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::types::HBridgeSignals;

/// Evaluate the equivalent H-bridge drive at a point inside the HF period.
///
/// Leg A: `AH` is high on `[dead_time, period/2)` and `AL` on
/// `[period/2 + dead_time, period)`. Leg B is leg A delayed by
/// `phase_shift * period` with its H/L roles swapped, so `phase_shift = 0`
/// gives the full-duty pattern `AH = BL`, `AL = BH`.
pub fn hf_bridge_signals<T: Scalar>(
    t_in_period: T,
    period: T,
    dead_time: T,
    phase_shift: T,
) -> Result<HBridgeSignals> {
    let four = T::from_f64(4.0).unwrap();
    let half = T::from_f64(0.5).unwrap();
    if period <= T::zero() {
        return Err(Error::Contract("hf period must be positive".into()));
    }
    if t_in_period < T::zero() || t_in_period >= period {
        return Err(Error::Contract(
            "t_in_period must lie in [0, period)".into(),
        ));
    }
    if dead_time < T::zero() || dead_time >= period / four {
        return Err(Error::Contract(
            "dead_time must lie in [0, period/4)".into(),
        ));
    }
    if phase_shift < T::zero() || phase_shift > half {
        return Err(Error::Contract("phase_shift must lie in [0, 0.5]".into()));
    }

    let leg_a = |t: T| -> (bool, bool) {
        let high = t >= dead_time && t < period * half;
        let low = t >= period * half + dead_time && t < period;
        (high, low)
    };

    let (ah, al) = leg_a(t_in_period);
    let mut t_b = t_in_period - phase_shift * period;
    if t_b < T::zero() {
        t_b += period;
    }
    // Leg B follows leg A shifted in time, with H and L swapped.
    let (b_high_role, b_low_role) = leg_a(t_b);
    Ok(HBridgeSignals {
        ah,
        al,
        bh: b_low_role,
        bl: b_high_role,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_period_full_duty_is_diagonal_on() {
        let h = hf_bridge_signals(0.25, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(
            (h.ah, h.al, h.bh, h.bl),
            (true, false, false, true),
            "positive half: AH with BL"
        );
    }

    #[test]
    fn dead_time_window_has_all_devices_off() {
        let period = 1.0;
        let dead = 0.05;
        for t in [0.0, 0.02, 0.5, 0.52] {
            let h = hf_bridge_signals(t, period, dead, 0.0).unwrap();
            assert_eq!((h.ah, h.al, h.bh, h.bl), (false, false, false, false), "t={t}");
        }
    }

    #[test]
    fn zero_shift_makes_legs_complementary_diagonals() {
        for k in 0..1000 {
            let t = k as f64 / 1000.0;
            let h = hf_bridge_signals(t, 1.0, 0.03, 0.0).unwrap();
            assert_eq!(h.ah, h.bl);
            assert_eq!(h.al, h.bh);
            assert!(!(h.ah && h.al), "shoot-through on leg A at t={t}");
            assert!(!(h.bh && h.bl), "shoot-through on leg B at t={t}");
        }
    }

    #[test]
    fn quarter_shift_lags_leg_b_by_a_quarter_period() {
        // Independent tabulation: with T = 1, dead = 0.02, shift = 0.25 the
        // leg-B intervals are BL on [0.27, 0.75) and BH on [0.77, 1) u [0, 0.25).
        let dead = 0.02;
        for k in 0..2000 {
            let t = k as f64 / 2000.0;
            let h = hf_bridge_signals(t, 1.0, dead, 0.25).unwrap();
            let bl_expect = t >= 0.25 + dead && t < 0.75;
            let bh_expect = (t >= 0.75 + dead && t < 1.0) || t < 0.25;
            assert_eq!(h.bl, bl_expect, "BL at t={t}");
            assert_eq!(h.bh, bh_expect, "BH at t={t}");
            assert!(!(h.bh && h.bl));
        }
    }

    #[test]
    fn preconditions_are_enforced() {
        assert!(hf_bridge_signals(1.0, 1.0, 0.0, 0.0).is_err());
        assert!(hf_bridge_signals(-0.1, 1.0, 0.0, 0.0).is_err());
        assert!(hf_bridge_signals(0.5, 1.0, 0.3, 0.0).is_err());
        assert!(hf_bridge_signals(0.5, 1.0, 0.0, 0.6).is_err());
        assert!(hf_bridge_signals(0.5, 0.0, 0.0, 0.0).is_err());
    }
}
