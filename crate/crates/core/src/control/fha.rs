//! Fundamental-harmonic gain model of the series resonant stage.

use crate::circuit::{BatteryModel, TankParams};
use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

/// Allowed HF frequency range (Hz).
#[derive(Clone, Copy, Debug)]
pub struct FreqBand<T> {
    pub min: T,
    pub max: T,
}

impl<T: Scalar> FreqBand<T> {
    pub fn clamp(&self, f: T) -> T {
        f.max(self.min).min(self.max)
    }
}

/// Voltage gain of a series resonant converter at normalized frequency
/// `fn = f_s / f0` with loaded quality factor `Q`:
///
/// gain = 1 / sqrt(1 + Q^2 (fn - 1/fn)^2)
pub fn src_fha_gain<T: Scalar>(fn_norm: T, q: T) -> Result<T> {
    if !(fn_norm > T::zero()) {
        return Err(Error::Contract(
            "normalized frequency must be positive".into(),
        ));
    }
    let x = q * (fn_norm - T::one() / fn_norm);
    Ok(T::one() / (T::one() + x * x).sqrt())
}

/// Invert the gain on the above-resonance branch (`fn >= 1`), where it is
/// strictly decreasing. Requires `0 < gain <= 1` and `q > 0`.
pub fn invert_fha_gain<T: Scalar>(gain: T, q: T) -> T {
    let one = T::one();
    if gain >= one {
        return one;
    }
    // gain = 1/sqrt(1 + (q x)^2) with x = fn - 1/fn  =>  x from gain, then
    // fn is the positive root of fn^2 - x fn - 1 = 0.
    let x = (one / (gain * gain) - one).sqrt() / q;
    (x + (x * x + lit::<T>(4.0)).sqrt()) / lit::<T>(2.0)
}

/// Feedforward frequency command (Hz).
///
/// Computes the gain the tank must provide to hold the reflected battery
/// voltage against the bridge voltage `v_dc`, models the rectifier plus
/// battery as the standard full-bridge equivalent resistance
/// `(8/pi^2) n^2 v_batt / i_batt`, and inverts the gain curve on the
/// above-resonance branch. Demands outside the achievable range saturate at
/// the band edges, so every input maps to a usable frequency.
pub fn feedforward_frequency<T: Scalar>(
    v_dc: T,
    battery: &BatteryModel<T>,
    tank: &TankParams<T>,
    band: &FreqBand<T>,
) -> T {
    if !(v_dc > T::zero()) {
        return band.min;
    }
    let required_gain = tank.n * battery.v_batt / v_dc;
    if required_gain >= T::one() {
        // The tank can at best pass the full DC-link voltage; run as close to
        // resonance as the band allows.
        return band.min;
    }
    if !(battery.power_cmd > T::zero()) {
        // No load: any frequency satisfies the gain model; pick the top of
        // the band to minimize circulating current.
        return band.max;
    }
    let i_batt = battery.power_cmd / battery.v_batt;
    let r_eq = lit::<T>(8.0) / (T::PI() * T::PI()) * tank.n * tank.n * battery.v_batt / i_batt;
    let q = tank.char_impedance() / r_eq;
    if !(q > T::zero()) {
        return band.max;
    }
    let fn_norm = invert_fha_gain(required_gain, q);
    band.clamp(fn_norm * tank.resonant_freq())
}
