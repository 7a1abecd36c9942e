//! Switching-frequency control.
//!
//! The tank transfers power as a function of switching frequency relative to
//! resonance. Each HF half-cycle the controller picks the frequency for the
//! next half-cycle: a feedforward term inverts the fundamental-harmonic gain
//! model against the voltage the bridge is about to apply, and an optional
//! PI term trims the residual model error from measured battery power.

mod fha;
mod pi;

pub use fha::{feedforward_frequency, invert_fha_gain, src_fha_gain, FreqBand};
pub use pi::{pi_update, PiState};

use serde::{Deserialize, Serialize};

/// Frequency regulation strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ControlMode {
    /// Constant `fixed_freq`, clamped to the band.
    OpenLoopFixed,
    /// Gain-model inversion only.
    Feedforward,
    /// Gain-model inversion plus a PI trim on measured power.
    FeedforwardPlusPi,
}

/// Controller settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControlConfig<T> {
    pub mode: ControlMode,
    /// Frequency used by [`ControlMode::OpenLoopFixed`] (Hz).
    pub fixed_freq: T,
    /// Proportional gain (Hz/W).
    pub pi_kp: T,
    /// Integral gain (Hz/(W*s)).
    pub pi_ki: T,
    /// Update the frequency command every this many HF half-cycles.
    #[serde(default = "default_update_div")]
    pub update_div: u32,
}

fn default_update_div() -> u32 {
    1
}
