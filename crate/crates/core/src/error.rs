//! Crate-wide error type.

/// Errors raised by modulation, circuit, control, and analysis code.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// All three phase voltages are zero; no sector can be assigned.
    #[error("degenerate grid: all phase voltages are zero")]
    DegenerateGrid,

    /// The clamped phase voltage is zero; duty cycles are undefined.
    #[error("degenerate sector: clamped phase voltage is zero")]
    DegenerateSector,

    /// No switching-table row exists for the given sector / phase-select pair.
    #[error(
        "invalid modulation state: no switching-table row for sector {sector} \
         with select ({pwm_a}, {pwm_b}, {pwm_c})"
    )]
    InvalidModulationState {
        sector: u8,
        pwm_a: bool,
        pwm_b: bool,
        pwm_c: bool,
    },

    /// A documented precondition was violated by the caller.
    #[error("contract violation: {0}")]
    Contract(String),

    /// The gate vector commands a direct phase-to-phase short.
    #[error("phase-to-phase short: {0}")]
    PhaseShort(String),

    /// Configuration rejected; every violated constraint is listed.
    #[error("invalid configuration:\n  - {}", violations.join("\n  - "))]
    InvalidConfig { violations: Vec<String> },

    /// Integration produced a non-finite state.
    #[error("numerical blow-up at t = {t:.9} s: i_L = {i_l}, v_C = {v_c}")]
    NumericalBlowup { t: f64, i_l: f64, v_c: f64 },

    /// Averaging window shorter than one LF PWM period.
    #[error("averaging window {window:.3e} s is shorter than one LF PWM period ({lf_period:.3e} s)")]
    WindowTooShort { window: f64, lf_period: f64 },

    /// Not enough trace data for the requested analysis.
    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
