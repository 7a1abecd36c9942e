//! Two-layer modulation for the 3x1 matrix converter.
//!
//! The low-frequency layer clamps the phase with the largest absolute
//! voltage and PWM-selects one of the two remaining phases, shaping
//! sinusoidal average input currents. The high-frequency layer drives the
//! selected pair like an H-bridge feeding the resonant tank, with dead time
//! for zero-voltage turn-on. A fixed twelve-row table routes the four HF
//! drive signals onto the twelve gates.

mod hf;
mod pwm;
mod sector;
mod table;
mod tick;
mod types;

pub use hf::hf_bridge_signals;
pub use pwm::{lf_duty_cycles, lf_pwm_select};
pub use sector::detect_sector;
pub use table::{map_gates, table_row, GateDrive, HfSlot, TableRow, SWITCHING_TABLE};
pub use tick::modulator_tick;
pub use types::{
    DeviceId, DutyTriple, GateVector, HBridgeSignals, ModulatorConfig, Phase, PhaseSelect,
    PhaseVoltages, Polarity, SectorId, Side,
};
