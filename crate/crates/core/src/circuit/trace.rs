//! Simulation outputs: sampled records, the event log, and per-half-cycle
//! controller telemetry.

use serde::{Deserialize, Serialize};

use crate::modulation::{DeviceId, GateVector, PhaseSelect, PhaseVoltages, SectorId};
use crate::scalar::Scalar;

use super::config::{SimConfig, TankState};

/// One decimated sample of the simulated waveforms.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Record<T> {
    pub t: T,
    pub v: PhaseVoltages<T>,
    pub sector: SectorId,
    pub select: PhaseSelect,
    pub gates: GateVector,
    /// Matrix bridge output voltage (V).
    pub v_mx: T,
    pub tank: TankState<T>,
    /// Battery charge current (A).
    pub i_batt: T,
    /// Instantaneous battery power (W).
    pub p_out: T,
    /// HF frequency command active in this half-cycle (Hz).
    pub f_hf: T,
    /// Reconstructed grid phase currents, positive into the converter (A).
    pub phase_currents: [T; 3],
    /// Cumulative energy drawn from the grid (J).
    pub e_in: T,
    /// Cumulative energy delivered to the battery (J).
    pub e_out: T,
}

/// What happened at a logged instant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EventKind {
    GateTurnOn,
    GateTurnOff,
    LfTransition,
    CurrentZeroCross,
}

impl EventKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EventKind::GateTurnOn => "gate_turn_on",
            EventKind::GateTurnOff => "gate_turn_off",
            EventKind::LfTransition => "lf_transition",
            EventKind::CurrentZeroCross => "current_zero_cross",
        }
    }
}

/// One entry of the event log.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SimEvent<T> {
    pub t: T,
    pub kind: EventKind,
    /// Device involved; empty for LF transitions and zero crossings.
    pub device: Option<DeviceId>,
    /// For HF-commutated turn-ons: body diode already conducting the
    /// post-commutation polarity at the turn-on instant.
    pub zvs_precondition: Option<bool>,
    /// Measured dead-time interval with the post-commutation voltage already
    /// applied and freewheeling-polarity current (s).
    pub diode_conduction_time: Option<T>,
    /// The containing half-cycle began with a phase-leg handover.
    pub lf_context: bool,
}

/// Controller telemetry, one entry per HF half-cycle.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct HalfCycleTelemetry<T> {
    pub t_start: T,
    /// Realized step size inside this half-cycle (s).
    pub dt: T,
    pub n_steps: u32,
    /// HF frequency command (Hz).
    pub f_hf: T,
    pub sector: SectorId,
    pub select: PhaseSelect,
    /// True when the sector or phase selection changed at this boundary.
    pub lf_change: bool,
    /// Grid energy drawn during this half-cycle (J).
    pub e_in_delta: T,
    /// Battery energy delivered during this half-cycle (J).
    pub e_out_delta: T,
}

/// Full simulation output.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: serde::Deserialize<'de> + Default"))]
pub struct SimTrace<T> {
    pub config: SimConfig<T>,
    pub records: Vec<Record<T>>,
    pub events: Vec<SimEvent<T>>,
    pub half_cycles: Vec<HalfCycleTelemetry<T>>,
    pub initial_state: TankState<T>,
    pub final_state: TankState<T>,
    /// Total energy drawn from the grid (J).
    pub e_in_total: T,
    /// Total energy delivered to the battery (J).
    pub e_out_total: T,
}

impl<T: Scalar> SimTrace<T> {
    /// Nominal spacing between records (s).
    pub fn sample_dt(&self) -> T {
        self.config.dt * T::from_u32(self.config.record_decimation).unwrap()
    }

    /// Simulated time span covered by the half-cycle telemetry (s).
    pub fn simulated_duration(&self) -> T {
        match self.half_cycles.last() {
            Some(h) => h.t_start + h.dt * T::from_u32(h.n_steps).unwrap(),
            None => T::zero(),
        }
    }
}
