//! Switched electrical network: matrix bridge, series resonant tank,
//! transformer, synchronous rectifier, and battery, integrated with fixed
//! steps aligned to every gate edge.

mod bridge;
mod config;
mod rectifier;
mod runner;
mod tank;
mod trace;

pub use bridge::{
    applied_tank_voltage, connection_voltage, solve_bridge, BridgeConnection, CURRENT_EPS,
};
pub use config::{BatteryModel, GridConfig, SimConfig, TankParams, TankState};
pub use rectifier::reflected_rectifier_voltage;
pub use runner::run_simulation;
pub use tank::{step_tank, step_tank_with_energy};
pub use trace::{EventKind, HalfCycleTelemetry, Record, SimEvent, SimTrace};
