//! Deterministic time-domain simulator and analysis toolkit for a 3x1
//! matrix converter feeding a series-resonant LC tank, HF transformer,
//! synchronous rectifier, and battery.
//!
//! The converter rectifies a three-phase grid directly into a high-frequency
//! square wave: a low-frequency PWM layer clamps the phase with the largest
//! absolute voltage and duty-modulates the other two for unity input power
//! factor, while a high-frequency layer drives the selected pair as an
//! H-bridge above tank resonance, regulating power by frequency. The crates
//! here simulate that switched network cycle by cycle and post-process the
//! traces for zero-voltage-switching coverage, input-current quality,
//! DC-link envelope tracking, power balance, and conduction-loss efficiency.
//!
//! All numerics are generic over the scalar type ([`Scalar`]); `f64` aliases
//! for the entry-point types are provided below.

pub mod analysis;
pub mod circuit;
pub mod control;
pub mod error;
pub mod modulation;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{lit, Scalar};

/// Simulation configuration in `f64`.
pub type SimConfig64 = circuit::SimConfig<f64>;
/// Simulation output in `f64`.
pub type SimTrace64 = circuit::SimTrace<f64>;
/// Simulation configuration in `f32`.
pub type SimConfig32 = circuit::SimConfig<f32>;
/// Simulation output in `f32`.
pub type SimTrace32 = circuit::SimTrace<f32>;
