//! Trace post-processing: ZVS coverage, input-current quality, DC-link
//! envelope tracking, power balance, and the analytic efficiency model.

mod balance;
mod currents;
mod envelope;
mod loss;
mod quality;
mod zvs;

pub use balance::{per_hf_cycle_power, power_balance, PowerBalance};
pub use currents::{
    cycle_averaged_input_currents, instantaneous_phase_currents, AveragedCurrents,
};
pub use envelope::{dc_link_envelope_check, dc_link_voltage, EnvelopeCycle, EnvelopeReport};
pub use loss::{conduction_loss_model, turns_ratio_selection, EfficiencyReport};
pub use quality::{input_current_quality, PfReport, THD_MAX_HARMONIC};
pub use zvs::{detect_zvs_events, ZvsEvent, ZvsReport, ZvsSummary};
