//! Analytic conduction-loss and efficiency model.
//!
//! Post-processing, decoupled from the (lossless) simulator: at the matched
//! operating point the tank drops no voltage, the primary RMS current is
//! `P_batt / V_pri`, four matrix devices conduct at any instant on the
//! primary and two rectifier devices on the secondary.

use serde::{Deserialize, Serialize};

use crate::scalar::{lit, Scalar};

/// Conduction-loss breakdown and efficiency.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct EfficiencyReport<T> {
    /// Primary-side RMS current (A).
    pub i_pri_rms: T,
    /// Matrix-bridge conduction loss (W).
    pub p_loss_pri: T,
    /// Synchronous-rectifier conduction loss (W).
    pub p_loss_sec: T,
    /// Assumed transformer loss (W).
    pub p_loss_tx: T,
    /// `P_batt / (P_batt + losses)`.
    pub efficiency: T,
}

/// Evaluate the conduction-loss model.
pub fn conduction_loss_model<T: Scalar>(
    p_batt: T,
    r_ds: T,
    v_pri: T,
    v_sec: T,
    p_loss_tx: T,
) -> EfficiencyReport<T> {
    let two = lit::<T>(2.0);
    let four = lit::<T>(4.0);
    let i_pri_rms = p_batt / v_pri;
    let i_sec = p_batt / v_sec;
    let p_loss_pri = four * i_pri_rms * i_pri_rms * r_ds;
    let p_loss_sec = two * i_sec * i_sec * r_ds;
    let efficiency = p_batt / (p_batt + p_loss_pri + p_loss_sec + p_loss_tx);
    EfficiencyReport {
        i_pri_rms,
        p_loss_pri,
        p_loss_sec,
        p_loss_tx,
        efficiency,
    }
}

/// Transformer turns ratio from the midpoints of the primary and secondary
/// operating windows.
pub fn turns_ratio_selection<T: Scalar>(
    v_pri_min: T,
    v_pri_max: T,
    v_sec_min: T,
    v_sec_max: T,
) -> T {
    let half = lit::<T>(0.5);
    (half * (v_pri_min + v_pri_max)) / (half * (v_sec_min + v_sec_max))
}
