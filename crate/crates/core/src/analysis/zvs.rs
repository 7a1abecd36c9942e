//! Zero-voltage-switching classification.

use serde::{Deserialize, Serialize};

use crate::circuit::{EventKind, SimTrace};
use crate::modulation::DeviceId;
use crate::scalar::Scalar;

/// One classified HF-device turn-on.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ZvsEvent<T> {
    pub t: T,
    pub device: DeviceId,
    /// Interval before turn-on during which the body-diode network already
    /// applied the post-commutation voltage with freewheeling-polarity
    /// current (s).
    pub diode_conduction_time: T,
    pub zvs: bool,
    /// Turn-on in the half-cycle right after a phase-leg handover.
    pub lf_transition: bool,
}

/// Aggregate ZVS statistics.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct ZvsSummary<T> {
    pub total_events: usize,
    pub zvs_events: usize,
    pub hf_events: usize,
    pub hf_zvs_events: usize,
    pub lf_transition_events: usize,
    pub lf_transition_zvs_events: usize,
    pub min_diode_conduction_time: Option<T>,
    pub mean_diode_conduction_time: Option<T>,
}

/// Per-event records plus summary.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZvsReport<T> {
    pub events: Vec<ZvsEvent<T>>,
    pub summary: ZvsSummary<T>,
}

impl<T: Scalar> ZvsReport<T> {
    /// Fraction of turn-ons classified as soft, NaN when there are none.
    pub fn zvs_fraction(&self) -> T {
        if self.summary.total_events == 0 {
            T::nan()
        } else {
            T::from_usize(self.summary.zvs_events).unwrap()
                / T::from_usize(self.summary.total_events).unwrap()
        }
    }
}

/// Classify every HF-commutated turn-on in the trace.
///
/// A turn-on is soft exactly when its measured diode conduction interval is
/// positive: the voltage had already commutated to the post-turn-on value
/// while the current freewheeled through the body diodes. Turn-ons in the
/// half-cycle following a phase-leg handover are flagged separately; they
/// are classified by the same criterion. Events before `ignore_before` are
/// skipped so that the discharged-tank startup transient (where no
/// freewheeling current exists yet) does not pollute steady-state statistics;
/// pass zero to keep everything.
pub fn detect_zvs_events<T: Scalar>(trace: &SimTrace<T>, ignore_before: T) -> ZvsReport<T> {
    let mut events = Vec::new();
    for e in &trace.events {
        if e.kind != EventKind::GateTurnOn || e.t < ignore_before {
            continue;
        }
        let (Some(device), Some(diode)) = (e.device, e.diode_conduction_time) else {
            // Statically driven gate: not an HF commutation.
            continue;
        };
        events.push(ZvsEvent {
            t: e.t,
            device,
            diode_conduction_time: diode,
            zvs: diode > T::zero(),
            lf_transition: e.lf_context,
        });
    }

    let mut summary = ZvsSummary::<T>::default();
    let mut diode_sum = T::zero();
    for e in &events {
        summary.total_events += 1;
        if e.zvs {
            summary.zvs_events += 1;
        }
        if e.lf_transition {
            summary.lf_transition_events += 1;
            if e.zvs {
                summary.lf_transition_zvs_events += 1;
            }
        } else {
            summary.hf_events += 1;
            if e.zvs {
                summary.hf_zvs_events += 1;
            }
        }
        diode_sum += e.diode_conduction_time;
        summary.min_diode_conduction_time = Some(match summary.min_diode_conduction_time {
            Some(m) => m.min(e.diode_conduction_time),
            None => e.diode_conduction_time,
        });
    }
    if !events.is_empty() {
        summary.mean_diode_conduction_time =
            Some(diode_sum / T::from_usize(events.len()).unwrap());
    }

    ZvsReport { events, summary }
}
