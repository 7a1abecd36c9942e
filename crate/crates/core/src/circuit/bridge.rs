//! Matrix bridge output-voltage resolution.
//!
//! The six composite switches connect the three phases to the two tank
//! rails. With a gate pair fully on, the composite conducts both ways. With
//! only one device on, it conducts one direction through the partner's body
//! diode: a top-side H device passes rail-to-phase, a top-side L device
//! phase-to-rail; bottom-side composites mirror that.

use crate::error::{Error, Result};
use crate::modulation::{GateVector, Phase, PhaseVoltages, Side};
use crate::scalar::Scalar;

/// Current threshold below which the tank is treated as de-energized (A).
/// Shared by the body-diode network and the rectifier dead zone to avoid
/// sign chatter around zero current.
pub const CURRENT_EPS: f64 = 1e-3;

/// How the bridge connects the tank at one instant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BridgeConnection {
    /// Commanded full connection of a phase pair.
    Drive { top: Phase, bottom: Phase },
    /// Body-diode freewheel path during dead time.
    Freewheel { top: Phase, bottom: Phase },
    /// Both rails tied to the same phase (reduced-duty zero state).
    Shorted(Phase),
    /// No conducting path; the output voltage holds its previous value.
    Held,
}

impl BridgeConnection {
    /// The conducting phase pair, if any.
    pub fn pair(&self) -> Option<(Phase, Phase)> {
        match self {
            BridgeConnection::Drive { top, bottom }
            | BridgeConnection::Freewheel { top, bottom } => Some((*top, *bottom)),
            _ => None,
        }
    }
}

/// Resolve the conduction topology for a gate vector and tank current.
pub fn solve_bridge<T: Scalar>(
    gates: &GateVector,
    v: &PhaseVoltages<T>,
    i_l: T,
    i_eps: T,
) -> Result<BridgeConnection> {
    let mut full_top = None;
    let mut full_bottom = None;
    for phase in Phase::ALL {
        let (h, l) = gates.composite(phase, Side::Top);
        if h && l && full_top.replace(phase).is_some() {
            return Err(Error::PhaseShort(
                "two phases fully connected to the top rail".to_string(),
            ));
        }
        let (h, l) = gates.composite(phase, Side::Bottom);
        if h && l && full_bottom.replace(phase).is_some() {
            return Err(Error::PhaseShort(
                "two phases fully connected to the bottom rail".to_string(),
            ));
        }
    }

    if let (Some(top), Some(bottom)) = (full_top, full_bottom) {
        return Ok(if top == bottom {
            BridgeConnection::Shorted(top)
        } else {
            BridgeConnection::Drive { top, bottom }
        });
    }

    if i_l.abs() <= i_eps {
        return Ok(BridgeConnection::Held);
    }

    // Diode freewheel: positive current leaves the top rail through the tank,
    // so the top rail needs a phase-to-rail path (L device) and the bottom
    // rail a rail-to-phase path (L device). Negative current mirrors to the
    // H devices. With several eligible diodes the forward-biased one wins:
    // the highest phase feeding a rail, the lowest phase sinking it.
    let outward = i_l > T::zero();
    let eligible = |phase: Phase, side: Side| -> bool {
        let (h, l) = gates.composite(phase, side);
        if h && l {
            return true;
        }
        match (side, outward) {
            (Side::Top, true) => l,
            (Side::Top, false) => h,
            (Side::Bottom, true) => l,
            (Side::Bottom, false) => h,
        }
    };

    let pick = |side: Side, want_max: bool| -> Option<Phase> {
        let mut best: Option<Phase> = None;
        for phase in Phase::ALL {
            if !eligible(phase, side) {
                continue;
            }
            best = match best {
                None => Some(phase),
                Some(b) => {
                    let better = if want_max {
                        v.get(phase) > v.get(b)
                    } else {
                        v.get(phase) < v.get(b)
                    };
                    Some(if better { phase } else { b })
                }
            };
        }
        best
    };

    // Voltage ordering only matters off the switching table, where a side can
    // have several eligible diodes; table rows always leave exactly one.
    let top = pick(Side::Top, outward);
    let bottom = pick(Side::Bottom, !outward);
    match (top, bottom) {
        (Some(top), Some(bottom)) if top == bottom => Ok(BridgeConnection::Shorted(top)),
        (Some(top), Some(bottom)) => Ok(BridgeConnection::Freewheel { top, bottom }),
        _ => Ok(BridgeConnection::Held),
    }
}

/// Voltage applied across the tank by the matrix bridge (V).
///
/// During a commanded connection this is the selected phase-to-phase
/// voltage; during dead time the body-diode network applies the polarity
/// that opposes the freewheeling current; with no path (or no current) the
/// previous value is held.
pub fn applied_tank_voltage<T: Scalar>(
    gates: &GateVector,
    v: &PhaseVoltages<T>,
    i_l: T,
    prev_v_mx: T,
    i_eps: T,
) -> Result<T> {
    Ok(connection_voltage(
        solve_bridge(gates, v, i_l, i_eps)?,
        v,
        prev_v_mx,
    ))
}

/// Output voltage implied by a resolved connection (V).
pub fn connection_voltage<T: Scalar>(
    conn: BridgeConnection,
    v: &PhaseVoltages<T>,
    prev_v_mx: T,
) -> T {
    match conn {
        BridgeConnection::Drive { top, bottom } | BridgeConnection::Freewheel { top, bottom } => {
            v.get(top) - v.get(bottom)
        }
        BridgeConnection::Shorted(_) => T::zero(),
        BridgeConnection::Held => prev_v_mx,
    }
}
