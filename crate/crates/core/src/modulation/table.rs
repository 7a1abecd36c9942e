//! The sector/PWM-to-gate switching table.
//!
//! Each of the six sectors has two valid phase selections, giving twelve
//! rows. A row fixes four gates statically on, four statically off (the
//! unselected phase), and routes the four H-bridge drive signals to the
//! remaining gate slots.

use crate::error::{Error, Result};

use super::types::{DeviceId, GateVector, HBridgeSignals, PhaseSelect, SectorId};

/// How one gate is driven within a table row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateDrive {
    /// Statically off.
    Off,
    /// Statically on for the whole row.
    On,
    /// Follows one of the four HF bridge signals.
    Hf(HfSlot),
}

/// Which H-bridge signal an HF-commutated gate follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HfSlot {
    Ah,
    Al,
    Bh,
    Bl,
}

impl HfSlot {
    pub fn value(self, h: &HBridgeSignals) -> bool {
        match self {
            HfSlot::Ah => h.ah,
            HfSlot::Al => h.al,
            HfSlot::Bh => h.bh,
            HfSlot::Bl => h.bl,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            HfSlot::Ah => "AH",
            HfSlot::Al => "AL",
            HfSlot::Bh => "BH",
            HfSlot::Bl => "BL",
        }
    }
}

impl GateDrive {
    /// Symbolic cell content as printed in the table dump.
    pub fn symbol(self) -> &'static str {
        match self {
            GateDrive::Off => "0",
            GateDrive::On => "1",
            GateDrive::Hf(slot) => slot.symbol(),
        }
    }
}

/// One row of the switching table.
#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub sector: u8,
    pub select: (bool, bool, bool),
    /// Gate drives in [`DeviceId::ALL`] order.
    pub drives: [GateDrive; 12],
}

impl TableRow {
    /// Substitute the HF signals into the row's gate slots.
    pub fn instantiate(&self, h: &HBridgeSignals) -> GateVector {
        let mut g = GateVector::ALL_OFF;
        for (i, drive) in self.drives.iter().enumerate() {
            let on = match drive {
                GateDrive::Off => false,
                GateDrive::On => true,
                GateDrive::Hf(slot) => slot.value(h),
            };
            g.set(DeviceId::from_index(i), on);
        }
        g
    }

    pub fn drive_of(&self, device: DeviceId) -> GateDrive {
        self.drives[device.index()]
    }
}

use GateDrive::{Off, On};
const AH: GateDrive = GateDrive::Hf(HfSlot::Ah);
const AL: GateDrive = GateDrive::Hf(HfSlot::Al);
const BH: GateDrive = GateDrive::Hf(HfSlot::Bh);
const BL: GateDrive = GateDrive::Hf(HfSlot::Bl);

/// All twelve rows, keyed by sector and phase selection.
pub const SWITCHING_TABLE: [TableRow; 12] = [
    TableRow {
        sector: 1,
        select: (false, true, true),
        drives: [Off, Off, Off, Off, AL, On, On, BL, On, AH, BH, On],
    },
    TableRow {
        sector: 1,
        select: (true, true, false),
        drives: [On, AH, BH, On, AL, On, On, BL, Off, Off, Off, Off],
    },
    TableRow {
        sector: 2,
        select: (true, true, false),
        drives: [On, AH, BH, On, AL, On, On, BL, Off, Off, Off, Off],
    },
    TableRow {
        sector: 2,
        select: (true, false, true),
        drives: [On, AH, BH, On, Off, Off, Off, Off, AL, On, On, BL],
    },
    TableRow {
        sector: 3,
        select: (true, false, true),
        drives: [On, AH, BH, On, Off, Off, Off, Off, AL, On, On, BL],
    },
    TableRow {
        sector: 3,
        select: (false, true, true),
        drives: [Off, Off, Off, Off, On, AH, BH, On, AL, On, On, BL],
    },
    TableRow {
        sector: 4,
        select: (false, true, true),
        drives: [Off, Off, Off, Off, On, AH, BH, On, AL, On, On, BL],
    },
    TableRow {
        sector: 4,
        select: (true, true, false),
        drives: [AL, On, On, BL, On, AH, BH, On, Off, Off, Off, Off],
    },
    TableRow {
        sector: 5,
        select: (true, true, false),
        drives: [AL, On, On, BL, On, AH, BH, On, Off, Off, Off, Off],
    },
    TableRow {
        sector: 5,
        select: (true, false, true),
        drives: [AL, On, On, BL, Off, Off, Off, Off, On, AH, BH, On],
    },
    TableRow {
        sector: 6,
        select: (true, false, true),
        drives: [AL, On, On, BL, Off, Off, Off, Off, On, AH, BH, On],
    },
    TableRow {
        sector: 6,
        select: (false, true, true),
        drives: [Off, Off, Off, Off, AL, On, On, BL, On, AH, BH, On],
    },
];

/// Look up the table row for a sector / phase-select pair.
pub fn table_row(s: SectorId, p: &PhaseSelect) -> Result<&'static TableRow> {
    SWITCHING_TABLE
        .iter()
        .find(|row| row.sector == s.index() && row.select == (p.pwm_a, p.pwm_b, p.pwm_c))
        .ok_or(Error::InvalidModulationState {
            sector: s.index(),
            pwm_a: p.pwm_a,
            pwm_b: p.pwm_b,
            pwm_c: p.pwm_c,
        })
}

/// Produce the gate vector for a modulation state: a pure table lookup with
/// the four HF signals substituted into the row's commutated slots.
pub fn map_gates(s: SectorId, p: &PhaseSelect, h: &HBridgeSignals) -> Result<GateVector> {
    Ok(table_row(s, p)?.instantiate(h))
}
