//! Domain types for the two-layer modulator.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Grid phase label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Phase {
    A,
    B,
    C,
}

impl Phase {
    pub const ALL: [Phase; 3] = [Phase::A, Phase::B, Phase::C];

    pub fn index(self) -> usize {
        match self {
            Phase::A => 0,
            Phase::B => 1,
            Phase::C => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Phase::A => "a",
            Phase::B => "b",
            Phase::C => "c",
        }
    }
}

/// Sign of the clamped phase voltage within a sector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Polarity {
    Positive,
    Negative,
}

/// Instantaneous phase-to-neutral voltages (V).
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseVoltages<T> {
    pub va: T,
    pub vb: T,
    pub vc: T,
}

impl<T: Scalar> PhaseVoltages<T> {
    pub fn new(va: T, vb: T, vc: T) -> Self {
        Self { va, vb, vc }
    }

    pub fn get(&self, phase: Phase) -> T {
        match phase {
            Phase::A => self.va,
            Phase::B => self.vb,
            Phase::C => self.vc,
        }
    }
}

/// One of the six 60-degree grid sectors.
///
/// A sector is identified by which phase carries the largest absolute voltage
/// (the clamped phase) and the sign of that voltage. The numbering follows
/// the switching table: 1 = b−, 2 = a+, 3 = c−, 4 = b+, 5 = a−, 6 = c+.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorId {
    index: u8,
    clamped_phase: Phase,
    clamp_polarity: Polarity,
}

const SECTOR_SCHEDULE: [(u8, Phase, Polarity); 6] = [
    (1, Phase::B, Polarity::Negative),
    (2, Phase::A, Polarity::Positive),
    (3, Phase::C, Polarity::Negative),
    (4, Phase::B, Polarity::Positive),
    (5, Phase::A, Polarity::Negative),
    (6, Phase::C, Polarity::Positive),
];

impl SectorId {
    /// Build a sector from its index (1..=6).
    pub fn from_index(index: u8) -> Option<SectorId> {
        SECTOR_SCHEDULE
            .iter()
            .find(|(i, _, _)| *i == index)
            .map(|&(index, clamped_phase, clamp_polarity)| SectorId {
                index,
                clamped_phase,
                clamp_polarity,
            })
    }

    /// Build a sector from its clamped phase and polarity.
    pub fn from_clamp(phase: Phase, polarity: Polarity) -> SectorId {
        let &(index, clamped_phase, clamp_polarity) = SECTOR_SCHEDULE
            .iter()
            .find(|(_, p, s)| *p == phase && *s == polarity)
            .expect("every (phase, polarity) pair maps to a sector");
        SectorId {
            index,
            clamped_phase,
            clamp_polarity,
        }
    }

    pub fn index(self) -> u8 {
        self.index
    }

    pub fn clamped_phase(self) -> Phase {
        self.clamped_phase
    }

    pub fn clamp_polarity(self) -> Polarity {
        self.clamp_polarity
    }

    /// The two PWM-modulated phases, in a, b, c order.
    pub fn modulated_phases(self) -> [Phase; 2] {
        match self.clamped_phase {
            Phase::A => [Phase::B, Phase::C],
            Phase::B => [Phase::A, Phase::C],
            Phase::C => [Phase::A, Phase::B],
        }
    }
}

/// Per-phase duty cycles of the low-frequency PWM layer (dimensionless, [0, 1]).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DutyTriple<T> {
    pub d_a: T,
    pub d_b: T,
    pub d_c: T,
}

impl<T: Scalar> DutyTriple<T> {
    pub fn get(&self, phase: Phase) -> T {
        match phase {
            Phase::A => self.d_a,
            Phase::B => self.d_b,
            Phase::C => self.d_c,
        }
    }
}

/// Low-frequency PWM selection: exactly two phases are active at any instant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseSelect {
    pub pwm_a: bool,
    pub pwm_b: bool,
    pub pwm_c: bool,
}

impl PhaseSelect {
    pub fn get(&self, phase: Phase) -> bool {
        match phase {
            Phase::A => self.pwm_a,
            Phase::B => self.pwm_b,
            Phase::C => self.pwm_c,
        }
    }

    pub fn count_selected(&self) -> usize {
        usize::from(self.pwm_a) + usize::from(self.pwm_b) + usize::from(self.pwm_c)
    }
}

/// Equivalent H-bridge drive signals of the high-frequency layer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HBridgeSignals {
    pub ah: bool,
    pub al: bool,
    pub bh: bool,
    pub bl: bool,
}

/// Rail side of a composite bidirectional switch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Top,
    Bottom,
}

/// One of the twelve gate-driven MOSFETs.
///
/// Naming: phase (A/B/C), rail (t = top, b = bottom), then which device of
/// the series pair (H or L). With only the H device on, a top-side composite
/// conducts rail-to-phase through the L body diode; with only the L device
/// on it conducts phase-to-rail. Bottom-side composites are mirrored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeviceId {
    AtH,
    AtL,
    AbH,
    AbL,
    BtH,
    BtL,
    BbH,
    BbL,
    CtH,
    CtL,
    CbH,
    CbL,
}

impl DeviceId {
    /// All devices in waveform-CSV column order.
    pub const ALL: [DeviceId; 12] = [
        DeviceId::AtH,
        DeviceId::AtL,
        DeviceId::AbH,
        DeviceId::AbL,
        DeviceId::BtH,
        DeviceId::BtL,
        DeviceId::BbH,
        DeviceId::BbL,
        DeviceId::CtH,
        DeviceId::CtL,
        DeviceId::CbH,
        DeviceId::CbL,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> DeviceId {
        DeviceId::ALL[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            DeviceId::AtH => "AtH",
            DeviceId::AtL => "AtL",
            DeviceId::AbH => "AbH",
            DeviceId::AbL => "AbL",
            DeviceId::BtH => "BtH",
            DeviceId::BtL => "BtL",
            DeviceId::BbH => "BbH",
            DeviceId::BbL => "BbL",
            DeviceId::CtH => "CtH",
            DeviceId::CtL => "CtL",
            DeviceId::CbH => "CbH",
            DeviceId::CbL => "CbL",
        }
    }

    pub fn phase(self) -> Phase {
        Phase::ALL[self.index() / 4]
    }

    pub fn side(self) -> Side {
        if self.index() % 4 < 2 {
            Side::Top
        } else {
            Side::Bottom
        }
    }

    /// True for the H device of its composite pair.
    pub fn is_high_device(self) -> bool {
        self.index() % 2 == 0
    }
}

/// The twelve gate booleans, indexed by [`DeviceId`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateVector(pub [bool; 12]);

impl GateVector {
    pub const ALL_OFF: GateVector = GateVector([false; 12]);

    pub fn is_on(&self, device: DeviceId) -> bool {
        self.0[device.index()]
    }

    pub fn set(&mut self, device: DeviceId, on: bool) {
        self.0[device.index()] = on;
    }

    /// Gate states (H device, L device) of one composite switch.
    pub fn composite(&self, phase: Phase, side: Side) -> (bool, bool) {
        let base = phase.index() * 4
            + match side {
                Side::Top => 0,
                Side::Bottom => 2,
            };
        (self.0[base], self.0[base + 1])
    }

    /// True when every gate of the phase is off.
    pub fn phase_off(&self, phase: Phase) -> bool {
        let base = phase.index() * 4;
        !self.0[base] && !self.0[base + 1] && !self.0[base + 2] && !self.0[base + 3]
    }

    pub fn count_on(&self) -> usize {
        self.0.iter().filter(|g| **g).count()
    }
}

/// Modulator settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModulatorConfig<T> {
    /// Low-frequency PWM carrier frequency (Hz).
    pub lf_carrier_freq: T,
    /// Lower edge of the HF switching band (Hz).
    pub hf_freq_min: T,
    /// Upper edge of the HF switching band (Hz).
    pub hf_freq_max: T,
    /// Dead time inserted at every HF half-cycle boundary (s).
    pub dead_time: T,
    /// Leg-B delay as a fraction of the HF period, in [0, 0.5]; 0 = full duty.
    pub phase_shift: T,
    /// Permit an HF band below tank resonance (diagnostics only).
    #[serde(default)]
    pub allow_below_resonance: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sector_schedule_is_the_fixed_six_entry_table() {
        let expect = [
            (1, Phase::B, Polarity::Negative),
            (2, Phase::A, Polarity::Positive),
            (3, Phase::C, Polarity::Negative),
            (4, Phase::B, Polarity::Positive),
            (5, Phase::A, Polarity::Negative),
            (6, Phase::C, Polarity::Positive),
        ];
        for (i, phase, pol) in expect {
            let s = SectorId::from_index(i).unwrap();
            assert_eq!(s.clamped_phase(), phase);
            assert_eq!(s.clamp_polarity(), pol);
            assert_eq!(SectorId::from_clamp(phase, pol).index(), i);
        }
        assert!(SectorId::from_index(0).is_none());
        assert!(SectorId::from_index(7).is_none());
    }

    #[test]
    fn device_ids_decode_phase_side_and_pair_position() {
        assert_eq!(DeviceId::AtH.phase(), Phase::A);
        assert_eq!(DeviceId::AtH.side(), Side::Top);
        assert!(DeviceId::AtH.is_high_device());
        assert_eq!(DeviceId::AbL.side(), Side::Bottom);
        assert!(!DeviceId::AbL.is_high_device());
        assert_eq!(DeviceId::CbL.phase(), Phase::C);
        assert_eq!(DeviceId::CbL.side(), Side::Bottom);
        for (i, d) in DeviceId::ALL.iter().enumerate() {
            assert_eq!(d.index(), i);
            assert_eq!(DeviceId::from_index(i), *d);
        }
    }

    #[test]
    fn gate_vector_composite_indexing() {
        let mut g = GateVector::ALL_OFF;
        g.set(DeviceId::BtH, true);
        g.set(DeviceId::BbL, true);
        assert_eq!(g.composite(Phase::B, Side::Top), (true, false));
        assert_eq!(g.composite(Phase::B, Side::Bottom), (false, true));
        assert!(g.phase_off(Phase::A));
        assert!(!g.phase_off(Phase::B));
        assert_eq!(g.count_on(), 2);
    }
}
