//! Input sector detection.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::types::{Phase, PhaseVoltages, Polarity, SectorId};

/// Find the sector of an instantaneous grid voltage sample.
///
/// The clamped phase is the one with the largest absolute voltage; its sign
/// gives the polarity. Exact ties at sector boundaries resolve to the lowest
/// candidate sector index, so the result is total and deterministic for any
/// finite nonzero input.
pub fn detect_sector<T: Scalar>(v: &PhaseVoltages<T>) -> Result<SectorId> {
    let mags = [v.va.abs(), v.vb.abs(), v.vc.abs()];
    let max = mags[0].max(mags[1]).max(mags[2]);
    if max == T::zero() {
        return Err(Error::DegenerateGrid);
    }

    let mut best: Option<SectorId> = None;
    for phase in Phase::ALL {
        if mags[phase.index()] < max {
            continue;
        }
        let polarity = if v.get(phase) > T::zero() {
            Polarity::Positive
        } else {
            Polarity::Negative
        };
        let candidate = SectorId::from_clamp(phase, polarity);
        best = match best {
            Some(b) if b.index() <= candidate.index() => Some(b),
            _ => Some(candidate),
        };
    }
    Ok(best.expect("max > 0 guarantees at least one candidate"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(a: f64, b: f64, c: f64) -> PhaseVoltages<f64> {
        PhaseVoltages::new(a, b, c)
    }

    #[test]
    fn phase_a_positive_peak_is_sector_2() {
        let s = detect_sector(&v(277.1, -138.55, -138.55)).unwrap();
        assert_eq!(s.index(), 2);
        assert_eq!(s.clamped_phase(), Phase::A);
        assert_eq!(s.clamp_polarity(), Polarity::Positive);
    }

    #[test]
    fn phase_a_negative_peak_is_sector_5() {
        let s = detect_sector(&v(-277.1, 138.55, 138.55)).unwrap();
        assert_eq!(s.index(), 5);
        assert_eq!(s.clamped_phase(), Phase::A);
        assert_eq!(s.clamp_polarity(), Polarity::Negative);
    }

    #[test]
    fn exact_tie_resolves_to_lower_sector_index() {
        // |vb| = |vc| with b positive / c negative: candidates are sector 4
        // (b clamped positive) and sector 3 (c clamped negative) -> 3 wins.
        let s = detect_sector(&v(0.0, 240.0, -240.0)).unwrap();
        assert_eq!(s.index(), 3);

        // Mirror case: candidates are sector 1 (b-) and sector 6 (c+) -> 1.
        let s = detect_sector(&v(0.0, -240.0, 240.0)).unwrap();
        assert_eq!(s.index(), 1);
    }

    #[test]
    fn all_zero_input_is_degenerate() {
        assert!(matches!(
            detect_sector(&v(0.0, 0.0, 0.0)),
            Err(Error::DegenerateGrid)
        ));
    }

    #[test]
    fn every_sixty_degree_slice_maps_to_the_expected_sector() {
        // Cosine-referenced phase a starting at its positive peak sweeps the
        // sector sequence 2, 3, 4, 5, 6, 1.
        let expected = [2u8, 3, 4, 5, 6, 1];
        for (slice, want) in expected.iter().enumerate() {
            let theta = (slice as f64) * 60.0_f64.to_radians();
            for probe in [-25.0f64, 0.0, 25.0] {
                let th = theta + probe.to_radians();
                let vv = v(
                    th.cos(),
                    (th - 120.0_f64.to_radians()).cos(),
                    (th + 120.0_f64.to_radians()).cos(),
                );
                assert_eq!(detect_sector(&vv).unwrap().index(), *want, "theta={th}");
            }
        }
    }
}
