//! Input-current quality: proportionality fit, harmonic content, and
//! displacement angle of the cycle-averaged phase currents.

use serde::{Deserialize, Serialize};

use crate::circuit::GridConfig;
use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

use super::currents::AveragedCurrents;

/// Unity-power-factor verdict for one trace.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PfReport<T> {
    /// Least-squares slope of current vs phase voltage, pooled over the
    /// three phases (A/V).
    pub k_fit: T,
    /// `2 P_batt / (3 V_in^2)` (A/V).
    pub k_theory: T,
    /// Coefficient of determination of the pooled fit.
    pub r_squared: T,
    /// Worst-phase total harmonic distortion, harmonics 2..=40.
    pub thd: T,
    /// Worst-phase fundamental displacement (degrees, positive = lagging).
    pub displacement_angle_deg: T,
}

/// Number of grid harmonics included in the THD (2..=40).
pub const THD_MAX_HARMONIC: usize = 40;

/// Analyze cycle-averaged currents over the trailing integer number of grid
/// periods. Needs at least one full period of averaged data.
pub fn input_current_quality<T: Scalar>(
    avg: &AveragedCurrents<T>,
    grid: &GridConfig<T>,
    p_batt: T,
) -> Result<PfReport<T>> {
    if !(grid.freq > T::zero()) {
        return Err(Error::InsufficientData(
            "grid frequency must be positive for harmonic analysis".into(),
        ));
    }
    if avg.len() < 2 {
        return Err(Error::InsufficientData(
            "no averaged current samples".into(),
        ));
    }
    let period = T::one() / grid.freq;
    // Each sample stands for one sample_dt of signal, so the covered span is
    // len * sample_dt even though the timestamps span one dt less.
    let covered = T::from_usize(avg.len()).unwrap() * avg.sample_dt;
    let periods = (covered / period + lit::<T>(1e-9))
        .floor()
        .to_usize()
        .unwrap_or(0);
    if periods < 1 {
        return Err(Error::InsufficientData(format!(
            "averaged data spans {covered} s, less than one grid period ({period} s)"
        )));
    }
    // Trailing window of exactly an integer number of periods, half-open so
    // the period boundary sample is not double counted.
    let n = (T::from_usize(periods).unwrap() * period / avg.sample_dt)
        .round()
        .to_usize()
        .unwrap_or(avg.len())
        .min(avg.len());
    let j0 = avg.len() - n;
    let nt = T::from_usize(n).unwrap();

    let two_pi = lit::<T>(2.0) * T::PI();
    let omega = two_pi * grid.freq;
    let third = two_pi / lit::<T>(3.0);
    // V_x(t) = Vin cos(omega t + psi_x), matching the generated source.
    let psi = [T::zero(), -third, third];

    // Pooled through-origin fit I = k V.
    let mut sum_iv = T::zero();
    let mut sum_vv = T::zero();
    let mut sum_i = T::zero();
    for p in 0..3 {
        let x = avg.phase(p);
        for j in j0..avg.len() {
            let v = grid.vin_amplitude * (omega * avg.t[j] + psi[p]).cos();
            sum_iv += x[j] * v;
            sum_vv += v * v;
            sum_i += x[j];
        }
    }
    let k_fit = sum_iv / sum_vv;
    let mean_i = sum_i / (lit::<T>(3.0) * nt);

    let mut ss_res = T::zero();
    let mut ss_tot = T::zero();
    for p in 0..3 {
        let x = avg.phase(p);
        for j in j0..avg.len() {
            let v = grid.vin_amplitude * (omega * avg.t[j] + psi[p]).cos();
            let r = x[j] - k_fit * v;
            ss_res += r * r;
            let d = x[j] - mean_i;
            ss_tot += d * d;
        }
    }
    let r_squared = if ss_tot > T::zero() {
        (T::one() - ss_res / ss_tot).max(T::zero())
    } else {
        T::zero()
    };

    // Per-phase harmonic correlation against the absolute time base; the
    // voltage reference phase makes the fundamental angle the displacement.
    let mut worst_thd = T::zero();
    let mut worst_disp = T::zero();
    let two = lit::<T>(2.0);
    for p in 0..3 {
        let x = avg.phase(p);
        let mut fund_cos = T::zero();
        let mut fund_sin = T::zero();
        let mut harm_sq = T::zero();
        for h in 1..=THD_MAX_HARMONIC {
            let hn = T::from_usize(h).unwrap();
            let mut c = T::zero();
            let mut s = T::zero();
            for j in j0..avg.len() {
                let theta = hn * (omega * avg.t[j] + psi[p]);
                c += x[j] * theta.cos();
                s += x[j] * theta.sin();
            }
            c = two * c / nt;
            s = two * s / nt;
            if h == 1 {
                fund_cos = c;
                fund_sin = s;
            } else {
                harm_sq += c * c + s * s;
            }
        }
        let fund_mag = (fund_cos * fund_cos + fund_sin * fund_sin).sqrt();
        if fund_mag > T::zero() {
            let thd = harm_sq.sqrt() / fund_mag;
            if thd > worst_thd {
                worst_thd = thd;
            }
            // x ~ A cos(theta - delta): delta = atan2(sin corr, cos corr).
            let disp = fund_sin.atan2(fund_cos);
            if disp.abs() > worst_disp.abs() {
                worst_disp = disp;
            }
        }
    }

    let three = lit::<T>(3.0);
    Ok(PfReport {
        k_fit,
        k_theory: two * p_batt / (three * grid.vin_amplitude * grid.vin_amplitude),
        r_squared,
        thd: worst_thd,
        displacement_angle_deg: worst_disp * lit::<T>(180.0) / T::PI(),
    })
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    fn grid() -> GridConfig<f64> {
        GridConfig {
            vin_amplitude: 277.1,
            freq: 60.0,
        }
    }

    /// Build averaged currents directly: i_x = k v_x plus optional harmonic.
    fn synthetic(k: f64, harmonic: Option<(usize, f64)>, periods: usize) -> AveragedCurrents<f64> {
        let g = grid();
        let samples_per_period = 4000usize;
        let dt = (1.0 / g.freq) / samples_per_period as f64;
        let n = samples_per_period * periods;
        let mut out = AveragedCurrents {
            t: Vec::new(),
            sample_dt: dt,
            i_a: Vec::new(),
            i_b: Vec::new(),
            i_c: Vec::new(),
        };
        let w = 2.0 * std::f64::consts::PI * g.freq;
        let third = 2.0 * std::f64::consts::PI / 3.0;
        for j in 0..n {
            let t = j as f64 * dt;
            out.t.push(t);
            for (p, buf) in [&mut out.i_a, &mut out.i_b, &mut out.i_c]
                .into_iter()
                .enumerate()
            {
                let psi = [0.0, -third, third][p];
                let fund = k * g.vin_amplitude * (w * t + psi).cos();
                let extra = match harmonic {
                    Some((h, rel)) => {
                        rel * k * g.vin_amplitude * ((h as f64) * (w * t + psi)).cos()
                    }
                    None => 0.0,
                };
                buf.push(fund + extra);
            }
        }
        out
    }

    #[test]
    fn exact_proportional_currents_fit_perfectly() {
        let k = 0.11287;
        let avg = synthetic(k, None, 2);
        let report = input_current_quality(&avg, &grid(), 13e3).unwrap();
        assert_relative_eq!(report.k_fit, k, max_relative = 1e-9);
        assert_relative_eq!(report.r_squared, 1.0, epsilon = 1e-9);
        assert!(report.thd < 1e-9, "thd = {}", report.thd);
        assert!(
            report.displacement_angle_deg.abs() < 1e-9,
            "disp = {}",
            report.displacement_angle_deg
        );
    }

    #[test]
    fn k_theory_matches_the_rated_point() {
        let avg = synthetic(0.1, None, 1);
        let report = input_current_quality(&avg, &grid(), 13e3).unwrap();
        assert_relative_eq!(report.k_theory, 0.112879, epsilon = 1e-5);
    }

    #[test]
    fn injected_fifth_harmonic_reads_ten_percent_thd() {
        let avg = synthetic(0.11, Some((5, 0.10)), 2);
        let report = input_current_quality(&avg, &grid(), 13e3).unwrap();
        assert_relative_eq!(report.thd, 0.10, epsilon = 1e-3);
    }

    #[test]
    fn less_than_one_period_is_rejected() {
        let g = grid();
        let mut avg = synthetic(0.1, None, 1);
        let keep = avg.len() / 2;
        avg.t.truncate(keep);
        avg.i_a.truncate(keep);
        avg.i_b.truncate(keep);
        avg.i_c.truncate(keep);
        assert!(matches!(
            input_current_quality(&avg, &g, 13e3),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn pure_delay_shows_as_displacement() {
        let g = grid();
        let k = 0.1;
        let delay = 5.0_f64.to_radians();
        let samples = 4000usize;
        let dt = (1.0 / g.freq) / samples as f64;
        let w = 2.0 * std::f64::consts::PI * g.freq;
        let third = 2.0 * std::f64::consts::PI / 3.0;
        let mut avg = AveragedCurrents {
            t: Vec::new(),
            sample_dt: dt,
            i_a: Vec::new(),
            i_b: Vec::new(),
            i_c: Vec::new(),
        };
        for j in 0..samples {
            let t = j as f64 * dt;
            avg.t.push(t);
            avg.i_a.push(k * g.vin_amplitude * (w * t - delay).cos());
            avg.i_b
                .push(k * g.vin_amplitude * (w * t - third - delay).cos());
            avg.i_c
                .push(k * g.vin_amplitude * (w * t + third - delay).cos());
        }
        // Same psi convention as the generated source, shifted by the delay.
        let report = input_current_quality(&avg, &g, 13e3).unwrap();
        assert_relative_eq!(report.displacement_angle_deg, 5.0, epsilon = 1e-6);
    }
}
