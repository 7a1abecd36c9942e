//! Discrete PI trim on measured battery power.

use crate::scalar::Scalar;

use super::ControlConfig;

/// PI integrator state (W*s).
#[derive(Clone, Copy, Debug, Default)]
pub struct PiState<T> {
    pub integral: T,
}

/// One PI update. Returns the frequency correction (Hz), clamped to
/// `[lo, hi]` around the feedforward command.
///
/// A positive power error (under-delivery) lowers the frequency toward
/// resonance, so the correction sign is negative. While the output sits on a
/// clamp the integrator is frozen (conditional anti-windup).
pub fn pi_update<T: Scalar>(
    state: &mut PiState<T>,
    power_error: T,
    dt: T,
    cfg: &ControlConfig<T>,
    lo: T,
    hi: T,
) -> T {
    let proportional = cfg.pi_kp * power_error;
    let candidate_integral = state.integral + power_error * dt;
    let unclamped = -(proportional + cfg.pi_ki * candidate_integral);
    if unclamped >= lo && unclamped <= hi {
        state.integral = candidate_integral;
        unclamped
    } else {
        (-(proportional + cfg.pi_ki * state.integral)).max(lo).min(hi)
    }
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;
    use crate::control::ControlMode;

    fn cfg(kp: f64, ki: f64) -> ControlConfig<f64> {
        ControlConfig {
            mode: ControlMode::FeedforwardPlusPi,
            fixed_freq: 110e3,
            pi_kp: kp,
            pi_ki: ki,
            update_div: 1,
        }
    }

    #[test]
    fn zero_error_zero_integrator_gives_zero() {
        let mut s = PiState::default();
        let u = pi_update(&mut s, 0.0, 1e-5, &cfg(0.5, 200.0), -1e4, 1e4);
        assert_relative_eq!(u, 0.0);
    }

    #[test]
    fn integral_only_ramps_as_minus_ki_e_t() {
        // Constant error E over total time T with ki only: u = -ki * E * T.
        let c = cfg(0.0, 100.0);
        let mut s = PiState::default();
        let e = 250.0;
        let dt = 1e-4;
        let mut u = 0.0;
        for _ in 0..50 {
            u = pi_update(&mut s, e, dt, &c, -1e6, 1e6);
        }
        assert_relative_eq!(u, -100.0 * 250.0 * 50.0 * 1e-4, max_relative = 1e-12);
    }

    #[test]
    fn clamped_output_freezes_the_integrator() {
        // Reference loop: integrate only when the unclamped output stays in
        // range; the state must track that scalar model exactly.
        let c = cfg(0.1, 500.0);
        let (lo, hi) = (-100.0, 100.0);
        let mut s = PiState::default();
        let mut model_integral = 0.0f64;
        let dt = 2e-5;
        let errors: Vec<f64> = (0..400)
            .map(|k| if k < 300 { 4000.0 } else { -4000.0 })
            .collect();
        for &e in &errors {
            let u = pi_update(&mut s, e, dt, &c, lo, hi);
            let cand = model_integral + e * dt;
            let want = -(0.1 * e + 500.0 * cand);
            let expect = if (lo..=hi).contains(&want) {
                model_integral = cand;
                want
            } else {
                (-(0.1 * e + 500.0 * model_integral)).clamp(lo, hi)
            };
            assert_relative_eq!(u, expect, max_relative = 1e-12);
            assert!((lo..=hi).contains(&u));
        }
        assert_relative_eq!(s.integral, model_integral, max_relative = 1e-12);
    }

    #[test]
    fn under_delivery_lowers_frequency() {
        let mut s = PiState::default();
        let u = pi_update(&mut s, 500.0, 1e-5, &cfg(0.5, 0.0), -1e4, 1e4);
        assert!(u < 0.0);
    }
}
