//! Synchronous rectifier and battery reflection.

use crate::scalar::Scalar;

use super::config::BatteryModel;

/// Battery voltage reflected to the transformer primary (V).
///
/// The synchronous rectifier switches with the current, so the primary sees
/// `n * v_batt` with the sign of the tank current. Inside the zero-current
/// dead band the secondary is treated as disconnected and the reflection is
/// zero, which kills sign chatter at sub-milliamp currents.
pub fn reflected_rectifier_voltage<T: Scalar>(
    i_l: T,
    battery: &BatteryModel<T>,
    n: T,
    i_eps: T,
) -> T {
    if i_l > i_eps {
        n * battery.v_batt
    } else if i_l < -i_eps {
        -(n * battery.v_batt)
    } else {
        T::zero()
    }
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    fn battery() -> BatteryModel<f64> {
        BatteryModel {
            v_batt: 375.0,
            power_cmd: 13e3,
        }
    }

    #[test]
    fn positive_current_reflects_positive_voltage() {
        assert_relative_eq!(
            reflected_rectifier_voltage(10.0, &battery(), 1.2, 1e-3),
            450.0
        );
    }

    #[test]
    fn odd_symmetry() {
        assert_relative_eq!(
            reflected_rectifier_voltage(-10.0, &battery(), 1.2, 1e-3),
            -450.0
        );
    }

    #[test]
    fn dead_band_center_is_zero() {
        assert_relative_eq!(reflected_rectifier_voltage(0.0, &battery(), 1.2, 1e-3), 0.0);
        assert_relative_eq!(
            reflected_rectifier_voltage(0.5e-3, &battery(), 1.2, 1e-3),
            0.0
        );
    }
}
