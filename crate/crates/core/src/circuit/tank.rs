//! Series LC tank integration.
//!
//! State equations, with the bridge and reflected rectifier voltages held
//! constant over one step:
//!
//! L di/dt = v_mx - v_C - v_refl - r_series * i
//! C dv/dt = i
//!
//! The runner aligns every gate edge with a step boundary, so the system is
//! exactly linear within each step and classical RK4 applies cleanly.

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

use super::config::{TankParams, TankState};

#[derive(Clone, Copy)]
struct Derivative<T> {
    di: T,
    dv: T,
    de_in: T,
    de_out: T,
}

#[inline]
fn deriv<T: Scalar>(i: T, v: T, v_mx: T, v_refl: T, p: &TankParams<T>) -> Derivative<T> {
    Derivative {
        di: (v_mx - v - v_refl - p.r_series * i) / p.l,
        dv: i / p.c,
        de_in: v_mx * i,
        de_out: v_refl * i,
    }
}

/// Advance the tank by one RK4 step, also integrating the bridge-side and
/// rectifier-side energy flows with the same stage weights. Returns the new
/// state plus (energy in from the bridge, energy out to the rectifier) (J).
pub fn step_tank_with_energy<T: Scalar>(
    s: TankState<T>,
    v_mx: T,
    v_refl: T,
    p: &TankParams<T>,
    dt: T,
) -> Result<(TankState<T>, T, T)> {
    let half = lit::<T>(0.5);
    let sixth = lit::<T>(1.0 / 6.0);
    let two = lit::<T>(2.0);

    let k1 = deriv(s.i_l, s.v_c, v_mx, v_refl, p);
    let k2 = deriv(
        s.i_l + half * dt * k1.di,
        s.v_c + half * dt * k1.dv,
        v_mx,
        v_refl,
        p,
    );
    let k3 = deriv(
        s.i_l + half * dt * k2.di,
        s.v_c + half * dt * k2.dv,
        v_mx,
        v_refl,
        p,
    );
    let k4 = deriv(s.i_l + dt * k3.di, s.v_c + dt * k3.dv, v_mx, v_refl, p);

    let next = TankState {
        i_l: s.i_l + dt * sixth * (k1.di + two * k2.di + two * k3.di + k4.di),
        v_c: s.v_c + dt * sixth * (k1.dv + two * k2.dv + two * k3.dv + k4.dv),
    };
    let de_in = dt * sixth * (k1.de_in + two * k2.de_in + two * k3.de_in + k4.de_in);
    let de_out = dt * sixth * (k1.de_out + two * k2.de_out + two * k3.de_out + k4.de_out);

    if !next.i_l.is_finite() || !next.v_c.is_finite() {
        return Err(Error::NumericalBlowup {
            t: f64::NAN,
            i_l: next.i_l.to_f64().unwrap_or(f64::NAN),
            v_c: next.v_c.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok((next, de_in, de_out))
}

/// Advance the tank state by one RK4 step of the piecewise-linear circuit.
pub fn step_tank<T: Scalar>(
    s: TankState<T>,
    v_mx: T,
    v_refl: T,
    p: &TankParams<T>,
    dt: T,
) -> Result<TankState<T>> {
    step_tank_with_energy(s, v_mx, v_refl, p, dt).map(|(next, _, _)| next)
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    fn params() -> TankParams<f64> {
        TankParams {
            l: 25e-6,
            c: 100e-9,
            n: 1.0,
            r_series: 0.0,
        }
    }

    #[test]
    fn first_step_matches_first_order_taylor() {
        let s = TankState { i_l: 0.0, v_c: 0.0 };
        let next = step_tank(s, 400.0, 0.0, &params(), 1e-8).unwrap();
        // di ~ (v/L) dt, dv second-order small.
        assert_relative_eq!(next.i_l, 400.0 / 25e-6 * 1e-8, max_relative = 1e-5);
        // v_c builds as the second-order term (di/dt) dt^2 / (2C) ~ 8 mV.
        assert!(next.v_c.abs() < 0.01);
    }

    #[test]
    fn equilibrium_state_is_unchanged() {
        let s = TankState {
            i_l: 0.0,
            v_c: 120.0,
        };
        let next = step_tank(s, 170.0, 50.0, &params(), 1e-8).unwrap();
        assert_relative_eq!(next.i_l, 0.0, epsilon = 1e-12);
        assert_relative_eq!(next.v_c, 120.0, epsilon = 1e-12);
    }

    #[test]
    fn free_oscillation_returns_after_one_analytic_period() {
        // Undriven LC from (1 A, 0 V): i(t) = cos(w0 t), v(t) = Z0 sin(w0 t).
        let p = params();
        let period = 2.0 * std::f64::consts::PI * (p.l * p.c).sqrt();
        let steps = 2000usize;
        let dt = period / steps as f64;
        let mut s = TankState { i_l: 1.0, v_c: 0.0 };
        for _ in 0..steps {
            s = step_tank(s, 0.0, 0.0, &p, dt).unwrap();
        }
        let z0 = p.char_impedance();
        assert!((s.i_l - 1.0).abs() < 1e-6, "i_l = {}", s.i_l);
        assert!((s.v_c / z0).abs() < 1e-6, "v_c = {}", s.v_c);
    }

    #[test]
    fn quarter_period_matches_the_analytic_quadrature() {
        let p = params();
        let w0 = 1.0 / (p.l * p.c).sqrt();
        let quarter = 0.25 * 2.0 * std::f64::consts::PI / w0;
        let steps = 500usize;
        let dt = quarter / steps as f64;
        let mut s = TankState { i_l: 1.0, v_c: 0.0 };
        for _ in 0..steps {
            s = step_tank(s, 0.0, 0.0, &p, dt).unwrap();
        }
        assert_relative_eq!(s.i_l, 0.0, epsilon = 1e-6);
        assert_relative_eq!(s.v_c, p.char_impedance(), max_relative = 1e-6);
    }

    #[test]
    fn energy_quadrature_matches_stored_energy_change() {
        // Drive the tank hard for many steps; the integrated input minus
        // output energy must equal the stored-energy change to RK4 accuracy.
        let p = params();
        let dt = 5e-9;
        let mut s = TankState { i_l: 0.0, v_c: 0.0 };
        let mut e_in = 0.0;
        let mut e_out = 0.0;
        for k in 0..20_000 {
            let v_mx = if (k / 1000) % 2 == 0 { 450.0 } else { -450.0 };
            let v_refl = 195.0 * f64::signum(s.i_l);
            let (next, din, dout) = step_tank_with_energy(s, v_mx, v_refl, &p, dt).unwrap();
            e_in += din;
            e_out += dout;
            s = next;
        }
        let stored = s.energy(&p);
        let residual = e_in - e_out - stored;
        assert!(
            residual.abs() <= 1e-3 * e_in.abs().max(1e-12),
            "residual {residual} vs e_in {e_in}"
        );
    }

    #[test]
    fn series_resistance_damps_the_ring() {
        let mut p = params();
        p.r_series = 1.0;
        let period = 2.0 * std::f64::consts::PI * (p.l * p.c).sqrt();
        let dt = period / 2000.0;
        let mut s = TankState { i_l: 1.0, v_c: 0.0 };
        let e0 = s.energy(&p);
        for _ in 0..2000 {
            s = step_tank(s, 0.0, 0.0, &p, dt).unwrap();
        }
        assert!(s.energy(&p) < e0);
    }
}
