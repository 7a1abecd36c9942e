//! Simulation driver.
//!
//! Time advances one HF half-cycle at a time. At each half-cycle boundary
//! the runner latches grid voltages, sector, duties, and the LF carrier
//! comparison, lets the controller pick the frequency for the half-cycle,
//! and then integrates with a fixed step that divides the half-period
//! exactly. Every gate edge therefore lands on an integration step boundary
//! and phase-leg handovers only happen at half-cycle starts.

use crate::control::{feedforward_frequency, pi_update, ControlMode, FreqBand, PiState};
use crate::error::{Error, Result};
use crate::modulation::{
    detect_sector, lf_duty_cycles, lf_pwm_select, table_row, DeviceId, GateDrive, GateVector,
    HBridgeSignals, Phase, PhaseSelect, SectorId,
};
use crate::scalar::{frac, lit, Scalar};

use super::bridge::{connection_voltage, solve_bridge, BridgeConnection, CURRENT_EPS};
use super::config::{SimConfig, TankState};
use super::rectifier::reflected_rectifier_voltage;
use super::tank::step_tank_with_energy;
use super::trace::{EventKind, HalfCycleTelemetry, Record, SimEvent, SimTrace};

/// Leg-A / leg-B drive at integer step `k` of a half-cycle.
///
/// The full period is `2 * n_steps` steps; even half-cycles host the AH/BL
/// conduction interval, odd ones AL/BH. Leg B is shifted by `shift_steps`
/// with H and L swapped.
fn hf_signals_at_step(
    k: u32,
    n_steps: u32,
    dead_steps: u32,
    high_half: bool,
    shift_steps: u32,
) -> HBridgeSignals {
    let n2 = 2 * n_steps;
    let pos = if high_half { k } else { k + n_steps };
    let leg_a = |p: u32| -> (bool, bool) {
        (
            p >= dead_steps && p < n_steps,
            p >= n_steps + dead_steps && p < n2,
        )
    };
    let (ah, al) = leg_a(pos);
    let pos_b = (pos + n2 - shift_steps % n2) % n2;
    let (b_high_role, b_low_role) = leg_a(pos_b);
    HBridgeSignals {
        ah,
        al,
        bh: b_low_role,
        bl: b_high_role,
    }
}

/// Consecutive freewheel steps on one phase pair.
#[derive(Clone, Copy)]
struct FreewheelRun {
    top: Phase,
    bottom: Phase,
    steps: u32,
}

/// Run the full simulation described by `cfg`.
///
/// Deterministic for a fixed configuration: the trace, events, and telemetry
/// come out bit-identical across runs and thread counts.
pub fn run_simulation<T: Scalar>(cfg: &SimConfig<T>) -> Result<SimTrace<T>> {
    cfg.validate()?;

    let band = FreqBand {
        min: cfg.modulator.hf_freq_min,
        max: cfg.modulator.hf_freq_max,
    };
    let i_eps = lit::<T>(CURRENT_EPS);
    let two = lit::<T>(2.0);
    let rectifier_open = !(cfg.battery.power_cmd > T::zero());

    let mut tank = TankState::default();
    let initial_state = tank;
    let mut prev_v_mx = T::zero();
    let mut prev_gates = GateVector::ALL_OFF;
    let mut e_in = T::zero();
    let mut e_out = T::zero();

    let mut pi = PiState::default();
    let mut pi_corr = T::zero();
    let mut last_update_t = T::zero();
    let mut last_update_e_out = T::zero();

    let mut prev_lf: Option<(SectorId, PhaseSelect)> = None;
    let mut freewheel: Option<FreewheelRun> = None;
    // Plateau voltage and period of the previous half-cycle, for the
    // phase-compensated handover between LF blocks.
    let mut prev_plateau: Option<(T, T)> = None;

    let capacity_hint = (cfg.duration / cfg.dt)
        .to_usize()
        .unwrap_or(0)
        / cfg.record_decimation as usize
        + 2;
    let mut records: Vec<Record<T>> = Vec::with_capacity(capacity_hint);
    let mut events: Vec<SimEvent<T>> = Vec::new();
    let mut half_cycles: Vec<HalfCycleTelemetry<T>> = Vec::new();

    let mut half_start = T::zero();
    let mut half_index: u64 = 0;
    let mut global_step: u64 = 0;
    // Always overwritten at half 0; the first update happens immediately.
    let mut current_freq = band.clamp(cfg.control.fixed_freq);

    while half_start < cfg.duration {
        let v_latch = cfg.grid.voltages_at(half_start);
        let sector = detect_sector(&v_latch)?;
        // Duty registers are latched from the LF-cycle midpoint voltages, so
        // the realized on-time matches the cycle-average duty to second
        // order in the grid rotation. The duty triple is continuous across
        // sector boundaries, so pairing it with the instantaneous sector is
        // safe even when the LF cycle straddles one.
        let lf_period = T::one() / cfg.modulator.lf_carrier_freq;
        let cycle_mid = ((half_start / lf_period).floor() + lit::<T>(0.5)) * lf_period;
        let v_mid = cfg.grid.voltages_at(cycle_mid);
        let duties = lf_duty_cycles(&v_mid, detect_sector(&v_mid)?)?;
        // Sampling the carrier at the half-cycle midpoint rounds LF edges to
        // the nearest half-period boundary instead of always deferring them,
        // which debiases the realized duty.
        let half_estimate = T::one() / (two * current_freq);
        let carrier_phase = frac(
            (half_start + half_estimate * lit::<T>(0.5)) * cfg.modulator.lf_carrier_freq,
        );
        let select = lf_pwm_select(&duties, sector, carrier_phase);

        let lf_change = match prev_lf {
            Some((s0, p0)) => s0 != sector || p0 != select,
            None => false,
        };
        prev_lf = Some((sector, select));
        if lf_change {
            events.push(SimEvent {
                t: half_start,
                kind: EventKind::LfTransition,
                device: None,
                zvs_precondition: None,
                diode_conduction_time: None,
                lf_context: true,
            });
        }

        // Plateau voltage the selected pair is about to apply.
        let clamp_phase = sector.clamped_phase();
        let selected_mod = sector
            .modulated_phases()
            .into_iter()
            .find(|p| select.get(*p))
            .expect("one modulated phase is always selected");
        let plateau = (v_latch.get(clamp_phase) - v_latch.get(selected_mod)).abs();

        // Controller: feedforward against the plateau, plus the PI trim on
        // measured power.
        if half_index % cfg.control.update_div as u64 == 0 {
            let base = match cfg.control.mode {
                ControlMode::OpenLoopFixed => band.clamp(cfg.control.fixed_freq),
                ControlMode::Feedforward | ControlMode::FeedforwardPlusPi => {
                    feedforward_frequency(plateau, &cfg.battery, &cfg.tank, &band)
                }
            };
            if cfg.control.mode == ControlMode::FeedforwardPlusPi && half_index > 0 {
                let dt_meas = half_start - last_update_t;
                if dt_meas > T::zero() {
                    let p_meas = (e_out - last_update_e_out) / dt_meas;
                    let error = cfg.battery.power_cmd - p_meas;
                    pi_corr = pi_update(
                        &mut pi,
                        error,
                        dt_meas,
                        &cfg.control,
                        band.min - base,
                        band.max - base,
                    );
                }
            }
            last_update_t = half_start;
            last_update_e_out = e_out;
            // Commit for the coming half-cycle(s).
            current_freq = band.clamp(base + pi_corr);
        }

        let f_cmd = current_freq;
        let mut half_period = T::one() / (two * f_cmd);

        // Phase-locked retiming: the steady-state current lag behind the
        // voltage flips is acos(n v_batt / plateau). When the commanded
        // plateau or frequency changes (gradually with grid rotation, or
        // stepwise at a block handover) the flip rhythm is retimed so it
        // stays locked to the inherited current zero-crossing rhythm instead
        // of exciting a multi-cycle ring in the tank.
        if cfg.control.mode != ControlMode::OpenLoopFixed {
            if let Some((plateau_old, period_old)) = prev_plateau {
                let reflected = cfg.tank.n * cfg.battery.v_batt;
                let lag = |p: T| -> T {
                    if p > T::zero() {
                        (reflected / p).min(T::one()).acos()
                    } else {
                        T::zero()
                    }
                };
                let period_new = T::one() / f_cmd;
                let two_pi = two * T::PI();
                let shift =
                    lag(plateau_old) / two_pi * period_old - lag(plateau) / two_pi * period_new;
                let lo = half_period * lit::<T>(0.5);
                let hi = half_period * lit::<T>(1.5);
                half_period = (half_period + shift).max(lo).min(hi);
            }
        }
        prev_plateau = Some((plateau, T::one() / f_cmd));
        let n_steps = (half_period / cfg.dt)
            .round()
            .to_u32()
            .unwrap_or(1)
            .max(1);
        let dt = half_period / T::from_u32(n_steps).unwrap();
        let dead_steps = (cfg.modulator.dead_time / dt)
            .round()
            .to_u32()
            .unwrap_or(0)
            .min(n_steps.saturating_sub(1));
        let shift_steps = (cfg.modulator.phase_shift * two * T::from_u32(n_steps).unwrap())
            .round()
            .to_u32()
            .unwrap_or(0);
        let high_half = half_index % 2 == 0;
        let row = table_row(sector, &select)?;

        let e_in_at_start = e_in;
        let e_out_at_start = e_out;

        for k in 0..n_steps {
            let t_k = half_start + dt * T::from_u32(k).unwrap();
            let v_k = cfg.grid.voltages_at(t_k);
            let h = hf_signals_at_step(k, n_steps, dead_steps, high_half, shift_steps);
            let gates = row.instantiate(&h);
            let conn = solve_bridge(&gates, &v_k, tank.i_l, i_eps)?;

            if gates != prev_gates {
                for d in DeviceId::ALL {
                    let was = prev_gates.is_on(d);
                    let now = gates.is_on(d);
                    if was == now {
                        continue;
                    }
                    if now {
                        let commutated = matches!(row.drive_of(d), GateDrive::Hf(_));
                        let (zvs, diode_time) = if commutated {
                            let diode = match (&freewheel, &conn) {
                                (Some(fw), BridgeConnection::Drive { top, bottom })
                                    if fw.top == *top && fw.bottom == *bottom =>
                                {
                                    dt * T::from_u32(fw.steps).unwrap()
                                }
                                _ => T::zero(),
                            };
                            (Some(diode > T::zero()), Some(diode))
                        } else {
                            (None, None)
                        };
                        events.push(SimEvent {
                            t: t_k,
                            kind: EventKind::GateTurnOn,
                            device: Some(d),
                            zvs_precondition: zvs,
                            diode_conduction_time: diode_time,
                            lf_context: lf_change,
                        });
                    } else {
                        events.push(SimEvent {
                            t: t_k,
                            kind: EventKind::GateTurnOff,
                            device: Some(d),
                            zvs_precondition: None,
                            diode_conduction_time: None,
                            lf_context: lf_change,
                        });
                    }
                }
            }

            freewheel = match conn {
                BridgeConnection::Freewheel { top, bottom } => match freewheel {
                    Some(fw) if fw.top == top && fw.bottom == bottom => Some(FreewheelRun {
                        top,
                        bottom,
                        steps: fw.steps + 1,
                    }),
                    _ => Some(FreewheelRun {
                        top,
                        bottom,
                        steps: 1,
                    }),
                },
                _ => None,
            };

            let v_mx = connection_voltage(conn, &v_k, prev_v_mx);
            let v_refl = if rectifier_open {
                T::zero()
            } else {
                reflected_rectifier_voltage(tank.i_l, &cfg.battery, cfg.tank.n, i_eps)
            };

            if global_step % cfg.record_decimation as u64 == 0 {
                let i_batt = if rectifier_open || tank.i_l.abs() <= i_eps {
                    T::zero()
                } else {
                    cfg.tank.n * tank.i_l.abs()
                };
                let mut phase_currents = [T::zero(); 3];
                if let Some((top, bottom)) = conn.pair() {
                    phase_currents[top.index()] = tank.i_l;
                    phase_currents[bottom.index()] = -tank.i_l;
                }
                records.push(Record {
                    t: t_k,
                    v: v_k,
                    sector,
                    select,
                    gates,
                    v_mx,
                    tank,
                    i_batt,
                    p_out: cfg.battery.v_batt * i_batt,
                    f_hf: f_cmd,
                    phase_currents,
                    e_in,
                    e_out,
                });
            }

            let (next, de_in, de_out) =
                step_tank_with_energy(tank, v_mx, v_refl, &cfg.tank, dt).map_err(|e| match e {
                    Error::NumericalBlowup { i_l, v_c, .. } => Error::NumericalBlowup {
                        t: t_k.to_f64().unwrap_or(f64::NAN),
                        i_l,
                        v_c,
                    },
                    other => other,
                })?;
            e_in += de_in;
            e_out += de_out;

            if tank.i_l * next.i_l < T::zero() {
                events.push(SimEvent {
                    t: t_k + dt,
                    kind: EventKind::CurrentZeroCross,
                    device: None,
                    zvs_precondition: None,
                    diode_conduction_time: None,
                    lf_context: false,
                });
            }

            tank = next;
            prev_v_mx = v_mx;
            prev_gates = gates;
            global_step += 1;
        }

        half_cycles.push(HalfCycleTelemetry {
            t_start: half_start,
            dt,
            n_steps,
            f_hf: f_cmd,
            sector,
            select,
            lf_change,
            e_in_delta: e_in - e_in_at_start,
            e_out_delta: e_out - e_out_at_start,
        });

        half_start = half_start + half_period;
        half_index += 1;
    }

    Ok(SimTrace {
        config: *cfg,
        records,
        events,
        half_cycles,
        initial_state,
        final_state: tank,
        e_in_total: e_in,
        e_out_total: e_out,
    })
}
