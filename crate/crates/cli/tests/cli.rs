//! CLI behavior: file outputs, determinism, table dump, sweeps.

use std::path::Path;

use srmc::{
    cmd_dump_table, cmd_efficiency, cmd_simulate, cmd_sweep, default_config_toml, CliError,
};

fn short_run_overrides() -> Vec<(String, String)> {
    vec![
        ("duration".to_string(), "2e-3".to_string()),
        ("record_decimation".to_string(), "200".to_string()),
    ]
}

#[test]
fn simulate_writes_the_four_outputs_with_pinned_headers() {
    let dir = tempfile::tempdir().unwrap();
    let out = cmd_simulate(None, &short_run_overrides(), dir.path()).unwrap();
    for name in ["waveform.csv", "events.csv", "analysis.json", "manifest.json"] {
        assert!(dir.path().join(name).exists(), "{name} missing");
    }
    let waveform = std::fs::read_to_string(dir.path().join("waveform.csv")).unwrap();
    assert!(waveform.starts_with(
        "t,va,vb,vc,sector,pwm_a,pwm_b,pwm_c,AtH,AtL,AbH,AbL,BtH,BtL,BbH,BbL,CtH,CtL,CbH,CbL,v_mx,i_L,v_C,i_batt,p_out,f_hf\n"
    ));
    assert_eq!(
        waveform.lines().count(),
        out.trace.records.len() + 1,
        "one row per decimated step"
    );
    let events = std::fs::read_to_string(dir.path().join("events.csv")).unwrap();
    assert!(events.starts_with("t,kind,device,zvs\n"));
    assert!(events.contains("gate_turn_on"));
    assert!(events.contains("lf_transition"));

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["run_id"].as_str().unwrap().len(), 64);
    assert!(manifest["config"]["tank"]["L"].is_number());
}

#[test]
fn reruns_are_byte_identical() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    cmd_simulate(None, &short_run_overrides(), dir_a.path()).unwrap();
    cmd_simulate(None, &short_run_overrides(), dir_b.path()).unwrap();
    for name in ["waveform.csv", "events.csv", "analysis.json"] {
        let a = std::fs::read(dir_a.path().join(name)).unwrap();
        let b = std::fs::read(dir_b.path().join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between reruns");
    }
}

#[test]
fn identical_configs_share_a_run_id_and_different_ones_do_not() {
    let a = srmc::run_id(&srmc_core::SimConfig64::default());
    let b = srmc::run_id(&srmc_core::SimConfig64::default());
    assert_eq!(a, b);
    let mut cfg = srmc_core::SimConfig64::default();
    cfg.battery.power_cmd = 1.0;
    assert_ne!(a, srmc::run_id(&cfg));
}

#[test]
fn below_resonance_band_is_a_config_error_naming_the_constraint() {
    let dir = tempfile::tempdir().unwrap();
    let overrides = vec![("modulator.hf_freq_min".to_string(), "80e3".to_string())];
    match cmd_simulate(None, &overrides, dir.path()) {
        Err(CliError::Config(msg)) => {
            assert!(msg.contains("hf_freq_min"), "{msg}");
            assert!(msg.contains("above"), "{msg}");
        }
        other => panic!("expected config error, got {:?}", other.map(|_| ())),
    }
}

#[test]
fn config_file_keys_override_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "duration = 1e-3\n\n[battery]\npower_cmd = 6500.0\n").unwrap();
    let out = cmd_simulate(Some(Path::new(&path)), &[], dir.path()).unwrap();
    assert_eq!(out.trace.config.duration, 1e-3);
    assert_eq!(out.trace.config.battery.power_cmd, 6500.0);
    // Untouched keys keep their defaults.
    assert_eq!(out.trace.config.tank.n, 0.6);
}

#[test]
fn dump_table_matches_the_reference_rows() {
    let csv = cmd_dump_table(true);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 13, "header plus twelve rows");
    // Spot checks against the worked rows.
    assert!(lines.contains(&"2,1,1,0,1,AH,BH,1,AL,1,1,BL,0,0,0,0"));
    assert!(lines.contains(&"2,1,0,1,1,AH,BH,1,0,0,0,0,AL,1,1,BL"));
    assert!(lines.contains(&"5,1,1,0,AL,1,1,BL,1,AH,BH,1,0,0,0,0"));
    // Each sector appears exactly twice.
    for sector in 1..=6 {
        let n = lines[1..]
            .iter()
            .filter(|l| l.starts_with(&format!("{sector},")))
            .count();
        assert_eq!(n, 2, "sector {sector}");
    }
    // Human-readable variant carries the same twelve rows.
    let table = cmd_dump_table(false);
    assert_eq!(table.lines().count(), 13);
}

#[test]
fn efficiency_rows_reproduce_the_rated_point_and_sweep_monotonically() {
    let rows = cmd_efficiency(13_000.0, &[0.010, 0.020, 0.030, 0.040], 447.75, 375.0, 90.0)
        .unwrap();
    assert_eq!(rows.len(), 4);
    for pair in rows.windows(2) {
        assert!(
            pair[1].report.efficiency < pair[0].report.efficiency,
            "efficiency must fall with r_ds"
        );
    }
    assert!((rows[2].report.p_loss_pri - 101.157).abs() < 0.001);
    assert!((rows[2].report.efficiency - 0.980151).abs() < 1e-5);

    assert!(matches!(
        cmd_efficiency(-1.0, &[0.03], 447.75, 375.0, 90.0),
        Err(CliError::Config(_))
    ));
    assert!(matches!(
        cmd_efficiency(13e3, &[0.0], 447.75, 375.0, 90.0),
        Err(CliError::Config(_))
    ));
}

#[test]
fn sweep_rows_come_back_in_grid_order_whatever_the_parallelism() {
    let axes = vec![(
        "control.fixed_freq".to_string(),
        vec![
            "106e3".to_string(),
            "110e3".to_string(),
            "115e3".to_string(),
            "120e3".to_string(),
            "126e3".to_string(),
        ],
    )];
    let base = vec![
        ("duration".to_string(), "1e-3".to_string()),
        ("record_decimation".to_string(), "500".to_string()),
        ("control.mode".to_string(), "open_loop_fixed".to_string()),
    ];
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let serial = cmd_sweep(None, &base, &axes, 1, dir_a.path()).unwrap();
    let parallel = cmd_sweep(None, &base, &axes, 8, dir_b.path()).unwrap();
    assert_eq!(serial.rows.len(), 5);
    assert_eq!(serial.failures, 0);
    for (i, row) in serial.rows.iter().enumerate() {
        assert_eq!(row.index, i);
        assert_eq!(row.overrides, axes[0].1[i..i + 1].iter().map(|v| ("control.fixed_freq".to_string(), v.clone())).collect::<Vec<_>>());
    }
    let a = std::fs::read(serial.summary_path).unwrap();
    let b = std::fs::read(parallel.summary_path).unwrap();
    assert_eq!(a, b, "summary must not depend on scheduling");
}

#[test]
fn sweep_across_resonance_shows_the_zvs_boundary() {
    let f0 = srmc_core::SimConfig64::default().tank.resonant_freq();
    let base = vec![
        ("duration".to_string(), "1.5e-3".to_string()),
        ("record_decimation".to_string(), "500".to_string()),
        ("control.mode".to_string(), "open_loop_fixed".to_string()),
        (
            "modulator.hf_freq_min".to_string(),
            format!("{}", 0.7 * f0),
        ),
        ("modulator.allow_below_resonance".to_string(), "true".to_string()),
    ];
    let axes = vec![(
        "control.fixed_freq".to_string(),
        vec![format!("{}", 0.8 * f0), format!("{}", 1.12 * f0)],
    )];
    let dir = tempfile::tempdir().unwrap();
    let out = cmd_sweep(None, &base, &axes, 2, dir.path()).unwrap();
    let below = out.rows[0].zvs_fraction.unwrap();
    let above = out.rows[1].zvs_fraction.unwrap();
    assert!(below < 1.0, "below resonance must hard switch ({below})");
    assert!(above == 1.0, "above resonance must soft switch ({above})");
}

#[test]
fn failed_sweep_points_are_recorded_and_counted() {
    let axes = vec![(
        "tank.L".to_string(),
        vec!["56e-6".to_string(), "-1".to_string()],
    )];
    let base = vec![
        ("duration".to_string(), "0.5e-3".to_string()),
        ("record_decimation".to_string(), "500".to_string()),
    ];
    let dir = tempfile::tempdir().unwrap();
    let out = cmd_sweep(None, &base, &axes, 2, dir.path()).unwrap();
    assert_eq!(out.failures, 1);
    assert_eq!(out.rows[0].status, "ok");
    assert_ne!(out.rows[1].status, "ok");
}

#[test]
fn default_config_toml_parses_back() {
    let cfg: srmc_core::SimConfig64 = toml::from_str(&default_config_toml()).unwrap();
    assert_eq!(cfg, srmc_core::SimConfig64::default());
}
