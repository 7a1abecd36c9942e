//! Configuration loading: TOML files with dotted keys, defaults filled in,
//! plus `--set path=value` overrides.

use std::path::Path;

use srmc_core::SimConfig64;

use crate::error::CliError;

/// Default configuration as a TOML document.
pub fn default_config_toml() -> String {
    toml::to_string_pretty(&SimConfig64::default()).expect("defaults serialize")
}

/// Parse a scalar override value: bool, integer, float, or bare string.
fn parse_scalar(raw: &str) -> toml::Value {
    if let Ok(b) = raw.parse::<bool>() {
        return toml::Value::Boolean(b);
    }
    if let Ok(i) = raw.parse::<i64>() {
        return toml::Value::Integer(i);
    }
    if let Ok(f) = raw.parse::<f64>() {
        return toml::Value::Float(f);
    }
    toml::Value::String(raw.to_string())
}

/// Set a dotted-path key inside a TOML table tree, creating tables as needed.
pub fn set_path(doc: &mut toml::Value, path: &str, raw: &str) -> Result<(), CliError> {
    let parts: Vec<&str> = path.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(CliError::Config(format!("malformed override path '{path}'")));
    }
    let mut cursor = doc;
    for (i, part) in parts.iter().enumerate() {
        let table = cursor.as_table_mut().ok_or_else(|| {
            CliError::Config(format!("'{path}': '{}' is not a table", parts[..i].join(".")))
        })?;
        if i + 1 == parts.len() {
            table.insert(part.to_string(), parse_scalar(raw));
            return Ok(());
        }
        cursor = table
            .entry(part.to_string())
            .or_insert_with(|| toml::Value::Table(Default::default()));
    }
    unreachable!("loop always returns on the last segment")
}

/// Merge `overlay` into `base` recursively (tables merge, scalars replace).
fn merge(base: &mut toml::Value, overlay: toml::Value) {
    match (base, overlay) {
        (toml::Value::Table(b), toml::Value::Table(o)) => {
            for (k, v) in o {
                match b.get_mut(&k) {
                    Some(slot) => merge(slot, v),
                    None => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (slot, v) => *slot = v,
    }
}

/// Build the effective configuration: defaults, overlaid with the config
/// file (when given), overlaid with `--set` overrides. Validation runs here
/// so every caller gets the full violation list.
pub fn build_config(
    config_path: Option<&Path>,
    overrides: &[(String, String)],
) -> Result<SimConfig64, CliError> {
    let mut doc: toml::Value =
        toml::from_str(&default_config_toml()).expect("defaults parse as TOML");

    if let Some(path) = config_path {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Config(format!("cannot read config '{}': {e}", path.display()))
        })?;
        let user: toml::Value = toml::from_str(&text).map_err(|e| {
            CliError::Config(format!("cannot parse config '{}': {e}", path.display()))
        })?;
        merge(&mut doc, user);
    }
    for (path, value) in overrides {
        set_path(&mut doc, path, value)?;
    }

    let cfg: SimConfig64 = doc
        .try_into()
        .map_err(|e| CliError::Config(format!("invalid configuration: {e}")))?;
    cfg.validate()?;
    Ok(cfg)
}

/// Split a `path=value` argument.
pub fn parse_set_arg(arg: &str) -> Result<(String, String), CliError> {
    match arg.split_once('=') {
        Some((k, v)) if !k.is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(CliError::Config(format!(
            "override '{arg}' must look like path.key=value"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip_through_toml() {
        let text = default_config_toml();
        let parsed: SimConfig64 = toml::from_str(&text).unwrap();
        assert_eq!(parsed, SimConfig64::default());
    }

    #[test]
    fn overrides_reach_nested_fields() {
        let overrides = vec![
            ("tank.L".to_string(), "60e-6".to_string()),
            ("battery.power_cmd".to_string(), "6500".to_string()),
            ("control.mode".to_string(), "open_loop_fixed".to_string()),
        ];
        let cfg = build_config(None, &overrides).unwrap();
        assert_eq!(cfg.tank.l, 60e-6);
        assert_eq!(cfg.battery.power_cmd, 6500.0);
        assert_eq!(cfg.control.mode, srmc_core::control::ControlMode::OpenLoopFixed);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let overrides = vec![("tank.XL".to_string(), "1".to_string())];
        assert!(matches!(
            build_config(None, &overrides),
            Err(CliError::Config(_))
        ));
    }

    #[test]
    fn validation_errors_surface_with_the_constraint_name() {
        let overrides = vec![("modulator.hf_freq_min".to_string(), "80e3".to_string())];
        match build_config(None, &overrides) {
            Err(CliError::Config(msg)) => {
                assert!(msg.contains("hf_freq_min"), "{msg}");
                assert!(msg.contains("resonant"), "{msg}");
            }
            other => panic!("expected config error, got {other:?}"),
        }
    }
}
