//! Run configuration: parameter overrides from flags and flat config files,
//! with precedence flags > file > defaults, and axis flag parsing.
//!
//! The config file format is one `key = value` per line, `#` starts a
//! comment, and the key set mirrors the command-line flags exactly.

use clap::Args;
use phase_cavity::{Axis, AxisName, SystemParams};

use crate::CliError;

/// The recognized parameter keys, shared between flags and config files.
pub const CONFIG_KEYS: [&str; 15] = [
    "g_n", "omega1", "omega2", "omega_t", "kappa", "gamma12", "gamma3", "gamma4", "delta1",
    "delta2", "delta_t", "delta_ac", "phi1", "phi2", "delta_p",
];

/// Optional overrides for every model parameter plus the probe detuning.
#[derive(Debug, Clone, Copy, Default, Args)]
pub struct ParamFlags {
    /// Collective coupling g*sqrt(N).
    #[arg(long = "g_n", value_name = "X")]
    pub g_n: Option<f64>,
    /// Rabi frequency of control laser 1.
    #[arg(long = "omega1", value_name = "X")]
    pub omega1: Option<f64>,
    /// Rabi frequency of control laser 2.
    #[arg(long = "omega2", value_name = "X")]
    pub omega2: Option<f64>,
    /// Rabi frequency of the loop-closing wave.
    #[arg(long = "omega_t", value_name = "X")]
    pub omega_t: Option<f64>,
    /// Total cavity loss rate.
    #[arg(long = "kappa", value_name = "X")]
    pub kappa: Option<f64>,
    /// Ground-state decoherence rate.
    #[arg(long = "gamma12", value_name = "X")]
    pub gamma12: Option<f64>,
    /// Decay rate of the first excited state.
    #[arg(long = "gamma3", value_name = "X")]
    pub gamma3: Option<f64>,
    /// Decay rate of the second excited state.
    #[arg(long = "gamma4", value_name = "X")]
    pub gamma4: Option<f64>,
    /// Control laser 1 detuning.
    #[arg(long = "delta1", value_name = "X")]
    pub delta1: Option<f64>,
    /// Control laser 2 detuning.
    #[arg(long = "delta2", value_name = "X")]
    pub delta2: Option<f64>,
    /// Loop-closing wave detuning.
    #[arg(long = "delta_t", value_name = "X")]
    pub delta_t: Option<f64>,
    /// Cavity-atom detuning.
    #[arg(long = "delta_ac", value_name = "X")]
    pub delta_ac: Option<f64>,
    /// Closed-loop phase (radians).
    #[arg(long = "phi1", value_name = "RAD")]
    pub phi1: Option<f64>,
    /// Input relative phase (radians).
    #[arg(long = "phi2", value_name = "RAD")]
    pub phi2: Option<f64>,
    /// Probe detuning.
    #[arg(long = "delta_p", value_name = "X")]
    pub delta_p: Option<f64>,
}

impl ParamFlags {
    fn set(&mut self, key: &str, value: f64) -> bool {
        match key {
            "g_n" => self.g_n = Some(value),
            "omega1" => self.omega1 = Some(value),
            "omega2" => self.omega2 = Some(value),
            "omega_t" => self.omega_t = Some(value),
            "kappa" => self.kappa = Some(value),
            "gamma12" => self.gamma12 = Some(value),
            "gamma3" => self.gamma3 = Some(value),
            "gamma4" => self.gamma4 = Some(value),
            "delta1" => self.delta1 = Some(value),
            "delta2" => self.delta2 = Some(value),
            "delta_t" => self.delta_t = Some(value),
            "delta_ac" => self.delta_ac = Some(value),
            "phi1" => self.phi1 = Some(value),
            "phi2" => self.phi2 = Some(value),
            "delta_p" => self.delta_p = Some(value),
            _ => return false,
        }
        true
    }

    /// Overlay these overrides on a parameter set and probe detuning.
    pub fn apply(&self, p: &mut SystemParams, delta_p: &mut f64) {
        macro_rules! set {
            ($($field:ident),*) => {
                $(if let Some(v) = self.$field { p.$field = v; })*
            };
        }
        set!(
            g_n, omega1, omega2, omega_t, kappa, gamma12, gamma3, gamma4, delta1, delta2,
            delta_t, delta_ac, phi1, phi2
        );
        if let Some(v) = self.delta_p {
            *delta_p = v;
        }
    }
}

/// Parse a flat `key = value` config file. Unknown keys and malformed lines
/// are rejected with their line number; later lines win over earlier ones.
pub fn parse_config_text(text: &str) -> Result<ParamFlags, CliError> {
    let mut flags = ParamFlags::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(CliError::Parse {
                line,
                msg: format!("expected `key = value`, got `{raw}`"),
            });
        };
        let key = key.trim();
        let value = value.trim();
        let parsed: f64 = value.parse().map_err(|_| CliError::Parse {
            line,
            msg: format!("`{value}` is not a number"),
        })?;
        if !flags.set(key, parsed) {
            return Err(CliError::Parse {
                line,
                msg: format!("unknown key `{key}`"),
            });
        }
    }
    Ok(flags)
}

/// Resolve the effective configuration: `base` (defaults or a preset), then
/// the config file, then flags, then domain validation.
pub fn resolve(
    file_text: Option<&str>,
    flags: &ParamFlags,
    base: SystemParams,
    base_delta_p: f64,
) -> Result<(SystemParams, f64), CliError> {
    let mut p = base;
    let mut dp = base_delta_p;
    if let Some(text) = file_text {
        parse_config_text(text)?.apply(&mut p, &mut dp);
    }
    flags.apply(&mut p, &mut dp);
    p.validate()?;
    if !dp.is_finite() {
        return Err(CliError::Validation {
            name: "delta_p".to_string(),
            msg: "must be finite".to_string(),
        });
    }
    Ok((p, dp))
}

/// Parse an `--axis name:start:stop:count` flag.
pub fn parse_axis(spec: &str) -> Result<Axis, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 4 {
        return Err(CliError::Validation {
            name: "axis".to_string(),
            msg: format!("`{spec}` is not of the form name:start:stop:count"),
        });
    }
    let name: AxisName = parts[0].parse()?;
    let num = |s: &str, what: &str| -> Result<f64, CliError> {
        s.parse().map_err(|_| CliError::Validation {
            name: "axis".to_string(),
            msg: format!("{what} `{s}` is not a number"),
        })
    };
    let start = num(parts[1], "start")?;
    let stop = num(parts[2], "stop")?;
    let count: usize = parts[3].parse().map_err(|_| CliError::Validation {
        name: "axis".to_string(),
        msg: format!("count `{}` is not an integer", parts[3]),
    })?;
    Ok(Axis::new(name, start, stop, count)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_values_override_defaults_and_flags_override_file() {
        let file = "phi2 = 3.141592653589793\nkappa = 2.0 # trailing comment\n";
        let mut flags = ParamFlags::default();
        flags.phi2 = Some(0.0);
        let (p, dp) = resolve(Some(file), &flags, SystemParams::default(), 0.0).unwrap();
        assert_eq!(p.phi2, 0.0); // flag wins
        assert_eq!(p.kappa, 2.0); // file wins over default
        assert_eq!(dp, 0.0);
    }

    #[test]
    fn empty_input_keeps_defaults() {
        let (p, dp) = resolve(None, &ParamFlags::default(), SystemParams::default(), 0.0).unwrap();
        assert_eq!(p, SystemParams::default());
        assert_eq!(dp, 0.0);
    }

    #[test]
    fn unknown_keys_are_rejected_with_line_numbers() {
        let file = "kappa = 1.0\nbogus = 3\n";
        let err = parse_config_text(file).unwrap_err();
        match err {
            CliError::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("bogus"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_lines_are_rejected() {
        assert!(parse_config_text("kappa 1.0\n").is_err());
        assert!(parse_config_text("kappa = fast\n").is_err());
        // Comment-only and blank lines are fine.
        parse_config_text("# comment\n\n   \n").unwrap();
    }

    #[test]
    fn out_of_domain_values_fail_validation_by_name() {
        let file = "gamma12 = -1\n";
        let err = resolve(Some(file), &ParamFlags::default(), SystemParams::default(), 0.0)
            .unwrap_err();
        match err {
            CliError::Validation { name, .. } => assert_eq!(name, "gamma12"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn all_config_keys_are_recognized() {
        let mut flags = ParamFlags::default();
        for key in CONFIG_KEYS {
            assert!(flags.set(key, 1.0), "key {key} not handled");
        }
        assert!(!flags.set("nope", 1.0));
    }

    #[test]
    fn axis_specs_parse_and_validate() {
        let ax = parse_axis("delta_p:-5:5:201").unwrap();
        assert_eq!(ax.name, AxisName::DeltaP);
        assert_eq!((ax.start, ax.stop, ax.count), (-5.0, 5.0, 201));
        assert!(parse_axis("phi1:0:6.28").is_err());
        assert!(parse_axis("phi9:0:6.28:11").is_err());
        assert!(parse_axis("phi1:0:6.28:1").is_err()); // count < 2
        assert!(parse_axis("phi1:1:0:5").is_err()); // start >= stop
    }
}
