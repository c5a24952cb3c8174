use std::fmt;
use std::str::FromStr;

use mbkit_core::identities::CheckConfig;
use mbkit_core::Complex64;
use serde::Serialize;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_HEIGHT: f64 = 200.0;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 100;
pub const MIN_TOLERANCE: f64 = 1e-14;
pub const MAX_TOLERANCE: f64 = 1e-2;
pub const MAX_SAMPLES: usize = 1_000_000;

/// Process exit codes. No others are ever returned.
pub mod exit {
    pub const OK: i32 = 0;
    pub const DOMAIN: i32 = 2;
    pub const NUMERICAL: i32 = 3;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format '{other}' (expected json or csv)")),
        }
    }
}

/// Settings shared by every command.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunConfig {
    pub tolerance: f64,
    pub max_height: f64,
    pub seed: u64,
    pub samples: usize,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tolerance: DEFAULT_TOLERANCE,
            max_height: DEFAULT_MAX_HEIGHT,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            format: OutputFormat::Json,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(MIN_TOLERANCE..=MAX_TOLERANCE).contains(&self.tolerance) {
            return Err(ConfigError(format!(
                "tolerance {} outside [{MIN_TOLERANCE:e}, {MAX_TOLERANCE:e}]",
                self.tolerance
            )));
        }
        if self.samples > MAX_SAMPLES {
            return Err(ConfigError(format!(
                "samples {} exceeds {MAX_SAMPLES}",
                self.samples
            )));
        }
        if !(self.max_height.is_finite() && self.max_height > 0.0) {
            return Err(ConfigError(format!(
                "max height {} must be positive",
                self.max_height
            )));
        }
        Ok(())
    }

    pub fn check_config(&self) -> CheckConfig {
        CheckConfig {
            tol: self.tolerance,
            max_height: self.max_height,
        }
    }
}

/// Parses `0.3`, `0.3+0.2i`, `-1e-3-2i` or `0.5i`. Whitespace is rejected so
/// every value is a single shell token.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    if s.is_empty() || s.chars().any(char::is_whitespace) {
        return Err(format!("invalid complex number '{s}'"));
    }
    if s.contains('j') {
        return Err(format!("invalid complex number '{s}' (use an 'i' suffix)"));
    }
    let z = Complex64::from_str(s).map_err(|_| format!("invalid complex number '{s}'"))?;
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(format!("complex number '{s}' is not finite"));
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_formats() {
        assert_eq!(parse_complex("0.3+0.2i"), Ok(Complex64::new(0.3, 0.2)));
        assert_eq!(parse_complex("0.3-0.2i"), Ok(Complex64::new(0.3, -0.2)));
        assert_eq!(parse_complex("-1.5"), Ok(Complex64::new(-1.5, 0.0)));
        assert_eq!(parse_complex("2i"), Ok(Complex64::new(0.0, 2.0)));
        assert_eq!(parse_complex("1e-3+2e-1i"), Ok(Complex64::new(1e-3, 0.2)));
        assert!(parse_complex("0.3 + 0.2i").is_err());
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
        assert!(parse_complex("1+2j").is_err());
        assert!(parse_complex("inf").is_err());
    }

    #[test]
    fn config_bounds() {
        let mut c = RunConfig::default();
        assert!(c.validate().is_ok());
        c.tolerance = 1e-15;
        assert!(c.validate().is_err());
        c.tolerance = 1e-2;
        assert!(c.validate().is_ok());
        c.samples = MAX_SAMPLES + 1;
        assert!(c.validate().is_err());
    }
}
