use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::report::Format;
use crate::counterpoint::PolarityVariant;
use crate::error::{Error, Result};

/// Environment variables with this prefix override file settings, e.g.
/// `MUSYM_POLARITY_VARIANT=global`.
pub const ENV_PREFIX: &str = "MUSYM_";

pub const KEYS: [&str; 2] = ["polarity_variant", "default_format"];

/// Settings read from a `key = value` file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Config {
    pub polarity_variant: PolarityVariant,
    pub default_format: Format,
}

impl Config {
    /// Blank lines and `#` comments are ignored; unknown keys are errors.
    pub fn parse(text: &str) -> Result<Config> {
        let mut config = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Input {
                line: i + 1,
                column: 1,
                message: "expected key = value".into(),
            })?;
            config.set(key.trim(), value.trim()).map_err(|e| Error::Input {
                line: i + 1,
                column: raw.find(key.trim()).unwrap_or(0) + 1,
                message: e.to_string(),
            })?;
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Config::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "polarity_variant" => self.polarity_variant = value.parse()?,
            "default_format" => self.default_format = value.parse()?,
            _ => {
                return Err(Error::Other(format!(
                    "unknown config key {key:?} (expected one of {})",
                    KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    /// Applies `MUSYM_<KEY>` entries from `vars`; other variables are ignored.
    pub fn apply_overrides<I, K, V>(&mut self, vars: I) -> Result<()>
    where
        I: IntoIterator<Item = (K, V)>,
        K: AsRef<str>,
        V: AsRef<str>,
    {
        for (name, value) in vars {
            if let Some(key) = name.as_ref().strip_prefix(ENV_PREFIX) {
                let key = key.to_ascii_lowercase();
                if KEYS.contains(&key.as_str()) {
                    self.set(&key, value.as_ref().trim())?;
                }
            }
        }
        Ok(())
    }

    pub fn apply_env(&mut self) -> Result<()> {
        self.apply_overrides(std::env::vars())
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "polarity_variant = {}", self.polarity_variant)?;
        writeln!(f, "default_format = {}", self.default_format)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = Config::default();
        assert_eq!(c.polarity_variant, PolarityVariant::CantusFrame);
        assert_eq!(c.default_format, Format::Md);
    }

    #[test]
    fn parse_and_print() {
        let c = Config::parse("# local\npolarity_variant = global\n\ndefault_format=json # inline\n").unwrap();
        assert_eq!(c.polarity_variant, PolarityVariant::Global);
        assert_eq!(c.default_format, Format::Json);
        assert_eq!(Config::parse(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn bad_lines_report_position() {
        let err = Config::parse("default_format = md\ncolour = blue\n").unwrap_err();
        assert!(matches!(err, Error::Input { line: 2, .. }));
        assert!(Config::parse("polarity_variant\n").is_err());
        assert!(Config::parse("polarity_variant = sideways\n").is_err());
    }

    #[test]
    fn environment_overrides() {
        let mut c = Config::default();
        c.apply_overrides([
            ("MUSYM_POLARITY_VARIANT", "localized"),
            ("MUSYM_DEFAULT_FORMAT", "csv"),
            ("HOME", "/root"),
            ("MUSYM_UNRELATED", "x"),
        ])
        .unwrap();
        assert_eq!(c.polarity_variant, PolarityVariant::Localized);
        assert_eq!(c.default_format, Format::Csv);
        assert!(c.apply_overrides([("MUSYM_DEFAULT_FORMAT", "pdf")]).is_err());
    }
}
