//! Runtime configuration with key=value files and command-line overrides.
//!
//! Precedence, lowest to highest: built-in defaults, the optional
//! configuration file, the `TREELIE_CACHE` environment variable for the
//! cache directory, explicit command-line flags.
//!
//! Recognised file keys are `genus`, `support`, `max-degree`,
//! `gluing-sign`, `wedge-sign` and `cache-dir`. The two sign keys record
//! conventions that are fixed in this build; any value other than `+1`
//! is rejected so that reports can never claim a convention the code
//! does not implement.

use crate::parse::parse_support;
use crate::{Error, Result};
use std::path::PathBuf;

/// Default seed for the randomised property suites.
pub const DEFAULT_SEED: u64 = 0x0074_7265_656c_6965;

/// How much work the verification suites perform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Replay the displayed identities only.
    Fast,
    /// Also build the lattice spans behind the membership claims.
    Full,
}

impl Mode {
    pub fn parse(text: &str) -> Result<Mode> {
        match text {
            "fast" => Ok(Mode::Fast),
            "full" => Ok(Mode::Full),
            other => Err(Error::Usage(format!("unknown mode {other:?}, expected fast or full"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Fast => "fast",
            Mode::Full => "full",
        }
    }
}

/// Resolved settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Config {
    /// Genus of the underlying surface; labels must have index <= genus.
    pub genus: u32,
    /// Indices generators and enumerations range over.
    pub support: Vec<u32>,
    /// Largest tree degree evaluation will produce.
    pub max_degree: usize,
    /// Sign attached to each leaf gluing in the bracket, fixed to +1.
    pub gluing_sign: i32,
    /// Sign of the tripod-to-wedge identification, fixed to +1.
    pub wedge_sign: i32,
    /// Directory for persisted lattice spans, `None` disables caching.
    pub cache_dir: Option<PathBuf>,
    /// Seed for the randomised property suites.
    pub seed: u64,
    /// Worker threads for claim execution, 0 keeps the pool default.
    pub jobs: usize,
    /// Suite mode.
    pub mode: Mode,
    /// Optional wall-clock budget in seconds for suite runs.
    pub budget: Option<u64>,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            genus: 6,
            support: (1..=6).collect(),
            max_degree: 8,
            gluing_sign: 1,
            wedge_sign: 1,
            cache_dir: None,
            seed: DEFAULT_SEED,
            jobs: 0,
            mode: Mode::Fast,
            budget: None,
        }
    }
}

impl Config {
    /// Applies one key=value assignment from a file or flag.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "genus" => {
                self.genus = value
                    .parse::<u32>()
                    .map_err(|_| Error::Usage(format!("bad genus {value:?}")))?;
            }
            "support" => {
                self.support = parse_support(value)?;
            }
            "max-degree" => {
                self.max_degree = value
                    .parse::<usize>()
                    .map_err(|_| Error::Usage(format!("bad max-degree {value:?}")))?;
            }
            "gluing-sign" => {
                self.gluing_sign = convention_sign("gluing-sign", value)?;
            }
            "wedge-sign" => {
                self.wedge_sign = convention_sign("wedge-sign", value)?;
            }
            "cache-dir" => {
                self.cache_dir = Some(PathBuf::from(value));
            }
            other => {
                return Err(Error::Usage(format!("unknown configuration key {other:?}")));
            }
        }
        Ok(())
    }

    /// Applies every assignment in a key=value file.
    pub fn apply_file(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Usage(format!("configuration line {} is not key=value", lineno + 1))
            })?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    /// Reads the `TREELIE_CACHE` override for the cache directory.
    pub fn apply_env(&mut self) {
        if let Ok(dir) = std::env::var("TREELIE_CACHE") {
            if !dir.is_empty() {
                self.cache_dir = Some(PathBuf::from(dir));
            }
        }
    }

    /// Checks cross-field consistency after all overrides.
    pub fn validate(&self) -> Result<()> {
        if self.genus == 0 {
            return Err(Error::Domain("genus must be at least 1".into()));
        }
        if self.support.is_empty() {
            return Err(Error::Domain("empty support".into()));
        }
        if let Some(&hi) = self.support.iter().max() {
            if hi > self.genus {
                return Err(Error::Domain(format!(
                    "support index {hi} exceeds genus {}",
                    self.genus
                )));
            }
        }
        if self.max_degree == 0 {
            return Err(Error::Domain("max-degree must be at least 1".into()));
        }
        Ok(())
    }
}

fn convention_sign(key: &str, value: &str) -> Result<i32> {
    match value {
        "1" | "+1" => Ok(1),
        "-1" => Err(Error::Domain(format!("the {key} convention is fixed to +1 in this build"))),
        other => Err(Error::Usage(format!("bad {key} value {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_cover_the_standard_support() {
        let c = Config::default();
        assert_eq!(c.genus, 6);
        assert_eq!(c.support, vec![1, 2, 3, 4, 5, 6]);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn file_assignments_override_defaults() {
        let mut c = Config::default();
        c.apply_file("# comment\n\ngenus = 4\nsupport = 1..4\nmax-degree=5\n").unwrap();
        assert_eq!(c.genus, 4);
        assert_eq!(c.support, vec![1, 2, 3, 4]);
        assert_eq!(c.max_degree, 5);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn support_outside_genus_is_rejected() {
        let mut c = Config::default();
        c.set("genus", "3").unwrap();
        assert!(matches!(c.validate(), Err(Error::Domain(_))));
    }

    #[test]
    fn convention_signs_are_frozen() {
        let mut c = Config::default();
        c.set("gluing-sign", "+1").unwrap();
        c.set("wedge-sign", "1").unwrap();
        assert!(matches!(c.set("gluing-sign", "-1"), Err(Error::Domain(_))));
        assert!(matches!(c.set("wedge-sign", "2"), Err(Error::Usage(_))));
    }

    #[test]
    fn unknown_keys_and_malformed_lines_error() {
        let mut c = Config::default();
        assert!(matches!(c.set("colour", "red"), Err(Error::Usage(_))));
        assert!(matches!(c.apply_file("genus 4\n"), Err(Error::Usage(_))));
    }
}
