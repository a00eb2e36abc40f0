//! Enumeration caps, optionally loaded from a `key=value` file.
//!
//! ```text
//! # comments and blank lines are ignored
//! table_entries = 65536
//! truth_table_width = 10
//! sat_variables = 24
//! ```

use crate::error::{Error, Result};

/// Upper bounds on the exhaustive enumerations performed by the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of cells in a Cayley table (`order * order`).
    pub table_entries: u64,
    /// Maximum register width `n` for truth tables of `g` (2^(2n) rows).
    pub truth_table_width: u32,
    /// Maximum variable count accepted by the brute-force SAT oracle.
    pub sat_variables: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            table_entries: 1 << 16,
            truth_table_width: 10,
            sat_variables: 24,
        }
    }
}

impl Caps {
    /// Parses `key=value` lines on top of the defaults. Unknown keys are rejected.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let mut caps = Caps::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("line {}: expected key=value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |_| Error::parse(format!("line {}: invalid value {value:?} for {key}", lineno + 1));
            match key {
                "table_entries" => caps.table_entries = value.parse().map_err(bad)?,
                "truth_table_width" => caps.truth_table_width = value.parse().map_err(bad)?,
                "sat_variables" => caps.sat_variables = value.parse().map_err(bad)?,
                other => {
                    return Err(Error::parse(format!("line {}: unknown key {other:?}", lineno + 1)))
                }
            }
        }
        if caps.truth_table_width == 0 || caps.truth_table_width > 16 {
            return Err(Error::parse("truth_table_width must be in 1..=16"));
        }
        if caps.sat_variables > 32 {
            return Err(Error::parse("sat_variables must be at most 32"));
        }
        Ok(caps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_overrides_and_comments() {
        let caps = Caps::from_config_str("# caps\n table_entries = 256\n\nsat_variables=10 # small\n").unwrap();
        assert_eq!(caps.table_entries, 256);
        assert_eq!(caps.sat_variables, 10);
        assert_eq!(caps.truth_table_width, 10);
    }

    #[test]
    fn rejects_unknown_keys_and_garbage() {
        assert!(matches!(Caps::from_config_str("colour=1"), Err(Error::Parse(_))));
        assert!(matches!(Caps::from_config_str("table_entries"), Err(Error::Parse(_))));
        assert!(matches!(Caps::from_config_str("sat_variables=-3"), Err(Error::Parse(_))));
        assert!(Caps::from_config_str("truth_table_width=0").is_err());
    }
}
