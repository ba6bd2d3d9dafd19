//! Optional `key = value` configuration file. Blank lines and lines
//! starting with `#` are ignored; command-line flags take precedence.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

pub const KEYS: [&str; 14] = [
    "prec",
    "order",
    "out",
    "preset",
    "form",
    "mod",
    "mode",
    "count",
    "horizon",
    "min_repeats",
    "kappa",
    "point",
    "n",
    "recognize",
];

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        text.parse()
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// `flag`, else the file's value for `key`, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError> {
        Ok(self.pick_opt(flag, key)?.unwrap_or(default))
    }

    pub fn pick_opt<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.get(key) {
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("config: invalid value {v:?} for {key}"))),
            None => Ok(None),
        }
    }
}

impl FromStr for ConfigFile {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected key = value", i + 1))
            })?;
            let k = k.trim().replace('-', "_");
            if !KEYS.contains(&k.as_str()) {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key {k:?}",
                    i + 1
                )));
            }
            entries.insert(k, v.trim().to_string());
        }
        Ok(Self { entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_precedence() {
        let c: ConfigFile = "# run\nprec = 64\n\npreset=romik\nmin-repeats = 4\n"
            .parse()
            .unwrap();
        assert_eq!(c.pick(None, "prec", 128u32).unwrap(), 64);
        assert_eq!(c.pick(Some(30u32), "prec", 128).unwrap(), 30);
        assert_eq!(c.pick(None, "count", 12usize).unwrap(), 12);
        assert_eq!(c.pick(None, "min_repeats", 3usize).unwrap(), 4);
        assert_eq!(c.get("preset"), Some("romik"));
    }

    #[test]
    fn rejects_bad_lines() {
        assert!("prec 64".parse::<ConfigFile>().is_err());
        assert!("colour = red".parse::<ConfigFile>().is_err());
        let c: ConfigFile = "prec = many".parse().unwrap();
        assert!(c.pick::<u32>(None, "prec", 1).is_err());
    }
}
