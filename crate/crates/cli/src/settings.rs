//! Option defaults, the optional `key = value` config file, and parsing of
//! numeric option values. Precedence: flag, then config file, then the
//! table below.

use std::collections::BTreeMap;
use std::path::Path;

use clamped_plate_core::exact_algebra::{parse_rat, Rat};

use crate::CliError;

/// Every default in one place: `(key, value, meaning)`.
pub const DEFAULTS: &[(&str, &str, &str)] = &[
    ("prec", "128", "starting working precision in bits (doubled at most four times)"),
    ("target", "1e-30", "absolute error target for eval"),
    ("width", "2^-64", "width of certified zero enclosures"),
    ("grid", "0.01", "zero-scan grid step"),
    ("order", "80", "series truncation order"),
    ("max", "12", "largest index for four-form scans and eigenvalue tables"),
    ("xmax", "50", "upper end of the zero scan"),
    ("digits", "24", "decimal places in rendered tables"),
    ("samples", "100", "radial profile sample count"),
    ("threshold", "0.01", "collision scan reporting threshold"),
    ("count", "1000", "number of random residual checks"),
    ("seed", "1", "seed for random residual checks"),
    ("residual", "1e-25", "bound on every random residual enclosure"),
    ("boundary-tol", "1e-18", "bound on the u'(1) enclosure radius, relative to w"),
];

pub fn default_of(key: &str) -> &'static str {
    DEFAULTS
        .iter()
        .find(|(k, _, _)| *k == key)
        .map(|(_, v, _)| *v)
        .unwrap_or_else(|| panic!("no default for {key}"))
}

#[derive(Debug, Clone, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
}

/// Keys accepted in a config file besides the defaults table.
const EXTRA_KEYS: &[&str] = &["format", "jobs", "cache-dir"];

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(CliError::Usage(format!("config line {}: expected key = value", n + 1)));
            };
            let k = k.trim();
            if !DEFAULTS.iter().any(|(d, _, _)| *d == k) && !EXTRA_KEYS.contains(&k) {
                return Err(CliError::Usage(format!("config line {}: unknown key {k}", n + 1)));
            }
            values.insert(k.to_string(), v.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn text(&self, key: &str) -> String {
        self.raw(key).unwrap_or_else(|| default_of(key)).to_string()
    }

    pub fn rat(&self, flag: Option<&str>, key: &str) -> Result<Rat, CliError> {
        let s = flag.map(str::to_string).unwrap_or_else(|| self.text(key));
        parse_number(&s).map_err(|e| CliError::Usage(format!("--{key}: {e}")))
    }

    pub fn u32(&self, flag: Option<u32>, key: &str) -> Result<u32, CliError> {
        match flag {
            Some(v) => Ok(v),
            None => self
                .text(key)
                .parse()
                .map_err(|_| CliError::Usage(format!("--{key}: expected a nonnegative integer"))),
        }
    }

    pub fn u64(&self, flag: Option<u64>, key: &str) -> Result<u64, CliError> {
        match flag {
            Some(v) => Ok(v),
            None => self
                .text(key)
                .parse()
                .map_err(|_| CliError::Usage(format!("--{key}: expected a nonnegative integer"))),
        }
    }
}

/// Exact rational from `p/q`, a decimal, scientific notation, or `2^-k`.
pub fn parse_number(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Some(e) = s.strip_prefix("2^") {
        let k: i32 = e.parse().map_err(|_| format!("bad exponent in {s}"))?;
        return Ok(pow2(k));
    }
    parse_rat(s).ok_or_else(|| format!("not a number: {s}"))
}

/// Inclusive range `a..b`, or a single value.
pub fn parse_range(s: &str) -> Result<Vec<u32>, String> {
    let bad = || format!("expected N or A..B, got {s}");
    match s.split_once("..") {
        Some((a, b)) => {
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![s.trim().parse().map_err(|_| bad())?]),
    }
}

fn pow2(k: i32) -> Rat {
    let p = (0..k.unsigned_abs()).fold(Rat::from_integer(1.into()), |acc, _| acc * Rat::from_integer(2.into()));
    if k >= 0 {
        p
    } else {
        p.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clamped_plate_core::exact_algebra::rat;

    #[test]
    fn numbers() {
        assert_eq!(parse_number("0.01").unwrap(), rat(1, 100));
        assert_eq!(parse_number("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_number("2^-3").unwrap(), rat(1, 8));
        assert_eq!(parse_number("3/4").unwrap(), rat(3, 4));
        assert!(parse_number("abc").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0..3").unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(parse_range("7").unwrap(), vec![7]);
        assert!(parse_range("4..2").is_err());
    }

    #[test]
    fn config_precedence() {
        let c = Config::parse("# comment\nprec = 256\nwidth=1e-10\n").unwrap();
        assert_eq!(c.u32(None, "prec").unwrap(), 256);
        assert_eq!(c.u32(Some(64), "prec").unwrap(), 64);
        assert_eq!(c.u32(None, "order").unwrap(), 80);
        assert_eq!(c.rat(None, "width").unwrap(), rat(1, 10_000_000_000));
        assert!(Config::parse("bogus = 1").is_err());
        assert!(Config::parse("no equals sign").is_err());
    }

    #[test]
    fn every_default_parses() {
        let c = Config::default();
        for (k, v, _) in DEFAULTS {
            assert!(parse_number(v).is_ok() || v.parse::<u64>().is_ok(), "{k}");
            let _ = c.text(k);
        }
    }
}
