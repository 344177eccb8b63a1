//! Run configuration: defaults, named presets, JSON files and exact
//! decimal parsing of tolerances.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::asymptotics::Family;
use crate::recurrence::{RecurrenceParams, WeightedSelector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    General,
    Block,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Everything a subcommand needs. Missing JSON fields take the defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub a: i64,
    pub b: i64,
    pub p: i64,
    pub q: i64,
    pub m: u64,
    pub s: Vec<u64>,
    pub l: Vec<i64>,
    pub alternating: bool,
    pub family: FamilyKind,
    pub n_start: u64,
    pub n_end: u64,
    pub eps: String,
    pub output: OutputFormat,
    pub n: Option<u64>,
    pub display_digits: u32,
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            a: 0,
            b: 1,
            p: 1,
            q: 1,
            m: 1,
            s: vec![1],
            l: vec![0],
            alternating: false,
            family: FamilyKind::General,
            n_start: 2,
            n_end: 25,
            eps: "1e-30".into(),
            output: OutputFormat::Csv,
            n: None,
            display_digits: 30,
            threads: 1,
        }
    }
}

/// A configuration problem; maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    pub fn params(&self) -> Result<RecurrenceParams, ConfigError> {
        RecurrenceParams::new(self.a, self.b, self.p, self.q).map_err(|e| ConfigError(e.to_string()))
    }

    pub fn selector(&self) -> Result<WeightedSelector, ConfigError> {
        WeightedSelector::new(self.m, self.s.iter().copied(), self.l.iter().copied())
            .map_err(|e| ConfigError(e.to_string()))
    }

    pub fn eps(&self) -> Result<BigRational, ConfigError> {
        let eps = parse_rational(&self.eps)?;
        if !eps.is_positive() {
            return Err(ConfigError(format!("eps must be > 0, got {:?}", self.eps)));
        }
        Ok(eps)
    }

    pub fn estimate_family(&self) -> Family {
        Family::from_parts(self.alternating, self.family == FamilyKind::Block)
    }

    pub fn range(&self) -> Result<(u64, u64), ConfigError> {
        if self.n_start > self.n_end {
            return Err(ConfigError(format!(
                "n_start <= n_end required, got {} > {}",
                self.n_start, self.n_end
            )));
        }
        Ok((self.n_start, self.n_end))
    }

    pub fn point(&self) -> Result<u64, ConfigError> {
        self.n
            .ok_or_else(|| ConfigError("this command needs --n".into()))
    }

    pub fn apply_preset(&mut self, preset: &Preset) {
        (self.a, self.b, self.p, self.q) = preset.params;
        self.m = preset.m;
        self.s = preset.s.to_vec();
        self.l = preset.l.to_vec();
        self.family = preset.family;
    }
}

/// A named parameter bundle reproducing a classical special case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Preset {
    pub name: &'static str,
    pub params: (i64, i64, i64, i64),
    pub m: u64,
    pub s: &'static [u64],
    pub l: &'static [i64],
    pub family: FamilyKind,
    pub note: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fibonacci",
        params: (0, 1, 1, 1),
        m: 1,
        s: &[1],
        l: &[0],
        family: FamilyKind::General,
        note: "1/F_k; estimate F_n - F_{n-1} = F_{n-2}",
    },
    Preset {
        name: "pell",
        params: (0, 1, 2, 1),
        m: 1,
        s: &[1],
        l: &[0],
        family: FamilyKind::General,
        note: "1/P_k for Pell numbers",
    },
    Preset {
        name: "geometric",
        params: (1, 2, 2, 0),
        m: 1,
        s: &[1],
        l: &[0],
        family: FamilyKind::General,
        note: "W_n = 2^n, beta = 0: estimate is exact",
    },
    Preset {
        name: "lee-thm11",
        params: (0, 1, 1, 1),
        m: 1,
        s: &[1],
        l: &[0],
        family: FamilyKind::General,
        note: "sum 1/F_k ~ F_{n-2}",
    },
    Preset {
        name: "lee-thm13",
        params: (0, 1, 1, 1),
        m: 3,
        s: &[1],
        l: &[-1],
        family: FamilyKind::General,
        note: "sum 1/F_{mk-l} with m = 3, l = 1",
    },
    Preset {
        name: "yuan-thm21",
        params: (0, 1, 3, -1),
        m: 2,
        s: &[1],
        l: &[1],
        family: FamilyKind::General,
        note: "W(0,1,A,B) with A = 3, B = -1, single offset",
    },
    Preset {
        name: "yuan-thm25",
        params: (0, 1, 2, 1),
        m: 2,
        s: &[1, 1],
        l: &[0, 2],
        family: FamilyKind::General,
        note: "W_{mk} + W_{mk+d} with A = 2, B = 1, d = 2",
    },
    Preset {
        name: "yuan-thm26",
        params: (0, 1, 1, 1),
        m: 2,
        s: &[1, 1, 1],
        l: &[0, 1, 2],
        family: FamilyKind::Block,
        note: "W_{mk} + .. + W_{mk+t} with t = 2, quadratic estimate",
    },
];

pub fn preset(name: &str) -> Result<&'static Preset, ConfigError> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
        let known: Vec<_> = PRESETS.iter().map(|p| p.name).collect();
        ConfigError(format!("unknown preset {name:?}; known: {}", known.join(", ")))
    })
}

/// Parses `"1e-20"`, `"0.001"`, `"-2.5E3"`, `"7"` or `"3/4"` exactly.
pub fn parse_rational(text: &str) -> Result<BigRational, ConfigError> {
    let bad = || ConfigError(format!("not a decimal or rational number: {text:?}"));
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (text, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let all_digits = |s: &str| s.chars().all(|c| c.is_ascii_digit());
    if (int_part.is_empty() && frac_part.is_empty()) || !all_digits(int_part) || !all_digits(frac_part) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(BigInt::from_str(&digits).map_err(|_| bad())?);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, shift.unsigned_abs() as usize);
    }
    Ok(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(
            parse_rational("1e-20").unwrap(),
            BigRational::new(1.into(), BigInt::from(10).pow(20))
        );
        assert_eq!(parse_rational("0.001").unwrap(), q(1, 1000));
        assert_eq!(parse_rational("-2.5E3").unwrap(), q(-2500, 1));
        assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("12").unwrap(), q(12, 1));
        for bad in ["", "e5", "1e", "abc", "1/0", "1.2.3", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn presets_are_valid() {
        for p in PRESETS {
            let mut c = RunConfig::default();
            c.apply_preset(p);
            let params = c.params().unwrap();
            let sel = c.selector().unwrap();
            assert!(crate::quadratic::validity_check(&params, &sel).overall, "{}", p.name);
            if p.family == FamilyKind::Block {
                assert!(sel.block_length().is_some());
            }
        }
        assert!(preset("nope").is_err());
    }

    #[test]
    fn partial_json_uses_defaults() {
        let c: RunConfig = serde_json::from_str(r#"{"p": 2, "eps": "1e-5"}"#).unwrap();
        assert_eq!(c.p, 2);
        assert_eq!(c.a, 0);
        assert_eq!(c.eps().unwrap(), q(1, 100_000));
        assert!(serde_json::from_str::<RunConfig>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn config_validation() {
        let c = RunConfig { p: 0, ..RunConfig::default() };
        assert!(c.params().unwrap_err().0.contains("p >= 1"));
        let c = RunConfig { eps: "0".into(), ..RunConfig::default() };
        assert!(c.eps().is_err());
        let c = RunConfig { n_start: 9, n_end: 3, ..RunConfig::default() };
        assert!(c.range().is_err());
    }
}
