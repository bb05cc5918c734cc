//! `key = value` configuration files.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            _ => Err(format!("unknown format {s:?} (expected json, csv or table)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    /// Largest weight-space dimension handled by the Gram computations.
    pub dimension_budget: usize,
    /// Largest `D·ht(γ)` for Shapovalov elements.
    pub degree_budget: i64,
    /// Largest `ht(β)` for weight spaces.
    pub height_budget: i64,
    /// Singular-vector sample points per element.
    pub samples: usize,
    /// Height bound of the factor-formula check.
    pub factor_height: i64,
    /// `t` bound of the level-one brute-force search; `0` means `4p²`.
    pub t_bound: usize,
    pub search_height: i64,
    pub search_n: i64,
    pub search_m: i64,
    pub depth: usize,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    pub primes: Vec<i64>,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            dimension_budget: weyllab_core::verma::DEFAULT_DIMENSION_BUDGET,
            degree_budget: weyllab_core::shapovalov::DEFAULT_BUDGET,
            height_budget: weyllab_core::verma::DEFAULT_HEIGHT_BUDGET,
            samples: 20,
            factor_height: 8,
            t_bound: 0,
            search_height: 20,
            search_n: 50,
            search_m: 20,
            depth: 4,
            cache_dir: None,
            format: Format::Table,
            primes: vec![2, 3, 5, 7, 11, 13],
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config line {}: {}", self.line, self.message)
    }
}

fn positive<T: FromStr + PartialOrd + Default>(v: &str) -> Result<T, String> {
    let x: T = v.parse().map_err(|_| format!("{v:?} is not a number"))?;
    if x <= T::default() {
        return Err(format!("{v:?} must be positive"));
    }
    Ok(x)
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let mut c = Config::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| ConfigError { line: idx + 1, message };
            let (key, value) =
                line.split_once('=').ok_or_else(|| err(format!("expected key = value, got {line:?}")))?;
            c.set(key.trim(), value.trim()).map_err(err)?;
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError { line: 0, message: format!("cannot read {}: {e}", path.display()) })?;
        Config::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "dimension_budget" => self.dimension_budget = positive(value)?,
            "degree_budget" => self.degree_budget = positive(value)?,
            "height_budget" => self.height_budget = positive(value)?,
            "samples" => self.samples = positive(value)?,
            "factor_height" => self.factor_height = positive(value)?,
            "t_bound" => self.t_bound = value.parse().map_err(|_| format!("{value:?} is not a number"))?,
            "search_height" => self.search_height = positive(value)?,
            "search_n" => self.search_n = positive(value)?,
            "search_m" => self.search_m = positive(value)?,
            "depth" => self.depth = positive(value)?,
            "cache_dir" => self.cache_dir = Some(PathBuf::from(value)),
            "format" => self.format = value.parse()?,
            "primes" => {
                let primes = value
                    .split(',')
                    .map(|s| s.trim().parse::<i64>().map_err(|_| format!("bad prime {s:?}")))
                    .collect::<Result<Vec<_>, _>>()?;
                if let Some(q) = primes.iter().find(|&&q| !weyllab_core::arith::is_prime(q)) {
                    return Err(format!("{q} is not prime"));
                }
                if primes.is_empty() {
                    return Err("empty prime list".into());
                }
                self.primes = primes;
            }
            "seed" => self.seed = value.parse().map_err(|_| format!("{value:?} is not a number"))?,
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    pub fn t_bound_for(&self, p: i64) -> usize {
        if self.t_bound == 0 {
            weyllab_core::scanner::default_t_bound(p)
        } else {
            self.t_bound
        }
    }

    pub fn search_bounds(&self) -> weyllab_core::weylgroup::SearchBounds {
        weyllab_core::weylgroup::SearchBounds {
            max_height: self.search_height,
            max_n: self.search_n,
            max_m: self.search_m,
            depth: self.depth,
        }
    }
}
