//! Run configuration: a sectioned `key = value` text format.
//!
//! ```text
//! [potential]
//! V0 = 2
//! A = 1
//! B = 1
//! delta = 0.05
//! H = 0
//! M = 4.76
//!
//! [symmetry]
//! kind = spin
//! constant = 5
//!
//! [states]
//! list = default
//!
//! [sweep]
//! delta_start = 0
//! delta_end = 0.3
//! delta_step = 0.01
//!
//! [scan]
//! v0_start = 0
//! v0_end = 20
//! v0_step = 0.5
//! c_start = -20
//! c_end = 20
//! c_step = 0.5
//!
//! [output]
//! dir = out
//! format = csv
//! oracle = on
//! ```
//!
//! `#` starts a comment. Every key is optional; missing keys keep the preset value.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::potentials::{PotentialParams, Symmetry, SymmetryLimit};
use crate::spectra::QuantumNumbers;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("config line {line}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// Inclusive arithmetic grid `start, start + step, ..., end`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn new(start: f64, end: f64, step: f64) -> Self {
        Self { start, end, step }
    }

    pub fn points(&self) -> Vec<f64> {
        if !(self.step > 0.0) || self.end < self.start {
            return Vec::new();
        }
        let count = ((self.end - self.start) / self.step + 1e-9).floor() as usize;
        (0..=count).map(|i| self.start + i as f64 * self.step).collect()
    }

    fn check(&self, name: &str) -> Result<(), String> {
        if !(self.step > 0.0) {
            return Err(format!("{name}_step must be positive"));
        }
        if self.end < self.start {
            return Err(format!("{name}_end must not be below {name}_start"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub params: PotentialParams,
    pub symmetry: SymmetryLimit,
    /// `None` selects the command's default state list.
    pub states: Option<Vec<QuantumNumbers>>,
    pub delta_grid: GridSpec,
    pub v0_grid: GridSpec,
    pub c_grid: GridSpec,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
    pub oracle: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self::paper_benchmark(Symmetry::Spin, 0.0)
    }
}

impl RunConfig {
    pub fn paper_benchmark(kind: Symmetry, h: f64) -> Self {
        Self {
            params: PotentialParams::benchmark(h),
            symmetry: SymmetryLimit::benchmark(kind),
            states: None,
            delta_grid: GridSpec::new(0.0, 0.3, 0.01),
            v0_grid: GridSpec::new(0.0, 20.0, 0.5),
            c_grid: GridSpec::new(-20.0, 20.0, 0.5),
            out_dir: PathBuf::from("out"),
            format: OutputFormat::Csv,
            oracle: true,
        }
    }

    /// Switches the symmetry kind; the constant follows the benchmark sign convention.
    pub fn set_kind(&mut self, kind: Symmetry) {
        if self.symmetry.kind != kind {
            self.symmetry = SymmetryLimit::benchmark(kind);
        }
    }

    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut s = String::new();
        let _ = writeln!(s, "[potential]");
        let _ = writeln!(s, "V0 = {}", p.v0);
        let _ = writeln!(s, "A = {}", p.a);
        let _ = writeln!(s, "B = {}", p.b);
        let _ = writeln!(s, "delta = {}", p.delta);
        let _ = writeln!(s, "H = {}", p.h);
        let _ = writeln!(s, "M = {}", p.mass);
        let _ = writeln!(s, "\n[symmetry]");
        let _ = writeln!(s, "kind = {}", self.symmetry.kind.name());
        let _ = writeln!(s, "constant = {}", self.symmetry.constant);
        let _ = writeln!(s, "\n[states]");
        let _ = writeln!(s, "list = {}", format_states(self.states.as_deref()));
        let _ = writeln!(s, "\n[sweep]");
        write_grid(&mut s, "delta", &self.delta_grid);
        let _ = writeln!(s, "\n[scan]");
        write_grid(&mut s, "v0", &self.v0_grid);
        write_grid(&mut s, "c", &self.c_grid);
        let _ = writeln!(s, "\n[output]");
        let _ = writeln!(s, "dir = {}", self.out_dir.display());
        let _ = writeln!(s, "format = {}", self.format.extension());
        let _ = writeln!(s, "oracle = {}", if self.oracle { "on" } else { "off" });
        s
    }

    /// Applies the keys found in `text` on top of `self`.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        let mut section = String::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| ConfigError { line: line_no, message };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| err(format!("malformed section header `{line}`")))?;
                section = name.trim().to_string();
                if !matches!(section.as_str(), "potential" | "symmetry" | "states" | "sweep" | "scan" | "output") {
                    return Err(err(format!("unknown section `[{section}]`")));
                }
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            self.apply_key(&section, key, value).map_err(err)?;
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    fn apply_key(&mut self, section: &str, key: &str, value: &str) -> Result<(), String> {
        let num = || value.parse::<f64>().map_err(|_| format!("`{key}` expects a number, got `{value}`"));
        match (section, key) {
            ("potential", "V0") => self.params.v0 = num()?,
            ("potential", "A") => self.params.a = num()?,
            ("potential", "B") => self.params.b = num()?,
            ("potential", "delta") => self.params.delta = num()?,
            ("potential", "H") => self.params.h = num()?,
            ("potential", "M") => self.params.mass = num()?,
            ("symmetry", "kind") => {
                let kind: Symmetry = value.parse().map_err(|e: crate::SolverError| e.to_string())?;
                self.symmetry.kind = kind;
            }
            ("symmetry", "constant") => self.symmetry.constant = num()?,
            ("states", "list") => self.states = parse_states(value)?,
            ("sweep", "delta_start") => self.delta_grid.start = num()?,
            ("sweep", "delta_end") => self.delta_grid.end = num()?,
            ("sweep", "delta_step") => self.delta_grid.step = num()?,
            ("scan", "v0_start") => self.v0_grid.start = num()?,
            ("scan", "v0_end") => self.v0_grid.end = num()?,
            ("scan", "v0_step") => self.v0_grid.step = num()?,
            ("scan", "c_start") => self.c_grid.start = num()?,
            ("scan", "c_end") => self.c_grid.end = num()?,
            ("scan", "c_step") => self.c_grid.step = num()?,
            ("output", "dir") => self.out_dir = PathBuf::from(value),
            ("output", "format") => {
                self.format = match value {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    _ => return Err(format!("format must be csv or json, got `{value}`")),
                }
            }
            ("output", "oracle") => self.oracle = parse_switch(value)?,
            ("", _) => return Err(format!("key `{key}` appears before any section")),
            _ => return Err(format!("unknown key `{key}` in section [{section}]")),
        }
        Ok(())
    }

    /// Checks everything a command relies on.
    pub fn validate(&self) -> Result<(), String> {
        self.params.validate().map_err(|e| e.to_string())?;
        if !self.symmetry.constant.is_finite() {
            return Err("symmetry constant must be finite".into());
        }
        self.delta_grid.check("delta")?;
        self.v0_grid.check("v0")?;
        self.c_grid.check("c")?;
        Ok(())
    }
}

fn write_grid(s: &mut String, name: &str, g: &GridSpec) {
    let _ = writeln!(s, "{name}_start = {}", g.start);
    let _ = writeln!(s, "{name}_end = {}", g.end);
    let _ = writeln!(s, "{name}_step = {}", g.step);
}

pub fn parse_switch(value: &str) -> Result<bool, String> {
    match value {
        "on" | "true" | "yes" => Ok(true),
        "off" | "false" | "no" => Ok(false),
        _ => Err(format!("expected on or off, got `{value}`")),
    }
}

/// `default` or `n,kappa; n,kappa; ...`.
pub fn parse_states(value: &str) -> Result<Option<Vec<QuantumNumbers>>, String> {
    let value = value.trim();
    if value == "default" {
        return Ok(None);
    }
    if value.is_empty() || value == "none" {
        return Ok(Some(Vec::new()));
    }
    value
        .split(';')
        .map(|item| {
            let (n, k) = item
                .trim()
                .split_once(',')
                .ok_or_else(|| format!("state `{}` must read `n,kappa`", item.trim()))?;
            let n: u32 = n.trim().parse().map_err(|_| format!("bad n in `{}`", item.trim()))?;
            let k: i32 = k.trim().parse().map_err(|_| format!("bad kappa in `{}`", item.trim()))?;
            QuantumNumbers::new(n, k).map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

pub fn format_states(states: Option<&[QuantumNumbers]>) -> String {
    match states {
        None => "default".into(),
        Some([]) => "none".into(),
        Some(list) => list
            .iter()
            .map(|q| format!("{},{}", q.n, q.kappa))
            .collect::<Vec<_>>()
            .join("; "),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn default_round_trip() {
        let cfg = RunConfig::default();
        let text = cfg.to_text();
        let back = RunConfig::parse(&text).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn comments_sections_and_errors() {
        let text = "# benchmark\n[potential]\nV0 = 3 # stronger\n\n[states]\nlist = 0,-2; 1,1\n";
        let cfg = RunConfig::parse(text).unwrap();
        assert_eq!(cfg.params.v0, 3.0);
        assert_eq!(cfg.states.as_ref().unwrap().len(), 2);
        assert_eq!(RunConfig::parse("V0 = 1").unwrap_err().line, 1);
        assert!(RunConfig::parse("[potential]\nfoo = 1").is_err());
        assert!(RunConfig::parse("[nowhere]").is_err());
        assert!(RunConfig::parse("[potential]\nV0 = abc").is_err());
        assert!(RunConfig::parse("[states]\nlist = 0,0").is_err());
    }

    #[test]
    fn zero_delta_fails_validation() {
        let cfg = RunConfig::parse("[potential]\ndelta = 0").unwrap();
        assert!(cfg.validate().unwrap_err().contains("delta"));
    }

    #[test]
    fn grid_points_are_inclusive() {
        let g = GridSpec::new(0.0, 0.3, 0.01);
        let pts = g.points();
        assert_eq!(pts.len(), 31);
        assert!((pts[30] - 0.3).abs() < 1e-12);
        assert_eq!(GridSpec::new(-20.0, 20.0, 0.5).points().len(), 81);
    }

    proptest! {
        #[test]
        fn arbitrary_configs_round_trip(
            v0 in -10.0f64..10.0, delta in 0.001f64..1.0, h in -5.0f64..5.0, c in -20.0f64..20.0,
            pseudo in any::<bool>(), json in any::<bool>(), oracle in any::<bool>(),
            states in proptest::collection::vec((0u32..6, prop_oneof![-6i32..0, 1i32..7]), 0..5),
        ) {
            let mut cfg = RunConfig::default();
            cfg.params.v0 = v0;
            cfg.params.delta = delta;
            cfg.params.h = h;
            cfg.symmetry = SymmetryLimit {
                kind: if pseudo { Symmetry::Pseudospin } else { Symmetry::Spin },
                constant: c,
            };
            cfg.format = if json { OutputFormat::Json } else { OutputFormat::Csv };
            cfg.oracle = oracle;
            cfg.states = Some(states.into_iter().map(|(n, k)| QuantumNumbers::new(n, k).unwrap()).collect());
            let text = cfg.to_text();
            let back = RunConfig::parse(&text).unwrap();
            prop_assert_eq!(&back, &cfg);
            prop_assert_eq!(back.to_text(), text);
        }
    }
}
