use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "ZETA_LADDER_CACHE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    Thm1,
    Thm2,
    Thm3,
    Baselines,
    Selfcheck,
}

impl Experiment {
    pub fn id(self) -> &'static str {
        match self {
            Experiment::Thm1 => "thm1",
            Experiment::Thm2 => "thm2",
            Experiment::Thm3 => "thm3",
            Experiment::Baselines => "baselines",
            Experiment::Selfcheck => "selfcheck",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// A `key=lo:hi` band override.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandOverride {
    pub key: String,
    pub lo: f64,
    pub hi: f64,
}

fn parse_band(s: &str) -> Result<BandOverride, String> {
    let (key, range) = s.split_once('=').ok_or("expected key=lo:hi")?;
    let (lo, hi) = range.split_once(':').ok_or("expected key=lo:hi")?;
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
    if !(lo <= hi) {
        return Err(format!("empty band {lo}:{hi}"));
    }
    Ok(BandOverride {
        key: key.trim().to_string(),
        lo,
        hi,
    })
}

fn parse_height(s: &str) -> Result<f64, String> {
    let t: f64 = s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?;
    if !(1e4..=1e9).contains(&t) {
        return Err(format!("T = {t} outside [1e4, 1e9]"));
    }
    Ok(t)
}

fn parse_shift(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?;
    // tolerate the usual 1.5708 spelling of pi/2
    if x > 0.0 && x <= FRAC_PI_2 + 1e-4 {
        Ok(x.min(FRAC_PI_2))
    } else {
        Err(format!("{x} outside (0, pi/2]"))
    }
}

/// Jacob's-ladder correlation experiments for Hardy's Z.
#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "zeta-ladder", version)]
pub struct Args {
    /// Experiments to run, comma separated.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "selfcheck")]
    pub experiment: Vec<Experiment>,

    /// Base height T in [1e4, 1e9].
    #[arg(long = "T", value_parser = parse_height)]
    pub t: f64,

    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,

    /// Shift x in (0, pi/2].
    #[arg(long, value_parser = parse_shift, default_value_t = FRAC_PI_2)]
    pub x: f64,

    /// Shift y in (0, pi/2]; defaults to x.
    #[arg(long, value_parser = parse_shift)]
    pub y: Option<f64>,

    /// Shifts for the baseline rows and the asymmetry check.
    #[arg(long = "x-grid", value_parser = parse_shift, value_delimiter = ',', default_value = "0.5,1.0,1.5707963267948966")]
    pub x_grid: Vec<f64>,

    /// Riemann-Siegel correction order (0..=5).
    #[arg(long)]
    pub terms: Option<usize>,

    #[arg(long = "panels-per-osc")]
    pub panels_per_osc: Option<f64>,

    /// Quadrature refinement tolerance.
    #[arg(long)]
    pub tol: Option<f64>,

    #[arg(long = "cache-dir", env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,

    /// Output directory for reports and the manifest.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,

    /// Worker threads; defaults to all cores.
    #[arg(long)]
    pub workers: Option<usize>,

    #[arg(long = "band-overrides", value_parser = parse_band, value_delimiter = ',')]
    pub band_overrides: Vec<BandOverride>,
}

impl Args {
    pub fn y(&self) -> f64 {
        self.y.unwrap_or(self.x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_syntax() {
        let b = parse_band("thm1_ratio=0.5:1.5").unwrap();
        assert_eq!((b.key.as_str(), b.lo, b.hi), ("thm1_ratio", 0.5, 1.5));
        assert!(parse_band("thm1_ratio=2:1").is_err());
        assert!(parse_band("thm1_ratio").is_err());
    }

    #[test]
    fn shifts_and_heights() {
        assert_eq!(parse_shift("1.5708").unwrap(), FRAC_PI_2);
        assert!(parse_shift("0").is_err());
        assert!(parse_shift("1.6").is_err());
        assert!(parse_height("1e3").is_err());
        assert_eq!(parse_height("1e6").unwrap(), 1e6);
    }

    #[test]
    fn parses_a_full_line() {
        let a = Args::try_parse_from([
            "zeta-ladder",
            "--experiment",
            "thm1,thm3",
            "--T",
            "1e6",
            "--x-grid",
            "0.25,0.5",
        ])
        .unwrap();
        assert_eq!(a.experiment, vec![Experiment::Thm1, Experiment::Thm3]);
        assert_eq!(a.x_grid, vec![0.25, 0.5]);
        assert_eq!(a.y(), FRAC_PI_2);
        assert!(Args::try_parse_from(["zeta-ladder", "--experiment", "thm1"]).is_err());
    }
}
