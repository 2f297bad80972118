//! Run configuration: an optional TOML file overlaid by command-line flags.

use std::path::{Path, PathBuf};

use num_rational::BigRational;
use num_traits::Zero;
use salem_core::spectra::sturm::parse_rational;
use serde::Deserialize;

use crate::error::{CliError, Result};

/// Keys accepted in a config file. Every key is optional.
#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub tol: Option<String>,
    pub workers: Option<usize>,
    pub max_vertices: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        toml::from_str(&text).map_err(|e| CliError::Config { path: path.to_owned(), message: e.to_string() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub tol: BigRational,
    pub workers: usize,
    pub max_vertices: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

/// Flag values; `None` means "not given on the command line".
#[derive(Clone, Debug, Default)]
pub struct FlagConfig {
    pub tol: Option<String>,
    pub workers: Option<usize>,
    pub max_vertices: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

pub const DEFAULT_TOL: &str = "1/1000000000000";

pub fn parse_tolerance(s: &str) -> Result<BigRational> {
    match parse_rational(s) {
        Some(t) if t > BigRational::zero() => Ok(t),
        _ => Err(CliError::Tolerance(s.to_owned())),
    }
}

impl RunConfig {
    /// Flags win over the file; the file wins over defaults.
    pub fn resolve(flags: FlagConfig, file: FileConfig) -> Result<Self> {
        let tol = flags.tol.or(file.tol).unwrap_or_else(|| DEFAULT_TOL.to_owned());
        let workers = flags.workers.or(file.workers).unwrap_or(1);
        if workers == 0 {
            return Err(CliError::Workers);
        }
        Ok(RunConfig {
            tol: parse_tolerance(&tol)?,
            workers,
            max_vertices: flags.max_vertices.or(file.max_vertices),
            checkpoint: flags.checkpoint.or(file.checkpoint),
            out: flags.out.or(file.out),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file: FileConfig = toml::from_str("tol = \"1/10\"\nworkers = 3\nmax_vertices = 9\n").unwrap();
        let flags = FlagConfig { workers: Some(2), ..Default::default() };
        let cfg = RunConfig::resolve(flags, file).unwrap();
        assert_eq!(cfg.workers, 2);
        assert_eq!(cfg.max_vertices, Some(9));
        assert_eq!(cfg.tol, parse_tolerance("1/10").unwrap());
    }

    #[test]
    fn rejects_bad_values() {
        assert!(parse_tolerance("0/5").is_err());
        assert!(parse_tolerance("-1/5").is_err());
        assert!(parse_tolerance("x").is_err());
        let flags = FlagConfig { workers: Some(0), ..Default::default() };
        assert!(matches!(RunConfig::resolve(flags, FileConfig::default()), Err(CliError::Workers)));
        assert!(toml::from_str::<FileConfig>("colour = 1").is_err());
    }
}
