use std::path::PathBuf;

use multiport::statistics::Mode;

use crate::error::{CliError, CliResult};

/// Default caps, lifted by `--force`.
pub const FLOAT_MAX_N: usize = 14;
pub const EXACT_MAX_N: usize = 12;
pub const VERIFY_MAX_N: usize = 8;
pub const TABLE2_MAX_N: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub mode: Mode,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub jobs: usize,
    pub tolerance: f64,
    pub cache_dir: Option<PathBuf>,
    pub force: bool,
}

impl RunConfig {
    pub fn new(n: usize, mode: Mode) -> Self {
        Self {
            n,
            mode,
            format: Format::Csv,
            output: None,
            jobs: 1,
            tolerance: multiport::scattering::DEFAULT_ZERO_TOLERANCE,
            cache_dir: None,
            force: false,
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.n < 1 {
            return Err(CliError::InvalidArguments("n must be at least 1".into()));
        }
        if self.jobs < 1 {
            return Err(CliError::InvalidArguments(
                "--jobs must be at least 1".into(),
            ));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(CliError::InvalidArguments(
                "--tolerance must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Enforces the default size caps for a run touching `n` ports.
    pub fn check_caps(&self, n: usize) -> CliResult<()> {
        if self.force {
            return Ok(());
        }
        if n > FLOAT_MAX_N {
            return Err(cap_error("n", n, FLOAT_MAX_N));
        }
        if self.mode.uses_exact() && n > EXACT_MAX_N {
            return Err(cap_error("n in exact mode", n, EXACT_MAX_N));
        }
        Ok(())
    }

    pub fn check_cap(&self, what: &str, n: usize, cap: usize) -> CliResult<()> {
        if !self.force && n > cap {
            return Err(cap_error(what, n, cap));
        }
        Ok(())
    }
}

fn cap_error(what: &str, n: usize, cap: usize) -> CliError {
    CliError::InvalidArguments(format!(
        "{what} = {n} exceeds the default cap {cap}; pass --force to run anyway"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(RunConfig::new(0, Mode::Float).validate().is_err());
        let mut c = RunConfig::new(3, Mode::Float);
        c.tolerance = 0.0;
        assert!(c.validate().is_err());
        c.tolerance = 1e-10;
        c.jobs = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn caps() {
        let c = RunConfig::new(13, Mode::Exact);
        assert!(c.check_caps(13).is_err());
        assert!(RunConfig::new(13, Mode::Float).check_caps(13).is_ok());
        let forced = RunConfig { force: true, ..c };
        assert!(forced.check_caps(20).is_ok());
    }
}
