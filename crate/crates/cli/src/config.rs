use rademacher::MIN_PRECISION;
use serde::Serialize;

use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
}

/// Which columns of a comparison run are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Modes {
    pub exact: bool,
    pub asymptotic: bool,
    pub integral: bool,
}

impl Modes {
    pub const EXACT_ASYMPTOTIC: Modes = Modes { exact: true, asymptotic: true, integral: false };
    pub const EXACT_INTEGRAL: Modes = Modes { exact: true, asymptotic: false, integral: true };

    pub fn is_empty(&self) -> bool {
        !(self.exact || self.asymptotic || self.integral)
    }

    /// Parses a comma separated list such as `exact,integral`.
    pub fn parse(list: &str) -> CliResult<Modes> {
        let mut modes = Modes { exact: false, asymptotic: false, integral: false };
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item {
                "exact" => modes.exact = true,
                "asymptotic" => modes.asymptotic = true,
                "integral" => modes.integral = true,
                other => return Err(CliError::Usage(format!("unknown mode {other:?}"))),
            }
        }
        Ok(modes)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub precision_bits: u32,
    pub n_from: u32,
    pub n_to: u32,
    pub l: u32,
    pub output_format: OutputFormat,
    pub modes: Modes,
    /// Significant digits for printed constants and decimals.
    pub digits: usize,
    /// Use the float pipeline instead of rationals for `N` above this bound.
    pub float_exact_above: Option<u32>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_bits: rademacher::DEFAULT_PRECISION,
            n_from: 100,
            n_to: 150,
            l: 1,
            output_format: OutputFormat::Csv,
            modes: Modes::EXACT_ASYMPTOTIC,
            digits: 17,
            float_exact_above: None,
        }
    }
}

impl RunConfig {
    pub fn range(n_from: u32, n_to: u32, l: u32, modes: Modes) -> Self {
        RunConfig { n_from, n_to, l, modes, ..Default::default() }
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.n_from == 0 || self.n_from > self.n_to {
            return Err(CliError::Usage(format!("invalid range {}..{}", self.n_from, self.n_to)));
        }
        if self.precision_bits < MIN_PRECISION {
            return Err(CliError::Usage(format!(
                "precision {} is below {MIN_PRECISION} bits",
                self.precision_bits
            )));
        }
        if self.l == 0 {
            return Err(CliError::Usage("l must be at least 1".into()));
        }
        if self.digits == 0 {
            return Err(CliError::Usage("digits must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_parse() {
        assert_eq!(Modes::parse("exact, integral").unwrap(), Modes::EXACT_INTEGRAL);
        assert!(Modes::parse("").unwrap().is_empty());
        assert!(Modes::parse("exact,fast").is_err());
    }

    #[test]
    fn validation() {
        assert!(RunConfig::default().validate().is_ok());
        assert!(RunConfig::range(5, 4, 1, Modes::EXACT_ASYMPTOTIC).validate().is_err());
        let low = RunConfig { precision_bits: 32, ..Default::default() };
        assert!(low.validate().is_err());
    }
}
