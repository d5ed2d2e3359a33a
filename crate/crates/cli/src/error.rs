use nvcalc_core::bv::BvError;
use nvcalc_core::gw::GwError;
use nvcalc_core::ode::OdeError;
use nvcalc_core::operad::OperadError;
use nvcalc_core::SeriesError;
use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_PRECISION: u8 = 3;
pub const EXIT_DOMAIN: u8 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Precision(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Precision(_) => EXIT_PRECISION,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Precision(_) => "precision",
            CliError::Domain(_) => "domain",
        }
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        CliError::Parse(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        CliError::Domain(msg.into())
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        let msg = e.to_string();
        match e {
            SeriesError::Parse(_) => CliError::Parse(msg),
            SeriesError::InsufficientPrecision { .. } | SeriesError::UnboundedInverse => CliError::Precision(msg),
            SeriesError::ZeroDivision => CliError::Domain(msg),
        }
    }
}

impl From<OdeError> for CliError {
    fn from(e: OdeError) -> Self {
        match e {
            OdeError::Series(s) => s.into(),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<GwError> for CliError {
    fn from(e: GwError) -> Self {
        match e {
            GwError::Series(s) => s.into(),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<BvError> for CliError {
    fn from(e: BvError) -> Self {
        match e {
            BvError::Series(s) => s.into(),
            BvError::Ode(o) => o.into(),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<OperadError> for CliError {
    fn from(e: OperadError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}
