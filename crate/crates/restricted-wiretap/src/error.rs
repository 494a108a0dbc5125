use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{name} = {value} is outside its domain ({expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("covariance matrix violates the uncertainty relation (min eig of V - i*Omega = {min_eig:.3e})")]
    NotPhysical { min_eig: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unknown mode label `{0}`")]
    UnknownMode(String),

    #[error("bracket failure{}: min PPT eigenvalue {lo:.3e} at lower end, {hi:.3e} at upper end", mu.map(|m| format!(" at mu = {m}")).unwrap_or_default())]
    BracketFailure { lo: f64, hi: f64, mu: Option<f64> },

    #[error("singular matrix in {0}")]
    Singular(&'static str),

    #[error("no sift events: conditional probabilities undefined")]
    NoSiftEvents,

    #[error("truncation leakage {leakage:.3e} exceeds guard {guard:.1e}")]
    Truncation { leakage: f64, guard: f64 },

    #[error("invalid sweep spec: {0}")]
    Spec(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    ok: bool,
    expected: &'static str,
) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            expected,
        })
    }
}
