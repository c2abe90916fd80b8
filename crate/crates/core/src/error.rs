use std::path::PathBuf;

use crate::{Convention, Regime};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no propagating incident wave: energy {energy} must exceed the rest energy {mass_energy}")]
    NoIncidentWave { energy: f64, mass_energy: f64 },

    #[error("{regime} has a vanishing transmitted wave number; use the limits module")]
    EdgeRegime { regime: Regime },

    #[error("convention {convention} is not defined in the {regime} regime")]
    ConventionUnavailable { convention: Convention, regime: Regime },

    #[error("plane wave grows without bound on its side (wave number {re} + {im}i)")]
    GrowingWave { re: f64, im: f64 },

    #[error("continuity system at the origin is singular (determinant {0:e})")]
    SingularMatch(f64),

    #[error("quantity undefined in the {regime} regime: {what}")]
    Undefined { what: &'static str, regime: Regime },

    #[error("integrator failed: {0}")]
    Integration(String),

    #[error("ill-conditioned decomposition at the left boundary: |incident| / |psi| = {0:e}")]
    IllConditioned(f64),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: malformed data at line {line}: {reason}", path.display())]
    Parse { path: PathBuf, line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
