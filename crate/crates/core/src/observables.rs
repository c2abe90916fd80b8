//! Reflection and transmission coefficients, density, current and the
//! transmitted velocity field, all computed from the plane waves of a
//! matched solution.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcher::ScatteringSolution;
use crate::setup::Regime;
use crate::spinor::{current, density};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservableSet {
    /// R = |j_r| / |j_i|.
    pub reflection: f64,
    /// T = j_t / j_i, signed so that R + T = 1 for every convention.
    pub transmission: f64,
    pub rho0: f64,
    pub j0: f64,
    /// Transmitted velocity field in units of c; `None` for a decaying wave.
    pub velocity: Option<f64>,
}

impl ObservableSet {
    pub fn conservation_residual(&self) -> f64 {
        (self.reflection + self.transmission - 1.0).abs()
    }

    /// `|R + T − 1|` divided by `|R| + |T|`. Equals the plain residual
    /// whenever both coefficients lie in [0, 1].
    pub fn relative_conservation_residual(&self) -> f64 {
        self.conservation_residual() / (self.reflection.abs() + self.transmission.abs()).max(1.0)
    }
}

pub fn coefficients(sol: &ScatteringSolution) -> ObservableSet {
    let j_i = sol.incident.current();
    let j_r = sol.reflected.current();
    let reflection = j_r.abs() / j_i.abs();
    let transmission = if sol.kinematics.regime == Regime::Evanescent {
        0.0
    } else {
        sol.transmitted.current() / j_i
    };
    let (rho0, j0) = density_current_at_origin(sol);
    ObservableSet {
        reflection,
        transmission,
        rho0,
        j0,
        velocity: transmitted_velocity(sol).ok(),
    }
}

/// Density and current of the transmitted branch at x = 0+.
pub fn density_current_at_origin(sol: &ScatteringSolution) -> (f64, f64) {
    let psi0 = sol.right(0.0);
    (density(&psi0), current(&psi0))
}

/// `v_t = j_t / ρ_t`; undefined for the evanescent wave.
pub fn transmitted_velocity(sol: &ScatteringSolution) -> Result<f64> {
    let regime = sol.kinematics.regime;
    if regime == Regime::Evanescent {
        return Err(Error::Undefined {
            what: "transmitted velocity field of a decaying wave",
            regime,
        });
    }
    Ok(sol.transmitted.current() / sol.transmitted.density())
}
