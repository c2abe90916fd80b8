//! Continuity matching at the origin for any transmitted-solution convention.
//!
//! The incident wave is fixed to `[1, a] e^{ikx}` and the reflected wave to
//! `r [1, −a] e^{−ikx}`; the transmitted wave is `t · shape · e^{iqx}` with a
//! shape and wave number chosen by the [`Convention`]. One 2×2 solve covers
//! all of them.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setup::{Kinematics, Regime};
use crate::spinor::{charge_conjugate, PlaneWave, Side, Spinor};

/// Above this |b| the main convention is matched through `b″ = −1/b`.
pub const NEAR_EDGE_B: f64 = 1e6;

/// Which of the transmitted solutions under the step is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    /// `[1, −b] e^{−ik̄x}`: positive energy, positive velocity field.
    #[serde(rename = "main")]
    MainEq6,
    /// `[b″, 1] e^{−ik̄x}`: the same wave normalised on its lower component.
    #[serde(rename = "a3")]
    LowerFormA3,
    /// `[1, b] e^{+ik̄x}`: the textbook choice that produces R > 1.
    #[serde(rename = "traditional")]
    TraditionalB2,
    /// `[−b, 1] e^{+ik̄x}`: charge conjugate of the main wave, negative energy.
    #[serde(rename = "b5")]
    NegativeEnergyB5,
}

impl Convention {
    pub const ALL: [Convention; 4] = [
        Convention::MainEq6,
        Convention::LowerFormA3,
        Convention::TraditionalB2,
        Convention::NegativeEnergyB5,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Convention::MainEq6 => "main",
            Convention::LowerFormA3 => "a3",
            Convention::TraditionalB2 => "traditional",
            Convention::NegativeEnergyB5 => "b5",
        }
    }

    /// The two opposite-momentum partners only exist as distinct propagating
    /// waves inside the Klein zone.
    pub fn is_available(&self, regime: Regime) -> bool {
        match self {
            Convention::MainEq6 | Convention::LowerFormA3 => {
                matches!(regime, Regime::KleinZone | Regime::Evanescent | Regime::Transmission)
            }
            Convention::TraditionalB2 | Convention::NegativeEnergyB5 => regime == Regime::KleinZone,
        }
    }

    /// Nominal transmitted amplitude (the spinor `t` multiplies) and its wave number.
    pub fn transmitted_shape(&self, kin: &Kinematics) -> Result<(Spinor, Complex64)> {
        if !self.is_available(kin.regime) {
            return Err(Error::ConventionUnavailable {
                convention: *self,
                regime: kin.regime,
            });
        }
        let one = Complex64::new(1.0, 0.0);
        let q = kin.transmitted_q;
        Ok(match self {
            Convention::MainEq6 => (Spinor::new(one, -kin.b), q),
            Convention::LowerFormA3 => (Spinor::new(kin.b_dprime, one), q),
            Convention::TraditionalB2 => (Spinor::new(one, kin.b), -q),
            Convention::NegativeEnergyB5 => {
                let main = PlaneWave::new(Spinor::new(one, -kin.b), q, Side::Right)?;
                let cc = charge_conjugate(&main);
                (cc.amplitude(), cc.wave_number())
            }
        })
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "main" | "eq6" | "main-eq6" => Ok(Convention::MainEq6),
            "a3" | "lower" | "lower-form-a3" => Ok(Convention::LowerFormA3),
            "traditional" | "b2" | "traditional-b2" => Ok(Convention::TraditionalB2),
            "b5" | "negative-energy" | "negative-energy-b5" => Ok(Convention::NegativeEnergyB5),
            other => Err(Error::InvalidParameter(format!(
                "unknown convention '{other}' (expected main, a3, traditional or b5)"
            ))),
        }
    }
}

/// Incident + reflected waves on x ≤ 0 and the transmitted wave on x ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringSolution {
    pub kinematics: Kinematics,
    pub convention: Convention,
    pub incident: PlaneWave,
    pub reflected: PlaneWave,
    pub transmitted: PlaneWave,
    /// Reflection amplitude.
    pub r: Complex64,
    /// Transmission amplitude, relative to the convention's nominal shape.
    pub t: Complex64,
}

impl ScatteringSolution {
    pub fn left(&self, x: f64) -> Spinor {
        self.incident.at(x) + self.reflected.at(x)
    }

    pub fn right(&self, x: f64) -> Spinor {
        self.transmitted.at(x)
    }

    /// `|ψ(0−) − ψ(0+)|`.
    pub fn continuity_residual(&self) -> f64 {
        (self.left(0.0) - self.right(0.0)).norm()
    }
}

/// Piecewise evaluation; the left branch is used at x = 0.
pub fn evaluate(sol: &ScatteringSolution, x: f64) -> Spinor {
    if x <= 0.0 {
        sol.left(x)
    } else {
        sol.right(x)
    }
}

/// Solves `ψ_i(0) + r ψ_r(0) = t ψ_t(0)` for the given convention.
pub fn match_solution(kin: &Kinematics, conv: Convention) -> Result<ScatteringSolution> {
    let (nominal, q) = conv.transmitted_shape(kin)?;

    // Near the edge point |b| diverges; solve with the b″-normalised shape
    // (proportional to the nominal one by a factor b″) and convert back.
    let near_edge = conv == Convention::MainEq6 && kin.b.norm() > NEAR_EDGE_B;
    let (shape, rescale) = if near_edge {
        (Spinor::new(kin.b_dprime, Complex64::new(1.0, 0.0)), kin.b_dprime)
    } else {
        (nominal, Complex64::new(1.0, 0.0))
    };

    let incident_shape = Spinor::real(1.0, kin.a);
    let reflected_shape = Spinor::real(1.0, -kin.a);
    let (r, t_shape) = solve_continuity(&incident_shape, &reflected_shape, &shape)?;

    let incident = PlaneWave::new(incident_shape, Complex64::new(kin.k, 0.0), Side::Left)?;
    let reflected = PlaneWave::new(reflected_shape * r, Complex64::new(-kin.k, 0.0), Side::Left)?;
    let transmitted = PlaneWave::new(shape * t_shape, q, Side::Right)?;

    Ok(ScatteringSolution {
        kinematics: *kin,
        convention: conv,
        incident,
        reflected,
        transmitted,
        r,
        t: t_shape * rescale,
    })
}

/// Cramer's rule on `r·R − t·T = −I`, componentwise.
pub(crate) fn solve_continuity(inc: &Spinor, refl: &Spinor, trans: &Spinor) -> Result<(Complex64, Complex64)> {
    let det = -refl.upper * trans.lower + trans.upper * refl.lower;
    let scale = refl.norm() * trans.norm();
    if !(det.norm() > 1e-14 * scale) {
        return Err(Error::SingularMatch(det.norm()));
    }
    // Columns: [R, −T]; right-hand side −I.
    let (b0, b1) = (-inc.upper, -inc.lower);
    let r = (b0 * (-trans.lower) - (-trans.upper) * b1) / det;
    let t = (refl.upper * b1 - refl.lower * b0) / det;
    Ok((r, t))
}
