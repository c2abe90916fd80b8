//! Closed-form limit solutions and numerical approach paths.
//!
//! The impenetrable barrier is reached at `V₀ = E + mc²`. Its solutions are
//! given exactly here; [`convergence_scan`] measures how the finite-V₀
//! solutions approach them.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forces::{
    boundary_force_mean, external_force_from_spinor, nr_boundary_force_dirichlet, nr_boundary_force_neumann,
};
use crate::matcher::{match_solution, solve_continuity, Convention};
use crate::observables::coefficients;
use crate::setup::{kinematics, PhysicalSetup, Regime};
use crate::spinor::{current, density, PlaneWave, Side, Spinor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitKind {
    /// `[2i sin kx, 2a cos kx]` on x ≤ 0, `[0, 2a]` on x ≥ 0.
    ImpenetrableMain,
    /// `[2cos kx, 2ia sin kx]` on x ≤ 0, `[2, 0]` on x ≥ 0.
    ImpenetrableB,
    /// Upper component `2i sin(k x) Θ(−x)`, lower component zero.
    NonRelMain,
    /// Upper component `2cos(k x) Θ(−x) + 2Θ(x)`, lower component zero.
    NonRelB,
}

impl LimitKind {
    pub fn name(&self) -> &'static str {
        match self {
            LimitKind::ImpenetrableMain => "impenetrable-main",
            LimitKind::ImpenetrableB => "impenetrable-b5",
            LimitKind::NonRelMain => "nonrel-main",
            LimitKind::NonRelB => "nonrel-b5",
        }
    }

    pub fn is_nonrelativistic(&self) -> bool {
        matches!(self, LimitKind::NonRelMain | LimitKind::NonRelB)
    }
}

impl fmt::Display for LimitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitSolution {
    pub kind: LimitKind,
    /// Relativistic energy E; `mc² + E^(NR)` for the nonrelativistic kinds.
    pub energy: f64,
    pub mass_energy: f64,
    pub hbar_c: f64,
    /// Incident spinor ratio; `√(E^(NR)/2mc²)` for the nonrelativistic kinds.
    pub a: f64,
    /// k, or k^(NR) for the nonrelativistic kinds.
    pub k: f64,
    pub reflection: f64,
    pub transmission: f64,
}

impl LimitSolution {
    pub fn step_height(&self) -> f64 {
        self.energy + self.mass_energy
    }

    pub fn kinetic_energy(&self) -> f64 {
        self.energy - self.mass_energy
    }

    pub fn spinor_left(&self, x: f64) -> Spinor {
        let (s, c) = (self.k * x).sin_cos();
        let a = self.a;
        match self.kind {
            LimitKind::ImpenetrableMain => Spinor::new(Complex64::new(0.0, 2.0 * s), Complex64::new(2.0 * a * c, 0.0)),
            LimitKind::ImpenetrableB => Spinor::new(Complex64::new(2.0 * c, 0.0), Complex64::new(0.0, 2.0 * a * s)),
            LimitKind::NonRelMain => Spinor::new(Complex64::new(0.0, 2.0 * s), Complex64::new(0.0, 0.0)),
            LimitKind::NonRelB => Spinor::real(2.0 * c, 0.0),
        }
    }

    pub fn spinor_right(&self, _x: f64) -> Spinor {
        match self.kind {
            LimitKind::ImpenetrableMain => Spinor::real(0.0, 2.0 * self.a),
            LimitKind::ImpenetrableB | LimitKind::NonRelB => Spinor::real(2.0, 0.0),
            LimitKind::NonRelMain => Spinor::ZERO,
        }
    }

    pub fn spinor_at(&self, x: f64) -> Spinor {
        if x <= 0.0 {
            self.spinor_left(x)
        } else {
            self.spinor_right(x)
        }
    }

    /// Plane-wave constituents on x ≤ 0: the incident wave and the reflected
    /// wave with |r| = 1. `None` for the nonrelativistic kinds.
    pub fn left_waves(&self) -> Option<[PlaneWave; 2]> {
        let r = match self.kind {
            LimitKind::ImpenetrableMain => -1.0,
            LimitKind::ImpenetrableB => 1.0,
            _ => return None,
        };
        let k = Complex64::new(self.k, 0.0);
        let inc = PlaneWave::new(Spinor::real(1.0, self.a), k, Side::Left).ok()?;
        let refl = PlaneWave::new(Spinor::real(r, -r * self.a), -k, Side::Left).ok()?;
        Some([inc, refl])
    }

    /// The constant (k̄ = 0) wave under the step.
    pub fn right_wave(&self) -> Option<PlaneWave> {
        if self.kind.is_nonrelativistic() {
            return None;
        }
        PlaneWave::new(self.spinor_right(0.0), Complex64::new(0.0, 0.0), Side::Right).ok()
    }

    /// `−V₀ ρ(0)` with `V₀ = E + mc²`; for the nonrelativistic kinds the
    /// hard-wall value computed from the Schrödinger wavefunction.
    pub fn external_force(&self) -> f64 {
        if self.kind.is_nonrelativistic() {
            return self.nr_boundary_force().unwrap_or(f64::NAN);
        }
        external_force_from_spinor(&self.spinor_at(0.0), self.step_height())
    }

    pub fn boundary_force(&self) -> f64 {
        if self.kind.is_nonrelativistic() {
            return self.nr_boundary_force().unwrap_or(f64::NAN);
        }
        boundary_force_mean(&self.spinor_at(0.0), self.energy, self.mass_energy)
    }

    /// The closed-form force at the wall for this kind.
    pub fn closed_form_force(&self) -> f64 {
        match self.kind {
            LimitKind::ImpenetrableMain => -4.0 * self.kinetic_energy(),
            LimitKind::ImpenetrableB => -4.0 * (self.energy + self.mass_energy),
            LimitKind::NonRelMain | LimitKind::NonRelB => -4.0 * self.kinetic_energy(),
        }
    }

    pub fn velocity(&self) -> f64 {
        let right = self.spinor_right(0.0);
        let rho = density(&right);
        if rho == 0.0 {
            0.0
        } else {
            current(&right) / rho
        }
    }

    /// Schrödinger wavefunction ψ^(NR)(x) and its first two derivatives,
    /// with the wall side (x ≤ 0) used at the origin.
    pub fn nr_wavefunction(&self, x: f64) -> Option<[Complex64; 3]> {
        let k = self.k;
        let (s, c) = (k * x).sin_cos();
        let i = Complex64::new(0.0, 1.0);
        match (self.kind, x <= 0.0) {
            (LimitKind::NonRelMain, true) => Some([i * 2.0 * s, i * 2.0 * k * c, -i * 2.0 * k * k * s]),
            (LimitKind::NonRelMain, false) => Some([Complex64::new(0.0, 0.0); 3]),
            (LimitKind::NonRelB, true) => Some([
                Complex64::new(2.0 * c, 0.0),
                Complex64::new(-2.0 * k * s, 0.0),
                Complex64::new(-2.0 * k * k * c, 0.0),
            ]),
            (LimitKind::NonRelB, false) => Some([
                Complex64::new(2.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ]),
            _ => None,
        }
    }

    fn nr_boundary_force(&self) -> Option<f64> {
        let [psi, dpsi, ddpsi] = self.nr_wavefunction(0.0)?;
        Some(match self.kind {
            LimitKind::NonRelMain => nr_boundary_force_dirichlet(dpsi, self.mass_energy, self.hbar_c),
            _ => nr_boundary_force_neumann(psi, ddpsi, self.mass_energy, self.hbar_c),
        })
    }
}

fn check_energies(energy: f64, mass_energy: f64) -> Result<()> {
    if !(energy.is_finite() && mass_energy.is_finite()) {
        return Err(Error::InvalidParameter("energies must be finite".into()));
    }
    if mass_energy <= 0.0 {
        return Err(Error::InvalidParameter(
            "the impenetrable limit needs mc² > 0; massless particles keep b = −1 and R = 0 across the Klein zone"
                .into(),
        ));
    }
    if energy <= mass_energy {
        return Err(Error::NoIncidentWave { energy, mass_energy });
    }
    Ok(())
}

/// The solution at `V₀ = E + mc²` reached from inside the Klein zone.
///
/// Main and lower-form conventions share the same limit; the negative-energy
/// convention has its own. The textbook convention is not supported.
pub fn impenetrable_limit(energy: f64, mass_energy: f64, conv: Convention) -> Result<LimitSolution> {
    check_energies(energy, mass_energy)?;
    let kind = match conv {
        Convention::MainEq6 | Convention::LowerFormA3 => LimitKind::ImpenetrableMain,
        Convention::NegativeEnergyB5 => LimitKind::ImpenetrableB,
        Convention::TraditionalB2 => {
            return Err(Error::ConventionUnavailable {
                convention: conv,
                regime: Regime::EdgePoint,
            })
        }
    };
    Ok(LimitSolution {
        kind,
        energy,
        mass_energy,
        hbar_c: 1.0,
        a: ((energy - mass_energy) / (energy + mass_energy)).sqrt(),
        k: ((energy - mass_energy) * (energy + mass_energy)).sqrt(),
        reflection: 1.0,
        transmission: 0.0,
    })
}

/// The impenetrable limit followed by `E → mc² + E^(NR)` with `E^(NR) ≪ mc²`.
pub fn nonrelativistic_limit(kinetic_energy: f64, mass_energy: f64, conv: Convention) -> Result<LimitSolution> {
    if !(kinetic_energy > 0.0 && kinetic_energy.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "nonrelativistic kinetic energy must be positive, got {kinetic_energy}"
        )));
    }
    check_energies(mass_energy + kinetic_energy, mass_energy)?;
    let kind = match conv {
        Convention::MainEq6 | Convention::LowerFormA3 => LimitKind::NonRelMain,
        Convention::NegativeEnergyB5 => LimitKind::NonRelB,
        Convention::TraditionalB2 => {
            return Err(Error::ConventionUnavailable {
                convention: conv,
                regime: Regime::EdgePoint,
            })
        }
    };
    Ok(LimitSolution {
        kind,
        energy: mass_energy + kinetic_energy,
        mass_energy,
        hbar_c: 1.0,
        a: (kinetic_energy / (2.0 * mass_energy)).sqrt(),
        k: (2.0 * mass_energy * kinetic_energy).sqrt(),
        reflection: 1.0,
        transmission: 0.0,
    })
}

/// Coefficients as V₀ → ∞ at fixed E, where b → −1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfiniteStepLimit {
    pub a: f64,
    pub r: f64,
    pub t: f64,
    pub reflection: f64,
    pub transmission: f64,
    pub velocity: f64,
    /// ρ(0); the force −V₀ρ(0) itself diverges linearly in V₀.
    pub rho0: f64,
}

pub fn infinite_step_limit(energy: f64, mass_energy: f64, conv: Convention) -> Result<InfiniteStepLimit> {
    if !(mass_energy >= 0.0 && energy > mass_energy && energy.is_finite()) {
        return Err(Error::NoIncidentWave { energy, mass_energy });
    }
    let a = if mass_energy == 0.0 {
        1.0
    } else {
        ((energy - mass_energy) / (energy + mass_energy)).sqrt()
    };
    let shape = match conv {
        Convention::MainEq6 | Convention::LowerFormA3 | Convention::NegativeEnergyB5 => Spinor::real(1.0, 1.0),
        Convention::TraditionalB2 => Spinor::real(1.0, -1.0),
    };
    let (r, t) = solve_continuity(&Spinor::real(1.0, a), &Spinor::real(1.0, -a), &shape)?;
    let trans = shape * t;
    Ok(InfiniteStepLimit {
        a,
        r: r.re,
        t: t.re,
        reflection: r.norm_sqr(),
        transmission: current(&trans) / (2.0 * a),
        velocity: current(&shape) / density(&shape),
        rho0: density(&trans),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    /// `V₀ − (E + mc²)`.
    pub delta: f64,
    pub step_height: f64,
    pub regime: Regime,
    pub reflection: f64,
    pub transmission: f64,
    pub velocity: Option<f64>,
    pub rho0: f64,
    pub force: f64,
}

/// Evaluates the finite-V₀ solution at `V₀ = E + mc² + δ` for each δ.
///
/// δ > 0 approaches the edge through the Klein zone, δ ∈ (−mc², 0) through
/// the evanescent regime.
pub fn convergence_scan(energy: f64, mass_energy: f64, conv: Convention, deltas: &[f64]) -> Result<Vec<ScanRow>> {
    check_energies(energy, mass_energy)?;
    deltas
        .iter()
        .map(|&delta| {
            if !(delta > 0.0 || (delta < 0.0 && delta > -mass_energy)) {
                return Err(Error::InvalidParameter(format!(
                    "scan offset {delta} must be positive or lie in (−mc², 0)"
                )));
            }
            let setup = PhysicalSetup::new(mass_energy, energy + mass_energy + delta, energy)?;
            let kin = kinematics(&setup)?;
            let sol = match_solution(&kin, conv)?;
            let obs = coefficients(&sol);
            Ok(ScanRow {
                delta,
                step_height: setup.step_height,
                regime: kin.regime,
                reflection: obs.reflection,
                transmission: obs.transmission,
                velocity: obs.velocity,
                rho0: obs.rho0,
                force: -setup.step_height * obs.rho0,
            })
        })
        .collect()
}

/// Least-squares slope of `ln T` against `ln δ` over the rows with δ > 0.
pub fn fit_transmission_exponent(rows: &[ScanRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.delta > 0.0 && r.transmission > 0.0)
        .map(|r| (r.delta.ln(), r.transmission.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Logarithmically spaced offsets from `from` to `to` (both positive).
pub fn log_spaced(from: f64, to: f64, n: usize) -> Vec<f64> {
    let (l0, l1) = (from.ln(), to.ln());
    (0..n)
        .map(|i| {
            let s = if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
            (l0 + s * (l1 - l0)).exp()
        })
        .collect()
}
