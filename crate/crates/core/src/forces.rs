//! Mean force exerted by the step on the particle.
//!
//! The external force operator is `−V₀ δ(x)`; its mean value reduces to
//! `−V₀ ρ(0)` by the sifting property, so no delta is ever discretised.
//! For an impenetrable wall the same quantity appears as a boundary term in
//! `d⟨p⟩/dt` on the half-line x ≤ 0 (the boundary quantum force).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::matcher::ScatteringSolution;
use crate::setup::PhysicalSetup;
use crate::spinor::{density, Spinor};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForceReport {
    pub external_mean: f64,
    pub boundary_mean: f64,
    pub nr_boundary_mean: Option<f64>,
}

/// `⟨f⟩ = −V₀ ρ(0)`.
pub fn external_force_mean(sol: &ScatteringSolution, setup: &PhysicalSetup) -> f64 {
    -setup.step_height * density(&sol.right(0.0))
}

/// Same, for a bare spinor value at the step.
pub fn external_force_from_spinor(psi0: &Spinor, step_height: f64) -> f64 {
    -step_height * density(psi0)
}

/// Stationary-state value of the boundary term
/// `−iħ Ψ†Ψ_t + mc² Ψ†σ_zΨ` at the wall, with `Ψ_t = −(iE/ħ)Ψ`:
/// `−E ρ(0) + mc² (|φ(0)|² − |χ(0)|²)`.
pub fn boundary_force_mean(psi0: &Spinor, energy: f64, mass_energy: f64) -> f64 {
    boundary_flux(psi0, energy, mass_energy)
}

/// The bracketed flux of the momentum balance at an arbitrary point.
/// Constant in x for the impenetrable-limit solutions.
pub fn boundary_flux(psi: &Spinor, energy: f64, mass_energy: f64) -> f64 {
    let up = psi.upper.norm_sqr();
    let lo = psi.lower.norm_sqr();
    -energy * (up + lo) + mass_energy * (up - lo)
}

/// Average of [`boundary_flux`] over one period `2π/k` of a solution
/// sampled on x ≤ 0, approximating its value at x → −∞.
pub fn period_averaged_flux<F>(psi: F, k: f64, energy: f64, mass_energy: f64, far: f64, samples: usize) -> f64
where
    F: Fn(f64) -> Spinor,
{
    let period = std::f64::consts::TAU / k;
    let n = samples.max(2);
    // Periodic trapezoid rule: uniform nodes, no endpoint duplication.
    (0..n)
        .map(|i| {
            let x = far - period * (i as f64) / (n as f64);
            boundary_flux(&psi(x), energy, mass_energy)
        })
        .sum::<f64>()
        / n as f64
}

/// Nonrelativistic hard-wall force `−(ħ²/2m) |ψ_x(0)|²`.
pub fn nr_boundary_force_dirichlet(psi_x0: Complex64, mass_energy: f64, hbar_c: f64) -> f64 {
    -hbar_c * hbar_c / (2.0 * mass_energy) * psi_x0.norm_sqr()
}

/// Nonrelativistic force with a vanishing derivative at the wall:
/// `+(ħ²/2m) Re(ψ*(0) ψ_xx(0))`.
pub fn nr_boundary_force_neumann(psi0: Complex64, psi_xx0: Complex64, mass_energy: f64, hbar_c: f64) -> f64 {
    hbar_c * hbar_c / (2.0 * mass_energy) * (psi0.conj() * psi_xx0).re
}

pub fn force_report(sol: &ScatteringSolution) -> ForceReport {
    let setup = sol.kinematics.setup;
    ForceReport {
        external_mean: external_force_mean(sol, &setup),
        boundary_mean: boundary_force_mean(&sol.right(0.0), setup.energy, setup.mass_energy),
        nr_boundary_mean: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcher::{match_solution, Convention};
    use crate::setup::kinematics;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn golden_external_force() {
        let s = PhysicalSetup::new(1.0, 4.0, 2.0).unwrap();
        let sol = match_solution(&kinematics(&s).unwrap(), Convention::MainEq6).unwrap();
        assert!((external_force_mean(&sol, &s) + 4.0).abs() < 1e-14);
        assert!(force_report(&sol).external_mean <= 0.0);
    }

    #[test]
    fn boundary_force_examples() {
        let a = (1.0_f64 / 3.0).sqrt();
        let upper_dirichlet = Spinor::real(0.0, 2.0 * a);
        assert!((boundary_force_mean(&upper_dirichlet, 2.0, 1.0) + 4.0).abs() < 1e-14);
        let lower_dirichlet = Spinor::real(2.0, 0.0);
        assert!((boundary_force_mean(&lower_dirichlet, 2.0, 1.0) + 4.0).abs() < 1e-14);
        assert_eq!(boundary_force_mean(&Spinor::ZERO, 2.0, 1.0), 0.0);
    }

    #[test]
    fn nonrelativistic_forces() {
        let (m, e_nr) = (1.0_f64, 0.01_f64);
        let k_nr = (2.0 * m * e_nr).sqrt();
        // ψ = 2i sin(kx): ψ_x(0) = 2ik
        let f = nr_boundary_force_dirichlet(c(0.0, 2.0 * k_nr), m, 1.0);
        assert!((f + 4.0 * e_nr).abs() < 1e-15);
        // ψ = 2cos(kx): ψ(0) = 2, ψ_xx(0) = −2k²
        let f = nr_boundary_force_neumann(c(2.0, 0.0), c(-2.0 * k_nr * k_nr, 0.0), m, 1.0);
        assert!((f + 4.0 * e_nr).abs() < 1e-15);
        assert_eq!(nr_boundary_force_dirichlet(c(0.0, 0.0), m, 1.0), 0.0);
        assert_eq!(nr_boundary_force_neumann(c(0.0, 0.0), c(0.0, 0.0), m, 1.0), 0.0);
    }

    #[test]
    fn flux_is_stationary_for_the_impenetrable_solution() {
        let (m, e) = (1.0_f64, 2.0_f64);
        let a = ((e - m) / (e + m)).sqrt();
        let k = (e * e - m * m).sqrt();
        let psi = |x: f64| Spinor::new(c(0.0, 2.0 * (k * x).sin()), c(2.0 * a * (k * x).cos(), 0.0));
        let at_wall = boundary_flux(&psi(0.0), e, m);
        let far = period_averaged_flux(psi, k, e, m, -1.0e4, 64);
        assert!((at_wall - far).abs() < 1e-12);
        for x in [-0.1, -1.3, -7.7, -250.0] {
            assert!((boundary_flux(&psi(x), e, m) - at_wall).abs() < 1e-12);
        }
    }
}
