//! Closed-form expressions for the Klein zone, written directly in terms of
//! the real spinor ratios `a > 0`, `b < 0` and `b″ = −1/b > 0`.
//!
//! These are evaluated independently of the matcher and serve as its
//! postconditions. Velocities are in units of c.

/// Reflection amplitude of the main convention, `(a+b)/(a−b)`.
pub fn main_r(a: f64, b: f64) -> f64 {
    (a + b) / (a - b)
}

pub fn main_t(a: f64, b: f64) -> f64 {
    2.0 * a / (a - b)
}

pub fn main_reflection(a: f64, b: f64) -> f64 {
    main_r(a, b).powi(2)
}

pub fn main_transmission(a: f64, b: f64) -> f64 {
    4.0 * a * b.abs() / (a - b).powi(2)
}

/// Density at the origin, `4a²(1+b²)/(a−b)²`.
pub fn main_rho0(a: f64, b: f64) -> f64 {
    4.0 * a * a * (1.0 + b * b) / (a - b).powi(2)
}

/// Current at the origin, `−8a²b/(a−b)²`.
pub fn main_j0(a: f64, b: f64) -> f64 {
    -8.0 * a * a * b / (a - b).powi(2)
}

/// Transmitted velocity field `−2b/(1+b²)`.
pub fn main_velocity(b: f64) -> f64 {
    -2.0 * b / (1.0 + b * b)
}

/// `c√(1 − (mc²/(E−V₀))²)`.
pub fn velocity_from_energies(mass_energy: f64, energy: f64, step_height: f64) -> f64 {
    (1.0 - (mass_energy / (energy - step_height)).powi(2)).sqrt()
}

pub fn main_force(step_height: f64, a: f64, b: f64) -> f64 {
    -step_height * main_rho0(a, b)
}

pub fn a3_r(a: f64, bdd: f64) -> f64 {
    (a * bdd - 1.0) / (a * bdd + 1.0)
}

pub fn a3_t(a: f64, bdd: f64) -> f64 {
    2.0 * a / (1.0 + a * bdd)
}

pub fn a3_reflection(a: f64, bdd: f64) -> f64 {
    a3_r(a, bdd).powi(2)
}

pub fn a3_transmission(a: f64, bdd: f64) -> f64 {
    4.0 * a * bdd / (1.0 + a * bdd).powi(2)
}

pub fn a3_rho0(a: f64, bdd: f64) -> f64 {
    4.0 * a * a * (1.0 + bdd * bdd) / (1.0 + a * bdd).powi(2)
}

pub fn a3_j0(a: f64, bdd: f64) -> f64 {
    8.0 * a * a * bdd / (1.0 + a * bdd).powi(2)
}

pub fn a3_velocity(bdd: f64) -> f64 {
    2.0 * bdd / (1.0 + bdd * bdd)
}

pub fn a3_force(step_height: f64, a: f64, bdd: f64) -> f64 {
    -step_height * a3_rho0(a, bdd)
}

/// Textbook transmitted wave `[1, b] e^{ik̄x}`: `r = (a−b)/(a+b)`.
pub fn b2_r(a: f64, b: f64) -> f64 {
    (a - b) / (a + b)
}

pub fn b2_t(a: f64, b: f64) -> f64 {
    2.0 * a / (a + b)
}

pub fn b2_reflection(a: f64, b: f64) -> f64 {
    b2_r(a, b).powi(2)
}

/// Signed: negative in the Klein zone.
pub fn b2_transmission(a: f64, b: f64) -> f64 {
    4.0 * a * b / (a + b).powi(2)
}

pub fn b5_r(a: f64, b: f64) -> f64 {
    (a * b + 1.0) / (a * b - 1.0)
}

pub fn b5_t(a: f64, b: f64) -> f64 {
    2.0 * a / (1.0 - a * b)
}

pub fn b5_reflection(a: f64, b: f64) -> f64 {
    b5_r(a, b).powi(2)
}

pub fn b5_transmission(a: f64, b: f64) -> f64 {
    4.0 * a * b.abs() / (1.0 - a * b).powi(2)
}

pub fn b5_rho0(a: f64, b: f64) -> f64 {
    4.0 * a * a * (1.0 + b * b) / (1.0 - a * b).powi(2)
}

pub fn b5_force(step_height: f64, a: f64, b: f64) -> f64 {
    -step_height * b5_rho0(a, b)
}

/// `a = √((E−mc²)/(E+mc²))`.
pub fn incident_ratio(mass_energy: f64, energy: f64) -> f64 {
    ((energy - mass_energy) / (energy + mass_energy)).sqrt()
}

/// V₀ = 2E: `R = ((a²−1)/(a²+1))²`.
pub fn double_energy_reflection(a: f64) -> f64 {
    ((a * a - 1.0) / (a * a + 1.0)).powi(2)
}

pub fn double_energy_transmission(a: f64) -> f64 {
    4.0 * a * a / (a * a + 1.0).powi(2)
}

/// V₀ → ∞: `R → ((a−1)/(a+1))²`.
pub fn infinite_step_reflection(a: f64) -> f64 {
    ((a - 1.0) / (a + 1.0)).powi(2)
}

pub fn infinite_step_transmission(a: f64) -> f64 {
    4.0 * a / (a + 1.0).powi(2)
}

/// Force at the impenetrable limit of the main convention, `−4(E − mc²)`.
pub fn impenetrable_force(mass_energy: f64, energy: f64) -> f64 {
    -4.0 * (energy - mass_energy)
}

/// Same limit with the negative-energy transmitted wave, `−4(E + mc²)`.
pub fn impenetrable_force_negative_energy(mass_energy: f64, energy: f64) -> f64 {
    -4.0 * (energy + mass_energy)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_values() {
        let a = (1.0_f64 / 3.0).sqrt();
        let b = -3.0_f64.sqrt();
        assert!((main_r(a, b) + 0.5).abs() < 1e-15);
        assert!((main_reflection(a, b) - 0.25).abs() < 1e-15);
        assert!((main_transmission(a, b) - 0.75).abs() < 1e-15);
        assert!((main_rho0(a, b) - 1.0).abs() < 1e-15);
        assert!((main_j0(a, b) - 0.8660254037844386).abs() < 1e-15);
        assert!((main_velocity(b) - 0.8660254037844386).abs() < 1e-15);
        assert!((velocity_from_energies(1.0, 2.0, 4.0) - 0.8660254037844386).abs() < 1e-15);
        assert!((main_force(4.0, a, b) + 4.0).abs() < 1e-14);
        assert!((infinite_step_reflection(a) - 0.07179676972449083).abs() < 1e-15);
        assert!((infinite_step_transmission(a) - 0.9282032302755092).abs() < 1e-15);
    }

    #[test]
    fn a3_equals_main_through_b_double_prime() {
        for b in [-1.01, -1.7, -3.0, -50.0] {
            for a in [0.05, 0.3, 0.9] {
                let bdd = -1.0 / b;
                assert!((a3_reflection(a, bdd) - main_reflection(a, b)).abs() < 1e-14);
                assert!((a3_transmission(a, bdd) - main_transmission(a, b)).abs() < 1e-14);
                assert!((a3_rho0(a, bdd) - main_rho0(a, b)).abs() < 1e-13);
                assert!((a3_velocity(bdd) - main_velocity(b)).abs() < 1e-14);
                assert!((a3_r(a, bdd) - main_r(a, b)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn every_convention_conserves() {
        for b in [-1.01, -1.7, -3.0, -50.0] {
            for a in [0.05, 0.3, 0.9] {
                assert!((main_reflection(a, b) + main_transmission(a, b) - 1.0).abs() < 1e-13);
                assert!((b2_reflection(a, b) + b2_transmission(a, b) - 1.0).abs() < 1e-12);
                assert!((b5_reflection(a, b) + b5_transmission(a, b) - 1.0).abs() < 1e-13);
            }
        }
    }
}
