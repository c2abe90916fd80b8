//! Which impenetrability condition does a solution satisfy at the origin?

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::LimitSolution;
use crate::matcher::ScatteringSolution;
use crate::spinor::{current, density, Spinor};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryClass {
    /// φ(0) = 0.
    DirichletUpper,
    /// χ(0) = 0.
    DirichletLower,
    /// ψ_x^(NR)(0) = 0.
    NeumannNr,
    /// ψ^(NR)(0) = 0.
    DirichletNr,
    /// Both components vanish. Not a self-adjoint condition for the Dirac
    /// operator; reported for information only.
    DirichletFull,
    None,
}

impl BoundaryClass {
    pub fn name(&self) -> &'static str {
        match self {
            BoundaryClass::DirichletUpper => "dirichlet-upper",
            BoundaryClass::DirichletLower => "dirichlet-lower",
            BoundaryClass::NeumannNr => "neumann-nr",
            BoundaryClass::DirichletNr => "dirichlet-nr",
            BoundaryClass::DirichletFull => "dirichlet-full",
            BoundaryClass::None => "none",
        }
    }

    pub fn is_self_adjoint(&self) -> bool {
        *self != BoundaryClass::DirichletFull
    }
}

impl fmt::Display for BoundaryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryReport {
    pub phi0: Complex64,
    pub chi0: Complex64,
    pub rho0: f64,
    pub j0: f64,
    pub classification: BoundaryClass,
    pub impenetrable: bool,
}

/// Anything that can be evaluated at the step.
pub trait OriginValues {
    fn origin_spinor(&self) -> Spinor;

    /// `(ψ(0), ψ_x(0), k)` for Schrödinger-limit solutions.
    fn nr_origin(&self) -> Option<(Complex64, Complex64, f64)> {
        None
    }
}

impl OriginValues for Spinor {
    fn origin_spinor(&self) -> Spinor {
        *self
    }
}

impl OriginValues for ScatteringSolution {
    fn origin_spinor(&self) -> Spinor {
        self.right(0.0)
    }
}

impl OriginValues for LimitSolution {
    fn origin_spinor(&self) -> Spinor {
        self.spinor_at(0.0)
    }

    fn nr_origin(&self) -> Option<(Complex64, Complex64, f64)> {
        let [psi, dpsi, _] = self.nr_wavefunction(0.0)?;
        Some((psi, dpsi, self.k))
    }
}

/// Classifies the boundary condition met at x = 0.
///
/// A component counts as zero when it is below `tolerance/2` of the larger
/// one, so either Dirichlet class implies `|j(0)| ≤ tolerance·ρ(0)`.
pub fn classify_boundary<S: OriginValues + ?Sized>(sol: &S, tolerance: f64) -> Result<BoundaryReport> {
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    let psi = sol.origin_spinor();
    let (rho0, j0) = (density(&psi), current(&psi));
    let classification = match sol.nr_origin() {
        Some((value, slope, k)) => {
            let (v, d) = (value.norm(), slope.norm() / k);
            let scale = v.max(d);
            if v <= tolerance * scale || scale == 0.0 {
                BoundaryClass::DirichletNr
            } else if d <= tolerance * scale {
                BoundaryClass::NeumannNr
            } else {
                BoundaryClass::None
            }
        }
        None => {
            let (up, lo) = (psi.upper.norm(), psi.lower.norm());
            let thr = 0.5 * tolerance * up.max(lo);
            if up.max(lo) == 0.0 {
                BoundaryClass::DirichletFull
            } else if up <= thr {
                BoundaryClass::DirichletUpper
            } else if lo <= thr {
                BoundaryClass::DirichletLower
            } else {
                BoundaryClass::None
            }
        }
    };
    Ok(BoundaryReport {
        phi0: psi.upper,
        chi0: psi.lower,
        rho0,
        j0,
        classification,
        impenetrable: j0.abs() <= tolerance * rho0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::{impenetrable_limit, nonrelativistic_limit};
    use crate::matcher::{match_solution, Convention};
    use crate::setup::{kinematics, PhysicalSetup};
    use proptest::prelude::*;

    #[test]
    fn impenetrable_main_is_dirichlet_upper() {
        let sol = impenetrable_limit(2.0, 1.0, Convention::MainEq6).unwrap();
        let rep = classify_boundary(&sol, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(rep.classification, BoundaryClass::DirichletUpper);
        assert!(rep.impenetrable);
        assert!((rep.chi0.re - 1.1547005383792515).abs() < 1e-15);
    }

    #[test]
    fn impenetrable_b_is_dirichlet_lower() {
        let sol = impenetrable_limit(2.0, 1.0, Convention::NegativeEnergyB5).unwrap();
        let rep = classify_boundary(&sol, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(rep.classification, BoundaryClass::DirichletLower);
        assert!(rep.impenetrable);
        assert_eq!(rep.phi0, Complex64::new(2.0, 0.0));
    }

    #[test]
    fn generic_klein_solution_is_unconstrained() {
        let kin = kinematics(&PhysicalSetup::new(1.0, 4.0, 2.0).unwrap()).unwrap();
        let sol = match_solution(&kin, Convention::MainEq6).unwrap();
        let rep = classify_boundary(&sol, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(rep.classification, BoundaryClass::None);
        assert!(!rep.impenetrable);
        assert!((rep.j0 - 0.8660254037844386).abs() < 1e-14);
    }

    #[test]
    fn nonrelativistic_kinds() {
        let main = nonrelativistic_limit(1e-4, 1.0, Convention::MainEq6).unwrap();
        assert_eq!(
            classify_boundary(&main, 1e-10).unwrap().classification,
            BoundaryClass::DirichletNr
        );
        let b = nonrelativistic_limit(1e-4, 1.0, Convention::NegativeEnergyB5).unwrap();
        assert_eq!(
            classify_boundary(&b, 1e-10).unwrap().classification,
            BoundaryClass::NeumannNr
        );
    }

    #[test]
    fn degenerate_spinor() {
        let rep = classify_boundary(&Spinor::ZERO, 1e-10).unwrap();
        assert_eq!(rep.classification, BoundaryClass::DirichletFull);
        assert!(!rep.classification.is_self_adjoint());
        assert!(classify_boundary(&Spinor::ZERO, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn dirichlet_implies_impenetrable(re in -5.0..5.0f64, im in -5.0..5.0f64, tiny in -1e-11..1e-11f64, upper in any::<bool>()) {
            let big = Complex64::new(re, im);
            prop_assume!(big.norm() > 1e-3);
            let small = Complex64::new(tiny, -tiny);
            let psi = if upper { Spinor::new(small, big) } else { Spinor::new(big, small) };
            let rep = classify_boundary(&psi, 1e-10).unwrap();
            if matches!(rep.classification, BoundaryClass::DirichletUpper | BoundaryClass::DirichletLower) {
                prop_assert!(rep.impenetrable);
            }
        }

        #[test]
        fn limits_classify_for_any_energy(x in 1e-3..1e3f64) {
            let e = 1.0 + x;
            let main = impenetrable_limit(e, 1.0, Convention::MainEq6).unwrap();
            prop_assert_eq!(classify_boundary(&main, 1e-10).unwrap().classification, BoundaryClass::DirichletUpper);
            let b = impenetrable_limit(e, 1.0, Convention::NegativeEnergyB5).unwrap();
            prop_assert_eq!(classify_boundary(&b, 1e-10).unwrap().classification, BoundaryClass::DirichletLower);
        }
    }
}
