//! Scattering of a one-dimensional Dirac particle off an electrostatic step.
//!
//! The step `V(x) = V₀ Θ(x)` is solved in closed form by matching plane
//! waves at the origin ([`matcher`]), for any of four transmitted-wave
//! conventions. [`limits`] gives the exact impenetrable-barrier and
//! nonrelativistic solutions, [`forces`] the mean force on the particle, and
//! [`oracle`] an independent ODE check across a smoothed step.
//!
//! Natural units throughout: energies share one unit, `ħc = 1` unless set
//! on [`PhysicalSetup`], and velocities are in units of c.
//!
//! ```
//! use dirac_step::{coefficients, kinematics, match_solution, Convention, PhysicalSetup};
//!
//! let setup = PhysicalSetup::new(1.0, 4.0, 2.0).unwrap(); // mc², V₀, E
//! let sol = match_solution(&kinematics(&setup).unwrap(), Convention::MainEq6).unwrap();
//! let obs = coefficients(&sol);
//! assert!((obs.reflection - 0.25).abs() < 1e-15);
//! assert!((obs.transmission - 0.75).abs() < 1e-15);
//! ```

// `!(a < b)` is used on purpose so NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boundary;
pub mod closed_form;
pub mod error;
pub mod forces;
pub mod limits;
pub mod matcher;
pub mod observables;
pub mod ode;
pub mod oracle;
pub mod sampler;
pub mod setup;
pub mod spinor;
pub mod verify;

pub use boundary::{classify_boundary, BoundaryClass, BoundaryReport};
pub use error::{Error, Result};
pub use forces::{force_report, ForceReport};
pub use limits::{
    convergence_scan, fit_transmission_exponent, impenetrable_limit, infinite_step_limit, nonrelativistic_limit,
    InfiniteStepLimit, LimitKind, LimitSolution, ScanRow,
};
pub use matcher::{evaluate, match_solution, Convention, ScatteringSolution};
pub use observables::{coefficients, transmitted_velocity, ObservableSet};
pub use oracle::{integrate_scattering, sharp_limit_study, OracleResult, SmoothStep};
pub use sampler::{read_csv, sample, write_csv, GridSample, SampleMetadata};
pub use setup::{classify_regime, kinematics, Kinematics, PhysicalSetup, Regime};
pub use spinor::{charge_conjugate, PlaneWave, Side, Spinor};
pub use verify::{Suite, SuiteReport};

pub use num_complex::Complex64;
