//! Randomised property suites shared by the CLI and the acceptance tests.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::boundary::{classify_boundary, BoundaryClass, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::limits::{convergence_scan, impenetrable_limit};
use crate::matcher::{match_solution, Convention};
use crate::observables::coefficients;
use crate::oracle::{integrate_scattering, richardson_reflection, SmoothStep};
use crate::setup::{kinematics, PhysicalSetup, Regime};

pub const CONSERVATION_TOLERANCE: f64 = 1e-12;
pub const LIMIT_TOLERANCE: f64 = 1e-12;
pub const TWO_SIDED_OFFSET: f64 = 1e-8;
pub const TWO_SIDED_TOLERANCE: f64 = 1e-5;
pub const ORACLE_TOLERANCE: f64 = 1e-6;
pub const ORACLE_DRIFT_TOLERANCE: f64 = 1e-9;

/// Lower and upper bounds of the log-uniform draw of E/mc².
pub const ENERGY_RATIO_RANGE: (f64, f64) = (1.0 + 1e-3, 1e3);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Conservation,
    Limits,
    ClosedVsOracle,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Conservation, Suite::Limits, Suite::ClosedVsOracle];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Conservation => "conservation",
            Suite::Limits => "limits",
            Suite::ClosedVsOracle => "closed-vs-oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub mass_energy: f64,
    pub energy: f64,
    pub step_height: f64,
    pub convention: Option<Convention>,
    pub error: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    /// Largest raw error over every check of the suite.
    pub max_error: f64,
    /// Tolerance of the suite's main check; each failure carries its own.
    pub tolerance: f64,
    /// How the compared quantity was obtained, when there is a choice.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    fn new(suite: Suite, seed: u64, trials: usize, tolerance: f64) -> Self {
        SuiteReport {
            suite: suite.name().to_string(),
            seed,
            trials,
            max_error: 0.0,
            tolerance,
            method: None,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, check: &str, s: &PhysicalSetup, conv: Option<Convention>, error: f64, tol: f64) {
        if error.is_nan() || error > self.max_error {
            self.max_error = error;
        }
        if !(error <= tol) {
            self.failures.push(Failure {
                check: check.to_string(),
                mass_energy: s.mass_energy,
                energy: s.energy,
                step_height: s.step_height,
                convention: conv,
                error,
                tolerance: tol,
            });
        }
    }
}

/// E/mc² log-uniform over [`ENERGY_RATIO_RANGE`].
pub fn random_energy<R: Rng>(rng: &mut R, mass_energy: f64) -> f64 {
    let (lo, hi) = ENERGY_RATIO_RANGE;
    mass_energy * rng.gen_range(lo.ln()..hi.ln()).exp()
}

/// A setup with unit mass, random energy and V₀ uniform inside `regime`.
/// The Klein zone is sampled on `(E + mc², 3(E + mc²))`.
pub fn random_setup<R: Rng>(rng: &mut R, regime: Regime) -> Result<PhysicalSetup> {
    let m = 1.0;
    loop {
        let e = random_energy(rng, m);
        let (lo, hi) = match regime {
            Regime::KleinZone => (e + m, 3.0 * (e + m)),
            Regime::Evanescent => (e - m, e + m),
            Regime::Transmission => (0.0, e - m),
            edge => return Err(Error::EdgeRegime { regime: edge }),
        };
        let v = rng.gen_range(lo..hi);
        if v > lo {
            let s = PhysicalSetup::new(m, v, e)?;
            if s.regime() == regime {
                return Ok(s);
            }
        }
    }
}

/// `|R + T − 1|` (relative to `max(|R|+|T|, 1)`) and the continuity residual
/// over `trials` setups per propagating regime and every available convention.
pub fn conservation_suite(seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = SuiteReport::new(Suite::Conservation, seed, trials, CONSERVATION_TOLERANCE);
    for regime in [Regime::KleinZone, Regime::Evanescent, Regime::Transmission] {
        for _ in 0..trials {
            let s = random_setup(&mut rng, regime)?;
            let kin = kinematics(&s)?;
            for conv in Convention::ALL.into_iter().filter(|c| c.is_available(regime)) {
                let sol = match_solution(&kin, conv)?;
                let obs = coefficients(&sol);
                let tol = CONSERVATION_TOLERANCE;
                rep.check("R + T = 1", &s, Some(conv), obs.relative_conservation_residual(), tol);
                let scale = sol.left(0.0).norm().max(1.0);
                rep.check(
                    "continuity at x = 0",
                    &s,
                    Some(conv),
                    sol.continuity_residual() / scale,
                    tol,
                );
            }
        }
    }
    Ok(rep)
}

/// Impenetrable-limit identities, boundary classes and the two-sided
/// approach of the force at `|V₀ − (E + mc²)| = 10⁻⁸`.
pub fn limits_suite(seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = SuiteReport::new(Suite::Limits, seed, trials, LIMIT_TOLERANCE);
    let m = 1.0;
    for _ in 0..trials {
        let e = random_energy(&mut rng, m);
        let s = PhysicalSetup::new(m, e + m, e)?;
        let target = -4.0 * (e - m);
        let tol = LIMIT_TOLERANCE;

        let main = impenetrable_limit(e, m, Convention::MainEq6)?;
        let psi0 = main.spinor_at(0.0);
        let conv = Some(Convention::MainEq6);
        rep.check(
            "R = 1, T = 0, v = 0",
            &s,
            conv,
            (main.reflection - 1.0).abs() + main.transmission.abs() + main.velocity().abs(),
            tol,
        );
        rep.check(
            "spinor(0) = [0, 2a]",
            &s,
            conv,
            psi0.upper.norm() + (psi0.lower.re - 2.0 * main.a).abs() + psi0.lower.im.abs(),
            tol,
        );
        rep.check(
            "force = −4(E − mc²)",
            &s,
            conv,
            (main.external_force() / target - 1.0).abs(),
            tol,
        );
        let class = classify_boundary(&main, DEFAULT_TOLERANCE)?.classification;
        rep.check(
            "main limit is Dirichlet upper",
            &s,
            conv,
            (class != BoundaryClass::DirichletUpper) as u8 as f64,
            tol,
        );

        let b = impenetrable_limit(e, m, Convention::NegativeEnergyB5)?;
        let conv = Some(Convention::NegativeEnergyB5);
        let psi0 = b.spinor_at(0.0);
        rep.check(
            "B5 spinor(0) = [2, 0]",
            &s,
            conv,
            (psi0.upper.re - 2.0).abs() + psi0.upper.im.abs() + psi0.lower.norm(),
            tol,
        );
        rep.check(
            "B5 external force = −4(E + mc²)",
            &s,
            conv,
            (b.external_force() / (-4.0 * (e + m)) - 1.0).abs(),
            tol,
        );
        rep.check(
            "B5 boundary force = −4(E − mc²)",
            &s,
            conv,
            (b.boundary_force() / target - 1.0).abs(),
            tol,
        );
        rep.check(
            "B5 forces disagree",
            &s,
            conv,
            ((b.external_force() - b.boundary_force()).abs() < 1.0) as u8 as f64,
            tol,
        );
        let class = classify_boundary(&b, DEFAULT_TOLERANCE)?.classification;
        rep.check(
            "B5 limit is Dirichlet lower",
            &s,
            conv,
            (class != BoundaryClass::DirichletLower) as u8 as f64,
            tol,
        );

        let rows = convergence_scan(e, m, Convention::MainEq6, &[TWO_SIDED_OFFSET, -TWO_SIDED_OFFSET])?;
        for row in rows {
            let branch = if row.delta > 0.0 { "Klein" } else { "evanescent" };
            let approach = PhysicalSetup::new(m, row.step_height, e)?;
            rep.check(
                &format!("two-sided force limit ({branch} side)"),
                &approach,
                Some(Convention::MainEq6),
                (row.force - target).abs(),
                TWO_SIDED_TOLERANCE,
            );
        }
    }
    Ok(rep)
}

/// Oracle against closed form on random Klein-zone setups.
///
/// With `richardson` the compared reflection is the w → 0 extrapolation
/// `(4R(w/2) − R(w))/3` instead of the raw value at width `width`.
pub fn closed_vs_oracle_suite(seed: u64, trials: usize, width: f64, tol: f64, richardson: bool) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = SuiteReport::new(Suite::ClosedVsOracle, seed, trials, ORACLE_TOLERANCE);
    rep.method = Some(if richardson { "richardson" } else { "raw" }.to_string());
    let conv = Convention::MainEq6;
    for _ in 0..trials {
        let s = random_setup(&mut rng, Regime::KleinZone)?;
        let closed = coefficients(&match_solution(&kinematics(&s)?, conv)?);
        let res = integrate_scattering(&s, &SmoothStep::new(s.step_height, width)?, conv, None, tol)?;
        let numeric = if richardson {
            richardson_reflection(&s, conv, width, tol)?
        } else {
            res.reflection
        };
        rep.check(
            "|R_num − R_closed|",
            &s,
            Some(conv),
            (numeric - closed.reflection).abs(),
            ORACLE_TOLERANCE,
        );
        rep.check(
            "current drift",
            &s,
            Some(conv),
            res.current_drift,
            ORACLE_DRIFT_TOLERANCE,
        );
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn random_setups_land_in_their_regime() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for regime in [Regime::KleinZone, Regime::Evanescent, Regime::Transmission] {
            for _ in 0..200 {
                let s = random_setup(&mut rng, regime).unwrap();
                assert_eq!(s.regime(), regime);
                let ratio = s.energy / s.mass_energy;
                assert!(ratio >= ENERGY_RATIO_RANGE.0 && ratio <= ENERGY_RATIO_RANGE.1);
            }
        }
        assert!(random_setup(&mut rng, Regime::EdgePoint).is_err());
    }

    #[test]
    fn conservation_suite_is_deterministic_and_passes() {
        let a = conservation_suite(42, 50).unwrap();
        let b = conservation_suite(42, 50).unwrap();
        assert_eq!(a, b);
        assert!(a.passed(), "{:?}", a.failures.first());
    }

    #[test]
    fn report_serialises_with_required_keys() {
        let rep = conservation_suite(1, 2).unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        for key in ["suite", "trials", "max_error", "failures"] {
            assert!(v.get(key).is_some());
        }
    }
}
