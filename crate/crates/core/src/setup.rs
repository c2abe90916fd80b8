//! Problem statement, regime classification and kinematics of the step.
//!
//! Everything is in natural units: energies share one arbitrary unit and
//! lengths are measured in `ħc / energy`. `hbar_c` defaults to 1 and only
//! rescales wave numbers.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rest energy, step height and incident energy of the scattering problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalSetup {
    pub mass_energy: f64,
    pub step_height: f64,
    pub energy: f64,
    pub hbar_c: f64,
}

impl PhysicalSetup {
    pub fn new(mass_energy: f64, step_height: f64, energy: f64) -> Result<Self> {
        Self::with_hbar_c(mass_energy, step_height, energy, 1.0)
    }

    pub fn with_hbar_c(mass_energy: f64, step_height: f64, energy: f64, hbar_c: f64) -> Result<Self> {
        for (name, v) in [
            ("mass energy", mass_energy),
            ("step height", step_height),
            ("energy", energy),
            ("hbar_c", hbar_c),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")));
            }
        }
        if mass_energy < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "mass energy must be non-negative, got {mass_energy}"
            )));
        }
        if step_height <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "step height must be positive, got {step_height}"
            )));
        }
        if hbar_c <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "hbar_c must be positive, got {hbar_c}"
            )));
        }
        if energy <= mass_energy {
            return Err(Error::NoIncidentWave { energy, mass_energy });
        }
        Ok(Self {
            mass_energy,
            step_height,
            energy,
            hbar_c,
        })
    }

    /// Same particle and energy, different step height.
    pub fn with_step_height(&self, step_height: f64) -> Result<Self> {
        Self::with_hbar_c(self.mass_energy, step_height, self.energy, self.hbar_c)
    }

    /// Multiplies every energy by `factor`, leaving `hbar_c` alone.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::with_hbar_c(
            self.mass_energy * factor,
            self.step_height * factor,
            self.energy * factor,
            self.hbar_c,
        )
    }

    /// `E + mc²`, the step height at which the barrier becomes impenetrable.
    pub fn klein_threshold(&self) -> f64 {
        self.energy + self.mass_energy
    }

    /// Nonrelativistic kinetic energy `E − mc²`.
    pub fn kinetic_energy(&self) -> f64 {
        self.energy - self.mass_energy
    }

    pub fn regime(&self) -> Regime {
        classify_regime(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// V₀ < E − mc²: propagating wave above the step.
    Transmission,
    /// V₀ = E − mc² exactly.
    EdgeLower,
    /// E − mc² < V₀ < E + mc²: decaying wave under the step, total reflection.
    Evanescent,
    /// V₀ = E + mc² exactly: the impenetrable barrier.
    EdgePoint,
    /// V₀ > E + mc²: Klein energy zone.
    KleinZone,
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::Transmission => "transmission",
            Regime::EdgeLower => "edge-lower",
            Regime::Evanescent => "evanescent",
            Regime::EdgePoint => "edge-point",
            Regime::KleinZone => "klein-zone",
        }
    }

    pub fn is_edge(&self) -> bool {
        matches!(self, Regime::EdgeLower | Regime::EdgePoint)
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exact comparison against `E ± mc²`; edges only on bitwise equality.
///
/// With zero mass both edges coincide and the point is reported as `EdgePoint`.
pub fn classify_regime(setup: &PhysicalSetup) -> Regime {
    let v = setup.step_height;
    let upper = setup.energy + setup.mass_energy;
    let lower = setup.energy - setup.mass_energy;
    if v == upper {
        Regime::EdgePoint
    } else if v == lower {
        Regime::EdgeLower
    } else if v > upper {
        Regime::KleinZone
    } else if v > lower {
        Regime::Evanescent
    } else {
        Regime::Transmission
    }
}

/// Wave numbers and spinor ratios of the scattering problem.
///
/// `b` is defined so that the physical transmitted wave (right-moving or
/// decaying) always reads `[1, −b] e^{iqx}` with `q = transmitted_q`:
/// real and negative in the Klein zone, pure imaginary in the evanescent
/// regime, real and negative in the transmission regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    pub setup: PhysicalSetup,
    pub regime: Regime,
    /// Incident wave number k.
    pub k: f64,
    /// k̄ in the Klein zone and transmission regime, κ in the evanescent regime.
    pub kbar_or_kappa: f64,
    /// Lower-to-upper ratio of the incident spinor.
    pub a: f64,
    pub b: Complex64,
    /// `b″ = −1/b`, evaluated directly so it stays finite near the edge point.
    pub b_dprime: Complex64,
    /// Wave number of the physical transmitted wave.
    pub transmitted_q: Complex64,
}

impl Kinematics {
    /// `b′ = 1/b`.
    pub fn b_prime(&self) -> Complex64 {
        -self.b_dprime
    }
}

/// Derives the kinematic quantities. Fails at the two edge points, where the
/// transmitted wave number vanishes.
pub fn kinematics(setup: &PhysicalSetup) -> Result<Kinematics> {
    let regime = classify_regime(setup);
    if regime.is_edge() {
        return Err(Error::EdgeRegime { regime });
    }
    let PhysicalSetup {
        mass_energy: m,
        step_height: v0,
        energy: e,
        hbar_c,
    } = *setup;

    let k = ((e - m) * (e + m)).sqrt() / hbar_c;
    let a = if m == 0.0 { 1.0 } else { ((e - m) / (e + m)).sqrt() };
    let u = e - v0;

    let (kbar_or_kappa, b, b_dprime, transmitted_q) = match regime {
        Regime::KleinZone => {
            let w = -u;
            let kbar = ((w - m) * (w + m)).sqrt() / hbar_c;
            let bdd = ((w - m) / (w + m)).sqrt();
            let b = -((w + m) / (w - m)).sqrt();
            (
                kbar,
                Complex64::new(b, 0.0),
                Complex64::new(bdd, 0.0),
                Complex64::new(-kbar, 0.0),
            )
        }
        Regime::Transmission => {
            let kbar = ((u - m) * (u + m)).sqrt() / hbar_c;
            let b = -((u - m) / (u + m)).sqrt();
            let bdd = ((u + m) / (u - m)).sqrt();
            (
                kbar,
                Complex64::new(b, 0.0),
                Complex64::new(bdd, 0.0),
                Complex64::new(kbar, 0.0),
            )
        }
        Regime::Evanescent => {
            let kappa = ((m - u) * (m + u)).sqrt() / hbar_c;
            let beta = ((m - u) / (m + u)).sqrt();
            (
                kappa,
                Complex64::new(0.0, -beta),
                Complex64::new(0.0, -1.0 / beta),
                Complex64::new(0.0, kappa),
            )
        }
        Regime::EdgeLower | Regime::EdgePoint => unreachable!("edges rejected above"),
    };

    Ok(Kinematics {
        setup: *setup,
        regime,
        k,
        kbar_or_kappa,
        a,
        b,
        b_dprime,
        transmitted_q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn setup(m: f64, e: f64, v: f64) -> PhysicalSetup {
        PhysicalSetup::new(m, v, e).unwrap()
    }

    #[test]
    fn regime_examples() {
        assert_eq!(classify_regime(&setup(1.0, 2.0, 4.0)), Regime::KleinZone);
        assert_eq!(classify_regime(&setup(1.0, 2.0, 2.5)), Regime::Evanescent);
        assert_eq!(classify_regime(&setup(1.0, 2.0, 3.0)), Regime::EdgePoint);
        assert_eq!(classify_regime(&setup(1.0, 2.0, 1.0)), Regime::EdgeLower);
        assert_eq!(classify_regime(&setup(1.0, 2.0, 0.5)), Regime::Transmission);
        assert_eq!(classify_regime(&setup(0.0, 1.0, 1.0)), Regime::EdgePoint);
    }

    #[test]
    fn rejects_bad_setups() {
        assert!(matches!(
            PhysicalSetup::new(1.0, 4.0, 1.0),
            Err(Error::NoIncidentWave { .. })
        ));
        assert!(PhysicalSetup::new(1.0, 4.0, 0.5).is_err());
        assert!(PhysicalSetup::new(-1.0, 4.0, 2.0).is_err());
        assert!(PhysicalSetup::new(1.0, 0.0, 2.0).is_err());
        assert!(PhysicalSetup::new(1.0, f64::NAN, 2.0).is_err());
        assert!(PhysicalSetup::with_hbar_c(1.0, 4.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn golden_klein_kinematics() {
        // 40-digit reference: a = 1/√3, k = k̄ = √3, b = −√3, b″ = 1/√3
        let kin = kinematics(&setup(1.0, 2.0, 4.0)).unwrap();
        assert!((kin.a - 0.5773502691896258).abs() < 1e-15);
        assert!((kin.k - 1.7320508075688772).abs() < 1e-15);
        assert!((kin.kbar_or_kappa - 1.7320508075688772).abs() < 1e-15);
        assert!((kin.b.re + 1.7320508075688772).abs() < 1e-15);
        assert_eq!(kin.b.im, 0.0);
        assert!((kin.b_dprime.re - 0.5773502691896258).abs() < 1e-15);
        assert!((kin.b_prime().re + 0.5773502691896258).abs() < 1e-15);
        assert_eq!(kin.transmitted_q.re, -kin.kbar_or_kappa);
    }

    #[test]
    fn massless_kinematics() {
        let kin = kinematics(&setup(0.0, 1.0, 2.0)).unwrap();
        assert_eq!(kin.a, 1.0);
        assert_eq!(kin.b.re, -1.0);
    }

    #[test]
    fn evanescent_kinematics() {
        let kin = kinematics(&setup(1.0, 2.0, 2.5)).unwrap();
        // u = −0.5: κ = √(1 − 0.25), b = −i √(1.5/0.5)
        assert!((kin.kbar_or_kappa - 0.75_f64.sqrt()).abs() < 1e-15);
        assert_eq!(kin.b.re, 0.0);
        assert!((kin.b.im + 3.0_f64.sqrt()).abs() < 1e-15);
        assert!((kin.b * kin.b_dprime + 1.0).norm() < 1e-15);
        assert!(kin.transmitted_q.im > 0.0);
    }

    #[test]
    fn edges_are_domain_errors() {
        assert!(matches!(
            kinematics(&setup(1.0, 2.0, 3.0)),
            Err(Error::EdgeRegime {
                regime: Regime::EdgePoint
            })
        ));
        assert!(matches!(
            kinematics(&setup(1.0, 2.0, 1.0)),
            Err(Error::EdgeRegime {
                regime: Regime::EdgeLower
            })
        ));
    }

    #[test]
    fn hbar_c_scales_wave_numbers_only() {
        let base = kinematics(&setup(1.0, 2.0, 4.0)).unwrap();
        let scaled = kinematics(&PhysicalSetup::with_hbar_c(1.0, 4.0, 2.0, 0.5).unwrap()).unwrap();
        assert!((scaled.k - 2.0 * base.k).abs() < 1e-14);
        assert_eq!(scaled.a, base.a);
        assert_eq!(scaled.b, base.b);
    }

    fn klein_setup() -> impl Strategy<Value = PhysicalSetup> {
        (0.01..10.0f64, 1e-3..50.0f64, 1e-6..100.0f64).prop_map(|(m, excess, above)| {
            let e = m * (1.0 + excess);
            let v = e + m + above;
            PhysicalSetup::new(m, v, e).unwrap()
        })
    }

    proptest! {
        #[test]
        fn klein_zone_invariants(s in klein_setup()) {
            prop_assume!(classify_regime(&s) == Regime::KleinZone);
            let kin = kinematics(&s).unwrap();
            let (m, e, v) = (s.mass_energy, s.energy, s.step_height);
            prop_assert!(kin.a * kin.b.re < 0.0);
            prop_assert!(kin.a > 0.0 && kin.a < 1.0);
            prop_assert!((kin.b * kin.b_prime() - 1.0).norm() < 1e-14);
            prop_assert!(kin.b_dprime.re > 0.0);
            prop_assert!((kin.k - (e * e - m * m).sqrt()).abs() <= 1e-12 * kin.k.max(1.0));
            let kbar = ((e - v).powi(2) - m * m).sqrt();
            prop_assert!((kin.kbar_or_kappa - kbar).abs() <= 1e-9 * kbar.max(1.0));
        }

        #[test]
        fn classification_is_total(m in 0.0..5.0f64, excess in 1e-6..10.0f64, v in 1e-6..40.0f64) {
            let e = m + excess;
            let s = PhysicalSetup::new(m, v, e).unwrap();
            let r = classify_regime(&s);
            let expected = if v > e + m { Regime::KleinZone }
                else if v == e + m { Regime::EdgePoint }
                else if v == e - m { Regime::EdgeLower }
                else if v > e - m { Regime::Evanescent }
                else { Regime::Transmission };
            prop_assert_eq!(r, expected);
        }

        #[test]
        fn a_increases_with_energy(m in 0.01..5.0f64, e1 in 1.0001..100.0f64, de in 1e-3..100.0f64) {
            let s1 = PhysicalSetup::new(m, 1.0, m * e1).unwrap();
            let s2 = PhysicalSetup::new(m, 1.0, m * (e1 + de)).unwrap();
            let a1 = kinematics(&s1).map(|k| k.a);
            let a2 = kinematics(&s2).map(|k| k.a);
            if let (Ok(a1), Ok(a2)) = (a1, a2) {
                prop_assert!(a2 > a1);
            }
        }

        #[test]
        fn common_energy_scale_invariance(s in klein_setup(), factor in 0.01..100.0f64) {
            let scaled = s.scaled(factor).unwrap();
            prop_assume!(classify_regime(&scaled) == Regime::KleinZone);
            let k1 = kinematics(&s).unwrap();
            let k2 = kinematics(&scaled).unwrap();
            prop_assert!((k1.a - k2.a).abs() < 1e-12);
            prop_assert!((k1.b - k2.b).norm() < 1e-8 * k1.b.norm());
            prop_assert!((k2.k - factor * k1.k).abs() < 1e-12 * k2.k);
            prop_assert!((k2.kbar_or_kappa - factor * k1.kbar_or_kappa).abs() < 1e-8 * k2.kbar_or_kappa);
        }
    }
}
