//! Two-component spinor algebra in the Dirac representation (α = σₓ, β = σ_z).

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A two-component wavefunction value `[φ, χ]`: upper (large) and lower (small) components.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Spinor {
    pub upper: Complex64,
    pub lower: Complex64,
}

impl Spinor {
    pub const ZERO: Spinor = Spinor {
        upper: ZERO,
        lower: ZERO,
    };

    pub fn new(upper: Complex64, lower: Complex64) -> Self {
        Self { upper, lower }
    }

    pub fn real(upper: f64, lower: f64) -> Self {
        Self::new(Complex64::new(upper, 0.0), Complex64::new(lower, 0.0))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.upper.conj(), self.lower.conj())
    }

    /// Euclidean norm `sqrt(|φ|² + |χ|²)`.
    pub fn norm(&self) -> f64 {
        self.upper.norm().hypot(self.lower.norm())
    }

    /// Largest component magnitude.
    pub fn max_abs(&self) -> f64 {
        self.upper.norm().max(self.lower.norm())
    }

    pub fn is_finite(&self) -> bool {
        self.upper.is_finite() && self.lower.is_finite()
    }
}

impl Add for Spinor {
    type Output = Spinor;
    fn add(self, rhs: Spinor) -> Spinor {
        Spinor::new(self.upper + rhs.upper, self.lower + rhs.lower)
    }
}

impl Sub for Spinor {
    type Output = Spinor;
    fn sub(self, rhs: Spinor) -> Spinor {
        Spinor::new(self.upper - rhs.upper, self.lower - rhs.lower)
    }
}

impl Neg for Spinor {
    type Output = Spinor;
    fn neg(self) -> Spinor {
        Spinor::new(-self.upper, -self.lower)
    }
}

impl Mul<Complex64> for Spinor {
    type Output = Spinor;
    fn mul(self, rhs: Complex64) -> Spinor {
        Spinor::new(self.upper * rhs, self.lower * rhs)
    }
}

impl Mul<f64> for Spinor {
    type Output = Spinor;
    fn mul(self, rhs: f64) -> Spinor {
        Spinor::new(self.upper * rhs, self.lower * rhs)
    }
}

/// Probability density `ψ†ψ = |φ|² + |χ|²`.
pub fn density(s: &Spinor) -> f64 {
    s.upper.norm_sqr() + s.lower.norm_sqr()
}

/// Probability current `c ψ†σₓψ = 2c Re(φ*χ)`, in units where c = 1.
pub fn current(s: &Spinor) -> f64 {
    2.0 * (s.upper.conj() * s.lower).re
}

/// A 2×2 complex matrix acting on spinors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[Complex64; 2]; 2]);

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2([[ONE, ZERO], [ZERO, ONE]]);
    pub const SIGMA_X: Matrix2 = Matrix2([[ZERO, ONE], [ONE, ZERO]]);
    pub const SIGMA_Y: Matrix2 = Matrix2([[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]]);
    pub const SIGMA_Z: Matrix2 = Matrix2([[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]]);

    pub fn apply(&self, s: &Spinor) -> Spinor {
        let m = &self.0;
        Spinor::new(
            m[0][0] * s.upper + m[0][1] * s.lower,
            m[1][0] * s.upper + m[1][1] * s.lower,
        )
    }

    pub fn matmul(&self, other: &Matrix2) -> Matrix2 {
        let (a, b) = (&self.0, &other.0);
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Matrix2(out)
    }

    pub fn add(&self, other: &Matrix2) -> Matrix2 {
        let mut out = self.0;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell += other.0[i][j];
            }
        }
        Matrix2(out)
    }

    /// Largest entry magnitude; used to compare matrices in tests.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// The Dirac matrices of the 1D equation in the Dirac representation.
pub struct DiracMatrices;

impl DiracMatrices {
    pub const ALPHA: Matrix2 = Matrix2::SIGMA_X;
    pub const BETA: Matrix2 = Matrix2::SIGMA_Z;
}

/// Which half-line a plane wave lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// x ≤ 0
    Left,
    /// x ≥ 0
    Right,
}

/// `amplitude · exp(i q x)` restricted to one side of the step.
///
/// A complex wave number carries evanescent decay in its imaginary part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    amplitude: Spinor,
    wave_number: Complex64,
    side: Side,
}

impl PlaneWave {
    /// Rejects waves that blow up away from the origin on their own side.
    pub fn new(amplitude: Spinor, wave_number: Complex64, side: Side) -> Result<Self> {
        let growing = match side {
            Side::Right => wave_number.im < 0.0,
            Side::Left => wave_number.im > 0.0,
        };
        if growing {
            return Err(Error::GrowingWave {
                re: wave_number.re,
                im: wave_number.im,
            });
        }
        Ok(Self {
            amplitude,
            wave_number,
            side,
        })
    }

    pub fn amplitude(&self) -> Spinor {
        self.amplitude
    }

    pub fn wave_number(&self) -> Complex64 {
        self.wave_number
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn scaled(&self, factor: Complex64) -> PlaneWave {
        PlaneWave {
            amplitude: self.amplitude * factor,
            ..*self
        }
    }

    pub fn at(&self, x: f64) -> Spinor {
        self.amplitude * (I * self.wave_number * x).exp()
    }

    /// Current of the wave at the origin; constant in x when the wave number is real.
    pub fn current(&self) -> f64 {
        current(&self.amplitude)
    }

    pub fn density(&self) -> f64 {
        density(&self.amplitude)
    }
}

/// Applies `ħc q σₓ + mc² σ_z + V` to the amplitude of a plane wave, i.e. the
/// Dirac Hamiltonian acting on `amplitude · e^{iqx}` divided by the phase factor.
pub fn apply_hamiltonian(pw: &PlaneWave, mass_energy: f64, potential: f64, hbar_c: f64) -> Spinor {
    let s = pw.amplitude;
    let kinetic = DiracMatrices::ALPHA.apply(&s) * (pw.wave_number * hbar_c);
    let rest = DiracMatrices::BETA.apply(&s) * mass_energy;
    kinetic + rest + s * potential
}

/// Relative residual `‖Hψ − λψ‖ / ‖ψ‖` of a candidate eigenvalue.
pub fn eigen_residual(pw: &PlaneWave, mass_energy: f64, potential: f64, hbar_c: f64, eigenvalue: f64) -> f64 {
    let h = apply_hamiltonian(pw, mass_energy, potential, hbar_c);
    let scale = pw.amplitude.norm();
    if scale == 0.0 {
        return h.norm();
    }
    (h - pw.amplitude * eigenvalue).norm() / scale
}

/// Charge conjugation `ψ → σₓ ψ*` with the global phase fixed to +1.
///
/// Conjugating `e^{iqx}` gives `e^{-iq* x}`, so the wave number maps to `-q*`.
pub fn charge_conjugate(pw: &PlaneWave) -> PlaneWave {
    PlaneWave {
        amplitude: Matrix2::SIGMA_X.apply(&pw.amplitude.conj()),
        wave_number: -pw.wave_number.conj(),
        side: pw.side,
    }
}
