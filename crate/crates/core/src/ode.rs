//! Adaptive Dormand–Prince 5(4) integrator for two-component complex
//! linear systems `y' = f(x, y)`.

use crate::error::{Error, Result};
use crate::spinor::Spinor;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    /// Relative tolerance on the local error, measured against the largest
    /// component of the state.
    pub tol: f64,
    pub initial_step: f64,
    /// Integration fails once a rejected step would fall below this size.
    pub min_step: f64,
    pub max_steps: usize,
    /// When set, the local error of a step of size h is held to
    /// `tol·|h|/span`, so the summed local error over the span stays below
    /// `tol` instead of growing with the number of steps.
    pub per_unit_step: Option<f64>,
}

impl StepControl {
    pub fn new(tol: f64, span: f64) -> Self {
        let span = span.abs();
        StepControl {
            tol,
            initial_step: span * 1e-4,
            min_step: span * 1e-15,
            max_steps: 20_000_000,
            per_unit_step: None,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct IntegrationStats {
    pub accepted: usize,
    pub rejected: usize,
    /// Largest normalised local error estimate among accepted steps.
    pub max_local_error: f64,
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;

// fifth-order weights (also row 7 of the tableau)
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;

// fifth minus fourth order
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Integrates from `x0` to `x1` (either direction), calling `observe` at
/// the start and after every accepted step.
pub fn integrate<F, O>(
    f: F,
    x0: f64,
    y0: Spinor,
    x1: f64,
    ctl: &StepControl,
    mut observe: O,
) -> Result<(Spinor, IntegrationStats)>
where
    F: Fn(f64, &Spinor) -> Spinor,
    O: FnMut(f64, &Spinor),
{
    if !(ctl.tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {}",
            ctl.tol
        )));
    }
    let dir = if x1 >= x0 { 1.0 } else { -1.0 };
    let mut x = x0;
    let mut y = y0;
    let mut h = ctl.initial_step.abs().max(ctl.min_step) * dir;
    let mut stats = IntegrationStats::default();
    let mut k1 = f(x, &y);
    observe(x, &y);

    while (x1 - x) * dir > 0.0 {
        if stats.accepted + stats.rejected >= ctl.max_steps {
            return Err(Error::Integration(format!(
                "step budget of {} exhausted at x = {x}",
                ctl.max_steps
            )));
        }
        let last = (x + h - x1) * dir >= 0.0;
        if last {
            h = x1 - x;
        }

        let k2 = f(x + C2 * h, &(y + k1 * (h * A21)));
        let k3 = f(x + C3 * h, &(y + (k1 * A31 + k2 * A32) * h));
        let k4 = f(x + C4 * h, &(y + (k1 * A41 + k2 * A42 + k3 * A43) * h));
        let k5 = f(x + C5 * h, &(y + (k1 * A51 + k2 * A52 + k3 * A53 + k4 * A54) * h));
        let k6 = f(x + h, &(y + (k1 * A61 + k2 * A62 + k3 * A63 + k4 * A64 + k5 * A65) * h));
        let y_new = y + (k1 * B1 + k3 * B3 + k4 * B4 + k5 * B5 + k6 * B6) * h;
        let k7 = f(x + h, &y_new);
        let err = (k1 * E1 + k3 * E3 + k4 * E4 + k5 * E5 + k6 * E6 + k7 * E7) * h;

        let mut scale = ctl.tol * y.max_abs().max(y_new.max_abs()).max(f64::MIN_POSITIVE);
        if let Some(span) = ctl.per_unit_step {
            scale *= h.abs() / span;
        }
        // with per-unit-step control the ratio scales as h⁴ rather than h⁵
        let order = if ctl.per_unit_step.is_some() { 0.25 } else { 0.2 };
        let ratio = err.max_abs() / scale;
        if !ratio.is_finite() || !y_new.is_finite() {
            return Err(Error::Integration(format!("non-finite state at x = {x}")));
        }

        if ratio <= 1.0 {
            x = if last { x1 } else { x + h };
            y = y_new;
            k1 = k7;
            stats.accepted += 1;
            stats.max_local_error = stats.max_local_error.max(ratio);
            observe(x, &y);
            let grow = if ratio == 0.0 {
                5.0
            } else {
                (0.9 * ratio.powf(-order)).clamp(0.2, 5.0)
            };
            h *= grow;
        } else {
            stats.rejected += 1;
            h *= (0.9 * ratio.powf(-order)).clamp(0.1, 0.9);
            if h.abs() < ctl.min_step {
                return Err(Error::Integration(format!(
                    "step size fell below {:e} at x = {x}",
                    ctl.min_step
                )));
            }
        }
    }
    Ok((y, stats))
}
