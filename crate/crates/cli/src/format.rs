use dirac_step::Complex64;

/// Fixed decimals for ordinary magnitudes, scientific otherwise.
pub fn real(x: f64, precision: usize) -> String {
    // drop the sign of negative zero
    let x = x + 0.0;
    let a = x.abs();
    if x == 0.0 || (1e-4..1e6).contains(&a) {
        format!("{x:.precision$}")
    } else if x.is_finite() {
        format!("{x:.precision$e}")
    } else {
        format!("{x}")
    }
}

pub fn complex(z: Complex64, precision: usize) -> String {
    if z.im == 0.0 {
        return real(z.re, precision);
    }
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{} {sign} {}i", real(z.re, precision), real(z.im.abs(), precision))
}

/// CSV cell: 17 significant digits, empty when undefined.
pub fn cell(x: Option<f64>) -> String {
    match x {
        Some(v) => format!("{:.16e}", v + 0.0),
        None => String::new(),
    }
}

pub fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .or_else(|| s.split_once(':'))
        .ok_or_else(|| format!("expected XMIN,XMAX, got '{s}'"))?;
    let lo: f64 = a.trim().parse().map_err(|e| format!("'{a}': {e}"))?;
    let hi: f64 = b.trim().parse().map_err(|e| format!("'{b}': {e}"))?;
    if !(lo < hi) {
        return Err(format!("range needs XMIN < XMAX, got {lo} and {hi}"));
    }
    Ok((lo, hi))
}
