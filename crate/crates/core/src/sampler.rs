//! Grid sampling of solutions and CSV serialisation with a JSON sidecar.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::LimitSolution;
use crate::matcher::ScatteringSolution;
use crate::spinor::{current, density, Spinor};

pub const CSV_HEADER: &str = "x,phi_re,phi_im,chi_re,chi_im,rho,j";
pub const GENERATOR_VERSION: &str = concat!("dirac-step ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SampleMetadata {
    pub mass_energy: f64,
    pub step_height: f64,
    pub energy: f64,
    pub convention: String,
    pub regime: String,
    pub generator_version: String,
}

/// Piecewise solution with separately evaluable sides of the step.
pub trait Sampleable {
    fn left(&self, x: f64) -> Spinor;
    fn right(&self, x: f64) -> Spinor;
    fn metadata(&self) -> SampleMetadata;
}

impl Sampleable for ScatteringSolution {
    fn left(&self, x: f64) -> Spinor {
        ScatteringSolution::left(self, x)
    }

    fn right(&self, x: f64) -> Spinor {
        ScatteringSolution::right(self, x)
    }

    fn metadata(&self) -> SampleMetadata {
        let s = self.kinematics.setup;
        SampleMetadata {
            mass_energy: s.mass_energy,
            step_height: s.step_height,
            energy: s.energy,
            convention: self.convention.name().to_string(),
            regime: self.kinematics.regime.name().to_string(),
            generator_version: GENERATOR_VERSION.to_string(),
        }
    }
}

impl Sampleable for LimitSolution {
    fn left(&self, x: f64) -> Spinor {
        self.spinor_left(x)
    }

    fn right(&self, x: f64) -> Spinor {
        self.spinor_right(x)
    }

    fn metadata(&self) -> SampleMetadata {
        SampleMetadata {
            mass_energy: self.mass_energy,
            step_height: self.step_height(),
            energy: self.energy,
            convention: self.kind.name().to_string(),
            regime: "edge-point".to_string(),
            generator_version: GENERATOR_VERSION.to_string(),
        }
    }
}

/// Positions and spinor values; density and current are always recomputed.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSample {
    pub xs: Vec<f64>,
    pub values: Vec<Spinor>,
    pub metadata: SampleMetadata,
}

impl GridSample {
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn rho(&self) -> Vec<f64> {
        self.values.iter().map(density).collect()
    }

    pub fn j(&self) -> Vec<f64> {
        self.values.iter().map(current).collect()
    }

    /// Row indices at x = 0: the left value first, then the right value.
    pub fn origin_rows(&self) -> Vec<usize> {
        (0..self.xs.len()).filter(|&i| self.xs[i] == 0.0).collect()
    }
}

/// Samples `n_points` uniform positions in `[x_min, x_max]`.
///
/// When the interval contains the step, the position nearest to it is moved
/// onto x = 0 and written twice, left value then right value.
pub fn sample<S: Sampleable + ?Sized>(sol: &S, x_min: f64, x_max: f64, n_points: usize) -> Result<GridSample> {
    if n_points < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 points, got {n_points}"
        )));
    }
    if !(x_min < x_max && x_min.is_finite() && x_max.is_finite()) {
        return Err(Error::InvalidParameter(format!("invalid range [{x_min}, {x_max}]")));
    }
    let dx = (x_max - x_min) / (n_points - 1) as f64;
    let mut grid: Vec<f64> = (0..n_points)
        .map(|i| {
            if i == n_points - 1 {
                x_max
            } else {
                x_min + dx * i as f64
            }
        })
        .collect();
    let origin = if x_min <= 0.0 && 0.0 <= x_max {
        let nearest = (0..n_points)
            .min_by(|&i, &j| grid[i].abs().total_cmp(&grid[j].abs()))
            .expect("non-empty grid");
        grid[nearest] = 0.0;
        Some(nearest)
    } else {
        None
    };

    let mut xs = Vec::with_capacity(n_points + 1);
    let mut values = Vec::with_capacity(n_points + 1);
    for (i, &x) in grid.iter().enumerate() {
        if Some(i) == origin {
            xs.push(0.0);
            values.push(sol.left(0.0));
            xs.push(0.0);
            values.push(sol.right(0.0));
        } else if x < 0.0 {
            xs.push(x);
            values.push(sol.left(x));
        } else {
            xs.push(x);
            values.push(sol.right(x));
        }
    }
    Ok(GridSample {
        xs,
        values,
        metadata: sol.metadata(),
    })
}

/// `<stem>.meta.json` next to the CSV file.
pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("meta.json")
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Renders the CSV body. 17 significant digits, `\n` line endings.
pub fn to_csv_string(gs: &GridSample) -> String {
    let mut out = String::with_capacity(32 + gs.len() * 7 * 25);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (x, v) in gs.xs.iter().zip(&gs.values) {
        let fields = [
            *x,
            v.upper.re,
            v.upper.im,
            v.lower.re,
            v.lower.im,
            density(v),
            current(v),
        ];
        // `+ 0.0` turns −0 into +0 so equal values print identically
        let row: Vec<String> = fields.iter().map(|f| format!("{:.16e}", f + 0.0)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Writes the CSV and its metadata sidecar.
pub fn write_csv(gs: &GridSample, path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    w.write_all(to_csv_string(gs).as_bytes()).map_err(io_err(path))?;
    w.flush().map_err(io_err(path))?;

    let meta_path = sidecar_path(path);
    let mut json = serde_json::to_string_pretty(&gs.metadata).expect("metadata serialises");
    json.push('\n');
    fs::write(&meta_path, json).map_err(io_err(&meta_path))
}

/// Reads a CSV written by [`write_csv`]; the sidecar is loaded when present.
pub fn read_csv(path: &Path) -> Result<GridSample> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let parse_err = |line: usize, reason: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => return Err(parse_err(1, format!("unexpected header {other:?}"))),
    }
    let mut xs = Vec::new();
    let mut values = Vec::new();
    for (n, line) in lines.enumerate() {
        let lineno = n + 2;
        let f: Vec<f64> = line
            .split(',')
            .map(|s| s.parse::<f64>().map_err(|e| parse_err(lineno, format!("{s:?}: {e}"))))
            .collect::<Result<_>>()?;
        if f.len() != 7 {
            return Err(parse_err(lineno, format!("expected 7 fields, found {}", f.len())));
        }
        xs.push(f[0]);
        values.push(Spinor::new(
            num_complex::Complex64::new(f[1], f[2]),
            num_complex::Complex64::new(f[3], f[4]),
        ));
    }
    let meta_path = sidecar_path(path);
    let metadata = if meta_path.exists() {
        let raw = fs::read_to_string(&meta_path).map_err(io_err(&meta_path))?;
        serde_json::from_str(&raw).map_err(|e| Error::Parse {
            path: meta_path.clone(),
            line: e.line(),
            reason: e.to_string(),
        })?
    } else {
        SampleMetadata::default()
    };
    Ok(GridSample { xs, values, metadata })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::{impenetrable_limit, nonrelativistic_limit};
    use crate::matcher::{match_solution, Convention};
    use crate::setup::{kinematics, PhysicalSetup};

    fn klein() -> ScatteringSolution {
        let kin = kinematics(&PhysicalSetup::new(1.0, 4.0, 2.0).unwrap()).unwrap();
        match_solution(&kin, Convention::MainEq6).unwrap()
    }

    #[test]
    fn impenetrable_sample_carries_no_current() {
        let sol = impenetrable_limit(2.0, 1.0, Convention::MainEq6).unwrap();
        let gs = sample(&sol, -5.0, 2.0, 141).unwrap();
        assert_eq!(gs.len(), 142);
        assert!(gs.j().iter().all(|&j| j == 0.0));
        let origin = gs.origin_rows();
        assert_eq!(origin.len(), 2);
        assert!((gs.rho()[origin[0]] - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn klein_sample_has_constant_current() {
        let gs = sample(&klein(), -10.0, 10.0, 501).unwrap();
        let j = gs.j();
        assert!(j.iter().all(|&v| (v - 0.8660254037844386).abs() < 1e-13));
        assert!(gs.xs.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn nonrelativistic_sample_has_no_lower_component() {
        let sol = nonrelativistic_limit(1e-3, 1.0, Convention::MainEq6).unwrap();
        let gs = sample(&sol, -50.0, 5.0, 200).unwrap();
        assert!(gs.values.iter().all(|v| v.lower.norm() < 1e-12));
    }

    #[test]
    fn grid_without_origin() {
        let gs = sample(&klein(), 1.0, 2.0, 5).unwrap();
        assert_eq!(gs.xs, vec![1.0, 1.25, 1.5, 1.75, 2.0]);
        assert!(gs.origin_rows().is_empty());
        assert!(sample(&klein(), 1.0, 2.0, 1).is_err());
        assert!(sample(&klein(), 2.0, 1.0, 5).is_err());
    }

    #[test]
    fn csv_round_trip_and_determinism() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("klein.csv");
        let gs = sample(&klein(), -3.0, 3.0, 61).unwrap();
        write_csv(&gs, &path).unwrap();
        let first = fs::read(&path).unwrap();
        write_csv(&gs, &path).unwrap();
        assert_eq!(first, fs::read(&path).unwrap());
        let text = String::from_utf8(first).unwrap();
        assert!(text.starts_with("x,phi_re,phi_im,chi_re,chi_im,rho,j\n"));
        assert!(!text.contains('\r'));

        let back = read_csv(&path).unwrap();
        assert_eq!(back.xs, gs.xs);
        assert_eq!(back.values, gs.values);
        assert_eq!(back.metadata, gs.metadata);
        assert_eq!(back.metadata.regime, "klein-zone");

        let meta: serde_json::Value = serde_json::from_str(&fs::read_to_string(sidecar_path(&path)).unwrap()).unwrap();
        for key in [
            "mass_energy",
            "step_height",
            "energy",
            "convention",
            "regime",
            "generator_version",
        ] {
            assert!(meta.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn io_errors_name_the_path() {
        let gs = sample(&klein(), -1.0, 1.0, 3).unwrap();
        let err = write_csv(&gs, Path::new("/nonexistent-dir/x.csv")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x.csv"), "{err}");
    }
}
