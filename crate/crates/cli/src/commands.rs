use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::ValueEnum;
use dirac_step::boundary::DEFAULT_TOLERANCE;
use dirac_step::sampler::{Sampleable, GENERATOR_VERSION};
use dirac_step::verify::{closed_vs_oracle_suite, conservation_suite, limits_suite};
use dirac_step::*;

use crate::format::{cell, complex, real};
use crate::{
    Cli, Command, LimitArgs, LimitChoice, ScatterArgs, SuiteArg, SweepArgs, Vary, VerifyArgs, WavefunctionArgs, Which,
};

pub fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Scatter(a) => scatter(cli, a),
        Command::Sweep(a) => sweep(cli, a),
        Command::Limit(a) => limit(cli, a),
        Command::Verify(a) => verify(cli, a),
        Command::Wavefunction(a) => wavefunction(cli, a),
    }
}

fn value_name<V: ValueEnum>(v: V) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

/// Echoes the fully resolved parameters before any result.
fn header(command: &str, params: &[(&str, String)]) {
    println!("# {GENERATOR_VERSION} {command}");
    for (k, v) in params {
        println!("# {k} = {v}");
    }
}

fn row(label: &str, value: String) {
    println!("{label:<16} = {value}");
}

fn check_mass(mass: f64) -> Result<()> {
    if !(mass >= 0.0 && mass.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "mass energy must be non-negative, got {mass}"
        )));
    }
    Ok(())
}

fn scatter(cli: &Cli, a: &ScatterArgs) -> Result<ExitCode> {
    let p = cli.precision;
    let conv: Convention = a.particle.convention.parse()?;
    let setup = PhysicalSetup::new(a.particle.mass, a.step_height, a.energy)?;
    header(
        "scatter",
        &[
            ("mass", a.particle.mass.to_string()),
            ("energy", a.energy.to_string()),
            ("step_height", a.step_height.to_string()),
            ("convention", conv.to_string()),
            ("hbar_c", setup.hbar_c.to_string()),
        ],
    );
    let kin = match kinematics(&setup) {
        Err(Error::EdgeRegime { regime }) => {
            return Err(Error::InvalidParameter(format!(
                "V0 lies exactly on a regime edge ({regime}) where the transmitted wave number vanishes; use `limit`"
            )))
        }
        other => other?,
    };
    let sol = match_solution(&kin, conv)?;
    let obs = coefficients(&sol);
    let forces = force_report(&sol);
    let bc = classify_boundary(&sol, DEFAULT_TOLERANCE)?;

    row("regime", kin.regime.to_string());
    row("a", real(kin.a, p));
    row("b", complex(kin.b, p));
    row("k", real(kin.k, p));
    row(
        if kin.regime == Regime::Evanescent {
            "kappa"
        } else {
            "kbar"
        },
        real(kin.kbar_or_kappa, p),
    );
    row("r", complex(sol.r, p));
    row("t", complex(sol.t, p));
    row("R", real(obs.reflection, p));
    row("T", real(obs.transmission, p));
    row("rho(0)", real(obs.rho0, p));
    row("j(0)", real(obs.j0, p));
    row(
        "v_t",
        obs.velocity
            .map_or_else(|| "undefined (decaying wave)".to_string(), |v| real(v, p)),
    );
    row("force", real(forces.external_mean, p));
    row("boundary", bc.classification.to_string());
    match conv {
        Convention::TraditionalB2 => {
            println!("warning: Klein paradox convention: the transmitted wave moves towards the step (v_t < 0), giving R > 1 and T < 0")
        }
        Convention::NegativeEnergyB5 => {
            println!("note: the transmitted wave is a negative-energy solution, not an eigenfunction at energy E")
        }
        _ => {}
    }
    Ok(ExitCode::SUCCESS)
}

fn linspace(from: f64, to: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![from];
    }
    (0..n)
        .map(|i| {
            if i == n - 1 {
                to
            } else {
                from + (to - from) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

const SWEEP_HEADER: &str = "energy,step_height,regime,regime_change,a,b_re,b_im,k,kbar_or_kappa,r_re,r_im,t_re,t_im,R,T,rho0,j0,v_t,force,boundary";

/// Regime and the cells after `regime_change`.
fn sweep_row(setup: &PhysicalSetup, conv: Convention) -> Result<(Regime, Vec<String>)> {
    let regime = setup.regime();
    let mut c: Vec<Option<f64>> = vec![None; 15];
    let mut boundary = String::new();
    match regime {
        Regime::EdgePoint => {
            if let Ok(lim) = impenetrable_limit(setup.energy, setup.mass_energy, conv) {
                let psi0 = lim.spinor_at(0.0);
                c[0] = Some(lim.a);
                c[3] = Some(lim.k);
                c[4] = Some(0.0);
                c[9] = Some(lim.reflection);
                c[10] = Some(lim.transmission);
                c[11] = Some(psi0.upper.norm_sqr() + psi0.lower.norm_sqr());
                c[12] = Some(0.0);
                c[13] = Some(lim.velocity());
                c[14] = Some(lim.external_force());
                boundary = classify_boundary(&lim, DEFAULT_TOLERANCE)?.classification.to_string();
            }
        }
        Regime::EdgeLower => {}
        _ if !conv.is_available(regime) => {}
        _ => {
            let kin = kinematics(setup)?;
            let sol = match_solution(&kin, conv)?;
            let obs = coefficients(&sol);
            c = vec![
                Some(kin.a),
                Some(kin.b.re),
                Some(kin.b.im),
                Some(kin.k),
                Some(kin.kbar_or_kappa),
                Some(sol.r.re),
                Some(sol.r.im),
                Some(sol.t.re),
                Some(sol.t.im),
                Some(obs.reflection),
                Some(obs.transmission),
                Some(obs.rho0),
                Some(obs.j0),
                obs.velocity,
                Some(force_report(&sol).external_mean),
            ];
            boundary = classify_boundary(&sol, DEFAULT_TOLERANCE)?.classification.to_string();
        }
    }
    let mut cells: Vec<String> = c.into_iter().map(cell).collect();
    cells.push(boundary);
    Ok((regime, cells))
}

fn sweep(_cli: &Cli, a: &SweepArgs) -> Result<ExitCode> {
    let conv: Convention = a.particle.convention.parse()?;
    let m = a.particle.mass;
    check_mass(m)?;
    if a.points == 0 {
        return Err(Error::InvalidParameter("need at least one point".into()));
    }
    let (fixed_name, fixed) = match a.vary {
        Vary::StepHeight => (
            "energy",
            a.energy
                .ok_or_else(|| Error::InvalidParameter("--energy is required when varying the step height".into()))?,
        ),
        Vary::Energy => (
            "step_height",
            a.step_height
                .ok_or_else(|| Error::InvalidParameter("--step-height is required when varying the energy".into()))?,
        ),
    };
    let values = linspace(a.from, a.to, a.points);
    let setups: Vec<PhysicalSetup> = values
        .iter()
        .map(|&x| match a.vary {
            Vary::StepHeight => PhysicalSetup::new(m, x, fixed),
            Vary::Energy => PhysicalSetup::new(m, fixed, x),
        })
        .collect::<Result<_>>()
        .map_err(|e| Error::InvalidParameter(format!("sweep range leaves the valid parameter space: {e}")))?;

    header(
        "sweep",
        &[
            ("mass", m.to_string()),
            ("vary", value_name(a.vary)),
            ("from", a.from.to_string()),
            ("to", a.to.to_string()),
            ("points", a.points.to_string()),
            (fixed_name, fixed.to_string()),
            ("convention", conv.to_string()),
            ("out", a.out.display().to_string()),
        ],
    );

    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    let mut previous: Option<Regime> = None;
    let mut regimes = Vec::new();
    for s in &setups {
        let (regime, cells) = sweep_row(s, conv)?;
        let change = previous.is_some_and(|p| p != regime) as u8;
        out.push_str(&format!(
            "{},{},{regime},{change},{}\n",
            cell(Some(s.energy)),
            cell(Some(s.step_height)),
            cells.join(",")
        ));
        if previous != Some(regime) {
            regimes.push(regime.to_string());
        }
        previous = Some(regime);
    }
    write_file(&a.out, out.as_bytes())?;
    println!(
        "wrote {} rows to {} (regimes: {})",
        setups.len(),
        a.out.display(),
        regimes.join(" -> ")
    );
    Ok(ExitCode::SUCCESS)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut f = fs::File::create(path).map_err(io)?;
    f.write_all(bytes).map_err(io)
}

fn limit(cli: &Cli, a: &LimitArgs) -> Result<ExitCode> {
    let p = cli.precision;
    let conv: Convention = a.particle.convention.parse()?;
    let (m, e) = (a.particle.mass, a.energy);
    check_mass(m)?;
    header(
        "limit",
        &[
            ("mass", m.to_string()),
            ("energy", e.to_string()),
            ("which", value_name(a.which)),
            ("convention", conv.to_string()),
        ],
    );
    match a.which {
        Which::Impenetrable => {
            let lim = impenetrable_limit(e, m, conv)?;
            let psi0 = lim.spinor_at(0.0);
            let bc = classify_boundary(&lim, DEFAULT_TOLERANCE)?;
            row("kind", lim.kind.to_string());
            row("step_height", real(lim.step_height(), p));
            row("a", real(lim.a, p));
            row("k", real(lim.k, p));
            row("phi(0)", complex(psi0.upper, p));
            row("chi(0)", complex(psi0.lower, p));
            row("rho(0)", real(psi0.upper.norm_sqr() + psi0.lower.norm_sqr(), p));
            row("boundary", bc.classification.to_string());
            row("R", real(lim.reflection, p));
            row("T", real(lim.transmission, p));
            row("v_t", real(lim.velocity(), p));
            row("force", real(lim.external_force(), p));
            row("boundary_force", real(lim.boundary_force(), p));
            if (lim.external_force() - lim.boundary_force()).abs() > 1e-9 * lim.external_force().abs() {
                println!(
                    "discrepancy: external force {} differs from boundary force {}",
                    real(lim.external_force(), p),
                    real(lim.boundary_force(), p)
                );
            }
        }
        Which::Nonrel => {
            let e_nr = e - m;
            let lim = nonrelativistic_limit(e_nr, m, conv)?;
            let [psi, dpsi, _] = lim.nr_wavefunction(0.0).expect("nonrelativistic kind");
            let bc = classify_boundary(&lim, DEFAULT_TOLERANCE)?;
            row("kind", lim.kind.to_string());
            row("E_nr", real(e_nr, p));
            row("k_nr", real(lim.k, p));
            row("a_nr", real(lim.a, p));
            row("a", real(closed_form::incident_ratio(m, e), p));
            row("psi(0)", complex(psi, p));
            row("psi_x(0)", complex(dpsi, p));
            row("boundary", bc.classification.to_string());
            row("R", real(lim.reflection, p));
            row("T", real(lim.transmission, p));
            row("force", real(lim.boundary_force(), p));
            row("-4 E_nr", real(-4.0 * e_nr, p));
            if e_nr > 1e-2 * m {
                println!("warning: E - mc^2 = {} is not small compared with mc^2", real(e_nr, p));
            }
        }
        Which::Infinite => {
            let lim = infinite_step_limit(e, m, conv)?;
            row("a", real(lim.a, p));
            row("r", real(lim.r, p));
            row("t", real(lim.t, p));
            row("R", real(lim.reflection, p));
            row("T", real(lim.transmission, p));
            row("v_t", real(lim.velocity, p));
            row("rho(0)", real(lim.rho0, p));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Result<ExitCode> {
    let suites: Vec<Suite> = match a.suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Conservation => vec![Suite::Conservation],
        SuiteArg::Limits => vec![Suite::Limits],
        SuiteArg::ClosedVsOracle => vec![Suite::ClosedVsOracle],
    };
    header(
        "verify",
        &[
            ("suite", value_name(a.suite)),
            ("seed", a.seed.to_string()),
            (
                "trials",
                a.trials.map_or_else(|| "suite default".to_string(), |t| t.to_string()),
            ),
            ("width", format!("{:e}", a.width)),
            ("tol", format!("{:e}", a.tol)),
            ("richardson", a.richardson.to_string()),
            ("output_dir", cli.output_dir.display().to_string()),
        ],
    );
    fs::create_dir_all(&cli.output_dir).map_err(|source| Error::Io {
        path: cli.output_dir.clone(),
        source,
    })?;

    let mut all_passed = true;
    for suite in suites {
        let report = match suite {
            Suite::Conservation => conservation_suite(a.seed, a.trials.unwrap_or(1000))?,
            Suite::Limits => limits_suite(a.seed, a.trials.unwrap_or(100))?,
            Suite::ClosedVsOracle => {
                closed_vs_oracle_suite(a.seed, a.trials.unwrap_or(20), a.width, a.tol, a.richardson)?
            }
        };
        let path = cli.output_dir.join(format!("verify-{}.json", suite.name()));
        let mut json = serde_json::to_string_pretty(&report).expect("report serialises");
        json.push('\n');
        write_file(&path, json.as_bytes())?;

        println!(
            "{} {}: trials = {}, max_error = {:.3e}, failures = {} ({})",
            if report.passed() { "PASS" } else { "FAIL" },
            report.suite,
            report.trials,
            report.max_error,
            report.failures.len(),
            path.display()
        );
        for f in report.failures.iter().take(10) {
            println!(
                "  {}: mass = {}, energy = {}, step_height = {}, convention = {}, error = {:.3e} (tolerance {:e})",
                f.check,
                f.mass_energy,
                f.energy,
                f.step_height,
                f.convention.map_or("-".to_string(), |c| c.to_string()),
                f.error,
                f.tolerance
            );
        }
        if report.failures.len() > 10 {
            println!("  ... {} more in {}", report.failures.len() - 10, path.display());
        }
        all_passed &= report.passed();
    }
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn wavefunction(cli: &Cli, a: &WavefunctionArgs) -> Result<ExitCode> {
    let conv: Convention = a.particle.convention.parse()?;
    let m = a.particle.mass;
    check_mass(m)?;
    let (x_min, x_max) = a.range;
    let scattering;
    let limit_sol;
    let sol: &dyn Sampleable = match (a.step_height, a.limit) {
        (Some(v), _) => {
            let setup = PhysicalSetup::new(m, v, a.energy)?;
            let kin = match kinematics(&setup) {
                Err(Error::EdgeRegime { regime }) => {
                    return Err(Error::InvalidParameter(format!(
                        "V0 lies exactly on a regime edge ({regime}); use --limit impenetrable"
                    )))
                }
                other => other?,
            };
            scattering = match_solution(&kin, conv)?;
            &scattering
        }
        (None, Some(LimitChoice::Impenetrable)) => {
            limit_sol = impenetrable_limit(a.energy, m, conv)?;
            &limit_sol
        }
        (None, Some(LimitChoice::Nonrel)) => {
            limit_sol = nonrelativistic_limit(a.energy - m, m, conv)?;
            &limit_sol
        }
        (None, None) => {
            return Err(Error::InvalidParameter(
                "either --step-height or --limit is required".into(),
            ))
        }
    };
    let gs = sample(sol, x_min, x_max, a.points)?;
    let md = &gs.metadata;
    header(
        "wavefunction",
        &[
            ("mass", md.mass_energy.to_string()),
            ("energy", md.energy.to_string()),
            ("step_height", md.step_height.to_string()),
            ("convention", md.convention.clone()),
            ("regime", md.regime.clone()),
            ("range", format!("{x_min},{x_max}")),
            ("points", a.points.to_string()),
            ("out", a.out.display().to_string()),
        ],
    );
    write_csv(&gs, &a.out)?;
    let rho = gs.rho();
    println!(
        "wrote {} rows to {} (+ {})",
        gs.len(),
        a.out.display(),
        sampler::sidecar_path(&a.out).display()
    );
    if let Some(&i) = gs.origin_rows().first() {
        println!("rho(0) = {}", real(rho[i], cli.precision));
    }
    Ok(ExitCode::SUCCESS)
}
