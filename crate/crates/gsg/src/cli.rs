//! Command-line front end: argument parsing, subcommand dispatch, and the
//! mapping from error families to exit codes (0 success, 2 config, 3
//! numerical, 4 I/O).

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::config::{self, RunConfig, SweepKind};
use crate::decoherence;
use crate::dynamics::{
    self, branch_trajectories, density_peaks, fock_oracle_evolve, params_from_dimensionless,
    position_density, superposition_extent,
};
use crate::emit::{Emitter, RunManifest, fmt_f64};
use crate::entangle::{
    DensityMatrix, casimir_polder_ratio, entanglement_entropy, joint_state, negativity,
    phase_matrix, schmidt_spectrum,
};
use crate::error::{Error, Result};
use crate::optimize::{
    self, DecoherenceLimit, Objective, ObjectiveContext, StateFamily, StateFamilySpec,
    build_state_a, build_state_b, ridge_width_half_max, sweep_decoherence, sweep_spin,
    sweep_theta_surface, sweep_time,
};
use crate::spin::{coherent_spin_state, husimi_q};

const PI: f64 = std::f64::consts::PI;

/// Spin values of the optimized entropy/negativity tables.
pub const TABLE_J: [f64; 4] = [0.5, 2.0, 5.0, 10.0];

#[derive(Debug, Parser)]
#[command(
    name = "gsg",
    version,
    about = "Deterministic simulator and optimizer for gravity-induced \
             entanglement between spin-j masses in Stern-Gerlach interferometers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON configuration file (defaults to an empty config)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory for CSV/JSON artifacts
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Named parameter preset (paper-2017-screened)
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Worker threads (default: all cores; results are thread-count
    /// independent)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Reserved for future stochastic paths; recorded in the manifest,
    /// unused by current (fully deterministic) code paths
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Branch trajectories and position densities through one interferometer
    Evolve,
    /// Husimi-Q distribution of the configured spin state
    Husimi,
    /// Entropy, negativity, and entanglement witness for one state pair
    Entangle,
    /// Optimize the configured state family against the objective
    Optimize,
    /// Grid sweeps: (theta_A, theta_B) surface, interaction time, or spin
    Sweep,
    /// Negativity-vs-decoherence-rate curves (re-optimized and fixed-angle)
    Decohere,
    /// Truncated-Fock cross-check of the closed-form propagator
    OracleCheck,
    /// Regenerate the optimized entropy and negativity tables
    Tables,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Evolve => "evolve",
            Command::Husimi => "husimi",
            Command::Entangle => "entangle",
            Command::Optimize => "optimize",
            Command::Sweep => "sweep",
            Command::Decohere => "decohere",
            Command::OracleCheck => "oracle-check",
            Command::Tables => "tables",
        }
    }
}

/// Runs one invocation end to end and returns the manifest.
pub fn run(cli: &Cli) -> Result<RunManifest> {
    let text = match &cli.config {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?,
        None => "{}".to_string(),
    };
    let cfg = config::parse_config_with_preset(&text, cli.preset.as_deref())?;
    optimize::pin_deterministic_backend();
    match cli.threads {
        Some(n) => {
            if n == 0 {
                return Err(Error::config("--threads must be at least 1"));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::config(format!("--threads: {e}")))?;
            pool.install(|| dispatch(cli, &cfg))
        }
        None => dispatch(cli, &cfg),
    }
}

fn dispatch(cli: &Cli, cfg: &RunConfig) -> Result<RunManifest> {
    let start = Instant::now();
    let mut em = Emitter::new(&cli.out)?;
    match cli.command {
        Command::Evolve => cmd_evolve(cfg, &mut em)?,
        Command::Husimi => cmd_husimi(cfg, &mut em)?,
        Command::Entangle => cmd_entangle(cfg, &mut em)?,
        Command::Optimize => cmd_optimize(cfg, &mut em)?,
        Command::Sweep => cmd_sweep(cfg, &mut em)?,
        Command::Decohere => cmd_decohere(cfg, &mut em)?,
        Command::OracleCheck => cmd_oracle_check(cfg, &mut em)?,
        Command::Tables => cmd_tables(cfg, &mut em)?,
    }
    em.finish(
        cli.command.as_str(),
        cfg.snapshot.clone(),
        cli.seed,
        start.elapsed().as_millis() as u64,
    )
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

// ---------------------------------------------------------------------------
// evolve
// ---------------------------------------------------------------------------

fn cmd_evolve(cfg: &RunConfig, em: &mut Emitter) -> Result<()> {
    let o = &cfg.evolve;
    let params = params_from_dimensionless(o.mass, o.omega_m, o.k, 2.0)?;
    let state = coherent_spin_state(o.j, o.theta, o.phi)?;
    let sigma = params.sigma_x();
    let (dx, dd) = superposition_extent(&params, o.j);
    let times: Vec<f64> = o.times_over_ts.iter().map(|f| f * params.t_s).collect();
    let h = o.x_half_span_sigma * sigma;
    let grid = linspace(-h, h, o.n_x);
    let cell = grid[1] - grid[0];

    let mut traj_rows = Vec::new();
    for &t in &times {
        let bundle = branch_trajectories(&params, o.j, t)?;
        for b in &bundle.branches {
            traj_rows.push(vec![
                fmt_f64(t),
                fmt_f64(bundle.s),
                fmt_f64(b.m),
                fmt_f64(b.x),
                fmt_f64(b.p),
                fmt_f64(b.phase),
            ]);
        }
    }
    em.write_csv(
        "trajectories.csv",
        &["t_s", "s_dimensionless", "branch_m", "x_m", "p_kg_m_per_s", "phase_rad"],
        traj_rows,
    )?;

    let mut density_rows = Vec::new();
    let mut final_density = Vec::new();
    for &t in &times {
        let rho = position_density(&state, &params, t, &grid)?;
        for (x, d) in grid.iter().zip(&rho) {
            density_rows.push(vec![fmt_f64(t), fmt_f64(*x), fmt_f64(*d)]);
        }
        final_density = rho;
    }
    em.write_csv("density.csv", &["t_s", "x_m", "density_per_m"], density_rows)?;

    // Peak census of the last requested time; at t = t_s this is the fully
    // split 2j+1 comb.
    let peaks = density_peaks(&final_density, 1e-3);
    let spacings: Vec<f64> =
        peaks.windows(2).map(|w| grid[w[1]] - grid[w[0]]).collect();
    let mean_spacing = if spacings.is_empty() {
        0.0
    } else {
        spacings.iter().sum::<f64>() / spacings.len() as f64
    };
    em.write_json(
        "summary.json",
        &json!({
            "j": o.j,
            "theta_rad": o.theta,
            "phi_rad": o.phi,
            "mass_kg": o.mass,
            "omega_m_rad_per_s": o.omega_m,
            "k": o.k,
            "t_s_s": params.t_s,
            "sigma_x_m": sigma,
            "delta_x_m": dx,
            "delta_d_m": dd,
            "grid_cell_m": cell,
            "final_time_s": times.last(),
            "peaks": {
                "count": peaks.len(),
                "positions_m": peaks.iter().map(|&i| grid[i]).collect::<Vec<f64>>(),
                "mean_spacing_m": mean_spacing,
                "expected_spacing_m": dx,
            },
            "config": cfg.snapshot,
        }),
    )
}

// ---------------------------------------------------------------------------
// husimi / entangle
// ---------------------------------------------------------------------------

/// Family parameters from config, defaulting the bare coherent family to the
/// equator.
fn family_params(cfg: &RunConfig, given: &Option<Vec<f64>>, section: &str) -> Result<Vec<f64>> {
    let family = cfg.family.family;
    let names = family.param_names();
    let params = match given {
        Some(p) => p.clone(),
        None if family == StateFamily::Css => vec![PI / 2.0],
        None => {
            return Err(Error::config(format!(
                "missing required key `{section}.params` (family {} takes [{}])",
                family.as_str(),
                names.join(", ")
            )));
        }
    };
    if params.len() != names.len() {
        return Err(Error::config(format!(
            "{section}.params: family {} takes {} parameters [{}], got {}",
            family.as_str(),
            names.len(),
            names.join(", "),
            params.len()
        )));
    }
    Ok(params)
}

fn cmd_husimi(cfg: &RunConfig, em: &mut Emitter) -> Result<()> {
    let e = cfg.require_experiment()?;
    let params = family_params(cfg, &cfg.husimi.params, "husimi")?;
    let state = build_state_a(cfg.family.family, e.j, &params, None)?;
    let field = husimi_q(&state, cfg.husimi.n_theta, cfg.husimi.n_phi)?;

    let mut rows = Vec::with_capacity(field.theta.len() * field.phi.len());
    let mut best = (0usize, 0usize);
    for it in 0..field.theta.len() {
        for ip in 0..field.phi.len() {
            if field.value(it, ip) > field.value(best.0, best.1) {
                best = (it, ip);
            }
            rows.push(vec![
                fmt_f64(field.theta[it]),
                fmt_f64(field.phi[ip]),
                fmt_f64(field.value(it, ip)),
            ]);
        }
    }
    em.write_csv("husimi.csv", &["theta_rad", "phi_rad", "q"], rows)?;
    em.write_json(
        "summary.json",
        &json!({
            "family": cfg.family.family.as_str(),
            "params": params,
            "j": e.j,
            "normalization_integral": field.integral(),
            "max": {
                "theta_rad": field.theta[best.0],
                "phi_rad": field.phi[best.1],
                "q": field.value(best.0, best.1),
            },
            "config": cfg.snapshot,
        }),
    )
}

fn cmd_entangle(cfg: &RunConfig, em: &mut Emitter) -> Result<()> {
    let e = cfg.require_experiment()?;
    let params = family_params(cfg, &cfg.entangle.params, "entangle")?;
    let family = cfg.family.family;
    let a = build_state_a(family, e.j, &params, None)?;
    let b = build_state_b(family, e.j, &params, e.geometry, None)?;
    let phases = phase_matrix(e)?;
    let psi = joint_state(&a, &b, &phases, e.k)?;

    let entropy = entanglement_entropy(&psi)?;
    let schmidt = schmidt_spectrum(&psi)?;
    let mut rho = DensityMatrix::from_pure(&psi);
    let mut applied_decoherence = serde_json::Value::Null;
    if let Some(d) = &cfg.deco {
        rho = match d.limit {
            DecoherenceLimit::Short => decoherence::apply_short(&rho, d.rate, e.tau)?,
            DecoherenceLimit::Long => decoherence::apply_long(&rho, d.rate, e.delta_x, e.tau)?,
        };
        applied_decoherence = json!({ "limit": d.limit.as_str(), "rate": d.rate });
    }
    let report = negativity(&rho)?;

    em.write_csv(
        "schmidt.csv",
        &["index", "schmidt_coefficient"],
        schmidt.iter().enumerate().map(|(i, l)| vec![i.to_string(), fmt_f64(*l)]),
    )?;

    // The witness expansion has d^4 coefficients; emit it only while that
    // stays plottable.
    let d = psi.dim();
    let emit_witness = d * d <= 100;
    if emit_witness {
        em.write_csv(
            "witness_gellmann.csv",
            &["index", "coefficient"],
            report
                .gell_mann
                .iter()
                .enumerate()
                .map(|(i, c)| vec![i.to_string(), fmt_f64(*c)]),
        )?;
    }

    // Tr(W rho) must reproduce the negativity; surfacing the residual makes
    // the output self-checking.
    let mut tr_w_rho = 0.0;
    for r in 0..d * d {
        for c in 0..d * d {
            tr_w_rho += (report.witness[(r, c)] * rho.rho[(c, r)]).re;
        }
    }

    let casimir = match &cfg.casimir {
        None => serde_json::Value::Null,
        Some(c) => {
            let rep =
                casimir_polder_ratio(c.radius, c.epsilon, c.separation, e.mass_a, e.mass_b)?;
            json!({
                "radius_m": c.radius,
                "separation_m": c.separation,
                "epsilon": c.epsilon,
                "v_cp_j": rep.v_cp,
                "v_grav_j": rep.v_grav,
                "ratio": rep.ratio,
                "near_field_warning": rep.near_field_warning,
            })
        }
    };

    em.write_json(
        "summary.json",
        &json!({
            "geometry": e.geometry.as_str(),
            "family": family.as_str(),
            "params": params,
            "j": e.j,
            "entropy_nats_pure": entropy,
            "negativity": report.negativity,
            "negative_pt_eigenvalues": report.negative_eigenvalues,
            "witness_trace_check": tr_w_rho,
            "witness_gellmann_emitted": emit_witness,
            "applied_decoherence": applied_decoherence,
            "casimir": casimir,
            "config": cfg.snapshot,
        }),
    )
}

// ---------------------------------------------------------------------------
// optimize / sweep
// ---------------------------------------------------------------------------

fn objective_column(objective: Objective) -> &'static str {
    match objective {
        Objective::Entropy => "entropy_nats",
        Objective::Negativity => "negativity",
    }
}

fn cmd_optimize(cfg: &RunConfig, em: &mut Emitter) -> Result<()> {
    let e = cfg.require_experiment()?;
    let ctx = ObjectiveContext::new(*e, cfg.family.family, cfg.objective, cfg.deco)?;
    let mut r = optimize::optimize(&cfg.family, &ctx, cfg.opt.grid_n, cfg.opt.refine)?;
    r.config = cfg.snapshot.clone();

    let mut header: Vec<&str> =
        r.axes.iter().map(|a| a.name.as_str()).collect();
    header.push(objective_column(cfg.objective));
    let n = cfg.opt.grid_n;
    let p = r.axes.len();
    let rows = (0..r.values.len()).map(|flat| {
        let mut row = Vec::with_capacity(p + 1);
        let mut rem = flat;
        let mut idx = vec![0usize; p];
        for q in (0..p).rev() {
            idx[q] = rem % n;
            rem /= n;
        }
        for q in 0..p {
            row.push(fmt_f64(r.axes[q].values[idx[q]]));
        }
        row.push(fmt_f64(r.values[flat]));
        row
    });
    em.write_csv("grid.csv", &header, rows)?;
    em.write_json("summary.json", &r)
}

fn cmd_sweep(cfg: &RunConfig, em: &mut Emitter) -> Result<()> {
    let e = cfg.require_experiment()?;
    let o = &cfg.sweep;
    match o.kind {
        SweepKind::ThetaSurface => {
            let mut r = sweep_theta_surface(e, cfg.objective, o.grid_n)?;
            r.config = cfg.snapshot.clone();
            let n = o.grid_n;
            let rows = (0..n * n).map(|flat| {
                vec![
                    fmt_f64(r.axes[0].values[flat / n]),
                    fmt_f64(r.axes[1].values[flat % n]),
                    fmt_f64(r.values[flat]),
                ]
            });
            em.write_csv(
                "surface.csv",
                &["theta_a_rad", "theta_b_rad", objective_column(cfg.objective)],
                rows,
            )?;
            let ridge = ridge_width_half_max(&r)?;
            em.write_json(
                "summary.json",
                &json!({ "ridge_width_half_max_rad": ridge, "sweep": r }),
            )
        }
        SweepKind::Time => {
            let mut r =
                sweep_time(&cfg.family, e, cfg.objective, &o.tau_values, o.grid_n, o.refine)?;
            r.config = cfg.snapshot.clone();
            emit_curve(em, &r, "tau_s", cfg.objective, cfg.family.family)?;
            em.write_json("summary.json", &r)
        }
        SweepKind::Spin => {
            let mut r = sweep_spin(&cfg.family, e, cfg.objective, &o.j_values, o.grid_n, o.refine)?;
            r.config = cfg.snapshot.clone();
            emit_curve(em, &r, "j", cfg.objective, cfg.family.family)?;
            em.write_json("summary.json", &r)
        }
    }
}

/// One-axis sweep CSV: axis, objective value, then the re-optimized family
/// parameters at each point.
fn emit_curve(
    em: &mut Emitter,
    r: &optimize::SweepResult,
    axis_name: &str,
    objective: Objective,
    family: StateFamily,
) -> Result<()> {
    let mut header = vec![axis_name, objective_column(objective)];
    let pnames: Vec<String> =
        family.param_names().iter().map(|n| format!("opt_{n}")).collect();
    header.extend(pnames.iter().map(|s| s.as_str()));
    let empty: Vec<Vec<f64>> = Vec::new();
    let points = r.point_params.as_ref().unwrap_or(&empty);
    let rows = r.axes[0].values.iter().enumerate().map(|(i, x)| {
        let mut row = vec![fmt_f64(*x), fmt_f64(r.values[i])];
        if let Some(p) = points.get(i) {
            row.extend(p.iter().map(|v| fmt_f64(*v)));
        }
        row
    });
    em.write_csv("curve.csv", &header, rows)
}

// ---------------------------------------------------------------------------
// decohere
// ---------------------------------------------------------------------------

fn cmd_decohere(cfg: &RunConfig, em: &mut Emitter) -> Result<()> {
    let e = cfg.require_experiment()?;
    let o = &cfg.decohere;
    let rates: Vec<f64> = o
        .dimensionless_rates
        .iter()
        .map(|&v| {
            if v == 0.0 {
                return Ok(0.0);
            }
            if e.tau <= 0.0 {
                return Err(Error::config(
                    "decohere: tau = 0 cannot realize a nonzero dimensionless rate",
                ));
            }
            Ok(match o.limit {
                DecoherenceLimit::Short => v / e.tau,
                DecoherenceLimit::Long => v / (e.delta_x * e.delta_x * e.tau),
            })
        })
        .collect::<Result<_>>()?;
    let mut s = sweep_decoherence(e, o.limit, &o.j_values, &rates, o.grid_n)?;
    s.config = cfg.snapshot.clone();

    let rate_col = match o.limit {
        DecoherenceLimit::Short => "rate_hz",
        DecoherenceLimit::Long => "rate_hz_per_m2",
    };
    let nr = rates.len();
    let rows = (0..o.j_values.len() * nr).map(|flat| {
        let (ij, ir) = (flat / nr, flat % nr);
        vec![
            fmt_f64(s.j_values[ij]),
            fmt_f64(s.rates[ir]),
            fmt_f64(s.dimensionless[ir]),
            fmt_f64(s.reoptimized[flat]),
            fmt_f64(s.reopt_theta[flat]),
            fmt_f64(s.fixed_theta[flat]),
            fmt_f64(s.theta_star[ij]),
        ]
    });
    em.write_csv(
        "curves.csv",
        &[
            "j",
            rate_col,
            "dimensionless_rate",
            "negativity_reoptimized",
            "theta_opt_rad",
            "negativity_fixed_theta",
            "theta_star_rad",
        ],
        rows,
    )?;
    em.write_json("summary.json", &s)
}

// ---------------------------------------------------------------------------
// oracle-check
// ---------------------------------------------------------------------------

fn cmd_oracle_check(cfg: &RunConfig, em: &mut Emitter) -> Result<()> {
    let o = &cfg.oracle;
    let mut rows = Vec::new();
    let mut min_fidelity = f64::INFINITY;
    let mut min_loop_overlap = f64::INFINITY;
    for &j in &o.j_values {
        for &k in &o.k_values {
            let params = params_from_dimensionless(1e-14, 1.0, k, 2.0)?;
            let state = coherent_spin_state(j, PI / 2.0, 0.0)?;
            let n_fock = o.n_fock.unwrap_or_else(|| dynamics::default_n_fock(j, k));
            for &f in &o.times_over_ts {
                let t = f * params.t_s;
                let rep = fock_oracle_evolve(&state, &params, t, n_fock)?;
                let overlap: f64 =
                    rep.branches.iter().map(|b| b.weight * b.vacuum_overlap).sum();
                min_fidelity = min_fidelity.min(rep.fidelity);
                if (f - 2.0).abs() < 1e-12 {
                    min_loop_overlap = min_loop_overlap.min(overlap);
                }
                rows.push(vec![
                    fmt_f64(j),
                    fmt_f64(k),
                    fmt_f64(f),
                    n_fock.to_string(),
                    fmt_f64(rep.fidelity),
                    fmt_f64(overlap),
                    fmt_f64(rep.top_occupancy),
                ]);
            }
        }
    }
    em.write_csv(
        "fidelity.csv",
        &[
            "j",
            "k",
            "t_over_ts",
            "n_fock",
            "fidelity",
            "weighted_vacuum_overlap",
            "top_occupancy",
        ],
        rows,
    )?;
    let all_passed =
        min_fidelity >= 1.0 - 1e-6 && (min_loop_overlap >= 1.0 - 1e-6 || !min_loop_overlap.is_finite());
    em.write_json(
        "summary.json",
        &json!({
            "min_fidelity": min_fidelity,
            "min_loop_vacuum_overlap":
                if min_loop_overlap.is_finite() { Some(min_loop_overlap) } else { None },
            "all_passed": all_passed,
            "config": cfg.snapshot,
        }),
    )
}

// ---------------------------------------------------------------------------
// tables
// ---------------------------------------------------------------------------

fn cmd_tables(cfg: &RunConfig, em: &mut Emitter) -> Result<()> {
    let e = cfg.require_experiment()?;
    let table1_families = [
        StateFamily::Css,
        StateFamily::SuperpositionSymmetric,
        StateFamily::SssOneAxis,
        StateFamily::SssTwoAxis,
    ];
    let table2_families = [StateFamily::Css, StateFamily::SuperpositionSymmetric];

    let run_table = |families: &[StateFamily], objective: Objective| -> Result<Vec<serde_json::Value>> {
        let mut cells = Vec::new();
        for &family in families {
            let spec = StateFamilySpec::new(family);
            for &j in &TABLE_J {
                let mut c = *e;
                c.j = j;
                let ctx = ObjectiveContext::new(c, family, objective, None)?;
                let r = optimize::optimize(&spec, &ctx, cfg.opt.grid_n, cfg.opt.refine)?;
                let params: serde_json::Map<String, serde_json::Value> = r
                    .optimum_params
                    .iter()
                    .map(|p| (p.name.clone(), json!(p.value)))
                    .collect();
                cells.push(json!({
                    "family": family.as_str(),
                    "j": j,
                    "value": r.optimum_value,
                    "params": params,
                }));
            }
        }
        Ok(cells)
    };

    let table1 = run_table(&table1_families, Objective::Entropy)?;
    let table2 = run_table(&table2_families, Objective::Negativity)?;

    let csv_rows = |cells: &[serde_json::Value]| -> Vec<Vec<String>> {
        cells
            .iter()
            .map(|c| {
                let params = c["params"].as_object().unwrap();
                let mut names = Vec::new();
                let mut values = Vec::new();
                for (k, v) in params {
                    names.push(k.clone());
                    values.push(fmt_f64(v.as_f64().unwrap()));
                }
                while names.len() < 2 {
                    names.push(String::new());
                    values.push(String::new());
                }
                vec![
                    c["family"].as_str().unwrap().to_string(),
                    fmt_f64(c["j"].as_f64().unwrap()),
                    fmt_f64(c["value"].as_f64().unwrap()),
                    names[0].clone(),
                    values[0].clone(),
                    names[1].clone(),
                    values[1].clone(),
                ]
            })
            .collect()
    };
    em.write_csv(
        "table1.csv",
        &["family", "j", "entropy_nats", "param_1", "value_1", "param_2", "value_2"],
        csv_rows(&table1),
    )?;
    em.write_csv(
        "table2.csv",
        &["family", "j", "negativity", "param_1", "value_1", "param_2", "value_2"],
        csv_rows(&table2),
    )?;
    em.write_json(
        "summary.json",
        &json!({
            "geometry": e.geometry.as_str(),
            "distance_mode": e.distance_mode.as_str(),
            "grid_n": cfg.opt.grid_n,
            "refined": cfg.opt.refine,
            "table1_entropy_nats": table1,
            "table2_negativity": table2,
            "config": cfg.snapshot,
        }),
    )
}
