//! JSON run configuration: schema, preset expansion, and validation.
//!
//! The file is a single JSON object with optional per-subcommand sections.
//! Unknown keys are rejected with the full key path, numeric keys carry their
//! unit as a suffix (`_kg`, `_m`, `_s`, `_rad`, `_hz`), and the preset
//! `paper-2017-screened` fills the screened-geometry experiment defaults
//! (tau = 2 s, M = 1e-14 kg, dx = 2.5e-4 m, ds = 5e-5 m); keys given
//! explicitly always win over preset values.
//!
//! `parse_config` resolves every default, so serializing the result
//! (`RunConfig::snapshot`) is canonical: parsing the snapshot again yields an
//! identical snapshot.

use serde::{Deserialize, Serialize};

use crate::entangle::{DistanceMode, ExperimentConfig, Geometry};
use crate::error::{Error, Result};
use crate::optimize::{
    DecoherenceLimit, DecoherenceSettings, Objective, StateFamily, StateFamilySpec,
};
use crate::spin::two_j_from;

const PI: f64 = std::f64::consts::PI;

pub const PRESET_SCREENED: &str = "paper-2017-screened";
/// Largest supported spin; d = 61 keeps every sweep interactive.
pub const MAX_J: f64 = 30.0;

// ---------------------------------------------------------------------------
// raw schema (all fields optional; resolution fills defaults)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
struct RawConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    preset: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    experiment: Option<RawExperiment>,
    family: RawFamily,
    #[serde(skip_serializing_if = "Option::is_none")]
    objective: Option<String>,
    optimize: RawOptimize,
    #[serde(skip_serializing_if = "Option::is_none")]
    decoherence: Option<RawDecoherence>,
    evolve: RawEvolve,
    husimi: RawHusimi,
    entangle: RawEntangle,
    #[serde(skip_serializing_if = "Option::is_none")]
    casimir: Option<RawCasimir>,
    sweep: RawSweep,
    decohere: RawDecohere,
    oracle: RawOracle,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
struct RawExperiment {
    geometry: Option<String>,
    distance_mode: Option<String>,
    j: Option<f64>,
    mass_a_kg: Option<f64>,
    mass_b_kg: Option<f64>,
    delta_x_m: Option<f64>,
    delta_s_m: Option<f64>,
    tau_s: Option<f64>,
    k: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
struct RawFamily {
    name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    center_theta_rad: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta_range_rad: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    chi_range: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dtheta_range_rad: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dphi_range_rad: Option<[f64; 2]>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
struct RawOptimize {
    grid_n: Option<usize>,
    refine: Option<bool>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
struct RawDecoherence {
    limit: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rate_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rate_hz_per_m2: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
struct RawEvolve {
    j: Option<f64>,
    theta_rad: Option<f64>,
    phi_rad: Option<f64>,
    mass_kg: Option<f64>,
    omega_m_rad_per_s: Option<f64>,
    k: Option<f64>,
    times_over_ts: Option<Vec<f64>>,
    n_x: Option<usize>,
    x_half_span_sigma: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
struct RawHusimi {
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<Vec<f64>>,
    n_theta: Option<usize>,
    n_phi: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
struct RawEntangle {
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
struct RawCasimir {
    radius_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    separation_m: Option<f64>,
    epsilon: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
struct RawSweep {
    kind: Option<String>,
    grid_n: Option<usize>,
    refine: Option<bool>,
    j_values: Option<Vec<f64>>,
    tau_values_s: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
struct RawDecohere {
    limit: Option<String>,
    j_values: Option<Vec<f64>>,
    /// gamma*tau (short) or Gamma*dx^2*tau (long).
    dimensionless_rate_values: Option<Vec<f64>>,
    grid_n: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
struct RawOracle {
    j_values: Option<Vec<f64>>,
    k_values: Option<Vec<f64>>,
    times_over_ts: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_fock: Option<usize>,
}

// ---------------------------------------------------------------------------
// resolved configuration
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub struct OptimizeOpts {
    pub grid_n: usize,
    pub refine: bool,
}

#[derive(Debug, Clone)]
pub struct EvolveOpts {
    pub j: f64,
    pub theta: f64,
    pub phi: f64,
    pub mass: f64,
    pub omega_m: f64,
    pub k: f64,
    pub times_over_ts: Vec<f64>,
    pub n_x: usize,
    pub x_half_span_sigma: f64,
}

#[derive(Debug, Clone)]
pub struct HusimiOpts {
    pub params: Option<Vec<f64>>,
    pub n_theta: usize,
    pub n_phi: usize,
}

#[derive(Debug, Clone)]
pub struct EntangleOpts {
    pub params: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy)]
pub struct CasimirOpts {
    pub radius: f64,
    pub separation: f64,
    pub epsilon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    ThetaSurface,
    Time,
    Spin,
}

impl SweepKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepKind::ThetaSurface => "theta_surface",
            SweepKind::Time => "time",
            SweepKind::Spin => "spin",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepOpts {
    pub kind: SweepKind,
    pub grid_n: usize,
    pub refine: bool,
    pub j_values: Vec<f64>,
    pub tau_values: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct DecohereOpts {
    pub limit: DecoherenceLimit,
    pub j_values: Vec<f64>,
    pub dimensionless_rates: Vec<f64>,
    pub grid_n: usize,
}

#[derive(Debug, Clone)]
pub struct OracleOpts {
    pub j_values: Vec<f64>,
    pub k_values: Vec<f64>,
    pub times_over_ts: Vec<f64>,
    pub n_fock: Option<usize>,
}

/// Fully resolved run configuration plus its canonical JSON snapshot.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub preset: Option<String>,
    pub experiment: Option<ExperimentConfig>,
    pub family: StateFamilySpec,
    pub objective: Objective,
    pub opt: OptimizeOpts,
    pub deco: Option<DecoherenceSettings>,
    pub evolve: EvolveOpts,
    pub husimi: HusimiOpts,
    pub entangle: EntangleOpts,
    pub casimir: Option<CasimirOpts>,
    pub sweep: SweepOpts,
    pub decohere: DecohereOpts,
    pub oracle: OracleOpts,
    pub snapshot: serde_json::Value,
}

impl RunConfig {
    /// The experiment section, or a config error naming what to supply.
    pub fn require_experiment(&self) -> Result<&ExperimentConfig> {
        self.experiment.as_ref().ok_or_else(|| {
            Error::config(
                "missing required section `experiment` \
                 (supply it or pass --preset paper-2017-screened)",
            )
        })
    }
}

// ---------------------------------------------------------------------------
// parsing and resolution
// ---------------------------------------------------------------------------

/// Parses JSON text into a validated, fully defaulted configuration.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    parse_config_with_preset(text, None)
}

/// As `parse_config`, with an optional preset from the command line. A preset
/// named both on the command line and in the file must agree.
pub fn parse_config_with_preset(text: &str, cli_preset: Option<&str>) -> Result<RunConfig> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let mut raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            Error::config(format!("config: {}", e.inner()))
        } else {
            Error::config(format!("config key `{path}`: {}", e.inner()))
        }
    })?;
    if let Some(p) = cli_preset {
        match &raw.preset {
            Some(existing) if existing != p => {
                return Err(Error::config(format!(
                    "preset mismatch: config file says `{existing}`, command line says `{p}`"
                )));
            }
            _ => raw.preset = Some(p.to_string()),
        }
    }
    resolve(raw)
}

/// Prefixes a key path onto a config error without repeating the family tag.
fn at_path(path: &str, e: Error) -> Error {
    match e {
        Error::Config(msg) => Error::config(format!("{path}: {msg}")),
        other => other,
    }
}

fn check_j(path: &str, j: f64) -> Result<()> {
    two_j_from(j).map_err(|e| at_path(path, e))?;
    if j > MAX_J {
        return Err(Error::config(format!("{path}: j = {j} exceeds the supported maximum {MAX_J}")));
    }
    Ok(())
}

fn check_positive(path: &str, v: f64) -> Result<f64> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::config(format!("{path}: must be positive and finite, got {v}")));
    }
    Ok(v)
}

fn check_nonnegative(path: &str, v: f64) -> Result<f64> {
    if !(v >= 0.0) || !v.is_finite() {
        return Err(Error::config(format!("{path}: must be nonnegative and finite, got {v}")));
    }
    Ok(v)
}

fn require<T: Copy>(path: &str, v: Option<T>, preset_has: bool) -> Result<T> {
    v.ok_or_else(|| {
        if preset_has {
            Error::config(format!("missing required key `{path}`"))
        } else {
            Error::config(format!(
                "missing required key `{path}` (no preset supplies it; \
                 pass --preset paper-2017-screened or set it explicitly)"
            ))
        }
    })
}

fn resolve(mut raw: RawConfig) -> Result<RunConfig> {
    let preset = match raw.preset.as_deref() {
        None => None,
        Some(PRESET_SCREENED) => Some(PRESET_SCREENED.to_string()),
        Some(other) => {
            return Err(Error::config(format!(
                "unknown preset `{other}`; available: {PRESET_SCREENED}"
            )));
        }
    };

    // --- experiment ---
    let experiment = if raw.experiment.is_some() || preset.is_some() {
        let r = raw.experiment.get_or_insert_with(Default::default);
        if preset.is_some() {
            r.tau_s.get_or_insert(2.0);
            r.mass_a_kg.get_or_insert(1e-14);
            r.delta_x_m.get_or_insert(2.5e-4);
            r.delta_s_m.get_or_insert(5e-5);
        }
        r.geometry.get_or_insert_with(|| "parallel".to_string());
        r.distance_mode.get_or_insert_with(|| "euclidean".to_string());
        r.j.get_or_insert(2.0);
        r.k.get_or_insert(0.0);
        let has = preset.is_some();
        let mass_a = check_positive(
            "experiment.mass_a_kg",
            require("experiment.mass_a_kg", r.mass_a_kg, has)?,
        )?;
        let mass_b = match r.mass_b_kg {
            Some(v) => check_positive("experiment.mass_b_kg", v)?,
            None => {
                r.mass_b_kg = Some(mass_a);
                mass_a
            }
        };
        let geometry = match r.geometry.as_deref().unwrap() {
            "parallel" => Geometry::Parallel,
            "linear" => Geometry::Linear,
            other => {
                return Err(Error::config(format!(
                    "experiment.geometry: unknown value `{other}` (use \"parallel\" or \"linear\")"
                )));
            }
        };
        let distance_mode = match r.distance_mode.as_deref().unwrap() {
            "euclidean" => DistanceMode::Euclidean,
            "literal" => DistanceMode::Literal,
            other => {
                return Err(Error::config(format!(
                    "experiment.distance_mode: unknown value `{other}` \
                     (use \"euclidean\" or \"literal\")"
                )));
            }
        };
        let j = r.j.unwrap();
        check_j("experiment.j", j)?;
        let cfg = ExperimentConfig {
            geometry,
            distance_mode,
            j,
            mass_a,
            mass_b,
            delta_x: check_positive(
                "experiment.delta_x_m",
                require("experiment.delta_x_m", r.delta_x_m, has)?,
            )?,
            delta_s: check_positive(
                "experiment.delta_s_m",
                require("experiment.delta_s_m", r.delta_s_m, has)?,
            )?,
            tau: check_nonnegative("experiment.tau_s", require("experiment.tau_s", r.tau_s, has)?)?,
            k: check_nonnegative("experiment.k", r.k.unwrap())?,
        };
        cfg.validate()?;
        Some(cfg)
    } else {
        None
    };

    // --- family ---
    let fam_name = raw.family.name.get_or_insert_with(|| "css".to_string()).clone();
    let family_kind = match fam_name.as_str() {
        "css" => StateFamily::Css,
        "css_superposition_symmetric" => StateFamily::SuperpositionSymmetric,
        "sss_one_axis" => StateFamily::SssOneAxis,
        "sss_two_axis" => StateFamily::SssTwoAxis,
        "css_superposition_centered" => {
            let c = raw.family.center_theta_rad.ok_or_else(|| {
                Error::config(
                    "missing required key `family.center_theta_rad` \
                     (css_superposition_centered needs the center angle)",
                )
            })?;
            if !(0.0..=PI).contains(&c) {
                return Err(Error::config(format!(
                    "family.center_theta_rad: must lie in [0, pi], got {c}"
                )));
            }
            StateFamily::SuperpositionCentered(c)
        }
        other => {
            return Err(Error::config(format!(
                "family.name: unknown family `{other}` (use css, \
                 css_superposition_symmetric, sss_one_axis, sss_two_axis, \
                 or css_superposition_centered)"
            )));
        }
    };
    if raw.family.center_theta_rad.is_some()
        && !matches!(family_kind, StateFamily::SuperpositionCentered(_))
    {
        return Err(Error::config(format!(
            "family.center_theta_rad: only meaningful for css_superposition_centered, \
             not {fam_name}"
        )));
    }
    let mut spec = StateFamilySpec::new(family_kind);
    let overrides: [(&str, Option<[f64; 2]>); 4] = [
        ("theta", raw.family.theta_range_rad),
        ("chi", raw.family.chi_range),
        ("dtheta", raw.family.dtheta_range_rad),
        ("dphi", raw.family.dphi_range_rad),
    ];
    for (pname, ov) in overrides {
        let Some([lo, hi]) = ov else { continue };
        let key = match pname {
            "theta" => "family.theta_range_rad",
            "chi" => "family.chi_range",
            "dtheta" => "family.dtheta_range_rad",
            _ => "family.dphi_range_rad",
        };
        match family_kind.param_names().iter().position(|&n| n == pname) {
            Some(q) => spec.ranges[q] = (lo, hi),
            None => {
                return Err(Error::config(format!(
                    "{key}: family {fam_name} has no parameter `{pname}`"
                )));
            }
        }
    }
    spec.validate().map_err(|e| at_path("family", e))?;

    // --- objective ---
    let objective = match raw.objective.get_or_insert_with(|| "entropy".to_string()).as_str() {
        "entropy" => Objective::Entropy,
        "negativity" => Objective::Negativity,
        other => {
            return Err(Error::config(format!(
                "objective: unknown value `{other}` (use \"entropy\" or \"negativity\")"
            )));
        }
    };

    // --- optimize ---
    let opt = OptimizeOpts {
        grid_n: *raw.optimize.grid_n.get_or_insert(201),
        refine: *raw.optimize.refine.get_or_insert(true),
    };
    check_grid("optimize.grid_n", opt.grid_n)?;

    // --- decoherence ---
    let deco = match &mut raw.decoherence {
        None => None,
        Some(d) => {
            let limit = parse_limit("decoherence.limit", d.limit.as_deref())?;
            let rate = match limit {
                DecoherenceLimit::Short => {
                    if d.rate_hz_per_m2.is_some() {
                        return Err(Error::config(
                            "decoherence.rate_hz_per_m2: the short-wavelength rate is \
                             `rate_hz` (units Hz); remove this key or set limit = \"long\"",
                        ));
                    }
                    require("decoherence.rate_hz", d.rate_hz, true)?
                }
                DecoherenceLimit::Long => {
                    if d.rate_hz.is_some() {
                        return Err(Error::config(
                            "decoherence.rate_hz: the long-wavelength rate is \
                             `rate_hz_per_m2` (units Hz/m^2); remove this key or set \
                             limit = \"short\"",
                        ));
                    }
                    require("decoherence.rate_hz_per_m2", d.rate_hz_per_m2, true)?
                }
            };
            let key = match limit {
                DecoherenceLimit::Short => "decoherence.rate_hz",
                DecoherenceLimit::Long => "decoherence.rate_hz_per_m2",
            };
            check_nonnegative(key, rate)?;
            Some(DecoherenceSettings { limit, rate })
        }
    };

    // --- evolve (demo parameters chosen so branch spacing resolves on a plot:
    //     dx/sigma_x = 2 sqrt(2) k = 5.66 instead of the physical ~3.5e4) ---
    let e = &mut raw.evolve;
    let e_j = *e.j.get_or_insert(5.0);
    let e_k = *e.k.get_or_insert(2.0);
    let evolve = EvolveOpts {
        j: e_j,
        theta: *e.theta_rad.get_or_insert(PI / 2.0),
        phi: *e.phi_rad.get_or_insert(0.0),
        mass: *e.mass_kg.get_or_insert(1e-14),
        omega_m: *e.omega_m_rad_per_s.get_or_insert(1.0),
        k: e_k,
        times_over_ts: e
            .times_over_ts
            .get_or_insert_with(|| vec![0.0, 0.25, 0.5, 0.75, 1.0])
            .clone(),
        n_x: *e.n_x.get_or_insert(2001),
        x_half_span_sigma: *e
            .x_half_span_sigma
            .get_or_insert(2.0 * 2f64.sqrt() * e_k * e_j + 8.0),
    };
    check_j("evolve.j", evolve.j)?;
    if !(0.0..=PI).contains(&evolve.theta) {
        return Err(Error::config(format!(
            "evolve.theta_rad: must lie in [0, pi], got {}",
            evolve.theta
        )));
    }
    check_positive("evolve.mass_kg", evolve.mass)?;
    check_positive("evolve.omega_m_rad_per_s", evolve.omega_m)?;
    check_nonnegative("evolve.k", evolve.k)?;
    check_positive("evolve.x_half_span_sigma", evolve.x_half_span_sigma)?;
    if evolve.n_x < 8 {
        return Err(Error::config(format!("evolve.n_x: need at least 8 points, got {}", evolve.n_x)));
    }
    if evolve.times_over_ts.is_empty() {
        return Err(Error::config("evolve.times_over_ts: need at least one time"));
    }
    for &t in &evolve.times_over_ts {
        check_nonnegative("evolve.times_over_ts", t)?;
    }

    // --- husimi ---
    let husimi = HusimiOpts {
        params: raw.husimi.params.clone(),
        n_theta: *raw.husimi.n_theta.get_or_insert(121),
        n_phi: *raw.husimi.n_phi.get_or_insert(121),
    };
    if husimi.n_theta < 3 || husimi.n_phi < 3 {
        return Err(Error::config("husimi.n_theta / husimi.n_phi: need at least 3 points"));
    }

    let entangle = EntangleOpts { params: raw.entangle.params.clone() };

    // --- casimir ---
    let casimir = match &mut raw.casimir {
        None => None,
        Some(c) => {
            let radius =
                check_positive("casimir.radius_m", require("casimir.radius_m", c.radius_m, true)?)?;
            let separation = match c.separation_m {
                Some(s) => check_positive("casimir.separation_m", s)?,
                None => {
                    let s = experiment
                        .as_ref()
                        .map(|x| x.delta_s)
                        .ok_or_else(|| {
                            Error::config(
                                "missing required key `casimir.separation_m` \
                                 (no experiment section to default from)",
                            )
                        })?;
                    c.separation_m = Some(s);
                    s
                }
            };
            let epsilon =
                check_positive("casimir.epsilon", require("casimir.epsilon", c.epsilon, true)?)?;
            Some(CasimirOpts { radius, separation, epsilon })
        }
    };

    // --- sweep ---
    let s = &mut raw.sweep;
    let kind = match s.kind.get_or_insert_with(|| "theta_surface".to_string()).as_str() {
        "theta_surface" => SweepKind::ThetaSurface,
        "time" => SweepKind::Time,
        "spin" => SweepKind::Spin,
        other => {
            return Err(Error::config(format!(
                "sweep.kind: unknown value `{other}` (use theta_surface, time, or spin)"
            )));
        }
    };
    let sweep = SweepOpts {
        kind,
        grid_n: *s.grid_n.get_or_insert(match kind {
            SweepKind::ThetaSurface => 101,
            _ => 121,
        }),
        refine: *s.refine.get_or_insert(true),
        j_values: s.j_values.get_or_insert_with(|| vec![0.5, 1.0, 2.0, 5.0, 10.0]).clone(),
        tau_values: s
            .tau_values_s
            .get_or_insert_with(|| (0..=8).map(|i| 0.25 * i as f64).collect())
            .clone(),
    };
    check_grid("sweep.grid_n", sweep.grid_n)?;
    for &j in &sweep.j_values {
        check_j("sweep.j_values", j)?;
    }
    for &t in &sweep.tau_values {
        check_nonnegative("sweep.tau_values_s", t)?;
    }

    // --- decohere ---
    let d = &mut raw.decohere;
    let decohere = DecohereOpts {
        limit: parse_limit("decohere.limit", Some(d.limit.get_or_insert_with(|| "short".to_string())))?,
        j_values: d.j_values.get_or_insert_with(|| vec![0.5, 10.0]).clone(),
        dimensionless_rates: d
            .dimensionless_rate_values
            .get_or_insert_with(|| vec![0.0, 0.25, 0.5, 0.75, 1.0])
            .clone(),
        grid_n: *d.grid_n.get_or_insert(41),
    };
    check_grid("decohere.grid_n", decohere.grid_n)?;
    for &j in &decohere.j_values {
        check_j("decohere.j_values", j)?;
    }
    for &r in &decohere.dimensionless_rates {
        check_nonnegative("decohere.dimensionless_rate_values", r)?;
    }

    // --- oracle ---
    let o = &mut raw.oracle;
    let oracle = OracleOpts {
        j_values: o.j_values.get_or_insert_with(|| vec![0.5, 1.0, 2.0]).clone(),
        k_values: o.k_values.get_or_insert_with(|| vec![0.05, 0.2]).clone(),
        times_over_ts: o.times_over_ts.get_or_insert_with(|| vec![0.5, 1.0, 2.0]).clone(),
        n_fock: o.n_fock,
    };
    for &j in &oracle.j_values {
        check_j("oracle.j_values", j)?;
    }
    for &k in &oracle.k_values {
        check_nonnegative("oracle.k_values", k)?;
    }
    for &t in &oracle.times_over_ts {
        check_nonnegative("oracle.times_over_ts", t)?;
    }
    if let Some(n) = oracle.n_fock {
        if n < 2 {
            return Err(Error::config(format!("oracle.n_fock: need at least 2 levels, got {n}")));
        }
    }

    raw.preset = preset.clone();
    let snapshot = serde_json::to_value(&raw)
        .map_err(|e| Error::config(format!("config snapshot serialization failed: {e}")))?;

    Ok(RunConfig {
        preset,
        experiment,
        family: spec,
        objective,
        opt,
        deco,
        evolve,
        husimi,
        entangle,
        casimir,
        sweep,
        decohere,
        oracle,
        snapshot,
    })
}

fn parse_limit(path: &str, v: Option<&str>) -> Result<DecoherenceLimit> {
    match v {
        Some("short") => Ok(DecoherenceLimit::Short),
        Some("long") => Ok(DecoherenceLimit::Long),
        Some(other) => {
            Err(Error::config(format!("{path}: unknown value `{other}` (use \"short\" or \"long\")")))
        }
        None => Err(Error::config(format!("missing required key `{path}`"))),
    }
}

fn check_grid(path: &str, n: usize) -> Result<()> {
    if !(3..=4001).contains(&n) {
        return Err(Error::config(format!("{path}: must lie in [3, 4001], got {n}")));
    }
    Ok(())
}
