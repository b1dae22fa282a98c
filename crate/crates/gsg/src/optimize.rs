//! Grid + golden-section optimization of state-family parameters, and the
//! sweeps that regenerate the tables and figure data.
//!
//! The objectives (entanglement entropy to maximize, negativity to minimize)
//! are smooth, cheap, and at most two-dimensional once the interferometer
//! symmetry fixes the B-side state from the A-side point (linear mirror:
//! theta_B = pi - theta_A; parallel: identical states). A coarse uniform grid
//! locates the basin and coordinate golden-section refinement polishes it,
//! shrinking the bracket by 0.2 per round until steps fall below 1e-4 rad.
//!
//! Determinism contract: identical configuration and grid produce a
//! bit-identical `SweepResult` regardless of worker count. Grid evaluations
//! are distributed by index (order-preserving collect), the arg-extremum scan
//! is sequential with first-index tie-breaking, refinement is sequential, and
//! the eigensolver backend is pinned to sequential mode.

use std::sync::Once;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::decoherence;
use crate::entangle::{
    DensityMatrix, ExperimentConfig, Geometry, PhaseMatrix, entanglement_entropy, joint_state,
    negativity_value, negativity_value_pure, phase_matrix,
};
use crate::error::{Error, Result};
use crate::linalg::HermEig;
use crate::spin::{
    SpinOperatorSet, SpinState, SqueezeAxis, coherent_spin_state, css_superposition,
    squeeze_generator_eig,
};

const PI: f64 = std::f64::consts::PI;
const GOLDEN: f64 = 0.618_033_988_749_894_9; // (sqrt 5 - 1)/2

/// Refinement stops once the coordinate bracket half-width drops below this.
const REFINE_STEP_TOL: f64 = 1e-4;
/// Interval tolerance of a single golden-section line search.
const GOLDEN_TOL: f64 = 1e-6;
const MAX_REFINE_ROUNDS: usize = 6;

static FAER_SEQ: Once = Once::new();

/// Pins faer to sequential execution so eigensolves are bitwise reproducible
/// under any rayon pool size; call is idempotent.
pub fn pin_deterministic_backend() {
    FAER_SEQ.call_once(|| faer::set_global_parallelism(faer::Par::Seq));
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Maximize the entanglement entropy of the pure joint state.
    Entropy,
    /// Minimize the negativity (most negative value wins).
    Negativity,
}

impl Objective {
    pub fn as_str(&self) -> &'static str {
        match self {
            Objective::Entropy => "entropy",
            Objective::Negativity => "negativity",
        }
    }

    /// Sign s such that maximizing s * f realizes this objective.
    fn sign(&self) -> f64 {
        match self {
            Objective::Entropy => 1.0,
            Objective::Negativity => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoherenceLimit {
    Short,
    Long,
}

impl DecoherenceLimit {
    pub fn as_str(&self) -> &'static str {
        match self {
            DecoherenceLimit::Short => "short",
            DecoherenceLimit::Long => "long",
        }
    }
}

/// One decoherence channel applied over the configured window.
#[derive(Debug, Clone, Copy)]
pub struct DecoherenceSettings {
    pub limit: DecoherenceLimit,
    /// Physical rate: Hz (short) or Hz/m^2 (long).
    pub rate: f64,
}

/// The optimizable state families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateFamily {
    /// Single coherent state; free parameter theta.
    Css,
    /// Equator-symmetric two-component superposition; free (dtheta, dphi).
    SuperpositionSymmetric,
    /// One-axis squeezed coherent state; free (chi, theta).
    SssOneAxis,
    /// Two-axis squeezed coherent state; free (chi, theta).
    SssTwoAxis,
    /// Superposition centered on an arbitrary theta_c instead of the equator;
    /// free (dtheta, dphi). Kept for comparison runs only.
    SuperpositionCentered(f64),
}

impl StateFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            StateFamily::Css => "css",
            StateFamily::SuperpositionSymmetric => "css_superposition_symmetric",
            StateFamily::SssOneAxis => "sss_one_axis",
            StateFamily::SssTwoAxis => "sss_two_axis",
            StateFamily::SuperpositionCentered(_) => "css_superposition_centered",
        }
    }

    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            StateFamily::Css => &["theta"],
            StateFamily::SuperpositionSymmetric | StateFamily::SuperpositionCentered(_) => {
                &["dtheta", "dphi"]
            }
            StateFamily::SssOneAxis | StateFamily::SssTwoAxis => &["chi", "theta"],
        }
    }

    /// Default search ranges. The squeezing ranges keep the search in the
    /// regular regime: one-axis stops at the two-component-cat point pi/2
    /// beyond which the surface fragments into the chaotic regime, and
    /// two-axis (whose generator spectrum grows like j^2 rather than j) uses
    /// a proportionally tighter window.
    pub fn default_ranges(&self) -> Vec<(f64, f64)> {
        match self {
            StateFamily::Css => vec![(0.0, PI)],
            StateFamily::SuperpositionSymmetric => vec![(0.0, PI / 2.0), (0.0, PI)],
            StateFamily::SuperpositionCentered(center) => {
                let cap = center.min(PI - center).max(0.0);
                vec![(0.0, cap), (0.0, PI)]
            }
            StateFamily::SssOneAxis => vec![(0.0, PI / 2.0), (0.0, PI)],
            StateFamily::SssTwoAxis => vec![(0.0, 0.03), (0.0, PI)],
        }
    }
}

/// A family plus its (possibly overridden) search ranges.
#[derive(Debug, Clone)]
pub struct StateFamilySpec {
    pub family: StateFamily,
    pub ranges: Vec<(f64, f64)>,
}

impl StateFamilySpec {
    pub fn new(family: StateFamily) -> Self {
        StateFamilySpec { family, ranges: family.default_ranges() }
    }

    pub fn with_ranges(family: StateFamily, ranges: Vec<(f64, f64)>) -> Result<Self> {
        let spec = StateFamilySpec { family, ranges };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let names = self.family.param_names();
        if self.ranges.len() != names.len() {
            return Err(Error::config(format!(
                "family {} takes {} parameters, got {} ranges",
                self.family.as_str(),
                names.len(),
                self.ranges.len()
            )));
        }
        for (name, &(lo, hi)) in names.iter().zip(&self.ranges) {
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return Err(Error::config(format!("invalid range for {name}: [{lo}, {hi}]")));
            }
            let domain = match *name {
                "theta" | "dphi" => (0.0, PI),
                "dtheta" => (0.0, PI / 2.0),
                _ => (f64::NEG_INFINITY, f64::INFINITY),
            };
            if lo < domain.0 - 1e-12 || hi > domain.1 + 1e-12 {
                return Err(Error::config(format!(
                    "range for {name} exceeds its domain [{}, {}]",
                    domain.0, domain.1
                )));
            }
        }
        Ok(())
    }
}

/// Builds the A-side state of a family at a parameter point.
pub fn build_state_a(family: StateFamily, j: f64, params: &[f64], sss: Option<&HermEig>) -> Result<SpinState> {
    match family {
        StateFamily::Css => coherent_spin_state(j, params[0], 0.0),
        StateFamily::SuperpositionSymmetric => {
            crate::spin::css_superposition_symmetric(j, params[0], params[1])
        }
        StateFamily::SuperpositionCentered(c) => {
            css_superposition(j, c + params[0], params[1], c - params[0], -params[1])
        }
        StateFamily::SssOneAxis | StateFamily::SssTwoAxis => {
            sss_apply(family, j, params[0], params[1], sss)
        }
    }
}

/// B-side state under the geometry symmetry. Parallel pairs identical
/// states; linear pairs each state with its mirror (theta -> pi - theta,
/// which flips the sign of the two-axis generator, and maps the symmetric
/// superposition onto itself).
pub fn build_state_b(
    family: StateFamily,
    j: f64,
    params: &[f64],
    geometry: Geometry,
    sss: Option<&HermEig>,
) -> Result<SpinState> {
    match geometry {
        Geometry::Parallel => build_state_a(family, j, params, sss),
        Geometry::Linear => match family {
            StateFamily::Css => coherent_spin_state(j, PI - params[0], 0.0),
            StateFamily::SuperpositionSymmetric => {
                crate::spin::css_superposition_symmetric(j, params[0], params[1])
            }
            StateFamily::SuperpositionCentered(c) => css_superposition(
                j,
                (PI - c) + params[0],
                params[1],
                (PI - c) - params[0],
                -params[1],
            ),
            StateFamily::SssOneAxis => sss_apply(family, j, params[0], PI - params[1], sss),
            StateFamily::SssTwoAxis => sss_apply(family, j, -params[0], PI - params[1], sss),
        },
    }
}

fn sss_apply(family: StateFamily, j: f64, chi: f64, theta: f64, sss: Option<&HermEig>) -> Result<SpinState> {
    let base = coherent_spin_state(j, theta, 0.0)?;
    match sss {
        Some(eig) => {
            let amp = eig.apply_exp(chi, base.amplitudes());
            SpinState::from_amplitudes(j, amp)
        }
        None => {
            let axis = match family {
                StateFamily::SssOneAxis => SqueezeAxis::OneAxis,
                StateFamily::SssTwoAxis => SqueezeAxis::TwoAxis,
                _ => unreachable!("sss_apply called for a non-squeezed family"),
            };
            crate::spin::squeezed_spin_state(j, axis, chi, theta, 0.0)
        }
    }
}

/// Everything needed to evaluate one objective value, precomputed once per
/// experiment configuration.
pub struct ObjectiveContext {
    pub cfg: ExperimentConfig,
    pub phases: PhaseMatrix,
    pub family: StateFamily,
    pub objective: Objective,
    pub deco: Option<DecoherenceSettings>,
    sss_eig: Option<HermEig>,
}

impl ObjectiveContext {
    pub fn new(
        cfg: ExperimentConfig,
        family: StateFamily,
        objective: Objective,
        deco: Option<DecoherenceSettings>,
    ) -> Result<Self> {
        pin_deterministic_backend();
        if objective == Objective::Entropy && deco.is_some() {
            return Err(Error::config(
                "the entropy objective is defined for the pure (decoherence-free) case; \
                 use the negativity objective with decoherence",
            ));
        }
        if let Some(d) = &deco {
            if d.rate < 0.0 {
                return Err(Error::config("decoherence rate must be nonnegative"));
            }
        }
        let phases = phase_matrix(&cfg)?;
        let sss_eig = match family {
            StateFamily::SssOneAxis => {
                let ops = SpinOperatorSet::new(cfg.j)?;
                Some(squeeze_generator_eig(&ops, SqueezeAxis::OneAxis)?)
            }
            StateFamily::SssTwoAxis => {
                let ops = SpinOperatorSet::new(cfg.j)?;
                Some(squeeze_generator_eig(&ops, SqueezeAxis::TwoAxis)?)
            }
            _ => None,
        };
        Ok(ObjectiveContext { cfg, phases, family, objective, deco, sss_eig })
    }

    pub fn evaluate(&self, params: &[f64]) -> Result<f64> {
        let j = self.cfg.j;
        let a = build_state_a(self.family, j, params, self.sss_eig.as_ref())?;
        let b = build_state_b(self.family, j, params, self.cfg.geometry, self.sss_eig.as_ref())?;
        let psi = joint_state(&a, &b, &self.phases, self.cfg.k)?;
        match (self.objective, &self.deco) {
            (Objective::Entropy, _) => entanglement_entropy(&psi),
            (Objective::Negativity, None) => negativity_value_pure(&psi),
            (Objective::Negativity, Some(d)) if d.rate == 0.0 => negativity_value_pure(&psi),
            (Objective::Negativity, Some(d)) => {
                let rho = DensityMatrix::from_pure(&psi);
                let damped = match d.limit {
                    DecoherenceLimit::Short => {
                        decoherence::apply_short(&rho, d.rate, self.cfg.tau)?
                    }
                    DecoherenceLimit::Long => {
                        decoherence::apply_long(&rho, d.rate, self.cfg.delta_x, self.cfg.tau)?
                    }
                };
                negativity_value(&damped)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ParamValue {
    pub name: String,
    pub value: f64,
}

/// Grid of objective values plus the (optionally refined) extremum.
#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub objective: String,
    pub family: String,
    pub geometry: String,
    pub axes: Vec<Axis>,
    /// Row-major over the axes.
    pub values: Vec<f64>,
    /// Optimal family parameters per sweep point, for sweeps whose axis is
    /// not itself a family parameter.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point_params: Option<Vec<Vec<f64>>>,
    pub optimum_params: Vec<ParamValue>,
    pub optimum_value: f64,
    pub refined: bool,
    pub grid_n: usize,
    pub threads: usize,
    pub wall_ms: u64,
    /// Configuration snapshot attached by the caller at emission time.
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub config: serde_json::Value,
}

impl SweepResult {
    /// Equality of everything that the determinism contract covers
    /// (excludes wall time and thread count).
    pub fn same_data(&self, other: &SweepResult) -> bool {
        self.objective == other.objective
            && self.family == other.family
            && self.geometry == other.geometry
            && self.axes == other.axes
            && self.values == other.values
            && self.point_params == other.point_params
            && self.optimum_params == other.optimum_params
            && self.optimum_value == other.optimum_value
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Sequential arg-extremum: strictly-better keeps the earliest index.
fn argbest(values: &[f64], sign: f64) -> usize {
    let mut best = 0;
    for i in 1..values.len() {
        if sign * values[i] > sign * values[best] {
            best = i;
        }
    }
    best
}

/// Golden-section maximization of g on [a, b]; returns (x, g(x)).
fn golden_section(mut a: f64, mut b: f64, g: &mut impl FnMut(f64) -> Result<f64>) -> Result<(f64, f64)> {
    let mut x1 = b - GOLDEN * (b - a);
    let mut x2 = a + GOLDEN * (b - a);
    let mut g1 = g(x1)?;
    let mut g2 = g(x2)?;
    while b - a > GOLDEN_TOL {
        if g1 >= g2 {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - GOLDEN * (b - a);
            g1 = g(x1)?;
        } else {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + GOLDEN * (b - a);
            g2 = g(x2)?;
        }
    }
    if g1 >= g2 { Ok((x1, g1)) } else { Ok((x2, g2)) }
}

/// Coarse grid + coordinate golden-section refinement over the family's free
/// parameters.
pub fn optimize(
    spec: &StateFamilySpec,
    ctx: &ObjectiveContext,
    grid_n: usize,
    refine: bool,
) -> Result<SweepResult> {
    spec.validate()?;
    if grid_n < 3 {
        return Err(Error::config(format!("grid_n must be at least 3, got {grid_n}")));
    }
    let start = Instant::now();
    let names = ctx.family.param_names();
    let p = spec.ranges.len();
    let axes: Vec<Axis> = names
        .iter()
        .zip(&spec.ranges)
        .map(|(name, &(lo, hi))| Axis { name: name.to_string(), values: linspace(lo, hi, grid_n) })
        .collect();
    let total = grid_n.pow(p as u32);
    let unflatten = |flat: usize| -> Vec<f64> {
        let mut out = vec![0.0; p];
        let mut rem = flat;
        for q in (0..p).rev() {
            out[q] = axes[q].values[rem % grid_n];
            rem /= grid_n;
        }
        out
    };

    let values: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|flat| ctx.evaluate(&unflatten(flat)))
        .collect::<Result<Vec<f64>>>()?;

    let sign = ctx.objective.sign();
    let best_flat = argbest(&values, sign);
    let mut best_params = unflatten(best_flat);
    let mut best_value = values[best_flat];

    if refine {
        let mut steps: Vec<f64> = spec
            .ranges
            .iter()
            .map(|&(lo, hi)| if grid_n > 1 { (hi - lo) / (grid_n - 1) as f64 } else { 0.0 })
            .collect();
        for _round in 0..MAX_REFINE_ROUNDS {
            if steps.iter().all(|&s| s < REFINE_STEP_TOL) {
                break;
            }
            for q in 0..p {
                if steps[q] <= 0.0 {
                    continue;
                }
                let (lo, hi) = spec.ranges[q];
                let a = (best_params[q] - steps[q]).max(lo);
                let b = (best_params[q] + steps[q]).min(hi);
                if b - a < GOLDEN_TOL {
                    continue;
                }
                let mut trial = best_params.clone();
                let (x, gx) = golden_section(a, b, &mut |x| {
                    trial[q] = x;
                    ctx.evaluate(&trial).map(|v| sign * v)
                })?;
                if gx > sign * best_value {
                    best_params[q] = x;
                    best_value = sign * gx;
                }
            }
            for s in &mut steps {
                *s *= 0.2;
            }
        }
    }

    Ok(SweepResult {
        objective: ctx.objective.as_str().to_string(),
        family: ctx.family.as_str().to_string(),
        geometry: ctx.cfg.geometry.as_str().to_string(),
        axes,
        values,
        point_params: None,
        optimum_params: names
            .iter()
            .zip(&best_params)
            .map(|(n, v)| ParamValue { name: n.to_string(), value: *v })
            .collect(),
        optimum_value: best_value,
        refined: refine,
        grid_n,
        threads: rayon::current_num_threads(),
        wall_ms: start.elapsed().as_millis() as u64,
        config: serde_json::Value::Null,
    })
}

/// Full (theta_A, theta_B) objective surface for the coherent family, with no
/// symmetry reduction — the figure-regeneration path.
pub fn sweep_theta_surface(
    cfg: &ExperimentConfig,
    objective: Objective,
    grid_n: usize,
) -> Result<SweepResult> {
    pin_deterministic_backend();
    if grid_n < 3 {
        return Err(Error::config(format!("grid_n must be at least 3, got {grid_n}")));
    }
    let start = Instant::now();
    let phases = phase_matrix(cfg)?;
    let thetas = linspace(0.0, PI, grid_n);
    let j = cfg.j;
    let values: Vec<f64> = (0..grid_n * grid_n)
        .into_par_iter()
        .map(|flat| {
            let (ia, ib) = (flat / grid_n, flat % grid_n);
            let a = coherent_spin_state(j, thetas[ia], 0.0)?;
            let b = coherent_spin_state(j, thetas[ib], 0.0)?;
            let psi = joint_state(&a, &b, &phases, cfg.k)?;
            match objective {
                Objective::Entropy => entanglement_entropy(&psi),
                Objective::Negativity => negativity_value_pure(&psi),
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    let best = argbest(&values, objective.sign());
    Ok(SweepResult {
        objective: objective.as_str().to_string(),
        family: StateFamily::Css.as_str().to_string(),
        geometry: cfg.geometry.as_str().to_string(),
        axes: vec![
            Axis { name: "theta_a".to_string(), values: thetas.clone() },
            Axis { name: "theta_b".to_string(), values: thetas },
        ],
        optimum_params: vec![
            ParamValue {
                name: "theta_a".to_string(),
                value: PI * (best / grid_n) as f64 / (grid_n - 1) as f64,
            },
            ParamValue {
                name: "theta_b".to_string(),
                value: PI * (best % grid_n) as f64 / (grid_n - 1) as f64,
            },
        ],
        optimum_value: values[best],
        values,
        point_params: None,
        refined: false,
        grid_n,
        threads: rayon::current_num_threads(),
        wall_ms: start.elapsed().as_millis() as u64,
        config: serde_json::Value::Null,
    })
}

/// Width of the high-value ridge along the anti-diagonal theta_B = pi -
/// theta_A of a square surface: grid measure of the half-max superlevel set.
pub fn ridge_width_half_max(surface: &SweepResult) -> Result<f64> {
    if surface.axes.len() != 2 {
        return Err(Error::numerical("ridge width needs a 2-axis surface"));
    }
    let n = surface.axes[0].values.len();
    let cut: Vec<f64> = (0..n).map(|i| surface.values[i * n + (n - 1 - i)]).collect();
    let max = cut.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let half = max / 2.0;
    let h = PI / (n - 1) as f64;
    Ok(cut.iter().filter(|&&v| v >= half).count() as f64 * h)
}

/// Re-optimizes the family at each interaction time.
pub fn sweep_time(
    spec: &StateFamilySpec,
    cfg: &ExperimentConfig,
    objective: Objective,
    tau_values: &[f64],
    grid_n: usize,
    refine: bool,
) -> Result<SweepResult> {
    let start = Instant::now();
    let mut values = Vec::with_capacity(tau_values.len());
    let mut point_params = Vec::with_capacity(tau_values.len());
    for &tau in tau_values {
        if !(tau >= 0.0) {
            return Err(Error::config(format!("tau must be nonnegative, got {tau}")));
        }
        let mut c = *cfg;
        c.tau = tau;
        let ctx = ObjectiveContext::new(c, spec.family, objective, None)?;
        let r = optimize(spec, &ctx, grid_n, refine)?;
        values.push(r.optimum_value);
        point_params.push(r.optimum_params.iter().map(|pv| pv.value).collect());
    }
    let best = argbest(&values, objective.sign());
    Ok(SweepResult {
        objective: objective.as_str().to_string(),
        family: spec.family.as_str().to_string(),
        geometry: cfg.geometry.as_str().to_string(),
        axes: vec![Axis { name: "tau".to_string(), values: tau_values.to_vec() }],
        optimum_params: vec![ParamValue { name: "tau".to_string(), value: tau_values[best] }],
        optimum_value: values[best],
        values,
        point_params: Some(point_params),
        refined: refine,
        grid_n,
        threads: rayon::current_num_threads(),
        wall_ms: start.elapsed().as_millis() as u64,
        config: serde_json::Value::Null,
    })
}

/// Re-optimizes the family at each spin value.
pub fn sweep_spin(
    spec: &StateFamilySpec,
    cfg: &ExperimentConfig,
    objective: Objective,
    j_values: &[f64],
    grid_n: usize,
    refine: bool,
) -> Result<SweepResult> {
    let start = Instant::now();
    let mut values = Vec::with_capacity(j_values.len());
    let mut point_params = Vec::with_capacity(j_values.len());
    for &j in j_values {
        let mut c = *cfg;
        c.j = j;
        let ctx = ObjectiveContext::new(c, spec.family, objective, None)?;
        let r = optimize(spec, &ctx, grid_n, refine)?;
        values.push(r.optimum_value);
        point_params.push(r.optimum_params.iter().map(|pv| pv.value).collect());
    }
    let best = argbest(&values, objective.sign());
    Ok(SweepResult {
        objective: objective.as_str().to_string(),
        family: spec.family.as_str().to_string(),
        geometry: cfg.geometry.as_str().to_string(),
        axes: vec![Axis { name: "j".to_string(), values: j_values.to_vec() }],
        optimum_params: vec![ParamValue { name: "j".to_string(), value: j_values[best] }],
        optimum_value: values[best],
        values,
        point_params: Some(point_params),
        refined: refine,
        grid_n,
        threads: rayon::current_num_threads(),
        wall_ms: start.elapsed().as_millis() as u64,
        config: serde_json::Value::Null,
    })
}

/// Negativity-vs-rate curves for the coherent family.
///
/// Two curve sets are produced per spin: `reoptimized` re-optimizes theta at
/// every rate (with the optimal angle recorded), while `fixed_theta` keeps
/// theta at its rate-zero optimum. The re-optimized curves answer "how well
/// can each spin do"; the fixed curves answer "how does a tuned experiment
/// degrade", and the two disagree qualitatively in the long-wavelength limit
/// where re-optimization lets large spins migrate poleward.
#[derive(Debug, Clone, Serialize)]
pub struct DecoherenceSweep {
    pub limit: String,
    pub geometry: String,
    pub j_values: Vec<f64>,
    /// Physical rates: Hz (short) or Hz/m^2 (long).
    pub rates: Vec<f64>,
    /// gamma*tau (short) or Gamma*dx^2*tau (long) per rate.
    pub dimensionless: Vec<f64>,
    /// Row-major (j, rate).
    pub reoptimized: Vec<f64>,
    /// Optimal theta per (j, rate), row-major.
    pub reopt_theta: Vec<f64>,
    /// Row-major (j, rate), theta frozen at the rate-zero optimum.
    pub fixed_theta: Vec<f64>,
    /// The frozen theta per j.
    pub theta_star: Vec<f64>,
    pub grid_n: usize,
    pub threads: usize,
    pub wall_ms: u64,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub config: serde_json::Value,
}

pub fn sweep_decoherence(
    cfg: &ExperimentConfig,
    limit: DecoherenceLimit,
    j_values: &[f64],
    rates: &[f64],
    grid_n: usize,
) -> Result<DecoherenceSweep> {
    let start = Instant::now();
    let spec_template = StateFamilySpec::new(StateFamily::Css);
    let mut reoptimized = Vec::with_capacity(j_values.len() * rates.len());
    let mut reopt_theta = Vec::with_capacity(j_values.len() * rates.len());
    let mut fixed_theta = Vec::with_capacity(j_values.len() * rates.len());
    let mut theta_star = Vec::with_capacity(j_values.len());
    for &j in j_values {
        let mut c = *cfg;
        c.j = j;
        let pure_ctx = ObjectiveContext::new(c, StateFamily::Css, Objective::Negativity, None)?;
        let base = optimize(&spec_template, &pure_ctx, grid_n, true)?;
        let t_star = base.optimum_params[0].value;
        theta_star.push(t_star);
        for &rate in rates {
            if !(rate >= 0.0) {
                return Err(Error::config(format!("rate must be nonnegative, got {rate}")));
            }
            let deco = Some(DecoherenceSettings { limit, rate });
            let ctx = ObjectiveContext::new(c, StateFamily::Css, Objective::Negativity, deco)?;
            let r = optimize(&spec_template, &ctx, grid_n, true)?;
            reoptimized.push(r.optimum_value);
            reopt_theta.push(r.optimum_params[0].value);
            fixed_theta.push(ctx.evaluate(&[t_star])?);
        }
    }
    let dimensionless = rates
        .iter()
        .map(|&r| match limit {
            DecoherenceLimit::Short => r * cfg.tau,
            DecoherenceLimit::Long => r * cfg.delta_x * cfg.delta_x * cfg.tau,
        })
        .collect();
    Ok(DecoherenceSweep {
        limit: limit.as_str().to_string(),
        geometry: cfg.geometry.as_str().to_string(),
        j_values: j_values.to_vec(),
        rates: rates.to_vec(),
        dimensionless,
        reoptimized,
        reopt_theta,
        fixed_theta,
        theta_star,
        grid_n,
        threads: rayon::current_num_threads(),
        wall_ms: start.elapsed().as_millis() as u64,
        config: serde_json::Value::Null,
    })
}
