//! Gravitational-phase entanglement between two recombined interferometers.
//!
//! Each pair of branches (m on side A, n on side B) accumulates a phase
//! phi_mn = G M_A M_B tau / (hbar D_mn) set by the branch distance D_mn of the
//! chosen geometry. The joint spin state after both loops close is
//!
//! ```text
//! psi_mn = c_m^A c_n^B e^(i 2 pi k^2 (m^2 - n^2)) e^(-i phi_mn)
//! ```
//!
//! whose entanglement this module quantifies: von Neumann entropy of the
//! reduced state, negativity of the partial transpose, the witness built from
//! the negative-eigenvalue subspace, and its expansion in generalized
//! Gell-Mann matrices. The Casimir-Polder check quantifies when gravity
//! actually dominates the electromagnetic coupling between the masses.

use faer::{Mat, c64};

use crate::constants::{C, G, HBAR};
use crate::error::{Error, Result};
use crate::linalg::{self, ZERO, cis, eigh, hermiticity_defect};
use crate::spin::{SpinState, two_j_from};

const PI: f64 = std::f64::consts::PI;

/// Treat an eigenvalue of rho as zero below this (0 ln 0 = 0 convention).
const EIG_FLOOR: f64 = 1e-14;
/// Hermiticity defect above which entropy/decomposition inputs are rejected.
const HERM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    /// Interferometers along a common axis; branch distance
    /// ds + dx (2j + m - n).
    Linear,
    /// Side-by-side interferometers; branch distance from ds and the
    /// transverse offset dx (m - n).
    Parallel,
}

impl Geometry {
    pub fn as_str(&self) -> &'static str {
        match self {
            Geometry::Linear => "linear",
            Geometry::Parallel => "parallel",
        }
    }
}

/// How the parallel-geometry branch distance is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceMode {
    /// Physical separation sqrt(ds^2 + dx^2 (m-n)^2). Default.
    Euclidean,
    /// The squared-distance form ds^2 + dx^2 (m-n)^2 divided into a 1 m
    /// reference length; kept only for comparison against the other mode.
    Literal,
}

impl DistanceMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            DistanceMode::Euclidean => "euclidean",
            DistanceMode::Literal => "literal",
        }
    }
}

/// Full two-interferometer configuration.
#[derive(Debug, Clone, Copy)]
pub struct ExperimentConfig {
    pub geometry: Geometry,
    pub distance_mode: DistanceMode,
    pub j: f64,
    /// Masses [kg].
    pub mass_a: f64,
    pub mass_b: f64,
    /// Neighboring-branch separation [m].
    pub delta_x: f64,
    /// Minimum branch distance between the two systems [m].
    pub delta_s: f64,
    /// Interaction time [s].
    pub tau: f64,
    /// Dimensionless interferometer coupling (enters only through local
    /// phases).
    pub k: f64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        two_j_from(self.j)?;
        if !(self.delta_s > 0.0) {
            return Err(Error::config(format!("delta_s must be positive, got {}", self.delta_s)));
        }
        if !(self.tau >= 0.0) {
            return Err(Error::config(format!("tau must be nonnegative, got {}", self.tau)));
        }
        if !(self.mass_a > 0.0) || !(self.mass_b > 0.0) {
            return Err(Error::config("masses must be positive"));
        }
        if !(self.delta_x >= 0.0) {
            return Err(Error::config(format!("delta_x must be nonnegative, got {}", self.delta_x)));
        }
        Ok(())
    }
}

/// Pairwise gravitational phases phi_mn [rad], row-indexed by the A-side m.
#[derive(Debug, Clone)]
pub struct PhaseMatrix {
    dim: usize,
    phi: Vec<f64>,
}

impl PhaseMatrix {
    /// Builds a phase matrix from explicit values, row-major over (m, n).
    pub fn from_values(dim: usize, phi: Vec<f64>) -> Result<Self> {
        if phi.len() != dim * dim {
            return Err(Error::config(format!(
                "phase matrix needs {} values for dim {dim}, got {}",
                dim * dim,
                phi.len()
            )));
        }
        Ok(PhaseMatrix { dim, phi })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, im: usize, und: usize) -> f64 {
        self.phi[im * self.dim + und]
    }

    pub fn values(&self) -> &[f64] {
        &self.phi
    }
}

pub fn phase_matrix(cfg: &ExperimentConfig) -> Result<PhaseMatrix> {
    cfg.validate()?;
    let two_j = two_j_from(cfg.j)?;
    let d = (two_j + 1) as usize;
    let j = cfg.j;
    let pref = G * cfg.mass_a * cfg.mass_b * cfg.tau / HBAR;
    let mut phi = vec![0.0; d * d];
    for im in 0..d {
        let m = im as f64 - j;
        for ind in 0..d {
            let n = ind as f64 - j;
            let dist = match cfg.geometry {
                Geometry::Linear => cfg.delta_s + cfg.delta_x * (2.0 * j + m - n),
                Geometry::Parallel => {
                    let sq = cfg.delta_s * cfg.delta_s
                        + cfg.delta_x * cfg.delta_x * (m - n) * (m - n);
                    match cfg.distance_mode {
                        DistanceMode::Euclidean => sq.sqrt(),
                        // reference length 1 m fixes the units of the
                        // squared-distance form
                        DistanceMode::Literal => sq / 1.0,
                    }
                }
            };
            if !(dist > 0.0) {
                return Err(Error::numerical(format!(
                    "nonpositive branch distance at (m={m}, n={n})"
                )));
            }
            phi[im * d + ind] = pref / dist;
        }
    }
    Ok(PhaseMatrix { dim: d, phi })
}

/// Joint spin state of the two systems after recombination.
#[derive(Debug, Clone)]
pub struct BipartiteState {
    two_j: u32,
    /// Row-major (m, n) amplitudes.
    psi: Vec<c64>,
}

impl BipartiteState {
    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn dim(&self) -> usize {
        (self.two_j + 1) as usize
    }

    #[inline]
    pub fn get(&self, im: usize, ind: usize) -> c64 {
        self.psi[im * self.dim() + ind]
    }

    pub fn amplitudes(&self) -> &[c64] {
        &self.psi
    }

    pub fn from_amplitudes(j: f64, psi: Vec<c64>) -> Result<Self> {
        let two_j = two_j_from(j)?;
        let d = (two_j + 1) as usize;
        if psi.len() != d * d {
            return Err(Error::numerical(format!(
                "bipartite amplitude vector has length {}, expected {}",
                psi.len(),
                d * d
            )));
        }
        let mut st = BipartiteState { two_j, psi };
        let n = linalg::norm2(&st.psi);
        if !(n > 1e-300) || !n.is_finite() {
            return Err(Error::numerical("bipartite state has vanishing or non-finite norm"));
        }
        for a in &mut st.psi {
            *a /= c64::new(n, 0.0);
        }
        if let Some(lead) = st.psi.iter().find(|a| a.norm() > 1e-14) {
            let corr = (*lead / c64::new(lead.norm(), 0.0)).conj();
            for a in &mut st.psi {
                *a *= corr;
            }
        }
        Ok(st)
    }
}

pub fn joint_state(
    state_a: &SpinState,
    state_b: &SpinState,
    phases: &PhaseMatrix,
    k: f64,
) -> Result<BipartiteState> {
    let d = state_a.dim();
    if state_b.dim() != d || phases.dim() != d {
        return Err(Error::numerical(format!(
            "dimension mismatch: A={}, B={}, phases={}",
            d,
            state_b.dim(),
            phases.dim()
        )));
    }
    let j = state_a.j();
    let k2 = k * k;
    let mut psi = vec![ZERO; d * d];
    for im in 0..d {
        let m = im as f64 - j;
        for ind in 0..d {
            let n = ind as f64 - j;
            let local = cis(2.0 * PI * k2 * (m * m - n * n));
            psi[im * d + ind] = state_a.amplitudes()[im]
                * state_b.amplitudes()[ind]
                * local
                * cis(-phases.get(im, ind));
        }
    }
    BipartiteState::from_amplitudes(j, psi)
}

/// Reduced density matrix of one subsystem (d x d, Hermitian, trace 1).
pub fn reduced_density(psi: &BipartiteState, subsystem_a: bool) -> Mat<c64> {
    let d = psi.dim();
    Mat::from_fn(d, d, |r, c| {
        let mut acc = ZERO;
        for k in 0..d {
            acc += if subsystem_a {
                psi.get(r, k) * psi.get(c, k).conj()
            } else {
                psi.get(k, r) * psi.get(k, c).conj()
            };
        }
        acc
    })
}

/// S = -Tr[rho ln rho] in nats. Errors on visibly non-Hermitian or
/// non-unit-trace input.
pub fn von_neumann_entropy(rho: &Mat<c64>) -> Result<f64> {
    if rho.nrows() != rho.ncols() {
        return Err(Error::numerical("entropy of a non-square matrix"));
    }
    if hermiticity_defect(rho) > HERM_TOL {
        return Err(Error::numerical("entropy input is not Hermitian"));
    }
    let tr: f64 = (0..rho.nrows()).map(|i| rho[(i, i)].re).sum();
    if (tr - 1.0).abs() > 1e-8 {
        return Err(Error::numerical(format!("entropy input has trace {tr}, expected 1")));
    }
    let eig = eigh(rho)?;
    Ok(eig
        .vals
        .iter()
        .filter(|&&l| l > EIG_FLOOR)
        .map(|&l| -l * l.ln())
        .sum())
}

/// Entanglement entropy of a pure bipartite state (entropy of rho_A).
pub fn entanglement_entropy(psi: &BipartiteState) -> Result<f64> {
    von_neumann_entropy(&reduced_density(psi, true))
}

/// Schmidt spectrum of a pure state: eigenvalues of rho_A, clamped to [0, 1],
/// descending.
pub fn schmidt_spectrum(psi: &BipartiteState) -> Result<Vec<f64>> {
    let eig = eigh(&reduced_density(psi, true))?;
    let mut vals: Vec<f64> = eig.vals.iter().map(|&l| l.clamp(0.0, 1.0)).collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    Ok(vals)
}

/// Negativity of a pure state from its Schmidt coefficients sigma_i:
/// N = -sum_{i<j} sigma_i sigma_j (equivalently -((sum sigma)^2 - 1)/2).
///
/// The sigma_i are read off the Hermitian dilation [[0, psi], [psi^H, 0]],
/// whose spectrum is {+-sigma_i}; unlike eigenvalues of rho_A (= sigma^2,
/// which squares the resolution limit), this keeps small coefficients at
/// full absolute precision. Pair terms are counted against the same
/// threshold the partial-transpose path uses, so the two roads agree to
/// eigensolver accuracy.
pub fn negativity_value_pure(psi: &BipartiteState) -> Result<f64> {
    let d = psi.dim();
    let h = Mat::from_fn(2 * d, 2 * d, |r, c| {
        if r < d && c >= d {
            psi.get(r, c - d)
        } else if r >= d && c < d {
            psi.get(c, r - d).conj()
        } else {
            ZERO
        }
    });
    let eig = eigh(&h)?;
    let sigmas: Vec<f64> = eig.vals.iter().filter(|&&v| v > 0.0).copied().collect();
    let pair_floor = -negativity_threshold(d);
    let mut acc = 0.0;
    for (i, &si) in sigmas.iter().enumerate() {
        for &sj in &sigmas[i + 1..] {
            let pair = si * sj;
            if pair > pair_floor {
                acc += pair;
            }
        }
    }
    Ok(-acc)
}

/// Full bipartite density matrix over the d^2-dimensional composite space,
/// with composite index I = i_m * d + i_n (A-major).
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    two_j: u32,
    pub rho: Mat<c64>,
}

impl DensityMatrix {
    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    /// Spin-space dimension d = 2j+1 (the matrix itself is d^2 x d^2).
    pub fn dim(&self) -> usize {
        (self.two_j + 1) as usize
    }

    pub fn from_pure(psi: &BipartiteState) -> Self {
        let d = psi.dim();
        let rho = Mat::from_fn(d * d, d * d, |r, c| {
            psi.amplitudes()[r] * psi.amplitudes()[c].conj()
        });
        DensityMatrix { two_j: (d - 1) as u32, rho }
    }

    /// Wraps an existing composite-space matrix; dimensions must be
    /// (2j+1)^2 square.
    pub fn from_matrix(j: f64, rho: Mat<c64>) -> Result<Self> {
        let two_j = two_j_from(j)?;
        let d = (two_j + 1) as usize;
        if rho.nrows() != d * d || rho.ncols() != d * d {
            return Err(Error::numerical(format!(
                "density matrix is {}x{}, expected {}x{}",
                rho.nrows(),
                rho.ncols(),
                d * d,
                d * d
            )));
        }
        Ok(DensityMatrix { two_j, rho })
    }

    /// 4-index access rho_{m,m',n,n'} = <m,n| rho |m',n'>.
    #[inline]
    pub fn get4(&self, im: usize, imp: usize, ind: usize, inp: usize) -> c64 {
        let d = self.dim();
        self.rho[(im * d + ind, imp * d + inp)]
    }

    pub fn trace(&self) -> f64 {
        (0..self.rho.nrows()).map(|i| self.rho[(i, i)].re).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if hermiticity_defect(&self.rho) > HERM_TOL {
            return Err(Error::numerical("density matrix is not Hermitian"));
        }
        if (self.trace() - 1.0).abs() > 1e-10 {
            return Err(Error::numerical(format!(
                "density matrix has trace {}, expected 1",
                self.trace()
            )));
        }
        Ok(())
    }
}

/// Partial transpose on subsystem A: rho_{m,m',n,n'} -> rho_{m',m,n,n'}.
pub fn partial_transpose(rho: &DensityMatrix) -> DensityMatrix {
    let d = rho.dim();
    let pt = Mat::from_fn(d * d, d * d, |r, c| {
        let (im, ind) = (r / d, r % d);
        let (imp, inp) = (c / d, c % d);
        rho.rho[(imp * d + ind, im * d + inp)]
    });
    DensityMatrix { two_j: rho.two_j, rho: pt }
}

/// Negativity, negative PT eigenvalues, and the witness operator
/// W = PT(P_neg) with P_neg the projector onto the negative-eigenvalue
/// subspace of rho^PT. Tr(W rho) equals the negativity.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    /// Sum of negative PT eigenvalues (<= 0).
    pub negativity: f64,
    /// The eigenvalues counted as negative, ascending.
    pub negative_eigenvalues: Vec<f64>,
    /// Witness operator over the composite space.
    pub witness: Mat<c64>,
    /// Expansion of the witness in the SU(d^2) generalized Gell-Mann basis.
    pub gell_mann: Vec<f64>,
}

/// Threshold below which a PT eigenvalue counts as negative; scales with the
/// spin dimension to absorb eigensolver noise at large j.
pub fn negativity_threshold(d: usize) -> f64 {
    -1e-10 * d as f64
}

pub fn negativity(rho: &DensityMatrix) -> Result<WitnessReport> {
    rho.validate()?;
    let d = rho.dim();
    let dd = d * d;
    let pt = partial_transpose(rho);
    let eig = eigh(&pt.rho)?;
    let thresh = negativity_threshold(d);
    let mut neg: Vec<(f64, usize)> = eig
        .vals
        .iter()
        .enumerate()
        .filter(|(_, &l)| l < thresh)
        .map(|(i, &l)| (l, i))
        .collect();
    neg.sort_by(|a, b| a.0.total_cmp(&b.0));
    let negativity: f64 = neg.iter().map(|(l, _)| l).sum();

    // P_neg in the PT frame, then transported back by the (self-inverse)
    // partial transpose.
    let p_neg = Mat::from_fn(dd, dd, |r, c| {
        let mut acc = ZERO;
        for &(_, k) in &neg {
            acc += eig.vecs[(r, k)] * eig.vecs[(c, k)].conj();
        }
        acc
    });
    let witness = partial_transpose(&DensityMatrix { two_j: rho.two_j, rho: p_neg }).rho;
    let gell_mann = gellmann_decompose(&witness)?;

    Ok(WitnessReport {
        negativity,
        negative_eigenvalues: neg.into_iter().map(|(l, _)| l).collect(),
        witness,
        gell_mann,
    })
}

/// Negativity alone (no witness construction); the cheap path for optimizer
/// loops over mixed states.
pub fn negativity_value(rho: &DensityMatrix) -> Result<f64> {
    let pt = partial_transpose(rho);
    let eig = eigh(&pt.rho)?;
    let thresh = negativity_threshold(rho.dim());
    Ok(eig.vals.iter().filter(|&&l| l < thresh).sum())
}

/// Expansion coefficients of a Hermitian H in the generalized Gell-Mann basis
/// normalized to Tr(L_i L_j) = 2 delta_ij, ordered: symmetric (j<k
/// lexicographic), antisymmetric (same order), diagonal (l = 1..d-1), then
/// the normalized identity sqrt(2/d) I. Coefficients are c_i = Tr(H L_i)/2,
/// evaluated in closed form.
pub fn gellmann_decompose(h: &Mat<c64>) -> Result<Vec<f64>> {
    let d = h.nrows();
    if h.ncols() != d {
        return Err(Error::numerical("gell-mann decomposition of a non-square matrix"));
    }
    if hermiticity_defect(h) > HERM_TOL {
        return Err(Error::numerical("gell-mann decomposition input is not Hermitian"));
    }
    let mut c = Vec::with_capacity(d * d);
    // symmetric: L = E_jk + E_kj  ->  c = Re h_jk
    for j in 0..d {
        for k in (j + 1)..d {
            c.push(h[(j, k)].re);
        }
    }
    // antisymmetric: L = -i E_jk + i E_kj  ->  c = Im h_kj
    for j in 0..d {
        for k in (j + 1)..d {
            c.push(h[(k, j)].im);
        }
    }
    // diagonal: L_l = sqrt(2/(l(l+1))) (sum_{i<=l} E_ii - l E_{l+1,l+1})
    let mut partial = 0.0;
    for l in 1..d {
        partial += h[(l - 1, l - 1)].re;
        let lf = l as f64;
        c.push((2.0 / (lf * (lf + 1.0))).sqrt() * (partial - lf * h[(l, l)].re) / 2.0);
    }
    // identity: sqrt(2/d) I
    let tr: f64 = (0..d).map(|i| h[(i, i)].re).sum();
    c.push((2.0 / d as f64).sqrt() * tr / 2.0);
    Ok(c)
}

/// Reconstruct sum_i c_i L_i (test helper for the round-trip property).
pub fn gellmann_reconstruct(d: usize, c: &[f64]) -> Result<Mat<c64>> {
    if c.len() != d * d {
        return Err(Error::numerical(format!(
            "coefficient vector has length {}, expected {}",
            c.len(),
            d * d
        )));
    }
    let mut h = Mat::<c64>::zeros(d, d);
    let mut i = 0;
    for j in 0..d {
        for k in (j + 1)..d {
            h[(j, k)] += c64::new(c[i], 0.0);
            h[(k, j)] += c64::new(c[i], 0.0);
            i += 1;
        }
    }
    for j in 0..d {
        for k in (j + 1)..d {
            h[(j, k)] += c64::new(0.0, -c[i]);
            h[(k, j)] += c64::new(0.0, c[i]);
            i += 1;
        }
    }
    for l in 1..d {
        let lf = l as f64;
        let f = (2.0 / (lf * (lf + 1.0))).sqrt();
        for p in 0..l {
            h[(p, p)] += c64::new(c[i] * f, 0.0);
        }
        h[(l, l)] += c64::new(-c[i] * f * lf, 0.0);
        i += 1;
    }
    let f = (2.0 / d as f64).sqrt();
    for p in 0..d {
        h[(p, p)] += c64::new(c[i] * f, 0.0);
    }
    Ok(h)
}

/// Casimir-Polder vs gravitational coupling between the two spheres.
#[derive(Debug, Clone, Copy)]
pub struct CasimirReport {
    /// V_CP [J], <= 0.
    pub v_cp: f64,
    /// -G M_A M_B / r [J].
    pub v_grav: f64,
    /// |V_grav / V_CP|; infinite when eps = 1.
    pub ratio: f64,
    /// True when r < 5R: far outside the r >> R far-field regime.
    pub near_field_warning: bool,
}

pub fn casimir_polder_ratio(
    radius: f64,
    epsilon: f64,
    r: f64,
    mass_a: f64,
    mass_b: f64,
) -> Result<CasimirReport> {
    if !(radius > 0.0) || !(r > 0.0) {
        return Err(Error::config("radius and separation must be positive"));
    }
    if epsilon < 1.0 {
        return Err(Error::config(format!("relative permittivity must be >= 1, got {epsilon}")));
    }
    if r <= 2.0 * radius {
        return Err(Error::config(format!(
            "separation r = {r} must exceed 2R = {} (spheres overlap)",
            2.0 * radius
        )));
    }
    let chi = (epsilon - 1.0) / (epsilon + 2.0);
    let v_cp = -(23.0 * HBAR * C / (4.0 * PI)) * radius.powi(6) / r.powi(7) * chi * chi;
    let v_grav = -G * mass_a * mass_b / r;
    let ratio = (v_grav / v_cp).abs();
    Ok(CasimirReport {
        v_cp,
        v_grav,
        ratio,
        near_field_warning: r < 5.0 * radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::coherent_spin_state;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    fn preset_config(j: f64, geometry: Geometry) -> ExperimentConfig {
        ExperimentConfig {
            geometry,
            distance_mode: DistanceMode::Euclidean,
            j,
            mass_a: 1e-14,
            mass_b: 1e-14,
            delta_x: 2.5e-4,
            delta_s: 5e-5,
            tau: 2.0,
            k: 0.0,
        }
    }

    #[test]
    fn phases_vanish_at_tau_zero() {
        let mut cfg = preset_config(1.0, Geometry::Linear);
        cfg.tau = 0.0;
        let ph = phase_matrix(&cfg).unwrap();
        assert!(ph.values().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn parallel_diagonal_phase_preset() {
        let cfg = preset_config(0.5, Geometry::Parallel);
        let ph = phase_matrix(&cfg).unwrap();
        // G M^2 tau / (hbar ds) at ds = 5e-5
        let expect = G * 1e-28 * 2.0 / (HBAR * 5e-5);
        assert_close(ph.get(0, 0), expect, 1e-12 * expect);
        assert_close(expect, 2.5316, 1e-3);
        // symmetric, |m-n| dependence
        assert_close(ph.get(0, 1), ph.get(1, 0), 1e-18);
    }

    #[test]
    fn linear_minimum_distance_is_delta_s() {
        let cfg = preset_config(1.5, Geometry::Linear);
        let ph = phase_matrix(&cfg).unwrap();
        let d = ph.dim();
        let pref = G * 1e-28 * 2.0 / HBAR;
        // 2j + m - n = 0 at (m = -j, n = +j): the closest pair sits at ds
        assert_close(ph.get(0, d - 1), pref / 5e-5, 1e-12 * pref / 5e-5);
        let max = ph.values().iter().cloned().fold(0.0f64, f64::max);
        assert_close(max, ph.get(0, d - 1), 1e-18);
    }

    #[test]
    fn product_state_has_zero_entropy() {
        let cfg = preset_config(1.0, Geometry::Parallel);
        let mut ph = phase_matrix(&cfg).unwrap();
        for v in &mut ph.phi {
            *v = 0.0;
        }
        let a = coherent_spin_state(1.0, 1.2, 0.3).unwrap();
        let b = coherent_spin_state(1.0, 0.7, 2.2).unwrap();
        let psi = joint_state(&a, &b, &ph, 0.7).unwrap();
        assert_close(entanglement_entropy(&psi).unwrap(), 0.0, 1e-10);
        // constant phase is also separable
        for v in &mut ph.phi {
            *v = 1.234;
        }
        let psi = joint_state(&a, &b, &ph, 0.0).unwrap();
        assert_close(entanglement_entropy(&psi).unwrap(), 0.0, 1e-10);
    }

    #[test]
    fn schmidt_spectra_of_both_reductions_agree() {
        let cfg = preset_config(1.5, Geometry::Linear);
        let ph = phase_matrix(&cfg).unwrap();
        let a = coherent_spin_state(1.5, 1.0, 0.0).unwrap();
        let b = coherent_spin_state(1.5, 2.1, 0.0).unwrap();
        let psi = joint_state(&a, &b, &ph, 0.1).unwrap();
        let ea = eigh(&reduced_density(&psi, true)).unwrap();
        let eb = eigh(&reduced_density(&psi, false)).unwrap();
        let mut va = ea.vals.clone();
        let mut vb = eb.vals.clone();
        va.sort_by(f64::total_cmp);
        vb.sort_by(f64::total_cmp);
        for (x, y) in va.iter().zip(&vb) {
            assert_close(*x, *y, 1e-10);
        }
    }

    #[test]
    fn entropy_of_maximally_mixed() {
        let d = 5;
        let rho = Mat::from_fn(d, d, |r, c| {
            if r == c { c64::new(0.2, 0.0) } else { ZERO }
        });
        assert_close(von_neumann_entropy(&rho).unwrap(), (5.0f64).ln(), 1e-12);
    }

    #[test]
    fn entropy_rejects_non_hermitian() {
        let mut rho = Mat::<c64>::zeros(2, 2);
        rho[(0, 0)] = c64::new(0.5, 0.0);
        rho[(1, 1)] = c64::new(0.5, 0.0);
        rho[(0, 1)] = c64::new(0.3, 0.0);
        assert!(von_neumann_entropy(&rho).is_err());
    }

    #[test]
    fn bell_state_partial_transpose() {
        // (|00> + |11>)/sqrt(2) at j=1/2
        let psi = BipartiteState::from_amplitudes(
            0.5,
            vec![c64::new(1.0, 0.0), ZERO, ZERO, c64::new(1.0, 0.0)],
        )
        .unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        let pt = partial_transpose(&rho);
        let eig = eigh(&pt.rho).unwrap();
        let mut vals = eig.vals.clone();
        vals.sort_by(f64::total_cmp);
        let expect = [-0.5, 0.5, 0.5, 0.5];
        for (v, e) in vals.iter().zip(expect) {
            assert_close(*v, e, 1e-12);
        }
        // double PT is the identity
        let back = partial_transpose(&pt);
        for r in 0..4 {
            for c in 0..4 {
                assert!((back.rho[(r, c)] - rho.rho[(r, c)]).norm() < 1e-15);
            }
        }
        let rep = negativity(&rho).unwrap();
        assert_close(rep.negativity, -0.5, 1e-12);
        assert_eq!(rep.negative_eigenvalues.len(), 1);
        assert_close(negativity_value_pure(&psi).unwrap(), -0.5, 1e-12);
    }

    #[test]
    fn pure_pt_spectrum_matches_schmidt_construction() {
        let cfg = preset_config(1.0, Geometry::Parallel);
        let ph = phase_matrix(&cfg).unwrap();
        let a = coherent_spin_state(1.0, 1.3, 0.0).unwrap();
        let b = coherent_spin_state(1.0, 1.3, 0.0).unwrap();
        let psi = joint_state(&a, &b, &ph, 0.0).unwrap();
        let lam = schmidt_spectrum(&psi).unwrap();
        let mut expect: Vec<f64> = lam.clone();
        for i in 0..lam.len() {
            for k in (i + 1)..lam.len() {
                let s = (lam[i] * lam[k]).sqrt();
                expect.push(s);
                expect.push(-s);
            }
        }
        expect.sort_by(f64::total_cmp);
        let pt = partial_transpose(&DensityMatrix::from_pure(&psi));
        let mut got = eigh(&pt.rho).unwrap().vals;
        got.sort_by(f64::total_cmp);
        assert_eq!(got.len(), expect.len());
        for (g, e) in got.iter().zip(&expect) {
            assert_close(*g, *e, 1e-10);
        }
    }

    #[test]
    fn witness_traces_back_to_negativity() {
        let cfg = preset_config(1.0, Geometry::Parallel);
        let ph = phase_matrix(&cfg).unwrap();
        let a = coherent_spin_state(1.0, PI / 2.0, 0.0).unwrap();
        let psi = joint_state(&a, &a, &ph, 0.0).unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        let rep = negativity(&rho).unwrap();
        assert!(rep.negativity < -1e-3);
        // Tr(W rho) = negativity
        let mut tr = ZERO;
        for r in 0..rho.rho.nrows() {
            for c in 0..rho.rho.ncols() {
                tr += rep.witness[(r, c)] * rho.rho[(c, r)];
            }
        }
        assert_close(tr.re, rep.negativity, 1e-10);
        assert_close(tr.im, 0.0, 1e-12);
        // PT(W) is the projector onto the negative subspace
        let d = rho.dim();
        let ptw = partial_transpose(&DensityMatrix {
            two_j: (d - 1) as u32,
            rho: Mat::from_fn(d * d, d * d, |r, c| rep.witness[(r, c)]),
        });
        let sq = linalg::mat_mul(&ptw.rho, &ptw.rho);
        for r in 0..d * d {
            for c in 0..d * d {
                assert!((sq[(r, c)] - ptw.rho[(r, c)]).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn gellmann_identity_and_pauli_z() {
        let d = 3;
        let id = Mat::from_fn(d, d, |r, c| if r == c { c64::new(1.0, 0.0) } else { ZERO });
        let c = gellmann_decompose(&id).unwrap();
        for (i, v) in c.iter().enumerate() {
            if i == d * d - 1 {
                assert_close(*v, (2.0f64 / 3.0).sqrt() * 3.0 / 2.0, 1e-14);
            } else {
                assert_close(*v, 0.0, 1e-14);
            }
        }
        let z = Mat::from_fn(2, 2, |r, c| {
            if r == c {
                c64::new(if r == 0 { 1.0 } else { -1.0 }, 0.0)
            } else {
                ZERO
            }
        });
        let cz = gellmann_decompose(&z).unwrap();
        // order at d=2: sym(0,1), anti(0,1), diag l=1, identity
        assert_close(cz[0], 0.0, 1e-15);
        assert_close(cz[1], 0.0, 1e-15);
        assert_close(cz[2], 1.0, 1e-15);
        assert_close(cz[3], 0.0, 1e-15);
    }

    #[test]
    fn gellmann_round_trip() {
        let d = 5;
        let h = Mat::from_fn(d, d, |r, c| {
            let re = ((r * 3 + c * 5) % 7) as f64 - 3.0;
            let im = ((r + 2 * c) % 5) as f64 - 2.0;
            if r == c {
                c64::new(re, 0.0)
            } else if r < c {
                c64::new(re, im)
            } else {
                let rre = ((c * 3 + r * 5) % 7) as f64 - 3.0;
                let rim = ((c + 2 * r) % 5) as f64 - 2.0;
                c64::new(rre, -rim)
            }
        });
        let coef = gellmann_decompose(&h).unwrap();
        let back = gellmann_reconstruct(d, &coef).unwrap();
        for r in 0..d {
            for c in 0..d {
                assert!((back[(r, c)] - h[(r, c)]).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn casimir_polder_behavior() {
        // R for M = 1e-14 kg at 3500 kg/m^3
        let radius = (3.0 * 1e-14 / (4.0 * PI * 3500.0)).powf(1.0 / 3.0);
        let rep = casimir_polder_ratio(radius, 5.7, 5e-5, 1e-14, 1e-14).unwrap();
        assert!(rep.v_cp < 0.0 && rep.v_grav < 0.0);
        assert!(!rep.near_field_warning);
        // vacuum dielectric: no CP force
        let vac = casimir_polder_ratio(radius, 1.0, 5e-5, 1e-14, 1e-14).unwrap();
        assert_eq!(vac.v_cp, 0.0);
        assert!(vac.ratio.is_infinite());
        // ratio ~ r^6
        let r2 = casimir_polder_ratio(radius, 5.7, 1e-4, 1e-14, 1e-14).unwrap();
        assert_close(r2.ratio / rep.ratio, 2.0f64.powi(6), 1e-9 * r2.ratio / rep.ratio);
        // overlap guard
        assert!(casimir_polder_ratio(radius, 5.7, 1.5 * radius, 1e-14, 1e-14).is_err());
    }
}
