//! Spin-j states and operators in the Dicke basis.
//!
//! All states live in the (2j+1)-dimensional irrep of SU(2), stored as
//! amplitude vectors over |j,m> with m ascending from -j to +j. A spin
//! coherent state |theta,phi> has amplitudes
//!
//! ```text
//! c_m = sqrt(C(2j, j+m)) cos^(j-m)(theta/2) sin^(j+m)(theta/2) e^(i(j+m)phi)
//! ```
//!
//! i.e. the binomial expansion in mu = e^(i phi) tan(theta/2) of the rotated
//! lowest-weight state; the state is normalized numerically rather than
//! through the closed-form prefactor. Every constructor ends by normalizing
//! and fixing the global phase (first amplitude above 1e-14 in modulus is made
//! real and nonnegative) so equal states are bitwise comparable.

use faer::{Mat, c64};

use crate::error::{Error, Result};
use crate::linalg::{self, ONE, ZERO, cis};

const PI: f64 = std::f64::consts::PI;

/// Modulus below which a leading amplitude is not used to fix global phase.
const PHASE_TOL: f64 = 1e-14;

/// A pure spin-j state in the Dicke basis, m ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinState {
    two_j: u32,
    amp: Vec<c64>,
}

/// Checks that `j` is a positive half-integer and returns `2j` as an integer.
pub fn two_j_from(j: f64) -> Result<u32> {
    if !j.is_finite() || j <= 0.0 {
        return Err(Error::config(format!("spin j must be a positive half-integer, got {j}")));
    }
    let two_j = 2.0 * j;
    let rounded = two_j.round();
    if (two_j - rounded).abs() > 1e-9 {
        return Err(Error::config(format!("spin j must be a half-integer, got {j}")));
    }
    Ok(rounded as u32)
}

impl SpinState {
    /// Builds a state from raw amplitudes (normalized, phase-canonicalized).
    pub fn from_amplitudes(j: f64, amp: Vec<c64>) -> Result<Self> {
        let two_j = two_j_from(j)?;
        if amp.len() != (two_j + 1) as usize {
            return Err(Error::numerical(format!(
                "amplitude vector has length {}, expected {}",
                amp.len(),
                two_j + 1
            )));
        }
        let mut s = SpinState { two_j, amp };
        s.finalize()?;
        Ok(s)
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn dim(&self) -> usize {
        (self.two_j + 1) as usize
    }

    /// The magnetic quantum number of basis index `i`: m = -j + i.
    pub fn m(&self, i: usize) -> f64 {
        i as f64 - self.j()
    }

    pub fn amplitudes(&self) -> &[c64] {
        &self.amp
    }

    pub fn amplitudes_mut(&mut self) -> &mut [c64] {
        &mut self.amp
    }

    /// `<self|other>`.
    pub fn overlap(&self, other: &SpinState) -> c64 {
        assert_eq!(self.two_j, other.two_j, "overlap between different spins");
        linalg::inner(&self.amp, &other.amp)
    }

    pub fn norm(&self) -> f64 {
        linalg::norm2(&self.amp)
    }

    /// Normalizes and fixes global phase. Errors on a numerically null vector.
    pub fn finalize(&mut self) -> Result<()> {
        let n = self.norm();
        if !(n > 1e-300) || !n.is_finite() {
            return Err(Error::numerical("state vector has vanishing or non-finite norm"));
        }
        for a in &mut self.amp {
            *a /= c64::new(n, 0.0);
        }
        if let Some(lead) = self.amp.iter().find(|a| a.norm() > PHASE_TOL) {
            let phase = *lead / c64::new(lead.norm(), 0.0);
            let correction = phase.conj();
            for a in &mut self.amp {
                *a *= correction;
            }
        }
        Ok(())
    }

    /// `<psi| op |psi>` for a (2j+1)-dimensional operator.
    pub fn expect(&self, op: &Mat<c64>) -> c64 {
        let av = linalg::mat_vec(op, &self.amp);
        linalg::inner(&self.amp, &av)
    }
}

/// Dense angular-momentum operators for one spin-j system.
pub struct SpinOperatorSet {
    pub two_j: u32,
    pub jx: Mat<c64>,
    pub jy: Mat<c64>,
    pub jz: Mat<c64>,
    pub jp: Mat<c64>,
    pub jm: Mat<c64>,
}

impl SpinOperatorSet {
    pub fn new(j: f64) -> Result<Self> {
        let two_j = two_j_from(j)?;
        let d = (two_j + 1) as usize;
        let jf = two_j as f64 / 2.0;
        let m_of = |i: usize| i as f64 - jf;
        // (J+)_{i+1,i} = sqrt(j(j+1) - m(m+1))
        let jp = Mat::from_fn(d, d, |r, c| {
            if r == c + 1 {
                let m = m_of(c);
                c64::new((jf * (jf + 1.0) - m * (m + 1.0)).sqrt(), 0.0)
            } else {
                ZERO
            }
        });
        let jm = Mat::from_fn(d, d, |r, c| jp[(c, r)].conj());
        let jx = Mat::from_fn(d, d, |r, c| (jp[(r, c)] + jm[(r, c)]) * c64::new(0.5, 0.0));
        let jy = Mat::from_fn(d, d, |r, c| (jp[(r, c)] - jm[(r, c)]) * c64::new(0.0, -0.5));
        let jz = Mat::from_fn(d, d, |r, c| {
            if r == c { c64::new(m_of(r), 0.0) } else { ZERO }
        });
        Ok(SpinOperatorSet { two_j, jx, jy, jz, jp, jm })
    }

    pub fn dim(&self) -> usize {
        (self.two_j + 1) as usize
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// |j,-j>, the lowest-weight Dicke state.
pub fn ground_state(j: f64) -> Result<SpinState> {
    let two_j = two_j_from(j)?;
    let d = (two_j + 1) as usize;
    let mut amp = vec![ZERO; d];
    amp[0] = ONE;
    Ok(SpinState { two_j, amp })
}

/// Spin coherent state |theta, phi>.
///
/// theta outside [0, pi] is a domain error; phi is reduced mod 2pi. The pole
/// theta = pi is assigned directly (c_m = delta_{m,+j}) instead of through
/// the trigonometric powers.
pub fn coherent_spin_state(j: f64, theta: f64, phi: f64) -> Result<SpinState> {
    let two_j = two_j_from(j)?;
    if !theta.is_finite() || !(0.0..=PI).contains(&theta) {
        return Err(Error::config(format!("theta must lie in [0, pi], got {theta}")));
    }
    if !phi.is_finite() {
        return Err(Error::config(format!("phi must be finite, got {phi}")));
    }
    let phi = phi.rem_euclid(2.0 * PI);
    let d = (two_j + 1) as usize;
    let mut amp = vec![ZERO; d];
    if (theta - PI).abs() <= f64::EPSILON {
        amp[d - 1] = ONE;
    } else {
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        for (i, a) in amp.iter_mut().enumerate() {
            // i = j + m, so j - m = 2j - i
            let jm_pow = (two_j as usize - i) as i32;
            let jp_pow = i as i32;
            let mag = binomial(two_j, i as u32).sqrt() * c.powi(jm_pow) * s.powi(jp_pow);
            *a = c64::new(mag, 0.0) * cis(i as f64 * phi);
        }
    }
    let mut st = SpinState { two_j, amp };
    st.finalize()?;
    Ok(st)
}

/// Normalized superposition of two coherent states.
pub fn css_superposition(
    j: f64,
    theta1: f64,
    phi1: f64,
    theta2: f64,
    phi2: f64,
) -> Result<SpinState> {
    let a = coherent_spin_state(j, theta1, phi1)?;
    let b = coherent_spin_state(j, theta2, phi2)?;
    let amp: Vec<c64> = a
        .amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| *x + *y)
        .collect();
    let mut st = SpinState { two_j: two_j_from(j)?, amp };
    st.finalize().map_err(|_| {
        Error::numerical("coherent superposition is numerically null (antipodal components cancel)")
    })?;
    Ok(st)
}

/// The symmetric two-component family
/// N(|pi/2 + dtheta, dphi> + |pi/2 - dtheta, -dphi>).
pub fn css_superposition_symmetric(j: f64, dtheta: f64, dphi: f64) -> Result<SpinState> {
    if !dtheta.is_finite() || !(0.0..=PI / 2.0 + 1e-12).contains(&dtheta) {
        return Err(Error::config(format!("dtheta must lie in [0, pi/2], got {dtheta}")));
    }
    let dtheta = dtheta.min(PI / 2.0);
    css_superposition(j, PI / 2.0 + dtheta, dphi, PI / 2.0 - dtheta, -dphi)
}

/// Which squeezing generator to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqueezeAxis {
    /// One-axis twisting, G = Jy^2.
    OneAxis,
    /// Two-axis countertwisting, G = -i (J+^2 - J-^2), so that
    /// exp(-i chi G) = exp(-chi (J+^2 - J-^2)).
    TwoAxis,
}

/// Spin-squeezed state `exp(-i chi G) |theta, phi>`.
pub fn squeezed_spin_state(
    j: f64,
    axis: SqueezeAxis,
    chi: f64,
    theta: f64,
    phi: f64,
) -> Result<SpinState> {
    if !chi.is_finite() {
        return Err(Error::config(format!("chi must be finite, got {chi}")));
    }
    let base = coherent_spin_state(j, theta, phi)?;
    let ops = SpinOperatorSet::new(j)?;
    let eig = squeeze_generator_eig(&ops, axis)?;
    let amp = eig.apply_exp(chi, base.amplitudes());
    let mut st = SpinState { two_j: ops.two_j, amp };
    st.finalize()?;
    Ok(st)
}

/// Eigendecomposition of the squeezing generator, for reuse across many chi.
pub fn squeeze_generator_eig(ops: &SpinOperatorSet, axis: SqueezeAxis) -> Result<linalg::HermEig> {
    let d = ops.dim();
    let g = match axis {
        SqueezeAxis::OneAxis => linalg::mat_mul(&ops.jy, &ops.jy),
        SqueezeAxis::TwoAxis => {
            let pp = linalg::mat_mul(&ops.jp, &ops.jp);
            let mm = linalg::mat_mul(&ops.jm, &ops.jm);
            // J+^2 - J-^2 is anti-Hermitian; -i times it is the Hermitian
            // generator.
            Mat::from_fn(d, d, |r, c| (pp[(r, c)] - mm[(r, c)]) * c64::new(0.0, -1.0))
        }
    };
    debug_assert!(linalg::hermiticity_defect(&g) < 1e-10);
    linalg::eigh(&g)
}

/// Euler rotation `R(alpha, beta, gamma) = e^(-i alpha Jz) e^(-i beta Jy) e^(-i gamma Jz)`.
pub fn rotate(state: &SpinState, alpha: f64, beta: f64, gamma: f64) -> Result<SpinState> {
    let j = state.j();
    let ops = SpinOperatorSet::new(j)?;
    let jy_eig = linalg::eigh(&ops.jy)?;
    let mf = |i: usize| i as f64 - j;
    let mut v: Vec<c64> = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, a)| *a * cis(-gamma * mf(i)))
        .collect();
    v = jy_eig.apply_exp(beta, &v);
    for (i, a) in v.iter_mut().enumerate() {
        *a *= cis(-alpha * mf(i));
    }
    let mut st = SpinState { two_j: state.two_j, amp: v };
    st.finalize()?;
    Ok(st)
}

/// Husimi distribution Q(theta, phi) = |<theta,phi|psi>|^2 sampled on a
/// rectangular grid: theta inclusive on [0, pi], phi periodic on [0, 2pi).
pub struct HusimiField {
    pub theta: Vec<f64>,
    pub phi: Vec<f64>,
    /// Row-major over (theta, phi).
    pub q: Vec<f64>,
    two_j: u32,
}

impl HusimiField {
    pub fn value(&self, it: usize, ip: usize) -> f64 {
        self.q[it * self.phi.len() + ip]
    }

    /// (2j+1)/(4 pi) * integral of Q over the sphere; 1 up to quadrature
    /// error for any normalized state. Trapezoid in theta, rectangle in the
    /// periodic phi direction.
    pub fn integral(&self) -> f64 {
        let (nt, np) = (self.theta.len(), self.phi.len());
        let dtheta = PI / (nt - 1) as f64;
        let dphi = 2.0 * PI / np as f64;
        let mut acc = 0.0;
        for it in 0..nt {
            let w = if it == 0 || it == nt - 1 { 0.5 } else { 1.0 };
            let sin_t = self.theta[it].sin();
            let mut row = 0.0;
            for ip in 0..np {
                row += self.value(it, ip);
            }
            acc += w * sin_t * row;
        }
        acc * dtheta * dphi * (self.two_j as f64 + 1.0) / (4.0 * PI)
    }
}

pub fn husimi_q(state: &SpinState, n_theta: usize, n_phi: usize) -> Result<HusimiField> {
    if n_theta < 2 || n_phi < 1 {
        return Err(Error::config("husimi grid needs n_theta >= 2 and n_phi >= 1"));
    }
    let j = state.j();
    let theta: Vec<f64> = (0..n_theta)
        .map(|i| PI * i as f64 / (n_theta - 1) as f64)
        .collect();
    let phi: Vec<f64> = (0..n_phi).map(|i| 2.0 * PI * i as f64 / n_phi as f64).collect();
    let mut q = Vec::with_capacity(n_theta * n_phi);
    for &t in &theta {
        for &p in &phi {
            let bra = coherent_spin_state(j, t, p)?;
            q.push(bra.overlap(state).norm_sqr());
        }
    }
    Ok(HusimiField { theta, phi, q, two_j: state.two_j })
}
