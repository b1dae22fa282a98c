//! Scattering decoherence of the composite density matrix.
//!
//! Environmental scattering suppresses coherences between branch pairs. Both
//! masses see the same environment and decohere independently, and the maps
//! reduce to elementwise (Hadamard) damping of rho_{m,m',n,n'} in the two
//! standard limits:
//!
//! ```text
//! short wavelength:  e^(-(2 - delta_mm' - delta_nn') gamma tau)
//! long wavelength:   e^(-Gamma dx^2 ((m-m')^2 + (n-n')^2) tau)
//! ```
//!
//! The short form resolves which branch the particle took regardless of
//! distance; the long form resolves only coherence distance, so widely split
//! superpositions (large |m-m'|) die quadratically faster. At j=1/2 both
//! reduce to a single rate gamma_tot = gamma_short + Gamma_long dx^2 on the
//! one off-diagonal, the closed form used as a cross-check in tests. Applied
//! once over the interaction window tau, matching the closed forms rather
//! than a stepped integrator.

use faer::Mat;

use crate::entangle::DensityMatrix;
use crate::error::{Error, Result};

/// Rates and geometry for one decoherence window.
#[derive(Debug, Clone, Copy)]
pub struct DecoherenceModel {
    /// Short-wavelength rate [Hz].
    pub gamma_short: f64,
    /// Long-wavelength rate [Hz/m^2].
    pub gamma_long: f64,
    /// Neighboring-branch separation [m].
    pub delta_x: f64,
    /// Interaction window [s].
    pub tau: f64,
}

impl DecoherenceModel {
    pub fn validate(&self) -> Result<()> {
        if self.gamma_short < 0.0 || self.gamma_long < 0.0 {
            return Err(Error::config("decoherence rates must be nonnegative"));
        }
        if self.tau < 0.0 {
            return Err(Error::config("decoherence window must be nonnegative"));
        }
        if self.delta_x < 0.0 {
            return Err(Error::config("delta_x must be nonnegative"));
        }
        Ok(())
    }

    /// The spin-1/2 composite rate gamma_short + Gamma_long dx^2.
    pub fn total_rate_spin_half(&self) -> f64 {
        self.gamma_short + self.gamma_long * self.delta_x * self.delta_x
    }
}

fn hadamard_damp(rho: &DensityMatrix, exponent: impl Fn(usize, usize, usize, usize) -> f64) -> DensityMatrix {
    let d = rho.dim();
    let damped = Mat::from_fn(d * d, d * d, |r, c| {
        let (im, ind) = (r / d, r % d);
        let (imp, inp) = (c / d, c % d);
        let factor = (-exponent(im, imp, ind, inp)).exp();
        rho.rho[(r, c)] * faer::c64::new(factor, 0.0)
    });
    DensityMatrix::from_matrix(rho.j(), damped).expect("dimensions preserved")
}

/// Short-wavelength channel: off-diagonal entries decay as e^(-gamma tau) per
/// resolved subsystem, e^(-2 gamma tau) when both are off-diagonal.
pub fn apply_short(rho: &DensityMatrix, gamma_short: f64, tau: f64) -> Result<DensityMatrix> {
    if gamma_short < 0.0 {
        return Err(Error::config(format!("gamma_short must be nonnegative, got {gamma_short}")));
    }
    if tau < 0.0 {
        return Err(Error::config(format!("tau must be nonnegative, got {tau}")));
    }
    Ok(hadamard_damp(rho, |im, imp, ind, inp| {
        let resolved = (im != imp) as u32 + (ind != inp) as u32;
        resolved as f64 * gamma_short * tau
    }))
}

/// Long-wavelength channel: decay quadratic in the branch-index coherence
/// distance, scaled by the physical splitting dx.
pub fn apply_long(rho: &DensityMatrix, gamma_long: f64, delta_x: f64, tau: f64) -> Result<DensityMatrix> {
    if gamma_long < 0.0 {
        return Err(Error::config(format!("gamma_long must be nonnegative, got {gamma_long}")));
    }
    if delta_x < 0.0 {
        return Err(Error::config(format!("delta_x must be nonnegative, got {delta_x}")));
    }
    if tau < 0.0 {
        return Err(Error::config(format!("tau must be nonnegative, got {tau}")));
    }
    let c = gamma_long * delta_x * delta_x * tau;
    Ok(hadamard_damp(rho, |im, imp, ind, inp| {
        let dm = im as f64 - imp as f64;
        let dn = ind as f64 - inp as f64;
        c * (dm * dm + dn * dn)
    }))
}

/// Applies both channels of a model over its window.
pub fn apply(rho: &DensityMatrix, model: &DecoherenceModel) -> Result<DensityMatrix> {
    model.validate()?;
    let after_short = apply_short(rho, model.gamma_short, model.tau)?;
    apply_long(&after_short, model.gamma_long, model.delta_x, model.tau)
}
