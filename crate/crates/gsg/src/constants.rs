//! Physical constants (CODATA 2018, SI units).

/// Reduced Planck constant [J s].
pub const HBAR: f64 = 1.054571817e-34;

/// Bohr magneton [J/T].
pub const MU_B: f64 = 9.2740100783e-24;

/// Vacuum permeability [N/A^2].
pub const MU_0: f64 = 1.25663706212e-6;

/// Newtonian gravitational constant [m^3 kg^-1 s^-2].
pub const G: f64 = 6.67430e-11;

/// Speed of light in vacuum [m/s].
pub const C: f64 = 299792458.0;
