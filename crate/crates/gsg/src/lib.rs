//! Deterministic simulator and optimizer for gravity-induced entanglement
//! between two spin-j masses driven through generalized Stern-Gerlach
//! interferometers.
//!
//! Each mass is split into 2j+1 spatially separated branches, gravity imprints
//! pairwise phases between branch pairs during a hold of duration tau, and the
//! recombined two-spin state carries the resulting entanglement. The crate
//! builds the spin states (coherent, superposed, squeezed), runs the
//! interferometer dynamics exactly in closed form (with a truncated-Fock
//! oracle to prove it), quantifies the entanglement (von Neumann entropy,
//! negativity, witness decomposition), applies scattering-limit decoherence,
//! and optimizes state families over their preparation parameters.
//!
//! All public computations are deterministic: identical inputs produce
//! identical bytes in every emitted artifact, independent of thread count.
//!
//! The module layout mirrors the pipeline:
//!
//! - [`spin`]: states on the (2j+1)-dimensional spin space and Husimi-Q maps
//! - [`dynamics`]: single-interferometer branch evolution and its oracle
//! - [`entangle`]: pairwise phases, entropy, negativity, witnesses
//! - [`decoherence`]: short/long-wavelength scattering channels
//! - [`optimize`]: grid + golden-section search and the sweep drivers
//! - [`config`], [`emit`], [`cli`]: JSON configs, CSV/JSON artifacts, CLI

pub mod cli;
pub mod config;
pub mod constants;
pub mod decoherence;
pub mod dynamics;
pub mod emit;
pub mod entangle;
pub mod error;
pub mod linalg;
pub mod optimize;
pub mod spin;

pub use error::{Error, Result};

// The guide's code blocks compile and run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/spin-states.md")]
    mod spin_states {}
    #[doc = include_str!("../../../book/src/interferometer.md")]
    mod interferometer {}
    #[doc = include_str!("../../../book/src/entanglement.md")]
    mod entanglement {}
    #[doc = include_str!("../../../book/src/decoherence.md")]
    mod decoherence {}
    #[doc = include_str!("../../../book/src/optimization.md")]
    mod optimization {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
