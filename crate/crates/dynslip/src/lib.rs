//! Incompressible shear flows with the *dynamic slip* boundary condition
//!
//! On the moving wall the shear stress `s` is tied to the slip velocity and
//! its time derivative,
//!
//! ```text
//! s = alpha * sigma + beta * d/dt v        (alpha, beta >= 0)
//! ```
//!
//! which interpolates between perfect slip (`alpha = beta = 0`), Navier slip
//! (`beta = 0`) and the fully dynamic regime (`alpha, beta > 0`).  The `beta`
//! term gives the wall its own relaxation time and produces the slip-velocity
//! overshoot that static slip laws cannot reproduce.
//!
//! The crate provides, for the one-dimensional channel `x in [0, h]`:
//!
//! * [`spectral`] - the slip eigenbasis: transcendental eigenvalues, mode
//!   amplitudes, the `beta`-weighted inner product and the negative-mode count;
//! * [`shear`] - the closed-form start-up flow driven by a ramped wall
//!   velocity, its boundary limit, stationary profile and slip defect;
//! * [`periodic`] - the closed-form pressure-driven time-periodic flow and
//!   its Dirichlet reference solution;
//! * [`constitutive`] - maximal monotone stress/shear-rate graphs (linear,
//!   power-law), their resolvent regularization and axiom checks;
//! * [`galerkin`] - a modal Galerkin time-stepper for nonlinear constitutive
//!   graphs with an energy ledger;
//! * [`fd`] - an independent Crank–Nicolson finite-difference solver used as
//!   a cross-check oracle;
//! * [`figures`], [`report`], [`config`], [`cli`] - the reproducibility
//!   harness (CSV emission, figure recipes, flat config files, CLI).
//!
//! All quantities are dimensionless.  Everything is deterministic: fixed
//! quadrature order, fixed summation order, seeded sampling.

pub mod cli;
pub mod config;
pub mod constitutive;
pub mod fd;
pub mod figures;
pub mod galerkin;
pub mod guide;
pub mod params;
pub mod periodic;
pub mod quad;
pub mod report;
pub mod shear;
pub mod spectral;
pub mod verify;

pub use params::{SlipParams, SlipRegime};
pub use spectral::{Basis, EigenPair, ModeCount};

mod kahan;
pub(crate) use kahan::KahanSum;
