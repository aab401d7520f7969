//! Bifurcation analysis of the delayed swing equation.
//!
//! The system under study is a pendulum-type second-order equation whose
//! damping acts partly through a discrete time delay,
//!
//! ```text
//! y''(t) + a y'(t) + ã y'(t - τ) + sin(y(t)) = w,
//! ```
//!
//! together with its generalization to an arbitrary delay-free nonlinearity
//! `h(y)`. The crate provides:
//!
//! - [`model`]: nondimensionalization, equilibria and linearization data,
//! - [`stability`]: closed-form Hopf candidate delays, stability switching,
//!   unstable delay sets and codimension-two point location,
//! - [`lyapunov`]: the sign of the first Lyapunov coefficient at Hopf
//!   candidates, with an independent general-formula cross-check,
//! - [`spectrum`]: characteristic roots of the linearization by spectral
//!   collocation plus Newton refinement, and spectral-abscissa sweeps,
//! - [`sim`]: time-domain integration by the method of steps with dense
//!   output and Poincaré section detection,
//! - [`periodic`]: limit cycles by periodic collocation, pseudo-arclength
//!   continuation in the delay, Floquet multipliers and detection of fold,
//!   period-doubling, Neimark-Sacker and homoclinic-approach events,
//! - [`cli`]: configuration-driven runs emitting CSV/JSON/SVG artifacts.

pub mod cli;
pub mod error;
pub mod lyapunov;
pub mod model;
pub mod periodic;
pub mod sim;
pub mod spectrum;
pub mod stability;

pub use error::{Error, Result};
pub use model::{Equilibrium, NonlinearityJet, PhysicalParams, SwingParams};
