//! Singlet-pair statistics, the two Bell-type inequalities on disagreement
//! probabilities, and classical striped-tube models that satisfy them.
//!
//! * [`quantum`]: closed forms `P(θ)`, `P'(θ)`, `-cos θ` and a pair sampler
//!   that reduces the partner's state after the first reading.
//! * [`lhv`]: the local hidden-variable contract, Monte Carlo and exact
//!   estimators, and the [`MeasurementLedger`](lhv::MeasurementLedger) that
//!   admits one direct reading per particle.
//! * [`tube`]: the four-face tube, the richer tube and the oval ball.
//! * [`inequalities`]: exact and sampled reports for `star` and `doublestar`.
//! * [`cli`]: the `eprb` command line.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod inequalities;
pub mod lhv;
pub mod quantum;
pub mod rng;
pub mod tube;

pub use error::{Error, Result};
pub use geometry::{angle_between, canonicalize, MeasurementSetting, Outcome, Side};
