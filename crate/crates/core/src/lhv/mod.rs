//! Local hidden-variable models.
//!
//! A model draws a hidden state shared by both particles, and each particle
//! answers a measurement from that state and its own setting alone. Locality
//! is carried by the signature of [`LhvModel::respond`]: a side never sees the
//! other side's setting.

mod estimate;
mod ledger;

pub use estimate::{
    enumerate_exact, estimate_correlation, estimate_disagreement, exact_disagreement, Estimate,
    MonteCarlo, DEFAULT_SAMPLES,
};
pub use ledger::{MeasurementLedger, PairId};

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{MeasurementSetting, Outcome, Side};
use crate::rng::SimRng;

/// How the two responses of a model relate to one physical object.
///
/// `SameObject` models answer for one ball pushed against several faces; the
/// partner's value is read as is. `EprbPair` models answer for two particles
/// that are perfectly anticorrelated along equal settings; the partner's value
/// is the negation of what particle 2 shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pairing {
    SameObject,
    EprbPair,
}

impl Pairing {
    /// The value particle 1 would show along the setting at which particle 2 read `second`.
    pub fn partner_value(self, second: Outcome) -> Outcome {
        match self {
            Pairing::SameObject => second,
            Pairing::EprbPair => -second,
        }
    }

    /// Sign linking correlation and disagreement: `E = sign · (1 - 2D)`.
    pub fn sign(self) -> i8 {
        match self {
            Pairing::SameObject => 1,
            Pairing::EprbPair => -1,
        }
    }
}

/// A deterministic local hidden-variable model.
pub trait LhvModel {
    type Hidden: Clone + Send;

    fn name(&self) -> &str;

    fn pairing(&self) -> Pairing;

    fn sample_hidden(&self, rng: &mut SimRng) -> Self::Hidden;

    /// Response of particle `side` measured along `setting`. Must be a pure
    /// function of its arguments.
    fn respond(&self, side: Side, setting: MeasurementSetting, hidden: &Self::Hidden)
        -> Result<Outcome>;

    /// A finite decomposition of the hidden-state distribution, fine enough
    /// that every response at `settings` is constant on each part. Each entry
    /// is a representative state and its exact probability weight. `None`
    /// when the model admits no such decomposition.
    fn exact_grid(
        &self,
        _settings: &[MeasurementSetting],
    ) -> Option<Result<Vec<(Self::Hidden, BigRational)>>> {
        None
    }
}

/// Anything that can emit one pair of outcomes at settings `(a, b)`.
pub trait PairSource {
    fn name(&self) -> &str;

    fn pairing(&self) -> Pairing;

    fn sample_pair(
        &self,
        a: MeasurementSetting,
        b: MeasurementSetting,
        rng: &mut SimRng,
    ) -> Result<(Outcome, Outcome)>;
}

/// Hidden states landing on a stripe boundary are redrawn at most this many times.
pub const MAX_RESAMPLE: usize = 64;

impl<M: LhvModel> PairSource for M {
    fn name(&self) -> &str {
        LhvModel::name(self)
    }

    fn pairing(&self) -> Pairing {
        LhvModel::pairing(self)
    }

    fn sample_pair(
        &self,
        a: MeasurementSetting,
        b: MeasurementSetting,
        rng: &mut SimRng,
    ) -> Result<(Outcome, Outcome)> {
        let mut last = None;
        for _ in 0..MAX_RESAMPLE {
            let hidden = self.sample_hidden(rng);
            let pair = self
                .respond(Side::One, a, &hidden)
                .and_then(|x| Ok((x, self.respond(Side::Two, b, &hidden)?)));
            match pair {
                Err(e @ Error::Boundary { .. }) => last = Some(e),
                other => return other,
            }
        }
        Err(last.expect("at least one draw"))
    }
}
