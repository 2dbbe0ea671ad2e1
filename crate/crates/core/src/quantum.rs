//! Closed-form singlet statistics and a sampler with wave-packet-reduction
//! semantics.
//!
//! Conventions: `P(θ) = (1 + cos θ)/2` is the probability that particle 2's
//! spin along `b` equals its own (reduced) value along `a`; `P'(θ) = 1 - P(θ)`
//! is therefore the probability that particle 2 along `b` equals particle 1
//! along `a`. The correlation `E = <s1(a) s2(b)>` is `2P'(θ) - 1 = -cos θ`.
//!
//! The joint law of one pair is `P(ε1, ε2) = (1 + ε1 ε2 E) / 4`. It is the only
//! distribution on `{±1}²` whose marginals are uniform (the singlet is
//! rotation invariant) and whose correlation is `E`: uniform marginals fix
//! `p++ = p--` and `p+- = p-+`, normalization fixes their sum, and `E` fixes
//! the split.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{angle_between, MeasurementSetting, Outcome};
use crate::lhv::{Pairing, PairSource};
use crate::rng::{worker_stream, SimRng};

fn finite(theta: f64) -> Result<f64> {
    if theta.is_finite() {
        Ok(theta)
    } else {
        Err(Error::domain(format!("angle must be finite, got {theta}")))
    }
}

/// `P(θ) = (1 + cos θ)/2`.
pub fn p_same(theta: f64) -> Result<f64> {
    Ok((1.0 + finite(theta)?.cos()) / 2.0)
}

/// `P'(θ) = (1 - cos θ)/2`.
pub fn p_prime(theta: f64) -> Result<f64> {
    Ok((1.0 - finite(theta)?.cos()) / 2.0)
}

/// Correlation `<s1(a) s2(b)> = -cos θ` at separation `θ`.
pub fn correlation_at(theta: f64) -> Result<f64> {
    Ok(-finite(theta)?.cos())
}

pub fn correlation_qm(a: MeasurementSetting, b: MeasurementSetting) -> f64 {
    -angle_between(a, b).cos()
}

/// Probabilities of the four outcome pairs `(ε1, ε2)` at one pair of settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JointDistribution {
    pub p_pp: f64,
    pub p_pm: f64,
    pub p_mp: f64,
    pub p_mm: f64,
}

impl JointDistribution {
    pub fn at_angle(theta: f64) -> Result<Self> {
        let e = correlation_at(theta)?;
        let same = (1.0 + e) / 4.0;
        let diff = (1.0 - e) / 4.0;
        Ok(Self {
            p_pp: same,
            p_pm: diff,
            p_mp: diff,
            p_mm: same,
        })
    }

    pub fn get(&self, first: Outcome, second: Outcome) -> f64 {
        match (first, second) {
            (Outcome::Up, Outcome::Up) => self.p_pp,
            (Outcome::Up, Outcome::Down) => self.p_pm,
            (Outcome::Down, Outcome::Up) => self.p_mp,
            (Outcome::Down, Outcome::Down) => self.p_mm,
        }
    }

    pub fn cells(&self) -> [((Outcome, Outcome), f64); 4] {
        use Outcome::{Down, Up};
        [
            ((Up, Up), self.p_pp),
            ((Up, Down), self.p_pm),
            ((Down, Up), self.p_mp),
            ((Down, Down), self.p_mm),
        ]
    }

    pub fn correlation(&self) -> f64 {
        self.p_pp + self.p_mm - self.p_pm - self.p_mp
    }
}

pub fn joint_distribution(a: MeasurementSetting, b: MeasurementSetting) -> JointDistribution {
    JointDistribution::at_angle(angle_between(a, b)).expect("separation is finite")
}

/// Particle 2's definite spin along the setting just measured on particle 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreparedPartnerState {
    pub setting: MeasurementSetting,
    pub value: Outcome,
}

impl PreparedPartnerState {
    /// Reduction applied from the other side: recovers the original outcome.
    pub fn partner(self) -> PreparedPartnerState {
        conditional_partner_state(self.setting, self.value)
    }
}

/// After particle 1 reads `measured` along `a`, particle 2 holds `-measured` along `a`.
pub fn conditional_partner_state(a: MeasurementSetting, measured: Outcome) -> PreparedPartnerState {
    PreparedPartnerState {
        setting: a,
        value: -measured,
    }
}

/// Draws one pair at settings `(a, b)` in two steps: particle 1 is uniform,
/// particle 2 is reduced to `-ε1` along `a` and then read along `b`, keeping
/// that value with probability `P(θ)`.
pub fn sample_singlet<R: Rng + ?Sized>(
    a: MeasurementSetting,
    b: MeasurementSetting,
    rng: &mut R,
) -> (Outcome, Outcome) {
    let first = Outcome::from_sign(rng.random_bool(0.5));
    let prepared = conditional_partner_state(a, first);
    let keep = p_same(angle_between(a, b)).expect("separation is finite");
    let second = if rng.random::<f64>() < keep {
        prepared.value
    } else {
        -prepared.value
    };
    (first, second)
}

/// A seeded source of singlet pairs. Owns its stream; not for sharing across threads.
#[derive(Debug, Clone)]
pub struct SingletSampler {
    rng: SimRng,
}

impl SingletSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: worker_stream(seed, 0),
        }
    }

    pub fn sample(&mut self, a: MeasurementSetting, b: MeasurementSetting) -> (Outcome, Outcome) {
        sample_singlet(a, b, &mut self.rng)
    }
}

/// The quantum singlet as a [`PairSource`], for the Monte Carlo estimators.
#[derive(Debug, Clone, Copy, Default)]
pub struct Singlet;

impl PairSource for Singlet {
    fn name(&self) -> &str {
        "qm"
    }

    fn pairing(&self) -> Pairing {
        Pairing::EprbPair
    }

    fn sample_pair(
        &self,
        a: MeasurementSetting,
        b: MeasurementSetting,
        rng: &mut SimRng,
    ) -> Result<(Outcome, Outcome)> {
        Ok(sample_singlet(a, b, rng))
    }
}
