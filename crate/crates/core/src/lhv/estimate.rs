use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{LhvModel, Pairing, PairSource};
use crate::error::{Error, Result};
use crate::geometry::{MeasurementSetting, Outcome, Side};
use crate::rng::worker_stream;

pub const DEFAULT_SAMPLES: u64 = 1_000_000;

/// Monte Carlo run parameters.
///
/// Samples are split across `workers` as evenly as possible, worker `w`
/// drawing from stream `w` of `seed`. Results depend on `(seed, workers)` and
/// nothing else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MonteCarlo {
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
}

impl Default for MonteCarlo {
    fn default() -> Self {
        Self {
            samples: DEFAULT_SAMPLES,
            seed: 0,
            workers: 1,
        }
    }
}

impl MonteCarlo {
    pub fn new(samples: u64, seed: u64) -> Self {
        Self {
            samples,
            seed,
            workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Argument("sample count must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::Argument("worker count must be at least 1".into()));
        }
        Ok(())
    }

    fn share(&self, worker: usize) -> u64 {
        let w = self.workers as u64;
        self.samples / w + u64::from((worker as u64) < self.samples % w)
    }
}

/// A point estimate with its standard error. Exact values carry `stderr = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self { value, stderr: 0.0 }
    }

    /// Estimate of a probability from `hits` out of `n` trials.
    pub fn proportion(hits: u64, n: u64) -> Self {
        let p = hits as f64 / n as f64;
        Self {
            value: p,
            stderr: (p * (1.0 - p) / n as f64).sqrt(),
        }
    }

    /// `1 - self`, same standard error.
    pub fn complement(self) -> Self {
        Self {
            value: 1.0 - self.value,
            stderr: self.stderr,
        }
    }
}

/// Counts, over `mc.samples` pairs, how often `hit` holds.
fn tally<S, F>(
    source: &S,
    a: MeasurementSetting,
    b: MeasurementSetting,
    mc: &MonteCarlo,
    hit: F,
) -> Result<u64>
where
    S: PairSource + Sync + ?Sized,
    F: Fn((Outcome, Outcome)) -> bool + Sync,
{
    mc.validate()?;
    let run = |worker: usize| -> Result<u64> {
        let mut rng = worker_stream(mc.seed, worker as u64);
        let mut hits = 0;
        for _ in 0..mc.share(worker) {
            if hit(source.sample_pair(a, b, &mut rng)?) {
                hits += 1;
            }
        }
        Ok(hits)
    };
    if mc.workers == 1 {
        return run(0);
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..mc.workers)
            .map(|w| {
                let run = &run;
                scope.spawn(move || run(w))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("estimator worker panicked"))
            .sum()
    })
}

/// Monte Carlo estimate of `<s1(a) s2(b)>` with standard error `√((1 - ê²)/n)`.
pub fn estimate_correlation<S: PairSource + Sync + ?Sized>(
    source: &S,
    a: MeasurementSetting,
    b: MeasurementSetting,
    mc: &MonteCarlo,
) -> Result<Estimate> {
    let positive = tally(source, a, b, mc, |(x, y)| x == y)?;
    let n = mc.samples as f64;
    let e = (2.0 * positive as f64 - n) / n;
    Ok(Estimate {
        value: e,
        stderr: ((1.0 - e * e).max(0.0) / n).sqrt(),
    })
}

/// Monte Carlo estimate of the disagreement probability between particle 1
/// along `a` and the partner value read by particle 2 along `b`.
///
/// On one seed, `estimate_correlation = sign · (1 - 2 · estimate_disagreement)`
/// where `sign` is `+1` for same-object models and `-1` for pair models.
pub fn estimate_disagreement<S: PairSource + Sync + ?Sized>(
    source: &S,
    a: MeasurementSetting,
    b: MeasurementSetting,
    mc: &MonteCarlo,
) -> Result<Estimate> {
    let pairing = source.pairing();
    let hits = tally(source, a, b, mc, |(x, y)| x != pairing.partner_value(y))?;
    Ok(Estimate::proportion(hits, mc.samples))
}

fn exact_mean<M, F>(model: &M, settings: &[MeasurementSetting], f: F) -> Result<BigRational>
where
    M: LhvModel + ?Sized,
    F: Fn(&M::Hidden) -> Result<i64>,
{
    let grid = model
        .exact_grid(settings)
        .ok_or_else(|| Error::ModeUnavailable(model.name().to_string()))??;
    let total: BigRational = grid.iter().map(|(_, w)| w.clone()).sum();
    if !total.is_one() {
        return Err(Error::GridWeights(total.to_string()));
    }
    let mut acc = BigRational::zero();
    for (hidden, weight) in &grid {
        match f(hidden)? {
            0 => {}
            1 => acc += weight,
            -1 => acc -= weight,
            k => acc += weight * BigRational::from_integer(BigInt::from(k)),
        }
    }
    Ok(acc)
}

/// Exact correlation `<s1(a) s2(b)>` by enumeration of the model's grid.
pub fn enumerate_exact<M: LhvModel + ?Sized>(
    model: &M,
    a: MeasurementSetting,
    b: MeasurementSetting,
) -> Result<BigRational> {
    exact_mean(model, &[a, b], |h| {
        let x = model.respond(Side::One, a, h)?;
        let y = model.respond(Side::Two, b, h)?;
        Ok(i64::from(x.value() * y.value()))
    })
}

/// Exact disagreement probability, the enumeration counterpart of
/// [`estimate_disagreement`].
pub fn exact_disagreement<M: LhvModel + ?Sized>(
    model: &M,
    a: MeasurementSetting,
    b: MeasurementSetting,
) -> Result<BigRational> {
    let pairing: Pairing = model.pairing();
    exact_mean(model, &[a, b], |h| {
        let x = model.respond(Side::One, a, h)?;
        let y = model.respond(Side::Two, b, h)?;
        Ok(i64::from(x != pairing.partner_value(y)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Outcome;
    use crate::rng::SimRng;
    use rand::Rng;

    /// Particle 2 always shows the negation of particle 1.
    struct Clone;
    impl LhvModel for Clone {
        type Hidden = bool;
        fn name(&self) -> &str {
            "clone"
        }
        fn pairing(&self) -> Pairing {
            Pairing::EprbPair
        }
        fn sample_hidden(&self, rng: &mut SimRng) -> bool {
            rng.random()
        }
        fn respond(&self, side: Side, _s: MeasurementSetting, h: &bool) -> Result<Outcome> {
            let v = Outcome::from_sign(*h);
            Ok(if side == Side::One { v } else { -v })
        }
    }

    struct Constant;
    impl LhvModel for Constant {
        type Hidden = ();
        fn name(&self) -> &str {
            "constant"
        }
        fn pairing(&self) -> Pairing {
            Pairing::SameObject
        }
        fn sample_hidden(&self, _rng: &mut SimRng) {}
        fn respond(&self, _: Side, _: MeasurementSetting, _: &()) -> Result<Outcome> {
            Ok(Outcome::Up)
        }
    }

    fn s(t: f64) -> MeasurementSetting {
        MeasurementSetting::new(t).unwrap()
    }

    #[test]
    fn anticorrelated_clone_is_exactly_minus_one() {
        let e = estimate_correlation(&Clone, s(0.4), s(0.4), &MonteCarlo::new(10_000, 1)).unwrap();
        assert_eq!(e.value, -1.0);
        assert_eq!(e.stderr, 0.0);
        let d = estimate_disagreement(&Clone, s(0.4), s(0.4), &MonteCarlo::new(10_000, 1)).unwrap();
        assert_eq!(d.value, 0.0);
    }

    #[test]
    fn constant_model_is_exactly_plus_one() {
        let e = estimate_correlation(&Constant, s(0.0), s(2.0), &MonteCarlo::new(500, 9)).unwrap();
        assert_eq!(e.value, 1.0);
    }

    #[test]
    fn zero_samples_rejected() {
        let mc = MonteCarlo::new(0, 1);
        assert!(matches!(
            estimate_correlation(&Constant, s(0.0), s(0.0), &mc),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            estimate_disagreement(&Constant, s(0.0), s(0.0), &mc),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn no_grid_means_no_exact_mode() {
        assert!(matches!(
            enumerate_exact(&Constant, s(0.0), s(0.0)),
            Err(Error::ModeUnavailable(_))
        ));
    }

    #[test]
    fn worker_split_is_reproducible() {
        let mc = MonteCarlo::new(10_001, 5).with_workers(3);
        let a = estimate_disagreement(&crate::quantum::Singlet, s(0.0), s(1.0), &mc).unwrap();
        let b = estimate_disagreement(&crate::quantum::Singlet, s(0.0), s(1.0), &mc).unwrap();
        assert_eq!(a, b);
        assert_eq!((0..3).map(|w| mc.share(w)).sum::<u64>(), 10_001);
    }
}
