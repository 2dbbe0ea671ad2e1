//! Bookkeeping of which values a pair has given up.
//!
//! A particle can be measured along any one setting, never along two. With
//! inference enabled, the direct reading on one particle also fixes its
//! partner's value along the same setting, for a total of at most two values
//! per pair.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{angle_between, MeasurementSetting, Outcome, Side};

/// Settings closer than this are the same setting.
const SAME_SETTING_TOL: f64 = 1e-12;

/// Per-pair budget of values, direct plus inferred.
pub const VALUES_PER_PAIR: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PairId(pub u64);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Reading {
    pub setting: MeasurementSetting,
    pub value: Outcome,
}

#[derive(Debug, Clone, Default, Serialize)]
struct PairRecord {
    direct: [Option<Reading>; 2],
    inferred: Option<(Side, Reading)>,
}

impl PairRecord {
    fn value_count(&self) -> usize {
        self.direct.iter().flatten().count() + usize::from(self.inferred.is_some())
    }
}

/// Single-owner ledger of measurements on a batch of pairs.
#[derive(Debug, Clone, Default, Serialize)]
pub struct MeasurementLedger {
    inference: bool,
    pairs: Vec<PairRecord>,
}

impl MeasurementLedger {
    pub fn new(inference: bool) -> Self {
        Self {
            inference,
            pairs: Vec::new(),
        }
    }

    pub fn inference_enabled(&self) -> bool {
        self.inference
    }

    pub fn open_pair(&mut self) -> PairId {
        self.pairs.push(PairRecord::default());
        PairId(self.pairs.len() as u64 - 1)
    }

    fn record(&self, pair: PairId) -> Result<&PairRecord> {
        self.pairs
            .get(pair.0 as usize)
            .ok_or(Error::UnknownPair(pair.0))
    }

    fn record_mut(&mut self, pair: PairId) -> Result<&mut PairRecord> {
        self.pairs
            .get_mut(pair.0 as usize)
            .ok_or(Error::UnknownPair(pair.0))
    }

    /// Records the direct measurement of particle `side` along `setting`.
    /// Fails with [`Error::AnyAll`] if that particle was measured before.
    pub fn record_measurement(
        &mut self,
        pair: PairId,
        side: Side,
        setting: MeasurementSetting,
        value: Outcome,
    ) -> Result<()> {
        let rec = self.record_mut(pair)?;
        if rec.direct[side.index()].is_some() {
            return Err(Error::AnyAll { pair: pair.0, side });
        }
        let held = rec.value_count();
        if held >= VALUES_PER_PAIR {
            return Err(Error::ValueBudget { pair: pair.0, held });
        }
        rec.direct[side.index()] = Some(Reading { setting, value });
        Ok(())
    }

    /// The partner of `from_side`, along the setting `from_side` was measured at.
    pub fn infer_partner_value(
        &mut self,
        pair: PairId,
        from_side: Side,
        setting: MeasurementSetting,
    ) -> Result<Outcome> {
        if !self.inference {
            return Err(Error::InferenceDisabled);
        }
        let rec = self.record_mut(pair)?;
        let reading = rec.direct[from_side.index()]
            .filter(|r| angle_between(r.setting, setting) <= SAME_SETTING_TOL)
            .ok_or(Error::NoMatchingMeasurement {
                pair: pair.0,
                side: from_side,
                theta: setting.theta(),
            })?;
        let held = rec.value_count();
        if rec.inferred.is_some() || held >= VALUES_PER_PAIR {
            return Err(Error::ValueBudget { pair: pair.0, held });
        }
        let value = -reading.value;
        rec.inferred = Some((
            from_side.other(),
            Reading {
                setting: reading.setting,
                value,
            },
        ));
        Ok(value)
    }

    pub fn direct_measurement(&self, pair: PairId, side: Side) -> Result<Option<Reading>> {
        Ok(self.record(pair)?.direct[side.index()])
    }

    pub fn direct_count(&self, pair: PairId, side: Side) -> Result<usize> {
        Ok(usize::from(self.record(pair)?.direct[side.index()].is_some()))
    }

    /// Number of values, direct and inferred, the pair has given up.
    pub fn value_count(&self, pair: PairId) -> Result<usize> {
        Ok(self.record(pair)?.value_count())
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: f64) -> MeasurementSetting {
        MeasurementSetting::new(t).unwrap()
    }

    #[test]
    fn one_direct_measurement_per_side() {
        let mut ledger = MeasurementLedger::new(false);
        let p = ledger.open_pair();
        ledger.record_measurement(p, Side::One, s(0.0), Outcome::Up).unwrap();
        assert_eq!(
            ledger.record_measurement(p, Side::One, s(0.5), Outcome::Up),
            Err(Error::AnyAll { pair: 0, side: Side::One })
        );
        // same setting again is still a second measurement
        assert!(ledger.record_measurement(p, Side::One, s(0.0), Outcome::Up).is_err());
        ledger.record_measurement(p, Side::Two, s(1.0), Outcome::Down).unwrap();
        assert_eq!(ledger.value_count(p).unwrap(), 2);
    }

    #[test]
    fn inference_gives_negated_value_along_same_setting() {
        let mut ledger = MeasurementLedger::new(true);
        let p = ledger.open_pair();
        let a = s(0.3);
        ledger.record_measurement(p, Side::One, a, Outcome::Up).unwrap();
        assert!(matches!(
            ledger.infer_partner_value(p, Side::One, s(1.2)),
            Err(Error::NoMatchingMeasurement { .. })
        ));
        assert_eq!(ledger.infer_partner_value(p, Side::One, a), Ok(Outcome::Down));
        assert!(matches!(
            ledger.infer_partner_value(p, Side::One, a),
            Err(Error::ValueBudget { .. })
        ));
        // the inferred particle cannot be measured on top
        assert!(matches!(
            ledger.record_measurement(p, Side::Two, s(0.9), Outcome::Up),
            Err(Error::ValueBudget { .. })
        ));
    }

    #[test]
    fn inference_requires_mode_and_known_pair() {
        let mut ledger = MeasurementLedger::new(false);
        let p = ledger.open_pair();
        ledger.record_measurement(p, Side::Two, s(0.0), Outcome::Up).unwrap();
        assert_eq!(
            ledger.infer_partner_value(p, Side::Two, s(0.0)),
            Err(Error::InferenceDisabled)
        );
        assert_eq!(
            ledger.record_measurement(PairId(7), Side::One, s(0.0), Outcome::Up),
            Err(Error::UnknownPair(7))
        );
    }

    #[test]
    fn both_sides_measured_leaves_no_room_for_inference() {
        let mut ledger = MeasurementLedger::new(true);
        let p = ledger.open_pair();
        ledger.record_measurement(p, Side::One, s(0.0), Outcome::Up).unwrap();
        ledger.record_measurement(p, Side::Two, s(0.0), Outcome::Down).unwrap();
        assert!(matches!(
            ledger.infer_partner_value(p, Side::One, s(0.0)),
            Err(Error::ValueBudget { held: 2, .. })
        ));
    }
}
