//! One reading per particle: a second measurement on the same particle is
//! refused, and the partner's value can be inferred only along the setting
//! actually measured.
//!
//! ```sh
//! cargo run -p eprb --example any_all_ledger
//! ```

use eprb::lhv::MeasurementLedger;
use eprb::quantum::SingletSampler;
use eprb::{MeasurementSetting, Side};

pub fn run_example() -> eprb::Result<()> {
    let a = MeasurementSetting::new(0.0)?;
    let a2 = MeasurementSetting::new(std::f64::consts::FRAC_PI_2)?;
    let b = MeasurementSetting::new(std::f64::consts::FRAC_PI_4)?;

    let mut sampler = SingletSampler::new(1);
    let mut ledger = MeasurementLedger::new(true);
    let pair = ledger.open_pair();
    let (first, _) = sampler.sample(a, b);

    ledger.record_measurement(pair, Side::One, a, first)?;
    println!("particle 1 along a: {first}");

    match ledger.record_measurement(pair, Side::One, a2, first) {
        Err(e) => println!("particle 1 along a': refused ({e})"),
        Ok(()) => unreachable!("a particle gives one direct reading"),
    }

    let inferred = ledger.infer_partner_value(pair, Side::One, a)?;
    println!("particle 2 along a, inferred: {inferred}");

    if let Err(e) = ledger.infer_partner_value(pair, Side::One, a) {
        println!("second inference refused ({e})");
    }
    if let Err(e) = ledger.record_measurement(pair, Side::Two, b, first) {
        println!("particle 2 along b refused ({e})");
    }
    println!("values held by the pair: {}", ledger.value_count(pair)?);
    Ok(())
}

fn main() -> eprb::Result<()> {
    run_example()
}
