//! Writing your own local model: a hidden unit vector at angle λ, and each
//! particle reports the sign of its projection on the setting. It lives on a
//! continuum with no exact grid, so it runs in Monte Carlo mode.
//!
//! ```sh
//! cargo run -p eprb --example custom_model --release
//! ```

use std::f64::consts::{FRAC_PI_4, TAU};

use eprb::inequalities::{check_lhv, Inequality, Mode};
use eprb::lhv::{estimate_correlation, LhvModel, MonteCarlo, Pairing};
use eprb::rng::SimRng;
use eprb::{Error, MeasurementSetting, Outcome, Side};
use rand::Rng;

struct HiddenVector;

impl LhvModel for HiddenVector {
    type Hidden = f64;

    fn name(&self) -> &str {
        "hidden-vector"
    }

    fn pairing(&self) -> Pairing {
        Pairing::EprbPair
    }

    fn sample_hidden(&self, rng: &mut SimRng) -> f64 {
        rng.random::<f64>() * TAU
    }

    fn respond(&self, side: Side, setting: MeasurementSetting, lambda: &f64) -> eprb::Result<Outcome> {
        let v = Outcome::from_sign((setting.theta() - lambda).cos() >= 0.0);
        Ok(if side == Side::One { v } else { -v })
    }
}

pub fn run_example() -> eprb::Result<()> {
    let mc = MonteCarlo::new(100_000, 42);
    let a = MeasurementSetting::new(0.0)?;
    let b = MeasurementSetting::new(FRAC_PI_4)?;
    let e = estimate_correlation(&HiddenVector, a, b, &mc)?;
    println!("E(0, π/4) ≈ {:+.4} ± {:.4} (singlet: {:+.4})", e.value, e.stderr, -FRAC_PI_4.cos());

    let r = check_lhv(&HiddenVector, Inequality::Star, &[FRAC_PI_4; 3], Mode::MonteCarlo, &mc)?;
    println!("star: slack {:+.4} ± {:.4} -> {:?}", r.slack, r.stderr.unwrap_or_default(), r.verdict);
    assert!(!r.is_violated());

    match check_lhv(&HiddenVector, Inequality::Star, &[FRAC_PI_4; 3], Mode::Exact, &mc) {
        Err(Error::ModeUnavailable(name)) => println!("no exact grid for {name}"),
        other => panic!("unexpected {other:?}"),
    }
    Ok(())
}

fn main() -> eprb::Result<()> {
    run_example()
}
