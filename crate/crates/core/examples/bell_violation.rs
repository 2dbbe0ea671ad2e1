//! The star and doublestar inequalities at π/4: broken by quantum statistics,
//! met (with equality) by the striped tubes.
//!
//! ```sh
//! cargo run -p eprb --example bell_violation --release
//! ```

use std::f64::consts::FRAC_PI_4;

use eprb::inequalities::{check_model, BuiltinModel, Inequality, Mode};
use eprb::lhv::MonteCarlo;

pub fn run_example() -> eprb::Result<()> {
    let mc = MonteCarlo::new(100_000, 7);
    for model in [BuiltinModel::Qm, BuiltinModel::Tube4, BuiltinModel::RicherTube] {
        for (inequality, angles) in [
            (Inequality::Star, &[FRAC_PI_4; 3][..]),
            (Inequality::DoubleStar, &[FRAC_PI_4; 2][..]),
        ] {
            let exact = check_model(model, inequality, angles, Mode::Exact, &mc)?;
            let sampled = check_model(model, inequality, angles, Mode::MonteCarlo, &mc)?;
            println!(
                "{:<12} {:<10} exact slack {:+.6} ({:?}); sampled {:+.4} ± {:.4}",
                model.id(),
                inequality.to_string(),
                exact.slack,
                exact.verdict,
                sampled.slack,
                sampled.stderr.unwrap_or_default()
            );
            assert_eq!(exact.is_violated(), model == BuiltinModel::Qm);
        }
    }
    Ok(())
}

fn main() -> eprb::Result<()> {
    run_example()
}
