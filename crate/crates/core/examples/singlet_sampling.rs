//! Sampling singlet pairs: particle 1 reads a uniform ±1, particle 2 is
//! reduced to the opposite value along particle 1's setting and then read
//! along its own.
//!
//! ```sh
//! cargo run -p eprb --example singlet_sampling --release
//! ```

use std::f64::consts::PI;

use eprb::quantum::{correlation_qm, conditional_partner_state, SingletSampler};
use eprb::{MeasurementSetting, Outcome};

pub fn run_example() -> eprb::Result<()> {
    const N: u64 = 200_000;
    let a = MeasurementSetting::new(0.0)?;

    let partner = conditional_partner_state(a, Outcome::Up);
    println!("particle 1 reads +1 along a -> particle 2 holds {} along a", partner.value);

    let mut sampler = SingletSampler::new(2024);
    for k in [0, 1, 2, 3, 4] {
        let b = MeasurementSetting::new(k as f64 * PI / 4.0)?;
        let sum: i64 = (0..N)
            .map(|_| {
                let (x, y) = sampler.sample(a, b);
                i64::from(x.value() * y.value())
            })
            .sum();
        let empirical = sum as f64 / N as f64;
        let closed = correlation_qm(a, b);
        println!("theta = {k}π/4: E ≈ {empirical:+.4} (closed form {closed:+.4})");
        assert!((empirical - closed).abs() < 0.01);
    }
    Ok(())
}

fn main() -> eprb::Result<()> {
    run_example()
}
