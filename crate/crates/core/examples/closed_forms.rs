//! Closed-form singlet statistics at a handful of angles.
//!
//! ```sh
//! cargo run -p eprb --example closed_forms
//! ```

use std::f64::consts::PI;

use eprb::quantum::{correlation_at, p_prime, p_same, JointDistribution};

pub fn run_example() -> eprb::Result<()> {
    println!("{:>8} {:>10} {:>10} {:>10}   p++ / p+- / p-+ / p--", "theta", "P", "P'", "E");
    for k in 0..=8 {
        let theta = k as f64 * PI / 8.0;
        let j = JointDistribution::at_angle(theta)?;
        println!(
            "{:>8.4} {:>10.6} {:>10.6} {:>10.6}   {:.4} / {:.4} / {:.4} / {:.4}",
            theta,
            p_same(theta)?,
            p_prime(theta)?,
            correlation_at(theta)?,
            j.p_pp,
            j.p_pm,
            j.p_mp,
            j.p_mm
        );
        assert!((j.p_pp + j.p_pm - 0.5).abs() < 1e-12);
    }
    Ok(())
}

fn main() -> eprb::Result<()> {
    run_example()
}
