//! The richer tube disagrees at rate θ/π, the singlet at (1 - cos θ)/2. The
//! curves meet at 0, π/2 and π only.
//!
//! ```sh
//! cargo run -p eprb --example triangle_vs_cosine
//! ```

use std::f64::consts::PI;

use eprb::cli::sweep_rows;

pub fn run_example() -> eprb::Result<()> {
    let rows = sweep_rows(PI / 64.0)?;
    for r in rows.iter().step_by(8) {
        println!(
            "theta {:.4}  qm {:.6}  triangle {:.6}  deviation {:+.6}",
            r.theta, r.p_prime_qm, r.p_prime_triangle, r.deviation
        );
    }
    let worst = rows
        .iter()
        .max_by(|a, b| a.deviation.abs().total_cmp(&b.deviation.abs()))
        .expect("non-empty sweep");
    println!("largest gap {:.4} at theta {:.4}", worst.deviation.abs(), worst.theta);
    Ok(())
}

fn main() -> eprb::Result<()> {
    run_example()
}
