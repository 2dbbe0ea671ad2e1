//! The four-face striped tube: k-values of one ball, the anti-ball partner,
//! and the exact face-to-face correlation matrix.
//!
//! ```sh
//! cargo run -p eprb --example striped_tube
//! ```

use eprb::tube::{paired_ball, tube_correlation_exact, TubeSpec};

pub fn run_example() -> eprb::Result<()> {
    let spec = TubeSpec::canonical();
    let (ball, anti) = paired_ball(0.6, &spec)?;
    for (k, face) in spec.faces().iter().enumerate() {
        println!(
            "face {} (Z = {:.2}): ball {}, anti-ball {}",
            k + 1,
            face.shift(),
            ball.value(*face)?,
            anti.value(*face)?
        );
    }

    println!("\nexact correlations <k_i k_j> over uniform heights:");
    for fi in spec.faces() {
        let row: Vec<String> = spec
            .faces()
            .iter()
            .map(|fj| format!("{:>5}", tube_correlation_exact(*fi, *fj).to_string()))
            .collect();
        println!("  {}", row.join(" "));
    }
    Ok(())
}

fn main() -> eprb::Result<()> {
    run_example()
}
