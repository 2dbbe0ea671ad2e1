//! The oval ball: each k-value is fixed, but reading one spends the ball, and
//! a nanometre of height changes the answer.
//!
//! ```sh
//! cargo run -p eprb --example oval_ball
//! ```

use eprb::rng::worker_stream;
use eprb::tube::OvalBall;

pub fn run_example() -> eprb::Result<()> {
    let mut ball = OvalBall::new(0.8)?;
    let value = ball.measure(2)?;
    println!("beta 0.8 against face 2: {value}");
    println!("again: {}", ball.measure(2).unwrap_err());
    println!("fresh ball, same beta: {}", OvalBall::new(0.8)?.measure(2)?);

    let mut rng = worker_stream(5, 0);
    let (mut flips, mut n) = (0, 0);
    while n < 1000 {
        let mut ball = OvalBall::sample(&mut rng);
        let Ok(mut nudged) = OvalBall::new(ball.beta() + 1e-9) else {
            continue;
        };
        flips += usize::from(ball.measure(1)? != nudged.measure(1)?);
        n += 1;
    }
    println!("a 1e-9 nudge flips {flips} of {n} readings");
    Ok(())
}

fn main() -> eprb::Result<()> {
    run_example()
}
