//! Measurement settings, outcomes and angles.
//!
//! Every measurement direction lies in one plane orthogonal to the axis along
//! which the particles separate, so a single angle describes it.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A binary spin-projection value, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Outcome {
    Up,
    Down,
}

impl Outcome {
    pub fn value(self) -> i8 {
        match self {
            Outcome::Up => 1,
            Outcome::Down => -1,
        }
    }

    pub fn from_sign(up: bool) -> Self {
        if up {
            Outcome::Up
        } else {
            Outcome::Down
        }
    }
}

impl Neg for Outcome {
    type Output = Outcome;

    fn neg(self) -> Outcome {
        match self {
            Outcome::Up => Outcome::Down,
            Outcome::Down => Outcome::Up,
        }
    }
}

impl From<Outcome> for i8 {
    fn from(o: Outcome) -> i8 {
        o.value()
    }
}

impl TryFrom<i8> for Outcome {
    type Error = Error;

    fn try_from(v: i8) -> Result<Self> {
        match v {
            1 => Ok(Outcome::Up),
            -1 => Ok(Outcome::Down),
            other => Err(Error::domain(format!("outcome must be +1 or -1, got {other}"))),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Up => f.write_str("+1"),
            Outcome::Down => f.write_str("-1"),
        }
    }
}

/// Which particle of a pair (1 or 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }

    pub(crate) fn index(self) -> usize {
        match self {
            Side::One => 0,
            Side::Two => 1,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::One => f.write_str("1"),
            Side::Two => f.write_str("2"),
        }
    }
}

/// A measurement direction in the plane, stored as its canonical angle in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct MeasurementSetting {
    theta: f64,
}

impl MeasurementSetting {
    pub fn new(theta: f64) -> Result<Self> {
        Ok(Self {
            theta: canonicalize(theta)?,
        })
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    /// The setting rotated by `delta` radians.
    pub fn rotated(self, delta: f64) -> Result<Self> {
        Self::new(self.theta + delta)
    }
}

/// Reduces an angle to its representative in `[0, 2π)`.
pub fn canonicalize(theta: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::domain(format!("angle must be finite, got {theta}")));
    }
    let r = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs.
    Ok(if r >= TAU { 0.0 } else { r })
}

/// Unsigned angular separation of two settings, in `[0, π]`.
pub fn angle_between(a: MeasurementSetting, b: MeasurementSetting) -> f64 {
    let d = (a.theta - b.theta).abs();
    let sep = if d > PI { TAU - d } else { d };
    sep.clamp(0.0, PI)
}
