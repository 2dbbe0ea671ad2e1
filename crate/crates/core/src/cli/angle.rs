//! Angle literals: decimal radians (`0.785`) or rational multiples of π
//! (`pi`, `pi/4`, `3pi/4`, `3*pi/4`, `-pi/8`, `π/2`).

use std::f64::consts::PI;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AngleLiteral {
    /// `numerator · π / denominator`
    PiMultiple { numerator: i64, denominator: u64 },
    Radians(f64),
}

impl AngleLiteral {
    pub fn radians(self) -> f64 {
        match self {
            AngleLiteral::PiMultiple {
                numerator,
                denominator,
            } => numerator as f64 * PI / denominator as f64,
            AngleLiteral::Radians(r) => r,
        }
    }
}

fn bad(s: &str) -> Error {
    Error::Argument(format!("cannot parse angle `{s}`"))
}

impl FromStr for AngleLiteral {
    type Err = Error;

    fn from_str(raw: &str) -> Result<Self> {
        let s = raw.trim();
        let lower = s.to_ascii_lowercase();
        let (sign, body) = match lower.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, lower.strip_prefix('+').unwrap_or(&lower)),
        };
        let pi_at = body.find("pi").map(|i| (i, 2)).or_else(|| body.find('π').map(|i| (i, 'π'.len_utf8())));
        let Some((at, width)) = pi_at else {
            let r: f64 = s.parse().map_err(|_| bad(raw))?;
            if !r.is_finite() {
                return Err(bad(raw));
            }
            return Ok(AngleLiteral::Radians(r));
        };
        let coef = body[..at].trim_end_matches('*');
        let numerator: i64 = if coef.is_empty() {
            1
        } else {
            coef.parse().map_err(|_| bad(raw))?
        };
        let rest = &body[at + width..];
        let denominator: u64 = match rest.strip_prefix('/') {
            Some(d) => d.parse().map_err(|_| bad(raw))?,
            None if rest.is_empty() => 1,
            None => return Err(bad(raw)),
        };
        if denominator == 0 || numerator < 0 {
            return Err(bad(raw));
        }
        Ok(AngleLiteral::PiMultiple {
            numerator: sign * numerator,
            denominator,
        })
    }
}

pub fn parse_angle(s: &str) -> Result<f64> {
    s.parse::<AngleLiteral>().map(AngleLiteral::radians)
}

pub fn parse_angle_list(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(parse_angle).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn symbolic_angles_are_exact() {
        assert_eq!(parse_angle("pi/4").unwrap(), FRAC_PI_4);
        assert_eq!(parse_angle("3pi/4").unwrap(), 3.0 * FRAC_PI_4);
        assert_eq!(parse_angle("3*pi/4").unwrap(), 3.0 * FRAC_PI_4);
        assert_eq!(parse_angle("-pi/4").unwrap(), -FRAC_PI_4);
        assert_eq!(parse_angle("π").unwrap(), PI);
        assert_eq!(parse_angle("PI/2").unwrap(), PI / 2.0);
        assert_eq!(parse_angle("0.7853981633974483").unwrap(), FRAC_PI_4);
    }

    #[test]
    fn malformed_angles_rejected() {
        for s in ["", "pi/0", "x", "pi/4/2", "2xpi", "pi4", "nan", "inf"] {
            assert!(parse_angle(s).is_err(), "{s}");
        }
    }

    #[test]
    fn lists() {
        assert_eq!(parse_angle_list("pi/4,pi/4,pi/4").unwrap(), vec![FRAC_PI_4; 3]);
        assert!(parse_angle_list("pi/4,,pi").is_err());
    }
}
