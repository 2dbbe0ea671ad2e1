//! The two inequalities on disagreement probabilities:
//!
//! ```text
//! (star)        P'(θ1) + P'(θ2) + P'(θ3) ≥ P'(θ1 + θ2 + θ3)
//! (doublestar)  P'(θ1) + P'(θ2) + P(θ1 + θ2) ≥ 1
//! ```
//!
//! Both hold for any assignment of predetermined ±1 values. Write `u` for
//! particle 1's values and `w` for the partner values recovered from particle
//! 2, with settings `a = 0`, `b = θ1`, `a' = θ1 + θ2`, `b' = θ1 + θ2 + θ3`.
//! Then `[u(a) ≠ w(b')] ≤ [u(a) ≠ w(b)] + [w(b) ≠ u(a')] + [u(a') ≠ w(b')]`
//! pointwise (a Hamming triangle inequality along the chain `a, b, a', b'`,
//! checked over all 16 sign patterns in the tests), and averaging over hidden
//! states gives (star). For (doublestar), if `u(a) ≠ u(a')` then `w(b)` differs
//! from one of them. Quantum statistics break both, most sharply at `π/4`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::MeasurementSetting;
use crate::lhv::{estimate_disagreement, exact_disagreement, Estimate, LhvModel, MonteCarlo};
use crate::quantum::{p_prime, p_same, Singlet};
use crate::rng::derive_seed;
use crate::tube::StripeModel;

/// Slack tolerance in exact mode.
pub const EXACT_TOLERANCE: f64 = 1e-12;

/// Slack tolerance in Monte Carlo mode, in standard errors.
pub const SIGMA_TOLERANCE: f64 = 4.0;

/// Largest admissible `|P + P' - 1|` for a pair of agreement functions.
pub const CONSISTENCY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Inequality {
    Star,
    DoubleStar,
}

impl Inequality {
    pub fn arity(self) -> usize {
        match self {
            Inequality::Star => 3,
            Inequality::DoubleStar => 2,
        }
    }
}

impl FromStr for Inequality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "star" => Ok(Inequality::Star),
            "doublestar" => Ok(Inequality::DoubleStar),
            other => Err(Error::Argument(format!("unknown inequality `{other}`"))),
        }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Inequality::Star => "star",
            Inequality::DoubleStar => "doublestar",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Satisfied,
    Violated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    MonteCarlo,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "mc" | "monte-carlo" => Ok(Mode::MonteCarlo),
            other => Err(Error::Argument(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub inequality: Inequality,
    pub angles: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub verdict: Verdict,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<f64>,
    pub model: String,
}

impl InequalityReport {
    fn new(
        inequality: Inequality,
        angles: Vec<f64>,
        lhs: f64,
        rhs: f64,
        slack: f64,
        stderr: Option<f64>,
    ) -> Result<Self> {
        if !slack.is_finite() {
            return Err(Error::domain(format!("non-finite slack {slack}")));
        }
        let (mode, tolerance) = match stderr {
            None => (Mode::Exact, EXACT_TOLERANCE),
            Some(se) => (Mode::MonteCarlo, SIGMA_TOLERANCE * se),
        };
        let verdict = if slack >= -tolerance {
            Verdict::Satisfied
        } else {
            Verdict::Violated
        };
        Ok(Self {
            inequality,
            angles,
            lhs,
            rhs,
            slack,
            verdict,
            mode,
            stderr,
            model: "custom".into(),
        })
    }

    pub fn with_model(mut self, model: impl Into<String>) -> Self {
        self.model = model.into();
        self
    }

    pub fn is_violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }
}

/// Correlation matching a disagreement probability for a same-object model.
pub fn correlation_view(p_prime: f64) -> f64 {
    1.0 - 2.0 * p_prime
}

fn check_angles(angles: &[f64]) -> Result<()> {
    if let Some(bad) = angles.iter().find(|t| !t.is_finite() || **t < 0.0) {
        return Err(Error::domain(format!("angles must be finite and non-negative, got {bad}")));
    }
    let sum: f64 = angles.iter().sum();
    if sum > PI + EXACT_TOLERANCE {
        return Err(Error::domain(format!("angle sum {sum} exceeds π")));
    }
    Ok(())
}

/// Evaluates (star) for a disagreement function of the angle.
pub fn eval_star<F>(pprime: F, th1: f64, th2: f64, th3: f64) -> Result<InequalityReport>
where
    F: Fn(f64) -> Result<f64>,
{
    check_angles(&[th1, th2, th3])?;
    let lhs = pprime(th1)? + pprime(th2)? + pprime(th3)?;
    let rhs = pprime((th1 + th2 + th3).min(PI))?;
    InequalityReport::new(Inequality::Star, vec![th1, th2, th3], lhs, rhs, lhs - rhs, None)
}

/// Evaluates (doublestar) for a disagreement function and its agreement
/// counterpart, which must sum to 1 at every probed angle.
pub fn eval_doublestar<F, G>(pprime: F, psame: G, th1: f64, th2: f64) -> Result<InequalityReport>
where
    F: Fn(f64) -> Result<f64>,
    G: Fn(f64) -> Result<f64>,
{
    check_angles(&[th1, th2])?;
    let sum = (th1 + th2).min(PI);
    for theta in [th1, th2, sum] {
        let total = pprime(theta)? + psame(theta)?;
        if (total - 1.0).abs() > CONSISTENCY_TOLERANCE {
            return Err(Error::Consistency { theta, sum: total });
        }
    }
    let lhs = pprime(th1)? + pprime(th2)? + psame(sum)?;
    InequalityReport::new(Inequality::DoubleStar, vec![th1, th2], lhs, 1.0, lhs - 1.0, None)
}

/// Models selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinModel {
    Qm,
    Tube4,
    RicherTube,
}

impl BuiltinModel {
    pub fn id(self) -> &'static str {
        match self {
            BuiltinModel::Qm => "qm",
            BuiltinModel::Tube4 => "tube4",
            BuiltinModel::RicherTube => "richer-tube",
        }
    }
}

impl FromStr for BuiltinModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qm" => Ok(BuiltinModel::Qm),
            "tube4" => Ok(BuiltinModel::Tube4),
            "richer-tube" => Ok(BuiltinModel::RicherTube),
            other => Err(Error::Argument(format!("unknown model `{other}`"))),
        }
    }
}

/// Settings `a, b, a', b'` at cumulative angles from 0.
fn chain(angles: &[f64]) -> Result<Vec<MeasurementSetting>> {
    let mut at = 0.0;
    let mut out = vec![MeasurementSetting::new(0.0)?];
    for t in angles {
        at += t;
        out.push(MeasurementSetting::new(at.min(PI))?);
    }
    Ok(out)
}

/// The `(particle 1, particle 2)` setting pairs whose disagreement
/// probabilities enter the inequality, in order.
fn term_pairs(inequality: Inequality, s: &[MeasurementSetting]) -> Vec<(MeasurementSetting, MeasurementSetting)> {
    match inequality {
        // P'(θ1), P'(θ2), P'(θ3), P'(θ1+θ2+θ3)
        Inequality::Star => vec![(s[0], s[1]), (s[2], s[1]), (s[2], s[3]), (s[0], s[3])],
        // P'(θ1), P'(θ2), and 1 - P'(θ1+θ2)
        Inequality::DoubleStar => vec![(s[0], s[1]), (s[2], s[1]), (s[0], s[2])],
    }
}

/// Left and right sides from the term probabilities, in any number type.
fn sides<T>(inequality: Inequality, t: &[T], one: T) -> (T, T)
where
    T: Clone + std::ops::Add<Output = T> + std::ops::Sub<Output = T>,
{
    match inequality {
        Inequality::Star => (t[0].clone() + t[1].clone() + t[2].clone(), t[3].clone()),
        Inequality::DoubleStar => (t[0].clone() + t[1].clone() + (one.clone() - t[2].clone()), one),
    }
}

fn assemble_sampled(inequality: Inequality, angles: &[f64], terms: &[Estimate]) -> Result<InequalityReport> {
    let values: Vec<f64> = terms.iter().map(|t| t.value).collect();
    let (lhs, rhs) = sides(inequality, &values, 1.0);
    let stderr = terms.iter().map(|t| t.stderr * t.stderr).sum::<f64>().sqrt();
    InequalityReport::new(inequality, angles.to_vec(), lhs, rhs, lhs - rhs, Some(stderr))
}

/// Exact terms are combined in rational arithmetic; only the results are rounded.
fn assemble_exact(inequality: Inequality, angles: &[f64], terms: &[BigRational]) -> Result<InequalityReport> {
    let (lhs, rhs) = sides(inequality, terms, BigRational::one());
    let f = |r: &BigRational| r.to_f64().expect("probabilities are finite");
    InequalityReport::new(inequality, angles.to_vec(), f(&lhs), f(&rhs), f(&(&lhs - &rhs)), None)
}

fn check_arity(inequality: Inequality, angles: &[f64]) -> Result<()> {
    if angles.len() != inequality.arity() {
        return Err(Error::Argument(format!(
            "{inequality} takes {} angles, got {}",
            inequality.arity(),
            angles.len()
        )));
    }
    check_angles(angles)
}

fn term_mc(mc: &MonteCarlo, index: usize) -> MonteCarlo {
    mc.with_seed(derive_seed(mc.seed, index as u64))
}

/// Checks an inequality against quantum statistics.
///
/// Exact mode uses the closed forms; Monte Carlo mode samples each term from
/// its own sub-seed and propagates the root-sum-square of the term errors.
pub fn check_quantum(
    inequality: Inequality,
    angles: &[f64],
    mode: Mode,
    mc: &MonteCarlo,
) -> Result<InequalityReport> {
    check_arity(inequality, angles)?;
    let report = match (mode, inequality) {
        (Mode::Exact, Inequality::Star) => eval_star(p_prime, angles[0], angles[1], angles[2])?,
        (Mode::Exact, Inequality::DoubleStar) => eval_doublestar(p_prime, p_same, angles[0], angles[1])?,
        (Mode::MonteCarlo, _) => {
            let settings = chain(angles)?;
            let terms = term_pairs(inequality, &settings)
                .into_iter()
                .enumerate()
                .map(|(i, (x, y))| estimate_disagreement(&Singlet, x, y, &term_mc(mc, i)))
                .collect::<Result<Vec<_>>>()?;
            assemble_sampled(inequality, angles, &terms)?
        }
    };
    Ok(report.with_model(BuiltinModel::Qm.id()))
}

/// Checks an inequality against a local hidden-variable model.
///
/// Doublestar reads `P(θ1 + θ2)` off the partner of particle 2, which
/// presumes the model is perfectly anticorrelated along equal settings.
pub fn check_lhv<M: LhvModel + Sync>(
    model: &M,
    inequality: Inequality,
    angles: &[f64],
    mode: Mode,
    mc: &MonteCarlo,
) -> Result<InequalityReport> {
    check_arity(inequality, angles)?;
    let pairs = term_pairs(inequality, &chain(angles)?);
    let report = match mode {
        Mode::Exact => {
            let terms = pairs
                .into_iter()
                .map(|(x, y)| exact_disagreement(model, x, y))
                .collect::<Result<Vec<_>>>()?;
            assemble_exact(inequality, angles, &terms)?
        }
        Mode::MonteCarlo => {
            let terms = pairs
                .into_iter()
                .enumerate()
                .map(|(i, (x, y))| estimate_disagreement(model, x, y, &term_mc(mc, i)))
                .collect::<Result<Vec<_>>>()?;
            assemble_sampled(inequality, angles, &terms)?
        }
    };
    Ok(report.with_model(model.name()))
}

/// Dispatches to [`check_quantum`] or [`check_lhv`] for a named model. The
/// tube models run in their EPRB-pair form.
pub fn check_model(
    model: BuiltinModel,
    inequality: Inequality,
    angles: &[f64],
    mode: Mode,
    mc: &MonteCarlo,
) -> Result<InequalityReport> {
    match model {
        BuiltinModel::Qm => check_quantum(inequality, angles, mode, mc),
        BuiltinModel::Tube4 => check_lhv(&StripeModel::four_face().paired(), inequality, angles, mode, mc),
        BuiltinModel::RicherTube => check_lhv(&StripeModel::richer().paired(), inequality, angles, mode, mc),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tube::{richer_tube_agreement, richer_tube_disagreement};
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    #[test]
    fn quantum_star_at_quarter_turn() {
        let r = eval_star(p_prime, FRAC_PI_4, FRAC_PI_4, FRAC_PI_4).unwrap();
        assert!((r.lhs - 3.0 * (2.0 - SQRT_2) / 4.0).abs() < 1e-12);
        assert!((r.rhs - (2.0 + SQRT_2) / 4.0).abs() < 1e-12);
        assert!((r.slack - (1.0 - SQRT_2)).abs() < 1e-12);
        assert_eq!(r.verdict, Verdict::Violated);
        assert_eq!(r.mode, Mode::Exact);
        assert_eq!(r.stderr, None);
    }

    #[test]
    fn richer_tube_star_saturates() {
        let r = eval_star(richer_tube_disagreement, FRAC_PI_4, FRAC_PI_4, FRAC_PI_4).unwrap();
        assert_eq!(r.slack, 0.0);
        assert_eq!(r.verdict, Verdict::Satisfied);
    }

    #[test]
    fn degenerate_star() {
        let r = eval_star(p_prime, 0.9, 0.0, 0.0).unwrap();
        assert_eq!(r.slack, 0.0);
        let r = eval_star(richer_tube_disagreement, 0.9, 0.0, 0.0).unwrap();
        assert_eq!(r.slack, 0.0);
    }

    #[test]
    fn quantum_doublestar_at_quarter_turn() {
        let r = eval_doublestar(p_prime, p_same, FRAC_PI_4, FRAC_PI_4).unwrap();
        assert!((r.lhs - (3.0 - SQRT_2) / 2.0).abs() < 1e-12);
        assert!((r.slack - (1.0 - SQRT_2) / 2.0).abs() < 1e-12);
        assert!(r.is_violated());
    }

    #[test]
    fn richer_tube_doublestar_saturates() {
        let r = eval_doublestar(richer_tube_disagreement, richer_tube_agreement, FRAC_PI_4, FRAC_PI_4)
            .unwrap();
        assert_eq!(r.lhs, 1.0);
        assert_eq!(r.slack, 0.0);
        let r = eval_doublestar(p_prime, p_same, 0.0, 0.0).unwrap();
        assert_eq!((r.lhs, r.slack), (1.0, 0.0));
    }

    #[test]
    fn inconsistent_pair_rejected() {
        let err = eval_doublestar(p_prime, p_prime, FRAC_PI_4, FRAC_PI_4).unwrap_err();
        assert!(matches!(err, Error::Consistency { .. }));
    }

    #[test]
    fn angle_domain_enforced() {
        assert!(eval_star(p_prime, 1.5, 1.5, 1.5).is_err());
        assert!(eval_star(p_prime, -0.1, 0.0, 0.0).is_err());
        assert!(eval_doublestar(p_prime, p_same, 2.0, 2.0).is_err());
        let mc = MonteCarlo::default();
        assert!(matches!(
            check_model(BuiltinModel::Qm, Inequality::Star, &[0.1, 0.2], Mode::Exact, &mc),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn sixteen_sign_patterns() {
        for bits in 0u8..16 {
            let v = |i: u8| (bits >> i) & 1;
            let (a, b, a2, b2) = (v(0), v(1), v(2), v(3));
            let d = |x: u8, y: u8| u8::from(x != y);
            assert!(d(a, b2) <= d(a, b) + d(b, a2) + d(a2, b2));
            assert!(d(a, b) + d(b, a2) + (1 - d(a, a2)) >= 1);
        }
    }

    #[test]
    fn tube4_exact_reports() {
        let mc = MonteCarlo::default();
        let q = [FRAC_PI_4; 3];
        let r = check_model(BuiltinModel::Tube4, Inequality::Star, &q, Mode::Exact, &mc).unwrap();
        assert_eq!(r.lhs, 0.75);
        assert_eq!(r.rhs, 0.75);
        assert_eq!(r.model, "tube4");
        let r = check_model(BuiltinModel::Tube4, Inequality::DoubleStar, &q[..2], Mode::Exact, &mc)
            .unwrap();
        assert!(r.slack >= 0.0);
        let err = check_model(BuiltinModel::Tube4, Inequality::Star, &[0.1, 0.2, 0.3], Mode::Exact, &mc);
        assert!(matches!(err, Err(Error::UnsupportedSetting { .. })));
    }

    #[test]
    fn permutation_invariance() {
        let a = eval_star(p_prime, 0.1, 0.5, 0.9).unwrap();
        let b = eval_star(p_prime, 0.9, 0.1, 0.5).unwrap();
        assert!((a.slack - b.slack).abs() < 1e-12);
    }
}
