//! Striped-tube models.
//!
//! A vertical tube carries horizontal stripes of height 1 on each face,
//! alternately `+1` and `-1`. Face `k` has its stripe boundaries at
//! `Z_k + n`, and the stripe `[Z + n, Z + n + 1)` is `+1` for even `n`.
//! A ball at height `α` pushed against a face reads the stripe containing
//! `α`: `(-1)^⌊α - Z⌋`. The color pattern repeats with period 2, and ball
//! heights are uniform on `[0, 2)`.
//!
//! Measurement settings act on the tube through the shift `θ/π`: a setting
//! at angle `θ` reads the stripe pattern shifted by `θ/π`, so opposite
//! directions read opposite colors. The four-face tube only answers settings
//! that land on one of its faces; the richer tube answers every angle.
//!
//! Two shifts `δ` apart disagree on a fraction `δ` of the heights, which
//! gives the triangle correlation `1 - 2θ/π` rather than a cosine.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{MeasurementSetting, Outcome, Side};
use crate::lhv::{LhvModel, Pairing};
use crate::rng::SimRng;

/// Heights closer than this to a stripe boundary are ambiguous.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

/// Length of one color period along the tube.
pub const PERIOD: f64 = 2.0;

/// Settings within this of a face's angle select that face.
const FACE_MATCH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TubeFace {
    shift: f64,
}

impl TubeFace {
    pub fn new(shift: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&shift) {
            return Err(Error::domain(format!("face shift must lie in [0, 1), got {shift}")));
        }
        Ok(Self { shift })
    }

    pub fn shift(self) -> f64 {
        self.shift
    }

    /// The measurement setting that reads this face.
    pub fn setting(self) -> MeasurementSetting {
        MeasurementSetting::new(self.shift * PI).expect("finite")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TubeSpec {
    faces: Vec<TubeFace>,
}

impl TubeSpec {
    pub fn new(faces: Vec<TubeFace>) -> Result<Self> {
        if faces.is_empty() {
            return Err(Error::Argument("a tube needs at least one face".into()));
        }
        Ok(Self { faces })
    }

    /// Faces with shifts 0, 1/4, 1/2, 3/4.
    pub fn canonical() -> Self {
        Self {
            faces: [0.0, 0.25, 0.5, 0.75]
                .into_iter()
                .map(|z| TubeFace { shift: z })
                .collect(),
        }
    }

    pub fn faces(&self) -> &[TubeFace] {
        &self.faces
    }

    /// Face `k`, counted from 1.
    pub fn face(&self, k: usize) -> Result<TubeFace> {
        k.checked_sub(1)
            .and_then(|i| self.faces.get(i))
            .copied()
            .ok_or_else(|| {
                Error::Argument(format!("face index {k} outside 1..={}", self.faces.len()))
            })
    }
}

/// Value at height `alpha` of the stripe pattern shifted by `shift`.
pub fn stripe_at(alpha: f64, shift: f64) -> Result<Outcome> {
    if !alpha.is_finite() || !shift.is_finite() {
        return Err(Error::domain("height and shift must be finite"));
    }
    let x = alpha - shift;
    let floor = x.floor();
    let frac = x - floor;
    if frac < BOUNDARY_TOLERANCE || 1.0 - frac < BOUNDARY_TOLERANCE {
        return Err(Error::Boundary { alpha, shift });
    }
    Ok(Outcome::from_sign(floor.rem_euclid(2.0) == 0.0))
}

/// The k-value of a ball at height `alpha` pushed against `face`.
pub fn stripe_value(face: TubeFace, alpha: f64) -> Result<Outcome> {
    stripe_at(alpha, face.shift)
}

/// A round ball of diameter 1 centred at height `alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ball {
    alpha: f64,
}

/// The partner of a [`Ball`] in an EPRB-style pair: same height, inverted colors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntiBall {
    alpha: f64,
}

fn check_height(alpha: f64, spec: &TubeSpec) -> Result<()> {
    spec.faces.iter().try_for_each(|f| stripe_value(*f, alpha).map(drop))
}

impl Ball {
    /// A ball at `alpha`, rejected if `alpha` sits on a boundary of any face of `spec`.
    pub fn new(alpha: f64, spec: &TubeSpec) -> Result<Self> {
        check_height(alpha, spec)?;
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn value(&self, face: TubeFace) -> Result<Outcome> {
        stripe_value(face, self.alpha)
    }
}

impl AntiBall {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn value(&self, face: TubeFace) -> Result<Outcome> {
        stripe_value(face, self.alpha).map(|v| -v)
    }
}

pub fn paired_ball(alpha: f64, spec: &TubeSpec) -> Result<(Ball, AntiBall)> {
    let ball = Ball::new(alpha, spec)?;
    Ok((ball, AntiBall { alpha }))
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// Boundaries of the stripe patterns with the given shifts, as a sorted,
/// deduplicated list of exact points of `[0, 2]` including both ends.
fn stripe_boundaries(shifts: &[f64]) -> Vec<BigRational> {
    let one = BigRational::from_integer(BigInt::from(1));
    let mut points = vec![BigRational::zero(), BigRational::from_integer(BigInt::from(2))];
    for &s in shifts {
        let z = exact(s - s.floor());
        points.push(&z + &one);
        points.push(z);
    }
    points.sort();
    points.dedup();
    points
}

/// Cells of one color period on which every pattern in `shifts` is constant:
/// (exact lower end, exact upper end, probability weight).
fn stripe_cells(shifts: &[f64]) -> Vec<(BigRational, BigRational, BigRational)> {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    stripe_boundaries(shifts)
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone(), (&w[1] - &w[0]) * &half))
        .collect()
}

/// Sign of the pattern shifted by `shift` at the exact height `alpha`, or
/// `None` on a boundary.
fn exact_sign(alpha: &BigRational, shift: f64) -> Option<i64> {
    let x = alpha - exact(shift);
    if x.is_integer() {
        return None;
    }
    let n = x.floor().to_integer();
    Some(if (n % BigInt::from(2)).is_zero() { 1 } else { -1 })
}

/// Average of `k_i · k_j` over uniform heights, by summing cell lengths.
///
/// Equals `1 - 2δ` with `δ = |Z_i - Z_j|`.
pub fn tube_correlation_exact(face_i: TubeFace, face_j: TubeFace) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    stripe_cells(&[face_i.shift, face_j.shift])
        .into_iter()
        .map(|(lo, hi, w)| {
            let mid = (lo + hi) / &two;
            let sign = |z| exact_sign(&mid, z).expect("cell midpoints avoid boundaries");
            let product = sign(face_i.shift) * sign(face_j.shift);
            w * BigRational::from_integer(BigInt::from(product))
        })
        .sum()
}

/// Disagreement probability of the richer tube at angle `theta`: `θ/π`.
pub fn richer_tube_disagreement(theta: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::domain(format!("angle must lie in [0, π], got {theta}")));
    }
    Ok(theta / PI)
}

/// Agreement probability of the richer tube, `1 - θ/π`.
pub fn richer_tube_agreement(theta: f64) -> Result<f64> {
    richer_tube_disagreement(theta).map(|d| 1.0 - d)
}

/// The triangle correlation `1 - 2θ/π`.
pub fn triangle_correlation(theta: f64) -> Result<f64> {
    richer_tube_disagreement(theta).map(|d| 1.0 - 2.0 * d)
}

/// Height of a ball on the tube axis.
///
/// Heights produced by exact enumeration also carry their exact rational
/// value, and stripe colors are then decided in exact arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct Height {
    alpha: f64,
    exact: Option<BigRational>,
}

impl Height {
    pub fn new(alpha: f64) -> Self {
        Self { alpha, exact: None }
    }

    pub fn exact(alpha: BigRational) -> Self {
        Self {
            alpha: alpha.to_f64().unwrap_or(f64::NAN),
            exact: Some(alpha),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    fn stripe(&self, shift: f64) -> Result<Outcome> {
        match &self.exact {
            None => stripe_at(self.alpha, shift),
            Some(r) => exact_sign(r, shift)
                .map(|s| Outcome::from_sign(s > 0))
                .ok_or(Error::Boundary {
                    alpha: self.alpha,
                    shift,
                }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum ShiftMap {
    Faces(TubeSpec),
    Affine { rate: f64, offset: f64 },
}

/// Stripe tube packaged as a local hidden-variable model.
///
/// The hidden state is the ball height, uniform on `[0, 2)`. In the default
/// same-object form both responses come from one ball. [`StripeModel::paired`]
/// gives particle 2 an [`AntiBall`], which makes the pair perfectly
/// anticorrelated along equal settings.
#[derive(Debug, Clone, PartialEq)]
pub struct StripeModel {
    name: String,
    map: ShiftMap,
    pairing: Pairing,
}

impl StripeModel {
    pub fn from_tube(name: impl Into<String>, spec: TubeSpec) -> Self {
        Self {
            name: name.into(),
            map: ShiftMap::Faces(spec),
            pairing: Pairing::SameObject,
        }
    }

    /// The canonical four-face tube.
    pub fn four_face() -> Self {
        Self::from_tube("tube4", TubeSpec::canonical())
    }

    /// The tube with every shift: setting `θ` reads shift `θ/π`.
    pub fn richer() -> Self {
        Self {
            name: "richer-tube".into(),
            map: ShiftMap::Affine {
                rate: 1.0,
                offset: 0.0,
            },
            pairing: Pairing::SameObject,
        }
    }

    /// Setting `θ` reads shift `rate · θ/π + offset`.
    pub fn affine(name: impl Into<String>, rate: f64, offset: f64) -> Result<Self> {
        if !rate.is_finite() || !offset.is_finite() {
            return Err(Error::domain("rate and offset must be finite"));
        }
        Ok(Self {
            name: name.into(),
            map: ShiftMap::Affine { rate, offset },
            pairing: Pairing::SameObject,
        })
    }

    /// The EPRB-pair form: particle 2 is the anti-ball.
    pub fn paired(mut self) -> Self {
        self.pairing = Pairing::EprbPair;
        self
    }

    pub fn tube(&self) -> Option<&TubeSpec> {
        match &self.map {
            ShiftMap::Faces(spec) => Some(spec),
            ShiftMap::Affine { .. } => None,
        }
    }

    /// Stripe shift read by `setting`.
    pub fn shift_for(&self, setting: MeasurementSetting) -> Result<f64> {
        let t = setting.theta() / PI;
        match &self.map {
            ShiftMap::Affine { rate, offset } => Ok(rate * t + offset),
            ShiftMap::Faces(spec) => spec
                .faces
                .iter()
                .flat_map(|f| (0..=2).map(move |m| f.shift + m as f64))
                .find(|s| (t - s).abs() < FACE_MATCH_TOL)
                .ok_or(Error::UnsupportedSetting {
                    theta: setting.theta(),
                }),
        }
    }
}

impl LhvModel for StripeModel {
    type Hidden = Height;

    fn name(&self) -> &str {
        &self.name
    }

    fn pairing(&self) -> Pairing {
        self.pairing
    }

    fn sample_hidden(&self, rng: &mut SimRng) -> Height {
        loop {
            let alpha = rng.random::<f64>() * PERIOD;
            match &self.map {
                ShiftMap::Faces(spec) if check_height(alpha, spec).is_err() => continue,
                _ => return Height::new(alpha),
            }
        }
    }

    fn respond(&self, side: Side, setting: MeasurementSetting, hidden: &Height) -> Result<Outcome> {
        let v = hidden.stripe(self.shift_for(setting)?)?;
        Ok(match (side, self.pairing) {
            (Side::Two, Pairing::EprbPair) => -v,
            _ => v,
        })
    }

    fn exact_grid(
        &self,
        settings: &[MeasurementSetting],
    ) -> Option<Result<Vec<(Height, BigRational)>>> {
        let shifts: Result<Vec<f64>> = settings.iter().map(|s| self.shift_for(*s)).collect();
        Some(shifts.map(|shifts| {
            let two = BigRational::from_integer(BigInt::from(2));
            stripe_cells(&shifts)
                .into_iter()
                .map(|(lo, hi, w)| (Height::exact((lo + hi) / &two), w))
                .collect()
        }))
    }
}

/// Iterations of the dust map inside an oval ball.
pub const OVAL_ITERATIONS: usize = 64;

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Starting point of the dust map for height `beta` near face `face_index`:
/// `0.05 + 0.9 · frac(β·√2 + k·g)` with `g` the golden ratio conjugate.
fn dust_seed(beta: f64, face_index: usize) -> f64 {
    let x = beta * std::f64::consts::SQRT_2 + face_index as f64 * GOLDEN;
    0.05 + 0.9 * (x - x.floor())
}

/// Position in `[0, 1]` to which the dust settles: the logistic map
/// `x ↦ 4x(1 - x)` iterated [`OVAL_ITERATIONS`] times from [`dust_seed`].
fn dust_settle(beta: f64, face_index: usize) -> f64 {
    let mut x = dust_seed(beta, face_index);
    for _ in 0..OVAL_ITERATIONS {
        x = 4.0 * x * (1.0 - x);
    }
    x
}

/// Field-dependent center of gravity of the oval ball near face `face_index`.
fn gravity_center(beta: f64, face_index: usize) -> f64 {
    beta + (dust_settle(beta, face_index) - 0.5)
}

/// An oval ball of height 2 whose reading depends on where its dust settles
/// under the field of the face it is pushed against.
///
/// The settling is deterministic but chaotic and one-way: once pushed, the
/// ball is spent. The only way to learn a k-value is [`OvalBall::measure`],
/// and it can be called once.
#[derive(Debug)]
pub struct OvalBall {
    beta: f64,
    consumed: bool,
}

impl OvalBall {
    /// A fresh ball at height `beta`. Heights whose center of gravity lands on
    /// a stripe boundary for some face are ambiguous and rejected.
    pub fn new(beta: f64) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::domain(format!("height must be finite, got {beta}")));
        }
        let spec = TubeSpec::canonical();
        for (i, face) in spec.faces.iter().enumerate() {
            stripe_value(*face, gravity_center(beta, i + 1))?;
        }
        Ok(Self {
            beta,
            consumed: false,
        })
    }

    /// A fresh ball at a uniform height in `[0, 2)`, redrawn while ambiguous.
    pub fn sample(rng: &mut SimRng) -> Self {
        loop {
            if let Ok(ball) = Self::new(rng.random::<f64>() * PERIOD) {
                return ball;
            }
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn is_consumed(&self) -> bool {
        self.consumed
    }

    /// Pushes the ball against face `face_index` (1..=4) of the canonical tube.
    pub fn measure(&mut self, face_index: usize) -> Result<Outcome> {
        if self.consumed {
            return Err(Error::Consumed);
        }
        let face = TubeSpec::canonical().face(face_index)?;
        let outcome = stripe_value(face, gravity_center(self.beta, face_index))?;
        self.consumed = true;
        Ok(outcome)
    }
}
