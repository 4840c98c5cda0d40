//! Translation curves: closed-form parametrization, inversion back to
//! direction parameters, translation distance, translation spheres and
//! antipodal points.
//!
//! A translation curve drags its initial tangent along by left translation;
//! in Sol this integrates to a piecewise exponential curve, distinct from a
//! geodesic whenever it leaves the base plane.

use crate::error::{SolError, SolResult};
use crate::scalar::Real;
use crate::sol::{inverse_translation, SolPoint, SolTangent};

/// Longitude/altitude direction plus arc length, parametrizing the unit
/// speed translation curve from the origin.
///
/// Ranges: `phi` in `(-pi, pi]`, `theta` in `[-pi/2, pi/2]`, `t >= 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirectionParams<T> {
    pub phi: T,
    pub theta: T,
    pub t: T,
}

impl<T: Real> DirectionParams<T> {
    pub fn new(phi: T, theta: T, t: T) -> Self {
        Self { phi, theta, t }
    }

    /// Unit direction vector `(cos t cos f, cos t sin f, sin t)`.
    pub fn unit_vector(&self) -> [T; 3] {
        let (ct, st) = (self.theta.cos(), self.theta.sin());
        [ct * self.phi.cos(), ct * self.phi.sin(), st]
    }
}

/// `z / (1 - e^{-z})`, the factor converting an `x` displacement into the
/// first tangent component.  Series fallback keeps the removable singularity
/// at `z = 0` well conditioned.
#[inline]
pub(crate) fn x_tangent_factor<T: Real>(z: T) -> T {
    if z.abs() < T::of(1e-6) {
        T::one() + z / T::of(2.0) + z * z / T::of(12.0)
    } else {
        -z / (-z).exp_m1()
    }
}

/// `z / (e^{z} - 1)`, companion factor for the `y` component.
#[inline]
pub(crate) fn y_tangent_factor<T: Real>(z: T) -> T {
    if z.abs() < T::of(1e-6) {
        T::one() - z / T::of(2.0) + z * z / T::of(12.0)
    } else {
        z / z.exp_m1()
    }
}

/// Point reached by the unit-speed translation curve with direction
/// parameters `d`.
///
/// For `theta != 0`:
/// `(-cot t cos f (e^{-s} - 1), cot t sin f (e^{s} - 1), s)` with
/// `s = t sin theta`; for `theta == 0` the curve is the straight ray
/// `(t cos f, t sin f, 0)`.  `|theta| < 1e-8` uses a second order series in
/// `sin theta` to avoid cancellation.
pub fn translation_point<T: Real>(d: &DirectionParams<T>) -> SolPoint<T> {
    let (cf, sf) = (d.phi.cos(), d.phi.sin());
    if d.theta == T::zero() {
        return SolPoint::new(d.t * cf, d.t * sf, T::zero());
    }
    let s = d.theta.sin();
    let ct = d.theta.cos();
    if s.abs() < T::of(1e-8) {
        let ts = d.t * s;
        let half = ts / T::of(2.0);
        let sixth = ts * ts / T::of(6.0);
        let x = ct * cf * d.t * (T::one() - half + sixth);
        let y = ct * sf * d.t * (T::one() + half + sixth);
        return SolPoint::new(x, y, ts);
    }
    let cot = ct / s;
    let zs = d.t * s;
    SolPoint::new(-cot * cf * (-zs).exp_m1(), cot * sf * zs.exp_m1(), zs)
}

/// Tangent at the origin of the translation curve from the origin to `p`:
/// `(x z/(1 - e^{-z}), y z/(e^{z} - 1), z)`.
///
/// Its Euclidean norm is the translation arc length and its direction is the
/// unit vector of the corresponding [`DirectionParams`].
pub fn translation_tangent_at_origin<T: Real>(p: &SolPoint<T>) -> SolResult<SolTangent<T>> {
    if p.is_origin() {
        return Err(SolError::ZeroLengthCurve);
    }
    Ok(SolTangent::at_origin(
        p.x * x_tangent_factor(p.z),
        p.y * y_tangent_factor(p.z),
        p.z,
    ))
}

/// Inverts the translation-curve parametrization: finds `(phi, theta, t)`
/// with `translation_point` mapping back to `p`.
///
/// Case dispatch: `z == 0` uses the planar inversion
/// (`phi = atan2(y, x)`, `t = sqrt(x^2 + y^2)`); otherwise the direction is
/// recovered from the origin tangent, which condenses the printed `arccot`
/// case formulas into one two-argument arctangent form.  The degenerate axis
/// case `x = y = 0` lands on `phi = 0`, `theta = +/- pi/2`, `t = |z|`.
/// The result is validated by forward evaluation; branch alternatives are
/// tried if the check fails.
pub fn invert_translation_point<T: Real>(p: &SolPoint<T>) -> SolResult<DirectionParams<T>> {
    if p.is_origin() {
        return Err(SolError::ZeroLengthCurve);
    }
    let primary = if p.z == T::zero() {
        DirectionParams::new(p.y.atan2(p.x), T::zero(), (p.x * p.x + p.y * p.y).sqrt())
    } else {
        let tangent = translation_tangent_at_origin(p)?;
        let [u, v, w] = tangent.components();
        let t = (u * u + v * v + w * w).sqrt();
        let phi = if u == T::zero() && v == T::zero() {
            T::zero()
        } else {
            v.atan2(u)
        };
        let theta = (w / t).max(-T::one()).min(T::one()).asin();
        DirectionParams::new(phi, theta, t)
    };

    let scale = T::one() + p.model_distance(&SolPoint::origin());
    let tol = T::of(1e-10) * scale;
    let ok = |d: &DirectionParams<T>| translation_point(d).model_distance(p) < tol;
    if ok(&primary) {
        return Ok(primary);
    }
    // branch rescue: the arccot conventions of the printed case formulas are
    // ambiguous up to phi +/- pi and the sign of theta
    for (dphi, flip) in [
        (T::PI(), false),
        (-T::PI(), false),
        (T::zero(), true),
        (T::PI(), true),
        (-T::PI(), true),
    ] {
        let alt = DirectionParams::new(
            primary.phi + dphi,
            if flip { -primary.theta } else { primary.theta },
            primary.t,
        );
        if ok(&alt) {
            return Ok(alt);
        }
    }
    Ok(primary)
}

/// Directed translation distance from `p1` to `p2`: the arc length of the
/// translation curve from `p1` to `p2`.  Not symmetric in general.
pub fn translation_distance<T: Real>(p1: &SolPoint<T>, p2: &SolPoint<T>) -> T {
    if p1 == p2 {
        return T::zero();
    }
    let q = inverse_translation(p1).apply(p2);
    if q.is_origin() {
        return T::zero();
    }
    match invert_translation_point(&q) {
        Ok(d) => d.t,
        Err(_) => T::zero(),
    }
}

/// Antipode of `a` on its translation curve through the origin (parameter
/// `t` replaced by `-t`): `(-x e^{z}, -y e^{-z}, -z)`.
pub fn antipodal_point<T: Real>(a: &SolPoint<T>) -> SolPoint<T> {
    SolPoint::new(-a.x * a.z.exp(), -a.y * (-a.z).exp(), -a.z)
}

/// Implicit value of the translation sphere of radius `R` about the origin:
/// `(x z/(1-e^{-z}))^2 + (y z/(e^{z}-1))^2 + z^2 - R^2`, with the smooth
/// `z -> 0` limit `x^2 + y^2 - R^2`.
pub fn translation_sphere_value<T: Real>(p: &SolPoint<T>, radius: T) -> T {
    let a = p.x * x_tangent_factor(p.z);
    let b = p.y * y_tangent_factor(p.z);
    a * a + b * b + p.z * p.z - radius * radius
}
