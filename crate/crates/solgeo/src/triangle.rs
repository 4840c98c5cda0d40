//! Interior angles and angle sums of geodesic triangles, the closed-form
//! isosceles families, the interpolation construction reaching angle sum
//! `pi`, and the translation-triangle angle used by the isoptic oracle.

use crate::error::{SolError, SolResult};
use crate::geodesic::{solve_geodesic_bvp_with, BvpOptions};
use crate::scalar::Real;
use crate::sol::{angle_between, inverse_translation, SolPoint};
use crate::translation::translation_tangent_at_origin;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Interior angles of a triangle, radians, plus their sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TriangleAngles<T> {
    pub omega1: T,
    pub omega2: T,
    pub omega3: T,
    pub sum: T,
}

impl<T: Real> TriangleAngles<T> {
    fn new(omega1: T, omega2: T, omega3: T) -> Self {
        Self {
            omega1,
            omega2,
            omega3,
            sum: omega1 + omega2 + omega3,
        }
    }

    pub fn as_array(&self) -> [T; 3] {
        [self.omega1, self.omega2, self.omega3]
    }
}

/// Angle threshold below which two side tangents count as parallel and the
/// triangle as degenerate.
const PARALLEL_TOL: f64 = 1e-9;

/// Interior angles of the geodesic triangle `A1 A2 A3`.
///
/// Each vertex is translated to the origin; the connecting geodesics to the
/// two translated neighbours are solved and the angle between their initial
/// tangents is measured there (where the metric is Euclidean).  The solver
/// returns minimal-length connections, so the angles are those between the
/// shortest geodesic sides.
pub fn geodesic_triangle_angles<T: Real>(
    a1: &SolPoint<T>,
    a2: &SolPoint<T>,
    a3: &SolPoint<T>,
) -> SolResult<TriangleAngles<T>> {
    geodesic_triangle_angles_with(a1, a2, a3, &BvpOptions::default())
}

/// [`geodesic_triangle_angles`] with explicit solver options.
pub fn geodesic_triangle_angles_with<T: Real>(
    a1: &SolPoint<T>,
    a2: &SolPoint<T>,
    a3: &SolPoint<T>,
    opts: &BvpOptions<T>,
) -> SolResult<TriangleAngles<T>> {
    let pts = [*a1, *a2, *a3];
    for i in 0..3 {
        if pts[i].model_distance(&pts[(i + 1) % 3]) < T::of(1e-14) {
            return Err(SolError::DegenerateTriangle);
        }
    }
    let mut omegas = [T::zero(); 3];
    for i in 0..3 {
        let to_origin = inverse_translation(&pts[i]);
        let q1 = to_origin.apply(&pts[(i + 1) % 3]);
        let q2 = to_origin.apply(&pts[(i + 2) % 3]);
        let arc1 = solve_geodesic_bvp_with(&q1, opts)?;
        let arc2 = solve_geodesic_bvp_with(&q2, opts)?;
        let t1 = arc1.tangent(T::zero())?;
        let t2 = arc2.tangent(T::zero())?;
        omegas[i] = angle_between(&t1, &t2)?;
    }
    let tol = T::of(PARALLEL_TOL);
    if omegas
        .iter()
        .any(|&o| o < tol || o > T::PI() - tol)
    {
        return Err(SolError::DegenerateTriangle);
    }
    Ok(TriangleAngles::new(omegas[0], omegas[1], omegas[2]))
}

/// Closed-form interior angles of the horizontal-like isosceles triangle
/// with vertices `(0,0,0)`, `(a,0,0)`, `(0,a,0)`:
///
/// ```text
/// omega1 = pi - arccos(4a / (a^2+4)^{3/2}),
/// omega2 = omega3 = arccos(2 sqrt(2) / (a^2+4)).
/// ```
///
/// These are the catalog values the angle-sum tables are built from.  Note
/// that the angles between the minimal connecting geodesics of the same
/// vertices, as computed by [`geodesic_triangle_angles`], are
/// `arccos(-a^2/(a^2+4))` and `arccos(sqrt(2/(a^2+4)))`; the two families
/// agree only in the `a -> 0` limit.  See the crate tests for the
/// comparison.
pub fn horizontal_isosceles_angles<T: Real>(a: T) -> SolResult<TriangleAngles<T>> {
    if !(a > T::zero()) {
        return Err(SolError::InvalidParameter("edge parameter must be positive".into()));
    }
    let n = a * a + T::of(4.0);
    let omega1 = T::PI() - (T::of(4.0) * a / (n * n.sqrt())).acos();
    let omega23 = (T::of(2.0) * T::SQRT_2() / n).acos();
    Ok(TriangleAngles::new(omega1, omega23, omega23))
}

/// Closed-form interior angles of the hyperbolic-like triangle with
/// vertices `(0,0,0)`, `(0,a,0)`, `(0,0,a)`:
///
/// ```text
/// omega1 = pi/2 - arctan(a/2)
/// omega2 = arctan((e^{2a} + a^2 - 1)/(2a)) - arctan(a/2)
/// omega3 = pi/2 - arctan((e^{2a} - a^2 - 1)/(2a e^{a}))
/// ```
///
/// The third formula is evaluated as `e^a/(2a) - (a^2+1) e^{-a}/(2a)` so
/// that very large `a` saturates to `arctan(inf) = pi/2` instead of
/// producing `inf/inf`.
pub fn hyperbolic_like_angles<T: Real>(a: T) -> SolResult<TriangleAngles<T>> {
    if !(a > T::zero()) {
        return Err(SolError::InvalidParameter("edge parameter must be positive".into()));
    }
    let two = T::of(2.0);
    let half_pi = T::FRAC_PI_2();
    let t_half = (a / two).atan();
    let omega1 = half_pi - t_half;
    let omega2 = ((two * a).exp() + a * a - T::one()).atan2(two * a) - t_half;
    let ratio3 = a.exp() / (two * a) - (a * a + T::one()) * (-a).exp() / (two * a);
    let omega3 = half_pi - ratio3.atan();
    Ok(TriangleAngles::new(omega1, omega2, omega3))
}

/// Result of [`find_pi_sum_triangle`].
#[derive(Clone, Copy, Debug)]
pub struct PiSumTriangle<T> {
    /// Interpolation parameter in `(0, 1)` at which the angle sum crosses
    /// `pi`.
    pub t: T,
    /// The moving vertex at that parameter.
    pub apex: SolPoint<T>,
    pub angles: TriangleAngles<T>,
}

/// Finds a proper geodesic triangle with interior angle sum `pi`.
///
/// With `A1` at the origin and `A2 = (0,a,0)` fixed, the third vertex moves
/// along the Euclidean segment from `(a,0,0)` to `(0,0,a)`.  The angle sum
/// exceeds `pi` at the horizontal end and stays below `pi` at the
/// hyperbolic-like end; bisection on the sign change pins the crossing to
/// `|sum - pi| < 1e-6` (parameter tolerance `1e-8`).
pub fn find_pi_sum_triangle<T: Real>(a: T) -> SolResult<PiSumTriangle<T>> {
    if !(a > T::zero()) {
        return Err(SolError::InvalidParameter("edge parameter must be positive".into()));
    }
    let a1 = SolPoint::origin();
    let a2 = SolPoint::new(T::zero(), a, T::zero());
    let apex = |t: T| {
        SolPoint::new(
            a * (T::one() - t),
            T::zero(),
            a * t,
        )
    };
    let sum_at = |t: T| -> SolResult<TriangleAngles<T>> {
        geodesic_triangle_angles(&a1, &a2, &apex(t))
    };
    let lo_angles = sum_at(T::zero())?;
    let hi_angles = sum_at(T::one())?;
    if !(lo_angles.sum > T::PI()) || !(hi_angles.sum < T::PI()) {
        return Err(SolError::NoSignChange(format!(
            "angle sums {} and {} do not bracket pi",
            lo_angles.sum, hi_angles.sum
        )));
    }
    let mut lo = T::zero();
    let mut hi = T::one();
    let mut mid_angles = lo_angles;
    let mut mid = lo;
    for _ in 0..64 {
        mid = (lo + hi) / T::of(2.0);
        mid_angles = sum_at(mid)?;
        if mid_angles.sum > T::PI() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < T::of(1e-8) && (mid_angles.sum - T::PI()).abs() < T::of(1e-6) {
            break;
        }
    }
    Ok(PiSumTriangle {
        t: mid,
        apex: apex(mid),
        angles: mid_angles,
    })
}

/// Interior angle at `p` of the translation-like triangle `A1 P A2`: both
/// endpoints are pulled back to the origin by the inverse translation of
/// `p` and the angle between the two translation-curve tangents is
/// measured there.  This is the brute-force oracle behind the isoptic
/// surface equation.
pub fn translation_angle_at<T: Real>(
    p: &SolPoint<T>,
    a1: &SolPoint<T>,
    a2: &SolPoint<T>,
) -> SolResult<T> {
    if p.model_distance(a1) < T::of(1e-14) || p.model_distance(a2) < T::of(1e-14) {
        return Err(SolError::InvalidParameter(
            "angle vertex coincides with a segment endpoint".into(),
        ));
    }
    let to_origin = inverse_translation(p);
    let t1 = translation_tangent_at_origin(&to_origin.apply(a1))?;
    let t2 = translation_tangent_at_origin(&to_origin.apply(a2))?;
    angle_between(&t1, &t2)
}

/// One sampled triangle from [`scan_horizontal_like`].
#[derive(Clone, Copy, Debug)]
pub struct ScannedTriangle<T> {
    pub vertices: [SolPoint<T>; 3],
    pub sum: T,
}

/// Report of a random scan over triangles with all vertices in `z = 0`.
#[derive(Clone, Debug)]
pub struct ScanReport<T> {
    pub samples: usize,
    pub seed: u64,
    pub min: Option<ScannedTriangle<T>>,
    pub max: Option<ScannedTriangle<T>>,
    /// Triangles whose angle sum failed to exceed `pi`.
    pub counterexamples: Vec<ScannedTriangle<T>>,
}

impl<T> Default for ScanReport<T> {
    fn default() -> Self {
        Self {
            samples: 0,
            seed: 0,
            min: None,
            max: None,
            counterexamples: Vec::new(),
        }
    }
}

/// Samples `n` random triangles in the base plane `z = 0` and reports the
/// extremes of the interior angle sum.  Exploratory: the expectation that
/// every sum exceeds `pi` is unproven, so offenders are reported rather
/// than asserted away.
pub fn scan_horizontal_like<T: Real>(n: usize, seed: u64) -> ScanReport<T> {
    let mut report = ScanReport {
        samples: 0,
        seed,
        ..Default::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut produced = 0usize;
    let mut guard = 0usize;
    while produced < n && guard < 20 * n + 100 {
        guard += 1;
        let mut vs = [SolPoint::origin(); 3];
        for v in vs.iter_mut() {
            *v = SolPoint::new(
                T::of(rng.gen_range(-2.0..2.0)),
                T::of(rng.gen_range(-2.0..2.0)),
                T::zero(),
            );
        }
        let well_separated = (0..3).all(|i| {
            vs[i].model_distance(&vs[(i + 1) % 3]) > T::of(0.08)
        });
        if !well_separated {
            continue;
        }
        let Ok(angles) = geodesic_triangle_angles(&vs[0], &vs[1], &vs[2]) else {
            continue;
        };
        produced += 1;
        report.samples = produced;
        let tri = ScannedTriangle {
            vertices: vs,
            sum: angles.sum,
        };
        if report.min.map_or(true, |m| tri.sum < m.sum) {
            report.min = Some(tri);
        }
        if report.max.map_or(true, |m| tri.sum > m.sum) {
            report.max = Some(tri);
        }
        if tri.sum <= T::PI() {
            report.counterexamples.push(tri);
        }
    }
    report
}
