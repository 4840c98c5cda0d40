//! Translation-like isoptic surfaces of a segment symmetric about the
//! origin, the right-angle special case (the Thaloid), its comparison with
//! translation spheres, and the fiber-direction limit analysis that decides
//! whether the surface escapes to `z -> +/- infinity`.

use crate::error::{SolError, SolResult};
use crate::scalar::Real;
use crate::sol::{SolPoint, SolTangent};
use crate::translation::{antipodal_point, translation_distance, translation_point, DirectionParams};

/// Segment data: endpoint `A1 = (a, b, c)` with `A2` its antipode on the
/// translation curve through the origin, plus the viewing angle `alpha`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsopticSpec<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub alpha: T,
}

impl<T: Real> IsopticSpec<T> {
    pub fn new(a: T, b: T, c: T, alpha: T) -> SolResult<Self> {
        if a == T::zero() && b == T::zero() && c == T::zero() {
            return Err(SolError::InvalidParameter(
                "segment endpoint must differ from the origin".into(),
            ));
        }
        if !(alpha > T::zero() && alpha < T::PI()) {
            return Err(SolError::InvalidParameter(
                "angle must lie strictly between 0 and pi".into(),
            ));
        }
        Ok(Self { a, b, c, alpha })
    }

    pub fn endpoint1(&self) -> SolPoint<T> {
        SolPoint::new(self.a, self.b, self.c)
    }

    /// `A2 = (-a e^{c}, -b e^{-c}, -c)`.
    pub fn endpoint2(&self) -> SolPoint<T> {
        antipodal_point(&self.endpoint1())
    }
}

/// `s / (2 sinh(s/2))`, the prefactor of the pulled-back tangents; series
/// fallback for the removable singularity at `s = 0`.
#[inline]
fn sinh_prefactor<T: Real>(s: T) -> T {
    if s.abs() < T::of(1e-6) {
        T::one() - s * s / T::of(24.0)
    } else {
        s / (T::of(2.0) * (s / T::of(2.0)).sinh())
    }
}

fn endpoint_guard<T: Real>(spec: &IsopticSpec<T>, p: &SolPoint<T>) -> SolResult<()> {
    let scale = T::one() + p.model_distance(&SolPoint::origin());
    if p.model_distance(&spec.endpoint1()) < T::of(1e-12) * scale
        || p.model_distance(&spec.endpoint2()) < T::of(1e-12) * scale
    {
        return Err(SolError::EndpointExcluded);
    }
    Ok(())
}

/// Tangents at the origin of the translation curves from `P` to the two
/// segment endpoints, after translating `P` to the origin:
///
/// ```text
/// t1 = -(z-c)/(2 sinh((z-c)/2)) ((x-a) e^{(z+c)/2}, (y-b) e^{-(z+c)/2}, 2 sinh((z-c)/2))
/// t2 = -(z+c)/(2 sinh((z+c)/2)) ((x+a e^{c}) e^{(z-c)/2}, (y+b e^{-c}) e^{-(z-c)/2}, 2 sinh((z+c)/2))
/// ```
///
/// Each equals `translation_tangent_at_origin` applied to the
/// inverse-translation image of the endpoint; the closed form keeps the
/// removable singularities at `z = +/- c` finite.
pub fn isoptic_tangents<T: Real>(
    spec: &IsopticSpec<T>,
    p: &SolPoint<T>,
) -> SolResult<(SolTangent<T>, SolTangent<T>)> {
    endpoint_guard(spec, p)?;
    let (x, y, z) = (p.x, p.y, p.z);
    let (a, b, c) = (spec.a, spec.b, spec.c);
    let two = T::of(2.0);
    let l1 = sinh_prefactor(z - c);
    let t1 = SolTangent::at_origin(
        -l1 * (x - a) * ((z + c) / two).exp(),
        -l1 * (y - b) * (-(z + c) / two).exp(),
        c - z,
    );
    let l2 = sinh_prefactor(z + c);
    let t2 = SolTangent::at_origin(
        -l2 * (x + a * c.exp()) * ((z - c) / two).exp(),
        -l2 * (y + b * (-c).exp()) * (-(z - c) / two).exp(),
        -(z + c),
    );
    Ok((t1, t2))
}

/// Numerator of the closed-form viewing-angle quotient:
///
/// ```text
/// e^{z} (x + a e^{c})(x - a) + e^{-z} (y + b e^{-c})(y - b)
///   + 4 sinh((z+c)/2) sinh((z-c)/2)
/// ```
///
/// Its zero set is the Thaloid (the right-angle isoptic surface).
pub fn thaloid_value<T: Real>(spec: &IsopticSpec<T>, p: &SolPoint<T>) -> T {
    let (x, y, z) = (p.x, p.y, p.z);
    let (a, b, c) = (spec.a, spec.b, spec.c);
    let two = T::of(2.0);
    z.exp() * (x + a * c.exp()) * (x - a)
        + (-z).exp() * (y + b * (-c).exp()) * (y - b)
        + T::of(4.0) * ((z + c) / two).sinh() * ((z - c) / two).sinh()
}

fn quotient_denominator<T: Real>(spec: &IsopticSpec<T>, p: &SolPoint<T>) -> T {
    let (x, y, z) = (p.x, p.y, p.z);
    let (a, b, c) = (spec.a, spec.b, spec.c);
    let two = T::of(2.0);
    let s1 = ((z - c) / two).sinh();
    let s2 = ((z + c) / two).sinh();
    let d1 = (z + c).exp() * (x - a) * (x - a)
        + (-(z + c)).exp() * (y - b) * (y - b)
        + T::of(4.0) * s1 * s1;
    let d2 = (z - c).exp() * (x + a * c.exp()) * (x + a * c.exp())
        + (-(z - c)).exp() * (y + b * (-c).exp()) * (y + b * (-c).exp())
        + T::of(4.0) * s2 * s2;
    (d1 * d2).sqrt()
}

/// Implicit isoptic field: `cos(alpha) - Q(P)` where `Q` is the closed-form
/// cosine of the viewing angle of the segment from `P`.  Zeros are exactly
/// the `alpha`-isoptic surface.
pub fn isoptic_value<T: Real>(spec: &IsopticSpec<T>, p: &SolPoint<T>) -> SolResult<T> {
    endpoint_guard(spec, p)?;
    let den = quotient_denominator(spec, p);
    if den < T::of(1e-300) {
        return Err(SolError::DegenerateConfiguration);
    }
    Ok(spec.alpha.cos() - thaloid_value(spec, p) / den)
}

/// Fiber direction selector for the limit analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberDirection {
    /// `z -> +infinity`
    Positive,
    /// `z -> -infinity`
    Negative,
}

/// `(coef, exp-factor)` pair driving the limit function: `(a, e^{c})` for
/// the positive fiber, `(b, e^{-c})` for the negative one.
fn limit_parameters<T: Real>(spec: &IsopticSpec<T>, dir: FiberDirection) -> (T, T) {
    match dir {
        FiberDirection::Positive => (spec.a, spec.c.exp()),
        FiberDirection::Negative => (spec.b, (-spec.c).exp()),
    }
}

/// Pointwise limit of the viewing-angle cosine as `z` runs to the chosen
/// fiber end, as a function of the remaining transverse coordinate
/// (`x` for the positive direction, `y` for the negative one):
///
/// ```text
/// (x^2 + a(E-1)x + 1 - a^2 E) /
///   sqrt((a-x)^2 (aE+x)^2 + E^2 (a-x)^2 + E^{-2} (aE+x)^2 + 1),  E = e^{c}
/// ```
pub fn fiber_limit<T: Real>(spec: &IsopticSpec<T>, dir: FiberDirection, x: T) -> T {
    let (p, e) = limit_parameters(spec, dir);
    let num = x * x + p * (e - T::one()) * x + T::one() - p * p * e;
    let d1 = p - x;
    let d2 = p * e + x;
    let den = (d1 * d1 * d2 * d2 + e * e * d1 * d1 + d2 * d2 / (e * e) + T::one()).sqrt();
    num / den
}

/// Critical points of [`fiber_limit`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LimitExtrema<T> {
    /// Degenerate case (`c = 0` for the positive direction): single minimum.
    Single { x1: T },
    /// Two minima `x1`, `x3` flanking the maximum `x2`, where the limit
    /// function attains the value `1`.
    Triple { x1: T, x2: T, x3: T },
}

/// Closed-form extremum locations of the fiber limit function:
/// `x2 = aE/(E-1)` and `x_{1,3} = (aE +/- sqrt(a^2 E^2 + (E-1)^2))/(E-1)`,
/// collapsing to the single minimum `x1 = 0` when the exponential factor
/// degenerates.
pub fn limit_extrema<T: Real>(spec: &IsopticSpec<T>, dir: FiberDirection) -> LimitExtrema<T> {
    let (p, e) = limit_parameters(spec, dir);
    let d = e - T::one();
    if d.abs() < T::of(1e-12) {
        return LimitExtrema::Single { x1: T::zero() };
    }
    let r = (p * p * e * e + d * d).sqrt();
    LimitExtrema::Triple {
        x1: (p * e + r) / d,
        x2: p * e / d,
        x3: (p * e - r) / d,
    }
}

fn golden_minimize<T: Real>(f: impl Fn(T) -> T, mut lo: T, mut hi: T) -> T {
    let phi = T::of(0.618_033_988_749_894_8);
    let mut a = hi - phi * (hi - lo);
    let mut b = lo + phi * (hi - lo);
    let mut fa = f(a);
    let mut fb = f(b);
    for _ in 0..90 {
        if fa < fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - phi * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + phi * (hi - lo);
            fb = f(b);
        }
    }
    f((lo + hi) / T::of(2.0))
}

/// Printed closed-form infinity threshold for the positive fiber direction
/// with the stated sign rule (`-` for `a > 0`, `+` for `a < 0`); defined for
/// `c != 0`.  Kept for comparison against the numerically minimized
/// threshold, which is what the classifier trusts.
pub fn lemma_infinity_threshold<T: Real>(a: T, c: T) -> T {
    let e = c.exp();
    let sgn = if a > T::zero() { -T::one() } else { T::one() };
    let s = ((a * a + T::one()) * e * e - T::of(2.0) * e + T::one()).sqrt();
    let pre = e / s;
    let two = T::of(2.0);
    let four = T::of(4.0);
    let num = two - four * e
        + sgn * a * s
        + e * e * (two * a * a + two + sgn * a * s);
    let den = ((a * a + T::one()) * e.powi(6)
        + e * e * (a * a + T::of(3.0) + sgn * four * a * s)
        + e.powi(4) * (T::of(6.0) * a * a + T::of(3.0) + sgn * four * a * s)
        - two * e
        - four * e.powi(3)
        - two * e.powi(5)
        + T::one())
    .sqrt();
    pre * num / den
}

/// Surface classification kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    /// Bounded in both fiber directions (closedness in other directions is
    /// not certified, hence "candidate").
    ClosedCandidate,
    InfinitePositiveFiber,
    InfiniteNegativeFiber,
    InfiniteBoth,
}

/// Outcome of [`classify_surface`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceClassification<T> {
    pub kind: SurfaceKind,
    /// Absolute minimum of the limit function toward `z -> +inf`.
    pub threshold_pos: T,
    /// Absolute minimum of the limit function toward `z -> -inf`.
    pub threshold_neg: T,
    /// Printed closed-form threshold (positive direction), when defined.
    pub lemma_threshold_pos: Option<T>,
    /// Printed closed-form threshold (negative direction, by the mirror
    /// substitution), when defined.
    pub lemma_threshold_neg: Option<T>,
}

fn direction_threshold<T: Real>(spec: &IsopticSpec<T>, dir: FiberDirection) -> T {
    let f = |x: T| fiber_limit(spec, dir, x);
    match limit_extrema(spec, dir) {
        LimitExtrema::Single { x1 } => {
            let w = T::of(0.5);
            golden_minimize(f, x1 - w, x1 + w).min(f(x1))
        }
        LimitExtrema::Triple { x1, x3, .. } => {
            let mut best = T::infinity();
            for xi in [x1, x3] {
                let w = T::of(0.25) * (T::one() + xi.abs());
                best = best.min(golden_minimize(&f, xi - w, xi + w)).min(f(xi));
            }
            best
        }
    }
}

/// Decides along which fiber directions the isoptic surface is unbounded:
/// a direction is infinite exactly when `cos(alpha)` exceeds the absolute
/// minimum of the corresponding limit function.  The minima are evaluated
/// numerically (golden-section refinement around the closed-form critical
/// points) rather than trusting the printed threshold formula, which is
/// reported alongside for comparison.
pub fn classify_surface<T: Real>(spec: &IsopticSpec<T>) -> SurfaceClassification<T> {
    let threshold_pos = direction_threshold(spec, FiberDirection::Positive);
    let threshold_neg = direction_threshold(spec, FiberDirection::Negative);
    let ca = spec.alpha.cos();
    let kind = match (ca > threshold_pos, ca > threshold_neg) {
        (false, false) => SurfaceKind::ClosedCandidate,
        (true, false) => SurfaceKind::InfinitePositiveFiber,
        (false, true) => SurfaceKind::InfiniteNegativeFiber,
        (true, true) => SurfaceKind::InfiniteBoth,
    };
    let defined = spec.c.abs() > T::of(1e-12);
    SurfaceClassification {
        kind,
        threshold_pos,
        threshold_neg,
        lemma_threshold_pos: defined.then(|| lemma_infinity_threshold(spec.a, spec.c)),
        lemma_threshold_neg: defined.then(|| lemma_infinity_threshold(spec.b, -spec.c)),
    }
}

/// Largest gradient-normalized Thaloid residual over a sampled translation
/// sphere through the endpoints.
///
/// `R` is the translation distance from the origin to `A1`; the sphere is
/// sampled on a 64 x 32 direction grid through the curve parametrization,
/// and `|thaloid_value| / |grad thaloid_value|` (an approximate model-space
/// distance to the Thaloid) is maximized.  A strictly positive result
/// exhibits a sphere point away from the Thaloid, so the two surfaces
/// differ.
pub fn thaloid_sphere_deviation<T: Real>(spec: &IsopticSpec<T>) -> T {
    let radius = translation_distance(&SolPoint::origin(), &spec.endpoint1());
    let (nphi, ntheta) = (64usize, 32usize);
    let h = T::of(1e-6);
    let mut worst = T::zero();
    for i in 0..nphi {
        let phi = -T::PI() + T::of(2.0) * T::PI() * T::of(i as f64 + 0.5) / T::of(nphi as f64);
        for j in 0..ntheta {
            let theta =
                -T::FRAC_PI_2() + T::PI() * T::of(j as f64 + 0.5) / T::of(ntheta as f64);
            let p = translation_point(&DirectionParams::new(phi, theta, radius));
            let v = thaloid_value(spec, &p).abs();
            let gx = thaloid_value(spec, &SolPoint::new(p.x + h, p.y, p.z))
                - thaloid_value(spec, &SolPoint::new(p.x - h, p.y, p.z));
            let gy = thaloid_value(spec, &SolPoint::new(p.x, p.y + h, p.z))
                - thaloid_value(spec, &SolPoint::new(p.x, p.y - h, p.z));
            let gz = thaloid_value(spec, &SolPoint::new(p.x, p.y, p.z + h))
                - thaloid_value(spec, &SolPoint::new(p.x, p.y, p.z - h));
            let grad = (gx * gx + gy * gy + gz * gz).sqrt() / (T::of(2.0) * h);
            let normalized = v / grad.max(T::of(1e-12));
            if normalized > worst {
                worst = normalized;
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sol::{angle_between, inverse_translation};
    use crate::translation::translation_tangent_at_origin;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const PI: f64 = std::f64::consts::PI;

    fn spec(a: f64, b: f64, c: f64, alpha: f64) -> IsopticSpec<f64> {
        IsopticSpec::new(a, b, c, alpha).unwrap()
    }

    fn random_spec(r: &mut ChaCha8Rng) -> IsopticSpec<f64> {
        loop {
            let a = r.gen_range(-1.2..1.2);
            let b = r.gen_range(-1.2..1.2);
            let c = r.gen_range(-1.2..1.2);
            if a * a + b * b + c * c < 0.05 {
                continue;
            }
            return spec(a, b, c, r.gen_range(0.4..PI - 0.4));
        }
    }

    #[test]
    fn spec_validation() {
        assert!(IsopticSpec::new(0.0, 0.0, 0.0, 1.0).is_err());
        assert!(IsopticSpec::new(1.0, 0.0, 0.0, 0.0).is_err());
        assert!(IsopticSpec::new(1.0, 0.0, 0.0, PI).is_err());
        let s = spec(1.0, 0.5, -0.5, 1.0);
        let a2 = s.endpoint2();
        let expect = SolPoint::new(-1.0 * (-0.5f64).exp(), -0.5 * (0.5f64).exp(), 0.5);
        assert!(a2.model_distance(&expect) < 1e-15);
    }

    #[test]
    fn fiber_segment_seen_from_between_spans_pi() {
        let s = spec(0.0, 0.0, 1.0, PI / 2.0);
        let (t1, t2) = isoptic_tangents(&s, &SolPoint::new(1e-9, 0.0, 0.0)).unwrap();
        assert!(t1.w > 0.0 && t2.w < 0.0);
        let ang = angle_between(&t1, &t2).unwrap();
        assert!((ang - PI).abs() < 1e-6);
    }

    #[test]
    fn tangents_match_compositional_route() {
        let mut r = ChaCha8Rng::seed_from_u64(31);
        let mut checked = 0;
        while checked < 400 {
            let s = random_spec(&mut r);
            let p = SolPoint::new(
                r.gen_range(-2.5..2.5),
                r.gen_range(-2.5..2.5),
                r.gen_range(-2.0..2.0),
            );
            if p.model_distance(&s.endpoint1()) < 1e-2 || p.model_distance(&s.endpoint2()) < 1e-2 {
                continue;
            }
            let (t1, t2) = isoptic_tangents(&s, &p).unwrap();
            let pull = inverse_translation(&p);
            let o1 = translation_tangent_at_origin(&pull.apply(&s.endpoint1())).unwrap();
            let o2 = translation_tangent_at_origin(&pull.apply(&s.endpoint2())).unwrap();
            for (got, want) in [(t1, o1), (t2, o2)] {
                for (g, w) in got.components().iter().zip(want.components()) {
                    assert!((g - w).abs() < 1e-10, "{g} vs {w}");
                }
            }
            checked += 1;
        }
    }

    #[test]
    fn tangent_prefactor_finite_across_z_equals_c() {
        let s = spec(0.7, -0.3, 0.9, 1.2);
        let below = isoptic_tangents(&s, &SolPoint::new(1.5, 0.4, 0.9 - 1e-9)).unwrap();
        let above = isoptic_tangents(&s, &SolPoint::new(1.5, 0.4, 0.9 + 1e-9)).unwrap();
        for (a, b) in below.0.components().iter().zip(above.0.components()) {
            assert!((a - b).abs() < 1e-6);
        }
    }

    #[test]
    fn endpoints_are_excluded() {
        let s = spec(0.4, 0.2, 0.6, 1.0);
        assert_eq!(
            isoptic_tangents(&s, &s.endpoint1()),
            Err(SolError::EndpointExcluded)
        );
        assert_eq!(
            isoptic_value(&s, &s.endpoint2()),
            Err(SolError::EndpointExcluded)
        );
    }

    #[test]
    fn thaloid_membership_examples() {
        // right-angle surface of a fiber segment passes through
        // (2 sinh(c/2), 0, 0)
        for c in [0.5, 1.0, 1.6] {
            let s = spec(0.0, 0.0, c, PI / 2.0);
            let p = SolPoint::new(2.0 * (c / 2.0).sinh(), 0.0, 0.0);
            assert!(thaloid_value(&s, &p).abs() < 1e-12);
            assert!(isoptic_value(&s, &p).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn thaloid_base_plane_case_matches_quadratic_form() {
        let s = spec(0.8, -0.6, 0.0, PI / 2.0);
        let mut r = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..200 {
            let p = SolPoint::new(
                r.gen_range(-2.0..2.0),
                r.gen_range(-2.0..2.0),
                r.gen_range(-1.5..1.5f64),
            );
            let direct = thaloid_value(&s, &p);
            let zh = (p.z / 2.0).sinh();
            let expected = p.z.exp() * (p.x * p.x - 0.64)
                + (-p.z).exp() * (p.y * p.y - 0.36)
                + 4.0 * zh * zh;
            assert!((direct - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn endpoints_lie_on_the_thaloid_closure() {
        let mut r = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..100 {
            let s = random_spec(&mut r);
            assert!(thaloid_value(&s, &s.endpoint1()).abs() < 1e-12);
            assert!(thaloid_value(&s, &s.endpoint2()).abs() < 1e-12);
        }
    }

    #[test]
    fn thaloid_symmetries_follow_the_invariance_rules() {
        let mut r = ChaCha8Rng::seed_from_u64(34);
        let flip_y = |p: &SolPoint<f64>| SolPoint::new(p.x, -p.y, p.z);
        let swap = |p: &SolPoint<f64>| SolPoint::new(p.y, p.x, -p.z);
        for _ in 0..100 {
            let p = SolPoint::new(
                r.gen_range(-2.0..2.0),
                r.gen_range(-2.0..2.0),
                r.gen_range(-1.5..1.5),
            );
            // y-mirror invariance for b = 0 and for c = 0
            let s1 = spec(0.9, 0.0, 0.7, PI / 2.0);
            assert!((thaloid_value(&s1, &p) - thaloid_value(&s1, &flip_y(&p))).abs() < 1e-12);
            let s2 = spec(0.9, 0.4, 0.0, PI / 2.0);
            assert!((thaloid_value(&s2, &p) - thaloid_value(&s2, &flip_y(&p))).abs() < 1e-12);
            // swap invariance for c = 0 with a = +/- b
            let s3 = spec(1.0, 1.0, 0.0, PI / 2.0);
            assert!((thaloid_value(&s3, &p) - thaloid_value(&s3, &swap(&p))).abs() < 1e-12);
            let s4 = spec(1.0, -1.0, 0.0, PI / 2.0);
            assert!((thaloid_value(&s4, &p) - thaloid_value(&s4, &swap(&p))).abs() < 1e-12);
            // swap invariance for a = b = 0 (fiber segment)
            let s5 = spec(0.0, 0.0, 1.0, PI / 2.0);
            assert!((thaloid_value(&s5, &p) - thaloid_value(&s5, &swap(&p))).abs() < 1e-12);
            // and a case that must NOT be invariant under the y-mirror
            let s6 = spec(0.3, 0.8, 0.9, PI / 2.0);
            let q = SolPoint::new(0.7, 1.1, 0.4);
            assert!((thaloid_value(&s6, &q) - thaloid_value(&s6, &flip_y(&q))).abs() > 1e-6);
        }
    }

    #[test]
    fn deviation_demonstrates_thaloid_is_no_sphere() {
        let s = spec(0.0, 0.0, 1.0, PI / 2.0);
        let dev = thaloid_sphere_deviation(&s);
        assert!(dev > 1e-3, "deviation {dev}");
    }

    #[test]
    fn fiber_limit_anchors() {
        // c = 0: single minimum (1 - a^2)/(1 + a^2) at x = 0
        let s = spec(0.8, 0.1, 0.0, 1.0);
        let expect = (1.0 - 0.64) / (1.0 + 0.64);
        assert!((fiber_limit(&s, FiberDirection::Positive, 0.0) - expect).abs() < 1e-14);
        match limit_extrema(&s, FiberDirection::Positive) {
            LimitExtrema::Single { x1 } => assert_eq!(x1, 0.0),
            other => panic!("expected single extremum, got {other:?}"),
        }

        // c != 0: value exactly 1 at the interior maximum
        let s = spec(0.6, 0.4, 1.0, 1.0);
        match limit_extrema(&s, FiberDirection::Positive) {
            LimitExtrema::Triple { x1, x2, x3 } => {
                assert!((fiber_limit(&s, FiberDirection::Positive, x2) - 1.0).abs() < 1e-12);
                // central differences certify min / max roles
                let h = 1e-5;
                for xm in [x1, x3] {
                    let f0 = fiber_limit(&s, FiberDirection::Positive, xm);
                    assert!(fiber_limit(&s, FiberDirection::Positive, xm - h) > f0);
                    assert!(fiber_limit(&s, FiberDirection::Positive, xm + h) > f0);
                }
                let f2 = fiber_limit(&s, FiberDirection::Positive, x2);
                assert!(fiber_limit(&s, FiberDirection::Positive, x2 - h) < f2);
                assert!(fiber_limit(&s, FiberDirection::Positive, x2 + h) < f2);
            }
            other => panic!("expected triple extrema, got {other:?}"),
        }

        // a = 0, c = 1: minima at exactly +/- 1
        let s = spec(0.0, 0.3, 1.0, 1.0);
        match limit_extrema(&s, FiberDirection::Positive) {
            LimitExtrema::Triple { x1, x3, .. } => {
                assert!((x1 - 1.0).abs() < 1e-12);
                assert!((x3 + 1.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }

        // limits at +/- infinity are 1
        let s = spec(0.6, 0.4, 1.0, 1.0);
        for x in [1e6, -1e6] {
            assert!((fiber_limit(&s, FiberDirection::Positive, x) - 1.0).abs() < 1e-5);
        }
    }

    #[test]
    fn printed_threshold_matches_numeric_minimum() {
        for (a, c) in [(0.6, 1.0), (1.0, 0.5), (-0.7, 0.8), (0.5, -0.6), (2.0, 1.0)] {
            let s = spec(a, 0.3, c, 1.0);
            let numeric = direction_threshold(&s, FiberDirection::Positive);
            let printed = lemma_infinity_threshold(a, c);
            assert!(
                (numeric - printed).abs() < 1e-9,
                "a={a} c={c}: {numeric} vs {printed}"
            );
        }
    }

    #[test]
    fn classification_examples() {
        // closed right-angle surface of a fiber segment
        let s = spec(0.0, 0.0, 1.6, PI / 2.0);
        let cl = classify_surface(&s);
        assert_eq!(cl.kind, SurfaceKind::ClosedCandidate);
        // threshold equals 1/cosh(c) for a fiber segment
        assert!((cl.threshold_pos - 1.0 / 1.6f64.cosh()).abs() < 1e-9);
        assert!((cl.threshold_neg - 1.0 / 1.6f64.cosh()).abs() < 1e-9);

        // the skewed segment viewed under pi/3 escapes along a fiber
        let s = spec(0.6, 0.4, 1.0, PI / 3.0);
        let cl = classify_surface(&s);
        assert!(matches!(
            cl.kind,
            SurfaceKind::InfinitePositiveFiber | SurfaceKind::InfiniteBoth
        ));
        assert!(cl.threshold_pos < 0.5);
        assert!(cl.lemma_threshold_pos.is_some());

        // near-straight viewing angles close generic small segments
        let s = spec(0.4, 0.3, 0.2, PI - 0.05);
        assert_eq!(classify_surface(&s).kind, SurfaceKind::ClosedCandidate);
    }

    #[test]
    fn quotient_matches_tangent_angle() {
        let mut r = ChaCha8Rng::seed_from_u64(35);
        let mut checked = 0;
        while checked < 300 {
            let s = random_spec(&mut r);
            let p = SolPoint::new(
                r.gen_range(-2.5..2.5),
                r.gen_range(-2.5..2.5),
                r.gen_range(-2.0..2.0),
            );
            if p.model_distance(&s.endpoint1()) < 1e-2 || p.model_distance(&s.endpoint2()) < 1e-2 {
                continue;
            }
            let (t1, t2) = isoptic_tangents(&s, &p).unwrap();
            let ang = angle_between(&t1, &t2).unwrap();
            let value = isoptic_value(&s, &p).unwrap();
            let q = s.alpha.cos() - value;
            assert!((q - ang.cos()).abs() < 1e-9, "quotient vs tangent angle");
            checked += 1;
        }
    }
}
