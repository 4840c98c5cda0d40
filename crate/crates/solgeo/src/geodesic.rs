//! Geodesics of Sol: closed-form families, numerical integration of the
//! general case, the two-point boundary value (shooting) solver and the
//! geodesic distance.
//!
//! All arcs start at the origin with unit speed; arbitrary start points are
//! handled by conjugating with translations.  The geodesic system is
//!
//! ```text
//! x'' = -2 x' z'
//! y'' =  2 y' z'
//! z'' = e^{2z} x'^2 - e^{-2z} y'^2
//! ```
//!
//! with the first integral `e^{2z} x'^2 + e^{-2z} y'^2 + z'^2 = 1`.

use crate::error::{SolError, SolResult};
use crate::ode::{integrate_dense, integrate_endpoint, DenseOutput};
use crate::scalar::Real;
use crate::sol::{inverse_translation, SolPoint, SolTangent};
use crate::translation::{x_tangent_factor, y_tangent_factor};

/// Coordinate tolerance for detecting the measure-zero closed-form families.
const FAMILY_TOL: f64 = 1e-12;

/// Initial direction of a unit-speed geodesic from the origin:
/// `u = cos(theta) cos(alpha)`, `v = cos(theta) sin(alpha)`,
/// `w = sin(theta)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeodesicInitial<T> {
    pub alpha: T,
    pub theta: T,
}

impl<T: Real> GeodesicInitial<T> {
    pub fn new(alpha: T, theta: T) -> Self {
        Self { alpha, theta }
    }

    pub fn from_uvw(u: T, v: T, w: T) -> Self {
        let alpha = if u == T::zero() && v == T::zero() {
            T::zero()
        } else {
            v.atan2(u)
        };
        Self {
            alpha,
            theta: w.max(-T::one()).min(T::one()).asin(),
        }
    }

    pub fn uvw(&self) -> [T; 3] {
        let (ct, st) = (self.theta.cos(), self.theta.sin());
        [ct * self.alpha.cos(), ct * self.alpha.sin(), st]
    }
}

/// The four kinds of geodesics through the origin.
///
/// `Plane` covers both in-plane families (`[y,z]` and `[x,z]`); the two are
/// exchanged by the stabilizer element swapping `x` and `y`.  `Horizontal`
/// is restricted to the diagonal directions `|u| == |v|`, the only
/// horizontal initial data whose straight line stays a unit-speed geodesic
/// through the origin; other `w == 0` directions immediately bend in `z` and
/// are integrated as `General`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeodesicFamily {
    Plane,
    Horizontal,
    Fiber,
    General,
}

fn classify<T: Real>(u: T, v: T, w: T) -> GeodesicFamily {
    let tol = T::of(FAMILY_TOL);
    let (au, av, aw) = (u.abs(), v.abs(), w.abs());
    if au <= tol && av <= tol {
        return GeodesicFamily::Fiber;
    }
    if au <= tol || av <= tol {
        return GeodesicFamily::Plane;
    }
    if aw <= tol && (au - av).abs() <= tol {
        return GeodesicFamily::Horizontal;
    }
    GeodesicFamily::General
}

fn geodesic_rhs<T: Real>(y: &[T; 6]) -> [T; 6] {
    let two = T::of(2.0);
    let e2z = (two * y[2]).exp();
    let em2z = (-two * y[2]).exp();
    [
        y[3],
        y[4],
        y[5],
        -two * y[3] * y[5],
        two * y[4] * y[5],
        e2z * y[3] * y[3] - em2z * y[4] * y[4],
    ]
}

/// A classified geodesic arc from the origin with a fixed length.
///
/// General-family arcs carry a cached dense ODE solution and are immutable
/// after construction.
#[derive(Clone, Debug)]
pub struct GeodesicArc<T> {
    pub family: GeodesicFamily,
    pub initial: GeodesicInitial<T>,
    pub length: T,
    dense: Option<DenseOutput<T, 6>>,
}

impl<T: Real> GeodesicArc<T> {
    /// Builds the arc, integrating the geodesic system once when no closed
    /// form applies (local tolerance `1e-12`).
    pub fn new(initial: GeodesicInitial<T>, length: T) -> Self {
        let [u, v, w] = initial.uvw();
        let family = classify(u, v, w);
        let dense = if family == GeodesicFamily::General {
            let tol = T::of(1e-12);
            Some(integrate_dense(
                geodesic_rhs,
                [T::zero(), T::zero(), T::zero(), u, v, w],
                length,
                tol,
                tol,
            ))
        } else {
            None
        };
        Self {
            family,
            initial,
            length,
            dense,
        }
    }

    /// Arc with initial velocity `vel` (not necessarily unit) traversed for
    /// unit time; the geodesic length is the Euclidean norm of `vel`.
    pub fn from_velocity(vel: [T; 3]) -> Self {
        let n = (vel[0] * vel[0] + vel[1] * vel[1] + vel[2] * vel[2]).sqrt();
        if n == T::zero() {
            return Self::new(GeodesicInitial::from_uvw(T::zero(), T::zero(), T::one()), T::zero());
        }
        Self::new(
            GeodesicInitial::from_uvw(vel[0] / n, vel[1] / n, vel[2] / n),
            n,
        )
    }

    fn check_range(&self, s: T) -> SolResult<T> {
        let slack = T::of(1e-9) * (T::one() + self.length);
        if s < -slack || s > self.length + slack {
            return Err(SolError::OutOfRange {
                value: s.as_f64(),
                max: self.length.as_f64(),
            });
        }
        Ok(s.max(T::zero()).min(self.length))
    }

    /// Point at arc length `s` from the origin.
    pub fn point(&self, s: T) -> SolResult<SolPoint<T>> {
        let s = self.check_range(s)?;
        let [u, v, w] = self.initial.uvw();
        Ok(match self.family {
            GeodesicFamily::Fiber => SolPoint::new(T::zero(), T::zero(), w.signum() * s),
            GeodesicFamily::Horizontal => SolPoint::new(u * s, v * s, T::zero()),
            GeodesicFamily::Plane => {
                if u.abs() <= v.abs() {
                    // [y,z] plane: y = v sinh s / D, z = -log D
                    let d = s.cosh() - w * s.sinh();
                    SolPoint::new(T::zero(), v * s.sinh() / d, -d.ln())
                } else {
                    // [x,z] plane, image of the [y,z] family under x<->y, z<->-z
                    let e = s.cosh() + w * s.sinh();
                    SolPoint::new(u * s.sinh() / e, T::zero(), e.ln())
                }
            }
            GeodesicFamily::General => {
                let y = self.dense.as_ref().expect("general arc has dense data").eval(s);
                SolPoint::new(y[0], y[1], y[2])
            }
        })
    }

    /// Velocity at arc length `s`, attached at `point(s)`.  Unit Riemannian
    /// norm up to integration error.
    pub fn tangent(&self, s: T) -> SolResult<SolTangent<T>> {
        let s = self.check_range(s)?;
        let [u, v, w] = self.initial.uvw();
        let base = self.point(s)?;
        Ok(match self.family {
            GeodesicFamily::Fiber => SolTangent::new(base, T::zero(), T::zero(), w.signum()),
            GeodesicFamily::Horizontal => SolTangent::new(base, u, v, T::zero()),
            GeodesicFamily::Plane => {
                if u.abs() <= v.abs() {
                    let d = s.cosh() - w * s.sinh();
                    SolTangent::new(
                        base,
                        T::zero(),
                        v / (d * d),
                        (w * s.cosh() - s.sinh()) / d,
                    )
                } else {
                    let e = s.cosh() + w * s.sinh();
                    SolTangent::new(
                        base,
                        u / (e * e),
                        T::zero(),
                        (s.sinh() + w * s.cosh()) / e,
                    )
                }
            }
            GeodesicFamily::General => {
                let y = self.dense.as_ref().expect("general arc has dense data").eval(s);
                SolTangent::new(base, y[3], y[4], y[5])
            }
        })
    }

    /// Endpoint of the arc.
    pub fn endpoint(&self) -> SolPoint<T> {
        self.point(self.length).expect("length is in range")
    }
}

/// Exponential map at the origin: endpoint of the geodesic with initial
/// velocity `vel` after unit time.
pub fn exp_map<T: Real>(vel: [T; 3], ode_tol: T) -> [T; 3] {
    let y = integrate_endpoint(
        geodesic_rhs,
        [T::zero(), T::zero(), T::zero(), vel[0], vel[1], vel[2]],
        T::one(),
        ode_tol,
        ode_tol,
    );
    [y[0], y[1], y[2]]
}

/// Tuning knobs for [`solve_geodesic_bvp_with`].
#[derive(Clone, Debug)]
pub struct BvpOptions<T> {
    /// Endpoint residual (model coordinates) below which a shot counts as
    /// converged.
    pub residual_tol: T,
    /// Local tolerance of the shooting integrations.
    pub ode_tol: T,
    /// Newton iteration cap per start.
    pub max_newton_iters: usize,
    /// Central difference step for the shooting Jacobian.
    pub fd_step: T,
    /// Whether deterministic perturbed starts run in addition to the
    /// translation-curve seed (catches shorter out-of-plane solutions).
    pub extra_starts: bool,
    /// Fallback grid resolution over the direction sphere.
    pub grid_alpha: usize,
    pub grid_theta: usize,
}

impl<T: Real> Default for BvpOptions<T> {
    fn default() -> Self {
        Self {
            residual_tol: T::of(1e-10),
            ode_tol: T::of(1e-12),
            max_newton_iters: 60,
            fd_step: T::of(1e-6),
            extra_starts: true,
            grid_alpha: 24,
            grid_theta: 12,
        }
    }
}

fn solve3<T: Real>(mut a: [[T; 3]; 3], mut b: [T; 3]) -> Option<[T; 3]> {
    for col in 0..3 {
        let mut piv = col;
        for row in col + 1..3 {
            if a[row][col].abs() > a[piv][col].abs() {
                piv = row;
            }
        }
        if a[piv][col].abs() < T::of(1e-300) {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] = a[row][k] - f * a[col][k];
            }
            b[row] = b[row] - f * b[col];
        }
    }
    let mut x = [T::zero(); 3];
    for col in (0..3).rev() {
        let mut acc = b[col];
        for k in col + 1..3 {
            acc = acc - a[col][k] * x[k];
        }
        x[col] = acc / a[col][col];
    }
    Some(x)
}

fn norm3<T: Real>(v: [T; 3]) -> T {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

struct Shot<T> {
    vel: [T; 3],
    residual: T,
}

fn newton_shoot<T: Real>(target: [T; 3], start: [T; 3], opts: &BvpOptions<T>) -> Shot<T> {
    let bail = (T::of(2.5) * (T::one() + norm3(start)) + T::of(8.0)).min(T::of(40.0));
    let f = |vel: [T; 3]| {
        if norm3(vel) > bail {
            // don't integrate hopeless candidates; a constant huge residual
            // makes the line search reject them
            return [T::of(1e9); 3];
        }
        let e = exp_map(vel, opts.ode_tol);
        [e[0] - target[0], e[1] - target[1], e[2] - target[2]]
    };
    let mut vel = start;
    let mut res = f(vel);
    let mut rn = norm3(res);
    for _ in 0..opts.max_newton_iters {
        if rn < opts.residual_tol || !rn.is_finite() {
            break;
        }
        let h = opts.fd_step;
        let mut jac = [[T::zero(); 3]; 3];
        for j in 0..3 {
            let mut vp = vel;
            let mut vm = vel;
            vp[j] = vp[j] + h;
            vm[j] = vm[j] - h;
            let rp = f(vp);
            let rm = f(vm);
            for i in 0..3 {
                jac[i][j] = (rp[i] - rm[i]) / (T::of(2.0) * h);
            }
        }
        let Some(step) = solve3(jac, [-res[0], -res[1], -res[2]]) else {
            break;
        };
        let mut lambda = T::one();
        let mut improved = false;
        for _ in 0..7 {
            let cand = [
                vel[0] + lambda * step[0],
                vel[1] + lambda * step[1],
                vel[2] + lambda * step[2],
            ];
            let rc = f(cand);
            let rcn = norm3(rc);
            if rcn.is_finite() && rcn < rn {
                vel = cand;
                res = rc;
                rn = rcn;
                improved = true;
                break;
            }
            lambda = lambda / T::of(2.0);
        }
        if !improved || norm3(vel) > bail {
            break;
        }
    }
    Shot { vel, residual: rn }
}

fn translation_seed<T: Real>(target: [T; 3]) -> [T; 3] {
    let [x, y, z] = target;
    [x * x_tangent_factor(z), y * y_tangent_factor(z), z]
}

fn rotate_direction<T: Real>(vel: [T; 3], dalpha: T, dtheta: T, scale: T) -> [T; 3] {
    let n = norm3(vel);
    if n == T::zero() {
        return vel;
    }
    let init = GeodesicInitial::from_uvw(vel[0] / n, vel[1] / n, vel[2] / n);
    let tilted = GeodesicInitial::new(init.alpha + dalpha, (init.theta + dtheta).max(T::of(-1.55)).min(T::of(1.55)));
    let [u, v, w] = tilted.uvw();
    let m = n * scale;
    [u * m, v * m, w * m]
}

/// Shooting solver without the closed-form fast paths; exposed so tests can
/// cross-check the fast paths against the general machinery.
pub fn solve_geodesic_bvp_shooting<T: Real>(
    target: &SolPoint<T>,
    opts: &BvpOptions<T>,
) -> SolResult<GeodesicArc<T>> {
    let tgt = target.to_array();
    let seed = translation_seed(tgt);
    let mut starts: Vec<[T; 3]> = vec![seed];
    if opts.extra_starts {
        let z = T::zero();
        for (da, dt, sc) in [
            (z, T::of(0.6), T::one()),
            (z, T::of(-0.6), T::one()),
            (z, T::of(1.2), T::of(0.85)),
            (z, T::of(-1.2), T::of(0.85)),
            (T::of(0.5), z, T::one()),
            (T::of(-0.5), z, T::one()),
            (z, T::of(0.6), T::of(0.75)),
            (z, T::of(-0.6), T::of(0.75)),
        ] {
            starts.push(rotate_direction(seed, da, dt, sc));
        }
    }
    let mut best_residual = T::infinity();
    let mut solutions: Vec<[T; 3]> = Vec::new();
    let absorb = |shot: Shot<T>, solutions: &mut Vec<[T; 3]>, best: &mut T| {
        if shot.residual < *best {
            *best = shot.residual;
        }
        if shot.residual < opts.residual_tol {
            let dup = solutions.iter().any(|s| {
                (s[0] - shot.vel[0]).abs().max((s[1] - shot.vel[1]).abs())
                    .max((s[2] - shot.vel[2]).abs())
                    < T::of(1e-7)
            });
            if !dup {
                solutions.push(shot.vel);
            }
        }
    };
    for start in &starts {
        absorb(newton_shoot(tgt, *start, opts), &mut solutions, &mut best_residual);
    }
    if solutions.is_empty() {
        // grid fallback over the direction sphere, seeded with the
        // translation arc length
        let t0 = norm3(seed).max(T::of(0.1));
        'grid: for ia in 0..opts.grid_alpha {
            for it in 0..opts.grid_theta {
                let alpha = -T::PI()
                    + T::of(2.0) * T::PI() * T::of(ia as f64 + 0.5) / T::of(opts.grid_alpha as f64);
                let theta = -T::FRAC_PI_2()
                    + T::PI() * T::of(it as f64 + 0.5) / T::of(opts.grid_theta as f64);
                let [u, v, w] = GeodesicInitial::new(alpha, theta).uvw();
                let start = [u * t0, v * t0, w * t0];
                absorb(newton_shoot(tgt, start, opts), &mut solutions, &mut best_residual);
                if solutions.len() >= 4 {
                    break 'grid;
                }
            }
        }
    }
    if solutions.is_empty() {
        return Err(SolError::BvpDivergence {
            residual: best_residual.as_f64(),
        });
    }
    // minimal length wins; exact ties broken deterministically by the
    // largest fiber component, then by the remaining components
    solutions.sort_by(|a, b| {
        let (la, lb) = (norm3(*a), norm3(*b));
        if (la - lb).abs() > T::of(1e-9) {
            la.partial_cmp(&lb).unwrap()
        } else {
            (b[2], b[1], b[0])
                .partial_cmp(&(a[2], a[1], a[0]))
                .unwrap()
        }
    });
    Ok(GeodesicArc::from_velocity(solutions[0]))
}

/// Solves the geodesic boundary value problem from the origin to `target`.
///
/// Targets on the coordinate planes through the origin, on the `z` axis or
/// on the horizontal diagonals are dispatched to exact closed-form inverses;
/// everything else runs damped-Newton shooting on the initial velocity,
/// seeded by the translation-curve inversion with a deterministic multistart
/// and a direction-grid fallback.  Among the solutions found, the shortest
/// is returned.
pub fn solve_geodesic_bvp_with<T: Real>(
    target: &SolPoint<T>,
    opts: &BvpOptions<T>,
) -> SolResult<GeodesicArc<T>> {
    if target.is_origin() {
        return Err(SolError::InvalidParameter(
            "bvp target must differ from the origin".into(),
        ));
    }
    let tol = T::of(FAMILY_TOL);
    let (ax, ay, az) = (target.x.abs(), target.y.abs(), target.z.abs());
    if ax <= tol && ay <= tol {
        let initial = GeodesicInitial::from_uvw(T::zero(), T::zero(), target.z.signum());
        return Ok(GeodesicArc::new(initial, az));
    }
    if ax <= tol {
        let (v, w, t) = solve_in_plane_yz(target.y, target.z);
        return Ok(GeodesicArc::new(GeodesicInitial::from_uvw(T::zero(), v, w), t));
    }
    if ay <= tol {
        let (u, w, t) = solve_in_plane_xz(target.x, target.z);
        return Ok(GeodesicArc::new(GeodesicInitial::from_uvw(u, T::zero(), w), t));
    }
    if az <= tol && (ax - ay).abs() <= tol {
        let len = (target.x * target.x + target.y * target.y).sqrt();
        let initial = GeodesicInitial::from_uvw(target.x / len, target.y / len, T::zero());
        return Ok(GeodesicArc::new(initial, len));
    }
    solve_geodesic_bvp_shooting(target, opts)
}

/// [`solve_geodesic_bvp_with`] under default options.
pub fn solve_geodesic_bvp<T: Real>(target: &SolPoint<T>) -> SolResult<GeodesicArc<T>> {
    solve_geodesic_bvp_with(target, &BvpOptions::default())
}

/// Geodesic distance: translates `p1` to the origin and measures the length
/// of the connecting arc found by the boundary value solver.
pub fn geodesic_distance<T: Real>(p1: &SolPoint<T>, p2: &SolPoint<T>) -> SolResult<T> {
    if p1 == p2 {
        return Ok(T::zero());
    }
    let q = inverse_translation(p1).apply(p2);
    if q.is_origin() {
        return Ok(T::zero());
    }
    Ok(solve_geodesic_bvp(&q)?.length)
}

/// Hyperbolic half-plane image of a point in a plane `y = const`:
/// `(x, e^{-z})`.  In-plane geodesics map to half-plane geodesics; used as
/// a verification oracle.
pub fn halfplane_map<T: Real>(p: &SolPoint<T>) -> (T, T) {
    (p.x, (-p.z).exp())
}

/// Distance in the hyperbolic upper half-plane,
/// `arccosh(1 + ((x1-x1')^2 + (x2-x2')^2) / (2 x2 x2'))`.
pub fn hyperbolic_halfplane_distance<T: Real>(a: (T, T), b: (T, T)) -> T {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    (T::one() + (dx * dx + dy * dy) / (T::of(2.0) * a.1 * b.1)).acosh()
}

/// Closed-form inverse for targets in the `[y,z]` plane.  The plane is a
/// hyperbolic half-plane under `(y, e^{z})`; the connecting geodesic there
/// is the circle through both images centred on the boundary.
/// Returns `(v, w, t)`.
pub(crate) fn solve_in_plane_yz<T: Real>(yt: T, zt: T) -> (T, T, T) {
    let x2 = zt.exp();
    let dy = yt;
    let dx2 = x2 - T::one();
    let t = (T::one() + (dy * dy + dx2 * dx2) / (T::of(2.0) * x2)).acosh();
    if yt == T::zero() {
        return (T::zero(), zt.signum(), zt.abs());
    }
    let m = (yt * yt + x2 * x2 - T::one()) / (T::of(2.0) * yt);
    let n = (T::one() + m * m).sqrt();
    let s = yt.signum();
    (s / n, s * m / n, t)
}

/// Closed-form inverse for targets in the `[x,z]` plane, obtained from the
/// `[y,z]` case through the stabilizer swap `x <-> y`, `z <-> -z`.
/// Returns `(u, w, t)`.
pub(crate) fn solve_in_plane_xz<T: Real>(xt: T, zt: T) -> (T, T, T) {
    let (v, w, t) = solve_in_plane_yz(xt, -zt);
    (v, -w, t)
}
