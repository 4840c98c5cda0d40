//! Coordinate model of Sol: points, tangents, the left-invariant metric,
//! the translation group and the stabilizer of the origin.
//!
//! Points live in the affine chart `(x, y, z)` of the projective model; the
//! homogeneous first coordinate is fixed to `1` and kept implicit.  The
//! metric is
//!
//! ```text
//! ds^2 = e^{2z} dx^2 + e^{-2z} dy^2 + dz^2
//! ```
//!
//! and isometries are concrete 4x4 matrices acting on homogeneous row
//! vectors `(1, x, y, z)` by right multiplication.

use crate::error::{SolError, SolResult};
use crate::scalar::Real;

/// A point of Sol in affine model coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolPoint<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> SolPoint<T> {
    #[inline]
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn origin() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    #[inline]
    pub fn is_origin(&self) -> bool {
        self.x == T::zero() && self.y == T::zero() && self.z == T::zero()
    }

    #[inline]
    pub fn to_array(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn from_array(a: [T; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    /// Euclidean distance in model coordinates (not the Sol distance); used
    /// for residual checks and point identity tolerances.
    #[inline]
    pub fn model_distance(&self, other: &Self) -> T {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// A tangent vector attached to a base point, components in model
/// coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolTangent<T> {
    pub base: SolPoint<T>,
    pub u: T,
    pub v: T,
    pub w: T,
}

impl<T: Real> SolTangent<T> {
    #[inline]
    pub fn new(base: SolPoint<T>, u: T, v: T, w: T) -> Self {
        Self { base, u, v, w }
    }

    #[inline]
    pub fn at_origin(u: T, v: T, w: T) -> Self {
        Self::new(SolPoint::origin(), u, v, w)
    }

    #[inline]
    pub fn components(&self) -> [T; 3] {
        [self.u, self.v, self.w]
    }

    /// Riemannian length measured by the metric at the base point.
    #[inline]
    pub fn riemannian_norm(&self) -> T {
        let g = metric_at(&self.base);
        g.norm(self.components())
    }
}

/// Diagonal metric tensor at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricTensor<T> {
    pub gxx: T,
    pub gyy: T,
    pub gzz: T,
}

impl<T: Real> MetricTensor<T> {
    #[inline]
    pub fn dot(&self, a: [T; 3], b: [T; 3]) -> T {
        self.gxx * a[0] * b[0] + self.gyy * a[1] * b[1] + self.gzz * a[2] * b[2]
    }

    #[inline]
    pub fn norm(&self, a: [T; 3]) -> T {
        self.dot(a, a).sqrt()
    }
}

/// Metric tensor at `p`: `diag(e^{2z}, e^{-2z}, 1)`.  Depends only on `p.z`,
/// and `gxx * gyy == 1` exactly up to rounding.
#[inline]
pub fn metric_at<T: Real>(p: &SolPoint<T>) -> MetricTensor<T> {
    let two = T::of(2.0);
    MetricTensor {
        gxx: (two * p.z).exp(),
        gyy: (-two * p.z).exp(),
        gzz: T::one(),
    }
}

/// An isometry of Sol as a 4x4 matrix acting on homogeneous row vectors
/// `(1, x, y, z)` by right multiplication.
#[derive(Clone, Debug, PartialEq)]
pub struct SolIsometry<T> {
    /// Row-major matrix entries.
    pub m: [[T; 4]; 4],
    /// Whether this is a left translation (first column `(1,0,0,0)^T`, linear
    /// part diagonal as in the group law).
    pub is_translation: bool,
}

impl<T: Real> SolIsometry<T> {
    pub fn identity() -> Self {
        let mut m = [[T::zero(); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = T::one();
        }
        Self {
            m,
            is_translation: true,
        }
    }

    /// Image of a point: `(1, x, y, z) * M`.
    pub fn apply(&self, p: &SolPoint<T>) -> SolPoint<T> {
        let row = [T::one(), p.x, p.y, p.z];
        let mut out = [T::zero(); 4];
        for (j, o) in out.iter_mut().enumerate() {
            *o = row[0] * self.m[0][j]
                + row[1] * self.m[1][j]
                + row[2] * self.m[2][j]
                + row[3] * self.m[3][j];
        }
        debug_assert!((out[0] - T::one()).abs() < T::of(1e-9));
        SolPoint::new(out[1], out[2], out[3])
    }

    /// Pushforward of a tangent vector: the lower-right 3x3 block applied to
    /// the components, based at the image of the base point.
    pub fn push(&self, t: &SolTangent<T>) -> SolTangent<T> {
        let v = t.components();
        let mut out = [T::zero(); 3];
        for (j, o) in out.iter_mut().enumerate() {
            *o = v[0] * self.m[1][j + 1] + v[1] * self.m[2][j + 1] + v[2] * self.m[3][j + 1];
        }
        SolTangent::new(self.apply(&t.base), out[0], out[1], out[2])
    }

    /// Composition `self` followed by `other` (row vector convention).
    pub fn then(&self, other: &Self) -> Self {
        let mut m = [[T::zero(); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = T::zero();
                for (k, col) in other.m.iter().enumerate() {
                    acc = acc + self.m[i][k] * col[j];
                }
                m[i][j] = acc;
            }
        }
        Self {
            m,
            is_translation: self.is_translation && other.is_translation,
        }
    }

    /// Max absolute entry difference, for closure and inverse tests.
    pub fn entrywise_distance(&self, other: &Self) -> T {
        let mut d = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                d = d.max((self.m[i][j] - other.m[i][j]).abs());
            }
        }
        d
    }
}

/// Left translation carrying the origin to `p`.
///
/// The matrix realizes the group law
/// `(a,b,c)(x,y,z) = (x + a e^{-z}, y + b e^{z}, z + c)`.
pub fn translation_to<T: Real>(p: &SolPoint<T>) -> SolIsometry<T> {
    let (o, l) = (T::zero(), T::one());
    let m = [
        [l, p.x, p.y, p.z],
        [o, (-p.z).exp(), o, o],
        [o, o, p.z.exp(), o],
        [o, o, o, l],
    ];
    SolIsometry {
        m,
        is_translation: true,
    }
}

/// Explicit inverse of [`translation_to`]; carries `p` back to the origin.
pub fn inverse_translation<T: Real>(p: &SolPoint<T>) -> SolIsometry<T> {
    let (o, l) = (T::zero(), T::one());
    let ez = p.z.exp();
    let emz = (-p.z).exp();
    let m = [
        [l, -p.x * ez, -p.y * emz, -p.z],
        [o, ez, o, o],
        [o, o, emz, o],
        [o, o, o, l],
    ];
    SolIsometry {
        m,
        is_translation: true,
    }
}

fn stabilizer_generator<T: Real>(b: [[f64; 3]; 3]) -> SolIsometry<T> {
    let mut m = [[T::zero(); 4]; 4];
    m[0][0] = T::one();
    for i in 0..3 {
        for j in 0..3 {
            m[i + 1][j + 1] = T::of(b[i][j]);
        }
    }
    SolIsometry {
        m,
        is_translation: false,
    }
}

/// The eight elements of the dihedral stabilizer of the origin, generated by
/// the reflections `y <-> -y` and `x <-> y, z <-> -z`.
///
/// The list is closed under composition and starts with the identity; the
/// remaining elements follow in breadth-first generation order.
pub fn stabilizer_elements<T: Real>() -> Vec<SolIsometry<T>> {
    let gen1 = stabilizer_generator::<T>([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]]);
    let gen2 = stabilizer_generator::<T>([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, -1.0]]);
    let mut elems: Vec<SolIsometry<T>> = vec![SolIsometry::identity()];
    elems[0].is_translation = false;
    let tol = T::of(1e-9);
    let mut frontier = vec![elems[0].clone()];
    while let Some(e) = frontier.pop() {
        for g in [&gen1, &gen2] {
            let prod = e.then(g);
            if !elems.iter().any(|k| k.entrywise_distance(&prod) < tol) {
                elems.push(prod.clone());
                frontier.push(prod);
            }
        }
    }
    debug_assert_eq!(elems.len(), 8);
    elems
}

/// Interior angle between two tangent vectors attached at the same base
/// point, measured with the metric there.  Returns a value in `[0, pi]`.
///
/// At the origin the metric is the identity, so the angle agrees with the
/// Euclidean one.
pub fn angle_between<T: Real>(t1: &SolTangent<T>, t2: &SolTangent<T>) -> SolResult<T> {
    debug_assert!(
        t1.base.model_distance(&t2.base) < T::of(1e-9),
        "angle_between requires a common base point"
    );
    let g = metric_at(&t1.base);
    let a = t1.components();
    let b = t2.components();
    let na = g.norm(a);
    let nb = g.norm(b);
    if !(na > T::zero()) || !(nb > T::zero()) {
        return Err(SolError::DegenerateTangent);
    }
    let c = (g.dot(a, b) / (na * nb)).max(-T::one()).min(T::one());
    Ok(c.acos())
}
