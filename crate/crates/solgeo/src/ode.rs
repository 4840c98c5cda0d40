//! Adaptive embedded Runge-Kutta integration with dense output.
//!
//! A plain Dormand-Prince 5(4) pair with PI-free step control; accepted
//! steps are stored together with their derivatives so intermediate states
//! can be recovered by cubic Hermite interpolation.  Tolerances are set one
//! order tighter than anything the geodesic tests assert against.
//!
//! Blow-ups are tolerated rather than reported: once the state stops being
//! finite or the step budget is exhausted, integration stops and the last
//! state is returned.  Callers doing root finding treat such endpoints as
//! huge residuals, which is exactly what a diverging shot should look like.

use crate::scalar::Real;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// b - b*: error estimator weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Hard cap on accepted plus rejected steps per integration.
const MAX_STEPS: usize = 400_000;

/// Dense solution of an initial value problem on `[0, t_end]`.
#[derive(Clone, Debug)]
pub struct DenseOutput<T, const N: usize> {
    ts: Vec<T>,
    ys: Vec<[T; N]>,
    fs: Vec<[T; N]>,
}

impl<T: Real, const N: usize> DenseOutput<T, N> {
    pub fn t_end(&self) -> T {
        *self.ts.last().expect("nonempty solution")
    }

    #[allow(dead_code)]
    pub fn end_state(&self) -> [T; N] {
        *self.ys.last().expect("nonempty solution")
    }

    /// State at time `t`, cubic Hermite interpolation on the accepted step
    /// containing `t`.  `t` is clamped to `[0, t_end]`.
    pub fn eval(&self, t: T) -> [T; N] {
        let t = t.max(T::zero()).min(self.t_end());
        if self.ts.len() == 1 {
            return self.ys[0];
        }
        // binary search for the step interval
        let mut lo = 0usize;
        let mut hi = self.ts.len() - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.ts[mid] <= t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let h = self.ts[hi] - self.ts[lo];
        if h == T::zero() {
            return self.ys[lo];
        }
        let s = (t - self.ts[lo]) / h;
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = T::of(2.0) * s3 - T::of(3.0) * s2 + T::one();
        let h10 = s3 - T::of(2.0) * s2 + s;
        let h01 = -T::of(2.0) * s3 + T::of(3.0) * s2;
        let h11 = s3 - s2;
        let mut out = [T::zero(); N];
        for i in 0..N {
            out[i] = h00 * self.ys[lo][i]
                + h10 * h * self.fs[lo][i]
                + h01 * self.ys[hi][i]
                + h11 * h * self.fs[hi][i];
        }
        out
    }
}

fn error_norm<T: Real, const N: usize>(
    err: &[T; N],
    y0: &[T; N],
    y1: &[T; N],
    atol: T,
    rtol: T,
) -> T {
    let mut acc = T::zero();
    for i in 0..N {
        let scale = atol + rtol * y0[i].abs().max(y1[i].abs());
        let e = err[i] / scale;
        acc = acc + e * e;
    }
    (acc / T::of(N as f64)).sqrt()
}

fn finite<T: Real, const N: usize>(y: &[T; N]) -> bool {
    y.iter().all(|v| v.is_finite())
}

struct Stepper<T, const N: usize, F> {
    f: F,
    t: T,
    y: [T; N],
    k1: [T; N],
    h: T,
    hmin: T,
    t_end: T,
    atol: T,
    rtol: T,
    steps: usize,
}

impl<T: Real, const N: usize, F: Fn(&[T; N]) -> [T; N]> Stepper<T, N, F> {
    fn new(f: F, y0: [T; N], t_end: T, rtol: T, atol: T) -> Self {
        let k1 = f(&y0);
        Self {
            f,
            t: T::zero(),
            y: y0,
            k1,
            h: (t_end * T::of(1e-3)).min(T::of(1e-2)).max(T::of(1e-10)),
            hmin: t_end * T::of(1e-14),
            t_end,
            atol,
            rtol,
            steps: 0,
        }
    }

    /// Advances one accepted step.  Returns `false` when the interval is
    /// finished or the integration cannot continue (non-finite state or
    /// step budget exhausted).
    fn advance(&mut self) -> bool {
        loop {
            if self.t >= self.t_end || self.steps >= MAX_STEPS || !finite(&self.y) {
                return false;
            }
            self.steps += 1;
            if self.t + self.h > self.t_end {
                self.h = self.t_end - self.t;
            }
            let (y_new, err, k7) = dopri5_step(&self.f, &self.y, &self.k1, self.h);
            let en = error_norm(&err, &self.y, &y_new, self.atol, self.rtol);
            let forced = self.h <= self.hmin;
            let accept = (en <= T::one() && finite(&y_new)) || forced;
            let factor = if !en.is_finite() {
                T::of(0.2)
            } else if en > T::zero() {
                (T::of(0.9) * en.powf(T::of(-0.2)))
                    .max(T::of(0.2))
                    .min(T::of(5.0))
            } else {
                T::of(5.0)
            };
            if accept {
                self.t = self.t + self.h;
                self.y = y_new;
                self.k1 = k7; // first-same-as-last
                self.h = (self.h * factor).max(self.hmin);
                return true;
            }
            self.h = (self.h * factor).max(self.hmin);
        }
    }
}

/// Integrates `dy/dt = f(y)` (autonomous) from `y0` over `[0, t_end]`,
/// keeping every accepted step for dense evaluation.
pub fn integrate_dense<T: Real, const N: usize>(
    f: impl Fn(&[T; N]) -> [T; N],
    y0: [T; N],
    t_end: T,
    rtol: T,
    atol: T,
) -> DenseOutput<T, N> {
    let mut ts = vec![T::zero()];
    let mut ys = vec![y0];
    let k1 = f(&y0);
    let mut fs = vec![k1];
    if t_end <= T::zero() {
        return DenseOutput { ts, ys, fs };
    }
    let mut stepper = Stepper::new(f, y0, t_end, rtol, atol);
    while stepper.advance() {
        ts.push(stepper.t);
        ys.push(stepper.y);
        fs.push(stepper.k1);
    }
    DenseOutput { ts, ys, fs }
}

/// Endpoint-only variant of [`integrate_dense`]; avoids storing the path.
pub fn integrate_endpoint<T: Real, const N: usize>(
    f: impl Fn(&[T; N]) -> [T; N],
    y0: [T; N],
    t_end: T,
    rtol: T,
    atol: T,
) -> [T; N] {
    if t_end <= T::zero() {
        return y0;
    }
    let mut stepper = Stepper::new(f, y0, t_end, rtol, atol);
    while stepper.advance() {}
    stepper.y
}

#[allow(clippy::type_complexity)]
fn dopri5_step<T: Real, const N: usize>(
    f: &impl Fn(&[T; N]) -> [T; N],
    y: &[T; N],
    k1: &[T; N],
    h: T,
) -> ([T; N], [T; N], [T; N]) {
    let c = T::of;
    let mut tmp = [T::zero(); N];

    for i in 0..N {
        tmp[i] = y[i] + h * c(A21) * k1[i];
    }
    let k2 = f(&tmp);
    for i in 0..N {
        tmp[i] = y[i] + h * (c(A31) * k1[i] + c(A32) * k2[i]);
    }
    let k3 = f(&tmp);
    for i in 0..N {
        tmp[i] = y[i] + h * (c(A41) * k1[i] + c(A42) * k2[i] + c(A43) * k3[i]);
    }
    let k4 = f(&tmp);
    for i in 0..N {
        tmp[i] = y[i] + h * (c(A51) * k1[i] + c(A52) * k2[i] + c(A53) * k3[i] + c(A54) * k4[i]);
    }
    let k5 = f(&tmp);
    for i in 0..N {
        tmp[i] = y[i]
            + h * (c(A61) * k1[i] + c(A62) * k2[i] + c(A63) * k3[i] + c(A64) * k4[i]
                + c(A65) * k5[i]);
    }
    let k6 = f(&tmp);
    let mut y_new = [T::zero(); N];
    for i in 0..N {
        y_new[i] = y[i]
            + h * (c(B1) * k1[i] + c(B3) * k3[i] + c(B4) * k4[i] + c(B5) * k5[i] + c(B6) * k6[i]);
    }
    let k7 = f(&y_new);
    let mut err = [T::zero(); N];
    for i in 0..N {
        err[i] = h
            * (c(E1) * k1[i] + c(E3) * k3[i] + c(E4) * k4[i] + c(E5) * k5[i] + c(E6) * k6[i]
                + c(E7) * k7[i]);
    }
    (y_new, err, k7)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay_matches_closed_form() {
        let sol = integrate_dense(|y: &[f64; 1]| [-y[0]], [1.0], 5.0, 1e-12, 1e-12);
        for k in 0..=50 {
            let t = 0.1 * k as f64;
            let got = sol.eval(t)[0];
            assert!((got - (-t).exp()).abs() < 1e-9, "t={t}: {got}");
        }
    }

    #[test]
    fn harmonic_oscillator_dense_output() {
        let sol = integrate_dense(
            |y: &[f64; 2]| [y[1], -y[0]],
            [1.0, 0.0],
            10.0,
            1e-12,
            1e-12,
        );
        for k in 0..=100 {
            let t = 0.1 * k as f64;
            let s = sol.eval(t);
            assert!((s[0] - t.cos()).abs() < 1e-9);
            assert!((s[1] + t.sin()).abs() < 1e-9);
        }
        let endpoint =
            integrate_endpoint(|y: &[f64; 2]| [y[1], -y[0]], [1.0, 0.0], 10.0, 1e-12, 1e-12);
        assert!((endpoint[0] - sol.end_state()[0]).abs() < 1e-13);
    }

    #[test]
    fn zero_length_interval() {
        let sol = integrate_dense(|y: &[f64; 1]| [y[0]], [2.0], 0.0, 1e-12, 1e-12);
        assert_eq!(sol.eval(0.0)[0], 2.0);
        assert_eq!(sol.t_end(), 0.0);
    }

    #[test]
    fn blow_up_terminates_instead_of_hanging() {
        // y' = y^2 from y(0) = 1 blows up at t = 1; the integration must
        // stop on its own and yield a non-finite or huge state
        let end = integrate_endpoint(|y: &[f64; 1]| [y[0] * y[0]], [1.0], 2.0, 1e-12, 1e-12);
        assert!(!end[0].is_finite() || end[0] > 1e100);
    }
}
