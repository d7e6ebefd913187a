//! Globally adaptive 7/15-point Gauss–Kronrod quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

/// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-15,
            max_subdivisions: 4000,
        }
    }
}

impl QuadratureOptions {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

impl std::ops::Add for Integral {
    type Output = Integral;
    fn add(self, rhs: Integral) -> Integral {
        Integral {
            value: self.value + rhs.value,
            error: self.error + rhs.error,
            evaluations: self.evaluations + rhs.evaluations,
        }
    }
}

impl Integral {
    pub fn zero() -> Self {
        Integral {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    magnitude: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut magnitude = fc.abs() * WGK[7];
    for i in 0..7 {
        let dx = half * XGK[i];
        let (f1, f2) = (f(center - dx), f(center + dx));
        kronrod += WGK[i] * (f1 + f2);
        magnitude += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f1 + f2);
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
        magnitude: magnitude * half.abs(),
    }
}

/// Integrates `f` over `[a, b]`, bisecting the segment with the largest
/// error estimate until the total error meets the tolerance.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, opts: &QuadratureOptions) -> Result<Integral> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "finite limits required, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(Integral::zero());
    }
    let mut heap = BinaryHeap::new();
    let first = gk15(&mut f, a, b);
    let mut evaluations = 15;
    let (mut value, mut error, mut magnitude) = (first.value, first.error, first.magnitude);
    heap.push(first);
    loop {
        let target = opts
            .abs_tol
            .max(opts.rel_tol * value.abs())
            .max(50.0 * f64::EPSILON * magnitude);
        if !value.is_finite() {
            return Err(Error::Quadrature {
                estimate: value,
                error,
                evaluations,
            });
        }
        if error <= target {
            return Ok(Integral {
                value,
                error,
                evaluations,
            });
        }
        if heap.len() >= opts.max_subdivisions {
            return Err(Error::Quadrature {
                estimate: value,
                error,
                evaluations,
            });
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // segment can no longer be split in floating point
            return Err(Error::Quadrature {
                estimate: value,
                error,
                evaluations,
            });
        }
        let left = gk15(&mut f, worst.a, mid);
        let right = gk15(&mut f, mid, worst.b);
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        magnitude += left.magnitude + right.magnitude - worst.magnitude;
        heap.push(left);
        heap.push(right);
        // re-sum occasionally drifts; recompute from the segments
        if heap.len() % 64 == 0 {
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
            magnitude = heap.iter().map(|s| s.magnitude).sum();
        }
    }
}

/// Integrates `f` over `[a, inf)` through `x = a + u/(1-u)`.
pub fn integrate_to_infinity<F: FnMut(f64) -> f64>(mut f: F, a: f64, opts: &QuadratureOptions) -> Result<Integral> {
    integrate(
        |u| {
            if u >= 1.0 {
                return 0.0;
            }
            let w = 1.0 - u;
            let y = f(a + u / w);
            if y == 0.0 {
                0.0
            } else {
                y / (w * w)
            }
        },
        0.0,
        1.0,
        opts,
    )
}

/// Integrates over consecutive breakpoints, splitting each piece longer than
/// its left scale into geometrically growing parts so that features near
/// the left end are resolved.
pub fn integrate_piecewise<F: FnMut(f64) -> f64>(
    mut f: F,
    breakpoints: &[f64],
    opts: &QuadratureOptions,
) -> Result<Integral> {
    let mut total = Integral::zero();
    for pair in breakpoints.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if b <= a {
            continue;
        }
        let mut step = (b - a).min(a.abs().max(1.0));
        let mut lo = a;
        while lo < b {
            let hi = if lo + 2.0 * step >= b { b } else { lo + step };
            total = total + integrate(&mut f, lo, hi, opts)?;
            lo = hi;
            step *= 2.0;
        }
    }
    Ok(total)
}

/// Integrates an oscillating but eventually decaying `f` over `[a, inf)` on
/// pieces of doubling length, stopping once two consecutive pieces are
/// negligible against the running total.
pub fn integrate_decaying<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    scale: f64,
    opts: &QuadratureOptions,
) -> Result<Integral> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "piece scale must be positive, got {scale}"
        )));
    }
    let mut total = Integral::zero();
    let (mut lo, mut step, mut quiet) = (a, scale, 0);
    for _ in 0..2000 {
        let piece = integrate(&mut f, lo, lo + step, opts)?;
        total = total + piece;
        let floor = (1e-3 * opts.rel_tol * total.value.abs()).max(opts.abs_tol);
        quiet = if piece.value.abs() <= floor { quiet + 1 } else { 0 };
        if quiet == 2 {
            return Ok(total);
        }
        lo += step;
        step *= 2.0;
        if !lo.is_finite() {
            break;
        }
    }
    Err(Error::Quadrature {
        estimate: total.value,
        error: total.error,
        evaluations: total.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let r = integrate(|x| x.powi(5) - 3.0 * x * x, 0.0, 2.0, &QuadratureOptions::default()).unwrap();
        assert!((r.value - (64.0 / 6.0 - 8.0)).abs() < 1e-13);
        assert_eq!(r.evaluations, 15);
    }

    #[test]
    fn endpoint_singularity() {
        let r = integrate(|x| x.powf(-0.5), 0.0, 1.0, &QuadratureOptions::with_rel_tol(1e-10)).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn oscillatory() {
        let r = integrate(|x| (50.0 * x).cos(), 0.0, 3.0, &QuadratureOptions::default()).unwrap();
        assert!((r.value - (150.0f64).sin() / 50.0).abs() < 1e-13);
    }

    #[test]
    fn semi_infinite() {
        let r = integrate_to_infinity(|x| (-x).exp(), 0.0, &QuadratureOptions::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let r = integrate_to_infinity(|x| 1.0 / (1.0 + x * x), 0.0, &QuadratureOptions::default()).unwrap();
        assert!((r.value - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn decaying_oscillation() {
        // int_0^inf e^{-t w} cos(w r) dw = t/(t^2 + r^2)
        let (t, r) = (0.005, 1.0);
        let v = integrate_decaying(
            |w| (-t * w).exp() * (w * r).cos(),
            0.0,
            1.0,
            &QuadratureOptions::with_rel_tol(1e-13),
        )
        .unwrap();
        assert!((v.value - t / (t * t + r * r)).abs() < 1e-15, "{v:?}");
    }

    #[test]
    fn piecewise_long_range() {
        let r = integrate_piecewise(
            |x| (-(x - 3.0)).exp() * (x > 3.0) as i32 as f64,
            &[0.0, 3.0, 1e10],
            &QuadratureOptions::default(),
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn failure_is_reported() {
        let opts = QuadratureOptions {
            max_subdivisions: 3,
            ..QuadratureOptions::default()
        };
        let e = integrate(|x| (1.0 / x).sin(), 1e-6, 1.0, &opts).unwrap_err();
        assert!(matches!(e, Error::Quadrature { .. }));
    }
}
