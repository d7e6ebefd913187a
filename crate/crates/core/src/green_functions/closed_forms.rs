//! Closed-form heat and cylinder kernels of the model problems.

use std::f64::consts::PI;

use crate::coeff_transforms::KernelKind;
use crate::error::{Error, Result};
use crate::models::Manifold;

const MAX_TERMS: usize = 100_000;

fn free_heat(t: f64, r: f64) -> f64 {
    (-r * r / (4.0 * t)).exp() / (4.0 * PI * t).sqrt()
}

fn free_cylinder(t: f64, r: f64) -> f64 {
    t / (PI * (t * t + r * r))
}

/// Sums `f(0) + f(1) + f(-1) + f(2) + ...` until the bound `envelope(k)`
/// on `|f(k)| + |f(-k)|` is negligible and decreasing.
fn symmetric_sum(mut term: impl FnMut(i64) -> f64, mut envelope: impl FnMut(i64) -> f64) -> Result<f64> {
    let mut total = term(0);
    let mut previous = f64::INFINITY;
    for k in 1..MAX_TERMS as i64 {
        total += term(k) + term(-k);
        let size = envelope(k);
        if size <= f64::EPSILON * 1e-3 * total.abs() && size <= previous {
            return Ok(total);
        }
        previous = size;
    }
    Err(Error::TailBound(format!(
        "series did not settle within {MAX_TERMS} terms"
    )))
}

/// Which representation of a theta-type sum to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaForm {
    /// Sum over translates of the free kernel; fast for small `t`.
    Images,
    /// Sum over the eigenfunctions; fast for large `t`.
    Fourier,
}

impl ThetaForm {
    /// Images while `pi t / L^2 < 1`.
    pub fn for_time(t: f64, half_period: f64) -> Self {
        if PI * t / (half_period * half_period) < 1.0 {
            ThetaForm::Images
        } else {
            ThetaForm::Fourier
        }
    }
}

/// Heat kernel on the circle of circumference `2 half_period` at separation `r`.
pub fn periodic_heat(t: f64, r: f64, half_period: f64, form: ThetaForm) -> Result<f64> {
    let l = half_period;
    match form {
        ThetaForm::Images => {
            let image = |k: i64| free_heat(t, r + 2.0 * k as f64 * l);
            symmetric_sum(image, |k| image(k) + image(-k))
        }
        ThetaForm::Fourier => {
            let step = PI / l;
            let damping = |n: i64| (-(n as f64 * step).powi(2) * t).exp();
            symmetric_sum(|n| damping(n) * (n as f64 * step * r).cos(), |n| 2.0 * damping(n)).map(|s| s / (2.0 * l))
        }
    }
}

/// `(1/2L) sinh a / (cosh a - cos(pi r / L))`, `a = pi t / L`.
pub fn periodic_cylinder(t: f64, r: f64, half_period: f64) -> f64 {
    let l = half_period;
    let a = PI * t / l;
    let half_angle = 0.5 * PI * r / l;
    // cosh a - cos b = 2 sinh^2(a/2) + 2 sin^2(b/2)
    let denom = 2.0 * (0.5 * a).sinh().powi(2) + 2.0 * half_angle.sin().powi(2);
    a.sinh() / denom / (2.0 * l)
}

/// Closed-form kernel of `kind` at `(t, x, y)`.
pub fn model_kernel(man: &Manifold, kind: KernelKind, t: f64, x: f64, y: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("need t > 0, got {t}")));
    }
    man.check_point(x)?;
    man.check_point(y)?;
    let free = |r: f64| match kind {
        KernelKind::Heat => free_heat(t, r),
        KernelKind::Cylinder => free_cylinder(t, r),
    };
    match *man {
        Manifold::Line => Ok(free(x - y)),
        Manifold::HalfLine { boundary } => Ok(free(x - y) + boundary.image_sign() * free(x + y)),
        Manifold::Circle { length } => match kind {
            KernelKind::Heat => periodic_heat(t, x - y, length, ThetaForm::for_time(t, length)),
            KernelKind::Cylinder => Ok(periodic_cylinder(t, x - y, length)),
        },
        Manifold::Interval { length } => match kind {
            KernelKind::Heat => {
                let form = ThetaForm::for_time(t, length);
                Ok(periodic_heat(t, x - y, length, form)? - periodic_heat(t, x + y, length, form)?)
            }
            KernelKind::Cylinder => Ok(periodic_cylinder(t, x - y, length) - periodic_cylinder(t, x + y, length)),
        },
    }
}

/// Closed-form trace of `kind` at `t` for the compact models.
pub fn model_trace(man: &Manifold, kind: KernelKind, t: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("need t > 0, got {t}")));
    }
    let (length, full) = match *man {
        Manifold::Circle { length } => (length, true),
        Manifold::Interval { length } => (length, false),
        _ => return Err(Error::Unsupported(format!("trace on the {man}"))),
    };
    // circle trace = 2L * periodic kernel at r = 0
    let circle = match kind {
        KernelKind::Heat => 2.0 * length * periodic_heat(t, 0.0, length, ThetaForm::for_time(t, length))?,
        KernelKind::Cylinder => 1.0 / (0.5 * PI * t / length).tanh(),
    };
    Ok(if full { circle } else { 0.5 * (circle - 1.0) })
}
