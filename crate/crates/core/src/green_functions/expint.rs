//! Generalised exponential integrals `E_n(t) = int_1^inf exp(-t u) u^-n du`.

use crate::error::{Error, Result};
use crate::quadrature::{integrate_to_infinity, QuadratureOptions};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;
const SERIES_LIMIT: f64 = 1.0;

/// `E_n(t)` for `n >= 1`, `t > 0`: power series for `t <= 1`, quadrature beyond.
pub fn en_eval(n: u32, t: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("E_n needs n >= 1".into()));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!("E_n needs finite t > 0, got {t}")));
    }
    if t <= SERIES_LIMIT {
        Ok(series(n, t))
    } else {
        let opts = QuadratureOptions {
            rel_tol: 1e-14,
            abs_tol: 0.0,
            ..QuadratureOptions::default()
        };
        let nf = n as i32;
        // int_0^inf exp(-t (1 + v)) (1 + v)^-n dv
        let tail = integrate_to_infinity(|v| (-t * v).exp() * (1.0 + v).powi(-nf), 0.0, &opts)?;
        Ok((-t).exp() * tail.value)
    }
}

/// `(-t)^(n-1)/(n-1)! (psi(n) - ln t) - sum_{k != n-1} (-t)^k / ((k-n+1) k!)`.
fn series(n: u32, t: f64) -> f64 {
    let n1 = n as usize - 1;
    let psi = -EULER_GAMMA + (1..n).map(|j| 1.0 / j as f64).sum::<f64>();
    let mut power = 1.0; // (-t)^k / k!
    let mut total = 0.0;
    let mut k = 0usize;
    loop {
        if k == n1 {
            total += power * (psi - t.ln());
        } else {
            let term = power / (k as f64 - n1 as f64);
            total -= term;
            if k > n1 && term.abs() <= 1e-18 * total.abs().max(f64::MIN_POSITIVE) {
                return total;
            }
        }
        k += 1;
        power *= -t / k as f64;
        if k > 400 {
            return total;
        }
    }
}
