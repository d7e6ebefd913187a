use serde::{Deserialize, Serialize};

use super::manifold::{Manifold, Observable};
use super::measures::spectral_measure;
use crate::error::{Error, Result};
use crate::exact_scalar::{bernoulli, factorial, int, rational_from_f64, ExactScalar, Rational};
use crate::riesz_engine::{riesz_mean_in, Variable};

/// Omega-mean coefficient `c_ss` and cylinder coefficient `e_s` of the
/// circle diagonal predicted by summing the ladder with Euler-Maclaurin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerMaclaurinTerm {
    pub s: u32,
    pub c: ExactScalar,
    pub e: ExactScalar,
}

fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// The `s`-th correction: the `(s-1)`-st derivative of the order-`s` mean
/// kernel at the bottom of the ladder,
/// `(-1)^p pi^p s! / (L^(p+1) (s-p)!)` with `p = s-1`, weighted by
/// `(-1)^p B_s / s!`.
pub fn euler_maclaurin_prediction(man: &Manifold, s: u32) -> Result<EulerMaclaurinTerm> {
    let Manifold::Circle { length } = *man else {
        return Err(Error::Unsupported(format!("Euler-Maclaurin prediction on the {man}")));
    };
    if s < 2 {
        return Err(Error::InvalidArgument(format!("need s >= 2, got {s}")));
    }
    let l = rational_from_f64(length)?;
    let p = s as i64 - 1;
    let fs = factorial(s as u64);
    let derivative = sign(p) * &fs / (num_traits::pow(l.clone(), (p + 1) as usize) * factorial((s as i64 - p) as u64));
    let weight = sign(p) * bernoulli(s as u64) / &fs;
    let c = ExactScalar::pi_half_power(derivative * weight, 2 * p as i32);
    let e = c.scale(&fs.recip());
    Ok(EulerMaclaurinTerm { s, c, e })
}

/// Zero-mode weight minus half the ladder weight of the trace measure:
/// the endpoint correction the trapezoid rule would add at `omega = 0`.
pub fn trapezoid_defect(man: &Manifold) -> Result<ExactScalar> {
    let step = man
        .ladder_step()
        .ok_or_else(|| Error::Unsupported(format!("trace on the {man}")))?;
    let mu = spectral_measure(man, &Observable::Trace, 2.5 * step)?;
    let zero_mode = mu.atoms().iter().find(|a| a.position == 0.0).map_or(0.0, |a| a.weight);
    let ladder = mu
        .atoms()
        .iter()
        .find(|a| a.position > 0.0)
        .map(|a| a.weight)
        .ok_or_else(|| Error::InvalidArgument("trace measure has no ladder".into()))?;
    Ok(ExactScalar::rational(
        rational_from_f64(zero_mode)? - rational_from_f64(ladder)? / int(2),
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub order: u32,
    pub separation: f64,
    /// Fitted exponent of the envelope of `|R^s_lambda E(x, y)|` in `lambda`.
    pub exponent: f64,
    /// `(1 - s)/2`.
    pub bound: f64,
    pub bins: Vec<(f64, f64)>,
    pub passes: bool,
}

const DECAY_SLACK: f64 = 0.1;

/// Decay of the `lambda`-means of the off-diagonal line spectral function.
///
/// The grid is split into eight logarithmic bins; the slope of
/// `log max |R|` against `log lambda` over the bins estimates the decay
/// exponent of the oscillating mean.
pub fn offdiagonal_decay_check(man: &Manifold, order: u32, x: f64, y: f64, grid: &[f64]) -> Result<DecayReport> {
    if *man != Manifold::Line {
        return Err(Error::Unsupported(format!("decay check on the {man}")));
    }
    if x == y {
        return Err(Error::InvalidArgument("decay check needs distinct points".into()));
    }
    const BINS: usize = 8;
    if grid.len() < 4 * BINS || grid[0] <= 0.0 || grid[grid.len() - 1] < 100.0 * grid[0] {
        return Err(Error::InvalidArgument(format!(
            "decay grid needs at least {} positive points spanning two decades",
            4 * BINS
        )));
    }
    if grid.windows(2).any(|p| !(p[1] > p[0])) {
        return Err(Error::InvalidArgument("decay grid must increase strictly".into()));
    }
    let mu = spectral_measure(man, &Observable::OffDiagonal { x, y }, 1.0)?;
    let values = grid
        .iter()
        .map(|&l| Ok((l, riesz_mean_in(&mu, Variable::Lambda, order, l)?.abs())))
        .collect::<Result<Vec<_>>>()?;
    let (lo, hi) = (grid[0].ln(), grid[grid.len() - 1].ln());
    let width = (hi - lo) / BINS as f64;
    let mut bins = Vec::with_capacity(BINS);
    for b in 0..BINS {
        let (a, z) = (lo + b as f64 * width, lo + (b + 1) as f64 * width);
        let best = values
            .iter()
            .filter(|(l, _)| {
                let ll = l.ln();
                ll >= a && (ll < z || b == BINS - 1)
            })
            .map(|&(_, v)| v)
            .fold(0.0, f64::max);
        if best > 0.0 {
            bins.push(((0.5 * (a + z)).exp(), best));
        }
    }
    if bins.len() < 3 {
        return Err(Error::InvalidArgument(
            "too few nonzero bins to fit a decay exponent".into(),
        ));
    }
    let n = bins.len() as f64;
    let (sx, sy) = bins
        .iter()
        .fold((0.0, 0.0), |(sx, sy), (l, v)| (sx + l.ln(), sy + v.ln()));
    let (mx, my) = (sx / n, sy / n);
    let (num, den) = bins.iter().fold((0.0, 0.0), |(num, den), (l, v)| {
        let dx = l.ln() - mx;
        (num + dx * (v.ln() - my), den + dx * dx)
    });
    let exponent = num / den;
    let bound = (1.0 - order as f64) / 2.0;
    Ok(DecayReport {
        order,
        separation: x - y,
        exponent,
        bound,
        bins,
        passes: exponent <= bound + DECAY_SLACK,
    })
}

/// `true` when every `c_ss` of the circle diagonal from Euler-Maclaurin
/// vanishes at odd `s`.
pub fn odd_corrections_vanish(man: &Manifold, smax: u32) -> Result<bool> {
    for s in (3..=smax).step_by(2) {
        if !euler_maclaurin_prediction(man, s)?.c.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_scalar::rat;
    use crate::riesz_engine::geometric_grid;

    #[test]
    fn euler_maclaurin_values() {
        let c = Manifold::circle(1.0).unwrap();
        let t = euler_maclaurin_prediction(&c, 2).unwrap();
        assert_eq!(t.c, ExactScalar::pi_half_power(rat(1, 6), 2));
        assert_eq!(t.e, ExactScalar::pi_half_power(rat(1, 12), 2));
        assert_eq!(
            euler_maclaurin_prediction(&c, 4).unwrap().e,
            ExactScalar::pi_half_power(rat(-1, 720), 6)
        );
        assert!(odd_corrections_vanish(&c, 9).unwrap());
        assert!(euler_maclaurin_prediction(&c, 1).is_err());
        assert!(euler_maclaurin_prediction(&Manifold::Line, 2).is_err());
    }

    #[test]
    fn defects() {
        assert_eq!(
            trapezoid_defect(&Manifold::interval(2.5).unwrap()).unwrap(),
            ExactScalar::rational(rat(-1, 2))
        );
        assert_eq!(
            trapezoid_defect(&Manifold::circle(1.0).unwrap()).unwrap(),
            ExactScalar::zero()
        );
        assert!(trapezoid_defect(&Manifold::Line).is_err());
    }

    #[test]
    fn decay_exponents() {
        let grid = geometric_grid(1e2, 1e5, 400);
        let r = offdiagonal_decay_check(&Manifold::Line, 3, 2.0, 0.0, &grid).unwrap();
        assert!(r.passes && r.exponent < -0.9, "{r:?}");
        let r = offdiagonal_decay_check(&Manifold::Line, 1, 1.0, 0.0, &grid).unwrap();
        assert!(r.passes, "{r:?}");
        assert!(offdiagonal_decay_check(&Manifold::Line, 1, 1.0, 0.0, &grid[..10]).is_err());
    }
}
