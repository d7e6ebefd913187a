//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p riesz-core --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use riesz_core::appendix_identities::{
    first_factor_closed, first_factor_sum, second_factor_closed, second_factor_sum, transform_check, verify_a1,
};
use riesz_core::coeff_transforms::io::{CoeffDocument, DocumentKind};
use riesz_core::coeff_transforms::*;
use riesz_core::exact_scalar::{bernoulli, factorial, int, rat, Monomial};
use riesz_core::green_functions::{fit_kernel_expansion, model_kernel, sample_kernel};
use riesz_core::models::{euler_maclaurin_prediction, expected_coeffs, spectral_measure, Manifold, Observable};
use riesz_core::riesz_engine::{
    geometric_grid, hardy_identity_residual, hormander_identity_residual, riesz_mean, Atom, Density, DensityProfile,
    SpectralMeasure, Variable,
};
use riesz_core::{Error, ExactScalar, Rational};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fail(e: Error) -> String {
    e.to_string()
}

fn random_rational(rng: &mut ChaCha8Rng, span: i64, den: i64) -> Rational {
    rat(rng.gen_range(-span..=span), rng.gen_range(1..=den))
}

fn random_scalar(rng: &mut ChaCha8Rng) -> ExactScalar {
    let mut x = ExactScalar::zero();
    for _ in 0..rng.gen_range(0..3) {
        let key = Monomial {
            half_pi: rng.gen_range(-3..=3),
            gamma: 0,
            ln2: 0,
        };
        x += &ExactScalar::term(random_rational(rng, 40, 12), key);
    }
    x
}

fn consistency_sweep(check: impl Fn(&ConsistencyReport) -> Option<bool>) -> Outcome {
    let mut checked = 0;
    for alpha in 1..=8 {
        for m in 1..=3 {
            for s in 0..=alpha {
                let report = verify_consistency(alpha, m, s).map_err(fail)?;
                if let Some(ok) = check(&report) {
                    ensure(ok, || format!("alpha = {alpha}, m = {m}, s = {s}: {report:?}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} exact cases"))
}

fn regular_products() -> Outcome {
    let one = int(1);
    consistency_sweep(|r| (r.branch == Branch::Regular).then(|| r.regular_product.as_ref() == Some(&one)))
}

fn numerical_coincidence() -> Outcome {
    let zero = int(0);
    consistency_sweep(|r| (r.branch == Branch::OddPositive).then(|| r.coincidence.as_ref() == Some(&zero)))
}

fn log_products() -> Outcome {
    let one = int(1);
    consistency_sweep(|r| (r.branch == Branch::OddPositive).then(|| r.log_product.as_ref() == Some(&one)))
}

fn appendix() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut points = 0;
    for alpha in 1..=8u32 {
        let mut found = 0;
        while found < 20 {
            let z = random_rational(&mut rng, 60, 9);
            let evaluated = (|| {
                Ok::<_, Error>((
                    first_factor_sum(alpha, &z)?,
                    first_factor_closed(alpha, &z)?,
                    second_factor_sum(alpha, &z)?,
                    second_factor_closed(alpha, &z)?,
                    verify_a1(alpha, &z)?,
                ))
            })();
            let (fs, fc, ss, sc, product) = match evaluated {
                Ok(v) => v,
                Err(Error::Pole(_)) => continue,
                Err(e) => return Err(fail(e)),
            };
            ensure(fs == fc, || {
                format!("first factor alpha = {alpha}, z = {z}: {fs} vs {fc}")
            })?;
            ensure(ss == sc, || {
                format!("second factor alpha = {alpha}, z = {z}: {ss} vs {sc}")
            })?;
            ensure(product == ExactScalar::one(), || {
                format!("product alpha = {alpha}, z = {z}: {product}")
            })?;
            found += 1;
            points += 1;
        }
    }
    let mut tuples = 0;
    while tuples < 50 {
        let n = rng.gen_range(0..=6);
        let p: Vec<Rational> = (0..4).map(|_| random_rational(&mut rng, 20, 6)).collect();
        match transform_check(&p[0], &p[1], n, &p[2], &p[3]) {
            Ok((lhs, rhs)) => {
                ensure(lhs == rhs, || format!("3F2 transform n = {n}, {p:?}: {lhs} vs {rhs}"))?;
                tuples += 1;
            }
            Err(Error::InvalidArgument(_)) => continue,
            Err(e) => return Err(fail(e)),
        }
    }
    Ok(format!("{points} points, {tuples} 3F2 tuples"))
}

fn heat_worked_example() -> Outcome {
    let terms = heat_pipeline_symbolic(1, 3).map_err(fail)?;
    let root_pi = |q| ExactScalar::pi_half_power(q, 1);
    let expected = [
        (rat(-1, 2), Symbol::C { alpha: 3, s: 0 }, root_pi(int(2))),
        (int(0), Symbol::C { alpha: 3, s: 1 }, ExactScalar::one()),
        (rat(1, 2), Symbol::D { alpha: 3, s: 2 }, root_pi(rat(1, 3))),
        (int(1), Symbol::C { alpha: 3, s: 3 }, ExactScalar::rational(rat(-1, 3))),
    ];
    ensure(terms.iter().all(|t| !t.has_log), || "a log term survived".into())?;
    ensure(terms.len() == expected.len(), || format!("{} terms", terms.len()))?;
    for (term, (power, sym, coefficient)) in terms.iter().zip(expected) {
        ensure(
            term.power == power && term.coefficient == LinearForm::scaled(sym, coefficient),
            || format!("term at power {}: {:?}", term.power, term.coefficient),
        )?;
    }
    Ok("4 terms, no logs".into())
}

fn cylinder_worked_example() -> Outcome {
    let terms = cylinder_pipeline_symbolic(1, 3).map_err(fail)?;
    let a = |s| Symbol::A { alpha: 3, s };
    let q = |n, d| ExactScalar::rational(rat(n, d));
    let expected = [
        (int(-1), false, LinearForm::scaled(a(0), q(35, 16))),
        (int(0), false, LinearForm::symbol(a(1))),
        (int(1), false, LinearForm::symbol(Symbol::Unknown { s: 2 })),
        (int(1), true, LinearForm::scaled(a(2), q(-5, 16))),
        (int(2), false, LinearForm::scaled(a(3), q(-1, 6))),
    ];
    ensure(terms.len() == expected.len(), || format!("{} terms", terms.len()))?;
    for (term, (power, log, form)) in terms.iter().zip(expected) {
        ensure(
            term.power == power && term.has_log == log && term.coefficient == form,
            || {
                format!(
                    "term at power {} (log {}): {:?}",
                    term.power, term.has_log, term.coefficient
                )
            },
        )?;
    }
    let t = lambda_table_from_diag(
        &DiagonalLambdaCoeffs::new(1, vec![ExactScalar::one(); 4]).map_err(fail)?,
        3,
    )
    .map_err(fail)?;
    let cyl = cylinder_pipeline_from_lambda(&t, 3).map_err(fail)?;
    ensure(cyl.e()[2].is_undetermined(), || {
        "t slot is not flagged undetermined".into()
    })?;
    Ok("5 terms, t slot undetermined".into())
}

fn round_trips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..100 {
        let m = rng.gen_range(1..=3);
        let top = rng.gen_range(0..=8);
        let d = DiagonalLambdaCoeffs::new(m, (0..=top).map(|_| random_scalar(&mut rng)).collect()).map_err(fail)?;
        let h = heat_from_lambda_diag(&d).map_err(fail)?;
        ensure(lambda_diag_from_heat(&h).map_err(fail)? == d, || {
            format!("heat, case {case}")
        })?;
        let w = omega_diag_from_lambda_diag(&d).map_err(fail)?;
        ensure(lambda_diag_from_omega_diag(&w).map_err(fail)? == d, || {
            format!("omega, case {case}")
        })?;
        let c = cylinder_from_omega_diag(&w).map_err(fail)?;
        ensure(omega_diag_from_cylinder(&c).map_err(fail)? == w, || {
            format!("cylinder, case {case}")
        })?;
    }
    Ok("100 random tables".into())
}

fn circle_cylinder() -> Outcome {
    let man = Manifold::circle(1.0).map_err(fail)?;
    let obs = Observable::Diagonal { x: 0.0 };
    let mu = spectral_measure(&man, &obs, 4000.0).map_err(fail)?;
    let ts = geometric_grid(0.1, 1.0, 40);
    let samples = sample_kernel(&mu, KernelKind::Cylinder, &ts, 1e-14).map_err(fail)?;
    let mut worst: f64 = 0.0;
    for &(t, v) in &samples.points {
        worst = worst.max((v - model_kernel(&man, KernelKind::Cylinder, t, 0.0, 0.0).map_err(fail)?).abs());
    }
    ensure(worst <= 1e-12, || format!("sum vs closed form {worst:e}"))?;

    let fit_samples = sample_kernel(&mu, KernelKind::Cylinder, &geometric_grid(0.01, 0.5, 128), 1e-14).map_err(fail)?;
    let est = fit_kernel_expansion(&fit_samples, 1, 10).map_err(fail)?;
    let pi = std::f64::consts::PI;
    let mut worst_rel: f64 = 0.0;
    for (s, want) in [(0, 1.0 / pi), (2, pi / 12.0), (4, -pi.powi(3) / 720.0)] {
        let got = est.value(s).unwrap();
        let rel = ((got - want) / want).abs();
        worst_rel = worst_rel.max(rel);
        ensure(rel <= 1e-3, || format!("e_{s} = {got} vs {want}"))?;
    }
    Ok(format!("sum error {worst:.1e}, worst fit error {worst_rel:.1e}"))
}

fn interval_trace() -> Outcome {
    let man = Manifold::interval(1.0).map_err(fail)?;
    let mu = spectral_measure(&man, &Observable::Trace, 40000.0).map_err(fail)?;
    let pi = std::f64::consts::PI;
    let closed = |t: f64| 0.5 * (pi * t).sinh() / ((pi * t).cosh() - 1.0) - 0.5;
    let samples = sample_kernel(&mu, KernelKind::Cylinder, &geometric_grid(0.01, 1.0, 60), 1e-14).map_err(fail)?;
    let mut worst: f64 = 0.0;
    for &(t, v) in &samples.points {
        worst = worst.max((v - closed(t)).abs() / closed(t).abs().max(1.0));
    }
    ensure(worst <= 1e-12, || format!("sum vs closed form {worst:e}"))?;

    let heat = sample_kernel(&mu, KernelKind::Heat, &geometric_grid(0.002, 0.04, 64), 1e-14).map_err(fail)?;
    let est = fit_kernel_expansion(&heat, 1, 4).map_err(fail)?;
    let b1 = est.value(1).unwrap();
    ensure((b1 + 0.5).abs() <= 1e-6, || format!("b_1 = {b1}"))?;
    Ok(format!("sum error {worst:.1e}, b_1 + 1/2 = {:.1e}", b1 + 0.5))
}

fn hardy_hormander() -> Outcome {
    let single = SpectralMeasure::atomic(Variable::Lambda, vec![Atom::from((1.0, 1.0))]).map_err(fail)?;
    let mean = riesz_mean(&single, 1, 4.0).map_err(fail)?;
    ensure((mean - 0.75).abs() < 1e-15, || format!("hand case mean {mean}"))?;
    let mut worst: f64 = 0.0;
    worst = worst.max(hardy_identity_residual(&single, &int(2), 1, 4.0).map_err(fail)?.abs());
    worst = worst.max(hormander_identity_residual(&single, 2, 1, 4.0).map_err(fail)?.abs());

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..20 {
        let mut positions: Vec<f64> = (0..10).map(|_| rng.gen_range(0.05..20.0)).collect();
        positions.sort_by(f64::total_cmp);
        let atoms = positions
            .into_iter()
            .map(|p| Atom::from((p, rng.gen_range(-2.0..2.0))))
            .collect();
        let mu = SpectralMeasure::atomic(Variable::Lambda, atoms).map_err(fail)?;
        let x = rng.gen_range(5.0..25.0);
        for alpha in 1..=4 {
            for k in [int(2), rat(1, 2)] {
                worst = worst.max(hardy_identity_residual(&mu, &k, alpha, x).map_err(fail)?.abs());
            }
            for k in [2, 3] {
                worst = worst.max(hormander_identity_residual(&mu, k, alpha, x).map_err(fail)?.abs());
            }
        }
    }
    ensure(worst < 1e-10, || format!("worst residual {worst:e}"))?;
    Ok(format!("worst residual {worst:.1e}"))
}

fn line_means() -> Outcome {
    let pi = std::f64::consts::PI;
    let density = Density {
        variable: Variable::Lambda,
        profile: DensityProfile::PowerLaw {
            coefficient: 0.5 / pi,
            exponent: -0.5,
        },
    };
    let mu = SpectralMeasure::with_density(Variable::Lambda, density).map_err(fail)?;
    let mut worst: f64 = 0.0;
    for alpha in 0..=4u32 {
        // Gamma(alpha+1) Gamma(3/2) / Gamma(alpha+3/2) as a product
        let ratio: f64 = (1..=alpha).map(|j| f64::from(j) / (f64::from(j) + 0.5)).product();
        for lambda in [0.3f64, 2.0, 17.0, 400.0] {
            let want = ratio * lambda.sqrt() / pi;
            let got = riesz_mean(&mu, alpha, lambda).map_err(fail)?;
            worst = worst.max(((got - want) / want).abs());
        }
    }
    ensure(worst <= 1e-10, || format!("worst relative error {worst:e}"))?;

    let a00 = ExactScalar::pi_half_power(int(1), -2);
    let table =
        lambda_table_from_diag(&DiagonalLambdaCoeffs::new(1, vec![a00.clone()]).map_err(fail)?, 3).map_err(fail)?;
    let a30 = table.get(3, 0).clone();
    ensure(a30 == a00.scale(&rat(16, 35)), || format!("a_30 = {a30}"))?;
    let cyl = cylinder_pipeline_from_lambda(&table, 3).map_err(fail)?;
    let e0 = cyl.e()[0].as_known().cloned().unwrap_or_default();
    ensure(e0 == a30.scale(&rat(35, 16)) && e0 == a00, || format!("e_0 = {e0}"))?;
    Ok(format!("worst relative error {worst:.1e}, e_0 = {e0}"))
}

fn euler_maclaurin() -> Outcome {
    for length in [1.0, 2.0] {
        let man = Manifold::circle(length).map_err(fail)?;
        let table =
            match expected_coeffs(&man, &Observable::Diagonal { x: 0.0 }, DocumentKind::Cylinder, 8).map_err(fail)? {
                CoeffDocument::Cylinder(c) => c,
                other => return Err(format!("unexpected table kind {}", other.kind())),
            };
        let l = rat((length * 2.0) as i64, 2);
        for s in (2..=8u32).step_by(2) {
            let p = s as i64 - 1;
            let q = bernoulli(s as u64) / (num_traits::pow(l.clone(), s as usize) * factorial(s as u64));
            let want = ExactScalar::pi_half_power(q, 2 * p as i32);
            let got = euler_maclaurin_prediction(&man, s).map_err(fail)?;
            ensure(got.e == want, || format!("L = {length}, s = {s}: {} vs {want}", got.e))?;
            ensure(table.e()[s as usize].as_known() == Some(&want), || {
                format!("L = {length}, s = {s}: table {:?}", table.e()[s as usize])
            })?;
        }
    }
    Ok("s = 2, 4, 6, 8 at L = 1, 2".into())
}

fn alternating_consistency() -> Outcome {
    let atoms = (0..200_000)
        .map(|n| Atom::from((n as f64, if n % 2 == 0 { 1.0 } else { -1.0 })))
        .collect();
    let mu = SpectralMeasure::atomic(Variable::Lambda, atoms).map_err(fail)?;
    let mut worst: f64 = 0.0;
    for x in [1.0e4, 1.0e4 + 0.5, 3.3e4, 1.0e5] {
        let r1 = riesz_mean(&mu, 1, x).map_err(fail)?;
        let r2 = riesz_mean(&mu, 2, x).map_err(fail)?;
        worst = worst.max((r1 - 0.5).abs()).max((r2 - 0.5).abs()).max((r1 - r2).abs());
    }
    ensure(worst <= 1e-3, || format!("worst deviation {worst:e}"))?;
    Ok(format!("worst deviation {worst:.1e}"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "regular bracket products equal 1",
            budget: secs(5),
            run: regular_products,
        },
        Criterion {
            id: 2,
            name: "odd-positive coincidence vanishes",
            budget: secs(5),
            run: numerical_coincidence,
        },
        Criterion {
            id: 3,
            name: "log bracket products equal 1",
            budget: secs(5),
            run: log_products,
        },
        Criterion {
            id: 4,
            name: "factor sums, closed forms and 3F2 transform",
            budget: secs(10),
            run: appendix,
        },
        Criterion {
            id: 5,
            name: "heat pipeline worked example",
            budget: secs(5),
            run: heat_worked_example,
        },
        Criterion {
            id: 6,
            name: "cylinder pipeline worked example",
            budget: secs(5),
            run: cylinder_worked_example,
        },
        Criterion {
            id: 7,
            name: "exact round trips",
            budget: secs(10),
            run: round_trips,
        },
        Criterion {
            id: 8,
            name: "circle cylinder kernel and fit",
            budget: secs(30),
            run: circle_cylinder,
        },
        Criterion {
            id: 9,
            name: "interval trace sum and boundary term",
            budget: secs(30),
            run: interval_trace,
        },
        Criterion {
            id: 10,
            name: "Hardy and Hormander residuals",
            budget: secs(30),
            run: hardy_hormander,
        },
        Criterion {
            id: 11,
            name: "line Riesz means and constant chain",
            budget: secs(30),
            run: line_means,
        },
        Criterion {
            id: 12,
            name: "Euler-Maclaurin predictions",
            budget: secs(5),
            run: euler_maclaurin,
        },
        Criterion {
            id: 13,
            name: "alternating measure consistency",
            budget: secs(30),
            run: alternating_consistency,
        },
    ];
    let mut failures = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match &outcome {
            Ok(_) if elapsed > c.budget => Err(format!("took {elapsed:.2?}, budget {:?}", c.budget)),
            Ok(detail) => Ok(detail.clone()),
            Err(e) => Err(e.clone()),
        };
        match verdict {
            Ok(detail) => println!("PASS {:>2} {} ({detail}; {elapsed:.2?})", c.id, c.name),
            Err(why) => {
                println!("FAIL {:>2} {} ({why}; {elapsed:.2?})", c.id, c.name);
                failures.push(c.id);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
