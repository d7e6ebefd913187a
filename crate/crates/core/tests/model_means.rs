use riesz_core::coeff_transforms::io::{CoeffDocument, DocumentKind};
use riesz_core::coeff_transforms::omega_table_from_diag;
use riesz_core::exact_scalar::int;
use riesz_core::models::{expected_coeffs, spectral_measure, Manifold, Observable};
use riesz_core::riesz_engine::{asymptotic_fit, sample_means, BasisTerm, FitSpec, Variable, Weighting};

#[test]
fn circle_omega_means_match_the_exact_table() {
    let man = Manifold::circle(1.0).unwrap();
    let obs = Observable::Diagonal { x: 0.0 };
    let mu = spectral_measure(&man, &obs, 3000.0).unwrap();
    let CoeffDocument::OmegaDiag(diag) = expected_coeffs(&man, &obs, DocumentKind::OmegaDiag, 2).unwrap() else {
        panic!("omega table expected");
    };
    let alpha = 2;
    let table = omega_table_from_diag(&diag, alpha).unwrap();

    let pi = std::f64::consts::PI;
    let points: Vec<f64> = (20..600).map(|n| (n as f64 + 0.5) * pi).collect();
    let samples = sample_means(&mu, Variable::Omega, alpha as u32, &points).unwrap();
    let terms = vec![
        BasisTerm::power(int(1)),
        BasisTerm::power(int(0)),
        BasisTerm::power(int(-1)),
        BasisTerm::log(int(-1)),
        BasisTerm::power(int(-2)),
        BasisTerm::power(int(-3)),
    ];
    let spec = FitSpec::new(terms, (points[0], points[points.len() - 1]), Weighting::Geometric).unwrap();
    let fit = asymptotic_fit(&samples, &spec).unwrap();

    let c0 = table.c(alpha, 0).as_known().unwrap().to_f64();
    assert!((c0 - 1.0 / (3.0 * pi)).abs() < 1e-15);
    let got = fit.coefficient(&spec, &BasisTerm::power(int(1))).unwrap();
    assert!((got - c0).abs() < 1e-8 * c0, "{got} vs {c0}");
    let c1 = table.c(alpha, 1).as_known().unwrap().to_f64();
    let got = fit.coefficient(&spec, &BasisTerm::power(int(0))).unwrap();
    assert!((got - c1).abs() < 1e-6, "{got} vs {c1}");
    let d2 = table.d(alpha, 2).to_f64();
    let got = fit.coefficient(&spec, &BasisTerm::log(int(-1))).unwrap();
    assert!((got - d2).abs() < 1e-3 * d2.abs().max(1e-3), "{got} vs {d2}");
}
