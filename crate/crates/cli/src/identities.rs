//! Exact sweeps of the coefficient consistency identities and the
//! factor-product identity.

use std::path::PathBuf;

use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use riesz_core::appendix_identities::{
    first_factor_closed, first_factor_sum, second_factor_closed, second_factor_sum, transform_check, verify_a1,
};
use riesz_core::coeff_transforms::{verify_consistency, Branch};
use riesz_core::exact_scalar::{rat, Rational};
use riesz_core::{Error, ExactScalar};

use crate::output::{ensure_dir, out_path, read_config, write_json, RunInfo};
use crate::CliError;

#[derive(Args, Debug)]
pub struct IdentitiesArgs {
    /// JSON config with any of alpha_max, m, sweep_size, seed
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    alpha_max: Option<u32>,
    /// Dimensions to sweep, comma separated
    #[arg(long, value_delimiter = ',')]
    m: Option<Vec<u32>>,
    /// Random rational points per order for the factor identities
    #[arg(long)]
    sweep_size: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for identities.json
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    alpha_max: Option<u32>,
    m: Option<Vec<u32>>,
    sweep_size: Option<usize>,
    seed: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentitiesConfig {
    pub alpha_max: u32,
    pub m: Vec<u32>,
    pub sweep_size: usize,
}

#[derive(Clone, Debug, Serialize)]
struct Row {
    identity: &'static str,
    params: serde_json::Map<String, serde_json::Value>,
    result: String,
    pass: bool,
}

#[derive(Serialize)]
struct Report {
    run: RunInfo<IdentitiesConfig>,
    rows_checked: usize,
    failures: usize,
    rows: Vec<Row>,
}

fn params(pairs: &[(&str, String)]) -> serde_json::Map<String, serde_json::Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.clone())))
        .collect()
}

fn random_rational(rng: &mut ChaCha8Rng, span: i64, max_den: i64) -> Rational {
    rat(rng.gen_range(-span..=span), rng.gen_range(1..=max_den))
}

fn consistency_rows(config: &IdentitiesConfig) -> Result<Vec<Row>, CliError> {
    let mut rows = Vec::new();
    for &m in &config.m {
        for alpha in 1..=config.alpha_max {
            for s in 0..=alpha {
                let r = verify_consistency(alpha, m, s).map_err(CliError::Check)?;
                let p = params(&[("alpha", alpha.to_string()), ("m", m.to_string()), ("s", s.to_string())]);
                let show = |q: &Option<Rational>| q.as_ref().map_or("undefined".to_string(), |q| q.to_string());
                match r.branch {
                    Branch::Regular => rows.push(Row {
                        identity: "regular-product",
                        params: p,
                        result: show(&r.regular_product),
                        pass: r.regular_product == Some(rat(1, 1)),
                    }),
                    Branch::OddPositive => {
                        rows.push(Row {
                            identity: "log-product",
                            params: p.clone(),
                            result: show(&r.log_product),
                            pass: r.log_product == Some(rat(1, 1)),
                        });
                        rows.push(Row {
                            identity: "log-coincidence",
                            params: p,
                            result: show(&r.coincidence),
                            pass: r.coincidence == Some(rat(0, 1)),
                        });
                    }
                }
            }
        }
    }
    Ok(rows)
}

fn factor_rows(config: &IdentitiesConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Row>, CliError> {
    let mut rows = Vec::new();
    for alpha in 1..=config.alpha_max {
        let mut found = 0;
        let mut attempts = 0;
        while found < config.sweep_size && attempts < 100 * config.sweep_size.max(1) {
            attempts += 1;
            let z = random_rational(rng, 40, 12);
            let product = match verify_a1(alpha, &z) {
                Ok(v) => v,
                Err(Error::Pole(_)) => continue,
                Err(e) => return Err(CliError::Check(e)),
            };
            let first = (first_factor_sum(alpha, &z), first_factor_closed(alpha, &z));
            let second = (second_factor_sum(alpha, &z), second_factor_closed(alpha, &z));
            let (Ok(f1), Ok(f2), Ok(g1), Ok(g2)) = (first.0, first.1, second.0, second.1) else {
                continue;
            };
            found += 1;
            let p = params(&[("alpha", alpha.to_string()), ("z", z.to_string())]);
            rows.push(Row {
                identity: "factor-product",
                params: p.clone(),
                result: product.to_string(),
                pass: product == ExactScalar::one(),
            });
            rows.push(Row {
                identity: "first-factor-closed-form",
                params: p.clone(),
                result: (&f1 - &f2).to_string(),
                pass: f1 == f2,
            });
            rows.push(Row {
                identity: "second-factor-closed-form",
                params: p,
                result: (&g1 - &g2).to_string(),
                pass: g1 == g2,
            });
        }
    }
    Ok(rows)
}

fn hypergeometric_rows(config: &IdentitiesConfig, rng: &mut ChaCha8Rng) -> Vec<Row> {
    let mut rows = Vec::new();
    let mut attempts = 0;
    while rows.len() < config.sweep_size && attempts < 100 * config.sweep_size.max(1) {
        attempts += 1;
        let n = rng.gen_range(0..=6u32);
        let (a, b, e, f) = (
            random_rational(rng, 20, 6),
            random_rational(rng, 20, 6),
            random_rational(rng, 20, 6),
            random_rational(rng, 20, 6),
        );
        let Ok((lhs, rhs)) = transform_check(&a, &b, n, &e, &f) else {
            continue;
        };
        rows.push(Row {
            identity: "hypergeometric-transform",
            params: params(&[
                ("a", a.to_string()),
                ("b", b.to_string()),
                ("n", n.to_string()),
                ("e", e.to_string()),
                ("f", f.to_string()),
            ]),
            result: (&lhs - &rhs).to_string(),
            pass: lhs == rhs,
        });
    }
    rows
}

pub fn run(args: IdentitiesArgs) -> Result<bool, CliError> {
    let file: FileConfig = read_config(args.config.as_deref())?;
    let config = IdentitiesConfig {
        alpha_max: args.alpha_max.or(file.alpha_max).unwrap_or(8),
        m: args.m.or(file.m).unwrap_or_else(|| vec![1, 2, 3]),
        sweep_size: args.sweep_size.or(file.sweep_size).unwrap_or(20),
    };
    let seed = args.seed.or(file.seed).unwrap_or(0);
    if config.alpha_max == 0 {
        return Err(CliError::Usage("--alpha-max must be at least 1".into()));
    }
    if config.m.is_empty() || config.m.contains(&0) {
        return Err(CliError::Usage("--m needs positive dimensions".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = consistency_rows(&config)?;
    rows.extend(factor_rows(&config, &mut rng)?);
    rows.extend(hypergeometric_rows(&config, &mut rng));
    let failures = rows.iter().filter(|r| !r.pass).count();
    for r in rows.iter().filter(|r| !r.pass) {
        eprintln!("FAIL {} {:?}: {}", r.identity, r.params, r.result);
    }
    println!("identities: {} checked, {} failed", rows.len(), failures);
    let report = Report {
        run: RunInfo::new(seed, config),
        rows_checked: rows.len(),
        failures,
        rows,
    };
    if let Some(dir) = args.out {
        ensure_dir(&dir)?;
        write_json(&out_path(&dir, "identities.json"), &report)?;
    }
    Ok(failures == 0)
}
