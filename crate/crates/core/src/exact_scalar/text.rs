use num_traits::{One, Zero};

use super::{ExactScalar, Monomial, Rational};
use crate::error::{Error, Result};

pub(super) fn render(x: &ExactScalar) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let parts: Vec<String> = x
        .terms()
        .map(|(k, q)| {
            let mut s = q.to_string();
            if k.half_pi != 0 {
                s.push_str(&format!(" * pi^({}/2)", k.half_pi));
            }
            if k.gamma == 1 {
                s.push_str(" * gamma");
            }
            if k.ln2 == 1 {
                s.push_str(" * ln2");
            }
            s
        })
        .collect();
    parts.join(" + ")
}

pub(super) fn parse(input: &str) -> Result<ExactScalar> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty exact scalar".into()));
    }
    let mut out = ExactScalar::zero();
    for term in split_terms(&compact) {
        out += &parse_term(&term)?;
    }
    Ok(out)
}

fn split_terms(s: &str) -> Vec<String> {
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    let mut prev: Option<char> = None;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let boundary = depth == 0 && (c == '+' || (c == '-' && !matches!(prev, None | Some('*') | Some('^'))));
        if boundary && !current.is_empty() {
            terms.push(std::mem::take(&mut current));
        }
        if c != '+' || depth != 0 {
            current.push(c);
        }
        prev = Some(c);
    }
    if !current.is_empty() {
        terms.push(current);
    }
    terms
}

fn parse_term(term: &str) -> Result<ExactScalar> {
    let (negative, body) = match term.strip_prefix('-') {
        Some(rest) if !rest.starts_with(|c: char| c.is_ascii_digit()) => (true, rest),
        _ => (false, term),
    };
    let mut coeff = Rational::one();
    let mut key = Monomial::ONE;
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in '{term}'")));
        }
        let (base, exponent) = match factor.split_once('^') {
            Some((b, e)) => (b, Some(e)),
            None => (factor, None),
        };
        match base {
            "pi" => {
                let k = match exponent {
                    None => 2,
                    Some(e) => parse_half_exponent(e)?,
                };
                key.half_pi += k;
            }
            "gamma" => key.gamma += parse_unit_exponent(exponent)?,
            "ln2" => key.ln2 += parse_unit_exponent(exponent)?,
            _ => {
                if exponent.is_some() {
                    return Err(Error::Parse(format!("unexpected exponent in '{factor}'")));
                }
                coeff *= parse_rational(factor)?;
            }
        }
    }
    if key.gamma > 1 || key.ln2 > 1 {
        return Err(Error::DegreeOverflow);
    }
    if negative {
        coeff = -coeff;
    }
    Ok(ExactScalar::term(coeff, key))
}

fn parse_half_exponent(e: &str) -> Result<i32> {
    let inner = e.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(e);
    let q = parse_rational(inner)?;
    let doubled = q * Rational::from_integer(2.into());
    if !doubled.denom().is_one() {
        return Err(Error::Parse(format!("pi exponent '{e}' is not a half-integer")));
    }
    i32::try_from(doubled.numer().clone()).map_err(|_| Error::Parse(format!("pi exponent '{e}' out of range")))
}

fn parse_unit_exponent(e: Option<&str>) -> Result<u8> {
    match e {
        None | Some("1") => Ok(1),
        Some("0") => Ok(0),
        Some(other) => Err(Error::Parse(format!("exponent '{other}' must be 0 or 1"))),
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let parsed: std::result::Result<Rational, _> = s.parse();
    let q = parsed.map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
    if q.denom().is_zero() {
        return Err(Error::Parse(format!("zero denominator in '{s}'")));
    }
    Ok(q)
}
