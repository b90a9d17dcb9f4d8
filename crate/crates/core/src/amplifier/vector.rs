use std::collections::BTreeMap;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::data::{EigenvalueData, ExactComplex};
use crate::coset_enum::is_prime;
use crate::error::{Error, Result};

/// Coefficients `alpha_i` indexed by primes `p <= sqrt(L)` and their squares.
#[derive(Clone, Debug, PartialEq)]
pub struct AmplifierVector {
    pub length: f64,
    pub coefficients: BTreeMap<u64, ExactComplex>,
}

#[derive(Serialize)]
struct TermJson {
    i: u64,
    alpha: [f64; 2],
}

#[derive(Serialize)]
struct VectorJson {
    #[serde(rename = "L")]
    length: f64,
    terms: Vec<TermJson>,
    l1: f64,
    l2: f64,
}

/// Primes `p` with `p^2 <= length`.
pub fn primes_up_to_sqrt(length: f64) -> Vec<u64> {
    if length.is_nan() || length < 4.0 {
        return Vec::new();
    }
    let mut r = length.sqrt() as u64;
    while (r as f64) * (r as f64) > length {
        r -= 1;
    }
    while ((r + 1) as f64) * ((r + 1) as f64) <= length {
        r += 1;
    }
    (2..=r).filter(|&p| is_prime(p)).collect()
}

/// `alpha_p = conj(a_p)` for primes `p <= sqrt(L)`, `alpha_{p^2} = -1`.
pub fn build_amplifier(length: f64, data: &EigenvalueData) -> Result<AmplifierVector> {
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::InvalidArgument(format!("L must be a positive real, got {length}")));
    }
    let primes = primes_up_to_sqrt(length);
    let missing: Vec<u64> = primes.iter().copied().filter(|&p| data.get(p).is_none()).collect();
    if !missing.is_empty() {
        return Err(Error::MissingPrimeData(missing));
    }
    let mut coefficients = BTreeMap::new();
    for p in primes {
        coefficients.insert(p, data.get(p).expect("checked above").a_p.conj());
        coefficients.insert(p * p, Complex::new(-BigRational::one(), BigRational::zero()));
    }
    Ok(AmplifierVector { length, coefficients })
}

/// The prime behind an index in the support: `(p, false)` for `p`, `(p, true)` for `p^2`.
fn index_prime(i: u64) -> Option<(u64, bool)> {
    if is_prime(i) {
        return Some((i, false));
    }
    let r = (i as f64).sqrt().round() as u64;
    (r * r == i && is_prime(r)).then_some((r, true))
}

impl AmplifierVector {
    /// `sum |alpha_i|`, in floating point.
    pub fn l1(&self) -> f64 {
        self.coefficients.values().map(|a| to_f64(a).norm()).sum()
    }

    /// `sum |alpha_i|^2`, exactly.
    pub fn l2_squared(&self) -> BigRational {
        self.coefficients.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn l2(&self) -> f64 {
        self.l2_squared().to_f64().unwrap_or(f64::NAN).sqrt()
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = VectorJson {
            length: self.length,
            terms: self
                .coefficients
                .iter()
                .map(|(&i, a)| {
                    let z = to_f64(a);
                    TermJson { i, alpha: [z.re, z.im] }
                })
                .collect(),
            l1: self.l1(),
            l2: self.l2(),
        };
        Ok(serde_json::to_string(&doc)?)
    }
}

pub fn to_f64(z: &ExactComplex) -> Complex<f64> {
    Complex::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}

/// `M(alpha) = sum_i alpha_i a(i)` with `a(p) = a_p`, `a(p^2) = a_p2`, exactly.
pub fn evaluate(v: &AmplifierVector, data: &EigenvalueData) -> Result<ExactComplex> {
    let mut missing = Vec::new();
    let mut total = Complex::new(BigRational::zero(), BigRational::zero());
    for (&i, alpha) in &v.coefficients {
        let (p, square) = index_prime(i)
            .ok_or_else(|| Error::InvalidArgument(format!("index {i} is neither a prime nor a prime square")))?;
        let Some(rec) = data.get(p) else {
            missing.push(p);
            continue;
        };
        let value = if square { Complex::new(rec.a_p2.clone(), BigRational::zero()) } else { rec.a_p.clone() };
        total += alpha * value;
    }
    if !missing.is_empty() {
        missing.dedup();
        return Err(Error::MissingPrimeData(missing));
    }
    Ok(total)
}

/// Per prime in the support: does `max(|a_p|^2, |a_p2|) >= 1/2` hold?
pub fn dichotomy(v: &AmplifierVector, data: &EigenvalueData) -> Result<Vec<(u64, bool)>> {
    let primes = primes_up_to_sqrt(v.length);
    let missing: Vec<u64> = primes.iter().copied().filter(|&p| data.get(p).is_none()).collect();
    if !missing.is_empty() {
        return Err(Error::MissingPrimeData(missing));
    }
    Ok(primes.into_iter().map(|p| (p, data.get(p).unwrap().dichotomy_holds())).collect())
}
