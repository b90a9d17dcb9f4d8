use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coset_enum::is_prime;
use crate::error::{Error, Result};

pub type ExactComplex = Complex<BigRational>;

/// Eigenvalue data at one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeRecord {
    pub p: u64,
    /// Eigenvalue of `p^{-(n-1)/2} T_diag(1,...,1,p)`.
    pub a_p: ExactComplex,
    /// Eigenvalue of `p^{-(n-1)} T_diag(1,p,...,p,p^2)`; real.
    pub a_p2: BigRational,
}

impl PrimeRecord {
    /// `|a_p|^2`.
    pub fn norm_sqr(&self) -> BigRational {
        self.a_p.norm_sqr()
    }

    /// `|a_p conj(a_p) - a_p2 - 1|`, zero for data satisfying the fundamental identity.
    pub fn residual(&self) -> BigRational {
        (self.norm_sqr() - &self.a_p2 - BigRational::one()).abs()
    }

    /// `max(|a_p|^2, |a_p2|) >= 1/2`.
    pub fn dichotomy_holds(&self) -> bool {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        self.norm_sqr() >= half || self.a_p2.abs() >= half
    }
}

/// Per-prime eigenvalue records, keyed by prime.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EigenvalueData {
    records: BTreeMap<u64, PrimeRecord>,
}

#[derive(Serialize, Deserialize)]
struct RecordJson {
    p: u64,
    a_p: [Value; 2],
    a_p2: Value,
}

/// Reads a JSON number exactly, or a string such as `"-3/7"`.
fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                return Ok(BigRational::from_integer(i.into()));
            }
            let f = num.as_f64().ok_or_else(|| Error::InvalidArgument(format!("unreadable number {num}")))?;
            BigRational::from_float(f).ok_or_else(|| Error::InvalidArgument(format!("non-finite {f}")))
        }
        Value::String(s) => {
            s.trim().parse::<BigRational>().map_err(|_| Error::InvalidArgument(format!("not a rational: {s:?}")))
        }
        other => Err(Error::InvalidArgument(format!("expected a number, got {other}"))),
    }
}

fn rational_to_json(x: &BigRational) -> Value {
    if x.is_integer() {
        if let Some(i) = x.to_integer().to_i64() {
            return i.into();
        }
    }
    let f = x.to_f64().unwrap_or(f64::NAN);
    if BigRational::from_float(f).as_ref() == Some(x) {
        f.into()
    } else {
        x.to_string().into()
    }
}

impl EigenvalueData {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, record: PrimeRecord) -> Result<()> {
        if !is_prime(record.p) {
            return Err(Error::NotPrime(record.p));
        }
        if self.records.contains_key(&record.p) {
            return Err(Error::InvalidArgument(format!("duplicate record for p = {}", record.p)));
        }
        self.records.insert(record.p, record);
        Ok(())
    }

    /// Data with `a_p2 = |a_p|^2 - 1`, so the fundamental identity holds exactly.
    pub fn satisfying_identity<I>(values: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, ExactComplex)>,
    {
        let mut data = Self::new();
        for (p, a_p) in values {
            let a_p2 = a_p.norm_sqr() - BigRational::one();
            data.insert(PrimeRecord { p, a_p, a_p2 })?;
        }
        Ok(data)
    }

    pub fn get(&self, p: u64) -> Option<&PrimeRecord> {
        self.records.get(&p)
    }

    pub fn records(&self) -> impl Iterator<Item = &PrimeRecord> {
        self.records.values()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Largest residual of the fundamental identity over all records.
    pub fn max_residual(&self) -> BigRational {
        self.records.values().map(|r| r.residual()).max().unwrap_or_else(BigRational::zero)
    }

    /// Parses `[{"p": 2, "a_p": [re, im], "a_p2": x}, ...]`; numbers are read exactly and
    /// strings like `"1/3"` are accepted as rationals.
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: Vec<RecordJson> = serde_json::from_str(s)?;
        let mut data = Self::new();
        for r in raw {
            let a_p = Complex::new(rational_from_json(&r.a_p[0])?, rational_from_json(&r.a_p[1])?);
            data.insert(PrimeRecord { p: r.p, a_p, a_p2: rational_from_json(&r.a_p2)? })?;
        }
        Ok(data)
    }

    /// Values that are exact binary fractions are written as numbers, others as `"num/den"`.
    pub fn to_json(&self) -> Result<String> {
        let raw: Vec<RecordJson> = self
            .records
            .values()
            .map(|r| RecordJson {
                p: r.p,
                a_p: [rational_to_json(&r.a_p.re), rational_to_json(&r.a_p.im)],
                a_p2: rational_to_json(&r.a_p2),
            })
            .collect();
        Ok(serde_json::to_string(&raw)?)
    }
}
