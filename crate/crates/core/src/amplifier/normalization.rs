use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::json;

use crate::coset_enum::DEFAULT_BUDGET;
use crate::error::Result;
use crate::hecke_algebra::{linearization_products, MixedLabel, OperatorProduct};

/// `coeff * prod_p p^(h_p / 2)` with every `h_p` reduced to 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    coeff: BigRational,
    half_exps: BTreeMap<u64, i64>,
}

fn rational_pow(p: u64, k: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(p));
    if k >= 0 {
        num_traits::pow(base, k as usize)
    } else {
        num_traits::pow(base.recip(), (-k) as usize)
    }
}

impl Surd {
    pub fn rational(coeff: BigRational) -> Self {
        Surd { coeff, half_exps: BTreeMap::new() }
    }

    pub fn integer(x: impl Into<BigInt>) -> Self {
        Self::rational(BigRational::from_integer(x.into()))
    }

    /// `p^(h / 2)`.
    pub fn prime_power(p: u64, h: i64) -> Self {
        Surd { coeff: BigRational::one(), half_exps: BTreeMap::new() }.times_prime_power(p, h)
    }

    fn times_prime_power(mut self, p: u64, h: i64) -> Self {
        let total = self.half_exps.remove(&p).unwrap_or(0) + h;
        let (k, r) = (total.div_euclid(2), total.rem_euclid(2));
        self.coeff *= rational_pow(p, k);
        if r != 0 {
            self.half_exps.insert(p, r);
        }
        self
    }

    pub fn mul(&self, other: &Surd) -> Surd {
        let mut out = Surd::rational(&self.coeff * &other.coeff);
        for (&p, &h) in self.half_exps.iter().chain(&other.half_exps) {
            out = out.times_prime_power(p, h);
        }
        out
    }

    pub fn is_rational(&self) -> bool {
        self.half_exps.is_empty() || self.coeff.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeff.clone())
    }

    pub fn to_f64(&self) -> f64 {
        let mut x = self.coeff.to_f64().unwrap_or(f64::NAN);
        for (&p, &h) in &self.half_exps {
            x *= (p as f64).powf(h as f64 / 2.0);
        }
        x
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        for &p in self.half_exps.keys() {
            write!(f, " * sqrt({p})")?;
        }
        Ok(())
    }
}

/// Both linearized products for one pair of primes, with the normalizing factors
/// `p^{-(n-1)/2}` (for `T_p`) and `p^{-(n-1)}` (for the `p^2` operator) kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizationTable {
    pub n: usize,
    pub p: u64,
    pub q: u64,
    /// `T_diag(1,p,...,p) o T_diag(1,...,1,q)`, unnormalized.
    pub first: OperatorProduct,
    /// `T_diag(1,p,...,p,p^2) o T_diag(1,q,...,q,q^2)`, unnormalized.
    pub second: OperatorProduct,
}

pub fn linearization_table(n: usize, p: u64, q: u64) -> Result<LinearizationTable> {
    let (first, second) = linearization_products(n, p, q, DEFAULT_BUDGET)?;
    Ok(LinearizationTable { n, p, q, first, second })
}

impl LinearizationTable {
    /// `p^{-(n-1)/2} q^{-(n-1)/2}`.
    pub fn first_scale(&self) -> Surd {
        let h = -(self.n as i64 - 1);
        Surd::prime_power(self.p, h).mul(&Surd::prime_power(self.q, h))
    }

    /// `p^{-(n-1)} q^{-(n-1)}`.
    pub fn second_scale(&self) -> Surd {
        let h = -2 * (self.n as i64 - 1);
        Surd::prime_power(self.p, h).mul(&Surd::prime_power(self.q, h))
    }

    fn scaled(product: &OperatorProduct, scale: &Surd) -> Vec<(MixedLabel, Surd)> {
        product.terms.iter().map(|(m, c)| (m.clone(), scale.mul(&Surd::integer(BigInt::from(c.clone()))))).collect()
    }

    /// Coefficients of the unnormalized operators in the product of the normalized ones.
    pub fn normalized_first(&self) -> Vec<(MixedLabel, Surd)> {
        Self::scaled(&self.first, &self.first_scale())
    }

    pub fn normalized_second(&self) -> Vec<(MixedLabel, Surd)> {
        Self::scaled(&self.second, &self.second_scale())
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = json!({
            "n": self.n,
            "p": self.p,
            "q": self.q,
            "first": self.first.to_json_value(),
            "second": self.second.to_json_value(),
        });
        Ok(serde_json::to_string(&doc)?)
    }
}
