use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::product::right_coset_counts;
use crate::coset_enum::{enumerate_right_cosets, formula_degree, CosetLabel};
use crate::error::{Error, Result};
use crate::exact_linalg::{determinantal_vector, IntMatrix};

/// Exponents of one prime in a mixed label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimePart {
    pub p: u64,
    pub exps: Vec<u32>,
}

/// A double coset whose elementary divisors involve several primes, stored one prime at a time.
///
/// The `k`-th elementary divisor is `prod_p p^(exps_p[k])`. Primes with all exponents zero
/// are omitted, so the identity has no parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MixedLabel {
    n: usize,
    parts: Vec<PrimePart>,
}

impl MixedLabel {
    pub fn identity(n: usize) -> Self {
        MixedLabel { n, parts: Vec::new() }
    }

    pub fn from_label(label: &CosetLabel) -> Self {
        let mut out = Self::identity(label.n());
        if label.max_exp() > 0 {
            out.parts.push(PrimePart { p: label.p(), exps: label.exps().to_vec() });
        }
        out
    }

    /// Joins labels at pairwise distinct primes.
    pub fn from_labels(labels: &[CosetLabel]) -> Result<Self> {
        let n = labels
            .first()
            .map(|l| l.n())
            .ok_or_else(|| Error::InvalidArgument("a mixed label needs at least one part".into()))?;
        let mut parts = Vec::new();
        for l in labels {
            if l.n() != n {
                return Err(Error::DimensionMismatch(format!("{l} is not of size {n}")));
            }
            if parts.iter().any(|q: &PrimePart| q.p == l.p()) {
                return Err(Error::InvalidArgument(format!("prime {} repeated", l.p())));
            }
            if l.max_exp() > 0 {
                parts.push(PrimePart { p: l.p(), exps: l.exps().to_vec() });
            }
        }
        parts.sort();
        Ok(MixedLabel { n, parts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[PrimePart] {
        &self.parts
    }

    pub fn is_identity(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, p: u64) -> Option<CosetLabel> {
        self.parts
            .iter()
            .find(|q| q.p == p)
            .map(|q| CosetLabel::new(q.p, q.exps.clone()).expect("parts are valid labels"))
    }

    /// Elementary divisors in divisibility order.
    pub fn elementary_divisors(&self) -> Vec<BigUint> {
        (0..self.n)
            .map(|k| self.parts.iter().fold(BigUint::one(), |acc, q| acc * BigUint::from(q.p).pow(q.exps[k])))
            .collect()
    }

    pub fn diagonal(&self) -> Result<IntMatrix> {
        let vals = self
            .elementary_divisors()
            .into_iter()
            .map(|d| i64::try_from(d).map_err(|_| Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::diag(&vals))
    }

    /// Degree, multiplicative over the primes.
    pub fn degree(&self) -> BigUint {
        self.parts.iter().map(|q| formula_degree(&CosetLabel::new(q.p, q.exps.clone()).expect("valid part"))).product()
    }

    /// Classifies a nonsingular integer matrix whose elementary divisors only involve `primes`.
    pub fn classify(m: &IntMatrix, primes: &[u64]) -> Result<Self> {
        let n = m.dim();
        let divisors = determinantal_vector(m).elementary_divisors();
        let mut exps: Vec<Vec<u32>> = vec![Vec::with_capacity(n); primes.len()];
        for d in divisors {
            let mut d = d.ok_or(Error::SingularMatrix)?;
            for (i, &p) in primes.iter().enumerate() {
                let bp = BigUint::from(p);
                let mut e = 0;
                loop {
                    let (q, r) = d.div_rem(&bp);
                    if !r.is_zero() {
                        break;
                    }
                    d = q;
                    e += 1;
                }
                exps[i].push(e);
            }
            if !d.is_one() {
                return Err(Error::InvalidArgument(format!(
                    "elementary divisor has a prime factor outside {primes:?}"
                )));
            }
        }
        let labels = primes.iter().zip(exps).map(|(&p, e)| CosetLabel::new(p, e)).collect::<Result<Vec<_>>>()?;
        Self::from_labels(&labels)
    }
}

impl fmt::Display for MixedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "Id");
        }
        let d: Vec<String> = self.elementary_divisors().iter().map(|x| x.to_string()).collect();
        write!(f, "diag({})", d.join(","))
    }
}

/// The single double coset `a * b` for labels at distinct primes with trivial first divisor.
///
/// The product is computed by classifying `diag(a) diag(b)`.
pub fn coprime_product(a: &CosetLabel, b: &CosetLabel) -> Result<MixedLabel> {
    if a.p() == b.p() {
        return Err(Error::Precondition(format!("{a} and {b} share the prime {}", a.p())));
    }
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!("{a} and {b} differ in size")));
    }
    for l in [a, b] {
        if l.min_exp() > 0 {
            return Err(Error::Precondition(format!("{l} has first divisor {}^{} != 1", l.p(), l.min_exp())));
        }
    }
    let g = a.diagonal()?.checked_mul(&b.diagonal()?)?;
    MixedLabel::classify(&g, &[a.p(), b.p()])
}

/// Outcome of the pairwise check of a coprime product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoprimeCheck {
    pub product: MixedLabel,
    pub pairs: u64,
    pub distinct_cosets: u64,
    /// Every `alpha_i beta_j` lies in the double coset of `product`.
    pub all_in_product: bool,
}

impl CoprimeCheck {
    /// All products land in one double coset and no right coset repeats, so the
    /// multiplicity is one and `deg(product) = deg(a) deg(b)`.
    pub fn holds(&self) -> bool {
        self.all_in_product
            && self.pairs == self.distinct_cosets
            && self.product.degree() == BigUint::from(self.distinct_cosets)
    }
}

pub fn verify_coprime_bruteforce(a: &CosetLabel, b: &CosetLabel, pair_budget: u64) -> Result<CoprimeCheck> {
    let product = coprime_product(a, b)?;
    let pairs = formula_degree(a) * formula_degree(b);
    if pairs > BigUint::from(pair_budget) {
        return Err(Error::BudgetExceeded { degree: pairs.to_string(), budget: pair_budget });
    }
    let ta = enumerate_right_cosets(a, pair_budget)?;
    let tb = enumerate_right_cosets(b, pair_budget)?;
    let cosets = right_coset_counts(&ta.reps, &tb.reps)?;
    let primes = [a.p(), b.p()];
    let mut all_in_product = true;
    for c in cosets.keys() {
        if MixedLabel::classify(&IntMatrix::from_flat(a.n(), c.clone())?, &primes)? != product {
            all_in_product = false;
            break;
        }
    }
    Ok(CoprimeCheck {
        product,
        pairs: (ta.reps.len() * tb.reps.len()) as u64,
        distinct_cosets: cosets.len() as u64,
        all_in_product,
    })
}
