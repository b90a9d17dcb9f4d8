use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::{determinantal_vector, IntMatrix};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Names the double coset `GL_n(Z) diag(p^e_1, ..., p^e_n) GL_n(Z)` with `e_1 <= ... <= e_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawLabel", into = "RawLabel")]
pub struct CosetLabel {
    p: u64,
    exps: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawLabel {
    n: usize,
    p: u64,
    exps: Vec<u32>,
}

impl TryFrom<RawLabel> for CosetLabel {
    type Error = Error;

    fn try_from(raw: RawLabel) -> Result<Self> {
        if raw.n != raw.exps.len() {
            return Err(Error::InvalidLabel(format!("n = {} but {} exponents given", raw.n, raw.exps.len())));
        }
        CosetLabel::new(raw.p, raw.exps)
    }
}

impl From<CosetLabel> for RawLabel {
    fn from(l: CosetLabel) -> Self {
        RawLabel { n: l.n(), p: l.p, exps: l.exps }
    }
}

impl CosetLabel {
    pub fn new(p: u64, exps: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if exps.len() < 2 {
            return Err(Error::InvalidLabel(format!("need n >= 2, got n = {}", exps.len())));
        }
        if exps.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidLabel(format!("exponents must be nondecreasing: {exps:?}")));
        }
        Ok(CosetLabel { p, exps })
    }

    /// Builds a label from exponents in any order.
    pub fn from_unsorted(p: u64, mut exps: Vec<u32>) -> Result<Self> {
        exps.sort_unstable();
        Self::new(p, exps)
    }

    /// Builds a label from `(exponent, multiplicity)` blocks.
    pub fn blocks(p: u64, blocks: &[(u32, usize)]) -> Result<Self> {
        let exps = blocks.iter().flat_map(|&(e, count)| std::iter::repeat_n(e, count)).collect();
        Self::from_unsorted(p, exps)
    }

    /// `D^(n)(p) = diag(1, p, ..., p, p^2)`.
    pub fn fundamental(n: usize, p: u64) -> Result<Self> {
        Self::blocks(p, &[(0, 1), (1, n.saturating_sub(2)), (2, 1)])
    }

    /// `D_i^(n)(p) = diag(1, ..., 1, p, ..., p)` with `i` copies of `p`.
    pub fn d_i(n: usize, p: u64, i: usize) -> Result<Self> {
        Self::d_ij(n, p, i, 0)
    }

    /// `D_{i,j}^(n)(p)`: `n - i - j` ones, `i` copies of `p`, `j` copies of `p^2`.
    pub fn d_ij(n: usize, p: u64, i: usize, j: usize) -> Result<Self> {
        if i + j > n {
            return Err(Error::InvalidLabel(format!("i + j = {} exceeds n = {n}", i + j)));
        }
        Self::blocks(p, &[(0, n - i - j), (1, i), (2, j)])
    }

    pub fn scalar(n: usize, p: u64, e: u32) -> Result<Self> {
        Self::new(p, vec![e; n])
    }

    /// Classifies an integer matrix whose elementary divisors are all powers of `p`.
    pub fn classify(m: &IntMatrix, p: u64) -> Result<Self> {
        let exps = determinantal_vector(m)
            .prime_exponents(p)
            .ok_or_else(|| Error::InvalidArgument(format!("elementary divisors of\n{m}\nare not powers of {p}")))?;
        Self::new(p, exps)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn min_exp(&self) -> u32 {
        self.exps[0]
    }

    pub fn max_exp(&self) -> u32 {
        *self.exps.last().unwrap()
    }

    pub fn total_exp(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_scalar(&self) -> bool {
        self.min_exp() == self.max_exp()
    }

    /// Adds `k` to every exponent (multiplication by the scalar `p^k`).
    pub fn shifted(&self, k: u32) -> Self {
        CosetLabel { p: self.p, exps: self.exps.iter().map(|e| e + k).collect() }
    }

    /// Strips the common power of `p`: returns `(k, label)` with `self = p^k * label` and
    /// `label.min_exp() == 0`.
    pub fn reduced(&self) -> (u32, Self) {
        let k = self.min_exp();
        (k, CosetLabel { p: self.p, exps: self.exps.iter().map(|e| e - k).collect() })
    }

    /// `diag(p^e_1, ..., p^e_n)`.
    pub fn diagonal(&self) -> Result<IntMatrix> {
        IntMatrix::prime_power_diag(self.p, &self.exps)
    }

    pub fn diagonal_values(&self) -> Result<Vec<i64>> {
        self.exps.iter().map(|&e| (self.p as i64).checked_pow(e).ok_or(Error::Overflow)).collect()
    }

    /// Exponents with the order reversed and negated, shifted back to minimum zero: the label
    /// of `p^max * g^-1`.
    pub fn adjoint(&self) -> Self {
        let m = self.max_exp();
        CosetLabel { p: self.p, exps: self.exps.iter().rev().map(|e| m - e).collect() }
    }
}

impl fmt::Display for CosetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} (", self.p)?;
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&x| is_prime(x)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn validation() {
        assert!(matches!(CosetLabel::new(4, vec![0, 1]), Err(Error::NotPrime(4))));
        assert!(CosetLabel::new(2, vec![1, 0]).is_err());
        assert!(CosetLabel::new(2, vec![0]).is_err());
        assert!(CosetLabel::d_ij(3, 2, 2, 2).is_err());
    }

    #[test]
    fn named_labels() {
        assert_eq!(CosetLabel::fundamental(4, 3).unwrap().exps(), &[0, 1, 1, 2]);
        assert_eq!(CosetLabel::d_i(4, 3, 1).unwrap().exps(), &[0, 0, 0, 1]);
        assert_eq!(CosetLabel::d_ij(5, 2, 2, 1).unwrap().exps(), &[0, 0, 1, 1, 2]);
    }

    #[test]
    fn reduce_and_shift() {
        let l = CosetLabel::new(2, vec![1, 2, 2, 3]).unwrap();
        let (k, r) = l.reduced();
        assert_eq!(k, 1);
        assert_eq!(r.exps(), &[0, 1, 1, 2]);
        assert_eq!(r.shifted(1), l);
        assert_eq!(CosetLabel::new(2, vec![0, 0, 1, 3]).unwrap().adjoint().exps(), &[0, 2, 3, 3]);
    }

    #[test]
    fn classify_diagonal() {
        let l = CosetLabel::new(3, vec![0, 1, 1, 2]).unwrap();
        assert_eq!(CosetLabel::classify(&l.diagonal().unwrap(), 3).unwrap(), l);
    }

    #[test]
    fn json_shape() {
        let l = CosetLabel::new(2, vec![0, 1]).unwrap();
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"n":2,"p":2,"exps":[0,1]}"#);
        assert!(serde_json::from_str::<CosetLabel>(r#"{"n":3,"p":2,"exps":[0,1]}"#).is_err());
    }
}
