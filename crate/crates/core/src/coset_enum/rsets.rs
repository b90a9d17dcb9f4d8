//! The explicit representative sets `R_0^(n)(p)` and `R_1^(n)(p)` for `diag(1, p, ..., p, p^2)`,
//! generated straight from their defining conditions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::label::CosetLabel;
use crate::error::{Error, Result};
use crate::exact_linalg::{determinantal_vector, DeterminantalVector, IntMatrix};

fn check_args(n: usize, p: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    if !super::label::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

fn upper_slots(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// Upper-triangular matrices with every diagonal entry `p`, off-diagonal entries in `[0, p)`,
/// and determinantal vector `(1, p, ..., p^(n-2), p^n)`.
pub fn r0_set(n: usize, p: u64) -> Result<Vec<IntMatrix>> {
    check_args(n, p)?;
    let slots = upper_slots(n);
    let count =
        (p as u128).checked_pow(slots.len() as u32).filter(|&c| c <= u64::MAX as u128).ok_or(Error::Overflow)? as u64;
    let target = DeterminantalVector::reference(n, p);
    let base = IntMatrix::diag(&vec![p as i64; n]);
    let mut out: Vec<IntMatrix> = (0..count)
        .into_par_iter()
        .filter_map(|mut code| {
            let mut m = base.clone();
            for &(i, j) in &slots {
                m.set(i, j, (code % p) as i64);
                code /= p;
            }
            (determinantal_vector(&m) == target).then_some(m)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Upper-triangular column-reduced matrices with diagonal in `{1, p, p^2}`, exactly one `1` and
/// one `p^2` on the diagonal, and `p | c_ij` for `j > i` whenever `p | c_ii`.
pub fn r1_set(n: usize, p: u64) -> Result<Vec<IntMatrix>> {
    check_args(n, p)?;
    let p = p as i64;
    let slots = upper_slots(n);
    let mut out = Vec::new();
    for unit in 0..n {
        for square in (0..n).filter(|&s| s != unit) {
            let mut diag = vec![p; n];
            diag[unit] = 1;
            diag[square] = p * p;
            // allowed values for each slot
            let choices: Vec<Vec<i64>> = slots
                .iter()
                .map(|&(i, j)| {
                    let step = if diag[i] % p == 0 { p } else { 1 };
                    (0..diag[j]).step_by(step as usize).collect()
                })
                .collect();
            let mut idx = vec![0usize; slots.len()];
            'outer: loop {
                let mut m = IntMatrix::diag(&diag);
                for (s, &(i, j)) in slots.iter().enumerate() {
                    m.set(i, j, choices[s][idx[s]]);
                }
                out.push(m);
                for s in 0..slots.len() {
                    idx[s] += 1;
                    if idx[s] < choices[s].len() {
                        continue 'outer;
                    }
                    idx[s] = 0;
                }
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

fn pw(p: u64, k: usize) -> BigInt {
    BigInt::from(p).pow(k as u32)
}

fn exact(num: BigInt, den: BigInt) -> BigInt {
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero() && !q.is_negative());
    q
}

/// `((n-1) p^n - n p^(n-1) + 1) / (p - 1)`.
pub fn r0_cardinality(n: usize, p: u64) -> BigInt {
    let nn = BigInt::from(n);
    exact((&nn - 1) * pw(p, n) - &nn * pw(p, n - 1) + 1, BigInt::from(p - 1))
}

/// `(p^(2n) - n p^(n+1) + 2(n-1) p^n - n p^(n-1) + 1) / (p - 1)^2`.
pub fn r1_cardinality(n: usize, p: u64) -> BigInt {
    let nn = BigInt::from(n);
    exact(
        pw(p, 2 * n) - &nn * pw(p, n + 1) + 2 * (&nn - 1) * pw(p, n) - &nn * pw(p, n - 1) + 1,
        BigInt::from(p - 1).pow(2),
    )
}

/// `c_ij = 0` for all `2 <= i < j <= n - 1` (1-based), i.e. the block strictly inside the
/// first row and last column vanishes.
pub fn interior_vanishes(c: &IntMatrix) -> bool {
    let n = c.dim();
    (1..n.saturating_sub(1)).all(|i| (i + 1..n - 1).all(|j| c.get(i, j) == 0))
}

/// Structural law for `C in R_0^(n)(p)`, `n >= 4` (0-based indices):
/// `c_ij c_kl = c_il c_kj (mod p)` for `i < k < j < l`, `c_ij c_kl = 0` for `i < j <= k < l`,
/// and `C != p I`.
pub fn r0_structure_holds(c: &IntMatrix, p: u64) -> bool {
    let n = c.dim();
    let p = p as i64;
    if *c == IntMatrix::diag(&vec![p; n]) {
        return false;
    }
    for i in 0..n {
        for k in i + 1..n {
            for j in k + 1..n {
                for l in j + 1..n {
                    let lhs = c.get(i, j) * c.get(k, l) - c.get(i, l) * c.get(k, j);
                    if lhs.rem_euclid(p) != 0 {
                        return false;
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j..n {
                for l in k + 1..n {
                    if c.get(i, j) * c.get(k, l) != 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `R_0^(n)(p)` split by [`interior_vanishes`], with the double coset of `C_0 D^(n)(p)` for
/// each member.
#[derive(Clone, Debug)]
pub struct R0Split {
    pub n: usize,
    pub p: u64,
    /// Members with vanishing interior, paired with the class of `C_0 D`.
    pub interior_zero: Vec<(IntMatrix, CosetLabel)>,
    pub interior_nonzero: Vec<(IntMatrix, CosetLabel)>,
}

impl R0Split {
    pub fn compute(n: usize, p: u64) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidArgument(format!("the split needs n >= 4, got {n}")));
        }
        let d = CosetLabel::fundamental(n, p)?.diagonal_values()?;
        let mut interior_zero = Vec::new();
        let mut interior_nonzero = Vec::new();
        for c in r0_set(n, p)? {
            let class = CosetLabel::classify(&c.mul_diag_right(&d)?, p)?;
            if interior_vanishes(&c) {
                interior_zero.push((c, class));
            } else {
                interior_nonzero.push((c, class));
            }
        }
        Ok(R0Split { n, p, interior_zero, interior_nonzero })
    }

    /// `2 p^(n-1) - p - 1`.
    pub fn expected_interior_zero(n: usize, p: u64) -> BigInt {
        2 * pw(p, n - 1) - p - 1
    }

    /// `p^2 ((n-3) p^(n-2) - (n-2) p^(n-3) + 1) / (p - 1)`.
    pub fn expected_interior_nonzero(n: usize, p: u64) -> BigInt {
        exact(
            pw(p, 2) * (BigInt::from(n - 3) * pw(p, n - 2) - BigInt::from(n - 2) * pw(p, n - 3) + 1),
            BigInt::from(p - 1),
        )
    }

    /// `diag(p, p^2, ..., p^2, p^3)`.
    pub fn interior_zero_target(n: usize, p: u64) -> Result<CosetLabel> {
        CosetLabel::blocks(p, &[(1, 1), (2, n - 2), (3, 1)])
    }

    /// `diag(p, p, p^2, ..., p^2, p^3, p^3)`.
    pub fn interior_nonzero_target(n: usize, p: u64) -> Result<CosetLabel> {
        CosetLabel::blocks(p, &[(1, 2), (2, n - 4), (3, 2)])
    }

    /// Every member lands in its predicted double coset.
    pub fn targets_match(&self) -> Result<bool> {
        let zero = Self::interior_zero_target(self.n, self.p)?;
        let nonzero = Self::interior_nonzero_target(self.n, self.p)?;
        Ok(self.interior_zero.iter().all(|(_, l)| *l == zero)
            && self.interior_nonzero.iter().all(|(_, l)| *l == nonzero))
    }
}
