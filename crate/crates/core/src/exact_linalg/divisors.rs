use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::exact::{lift, run_exact, sub_mul, Exact};
use super::hnf::swap_rows;
use super::IntMatrix;
use crate::error::{Error, Result};

/// `(d_1, ..., d_n)` where `d_k` is the gcd of all `k x k` minors (0 when they all vanish).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DeterminantalVector {
    pub values: Vec<BigUint>,
}

impl DeterminantalVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The reference vector `(1, p, ..., p^(n-2), p^n)` of `diag(1, p, ..., p, p^2)`.
    pub fn reference(n: usize, p: u64) -> Self {
        let p = BigUint::from(p);
        let mut values: Vec<BigUint> = (0..n.saturating_sub(1)).map(|k| p.pow(k as u32)).collect();
        values.push(p.pow(n as u32));
        DeterminantalVector { values }
    }

    /// Successive quotients `d_k / d_(k-1)`; `None` once a divisor is zero.
    pub fn elementary_divisors(&self) -> Vec<Option<BigUint>> {
        let mut prev = BigUint::one();
        self.values
            .iter()
            .map(|d| {
                if d.is_zero() || prev.is_zero() {
                    prev = BigUint::zero();
                    None
                } else {
                    let q = d / &prev;
                    prev = d.clone();
                    Some(q)
                }
            })
            .collect()
    }

    /// Exponents `e_k` with elementary divisor `k` equal to `p^e_k`, if every one is a power of `p`.
    pub fn prime_exponents(&self, p: u64) -> Option<Vec<u32>> {
        self.elementary_divisors().into_iter().map(|d| d.and_then(|d| power_of(&d, p))).collect()
    }

    /// `d_k | d_(k+1)` for every consecutive pair of nonzero entries.
    pub fn is_divisibility_chain(&self) -> bool {
        self.values.windows(2).all(|w| w[0].is_zero() || w[1].is_zero() || (&w[1] % &w[0]).is_zero())
    }
}

impl fmt::Display for DeterminantalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

fn power_of(x: &BigUint, p: u64) -> Option<u32> {
    let p = BigUint::from(p);
    let mut x = x.clone();
    let mut e = 0;
    while (&x % &p).is_zero() {
        x /= &p;
        e += 1;
    }
    x.is_one().then_some(e)
}

/// Exact determinant of the submatrix on `rows x cols` (0-based, strictly increasing).
pub fn minor(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> Result<BigInt> {
    let n = m.dim();
    let k = rows.len();
    if k == 0 || k != cols.len() || k > n {
        return Err(Error::InvalidIndices(format!(
            "need 1 <= |rows| = |cols| <= {n}, got {} and {}",
            rows.len(),
            cols.len()
        )));
    }
    for set in [rows, cols] {
        if set.windows(2).any(|w| w[0] >= w[1]) || set.iter().any(|&i| i >= n) {
            return Err(Error::InvalidIndices(format!("indices must be strictly increasing and below {n}: {set:?}")));
        }
    }
    let sub: Vec<i64> = rows.iter().flat_map(|&r| cols.iter().map(move |&c| m.get(r, c))).collect();
    Ok(determinant_flat(k, &sub))
}

/// Exact determinant.
pub fn determinant(m: &IntMatrix) -> BigInt {
    determinant_flat(m.dim(), m.as_flat())
}

fn determinant_flat(k: usize, entries: &[i64]) -> BigInt {
    run_exact(|| bareiss::<i128>(k, lift(entries)).map(Into::into), || bareiss::<BigInt>(k, lift(entries)))
}

/// Fraction-free Gaussian elimination.
fn bareiss<T: Exact>(k: usize, mut a: Vec<T>) -> Option<T> {
    let mut sign = T::one();
    let mut prev = T::one();
    for t in 0..k {
        let Some(p) = (t..k).find(|&i| !a[i * k + t].is_zero()) else {
            return Some(T::zero());
        };
        if p != t {
            swap_rows(&mut a, k, p, t);
            sign = -sign;
        }
        for i in t + 1..k {
            for j in t + 1..k {
                let x =
                    a[i * k + j].checked_mul(&a[t * k + t])?.checked_sub(&a[i * k + t].checked_mul(&a[t * k + j])?)?;
                a[i * k + j] = x / prev.clone();
            }
            a[i * k + t] = T::zero();
        }
        prev = a[t * k + t].clone();
    }
    sign.checked_mul(&a[k * k - 1])
}

/// Determinantal divisors by Smith-style elimination: `d_k` is the product of the first `k`
/// invariant factors.
pub fn determinantal_vector(m: &IntMatrix) -> DeterminantalVector {
    let n = m.dim();
    let factors: Vec<BigInt> = run_exact(
        || smith_diagonal::<i128>(n, lift(m.as_flat())).map(|v| v.into_iter().map(Into::into).collect()),
        || smith_diagonal::<BigInt>(n, lift(m.as_flat())),
    );
    let mut acc = BigUint::one();
    let values = factors
        .into_iter()
        .map(|f| {
            acc *= f.abs().to_biguint().expect("absolute value is nonnegative");
            acc.clone()
        })
        .collect();
    DeterminantalVector { values }
}

/// Invariant factors `s_1 | s_2 | ... | s_n` (nonnegative, zeros past the rank).
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.dim();
    run_exact(
        || smith_diagonal::<i128>(n, lift(m.as_flat())).map(|v| v.into_iter().map(Into::into).collect()),
        || smith_diagonal::<BigInt>(n, lift(m.as_flat())),
    )
}

fn smith_diagonal<T: Exact>(n: usize, mut a: Vec<T>) -> Option<Vec<T>> {
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            let pivot = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i * n + j].is_zero())
                .min_by(|&(i, j), &(k, l)| a[i * n + j].abs().cmp(&a[k * n + l].abs()));
            let Some((pi, pj)) = pivot else {
                diag.resize(n, T::zero());
                return Some(diag);
            };
            swap_rows(&mut a, n, pi, t);
            if pj != t {
                for r in 0..n {
                    a.swap(r * n + pj, r * n + t);
                }
            }
            let mut dirty = false;
            for i in t + 1..n {
                if a[i * n + t].is_zero() {
                    continue;
                }
                let q = a[i * n + t].div_floor(&a[t * n + t]);
                for c in t..n {
                    a[i * n + c] = sub_mul(&a[i * n + c], &q, &a[t * n + c])?;
                }
                dirty |= !a[i * n + t].is_zero();
            }
            for j in t + 1..n {
                if a[t * n + j].is_zero() {
                    continue;
                }
                let q = a[t * n + j].div_floor(&a[t * n + t]);
                for r in t..n {
                    a[r * n + j] = sub_mul(&a[r * n + j], &q, &a[r * n + t])?;
                }
                dirty |= !a[t * n + j].is_zero();
            }
            if dirty {
                continue;
            }
            let bad_row = (t + 1..n).find(|&i| (t + 1..n).any(|j| !a[i * n + j].is_multiple_of(&a[t * n + t])));
            match bad_row {
                Some(r) => {
                    for c in t..n {
                        a[t * n + c] = a[t * n + c].checked_add(&a[r * n + c])?;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t * n + t].abs());
    }
    Some(diag)
}

/// `h` lies in `GL_n(Z) g GL_n(Z)` iff the determinantal vectors agree.
pub fn same_double_coset(g: &IntMatrix, h: &IntMatrix) -> Result<bool> {
    if g.dim() != h.dim() {
        return Err(Error::DimensionMismatch(format!("{}x{} vs {}x{}", g.dim(), g.dim(), h.dim(), h.dim())));
    }
    Ok(determinantal_vector(g) == determinantal_vector(h))
}

/// `|det|` as a `u64`, when it fits.
pub fn abs_det_u64(m: &IntMatrix) -> Option<u64> {
    determinant(m).abs().to_u64()
}
