use num_bigint::BigInt;

use super::exact::{lift, run_exact, sub_mul, to_i64, Exact};
use super::IntMatrix;
use crate::error::{Error, Result};

/// Canonical representative of the right coset `GL_n(Z) m`.
///
/// Only row operations (left unimodular action) are used. The result is the unique `C`
/// with `GL_n(Z) m = GL_n(Z) C`, `C` upper-triangular with positive diagonal and
/// `0 <= c_ij < c_jj` for `i < j`.
pub fn hnf(m: &IntMatrix) -> Result<IntMatrix> {
    let n = m.dim();
    let flat = run_exact(
        || hnf_rows::<i128>(n, lift(m.as_flat())).map(|r| r.map(narrow)),
        || hnf_rows::<BigInt>(n, lift(m.as_flat())).map(|r| r.map(narrow)),
    )?;
    IntMatrix::from_flat(n, flat?)
}

fn narrow<T: Exact>(v: Vec<T>) -> Result<Vec<i64>> {
    v.into_iter().map(|x| to_i64(x).ok_or(Error::Overflow)).collect()
}

/// Returns `None` on overflow and `Some(Err(SingularMatrix))` for singular input.
fn hnf_rows<T: Exact>(n: usize, mut a: Vec<T>) -> Option<Result<Vec<T>>> {
    for j in 0..n {
        loop {
            let pivot = (j..n)
                .filter(|&i| !a[i * n + j].is_zero())
                .min_by(|&x, &y| a[x * n + j].abs().cmp(&a[y * n + j].abs()));
            let Some(pivot) = pivot else {
                return Some(Err(Error::SingularMatrix));
            };
            swap_rows(&mut a, n, pivot, j);
            let mut cleared = true;
            for i in j + 1..n {
                if a[i * n + j].is_zero() {
                    continue;
                }
                let q = a[i * n + j].div_floor(&a[j * n + j]);
                for c in j..n {
                    a[i * n + c] = sub_mul(&a[i * n + c], &q, &a[j * n + c])?;
                }
                if !a[i * n + j].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if a[j * n + j].is_negative() {
            for c in j..n {
                a[j * n + c] = -a[j * n + c].clone();
            }
        }
        for i in 0..j {
            let q = a[i * n + j].div_floor(&a[j * n + j]);
            if q.is_zero() {
                continue;
            }
            for c in j..n {
                a[i * n + c] = sub_mul(&a[i * n + c], &q, &a[j * n + c])?;
            }
        }
    }
    Some(Ok(a))
}

pub(crate) fn swap_rows<T>(a: &mut [T], n: usize, r1: usize, r2: usize) {
    if r1 != r2 {
        for c in 0..n {
            a.swap(r1 * n + c, r2 * n + c);
        }
    }
}
