use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Square matrix with exact integer entries, stored row-major.
///
/// Ordering is lexicographic on the row-major entry sequence (for equal `n`), which is the
/// ordering used for every representative table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    /// Builds a matrix from a flat row-major vector of length `n * n`.
    pub fn from_flat(n: usize, entries: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch("matrix dimension must be positive".into()));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(IntMatrix { n, entries })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        Self::from_flat(n, rows.concat())
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(&vec![1; n])
    }

    pub fn diag(values: &[i64]) -> Self {
        let n = values.len();
        let mut entries = vec![0; n * n];
        for (i, v) in values.iter().enumerate() {
            entries[i * n + i] = *v;
        }
        IntMatrix { n, entries }
    }

    /// `diag(p^e_1, ..., p^e_n)`.
    pub fn prime_power_diag(p: u64, exps: &[u32]) -> Result<Self> {
        let values =
            exps.iter().map(|&e| (p as i64).checked_pow(e).ok_or(Error::Overflow)).collect::<Result<Vec<_>>>()?;
        Ok(Self::diag(&values))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.n + j] = v;
    }

    pub fn as_flat(&self) -> &[i64] {
        &self.entries
    }

    pub fn into_flat(self) -> Vec<i64> {
        self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        IntMatrix { n, entries }
    }

    /// Matrix product with overflow detection.
    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.n, self.n, rhs.n, rhs.n
            )));
        }
        let n = self.n;
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k] as i128;
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let acc = entries[i * n + j] as i128 + a * rhs.entries[k * n + j] as i128;
                    entries[i * n + j] = i64::try_from(acc).map_err(|_| Error::Overflow)?;
                }
            }
        }
        Ok(IntMatrix { n, entries })
    }

    /// Multiplies every entry by `k`.
    pub fn checked_scale(&self, k: i64) -> Result<IntMatrix> {
        let entries =
            self.entries.iter().map(|&x| x.checked_mul(k).ok_or(Error::Overflow)).collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix { n: self.n, entries })
    }

    /// Right multiplication by `diag(d_1, ..., d_n)`: scales column `j` by `d_j`.
    pub fn mul_diag_right(&self, d: &[i64]) -> Result<IntMatrix> {
        if d.len() != self.n {
            return Err(Error::DimensionMismatch("diagonal length differs from n".into()));
        }
        let n = self.n;
        let mut entries = self.entries.clone();
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = entries[i * n + j].checked_mul(d[j]).ok_or(Error::Overflow)?;
            }
        }
        Ok(IntMatrix { n, entries })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == 0))
    }

    /// Upper-triangular, positive diagonal, and `0 <= c_ij < c_jj` above the diagonal.
    pub fn is_canonical(&self) -> bool {
        self.is_upper_triangular()
            && (0..self.n).all(|j| {
                let d = self.get(j, j);
                d > 0 && (0..j).all(|i| (0..d).contains(&self.get(i, j)))
            })
    }
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        IntMatrix::from_rows(&rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.rows()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x:>width$}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}
