//! Elementary divisors at a single prime, computed modulo `p^k`.
//!
//! For a matrix whose determinant is `± p^D`, working modulo `p^(D+1)` recovers the exponents
//! of every elementary divisor exactly. Over the local ring a pivot of minimal valuation
//! divides every other entry, so one sweep of row eliminations per step is enough.

use super::IntMatrix;
use crate::error::{Error, Result};

/// Scratch state for repeated valuation-type computations at a fixed prime and precision.
#[derive(Clone, Debug)]
pub struct LocalTyper {
    p: i128,
    precision: u32,
    modulus: i128,
    powers: Vec<i128>,
    work: Vec<i128>,
    narrow: Vec<i64>,
}

/// Machine integers wide enough to hold products of two residues.
trait Residue:
    Copy
    + PartialEq
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + std::ops::Rem<Output = Self>
{
    fn from_i128(x: i128) -> Self;
    fn rem_euclid(self, m: Self) -> Self;
}

impl Residue for i64 {
    #[inline]
    fn from_i128(x: i128) -> Self {
        x as i64
    }
    #[inline]
    fn rem_euclid(self, m: Self) -> Self {
        i64::rem_euclid(self, m)
    }
}

impl Residue for i128 {
    #[inline]
    fn from_i128(x: i128) -> Self {
        x
    }
    #[inline]
    fn rem_euclid(self, m: Self) -> Self {
        i128::rem_euclid(self, m)
    }
}

impl LocalTyper {
    /// `p^precision` must stay below `2^62`.
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        let mut powers = vec![1i128];
        for _ in 0..precision {
            let next = powers.last().unwrap() * p as i128;
            if next > (1i128 << 62) {
                return Err(Error::Overflow);
            }
            powers.push(next);
        }
        Ok(LocalTyper {
            p: p as i128,
            precision,
            modulus: powers[precision as usize],
            powers,
            work: Vec::new(),
            narrow: Vec::new(),
        })
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    #[inline]
    fn valuation(&self, x: i128) -> u32 {
        if x == 0 {
            return self.precision;
        }
        let mut x = x;
        let mut v = 0;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        v
    }

    /// Sorted exponents of the elementary divisors of the leading `k x k` block of a
    /// row-major `n x n` matrix, capped at the precision.
    pub fn leading_block_type(&mut self, entries: &[i64], n: usize, k: usize) -> Vec<u32> {
        let mut vals = if self.modulus < 1 << 31 {
            let mut a = std::mem::take(&mut self.narrow);
            let vals = self.block_type(&mut a, entries, n, k);
            self.narrow = a;
            vals
        } else {
            let mut a = std::mem::take(&mut self.work);
            let vals = self.block_type(&mut a, entries, n, k);
            self.work = a;
            vals
        };
        vals.sort_unstable();
        vals
    }

    fn block_type<T: Residue>(&self, a: &mut Vec<T>, entries: &[i64], n: usize, k: usize) -> Vec<u32> {
        let m = T::from_i128(self.modulus);
        let p = T::from_i128(self.p);
        let zero = T::from_i128(0);
        a.clear();
        for i in 0..k {
            for j in 0..k {
                a.push(T::from_i128(entries[i * n + j] as i128).rem_euclid(m));
            }
        }
        let valuation = |mut x: T| {
            if x == zero {
                return self.precision;
            }
            let mut v = 0;
            while x % p == zero {
                x = x / p;
                v += 1;
            }
            v
        };
        let mut vals = Vec::with_capacity(k);
        for t in 0..k {
            let mut best = (self.precision, t, t);
            'search: for i in t..k {
                for j in t..k {
                    let v = valuation(a[i * k + j]);
                    if v < best.0 {
                        best = (v, i, j);
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
            let (v, pi, pj) = best;
            if v == self.precision {
                vals.resize(k, self.precision);
                break;
            }
            if pi != t {
                for c in 0..k {
                    a.swap(pi * k + c, t * k + c);
                }
            }
            if pj != t {
                for r in 0..k {
                    a.swap(r * k + pj, r * k + t);
                }
            }
            let pv = T::from_i128(self.powers[v as usize]);
            let unit = a[t * k + t] / pv;
            // row_i <- unit * row_i - (x / p^v) * row_t; scaling by a unit keeps the type
            for i in t + 1..k {
                let x = a[i * k + t];
                if x == zero {
                    continue;
                }
                let f = x / pv;
                for c in t + 1..k {
                    a[i * k + c] = (unit * a[i * k + c] - f * a[t * k + c]).rem_euclid(m);
                }
                a[i * k + t] = zero;
            }
            vals.push(v);
        }
        vals
    }

    /// Local Smith form of the leading `k x k` block `B`.
    ///
    /// Returns ascending exponents `v` and a row-major `k x k` matrix `W` such that, for some
    /// `V`, `W^{-1} B V = diag(p^v_1, ..., p^v_k)` modulo `p^precision`.
    pub fn leading_block_smith(&mut self, entries: &[i64], n: usize, k: usize) -> (Vec<u32>, Vec<i64>) {
        let m = self.modulus;
        let mut a: Vec<i128> = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                a.push((entries[i * n + j] as i128).rem_euclid(m));
            }
        }
        let mut w = vec![0i128; k * k];
        for i in 0..k {
            w[i * k + i] = 1;
        }
        let mut vals = Vec::with_capacity(k);
        for t in 0..k {
            let mut best = (self.precision, t, t);
            'search: for i in t..k {
                for j in t..k {
                    let v = self.valuation(a[i * k + j]);
                    if v < best.0 {
                        best = (v, i, j);
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
            let (v, pi, pj) = best;
            if pi != t {
                for c in 0..k {
                    a.swap(pi * k + c, t * k + c);
                    w.swap(c * k + pi, c * k + t);
                }
            }
            if pj != t {
                for r in 0..k {
                    a.swap(r * k + pj, r * k + t);
                }
            }
            if v == self.precision {
                vals.push(v);
                continue;
            }
            let pv = self.powers[v as usize];
            let unit = a[t * k + t] / pv;
            let inv = mod_inverse(unit, m);
            for i in t + 1..k {
                let x = a[i * k + t];
                if x == 0 {
                    continue;
                }
                let f = ((x / pv) % m * inv).rem_euclid(m);
                for c in t + 1..k {
                    a[i * k + c] = (a[i * k + c] - f * a[t * k + c]).rem_euclid(m);
                }
                a[i * k + t] = 0;
                for r in 0..k {
                    w[r * k + t] = (w[r * k + t] + f * w[r * k + i]).rem_euclid(m);
                }
            }
            // column clearing of row t leaves the trailing block untouched; normalize the unit
            for r in 0..k {
                w[r * k + t] = (w[r * k + t] * unit).rem_euclid(m);
            }
            vals.push(v);
        }
        (vals, w.into_iter().map(|x| x as i64).collect())
    }
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "unit part must be invertible");
    old_s.rem_euclid(m)
}

/// Sorted exponents of the `p`-parts of the elementary divisors of `m`.
///
/// Requires `|det m| = p^D` for some `D`; the computation runs modulo `p^(D+1)`.
pub fn local_exponents(m: &IntMatrix, p: u64) -> Result<Vec<u32>> {
    let det = super::divisors::abs_det_u64(m).ok_or(Error::Overflow)?;
    if det == 0 {
        return Err(Error::SingularMatrix);
    }
    let mut d = det;
    let mut exp = 0;
    while d % p == 0 {
        d /= p;
        exp += 1;
    }
    if d != 1 {
        return Err(Error::InvalidArgument(format!("|det| = {det} is not a power of {p}")));
    }
    let mut typer = LocalTyper::new(p, exp + 1)?;
    Ok(typer.leading_block_type(m.as_flat(), m.dim(), m.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::determinantal_vector;

    #[test]
    fn matches_global_divisors_on_small_cases() {
        let cases = [
            vec![vec![2, 1], vec![0, 2]],
            vec![vec![4, 2, 1], vec![0, 2, 3], vec![0, 0, 8]],
            vec![vec![3, 0, 1], vec![0, 3, 2], vec![0, 0, 9]],
            vec![vec![0, 9], vec![-3, 5]],
        ];
        for (rows, p) in cases.iter().zip([2u64, 2, 3, 3]) {
            let m = IntMatrix::from_rows(rows).unwrap();
            let local = local_exponents(&m, p).unwrap();
            let global = determinantal_vector(&m).prime_exponents(p).unwrap();
            assert_eq!(local, global, "{m}");
        }
    }

    #[test]
    fn rejects_non_prime_power_det() {
        let m = IntMatrix::diag(&[2, 3]);
        assert!(local_exponents(&m, 2).is_err());
    }

    #[test]
    fn inverse() {
        assert_eq!(mod_inverse(3, 16) * 3 % 16, 1);
        assert_eq!(mod_inverse(7, 125) * 7 % 125, 1);
    }

    #[test]
    fn smith_transport_preserves_extended_type() {
        // x = W z (mod p^a) gives [[B, x], [0, p^a]] the same type as [[diag(p^v), z], [0, p^a]]
        let p = 2u64;
        let b = [[2i64, 1, 3], [0, 4, 2], [0, 0, 2]];
        let mut typer = LocalTyper::new(p, 12).unwrap();
        let mut flat = vec![0i64; 9];
        for i in 0..3 {
            for j in 0..3 {
                flat[i * 3 + j] = b[i][j];
            }
        }
        let (vals, w) = typer.leading_block_smith(&flat, 3, 3);
        assert_eq!(vals, vec![0, 1, 3]);
        let a = 3u32;
        let pa = 8i64;
        for code in 0..pa.pow(3) {
            let z = [code % pa, code / pa % pa, code / (pa * pa)];
            let mut big = vec![0i64; 16];
            let mut small = vec![0i64; 16];
            for i in 0..3 {
                for j in 0..3 {
                    big[i * 4 + j] = b[i][j];
                }
                small[i * 4 + i] = 1 << vals[i];
                let x: i64 = (0..3).map(|c| w[i * 3 + c] * z[c]).sum();
                big[i * 4 + 3] = x.rem_euclid(pa);
                small[i * 4 + 3] = z[i];
            }
            big[15] = 1 << a;
            small[15] = 1 << a;
            assert_eq!(typer.leading_block_type(&big, 4, 4), typer.leading_block_type(&small, 4, 4));
        }
    }
}
