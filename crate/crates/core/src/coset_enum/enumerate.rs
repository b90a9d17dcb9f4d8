//! Enumeration of canonical right-coset representatives of a diagonal double coset.
//!
//! Representatives are the canonical forms `C` (upper-triangular, diagonal `p^a_j`,
//! `0 <= c_ij < p^a_j`) whose elementary divisors at `p` equal the label. The diagonal
//! exponents of such a `C` need not be a permutation of the label, so every composition
//! `a` of the total exponent with parts in `[e_min, e_max]` is visited.
//!
//! Columns are filled left to right. If `B` is the leading `k x k` block then
//! `coker B` embeds in `coker C` with quotient generated by `n - k` elements, so the type
//! `mu` of `B` must fit inside the target type `lambda` and every column of the skew
//! diagram `lambda / mu` has at most `n - k` cells. Prefixes failing either test are pruned.

use std::collections::HashMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::degree::index_formula_degree;
use super::label::CosetLabel;
use super::table::CosetTable;
use crate::error::{Error, Result};
use crate::exact_linalg::{IntMatrix, LocalTyper};

/// Default cap on the number of representatives a single table may hold.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Target type and pruning data for one label.
struct Target {
    n: usize,
    p: u64,
    precision: u32,
    /// Exponents sorted in descending order.
    lambda: Vec<u32>,
    /// `lambda_conj[c - 1] = #{i : lambda_i >= c}`.
    lambda_conj: Vec<usize>,
}

impl Target {
    fn new(label: &CosetLabel) -> Self {
        let mut lambda = label.exps().to_vec();
        lambda.reverse();
        let max = label.max_exp();
        let lambda_conj = (1..=max).map(|c| lambda.iter().filter(|&&x| x >= c).count()).collect();
        Target { n: label.n(), p: label.p(), precision: label.total_exp() + 1, lambda, lambda_conj }
    }

    /// `mu` is the ascending type of a leading `k x k` block.
    fn admits_prefix(&self, mu_ascending: &[u32], k: usize) -> bool {
        if k == self.n {
            return mu_ascending.iter().rev().eq(self.lambda.iter());
        }
        // containment, both sorted descending
        if mu_ascending.iter().rev().zip(&self.lambda).any(|(m, l)| m > l) {
            return false;
        }
        let slack = self.n - k;
        self.lambda_conj.iter().enumerate().all(|(c, &lc)| {
            let mc = mu_ascending.iter().filter(|&&x| x > c as u32).count();
            lc - mc <= slack
        })
    }
}

/// All compositions of `total` into `n` parts in `[lo, hi]`.
fn diagonal_assignments(n: usize, total: u32, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, lo: u32, hi: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let remaining = n - cur.len();
        if remaining == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let r = remaining as u32;
        for a in lo..=hi {
            if a > left {
                break;
            }
            let rest = left - a;
            if rest < lo * (r - 1) || rest > hi * (r - 1) {
                continue;
            }
            cur.push(a);
            rec(n, rest, lo, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, total, lo, hi, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Admissible column classes, keyed by the local Smith exponents of the leading block and the
/// exponent of the new diagonal entry.
type ClassMemo = HashMap<(Vec<u32>, u32), Vec<Vec<i64>>>;

struct Search<'a> {
    target: &'a Target,
    assignment: &'a [u32],
    typer: LocalTyper,
    memo: ClassMemo,
}

impl Search<'_> {
    /// Classes `y` (with `0 <= y_i < p^min(v_i, a)`) for which
    /// `[[diag(p^v), y], [0, p^a]]` is an admissible leading block.
    fn admissible_classes(&mut self, vals: &[u32], a: u32) -> Vec<Vec<i64>> {
        let k = vals.len();
        let m = k + 1;
        let p = self.target.p as i64;
        let moduli: Vec<i64> = vals.iter().map(|&v| p.pow(v.min(a))).collect();
        let mut block = vec![0i64; m * m];
        for (i, &v) in vals.iter().enumerate() {
            block[i * m + i] = p.pow(v);
        }
        block[m * m - 1] = p.pow(a);
        let mut out = Vec::new();
        let mut y = vec![0i64; k];
        loop {
            for i in 0..k {
                block[i * m + k] = y[i];
            }
            let mu = self.typer.leading_block_type(&block, m, m);
            if self.target.admits_prefix(&mu, m) {
                out.push(y.clone());
            }
            if !odometer(&mut y, &moduli) {
                return out;
            }
        }
    }

    /// Fills columns `col..n` of `entries`, pushing every completed matrix into `out`.
    ///
    /// If `W^{-1} B V = diag(p^v)` locally, the type of the extended block depends only on
    /// `z = W^{-1} x` reduced modulo `p^min(v_i, a)`, and `x -> W^{-1} x` is a bijection on
    /// `(Z/p^a)^col`. So each admissible class is typed once and then lifted.
    fn extend(&mut self, entries: &mut Vec<i64>, col: usize, out: &mut Vec<Vec<i64>>) {
        let n = self.target.n;
        if col == n {
            out.push(entries.clone());
            return;
        }
        let a = self.assignment[col];
        let pa = (self.target.p as i64).pow(a);
        let (vals, w) = self.typer.leading_block_smith(entries, n, col);
        let key = (vals, a);
        if !self.memo.contains_key(&key) {
            let classes = self.admissible_classes(&key.0, a);
            self.memo.insert(key.clone(), classes);
        }
        let classes = self.memo[&key].clone();
        let p = self.target.p as i64;
        let steps: Vec<i64> = key.0.iter().map(|&v| p.pow(v.min(a))).collect();
        let spans: Vec<i64> = steps.iter().map(|&g| pa / g).collect();
        let mut z = vec![0i64; col];
        for y in &classes {
            let mut t = vec![0i64; col];
            loop {
                for i in 0..col {
                    z[i] = y[i] + steps[i] * t[i];
                }
                for r in 0..col {
                    let mut acc = 0i128;
                    for c in 0..col {
                        acc += w[r * col + c] as i128 * z[c] as i128;
                    }
                    entries[r * n + col] = acc.rem_euclid(pa as i128) as i64;
                }
                self.extend(entries, col + 1, out);
                if !odometer(&mut t, &spans) {
                    break;
                }
            }
        }
        for r in 0..col {
            entries[r * n + col] = 0;
        }
    }
}

/// Advances a mixed-radix counter; returns `false` after wrapping around.
fn odometer(digits: &mut [i64], radix: &[i64]) -> bool {
    for (d, &r) in digits.iter_mut().zip(radix) {
        *d += 1;
        if *d < r {
            return true;
        }
        *d = 0;
    }
    false
}

/// Canonical representatives for a label with `min_exp == 0`, sorted.
fn enumerate_reduced(label: &CosetLabel) -> Result<Vec<IntMatrix>> {
    let target = Target::new(label);
    let n = target.n;
    let assignments = diagonal_assignments(n, label.total_exp(), label.min_exp(), label.max_exp());
    let mut reps: Vec<Vec<i64>> = assignments
        .par_iter()
        .map(|a| -> Result<Vec<Vec<i64>>> {
            let mut entries = vec![0i64; n * n];
            for (j, &e) in a.iter().enumerate() {
                entries[j * n + j] = (target.p as i64).checked_pow(e).ok_or(Error::Overflow)?;
            }
            let mut search = Search {
                target: &target,
                assignment: a,
                typer: LocalTyper::new(target.p, target.precision)?,
                memo: HashMap::new(),
            };
            let mut out = Vec::new();
            search.extend(&mut entries, 0, &mut out);
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    reps.par_sort_unstable();
    reps.into_iter().map(|e| IntMatrix::from_flat(n, e)).collect()
}

/// All canonical right-coset representatives of the double coset named by `label`.
///
/// Fails with [`Error::BudgetExceeded`] when the degree exceeds `limit`.
pub fn enumerate_right_cosets(label: &CosetLabel, limit: u64) -> Result<CosetTable> {
    let expected = index_formula_degree(label);
    if expected > BigUint::from(limit) {
        return Err(Error::BudgetExceeded { degree: expected.to_string(), budget: limit });
    }
    let (shift, reduced) = label.reduced();
    let mut reps = enumerate_reduced(&reduced)?;
    if shift > 0 {
        let k = (label.p() as i64).checked_pow(shift).ok_or(Error::Overflow)?;
        reps = reps.iter().map(|m| m.checked_scale(k)).collect::<Result<Vec<_>>>()?;
    }
    Ok(CosetTable { label: label.clone(), reps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{determinantal_vector, hnf};

    fn label(p: u64, e: &[u32]) -> CosetLabel {
        CosetLabel::new(p, e.to_vec()).unwrap()
    }

    /// Every upper-triangular column-reduced matrix with determinant `p^total`, filtered by
    /// the global determinantal vector. Independent of the pruned search.
    fn brute_force(l: &CosetLabel) -> Vec<IntMatrix> {
        let n = l.n();
        let target = determinantal_vector(&l.diagonal().unwrap());
        let mut out = Vec::new();
        for a in diagonal_assignments(n, l.total_exp(), 0, l.total_exp()) {
            let diag: Vec<i64> = a.iter().map(|&e| (l.p() as i64).pow(e)).collect();
            let slots: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            let total: i64 = slots.iter().map(|&(_, j)| diag[j]).product();
            for mut code in 0..total {
                let mut m = IntMatrix::diag(&diag);
                for &(i, j) in &slots {
                    m.set(i, j, code % diag[j]);
                    code /= diag[j];
                }
                if determinantal_vector(&m) == target {
                    out.push(m);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn assignments() {
        let a = diagonal_assignments(3, 2, 0, 2);
        assert_eq!(a.len(), 6);
        assert!(a.iter().all(|x| x.iter().sum::<u32>() == 2));
    }

    #[test]
    fn n2_p2_example() {
        let t = enumerate_right_cosets(&label(2, &[0, 1]), 100).unwrap();
        let expect: Vec<IntMatrix> = [[1, 0, 0, 2], [1, 1, 0, 2], [2, 0, 0, 1]]
            .iter()
            .map(|e| IntMatrix::from_flat(2, e.to_vec()).unwrap())
            .collect();
        assert_eq!(t.reps, expect);
    }

    #[test]
    fn trivial_label() {
        for n in 2..6 {
            let t = enumerate_right_cosets(&CosetLabel::scalar(n, 3, 0).unwrap(), 10).unwrap();
            assert_eq!(t.reps, vec![IntMatrix::identity(n)]);
        }
    }

    #[test]
    fn matches_brute_force() {
        for (p, e) in [
            (2, vec![0, 2]),
            (3, vec![0, 1, 2]),
            (2, vec![0, 1, 1, 2]),
            (2, vec![0, 0, 2, 3]),
            (3, vec![0, 0, 1]),
            (2, vec![0, 1, 3]),
        ] {
            let l = label(p, &e);
            let fast = enumerate_right_cosets(&l, 1_000_000).unwrap().reps;
            assert_eq!(fast, brute_force(&l), "{l}");
        }
    }

    #[test]
    fn shifted_labels_scale() {
        let base = enumerate_right_cosets(&label(2, &[0, 1, 2]), 1000).unwrap();
        let shifted = enumerate_right_cosets(&label(2, &[2, 3, 4]), 1000).unwrap();
        assert_eq!(base.reps.len(), shifted.reps.len());
        for (a, b) in base.reps.iter().zip(&shifted.reps) {
            assert_eq!(&a.checked_scale(4).unwrap(), b);
            assert_eq!(&hnf(b).unwrap(), b);
        }
    }

    #[test]
    fn budget() {
        let l = label(5, &[0, 2, 2, 2, 4]);
        assert!(matches!(enumerate_right_cosets(&l, DEFAULT_BUDGET), Err(Error::BudgetExceeded { .. })));
    }
}
