//! Independent oracles shared by the integration tests. Nothing here calls into the
//! library's linear algebra or degree code.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

/// Determinant of a small square i128 matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_det(mut a: Vec<Vec<i128>>) -> i128 {
    let k = a.len();
    if k == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for c in 0..k - 1 {
        if a[c][c] == 0 {
            match (c + 1..k).find(|&r| a[r][c] != 0) {
                Some(r) => {
                    a.swap(r, c);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in c + 1..k {
            for j in c + 1..k {
                a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) / prev;
            }
        }
        prev = a[c][c];
    }
    sign * a[k - 1][k - 1]
}

/// Determinant of the minor on `rows x cols` by cofactor expansion along the first row.
fn minor(n: usize, m: &[i64], rows: &[usize], cols: &[usize]) -> i128 {
    let k = rows.len();
    if k == 1 {
        return m[rows[0] * n + cols[0]] as i128;
    }
    let mut rest = [0usize; 8];
    let mut total = 0i128;
    for (c, &col) in cols.iter().enumerate() {
        let x = m[rows[0] * n + col] as i128;
        if x == 0 {
            continue;
        }
        let mut len = 0;
        for (d, &other) in cols.iter().enumerate() {
            if d != c {
                rest[len] = other;
                len += 1;
            }
        }
        let sub = x * minor(n, m, &rows[1..], &rest[..len]);
        total += if c % 2 == 0 { sub } else { -sub };
    }
    total
}

/// Index sets of size `k` in `0..n`, as bitmasks.
fn subsets(n: usize, k: usize) -> impl Iterator<Item = u32> {
    (0u32..1 << n).filter(move |s| s.count_ones() as usize == k)
}

fn members(set: u32, out: &mut [usize; 8]) -> usize {
    let mut len = 0;
    for i in 0..32 {
        if set >> i & 1 == 1 {
            out[len] = i;
            len += 1;
        }
    }
    len
}

/// `(d_1, ..., d_n)` as gcds of all `k x k` minors of a row-major `n x n` matrix (`n <= 8`).
pub fn minor_gcd_vector(n: usize, m: &[i64]) -> Vec<u128> {
    let (mut rows, mut cols) = ([0usize; 8], [0usize; 8]);
    (1..=n)
        .map(|k| {
            let mut g = 0u128;
            'all: for r in subsets(n, k) {
                members(r, &mut rows);
                for c in subsets(n, k) {
                    members(c, &mut cols);
                    g = g.gcd(&minor(n, m, &rows[..k], &cols[..k]).unsigned_abs());
                    if g == 1 {
                        break 'all;
                    }
                }
            }
            g
        })
        .collect()
}

/// `d_k` of `diag(p^e_1, ..., p^e_n)` for sorted `e`.
pub fn diagonal_divisors(p: u64, exps: &[u32]) -> Vec<u128> {
    let mut sorted = exps.to_vec();
    sorted.sort();
    let mut acc = 0u32;
    sorted
        .iter()
        .map(|&e| {
            acc += e;
            (p as u128).pow(acc)
        })
        .collect()
}

pub fn phi(r: usize, p: u64) -> BigUint {
    (1..=r as u32).fold(BigUint::one(), |acc, k| acc * (BigUint::from(p).pow(k) - 1u32))
}

/// Degree of `diag(p^e)` from the general formula: `p^(sum_{i<j}(e_j - e_i) - #{i<j: e_i != e_j})`
/// times `phi_n(p)` over the product of `phi_m(p)` across multiplicities `m`.
pub fn general_degree(p: u64, exps: &[u32]) -> BigUint {
    let mut e = exps.to_vec();
    e.sort();
    let n = e.len();
    let mut power = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if e[j] != e[i] {
                power += (e[j] - e[i]) as u64 - 1;
            }
        }
    }
    let mut den = BigUint::one();
    let mut i = 0;
    while i < n {
        let j = (i..n).find(|&j| e[j] != e[i]).unwrap_or(n);
        den *= phi(j - i, p);
        i = j;
    }
    let num = BigUint::from(p).pow(power as u32) * phi(n, p);
    assert!((&num % &den).is_zero());
    num / den
}

/// Closed forms: the `D_{i,j}` formula for exponents spanning at most three consecutive
/// values, and the three further shapes with a listed degree (n >= 4).
pub fn closed_form_degree(p: u64, exps: &[u32]) -> Option<BigUint> {
    let mut e = exps.to_vec();
    e.sort();
    let n = e.len();
    let lo = e[0];
    let r: Vec<u32> = e.iter().map(|x| x - lo).collect();
    let pb = BigUint::from(p);
    let pw = |k: usize| BigUint::from(p).pow(k as u32);
    let ph = |k: usize| pw(k) - 1u32;
    if r.iter().all(|&x| x <= 2) {
        let i = r.iter().filter(|&&x| x == 1).count();
        let j = r.iter().filter(|&&x| x == 2).count();
        let num = pw(j * (n - i - j)) * phi(n, p);
        let den = phi(n - i - j, p) * phi(i, p) * phi(j, p);
        return Some(num / den);
    }
    if n < 4 {
        return None;
    }
    let pm1 = &pb - 1u32;
    let p2m1 = &pb * &pb - 1u32;
    let is = |want: Vec<u32>| r == want;
    let mut shape = vec![0];
    shape.extend(vec![2; n - 3]);
    shape.extend([3, 3]);
    if is(shape) {
        return Some(pw(n + 1) * ph(n - 2) * ph(n - 1) * ph(n) / (&pm1 * &pm1 * &p2m1));
    }
    let mut shape = vec![0];
    shape.extend(vec![2; n - 2]);
    shape.push(4);
    if is(shape) {
        return Some(pw(2 * n - 1) * ph(n - 1) * ph(n) / (&pm1 * &pm1));
    }
    let mut shape = vec![0, 0];
    shape.extend(vec![1; n - 3]);
    shape.push(3);
    if is(shape) {
        return Some(pw(n + 1) * ph(n - 2) * ph(n - 1) * ph(n) / (&pm1 * &pm1 * &p2m1));
    }
    None
}

/// The six multiplicities in the square of `diag(1, p, ..., p, p^2)`, in the order
/// scalar `p^2`, `(1,2..2,3)`, `(0,2..2,3,3)`, `(0,2..2,4)`, `(1,1,2..2,4)`, `(1,1,2..2,3,3)`.
pub fn square_multiplicities(n: usize, p: u64) -> [BigUint; 6] {
    let pb = BigUint::from(p);
    let pm1 = &pb - 1u32;
    let pn = pb.pow(n as u32);
    let m1 = &pb * (pb.pow(n as u32 - 1) - 1u32) * (&pn - 1u32) / (&pm1 * &pm1);
    let m2 = (2u32 * &pn + 1u32 - &pb * &pb - 2u32 * &pb) / &pm1;
    let s = &pb + 1u32;
    [m1, m2, s.clone(), BigUint::one(), s.clone(), &s * &s]
}

/// The six labels in the same order.
pub fn square_labels(n: usize) -> [Vec<u32>; 6] {
    let rep = |v: u32, k: usize| vec![v; k];
    let cat = |parts: &[Vec<u32>]| parts.concat();
    [
        rep(2, n),
        cat(&[vec![1], rep(2, n - 2), vec![3]]),
        cat(&[vec![0], rep(2, n - 3), vec![3, 3]]),
        cat(&[vec![0], rep(2, n - 2), vec![4]]),
        cat(&[vec![1, 1], rep(2, n - 3), vec![4]]),
        cat(&[vec![1, 1], rep(2, n - 4), vec![3, 3]]),
    ]
}

pub fn matmul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += x * b[k * n + j];
            }
        }
    }
    c
}

/// A random element of `GL_n(Z)`: a signed permutation times `steps` elementary matrices
/// with multipliers in `[-bound, bound]`.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize, bound: i64) -> Vec<i64> {
    let mut u = vec![0i64; n * n];
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    for i in 0..n {
        u[i * n + perm[i]] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    if n < 2 {
        return u;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = rng.gen_range(-bound..=bound);
        let mut e = vec![0i64; n * n];
        for k in 0..n {
            e[k * n + k] = 1;
        }
        e[i * n + j] = c;
        u = matmul(n, &e, &u);
    }
    u
}

/// The elementary unimodular moves on an `n x n` matrix: add or subtract one row (column)
/// to another, swap two rows (columns), negate a row (column).
pub fn moves(n: usize, m: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for s in [1, -1] {
                let mut r = m.to_vec();
                for k in 0..n {
                    r[i * n + k] += s * m[j * n + k];
                }
                out.push(r);
                let mut c = m.to_vec();
                for k in 0..n {
                    c[k * n + i] += s * m[k * n + j];
                }
                out.push(c);
            }
            if i < j {
                let mut r = m.to_vec();
                for k in 0..n {
                    r.swap(i * n + k, j * n + k);
                }
                out.push(r);
                let mut c = m.to_vec();
                for k in 0..n {
                    c.swap(k * n + i, k * n + j);
                }
                out.push(c);
            }
        }
        let mut r = m.to_vec();
        for k in 0..n {
            r[i * n + k] = -r[i * n + k];
        }
        out.push(r);
        let mut c = m.to_vec();
        for k in 0..n {
            c[k * n + i] = -c[k * n + i];
        }
        out.push(c);
    }
    out
}

/// Outcome of a bounded search for a path of elementary moves from `g` to `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orbit {
    Same,
    /// The search exhausted everything reachable inside the entry bound.
    Different,
    /// Gave up after visiting the state cap.
    Unknown,
}

/// Breadth-first search from both ends, staying within `|entry| <= bound`.
pub fn orbit_search(n: usize, g: &[i64], h: &[i64], bound: i64, cap: usize) -> Orbit {
    if g == h {
        return Orbit::Same;
    }
    let mut seen = [HashSet::new(), HashSet::new()];
    let mut queue = [VecDeque::new(), VecDeque::new()];
    seen[0].insert(g.to_vec());
    seen[1].insert(h.to_vec());
    queue[0].push_back(g.to_vec());
    queue[1].push_back(h.to_vec());
    loop {
        for side in 0..2 {
            let Some(cur) = queue[side].pop_front() else {
                return Orbit::Different;
            };
            for next in moves(n, &cur) {
                if next.iter().any(|x| x.abs() > bound) {
                    continue;
                }
                if seen[1 - side].contains(&next) {
                    return Orbit::Same;
                }
                if seen[side].insert(next.clone()) {
                    queue[side].push_back(next);
                }
            }
            if seen[0].len() + seen[1].len() > cap {
                return Orbit::Unknown;
            }
        }
    }
}

/// Primes up to `x`, by trial division.
pub fn primes_upto(x: u64) -> Vec<u64> {
    (2..=x).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
}

/// Nondecreasing exponent vectors of length `n` with entries in `0..=max`.
pub fn labels(n: usize, max: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, lo: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in lo..=max {
            cur.push(v);
            go(n, v, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, max, &mut Vec::new(), &mut out);
    out
}
