use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use super::element::HeckeElement;
use crate::coset_enum::{enumerate_right_cosets, formula_degree, CosetLabel, CosetTable, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::exact_linalg::{hnf, IntMatrix, LocalTyper};

/// Default cap on `deg(a) * deg(b)` for [`multiply_bruteforce`].
pub const PAIRWISE_BUDGET: u64 = 10_000_000;

/// A computed product `a * b` with the degree of every term and the mass audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductDecomposition {
    pub left: CosetLabel,
    pub right: CosetLabel,
    pub element: HeckeElement,
    pub degrees: BTreeMap<CosetLabel, BigUint>,
    /// `deg(left) * deg(right) == sum_h m_h deg(h)`.
    pub mass_check: bool,
}

#[derive(Serialize)]
struct TermJson {
    exps: Vec<u32>,
    multiplicity: serde_json::Value,
    degree: serde_json::Value,
}

#[derive(Serialize)]
struct ProductJson {
    n: usize,
    p: u64,
    left_exps: Vec<u32>,
    right_exps: Vec<u32>,
    terms: Vec<TermJson>,
    mass_check: bool,
}

/// A JSON number when it fits in `u64`, otherwise a decimal string.
pub(crate) fn json_uint(x: &BigUint) -> serde_json::Value {
    match x.to_u64() {
        Some(v) => v.into(),
        None => x.to_string().into(),
    }
}

impl ProductDecomposition {
    fn new(left: &CosetLabel, right: &CosetLabel, element: HeckeElement) -> Self {
        let degrees: BTreeMap<CosetLabel, BigUint> =
            element.terms().keys().map(|h| (h.clone(), formula_degree(h))).collect();
        let mass: BigUint = element.terms().iter().map(|(h, m)| m * &degrees[h]).sum();
        let mass_check = mass == formula_degree(left) * formula_degree(right);
        ProductDecomposition { left: left.clone(), right: right.clone(), element, degrees, mass_check }
    }

    pub fn multiplicity(&self, h: &CosetLabel) -> BigUint {
        self.element.coefficient(h)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.json_doc())?)
    }

    pub fn to_json_pretty(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.json_doc())?)
    }

    fn json_doc(&self) -> ProductJson {
        ProductJson {
            n: self.left.n(),
            p: self.left.p(),
            left_exps: self.left.exps().to_vec(),
            right_exps: self.right.exps().to_vec(),
            terms: self
                .element
                .terms()
                .iter()
                .map(|(h, m)| TermJson {
                    exps: h.exps().to_vec(),
                    multiplicity: json_uint(m),
                    degree: json_uint(&self.degrees[h]),
                })
                .collect(),
            mass_check: self.mass_check,
        }
    }

    /// `exps,multiplicity,degree` per line, exponents joined by `-`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("exps,multiplicity,degree\n");
        for (h, m) in self.element.terms() {
            let e: Vec<String> = h.exps().iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("{},{},{}\n", e.join("-"), m, self.degrees[h]));
        }
        out
    }
}

fn check_same_algebra(a: &CosetLabel, b: &CosetLabel) -> Result<()> {
    if a.n() != b.n() || a.p() != b.p() {
        return Err(Error::DimensionMismatch(format!("{a} and {b} live in different algebras")));
    }
    Ok(())
}

/// `a * b`, enumerating the right cosets of `a` within [`DEFAULT_BUDGET`].
pub fn multiply(a: &CosetLabel, b: &CosetLabel) -> Result<ProductDecomposition> {
    multiply_with_budget(a, b, DEFAULT_BUDGET)
}

pub fn multiply_with_budget(a: &CosetLabel, b: &CosetLabel, budget: u64) -> Result<ProductDecomposition> {
    check_same_algebra(a, b)?;
    let table = enumerate_right_cosets(a, budget)?;
    multiply_with_table(&table, b)
}

/// `a * b` from a precomputed table of `a`.
///
/// Each `alpha_i diag(b)` is classified by its determinantal vector; then
/// `m_h = deg(b) * #{i : alpha_i diag(b) in h} / deg(h)`, which must divide exactly.
pub fn multiply_with_table(table: &CosetTable, b: &CosetLabel) -> Result<ProductDecomposition> {
    let a = &table.label;
    check_same_algebra(a, b)?;
    let d = b.diagonal_values()?;
    let p = a.p();
    let counts = table
        .reps
        .par_iter()
        .try_fold(BTreeMap::new, |mut acc: BTreeMap<CosetLabel, u64>, alpha| {
            let h = CosetLabel::classify(&alpha.mul_diag_right(&d)?, p)?;
            *acc.entry(h).or_default() += 1;
            Ok::<_, Error>(acc)
        })
        .try_reduce(BTreeMap::new, |mut x, y| {
            for (h, c) in y {
                *x.entry(h).or_default() += c;
            }
            Ok(x)
        })?;
    let deg_b = formula_degree(b);
    let mut element = HeckeElement::zero(a.n(), p);
    for (h, count) in counts {
        let deg_h = formula_degree(&h);
        let (m, r) = (&deg_b * count).div_rem(&deg_h);
        if !r.is_zero() {
            return Err(Error::ClassificationInconsistency(format!(
                "{a} * {b}: {count} * {deg_b} is not divisible by deg({h}) = {deg_h}"
            )));
        }
        element.add_term(h, m)?;
    }
    let out = ProductDecomposition::new(a, b, element);
    if !out.mass_check {
        return Err(Error::ClassificationInconsistency(format!("{a} * {b}: mass not conserved")));
    }
    Ok(out)
}

/// `a * b` by forming every product `alpha_i beta_j`, reducing it to its canonical right coset,
/// and grouping the cosets by double coset.
///
/// Within each double coset `h`, every one of the `deg(h)` right cosets must be hit the same
/// number of times; that number is `m_h`.
pub fn multiply_bruteforce(a: &CosetLabel, b: &CosetLabel) -> Result<ProductDecomposition> {
    multiply_bruteforce_with_budget(a, b, PAIRWISE_BUDGET)
}

pub fn multiply_bruteforce_with_budget(
    a: &CosetLabel,
    b: &CosetLabel,
    pair_budget: u64,
) -> Result<ProductDecomposition> {
    check_same_algebra(a, b)?;
    let pairs = formula_degree(a) * formula_degree(b);
    if pairs > BigUint::from(pair_budget) {
        return Err(Error::BudgetExceeded { degree: pairs.to_string(), budget: pair_budget });
    }
    let ta = enumerate_right_cosets(a, pair_budget)?;
    let tb = enumerate_right_cosets(b, pair_budget)?;
    let groups = classify_products(a, b, &ta.reps, &tb.reps)?;
    let p = a.p();
    let mut element = HeckeElement::zero(a.n(), p);
    for (h, (distinct, m)) in groups {
        let deg_h = formula_degree(&h);
        if BigUint::from(distinct) != deg_h {
            return Err(Error::ClassificationInconsistency(format!(
                "{a} * {b}: {distinct} right cosets found in {h}, expected {deg_h}"
            )));
        }
        element.add_term(h, BigUint::from(m))?;
    }
    Ok(ProductDecomposition::new(a, b, element))
}

/// `hnf(x y)` for upper-triangular `x`, `y`, written into `out`. Returns false on overflow or
/// a nonpositive diagonal entry, leaving the general path to handle it.
fn triangular_product(n: usize, x: &[i64], y: &[i64], out: &mut [i64]) -> bool {
    for i in 0..n {
        for j in 0..n {
            let mut s = 0i64;
            for k in i..=j {
                match x[i * n + k].checked_mul(y[k * n + j]).and_then(|t| s.checked_add(t)) {
                    Some(v) => s = v,
                    None => return false,
                }
            }
            out[i * n + j] = s;
        }
    }
    // reduce column by column; row j is zero left of the diagonal
    for j in 0..n {
        let d = out[j * n + j];
        if d <= 0 {
            return false;
        }
        for i in 0..j {
            let q = out[i * n + j].div_euclid(d);
            if q != 0 {
                for k in j..n {
                    match q.checked_mul(out[j * n + k]).and_then(|t| out[i * n + k].checked_sub(t)) {
                        Some(v) => out[i * n + k] = v,
                        None => return false,
                    }
                }
            }
        }
    }
    true
}

fn bump<K: std::hash::Hash + Eq>(acc: &mut FxHashMap<K, u64>, key: K, k: u64) {
    *acc.entry(key).or_insert(0) += k;
}

/// Merges per-chunk maps, folding the smaller into the larger.
fn merge<K: std::hash::Hash + Eq>(x: FxHashMap<K, u64>, y: FxHashMap<K, u64>) -> FxHashMap<K, u64> {
    let (mut big, small) = if x.len() < y.len() { (y, x) } else { (x, y) };
    for (c, k) in small {
        bump(&mut big, c, k);
    }
    big
}

fn chunk_len(len: usize) -> usize {
    len.div_ceil(rayon::current_num_threads()).max(1)
}

/// Canonical right cosets (row-major entries) of all pairwise products, with hit counts.
pub(crate) fn right_coset_counts(left: &[IntMatrix], right: &[IntMatrix]) -> Result<FxHashMap<Vec<i64>, u64>> {
    let Some(n) = left.first().map(|m| m.dim()) else {
        return Ok(FxHashMap::default());
    };
    let triangular = left.iter().chain(right).all(|m| m.is_upper_triangular());
    left.par_chunks(chunk_len(left.len()))
        .map(|xs| {
            let mut acc = FxHashMap::default();
            let mut buf = vec![0i64; n * n];
            for x in xs {
                for y in right {
                    if triangular && triangular_product(n, x.as_flat(), y.as_flat(), &mut buf) {
                        bump(&mut acc, buf.clone(), 1);
                    } else {
                        bump(&mut acc, hnf(&x.checked_mul(y)?)?.as_flat().to_vec(), 1);
                    }
                }
            }
            Ok(acc)
        })
        .try_reduce(FxHashMap::default, |x, y| Ok(merge(x, y)))
}

/// Canonical forms with a fixed diagonal, coded by their entries above it in mixed radix.
struct Cell {
    n: usize,
    diag: Vec<i64>,
    /// flat index and radix of each entry above the diagonal
    slots: Vec<(usize, u64)>,
    size: u64,
}

impl Cell {
    fn new(diag: Vec<i64>) -> Option<Self> {
        let n = diag.len();
        let mut slots = Vec::new();
        let mut size = 1u64;
        for i in 0..n {
            for (j, &d) in diag.iter().enumerate().skip(i + 1) {
                let r = u64::try_from(d).ok().filter(|&r| r > 0)?;
                size = size.checked_mul(r)?;
                slots.push((i * n + j, r));
            }
        }
        Some(Cell { n, diag, slots, size })
    }

    fn encode(&self, m: &[i64]) -> Option<u64> {
        if (0..self.n).any(|i| m[i * self.n + i] != self.diag[i]) {
            return None;
        }
        let mut code = 0u64;
        for &(k, r) in &self.slots {
            let x = u64::try_from(m[k]).ok().filter(|&x| x < r)?;
            code = code * r + x;
        }
        Some(code)
    }

    fn decode(&self, mut code: u64, out: &mut [i64]) {
        out.fill(0);
        for i in 0..self.n {
            out[i * self.n + i] = self.diag[i];
        }
        for &(k, r) in self.slots.iter().rev() {
            out[k] = (code % r) as i64;
            code /= r;
        }
    }
}

/// Cells up to this many codes, and at most twice as many codes as products, are counted in
/// a dense array.
const DENSE_CELL: u64 = 1 << 24;

type Tally = Vec<(Vec<u32>, u64, u64)>;

/// Blocks of left and right factors whose products share a diagonal.
type Blocks<'a> = Vec<(&'a [&'a [i64]], &'a [&'a [i64]])>;

/// Counts and classifies the products landing in one cell. `None` when a product falls
/// outside it, which sends the caller to the general path.
fn tally_cell(
    cell: &Cell,
    pairs: &Blocks,
    typer: &mut LocalTyper,
    uneven: &(impl Fn(&[u32]) -> Error + Sync),
) -> Result<Option<Tally>> {
    let n = cell.n;
    let mut buf = vec![0i64; n * n];
    let mut dense = Vec::new();
    let mut sparse = FxHashMap::default();
    let count: u64 = pairs.iter().map(|(xs, ys)| (xs.len() * ys.len()) as u64).sum();
    if cell.size <= DENSE_CELL && cell.size <= 2 * count {
        dense = vec![0u32; cell.size as usize];
    }
    for (xs, ys) in pairs {
        for x in xs.iter() {
            for y in ys.iter() {
                if !triangular_product(n, x, y, &mut buf) {
                    return Ok(None);
                }
                let Some(code) = cell.encode(&buf) else {
                    return Ok(None);
                };
                if dense.is_empty() {
                    bump(&mut sparse, code, 1);
                } else {
                    dense[code as usize] += 1;
                }
            }
        }
    }
    let hits: Vec<(u64, u64)> = if dense.is_empty() {
        sparse.into_iter().collect()
    } else {
        dense.iter().enumerate().filter(|(_, &k)| k > 0).map(|(c, &k)| (c as u64, k as u64)).collect()
    };
    let mut tally = Tally::new();
    for (code, k) in hits {
        cell.decode(code, &mut buf);
        let h = typer.leading_block_type(&buf, n, n);
        match tally.iter_mut().find(|t| t.0 == h) {
            Some(t) if t.2 != k => return Err(uneven(&h)),
            Some(t) => t.1 += 1,
            None => tally.push((h, 1, k)),
        }
    }
    Ok(Some(tally))
}

/// Upper-triangular matrices grouped by diagonal, or `None` if one is not upper triangular.
fn by_diagonal(reps: &[IntMatrix]) -> Option<BTreeMap<Vec<i64>, Vec<&[i64]>>> {
    let mut out: BTreeMap<Vec<i64>, Vec<&[i64]>> = BTreeMap::new();
    for m in reps {
        if !m.is_upper_triangular() {
            return None;
        }
        out.entry((0..m.dim()).map(|i| m.get(i, i)).collect()).or_default().push(m.as_flat());
    }
    Some(out)
}

/// Pairwise products of upper-triangular representatives, processed one product diagonal at
/// a time. `None` when some factor or product is not of that shape.
fn diagonal_groups(a: &CosetLabel, b: &CosetLabel, left: &[IntMatrix], right: &[IntMatrix]) -> Result<Option<Groups>> {
    let p = a.p();
    let (Some(xs), Some(ys)) = (by_diagonal(left), by_diagonal(right)) else {
        return Ok(None);
    };
    let mut targets: BTreeMap<Vec<i64>, Blocks> = BTreeMap::new();
    for (dx, gx) in &xs {
        for (dy, gy) in &ys {
            let Some(d) = dx.iter().zip(dy).map(|(u, v)| u.checked_mul(*v)).collect::<Option<Vec<i64>>>() else {
                return Ok(None);
            };
            targets.entry(d).or_default().push((gx.as_slice(), gy.as_slice()));
        }
    }
    let mut cells = Vec::with_capacity(targets.len());
    for (d, pairs) in targets {
        let Some(cell) = Cell::new(d) else {
            return Ok(None);
        };
        cells.push((cell, pairs));
    }
    // the largest elementary divisor of a product divides the product of the largest ones
    let precision = a.max_exp() + b.max_exp() + 1;
    let uneven =
        |h: &[u32]| Error::ClassificationInconsistency(format!("{a} * {b}: right cosets in {h:?} are hit unevenly"));
    let tallies: Vec<Option<Tally>> = cells
        .par_iter()
        .map(|(cell, pairs)| tally_cell(cell, pairs, &mut LocalTyper::new(p, precision)?, &uneven))
        .collect::<Result<_>>()?;
    let mut groups = Groups::new();
    for tally in tallies {
        let Some(tally) = tally else {
            return Ok(None);
        };
        for (h, distinct, k) in tally {
            let entry = groups.entry(CosetLabel::new(p, h.clone())?).or_insert((0, k));
            if entry.1 != k {
                return Err(uneven(&h));
            }
            entry.0 += distinct;
        }
    }
    Ok(Some(groups))
}

type Groups = BTreeMap<CosetLabel, (u64, u64)>;

/// Groups distinct right cosets of `a * b` by double coset as `(number of cosets, hits per
/// coset)`, failing if two cosets of one double coset are hit a different number of times.
fn classify_products(a: &CosetLabel, b: &CosetLabel, left: &[IntMatrix], right: &[IntMatrix]) -> Result<Groups> {
    if let Some(groups) = diagonal_groups(a, b, left, right)? {
        return Ok(groups);
    }
    let entries: Vec<(Vec<i64>, u64)> = right_coset_counts(left, right)?.into_iter().collect();
    group_cosets(a, b, &entries, |c, out| out.copy_from_slice(c))
}

fn group_cosets<K: Sync>(
    a: &CosetLabel,
    b: &CosetLabel,
    entries: &[(K, u64)],
    decode: impl Fn(&K, &mut [i64]) + Sync,
) -> Result<Groups> {
    let (n, p) = (a.n(), a.p());
    // the largest elementary divisor of a product divides the product of the largest ones
    let precision = a.max_exp() + b.max_exp() + 1;
    let uneven =
        |h: &CosetLabel| Error::ClassificationInconsistency(format!("{a} * {b}: right cosets in {h} are hit unevenly"));
    entries
        .par_chunks(chunk_len(entries.len()))
        .map(|part| {
            let mut typer = LocalTyper::new(p, precision)?;
            let mut groups = Groups::new();
            let mut buf = vec![0i64; n * n];
            for (c, k) in part {
                decode(c, &mut buf);
                let h = CosetLabel::new(p, typer.leading_block_type(&buf, n, n))?;
                let entry = groups.entry(h.clone()).or_insert((0, *k));
                if entry.1 != *k {
                    return Err(uneven(&h));
                }
                entry.0 += 1;
            }
            Ok(groups)
        })
        .try_reduce(Groups::new, |mut x, y| {
            for (h, (distinct, k)) in y {
                let entry = x.entry(h.clone()).or_insert((0, k));
                if entry.1 != k {
                    return Err(uneven(&h));
                }
                entry.0 += distinct;
            }
            Ok(x)
        })
}
