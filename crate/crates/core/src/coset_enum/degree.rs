//! Degrees of double cosets: the number of right cosets they contain.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_right_cosets, DEFAULT_BUDGET};
use super::label::CosetLabel;
use crate::error::{Error, Result};

/// `phi_r(x) = prod_{k=1..r} (x^k - 1)`, with `phi_0 = 1`.
pub fn phi(r: u32, x: &BigRational) -> BigRational {
    (1..=r as i32).fold(BigRational::one(), |acc, k| acc * (x.pow(k) - BigRational::one()))
}

fn phi_int(r: usize, p: u64) -> BigInt {
    let p = BigInt::from(p);
    (1..=r as u32).fold(BigInt::one(), |acc, k| acc * (p.pow(k) - 1))
}

fn pow(p: u64, k: u32) -> BigInt {
    BigInt::from(p).pow(k)
}

fn pm1(p: u64, k: u32) -> BigInt {
    pow(p, k) - 1
}

fn exact_div(num: BigInt, den: BigInt) -> BigUint {
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero() && !q.is_negative(), "degree formula must divide exactly");
    q.to_biguint().unwrap()
}

/// `deg D_{i,j}^(n)(p) = p^{j(n-i-j)} phi_n(p) / (phi_{n-i-j}(p) phi_i(p) phi_j(p))`.
pub fn degree_formula_dij(n: usize, p: u64, i: usize, j: usize) -> Result<BigUint> {
    if i + j > n {
        return Err(Error::InvalidArgument(format!("need i + j <= n, got i={i}, j={j}, n={n}")));
    }
    let num = pow(p, (j * (n - i - j)) as u32) * phi_int(n, p);
    let den = phi_int(n - i - j, p) * phi_int(i, p) * phi_int(j, p);
    Ok(exact_div(num, den))
}

/// The reduced shapes whose degrees have explicit closed forms for `n >= 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremAShape {
    /// `(0^n)`: scalar matrices.
    Scalar,
    /// `(0, 1^(n-2), 2)`: the class of `diag(1, p, ..., p, p^2)`.
    Fundamental,
    /// `(0, 2^(n-3), 3, 3)`.
    TwoCubes,
    /// `(0, 2^(n-2), 4)`.
    Fourth,
    /// `(0, 0, 1^(n-3), 3)`.
    UnitPairCube,
    /// `(0, 0, 1^(n-4), 2, 2)`.
    UnitPairSquarePair,
}

impl TheoremAShape {
    pub const ALL: [TheoremAShape; 6] = [
        TheoremAShape::Scalar,
        TheoremAShape::Fundamental,
        TheoremAShape::TwoCubes,
        TheoremAShape::Fourth,
        TheoremAShape::UnitPairCube,
        TheoremAShape::UnitPairSquarePair,
    ];

    pub fn exps(self, n: usize) -> Vec<u32> {
        use TheoremAShape::*;
        let blocks: Vec<(u32, usize)> = match self {
            Scalar => vec![(0, n)],
            Fundamental => vec![(0, 1), (1, n - 2), (2, 1)],
            TwoCubes => vec![(0, 1), (2, n - 3), (3, 2)],
            Fourth => vec![(0, 1), (2, n - 2), (4, 1)],
            UnitPairCube => vec![(0, 2), (1, n - 3), (3, 1)],
            UnitPairSquarePair => vec![(0, 2), (1, n - 4), (2, 2)],
        };
        blocks.into_iter().flat_map(|(e, c)| std::iter::repeat_n(e, c)).collect()
    }

    pub fn label(self, n: usize, p: u64) -> Result<CosetLabel> {
        if n < 4 {
            return Err(Error::InvalidArgument(format!("closed forms need n >= 4, got {n}")));
        }
        CosetLabel::new(p, self.exps(n))
    }

    pub fn recognize(reduced_exps: &[u32]) -> Option<Self> {
        let n = reduced_exps.len();
        if n < 4 {
            return None;
        }
        Self::ALL.into_iter().find(|s| s.exps(n) == reduced_exps)
    }

    /// Closed-form degree of the shape at `(n, p)`, `n >= 4`.
    pub fn degree(self, n: usize, p: u64) -> BigUint {
        use TheoremAShape::*;
        let n32 = n as u32;
        let p1 = BigInt::from(p - 1);
        let p2 = pm1(p, 2);
        match self {
            Scalar => BigUint::one(),
            Fundamental => exact_div(pow(p, 1) * pm1(p, n32 - 1) * pm1(p, n32), &p1 * &p1),
            TwoCubes | UnitPairCube => {
                exact_div(pow(p, n32 + 1) * pm1(p, n32 - 2) * pm1(p, n32 - 1) * pm1(p, n32), &p1 * &p1 * &p2)
            }
            Fourth => exact_div(pow(p, 2 * n32 - 1) * pm1(p, n32 - 1) * pm1(p, n32), &p1 * &p1),
            UnitPairSquarePair => exact_div(
                pow(p, 4) * pm1(p, n32 - 3) * pm1(p, n32 - 2) * pm1(p, n32 - 1) * pm1(p, n32),
                &p1 * &p1 * &p2 * &p2,
            ),
        }
    }
}

/// General index formula for any label:
/// `p^{sum_{i<j, e_i<e_j} (e_j - e_i - 1)} phi_n(p) / prod_v phi_{m_v}(p)`,
/// where `m_v` is the multiplicity of the exponent value `v`.
///
/// Used for budget guards and for labels without a dedicated closed form.
pub fn index_formula_degree(label: &CosetLabel) -> BigUint {
    let e = label.exps();
    let n = e.len();
    let mut power = 0u32;
    for i in 0..n {
        for j in i + 1..n {
            if e[i] < e[j] {
                power += e[j] - e[i] - 1;
            }
        }
    }
    let mut mult: BTreeMap<u32, usize> = BTreeMap::new();
    for &x in e {
        *mult.entry(x).or_default() += 1;
    }
    let den = mult.values().fold(BigInt::one(), |acc, &m| acc * phi_int(m, label.p()));
    exact_div(pow(label.p(), power) * phi_int(n, label.p()), den)
}

/// Which route produced a degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum DegreeSource {
    /// Reduced exponents form `(0^(n-i-j), 1^i, 2^j)`.
    MainFormula {
        i: usize,
        j: usize,
    },
    TheoremA {
        shape: TheoremAShape,
    },
    /// Counted by enumerating canonical representatives.
    Enumeration,
    /// Too large to enumerate; taken from [`index_formula_degree`].
    IndexFormula,
}

impl DegreeSource {
    pub fn is_closed_form(self) -> bool {
        matches!(self, DegreeSource::MainFormula { .. } | DegreeSource::TheoremA { .. })
    }
}

/// The closed-form degree, when the reduced label has one.
pub fn closed_form_degree(label: &CosetLabel) -> Option<(BigUint, DegreeSource)> {
    let (_, reduced) = label.reduced();
    let e = reduced.exps();
    let n = e.len();
    if e.iter().all(|&x| x <= 2) {
        let i = e.iter().filter(|&&x| x == 1).count();
        let j = e.iter().filter(|&&x| x == 2).count();
        let d = degree_formula_dij(n, label.p(), i, j).expect("i + j <= n by construction");
        return Some((d, DegreeSource::MainFormula { i, j }));
    }
    TheoremAShape::recognize(e).map(|shape| (shape.degree(n, label.p()), DegreeSource::TheoremA { shape }))
}

/// Degree from a formula alone: the closed form when there is one, else the index formula.
pub fn formula_degree(label: &CosetLabel) -> BigUint {
    closed_form_degree(label).map(|(d, _)| d).unwrap_or_else(|| index_formula_degree(&label.reduced().1))
}

/// Degree of a double coset, invariant under scalar shifts.
pub fn degree(label: &CosetLabel) -> BigUint {
    degree_with_source(label).0
}

pub fn degree_with_source(label: &CosetLabel) -> (BigUint, DegreeSource) {
    if let Some(found) = closed_form_degree(label) {
        return found;
    }
    let (_, reduced) = label.reduced();
    match enumerate_right_cosets(&reduced, DEFAULT_BUDGET) {
        Ok(table) => (BigUint::from(table.reps.len()), DegreeSource::Enumeration),
        Err(_) => (index_formula_degree(&reduced), DegreeSource::IndexFormula),
    }
}
