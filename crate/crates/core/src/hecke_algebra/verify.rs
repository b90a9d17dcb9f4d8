use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;

use super::mixed::{coprime_product, verify_coprime_bruteforce, MixedLabel};
use super::product::{json_uint, multiply_with_budget, ProductDecomposition, PAIRWISE_BUDGET};
use crate::coset_enum::{
    closed_form_degree, degree_formula_dij, enumerate_right_cosets, formula_degree, index_formula_degree, CosetLabel,
    DEFAULT_BUDGET,
};
use crate::error::{Error, Result};

/// One named comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// A list of checks plus free-form notes (e.g. steps skipped for budget reasons).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub title: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>) -> Self {
        VerificationReport { title: title.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check_eq<T: PartialEq + fmt::Display>(&mut self, name: impl Into<String>, expected: T, actual: T) {
        let pass = expected == actual;
        self.checks.push(Check { name: name.into(), expected: expected.to_string(), actual: actual.to_string(), pass });
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool) {
        self.checks.push(Check { name: name.into(), expected: "true".into(), actual: pass.to_string(), pass });
    }

    pub fn extend(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
        self.notes.extend(other.notes.into_iter().map(|n| format!("{prefix}{n}")));
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,expected,actual,pass\n");
        for c in &self.checks {
            out.push_str(&format!("\"{}\",\"{}\",\"{}\",{}\n", c.name, c.expected, c.actual, c.pass));
        }
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            if c.expected == "true" {
                writeln!(f, "  {tag} {}", c.name)?;
            } else {
                writeln!(f, "  {tag} {}: expected {}, got {}", c.name, c.expected, c.actual)?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        let total = self.checks.len();
        let ok = self.checks.iter().filter(|c| c.pass).count();
        write!(f, "  {ok}/{total} checks passed")
    }
}

fn big(x: BigInt) -> BigUint {
    x.to_biguint().expect("closed forms are nonnegative")
}

fn pw(p: u64, k: u32) -> BigInt {
    BigInt::from(p).pow(k)
}

/// The six terms of `D * D`, `D = diag(1, p, ..., p, p^2)`, with their closed-form
/// multiplicities, in the order `m_1, ..., m_6`.
pub fn fundamental_square_terms(n: usize, p: u64) -> Result<Vec<(CosetLabel, BigUint)>> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("the six-term square needs n >= 4, got {n}")));
    }
    let nn = n as u32;
    let pm = BigInt::from(p - 1);
    let pp = BigUint::from(p + 1);
    let m1 = big(BigInt::from(p) * (pw(p, nn - 1) - 1) * (pw(p, nn) - 1) / (&pm * &pm));
    let m2 = big((2 * pw(p, nn) - pw(p, 2) - 2 * BigInt::from(p) + 1) / &pm);
    Ok(vec![
        (CosetLabel::scalar(n, p, 2)?, m1),
        (CosetLabel::blocks(p, &[(1, 1), (2, n - 2), (3, 1)])?, m2),
        (CosetLabel::blocks(p, &[(0, 1), (2, n - 3), (3, 2)])?, pp.clone()),
        (CosetLabel::blocks(p, &[(0, 1), (2, n - 2), (4, 1)])?, BigUint::one()),
        (CosetLabel::blocks(p, &[(1, 2), (2, n - 3), (4, 1)])?, pp.clone()),
        (CosetLabel::blocks(p, &[(1, 2), (2, n - 4), (3, 2)])?, &pp * &pp),
    ])
}

/// `D * D` for `D = diag(1, p, ..., p, p^2)` at any `n >= 2`.
pub fn fundamental_square(n: usize, p: u64, budget: u64) -> Result<ProductDecomposition> {
    let d = CosetLabel::fundamental(n, p)?;
    multiply_with_budget(&d, &d, budget)
}

pub fn verify_theorem_a(n: usize, p: u64) -> Result<VerificationReport> {
    verify_theorem_a_with_budget(n, p, DEFAULT_BUDGET)
}

/// Compares the computed square of `diag(1, p, ..., p, p^2)` with the six closed-form
/// multiplicities, checks each term's closed-form degree against the index formula and (within
/// `budget`) against enumeration, and audits the mass.
pub fn verify_theorem_a_with_budget(n: usize, p: u64, budget: u64) -> Result<VerificationReport> {
    let expected = fundamental_square_terms(n, p)?;
    let product = fundamental_square(n, p, budget)?;
    let mut r = VerificationReport::new(format!("square of diag(1,p,...,p,p^2) at n = {n}, p = {p}"));
    for (i, (h, m)) in expected.iter().enumerate() {
        r.check_eq(format!("m{} {h}", i + 1), m.clone(), product.multiplicity(h));
    }
    r.check_eq("number of terms", expected.len(), product.element.len());

    for (i, (h, _)) in expected.iter().enumerate() {
        let closed = match closed_form_degree(h) {
            Some((d, _)) => d,
            None => {
                r.check(format!("deg m{} {h} has a closed form", i + 1), false);
                continue;
            }
        };
        let (_, reduced) = h.reduced();
        r.check_eq(format!("deg m{} {h} vs index formula", i + 1), closed.clone(), index_formula_degree(&reduced));
        match enumerate_right_cosets(&reduced, budget) {
            Ok(t) => r.check_eq(format!("deg m{} {h} vs enumeration", i + 1), closed, BigUint::from(t.reps.len())),
            Err(Error::BudgetExceeded { .. }) => {
                r.notes.push(format!("deg m{} {h} = {closed} not enumerated (over budget {budget})", i + 1))
            }
            Err(e) => return Err(e),
        }
    }

    let deg_d = formula_degree(&product.left);
    let mass: BigUint = expected.iter().map(|(h, m)| m * formula_degree(h)).sum();
    r.check_eq("mass sum m_h deg(h) = deg(D)^2", &deg_d * &deg_d, mass);
    r.check("mass audit of the computed product", product.mass_check);
    Ok(r)
}

/// `a * b` read as an operator identity: scalar double cosets act trivially, so every term is
/// reduced to minimum exponent zero. Labels at distinct primes combine into one mixed label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorProduct {
    pub left: MixedLabel,
    pub right: MixedLabel,
    pub terms: BTreeMap<MixedLabel, BigUint>,
    pub mass_check: bool,
}

#[derive(Serialize)]
struct OperatorTermJson<'a> {
    operator: &'a MixedLabel,
    diag: Vec<String>,
    coefficient: serde_json::Value,
}

#[derive(Serialize)]
struct OperatorProductJson<'a> {
    left: &'a MixedLabel,
    right: &'a MixedLabel,
    terms: Vec<OperatorTermJson<'a>>,
    mass_check: bool,
}

impl OperatorProduct {
    pub fn coefficient(&self, m: &MixedLabel) -> BigUint {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = OperatorProductJson {
            left: &self.left,
            right: &self.right,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| OperatorTermJson {
                    operator: m,
                    diag: m.elementary_divisors().iter().map(|d| d.to_string()).collect(),
                    coefficient: json_uint(c),
                })
                .collect(),
            mass_check: self.mass_check,
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }
}

impl fmt::Display for OperatorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T_{} o T_{} =", self.left, self.right)?;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sep = if i == 0 { " " } else { " + " };
            if c.is_one() {
                write!(f, "{sep}T_{m}")?;
            } else {
                write!(f, "{sep}{c} T_{m}")?;
            }
        }
        Ok(())
    }
}

pub fn operator_product(a: &CosetLabel, b: &CosetLabel, budget: u64) -> Result<OperatorProduct> {
    let left = MixedLabel::from_label(a);
    let right = MixedLabel::from_label(b);
    let target = formula_degree(a) * formula_degree(b);
    if a.p() == b.p() {
        let prod = multiply_with_budget(a, b, budget)?;
        let terms: BTreeMap<MixedLabel, BigUint> =
            prod.element.modulo_scalars().terms().iter().map(|(h, c)| (MixedLabel::from_label(h), c.clone())).collect();
        let mass: BigUint = terms.iter().map(|(m, c)| c * m.degree()).sum();
        Ok(OperatorProduct { left, right, terms, mass_check: mass == target && prod.mass_check })
    } else {
        let m = coprime_product(a, b)?;
        let mass_check = m.degree() == target;
        Ok(OperatorProduct { left, right, terms: BTreeMap::from([(m, BigUint::one())]), mass_check })
    }
}

/// `T_diag(1,p,...,p) o T_diag(1,...,1,q)` and
/// `T_diag(1,p,...,p,p^2) o T_diag(1,q,...,q,q^2)`, computed.
pub fn linearization_products(n: usize, p: u64, q: u64, budget: u64) -> Result<(OperatorProduct, OperatorProduct)> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("need n >= 4, got {n}")));
    }
    let first = operator_product(&CosetLabel::d_i(n, p, n - 1)?, &CosetLabel::d_i(n, q, 1)?, budget)?;
    let second = operator_product(&CosetLabel::fundamental(n, p)?, &CosetLabel::fundamental(n, q)?, budget)?;
    Ok((first, second))
}

pub fn verify_corollary(n: usize, p: u64, q: u64) -> Result<VerificationReport> {
    verify_corollary_with_budget(n, p, q, DEFAULT_BUDGET)
}

/// Checks both linearization identities. For `p != q` each side is one double coset (confirmed
/// pairwise when within [`PAIRWISE_BUDGET`]); for `p = q` the terms are those of the squares
/// with scalars divided out, and each division is confirmed by multiplying back by the scalar.
pub fn verify_corollary_with_budget(n: usize, p: u64, q: u64, budget: u64) -> Result<VerificationReport> {
    let (first, second) = linearization_products(n, p, q, budget)?;
    let mut r = VerificationReport::new(format!("linearization at n = {n}, p = {p}, q = {q}"));
    let id = MixedLabel::identity(n);
    let tp = CosetLabel::d_i(n, p, n - 1)?;
    let tq = CosetLabel::d_i(n, q, 1)?;
    let dp = CosetLabel::fundamental(n, p)?;
    let dq = CosetLabel::fundamental(n, q)?;

    if p != q {
        let e1 = MixedLabel::from_labels(&[tp.clone(), tq.clone()])?;
        let e2 = MixedLabel::from_labels(&[dp.clone(), dq.clone()])?;
        r.check_eq("first: single term", 1, first.terms.len());
        r.check_eq("first: coefficient of diag(1,p,...,p,pq)", BigUint::one(), first.coefficient(&e1));
        r.check_eq("second: single term", 1, second.terms.len());
        r.check_eq("second: coefficient of diag(1,pq,...,pq,(pq)^2)", BigUint::one(), second.coefficient(&e2));
        for (name, a, b) in [("first", &tp, &tq), ("second", &dp, &dq)] {
            match verify_coprime_bruteforce(a, b, PAIRWISE_BUDGET) {
                Ok(c) => r.check(format!("{name}: pairwise products are distinct and all in {}", c.product), c.holds()),
                Err(Error::BudgetExceeded { degree, .. }) => {
                    r.notes.push(format!("{name}: pairwise check skipped ({degree} pairs)"))
                }
                Err(e) => return Err(e),
            }
        }
    } else {
        let id_coeff = (BigUint::from(p).pow(n as u32) - 1u32) / (p - 1);
        r.check_eq("first: Id coefficient (p^n-1)/(p-1)", id_coeff, first.coefficient(&id));
        r.check_eq("first: Id coefficient vs deg D_1", degree_formula_dij(n, p, 1, 0)?, first.coefficient(&id));
        r.check_eq(
            "first: coefficient of diag(1,p,...,p,p^2)",
            BigUint::one(),
            first.coefficient(&MixedLabel::from_label(&dp)),
        );
        r.check_eq("first: number of terms", 2, first.terms.len());
        r.extend("first rescaling: ", rescaling_checks(&tp, &tq, budget)?);

        r.extend("square: ", verify_theorem_a_with_budget(n, p, budget)?);
        let expected = fundamental_square_terms(n, p)?;
        for (h, m) in &expected {
            let op = MixedLabel::from_label(&h.reduced().1);
            r.check_eq(format!("second: coefficient of {op}"), m.clone(), second.coefficient(&op));
        }
        r.check_eq("second: number of terms", expected.len(), second.terms.len());
        r.extend("second rescaling: ", rescaling_checks(&dp, &dp, budget)?);
    }
    r.check("first: mass audit", first.mass_check);
    r.check("second: mass audit", second.mass_check);
    Ok(r)
}

/// For every term `p^k h` of `a * b`, multiplying the scalar `p^k` into `h` gives back exactly
/// `p^k h`.
fn rescaling_checks(a: &CosetLabel, b: &CosetLabel, budget: u64) -> Result<VerificationReport> {
    let prod = multiply_with_budget(a, b, budget)?;
    let mut r = VerificationReport::default();
    for h in prod.element.terms().keys() {
        let (k, reduced) = h.reduced();
        if k == 0 {
            continue;
        }
        let back = multiply_with_budget(&CosetLabel::scalar(h.n(), h.p(), k)?, &reduced, budget)?;
        let single = back.element.len() == 1 && back.multiplicity(h).is_one();
        r.check(format!("p^{k} * {reduced} = {h}"), single);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_at_4_2() {
        let t = fundamental_square_terms(4, 2).unwrap();
        let m: Vec<u64> = t.iter().map(|(_, m)| m.try_into().unwrap()).collect();
        assert_eq!(m, vec![210, 25, 3, 1, 3, 9]);
        let t = fundamental_square_terms(5, 2).unwrap();
        let m: Vec<u64> = t.iter().map(|(_, m)| m.try_into().unwrap()).collect();
        assert_eq!(m, vec![930, 57, 3, 1, 3, 9]);
        assert!(fundamental_square_terms(3, 2).is_err());
    }

    #[test]
    fn theorem_at_4_2() {
        let r = verify_theorem_a(4, 2).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.notes.is_empty());
    }

    #[test]
    fn corollary_small() {
        let r = verify_corollary(4, 2, 3).unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_corollary(4, 2, 2).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn report_formatting() {
        let mut r = VerificationReport::new("t");
        r.check_eq("a", 1, 2);
        r.check("b", true);
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.to_string(), "t\n  FAIL a: expected 1, got 2\n  PASS b\n  1/2 checks passed");
    }
}
