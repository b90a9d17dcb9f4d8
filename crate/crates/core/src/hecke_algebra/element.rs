use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::product::multiply;
use crate::coset_enum::{formula_degree, CosetLabel};
use crate::error::{Error, Result};

/// A finite nonnegative integer combination of double cosets at one prime.
///
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    p: u64,
    terms: BTreeMap<CosetLabel, BigUint>,
}

impl HeckeElement {
    pub fn zero(n: usize, p: u64) -> Self {
        HeckeElement { n, p, terms: BTreeMap::new() }
    }

    pub fn basis(label: &CosetLabel) -> Self {
        let mut e = Self::zero(label.n(), label.p());
        e.terms.insert(label.clone(), BigUint::one());
        e
    }

    pub fn from_terms<I>(n: usize, p: u64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (CosetLabel, BigUint)>,
    {
        let mut e = Self::zero(n, p);
        for (label, c) in terms {
            e.add_term(label, c)?;
        }
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<CosetLabel, BigUint> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, label: &CosetLabel) -> BigUint {
        self.terms.get(label).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, label: CosetLabel, c: BigUint) -> Result<()> {
        if label.n() != self.n || label.p() != self.p {
            return Err(Error::DimensionMismatch(format!(
                "{label} does not belong to the algebra at n = {}, p = {}",
                self.n, self.p
            )));
        }
        if !c.is_zero() {
            *self.terms.entry(label).or_default() += c;
        }
        Ok(())
    }

    pub fn add(&self, other: &HeckeElement) -> Result<HeckeElement> {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigUint) -> HeckeElement {
        if k.is_zero() {
            return Self::zero(self.n, self.p);
        }
        let terms = self.terms.iter().map(|(l, c)| (l.clone(), c * k)).collect();
        HeckeElement { n: self.n, p: self.p, terms }
    }

    /// Product in the Hecke algebra, expanded bilinearly over [`multiply`].
    pub fn mul(&self, other: &HeckeElement) -> Result<HeckeElement> {
        if self.n != other.n || self.p != other.p {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply elements at (n, p) = ({}, {}) and ({}, {})",
                self.n, self.p, other.n, other.p
            )));
        }
        let mut out = Self::zero(self.n, self.p);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let prod = multiply(a, b)?;
                out = out.add(&prod.element.scale(&(ca * cb)))?;
            }
        }
        Ok(out)
    }

    /// `sum_h c_h deg(h)`, the number of right cosets counted with multiplicity.
    pub fn mass(&self) -> BigUint {
        self.terms.iter().map(|(l, c)| c * formula_degree(l)).sum()
    }

    /// Identifies `p^k g` with `g`: every label is replaced by its reduced form.
    pub fn modulo_scalars(&self) -> HeckeElement {
        let mut out = Self::zero(self.n, self.p);
        for (l, c) in &self.terms {
            *out.terms.entry(l.reduced().1).or_default() += c;
        }
        out
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{l}")?;
        }
        Ok(())
    }
}
