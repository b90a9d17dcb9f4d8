use super::element::HeckeElement;
use crate::coset_enum::CosetLabel;
use crate::error::{Error, Result};

/// The ring map to size `n - 1`: `diag(1, p^e_2, ..., p^e_n)` goes to `diag(p^e_2, ..., p^e_n)`,
/// and every label with a positive first exponent goes to zero.
pub fn psi(e: &HeckeElement) -> Result<HeckeElement> {
    if e.n() < 3 {
        return Err(Error::InvalidArgument(format!("psi needs n >= 3, got {}", e.n())));
    }
    let mut out = HeckeElement::zero(e.n() - 1, e.p());
    for (l, c) in e.terms() {
        if l.min_exp() == 0 {
            out.add_term(CosetLabel::new(l.p(), l.exps()[1..].to_vec())?, c.clone())?;
        }
    }
    Ok(out)
}
