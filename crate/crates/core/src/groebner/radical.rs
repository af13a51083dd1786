use num_rational::BigRational;
use num_traits::One;

use super::{buchberger, BuchbergerOptions, Monomial, MultiPoly};
use crate::error::{Error, Result};

/// Same polynomial with one extra variable placed in front (highest precedence).
fn with_leading_variable(p: &MultiPoly) -> MultiPoly {
    let mut out = MultiPoly::zero(p.nvars() + 1);
    for (m, c) in p.terms() {
        let mut e = Vec::with_capacity(p.nvars() + 1);
        e.push(0);
        e.extend_from_slice(m.exponents());
        out.add_term(&Monomial(e), c);
    }
    out
}

/// Whether `p` vanishes on every common zero of `gens` over the algebraic
/// closure, i.e. p ∈ √⟨gens⟩. Decided by 1 ∈ ⟨gens, 1 − t·p⟩ with a fresh
/// variable t.
pub fn in_radical(p: &MultiPoly, gens: &[MultiPoly], options: BuchbergerOptions) -> Result<bool> {
    if gens.iter().any(|g| g.nvars() != p.nvars()) {
        return Err(Error::InvalidArgument(
            "generators and probe live in different rings".into(),
        ));
    }
    let n = p.nvars() + 1;
    let t = MultiPoly::var(n, 0);
    let one = MultiPoly::constant(n, BigRational::one());
    let mut lifted: Vec<MultiPoly> = gens.iter().map(with_leading_variable).collect();
    lifted.push(one.sub(&t.mul(&with_leading_variable(p))));
    let basis = buchberger(&lifted, options)?;
    Ok(basis
        .iter()
        .any(|g| g.leading_monomial().is_some_and(Monomial::is_one)))
}
