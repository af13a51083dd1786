use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Monomial, MultiPoly, PolyRing};
use crate::error::{Error, Result};
use crate::field::parse_rational;

fn parse_error(column: usize, message: String) -> Error {
    Error::Parse {
        line: 1,
        column,
        message,
    }
}

/// Sum of terms `c*x^i*y^j`; coefficients are rationals and may appear as
/// any factor, e.g. `a*3/2*b`.
pub(super) fn parse_poly(ring: &PolyRing, text: &str) -> Result<MultiPoly> {
    let text = text.replace('\u{2212}', "-").replace('\u{b7}', "*");
    let nvars = ring.nvars();
    let mut out = MultiPoly::zero(nvars);
    // (start column, sign, body)
    let mut terms: Vec<(usize, bool, String)> = Vec::new();
    let mut current = String::new();
    let mut start = 1;
    let mut negative = false;
    let mut seen_any = false;
    for (i, c) in text.chars().enumerate() {
        match c {
            c if c.is_whitespace() => {}
            '+' | '-' => {
                if current.ends_with(['*', '^', '/']) {
                    return Err(parse_error(i + 1, format!("unexpected {c:?}")));
                }
                if !current.is_empty() {
                    terms.push((start, negative, std::mem::take(&mut current)));
                } else if seen_any {
                    return Err(parse_error(i + 1, format!("unexpected {c:?}")));
                }
                negative = c == '-';
                start = i + 2;
                seen_any = true;
            }
            c => {
                if current.is_empty() {
                    start = i + 1;
                }
                current.push(c);
            }
        }
    }
    if current.is_empty() {
        return Err(parse_error(
            text.chars().count() + 1,
            "expected a term".into(),
        ));
    }
    terms.push((start, negative, current));

    for (column, negative, body) in terms {
        let mut coef = BigRational::one();
        let mut exps = vec![0u32; nvars];
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(parse_error(column, format!("empty factor in {body:?}")));
            }
            if factor.starts_with(|c: char| c.is_ascii_digit()) {
                coef *= parse_rational(factor).map_err(|m| parse_error(column, m))?;
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e: u32 = e
                        .parse()
                        .map_err(|_| parse_error(column, format!("bad exponent in {factor:?}")))?;
                    (n, e)
                }
                None => (factor, 1),
            };
            let idx = ring
                .vars()
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| parse_error(column, format!("unknown variable {name:?}")))?;
            exps[idx] += exp;
        }
        if negative {
            coef = -coef;
        }
        if !coef.is_zero() {
            out = out.add(&MultiPoly::term(Monomial::from_exponents(exps), coef));
        }
    }
    Ok(out)
}
