use num_rational::BigRational;

use super::{MultiPoly, PolyRing};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// Largest number of unknown entries (n²) accepted by [`ybe_ideal`].
pub const MAX_IDEAL_ENTRIES: usize = 16;

/// Entries of AXA − XAX as polynomials in the unknown entries of X.
///
/// Variables are the letters `a, b, c, …` assigned to X row by row, in that
/// precedence order. The list has n² entries in row-major order; zero
/// entries are kept so positions stay meaningful.
pub fn ybe_ideal(a: &Matrix) -> Result<(PolyRing, Vec<MultiPoly>)> {
    let n = a.require_square("coefficient matrix")?;
    if *a.field() != Field::Rationals {
        return Err(Error::InvalidArgument(format!(
            "polynomial ideals are built over rat, not {}",
            a.field()
        )));
    }
    if n * n > MAX_IDEAL_ENTRIES {
        return Err(Error::ScaleGuard(format!(
            "{n}x{n} coefficient matrix gives {} unknowns, limit is {MAX_IDEAL_ENTRIES}",
            n * n
        )));
    }
    let nv = n * n;
    let ring = PolyRing::letters(nv);
    let coef = |i: usize, j: usize| -> BigRational {
        match a.get(i, j) {
            Scalar::Rational(q) => q.clone(),
            _ => unreachable!("rational matrix"),
        }
    };
    let x = |i: usize, j: usize| MultiPoly::var(nv, i * n + j);
    // AX and XA as polynomial matrices
    let mut ax = vec![MultiPoly::zero(nv); nv];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                ax[i * n + j] = ax[i * n + j].add(&x(k, j).scale(&coef(i, k)));
            }
        }
    }
    let mut out = Vec::with_capacity(nv);
    for i in 0..n {
        for j in 0..n {
            let mut p = MultiPoly::zero(nv);
            for k in 0..n {
                // (AX·A)_ij − (X·AX)_ij
                p = p.add(&ax[i * n + k].scale(&coef(k, j)));
                p = p.sub(&x(i, k).mul(&ax[k * n + j]));
            }
            out.push(p);
        }
    }
    Ok((ring, out))
}
