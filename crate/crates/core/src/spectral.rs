//! Characteristic and minimal polynomials, and spectral comparisons that
//! never need root finding: every statement about eigenvalues is reduced to
//! exact divisibility by known linear factors or to rank sequences.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::poly::UniPoly;

/// Monic characteristic polynomial det(xI − M).
///
/// Uses the Faddeev–LeVerrier recurrence in characteristic zero and
/// fraction-free Bareiss elimination of xI − M over GF(p), where the
/// recurrence would divide by multiples of p.
pub fn char_poly(m: &Matrix) -> Result<UniPoly> {
    m.require_square("characteristic polynomial argument")?;
    if m.field().characteristic() == 0 {
        char_poly_leverrier(m)
    } else {
        char_poly_bareiss(m)
    }
}

pub fn char_poly_leverrier(m: &Matrix) -> Result<UniPoly> {
    let n = m.require_square("characteristic polynomial argument")?;
    let f = m.field();
    if f.characteristic() != 0 && f.characteristic() as usize <= n {
        return Err(Error::InvalidArgument(format!(
            "Faddeev-LeVerrier needs characteristic 0 or above {n}, field is {f}"
        )));
    }
    let id = Matrix::identity(f, n);
    let mut coeffs = vec![f.zero(); n + 1];
    coeffs[n] = f.one();
    let mut mk = Matrix::zeros(f, n, n);
    for k in 1..=n {
        mk = &(m * &mk) + &id.scale(&coeffs[n + 1 - k]);
        let tr = (m * &mk).trace();
        let kk = f.from_int(k as i64);
        coeffs[n - k] = f.neg(&f.div(&tr, &kk).expect("k is invertible"));
    }
    Ok(UniPoly::new(f, coeffs))
}

/// det(xI − M) by Bareiss elimination over K[x]; valid in every field.
pub fn char_poly_bareiss(m: &Matrix) -> Result<UniPoly> {
    let n = m.require_square("characteristic polynomial argument")?;
    let f = m.field();
    if n == 0 {
        return Ok(UniPoly::one(f));
    }
    let mut a: Vec<Vec<UniPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = f.neg(m.get(i, j));
                    if i == j {
                        UniPoly::new(f, vec![c, f.one()])
                    } else {
                        UniPoly::constant(f, c)
                    }
                })
                .collect()
        })
        .collect();
    let mut sign = f.one();
    let mut prev = UniPoly::one(f);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = f.neg(&sign);
                }
                None => return Ok(UniPoly::zero(f)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(a[n - 1][n - 1].scale(&sign))
}

/// Monic annihilating polynomial of least degree.
pub fn min_poly(m: &Matrix) -> Result<UniPoly> {
    let n = m.require_square("minimal polynomial argument")?;
    let f = m.field();
    let mut powers = vec![Matrix::identity(f, n).vectorize()];
    let mut current = Matrix::identity(f, n);
    for d in 1..=n {
        current = &current * m;
        powers.push(current.vectorize());
        // columns are vec(M^0), …, vec(M^d)
        let cols = Matrix::new(f, d + 1, n * n, powers.concat())?.transpose();
        let kernel = cols.kernel_basis();
        if let Some(v) = kernel.first() {
            return Ok(UniPoly::new(f, v.clone()).monic());
        }
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

/// Strips every factor (x − λ), λ in `candidates`, from `p`; returns the cofactor.
pub fn strip_linear_factors(p: &UniPoly, candidates: &[Scalar]) -> UniPoly {
    let f = p.field();
    let mut rest = p.clone();
    for lam in candidates {
        let k = rest.root_multiplicity(lam);
        rest = rest
            .div_exact(&UniPoly::linear(f, lam).pow(k))
            .expect("multiplicity divides");
    }
    rest
}

/// True when the eigenvalues of `m` (over the algebraic closure) all lie in `candidates`.
pub fn spectrum_within(m: &Matrix, candidates: &[Scalar]) -> Result<bool> {
    let rest = strip_linear_factors(&char_poly(m)?, candidates);
    Ok(rest.degree() == Some(0))
}

/// gcd(φ_A, φ_X) = 1, i.e. no common eigenvalue over the algebraic closure.
pub fn spectra_disjoint(a: &Matrix, x: &Matrix) -> Result<bool> {
    let g = char_poly(a)?.gcd(&char_poly(x)?);
    Ok(g.degree() == Some(0))
}

fn dedup(values: &[Scalar]) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::new();
    for v in values {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    out
}

/// Rank of (M − λI)^k for k = 1..=n.
pub fn rank_profile(m: &Matrix, lam: &Scalar) -> Vec<usize> {
    let n = m.rows();
    let shifted = m - &Matrix::identity(m.field(), n).scale(lam);
    let mut power = Matrix::identity(m.field(), n);
    (0..n)
        .map(|_| {
            power = &power * &shifted;
            power.rank()
        })
        .collect()
}

/// Similarity test against a caller-supplied eigenvalue candidate set.
///
/// Returns `Error::Inconclusive` when a characteristic polynomial has a
/// root outside `candidates`, since the rank comparison would then miss
/// part of the Jordan structure.
pub fn is_similar(x: &Matrix, y: &Matrix, candidates: &[Scalar]) -> Result<bool> {
    let n = x.require_square("similarity argument")?;
    y.require_square("similarity argument")?;
    if x.rows() != y.rows() {
        return Err(Error::dims(format!("{n}x{n} vs {}x{}", y.rows(), y.rows())));
    }
    if x.field() != y.field() {
        return Err(Error::FieldMismatch {
            left: x.field().to_string(),
            right: y.field().to_string(),
        });
    }
    let candidates = dedup(candidates);
    for (name, m) in [("first", x), ("second", y)] {
        if !spectrum_within(m, &candidates)? {
            return Err(Error::Inconclusive(format!(
                "candidate eigenvalues do not exhaust the spectrum of the {name} matrix"
            )));
        }
    }
    Ok(candidates
        .iter()
        .all(|lam| rank_profile(x, lam) == rank_profile(y, lam)))
}

/// Eigenvalues of `m` among `candidates` (roots of its characteristic polynomial).
pub fn eigenvalues_among(m: &Matrix, candidates: &[Scalar]) -> Result<Vec<Scalar>> {
    let p = char_poly(m)?;
    Ok(dedup(candidates)
        .into_iter()
        .filter(|lam| p.field().is_zero(&p.eval(lam)))
        .collect())
}
