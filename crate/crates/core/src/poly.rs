use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// Univariate polynomial, coefficients lowest degree first.
///
/// The coefficient list never ends in a zero, so the zero polynomial is the
/// empty list and `leading()` of a nonzero polynomial is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: &Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        UniPoly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        UniPoly::new(field, Vec::new())
    }

    pub fn constant(field: &Field, c: Scalar) -> Self {
        UniPoly::new(field, vec![c])
    }

    pub fn one(field: &Field) -> Self {
        UniPoly::constant(field, field.one())
    }

    /// The monic linear factor `x − root`.
    pub fn linear(field: &Field, root: &Scalar) -> Self {
        UniPoly::new(field, vec![field.neg(root), field.one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            f,
            (0..n)
                .map(|i| f.add(&self.coeff(i), &other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        let f = &self.field;
        UniPoly::new(f, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        let f = &self.field;
        UniPoly::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        UniPoly::new(f, out)
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        (0..e).fold(UniPoly::one(&self.field), |acc, _| acc.mul(self))
    }

    /// Euclidean division: `self = q·divisor + r` with deg r < deg divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let f = &self.field;
        let d = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f
            .inv(divisor.leading().expect("nonzero"))
            .expect("nonzero leading");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let top = rem.len() - 1;
            let c = f.mul(&rem[top], &lead_inv);
            let shift = top - d;
            for (k, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] = f.sub(&rem[shift + k], &f.mul(&c, dc));
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|x| f.is_zero(x)) {
                rem.pop();
            }
        }
        Ok((UniPoly::new(f, quot), UniPoly::new(f, rem)))
    }

    /// Quotient of an exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InvalidArgument(format!(
                "{divisor} does not divide {self}"
            )))
        }
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).is_ok_and(|(_, r)| r.is_zero())
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&self.field.inv(l).expect("nonzero leading")),
        }
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix) -> Result<Matrix> {
        let n = m.require_square("polynomial argument")?;
        let f = &self.field;
        let id = Matrix::identity(f, n);
        let mut acc = Matrix::zeros(f, n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &id.scale(c);
        }
        Ok(acc)
    }

    /// Multiplicity of `root` as a zero of the polynomial.
    pub fn root_multiplicity(&self, root: &Scalar) -> usize {
        let lin = UniPoly::linear(&self.field, root);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            match p.div_rem(&lin) {
                Ok((q, r)) if r.is_zero() => {
                    p = q;
                    k += 1;
                }
                _ => break,
            }
        }
        k
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let fld = &self.field;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if fld.is_zero(c) {
                continue;
            }
            let text = c.to_string();
            let (neg, body) = match text.strip_prefix('-') {
                // a quadratic element like "-1+s" keeps its sign inside parentheses
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, text.clone()),
            };
            let body = if body.contains(['+', '-']) {
                format!("({body})")
            } else {
                body
            };
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let coef = if body == "1" && i > 0 {
                String::new()
            } else if i > 0 {
                format!("{body}*")
            } else {
                body
            };
            let var = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            write!(f, "{sep}{coef}{var}")?;
            first = false;
        }
        Ok(())
    }
}
