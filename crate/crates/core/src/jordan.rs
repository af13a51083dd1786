use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JordanBlock {
    pub eigenvalue: Scalar,
    pub size: usize,
}

/// Ordered list of Jordan blocks describing a coefficient matrix in Jordan form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JordanSpec {
    field: Field,
    blocks: Vec<JordanBlock>,
}

/// J_k(λ) = λI + B.
pub fn jordan_block(field: &Field, eigenvalue: &Scalar, size: usize) -> Matrix {
    let mut m = Matrix::shift(field, size);
    for i in 0..size {
        m.set(i, i, eigenvalue.clone());
    }
    m
}

impl JordanSpec {
    pub fn new(field: &Field, blocks: Vec<(Scalar, usize)>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidArgument(
                "a Jordan spec needs at least one block".into(),
            ));
        }
        let mut out = Vec::with_capacity(blocks.len());
        for (eigenvalue, size) in blocks {
            field.ensure_contains(&eigenvalue)?;
            if size == 0 {
                return Err(Error::InvalidArgument(
                    "Jordan block sizes must be positive".into(),
                ));
            }
            out.push(JordanBlock { eigenvalue, size });
        }
        Ok(JordanSpec {
            field: field.clone(),
            blocks: out,
        })
    }

    pub fn single(field: &Field, eigenvalue: Scalar, size: usize) -> Result<Self> {
        JordanSpec::new(field, vec![(eigenvalue, size)])
    }

    /// Parses the shorthand `λ^k,λ^k,…`, e.g. `0^3` or `1^2,1^2`.
    pub fn parse(field: &Field, text: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidArgument(format!("bad Jordan spec {text:?}: {msg}"));
        let mut blocks = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            let (lam, size) = part
                .rsplit_once('^')
                .ok_or_else(|| bad(format!("{part:?} is not of the form λ^k")))?;
            let lam = field.parse_scalar(lam).map_err(bad)?;
            let size: usize = size
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad size in {part:?}")))?;
            blocks.push((lam, size));
        }
        JordanSpec::new(field, blocks)
    }

    /// Recognizes a matrix that is already in Jordan form.
    pub fn detect(m: &Matrix) -> Option<JordanSpec> {
        if !m.is_square() || m.rows() == 0 {
            return None;
        }
        let f = m.field();
        let n = m.rows();
        let mut blocks = Vec::new();
        let mut start = 0;
        while start < n {
            let lam = m.get(start, start).clone();
            let mut end = start + 1;
            while end < n && f.is_one(m.get(end - 1, end)) && *m.get(end, end) == lam {
                end += 1;
            }
            blocks.push((lam, end - start));
            start = end;
        }
        let spec = JordanSpec::new(f, blocks).ok()?;
        (spec.matrix() == *m).then_some(spec)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn blocks(&self) -> &[JordanBlock] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    /// Index of the first coordinate of each block.
    pub fn offsets(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .scan(0, |acc, b| {
                let start = *acc;
                *acc += b.size;
                Some(start)
            })
            .collect()
    }

    /// Distinct eigenvalues in order of first appearance.
    pub fn eigenvalues(&self) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = Vec::new();
        for b in &self.blocks {
            if !out.contains(&b.eigenvalue) {
                out.push(b.eigenvalue.clone());
            }
        }
        out
    }

    pub fn is_invertible(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| !self.field.is_zero(&b.eigenvalue))
    }

    /// Block-diagonal matrix of the Jordan blocks, in order.
    pub fn matrix(&self) -> Matrix {
        let blocks: Vec<Matrix> = self
            .blocks
            .iter()
            .map(|b| jordan_block(&self.field, &b.eigenvalue, b.size))
            .collect();
        Matrix::block_diagonal(&blocks).expect("nonempty block list")
    }
}

impl fmt::Display for JordanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{}^{}", b.eigenvalue, b.size))
            .collect();
        f.write_str(&parts.join(","))
    }
}
