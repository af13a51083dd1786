//! Exact solution of AX + XB = C through the Kronecker lift
//! (I ⊗ A + Bᵀ ⊗ I)·vec(X) = vec(C), with column-major vec.

use crate::error::{Error, Result};
use crate::matrix::{canonical_matrix_basis, Matrix};
use crate::spectral::char_poly;
use crate::ybe::residual;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylvesterProblem {
    a: Matrix,
    b: Matrix,
    c: Matrix,
}

impl SylvesterProblem {
    /// A is n×n, B is m×m, C is n×m.
    pub fn new(a: Matrix, b: Matrix, c: Matrix) -> Result<Self> {
        let n = a.require_square("A")?;
        let m = b.require_square("B")?;
        if c.rows() != n || c.cols() != m {
            return Err(Error::dims(format!(
                "C is {}x{}, expected {n}x{m}",
                c.rows(),
                c.cols()
            )));
        }
        for other in [&b, &c] {
            if other.field() != a.field() {
                return Err(Error::FieldMismatch {
                    left: a.field().to_string(),
                    right: other.field().to_string(),
                });
            }
        }
        Ok(SylvesterProblem { a, b, c })
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    /// I ⊗ A + Bᵀ ⊗ I.
    pub fn lifted_system(&self) -> Matrix {
        let f = self.a.field();
        let i_m = Matrix::identity(f, self.b.rows());
        let i_n = Matrix::identity(f, self.a.rows());
        &i_m.kron(&self.a) + &self.b.transpose().kron(&i_n)
    }

    /// AX + XB − C.
    pub fn residual(&self, x: &Matrix) -> Result<Matrix> {
        let lhs = self
            .a
            .checked_mul(x)?
            .checked_add(&x.checked_mul(&self.b)?)?;
        lhs.checked_sub(&self.c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SylvesterSolution {
    Unique(Matrix),
    /// Every solution is `particular` plus a combination of `kernel`
    /// (solutions of the homogeneous equation, canonical basis).
    Affine {
        particular: Matrix,
        kernel: Vec<Matrix>,
    },
    Inconsistent,
}

impl SylvesterSolution {
    pub fn kernel_dimension(&self) -> usize {
        match self {
            SylvesterSolution::Unique(_) => 0,
            SylvesterSolution::Affine { kernel, .. } => kernel.len(),
            SylvesterSolution::Inconsistent => 0,
        }
    }

    pub fn particular(&self) -> Option<&Matrix> {
        match self {
            SylvesterSolution::Unique(x) => Some(x),
            SylvesterSolution::Affine { particular, .. } => Some(particular),
            SylvesterSolution::Inconsistent => None,
        }
    }
}

/// AX + XB = C has exactly one solution for every C iff A and −B share no
/// eigenvalue, i.e. gcd(φ_A, φ_{−B}) = 1.
pub fn sylvester_unique(a: &Matrix, b: &Matrix) -> Result<bool> {
    let g = char_poly(a)?.gcd(&char_poly(&-b)?);
    Ok(g.degree() == Some(0))
}

pub fn sylvester_solve(p: &SylvesterProblem) -> SylvesterSolution {
    let f = p.a.field();
    let (n, m) = (p.a.rows(), p.b.rows());
    let nm = n * m;
    let system = p.lifted_system();
    let rhs = p.c.vectorize();
    let mut aug = Matrix::zeros(f, nm, nm + 1);
    for (i, v) in rhs.iter().enumerate() {
        for j in 0..nm {
            aug.set(i, j, system.get(i, j).clone());
        }
        aug.set(i, nm, v.clone());
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&nm) {
        return SylvesterSolution::Inconsistent;
    }
    let mut v = vec![f.zero(); nm];
    for (row, &col) in pivots.iter().enumerate() {
        v[col] = r.get(row, nm).clone();
    }
    let particular = Matrix::from_vectorized(f, n, m, &v).expect("n*m entries");
    let kernel: Vec<Matrix> = system
        .kernel_basis()
        .iter()
        .map(|k| Matrix::from_vectorized(f, n, m, k).expect("n*m entries"))
        .collect();
    if kernel.is_empty() {
        SylvesterSolution::Unique(particular)
    } else {
        SylvesterSolution::Affine { particular, kernel }
    }
}

/// Basis of {X₁ : A₁·X₁·A₂ = X₁·A₂·X₂}, the off-diagonal block equation for
/// a block-diagonal coefficient diag(A₁, A₂). With Y = X₁·A₂ it becomes
/// A₁Y − YX₂ = 0, solved as a Sylvester equation and mapped back by A₂⁻¹.
pub fn offdiag_solution_space(a1: &Matrix, a2: &Matrix, x2: &Matrix) -> Result<Vec<Matrix>> {
    let n1 = a1.require_square("A1")?;
    let n2 = a2.require_square("A2")?;
    let a2_inv = a2
        .inverse()?
        .ok_or_else(|| Error::Precondition("A2 is singular".into()))?;
    if !residual(a2, x2)?.is_solution {
        return Err(Error::Precondition("X2 is not a solution for A2".into()));
    }
    let problem = SylvesterProblem::new(a1.clone(), -x2, Matrix::zeros(a1.field(), n1, n2))?;
    let ys = match sylvester_solve(&problem) {
        SylvesterSolution::Affine { kernel, .. } => kernel,
        _ => Vec::new(),
    };
    let xs: Vec<Matrix> = ys.iter().map(|y| y * &a2_inv).collect();
    Ok(canonical_matrix_basis(a1.field(), n1, n2, &xs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::jordan::JordanSpec;

    fn q() -> Field {
        Field::Rationals
    }

    fn jordan(text: &str) -> Matrix {
        JordanSpec::parse(&q(), text).unwrap().matrix()
    }

    fn one_by_one(v: i64) -> Matrix {
        Matrix::from_ints(&q(), &[[v]])
    }

    #[test]
    fn uniqueness_predicate() {
        assert!(sylvester_unique(&jordan("1^2"), &-&jordan("2^2")).unwrap());
        assert!(!sylvester_unique(&one_by_one(1), &one_by_one(-1)).unwrap());
        assert!(!sylvester_unique(&jordan("0^3"), &jordan("0^3")).unwrap());
    }

    #[test]
    fn scalar_equations() {
        let p = SylvesterProblem::new(one_by_one(1), one_by_one(1), one_by_one(4)).unwrap();
        assert_eq!(
            sylvester_solve(&p),
            SylvesterSolution::Unique(one_by_one(2))
        );
        let p = SylvesterProblem::new(one_by_one(1), one_by_one(-1), one_by_one(0)).unwrap();
        match sylvester_solve(&p) {
            SylvesterSolution::Affine { particular, kernel } => {
                assert!(particular.is_zero());
                assert_eq!(kernel.len(), 1);
            }
            other => panic!("{other:?}"),
        }
        let p = SylvesterProblem::new(one_by_one(1), one_by_one(-1), one_by_one(3)).unwrap();
        assert_eq!(sylvester_solve(&p), SylvesterSolution::Inconsistent);
    }

    #[test]
    fn homogeneous_block_equation_has_centralizer_shaped_kernel() {
        let a = jordan("1^2");
        let p = SylvesterProblem::new(a.clone(), -&a, Matrix::zeros(&q(), 2, 2)).unwrap();
        let sol = sylvester_solve(&p);
        assert_eq!(sol.kernel_dimension(), 2);
        if let SylvesterSolution::Affine { kernel, .. } = sol {
            for k in kernel {
                assert!(a.commutes_with(&k));
            }
        }
    }

    #[test]
    fn rectangular_unique_solution() {
        let a = jordan("1^2");
        let b = -&jordan("2^3");
        let c = Matrix::from_ints(&q(), &[[1, 2, 3], [4, 5, 6]]);
        let p = SylvesterProblem::new(a, b, c).unwrap();
        match sylvester_solve(&p) {
            SylvesterSolution::Unique(x) => assert!(p.residual(&x).unwrap().is_zero()),
            other => panic!("{other:?}"),
        }
        assert!(
            SylvesterProblem::new(jordan("1^2"), jordan("1^2"), Matrix::zeros(&q(), 3, 2)).is_err()
        );
    }

    #[test]
    fn offdiag_spaces() {
        let f = q();
        let j1 = jordan("1^2");
        let j2 = jordan("2^2");
        assert!(offdiag_solution_space(&j1, &j2, &j2).unwrap().is_empty());
        let basis = offdiag_solution_space(&j2, &j2, &j2).unwrap();
        let a_inv = j2.inverse().unwrap().unwrap();
        let expect = canonical_matrix_basis(&f, 2, 2, &[a_inv.clone(), &j2 * &a_inv]);
        assert_eq!(basis, expect);
        assert!(offdiag_solution_space(&j1, &j1, &Matrix::zeros(&f, 2, 2))
            .unwrap()
            .is_empty());
        assert!(offdiag_solution_space(&j1, &jordan("0^2"), &Matrix::zeros(&f, 2, 2)).is_err());
    }
}
