//! The residual AXA − XAX and structural checks on solutions.
//!
//! Every check returns a [`PropertyVerdict`]. A failing verdict always
//! carries a [`Witness`] that exhibits the failure on its own, so it can be
//! re-checked without rerunning the property.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::jordan::JordanSpec;
use crate::matrix::{canonical_basis, Matrix};
use crate::poly::UniPoly;
use crate::spectral::{char_poly, strip_linear_factors};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    /// AXA − XAX.
    pub residual: Matrix,
    pub is_solution: bool,
}

fn same_shape(a: &Matrix, x: &Matrix, what: &str) -> Result<usize> {
    let n = a.require_square("coefficient matrix")?;
    if x.rows() != n || x.cols() != n {
        return Err(Error::dims(format!(
            "{what} is {}x{}, coefficient is {n}x{n}",
            x.rows(),
            x.cols()
        )));
    }
    if a.field() != x.field() {
        return Err(Error::FieldMismatch {
            left: a.field().to_string(),
            right: x.field().to_string(),
        });
    }
    Ok(n)
}

pub fn residual(a: &Matrix, x: &Matrix) -> Result<ResidualReport> {
    same_shape(a, x, "candidate")?;
    let ax = a * x;
    let r = &(&ax * a) - &(x * &ax);
    let is_solution = r.is_zero();
    Ok(ResidualReport {
        residual: r,
        is_solution,
    })
}

pub fn is_solution(a: &Matrix, x: &Matrix) -> Result<bool> {
    Ok(residual(a, x)?.is_solution)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    ConjugationEquivariance,
    SpectrumInclusion,
    KernelInvariance,
    PowerIdentities,
    CharPolyAnnihilation,
    DisjointSpectraDichotomy,
    CommutingSylvester,
    TwoBlockKernelClassification,
    PencilCondition,
    EigenvalueTransfer,
    InvertibleSimilarity,
    SingleBlockStructure,
    KernelEigenspaceExclusion,
    GeneralizedEigenspaceAnnihilation,
    KernelNotEigenspace,
}

impl Property {
    pub const ALL: [Property; 15] = [
        Property::ConjugationEquivariance,
        Property::SpectrumInclusion,
        Property::KernelInvariance,
        Property::PowerIdentities,
        Property::CharPolyAnnihilation,
        Property::DisjointSpectraDichotomy,
        Property::CommutingSylvester,
        Property::TwoBlockKernelClassification,
        Property::PencilCondition,
        Property::EigenvalueTransfer,
        Property::InvertibleSimilarity,
        Property::SingleBlockStructure,
        Property::KernelEigenspaceExclusion,
        Property::GeneralizedEigenspaceAnnihilation,
        Property::KernelNotEigenspace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::ConjugationEquivariance => "conjugation-equivariance",
            Property::SpectrumInclusion => "spectrum-inclusion",
            Property::KernelInvariance => "kernel-invariance",
            Property::PowerIdentities => "power-identities",
            Property::CharPolyAnnihilation => "charpoly-annihilation",
            Property::DisjointSpectraDichotomy => "disjoint-spectra-dichotomy",
            Property::CommutingSylvester => "commuting-sylvester",
            Property::TwoBlockKernelClassification => "two-block-kernel-classification",
            Property::PencilCondition => "pencil-condition",
            Property::EigenvalueTransfer => "eigenvalue-transfer",
            Property::InvertibleSimilarity => "invertible-similarity",
            Property::SingleBlockStructure => "single-block-structure",
            Property::KernelEigenspaceExclusion => "kernel-eigenspace-exclusion",
            Property::GeneralizedEigenspaceAnnihilation => "generalized-eigenspace-annihilation",
            Property::KernelNotEigenspace => "kernel-not-eigenspace",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PowerSide {
    /// A·X·Aⁿ = Xⁿ·A·X
    Left,
    /// Aⁿ·X·A = X·A·Xⁿ
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A matrix that should have been zero (or the offending solution).
    Matrix(Matrix),
    Vector(Vec<Scalar>),
    /// Canonical basis of an offending subspace.
    Subspace(Vec<Vec<Scalar>>),
    Power {
        n: usize,
        side: PowerSide,
        difference: Matrix,
    },
    /// Leftover characteristic-polynomial factor.
    Polynomial(UniPoly),
    Eigenpair {
        eigenvalue: Scalar,
        vector: Vec<Scalar>,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vec = |v: &[Scalar]| {
            let parts: Vec<String> = v.iter().map(Scalar::to_string).collect();
            format!("({})", parts.join(", "))
        };
        match self {
            Witness::Matrix(m) => write!(f, "{m}"),
            Witness::Vector(v) => f.write_str(&vec(v)),
            Witness::Subspace(basis) => {
                let parts: Vec<String> = basis.iter().map(|v| vec(v)).collect();
                write!(f, "span{{{}}}", parts.join(", "))
            }
            Witness::Power {
                n,
                side,
                difference,
            } => {
                let eq = match side {
                    PowerSide::Left => "AXA^n - X^nAX",
                    PowerSide::Right => "A^nXA - XAX^n",
                };
                write!(f, "n = {n}: {eq} =\n{difference}")
            }
            Witness::Polynomial(p) => write!(f, "{p}"),
            Witness::Eigenpair { eigenvalue, vector } => {
                write!(f, "eigenvalue {eigenvalue}, vector {}", vec(vector))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub property: Property,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl PropertyVerdict {
    pub fn pass(property: Property) -> Self {
        PropertyVerdict {
            property,
            holds: true,
            witness: None,
        }
    }

    pub fn fail(property: Property, witness: Witness) -> Self {
        PropertyVerdict {
            property,
            holds: false,
            witness: Some(witness),
        }
    }
}

fn require_solution(a: &Matrix, x: &Matrix, what: &str) -> Result<()> {
    if residual(a, x)?.is_solution {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} is not a solution")))
    }
}

fn require_invertible(a: &Matrix) -> Result<()> {
    if a.is_invertible() {
        Ok(())
    } else {
        Err(Error::Precondition("coefficient matrix is singular".into()))
    }
}

/// x ∈ Sol_a exactly when g·x·g⁻¹ ∈ Sol_{g·a·g⁻¹}.
pub fn check_conjugation_equivariance(
    a: &Matrix,
    x: &Matrix,
    g: &Matrix,
) -> Result<PropertyVerdict> {
    same_shape(a, x, "candidate")?;
    same_shape(a, g, "conjugator")?;
    let gi = g
        .inverse()?
        .ok_or_else(|| Error::Precondition("conjugator is singular".into()))?;
    let ga = &(g * a) * &gi;
    let gx = &(g * x) * &gi;
    let before = is_solution(a, x)?;
    let after = is_solution(&ga, &gx)?;
    Ok(if before == after {
        PropertyVerdict::pass(Property::ConjugationEquivariance)
    } else {
        PropertyVerdict::fail(Property::ConjugationEquivariance, Witness::Matrix(gx))
    })
}

/// For invertible a, every eigenvalue of x lies in σ(a) ∪ {0}. The
/// eigenvalues of a are supplied; the check strips the matching linear
/// factors from the characteristic polynomial of x.
pub fn check_spectrum_inclusion(
    a: &Matrix,
    x: &Matrix,
    eigenvalues_of_a: &[Scalar],
) -> Result<PropertyVerdict> {
    same_shape(a, x, "candidate")?;
    require_invertible(a)?;
    require_solution(a, x, "candidate")?;
    let mut candidates = eigenvalues_of_a.to_vec();
    candidates.push(a.field().zero());
    let rest = strip_linear_factors(&char_poly(x)?, &candidates);
    Ok(if rest.degree() == Some(0) {
        PropertyVerdict::pass(Property::SpectrumInclusion)
    } else {
        PropertyVerdict::fail(Property::SpectrumInclusion, Witness::Polynomial(rest))
    })
}

/// For invertible a, a maps ker(x) into itself.
pub fn check_kernel_invariance(a: &Matrix, x: &Matrix) -> Result<PropertyVerdict> {
    same_shape(a, x, "candidate")?;
    require_invertible(a)?;
    require_solution(a, x, "candidate")?;
    for v in x.kernel_basis() {
        let image = x.mul_vec(&a.mul_vec(&v));
        if image.iter().any(|c| !a.field().is_zero(c)) {
            return Ok(PropertyVerdict::fail(
                Property::KernelInvariance,
                Witness::Vector(v),
            ));
        }
    }
    Ok(PropertyVerdict::pass(Property::KernelInvariance))
}

/// A·X·Aⁿ = Xⁿ·A·X and Aⁿ·X·A = X·A·Xⁿ for 1 ≤ n ≤ `up_to`.
pub fn check_power_identities(a: &Matrix, x: &Matrix, up_to: usize) -> Result<PropertyVerdict> {
    let n = same_shape(a, x, "candidate")?;
    let f = a.field();
    let ax = a * x;
    let xa = x * a;
    let (mut an, mut xn) = (Matrix::identity(f, n), Matrix::identity(f, n));
    for k in 1..=up_to {
        an = &an * a;
        xn = &xn * x;
        let left = &(&ax * &an) - &(&xn * &ax);
        if !left.is_zero() {
            return Ok(PropertyVerdict::fail(
                Property::PowerIdentities,
                Witness::Power {
                    n: k,
                    side: PowerSide::Left,
                    difference: left,
                },
            ));
        }
        let right = &(&an * &xa) - &(&xa * &xn);
        if !right.is_zero() {
            return Ok(PropertyVerdict::fail(
                Property::PowerIdentities,
                Witness::Power {
                    n: k,
                    side: PowerSide::Right,
                    difference: right,
                },
            ));
        }
    }
    Ok(PropertyVerdict::pass(Property::PowerIdentities))
}

/// X·A·φ_A(X) = 0 and φ_A(X)·A·X = 0, φ_A the characteristic polynomial of A.
pub fn check_charpoly_annihilation(a: &Matrix, x: &Matrix) -> Result<PropertyVerdict> {
    same_shape(a, x, "candidate")?;
    let phi = char_poly(a)?.eval_matrix(x)?;
    for product in [&(x * a) * &phi, &(&phi * a) * x] {
        if !product.is_zero() {
            return Ok(PropertyVerdict::fail(
                Property::CharPolyAnnihilation,
                Witness::Matrix(product),
            ));
        }
    }
    Ok(PropertyVerdict::pass(Property::CharPolyAnnihilation))
}

/// When the spectra of a and x are disjoint (certified by the caller), either
/// a = 0 and x is invertible, or x = 0 and a is invertible. Holds vacuously
/// when `spectra_disjoint` is false.
pub fn check_disjoint_spectra_dichotomy(
    a: &Matrix,
    x: &Matrix,
    spectra_disjoint: bool,
) -> Result<PropertyVerdict> {
    same_shape(a, x, "candidate")?;
    if !spectra_disjoint {
        return Ok(PropertyVerdict::pass(Property::DisjointSpectraDichotomy));
    }
    let ok = (a.is_zero() && x.is_invertible()) || (x.is_zero() && a.is_invertible());
    Ok(if ok {
        PropertyVerdict::pass(Property::DisjointSpectraDichotomy)
    } else {
        PropertyVerdict::fail(
            Property::DisjointSpectraDichotomy,
            Witness::Matrix(x.clone()),
        )
    })
}

/// A commuting solution with a − x invertible satisfies a·x = 0.
pub fn check_commuting_sylvester(a: &Matrix, x: &Matrix) -> Result<PropertyVerdict> {
    same_shape(a, x, "candidate")?;
    require_solution(a, x, "candidate")?;
    if !a.commutes_with(x) {
        return Err(Error::Precondition(
            "candidate does not commute with the coefficient".into(),
        ));
    }
    if !(a - x).is_invertible() {
        return Err(Error::Precondition("A - X is singular".into()));
    }
    let ax = a * x;
    Ok(if ax.is_zero() {
        PropertyVerdict::pass(Property::CommutingSylvester)
    } else {
        PropertyVerdict::fail(Property::CommutingSylvester, Witness::Matrix(ax))
    })
}

fn unit_span(n: usize, range: std::ops::Range<usize>, a: &Matrix) -> Vec<Vec<Scalar>> {
    let f = a.field();
    range
        .map(|i| {
            (0..n)
                .map(|j| if i == j { f.one() } else { f.zero() })
                .collect()
        })
        .collect()
}

/// For a = diag(J_{n₁}(λ₁), J_{n₂}(λ₂)) with λ₁, λ₂ ≠ 0 and a singular
/// nonzero solution x, ker(x) is the first block's coordinates, the second
/// block's, or everything.
pub fn check_kernel_classification_two_blocks(
    a: &Matrix,
    x: &Matrix,
    block_split: (usize, usize),
) -> Result<PropertyVerdict> {
    let n = same_shape(a, x, "candidate")?;
    let (n1, n2) = block_split;
    let spec = JordanSpec::detect(a)
        .ok_or_else(|| Error::Precondition("coefficient is not in Jordan form".into()))?;
    let sizes: Vec<usize> = spec.blocks().iter().map(|b| b.size).collect();
    if sizes != [n1, n2] {
        return Err(Error::Precondition(format!(
            "coefficient has Jordan blocks of sizes {sizes:?}, expected [{n1}, {n2}]"
        )));
    }
    if !spec.is_invertible() {
        return Err(Error::Precondition(
            "both Jordan blocks need nonzero eigenvalues".into(),
        ));
    }
    require_solution(a, x, "candidate")?;
    if x.is_zero() {
        return Err(Error::Precondition("candidate is zero".into()));
    }
    if x.is_invertible() {
        return Err(Error::Precondition("candidate is invertible".into()));
    }
    let f = a.field();
    let kernel = x.kernel_basis();
    let allowed = [
        unit_span(n, 0..n1, a),
        unit_span(n, n1..n, a),
        unit_span(n, 0..n, a),
    ];
    let holds = allowed.iter().any(|p| canonical_basis(f, n, p) == kernel);
    Ok(if holds {
        PropertyVerdict::pass(Property::TwoBlockKernelClassification)
    } else {
        PropertyVerdict::fail(
            Property::TwoBlockKernelClassification,
            Witness::Subspace(kernel),
        )
    })
}

/// Outcome of the pencil test: the three defining conditions and
/// corroborating residuals of x0 + λ·x1 at sample values of λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilReport {
    pub verdict: PropertyVerdict,
    /// (name, value) for A·X1·A, X1·A·X1, X0·A·X1 + X1·A·X0.
    pub conditions: Vec<(&'static str, Matrix)>,
    /// (λ, whether x0 + λ·x1 is a solution).
    pub samples: Vec<(Scalar, bool)>,
}

pub const PENCIL_SAMPLES: [i64; 4] = [1, 2, -1, 5];

/// x0 + λ·x1 ∈ Sol_a for every λ exactly when A·X1·A = 0 = X1·A·X1 and
/// X0·A·X1 + X1·A·X0 = 0 (given x0, x1 are solutions).
pub fn check_pencil_condition(a: &Matrix, x0: &Matrix, x1: &Matrix) -> Result<PencilReport> {
    same_shape(a, x0, "X0")?;
    same_shape(a, x1, "X1")?;
    require_solution(a, x0, "X0")?;
    require_solution(a, x1, "X1")?;
    let conditions = vec![
        ("A*X1*A", &(a * x1) * a),
        ("X1*A*X1", &(x1 * a) * x1),
        ("X0*A*X1 + X1*A*X0", &(&(x0 * a) * x1) + &(&(x1 * a) * x0)),
    ];
    let verdict = match conditions.iter().find(|(_, m)| !m.is_zero()) {
        None => PropertyVerdict::pass(Property::PencilCondition),
        Some((_, m)) => {
            PropertyVerdict::fail(Property::PencilCondition, Witness::Matrix(m.clone()))
        }
    };
    let f = a.field();
    let samples = PENCIL_SAMPLES
        .iter()
        .map(|&l| {
            let lam = f.from_int(l);
            let ok = is_solution(a, &(x0 + &x1.scale(&lam)))?;
            Ok((lam, ok))
        })
        .collect::<Result<_>>()?;
    Ok(PencilReport {
        verdict,
        conditions,
        samples,
    })
}

fn jordan_of(a: &Matrix) -> Result<JordanSpec> {
    JordanSpec::detect(a)
        .ok_or_else(|| Error::Precondition("coefficient is not in Jordan form".into()))
}

fn unit_vector(a: &Matrix, i: usize) -> Vec<Scalar> {
    let f = a.field();
    (0..a.rows())
        .map(|j| if i == j { f.one() } else { f.zero() })
        .collect()
}

/// Blocks whose eigenvalue occurs in exactly one block (geometric multiplicity 1).
fn simple_blocks(spec: &JordanSpec) -> Vec<(usize, usize, Scalar)> {
    let offsets = spec.offsets();
    spec.blocks()
        .iter()
        .zip(offsets)
        .filter(|(b, _)| {
            spec.blocks()
                .iter()
                .filter(|c| c.eigenvalue == b.eigenvalue)
                .count()
                == 1
        })
        .map(|(b, off)| (off, b.size, b.eigenvalue.clone()))
        .collect()
}

/// For Jordan-form a and each eigenpair (λ, v) with v the first vector of a
/// block: a·x·v = 0 or λ is an eigenvalue of x.
pub fn check_eigenvalue_transfer(a: &Matrix, x: &Matrix) -> Result<PropertyVerdict> {
    same_shape(a, x, "candidate")?;
    let spec = jordan_of(a)?;
    require_solution(a, x, "candidate")?;
    let f = a.field();
    let chi = char_poly(x)?;
    for (block, off) in spec.blocks().iter().zip(spec.offsets()) {
        let v = unit_vector(a, off);
        let axv = a.mul_vec(&x.mul_vec(&v));
        let annihilated = axv.iter().all(|c| f.is_zero(c));
        if !annihilated && !f.is_zero(&chi.eval(&block.eigenvalue)) {
            return Ok(PropertyVerdict::fail(
                Property::EigenvalueTransfer,
                Witness::Eigenpair {
                    eigenvalue: block.eigenvalue.clone(),
                    vector: v,
                },
            ));
        }
    }
    Ok(PropertyVerdict::pass(Property::EigenvalueTransfer))
}

/// For invertible a and invertible x ∈ Sol_a, x is similar to a. Similarity
/// is decided with σ(a) as the candidate set, which is exhaustive for x by
/// spectrum inclusion.
pub fn check_invertible_similarity(a: &Matrix, x: &Matrix) -> Result<PropertyVerdict> {
    same_shape(a, x, "candidate")?;
    let spec = jordan_of(a)?;
    require_invertible(a)?;
    require_solution(a, x, "candidate")?;
    if !x.is_invertible() {
        return Err(Error::Precondition("candidate is singular".into()));
    }
    let similar = match crate::spectral::is_similar(x, a, &spec.eigenvalues()) {
        Ok(s) => s,
        Err(Error::Inconclusive(_)) => false,
        Err(e) => return Err(e),
    };
    Ok(if similar {
        PropertyVerdict::pass(Property::InvertibleSimilarity)
    } else {
        PropertyVerdict::fail(Property::InvertibleSimilarity, Witness::Matrix(x.clone()))
    })
}

/// For a single Jordan block J_n(λ): if λ ≠ 0, a solution is 0 or similar to
/// a; if λ = 0, no solution is invertible.
pub fn check_single_block_structure(a: &Matrix, x: &Matrix) -> Result<PropertyVerdict> {
    same_shape(a, x, "candidate")?;
    let spec = jordan_of(a)?;
    if spec.blocks().len() != 1 {
        return Err(Error::Precondition(
            "coefficient is not a single Jordan block".into(),
        ));
    }
    require_solution(a, x, "candidate")?;
    let lam = &spec.blocks()[0].eigenvalue;
    let ok = if a.field().is_zero(lam) {
        !x.is_invertible()
    } else if x.is_zero() {
        true
    } else {
        x.is_invertible()
            && crate::spectral::is_similar(x, a, &[lam.clone(), a.field().zero()]).unwrap_or(false)
    };
    Ok(if ok {
        PropertyVerdict::pass(Property::SingleBlockStructure)
    } else {
        PropertyVerdict::fail(Property::SingleBlockStructure, Witness::Matrix(x.clone()))
    })
}

/// Invertible Jordan-form a, λ of geometric multiplicity 1: if ker(x) is
/// exactly the eigenspace E_λ, then λ is not an eigenvalue of x.
pub fn check_kernel_eigenspace_exclusion(a: &Matrix, x: &Matrix) -> Result<PropertyVerdict> {
    same_shape(a, x, "candidate")?;
    let spec = jordan_of(a)?;
    require_invertible(a)?;
    require_solution(a, x, "candidate")?;
    let f = a.field();
    let kernel = x.kernel_basis();
    let chi = char_poly(x)?;
    for (off, _, lam) in simple_blocks(&spec) {
        let eigenspace = vec![unit_vector(a, off)];
        if kernel == eigenspace && f.is_zero(&chi.eval(&lam)) {
            return Ok(PropertyVerdict::fail(
                Property::KernelEigenspaceExclusion,
                Witness::Eigenpair {
                    eigenvalue: lam,
                    vector: eigenspace.into_iter().next().expect("one vector"),
                },
            ));
        }
    }
    Ok(PropertyVerdict::pass(Property::KernelEigenspaceExclusion))
}

/// Invertible Jordan-form a, λ of geometric multiplicity 1 and not an
/// eigenvalue of x: x kills the whole generalized eigenspace P_λ.
pub fn check_generalized_eigenspace_annihilation(
    a: &Matrix,
    x: &Matrix,
) -> Result<PropertyVerdict> {
    same_shape(a, x, "candidate")?;
    let spec = jordan_of(a)?;
    require_invertible(a)?;
    require_solution(a, x, "candidate")?;
    let f = a.field();
    let chi = char_poly(x)?;
    for (off, size, lam) in simple_blocks(&spec) {
        if f.is_zero(&chi.eval(&lam)) {
            continue;
        }
        for i in off..off + size {
            let v = unit_vector(a, i);
            if x.mul_vec(&v).iter().any(|c| !f.is_zero(c)) {
                return Ok(PropertyVerdict::fail(
                    Property::GeneralizedEigenspaceAnnihilation,
                    Witness::Eigenpair {
                        eigenvalue: lam,
                        vector: v,
                    },
                ));
            }
        }
    }
    Ok(PropertyVerdict::pass(
        Property::GeneralizedEigenspaceAnnihilation,
    ))
}

/// Invertible Jordan-form a, λ of geometric multiplicity 1 in a block of size
/// > 1 and not an eigenvalue of x: ker(x) is not E_λ.
pub fn check_kernel_not_eigenspace(a: &Matrix, x: &Matrix) -> Result<PropertyVerdict> {
    same_shape(a, x, "candidate")?;
    let spec = jordan_of(a)?;
    require_invertible(a)?;
    require_solution(a, x, "candidate")?;
    let f = a.field();
    let kernel = x.kernel_basis();
    let chi = char_poly(x)?;
    for (off, size, lam) in simple_blocks(&spec) {
        if size < 2 || f.is_zero(&chi.eval(&lam)) {
            continue;
        }
        if kernel == vec![unit_vector(a, off)] {
            return Ok(PropertyVerdict::fail(
                Property::KernelNotEigenspace,
                Witness::Subspace(kernel),
            ));
        }
    }
    Ok(PropertyVerdict::pass(Property::KernelNotEigenspace))
}
