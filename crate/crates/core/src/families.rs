//! Closed-form solution families. Every constructor checks the residual of
//! what it built before returning; a nonzero residual is reported as
//! [`Error::ConstructionInconsistency`] and never returned as a solution.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::commutant::annihilator_basis;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::jordan::{jordan_block, JordanSpec};
use crate::matrix::Matrix;
use crate::ybe::residual;

fn verified(a: &Matrix, x: Matrix, what: &str) -> Result<Matrix> {
    let r = residual(a, &x)?;
    if r.is_solution {
        Ok(x)
    } else {
        Err(Error::ConstructionInconsistency(format!(
            "{what} has nonzero residual\n{}",
            r.residual
        )))
    }
}

fn side(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::SideCondition(msg.into()))
    }
}

fn contained(f: &Field, values: &[&Scalar]) -> Result<()> {
    values.iter().try_for_each(|v| f.ensure_contains(v))
}

fn sqrt_of(f: &Field, a: &Scalar) -> Result<Scalar> {
    f.sqrt(a)
        .ok_or_else(|| Error::NoSquareRoot(a.to_string(), f.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// [[λ, 1], [0, λ]]
    Toeplitz,
    /// [[λ + λ√a, a], [−λ², λ − λ√a]]
    Plus,
    /// [[λ − λ√a, a], [−λ², λ + λ√a]]
    Minus,
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "toeplitz" => Ok(Branch::Toeplitz),
            "plus" => Ok(Branch::Plus),
            "minus" => Ok(Branch::Minus),
            _ => Err(Error::InvalidArgument(format!(
                "branch must be toeplitz, plus or minus, got {s:?}"
            ))),
        }
    }
}

/// Nontrivial solutions for the 2×2 Jordan block with eigenvalue λ ≠ 0.
/// The Toeplitz branch ignores `a`.
pub fn invertible_2x2(
    field: &Field,
    lambda: &Scalar,
    branch: Branch,
    a: &Scalar,
) -> Result<Matrix> {
    contained(field, &[lambda, a])?;
    side(!field.is_zero(lambda), "lambda != 0 violated")?;
    let f = field;
    let coef = jordan_block(f, lambda, 2);
    let x = match branch {
        Branch::Toeplitz => coef.clone(),
        Branch::Plus | Branch::Minus => {
            let mut r = sqrt_of(f, a)?;
            if branch == Branch::Minus {
                r = f.neg(&r);
            }
            let lr = f.mul(lambda, &r);
            Matrix::from_rows(
                f,
                vec![
                    vec![f.add(lambda, &lr), a.clone()],
                    vec![f.neg(&f.mul(lambda, lambda)), f.sub(lambda, &lr)],
                ],
            )?
        }
    };
    verified(&coef, x, "2x2 invertible-block member")
}

/// All distinct members for one (λ, a): the Toeplitz member, then the plus
/// and minus branches when √a exists. In characteristic 2 the two square
/// root branches coincide and appear once.
pub fn invertible_2x2_members(field: &Field, lambda: &Scalar, a: &Scalar) -> Result<Vec<Matrix>> {
    let mut out = vec![invertible_2x2(field, lambda, Branch::Toeplitz, a)?];
    if field.sqrt(a).is_some() {
        for b in [Branch::Plus, Branch::Minus] {
            let m = invertible_2x2(field, lambda, b, a)?;
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// [[a, α], [0, b]] with ab = 0, a solution for J₂(0).
pub fn nilpotent_2x2(field: &Field, a: &Scalar, b: &Scalar, alpha: &Scalar) -> Result<Matrix> {
    contained(field, &[a, b, alpha])?;
    side(field.is_zero(&field.mul(a, b)), "ab=0 violated")?;
    let x = Matrix::from_rows(
        field,
        vec![
            vec![a.clone(), alpha.clone()],
            vec![field.zero(), b.clone()],
        ],
    )?;
    verified(&Matrix::shift(field, 2), x, "2x2 nilpotent-block member")
}

/// [[a, b, c], [0, 0, f], [0, 0, i]] with af + bi = 0, a solution for J₃(0).
pub fn nilpotent_3x3(
    field: &Field,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    f_: &Scalar,
    i: &Scalar,
) -> Result<Matrix> {
    let f = field;
    contained(f, &[a, b, c, f_, i])?;
    side(
        f.is_zero(&f.add(&f.mul(a, f_), &f.mul(b, i))),
        "af+bi=0 violated",
    )?;
    let z = f.zero();
    let x = Matrix::from_rows(
        f,
        vec![
            vec![a.clone(), b.clone(), c.clone()],
            vec![z.clone(), z.clone(), f_.clone()],
            vec![z.clone(), z, i.clone()],
        ],
    )?;
    verified(&Matrix::shift(f, 3), x, "3x3 nilpotent-block member")
}

/// Solution for J_n(0), n ≥ 4: first row (0, a₁, …, a_{n−2}, α), last
/// column (α, b₁, …, b_{n−2}, 0), and entry (1, n−2) (zero-based) equal to
/// Σ_{i=1}^{n−3} a_i·b_{i+1}. Sound but not exhaustive for n ≥ 4.
pub fn nilpotent_general(
    field: &Field,
    n: usize,
    a: &[Scalar],
    b: &[Scalar],
    alpha: &Scalar,
) -> Result<Matrix> {
    let f = field;
    if n < 4 {
        return Err(Error::InvalidArgument(format!(
            "block size must be at least 4, got {n}"
        )));
    }
    if a.len() != n - 2 || b.len() != n - 2 {
        return Err(Error::InvalidArgument(format!(
            "need {} values for each of a and b, got {} and {}",
            n - 2,
            a.len(),
            b.len()
        )));
    }
    contained(f, &a.iter().chain(b).chain([alpha]).collect::<Vec<_>>())?;
    let mut x = Matrix::zeros(f, n, n);
    for (k, ak) in a.iter().enumerate() {
        x.set(0, k + 1, ak.clone());
    }
    x.set(0, n - 1, alpha.clone());
    for (k, bk) in b.iter().enumerate() {
        x.set(k + 1, n - 1, bk.clone());
    }
    let sum = (0..n - 3).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&a[k], &b[k + 1])));
    x.set(1, n - 2, sum);
    verified(&Matrix::shift(f, n), x, "general nilpotent-block member")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CommutingVariant {
    WithShift,
    WithoutShift,
}

impl FromStr for CommutingVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "with_B" | "with-shift" => Ok(CommutingVariant::WithShift),
            "without_B" | "without-shift" => Ok(CommutingVariant::WithoutShift),
            _ => Err(Error::InvalidArgument(format!(
                "variant must be with_B or without_B, got {s:?}"
            ))),
        }
    }
}

/// Commuting solution for J_{n+1}(0): B + αB^{n−1} + βBⁿ or αB^{n−1} + βBⁿ.
pub fn commuting_nilpotent(
    field: &Field,
    n: usize,
    variant: CommutingVariant,
    alpha: &Scalar,
    beta: &Scalar,
) -> Result<Matrix> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "n must be at least 3, got {n}"
        )));
    }
    contained(field, &[alpha, beta])?;
    let b = Matrix::shift(field, n + 1);
    let mut x = &b.pow(n - 1).scale(alpha) + &b.pow(n).scale(beta);
    if variant == CommutingVariant::WithShift {
        x = &x + &b;
    }
    if !x.commutes_with(&b) {
        return Err(Error::ConstructionInconsistency(
            "commuting member does not commute".into(),
        ));
    }
    verified(&b, x, "commuting nilpotent member")
}

/// diag(A₁, …) and diag(X₁, …) from solutions Xᵢ of Aᵢ.
pub fn block_diagonal(parts: &[(Matrix, Matrix)]) -> Result<(Matrix, Matrix)> {
    if parts.is_empty() {
        return Err(Error::InvalidArgument("need at least one block".into()));
    }
    for (k, (a, x)) in parts.iter().enumerate() {
        if !residual(a, x)?.is_solution {
            return Err(Error::Precondition(format!(
                "block {} is not a solution",
                k + 1
            )));
        }
    }
    let a = Matrix::block_diagonal(&parts.iter().map(|p| p.0.clone()).collect::<Vec<_>>())?;
    let x = Matrix::block_diagonal(&parts.iter().map(|p| p.1.clone()).collect::<Vec<_>>())?;
    let x = verified(&a, x, "block-diagonal assembly")?;
    Ok((a, x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockSide {
    /// [[0, Y₁], [0, Y₂]]: kernel is the first block's coordinates.
    Upper,
    /// [[Y₂, 0], [Y₁, 0]]: kernel is the second block's coordinates.
    Lower,
}

impl FromStr for BlockSide {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper" => Ok(BlockSide::Upper),
            "lower" => Ok(BlockSide::Lower),
            _ => Err(Error::InvalidArgument(format!(
                "side must be upper or lower, got {s:?}"
            ))),
        }
    }
}

/// Off-diagonal block formula for the two-equal-blocks construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OffDiagonalForm {
    /// Z·S⁻¹·A⁻¹, which solves A·Y₁·A = Y₁·A·Y₂.
    InverseA,
    /// Z·S⁻¹·A, kept for comparison; fails the block equation in general.
    PlainA,
}

/// Assembles diag(A, A) with A = J_k(λ) and the two-block candidate, without
/// checking the residual. Y₂ = S·A·S⁻¹ and Z = Σ zᵢAⁱ.
pub fn two_block_offdiag_candidate(
    field: &Field,
    lambda: &Scalar,
    k: usize,
    z_coeffs: &[Scalar],
    s: &Matrix,
    side: BlockSide,
    form: OffDiagonalForm,
) -> Result<(Matrix, Matrix)> {
    contained(field, &z_coeffs.iter().chain([lambda]).collect::<Vec<_>>())?;
    if field.is_zero(lambda) {
        return Err(Error::SideCondition("lambda != 0 violated".into()));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("block size must be positive".into()));
    }
    if s.rows() != k || s.cols() != k || s.field() != field {
        return Err(Error::dims(format!(
            "S must be a {k}x{k} matrix over {field}"
        )));
    }
    let a = jordan_block(field, lambda, k);
    let s_inv = s
        .inverse()?
        .ok_or_else(|| Error::SideCondition("S must be invertible".into()))?;
    let a_inv = a.inverse()?.expect("lambda != 0");
    let y2 = &(s * &a) * &s_inv;
    let mut z = Matrix::zeros(field, k, k);
    let mut power = Matrix::identity(field, k);
    for c in z_coeffs {
        z = &z + &power.scale(c);
        power = &power * &a;
    }
    let y1 = match form {
        OffDiagonalForm::InverseA => &(&z * &s_inv) * &a_inv,
        OffDiagonalForm::PlainA => &(&z * &s_inv) * &a,
    };
    let zero = Matrix::zeros(field, k, k);
    let coef = Matrix::block_diagonal(&[a.clone(), a])?;
    let x = match side {
        BlockSide::Upper => Matrix::from_blocks(&zero, &y1, &zero, &y2)?,
        BlockSide::Lower => Matrix::from_blocks(&y2, &zero, &y1, &zero)?,
    };
    Ok((coef, x))
}

/// Two equal Jordan blocks: X = [[0, Z·S⁻¹·A⁻¹], [0, S·A·S⁻¹]] (upper) or
/// its mirror [[S·A·S⁻¹, 0], [Z·S⁻¹·A⁻¹, 0]] (lower). S must make S·A·S⁻¹
/// a solution for A.
pub fn two_block_offdiag(
    field: &Field,
    lambda: &Scalar,
    k: usize,
    z_coeffs: &[Scalar],
    s: &Matrix,
    side: BlockSide,
) -> Result<(Matrix, Matrix)> {
    let a = jordan_block(field, lambda, k);
    let (coef, x) = two_block_offdiag_candidate(
        field,
        lambda,
        k,
        z_coeffs,
        s,
        side,
        OffDiagonalForm::InverseA,
    )?;
    let s_inv = s.inverse()?.expect("checked by candidate");
    let y2 = &(s * &a) * &s_inv;
    if !residual(&a, &y2)?.is_solution {
        return Err(Error::SideCondition(
            "S*A*S^-1 is not a solution for A".into(),
        ));
    }
    let x = verified(&coef, x, "two-block off-diagonal member")?;
    Ok((coef, x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExampleCase {
    I,
    Ii,
    Iii,
    Iv,
    V,
}

impl FromStr for ExampleCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i" => Ok(ExampleCase::I),
            "ii" => Ok(ExampleCase::Ii),
            "iii" => Ok(ExampleCase::Iii),
            "iv" => Ok(ExampleCase::Iv),
            "v" => Ok(ExampleCase::V),
            _ => Err(Error::InvalidArgument(format!(
                "case must be one of i..v, got {s:?}"
            ))),
        }
    }
}

/// Free parameters of the lower-left block [[b, c], [d, e]]; each case reads
/// the ones it leaves free and ignores the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleParams {
    pub b: Scalar,
    pub c: Scalar,
    pub e: Scalar,
}

/// diag(A, A), A = J₂(λ), with X = [[X₁, 0], [X₂, 0]], X₁ the plus branch of
/// the 2×2 invertible family at parameter `a`, and X₂ by case:
///
/// * i: a = 0; X₂ = [[b, (e−b)/λ], [−eλ, e]]
/// * ii: λ = 1, a ∉ {0, 1}; X₂ = [[c/(r−1) + e/(r−1)², c], [e/(r−1), e]]
/// * iii: λ ∉ {0, 1}, a ∉ {0, 1}; X₂ = [[e/(r−1)², 0], [eλ/(r−1), e]]
/// * iv: a = 1, λ ≠ 1; X₂ = [[b, 0], [0, 0]]
/// * v: a = 1, λ = 1; X₂ = [[b, c], [−c, 0]]
///
/// where r = √a. In case iii the lower-left entry carries the factor λ;
/// without it the block equations fail for λ ≠ 1.
pub fn two_block_example(
    field: &Field,
    case: ExampleCase,
    lambda: &Scalar,
    a: &Scalar,
    params: &ExampleParams,
) -> Result<(Matrix, Matrix)> {
    let f = field;
    let ExampleParams { b, c, e } = params;
    contained(f, &[lambda, a, b, c, e])?;
    side(!f.is_zero(lambda), "lambda != 0 violated")?;
    let one = f.one();
    let is_one = |x: &Scalar| f.is_one(x);
    let x2_rows = match case {
        ExampleCase::I => {
            side(f.is_zero(a), "case i requires a = 0")?;
            let top = f.div(&f.sub(e, b), lambda).expect("lambda != 0");
            vec![
                vec![b.clone(), top],
                vec![f.neg(&f.mul(e, lambda)), e.clone()],
            ]
        }
        ExampleCase::Ii | ExampleCase::Iii => {
            if case == ExampleCase::Ii {
                side(is_one(lambda), "case ii requires lambda = 1")?;
            } else {
                side(!is_one(lambda), "case iii requires lambda != 1")?;
            }
            side(!f.is_zero(a) && !is_one(a), "a not in {0, 1} violated")?;
            let r = sqrt_of(f, a)?;
            let d = f.sub(&r, &one);
            let inv = f
                .inv(&d)
                .ok_or_else(|| Error::SideCondition("sqrt(a) - 1 must be nonzero".into()))?;
            let inv2 = f.mul(&inv, &inv);
            let e_term = f.mul(e, &inv2);
            if case == ExampleCase::Ii {
                let top = f.add(&f.mul(c, &inv), &e_term);
                vec![vec![top, c.clone()], vec![f.mul(e, &inv), e.clone()]]
            } else {
                let low = f.mul(&f.mul(e, lambda), &inv);
                vec![vec![e_term, f.zero()], vec![low, e.clone()]]
            }
        }
        ExampleCase::Iv => {
            side(is_one(a), "case iv requires a = 1")?;
            side(!is_one(lambda), "case iv requires lambda != 1")?;
            vec![vec![b.clone(), f.zero()], vec![f.zero(), f.zero()]]
        }
        ExampleCase::V => {
            side(is_one(a), "case v requires a = 1")?;
            side(is_one(lambda), "case v requires lambda = 1")?;
            vec![vec![b.clone(), c.clone()], vec![f.neg(c), f.zero()]]
        }
    };
    let x1 = invertible_2x2(f, lambda, Branch::Plus, a)?;
    let x2 = Matrix::from_rows(f, x2_rows)?;
    let blk = jordan_block(f, lambda, 2);
    let coef = Matrix::block_diagonal(&[blk.clone(), blk])?;
    let zero = Matrix::zeros(f, 2, 2);
    let x = Matrix::from_blocks(&x1, &zero, &x2, &zero)?;
    let x = verified(&coef, x, "two-block worked example")?;
    Ok((coef, x))
}

/// x + α·m for a solution x and m in the two-sided annihilator of a.
pub fn pencil_extend(a: &Matrix, x: &Matrix, m: &Matrix, alpha: &Scalar) -> Result<Matrix> {
    if !residual(a, x)?.is_solution {
        return Err(Error::Precondition("X is not a solution".into()));
    }
    residual(a, m)?;
    a.field().ensure_contains(alpha)?;
    side(
        (a * m).is_zero() && (m * a).is_zero(),
        "AM = 0 = MA violated",
    )?;
    verified(a, x + &m.scale(alpha), "pencil extension")
}

/// g·x·g⁻¹ for g invertible and commuting with a.
pub fn conjugate_solution(a: &Matrix, x: &Matrix, g: &Matrix) -> Result<Matrix> {
    if !residual(a, x)?.is_solution {
        return Err(Error::Precondition("X is not a solution".into()));
    }
    residual(a, g)?;
    let gi = g
        .inverse()?
        .ok_or_else(|| Error::SideCondition("g must be invertible".into()))?;
    side(g.commutes_with(a), "g must commute with A")?;
    verified(a, &(g * x) * &gi, "conjugated solution")
}

/// Parameter kinds accepted by the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    Scalar,
    ScalarList,
    Count,
    Choice(&'static [&'static str]),
    /// Rows separated by `;`, entries by `,`.
    Matrix,
    Jordan,
}

impl fmt::Display for ParamKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamKind::Scalar => f.write_str("scalar"),
            ParamKind::ScalarList => f.write_str("scalar list"),
            ParamKind::Count => f.write_str("count"),
            ParamKind::Choice(opts) => write!(f, "one of {}", opts.join("|")),
            ParamKind::Matrix => f.write_str("matrix"),
            ParamKind::Jordan => f.write_str("jordan spec"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    /// Value used when the parameter is omitted; `None` means required.
    pub default: Option<&'static str>,
    pub note: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDescriptor {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    /// What the family solves and the statement it comes from.
    pub anchor: &'static str,
    /// Coefficient matrix, in Jordan shorthand with parameters.
    pub coefficient: &'static str,
    pub params: Vec<ParamSpec>,
    pub side_conditions: &'static [&'static str],
}

const fn p(
    name: &'static str,
    kind: ParamKind,
    default: Option<&'static str>,
    note: &'static str,
) -> ParamSpec {
    ParamSpec {
        name,
        kind,
        default,
        note,
    }
}

pub fn catalog() -> Vec<FamilyDescriptor> {
    use ParamKind::*;
    vec![
        FamilyDescriptor {
            name: "invertible-2x2",
            aliases: &["ex1"],
            anchor: "nontrivial solutions for a 2x2 Jordan block with nonzero eigenvalue",
            coefficient: "lambda^2",
            params: vec![
                p("lambda", Scalar, None, "eigenvalue, nonzero"),
                p(
                    "branch",
                    Choice(&["toeplitz", "plus", "minus"]),
                    Some("plus"),
                    "",
                ),
                p(
                    "a",
                    Scalar,
                    Some("0"),
                    "must have a square root in the field (plus/minus)",
                ),
            ],
            side_conditions: &["lambda != 0", "sqrt(a) exists"],
        },
        FamilyDescriptor {
            name: "nilpotent-2x2",
            aliases: &["ex2"],
            anchor: "all solutions for the 2x2 nilpotent Jordan block",
            coefficient: "0^2",
            params: vec![
                p("a", Scalar, None, "top-left"),
                p("b", Scalar, None, "bottom-right"),
                p("alpha", Scalar, Some("0"), "top-right, free"),
            ],
            side_conditions: &["ab=0"],
        },
        FamilyDescriptor {
            name: "nilpotent-3x3",
            aliases: &["ex3"],
            anchor: "all solutions for the 3x3 nilpotent Jordan block",
            coefficient: "0^3",
            params: vec![
                p("a", Scalar, Some("0"), ""),
                p("b", Scalar, Some("0"), ""),
                p("c", Scalar, Some("0"), "free"),
                p("f", Scalar, Some("0"), ""),
                p("i", Scalar, Some("0"), ""),
            ],
            side_conditions: &["af+bi=0"],
        },
        FamilyDescriptor {
            name: "nilpotent-general",
            aliases: &["nilpotent"],
            anchor: "solutions for an n x n nilpotent Jordan block, n >= 4 (not exhaustive)",
            coefficient: "0^n",
            params: vec![
                p("n", Count, None, "block size, at least 4"),
                p("a", ScalarList, None, "n-2 values for the first row"),
                p("b", ScalarList, None, "n-2 values for the last column"),
                p("alpha", Scalar, Some("0"), "top-right corner"),
            ],
            side_conditions: &[],
        },
        FamilyDescriptor {
            name: "commuting-nilpotent",
            aliases: &["commuting"],
            anchor: "all commuting solutions for the nilpotent Jordan block of size n+1, n >= 3",
            coefficient: "0^(n+1)",
            params: vec![
                p("n", Count, None, "at least 3; the block has size n+1"),
                p(
                    "variant",
                    Choice(&["with_B", "without_B"]),
                    Some("with_B"),
                    "",
                ),
                p("alpha", Scalar, Some("0"), "coefficient of B^(n-1)"),
                p("beta", Scalar, Some("0"), "coefficient of B^n"),
            ],
            side_conditions: &[],
        },
        FamilyDescriptor {
            name: "two-block",
            aliases: &["two-block-offdiag"],
            anchor: "singular solutions for two equal invertible Jordan blocks diag(A, A)",
            coefficient: "lambda^k,lambda^k",
            params: vec![
                p("lambda", Scalar, None, "nonzero"),
                p("k", Count, Some("2"), "block size"),
                p("z", ScalarList, Some("1"), "Z = z0 + z1*A + ..."),
                p(
                    "s",
                    Matrix,
                    Some("identity"),
                    "invertible, S*A*S^-1 must solve the block equation",
                ),
                p("side", Choice(&["upper", "lower"]), Some("upper"), ""),
            ],
            side_conditions: &["lambda != 0", "S invertible", "S*A*S^-1 is a solution"],
        },
        FamilyDescriptor {
            name: "two-block-example",
            aliases: &[],
            anchor: "explicit lower-left blocks for diag(J2(lambda), J2(lambda)), cases i-v",
            coefficient: "lambda^2,lambda^2",
            params: vec![
                p("case", Choice(&["i", "ii", "iii", "iv", "v"]), None, ""),
                p("lambda", Scalar, None, "nonzero"),
                p("a", Scalar, None, "parameter of the top-left block"),
                p("b", Scalar, Some("0"), "used by cases i, iv, v"),
                p("c", Scalar, Some("0"), "used by cases ii, v"),
                p("e", Scalar, Some("0"), "used by cases i, ii, iii"),
            ],
            side_conditions: &[
                "i: a = 0",
                "ii: lambda = 1, a not in {0, 1}",
                "iii: lambda != 1, a not in {0, 1}",
                "iv: a = 1, lambda != 1",
                "v: a = 1, lambda = 1",
            ],
        },
        FamilyDescriptor {
            name: "pencil",
            aliases: &[],
            anchor: "X + alpha*M for a solution X and M with AM = 0 = MA",
            coefficient: "jordan",
            params: vec![
                p("jordan", Jordan, None, "coefficient matrix"),
                p(
                    "m",
                    Matrix,
                    Some("basis"),
                    "annihilator element; default is the sum of the annihilator basis",
                ),
                p("x", Matrix, Some("zero"), "base solution"),
                p("alpha", Scalar, Some("1"), ""),
            ],
            side_conditions: &["X is a solution", "AM = 0 = MA"],
        },
    ]
}

/// Looks up a family by name or alias.
pub fn find_family(name: &str) -> Option<FamilyDescriptor> {
    catalog()
        .into_iter()
        .find(|d| d.name == name || d.aliases.contains(&name))
}

/// Parses a matrix literal such as `1,0;0,1`.
pub fn parse_matrix_literal(field: &Field, text: &str) -> Result<Matrix> {
    let rows: Vec<Vec<Scalar>> = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|s| field.parse_scalar(s).map_err(Error::InvalidArgument))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Matrix::from_rows(field, rows)
}

fn canonical_param(name: &str) -> &str {
    match name {
        "λ" => "lambda",
        "α" => "alpha",
        "β" => "beta",
        other => other,
    }
}

/// Coefficient and solution built from textual parameters.
pub fn construct(
    field: &Field,
    family: &str,
    raw: &BTreeMap<String, String>,
) -> Result<(Matrix, Matrix)> {
    let desc = find_family(family)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown family {family:?}")))?;
    let mut values: BTreeMap<&str, String> = BTreeMap::new();
    for (k, v) in raw {
        let k = canonical_param(k);
        let spec = desc.params.iter().find(|s| s.name == k).ok_or_else(|| {
            Error::InvalidArgument(format!("family {} has no parameter {k:?}", desc.name))
        })?;
        values.insert(spec.name, v.clone());
    }
    for spec in &desc.params {
        if !values.contains_key(spec.name) {
            match spec.default {
                Some(d) => {
                    values.insert(spec.name, d.to_string());
                }
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "missing parameter {}",
                        spec.name
                    )))
                }
            }
        }
    }
    let text = |n: &str| values[n].clone();
    let scalar = |n: &str| {
        field
            .parse_scalar(&values[n])
            .map_err(|m| Error::InvalidArgument(format!("parameter {n}: {m}")))
    };
    let list = |n: &str| -> Result<Vec<Scalar>> {
        values[n]
            .split(',')
            .map(|s| {
                field
                    .parse_scalar(s)
                    .map_err(|m| Error::InvalidArgument(format!("parameter {n}: {m}")))
            })
            .collect()
    };
    let count = |n: &str| -> Result<usize> {
        values[n].trim().parse().map_err(|_| {
            Error::InvalidArgument(format!("parameter {n} must be a nonnegative integer"))
        })
    };
    match desc.name {
        "invertible-2x2" => {
            let lam = scalar("lambda")?;
            let x = invertible_2x2(field, &lam, text("branch").parse()?, &scalar("a")?)?;
            Ok((jordan_block(field, &lam, 2), x))
        }
        "nilpotent-2x2" => Ok((
            Matrix::shift(field, 2),
            nilpotent_2x2(field, &scalar("a")?, &scalar("b")?, &scalar("alpha")?)?,
        )),
        "nilpotent-3x3" => Ok((
            Matrix::shift(field, 3),
            nilpotent_3x3(
                field,
                &scalar("a")?,
                &scalar("b")?,
                &scalar("c")?,
                &scalar("f")?,
                &scalar("i")?,
            )?,
        )),
        "nilpotent-general" => {
            let n = count("n")?;
            Ok((
                Matrix::shift(field, n),
                nilpotent_general(field, n, &list("a")?, &list("b")?, &scalar("alpha")?)?,
            ))
        }
        "commuting-nilpotent" => {
            let n = count("n")?;
            let x = commuting_nilpotent(
                field,
                n,
                text("variant").parse()?,
                &scalar("alpha")?,
                &scalar("beta")?,
            )?;
            Ok((Matrix::shift(field, n + 1), x))
        }
        "two-block" => {
            let k = count("k")?;
            let s = match text("s").as_str() {
                "identity" => Matrix::identity(field, k),
                lit => parse_matrix_literal(field, lit)?,
            };
            two_block_offdiag(
                field,
                &scalar("lambda")?,
                k,
                &list("z")?,
                &s,
                text("side").parse()?,
            )
        }
        "two-block-example" => two_block_example(
            field,
            text("case").parse()?,
            &scalar("lambda")?,
            &scalar("a")?,
            &ExampleParams {
                b: scalar("b")?,
                c: scalar("c")?,
                e: scalar("e")?,
            },
        ),
        "pencil" => {
            let a = JordanSpec::parse(field, &text("jordan"))?.matrix();
            let n = a.rows();
            let x = match text("x").as_str() {
                "zero" => Matrix::zeros(field, n, n),
                lit => parse_matrix_literal(field, lit)?,
            };
            let m = match text("m").as_str() {
                "basis" => annihilator_basis(&a)?
                    .iter()
                    .fold(Matrix::zeros(field, n, n), |acc, b| &acc + b),
                lit => parse_matrix_literal(field, lit)?,
            };
            let x = pencil_extend(&a, &x, &m, &scalar("alpha")?)?;
            Ok((a, x))
        }
        other => unreachable!("catalog entry {other} without constructor"),
    }
}
