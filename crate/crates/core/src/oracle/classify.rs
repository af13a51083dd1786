use std::fmt;
use std::str::FromStr;

use super::CensusReport;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::jordan::{jordan_block, JordanSpec};
use crate::matrix::Matrix;
use crate::sylvester::offdiag_solution_space;
use crate::ybe::residual;

/// Which closed-form family reproduces an enumerated solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyTag {
    /// The zero solution where no family lists it.
    Zero,
    Member {
        family: String,
        params: String,
    },
    Unmatched,
}

impl FamilyTag {
    fn member(family: &str, params: String) -> Self {
        FamilyTag::Member {
            family: family.to_string(),
            params,
        }
    }

    pub fn is_unmatched(&self) -> bool {
        matches!(self, FamilyTag::Unmatched)
    }

    pub fn family(&self) -> &str {
        match self {
            FamilyTag::Zero => "zero",
            FamilyTag::Member { family, .. } => family,
            FamilyTag::Unmatched => "unmatched",
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Member { family, params } if !params.is_empty() => {
                write!(f, "{family}({params})")
            }
            other => f.write_str(other.family()),
        }
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => return Ok(FamilyTag::Zero),
            "unmatched" => return Ok(FamilyTag::Unmatched),
            "" => return Err(Error::InvalidArgument("empty family tag".into())),
            _ => {}
        }
        let (family, params) = match s.split_once('(') {
            Some((name, rest)) => {
                let params = rest.strip_suffix(')').ok_or_else(|| {
                    Error::InvalidArgument(format!("unbalanced family tag {s:?}"))
                })?;
                (name, params.to_string())
            }
            None => (s, String::new()),
        };
        Ok(FamilyTag::member(family, params))
    }
}

fn is_zero_entry(f: &Field, x: &Matrix, i: usize, j: usize) -> bool {
    f.is_zero(x.get(i, j))
}

fn match_invertible_2x2(f: &Field, lam: &Scalar, x: &Matrix) -> FamilyTag {
    if x.is_zero() {
        return FamilyTag::Zero;
    }
    if *x == jordan_block(f, lam, 2) {
        return FamilyTag::member("invertible-2x2", "branch=toeplitz".into());
    }
    let a = x.get(0, 1);
    if *x.get(1, 0) != f.neg(&f.mul(lam, lam)) {
        return FamilyTag::Unmatched;
    }
    // x00 = λ + λr, x11 = λ − λr with r² = a
    let r = f.div(&f.sub(x.get(0, 0), lam), lam).expect("lambda != 0");
    if f.mul(&r, &r) != *a || *x.get(1, 1) != f.sub(lam, &f.mul(lam, &r)) {
        return FamilyTag::Unmatched;
    }
    let branch = if f.sqrt(a).as_ref() == Some(&r) {
        "plus"
    } else {
        "minus"
    };
    FamilyTag::member("invertible-2x2", format!("branch={branch},a={a}"))
}

fn match_nilpotent_2x2(f: &Field, x: &Matrix) -> FamilyTag {
    let (a, alpha, c, b) = (x.get(0, 0), x.get(0, 1), x.get(1, 0), x.get(1, 1));
    if f.is_zero(c) && f.is_zero(&f.mul(a, b)) {
        FamilyTag::member("nilpotent-2x2", format!("a={a},b={b},alpha={alpha}"))
    } else {
        FamilyTag::Unmatched
    }
}

fn match_nilpotent_3x3(f: &Field, x: &Matrix) -> FamilyTag {
    let zero_block = [(1, 0), (1, 1), (2, 0), (2, 1)]
        .iter()
        .all(|&(i, j)| is_zero_entry(f, x, i, j));
    let g = |i, j| x.get(i, j);
    let cond = f.add(&f.mul(g(0, 0), g(1, 2)), &f.mul(g(0, 1), g(2, 2)));
    if zero_block && f.is_zero(&cond) {
        FamilyTag::member(
            "nilpotent-3x3",
            format!(
                "a={},b={},c={},f={},i={}",
                g(0, 0),
                g(0, 1),
                g(0, 2),
                g(1, 2),
                g(2, 2)
            ),
        )
    } else {
        FamilyTag::Unmatched
    }
}

fn match_nilpotent_general(f: &Field, x: &Matrix) -> Option<FamilyTag> {
    let n = x.rows();
    for i in 0..n {
        for j in 0..n {
            let free = (i == 0 && j >= 1) || (j == n - 1 && i < n - 1) || (i == 1 && j == n - 2);
            if !free && !is_zero_entry(f, x, i, j) {
                return None;
            }
        }
    }
    let a: Vec<Scalar> = (1..n - 1).map(|j| x.get(0, j).clone()).collect();
    let b: Vec<Scalar> = (1..n - 1).map(|i| x.get(i, n - 1).clone()).collect();
    // entry (1, n−2) is forced to Σ a_k b_{k+1}
    let sum = (0..n - 3).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&a[k], &b[k + 1])));
    if *x.get(1, n - 2) != sum {
        return None;
    }
    let list = |v: &[Scalar]| {
        v.iter()
            .map(Scalar::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    Some(FamilyTag::member(
        "nilpotent-general",
        format!(
            "a=[{}],b=[{}],alpha={}",
            list(&a),
            list(&b),
            x.get(0, n - 1)
        ),
    ))
}

/// B + αB^{m−2} + βB^{m−1} or αB^{m−2} + βB^{m−1} for block size m ≥ 4.
fn match_commuting(f: &Field, x: &Matrix) -> Option<FamilyTag> {
    let m = x.rows();
    // a polynomial in the shift is upper-triangular Toeplitz: read it off row 0
    let coeffs: Vec<Scalar> = (0..m).map(|j| x.get(0, j).clone()).collect();
    let b = Matrix::shift(f, m);
    let mut rebuilt = Matrix::zeros(f, m, m);
    let mut power = Matrix::identity(f, m);
    for c in &coeffs {
        rebuilt = &rebuilt + &power.scale(c);
        power = &power * &b;
    }
    if rebuilt != *x || !f.is_zero(&coeffs[0]) || (2..m - 2).any(|k| !f.is_zero(&coeffs[k])) {
        return None;
    }
    let variant = if f.is_one(&coeffs[1]) {
        "with_B"
    } else if f.is_zero(&coeffs[1]) {
        "without_B"
    } else {
        return None;
    };
    Some(FamilyTag::member(
        "commuting-nilpotent",
        format!(
            "n={},variant={variant},alpha={},beta={}",
            m - 1,
            coeffs[m - 2],
            coeffs[m - 1]
        ),
    ))
}

fn match_block_diagonal(spec: &JordanSpec, a: &Matrix, x: &Matrix) -> bool {
    let offsets = spec.offsets();
    let n = x.rows();
    let owner = |i: usize| offsets.iter().rposition(|&o| o <= i).expect("offset 0");
    for i in 0..n {
        for j in 0..n {
            if owner(i) != owner(j) && !x.field().is_zero(x.get(i, j)) {
                return false;
            }
        }
    }
    spec.blocks().iter().zip(&offsets).all(|(b, &o)| {
        let ab = a.block(o, o, b.size, b.size);
        let xb = x.block(o, o, b.size, b.size);
        residual(&ab, &xb).map(|r| r.is_solution).unwrap_or(false)
    })
}

/// Two equal invertible blocks: [[0, Y₁], [0, Y₂]] or [[Y₂, 0], [Y₁, 0]]
/// with Y₂ a nonzero solution for the block and Y₁ in the off-diagonal
/// solution space determined by Y₂.
fn match_two_block(spec: &JordanSpec, x: &Matrix) -> Option<FamilyTag> {
    let [b1, b2] = spec.blocks() else { return None };
    if b1 != b2 || spec.field().is_zero(&b1.eigenvalue) {
        return None;
    }
    let f = spec.field();
    let k = b1.size;
    let a = jordan_block(f, &b1.eigenvalue, k);
    for (side, y2, y1, zero1, zero2) in [
        (
            "upper",
            x.block(k, k, k, k),
            x.block(0, k, k, k),
            x.block(0, 0, k, k),
            x.block(k, 0, k, k),
        ),
        (
            "lower",
            x.block(0, 0, k, k),
            x.block(k, 0, k, k),
            x.block(0, k, k, k),
            x.block(k, k, k, k),
        ),
    ] {
        if !zero1.is_zero() || !zero2.is_zero() || y2.is_zero() {
            continue;
        }
        if !residual(&a, &y2).map(|r| r.is_solution).unwrap_or(false) {
            continue;
        }
        let space = offdiag_solution_space(&a, &a, &y2).ok()?;
        if in_span(&y1, &space) {
            return Some(FamilyTag::member("two-block", format!("side={side}")));
        }
    }
    None
}

fn in_span(y: &Matrix, basis: &[Matrix]) -> bool {
    if y.is_zero() {
        return true;
    }
    let f = y.field();
    let mut vecs: Vec<Vec<Scalar>> = basis.iter().map(Matrix::vectorize).collect();
    let len = y.rows() * y.cols();
    let before = crate::matrix::canonical_basis(f, len, &vecs).len();
    vecs.push(y.vectorize());
    crate::matrix::canonical_basis(f, len, &vecs).len() == before
}

fn tag_one(report: &CensusReport, x: &Matrix) -> FamilyTag {
    let f = &report.field;
    let Some(spec) = &report.jordan else {
        return if x.is_zero() {
            FamilyTag::Zero
        } else {
            FamilyTag::Unmatched
        };
    };
    if let [block] = spec.blocks() {
        let lam = &block.eigenvalue;
        let nilpotent = f.is_zero(lam);
        let tag = match (block.size, nilpotent) {
            (2, false) => match_invertible_2x2(f, lam, x),
            (2, true) => match_nilpotent_2x2(f, x),
            (3, true) => match_nilpotent_3x3(f, x),
            (n, true) if n >= 4 => match_nilpotent_general(f, x)
                .or_else(|| match_commuting(f, x))
                .unwrap_or(FamilyTag::Unmatched),
            _ => FamilyTag::Unmatched,
        };
        if tag.is_unmatched() && x.is_zero() {
            return FamilyTag::Zero;
        }
        return tag;
    }
    if x.is_zero() {
        return FamilyTag::Zero;
    }
    if match_block_diagonal(spec, &report.coefficient, x) {
        return FamilyTag::member("block-diagonal", String::new());
    }
    match_two_block(spec, x).unwrap_or(FamilyTag::Unmatched)
}

/// Tags each solution with the family reproducing it, or `Unmatched`.
pub fn classify_against_families(report: &CensusReport) -> CensusReport {
    let tags: Vec<FamilyTag> = report
        .solutions
        .iter()
        .map(|x| tag_one(report, x))
        .collect();
    let mut out = report.clone();
    out.family_tallies.clear();
    for t in &tags {
        *out.family_tallies
            .entry(t.family().to_string())
            .or_insert(0) += 1;
    }
    out.tags = Some(tags);
    out
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_commuting_solutions, enumerate_solutions, EnumerationOptions};
    use super::*;

    fn classified(p: u64, spec: &str) -> CensusReport {
        let f = Field::prime(p).unwrap();
        let a = JordanSpec::parse(&f, spec).unwrap().matrix();
        classify_against_families(&enumerate_solutions(&a, EnumerationOptions::default()).unwrap())
    }

    #[test]
    fn complete_families_leave_nothing_unmatched() {
        for p in [2, 3] {
            for spec in ["1^2", "0^2", "0^3"] {
                let r = classified(p, spec);
                assert!(r.unmatched().is_empty(), "{spec} over GF({p})");
            }
        }
        let r = classified(3, "2^2");
        assert!(r.unmatched().is_empty());
    }

    #[test]
    fn j2_zero_matches_nilpotent_2x2_parameters() {
        let r = classified(3, "0^2");
        assert_eq!(r.family_tallies.get("nilpotent-2x2"), Some(&15));
    }

    #[test]
    fn general_nilpotent_family_is_not_exhaustive() {
        let r = classified(2, "0^4");
        assert_eq!(r.total(), 80);
        assert_eq!(r.unmatched().len(), 48);
    }

    #[test]
    fn commuting_solutions_are_tagged() {
        let f = Field::prime(3).unwrap();
        let a = JordanSpec::parse(&f, "0^4").unwrap().matrix();
        let r = classify_against_families(
            &enumerate_commuting_solutions(&a, EnumerationOptions::default()).unwrap(),
        );
        assert!(r.unmatched().is_empty());
    }

    #[test]
    fn tag_display() {
        let t = FamilyTag::member("nilpotent-2x2", "a=1,b=0,alpha=2".into());
        assert_eq!(t.to_string(), "nilpotent-2x2(a=1,b=0,alpha=2)");
        assert_eq!(FamilyTag::Unmatched.to_string(), "unmatched");
        for tag in [
            t,
            FamilyTag::Zero,
            FamilyTag::Unmatched,
            FamilyTag::member("block-diagonal", String::new()),
        ] {
            assert_eq!(tag.to_string().parse::<FamilyTag>().unwrap(), tag);
        }
    }
}
