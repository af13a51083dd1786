//! Exhaustive enumeration of solutions over small prime fields.
//!
//! Candidates are visited in row-major lexicographic order of their entries
//! (residues 0..p). The sweep is split into fixed chunks; with the
//! `parallel` feature the chunks run on rayon and are concatenated in chunk
//! order, so the output is identical to the sequential sweep.

mod classify;
mod theorems;

pub use classify::{classify_against_families, FamilyTag};
pub use theorems::{verify_theorems_on_census, CensusVerdict};

use std::collections::BTreeMap;

use crate::commutant::centralizer_basis;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::jordan::JordanSpec;
use crate::matrix::Matrix;
use crate::ybe::residual;

/// Largest number of candidates a census may visit unless overridden.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

const CHUNK: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    /// rayon when the `parallel` feature is enabled, otherwise sequential.
    #[default]
    Parallel,
    Sequential,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub budget: u128,
    pub execution: Execution,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            budget: DEFAULT_BUDGET,
            execution: Execution::Parallel,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub field: Field,
    pub coefficient: Matrix,
    /// Present when the coefficient is already in Jordan form.
    pub jordan: Option<JordanSpec>,
    /// Only solutions commuting with the coefficient were enumerated.
    pub commuting_only: bool,
    /// In canonical (row-major lexicographic) order.
    pub solutions: Vec<Matrix>,
    pub by_rank: BTreeMap<usize, usize>,
    pub by_kernel: BTreeMap<String, usize>,
    /// Filled in by [`classify_against_families`], parallel to `solutions`.
    pub tags: Option<Vec<FamilyTag>>,
    pub family_tallies: BTreeMap<String, usize>,
}

impl CensusReport {
    pub fn total(&self) -> usize {
        self.solutions.len()
    }

    pub fn unmatched(&self) -> Vec<&Matrix> {
        match &self.tags {
            None => Vec::new(),
            Some(tags) => self
                .solutions
                .iter()
                .zip(tags)
                .filter(|(_, t)| t.is_unmatched())
                .map(|(m, _)| m)
                .collect(),
        }
    }

    pub(crate) fn build(
        coefficient: &Matrix,
        commuting_only: bool,
        solutions: Vec<Matrix>,
    ) -> Self {
        let jordan = JordanSpec::detect(coefficient);
        let mut by_rank = BTreeMap::new();
        let mut by_kernel = BTreeMap::new();
        for x in &solutions {
            *by_rank.entry(x.rank()).or_insert(0) += 1;
            *by_kernel
                .entry(kernel_label(jordan.as_ref(), x))
                .or_insert(0) += 1;
        }
        CensusReport {
            field: coefficient.field().clone(),
            coefficient: coefficient.clone(),
            jordan,
            commuting_only,
            solutions,
            by_rank,
            by_kernel,
            tags: None,
            family_tallies: BTreeMap::new(),
        }
    }
}

/// Describes ker(x): `trivial`, a sum of Jordan-block coordinate spaces such
/// as `P1` or `P1+P2`, or `dim k` when it is not of that shape.
pub fn kernel_label(jordan: Option<&JordanSpec>, x: &Matrix) -> String {
    let kernel = x.kernel_basis();
    if kernel.is_empty() {
        return "trivial".into();
    }
    if let Some(spec) = jordan {
        let f = x.field();
        let n = x.rows();
        let blocks = spec.blocks().len();
        let offsets = spec.offsets();
        for mask in 1u32..(1 << blocks) {
            let mut units = Vec::new();
            for (b, off) in offsets.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    for i in *off..off + spec.blocks()[b].size {
                        units.push(
                            (0..n)
                                .map(|j| if i == j { f.one() } else { f.zero() })
                                .collect::<Vec<_>>(),
                        );
                    }
                }
            }
            if units == kernel {
                let names: Vec<String> = (0..blocks)
                    .filter(|b| mask & (1 << b) != 0)
                    .map(|b| format!("P{}", b + 1))
                    .collect();
                return names.join("+");
            }
        }
    }
    format!("dim {}", kernel.len())
}

fn prime_of(a: &Matrix) -> Result<u64> {
    match a.field() {
        Field::Prime(p) => Ok(*p),
        other => Err(Error::InvalidArgument(format!(
            "enumeration needs a prime field, coefficient is over {other}"
        ))),
    }
}

fn residues(m: &Matrix) -> Vec<u64> {
    m.entries()
        .iter()
        .map(|s| match s {
            Scalar::Residue(r) => *r,
            _ => unreachable!("prime-field matrix"),
        })
        .collect()
}

fn check_budget(p: u64, digits: usize, budget: u128) -> Result<u64> {
    let candidates = (p as u128).checked_pow(digits as u32).unwrap_or(u128::MAX);
    if candidates > budget {
        return Err(Error::BudgetExceeded { candidates, budget });
    }
    Ok(candidates as u64)
}

fn run_chunks<F>(total: u64, execution: Execution, work: F) -> Vec<Vec<u64>>
where
    F: Fn(u64, u64) -> Vec<Vec<u64>> + Sync,
{
    let chunks = total.div_ceil(CHUNK);
    let job = |c: u64| work(c * CHUNK, ((c + 1) * CHUNK).min(total));
    let parts: Vec<Vec<Vec<u64>>> = match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..chunks).into_par_iter().map(job).collect()
        }
        _ => (0..chunks).map(job).collect(),
    };
    parts.into_iter().flatten().collect()
}

/// Digits of `t` in base p, most significant first.
fn decode(mut t: u64, p: u64, out: &mut [u64]) {
    for d in out.iter_mut().rev() {
        *d = t % p;
        t /= p;
    }
}

/// Increments a base-p odometer whose last digit is least significant.
fn advance(digits: &mut [u64], p: u64) {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < p {
            return;
        }
        *d = 0;
    }
}

/// AXA = XAX over GF(p), stopping at the first differing entry.
fn solves(a: &[u64], x: &[u64], ax: &mut [u64], n: usize, p: u64) -> bool {
    for i in 0..n {
        for j in 0..n {
            let mut s = 0;
            for k in 0..n {
                s += a[i * n + k] * x[k * n + j];
            }
            ax[i * n + j] = s % p;
        }
    }
    for i in 0..n {
        for j in 0..n {
            let (mut l, mut r) = (0, 0);
            for k in 0..n {
                l += ax[i * n + k] * a[k * n + j];
                r += x[i * n + k] * ax[k * n + j];
            }
            if l % p != r % p {
                return false;
            }
        }
    }
    true
}

fn to_matrix(field: &Field, n: usize, entries: &[u64]) -> Matrix {
    Matrix::new(
        field,
        n,
        n,
        entries.iter().map(|&r| Scalar::Residue(r)).collect(),
    )
    .expect("n*n entries")
}

/// Every X over GF(p) with AXA = XAX.
pub fn enumerate_solutions(a: &Matrix, options: EnumerationOptions) -> Result<CensusReport> {
    let n = a.require_square("coefficient matrix")?;
    let p = prime_of(a)?;
    let total = check_budget(p, n * n, options.budget)?;
    let av = residues(a);
    let found = run_chunks(total, options.execution, |start, end| {
        let mut x = vec![0u64; n * n];
        let mut ax = vec![0u64; n * n];
        decode(start, p, &mut x);
        let mut out = Vec::new();
        for _ in start..end {
            if solves(&av, &x, &mut ax, n, p) {
                out.push(x.clone());
            }
            advance(&mut x, p);
        }
        out
    });
    let solutions = found.iter().map(|e| to_matrix(a.field(), n, e)).collect();
    Ok(CensusReport::build(a, false, solutions))
}

/// Solutions that commute with A. Candidates range over the GF(p)-span of
/// the centralizer basis, so the budget applies to p^dim(centralizer).
pub fn enumerate_commuting_solutions(
    a: &Matrix,
    options: EnumerationOptions,
) -> Result<CensusReport> {
    let n = a.require_square("coefficient matrix")?;
    let p = prime_of(a)?;
    let basis: Vec<Vec<u64>> = centralizer_basis(a)?.iter().map(residues).collect();
    let d = basis.len();
    let total = check_budget(p, d, options.budget)?;
    let av = residues(a);
    let mut found = run_chunks(total, options.execution, |start, end| {
        let mut c = vec![0u64; d];
        let mut x = vec![0u64; n * n];
        let mut ax = vec![0u64; n * n];
        decode(start, p, &mut c);
        let mut out = Vec::new();
        for _ in start..end {
            for (e, slot) in x.iter_mut().enumerate() {
                *slot = basis.iter().zip(&c).map(|(b, ci)| b[e] * ci).sum::<u64>() % p;
            }
            if solves(&av, &x, &mut ax, n, p) {
                out.push(x.clone());
            }
            advance(&mut c, p);
        }
        out
    });
    found.sort();
    let solutions = found.iter().map(|e| to_matrix(a.field(), n, e)).collect();
    Ok(CensusReport::build(a, true, solutions))
}

/// Re-verifies every listed solution with the exact residual.
pub fn recheck(report: &CensusReport) -> Result<bool> {
    for x in &report.solutions {
        if !residual(&report.coefficient, x)?.is_solution {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn census(p: u64, spec: &str) -> CensusReport {
        let f = Field::prime(p).unwrap();
        let a = JordanSpec::parse(&f, spec).unwrap().matrix();
        enumerate_solutions(&a, EnumerationOptions::default()).unwrap()
    }

    fn commuting(p: u64, spec: &str) -> CensusReport {
        let f = Field::prime(p).unwrap();
        let a = JordanSpec::parse(&f, spec).unwrap().matrix();
        enumerate_commuting_solutions(&a, EnumerationOptions::default()).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(census(2, "0^2").total(), 6);
        assert_eq!(census(3, "0^2").total(), 15);
        assert_eq!(census(2, "1^2").total(), 4);
        assert_eq!(census(3, "1^2").total(), 5);
        assert_eq!(census(2, "0^3").total(), 20);
    }

    #[test]
    fn j2_one_over_gf2_solutions() {
        let r = census(2, "1^2");
        let f = Field::prime(2).unwrap();
        let expect: Vec<Matrix> = [
            [[0, 0], [0, 0]],
            [[0, 1], [1, 0]],
            [[1, 0], [1, 1]],
            [[1, 1], [0, 1]],
        ]
        .iter()
        .map(|m| Matrix::from_ints(&f, m))
        .collect();
        assert_eq!(r.solutions, expect);
        assert!(recheck(&r).unwrap());
    }

    #[test]
    fn commuting_counts() {
        assert_eq!(commuting(2, "0^4").total(), 8);
        assert_eq!(commuting(3, "0^4").total(), 18);
    }

    #[test]
    fn commuting_span_agrees_with_full_filter() {
        for (p, spec) in [(2, "0^4"), (2, "1^2"), (3, "0^3"), (2, "1^1,1^1")] {
            let full = census(p, spec);
            let filtered: Vec<Matrix> = full
                .solutions
                .iter()
                .filter(|x| x.commutes_with(&full.coefficient))
                .cloned()
                .collect();
            assert_eq!(
                commuting(p, spec).solutions,
                filtered,
                "{spec} over GF({p})"
            );
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let f = Field::prime(2).unwrap();
        let a = JordanSpec::parse(&f, "0^4").unwrap().matrix();
        let par = enumerate_solutions(&a, EnumerationOptions::default()).unwrap();
        let seq = enumerate_solutions(
            &a,
            EnumerationOptions {
                execution: Execution::Sequential,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(par, seq);
        assert_eq!(par.total(), 80);
    }

    #[test]
    fn budget_guard() {
        let f = Field::prime(3).unwrap();
        let a = JordanSpec::parse(&f, "0^4").unwrap().matrix();
        match enumerate_solutions(&a, EnumerationOptions::default()) {
            Err(Error::BudgetExceeded { candidates, budget }) => {
                assert_eq!(candidates, 3u128.pow(16));
                assert_eq!(budget, DEFAULT_BUDGET);
            }
            other => panic!("{other:?}"),
        }
        assert!(enumerate_solutions(
            &Matrix::shift(&Field::Rationals, 2),
            EnumerationOptions::default()
        )
        .is_err());
    }

    #[test]
    fn partitions_add_up() {
        let r = census(3, "1^1,2^2");
        assert_eq!(r.by_rank.values().sum::<usize>(), r.total());
        assert_eq!(r.by_kernel.values().sum::<usize>(), r.total());
        assert!(r.solutions.contains(&r.coefficient));
        assert!(r.solutions.contains(&Matrix::zeros(&r.field, 3, 3)));
    }

    #[test]
    fn kernel_labels() {
        let f = Field::prime(3).unwrap();
        let spec = JordanSpec::parse(&f, "1^2,2^2").unwrap();
        let mut x = Matrix::zeros(&f, 4, 4);
        assert_eq!(kernel_label(Some(&spec), &x), "P1+P2");
        x.set_block(2, 2, &Matrix::identity(&f, 2));
        assert_eq!(kernel_label(Some(&spec), &x), "P1");
        assert_eq!(
            kernel_label(Some(&spec), &Matrix::identity(&f, 4)),
            "trivial"
        );
        x.set(0, 0, f.one());
        assert_eq!(kernel_label(Some(&spec), &x), "dim 1");
    }
}
