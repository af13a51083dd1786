use super::CensusReport;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::spectral::char_poly;
use crate::ybe::{self, PropertyVerdict};

/// A property checked against one enumerated solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusVerdict {
    /// Index into `CensusReport::solutions`.
    pub solution: usize,
    pub verdict: PropertyVerdict,
}

type Check = Box<dyn Fn(&Matrix, &Matrix) -> Result<PropertyVerdict>>;

fn applicable_checks(report: &CensusReport) -> Vec<Check> {
    let a = &report.coefficient;
    let n = a.rows();
    let mut checks: Vec<Check> = vec![
        Box::new(move |a, x| ybe::check_power_identities(a, x, 2 * n)),
        Box::new(ybe::check_charpoly_annihilation),
        Box::new(ybe::check_commuting_sylvester),
        Box::new(|a, x| {
            // disjoint over the algebraic closure: coprime characteristic polynomials
            let disjoint = char_poly(a)?.gcd(&char_poly(x)?).degree() == Some(0);
            ybe::check_disjoint_spectra_dichotomy(a, x, disjoint)
        }),
    ];
    let invertible = a.is_invertible();
    if invertible {
        checks.push(Box::new(ybe::check_kernel_invariance));
    }
    let Some(spec) = report.jordan.clone() else {
        return checks;
    };
    let eigs = spec.eigenvalues();
    if invertible {
        checks.push(Box::new(move |a, x| {
            ybe::check_spectrum_inclusion(a, x, &eigs)
        }));
    }
    checks.push(Box::new(ybe::check_eigenvalue_transfer));
    if invertible {
        checks.push(Box::new(ybe::check_invertible_similarity));
        checks.push(Box::new(ybe::check_kernel_eigenspace_exclusion));
        checks.push(Box::new(ybe::check_generalized_eigenspace_annihilation));
        checks.push(Box::new(ybe::check_kernel_not_eigenspace));
    }
    if spec.blocks().len() == 1 {
        checks.push(Box::new(ybe::check_single_block_structure));
    }
    if let [b1, b2] = spec.blocks() {
        if invertible {
            let split = (b1.size, b2.size);
            checks.push(Box::new(move |a, x| {
                ybe::check_kernel_classification_two_blocks(a, x, split)
            }));
        }
    }
    checks
}

/// Runs every structural property that applies to the census coefficient
/// against each solution. Checks whose preconditions a particular solution
/// does not meet (for example invertibility of X) are skipped for it.
pub fn verify_theorems_on_census(report: &CensusReport) -> Result<Vec<CensusVerdict>> {
    let checks = applicable_checks(report);
    let a = &report.coefficient;
    let mut out = Vec::new();
    for (i, x) in report.solutions.iter().enumerate() {
        for check in &checks {
            match check(a, x) {
                Ok(verdict) => out.push(CensusVerdict {
                    solution: i,
                    verdict,
                }),
                Err(Error::Precondition(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}
