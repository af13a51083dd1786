//! Closed-form families, Gröbner bases and conjugation checked against the
//! brute-force census.

use ybe::families::{
    block_diagonal, commuting_nilpotent, conjugate_solution, invertible_2x2_members, nilpotent_2x2,
    nilpotent_3x3, nilpotent_general, pencil_extend, two_block_offdiag, BlockSide,
    CommutingVariant,
};
use ybe::groebner::{buchberger, reduce_basis, ybe_ideal, BuchbergerOptions};
use ybe::oracle::{
    enumerate_commuting_solutions, enumerate_solutions, CensusReport, EnumerationOptions, Execution,
};
use ybe::{Field, JordanSpec, Matrix, Scalar};

fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn census(p: u64, spec: &str) -> CensusReport {
    let f = gf(p);
    let a = JordanSpec::parse(&f, spec).unwrap().matrix();
    enumerate_solutions(&a, EnumerationOptions::default()).unwrap()
}

fn residues(f: &Field) -> Vec<Scalar> {
    f.residues().unwrap().collect()
}

fn tuples(f: &Field, len: usize) -> Vec<Vec<Scalar>> {
    let rs = residues(f);
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                rs.iter().map(move |r| {
                    let mut t = t.clone();
                    t.push(r.clone());
                    t
                })
            })
            .collect();
    }
    out
}

fn span(f: &Field, basis: &[Matrix], n: usize) -> Vec<Matrix> {
    tuples(f, basis.len())
        .into_iter()
        .map(|cs| {
            cs.iter()
                .zip(basis)
                .fold(Matrix::zeros(f, n, n), |acc, (c, b)| &acc + &b.scale(c))
        })
        .collect()
}

fn assert_members(report: &CensusReport, members: &[Matrix], what: &str) {
    for m in members {
        assert!(
            report.solutions.contains(m),
            "{what} member {m:?} missing from census"
        );
    }
}

#[test]
fn invertible_2x2_members_lie_in_census() {
    for p in [2, 3, 5] {
        let f = gf(p);
        for lambda in residues(&f).into_iter().filter(|l| !f.is_zero(l)) {
            let spec = format!("{}^2", f.format(&lambda));
            let report = census(p, &spec);
            for a in residues(&f) {
                assert_members(
                    &report,
                    &invertible_2x2_members(&f, &lambda, &a).unwrap(),
                    "2x2 invertible",
                );
            }
        }
    }
}

#[test]
fn nilpotent_2x2_family_is_the_census() {
    for p in [2, 3] {
        let f = gf(p);
        let report = census(p, "0^2");
        let mut members: Vec<Matrix> = tuples(&f, 3)
            .iter()
            .filter_map(|t| nilpotent_2x2(&f, &t[0], &t[1], &t[2]).ok())
            .collect();
        members.sort_by_key(|m| format!("{m:?}"));
        members.dedup();
        assert_eq!(members.len(), report.total());
        assert_members(&report, &members, "2x2 nilpotent");
    }
}

#[test]
fn nilpotent_3x3_family_is_the_census() {
    for p in [2, 3] {
        let f = gf(p);
        let report = census(p, "0^3");
        let members: Vec<Matrix> = tuples(&f, 5)
            .iter()
            .filter_map(|t| nilpotent_3x3(&f, &t[0], &t[1], &t[2], &t[3], &t[4]).ok())
            .collect();
        assert_members(&report, &members, "3x3 nilpotent");
        let mut distinct = members.clone();
        distinct.sort_by_key(|m| format!("{m:?}"));
        distinct.dedup();
        assert_eq!(distinct.len(), report.total(), "GF({p})");
    }
}

#[test]
fn nilpotent_general_members_lie_in_census() {
    let f = gf(2);
    let report = census(2, "0^4");
    let members: Vec<Matrix> = tuples(&f, 5)
        .iter()
        .map(|t| nilpotent_general(&f, 4, &t[0..2], &t[2..4], &t[4]).unwrap())
        .collect();
    assert_members(&report, &members, "general nilpotent");
    assert!(report.total() > members.len());
}

#[test]
fn commuting_members_are_the_commuting_census() {
    for p in [2, 3] {
        let f = gf(p);
        let a = JordanSpec::parse(&f, "0^4").unwrap().matrix();
        let report = enumerate_commuting_solutions(&a, EnumerationOptions::default()).unwrap();
        let mut members = Vec::new();
        for variant in [CommutingVariant::WithShift, CommutingVariant::WithoutShift] {
            for t in tuples(&f, 2) {
                members.push(commuting_nilpotent(&f, 3, variant, &t[0], &t[1]).unwrap());
            }
        }
        members.sort_by_key(|m| format!("{m:?}"));
        members.dedup();
        assert_members(&report, &members, "commuting");
        assert_eq!(members.len(), report.total(), "GF({p})");
    }
}

#[test]
fn zero_and_coefficient_are_in_every_census() {
    for (p, spec) in [
        (2, "0^2"),
        (3, "1^2"),
        (2, "0^3"),
        (3, "1^1,2^2"),
        (2, "1^2,1^2"),
    ] {
        let report = census(p, spec);
        let n = report.coefficient.rows();
        assert!(
            report
                .solutions
                .contains(&Matrix::zeros(&report.field, n, n)),
            "{spec}"
        );
        assert!(report.solutions.contains(&report.coefficient), "{spec}");
    }
}

#[test]
fn block_diagonal_and_two_block_members_lie_in_census() {
    let f = gf(3);
    let report = census(3, "1^1,2^2");
    let one = Matrix::identity(&f, 1);
    let two = f.from_int(2);
    for x1 in [Matrix::zeros(&f, 1, 1), one.clone()] {
        for a in residues(&f) {
            for x2 in invertible_2x2_members(&f, &two, &a).unwrap() {
                let (coef, x) = block_diagonal(&[
                    (one.clone(), x1.clone()),
                    (ybe::jordan::jordan_block(&f, &two, 2), x2),
                ])
                .unwrap();
                assert_eq!(coef, report.coefficient);
                assert_members(&report, &[x], "block diagonal");
            }
        }
    }

    let f = gf(2);
    let report = census(2, "1^2,1^2");
    let id = Matrix::identity(&f, 2);
    for z in tuples(&f, 2) {
        for side in [BlockSide::Upper, BlockSide::Lower] {
            let (coef, x) = two_block_offdiag(&f, &f.one(), 2, &z, &id, side).unwrap();
            assert_eq!(coef, report.coefficient);
            assert_members(&report, &[x], "two-block");
        }
    }
}

#[test]
fn pencil_extensions_lie_in_census() {
    let f = gf(3);
    let report = census(3, "0^3");
    let m = Matrix::unit(&f, 3, 0, 2);
    for x in report.solutions.iter().take(40) {
        for alpha in residues(&f) {
            let y = pencil_extend(&report.coefficient, x, &m, &alpha).unwrap();
            assert!(report.solutions.contains(&y));
        }
    }
}

#[test]
fn census_is_closed_under_centralizer_conjugation() {
    for (p, spec) in [(3, "1^2"), (2, "0^3"), (3, "0^2"), (3, "1^1,2^2")] {
        let report = census(p, spec);
        let f = &report.field;
        let n = report.coefficient.rows();
        let basis = ybe::commutant::centralizer_basis(&report.coefficient).unwrap();
        let group: Vec<Matrix> = span(f, &basis, n)
            .into_iter()
            .filter(Matrix::is_invertible)
            .collect();
        assert!(!group.is_empty());
        for g in &group {
            for x in &report.solutions {
                let y = conjugate_solution(&report.coefficient, x, g).unwrap();
                assert!(
                    report.solutions.contains(&y),
                    "{spec}: conjugate of {x:?} missing"
                );
            }
        }
    }
}

/// Zero set over GF(p) of the reduced rational basis, by exhaustive evaluation.
fn variety_mod_p(spec: &str, p: u64) -> Vec<Matrix> {
    let q = Field::Rationals;
    let a = JordanSpec::parse(&q, spec).unwrap().matrix();
    let n = a.rows();
    let (_, gens) = ybe_ideal(&a).unwrap();
    let basis = reduce_basis(&buchberger(&gens, BuchbergerOptions::default()).unwrap());
    let f = gf(p);
    let mut out = Vec::new();
    let total = p.pow((n * n) as u32);
    for code in 0..total {
        let mut point = Vec::with_capacity(n * n);
        let mut c = code;
        for _ in 0..n * n {
            point.push(c % p);
            c /= p;
        }
        point.reverse();
        if basis.iter().all(|g| g.eval_mod(p, &point).unwrap() == 0) {
            let entries: Vec<Scalar> = point.iter().map(|&v| f.from_int(v as i64)).collect();
            let rows = entries.chunks(n).map(<[Scalar]>::to_vec).collect();
            out.push(Matrix::from_rows(&f, rows).unwrap());
        }
    }
    out
}

#[test]
fn groebner_variety_matches_census() {
    for (spec, p) in [
        ("0^2", 2),
        ("0^2", 3),
        ("0^2", 5),
        ("1^2", 2),
        ("1^2", 3),
        ("0^3", 2),
        ("0^3", 3),
    ] {
        let mut v = variety_mod_p(spec, p);
        let report = census(p, spec);
        v.sort_by_key(|m| format!("{m:?}"));
        let mut s = report.solutions.clone();
        s.sort_by_key(|m| format!("{m:?}"));
        assert_eq!(v, s, "{spec} over GF({p})");
    }
}

#[test]
fn parallel_and_sequential_censuses_agree() {
    let f = gf(2);
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
    assert_eq!(
        par,
        enumerate_solutions(&a, EnumerationOptions::default()).unwrap()
    );
}
