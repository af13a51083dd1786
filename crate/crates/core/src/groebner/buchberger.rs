use std::collections::BTreeSet;

use super::{compare_by_degree_then_lex, MultiPoly};
use crate::error::{Error, Result};

pub const DEFAULT_PAIR_CAP: usize = 100_000;

/// Which critical pair to reduce next.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PairSelection {
    /// Smallest lcm of leading monomials (degree first, then lex).
    #[default]
    Normal,
    /// Oldest pair first.
    Fifo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuchbergerOptions {
    /// Maximum number of S-polynomials to reduce.
    pub pair_cap: usize,
    pub selection: PairSelection,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions {
            pair_cap: DEFAULT_PAIR_CAP,
            selection: PairSelection::Normal,
        }
    }
}

/// Full reduction of `p` modulo `basis`: no term of the result is divisible
/// by a leading monomial of a nonzero basis element.
pub fn normal_form(p: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let mut rest = p.clone();
    let mut out = MultiPoly::zero(p.nvars());
    while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis.iter().find_map(|g| {
            let (gm, gc) = g.leading()?;
            gm.divides(&m).then_some((g, gm, gc))
        });
        match divisor {
            Some((g, gm, gc)) => {
                rest = rest.sub(&g.mul_term(&m.div(gm), &(&c / gc)));
            }
            None => {
                let t = MultiPoly::term(m, c);
                rest = rest.sub(&t);
                out = out.add(&t);
            }
        }
    }
    out
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (fm, fc) = f.leading().expect("nonzero S-pair operand");
    let (gm, gc) = g.leading().expect("nonzero S-pair operand");
    let l = fm.lcm(gm);
    f.mul_term(&l.div(fm), &fc.recip())
        .sub(&g.mul_term(&l.div(gm), &gc.recip()))
}

/// Whether every S-polynomial of `basis` reduces to zero modulo `basis`.
pub fn is_groebner_basis(basis: &[MultiPoly]) -> bool {
    let g: Vec<&MultiPoly> = basis.iter().filter(|p| !p.is_zero()).collect();
    let owned: Vec<MultiPoly> = g.iter().map(|p| (*p).clone()).collect();
    (0..g.len())
        .all(|i| (i + 1..g.len()).all(|j| normal_form(&s_polynomial(g[i], g[j]), &owned).is_zero()))
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// decreasing leading monomial. The unit ideal gives `[1]`; the zero ideal
/// gives an empty list.
pub fn buchberger(gens: &[MultiPoly], options: BuchbergerOptions) -> Result<Vec<MultiPoly>> {
    let mut g: Vec<MultiPoly> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(MultiPoly::monic)
        .collect();
    let mut pending: Vec<(usize, usize)> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            pending.push((i, j));
        }
    }
    let mut processed = 0usize;
    while !pending.is_empty() {
        let pick = match options.selection {
            PairSelection::Fifo => 0,
            PairSelection::Normal => {
                let key = |&(i, j): &(usize, usize)| {
                    g[i].leading_monomial()
                        .expect("nonzero")
                        .lcm(g[j].leading_monomial().expect("nonzero"))
                };
                (0..pending.len())
                    .min_by(|&x, &y| {
                        compare_by_degree_then_lex(&key(&pending[x]), &key(&pending[y]))
                            .then_with(|| pending[x].cmp(&pending[y]))
                    })
                    .expect("nonempty")
            }
        };
        let (i, j) = pending.remove(pick);
        let (mi, mj) = (
            g[i].leading_monomial().expect("nonzero"),
            g[j].leading_monomial().expect("nonzero"),
        );
        if mi.coprime(mj) || chain_criterion(&g, &pending, i, j) {
            continue;
        }
        if processed == options.pair_cap {
            return Err(Error::PairCapExceeded {
                cap: options.pair_cap,
                partial: g,
            });
        }
        processed += 1;
        let r = normal_form(&s_polynomial(&g[i], &g[j]), &g);
        if !r.is_zero() {
            let k = g.len();
            g.push(r.monic());
            pending.extend((0..k).map(|i| (i, k)));
        }
    }
    Ok(reduce_basis(&g))
}

/// Skip (i, j) when some other leading monomial divides their lcm and both
/// pairs linking it to i and j have already been handled.
fn chain_criterion(g: &[MultiPoly], pending: &[(usize, usize)], i: usize, j: usize) -> bool {
    let l = g[i]
        .leading_monomial()
        .expect("nonzero")
        .lcm(g[j].leading_monomial().expect("nonzero"));
    let open: BTreeSet<(usize, usize)> = pending.iter().copied().collect();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    (0..g.len()).any(|k| {
        k != i
            && k != j
            && g[k].leading_monomial().expect("nonzero").divides(&l)
            && !open.contains(&key(i, k))
            && !open.contains(&key(j, k))
    })
}

/// Turns any Gröbner basis into the reduced one: minimal leading monomials,
/// monic, every element fully reduced by the others.
pub fn reduce_basis(basis: &[MultiPoly]) -> Vec<MultiPoly> {
    let g: Vec<MultiPoly> = basis
        .iter()
        .filter(|p| !p.is_zero())
        .map(MultiPoly::monic)
        .collect();
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for (idx, p) in g.iter().enumerate() {
        let m = p.leading_monomial().expect("nonzero");
        let redundant = g.iter().enumerate().any(|(other, q)| {
            let qm = q.leading_monomial().expect("nonzero");
            other != idx && qm.divides(m) && (qm != m || other < idx)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out: Vec<MultiPoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<MultiPoly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| q.clone())
                .collect();
            normal_form(&minimal[i], &others).monic()
        })
        .collect();
    out.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
    out
}

#[cfg(test)]
mod tests {
    use super::super::PolyRing;
    use super::*;

    fn ring(names: &[&str]) -> PolyRing {
        PolyRing::new(names.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn basis_text(r: &PolyRing, g: &[MultiPoly]) -> Vec<String> {
        g.iter().map(|p| r.format(p)).collect()
    }

    #[test]
    fn textbook_example() {
        // x² − y, x³ − x  under x > y  gives  x² − y, x*y − x, y² − y
        let r = ring(&["x", "y"]);
        let gens = vec![r.parse("x^2 - y").unwrap(), r.parse("x^3 - x").unwrap()];
        let g = buchberger(&gens, BuchbergerOptions::default()).unwrap();
        assert_eq!(basis_text(&r, &g), ["x^2 - y", "x*y - x", "y^2 - y"]);
        assert!(is_groebner_basis(&g));
    }

    #[test]
    fn unit_and_zero_ideals() {
        let r = ring(&["x", "y"]);
        let gens = vec![r.parse("x").unwrap(), r.parse("x - 1").unwrap()];
        let g = buchberger(&gens, BuchbergerOptions::default()).unwrap();
        assert_eq!(basis_text(&r, &g), ["1"]);
        assert!(
            buchberger(&[MultiPoly::zero(2)], BuchbergerOptions::default())
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn selection_strategies_agree() {
        let r = ring(&["x", "y", "z"]);
        let gens: Vec<MultiPoly> = ["x*y - z", "y*z - x", "x*z - y"]
            .iter()
            .map(|t| r.parse(t).unwrap())
            .collect();
        let normal = buchberger(&gens, BuchbergerOptions::default()).unwrap();
        let fifo = buchberger(
            &gens,
            BuchbergerOptions {
                selection: PairSelection::Fifo,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(normal, fifo);
        for p in &gens {
            assert!(normal_form(p, &normal).is_zero());
        }
    }

    #[test]
    fn pair_cap_reports_partial_basis() {
        let r = ring(&["x", "y", "z"]);
        let gens: Vec<MultiPoly> = ["x*y - z", "y*z - x", "x*z - y"]
            .iter()
            .map(|t| r.parse(t).unwrap())
            .collect();
        let err = buchberger(
            &gens,
            BuchbergerOptions {
                pair_cap: 1,
                ..Default::default()
            },
        )
        .unwrap_err();
        match err {
            Error::PairCapExceeded { cap, partial } => {
                assert_eq!(cap, 1);
                assert!(partial.len() >= 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn normal_form_is_remainder() {
        let r = ring(&["x", "y"]);
        let g = vec![r.parse("x*y - 1").unwrap(), r.parse("y^2 - 1").unwrap()];
        let p = r.parse("x^2*y + x*y^2 + y^2").unwrap();
        // x²y → x, xy² → y, y² → 1
        assert_eq!(r.format(&normal_form(&p, &g)), "x + y + 1");
    }
}
