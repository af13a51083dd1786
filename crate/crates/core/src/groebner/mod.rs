//! Multivariate polynomials over Q with lexicographic order, Buchberger's
//! algorithm, and the polynomial ideal cut out by AXA = XAX.
//!
//! Variables are identified by position in a [`PolyRing`]; position 0 has
//! the highest precedence, so `a > b > … > i` is the ring with variables
//! `["a", …, "i"]` in that order.

mod buchberger;
mod ideal;
mod parse;
mod radical;

pub use buchberger::{
    buchberger, is_groebner_basis, normal_form, reduce_basis, s_polynomial, BuchbergerOptions,
    PairSelection, DEFAULT_PAIR_CAP,
};
pub use ideal::{ybe_ideal, MAX_IDEAL_ENTRIES};
pub use radical::in_radical;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::format_rational;

/// Exponent vector in variable-precedence order. The derived ordering on
/// the vector is exactly the lexicographic monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Polynomial with rational coefficients; no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        MultiPoly::term(Monomial::one(nvars), c)
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let nvars = m.0.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { nvars, terms }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        MultiPoly::term(Monomial::var(nvars, i), BigRational::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.leading().map(|(m, _)| m)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: &Monomial, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(m) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(m);
        } else {
            self.terms.insert(m.clone(), sum);
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, &-c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &other.terms {
            for (t, a) in &self.terms {
                out.add_term(&t.mul(m), &(a * c));
            }
        }
        out
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Value at a point of GF(p)^n; fails if p divides a coefficient denominator.
    pub fn eval_mod(&self, p: u64, point: &[u64]) -> Result<u64> {
        let pb = BigInt::from(p);
        let reduce = |q: &BigRational| -> Result<u128> {
            let num = q.numer().mod_floor_u64(&pb);
            let den = q.denom().mod_floor_u64(&pb);
            if den == 0 {
                return Err(Error::DivisionByZero);
            }
            Ok(num as u128 * inv_mod(den, p) as u128 % p as u128)
        };
        let mut acc: u128 = 0;
        for (m, c) in &self.terms {
            let mut v = reduce(c)?;
            for (e, x) in m.0.iter().zip(point) {
                for _ in 0..*e {
                    v = v * *x as u128 % p as u128;
                }
            }
            acc = (acc + v) % p as u128;
        }
        Ok(acc as u64)
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: &BigInt) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: &BigInt) -> u64 {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        self.mod_floor(p).to_u64().expect("residue fits")
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut acc, mut base, mut e) = (1u128, a as u128 % p as u128, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}

/// Variable names in precedence order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new(vars: Vec<String>) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidArgument(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate variable {v:?}")));
            }
        }
        Ok(PolyRing { vars })
    }

    /// Single-letter variables `a, b, c, …` (at most 26).
    pub fn letters(count: usize) -> Self {
        assert!(count <= 26, "at most 26 letter variables");
        PolyRing {
            vars: (0..count)
                .map(|i| ((b'a' + i as u8) as char).to_string())
                .collect(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var(&self, name: &str) -> Option<MultiPoly> {
        let i = self.vars.iter().position(|v| v == name)?;
        Some(MultiPoly::var(self.nvars(), i))
    }

    pub fn parse(&self, text: &str) -> Result<MultiPoly> {
        parse::parse_poly(self, text)
    }

    /// Deterministic text form, terms in descending order.
    pub fn format(&self, p: &MultiPoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in p.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            out.push_str(match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, e)| match e {
                        1 => self.vars[i].clone(),
                        _ => format!("{}^{e}", self.vars[i]),
                    })
                    .collect();
            if factors.is_empty() {
                out.push_str(&format_rational(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&format_rational(&abs));
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// Re-expresses `p` (written in `self`) in `target`, whose variables are
    /// a permutation of ours. This is how monomial-order overrides apply.
    pub fn translate(&self, p: &MultiPoly, target: &PolyRing) -> Result<MultiPoly> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target.vars.iter().position(|t| t == v).ok_or_else(|| {
                    Error::InvalidArgument(format!("variable {v} missing from target order"))
                })
            })
            .collect::<Result<_>>()?;
        let mut out = MultiPoly::zero(target.nvars());
        for (m, c) in &p.terms {
            let mut e = vec![0; target.nvars()];
            for (i, x) in m.0.iter().enumerate() {
                e[map[i]] = *x;
            }
            out.add_term(&Monomial(e), c);
        }
        Ok(out)
    }

    /// Parses an order override such as `lex:a..i`, `lex:i..a` or `lex:c,a,b`.
    pub fn with_order(&self, spec: &str) -> Result<PolyRing> {
        let body = spec.strip_prefix("lex:").ok_or_else(|| {
            Error::InvalidArgument(format!("only lex orders are supported, got {spec:?}"))
        })?;
        let names: Vec<String> = if let Some((from, to)) = body.split_once("..") {
            let (from, to) = (from.trim(), to.trim());
            let i = self.vars.iter().position(|v| v == from);
            let j = self.vars.iter().position(|v| v == to);
            match (i, j) {
                (Some(i), Some(j)) if i <= j => self.vars[i..=j].to_vec(),
                (Some(i), Some(j)) => self.vars[j..=i].iter().rev().cloned().collect(),
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown variable in {spec:?}"
                    )))
                }
            }
        } else {
            body.split(',').map(|s| s.trim().to_string()).collect()
        };
        if names.len() != self.nvars() || self.vars.iter().any(|v| !names.contains(v)) {
            return Err(Error::InvalidArgument(format!(
                "order {spec:?} must list every variable of {:?} exactly once",
                self.vars
            )));
        }
        PolyRing::new(names)
    }
}

pub(crate) fn compare_by_degree_then_lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_follows_precedence() {
        let r = PolyRing::letters(3);
        let p = r.parse("c^5 + b*c + a").unwrap();
        assert_eq!(r.format(&p), "a + b*c + c^5");
        assert_eq!(p.leading_monomial(), Some(&Monomial::var(3, 0)));
    }

    #[test]
    fn format_and_parse_round_trip() {
        let r = PolyRing::letters(9);
        for text in ["a*f + b*i", "-3/2*a^2*b - 1", "d*e + e*h - g", "0", "7"] {
            let p = r.parse(text).unwrap();
            assert_eq!(r.format(&p), text);
        }
    }

    #[test]
    fn arithmetic() {
        let r = PolyRing::new(vec!["x".into(), "y".into()]).unwrap();
        let a = r.parse("x - y").unwrap();
        let b = r.parse("x + y").unwrap();
        assert_eq!(r.format(&a.mul(&b)), "x^2 - y^2");
        assert!(a.sub(&a).is_zero());
        assert_eq!(r.format(&r.parse("2*x + 4").unwrap().monic()), "x + 2");
    }

    #[test]
    fn order_overrides() {
        let r = PolyRing::letters(3);
        let rev = r.with_order("lex:c..a").unwrap();
        assert_eq!(rev.vars(), ["c", "b", "a"]);
        let p = r.parse("a + c^2").unwrap();
        let q = r.translate(&p, &rev).unwrap();
        assert_eq!(rev.format(&q), "c^2 + a");
        assert_eq!(r.with_order("lex:b,c,a").unwrap().vars(), ["b", "c", "a"]);
        assert!(r.with_order("lex:a,b").is_err());
        assert!(r.with_order("grevlex:a..c").is_err());
    }

    #[test]
    fn modular_evaluation() {
        let r = PolyRing::letters(2);
        let p = r.parse("a*b + 1/2").unwrap();
        // 2·3 + 1/2 ≡ 1 + 3 = 4 (mod 5)
        assert_eq!(p.eval_mod(5, &[2, 3]), Ok(4));
        assert_eq!(p.eval_mod(2, &[1, 1]), Err(Error::DivisionByZero));
    }
}
