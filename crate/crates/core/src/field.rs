//! Exact scalar fields: the rationals, prime fields GF(p), and quadratic
//! extensions Q(s) with s² = a for a non-square rational a.
//!
//! Scalars do not carry their field. Every operation goes through a
//! [`Field`] value, which keeps prime-field residues and quadratic
//! coefficients small and lets matrices share one field descriptor.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Name of the adjoined square root in quadratic extensions.
pub const EXTENSION_SYMBOL: &str = "s";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    /// GF(p); construct through [`Field::prime`] so that p is checked.
    Prime(u64),
    /// Q(s) with s² = a; construct through [`Field::quadratic`].
    Quadratic(BigRational),
}

/// A field element in canonical form.
///
/// Rationals are kept in lowest terms with positive denominator (enforced by
/// `BigRational`), residues lie in `[0, p)`, and quadratic elements are
/// `c0 + c1·s` with rational coefficients. Equality is representation
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
    Quadratic(BigRational, BigRational),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact square root of a rational, if it has one.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn quadratic(a: BigRational) -> Result<Self> {
        if rational_sqrt(&a).is_some() {
            return Err(Error::DegenerateExtension(format_rational(&a)));
        }
        Ok(Field::Quadratic(a))
    }

    /// 0 for the characteristic-zero fields.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::zero()),
            Field::Prime(_) => Scalar::Residue(0),
            Field::Quadratic(_) => Scalar::Quadratic(BigRational::zero(), BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Residue(r.to_u64().expect("residue below p fits in u64"))
            }
            Field::Quadratic(_) => {
                Scalar::Quadratic(BigRational::from_integer(n.clone()), BigRational::zero())
            }
        }
    }

    /// Image of a rational number; fails in GF(p) when p divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Rational(q.clone())),
            Field::Quadratic(_) => Ok(Scalar::Quadratic(q.clone(), BigRational::zero())),
            Field::Prime(_) => {
                let n = self.from_bigint(q.numer());
                let d = self.from_bigint(q.denom());
                self.div(&n, &d).ok_or(Error::DivisionByZero)
            }
        }
    }

    /// The adjoined square root s of a quadratic extension.
    pub fn generator(&self) -> Option<Scalar> {
        match self {
            Field::Quadratic(_) => Some(Scalar::Quadratic(BigRational::zero(), BigRational::one())),
            _ => None,
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        matches!(
            (self, x),
            (Field::Rationals, Scalar::Rational(_)) | (Field::Quadratic(_), Scalar::Quadratic(..))
        ) || matches!((self, x), (Field::Prime(p), Scalar::Residue(r)) if r < p)
    }

    pub fn ensure_contains(&self, x: &Scalar) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::ScalarOutsideField {
                value: format!("{x:?}"),
                field: self.to_string(),
            })
        }
    }

    pub fn is_zero(&self, x: &Scalar) -> bool {
        match x {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue(r) => *r == 0,
            Scalar::Quadratic(c0, c1) => c0.is_zero() && c1.is_zero(),
        }
    }

    pub fn is_one(&self, x: &Scalar) -> bool {
        *x == self.one()
    }

    pub fn add(&self, x: &Scalar, y: &Scalar) -> Scalar {
        match (self, x, y) {
            (_, Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Field::Prime(p), Scalar::Residue(a), Scalar::Residue(b)) => {
                Scalar::Residue(((*a as u128 + *b as u128) % *p as u128) as u64)
            }
            (_, Scalar::Quadratic(a0, a1), Scalar::Quadratic(b0, b1)) => {
                Scalar::Quadratic(a0 + b0, a1 + b1)
            }
            _ => panic!("scalars {x:?} and {y:?} are not both in {self}"),
        }
    }

    pub fn neg(&self, x: &Scalar) -> Scalar {
        match (self, x) {
            (_, Scalar::Rational(a)) => Scalar::Rational(-a),
            (Field::Prime(p), Scalar::Residue(a)) => Scalar::Residue((p - a) % p),
            (_, Scalar::Quadratic(a0, a1)) => Scalar::Quadratic(-a0, -a1),
            _ => panic!("scalar {x:?} is not in {self}"),
        }
    }

    pub fn sub(&self, x: &Scalar, y: &Scalar) -> Scalar {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Scalar, y: &Scalar) -> Scalar {
        match (self, x, y) {
            (_, Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Field::Prime(p), Scalar::Residue(a), Scalar::Residue(b)) => {
                Scalar::Residue(((*a as u128 * *b as u128) % *p as u128) as u64)
            }
            (Field::Quadratic(d), Scalar::Quadratic(a0, a1), Scalar::Quadratic(b0, b1)) => {
                Scalar::Quadratic(a0 * b0 + d * a1 * b1, a0 * b1 + a1 * b0)
            }
            _ => panic!("scalars {x:?} and {y:?} are not both in {self}"),
        }
    }

    pub fn inv(&self, x: &Scalar) -> Option<Scalar> {
        if self.is_zero(x) {
            return None;
        }
        Some(match (self, x) {
            (_, Scalar::Rational(a)) => Scalar::Rational(a.recip()),
            (Field::Prime(p), Scalar::Residue(a)) => Scalar::Residue(pow_mod(*a, p - 2, *p)),
            (Field::Quadratic(d), Scalar::Quadratic(a0, a1)) => {
                let norm = a0 * a0 - d * a1 * a1;
                Scalar::Quadratic(a0 / &norm, -(a1 / &norm))
            }
            _ => panic!("scalar {x:?} is not in {self}"),
        })
    }

    pub fn div(&self, x: &Scalar, y: &Scalar) -> Option<Scalar> {
        self.inv(y).map(|yi| self.mul(x, &yi))
    }

    pub fn pow(&self, x: &Scalar, mut e: u32) -> Scalar {
        let mut base = x.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// A square root of `x` in this field, if one exists.
    ///
    /// Prime fields are searched exhaustively and return the smallest root.
    pub fn sqrt(&self, x: &Scalar) -> Option<Scalar> {
        match (self, x) {
            (Field::Rationals, Scalar::Rational(q)) => rational_sqrt(q).map(Scalar::Rational),
            (Field::Prime(p), Scalar::Residue(r)) => (0..*p)
                .find(|c| (*c as u128 * *c as u128) % *p as u128 == *r as u128)
                .map(Scalar::Residue),
            (Field::Quadratic(d), Scalar::Quadratic(c0, c1)) => quadratic_sqrt(d, c0, c1),
            _ => None,
        }
    }

    /// All elements of a prime field in canonical order.
    pub fn residues(&self) -> Option<impl Iterator<Item = Scalar>> {
        match self {
            Field::Prime(p) => Some((0..*p).map(Scalar::Residue)),
            _ => None,
        }
    }

    /// Parses a scalar literal. Rationals accept `-3/4`; prime fields accept
    /// integers (reduced mod p); quadratic extensions accept `c0`, `c1*s`,
    /// `s` and `c0±c1*s` with rational coefficients.
    pub fn parse_scalar(&self, text: &str) -> std::result::Result<Scalar, String> {
        let text = text.trim().replace('\u{2212}', "-");
        if text.is_empty() {
            return Err("empty scalar".into());
        }
        match self {
            Field::Rationals => parse_rational(&text).map(Scalar::Rational),
            Field::Prime(_) => {
                let n = parse_integer(&text)?;
                Ok(self.from_bigint(&n))
            }
            Field::Quadratic(_) => parse_quadratic(&text),
        }
    }

    pub fn format(&self, x: &Scalar) -> String {
        x.to_string()
    }
}

fn pow_mod(base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let m = p as u128;
    let mut b = base as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

fn quadratic_sqrt(d: &BigRational, c0: &BigRational, c1: &BigRational) -> Option<Scalar> {
    let zero = BigRational::zero();
    if c1.is_zero() {
        if let Some(r) = rational_sqrt(c0) {
            return Some(Scalar::Quadratic(r, zero));
        }
        // c0 = d·t²  gives  (t·s)² = c0
        return rational_sqrt(&(c0 / d)).map(|t| Scalar::Quadratic(zero, t));
    }
    // (u + v·s)² = u² + d·v² + 2uv·s; with N = c0² − d·c1² a square,
    // u² = (c0 ± √N)/2 and v = c1/(2u).
    let norm = rational_sqrt(&(c0 * c0 - d * c1 * c1))?;
    let two = rat(2);
    for cand in [(c0 + &norm) / &two, (c0 - &norm) / &two] {
        if let Some(u) = rational_sqrt(&cand) {
            if u.is_zero() {
                continue;
            }
            let v = c1 / (&two * &u);
            return Some(Scalar::Quadratic(u, v));
        }
    }
    None
}

fn parse_integer(text: &str) -> std::result::Result<BigInt, String> {
    let (neg, digits) = split_sign(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("expected an integer, found {text:?}"));
    }
    let n: BigInt = digits.parse().map_err(|e| format!("{e}"))?;
    Ok(if neg { -n } else { n })
}

fn split_sign(text: &str) -> (bool, &str) {
    if let Some(rest) = text.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = text.strip_prefix('+') {
        (false, rest)
    } else {
        (false, text)
    }
}

pub(crate) fn parse_rational(text: &str) -> std::result::Result<BigRational, String> {
    let (neg, body) = split_sign(text);
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let valid = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !valid(num) || den.is_some_and(|d| !valid(d)) {
        return Err(format!("expected a rational like -3/4, found {text:?}"));
    }
    let n: BigInt = num.parse().map_err(|e| format!("{e}"))?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|e| format!("{e}"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    let q = BigRational::new(n, d);
    Ok(if neg { -q } else { q })
}

/// `c1*s`, `s`, `-s` or a plain rational.
fn parse_quadratic_term(term: &str) -> std::result::Result<(BigRational, bool), String> {
    let (neg, body) = split_sign(term);
    let sign = |q: BigRational| if neg { -q } else { q };
    if body == EXTENSION_SYMBOL {
        return Ok((sign(BigRational::one()), true));
    }
    if let Some(coef) = body.strip_suffix(EXTENSION_SYMBOL) {
        let coef = coef
            .strip_suffix('*')
            .ok_or_else(|| format!("expected c*s, found {term:?}"))?;
        if coef.starts_with(['+', '-']) {
            return Err(format!("misplaced sign in {term:?}"));
        }
        return Ok((sign(parse_rational(coef)?), true));
    }
    if body.starts_with(['+', '-']) {
        return Err(format!("misplaced sign in {term:?}"));
    }
    Ok((sign(parse_rational(body)?), false))
}

fn parse_quadratic(text: &str) -> std::result::Result<Scalar, String> {
    // split at a '+' or '-' that is not the leading sign
    let split = text
        .char_indices()
        .skip(1)
        .find(|(_, c)| *c == '+' || *c == '-')
        .map(|(i, _)| i);
    let (first, second) = match split {
        Some(i) => (&text[..i], Some(&text[i..])),
        None => (text, None),
    };
    let (a, a_is_s) = parse_quadratic_term(first)?;
    match second {
        None if a_is_s => Ok(Scalar::Quadratic(BigRational::zero(), a)),
        None => Ok(Scalar::Quadratic(a, BigRational::zero())),
        Some(rest) => {
            let (b, b_is_s) = parse_quadratic_term(rest)?;
            if a_is_s || !b_is_s {
                return Err(format!("expected c0+c1*s, found {text:?}"));
            }
            Ok(Scalar::Quadratic(a, b))
        }
    }
}

pub(crate) fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => f.write_str(&format_rational(q)),
            Scalar::Residue(r) => write!(f, "{r}"),
            Scalar::Quadratic(c0, c1) => {
                let s = EXTENSION_SYMBOL;
                let coef = |c: &BigRational| {
                    if c.abs().is_one() {
                        s.to_string()
                    } else {
                        format!("{}*{s}", format_rational(&c.abs()))
                    }
                };
                match (c0.is_zero(), c1.is_zero()) {
                    (_, true) => f.write_str(&format_rational(c0)),
                    (true, false) => {
                        let sign = if c1.is_negative() { "-" } else { "" };
                        write!(f, "{sign}{}", coef(c1))
                    }
                    (false, false) => {
                        let sign = if c1.is_negative() { '-' } else { '+' };
                        write!(f, "{}{sign}{}", format_rational(c0), coef(c1))
                    }
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => f.write_str("rat"),
            Field::Prime(p) => write!(f, "gf:{p}"),
            Field::Quadratic(a) => write!(f, "quad:{}", format_rational(a)),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad =
            || Error::InvalidArgument(format!("unknown field {s:?}; use rat, gf:<p> or quad:<a>"));
        if s == "rat" {
            return Ok(Field::Rationals);
        }
        if let Some(p) = s.strip_prefix("gf:") {
            return Field::prime(p.parse().map_err(|_| bad())?);
        }
        if let Some(a) = s.strip_prefix("quad:") {
            let a = parse_rational(&a.replace('\u{2212}', "-")).map_err(|_| bad())?;
            return Field::quadratic(a);
        }
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn prime_field_construction_checks_primality() {
        assert!(Field::prime(7).is_ok());
        assert_eq!(Field::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(Field::prime(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn quadratic_extension_rejects_squares() {
        assert!(Field::quadratic(rat(2)).is_ok());
        assert!(matches!(
            Field::quadratic(rat(4)),
            Err(Error::DegenerateExtension(_))
        ));
        assert!(matches!(
            Field::quadratic(q(9, 4)),
            Err(Error::DegenerateExtension(_))
        ));
    }

    #[test]
    fn gf3_products_reduce() {
        let f = Field::prime(3).unwrap();
        let two = f.from_int(2);
        assert_eq!(f.mul(&two, &two), f.one());
        assert_eq!(f.from_int(-1), two);
        assert_eq!(f.inv(&two), Some(two.clone()));
        assert_eq!(f.inv(&f.zero()), None);
    }

    #[test]
    fn rationals_stay_reduced() {
        let f = Field::Rationals;
        let x = f.parse_scalar("6/8").unwrap();
        assert_eq!(x, Scalar::Rational(q(3, 4)));
        assert_eq!(f.parse_scalar("\u{2212}3/4").unwrap().to_string(), "-3/4");
        assert!(f.parse_scalar("3/0").is_err());
        assert!(f.parse_scalar("1.5").is_err());
    }

    #[test]
    fn quadratic_arithmetic_uses_the_relation() {
        let f = Field::quadratic(rat(2)).unwrap();
        let s = f.generator().unwrap();
        assert_eq!(f.mul(&s, &s), f.from_int(2));
        let x = f.parse_scalar("1/2+3*s").unwrap();
        let xi = f.inv(&x).unwrap();
        assert_eq!(f.mul(&x, &xi), f.one());
        assert_eq!(x.to_string(), "1/2+3*s");
        assert_eq!(f.parse_scalar("1-s").unwrap().to_string(), "1-s");
        assert_eq!(f.parse_scalar("-2*s").unwrap().to_string(), "-2*s");
        assert!(f.parse_scalar("s+1").is_err());
        assert!(f.parse_scalar("1+2").is_err());
    }

    #[test]
    fn square_roots() {
        let qf = Field::Rationals;
        assert_eq!(qf.sqrt(&qf.from_int(4)), Some(qf.from_int(2)));
        assert_eq!(qf.sqrt(&qf.from_int(2)), None);
        assert_eq!(qf.sqrt(&qf.from_int(-1)), None);

        let ext = Field::quadratic(rat(2)).unwrap();
        assert_eq!(ext.sqrt(&ext.from_int(2)), ext.generator());
        assert_eq!(ext.sqrt(&ext.from_int(8)).unwrap().to_string(), "2*s");
        // (1 + s)² = 3 + 2s
        let r = ext.sqrt(&ext.parse_scalar("3+2*s").unwrap()).unwrap();
        assert_eq!(ext.mul(&r, &r).to_string(), "3+2*s");

        let gf = Field::prime(5).unwrap();
        assert_eq!(gf.sqrt(&gf.from_int(4)), Some(gf.from_int(2)));
        assert_eq!(gf.sqrt(&gf.from_int(2)), None);
    }

    #[test]
    fn field_names_round_trip() {
        for name in ["rat", "gf:5", "quad:2", "quad:-1/3"] {
            assert_eq!(name.parse::<Field>().unwrap().to_string(), name);
        }
        assert!("gf:4".parse::<Field>().is_err());
        assert!("quad:9".parse::<Field>().is_err());
    }

    #[test]
    fn gf_rejects_fractions_and_reduces_negatives() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.parse_scalar("-1").unwrap(), Scalar::Residue(4));
        assert!(f.parse_scalar("1/2").is_err());
        assert_eq!(f.from_rational(&q(1, 2)).unwrap(), Scalar::Residue(3));
        assert_eq!(f.from_rational(&q(1, 5)), Err(Error::DivisionByZero));
    }
}
