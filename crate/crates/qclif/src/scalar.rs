//! Exact arithmetic in the field Q(i)[√2].
//!
//! Every coefficient in the crate is a [`Scalar`]: a + b·i + c·√2 + d·i√2
//! with arbitrary-precision rational components. All identities downstream
//! are checked with exact equality, so there is no floating point anywhere.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

pub type Rational = BigRational;

/// Element of Q(i)[√2], stored as a + b·i + c·√2 + d·i√2 with each part a
/// rational in lowest terms (positive denominator). Equality is structural;
/// the derived order is lexicographic on components and exists only so that
/// term listings are deterministic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Scalar { a, b, c, d }
    }

    pub fn zero() -> Self {
        Scalar::new(
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        )
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn i() -> Self {
        Scalar::new(
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
        )
    }

    pub fn sqrt2() -> Self {
        Scalar::new(
            Rational::zero(),
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
        )
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(Rational::from(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(rat(n, d))
    }

    pub fn from_rational(a: Rational) -> Self {
        Scalar::new(a, Rational::zero(), Rational::zero(), Rational::zero())
    }

    /// b·i for rational b.
    pub fn imaginary(b: Rational) -> Self {
        Scalar::new(Rational::zero(), b, Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// True when the value lies in Q (no i or √2 part).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// The rational part, provided the value lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// True when the value lies in Q(√2) (no i parts).
    pub fn is_real(&self) -> bool {
        self.b.is_zero() && self.d.is_zero()
    }

    /// Exact sign test for a real value a + c·√2 ≥ 0.
    pub fn is_nonneg_real(&self) -> bool {
        if !self.is_real() {
            return false;
        }
        let a_neg = self.a.is_negative();
        let c_neg = self.c.is_negative();
        match (a_neg, c_neg) {
            (false, false) => true,
            (true, true) => false,
            // a ≥ 0, c < 0: need a² ≥ 2c²; a < 0, c ≥ 0: need 2c² ≥ a².
            (false, true) => &self.a * &self.a >= &self.c * &self.c * Rational::from(BigInt::from(2)),
            (true, false) => &self.c * &self.c * Rational::from(BigInt::from(2)) >= &self.a * &self.a,
        }
    }

    /// Complex conjugation: i ↦ −i, √2 fixed. A ring involution.
    pub fn conj_complex(&self) -> Self {
        Scalar::new(self.a.clone(), -self.b.clone(), self.c.clone(), -self.d.clone())
    }

    /// Galois conjugation √2 ↦ −√2, i fixed.
    pub fn conj_sqrt2(&self) -> Self {
        Scalar::new(self.a.clone(), self.b.clone(), -self.c.clone(), -self.d.clone())
    }

    /// |x|² = x · conj_complex(x), a scalar with zero i-parts.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj_complex()
    }

    /// Multiplicative inverse. Fails on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // First clear √2: x · conj_sqrt2(x) lies in Q(i).
        let s2 = self.conj_sqrt2();
        let in_qi = self * &s2; // c = d = 0
        debug_assert!(in_qi.c.is_zero() && in_qi.d.is_zero());
        // Then clear i: (u + vi)(u − vi) = u² + v² ∈ Q.
        let qi_conj = in_qi.conj_complex();
        let norm = &in_qi.a * &in_qi.a + &in_qi.b * &in_qi.b;
        debug_assert!(!norm.is_zero());
        let inv_norm = Scalar::from_rational(norm.recip());
        Ok(&(&s2 * &qi_conj) * &inv_norm)
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.a + &rhs.a,
            &self.b + &rhs.b,
            &self.c + &rhs.c,
            &self.d + &rhs.d,
        )
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.a - &rhs.a,
            &self.b - &rhs.b,
            &self.c - &rhs.c,
            &self.d - &rhs.d,
        )
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.a.clone(), -self.b.clone(), -self.c.clone(), -self.d.clone())
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
        self.c += &rhs.c;
        self.d += &rhs.d;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
        self.c -= &rhs.c;
        self.d -= &rhs.d;
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        // (a1 + b1 i + c1 r + d1 ir)(a2 + b2 i + c2 r + d2 ir), r² = 2, i² = −1.
        let two = BigInt::from(2);
        let a = &self.a * &rhs.a - &self.b * &rhs.b
            + (&self.c * &rhs.c - &self.d * &rhs.d) * &two;
        let b = &self.a * &rhs.b + &self.b * &rhs.a
            + (&self.c * &rhs.d + &self.d * &rhs.c) * &two;
        let c = &self.a * &rhs.c + &self.c * &rhs.a - &self.b * &rhs.d - &self.d * &rhs.b;
        let d = &self.a * &rhs.d + &self.d * &rhs.a + &self.b * &rhs.c + &self.c * &rhs.b;
        Scalar::new(a, b, c, d)
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    /// Text form "a/b + c/d i + e/f r2 + g/h ir2" with zero parts omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (q, unit) in [(&self.a, ""), (&self.b, "i"), (&self.c, "r2"), (&self.d, "ir2")] {
            if q.is_zero() {
                continue;
            }
            let mag = q.abs();
            let sign = q.is_negative();
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if unit.is_empty() {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{unit}")?;
            } else {
                write!(f, "{} {unit}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.trim().parse().map_err(|_| bad())?;
            Ok(Rational::from(n))
        }
    }
}

impl std::str::FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut out = Scalar::zero();
        // Split into signed terms; a leading sign is allowed.
        let mut rest = s;
        let mut negative = false;
        if let Some(r) = rest.strip_prefix('-') {
            negative = true;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        }
        loop {
            let end = rest
                .char_indices()
                .skip(1)
                .find(|&(_, ch)| ch == '+' || ch == '-')
                .map(|(idx, _)| idx)
                .unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            let term = term.trim();
            let (num_part, unit): (&str, &str) = if let Some(p) = term.strip_suffix("ir2") {
                (p, "ir2")
            } else if let Some(p) = term.strip_suffix("r2") {
                (p, "r2")
            } else if let Some(p) = term.strip_suffix('i') {
                (p, "i")
            } else {
                (term, "")
            };
            let num_part = num_part.trim();
            let mag = if num_part.is_empty() {
                if unit.is_empty() {
                    return Err(Error::Parse(format!("bare sign in `{s}`")));
                }
                Rational::one()
            } else {
                parse_rational(num_part)?
            };
            let signed = if negative { -mag } else { mag };
            match unit {
                "" => out.a += &signed,
                "i" => out.b += &signed,
                "r2" => out.c += &signed,
                "ir2" => out.d += &signed,
                _ => unreachable!(),
            }
            if tail.is_empty() {
                break;
            }
            negative = tail.starts_with('-');
            rest = tail[1..].trim_start();
            if rest.is_empty() {
                return Err(Error::Parse(format!("dangling sign in `{s}`")));
            }
        }
        Ok(out)
    }
}
