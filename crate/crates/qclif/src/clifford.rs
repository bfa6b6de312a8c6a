//! The sparse complex Clifford algebra ℂ_m.
//!
//! Generators e_1, …, e_m obey e_α e_β + e_β e_α = −2 δ_{αβ}. A [`Blade`] is a
//! product of distinct generators, identified by its index set; a
//! [`Multivector`] is a sparse blade → coefficient map over Q(i)[√2]. The Witt
//! construction downstream always works in even dimension m = 2n, but the
//! algebra itself allows any m (the quaternion embeddings of low dimension
//! need ℂ_2 and ℂ_3).

use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Product of distinct generators e_A, stored as a bitmask: bit j−1 set means
/// e_j occurs. The empty set is the identity blade.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade(pub u32);

impl Blade {
    pub const ONE: Blade = Blade(0);

    pub fn from_indices(indices: &[usize]) -> Blade {
        let mut bits = 0u32;
        for &j in indices {
            assert!(j >= 1, "generator indices are 1-based");
            assert!(bits & (1 << (j - 1)) == 0, "repeated generator e{j}");
            bits |= 1 << (j - 1);
        }
        Blade(bits)
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Ascending 1-based generator indices.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let j = bits.trailing_zeros() as usize + 1;
                bits &= bits - 1;
                Some(j)
            }
        })
    }

    pub fn max_index(self) -> usize {
        if self.0 == 0 {
            0
        } else {
            32 - self.0.leading_zeros() as usize
        }
    }

    /// Geometric product of two blades: the symmetric-difference blade and a
    /// sign from transposition count plus one factor −1 per repeated
    /// generator (e_j² = −1).
    pub fn blade_product(self, rhs: Blade) -> (Blade, bool) {
        let mut transpositions = 0u32;
        let mut bits = rhs.0;
        while bits != 0 {
            let low = bits.trailing_zeros();
            // generators of self strictly above the incoming one
            transpositions += (self.0 >> (low + 1)).count_ones();
            bits &= bits - 1;
        }
        let repeats = (self.0 & rhs.0).count_ones();
        let negative = (transpositions + repeats) % 2 == 1;
        (Blade(self.0 ^ rhs.0), negative)
    }

    /// Sign of the Clifford conjugation on this blade: (−1)^{k(k+1)/2}.
    pub fn bar_negates(self) -> bool {
        let k = self.grade();
        (k * (k + 1) / 2) % 2 == 1
    }
}

impl Ord for Blade {
    /// Grade first, then lexicographic on the ascending index tuple, so that
    /// term listings match the paper's conventions exactly.
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        for j in self.indices() {
            write!(f, "e{j}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Sparse element of ℂ_m. No stored coefficient is zero; all blades use
/// generators ≤ m. Immutable in spirit: every operation returns a new value.
#[derive(Clone, PartialEq, Eq)]
pub struct Multivector {
    gens: usize,
    terms: BTreeMap<Blade, Scalar>,
}

impl Multivector {
    pub fn zero(gens: usize) -> Self {
        Multivector { gens, terms: BTreeMap::new() }
    }

    pub fn from_scalar(gens: usize, value: Scalar) -> Self {
        let mut m = Multivector::zero(gens);
        m.add_term(Blade::ONE, value);
        m
    }

    pub fn one(gens: usize) -> Self {
        Multivector::from_scalar(gens, Scalar::one())
    }

    /// The generator e_j (1-based).
    pub fn generator(gens: usize, j: usize) -> Self {
        assert!(1 <= j && j <= gens, "generator e{j} outside ℂ_{gens}");
        let mut m = Multivector::zero(gens);
        m.add_term(Blade::from_indices(&[j]), Scalar::one());
        m
    }

    pub fn with_term(gens: usize, blade: Blade, coeff: Scalar) -> Self {
        assert!(blade.max_index() <= gens);
        let mut m = Multivector::zero(gens);
        m.add_term(blade, coeff);
        m
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, blade: Blade) -> Scalar {
        self.terms.get(&blade).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, blade: Blade, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(blade) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Multivector::zero(self.gens);
        }
        let mut out = Multivector::zero(self.gens);
        for (b, c) in &self.terms {
            out.add_term(*b, c * s);
        }
        out
    }

    /// Grades that occur with a nonzero coefficient, ascending.
    pub fn grades(&self) -> Vec<usize> {
        // Blade order is (grade, lex), so the keys already come out sorted.
        let mut gs: Vec<usize> = self.terms.keys().map(|b| b.grade()).collect();
        gs.dedup();
        gs
    }

    /// Restriction of the term map to |A| = k.
    pub fn grade_part(&self, k: usize) -> Self {
        let mut out = Multivector::zero(self.gens);
        for (b, c) in &self.terms {
            if b.grade() == k {
                out.add_term(*b, c.clone());
            }
        }
        out
    }

    /// The scalar (grade-0) coefficient.
    pub fn scalar_part(&self) -> Scalar {
        self.coeff(Blade::ONE)
    }

    pub fn is_vector(&self) -> bool {
        self.terms.keys().all(|b| b.grade() == 1)
    }

    /// Checked geometric product; the operands must live in the same ℂ_m.
    pub fn geometric_product(&self, rhs: &Multivector) -> Result<Multivector> {
        if self.gens != rhs.gens {
            return Err(Error::DimensionMismatch { left: self.gens, right: rhs.gens });
        }
        Ok(self * rhs)
    }

    /// Clifford conjugation: the main anti-involution with ē_α = −e_α.
    pub fn bar(&self) -> Self {
        let mut out = Multivector::zero(self.gens);
        for (b, c) in &self.terms {
            let c = if b.bar_negates() { -c } else { c.clone() };
            out.add_term(*b, c);
        }
        out
    }

    /// Hermitian conjugation: bar composed with complex conjugation of the
    /// coefficients.
    pub fn dagger(&self) -> Self {
        let mut out = Multivector::zero(self.gens);
        for (b, c) in &self.terms {
            let c = c.conj_complex();
            let c = if b.bar_negates() { -&c } else { c };
            out.add_term(*b, c);
        }
        out
    }

    /// Hermitian inner product (x, y) = [x† y]_0.
    pub fn hermitian_inner(&self, rhs: &Multivector) -> Result<Scalar> {
        if self.gens != rhs.gens {
            return Err(Error::DimensionMismatch { left: self.gens, right: rhs.gens });
        }
        Ok((&self.dagger() * rhs).scalar_part())
    }

    /// Componentwise form Σ_A x̄_A y_A of the Hermitian inner product; equals
    /// [`hermitian_inner`](Self::hermitian_inner) and is the hot path for
    /// spinor coordinates.
    pub fn coef_dot(&self, rhs: &Multivector) -> Scalar {
        debug_assert_eq!(self.gens, rhs.gens);
        let (small, large, conj_left) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs, true)
        } else {
            (rhs, self, false)
        };
        let mut acc = Scalar::zero();
        for (b, c) in &small.terms {
            if let Some(d) = large.terms.get(b) {
                if conj_left {
                    acc += &(&c.conj_complex() * d);
                } else {
                    acc += &(&d.conj_complex() * c);
                }
            }
        }
        acc
    }

    /// Inverse with respect to the geometric product for elements s with
    /// s · s̄ scalar and nonzero (covers the unit spin elements used here).
    pub fn spin_inverse(&self) -> Result<Multivector> {
        let norm = self * &self.bar();
        if norm.grades() != vec![0] && !norm.is_zero() {
            return Err(Error::Construction(format!(
                "s·bar(s) is not scalar (grades {:?})",
                norm.grades()
            )));
        }
        let n = norm.scalar_part();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.bar().scale(&n.inv()?))
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.gens, rhs.gens, "mixed algebra dimensions");
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, c.clone());
        }
        out
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.gens, rhs.gens, "mixed algebra dimensions");
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, -c);
        }
        out
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        let mut out = Multivector::zero(self.gens);
        for (b, c) in &self.terms {
            out.add_term(*b, -c);
        }
        out
    }
}

impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.gens, rhs.gens, "mixed algebra dimensions");
        let mut out = Multivector::zero(self.gens);
        for (ba, ca) in &self.terms {
            for (bb, cb) in &rhs.terms {
                let (blade, negative) = ba.blade_product(*bb);
                let coeff = ca * cb;
                out.add_term(blade, if negative { -&coeff } else { coeff });
            }
        }
        out
    }
}

impl fmt::Display for Multivector {
    /// Text form "(coeff) blade + (coeff) blade + …", e.g. "(1/2) 1 + (-1/2 i) e1e2".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}) {b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_blade(s: &str) -> Result<Blade> {
    let s = s.trim();
    if s == "1" || s.is_empty() {
        return Ok(Blade::ONE);
    }
    let mut indices = Vec::new();
    for part in s.split('e') {
        if part.is_empty() {
            continue;
        }
        let j: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid blade `{s}`")))?;
        if j == 0 {
            return Err(Error::Parse(format!("generator index 0 in `{s}`")));
        }
        indices.push(j);
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parse(format!("blade `{s}` is not strictly ascending")));
    }
    Ok(Blade::from_indices(&indices))
}

impl Multivector {
    pub fn parse(text: &str, gens: usize) -> Result<Multivector> {
        let mut out = Multivector::zero(gens);
        for term in text.split(" + ") {
            let term = term.trim();
            if term == "0" || term.is_empty() {
                continue;
            }
            let (coeff, blade) = match term.strip_prefix('(') {
                Some(rest) => {
                    let close = rest
                        .find(')')
                        .ok_or_else(|| Error::Parse(format!("unclosed coefficient in `{term}`")))?;
                    let coeff: Scalar = rest[..close].parse()?;
                    (coeff, parse_blade(&rest[close + 1..])?)
                }
                None => (Scalar::one(), parse_blade(term)?),
            };
            if blade.max_index() > gens {
                return Err(Error::Parse(format!(
                    "blade `{blade}` does not fit in ℂ_{gens}"
                )));
            }
            out.add_term(blade, coeff);
        }
        Ok(out)
    }
}

/// Checks both quaternion embeddings of §-level folklore: (i, j, k) as
/// (e_1, e_2, e_1e_2) in ℝ_{0,2} and as (e_2e_3, e_3e_1, e_1e_2) in the even
/// subalgebra of ℝ_{0,3}. Seven relations each: three unit squares, three
/// cyclic products, and ijk = −1.
pub fn verify_quaternion_embeddings() -> Report {
    let mut report = Report::new("quaternion-embeddings");
    let embeddings: [(&str, usize, [&[usize]; 3]); 2] = [
        ("R02", 2, [&[1], &[2], &[1, 2]]),
        ("R03-even", 3, [&[2, 3], &[3, 1], &[1, 2]]),
    ];
    for (label, gens, images) in embeddings {
        let unit = |idx: &[usize]| -> Multivector {
            idx.iter()
                .map(|&j| Multivector::generator(gens, j))
                .fold(Multivector::one(gens), |acc, e| &acc * &e)
        };
        let qi = unit(images[0]);
        let qj = unit(images[1]);
        let qk = unit(images[2]);
        let minus_one = -&Multivector::one(gens);
        report.check(format!("{label}: i^2 = -1"), &qi * &qi == minus_one);
        report.check(format!("{label}: j^2 = -1"), &qj * &qj == minus_one);
        report.check(format!("{label}: k^2 = -1"), &qk * &qk == minus_one);
        report.check(format!("{label}: ij = k"), &qi * &qj == qk);
        report.check(format!("{label}: jk = i"), &qj * &qk == qi);
        report.check(format!("{label}: ki = j"), &qk * &qi == qj);
        report.check(format!("{label}: ijk = -1"), &(&qi * &qj) * &qk == minus_one);
    }
    report
}
