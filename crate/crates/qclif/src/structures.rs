//! The complex structures 𝕀, 𝕁, 𝕂 as signed generator permutations, and the
//! spin elements realizing them under the double cover.
//!
//! Sign conventions are pinned by the displayed operator formulas rather than
//! the matrix blocks (which admit a transpose ambiguity):
//! I[e_{2k−1}] = e_{2k}, I[e_{2k}] = −e_{2k−1}, and
//! J[e_{4j−3}] = e_{4j−1}, J[e_{4j−2}] = −e_{4j}, J[e_{4j−1}] = −e_{4j−3},
//! J[e_{4j}] = e_{4j−2}. K is I followed by J; with these conventions the
//! double cover X ↦ s X s⁻¹ reproduces the maps exactly and all conversion
//! identities downstream hold on the nose.

use crate::clifford::{Blade, Multivector};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalar::{rat, Scalar};
use crate::witt::WittFrame;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    I,
    J,
    K,
}

impl std::fmt::Display for StructureKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StructureKind::I => write!(f, "I"),
            StructureKind::J => write!(f, "J"),
            StructureKind::K => write!(f, "K"),
        }
    }
}

/// An orthogonal complex structure on R^m, acting on 1-vectors as a signed
/// permutation of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMap {
    kind: StructureKind,
    gens: usize,
    /// `images[α−1] = (β, negative)` means e_α ↦ ±e_β.
    images: Vec<(usize, bool)>,
}

impl StructureMap {
    /// The complex structure I on R^{2n}.
    pub fn new_i(n: usize) -> StructureMap {
        assert!(n >= 1);
        let mut images = Vec::with_capacity(2 * n);
        for k in 1..=n {
            images.push((2 * k, false)); // e_{2k−1} ↦ e_{2k}
            images.push((2 * k - 1, true)); // e_{2k} ↦ −e_{2k−1}
        }
        StructureMap { kind: StructureKind::I, gens: 2 * n, images }
    }

    /// The second complex structure J on R^{4p}.
    pub fn new_j(p: usize) -> StructureMap {
        assert!(p >= 1);
        let mut images = Vec::with_capacity(4 * p);
        for j in 1..=p {
            let base = 4 * j - 3;
            images.push((base + 2, false)); // e_{4j−3} ↦ e_{4j−1}
            images.push((base + 3, true)); // e_{4j−2} ↦ −e_{4j}
            images.push((base, true)); // e_{4j−1} ↦ −e_{4j−3}
            images.push((base + 1, false)); // e_{4j} ↦ e_{4j−2}
        }
        StructureMap { kind: StructureKind::J, gens: 4 * p, images }
    }

    /// K on R^{4p}: I followed by J.
    pub fn new_k(p: usize) -> StructureMap {
        let mut k = StructureMap::new_i(2 * p).then(&StructureMap::new_j(p));
        k.kind = StructureKind::K;
        k
    }

    pub fn build(kind: StructureKind, p: usize) -> StructureMap {
        match kind {
            StructureKind::I => StructureMap::new_i(2 * p),
            StructureKind::J => StructureMap::new_j(p),
            StructureKind::K => StructureMap::new_k(p),
        }
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    /// Image of the generator e_α (1-based).
    pub fn image(&self, alpha: usize) -> (usize, bool) {
        self.images[alpha - 1]
    }

    /// Composition: apply `self` first, then `other`.
    pub fn then(&self, other: &StructureMap) -> StructureMap {
        assert_eq!(self.gens, other.gens);
        let images = self
            .images
            .iter()
            .map(|&(beta, s1)| {
                let (gamma, s2) = other.images[beta - 1];
                (gamma, s1 ^ s2)
            })
            .collect();
        StructureMap { kind: self.kind, gens: self.gens, images }
    }

    pub fn negated(&self) -> StructureMap {
        let images = self.images.iter().map(|&(b, s)| (b, !s)).collect();
        StructureMap { kind: self.kind, gens: self.gens, images }
    }

    /// Linear extension to a 1-vector. Structures act on vectors only.
    pub fn apply(&self, x: &Multivector) -> Result<Multivector> {
        if x.gens() != self.gens {
            return Err(Error::DimensionMismatch { left: x.gens(), right: self.gens });
        }
        if !x.is_vector() {
            return Err(Error::NotAVector { grades: x.grades() });
        }
        let mut out = Multivector::zero(self.gens);
        for (blade, coeff) in x.terms() {
            let alpha = blade.indices().next().expect("grade-1 blade");
            let (beta, negative) = self.images[alpha - 1];
            out.add_term(
                Blade::from_indices(&[beta]),
                if negative { -coeff } else { coeff.clone() },
            );
        }
        Ok(out)
    }

    /// S² = −id on 1-vectors.
    pub fn squares_to_minus_identity(&self) -> bool {
        let minus_id: Vec<(usize, bool)> = (1..=self.gens).map(|a| (a, true)).collect();
        self.then(self).images == minus_id
    }

    pub fn anticommutes_with(&self, other: &StructureMap) -> bool {
        self.gens == other.gens && self.then(other).images == other.then(self).negated().images
    }

    /// The images form a signed permutation, hence preserve the Euclidean
    /// inner product.
    pub fn is_orthogonal(&self) -> bool {
        let mut seen = vec![false; self.gens];
        for &(beta, _) in &self.images {
            if beta == 0 || beta > self.gens || seen[beta - 1] {
                return false;
            }
            seen[beta - 1] = true;
        }
        true
    }
}

/// A spin group element realizing a complex structure under conjugation.
#[derive(Clone, Debug)]
pub struct SpinElement {
    kind: StructureKind,
    value: Multivector,
}

impl SpinElement {
    /// s_I = s_1 ⋯ s_n with s_j = (√2/2)(1 + e_{2j−1}e_{2j}) over R^{2n}.
    pub fn new_i(n: usize) -> Result<SpinElement> {
        let gens = 2 * n;
        let half_sqrt2 = Scalar::new(rat(0, 1), rat(0, 1), rat(1, 2), rat(0, 1));
        let mut value = Multivector::one(gens);
        for j in 1..=n {
            let mut factor = Multivector::one(gens);
            factor.add_term(Blade::from_indices(&[2 * j - 1, 2 * j]), Scalar::one());
            value = &value * &factor.scale(&half_sqrt2);
        }
        let s = SpinElement { kind: StructureKind::I, value };
        s.assert_invariants()?;
        Ok(s)
    }

    /// s_J = s̃_1 ⋯ s̃_p with s̃_j = ½(1 + e_{4j−3}e_{4j−1})(1 − e_{4j−2}e_{4j}).
    pub fn new_j(p: usize) -> Result<SpinElement> {
        let gens = 4 * p;
        let half = Scalar::from_ratio(1, 2);
        let mut value = Multivector::one(gens);
        for j in 1..=p {
            let mut left = Multivector::one(gens);
            left.add_term(Blade::from_indices(&[4 * j - 3, 4 * j - 1]), Scalar::one());
            let mut right = Multivector::one(gens);
            right.add_term(Blade::from_indices(&[4 * j - 2, 4 * j]), -&Scalar::one());
            value = &value * &(&left * &right).scale(&half);
        }
        let s = SpinElement { kind: StructureKind::J, value };
        s.assert_invariants()?;
        Ok(s)
    }

    fn assert_invariants(&self) -> Result<()> {
        let unit = &self.value * &self.value.bar();
        if unit != Multivector::one(self.value.gens()) {
            return Err(Error::Construction(format!(
                "spin element s_{} is not unit: s·bar(s) = {}",
                self.kind, unit
            )));
        }
        if self.value.grades().iter().any(|g| g % 2 != 0) {
            return Err(Error::Construction(format!(
                "spin element s_{} has odd-grade terms",
                self.kind
            )));
        }
        Ok(())
    }

    pub fn value(&self) -> &Multivector {
        &self.value
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn inverse(&self) -> Multivector {
        // unit spin element: s⁻¹ = bar(s)
        self.value.bar()
    }

    /// Conjugation X ↦ s X s⁻¹.
    pub fn conjugate(&self, x: &Multivector) -> Multivector {
        &(&self.value * x) * &self.inverse()
    }
}

/// Verifies s e_α s⁻¹ = S[e_α] for every generator. The conjugation direction
/// is fixed; a failure here is a convention bug, not something to paper over.
pub fn double_cover_check(s: &SpinElement, map: &StructureMap) -> Report {
    let mut report = Report::new(format!("double-cover s_{}", s.kind()));
    let gens = map.gens();
    for alpha in 1..=gens {
        let e = Multivector::generator(gens, alpha);
        let conj = s.conjugate(&e);
        let expected = map.apply(&e).expect("generator is a 1-vector");
        report.check_with(
            format!("s e{alpha} s^-1 = {}[e{alpha}]", map.kind()),
            conj == expected,
            format!("conjugation: {conj}"),
        );
    }
    report
}

/// Action of J on the Witt vectors (the four families displayed in the
/// source construction) plus the eigenvalue relations of I on them.
///
/// With the operator-pinned conventions the Witt vectors satisfy
/// I[f_k] = i·f_k and I[f†_k] = −i·f†_k: f_k spans the +i eigenspace.
pub fn structure_on_witt(j_map: &StructureMap, frame: &WittFrame) -> Result<Report> {
    if j_map.kind() != StructureKind::J {
        return Err(Error::Construction("structure_on_witt expects the J structure".into()));
    }
    let n = frame.pairs();
    if n % 2 != 0 || j_map.gens() != 2 * n {
        return Err(Error::DimensionMismatch { left: j_map.gens(), right: 2 * n });
    }
    let p = n / 2;
    let mut report = Report::new("structure-on-witt");
    for j in 1..=p {
        let f_odd = frame.f(2 * j - 1);
        let f_even = frame.f(2 * j);
        let fd_odd = frame.fd(2 * j - 1);
        let fd_even = frame.fd(2 * j);
        report.check(
            format!("J[f_{}] = -fd_{}", 2 * j - 1, 2 * j),
            j_map.apply(f_odd)? == -fd_even,
        );
        report.check(
            format!("J[f_{}] = fd_{}", 2 * j, 2 * j - 1),
            j_map.apply(f_even)? == fd_odd.clone(),
        );
        report.check(
            format!("J[fd_{}] = -f_{}", 2 * j - 1, 2 * j),
            j_map.apply(fd_odd)? == -f_even,
        );
        report.check(
            format!("J[fd_{}] = f_{}", 2 * j, 2 * j - 1),
            j_map.apply(fd_even)? == f_odd.clone(),
        );
    }
    let i_map = StructureMap::new_i(n);
    let i = Scalar::i();
    for k in 1..=n {
        report.check(
            format!("I[f_{k}] = i f_{k}"),
            i_map.apply(frame.f(k))? == frame.f(k).scale(&i),
        );
        report.check(
            format!("I[fd_{k}] = -i fd_{k}"),
            i_map.apply(frame.fd(k))? == frame.fd(k).scale(&-&i),
        );
    }
    Ok(report)
}
