//! Witt basis, primitive idempotent, and the concrete spinor space.
//!
//! The Witt vectors f_k = ½(−e_{2k−1} + i e_{2k}) and f†_k = ½(e_{2k−1} + i e_{2k})
//! are obtained by projecting the odd generators with ½(∓E + i·I). They obey
//! the Grassmann and duality identities; from the idempotents I_j = f_j f†_j
//! the primitive idempotent I = I_1 ⋯ I_n is composed, and spinor space is
//! realized concretely inside ℂ_{2n} as the span of the products f†_{j_1} ⋯
//! f†_{j_r} I (lexicographic index order), so that every statement about
//! operators becomes a multivector equality.

use crate::clifford::{Blade, Multivector};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::structures::StructureMap;

pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: usize = 1;
    for k in 0..r {
        acc = acc * (n - k) / (k + 1);
    }
    acc
}

/// All r-subsets of {1, …, n} in lexicographic order.
pub fn subsets_lex(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, r));
    let mut current = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == r {
            out.push(current.clone());
            return;
        }
        for j in start..=n {
            current.push(j);
            rec(j + 1, n, r, current, out);
            current.pop();
        }
    }
    rec(1, n, r, &mut current, &mut out);
    out
}

/// The Witt frame over ℂ_{2n}: the isotropic vectors f_k, f†_k and the
/// primitive self-adjoint idempotent I. All identities are asserted at
/// construction.
#[derive(Clone, Debug)]
pub struct WittFrame {
    n: usize,
    f: Vec<Multivector>,
    fd: Vec<Multivector>,
    idem: Multivector,
}

impl WittFrame {
    pub fn build(n: usize) -> Result<WittFrame> {
        if n == 0 {
            return Err(Error::Construction("Witt frame needs n >= 1".into()));
        }
        let gens = 2 * n;
        let i_map = StructureMap::new_i(n);
        let half = Scalar::from_ratio(1, 2);
        let i = Scalar::i();
        let mut f = Vec::with_capacity(n);
        let mut fd = Vec::with_capacity(n);
        for k in 1..=n {
            let odd = Multivector::generator(gens, 2 * k - 1);
            let rotated = i_map.apply(&odd)?.scale(&i);
            f.push((&(-&odd) + &rotated).scale(&half));
            fd.push((&odd + &rotated).scale(&half));
        }
        let mut idem = Multivector::one(gens);
        for k in 0..n {
            let ij = &f[k] * &fd[k];
            // I_j = ½(1 − i e_{2j−1} e_{2j})
            let mut expected = Multivector::one(gens);
            expected.add_term(Blade::from_indices(&[2 * k + 1, 2 * k + 2]), -&i);
            if ij != expected.scale(&half) {
                return Err(Error::Construction(format!("I_{} has unexpected form", k + 1)));
            }
            idem = &idem * &ij;
        }
        let frame = WittFrame { n, f, fd, idem };
        let report = frame.identities_report();
        if !report.passed() {
            let bad: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
            return Err(Error::Construction(format!("Witt identities failed: {bad:?}")));
        }
        Ok(frame)
    }

    pub fn pairs(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> usize {
        2 * self.n
    }

    /// f_k, 1-based.
    pub fn f(&self, k: usize) -> &Multivector {
        &self.f[k - 1]
    }

    /// f†_k, 1-based.
    pub fn fd(&self, k: usize) -> &Multivector {
        &self.fd[k - 1]
    }

    pub fn idempotent(&self) -> &Multivector {
        &self.idem
    }

    /// Grassmann, isotropy and duality identities plus f_j I = 0, I² = I and
    /// I† = I, exhaustively over index pairs.
    pub fn identities_report(&self) -> Report {
        let mut report = Report::new(format!("witt-identities n={}", self.n));
        let zero = Multivector::zero(self.gens());
        for j in 1..=self.n {
            for k in 1..=self.n {
                let grass_f = &(self.f(j) * self.f(k)) + &(self.f(k) * self.f(j));
                report.check(format!("f_{j} f_{k} + f_{k} f_{j} = 0"), grass_f == zero);
                let grass_fd = &(self.fd(j) * self.fd(k)) + &(self.fd(k) * self.fd(j));
                report.check(format!("fd_{j} fd_{k} + fd_{k} fd_{j} = 0"), grass_fd == zero);
                let dual = &(self.f(j) * self.fd(k)) + &(self.fd(k) * self.f(j));
                let expected = if j == k {
                    Multivector::one(self.gens())
                } else {
                    zero.clone()
                };
                report.check(format!("f_{j} fd_{k} + fd_{k} f_{j} = d_{j}{k}"), dual == expected);
            }
            report.check(format!("f_{j}^2 = 0"), self.f(j) * self.f(j) == zero);
            report.check(format!("fd_{j}^2 = 0"), self.fd(j) * self.fd(j) == zero);
            report.check(format!("f_{j} I = 0"), self.f(j) * &self.idem == zero);
        }
        report.check("I I = I", &self.idem * &self.idem == self.idem);
        report.check("dagger(I) = I", self.idem.dagger() == self.idem);
        report
    }

    /// e_{2k−1} = f†_k − f_k and e_{2k} = (1/i)(f†_k + f_k), k = 1..n.
    pub fn reconstruction_identities(&self) -> Report {
        let mut report = Report::new(format!("witt-reconstruction n={}", self.n));
        let minus_i = -&Scalar::i(); // 1/i = −i
        for k in 1..=self.n {
            let odd = Multivector::generator(self.gens(), 2 * k - 1);
            let even = Multivector::generator(self.gens(), 2 * k);
            report.check(
                format!("fd_{k} - f_{k} = e{}", 2 * k - 1),
                (self.fd(k) - self.f(k)) == odd,
            );
            report.check(
                format!("(1/i)(fd_{k} + f_{k}) = e{}", 2 * k),
                (self.fd(k) + self.f(k)).scale(&minus_i) == even,
            );
        }
        report
    }
}

/// One spinor basis element f†_{j_1} ⋯ f†_{j_r} I with its index tuple and
/// squared norm.
#[derive(Clone, Debug)]
pub struct SpinorElem {
    pub indices: Vec<usize>,
    pub value: Multivector,
    norm_sq: Scalar,
}

impl SpinorElem {
    pub fn label(&self) -> String {
        if self.indices.is_empty() {
            "I".to_string()
        } else {
            let mut s = String::new();
            for j in &self.indices {
                s.push_str(&format!("fd{j} "));
            }
            s.push('I');
            s
        }
    }
}

/// The ordered exact basis of spinor space: elements grouped by homogeneous
/// degree r, lexicographic on index tuples within each group. The basis is
/// orthogonal for the Hermitian inner product, which makes coordinates a
/// handful of sparse dot products plus an exact residual check.
#[derive(Clone, Debug)]
pub struct SpinorBasis {
    n: usize,
    elements: Vec<SpinorElem>,
    r_offsets: Vec<usize>,
}

impl SpinorBasis {
    pub fn build(frame: &WittFrame) -> Result<SpinorBasis> {
        let n = frame.pairs();
        let mut elements = Vec::with_capacity(1 << n);
        let mut r_offsets = Vec::with_capacity(n + 2);
        for r in 0..=n {
            r_offsets.push(elements.len());
            for indices in subsets_lex(n, r) {
                let mut value = frame.idempotent().clone();
                for &j in indices.iter().rev() {
                    value = frame.fd(j) * &value;
                }
                let norm_sq = value.coef_dot(&value);
                if norm_sq.is_zero() {
                    return Err(Error::Construction(format!(
                        "spinor basis element {indices:?} is null"
                    )));
                }
                elements.push(SpinorElem { indices, value, norm_sq });
            }
        }
        r_offsets.push(elements.len());
        let basis = SpinorBasis { n, elements, r_offsets };
        for (a, ea) in basis.elements.iter().enumerate() {
            for eb in basis.elements.iter().skip(a + 1) {
                if !ea.value.coef_dot(&eb.value).is_zero() {
                    return Err(Error::Construction(format!(
                        "spinor basis not orthogonal: {:?} vs {:?}",
                        ea.indices, eb.indices
                    )));
                }
            }
        }
        Ok(basis)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SpinorElem] {
        &self.elements
    }

    pub fn r_dim(&self, r: usize) -> usize {
        self.r_offsets[r + 1] - self.r_offsets[r]
    }

    pub fn r_offset(&self, r: usize) -> usize {
        self.r_offsets[r]
    }

    pub fn by_r(&self, r: usize) -> &[SpinorElem] {
        &self.elements[self.r_offsets[r]..self.r_offsets[r + 1]]
    }

    /// Exact coordinates of x in the spinor basis. Errors (naming the
    /// offending blades) when x lies outside spinor space.
    pub fn coords(&self, x: &Multivector) -> Result<Vec<Scalar>> {
        if x.gens() != 2 * self.n {
            return Err(Error::DimensionMismatch { left: x.gens(), right: 2 * self.n });
        }
        let mut coords = Vec::with_capacity(self.elements.len());
        let mut residual = x.clone();
        for elem in &self.elements {
            let c = elem.value.coef_dot(&residual).div(&elem.norm_sq)?;
            if !c.is_zero() {
                residual = &residual - &elem.value.scale(&c);
            }
            coords.push(c);
        }
        if !residual.is_zero() {
            let blades = residual.terms().map(|(b, _)| b.to_string()).collect();
            return Err(Error::NotInSpinorSpace { blades });
        }
        Ok(coords)
    }

    pub fn from_coords(&self, coords: &[Scalar]) -> Multivector {
        assert_eq!(coords.len(), self.elements.len());
        let mut out = Multivector::zero(2 * self.n);
        for (c, elem) in coords.iter().zip(&self.elements) {
            if !c.is_zero() {
                out = &out + &elem.value.scale(c);
            }
        }
        out
    }

    /// Coordinates restricted to the homogeneous block 𝕊^r; errors when x has
    /// components outside that block.
    pub fn coords_in_r(&self, x: &Multivector, r: usize) -> Result<Vec<Scalar>> {
        let full = self.coords(x)?;
        let (lo, hi) = (self.r_offsets[r], self.r_offsets[r + 1]);
        for (idx, c) in full.iter().enumerate() {
            if !c.is_zero() && !(lo..hi).contains(&idx) {
                return Err(Error::Construction(format!(
                    "multivector has spinor components outside S^{r}"
                )));
            }
        }
        Ok(full[lo..hi].to_vec())
    }

    pub fn from_r_coords(&self, r: usize, coords: &[Scalar]) -> Multivector {
        assert_eq!(coords.len(), self.r_dim(r));
        let mut out = Multivector::zero(2 * self.n);
        for (c, elem) in coords.iter().zip(self.by_r(r)) {
            if !c.is_zero() {
                out = &out + &elem.value.scale(c);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(gens: usize, j: usize) -> Multivector {
        Multivector::generator(gens, j)
    }

    #[test]
    fn witt_vectors_have_stated_form() {
        let frame = WittFrame::build(1).unwrap();
        let half = Scalar::from_ratio(1, 2);
        let half_i = &half * &Scalar::i();
        // f†_1 = ½(e1 + i e2)
        let expected_fd = &gen(2, 1).scale(&half) + &gen(2, 2).scale(&half_i);
        assert_eq!(frame.fd(1), &expected_fd);
        // I = ½(1 − i e1 e2)
        let mut expected_i = Multivector::one(2);
        expected_i.add_term(Blade::from_indices(&[1, 2]), -&Scalar::i());
        assert_eq!(frame.idempotent(), &expected_i.scale(&half));
    }

    #[test]
    fn f_annihilates_idempotent() {
        for n in 1..=4 {
            let frame = WittFrame::build(n).unwrap();
            for j in 1..=n {
                assert!((frame.f(j) * frame.idempotent()).is_zero());
            }
        }
    }

    #[test]
    fn identities_exhaustive_up_to_n6() {
        for n in 1..=6 {
            let frame = WittFrame::build(n).unwrap();
            let report = frame.identities_report();
            assert!(report.passed(), "n={n}: {report}");
        }
    }

    #[test]
    fn reconstruction_identities_hold() {
        for n in [2usize, 4] {
            let frame = WittFrame::build(n).unwrap();
            let report = frame.reconstruction_identities();
            assert!(report.passed(), "{report}");
            assert_eq!(report.checks.len(), 2 * n);
        }
        // explicit instances
        let frame = WittFrame::build(2).unwrap();
        assert_eq!(&(frame.fd(1) - frame.f(1)), &gen(4, 1));
        assert_eq!(
            (frame.fd(2) + frame.f(2)).scale(&-&Scalar::i()),
            gen(4, 4)
        );
    }

    #[test]
    fn spinor_basis_dimensions() {
        let frame = WittFrame::build(4).unwrap();
        let basis = SpinorBasis::build(&frame).unwrap();
        assert_eq!(basis.dim(), 16);
        for r in 0..=4 {
            assert_eq!(basis.r_dim(r), binomial(4, r));
        }
        assert_eq!(basis.by_r(0)[0].value, *frame.idempotent());
        let labels: Vec<String> = basis.by_r(1).iter().map(|e| e.label()).collect();
        assert_eq!(labels, vec!["fd1 I", "fd2 I", "fd3 I", "fd4 I"]);
        assert_eq!(basis.by_r(4).len(), 1);
        assert_eq!(basis.by_r(4)[0].indices, vec![1, 2, 3, 4]);
    }

    #[test]
    fn elements_lie_in_left_ideal() {
        let frame = WittFrame::build(3).unwrap();
        let basis = SpinorBasis::build(&frame).unwrap();
        for e in basis.elements() {
            assert_eq!(&e.value * frame.idempotent(), e.value, "{}", e.label());
        }
    }

    #[test]
    fn coords_round_trip_and_linearity() {
        let frame = WittFrame::build(2).unwrap();
        let basis = SpinorBasis::build(&frame).unwrap();
        let x = &basis.by_r(1)[0].value.scale(&Scalar::from_int(2))
            + &basis.by_r(1)[1].value.scale(&Scalar::i());
        let coords = basis.coords(&x).unwrap();
        let mut expected = vec![Scalar::zero(); 4];
        expected[1] = Scalar::from_int(2);
        expected[2] = Scalar::i();
        assert_eq!(coords, expected);
        assert_eq!(basis.from_coords(&coords), x);
        let idem_coords = basis.coords(frame.idempotent()).unwrap();
        assert_eq!(idem_coords[0], Scalar::one());
        assert!(idem_coords[1..].iter().all(Scalar::is_zero));
    }

    #[test]
    fn raw_generator_is_not_in_spinor_space() {
        let frame = WittFrame::build(1).unwrap();
        let basis = SpinorBasis::build(&frame).unwrap();
        let err = basis.coords(&gen(2, 1)).unwrap_err();
        assert!(matches!(err, Error::NotInSpinorSpace { .. }), "{err}");
    }

    #[test]
    fn witt_multiplication_shifts_degree() {
        // left multiplication by f†_j raises r by one, by f_j lowers it
        let frame = WittFrame::build(3).unwrap();
        let basis = SpinorBasis::build(&frame).unwrap();
        for e in basis.elements() {
            let r = e.indices.len();
            for j in 1..=3 {
                let up = frame.fd(j) * &e.value;
                if !up.is_zero() {
                    assert!(basis.coords_in_r(&up, r + 1).is_ok());
                }
                let down = frame.f(j) * &e.value;
                if !down.is_zero() {
                    assert!(basis.coords_in_r(&down, r - 1).is_ok());
                }
            }
        }
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(
            subsets_lex(4, 2),
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![2, 3],
                vec![2, 4],
                vec![3, 4]
            ]
        );
        assert_eq!(subsets_lex(3, 0), vec![Vec::<usize>::new()]);
    }
}
