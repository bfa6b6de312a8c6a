//! The operators P, Q and the symplectic-cell decomposition of spinor space.
//!
//! For n = 2p the left multiplications P = f_2f_1 + … + f_{2p}f_{2p−1} and
//! Q = f†_1f†_2 + … = P† shift the homogeneous degree by ∓2. The cells are
//! S^r_r = Ker P|_{S^r} and S^{r+2k}_r = Q^k S^r_r; the same spaces arise from
//! Ker Q|_{S^{2p−r}} under powers of P, which is verified here as an exact
//! change of basis on every cell. PQ and QP act on each cell as the scalars
//! α_r^k = (k+1)(p−r−k); any failure of those identities aborts construction,
//! since it can only mean a convention bug upstream.
//!
//! Cell bases are generated bottom-up from the kernels with deterministic
//! pivoting, and the vectors produced by Q^k are kept exactly as produced (no
//! re-normalization), so listings are reproducible.

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::linalg::{span_dim, spans_equal, Matrix};
use crate::scalar::Scalar;
use crate::witt::{SpinorBasis, WittFrame};
use std::collections::BTreeMap;

/// Builds P and Q; requires n = 2p pairs. Q = dagger(P) is verified.
pub fn build_pq(frame: &WittFrame) -> Result<(Multivector, Multivector)> {
    let n = frame.pairs();
    if n % 2 != 0 {
        return Err(Error::Construction(format!(
            "P and Q need an even pair count, got n = {n}"
        )));
    }
    let p = n / 2;
    let gens = frame.gens();
    let mut p_op = Multivector::zero(gens);
    let mut q_op = Multivector::zero(gens);
    for j in 1..=p {
        p_op = &p_op + &(frame.f(2 * j) * frame.f(2 * j - 1));
        q_op = &q_op + &(frame.fd(2 * j - 1) * frame.fd(2 * j));
    }
    if q_op != p_op.dagger() {
        return Err(Error::Construction("Q != dagger(P)".into()));
    }
    Ok((p_op, q_op))
}

/// An ordered exact basis of one symplectic cell S^r_s, together with its
/// coordinates in the homogeneous block S^r.
#[derive(Clone, Debug)]
pub struct CellBasis {
    pub r: usize,
    pub s: usize,
    vectors: Vec<Multivector>,
    coords: Vec<Vec<Scalar>>,
}

impl CellBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Multivector] {
        &self.vectors
    }

    pub fn coords(&self) -> &[Vec<Scalar>] {
        &self.coords
    }
}

/// The full cell decomposition for one p, with exact projectors.
#[derive(Clone, Debug)]
pub struct CellTable {
    p: usize,
    frame: WittFrame,
    basis: SpinorBasis,
    p_op: Multivector,
    q_op: Multivector,
    cells: BTreeMap<(usize, usize), CellBasis>,
    /// Per homogeneous degree r: the cells (r, s) in ascending s and the
    /// inverse of the stacked coordinate matrix (homogeneous coordinates →
    /// concatenated cell coefficients).
    row_solvers: BTreeMap<usize, (Vec<(usize, usize)>, Matrix)>,
}

/// α_r^k = (k+1)(p−r−k) of the ladder identities.
pub fn alpha(p: usize, r: usize, k: usize) -> i64 {
    (k as i64 + 1) * (p as i64 - r as i64 - k as i64)
}

impl CellTable {
    pub fn build(frame: &WittFrame) -> Result<CellTable> {
        let n = frame.pairs();
        let (p_op, q_op) = build_pq(frame)?;
        let p = n / 2;
        let basis = SpinorBasis::build(frame)?;

        let mut cells: BTreeMap<(usize, usize), CellBasis> = BTreeMap::new();
        for s in 0..=p {
            let kernel = kernel_of_shift(&basis, &p_op, s, false)?;
            let mut vectors: Vec<Multivector> =
                kernel.iter().map(|c| basis.from_r_coords(s, c)).collect();
            cells.insert((s, s), CellBasis { r: s, s, vectors: vectors.clone(), coords: kernel });
            for k in 1..=(p - s) {
                let r = s + 2 * k;
                vectors = vectors.iter().map(|v| &q_op * v).collect();
                let coords: Result<Vec<Vec<Scalar>>> =
                    vectors.iter().map(|v| basis.coords_in_r(v, r)).collect();
                let coords = coords?;
                if span_dim(&coords) != coords.len() {
                    return Err(Error::Construction(format!(
                        "Q^{k} is not injective on S^{s}_{s}"
                    )));
                }
                cells.insert((r, s), CellBasis { r, s, vectors: vectors.clone(), coords });
            }
        }

        let mut row_solvers = BTreeMap::new();
        for r in 0..=(2 * p) {
            let members: Vec<(usize, usize)> =
                cells.keys().copied().filter(|&(cr, _)| cr == r).collect();
            let mut columns: Vec<Vec<Scalar>> = Vec::new();
            for key in &members {
                columns.extend(cells[key].coords.iter().cloned());
            }
            let dim = basis.r_dim(r);
            if columns.len() != dim {
                return Err(Error::Construction(format!(
                    "cells of S^{r} have total dimension {} != C(2p, r) = {dim}",
                    columns.len()
                )));
            }
            let stacked = Matrix::from_columns(&columns);
            let Some(inverse) = stacked.inverse() else {
                return Err(Error::Construction(format!(
                    "cells of S^{r} do not form a direct sum"
                )));
            };
            row_solvers.insert(r, (members, inverse));
        }

        let table = CellTable { p, frame: frame.clone(), basis, p_op, q_op, cells, row_solvers };
        table.verify_ladder()?;
        table.verify_right_route()?;
        Ok(table)
    }

    /// PQ = α_s^k on S^{s+2k}_s (zero on the right edge) and QP = α_s^{k−1}
    /// (zero on the left edge), checked on every basis vector.
    fn verify_ladder(&self) -> Result<()> {
        let p = self.p;
        for (&(r, s), cell) in &self.cells {
            let k = (r - s) / 2;
            let pq_scalar = if r == 2 * p - s { 0 } else { alpha(p, s, k) };
            let qp_scalar = if r == s { 0 } else { alpha(p, s, k - 1) };
            for (idx, v) in cell.vectors.iter().enumerate() {
                let pq = &self.p_op * &(&self.q_op * v);
                if pq != v.scale(&Scalar::from_int(pq_scalar)) {
                    return Err(Error::Construction(format!(
                        "PQ != {pq_scalar} on S^{r}_{s} basis vector {idx}"
                    )));
                }
                let qp = &self.q_op * &(&self.p_op * v);
                if qp != v.scale(&Scalar::from_int(qp_scalar)) {
                    return Err(Error::Construction(format!(
                        "QP != {qp_scalar} on S^{r}_{s} basis vector {idx}"
                    )));
                }
            }
        }
        // α symmetry (k+1)(p−r−k) = α_r^{p−r−k−1}
        for r in 0..=p {
            for k in 0..(p - r) {
                if alpha(p, r, k) != alpha(p, r, p - r - k - 1) {
                    return Err(Error::Construction("alpha symmetry failed".into()));
                }
            }
        }
        Ok(())
    }

    /// The mirrored construction: Ker Q on S^{2p−s} and its P^k images span
    /// the same cells (an exact change of basis on every overlap).
    fn verify_right_route(&self) -> Result<()> {
        let p = self.p;
        for s in 0..=p {
            let kernel = kernel_of_shift(&self.basis, &self.q_op, 2 * p - s, true)?;
            let mut vectors: Vec<Multivector> = kernel
                .iter()
                .map(|c| self.basis.from_r_coords(2 * p - s, c))
                .collect();
            let mut coords = kernel;
            for k in 0..=(p - s) {
                let r = 2 * p - s - 2 * k;
                if !spans_equal(&coords, self.cells[&(r, s)].coords()) {
                    return Err(Error::Construction(format!(
                        "P^{k} Ker Q|_S^{} does not span S^{r}_{s}",
                        2 * p - s
                    )));
                }
                if k < p - s {
                    vectors = vectors.iter().map(|v| &self.p_op * v).collect();
                    coords = vectors
                        .iter()
                        .map(|v| self.basis.coords_in_r(v, r - 2))
                        .collect::<Result<_>>()?;
                }
            }
        }
        Ok(())
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn frame(&self) -> &WittFrame {
        &self.frame
    }

    pub fn basis(&self) -> &SpinorBasis {
        &self.basis
    }

    pub fn p_op(&self) -> &Multivector {
        &self.p_op
    }

    pub fn q_op(&self) -> &Multivector {
        &self.q_op
    }

    pub fn is_cell(&self, r: usize, s: usize) -> bool {
        self.cells.contains_key(&(r, s))
    }

    pub fn cell(&self, r: usize, s: usize) -> Result<&CellBasis> {
        self.cells
            .get(&(r, s))
            .ok_or(Error::InvalidCell { p: self.p, r, s })
    }

    pub fn cells(&self) -> impl Iterator<Item = (&(usize, usize), &CellBasis)> {
        self.cells.iter()
    }

    pub fn cell_keys(&self) -> Vec<(usize, usize)> {
        self.cells.keys().copied().collect()
    }

    pub fn cells_for_r(&self, r: usize) -> &[(usize, usize)] {
        &self.row_solvers[&r].0
    }

    /// Splits x ∈ 𝕊 into its cell components; their sum reproduces x.
    pub fn decompose(&self, x: &Multivector) -> Result<BTreeMap<(usize, usize), Multivector>> {
        let mut out = BTreeMap::new();
        for ((r, s), coeffs) in self.decompose_coords(x)? {
            let cell = &self.cells[&(r, s)];
            let mut part = Multivector::zero(x.gens());
            for (c, v) in coeffs.iter().zip(cell.vectors()) {
                if !c.is_zero() {
                    part = &part + &v.scale(c);
                }
            }
            if !part.is_zero() {
                out.insert((r, s), part);
            }
        }
        Ok(out)
    }

    /// Exact coefficients of x with respect to every cell basis.
    pub fn decompose_coords(
        &self,
        x: &Multivector,
    ) -> Result<BTreeMap<(usize, usize), Vec<Scalar>>> {
        let full = self.basis.coords(x)?;
        let mut out = BTreeMap::new();
        for r in 0..=(2 * self.p) {
            let lo = self.basis.r_offset(r);
            let block = &full[lo..lo + self.basis.r_dim(r)];
            if block.iter().all(Scalar::is_zero) {
                continue;
            }
            let (members, inverse) = &self.row_solvers[&r];
            let cell_coeffs = inverse.matvec(block);
            let mut offset = 0;
            for &key in members {
                let dim = self.cells[&key].dim();
                out.insert(key, cell_coeffs[offset..offset + dim].to_vec());
                offset += dim;
            }
        }
        Ok(out)
    }

    /// The unique component of x in S^r_s (zero when x has none).
    pub fn project(&self, x: &Multivector, r: usize, s: usize) -> Result<Multivector> {
        if !self.is_cell(r, s) {
            return Err(Error::InvalidCell { p: self.p, r, s });
        }
        Ok(self
            .decompose(x)?
            .remove(&(r, s))
            .unwrap_or_else(|| Multivector::zero(x.gens())))
    }
}

/// Kernel of a degree-shifting left multiplication restricted to S^r.
/// `raises` selects the target block: S^{r+2} for Q, S^{r−2} for P. When the
/// target does not exist the operator must vanish on the block and the
/// kernel is the identity in basis order.
fn kernel_of_shift(
    basis: &SpinorBasis,
    op: &Multivector,
    r: usize,
    raises: bool,
) -> Result<Vec<Vec<Scalar>>> {
    let dim = basis.r_dim(r);
    let images: Vec<Multivector> = basis.by_r(r).iter().map(|e| op * &e.value).collect();
    let target_exists = if raises { r + 2 <= basis.n() } else { r >= 2 };
    if !target_exists {
        for (j, img) in images.iter().enumerate() {
            if !img.is_zero() {
                return Err(Error::Construction(format!(
                    "shift operator does not annihilate S^{r} basis vector {j}"
                )));
            }
        }
        return Ok((0..dim)
            .map(|j| {
                let mut v = vec![Scalar::zero(); dim];
                v[j] = Scalar::one();
                v
            })
            .collect());
    }
    let target = if raises { r + 2 } else { r - 2 };
    let columns: Vec<Vec<Scalar>> = images
        .iter()
        .map(|img| basis.coords_in_r(img, target))
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(&columns).kernel_basis())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::binomial;

    fn table(p: usize) -> CellTable {
        let frame = WittFrame::build(2 * p).unwrap();
        CellTable::build(&frame).unwrap()
    }

    #[test]
    fn pq_definitions_p1() {
        let frame = WittFrame::build(2).unwrap();
        let (p_op, q_op) = build_pq(&frame).unwrap();
        assert_eq!(p_op, frame.f(2) * frame.f(1));
        assert_eq!(q_op, frame.fd(1) * frame.fd(2));
        assert_eq!(q_op, p_op.dagger());
    }

    #[test]
    fn pq_rejects_odd_pair_count() {
        let frame = WittFrame::build(3).unwrap();
        assert!(build_pq(&frame).is_err());
    }

    #[test]
    fn q_on_idempotent_p2() {
        let frame = WittFrame::build(4).unwrap();
        let (_, q_op) = build_pq(&frame).unwrap();
        let qi = &q_op * frame.idempotent();
        let expected = &(&(frame.fd(1) * frame.fd(2)) + &(frame.fd(3) * frame.fd(4)))
            * frame.idempotent();
        assert_eq!(qi, expected);
    }

    #[test]
    fn p2_dimensions_match_triangle() {
        let t = table(2);
        let dims: Vec<((usize, usize), usize)> =
            t.cells().map(|(k, c)| (*k, c.dim())).collect();
        assert_eq!(
            dims,
            vec![
                ((0, 0), 1),
                ((1, 1), 4),
                ((2, 0), 1),
                ((2, 2), 5),
                ((3, 1), 4),
                ((4, 0), 1)
            ]
        );
    }

    #[test]
    fn pq_acts_as_two_on_bottom_cell_p2() {
        let t = table(2);
        let idem = t.frame().idempotent().clone();
        let pq = t.p_op() * &(t.q_op() * &idem);
        assert_eq!(pq, idem.scale(&Scalar::from_int(2)));
        assert_eq!(alpha(2, 0, 0), 2);
    }

    #[test]
    fn s22_basis_matches_listing() {
        let t = table(2);
        let frame = t.frame();
        let idem = frame.idempotent();
        let pure = |a: usize, b: usize| &(frame.fd(a) * frame.fd(b)) * idem;
        let cell = t.cell(2, 2).unwrap();
        assert_eq!(cell.vectors()[0], pure(1, 3));
        assert_eq!(cell.vectors()[1], pure(1, 4));
        assert_eq!(cell.vectors()[2], pure(2, 3));
        assert_eq!(cell.vectors()[3], pure(2, 4));
        assert_eq!(cell.vectors()[4], &pure(1, 2) - &pure(3, 4));
    }

    #[test]
    fn s31_basis_is_q_image_order() {
        let t = table(2);
        let frame = t.frame();
        let idem = frame.idempotent();
        let triple = |a: usize, b: usize, c: usize| {
            &(frame.fd(a) * &(frame.fd(b) * frame.fd(c))) * idem
        };
        let cell = t.cell(3, 1).unwrap();
        assert_eq!(cell.vectors()[0], triple(1, 3, 4));
        assert_eq!(cell.vectors()[1], triple(2, 3, 4));
        assert_eq!(cell.vectors()[2], triple(1, 2, 3));
        assert_eq!(cell.vectors()[3], triple(1, 2, 4));
    }

    #[test]
    fn projection_splits_f12() {
        let t = table(2);
        let frame = t.frame();
        let x = &(frame.fd(1) * frame.fd(2)) * frame.idempotent();
        let half = Scalar::from_ratio(1, 2);
        let plus = t.cell(2, 0).unwrap().vectors()[0].scale(&half);
        let minus = t.cell(2, 2).unwrap().vectors()[4].scale(&half);
        assert_eq!(t.project(&x, 2, 0).unwrap(), plus);
        assert_eq!(t.project(&x, 2, 2).unwrap(), minus);
        let parts = t.decompose(&x).unwrap();
        assert_eq!(parts.len(), 2);
        let sum = parts.values().fold(Multivector::zero(8), |acc, v| &acc + v);
        assert_eq!(sum, x);
    }

    #[test]
    fn projection_is_idempotent_and_rejects_bad_cells() {
        let t = table(2);
        let x = t.frame().idempotent().clone();
        let once = t.project(&x, 0, 0).unwrap();
        assert_eq!(once, x);
        let twice = t.project(&once, 0, 0).unwrap();
        assert_eq!(twice, once);
        assert!(t.project(&x, 1, 0).is_err());
        for &(r, s) in t.cell_keys().iter().skip(1) {
            assert!(t.project(&x, r, s).unwrap().is_zero());
        }
    }

    #[test]
    fn tiling_and_rows_p1_to_p3() {
        for p in 1..=3 {
            let t = table(p);
            for r in 0..=(2 * p) {
                let total: usize = t
                    .cells()
                    .filter(|((cr, _), _)| *cr == r)
                    .map(|(_, c)| c.dim())
                    .sum();
                assert_eq!(total, binomial(2 * p, r), "p={p} r={r}");
            }
            for s in 0..=p {
                let dims: Vec<usize> = t
                    .cells()
                    .filter(|((_, cs), _)| *cs == s)
                    .map(|(_, c)| c.dim())
                    .collect();
                assert!(dims.windows(2).all(|w| w[0] == w[1]), "row {s} of p={p}: {dims:?}");
            }
        }
    }

    #[test]
    fn global_kernels_tile_edges() {
        // Ker P|_S = ⊕ S^r_r and Ker Q|_S = ⊕ S^{2p−r}_r, by dimension count
        // and membership.
        for p in 1..=3usize {
            let t = table(p);
            let mut ker_p_dim = 0;
            let mut ker_q_dim = 0;
            for (&(r, s), cell) in t.cells() {
                if r == s {
                    ker_p_dim += cell.dim();
                    for v in cell.vectors() {
                        assert!((t.p_op() * v).is_zero());
                    }
                }
                if r == 2 * p - s {
                    ker_q_dim += cell.dim();
                    for v in cell.vectors() {
                        assert!((t.q_op() * v).is_zero());
                    }
                }
            }
            // rank-nullity over all of S against the full P / Q action
            let basis = t.basis();
            let dim_s = basis.dim();
            let p_rank = span_dim(
                &basis
                    .elements()
                    .iter()
                    .map(|e| basis.coords(&(t.p_op() * &e.value)).unwrap())
                    .collect::<Vec<_>>(),
            );
            let q_rank = span_dim(
                &basis
                    .elements()
                    .iter()
                    .map(|e| basis.coords(&(t.q_op() * &e.value)).unwrap())
                    .collect::<Vec<_>>(),
            );
            assert_eq!(ker_p_dim, dim_s - p_rank);
            assert_eq!(ker_q_dim, dim_s - q_rank);
        }
    }
}
