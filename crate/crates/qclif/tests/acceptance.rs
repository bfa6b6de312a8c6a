//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Everything is exact — zero numerical tolerance anywhere.
//!
//! Run with: cargo test --test acceptance -- --nocapture

use qclif::cells::{alpha, CellTable};
use qclif::operators::{conversion_check, pq_commutator_check, OperatorSet};
use qclif::scalar::Scalar;
use qclif::structures::{double_cover_check, SpinElement, StructureMap};
use qclif::systems::{
    constancy_check, golden_section7, proposition_checks, theorem_main_check,
};
use qclif::verify::{algebra_suite, triangle_suite, witt_suite};
use qclif::witt::{binomial, WittFrame};

fn conclude(criterion: usize, description: &str, pass: bool) {
    println!(
        "ACCEPTANCE {criterion} {}: {description}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {description}");
}

#[test]
fn criterion_01_algebra_axioms() {
    let report = algebra_suite(0);
    conclude(
        1,
        "generator relations for m <= 12 and associativity on 200 random triples",
        report.passed(),
    );
}

#[test]
fn criterion_02_witt_identities() {
    let report = witt_suite(6).unwrap();
    conclude(
        2,
        "Grassmann, isotropy, duality and f_j I = 0, exhaustive for n = 1..6",
        report.passed(),
    );
}

#[test]
fn criterion_03_double_cover() {
    let mut pass = true;
    for p in 1..=3 {
        let s_i = SpinElement::new_i(2 * p).unwrap();
        let s_j = SpinElement::new_j(p).unwrap();
        pass &= double_cover_check(&s_i, &StructureMap::new_i(2 * p)).passed();
        pass &= double_cover_check(&s_j, &StructureMap::new_j(p)).passed();
    }
    conclude(
        3,
        "s_I and s_J conjugation reproduce I and J on every generator, p = 1..3",
        pass,
    );
}

#[test]
fn criterion_04_cell_structure() {
    let mut pass = true;
    for p in 1..=3usize {
        let frame = WittFrame::build(2 * p).unwrap();
        let table = CellTable::build(&frame).unwrap();
        for r in 0..=2 * p {
            let total: usize = table
                .cells()
                .filter(|((cr, _), _)| *cr == r)
                .map(|(_, c)| c.dim())
                .sum();
            pass &= total == binomial(2 * p, r);
        }
        // PQ and QP act as the stated scalars on every cell basis vector
        for (&(r, s), cell) in table.cells() {
            let k = (r - s) / 2;
            let pq_scalar = if r == 2 * p - s { 0 } else { alpha(p, s, k) };
            let qp_scalar = if r == s { 0 } else { alpha(p, s, k - 1) };
            for v in cell.vectors() {
                let pq = table.p_op() * &(table.q_op() * v);
                pass &= pq == v.scale(&Scalar::from_int(pq_scalar));
                let qp = table.q_op() * &(table.p_op() * v);
                pass &= qp == v.scale(&Scalar::from_int(qp_scalar));
            }
        }
    }
    conclude(
        4,
        "cell dimensions tile C(2p, r) and PQ/QP act as alpha_r^k, p = 1..3",
        pass,
    );
}

#[test]
fn criterion_05_p2_triangle() {
    let report = triangle_suite().unwrap();
    conclude(
        5,
        "p = 2 triangle dimensions and exact span equality with the listed bases",
        report.passed(),
    );
}

#[test]
fn criterion_06_conversions_and_laplacian() {
    let report = conversion_check(2, 3).unwrap();
    conclude(
        6,
        "operator conversions and d d = -Laplacian on all monomials of degree <= 3, p = 2",
        report.passed(),
    );
}

#[test]
fn criterion_07_commutators() {
    let report = pq_commutator_check(2, 2).unwrap();
    conclude(
        7,
        "the eight P/Q commutation relations on all degree <= 2 monomial fields, p = 2",
        report.passed(),
    );
}

#[test]
fn criterion_08_golden_systems() {
    let frame = WittFrame::build(4).unwrap();
    let table = CellTable::build(&frame).unwrap();
    let set = OperatorSet::build(2).unwrap();
    let report = golden_section7(&table, &set).unwrap();
    conclude(
        8,
        "emitted systems match the transcribed equation sets (full and split) for all six cells",
        report.passed(),
    );
}

#[test]
fn criterion_09_stein_weiss_kernels() {
    let mut pass = true;
    for p in [1usize, 2] {
        pass &= theorem_main_check(p, 2).unwrap().passed();
    }
    conclude(
        9,
        "q-monogenic kernels equal gradient-set kernels with swap independence, p in {1,2}, degree <= 2",
        pass,
    );
}

#[test]
fn criterion_10_constancy() {
    let report = constancy_check(3).unwrap();
    conclude(
        10,
        "q-monogenic kernels on (0,0), (2,0), (4,0) have dimension exactly 1 at degree <= 3",
        report.passed(),
    );
}

#[test]
fn criterion_11_propositions() {
    let report = proposition_checks(2, 0).unwrap();
    conclude(
        11,
        "quartet equivalence, componentwise q-monogenicity, P/Q stability, kernel relations with witnesses",
        report.passed(),
    );
}
