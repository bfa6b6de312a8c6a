//! The full verification battery behind `qclif verify`: algebra axioms, Witt
//! identities, structure maps and double covers, cell construction, operator
//! conversions and commutators, the golden p = 2 systems, and the kernel
//! equalities with the realized gradient sets.

use crate::cells::CellTable;
use crate::clifford::{Blade, Multivector};
use crate::error::Result;
use crate::fields::check_degree;
use crate::operators::{conversion_check, pq_commutator_check, OperatorSet};
use crate::report::Report;
use crate::scalar::{rat, Scalar};
use crate::structures::{double_cover_check, structure_on_witt, SpinElement, StructureMap};
use crate::systems::{
    constancy_check, golden_section7, proposition_checks, theorem_main_check,
};
use crate::witt::{binomial, SpinorBasis, WittFrame};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub p: usize,
    pub degree: u32,
    pub seed: u64,
    /// Restrict to the Witt suite (`--witt`), using `n` pairs.
    pub witt_only: Option<usize>,
    /// Restrict to the structure suite (`--structures`).
    pub structures_only: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { p: 2, degree: 2, seed: 0, witt_only: None, structures_only: false }
    }
}

fn random_multivector(rng: &mut ChaCha8Rng, gens: usize, terms: usize) -> Multivector {
    let mut m = Multivector::zero(gens);
    for _ in 0..terms {
        let bits = rng.gen_range(0..(1u32 << gens));
        let num = rng.gen_range(-9i64..=9);
        let den = rng.gen_range(1i64..=4);
        let kind = rng.gen_range(0..4);
        let q = rat(num, den);
        let coeff = match kind {
            0 => Scalar::from_rational(q),
            1 => Scalar::imaginary(q),
            2 => Scalar::new(rat(0, 1), rat(0, 1), q, rat(0, 1)),
            _ => Scalar::new(rat(0, 1), rat(0, 1), rat(0, 1), q),
        };
        m.add_term(Blade(bits), coeff);
    }
    m
}

/// Generator relations e_α e_β + e_β e_α = −2δ_{αβ} for all pairs up to
/// m = 12, plus associativity on seeded random sparse triples.
pub fn algebra_suite(seed: u64) -> Report {
    let mut report = Report::new("algebra");
    let mut all_pairs = true;
    for m in 1..=12usize {
        for a in 1..=m {
            for b in 1..=m {
                let ea = Multivector::generator(m, a);
                let eb = Multivector::generator(m, b);
                let anti = &(&ea * &eb) + &(&eb * &ea);
                let expected = if a == b {
                    Multivector::from_scalar(m, Scalar::from_int(-2))
                } else {
                    Multivector::zero(m)
                };
                if anti != expected {
                    all_pairs = false;
                }
            }
        }
    }
    report.check("e_a e_b + e_b e_a = -2 delta_ab for all pairs, m <= 12", all_pairs);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut associative = true;
    for _ in 0..200 {
        let gens = rng.gen_range(2..=10usize);
        let x = random_multivector(&mut rng, gens, 5);
        let y = random_multivector(&mut rng, gens, 5);
        let z = random_multivector(&mut rng, gens, 5);
        if &(&x * &y) * &z != &x * &(&y * &z) {
            associative = false;
        }
    }
    report.check("associativity on 200 random sparse triples", associative);
    report.merge(crate::clifford::verify_quaternion_embeddings());
    report
}

/// Witt identities (Grassmann, isotropy, duality, f_j I = 0) exhaustively for
/// n = 1..6, plus the generator reconstruction identities.
pub fn witt_suite(max_n: usize) -> Result<Report> {
    let mut report = Report::new("witt");
    for n in 1..=max_n {
        let frame = WittFrame::build(n)?;
        let idents = frame.identities_report();
        report.check_with(
            format!("n={n}: Grassmann/duality/idempotent identities"),
            idents.passed(),
            format!("{} checks", idents.checks.len()),
        );
        let recon = frame.reconstruction_identities();
        report.check_with(
            format!("n={n}: generator reconstruction from Witt vectors"),
            recon.passed(),
            format!("{} checks", recon.checks.len()),
        );
        let basis = SpinorBasis::build(&frame)?;
        let dims_ok = (0..=n).all(|r| basis.r_dim(r) == binomial(n, r))
            && basis.dim() == 1 << n;
        report.check(format!("n={n}: dim S^r = C(n,r), total 2^n"), dims_ok);
    }
    Ok(report)
}

/// Structure maps, spin elements and double covers for p = 1..3.
pub fn structure_suite(max_p: usize, seed: u64) -> Result<Report> {
    let mut report = Report::new("structures");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5157);
    for p in 1..=max_p {
        let i = StructureMap::new_i(2 * p);
        let j = StructureMap::new_j(p);
        let k = StructureMap::new_k(p);
        report.check(
            format!("p={p}: I^2 = J^2 = K^2 = -id"),
            i.squares_to_minus_identity()
                && j.squares_to_minus_identity()
                && k.squares_to_minus_identity(),
        );
        report.check(
            format!("p={p}: IJ = -JI = K and pairwise anticommutation"),
            i.anticommutes_with(&j)
                && i.anticommutes_with(&k)
                && j.anticommutes_with(&k)
                && i.then(&j).apply(&Multivector::generator(4 * p, 1))?
                    == k.apply(&Multivector::generator(4 * p, 1))?,
        );
        report.check(
            format!("p={p}: structures are orthogonal signed permutations"),
            i.is_orthogonal() && j.is_orthogonal() && k.is_orthogonal(),
        );
        let s_i = SpinElement::new_i(2 * p)?;
        let s_j = SpinElement::new_j(p)?;
        let dc_i = double_cover_check(&s_i, &i);
        report.check_with(
            format!("p={p}: s_I conjugation realizes I on every generator"),
            dc_i.passed(),
            format!("{} generators", dc_i.checks.len()),
        );
        let dc_j = double_cover_check(&s_j, &j);
        report.check_with(
            format!("p={p}: s_J conjugation realizes J on every generator"),
            dc_j.passed(),
            format!("{} generators", dc_j.checks.len()),
        );
        let frame = WittFrame::build(2 * p)?;
        let on_witt = structure_on_witt(&j, &frame)?;
        report.check_with(
            format!("p={p}: J action on Witt vectors and I eigenvalues"),
            on_witt.passed(),
            format!("{} identities", on_witt.checks.len()),
        );
        // conjugation by the spin elements preserves grade and Euclidean norm
        // of real 1-vectors
        let mut preserved = true;
        for _ in 0..8 {
            let mut x = Multivector::zero(4 * p);
            for alpha in 1..=4 * p {
                x.add_term(
                    Blade::from_indices(&[alpha]),
                    Scalar::from_rational(rat(rng.gen_range(-5i64..=5), 1)),
                );
            }
            for s in [&s_i, &s_j] {
                let y = s.conjugate(&x);
                if !(y.is_vector()
                    && y.hermitian_inner(&y)? == x.hermitian_inner(&x)?)
                {
                    preserved = false;
                }
            }
        }
        report.check(
            format!("p={p}: spin conjugation preserves grade and norm of vectors"),
            preserved,
        );
    }
    Ok(report)
}

/// Cell construction for p = 1..max_p. Lemma-type ladder identities, the
/// dimension tiling and the mirrored construction are asserted inside
/// `CellTable::build`; this reports them plus the row-dimension pattern.
pub fn cells_suite(max_p: usize) -> Result<Report> {
    let mut report = Report::new("cells");
    for p in 1..=max_p {
        let frame = WittFrame::build(2 * p)?;
        let table = CellTable::build(&frame)?;
        report.check(
            format!("p={p}: cell table built (ladder scalars, tiling, mirrored route)"),
            true,
        );
        for r in 0..=2 * p {
            let total: usize = table
                .cells()
                .filter(|((cr, _), _)| *cr == r)
                .map(|(_, c)| c.dim())
                .sum();
            report.check(
                format!("p={p}: cells of S^{r} tile C({}, {r}) = {}", 2 * p, binomial(2 * p, r)),
                total == binomial(2 * p, r),
            );
        }
        for s in 0..=p {
            let dims: Vec<usize> = table
                .cells()
                .filter(|((_, cs), _)| *cs == s)
                .map(|(_, c)| c.dim())
                .collect();
            report.check(
                format!("p={p}: row s={s} cells share dimension {:?}", dims.first()),
                dims.windows(2).all(|w| w[0] == w[1]),
            );
        }
    }
    Ok(report)
}

/// The p = 2 triangle against the worked listings: dimensions and exact
/// span equality of the stated bases.
pub fn triangle_suite() -> Result<Report> {
    let mut report = Report::new("triangle-p2");
    let frame = WittFrame::build(4)?;
    let table = CellTable::build(&frame)?;
    let expected_dims = [((0, 0), 1), ((1, 1), 4), ((2, 0), 1), ((2, 2), 5), ((3, 1), 4), ((4, 0), 1)];
    for ((r, s), dim) in expected_dims {
        report.check(
            format!("dim S^{r}_{s} = {dim}"),
            table.cell(r, s).map(|c| c.dim()).unwrap_or(0) == dim,
        );
    }
    let idem = frame.idempotent();
    let fd = |a: usize| frame.fd(a).clone();
    let prod = |idx: &[usize]| -> Multivector {
        let mut acc = idem.clone();
        for &a in idx.iter().rev() {
            acc = &fd(a) * &acc;
        }
        acc
    };
    let listings: Vec<((usize, usize), Vec<Multivector>)> = vec![
        ((0, 0), vec![idem.clone()]),
        ((1, 1), vec![prod(&[1]), prod(&[2]), prod(&[3]), prod(&[4])]),
        ((2, 0), vec![&prod(&[1, 2]) + &prod(&[3, 4])]),
        (
            (2, 2),
            vec![
                prod(&[1, 3]),
                prod(&[1, 4]),
                prod(&[2, 3]),
                prod(&[2, 4]),
                &prod(&[1, 2]) - &prod(&[3, 4]),
            ],
        ),
        (
            (3, 1),
            vec![prod(&[1, 3, 4]), prod(&[2, 3, 4]), prod(&[1, 2, 3]), prod(&[1, 2, 4])],
        ),
        ((4, 0), vec![prod(&[1, 2, 3, 4])]),
    ];
    let basis = table.basis();
    for ((r, s), listed) in listings {
        let cell = table.cell(r, s)?;
        let mine: Vec<Vec<Scalar>> = cell.coords().to_vec();
        let theirs: Vec<Vec<Scalar>> = listed
            .iter()
            .map(|v| basis.coords_in_r(v, r))
            .collect::<Result<_>>()?;
        report.check(
            format!("S^{r}_{s} span matches the listed basis"),
            crate::linalg::spans_equal(&mine, &theirs),
        );
    }
    Ok(report)
}

/// Assembles the battery per config; any failed check makes `passed()` false.
pub fn run_battery(config: &VerifyConfig) -> Result<Vec<Report>> {
    check_degree(config.degree)?;
    if let Some(n) = config.witt_only {
        return Ok(vec![witt_suite(n)?]);
    }
    if config.structures_only {
        return Ok(vec![structure_suite(config.p.clamp(1, 3), config.seed)?]);
    }
    let p = config.p;
    let degree = config.degree;
    let kernel_degree = degree.min(2);
    let mut suites = vec![
        algebra_suite(config.seed),
        witt_suite(6)?,
        structure_suite(3, config.seed)?,
        cells_suite(3)?,
        triangle_suite()?,
        conversion_check(p, degree)?,
        pq_commutator_check(p, kernel_degree)?,
    ];
    {
        let frame = WittFrame::build(4)?;
        let table = CellTable::build(&frame)?;
        let set = OperatorSet::build(2)?;
        suites.push(golden_section7(&table, &set)?);
    }
    for tp in 1..=p.min(2) {
        suites.push(theorem_main_check(tp, kernel_degree)?);
    }
    suites.push(constancy_check(degree.min(3))?);
    suites.push(proposition_checks(kernel_degree, config.seed)?);
    Ok(suites)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_suite_passes() {
        let report = algebra_suite(42);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn witt_suite_small() {
        let report = witt_suite(3).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn structure_suite_small() {
        let report = structure_suite(2, 0).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn triangle_suite_passes() {
        let report = triangle_suite().unwrap();
        assert!(report.passed(), "{report}");
    }
}
