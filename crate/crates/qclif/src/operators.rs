//! The eight first-order operators of the theory and their cell-split parts.
//!
//! Euclidean family: d = Σ e_α ∂_{X_α} and its rotations dI, dJ, dK under the
//! complex structures. Hermitian family: dz = Σ ∂_{z_k} f†_k, dzd = Σ ∂_{z̄_k} f_k,
//! and their J-rotations dzj, dzdj. Every rotated operator is built twice —
//! once as the literal transcribed sum and once by transforming the base
//! operator's multipliers through the structure map — and the two must agree
//! exactly; a mismatch aborts, because sign-convention drift is the one thing
//! this machinery cannot survive.
//!
//! Split operators (op)_± act on a cell-valued field as "apply, then project
//! onto the target cell S^{r±1}_{s±1}"; the Stein–Weiss gradient sets are the
//! position-dependent collections of splits that characterize q-monogenicity
//! on each cell of the triangle.

use crate::cells::CellTable;
use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::fields::{Deriv, PolyField};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::structures::StructureMap;
use crate::witt::{SpinorBasis, WittFrame};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize)]
pub enum OpName {
    D,
    DI,
    DJ,
    DK,
    Dz,
    Dzd,
    Dzj,
    Dzdj,
}

impl OpName {
    pub const ALL: [OpName; 8] = [
        OpName::D,
        OpName::DI,
        OpName::DJ,
        OpName::DK,
        OpName::Dz,
        OpName::Dzd,
        OpName::Dzj,
        OpName::Dzdj,
    ];

    pub const EUCLIDEAN: [OpName; 4] = [OpName::D, OpName::DI, OpName::DJ, OpName::DK];
    pub const HERMITIAN: [OpName; 4] = [OpName::Dz, OpName::Dzd, OpName::Dzj, OpName::Dzdj];

    /// Degree shift of the Hermitian operators on homogeneous values:
    /// +1 for the f†-multiplied ones, −1 for the f-multiplied ones.
    pub fn raises(self) -> Option<bool> {
        match self {
            OpName::Dz | OpName::Dzdj => Some(true),
            OpName::Dzd | OpName::Dzj => Some(false),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Result<OpName> {
        match s {
            "d" => Ok(OpName::D),
            "dI" | "di" => Ok(OpName::DI),
            "dJ" | "dj" => Ok(OpName::DJ),
            "dK" | "dk" => Ok(OpName::DK),
            "dz" => Ok(OpName::Dz),
            "dzd" => Ok(OpName::Dzd),
            "dzj" => Ok(OpName::Dzj),
            "dzdj" => Ok(OpName::Dzdj),
            _ => Err(Error::Parse(format!(
                "unknown operator `{s}` (expected d, dI, dJ, dK, dz, dzd, dzj, dzdj)"
            ))),
        }
    }
}

impl fmt::Display for OpName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OpName::D => "d",
            OpName::DI => "dI",
            OpName::DJ => "dJ",
            OpName::DK => "dK",
            OpName::Dz => "dz",
            OpName::Dzd => "dzd",
            OpName::Dzj => "dzj",
            OpName::Dzdj => "dzdj",
        };
        write!(f, "{s}")
    }
}

/// A first-order operator Σ (multiplier · ∂_selector); every multiplier is a
/// 1-vector. Application is differentiate-then-left-multiply.
#[derive(Clone, Debug)]
pub struct OperatorSpec {
    pub name: OpName,
    pub p: usize,
    terms: Vec<(Deriv, Multivector)>,
}

impl OperatorSpec {
    pub fn terms(&self) -> &[(Deriv, Multivector)] {
        &self.terms
    }

    pub fn apply(&self, field: &PolyField) -> Result<PolyField> {
        if field.p() != self.p {
            return Err(Error::FieldMismatch { left: field.p(), right: self.p });
        }
        let mut out = PolyField::zero(self.p);
        for (sel, mult) in &self.terms {
            let diff = field.partial(*sel);
            if !diff.is_zero() {
                out = out.add(&diff.multiply_left(mult)?)?;
            }
        }
        Ok(out)
    }

    /// Canonical selector → multiplier map, for operator-level comparisons.
    fn canonical(&self) -> BTreeMap<Deriv, Multivector> {
        let mut map: BTreeMap<Deriv, Multivector> = BTreeMap::new();
        for (sel, mult) in &self.terms {
            map.entry(*sel)
                .and_modify(|m| *m = &*m + mult)
                .or_insert_with(|| mult.clone());
        }
        map.retain(|_, m| !m.is_zero());
        map
    }

    pub fn same_operator(&self, other: &OperatorSpec) -> bool {
        self.p == other.p && self.canonical() == other.canonical()
    }
}

/// Builds the literal transcription of an operator for the given p (over
/// ℂ_{4p}); rotated operators are cross-checked against the structure
/// transform of their base operator.
pub fn build_operator(name: OpName, p: usize) -> Result<OperatorSpec> {
    let frame = WittFrame::build(2 * p)?;
    build_operator_with(name, p, &frame)
}

pub fn build_operator_with(name: OpName, p: usize, frame: &WittFrame) -> Result<OperatorSpec> {
    assert_eq!(frame.pairs(), 2 * p);
    let gens = 4 * p;
    let e = |j: usize| Multivector::generator(gens, j);
    let literal = match name {
        OpName::D => {
            let mut terms = Vec::new();
            for k in 1..=2 * p {
                terms.push((Deriv::X(k), e(2 * k - 1)));
                terms.push((Deriv::Y(k), e(2 * k)));
            }
            OperatorSpec { name, p, terms }
        }
        OpName::DI => {
            let mut terms = Vec::new();
            for k in 1..=2 * p {
                terms.push((Deriv::Y(k), -&e(2 * k - 1)));
                terms.push((Deriv::X(k), e(2 * k)));
            }
            OperatorSpec { name, p, terms }
        }
        OpName::DJ => transform(&build_operator_with(OpName::D, p, frame)?, &StructureMap::new_j(p), name)?,
        OpName::DK => transform(&build_operator_with(OpName::D, p, frame)?, &StructureMap::new_k(p), name)?,
        OpName::Dz => {
            let terms = (1..=2 * p).map(|k| (Deriv::Z(k), frame.fd(k).clone())).collect();
            OperatorSpec { name, p, terms }
        }
        OpName::Dzd => {
            let terms = (1..=2 * p).map(|k| (Deriv::Zbar(k), frame.f(k).clone())).collect();
            OperatorSpec { name, p, terms }
        }
        OpName::Dzj => {
            let mut terms = Vec::new();
            for j in 1..=p {
                terms.push((Deriv::Z(2 * j), frame.f(2 * j - 1).clone()));
                terms.push((Deriv::Z(2 * j - 1), -frame.f(2 * j)));
            }
            OperatorSpec { name, p, terms }
        }
        OpName::Dzdj => {
            let mut terms = Vec::new();
            for j in 1..=p {
                terms.push((Deriv::Zbar(2 * j), frame.fd(2 * j - 1).clone()));
                terms.push((Deriv::Zbar(2 * j - 1), -frame.fd(2 * j)));
            }
            OperatorSpec { name, p, terms }
        }
    };
    // Rotated names with an independent display: rebuild via the structure
    // transform and assert agreement.
    let cross = match name {
        OpName::DI => Some(transform(
            &build_operator_with(OpName::D, p, frame)?,
            &StructureMap::new_i(2 * p),
            name,
        )?),
        OpName::Dzj => Some(transform(
            &build_operator_with(OpName::Dz, p, frame)?,
            &StructureMap::new_j(p),
            name,
        )?),
        OpName::Dzdj => Some(transform(
            &build_operator_with(OpName::Dzd, p, frame)?,
            &StructureMap::new_j(p),
            name,
        )?),
        _ => None,
    };
    if let Some(alt) = cross {
        if !literal.same_operator(&alt) {
            return Err(Error::Construction(format!(
                "operator {name}: literal transcription disagrees with the structure transform"
            )));
        }
    }
    if literal.terms.iter().any(|(_, m)| !m.is_vector()) {
        return Err(Error::Construction(format!("operator {name} has a non-vector multiplier")));
    }
    Ok(literal)
}

/// Image of an operator under a complex structure: transform the multipliers,
/// keep the derivative selectors.
fn transform(base: &OperatorSpec, map: &StructureMap, name: OpName) -> Result<OperatorSpec> {
    let terms = base
        .terms
        .iter()
        .map(|(sel, mult)| Ok((*sel, map.apply(mult)?)))
        .collect::<Result<_>>()?;
    Ok(OperatorSpec { name, p: base.p, terms })
}

/// All eight operators for one p, built once.
pub struct OperatorSet {
    pub p: usize,
    ops: BTreeMap<OpName, OperatorSpec>,
}

impl OperatorSet {
    pub fn build(p: usize) -> Result<OperatorSet> {
        let frame = WittFrame::build(2 * p)?;
        let mut ops = BTreeMap::new();
        for name in OpName::ALL {
            ops.insert(name, build_operator_with(name, p, &frame)?);
        }
        Ok(OperatorSet { p, ops })
    }

    pub fn get(&self, name: OpName) -> &OperatorSpec {
        &self.ops[&name]
    }

    pub fn apply(&self, name: OpName, field: &PolyField) -> Result<PolyField> {
        self.get(name).apply(field)
    }
}

/// Monogenicity statuses of a field, with the per-operator residual map.
#[derive(Clone, Debug, Serialize)]
pub struct MonogenicityReport {
    pub monogenic: bool,
    pub hermitian_i: bool,
    pub hermitian_j: bool,
    pub q_monogenic: bool,
    pub per_op_residual_is_zero: BTreeMap<String, bool>,
}

/// Applies all eight operators and reports which vanish. The Euclidean and
/// Hermitian characterizations of q-monogenicity are cross-checked; they are
/// linked by exact conversion identities, so disagreement is a build error.
pub fn monogenicity_report(field: &PolyField) -> Result<MonogenicityReport> {
    let set = OperatorSet::build(field.p())?;
    monogenicity_with(&set, field)
}

pub fn monogenicity_with(set: &OperatorSet, field: &PolyField) -> Result<MonogenicityReport> {
    let mut residual_zero = BTreeMap::new();
    let mut vanish = BTreeMap::new();
    for name in OpName::ALL {
        let is_zero = set.apply(name, field)?.is_zero();
        vanish.insert(name, is_zero);
        residual_zero.insert(name.to_string(), is_zero);
    }
    let monogenic = vanish[&OpName::D];
    let hermitian_i = vanish[&OpName::Dz] && vanish[&OpName::Dzd];
    let hermitian_j = vanish[&OpName::Dzj] && vanish[&OpName::Dzdj];
    let q_euclid = OpName::EUCLIDEAN.iter().all(|n| vanish[n]);
    if q_euclid != (hermitian_i && hermitian_j) {
        return Err(Error::Construction(
            "Euclidean and Hermitian q-monogenicity disagree".into(),
        ));
    }
    Ok(MonogenicityReport {
        monogenic,
        hermitian_i,
        hermitian_j,
        q_monogenic: q_euclid,
        per_op_residual_is_zero: residual_zero,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub enum SplitSign {
    Plus,
    Minus,
}

impl SplitSign {
    pub fn delta(self) -> i64 {
        match self {
            SplitSign::Plus => 1,
            SplitSign::Minus => -1,
        }
    }
}

impl fmt::Display for SplitSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == SplitSign::Plus { "+" } else { "-" })
    }
}

/// Target cell of (op)_sign on S^r_s-valued fields, if it exists in the
/// triangle.
pub fn split_target(
    name: OpName,
    r: usize,
    s: usize,
    sign: SplitSign,
    table: &CellTable,
) -> Option<(usize, usize)> {
    let raises = name.raises()?;
    let r2 = if raises { r as i64 + 1 } else { r as i64 - 1 };
    let s2 = s as i64 + sign.delta();
    if r2 < 0 || s2 < 0 {
        return None;
    }
    let (r2, s2) = (r2 as usize, s2 as usize);
    table.is_cell(r2, s2).then_some((r2, s2))
}

/// The (op)^r_{s,±} component: apply the full operator, then project every
/// coefficient onto the target cell. The + and − parts sum back to the full
/// application. F must be valued in the single cell (r, s).
pub fn split_apply(
    op: &OperatorSpec,
    field: &PolyField,
    r: usize,
    s: usize,
    table: &CellTable,
    sign: SplitSign,
) -> Result<PolyField> {
    if !table.is_cell(r, s) {
        return Err(Error::InvalidCell { p: table.p(), r, s });
    }
    for (m, v) in field.terms() {
        let parts = table.decompose(v)?;
        if parts.keys().any(|&key| key != (r, s)) {
            return Err(Error::Construction(format!(
                "field is not valued in S^{r}_{s} at monomial {m}"
            )));
        }
    }
    let full = op.apply(field)?;
    let Some((tr, ts)) = split_target(op.name, r, s, sign, table) else {
        return Ok(PolyField::zero(field.p()));
    };
    let mut out = PolyField::zero(field.p());
    for (m, v) in full.terms() {
        out.add_term(m.clone(), table.project(v, tr, ts)?);
    }
    Ok(out)
}

/// Where a cell sits in the triangular scheme.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum CellPosition {
    LeftUpperVertex,
    RightUpperVertex,
    UpperEdge,
    LowerVertex,
    LeftEdge,
    RightEdge,
    Inner,
}

pub fn cell_position(r: usize, s: usize, p: usize) -> Result<CellPosition> {
    let valid = s <= p && r >= s && r <= 2 * p - s && (r - s) % 2 == 0;
    if !valid {
        return Err(Error::InvalidCell { p, r, s });
    }
    Ok(if (r, s) == (0, 0) {
        CellPosition::LeftUpperVertex
    } else if (r, s) == (2 * p, 0) {
        CellPosition::RightUpperVertex
    } else if (r, s) == (p, p) {
        CellPosition::LowerVertex
    } else if s == 0 {
        CellPosition::UpperEdge
    } else if r == s {
        CellPosition::LeftEdge
    } else if r == 2 * p - s {
        CellPosition::RightEdge
    } else {
        CellPosition::Inner
    })
}

/// One gradient in a Stein–Weiss set: the chosen representative plus the
/// equivalent alternative where the characterization says "either … or".
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Gradient {
    pub op: OpName,
    pub sign: SplitSign,
    pub alternative: Option<OpName>,
}

impl Gradient {
    fn fixed(op: OpName, sign: SplitSign) -> Gradient {
        Gradient { op, sign, alternative: None }
    }

    fn either(op: OpName, alt: OpName, sign: SplitSign) -> Gradient {
        Gradient { op, sign, alternative: Some(alt) }
    }
}

/// The realized Stein–Weiss gradient set for a cell: the split operators
/// whose joint kernel is exactly the q-monogenic functions valued there.
/// Where two splits have the same kernel the undaggered/unrotated operator is
/// the kept representative and the other is recorded as the alternative.
#[derive(Clone, Debug, Serialize)]
pub struct SteinWeissSet {
    pub r: usize,
    pub s: usize,
    pub position: CellPosition,
    pub gradients: Vec<Gradient>,
}

pub fn stein_weiss_set(r: usize, s: usize, p: usize) -> Result<SteinWeissSet> {
    use CellPosition::*;
    use OpName::*;
    use SplitSign::*;
    let position = cell_position(r, s, p)?;
    let gradients = match position {
        LeftUpperVertex => vec![Gradient::fixed(Dz, Plus), Gradient::fixed(Dzdj, Plus)],
        RightUpperVertex => vec![Gradient::fixed(Dzj, Plus), Gradient::fixed(Dzd, Plus)],
        UpperEdge => vec![
            Gradient::either(Dz, Dzj, Plus),
            Gradient::either(Dzd, Dzdj, Plus),
        ],
        LowerVertex => vec![
            Gradient::either(Dz, Dzj, Minus),
            Gradient::either(Dzd, Dzdj, Minus),
        ],
        LeftEdge => vec![
            Gradient::either(Dz, Dzj, Minus),
            Gradient::fixed(Dz, Plus),
            Gradient::either(Dzd, Dzdj, Minus),
            Gradient::fixed(Dzdj, Plus),
        ],
        RightEdge => vec![
            Gradient::either(Dz, Dzj, Minus),
            Gradient::fixed(Dzj, Plus),
            Gradient::either(Dzd, Dzdj, Minus),
            Gradient::fixed(Dzd, Plus),
        ],
        Inner => vec![
            Gradient::either(Dz, Dzj, Minus),
            Gradient::either(Dz, Dzj, Plus),
            Gradient::either(Dzd, Dzdj, Minus),
            Gradient::either(Dzd, Dzdj, Plus),
        ],
    };
    Ok(SteinWeissSet { r, s, position, gradients })
}

/// The commutation relations of P and Q with the Hermitian quartet, verified
/// on every monomial field of degree ≤ `degree` with values running over a
/// full spinor basis.
pub fn pq_commutator_check(p: usize, degree: u32) -> Result<Report> {
    crate::fields::check_degree(degree)?;
    let frame = WittFrame::build(2 * p)?;
    let basis = SpinorBasis::build(&frame)?;
    let (p_op, q_op) = crate::cells::build_pq(&frame)?;
    let set = OperatorSet::build(p)?;
    let monomials = crate::fields::monomials_up_to(p, degree);
    // [P, dz] = −dzj   [Q, dz] = 0
    // [P, dzd] = 0     [Q, dzd] = dzdj
    // [P, dzj] = 0     [Q, dzj] = −dz
    // [P, dzdj] = dzd  [Q, dzdj] = 0
    let cases: [(&str, &Multivector, OpName, Option<(OpName, i64)>); 8] = [
        ("P", &p_op, OpName::Dz, Some((OpName::Dzj, -1))),
        ("P", &p_op, OpName::Dzd, None),
        ("P", &p_op, OpName::Dzj, None),
        ("P", &p_op, OpName::Dzdj, Some((OpName::Dzd, 1))),
        ("Q", &q_op, OpName::Dz, None),
        ("Q", &q_op, OpName::Dzd, Some((OpName::Dzdj, 1))),
        ("Q", &q_op, OpName::Dzj, Some((OpName::Dz, -1))),
        ("Q", &q_op, OpName::Dzdj, None),
    ];
    let mut report = Report::new(format!("pq-commutators p={p} degree<={degree}"));
    for (which, mult, op, rhs) in cases {
        let mut ok = true;
        'outer: for mono in &monomials {
            for elem in basis.elements() {
                let f = PolyField::monomial_term(p, mono.clone(), elem.value.clone());
                let lhs = {
                    let op_f = set.apply(op, &f)?;
                    let a = op_f.multiply_left(mult)?;
                    let b = set.apply(op, &f.multiply_left(mult)?)?;
                    a.sub(&b)?
                };
                let expect = match rhs {
                    None => PolyField::zero(p),
                    Some((name, sign)) => {
                        set.apply(name, &f)?.scale(&Scalar::from_int(sign))
                    }
                };
                if lhs != expect {
                    ok = false;
                    break 'outer;
                }
            }
        }
        let rhs_text = match rhs {
            None => "0".to_string(),
            Some((name, 1)) => name.to_string(),
            Some((name, _)) => format!("-{name}"),
        };
        report.check(format!("[{which}, {op}] = {rhs_text}"), ok);
    }
    Ok(report)
}

/// The conversion identities between the Euclidean and Hermitian quartets,
/// plus the factorization d² = −Δ, on all monomial fields of degree ≤
/// `degree` over a full spinor basis.
pub fn conversion_check(p: usize, degree: u32) -> Result<Report> {
    crate::fields::check_degree(degree)?;
    let frame = WittFrame::build(2 * p)?;
    let basis = SpinorBasis::build(&frame)?;
    let set = OperatorSet::build(p)?;
    let monomials = crate::fields::monomials_up_to(p, degree);
    let two = Scalar::from_int(2);
    let i = Scalar::i();
    let mut report = Report::new(format!("conversions p={p} degree<={degree}"));
    let idents: [(&str, OpName, Option<Scalar>, OpName, OpName, bool); 4] = [
        // lhs scaled by scale0 equals 2(a ∓ b): (label, lhs, i-factor, a, b, minus)
        ("d = 2(dz - dzd)", OpName::D, None, OpName::Dz, OpName::Dzd, true),
        ("i dI = 2(dz + dzd)", OpName::DI, Some(i.clone()), OpName::Dz, OpName::Dzd, false),
        ("dJ = 2(dzj - dzdj)", OpName::DJ, None, OpName::Dzj, OpName::Dzdj, true),
        ("i dK = 2(dzj + dzdj)", OpName::DK, Some(i.clone()), OpName::Dzj, OpName::Dzdj, false),
    ];
    for (label, lhs_name, factor, a, b, minus) in idents {
        let mut ok = true;
        'outer: for mono in &monomials {
            for elem in basis.elements() {
                let f = PolyField::monomial_term(p, mono.clone(), elem.value.clone());
                let mut lhs = set.apply(lhs_name, &f)?;
                if let Some(c) = &factor {
                    lhs = lhs.scale(c);
                }
                let fa = set.apply(a, &f)?;
                let fb = set.apply(b, &f)?;
                let rhs = if minus { fa.sub(&fb)? } else { fa.add(&fb)? }.scale(&two);
                if lhs != rhs {
                    ok = false;
                    break 'outer;
                }
            }
        }
        report.check(label, ok);
    }
    // d² = −Δ
    let mut ok = true;
    'lap: for mono in &monomials {
        for elem in basis.elements() {
            let f = PolyField::monomial_term(p, mono.clone(), elem.value.clone());
            let dd = set.apply(OpName::D, &set.apply(OpName::D, &f)?)?;
            let mut lap = PolyField::zero(p);
            for k in 1..=2 * p {
                lap = lap.add(&f.partial(Deriv::X(k)).partial(Deriv::X(k)))?;
                lap = lap.add(&f.partial(Deriv::Y(k)).partial(Deriv::Y(k)))?;
            }
            if dd != lap.scale(&-&Scalar::one()) {
                ok = false;
                break 'lap;
            }
        }
    }
    report.check("d d = -Laplacian", ok);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Monomial;
    use crate::fields::RealVar;

    fn z_field(p: usize, k: usize, value: Multivector) -> PolyField {
        // z_k · value
        let base = PolyField::constant(p, value);
        let xs = base.multiply_monomial(&Monomial::var(RealVar::x(k)));
        let ys = base
            .multiply_monomial(&Monomial::var(RealVar::y(k)))
            .scale(&Scalar::i());
        xs.add(&ys).unwrap()
    }

    fn zbar_field(p: usize, k: usize, value: Multivector) -> PolyField {
        let base = PolyField::constant(p, value);
        let xs = base.multiply_monomial(&Monomial::var(RealVar::x(k)));
        let ys = base
            .multiply_monomial(&Monomial::var(RealVar::y(k)))
            .scale(&-&Scalar::i());
        xs.add(&ys).unwrap()
    }

    #[test]
    fn all_eight_build_for_p1_p2() {
        for p in 1..=2 {
            let set = OperatorSet::build(p).unwrap();
            assert_eq!(set.get(OpName::D).terms().len(), 4 * p);
        }
    }

    #[test]
    fn dz_p2_is_sum_of_four_wirtinger_terms() {
        let frame = WittFrame::build(4).unwrap();
        let op = build_operator_with(OpName::Dz, 2, &frame).unwrap();
        let expected: Vec<(Deriv, Multivector)> = (1..=4)
            .map(|k| (Deriv::Z(k), frame.fd(k).clone()))
            .collect();
        assert_eq!(op.terms(), &expected[..]);
    }

    #[test]
    fn dzdj_p1_matches_display() {
        let frame = WittFrame::build(2).unwrap();
        let op = build_operator_with(OpName::Dzdj, 1, &frame).unwrap();
        let expected = [
            (Deriv::Zbar(2), frame.fd(1).clone()),
            (Deriv::Zbar(1), -frame.fd(2)),
        ];
        assert_eq!(op.terms(), &expected[..]);
    }

    #[test]
    fn di_literal_matches_rotated_display() {
        let frame = WittFrame::build(4).unwrap();
        let op = build_operator_with(OpName::DI, 2, &frame).unwrap();
        let gens = 8;
        let mut expected = Vec::new();
        for k in 1..=4usize {
            expected.push((Deriv::Y(k), -&Multivector::generator(gens, 2 * k - 1)));
            expected.push((Deriv::X(k), Multivector::generator(gens, 2 * k)));
        }
        assert_eq!(op.terms(), &expected[..]);
    }

    #[test]
    fn d_applied_to_z1_idem() {
        // d(z_1 I) = 2 f†_1 I via the reconstruction identities
        let frame = WittFrame::build(4).unwrap();
        let set = OperatorSet::build(2).unwrap();
        let f = z_field(2, 1, frame.idempotent().clone());
        let out = set.apply(OpName::D, &f).unwrap();
        let expected = PolyField::constant(
            2,
            (frame.fd(1) * frame.idempotent()).scale(&Scalar::from_int(2)),
        );
        assert_eq!(out, expected);
    }

    #[test]
    fn dz_kills_antiholomorphic() {
        let frame = WittFrame::build(4).unwrap();
        let set = OperatorSet::build(2).unwrap();
        let value = frame.fd(1) * frame.idempotent();
        let f = zbar_field(2, 2, value);
        assert!(set.apply(OpName::Dz, &f).unwrap().is_zero());
    }

    #[test]
    fn dzd_contracts_via_duality() {
        // dzd(z̄_1 f†_1 I) = f_1 f†_1 I = I
        let frame = WittFrame::build(4).unwrap();
        let set = OperatorSet::build(2).unwrap();
        let f = zbar_field(2, 1, frame.fd(1) * frame.idempotent());
        let out = set.apply(OpName::Dzd, &f).unwrap();
        assert_eq!(out, PolyField::constant(2, frame.idempotent().clone()));
    }

    #[test]
    fn hermitian_ops_shift_homogeneous_degree() {
        let frame = WittFrame::build(4).unwrap();
        let basis = SpinorBasis::build(&frame).unwrap();
        let set = OperatorSet::build(2).unwrap();
        for elem in basis.elements() {
            let r = elem.indices.len();
            for name in OpName::HERMITIAN {
                let f = z_field(2, 1, elem.value.clone());
                let out = set.apply(name, &f).unwrap();
                let raises = name.raises().unwrap();
                for (_, v) in out.terms() {
                    let target = if raises { r + 1 } else { r.wrapping_sub(1) };
                    assert!(basis.coords_in_r(v, target).is_ok());
                }
            }
        }
    }

    #[test]
    fn monogenicity_of_constants_and_witnesses() {
        let frame = WittFrame::build(4).unwrap();
        let constant = PolyField::constant(2, frame.idempotent().clone());
        let rep = monogenicity_report(&constant).unwrap();
        assert!(rep.monogenic && rep.hermitian_i && rep.hermitian_j && rep.q_monogenic);

        let z1 = z_field(2, 1, frame.idempotent().clone());
        let rep = monogenicity_report(&z1).unwrap();
        assert!(!rep.monogenic && !rep.hermitian_i && !rep.q_monogenic);

        // z̄_2 f†_1 I is q-monogenic
        let w2 = zbar_field(2, 2, frame.fd(1) * frame.idempotent());
        let rep = monogenicity_report(&w2).unwrap();
        assert!(rep.q_monogenic, "{rep:?}");
    }

    #[test]
    fn cell_positions_p2() {
        use CellPosition::*;
        assert_eq!(cell_position(0, 0, 2).unwrap(), LeftUpperVertex);
        assert_eq!(cell_position(2, 0, 2).unwrap(), UpperEdge);
        assert_eq!(cell_position(4, 0, 2).unwrap(), RightUpperVertex);
        assert_eq!(cell_position(1, 1, 2).unwrap(), LeftEdge);
        assert_eq!(cell_position(3, 1, 2).unwrap(), RightEdge);
        assert_eq!(cell_position(2, 2, 2).unwrap(), LowerVertex);
        assert!(cell_position(1, 0, 2).is_err());
        assert!(cell_position(3, 3, 2).is_err());
        // p=3 has one inner cell
        assert_eq!(cell_position(3, 1, 3).unwrap(), Inner);
    }

    #[test]
    fn stein_weiss_sets_match_characterization() {
        use OpName::*;
        use SplitSign::*;
        let set = stein_weiss_set(0, 0, 2).unwrap();
        let got: Vec<(OpName, SplitSign)> = set.gradients.iter().map(|g| (g.op, g.sign)).collect();
        assert_eq!(got, vec![(Dz, Plus), (Dzdj, Plus)]);
        assert!(set.gradients.iter().all(|g| g.alternative.is_none()));

        let set = stein_weiss_set(4, 0, 2).unwrap();
        let got: Vec<(OpName, SplitSign)> = set.gradients.iter().map(|g| (g.op, g.sign)).collect();
        assert_eq!(got, vec![(Dzj, Plus), (Dzd, Plus)]);

        let set = stein_weiss_set(2, 2, 2).unwrap();
        let got: Vec<(OpName, SplitSign)> = set.gradients.iter().map(|g| (g.op, g.sign)).collect();
        assert_eq!(got, vec![(Dz, Minus), (Dzd, Minus)]);
        assert!(set.gradients.iter().all(|g| g.alternative.is_some()));
    }

    #[test]
    fn split_parts_sum_to_full() {
        let frame = WittFrame::build(4).unwrap();
        let table = CellTable::build(&frame).unwrap();
        let set = OperatorSet::build(2).unwrap();
        // F^1_1 = z̄_1 f†_2 I
        let f = zbar_field(2, 1, frame.fd(2) * frame.idempotent());
        for name in OpName::HERMITIAN {
            let op = set.get(name);
            let plus = split_apply(op, &f, 1, 1, &table, SplitSign::Plus).unwrap();
            let minus = split_apply(op, &f, 1, 1, &table, SplitSign::Minus).unwrap();
            assert_eq!(plus.add(&minus).unwrap(), op.apply(&f).unwrap(), "{name}");
        }
    }

    #[test]
    fn split_on_wrong_cell_errors() {
        let frame = WittFrame::build(4).unwrap();
        let table = CellTable::build(&frame).unwrap();
        let set = OperatorSet::build(2).unwrap();
        let f = PolyField::constant(2, frame.idempotent().clone());
        let err = split_apply(set.get(OpName::Dz), &f, 1, 1, &table, SplitSign::Plus);
        assert!(err.is_err());
    }

    #[test]
    fn dzdj_plus_vanishes_on_s13() {
        // (dzdj)_+ on F^3_1 targets (4, 2), which does not exist
        let frame = WittFrame::build(4).unwrap();
        let table = CellTable::build(&frame).unwrap();
        let set = OperatorSet::build(2).unwrap();
        let v = table.cell(3, 1).unwrap().vectors()[0].clone();
        let f = z_field(2, 1, v);
        let out = split_apply(set.get(OpName::Dzdj), &f, 3, 1, &table, SplitSign::Plus).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn witt_multipliers_map_cells_to_diagonal_neighbours() {
        // f_j sends S^r_s into S^{r−1}_{s−1} ⊕ S^{r−1}_{s+1}, and f†_j into
        // S^{r+1}_{s−1} ⊕ S^{r+1}_{s+1}; nothing leaks anywhere else.
        for p in 1..=2usize {
            let frame = WittFrame::build(2 * p).unwrap();
            let table = CellTable::build(&frame).unwrap();
            for (&(r, s), cell) in table.cells() {
                for v in cell.vectors() {
                    for j in 1..=2 * p {
                        for (mult, up) in [(frame.f(j), false), (frame.fd(j), true)] {
                            let image = mult * v;
                            if image.is_zero() {
                                continue;
                            }
                            let tr = if up { r + 1 } else { r.wrapping_sub(1) };
                            for &(ir, is) in table.decompose(&image).unwrap().keys() {
                                assert_eq!(ir, tr, "cell ({r},{s}), multiplier {j}");
                                assert!(
                                    is == s + 1 || is + 1 == s,
                                    "cell ({r},{s}) leaked into ({ir},{is})"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn commutators_p1_degree1() {
        let report = pq_commutator_check(1, 1).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn conversions_p1_degree2() {
        let report = conversion_check(1, 2).unwrap();
        assert!(report.passed(), "{report}");
    }
}
