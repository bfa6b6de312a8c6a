//! Polynomial spinor-valued fields on R^{4p}.
//!
//! Canonical variables are the real coordinates (x_1, y_1, …, x_{2p}, y_{2p});
//! the complex coordinates z_k = x_k + i y_k, z̄_k = x_k − i y_k are views, so
//! the Euclidean and Hermitian operator families are built independently and
//! the conversion identities between them are genuine cross-checks.
//! Differentiation is formal and coefficient-wise; the Wirtinger derivatives
//! are ∂_{z_k} = ½(∂_{x_k} − i ∂_{y_k}) and ∂_{z̄_k} = ½(∂_{x_k} + i ∂_{y_k}).

use crate::clifford::{Blade, Multivector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::witt::SpinorBasis;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Degree cap guarding runaway exact computation; QCLIF_MAX_DEGREE overrides.
pub fn max_degree() -> u32 {
    std::env::var("QCLIF_MAX_DEGREE")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(4)
}

pub fn check_degree(requested: u32) -> Result<()> {
    let cap = max_degree();
    if requested > cap {
        return Err(Error::DegreeCap { requested, cap });
    }
    Ok(())
}

/// A real variable: x_k or y_k with 1 ≤ k ≤ 2p, packed as an index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct RealVar(pub u16);

impl RealVar {
    pub fn x(k: usize) -> RealVar {
        RealVar(2 * (k as u16 - 1))
    }

    pub fn y(k: usize) -> RealVar {
        RealVar(2 * (k as u16 - 1) + 1)
    }

    pub fn is_x(self) -> bool {
        self.0 % 2 == 0
    }

    /// The complex-pair index k.
    pub fn pair(self) -> usize {
        (self.0 / 2) as usize + 1
    }
}

impl fmt::Display for RealVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.is_x() { "x" } else { "y" }, self.pair())
    }
}

/// Derivative selector: real partials or Wirtinger combinations.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Deriv {
    X(usize),
    Y(usize),
    Z(usize),
    Zbar(usize),
}

impl fmt::Display for Deriv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Deriv::X(k) => write!(f, "d/dx{k}"),
            Deriv::Y(k) => write!(f, "d/dy{k}"),
            Deriv::Z(k) => write!(f, "d/dz{k}"),
            Deriv::Zbar(k) => write!(f, "d/dz̄{k}"),
        }
    }
}

/// Monomial in the real variables; no zero exponents stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(BTreeMap<RealVar, u32>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: RealVar) -> Monomial {
        Monomial(BTreeMap::from([(v, 1)]))
    }

    pub fn from_exponents(exps: &[(RealVar, u32)]) -> Monomial {
        let mut m = Monomial::default();
        for &(v, e) in exps {
            if e > 0 {
                *m.0.entry(v).or_insert(0) += e;
            }
        }
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn exponent(&self, v: RealVar) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (&RealVar, &u32)> {
        self.0.iter()
    }

    pub fn times_var(&self, v: RealVar) -> Monomial {
        let mut m = self.clone();
        *m.0.entry(v).or_insert(0) += 1;
        m
    }

    /// Formal ∂_v: returns (multiplicity, reduced monomial) or None.
    pub fn differentiate(&self, v: RealVar) -> Option<(u32, Monomial)> {
        let e = self.exponent(v);
        if e == 0 {
            return None;
        }
        let mut m = self.clone();
        if e == 1 {
            m.0.remove(&v);
        } else {
            m.0.insert(v, e - 1);
        }
        Some((e, m))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial field on R^{4p} with values in spinor space ⊂ ℂ_{4p}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyField {
    p: usize,
    terms: BTreeMap<Monomial, Multivector>,
}

impl PolyField {
    pub fn zero(p: usize) -> PolyField {
        PolyField { p, terms: BTreeMap::new() }
    }

    pub fn constant(p: usize, value: Multivector) -> PolyField {
        let mut f = PolyField::zero(p);
        f.add_term(Monomial::one(), value);
        f
    }

    pub fn monomial_term(p: usize, m: Monomial, value: Multivector) -> PolyField {
        let mut f = PolyField::zero(p);
        f.add_term(m, value);
        f
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn gens(&self) -> usize {
        4 * self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Multivector)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn value_at(&self, m: &Monomial) -> Multivector {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Multivector::zero(self.gens()))
    }

    pub fn add_term(&mut self, m: Monomial, value: Multivector) {
        assert_eq!(value.gens(), self.gens(), "value lives in the wrong algebra");
        if value.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(value);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &value;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &PolyField) -> Result<PolyField> {
        if self.p != rhs.p {
            return Err(Error::FieldMismatch { left: rhs.p, right: self.p });
        }
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.add_term(m.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &PolyField) -> Result<PolyField> {
        self.add(&rhs.scale(&-&Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> PolyField {
        let mut out = PolyField::zero(self.p);
        if s.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.scale(s));
        }
        out
    }

    /// Left multiplication of every value by a constant multivector, the way
    /// P, Q and the Witt multipliers act on fields.
    pub fn multiply_left(&self, a: &Multivector) -> Result<PolyField> {
        if a.gens() != self.gens() {
            return Err(Error::DimensionMismatch { left: a.gens(), right: self.gens() });
        }
        let mut out = PolyField::zero(self.p);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), a * v);
        }
        Ok(out)
    }

    /// Multiplication by a monomial (used when expanding z-form inputs).
    pub fn multiply_monomial(&self, mono: &Monomial) -> PolyField {
        let mut out = PolyField::zero(self.p);
        for (m, v) in &self.terms {
            let mut prod = m.clone();
            for (var, e) in mono.exponents() {
                *prod.0.entry(*var).or_insert(0) += e;
            }
            out.add_term(prod, v.clone());
        }
        out
    }

    /// Formal partial derivative; Wirtinger selectors take the stated complex
    /// combinations of the real partials.
    pub fn partial(&self, d: Deriv) -> PolyField {
        match d {
            Deriv::X(k) => self.partial_real(RealVar::x(k)),
            Deriv::Y(k) => self.partial_real(RealVar::y(k)),
            Deriv::Z(k) => {
                let half = Scalar::from_ratio(1, 2);
                let m_half_i = &-&Scalar::i() * &half;
                let dx = self.partial_real(RealVar::x(k)).scale(&half);
                let dy = self.partial_real(RealVar::y(k)).scale(&m_half_i);
                dx.add(&dy).expect("same p")
            }
            Deriv::Zbar(k) => {
                let half = Scalar::from_ratio(1, 2);
                let half_i = &Scalar::i() * &half;
                let dx = self.partial_real(RealVar::x(k)).scale(&half);
                let dy = self.partial_real(RealVar::y(k)).scale(&half_i);
                dx.add(&dy).expect("same p")
            }
        }
    }

    fn partial_real(&self, v: RealVar) -> PolyField {
        let mut out = PolyField::zero(self.p);
        for (m, val) in &self.terms {
            if let Some((mult, reduced)) = m.differentiate(v) {
                out.add_term(reduced, val.scale(&Scalar::from_int(mult as i64)));
            }
        }
        out
    }

    /// Splits the field into its symplectic-cell components by projecting
    /// every coefficient; the parts sum back to the field.
    pub fn decompose_cells(
        &self,
        table: &crate::cells::CellTable,
    ) -> Result<std::collections::BTreeMap<(usize, usize), PolyField>> {
        let mut out: std::collections::BTreeMap<(usize, usize), PolyField> =
            std::collections::BTreeMap::new();
        for (m, v) in &self.terms {
            for (key, part) in table.decompose(v)? {
                out.entry(key)
                    .or_insert_with(|| PolyField::zero(self.p))
                    .add_term(m.clone(), part);
            }
        }
        out.retain(|_, f| !f.is_zero());
        Ok(out)
    }

    /// Verifies every value lies in spinor space.
    pub fn check_in_spinor(&self, basis: &SpinorBasis) -> Result<()> {
        for (m, v) in &self.terms {
            basis.coords(v).map_err(|e| match e {
                Error::NotInSpinorSpace { blades } => Error::Construction(format!(
                    "value at monomial {m} is not in spinor space; offending blades: {blades:?}"
                )),
                other => other,
            })?;
        }
        Ok(())
    }
}

impl fmt::Display for PolyField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, v) in &self.terms {
            if !first {
                write!(f, "  +  ")?;
            }
            first = false;
            write!(f, "[{m}] ({v})")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// JSON field files
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct FieldFile {
    p: usize,
    terms: Vec<FieldTerm>,
}

#[derive(Serialize, Deserialize)]
struct FieldTerm {
    monomial: BTreeMap<String, u32>,
    value: FieldValue,
}

/// Values are either blade/coefficient pairs or the multivector text form
/// "(coeff) blade + …".
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FieldValue {
    Pairs(Vec<BladeCoeff>),
    Text(String),
}

#[derive(Serialize, Deserialize)]
struct BladeCoeff {
    blade: String,
    coeff: String,
}

impl PolyField {
    /// Loads the JSON field form. Monomial keys are "x1".."x2p" / "y1".."y2p",
    /// or alternatively "z1".."z2p" / "w1".."w2p" (w = z̄), which are expanded
    /// via z_k = x_k + i y_k and z̄_k = x_k − i y_k.
    pub fn from_json(text: &str) -> Result<PolyField> {
        let file: FieldFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("field file: {e}")))?;
        if file.p == 0 {
            return Err(Error::Parse("field file needs p >= 1".into()));
        }
        let p = file.p;
        let gens = 4 * p;
        let mut out = PolyField::zero(p);
        for term in &file.terms {
            let value = match &term.value {
                FieldValue::Pairs(pairs) => {
                    let mut value = Multivector::zero(gens);
                    for bc in pairs {
                        let blade = parse_blade_str(&bc.blade)?;
                        if blade.max_index() > gens {
                            return Err(Error::Parse(format!(
                                "blade {} outside ℂ_{gens}",
                                bc.blade
                            )));
                        }
                        value.add_term(blade, bc.coeff.parse()?);
                    }
                    value
                }
                FieldValue::Text(text) => Multivector::parse(text, gens)?,
            };
            // Start from the constant term and multiply in each variable key.
            let mut expanded = PolyField::constant(p, value);
            for (key, &e) in &term.monomial {
                if e == 0 {
                    continue;
                }
                expanded = multiply_key_power(&expanded, key, e, p)?;
            }
            for (m, v) in expanded.terms {
                out.add_term(m, v);
            }
        }
        check_degree(out.degree())?;
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| FieldTerm {
                monomial: m
                    .exponents()
                    .map(|(var, e)| (var.to_string(), *e))
                    .collect(),
                value: FieldValue::Pairs(
                    v.terms()
                        .map(|(b, c)| BladeCoeff { blade: b.to_string(), coeff: c.to_string() })
                        .collect(),
                ),
            })
            .collect();
        serde_json::to_string_pretty(&FieldFile { p: self.p, terms })
            .expect("field serialization cannot fail")
    }
}

fn parse_blade_str(s: &str) -> Result<Blade> {
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
        indices.push(j);
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) || indices.contains(&0) {
        return Err(Error::Parse(format!("blade `{s}` is not strictly ascending")));
    }
    Ok(Blade::from_indices(&indices))
}

/// Multiplies a field by (variable named `key`)^e, expanding z/w keys into
/// the canonical real variables.
fn multiply_key_power(field: &PolyField, key: &str, e: u32, p: usize) -> Result<PolyField> {
    let (kind, k_str) = key.split_at(1);
    let k: usize = k_str
        .parse()
        .map_err(|_| Error::Parse(format!("bad monomial key `{key}`")))?;
    if k == 0 || k > 2 * p {
        return Err(Error::Parse(format!("monomial key `{key}` outside 1..{}", 2 * p)));
    }
    let mut out = field.clone();
    match kind {
        "x" => {
            for _ in 0..e {
                out = out.multiply_monomial(&Monomial::var(RealVar::x(k)));
            }
        }
        "y" => {
            for _ in 0..e {
                out = out.multiply_monomial(&Monomial::var(RealVar::y(k)));
            }
        }
        "z" | "w" => {
            let sign = if kind == "z" { Scalar::i() } else { -&Scalar::i() };
            for _ in 0..e {
                let xs = out.multiply_monomial(&Monomial::var(RealVar::x(k)));
                let ys = out.multiply_monomial(&Monomial::var(RealVar::y(k))).scale(&sign);
                out = xs.add(&ys)?;
            }
        }
        _ => return Err(Error::Parse(format!("unknown monomial key `{key}`"))),
    }
    Ok(out)
}

/// All monomials of total degree ≤ d in the 4p real variables, ordered by
/// total degree then lexicographically on exponent vectors.
pub fn monomials_up_to(p: usize, d: u32) -> Vec<Monomial> {
    let vars: Vec<RealVar> = (1..=2 * p)
        .flat_map(|k| [RealVar::x(k), RealVar::y(k)])
        .collect();
    let mut sorted_vars = vars.clone();
    sorted_vars.sort();
    let mut out = Vec::new();
    for total in 0..=d {
        let mut current: Vec<(RealVar, u32)> = Vec::new();
        gen_monomials(&sorted_vars, 0, total, &mut current, &mut out);
    }
    out
}

fn gen_monomials(
    vars: &[RealVar],
    start: usize,
    remaining: u32,
    current: &mut Vec<(RealVar, u32)>,
    out: &mut Vec<Monomial>,
) {
    if remaining == 0 {
        out.push(Monomial::from_exponents(current));
        return;
    }
    if start == vars.len() {
        return;
    }
    for e in (0..=remaining).rev() {
        if e > 0 {
            current.push((vars[start], e));
        }
        gen_monomials(vars, start + 1, remaining - e, current, out);
        if e > 0 {
            current.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::WittFrame;

    fn idem_field(p: usize) -> PolyField {
        let frame = WittFrame::build(2 * p).unwrap();
        PolyField::constant(p, frame.idempotent().clone())
    }

    fn z_times(f: &PolyField, k: usize) -> PolyField {
        // multiply by z_k = x_k + i y_k
        let xs = f.multiply_monomial(&Monomial::var(RealVar::x(k)));
        let ys = f.multiply_monomial(&Monomial::var(RealVar::y(k))).scale(&Scalar::i());
        xs.add(&ys).unwrap()
    }

    #[test]
    fn wirtinger_on_z_and_zbar() {
        let one = idem_field(1);
        let z1 = z_times(&one, 1);
        assert_eq!(z1.partial(Deriv::Z(1)), one);
        assert!(z1.partial(Deriv::Zbar(1)).is_zero());
        assert!(z1.partial(Deriv::Z(2)).is_zero());
    }

    #[test]
    fn real_partial_of_square() {
        let one = idem_field(1);
        let x1 = one.multiply_monomial(&Monomial::var(RealVar::x(1)));
        let x1sq = x1.multiply_monomial(&Monomial::var(RealVar::x(1)));
        let expected = x1.scale(&Scalar::from_int(2));
        assert_eq!(x1sq.partial(Deriv::X(1)), expected);
    }

    #[test]
    fn arithmetic_basics() {
        let f = idem_field(2);
        assert!(f.scale(&Scalar::zero()).is_zero());
        assert!(f.sub(&f).unwrap().is_zero());
        let mismatched = idem_field(1);
        assert!(f.add(&mismatched).is_err());
    }

    #[test]
    fn q_times_constant_field() {
        let frame = WittFrame::build(4).unwrap();
        let (_, q) = crate::cells::build_pq(&frame).unwrap();
        let f = PolyField::constant(2, frame.idempotent().clone());
        let qf = f.multiply_left(&q).unwrap();
        let expected = &(&(frame.fd(1) * frame.fd(2)) + &(frame.fd(3) * frame.fd(4)))
            * frame.idempotent();
        assert_eq!(qf, PolyField::constant(2, expected));
    }

    #[test]
    fn mixed_partials_commute() {
        let one = idem_field(2);
        let f = z_times(&z_times(&z_times(&one, 1), 2), 2);
        for (a, b) in [
            (Deriv::Z(1), Deriv::Zbar(2)),
            (Deriv::Z(2), Deriv::Zbar(1)),
            (Deriv::X(1), Deriv::Y(2)),
        ] {
            assert_eq!(f.partial(a).partial(b), f.partial(b).partial(a));
        }
    }

    #[test]
    fn real_partials_recombine_from_wirtinger() {
        // ∂x = ∂z + ∂z̄ and ∂y = i(∂z − ∂z̄)
        let one = idem_field(1);
        let f = z_times(&z_times(&one, 1), 2);
        let dz = f.partial(Deriv::Z(1));
        let dzb = f.partial(Deriv::Zbar(1));
        assert_eq!(f.partial(Deriv::X(1)), dz.add(&dzb).unwrap());
        assert_eq!(
            f.partial(Deriv::Y(1)),
            dz.sub(&dzb).unwrap().scale(&Scalar::i())
        );
    }

    #[test]
    fn json_round_trip_with_z_keys() {
        let text = r#"{
            "p": 2,
            "terms": [
                {"monomial": {"w2": 1}, "value": [{"blade": "e1", "coeff": "1/2"}, {"blade": "e2", "coeff": "1/2 i"}]}
            ]
        }"#;
        let f = PolyField::from_json(text).unwrap();
        // z̄_2 f†_1 I restricted to its f†_1-vector part: here the value is
        // the raw vector f†_1 = ½(e1 + i e2); check expansion of w2.
        assert_eq!(f.degree(), 1);
        let back = PolyField::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        // w2 = x2 − i y2; the x2 coefficient keeps the value as-is
        let x2 = Monomial::var(RealVar::x(2));
        let frame = WittFrame::build(4).unwrap();
        assert_eq!(f.value_at(&x2), *frame.fd(1));
    }

    #[test]
    fn json_value_as_multivector_text() {
        let text = r#"{
            "p": 1,
            "terms": [
                {"monomial": {"x1": 1}, "value": "(1/2) 1 + (-1/2 i) e1e2"}
            ]
        }"#;
        let f = PolyField::from_json(text).unwrap();
        let x1 = Monomial::var(RealVar::x(1));
        let mut expected = Multivector::zero(4);
        expected.add_term(Blade::ONE, Scalar::from_ratio(1, 2));
        expected.add_term(
            Blade::from_indices(&[1, 2]),
            &-&Scalar::i() * &Scalar::from_ratio(1, 2),
        );
        assert_eq!(f.value_at(&x1), expected);
    }

    #[test]
    fn json_rejects_bad_input() {
        assert!(PolyField::from_json("{\"p\":0,\"terms\":[]}").is_err());
        let bad_key = r#"{"p":1,"terms":[{"monomial":{"q1":1},"value":[{"blade":"1","coeff":"1"}]}]}"#;
        assert!(PolyField::from_json(bad_key).is_err());
        let bad_blade = r#"{"p":1,"terms":[{"monomial":{},"value":[{"blade":"e9","coeff":"1"}]}]}"#;
        assert!(PolyField::from_json(bad_blade).is_err());
    }

    #[test]
    fn monomial_enumeration_counts() {
        // C(v + d, d) monomials of degree ≤ d in v variables
        assert_eq!(monomials_up_to(1, 2).len(), 15); // v=4, d=2 → C(6,2)=15
        assert_eq!(monomials_up_to(2, 1).len(), 9); // v=8, d=1 → 1+8
        assert_eq!(monomials_up_to(2, 2).len(), 45); // C(10,2)=45
        let ms = monomials_up_to(1, 1);
        assert_eq!(ms[0], Monomial::one());
        assert_eq!(ms.len(), 5);
    }

    #[test]
    fn degree_cap_guards_loader() {
        let deep = r#"{"p":1,"terms":[{"monomial":{"x1":9},"value":[{"blade":"1","coeff":"1"}]}]}"#;
        assert!(matches!(
            PolyField::from_json(deep),
            Err(Error::DegreeCap { requested: 9, .. })
        ));
    }
}
