//! Monogenicity statuses of polynomial spinor fields: constants, a witness
//! that fails everything, and the q-monogenic field shipped in
//! examples/fields/qmon_b.json.
//!
//! Run with: cargo run --example monogenicity_check

use qclif::fields::{Monomial, RealVar};
use qclif::operators::monogenicity_report;
use qclif::{PolyField, Scalar, WittFrame};

fn main() {
    let frame = WittFrame::build(4).unwrap();

    let constant = PolyField::constant(2, frame.idempotent().clone());
    println!("F = I (constant): {:#?}", monogenicity_report(&constant).unwrap());

    // z_1 · I fails all four operators
    let mut z1 = PolyField::zero(2);
    z1.add_term(Monomial::var(RealVar::x(1)), frame.idempotent().clone());
    z1.add_term(
        Monomial::var(RealVar::y(1)),
        frame.idempotent().scale(&Scalar::i()),
    );
    println!("\nF = z_1 I: {:#?}", monogenicity_report(&z1).unwrap());

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fields/qmon_b.json");
    let text = std::fs::read_to_string(path).unwrap();
    let field = PolyField::from_json(&text).unwrap();
    println!(
        "\nF = z̄_2 fd1 I (from {path}):\n{:#?}",
        monogenicity_report(&field).unwrap()
    );
}
