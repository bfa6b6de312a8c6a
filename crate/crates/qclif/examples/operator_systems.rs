//! First-order systems of the Hermitian operators on cell-valued fields:
//! the worked p = 2 systems, emitted symbolically with exact coefficients.
//!
//! Run with: cargo run --example operator_systems

use qclif::operators::{OpName, OperatorSet, SplitSign};
use qclif::{emit_system, CellTable, SystemOp, WittFrame};

fn main() {
    let frame = WittFrame::build(4).unwrap();
    let table = CellTable::build(&frame).unwrap();
    let set = OperatorSet::build(2).unwrap();

    for (r, s) in [(1, 1), (2, 2)] {
        println!("=== cell S^{r}_{s} ===");
        for name in OpName::HERMITIAN {
            let system = emit_system(&table, &set, SystemOp::full(name), r, s).unwrap();
            println!("{name} F = 0  ⇔  {} equations:", system.equations().len());
            for eq in system.equations() {
                println!("    {}", eq.text());
            }
        }
    }

    // the split parts of dz on S^1_1 land in S^2_0 and S^2_2
    println!("=== splits of dz on S^1_1 ===");
    for sign in [SplitSign::Plus, SplitSign::Minus] {
        let system =
            emit_system(&table, &set, SystemOp::split(OpName::Dz, sign), 1, 1).unwrap();
        println!("(dz){sign}: {} equations", system.equations().len());
        for eq in system.equations() {
            println!("    {}", eq.text());
        }
    }
}
