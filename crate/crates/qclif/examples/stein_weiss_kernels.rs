//! The realized Stein–Weiss gradient sets per cell position, and the exact
//! kernel equality with the q-monogenic system on bounded-degree fields.
//!
//! Run with: cargo run --release --example stein_weiss_kernels

use qclif::systems::{kernel_on_degree, q_monogenic_ops, theorem_main_check, ValueSpace};
use qclif::{stein_weiss_set, CellTable, OperatorSet, WittFrame};

fn main() {
    let p = 1;
    let frame = WittFrame::build(2 * p).unwrap();
    let table = CellTable::build(&frame).unwrap();
    let set = OperatorSet::build(p).unwrap();

    println!("gradient sets for p = {p}:");
    for (r, s) in table.cell_keys() {
        let sw = stein_weiss_set(r, s, p).unwrap();
        let ops: Vec<String> = sw
            .gradients
            .iter()
            .map(|g| match g.alternative {
                None => format!("({}){}", g.op, g.sign),
                Some(alt) => format!("({}){} [or ({alt}){}]", g.op, g.sign, g.sign),
            })
            .collect();
        println!("  S^{r}_{s} at {:?}: {}", sw.position, ops.join(", "));
    }

    println!("\nkernel dimensions on degree-≤2 fields:");
    for (r, s) in table.cell_keys() {
        let (_, kernel) = kernel_on_degree(
            &table,
            &set,
            &q_monogenic_ops(),
            ValueSpace::Cell(r, s),
            2,
        )
        .unwrap();
        println!("  q-monogenic fields valued in S^{r}_{s}: dimension {}", kernel.len());
    }

    println!("\nfull kernel-equality check (q-monogenic = gradients), p = {p}:");
    print!("{}", theorem_main_check(p, 2).unwrap());
}
