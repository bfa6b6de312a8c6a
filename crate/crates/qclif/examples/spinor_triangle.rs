//! The symplectic-cell triangle: P, Q, cell bases, ladder scalars, and the
//! exact projection of a spinor onto its cell components.
//!
//! Run with: cargo run --example spinor_triangle

use qclif::cells::alpha;
use qclif::{CellTable, Multivector, WittFrame};

fn main() {
    let p = 2;
    let frame = WittFrame::build(2 * p).unwrap();
    let table = CellTable::build(&frame).unwrap();

    println!("P = {}", table.p_op());
    println!("Q = {}", table.q_op());
    println!("Q = dagger(P): {}", *table.q_op() == table.p_op().dagger());

    println!("\ntriangle for p = {p}:");
    for s in 0..=p {
        let row: Vec<String> = table
            .cells()
            .filter(|((_, cs), _)| *cs == s)
            .map(|(&(r, _), cell)| format!("S^{r}_{s} (dim {})", cell.dim()))
            .collect();
        println!("  {}", row.join("   "));
    }

    println!("\nladder scalars alpha_r^k = (k+1)(p-r-k):");
    for r in 0..=p {
        for k in 0..p.saturating_sub(r) {
            println!("  alpha_{r}^{k} = {}", alpha(p, r, k));
        }
    }

    // PQ acts as alpha_0^0 = 2 on the bottom cell
    let idem = frame.idempotent().clone();
    let pq = table.p_op() * &(table.q_op() * &idem);
    println!("\nP Q I = {pq}");

    // f†_1 f†_2 I splits across the two cells of S^2
    let x = &(frame.fd(1) * frame.fd(2)) * &idem;
    println!("\nsplitting x = fd1 fd2 I across S^2:");
    for ((r, s), part) in table.decompose(&x).unwrap() {
        println!("  component in S^{r}_{s}: {part}");
    }
    let back: Multivector = table
        .decompose(&x)
        .unwrap()
        .values()
        .fold(Multivector::zero(8), |acc, v| &acc + v);
    println!("  components sum back to x: {}", back == x);
}
