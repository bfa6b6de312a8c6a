//! Witt basis construction: Grassmann, isotropy and duality identities, the
//! primitive idempotent, generator reconstruction, and the spinor basis.
//!
//! Run with: cargo run --example witt_identities

use qclif::{SpinorBasis, WittFrame};

fn main() {
    for n in 1..=4 {
        let frame = WittFrame::build(n).unwrap();
        let identities = frame.identities_report();
        let reconstruction = frame.reconstruction_identities();
        println!(
            "n = {n}: {} identity checks, {} reconstruction checks — {}",
            identities.checks.len(),
            reconstruction.checks.len(),
            if identities.passed() && reconstruction.passed() { "all pass" } else { "FAILED" }
        );
    }

    let frame = WittFrame::build(2).unwrap();
    println!("\nn = 2 frame:");
    println!("  f_1  = {}", frame.f(1));
    println!("  fd_1 = {}", frame.fd(1));
    println!("  I    = {}", frame.idempotent());
    println!("  f_1 I = {}", frame.f(1) * frame.idempotent());

    let basis = SpinorBasis::build(&frame).unwrap();
    println!("\nspinor basis of S (dimension {}):", basis.dim());
    for elem in basis.elements() {
        println!("  {:8} = {}", elem.label(), elem.value);
    }
}
