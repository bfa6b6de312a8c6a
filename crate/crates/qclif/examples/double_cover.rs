//! The complex structures I, J, K as signed generator permutations, the spin
//! elements s_I and s_J, and the double-cover check s e s⁻¹ = S[e].
//!
//! Run with: cargo run --example double_cover

use qclif::{double_cover_check, Multivector, SpinElement, StructureMap};

fn main() {
    let p = 1;
    let i = StructureMap::new_i(2 * p);
    let j = StructureMap::new_j(p);
    let k = StructureMap::new_k(p);

    println!("generator images for p = {p}:");
    for alpha in 1..=4 * p {
        let e = Multivector::generator(4 * p, alpha);
        println!(
            "  I[e{alpha}] = {}   J[e{alpha}] = {}   K[e{alpha}] = {}",
            i.apply(&e).unwrap(),
            j.apply(&e).unwrap(),
            k.apply(&e).unwrap()
        );
    }

    let s_i = SpinElement::new_i(2 * p).unwrap();
    let s_j = SpinElement::new_j(p).unwrap();
    println!("\ns_I = {}", s_i.value());
    println!("s_J = {}", s_j.value());

    println!("\n{}", double_cover_check(&s_i, &i));
    println!("{}", double_cover_check(&s_j, &j));
}
