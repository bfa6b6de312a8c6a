//! Geometric products, conjugations and the Hermitian inner product in the
//! exact complex Clifford algebra, plus the two quaternion embeddings.
//!
//! Run with: cargo run --example clifford_basics

use qclif::{verify_quaternion_embeddings, Multivector, Scalar};

fn main() {
    let e1 = Multivector::generator(4, 1);
    let e2 = Multivector::generator(4, 2);

    println!("e1 * e1 = {}", &e1 * &e1);
    println!("e1 * e2 = {}", &e1 * &e2);
    println!("e2 * e1 = {}", &e2 * &e1);

    let e12 = &e1 * &e2;
    println!("(e1 e2)^2 = {}", &e12 * &e12);

    println!("bar(e1) = {}", e1.bar());
    println!("dagger(i e1) = {}", e1.scale(&Scalar::i()).dagger());

    let x = &e1.scale(&Scalar::from_int(3)) + &e2.scale(&Scalar::from_int(4));
    println!("x = {x}");
    println!("x^2 = {}  (minus the squared norm)", &x * &x);
    println!("(x, x) = {}", x.hermitian_inner(&x).unwrap());

    println!("\n{}", verify_quaternion_embeddings());
}
