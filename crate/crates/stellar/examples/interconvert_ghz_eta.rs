//! SLOCC interconversion of GHZ and η.
//!
//! Both states live in the family D_{1,1,1}, so an identical invertible
//! local operation A ⊗ A ⊗ A carries one onto the other. The search works
//! entirely on the stars: a Möbius map matching the two constellations is
//! lifted back to a 2×2 operation and certified on the full state vector.
//!
//! Run with: cargo run --example interconvert_ghz_eta

use num_complex::Complex64;
use stellar::slocc::{slocc_equivalent, verify_ilo};
use stellar::symmetric::SymmetricState;
use stellar::tol::TOL;

fn main() {
    let eta = SymmetricState::eta();
    let ghz = SymmetricState::ghz();

    let op = slocc_equivalent(&eta, &ghz, TOL.cluster)
        .expect("η and GHZ share the family D_{1,1,1}");

    println!("A (det-normalized, phase-fixed):");
    for row in op.matrix() {
        println!(
            "  [{:+.6}{:+.6}i   {:+.6}{:+.6}i]",
            row[0].re, row[0].im, row[1].re, row[1].im
        );
    }

    let proof = verify_ilo(&op, &eta, &ghz).expect("returned operation must verify");
    println!("\nA⊗A⊗A |η⟩ = λ|GHZ⟩ with λ = {:.6}{:+.6}i", proof.factor.re, proof.factor.im);
    println!("proportionality residual: {:.3e}", proof.residual);

    // Star-by-star: the Möbius action of A maps {0, 1, ∞} onto the cube
    // roots of unity.
    println!("\nstar images under the Möbius action:");
    let mobius = op.mobius();
    for p in eta.majorana_stars().points() {
        let image = mobius.apply(*p);
        println!("  {p:?} ↦ {image:?}");
    }

    // Spinor-by-spinor the map acts with simple scale factors.
    println!("\nper-spinor factors A|ε'⟩ = μ|ε⟩:");
    for p in eta.majorana_stars().points() {
        let sp = stellar::sphere::Spinor::from_point(*p);
        let image = op.apply_raw(sp.to_vector());
        let target = stellar::sphere::Spinor::from_point(mobius.apply(*p)).to_vector();
        let mu: Complex64 = target[0].conj() * image[0] + target[1].conj() * image[1];
        println!("  star {p:?}: |μ| = {:.6}, arg μ = {:+.6}", mu.norm(), mu.arg());
    }

    // The reverse direction verifies as well.
    let back = slocc_equivalent(&ghz, &eta, TOL.cluster).unwrap();
    let back_proof = verify_ilo(&back, &ghz, &eta).unwrap();
    println!("\nreverse operation residual: {:.3e}", back_proof.residual);

    // And GHZ vs W has no interconversion: different families.
    let w = SymmetricState::w();
    println!(
        "GHZ ↔ W interconvertible: {}",
        slocc_equivalent(&ghz, &w, TOL.cluster).is_some()
    );
}
