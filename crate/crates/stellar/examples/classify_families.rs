//! Degeneracy-family classification of symmetric states.
//!
//! The multiset of star multiplicities {n₁ ≥ n₂ ≥ …} is invariant under
//! identical invertible local operations, so it labels SLOCC families:
//! D_{3} (separable), D_{2,1} (W-class), D_{1,1,1} (GHZ-class), and so on
//! for more qubits.
//!
//! Run with: cargo run --example classify_families

use num_complex::Complex64;
use stellar::slocc::{classify, classify_detailed};
use stellar::sphere::Spinor;
use stellar::symmetric::{symmetrize, SymmetricState};
use stellar::tol::TOL;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() {
    let product = SymmetricState::product(3, &Spinor::from_angles(0.3, 0.9)).unwrap();
    let d21 = SymmetricState::d21_from_ab(c(0.6, 0.0), c((0.64f64 / 3.0).sqrt(), 0.0)).unwrap();

    let three_qubit: [(&str, SymmetricState); 5] = [
        ("product |ε,ε,ε⟩", product),
        ("W", SymmetricState::w()),
        ("0.6|000⟩ + √3·b|W⟩", d21),
        ("GHZ", SymmetricState::ghz()),
        ("η", SymmetricState::eta()),
    ];
    println!("three qubits:");
    for (label, state) in &three_qubit {
        println!("  {:<22} {}", label, classify(&state.majorana_stars()));
    }

    // Four qubits: build states with prescribed star multiplicities.
    let up = Spinor::up();
    let down = Spinor::down();
    let side = Spinor::from_angles(0.0, std::f64::consts::FRAC_PI_2);
    let four_qubit = [
        ("|0000⟩", symmetrize(&[up, up, up, up]).unwrap()),
        ("stars {0,0,0,∞}", symmetrize(&[up, up, up, down]).unwrap()),
        ("stars {0,0,∞,∞}", symmetrize(&[up, up, down, down]).unwrap()),
        ("stars {0,0,1,∞}", symmetrize(&[up, up, side, down]).unwrap()),
        ("4-qubit GHZ", {
            let s = c(1.0 / 2f64.sqrt(), 0.0);
            SymmetricState::new(4, vec![s, c(0., 0.), c(0., 0.), c(0., 0.), s]).unwrap()
        }),
    ];
    println!("\nfour qubits:");
    for (label, state) in &four_qubit {
        println!("  {:<22} {}", label, classify(&state.majorana_stars()));
    }

    // The detailed classification exposes the clustering itself.
    let detail = classify_detailed(&SymmetricState::eta().majorana_stars(), TOL.cluster);
    println!(
        "\nη detail: family {}, {} clusters, min inter-cluster gap {:.3}, ambiguous: {}",
        detail.family,
        detail.clusters.len(),
        detail.min_intercluster_gap.unwrap_or(f64::NAN),
        detail.ambiguous
    );
}
