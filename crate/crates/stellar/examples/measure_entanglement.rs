//! Three-tangle and pairwise concurrence of three-qubit states.
//!
//! GHZ carries all its entanglement in the three-party tangle (τ = 1,
//! every pair concurrence 0); the W-superposition state η spreads it out
//! (τ = 1/3, every pair concurrence 1/3) and so survives losing a qubit.
//!
//! Run with: cargo run --example measure_entanglement

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stellar::measures::measure_report;
use stellar::symmetric::SymmetricState;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn row(label: &str, state: &SymmetricState) {
    let report = measure_report(state).unwrap();
    println!(
        "  {:<14} τ = {:.9}   C₁₂ = {:.9}  C₁₃ = {:.9}  C₂₃ = {:.9}",
        label, report.tangle, report.concurrences[0], report.concurrences[1], report.concurrences[2]
    );
}

fn main() {
    println!("named states:");
    row("GHZ", &SymmetricState::ghz());
    row("η", &SymmetricState::eta());
    row("W", &SymmetricState::w());
    row("W̄", &SymmetricState::wbar());
    let product =
        SymmetricState::new(3, vec![c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.)]).unwrap();
    row("|000⟩", &product);

    // Interpolate between the GHZ-like and W-like regimes of the
    // canonical family a|000⟩ + √3 b|W⟩.
    println!("\ncanonical family a|000⟩ + √3 b|W⟩:");
    for k in 0..=5 {
        let a = k as f64 / 5.0;
        let b = ((1.0 - a * a) / 3.0).sqrt();
        if b < 1e-9 {
            continue;
        }
        let state = SymmetricState::d21_from_ab(c(a, 0.0), c(b, 0.0)).unwrap();
        row(&format!("a = {a:.1}"), &state);
    }

    // Symmetric states always have equal pair concurrences.
    println!("\nrandom symmetric states:");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..3 {
        let state = SymmetricState::random(3, &mut rng).unwrap();
        row(&format!("random {i}"), &state);
    }
}
