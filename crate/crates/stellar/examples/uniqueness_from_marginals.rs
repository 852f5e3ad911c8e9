//! Is the whole determined by its parts?
//!
//! For a three-qubit pure state, every density matrix sharing its
//! two-party reduced states is parametrized by a small Gram matrix; a
//! trivial kernel of the linear constraints certifies that the pure state
//! is the only solution. GHZ famously fails this (its correlations are not
//! in the marginals) while the interconvertible η passes — as does almost
//! every state.
//!
//! Run with: cargo run --example uniqueness_from_marginals

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stellar::marginals::{
    gram_extension_system, haar_random_pure, uniqueness_check, ConstraintPairs,
    UniquenessOptions, UniquenessVerdict,
};
use stellar::symmetric::SymmetricState;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn describe(label: &str, psi: &[Complex64]) {
    let opts = UniquenessOptions::default();
    match uniqueness_check(psi, &opts).unwrap() {
        UniquenessVerdict::Unique { kernel_dim, constraint_residual } => {
            println!(
                "  {label:<10} UNIQUE       (kernel dim {kernel_dim}, constraint residual {constraint_residual:.2e})"
            );
        }
        UniquenessVerdict::NotUnique { witness, trace_distance, marginal_error } => {
            println!(
                "  {label:<10} NOT UNIQUE   (witness at trace distance {trace_distance:.4}, marginal error {marginal_error:.2e})"
            );
            println!("             witness diagonal:");
            let m = witness.matrix();
            let diag: Vec<String> = (0..8).map(|i| format!("{:.3}", m[(i, i)].re)).collect();
            println!("             [{}]", diag.join(", "));
        }
        UniquenessVerdict::Inconclusive { kernel_dim } => {
            println!("  {label:<10} INCONCLUSIVE (kernel dim {kernel_dim})");
        }
    }
}

fn main() {
    println!("named states (constraints: ρ₁₂ and ρ₁₃):");
    describe("η", &SymmetricState::eta().to_full_vector().unwrap());
    describe("GHZ", &SymmetricState::ghz().to_full_vector().unwrap());
    describe("W", &SymmetricState::w().to_full_vector().unwrap());
    let d21 = SymmetricState::d21_from_ab(c(3f64.sqrt() / 2.0, 0.0), c(1.0 / 12f64.sqrt(), 0.0))
        .unwrap();
    describe("d21", &d21.to_full_vector().unwrap());

    // The Gram kernel is what separates the two worlds.
    println!("\nconstraint-kernel dimensions:");
    for (label, state) in [("η", SymmetricState::eta()), ("GHZ", SymmetricState::ghz())] {
        let psi = state.to_full_vector().unwrap();
        let system = gram_extension_system(&psi, ConstraintPairs::TwoPairs).unwrap();
        println!("  {label:<4} kernel dim {}", system.kernel_dim());
    }

    // Almost all pure states are pinned by their two-party marginals.
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let opts = UniquenessOptions::default();
    let mut unique = 0;
    let total = 50;
    for _ in 0..total {
        let psi = haar_random_pure(3, &mut rng);
        if matches!(
            uniqueness_check(&psi, &opts).unwrap(),
            UniquenessVerdict::Unique { .. }
        ) {
            unique += 1;
        }
    }
    println!("\nHaar-random states: {unique}/{total} unique");
}
