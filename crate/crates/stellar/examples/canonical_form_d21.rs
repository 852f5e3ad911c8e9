//! Canonical form of two-distinct-star states.
//!
//! Any D_{2,1} state can be rotated (same rotation on every qubit) so its
//! doubly-degenerate star points at |0⟩, leaving a|000⟩ + √3 b|W⟩ with
//! |a|² + 3|b|² = 1. A further non-unitary operation sends it all the way
//! to the W state.
//!
//! Run with: cargo run --example canonical_form_d21

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use stellar::slocc::{canonical_d21, ilo_to_w, reconstruct_d21, verify_ilo};
use stellar::symmetric::SymmetricState;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);

    // Build a canonical state from a spinor, hide it behind a random
    // collective rotation, then recover the parameters.
    let c0 = c(0.4, 0.3);
    let c1 = c(-0.5, 0.7);
    let state = SymmetricState::d21_from_spinor(c0, c1).unwrap();
    let alpha = rng.gen_range(0.0..2.0 * PI);
    let beta = rng.gen_range(0.0..PI);
    let hidden = state.collective_unrotate(alpha, beta);

    let canon = canonical_d21(&hidden).unwrap();
    println!("hidden rotation:     (α, β) = ({alpha:.6}, {beta:.6})");
    println!("recovered rotation:  (α, β) = ({:.6}, {:.6})", canon.rotation.0, canon.rotation.1);
    println!("a = {:+.6}{:+.6}i", canon.a.re, canon.a.im);
    println!("b = {:+.6}{:+.6}i", canon.b.re, canon.b.im);
    println!(
        "|a|² + 3|b|² = {:.12} (leakage residual {:.3e})",
        canon.a.norm_sqr() + 3.0 * canon.b.norm_sqr(),
        canon.residual
    );

    let rebuilt = reconstruct_d21(&canon).unwrap();
    println!("reconstruction fidelity: {:.15}", rebuilt.fidelity(&hidden));

    // The W map: stars {0, 0, z₂} ↦ {0, 0, ∞}.
    let op = ilo_to_w(c0, c1).unwrap();
    let proof = verify_ilo(&op, &state, &SymmetricState::w()).unwrap();
    println!("\nILO to W:");
    for row in op.matrix() {
        println!(
            "  [{:+.6}{:+.6}i   {:+.6}{:+.6}i]",
            row[0].re, row[0].im, row[1].re, row[1].im
        );
    }
    println!("A⊗A⊗A maps the state to W with residual {:.3e}", proof.residual);

    // Sweep: the canonical parameters cover the whole family.
    println!("\nrandom sweep:");
    println!("    |a|       |b|     reconstruction fidelity   W-map residual");
    for _ in 0..5 {
        let c0 = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let c1 = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if c1.norm() < 0.2 {
            continue;
        }
        let s = SymmetricState::d21_from_spinor(c0, c1).unwrap();
        let canon = canonical_d21(&s).unwrap();
        let fidelity = reconstruct_d21(&canon).unwrap().fidelity(&s);
        let res = verify_ilo(&ilo_to_w(c0, c1).unwrap(), &s, &SymmetricState::w())
            .unwrap()
            .residual;
        println!(
            "  {:.5}   {:.5}   {fidelity:.15}       {res:.3e}",
            canon.a.norm(),
            canon.b.norm()
        );
    }
}
