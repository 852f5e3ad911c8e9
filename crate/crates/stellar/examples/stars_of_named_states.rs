//! Majorana stars of the named three-qubit states.
//!
//! Every symmetric state of N qubits is a constellation of N points on the
//! Bloch sphere. This example extracts the stars of GHZ, W, η, and a
//! product state and prints them as spherical angles and Cartesian
//! coordinates.
//!
//! Run with: cargo run --example stars_of_named_states

use stellar::sphere::Spinor;
use stellar::symmetric::SymmetricState;

fn print_stars(label: &str, state: &SymmetricState) {
    println!("{label}");
    for point in state.majorana_stars().points() {
        let (alpha, beta) = point.angles();
        let (x, y, z) = point.bloch();
        println!(
            "  α = {alpha:8.5}  β = {beta:8.5}   (x, y, z) = ({x:+.5}, {y:+.5}, {z:+.5})"
        );
    }
    println!();
}

fn main() {
    // GHZ: three equatorial stars at longitudes 0°, 120°, 240°
    // (the cube roots of unity under stereographic projection).
    print_stars("GHZ = (|000⟩ + |111⟩)/√2", &SymmetricState::ghz());

    // W: a doubly-degenerate star at the north pole plus one at the south
    // pole — the {0, 0, ∞} root multiset.
    print_stars("W = (|100⟩ + |010⟩ + |001⟩)/√3", &SymmetricState::w());

    // η = (W + W̄)/√2: stars at 0, 1, and ∞ — north pole, equator, south
    // pole, all on one meridian.
    print_stars("η = (|W⟩ + |W̄⟩)/√2", &SymmetricState::eta());

    // A product state has all stars coincident.
    let spinor = Spinor::from_angles(0.8, 1.1);
    let product = SymmetricState::product(3, &spinor).unwrap();
    print_stars("product state |ε,ε,ε⟩ with (α, β) = (0.8, 1.1)", &product);
}
