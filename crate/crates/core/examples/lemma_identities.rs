//! The lemma layer: restricted power sums two ways, Raabe multiplication,
//! the half-argument identity, progression reciprocal sums, and cube sums.
//!
//! Run with: cargo run --example lemma_identities

use multiharmonic::arith::rational;
use multiharmonic::{
    ap_power_sum_bernoulli, ap_power_sum_direct, factorize, half_cube_sum, half_value_identity,
    progression_reciprocal_sum, progression_square_sum, raabe_multiplication, signed_cube_sum,
};

fn main() {
    println!("restricted power sums, direct vs Bernoulli closed form:");
    for (p, m, r, k) in [(3u64, 2u64, 1i64, 1u32), (5, 1, 0, 2), (10, 3, -2, 4)] {
        let direct = ap_power_sum_direct(p, m, r, k);
        let closed = ap_power_sum_bernoulli(p, m, r, k);
        println!(
            "  p={p} m={m} r={r} k={k}: {direct} = {closed} ({})",
            direct == closed
        );
    }

    println!("\nRaabe multiplication m^(k-1) sum B_k(x + r/m) = B_k(mx):");
    for (m, k, x) in [(2u64, 2usize, rational(0, 1)), (3, 4, rational(1, 2))] {
        let (lhs, rhs) = raabe_multiplication(m, k, &x);
        println!("  m={m} k={k} x={x}: {lhs} = {rhs}");
    }

    println!("\nhalf-argument values B_2n(1/2):");
    for nn in 1..=3usize {
        let (lhs, rhs) = half_value_identity(nn);
        println!("  2n={}: {lhs} = {rhs}", 2 * nn);
    }

    println!("\nprogression reciprocal sums vs x^(-1) prod p^(r-1):");
    for (x, n) in [(2u64, 25u64), (1, 15), (4, 175)] {
        let f = factorize(n).unwrap();
        let s = progression_reciprocal_sum(x, 1, &f).unwrap();
        println!("  x={x} n={n}: sum = {} (mod {})", s.value(), s.modulus());
    }

    println!("\nsquared progression sums (computed modulo n^2):");
    for n in [5u64, 25, 7] {
        let f = factorize(n).unwrap();
        let s = progression_square_sum(&f).unwrap();
        println!("  n={n}: {} (mod {})", s.value(), s.modulus());
    }

    println!("\ncube-reciprocal sums over units:");
    for n in [5u64, 7, 35] {
        let f = factorize(n).unwrap();
        let signed = signed_cube_sum(&f).unwrap();
        let half = half_cube_sum(&f).unwrap();
        println!(
            "  P={n}: signed {} | half-range {} (signed = half/4: {})",
            signed.value(),
            half.value(),
            signed == half.scale(multiharmonic::mod_inverse(4, n).unwrap().value())
        );
    }
}
