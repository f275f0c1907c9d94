//! Exact Bernoulli numbers: the table, von Staudt-Clausen denominators,
//! and modular reduction with its obstruction guard.
//!
//! Run with: cargo run --example bernoulli_numbers

use multiharmonic::{bernoulli_mod, bernoulli_numbers, staudt_clausen_denominator};

fn main() {
    let table = bernoulli_numbers(30);
    println!("first Bernoulli numbers (B_1 = -1/2 convention):");
    for k in 0..=12 {
        println!("  B_{k:<2} = {}", table.get(k));
    }

    println!("\neven-index denominators are products of primes q with (q-1) | k:");
    for k in [2u64, 4, 12, 30] {
        println!(
            "  k = {k:<2}: denominator {} = staudt product {}",
            table.get(k as usize).denom(),
            staudt_clausen_denominator(k).unwrap()
        );
    }

    println!("\nmodular reduction works when the denominator is a unit:");
    println!("  B_18 mod 5  = {}", bernoulli_mod(18, 5).unwrap().value());
    println!("  B_2  mod 5  = {}", bernoulli_mod(2, 5).unwrap().value());
    match bernoulli_mod(4, 30) {
        Err(e) => println!("  B_4  mod 30 -> {e}"),
        Ok(v) => println!("  B_4  mod 30 = {v} (unexpected)"),
    }

    let t = std::time::Instant::now();
    let big = bernoulli_numbers(838);
    println!(
        "\ntable to index 838 in {:.0?}; B_838 has a {}-digit numerator and denominator {}",
        t.elapsed(),
        big.get(838)
            .numer()
            .to_string()
            .trim_start_matches('-')
            .len(),
        big.get(838).denom()
    );
}
