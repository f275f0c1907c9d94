//! The brute-force triple-sum oracle: sign patterns, coprimality filters,
//! and the non-invertible-index guard.
//!
//! Run with: cargo run --example triple_sums

use multiharmonic::{triple_sum_naive, CoprimalityFilter, SignPattern};

fn main() {
    let empty = CoprimalityFilter::empty();

    // sum over i+j+k = 5 of 1/(ijk) is exactly 7/4; reduced mod 5 that is 3
    let uniform = triple_sum_naive(5, SignPattern::Uniform, &empty, 5).unwrap();
    println!(
        "sum 1/(ijk) over i+j+k=5           mod 5: {}",
        uniform.value()
    );

    // the alternating version weights each term by (-1)^i; exactly -3/4
    let alternating = triple_sum_naive(5, SignPattern::AlternatingFirst, &empty, 5).unwrap();
    println!(
        "sum (-1)^i/(ijk) over i+j+k=5      mod 5: {}",
        alternating.value()
    );

    // a coprimality filter admits only indices coprime to the listed primes
    let filter = CoprimalityFilter::new([5]);
    let filtered = triple_sum_naive(10, SignPattern::Uniform, &filter, 5).unwrap();
    println!(
        "filtered sum at 10, indices coprime to 5: {}",
        filtered.value()
    );

    // admitted indices must be units modulo the evaluation modulus
    match triple_sum_naive(4, SignPattern::Uniform, &empty, 4) {
        Err(e) => println!("at N=4 mod 4: {e}"),
        Ok(v) => println!("unexpected: {v}"),
    }

    // the doubling law: the sum at 2N is twice the sum at N, mod N
    for n in [9u64, 15, 25, 35] {
        let f = multiharmonic::factorize(n).unwrap();
        let filter = CoprimalityFilter::from_factorization(&f);
        let (lhs, rhs) =
            multiharmonic::doubling_check(n, SignPattern::AlternatingFirst, &filter, n).unwrap();
        println!(
            "doubling at N={n:<3}: sum(2N) = {} vs 2 sum(N) = {}",
            lhs.value(),
            rhs.value()
        );
    }
}
