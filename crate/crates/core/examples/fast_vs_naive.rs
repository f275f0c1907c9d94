//! The fast inclusion-exclusion evaluators against the O(n^2) oracle:
//! exact agreement on a sweep, and the speedup at larger n.
//!
//! Run with: cargo run --release --example fast_vs_naive

use std::time::Instant;

use multiharmonic::{
    factorize, triple_sum_fast_alternating, triple_sum_fast_uniform, triple_sum_naive,
    CoprimalityFilter, SignPattern,
};

fn main() {
    println!("agreement sweep over odd n <= 500 with prime factors >= 5:");
    let mut checked = 0;
    for n in (5..=500u64).step_by(2) {
        if n % 3 == 0 {
            continue;
        }
        let f = factorize(n).unwrap();
        let filter = CoprimalityFilter::from_factorization(&f);
        let fast_alt = triple_sum_fast_alternating(&f).unwrap();
        let naive_alt = triple_sum_naive(n, SignPattern::AlternatingFirst, &filter, n).unwrap();
        assert_eq!(fast_alt, naive_alt, "alternating at {n}");
        let fast_uni = triple_sum_fast_uniform(&f).unwrap();
        let naive_uni = triple_sum_naive(n, SignPattern::Uniform, &filter, n).unwrap();
        assert_eq!(fast_uni, naive_uni, "uniform at {n}");
        checked += 1;
    }
    println!("  {checked} moduli, all equal on both sign patterns");

    println!("\ntiming at a few sizes (alternating sign):");
    for n in [245u64, 1225, 4235, 9625] {
        let f = factorize(n).unwrap();
        let filter = CoprimalityFilter::from_factorization(&f);

        let t = Instant::now();
        let fast = triple_sum_fast_alternating(&f).unwrap();
        let fast_time = t.elapsed();

        let t = Instant::now();
        let naive = triple_sum_naive(n, SignPattern::AlternatingFirst, &filter, n).unwrap();
        let naive_time = t.elapsed();

        assert_eq!(fast, naive);
        println!(
            "  n = {n:>5}: result {:>5}, naive {:>10.2?}, fast {:>9.2?} ({}x)",
            fast.value(),
            naive_time,
            fast_time,
            (naive_time.as_nanos() / fast_time.as_nanos().max(1))
        );
    }

    println!("\nthe uniform evaluator asserts the mod-n^2 lift before dividing:");
    let f = factorize(1225).unwrap();
    let v = triple_sum_fast_uniform(&f).unwrap();
    println!("  uniform sum at 1225: {}", v.value());
}
