//! Exact Bernoulli numbers and polynomials (convention B1 = -1/2), their
//! modular reductions with von Staudt-Clausen denominator guards, and the
//! Raabe multiplication / half-argument identities.
//!
//! The table is grown lazily behind a process-wide lock and every modular
//! value is derived from the exact rationals; there is no independent mod-p
//! recurrence.

use std::sync::Mutex;

use num::bigint::BigInt;
use num::{One, Zero};

use crate::arith::{rational, rational_mod, Rational, Residue};
use crate::error::{Error, Result};

static TABLE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Exact values B_0 .. B_N.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    /// Snapshot of the shared table, grown to index `n` if needed.
    pub fn up_to(n: usize) -> Self {
        let mut table = TABLE.lock().unwrap();
        grow(&mut table, n);
        BernoulliTable {
            values: table[..=n].to_vec(),
        }
    }

    pub fn get(&self, k: usize) -> &Rational {
        &self.values[k]
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Exact Bernoulli table up to index `n`, computed by the defining
/// recurrence sum_{j<=k} C(k+1, j) B_j = 0.
pub fn bernoulli_numbers(n: usize) -> BernoulliTable {
    BernoulliTable::up_to(n)
}

/// Single exact Bernoulli number B_k (cached).
pub fn bernoulli(k: usize) -> Rational {
    let mut table = TABLE.lock().unwrap();
    grow(&mut table, k);
    table[k].clone()
}

fn primes_up_to(n: usize) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

// The recurrence runs over integers A_j = B_j * D with D the product of all
// primes <= N + 1; von Staudt-Clausen guarantees every denominator divides D,
// so each step is exact integer arithmetic with one gcd reduction per index
// at the end.
fn grow(table: &mut Vec<Rational>, upto: usize) {
    if table.len() > upto {
        return;
    }
    let scale = primes_up_to(upto + 1)
        .iter()
        .fold(BigInt::one(), |acc, &p| acc * BigInt::from(p));
    let mut scaled: Vec<BigInt> = table
        .iter()
        .map(|b| {
            let v = b * Rational::from_integer(scale.clone());
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect();
    if scaled.is_empty() {
        scaled.push(scale.clone()); // B0 = 1
    }
    for k in scaled.len()..=upto {
        if k % 2 == 1 && k > 1 {
            scaled.push(BigInt::zero());
            continue;
        }
        if k == 1 {
            scaled.push(-&scale / 2);
            continue;
        }
        // sum_{j=0}^{k-1} C(k+1, j) A_j over the nonzero j: 0, 1, even >= 2
        let kk = BigInt::from(k as u64 + 1);
        let mut sum = scaled[0].clone(); // C(k+1,0) = 1
        sum += -&scale / 2 * &kk; // C(k+1,1) * A_1
        let mut binom = &kk * BigInt::from(k as u64) / 2; // C(k+1,2)
        let mut j = 2usize;
        while j <= k - 2 {
            sum += &binom * &scaled[j];
            // C(k+1, j+2) from C(k+1, j)
            binom = binom * BigInt::from((k + 1 - j) as u64) * BigInt::from((k - j) as u64)
                / BigInt::from((j + 1) as u64)
                / BigInt::from((j + 2) as u64);
            j += 2;
        }
        let a = -sum / kk;
        scaled.push(a);
    }
    table.clear();
    table.extend(scaled.into_iter().map(|a| Rational::new(a, scale.clone())));
}

/// Evaluates the Bernoulli polynomial B_k(x) = sum C(k, j) B_j x^{k-j}.
pub fn bernoulli_poly_eval(k: usize, x: &Rational) -> Rational {
    let table = bernoulli_numbers(k);
    let mut acc = Rational::zero();
    let mut binom = BigInt::one();
    let mut xpow = vec![Rational::one()];
    for _ in 1..=k {
        xpow.push(xpow.last().unwrap() * x);
    }
    for j in 0..=k {
        if !table.get(j).is_zero() {
            acc += table.get(j) * Rational::from_integer(binom.clone()) * &xpow[k - j];
        }
        if j < k {
            binom = binom * BigInt::from((k - j) as u64) / BigInt::from((j + 1) as u64);
        }
    }
    acc
}

/// Product of the primes q with (q - 1) | k; by von Staudt-Clausen this is
/// the exact denominator of B_k for even k.
pub fn staudt_clausen_denominator(k: u64) -> Result<BigInt> {
    if k == 0 || !k.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "staudt_clausen_denominator needs even k >= 2, got {k}"
        )));
    }
    let mut d = BigInt::one();
    for q in primes_up_to(k as usize + 1) {
        if k.is_multiple_of(q - 1) {
            d *= BigInt::from(q);
        }
    }
    Ok(d)
}

/// B_k reduced modulo m; fails when a prime of m obstructs the denominator.
pub fn bernoulli_mod(k: usize, m: u64) -> Result<Residue> {
    rational_mod(&bernoulli(k), m)
}

/// Both sides of Raabe's multiplication identity
/// m^{k-1} sum_{r=0}^{m-1} B_k(x + r/m) = B_k(m x).
pub fn raabe_multiplication(m: u64, k: usize, x: &Rational) -> (Rational, Rational) {
    assert!(m >= 1);
    let mut sum = Rational::zero();
    for r in 0..m {
        let shifted = x + rational(r as i64, m as i64);
        sum += bernoulli_poly_eval(k, &shifted);
    }
    let factor = if k >= 1 {
        Rational::from_integer(BigInt::from(m).pow(k as u32 - 1))
    } else {
        rational(1, m as i64)
    };
    let lhs = factor * sum;
    let rhs = bernoulli_poly_eval(k, &(x * Rational::from_integer(BigInt::from(m))));
    (lhs, rhs)
}

/// Both sides of B_{2n}(1/2) = ((1 - 2^{2n-1}) / 2^{2n-1}) B_{2n}.
pub fn half_value_identity(nn: usize) -> (Rational, Rational) {
    assert!(nn >= 1);
    let lhs = bernoulli_poly_eval(2 * nn, &rational(1, 2));
    let two_pow = BigInt::from(2).pow(2 * nn as u32 - 1);
    let rhs = Rational::new(BigInt::one() - &two_pow, two_pow) * bernoulli(2 * nn);
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gcd_u64;

    #[test]
    fn table_basics() {
        let t = bernoulli_numbers(12);
        assert_eq!(*t.get(0), rational(1, 1));
        assert_eq!(*t.get(1), rational(-1, 2));
        assert_eq!(*t.get(2), rational(1, 6));
        assert_eq!(*t.get(3), rational(0, 1));
        assert_eq!(*t.get(12), rational(-691, 2730));
        assert_eq!(bernoulli(18), rational(43867, 798));
    }

    #[test]
    fn recurrence_residual_vanishes() {
        let n = 200;
        let t = bernoulli_numbers(n);
        for k in 1..=n {
            let mut binom = BigInt::one();
            let mut sum = Rational::zero();
            for j in 0..=k {
                sum += t.get(j) * Rational::from_integer(binom.clone());
                binom = binom * BigInt::from((k + 1 - j) as u64) / BigInt::from((j + 1) as u64);
            }
            assert!(sum.is_zero(), "recurrence residual nonzero at k = {k}");
        }
    }

    #[test]
    fn staudt_clausen_examples() {
        assert_eq!(staudt_clausen_denominator(2).unwrap(), BigInt::from(6));
        assert_eq!(staudt_clausen_denominator(4).unwrap(), BigInt::from(30));
        assert_eq!(staudt_clausen_denominator(12).unwrap(), BigInt::from(2730));
        assert!(staudt_clausen_denominator(0).is_err());
        assert!(staudt_clausen_denominator(7).is_err());
    }

    #[test]
    fn denominators_match_staudt_clausen() {
        for k in 1..=30usize {
            let b = bernoulli(2 * k);
            let d = staudt_clausen_denominator(2 * k as u64).unwrap();
            assert_eq!(*b.denom(), d, "denominator of B_{}", 2 * k);
        }
    }

    #[test]
    fn poly_eval_anchors() {
        for k in 0..=20 {
            assert_eq!(
                bernoulli_poly_eval(k, &rational(0, 1)),
                bernoulli(k),
                "B_{k}(0)"
            );
        }
        assert_eq!(bernoulli_poly_eval(2, &rational(1, 2)), rational(-1, 12));
        assert_eq!(bernoulli_poly_eval(1, &rational(1, 1)), rational(1, 2));
    }

    #[test]
    fn bernoulli_mod_examples() {
        assert_eq!(bernoulli_mod(2, 5).unwrap().value(), 1);
        assert_eq!(bernoulli_mod(18, 5).unwrap().value(), 4);
        assert!(matches!(
            bernoulli_mod(4, 30),
            Err(Error::NotInvertible { .. })
        ));
        assert_eq!(bernoulli_mod(3, 11).unwrap().value(), 0);
    }

    #[test]
    fn raabe_grid() {
        let xs = [
            rational(0, 1),
            rational(1, 2),
            rational(1, 3),
            rational(2, 1),
            rational(-1, 1),
        ];
        for m in 1..=5u64 {
            for k in 0..=10usize {
                for x in &xs {
                    let (lhs, rhs) = raabe_multiplication(m, k, x);
                    assert_eq!(lhs, rhs, "raabe m={m} k={k} x={x}");
                }
            }
        }
    }

    #[test]
    fn raabe_anchor_values() {
        let (lhs, rhs) = raabe_multiplication(2, 2, &rational(0, 1));
        assert_eq!(lhs, rational(1, 6));
        assert_eq!(rhs, rational(1, 6));
        let (lhs, rhs) = raabe_multiplication(3, 4, &rational(1, 2));
        assert_eq!(lhs, bernoulli_poly_eval(4, &rational(3, 2)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn half_value_grid() {
        let expected = [rational(-1, 12), rational(7, 240), rational(-31, 1344)];
        for nn in 1..=20usize {
            let (lhs, rhs) = half_value_identity(nn);
            assert_eq!(lhs, rhs, "half-value nn={nn}");
            if nn <= 3 {
                assert_eq!(lhs, expected[nn - 1]);
            }
        }
    }

    #[test]
    fn modular_value_consistent_with_denominator_product() {
        // bernoulli_mod(k, m) * staudt(k) == numerator (mod m) whenever defined
        for k in [2usize, 6, 10, 14, 18, 22] {
            let m = 101u64;
            let b = bernoulli(k);
            let d = staudt_clausen_denominator(k as u64).unwrap();
            let dm = (&d % BigInt::from(m)).to_u64_digits().1[0];
            assert_eq!(gcd_u64(dm, m), 1);
            let got = bernoulli_mod(k, m).unwrap().scale(dm);
            assert_eq!(got, Residue::from_bigint(b.numer(), m));
        }
    }
}
