//! Exact big-integer/rational arithmetic and modular primitives.
//!
//! Everything downstream reduces to three currencies: exact [`Rational`]
//! values, canonical [`Residue`] classes, and prime-power [`Factorization`]s.

use num::bigint::BigInt;
use num::{Integer, Signed};

use crate::error::{Error, Result};

/// Arbitrary-precision reduced fraction. `num`'s `BigRational` already
/// maintains the invariants we need: gcd(|num|, den) = 1, den >= 1,
/// zero as 0/1.
pub type Rational = num::BigRational;

/// Shorthand for building a `Rational` from machine integers.
pub fn rational(numerator: i64, denominator: i64) -> Rational {
    Rational::new(BigInt::from(numerator), BigInt::from(denominator))
}

/// Fractional part x - floor(x), with floor toward negative infinity.
pub fn fractional_part(q: &Rational) -> Rational {
    q - q.floor()
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub(crate) fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a) % m
    }
}

/// An integer value paired with its modulus, canonical in `[0, modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Builds `value mod modulus`. Panics if `modulus < 2`.
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        Residue {
            value: value % modulus,
            modulus,
        }
    }

    /// Builds from a possibly negative value, normalizing into `[0, modulus)`.
    pub fn from_signed(value: i128, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        let m = modulus as i128;
        Residue {
            value: value.rem_euclid(m) as u64,
            modulus,
        }
    }

    /// Reduces an arbitrary-precision integer.
    pub fn from_bigint(value: &BigInt, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        let m = BigInt::from(modulus);
        let mut r = value % &m;
        if r.is_negative() {
            r += &m;
        }
        // fits by construction
        let digits = r.to_u64_digits().1;
        Residue {
            value: digits.first().copied().unwrap_or(0),
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn inverse(&self) -> Result<Residue> {
        mod_inverse(self.value as i64, self.modulus)
    }

    pub fn pow(&self, mut exp: u64) -> Residue {
        let mut base = self.value;
        let mut acc = 1u64 % self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(acc, base, self.modulus);
            }
            base = mul_mod(base, base, self.modulus);
            exp >>= 1;
        }
        Residue {
            value: acc,
            modulus: self.modulus,
        }
    }

    /// Multiplies by a plain integer scalar.
    pub fn scale(&self, k: u64) -> Residue {
        Residue {
            value: mul_mod(self.value, k % self.modulus, self.modulus),
            modulus: self.modulus,
        }
    }

    fn check_same(self, other: Residue) -> (u64, u64, u64) {
        assert_eq!(
            self.modulus, other.modulus,
            "residue arithmetic requires equal moduli"
        );
        (self.value, other.value, self.modulus)
    }
}

impl std::ops::Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        let (a, b, m) = self.check_same(rhs);
        Residue {
            value: ((a as u128 + b as u128) % m as u128) as u64,
            modulus: m,
        }
    }
}

impl std::ops::Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        let (a, b, m) = self.check_same(rhs);
        Residue {
            value: if a >= b { a - b } else { m - (b - a) },
            modulus: m,
        }
    }
}

impl std::ops::Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        let (a, b, m) = self.check_same(rhs);
        Residue {
            value: mul_mod(a, b, m),
            modulus: m,
        }
    }
}

impl std::ops::Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }
}

impl std::fmt::Display for Residue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// Extended Euclid inverse of `a` modulo `m`.
pub fn mod_inverse(a: i64, m: u64) -> Result<Residue> {
    assert!(m >= 2, "modulus must be at least 2");
    let a0 = (a as i128).rem_euclid(m as i128) as u64;
    let (mut r0, mut r1) = (m as i128, a0 as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible {
            shared: r0 as u64,
            modulus: m,
        });
    }
    Ok(Residue::from_signed(t0, m))
}

/// Reduces an exact rational modulo `m`: numerator times inverse denominator.
pub fn rational_mod(q: &Rational, m: u64) -> Result<Residue> {
    let den = Residue::from_bigint(q.denom(), m);
    let shared = gcd_u64(den.value(), m);
    if shared != 1 {
        return Err(Error::NotInvertible { shared, modulus: m });
    }
    let num = Residue::from_bigint(q.numer(), m);
    Ok(num * den.inverse()?)
}

/// Ordered prime-power decomposition, exponent descending and ties broken
/// by prime ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Canonicalizes a list of (prime, exponent) pairs.
    pub fn new(mut factors: Vec<(u64, u32)>) -> Result<Self> {
        for &(p, e) in &factors {
            if p < 2 || e == 0 {
                return Err(Error::InvalidInput(format!(
                    "bad prime-power pair ({p}, {e})"
                )));
            }
        }
        factors.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        for w in factors.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidInput(format!("repeated prime {}", w[0].0)));
            }
        }
        Ok(Factorization { factors })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Reconstructs n as the product of the prime powers.
    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product::<u64>()
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> u64 {
        self.primes().product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Euler's totient: prod p^(e-1) (p - 1).
    pub fn euler_phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e - 1) * (p - 1))
            .product()
    }

    /// The factorization of n^2 (exponents doubled).
    pub fn squared(&self) -> Factorization {
        Factorization {
            factors: self.factors.iter().map(|&(p, e)| (p, 2 * e)).collect(),
        }
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(p, e)| {
                if e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Trial-division factorization; intended for desk-scale n.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("cannot factor n = {n} < 2")));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            let mut e = 0u32;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Factorization::new(factors)
}

/// Combines residues with pairwise-coprime moduli into one residue modulo
/// the product.
pub fn crt_combine(parts: &[Residue]) -> Result<Residue> {
    assert!(!parts.is_empty(), "crt_combine needs at least one part");
    let mut acc = parts[0];
    for &part in &parts[1..] {
        let (m1, m2) = (acc.modulus(), part.modulus());
        let g = gcd_u64(m1, m2);
        if g != 1 {
            return Err(Error::NonCoprimeModuli { a: m1, b: m2 });
        }
        let m = m1
            .checked_mul(m2)
            .ok_or_else(|| Error::InvalidInput("CRT modulus overflows u64".into()))?;
        // x = a1 + m1 * ((a2 - a1) * m1^{-1} mod m2)
        let inv = mod_inverse(m1 as i64, m2)?.value();
        let diff = Residue::new(part.value(), m2) - Residue::new(acc.value() % m2, m2);
        let k = mul_mod(diff.value(), inv, m2);
        acc = Residue::new(acc.value() + m1 * k, m);
    }
    Ok(acc)
}

/// Inverse lookup for all units `k <= bound` modulo `m`.
pub struct InverseTable {
    modulus: u64,
    inv: Vec<Option<u64>>,
}

impl InverseTable {
    pub fn new(modulus: u64, bound: u64) -> Self {
        assert!(modulus >= 2 && bound >= 1);
        let mut inv = vec![None; bound as usize + 1];
        for k in 1..=bound {
            if let Ok(r) = mod_inverse(k as i64, modulus) {
                inv[k as usize] = Some(r.value());
            }
        }
        InverseTable { modulus, inv }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Inverse of `k`, or `None` when `k` is out of range or not a unit.
    pub fn get(&self, k: u64) -> Option<u64> {
        self.inv.get(k as usize).copied().flatten()
    }

    /// Number of units in the table.
    pub fn len(&self) -> usize {
        self.inv.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// (k, k^{-1}) pairs in increasing k order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.inv
            .iter()
            .enumerate()
            .filter_map(|(k, v)| v.map(|inv| (k as u64, inv)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(1, 7).unwrap().value(), 1);
        assert_eq!(mod_inverse(3, 5).unwrap().value(), 2);
        assert_eq!(
            mod_inverse(5, 10),
            Err(Error::NotInvertible {
                shared: 5,
                modulus: 10
            })
        );
        // negative input normalizes first
        assert_eq!(mod_inverse(-3, 5).unwrap().value(), 3);
    }

    #[test]
    fn rational_mod_examples() {
        assert_eq!(rational_mod(&rational(0, 1), 7).unwrap().value(), 0);
        assert_eq!(rational_mod(&rational(7, 4), 5).unwrap().value(), 3);
        assert_eq!(rational_mod(&rational(-1, 3), 5).unwrap().value(), 3);
        assert!(matches!(
            rational_mod(&rational(1, 6), 9),
            Err(Error::NotInvertible { shared: 3, .. })
        ));
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(1225).unwrap().factors(), &[(5, 2), (7, 2)]);
        assert_eq!(factorize(175).unwrap().factors(), &[(5, 2), (7, 1)]);
        assert_eq!(factorize(35).unwrap().factors(), &[(5, 1), (7, 1)]);
        assert!(factorize(1).is_err());
        assert!(factorize(0).is_err());
    }

    #[test]
    fn factorization_canonical_order() {
        // exponent descending, ties by prime ascending
        let f = factorize(2 * 2 * 3 * 3 * 3 * 5).unwrap();
        assert_eq!(f.factors(), &[(3, 3), (2, 2), (5, 1)]);
        assert_eq!(f.value(), 540);
        assert_eq!(f.radical(), 30);
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(factorize(5).unwrap().euler_phi(), 4);
        assert_eq!(factorize(35).unwrap().euler_phi(), 24);
        assert_eq!(factorize(1225).unwrap().euler_phi(), 840);
    }

    #[test]
    fn euler_phi_counts_units() {
        for n in 2..=10_000u64 {
            let phi = factorize(n).unwrap().euler_phi();
            let count = (1..=n).filter(|&k| gcd_u64(k, n) == 1).count() as u64;
            assert_eq!(phi, count, "phi({n})");
        }
    }

    #[test]
    fn crt_examples() {
        let single = crt_combine(&[Residue::new(1, 5)]).unwrap();
        assert_eq!((single.value(), single.modulus()), (1, 5));

        let two = crt_combine(&[Residue::new(3, 5), Residue::new(4, 7)]).unwrap();
        assert_eq!((two.value(), two.modulus()), (18, 35));

        let zero = crt_combine(&[Residue::new(0, 4), Residue::new(0, 9)]).unwrap();
        assert_eq!((zero.value(), zero.modulus()), (0, 36));

        assert_eq!(
            crt_combine(&[Residue::new(1, 6), Residue::new(1, 4)]),
            Err(Error::NonCoprimeModuli { a: 6, b: 4 })
        );
    }

    #[test]
    fn crt_matches_exhaustive_scan() {
        let r = crt_combine(&[Residue::new(3, 5), Residue::new(4, 7)]).unwrap();
        let scan: Vec<u64> = (0..35).filter(|x| x % 5 == 3 && x % 7 == 4).collect();
        assert_eq!(scan, vec![r.value()]);
    }

    #[test]
    fn inverse_table_examples() {
        let t = InverseTable::new(5, 4);
        let entries: Vec<(u64, u64)> = t.iter().collect();
        assert_eq!(entries, vec![(1, 1), (2, 3), (3, 2), (4, 4)]);

        let t = InverseTable::new(6, 6);
        let entries: Vec<(u64, u64)> = t.iter().collect();
        assert_eq!(entries, vec![(1, 1), (5, 5)]);

        let t = InverseTable::new(97, 1);
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![(1, 1)]);
    }

    #[test]
    fn residue_ops() {
        let a = Residue::new(3, 7);
        let b = Residue::new(6, 7);
        assert_eq!((a + b).value(), 2);
        assert_eq!((a - b).value(), 4);
        assert_eq!((a * b).value(), 4);
        assert_eq!((-a).value(), 4);
        assert_eq!(a.pow(3).value(), 6);
        assert_eq!(Residue::from_signed(-1, 7).value(), 6);
    }

    #[test]
    #[should_panic(expected = "equal moduli")]
    fn residue_modulus_mixing_panics() {
        let _ = Residue::new(1, 5) + Residue::new(1, 7);
    }

    proptest! {
        #[test]
        fn mod_inverse_roundtrip(a in 1u64..10_000, m in 2u64..10_000) {
            prop_assume!(gcd_u64(a, m) == 1);
            let inv = mod_inverse(a as i64, m).unwrap();
            prop_assert_eq!((Residue::new(a, m) * inv).value(), 1 % m);
        }

        #[test]
        fn rational_mod_times_denominator(p in -500i64..500, q in 1i64..500, m in 2u64..5_000) {
            prop_assume!(gcd_u64((q as u64) % m, m) == 1 && q != 0);
            let r = rational_mod(&rational(p, q), m).unwrap();
            let lhs = r.scale((q as u64) % m);
            prop_assert_eq!(lhs, Residue::from_signed(p as i128, m));
        }

        #[test]
        fn factorize_roundtrip(n in 2u64..500_000) {
            let f = factorize(n).unwrap();
            prop_assert_eq!(f.value(), n);
            // all listed primes really are prime
            for p in f.primes() {
                prop_assert!((2..p).take_while(|d| d * d <= p).all(|d| p % d != 0));
            }
        }

        #[test]
        fn crt_reduces_back(a in 0u64..4, b in 0u64..9, c in 0u64..25) {
            let parts = [Residue::new(a, 4), Residue::new(b, 9), Residue::new(c, 25)];
            let r = crt_combine(&parts).unwrap();
            prop_assert_eq!(r.modulus(), 900);
            for part in parts {
                prop_assert_eq!(r.value() % part.modulus(), part.value());
            }
        }
    }
}
