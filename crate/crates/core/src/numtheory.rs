//! Elementary number theory: Möbius and Euler functions, multiplicative
//! orders, deterministic primality, and projective prime search.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Code parameters: length `m`, prime alphabet size `r`, dimension `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParameterTriple {
    pub m: u64,
    pub r: u64,
    pub k: u32,
}

impl ParameterTriple {
    pub fn new(m: u64, r: u64, k: u32) -> Self {
        ParameterTriple { m, r, k }
    }
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn moebius(t: u64) -> Result<i8> {
    if t == 0 {
        return Err(Error::invalid("moebius is undefined at 0"));
    }
    let mut sign = 1i8;
    for (_, e) in factorize(t) {
        if e > 1 {
            return Ok(0);
        }
        sign = -sign;
    }
    Ok(sign)
}

pub fn euler_phi(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::invalid("euler_phi is undefined at 0"));
    }
    Ok(factorize(m)
        .into_iter()
        .fold(m, |acc, (p, _)| acc / p * (p - 1)))
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `base^exp` as a `u128`, or an overflow error.
pub fn checked_pow(base: u64, exp: u32) -> Result<u128> {
    (base as u128)
        .checked_pow(exp)
        .ok_or(Error::Overflow("integer power"))
}

/// The smallest `k >= 1` with `r^k = 1 (mod m)`.
///
/// Computed by stripping prime factors from `phi(m)` while the power stays 1.
pub fn multiplicative_order(r: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::invalid(format!("modulus must be at least 2, got {m}")));
    }
    if r.gcd(&m) != 1 {
        return Err(Error::invalid(format!("gcd({r}, {m}) != 1")));
    }
    let mut order = euler_phi(m)?;
    for (p, _) in factorize(order) {
        while order % p == 0 && pow_mod(r, order / p, m) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test.
///
/// Trial division below `2^32`; above that, Miller–Rabin with the first twelve
/// primes as witnesses, which is exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < (1 << 32) {
        let mut d = 2u64;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += if d == 2 { 1 } else { 2 };
        }
        return true;
    }
    miller_rabin(n)
}

fn miller_rabin(n: u64) -> bool {
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in SMALL_PRIMES.iter() {
        if n.is_multiple_of(a) {
            return n == a;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `1 + r + ... + r^(k-1)`, i.e. `(r^k - 1)/(r - 1)` for `r >= 2`.
pub fn repunit(r: u64, k: u32) -> Result<u128> {
    let mut acc: u128 = 0;
    for _ in 0..k {
        acc = acc
            .checked_mul(r as u128)
            .and_then(|v| v.checked_add(1))
            .ok_or(Error::Overflow("repunit"))?;
    }
    Ok(acc)
}

/// Every `(r, k)` with `r` prime, `k >= 2` and `p = (r^k - 1)/(r - 1)`.
///
/// Only prime `r` is searched; prime powers would need extension fields.
pub fn is_projective_prime(p: u64) -> Result<Vec<(u64, u32)>> {
    if !is_prime(p) || p == 2 {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    let mut witnesses = Vec::new();
    for r in 2..p {
        // 1 + r is the smallest repunit with k >= 2
        if r + 1 > p {
            break;
        }
        if !is_prime(r) {
            continue;
        }
        let mut sum = 1 + r;
        let mut k = 2u32;
        while sum < p {
            sum = sum * r + 1;
            k += 1;
        }
        if sum == p {
            witnesses.push((r, k));
        }
    }
    Ok(witnesses)
}

/// All `(k, p)` with `k <= k_max` and `p = (q^k - 1)/(q - 1)` prime.
pub fn search_projective_pairs(q: u64, k_max: u32) -> Result<Vec<(u32, u64)>> {
    if q == 2 || !is_prime(q) {
        return Err(Error::invalid(format!("{q} is not an odd prime")));
    }
    if k_max < 2 {
        return Err(Error::invalid("k_max must be at least 2"));
    }
    let mut out = Vec::new();
    for k in 2..=k_max {
        let p = repunit(q, k)?;
        let p = u64::try_from(p).map_err(|_| Error::Overflow("projective prime candidate"))?;
        if is_prime(p) {
            assert!(
                is_prime(k as u64),
                "(q^k-1)/(q-1) = {p} is prime with composite k = {k}"
            );
            out.push((k, p));
        }
    }
    Ok(out)
}

/// Checks that a triple satisfying the equidistance condition has
/// `gcd(m, r) = 1` and `k = ord_m(r)`.
///
/// A `false` return on an admissible triple means an arithmetic bug somewhere
/// in this crate.
pub fn verify_lemma_order(m: u64, r: u64, k: u32) -> Result<bool> {
    if m == 0 || k == 0 || !is_prime(r) {
        return Err(Error::invalid("need m, k >= 1 and r prime"));
    }
    if !crate::cyclic_code::equidistant_condition(m, r, k)? {
        return Err(Error::precondition(format!(
            "(m, r, k) = ({m}, {r}, {k}) violates the equidistance condition"
        )));
    }
    // r^k - 1 = (r - 1)/gcd(m, r - 1) * m
    let g = m.gcd(&(r - 1));
    let lhs = checked_pow(r, k)? - 1;
    let rhs = ((r - 1) / g) as u128 * m as u128;
    if lhs != rhs {
        return Ok(false);
    }
    if m.gcd(&r) != 1 {
        return Ok(false);
    }
    if m == 1 {
        return Ok(k == 1);
    }
    Ok(multiplicative_order(r, m)? == k as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi_by_scan(m: u64) -> u64 {
        (1..=m).filter(|&i| i.gcd(&m) == 1).count() as u64
    }

    fn order_by_powering(r: u64, m: u64) -> u64 {
        let mut x = r % m;
        let mut k = 1;
        while x != 1 {
            x = x * r % m;
            k += 1;
        }
        k
    }

    fn prime_by_scan(n: u64) -> bool {
        n >= 2 && (2..n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn moebius_values() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(4).unwrap(), 0);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(30).unwrap(), -1);
        assert!(matches!(moebius(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(13).unwrap(), 12);
        assert_eq!(euler_phi(12).unwrap(), phi_by_scan(12));
        assert_eq!(euler_phi(12).unwrap(), 4);
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn divisor_sums() {
        for m in 1..=200u64 {
            let mu: i64 = divisors(m).iter().map(|&d| moebius(d).unwrap() as i64).sum();
            assert_eq!(mu, if m == 1 { 1 } else { 0 }, "m = {m}");
            let phi: u64 = divisors(m).iter().map(|&d| euler_phi(d).unwrap()).sum();
            assert_eq!(phi, m);
            assert_eq!(euler_phi(m).unwrap(), phi_by_scan(m));
        }
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(3, 13).unwrap(), 3);
        assert_eq!(multiplicative_order(2, 31).unwrap(), 5);
        assert_eq!(multiplicative_order(1, 17).unwrap(), 1);
        assert_eq!(multiplicative_order(3, 757).unwrap(), 9);
        assert!(multiplicative_order(3, 12).is_err());
        for m in 2..150u64 {
            for r in 1..40u64 {
                if r.gcd(&m) == 1 {
                    assert_eq!(multiplicative_order(r, m).unwrap(), order_by_powering(r, m));
                }
            }
        }
    }

    #[test]
    fn primality_matches_scan() {
        for n in 0..3000u64 {
            assert_eq!(is_prime(n), prime_by_scan(n), "n = {n}");
        }
        // above the trial-division range
        assert!(is_prime(4_294_967_311));
        assert!(!is_prime(4_294_967_297)); // 641 * 6700417
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751 * 3));
    }

    #[test]
    fn projective_witnesses() {
        assert_eq!(is_projective_prime(31).unwrap(), vec![(2, 5), (5, 3)]);
        assert_eq!(is_projective_prime(13).unwrap(), vec![(3, 3)]);
        assert_eq!(is_projective_prime(11).unwrap(), vec![]);
        assert_eq!(is_projective_prime(7).unwrap(), vec![(2, 3)]);
        assert!(is_projective_prime(15).is_err());
    }

    #[test]
    fn projective_search() {
        assert_eq!(search_projective_pairs(3, 7).unwrap(), vec![(3, 13), (7, 1093)]);
        assert_eq!(search_projective_pairs(5, 3).unwrap(), vec![(3, 31)]);
        assert_eq!(search_projective_pairs(3, 2).unwrap(), vec![]);
        assert!(search_projective_pairs(2, 5).is_err());
        assert!(search_projective_pairs(9, 5).is_err());
    }

    #[test]
    fn search_agrees_with_witnesses() {
        for q in [3u64, 5, 7, 11, 13] {
            for (k, p) in search_projective_pairs(q, 11).unwrap() {
                assert!(is_projective_prime(p).unwrap().contains(&(q, k)));
            }
        }
    }

    #[test]
    fn order_identity_instances() {
        assert!(verify_lemma_order(13, 3, 3).unwrap());
        assert!(verify_lemma_order(31, 2, 5).unwrap());
        assert!(verify_lemma_order(31, 5, 3).unwrap());
        assert!(matches!(
            verify_lemma_order(757, 3, 9),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn order_identity_on_every_admissible_triple() {
        let mut seen = 0;
        for r in [2u64, 3, 5, 7, 11, 13] {
            for k in 1..=6u32 {
                for m in 1..=2000u64 {
                    if crate::cyclic_code::equidistant_condition(m, r, k).unwrap() {
                        seen += 1;
                        assert!(verify_lemma_order(m, r, k).unwrap(), "({m}, {r}, {k})");
                    }
                }
            }
        }
        assert!(seen > 20);
    }
}
