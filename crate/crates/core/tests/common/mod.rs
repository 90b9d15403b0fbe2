//! Slow, obviously-correct reference computations shared by the
//! integration tests. Nothing here calls into the library's arithmetic.

#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = n;
    let mut y = x.div_ceil(2);
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

pub fn odd_primes_upto(n: u64) -> Vec<u64> {
    (3..=n).filter(|&k| is_prime(k)).collect()
}

/// Distinct primes of `n` by trial division.
pub fn prime_support(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d * d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn squarefree_part(mut n: u64) -> u64 {
    let mut out = 1;
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e % 2 == 1 {
            out *= d;
        }
        d += 1;
    }
    out * n
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut r = 1u128;
    let mut b = b as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r as u64
}

/// Legendre symbol by Euler's criterion; `p` an odd prime.
pub fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Smallest unit `> 1` of the maximal order of ℚ(√d), as `(x, y, denom,
/// norm)`, scanning the doubled coordinate `Y = 1..=y_max` in
/// `X² - dY² = ±4`. `None` if nothing is found.
pub fn brute_unit(d: u64, y_max: u64) -> Option<(u128, u128, u8, i8)> {
    let d = d as u128;
    for yy in 1..=y_max as u128 {
        let dy2 = d * yy * yy;
        for (norm, rhs) in [(-1i8, dy2.checked_sub(4)), (1, Some(dy2 + 4))] {
            let Some(rhs) = rhs else { continue };
            let xx = isqrt(rhs);
            if xx * xx != rhs {
                continue;
            }
            if xx.is_multiple_of(2) && yy % 2 == 0 {
                return Some((xx / 2, yy / 2, 1, norm));
            }
            // half-integer coordinates are integral only for d = 1 mod 4
            if d % 4 == 1 {
                return Some((xx, yy, 2, norm));
            }
        }
    }
    None
}

/// Square class of a positive integer whose odd-exponent primes all lie in
/// `primes`, as the sorted list of those primes; `None` if the cofactor
/// is not a perfect square.
pub fn class_within(n: &BigUint, primes: &[u64]) -> Option<Vec<u64>> {
    let mut rest = n.clone();
    let mut odd = Vec::new();
    for &p in primes {
        let pb = BigUint::from(p);
        let mut e = 0;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e % 2 == 1 {
            odd.push(p);
        }
    }
    let r = rest.sqrt();
    (&r * &r == rest).then(|| {
        odd.sort_unstable();
        odd
    })
}

/// `N(u + 1) = N(u) + Tr(u) + 1` from coordinates `(x + y√d)/denom`.
pub fn norm_of_successor(x: &BigUint, denom: u8, norm: i8) -> BigInt {
    let trace = BigInt::from(x.clone()) * 2 / BigInt::from(denom);
    BigInt::from(norm) + trace + BigInt::one()
}

/// Order of the subgroup of ℚ*/(ℚ*)² generated by `classes`, found by
/// listing every product of a subset.
pub fn span_order(classes: &[Vec<u64>]) -> usize {
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u32..(1 << classes.len()) {
        let mut acc: Vec<u64> = Vec::new();
        for (i, c) in classes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for &p in c {
                    match acc.iter().position(|&x| x == p) {
                        Some(j) => {
                            acc.remove(j);
                        }
                        None => acc.push(p),
                    }
                }
            }
        }
        acc.sort_unstable();
        seen.insert(acc);
    }
    seen.len()
}

pub fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Odd-prime Legendre table for the primes up to a bound, indexed by value.
pub struct LegendreTable {
    bound: usize,
    table: Vec<i8>,
}

impl LegendreTable {
    pub fn new(bound: u64) -> Self {
        let n = bound as usize + 1;
        let mut table = vec![0i8; n * n];
        let mut tops = vec![2u64];
        tops.extend(odd_primes_upto(bound));
        for &b in &odd_primes_upto(bound) {
            for &a in &tops {
                table[a as usize * n + b as usize] = legendre(a, b);
            }
        }
        LegendreTable { bound: n, table }
    }

    /// `(a1 a2 ... / b)` for prime (or 2) factors `a_i`.
    pub fn sym(&self, num: &[u64], b: u64) -> i8 {
        num.iter()
            .map(|&a| self.table[a as usize * self.bound + b as usize])
            .product()
    }
}

pub mod predicates;
