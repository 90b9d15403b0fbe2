//! Exact integer number theory on `u128`: primality, factorization,
//! squarefree parts, Legendre/Jacobi symbols and the Chinese remainder
//! theorem.
//!
//! Primality is decided by Miller-Rabin with the first thirteen prime bases,
//! which is a proof of primality for every `n < 3.317 * 10^24` (about
//! `2^81`). Above that bound the test is Baillie-PSW (strong base-2
//! Miller-Rabin plus a strong Lucas test with Selfridge parameters); no
//! Baillie-PSW pseudoprime is known. Everything the crate factors outside of
//! the compositum proxies stays far below the exact bound.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` for which the fixed Miller-Rabin witness set is a proof.
pub const EXACT_PRIMALITY_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

const MR_BASES: [u128; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const TRIAL_LIMIT: u64 = 1_000_000;

/// `value = prod prime^exponent`, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub value: u128,
    pub factors: Vec<(u128, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Multiplies the factors back together.
    pub fn product(&self) -> u128 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product()
    }
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_LIMIT))
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Montgomery arithmetic modulo an odd u128.

const LO64: u128 = u64::MAX as u128;

/// Full 256-bit product as `(hi, lo)`.
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    let (a1, a0) = (a >> 64, a & LO64);
    let (b1, b0) = (b >> 64, b & LO64);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & LO64) + (p10 & LO64);
    let lo = (p00 & LO64) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

fn add_mod(a: u128, b: u128, n: u128) -> u128 {
    let (s, o) = a.overflowing_add(b);
    if o || s >= n {
        s.wrapping_sub(n)
    } else {
        s
    }
}

fn sub_mod(a: u128, b: u128, n: u128) -> u128 {
    if a >= b {
        a - b
    } else {
        n - (b - a)
    }
}

#[derive(Debug, Clone, Copy)]
struct Montgomery {
    n: u128,
    ninv: u128,
    r2: u128,
    one: u128,
}

impl Montgomery {
    fn new(n: u128) -> Self {
        debug_assert!(n % 2 == 1 && n > 1);
        let mut inv = n;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        let one = (u128::MAX % n + 1) % n;
        let mut r2 = one;
        for _ in 0..128 {
            r2 = add_mod(r2, r2, n);
        }
        Montgomery {
            n,
            ninv: inv.wrapping_neg(),
            r2,
            one,
        }
    }

    fn redc(&self, hi: u128, lo: u128) -> u128 {
        let m = lo.wrapping_mul(self.ninv);
        let (mh, ml) = mul_wide(m, self.n);
        let carry = u128::from(lo.overflowing_add(ml).1);
        let (t, o1) = hi.overflowing_add(mh);
        let (t, o2) = t.overflowing_add(carry);
        if o1 || o2 || t >= self.n {
            t.wrapping_sub(self.n)
        } else {
            t
        }
    }

    fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_wide(a, b);
        self.redc(hi, lo)
    }

    fn to_mont(&self, a: u128) -> u128 {
        self.mul(a % self.n, self.r2)
    }

    fn from_mont(&self, a: u128) -> u128 {
        self.redc(0, a)
    }

    fn pow(&self, base: u128, mut exp: u128) -> u128 {
        let mut acc = self.one;
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    /// `a / 2 mod n` for `a` in Montgomery form (halving is linear).
    fn half(&self, a: u128) -> u128 {
        if a & 1 == 0 {
            a >> 1
        } else {
            (a >> 1) + (self.n >> 1) + 1
        }
    }
}

/// `a * b mod n` for any `n > 0`.
pub fn mul_mod(a: u128, b: u128, n: u128) -> u128 {
    assert!(n > 0, "modulus must be positive");
    if n == 1 {
        return 0;
    }
    if n <= u64::MAX as u128 {
        return (a % n) * (b % n) % n;
    }
    if n % 2 == 1 {
        let m = Montgomery::new(n);
        return m.from_mont(m.mul(m.to_mont(a), m.to_mont(b)));
    }
    let (mut a, mut b, mut r) = (a % n, b % n, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            r = add_mod(r, a, n);
        }
        a = add_mod(a, a, n);
        b >>= 1;
    }
    r
}

/// `base^exp mod n` for any `n > 0`.
pub fn pow_mod(base: u128, mut exp: u128, n: u128) -> u128 {
    let mut acc = 1 % n;
    let mut b = base % n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, n);
        }
        b = mul_mod(b, b, n);
        exp >>= 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// Primality

fn strong_probable_prime(m: &Montgomery, base: u128) -> bool {
    let n = m.n;
    let base = base % n;
    if base == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let minus_one = m.to_mont(n - 1);
    let mut x = m.pow(m.to_mont(base), d);
    if x == m.one || x == minus_one {
        return true;
    }
    for _ in 1..s {
        x = m.mul(x, x);
        if x == minus_one {
            return true;
        }
        if x == m.one {
            return false;
        }
    }
    false
}

fn is_square_u128(n: u128) -> bool {
    let r = isqrt_u128(n);
    r * r == n
}

/// Floor square root.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x.checked_mul(x).is_none_or(|v| v > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|v| v <= n) {
        x += 1;
    }
    x
}

/// Strong Lucas probable-prime test with Selfridge's method A parameters.
fn strong_lucas(m: &Montgomery) -> bool {
    let n = m.n;
    if is_square_u128(n) {
        return false;
    }
    let mut d: i128 = 5;
    loop {
        match jacobi(d, n) {
            -1 => break,
            0 if d.unsigned_abs() != n => return false,
            _ => {}
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let to_residue = |v: i128| -> u128 {
        let r = v.rem_euclid(n as i128);
        m.to_mont(r as u128)
    };
    let dm = to_residue(d);
    let qv = (1 - d) / 4;
    let qm = to_residue(qv);
    let two_q_needed = |qk: u128| add_mod(qk, qk, n);

    let k = n + 1;
    let s = k.trailing_zeros();
    let odd = k >> s;

    // U_1 = 1, V_1 = P = 1, Q^1 = Q
    let mut u = m.one;
    let mut v = m.one;
    let mut qk = qm;
    let bits = 128 - odd.leading_zeros();
    for i in (0..bits - 1).rev() {
        // double
        u = m.mul(u, v);
        v = sub_mod(m.mul(v, v), two_q_needed(qk), n);
        qk = m.mul(qk, qk);
        if (odd >> i) & 1 == 1 {
            let nu = m.half(add_mod(u, v, n));
            let nv = m.half(add_mod(m.mul(dm, u), v, n));
            u = nu;
            v = nv;
            qk = m.mul(qk, qm);
        }
    }
    if u == 0 || v == 0 {
        return true;
    }
    for _ in 1..s {
        v = sub_mod(m.mul(v, v), two_q_needed(qk), n);
        qk = m.mul(qk, qk);
        if v == 0 {
            return true;
        }
    }
    false
}

/// Deterministic primality test; see the module docs for the exactness bound.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &small_primes()[..64] {
        let p = p as u128;
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let m = Montgomery::new(n);
    if n < EXACT_PRIMALITY_BOUND {
        MR_BASES.iter().all(|&b| strong_probable_prime(&m, b))
    } else {
        strong_probable_prime(&m, 2) && strong_lucas(&m)
    }
}

// ---------------------------------------------------------------------------
// Factorization

/// Brent's variant of Pollard rho on an odd composite. `budget` caps the
/// number of polynomial steps per attempt.
fn rho_split(n: u128, budget: Option<u64>) -> Option<u128> {
    let m = Montgomery::new(n);
    let mut steps: u64 = 0;
    for c in 1u128.. {
        let cm = m.to_mont(c);
        let f = |x: u128| add_mod(m.mul(x, x), cm, n);
        let mut y = m.to_mont(2);
        let mut x = y;
        let mut ys = y;
        let mut g = 1u128;
        let mut r = 1u64;
        let mut q = m.one;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = m.mul(q, sub_mod(x, y, n));
                }
                g = m.from_mont(q).gcd(&n);
                k += BATCH;
            }
            steps += r;
            r *= 2;
            if let Some(b) = budget {
                if steps > b {
                    return None;
                }
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = sub_mod(x, ys, n);
                g = m.from_mont(g).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    unreachable!()
}

fn split_into(n: u128, out: &mut Vec<u128>, budget: Option<u64>) -> bool {
    if n == 1 {
        return true;
    }
    if is_prime(n) {
        out.push(n);
        return true;
    }
    let r = isqrt_u128(n);
    if r * r == n {
        return split_into(r, out, budget) && split_into(r, out, budget);
    }
    match rho_split(n, budget) {
        Some(g) => split_into(g, out, budget) && split_into(n / g, out, budget),
        None => false,
    }
}

fn factorize_inner(n: u128, budget: Option<u64>) -> Result<Option<Factorization>> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut rest = n;
    let mut primes: Vec<u128> = Vec::new();
    for &p in small_primes() {
        let p = p as u128;
        if p * p > rest {
            break;
        }
        while rest.is_multiple_of(p) {
            primes.push(p);
            rest /= p;
        }
    }
    if rest > 1 && !split_into(rest, &mut primes, budget) {
        return Ok(None);
    }
    primes.sort_unstable();
    let mut factors: Vec<(u128, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Some(Factorization { value: n, factors }))
}

/// Complete prime factorization: trial division below 10^6, then rho.
pub fn factorize(n: u128) -> Result<Factorization> {
    factorize_inner(n, None).map(|f| f.expect("unbounded factorization always completes"))
}

/// Like [`factorize`] but gives up (returns `Ok(None)`) once a single rho
/// attempt exceeds `budget` steps.
pub fn factorize_bounded(n: u128, budget: u64) -> Result<Option<Factorization>> {
    factorize_inner(n, Some(budget))
}

/// Product of the primes dividing `n` to an odd power.
pub fn squarefree_part(n: u128) -> Result<u128> {
    let f = factorize(n)?;
    Ok(f.factors
        .iter()
        .filter(|&&(_, e)| e % 2 == 1)
        .map(|&(p, _)| p)
        .product())
}

pub fn is_squarefree(n: u128) -> bool {
    n != 0
        && factorize(n)
            .map(|f| f.factors.iter().all(|&(_, e)| e == 1))
            .unwrap_or(false)
}

// ---------------------------------------------------------------------------
// Quadratic residue symbols

/// Jacobi symbol `(a/n)` for odd `n > 0`.
///
/// # Panics
/// If `n` is even or zero.
pub fn jacobi(a: i128, n: u128) -> i8 {
    assert!(n % 2 == 1, "Jacobi symbol needs an odd positive modulus");
    let mut a = if a >= 0 {
        a as u128 % n
    } else {
        let r = a.unsigned_abs() % n;
        if r == 0 {
            0
        } else {
            n - r
        }
    };
    let mut n = n;
    let mut acc = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            acc = -acc;
        }
        if a % 4 == 3 && n % 4 == 3 {
            acc = -acc;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        acc
    } else {
        0
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: i128, p: u128) -> Result<i8> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(jacobi(a, p))
}

// ---------------------------------------------------------------------------
// CRT

/// A residue class `residue mod modulus`, `0 <= residue < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Congruence {
    pub residue: u128,
    pub modulus: u128,
}

/// Combines pairwise coprime congruences into one class modulo the product.
pub fn crt(congruences: &[(i128, u128)]) -> Result<Congruence> {
    let mut residue = BigInt::zero();
    let mut modulus = BigInt::one();
    let mut seen: Vec<u128> = Vec::new();
    for &(r, m) in congruences {
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        if let Some(&prev) = seen.iter().find(|&&prev| prev.gcd(&m) != 1) {
            return Err(Error::NonCoprimeModuli(prev, m));
        }
        seen.push(m);
        let mb = BigInt::from(m);
        let r = BigInt::from(r).mod_floor(&mb);
        // residue + modulus * t ≡ r (mod m)
        let ext = modulus.extended_gcd(&mb);
        let inv = ext.x.mod_floor(&mb);
        let t = ((&r - &residue) * inv).mod_floor(&mb);
        residue += &modulus * t;
        modulus *= mb;
        residue = residue.mod_floor(&modulus);
    }
    let to_u128 = |v: &BigInt| {
        if v.is_negative() {
            None
        } else {
            v.to_u128()
        }
    };
    Ok(Congruence {
        residue: to_u128(&residue).ok_or(Error::Overflow)?,
        modulus: to_u128(&modulus).ok_or(Error::Overflow)?,
    })
}
