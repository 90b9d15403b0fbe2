//! Real quadratic fields ℚ(√d): fundamental units from continued fractions,
//! the square class of `N(u + 1)`, norm `±2` representability and the
//! splitting `x ± 1 = t · (square)` of a norm `+1` unit.
//!
//! Everything is exact. The continued fraction runs on the triple
//! `(a, P, Q)` of the complete quotients `(P + √d) / Q` in machine integers;
//! only the convergents are big integers.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::decimal;
use crate::error::{Error, Result};
use crate::squareclass::SquareClass;

/// ℚ(√d) for a squarefree `d ≥ 2`, with its discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadField {
    d: u64,
    disc: u64,
}

impl QuadField {
    pub fn new(d: u64) -> Result<Self> {
        check_radicand(d)?;
        let disc = if d % 4 == 1 { d } else { 4 * d };
        Ok(QuadField { d, disc })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn disc(&self) -> u64 {
        self.disc
    }

    /// Primes dividing the discriminant.
    pub fn ramified_primes(&self) -> Vec<u64> {
        arith::factorize(self.disc as u128)
            .expect("discriminant is nonzero")
            .primes()
            .map(|p| p as u64)
            .collect()
    }

    /// Does 2 ramify, i.e. is `d ≡ 2, 3 (mod 4)`?
    pub fn two_ramifies(&self) -> bool {
        self.d % 4 != 1
    }
}

pub(crate) fn check_radicand(d: u64) -> Result<()> {
    if d < 2 {
        return Err(Error::RadicandTooSmall(d as u128));
    }
    if !arith::is_squarefree(d as u128) {
        return Err(Error::NotSquarefree(d as u128));
    }
    Ok(())
}

/// An element `(x + y√d) / 2` of ℚ(√d), stored by its doubled coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadElement {
    pub d: u64,
    #[serde(with = "decimal::bigint")]
    pub x2: BigInt,
    #[serde(with = "decimal::bigint")]
    pub y2: BigInt,
}

impl QuadElement {
    pub fn new(d: u64, x: BigInt, y: BigInt, denom: u8) -> Self {
        let k = BigInt::from(2 / denom);
        QuadElement {
            d,
            x2: x * &k,
            y2: y * k,
        }
    }

    pub fn from_int(d: u64, n: i64) -> Self {
        QuadElement {
            d,
            x2: BigInt::from(2 * n),
            y2: BigInt::zero(),
        }
    }

    /// Norm times 4: `x2² − d·y2²`.
    fn norm4(&self) -> BigInt {
        &self.x2 * &self.x2 - BigInt::from(self.d) * &self.y2 * &self.y2
    }

    /// Exact norm, if it is an integer.
    pub fn norm(&self) -> Option<BigInt> {
        let (q, r) = self.norm4().div_rem(&BigInt::from(4));
        r.is_zero().then_some(q)
    }

    pub fn trace(&self) -> BigInt {
        self.x2.clone()
    }

    /// Whether the element lies in the ring of integers.
    pub fn is_integral(&self) -> bool {
        let two = BigInt::from(2);
        if self.d % 4 == 1 {
            self.x2.is_even() == self.y2.is_even()
        } else {
            self.x2.is_multiple_of(&two) && self.y2.is_multiple_of(&two)
        }
    }

    /// Product; `None` if the result needs a denominator beyond 2.
    pub fn mul(&self, other: &QuadElement) -> Option<QuadElement> {
        debug_assert_eq!(self.d, other.d);
        let d = BigInt::from(self.d);
        let x = &self.x2 * &other.x2 + &d * &self.y2 * &other.y2;
        let y = &self.x2 * &other.y2 + &other.x2 * &self.y2;
        let two = BigInt::from(2);
        if !x.is_multiple_of(&two) || !y.is_multiple_of(&two) {
            return None;
        }
        Some(QuadElement {
            d: self.d,
            x2: x / &two,
            y2: y / two,
        })
    }

    pub fn scale(&self, k: &BigInt) -> QuadElement {
        QuadElement {
            d: self.d,
            x2: &self.x2 * k,
            y2: &self.y2 * k,
        }
    }

    /// Exact division by a rational integer.
    pub fn div_exact(&self, k: &BigInt) -> Option<QuadElement> {
        let (x, rx) = self.x2.div_rem(k);
        let (y, ry) = self.y2.div_rem(k);
        (rx.is_zero() && ry.is_zero()).then_some(QuadElement { d: self.d, x2: x, y2: y })
    }

    /// Coordinates as `(x, y, denom)` with the smallest denominator.
    pub fn coordinates(&self) -> (BigInt, BigInt, u8) {
        if self.x2.is_even() && self.y2.is_even() {
            (&self.x2 / 2, &self.y2 / 2, 1)
        } else {
            (self.x2.clone(), self.y2.clone(), 2)
        }
    }
}

/// The fundamental unit `(x + y√d) / denom > 1` of the ring of integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalUnit {
    pub d: u64,
    #[serde(with = "decimal::biguint")]
    pub x: BigUint,
    #[serde(with = "decimal::biguint")]
    pub y: BigUint,
    pub denom: u8,
    pub norm: i8,
}

impl FundamentalUnit {
    pub fn as_element(&self) -> QuadElement {
        QuadElement::new(
            self.d,
            BigInt::from(self.x.clone()),
            BigInt::from(self.y.clone()),
            self.denom,
        )
    }

    pub fn trace(&self) -> BigInt {
        self.as_element().trace()
    }

    /// `N(u + 1) = N(u) + Tr(u) + 1`.
    pub fn norm_of_successor(&self) -> BigInt {
        BigInt::from(self.norm) + self.trace() + 1
    }
}

/// One step of the expansion: partial quotient `a` of the current complete
/// quotient, and the `(P, Q)` of the next one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Step {
    a: u64,
    p: i64,
    q: i64,
}

/// Continued fraction of `(P0 + √d) / Q0` with `Q0 | d − P0²`.
#[derive(Debug, Clone)]
struct Expansion {
    d: i64,
    root: i64,
    p: i64,
    q: i64,
}

impl Expansion {
    /// Start of the principal cycle: `√d`, or `(1 + √d)/2` when `d ≡ 1 mod 4`.
    fn principal(d: u64) -> Self {
        let root = arith::isqrt_u128(d as u128) as i64;
        let (p, q) = if d % 4 == 1 { (1, 2) } else { (0, 1) };
        Expansion {
            d: d as i64,
            root,
            p,
            q,
        }
    }

    fn start_q(d: u64) -> i64 {
        if d % 4 == 1 {
            2
        } else {
            1
        }
    }
}

impl Iterator for Expansion {
    type Item = Step;

    fn next(&mut self) -> Option<Step> {
        // floor((P + √d)/Q) = floor((P + floor √d)/Q) for Q > 0
        let a = (self.p + self.root).div_euclid(self.q);
        let p = a * self.q - self.p;
        let q = (self.d - p * p) / self.q;
        debug_assert_eq!((self.d - p * p) % self.q, 0);
        self.p = p;
        self.q = q;
        Some(Step { a: a as u64, p, q })
    }
}

/// Convergent numerators/denominators `h_n / k_n`.
#[derive(Debug, Clone)]
struct Convergents {
    h: BigUint,
    h_prev: BigUint,
    k: BigUint,
    k_prev: BigUint,
}

impl Convergents {
    fn new() -> Self {
        Convergents {
            h: BigUint::one(),
            h_prev: BigUint::zero(),
            k: BigUint::zero(),
            k_prev: BigUint::one(),
        }
    }

    fn push(&mut self, a: u64) {
        let mut h = &self.h * a;
        h += &self.h_prev;
        let mut k = &self.k * a;
        k += &self.k_prev;
        self.h_prev = std::mem::replace(&mut self.h, h);
        self.k_prev = std::mem::replace(&mut self.k, k);
    }

    /// `h − k·θ̄` for `θ = (P0 + √d)/Q0` of the principal cycle.
    fn element(&self, d: u64) -> QuadElement {
        let h = BigInt::from(self.h.clone());
        let k = BigInt::from(self.k.clone());
        if d % 4 == 1 {
            // θ̄ = (1 − √d)/2
            QuadElement {
                d,
                x2: 2 * h - &k,
                y2: k,
            }
        } else {
            QuadElement {
                d,
                x2: 2 * h,
                y2: 2 * k,
            }
        }
    }
}

/// Fundamental unit of ℚ(√d) via one period of the principal cycle.
pub fn fundamental_unit(d: u64) -> Result<FundamentalUnit> {
    check_radicand(d)?;
    let q0 = Expansion::start_q(d);
    let mut conv = Convergents::new();
    for step in Expansion::principal(d) {
        conv.push(step.a);
        if step.q == q0 {
            break;
        }
    }
    let e = conv.element(d);
    let (x, y, denom) = e.coordinates();
    let norm = e
        .norm()
        .and_then(|n| n.to_i8())
        .filter(|n| n.abs() == 1)
        .ok_or_else(|| Error::Integrity(format!("period of sqrt {d} did not end at a unit")))?;
    Ok(FundamentalUnit {
        d,
        x: x.to_biguint().expect("positive"),
        y: y.to_biguint().expect("positive"),
        denom,
        norm,
    })
}

/// Period length and the `Q` values `Q_1, …, Q_l` of the principal cycle.
fn principal_q_values(d: u64) -> Vec<i64> {
    let q0 = Expansion::start_q(d);
    let mut out = Vec::new();
    for step in Expansion::principal(d) {
        out.push(step.q);
        if step.q == q0 {
            break;
        }
    }
    out
}

/// Square class of a positive big integer known to be supported, up to a
/// square cofactor, on the primes in `primes`.
fn class_supported_on(n: &BigUint, primes: &[u64]) -> Option<SquareClass> {
    let mut rest = n.clone();
    let mut odd = Vec::new();
    for &p in primes {
        let pb = BigUint::from(p);
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e % 2 == 1 {
            odd.push(p);
        }
    }
    let root = rest.sqrt();
    (&root * &root == rest).then(|| SquareClass::from_primes(odd))
}

fn primes_of(n: u64) -> Vec<u64> {
    arith::factorize(n as u128)
        .expect("nonzero")
        .primes()
        .map(|p| p as u64)
        .collect()
}

/// `a = N(u + 1)` when `N(u) = +1`, and 1 otherwise, as a square class.
pub fn unit_plus_one_class(d: u64) -> Result<SquareClass> {
    let u = fundamental_unit(d)?;
    class_of_unit_successor(&u)
}

pub(crate) fn class_of_unit_successor(u: &FundamentalUnit) -> Result<SquareClass> {
    if u.norm == -1 {
        return Ok(SquareClass::trivial());
    }
    let n = u
        .norm_of_successor()
        .to_biguint()
        .ok_or_else(|| Error::Integrity("N(u+1) is not positive".into()))?;
    // the class divides the discriminant; anything else is a bug
    class_supported_on(&n, &primes_of(2 * u.d)).ok_or_else(|| {
        Error::Integrity(format!("N(u+1) for d = {} has a square class outside 2d", u.d))
    })
}

/// Square class of `N(v + 1)` for an integral `v` of norm `+1`, for
/// comparing `u` against its powers.
pub fn successor_class(v: &QuadElement) -> Result<SquareClass> {
    if !v.is_integral() || v.norm() != Some(BigInt::one()) {
        return Err(Error::Integrity("expected an integral element of norm 1".into()));
    }
    let n = (BigInt::one() + v.trace() + 1u8)
        .to_biguint()
        .ok_or_else(|| Error::Integrity("N(v+1) is not positive".into()))?;
    class_supported_on(&n, &primes_of(2 * v.d))
        .ok_or_else(|| Error::Integrity(format!("N(v+1) for d = {} has a square class outside 2d", v.d)))
}

/// Whether some integer of ℚ(√d) has norm `+2` or `−2`.
pub fn represents_pm2(d: u64) -> Result<bool> {
    Ok(norm_pm2_witness(d)?.is_some())
}

/// An integral element of norm `±2`, if one exists.
///
/// For `d ≥ 17` a norm 2 ideal is reduced, so it is principal exactly when
/// it appears in the principal cycle: as `Q_n = 2` in the expansion of `√d`
/// (`d ≡ 2, 3 mod 4`) or as `Q_n = 4` in that of `(1 + √d)/2`
/// (`d ≡ 1 mod 4`, where `N = ±Q_n / 2`). The small radicands are settled
/// by hand.
pub fn norm_pm2_witness(d: u64) -> Result<Option<QuadElement>> {
    check_radicand(d)?;
    match d {
        2 => return Ok(Some(QuadElement::new(2, BigInt::zero(), BigInt::one(), 1))),
        3 => return Ok(Some(QuadElement::new(3, BigInt::one(), BigInt::one(), 1))),
        // 2 is inert in ℚ(√5) and ℚ(√13)
        5 | 13 => return Ok(None),
        _ => {}
    }
    let target = if d % 4 == 1 { 4 } else { 2 };
    let qs = principal_q_values(d);
    let Some(n) = qs.iter().position(|&q| q == target) else {
        return Ok(None);
    };
    let mut conv = Convergents::new();
    for step in Expansion::principal(d).take(n + 1) {
        conv.push(step.a);
    }
    let e = conv.element(d);
    match e.norm() {
        Some(v) if v.abs() == BigInt::from(2) && e.is_integral() => Ok(Some(e)),
        _ => Err(Error::Integrity(format!("bad norm 2 witness for d = {d}"))),
    }
}

/// Outcome of checking the four properties of `n_k`, the squarefree part of
/// `N(u + 1)` for a norm `+1` fundamental unit `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaarefparvarReport {
    pub d: u64,
    #[serde(with = "decimal::u128_str")]
    pub n_k: u128,
    /// `n_k ∉ {1, d}`
    pub proper: bool,
    /// `n_k | disc`
    pub divides_disc: bool,
    /// `N(μ) = n_k` for the integral witness `μ`
    pub is_norm: bool,
    /// `μ² = n_k · u`
    pub times_unit_is_square: bool,
    /// `μ = (u + 1)/m` where `N(u + 1) = n_k m²`
    pub mu: QuadElement,
}

impl MaarefparvarReport {
    pub fn all_pass(&self) -> bool {
        self.proper && self.divides_disc && self.is_norm && self.times_unit_is_square
    }
}

/// Checks the four assertions about `n_k` for ℚ(√d), producing the witness
/// `μ` with `μ² = n_k·u`.
///
/// Since `(u + 1)² = u · N(u + 1)` when `N(u) = 1`, the witness is
/// `μ = (u + 1)/m`; it is verified directly rather than trusted.
pub fn maarefparvar_check(d: u64) -> Result<MaarefparvarReport> {
    let field = QuadField::new(d)?;
    let u = fundamental_unit(d)?;
    if u.norm == -1 {
        return Err(Error::NormMinusOne(d));
    }
    let class = class_of_unit_successor(&u)?;
    let n_k = class.representative();
    let total = u.norm_of_successor();
    let n_k_big = BigInt::from(n_k);
    let (m_sq, rem) = total.div_rem(&n_k_big);
    let m = m_sq.sqrt();
    if !rem.is_zero() || &m * &m != m_sq {
        return Err(Error::Integrity(format!("N(u+1)/n_k is not a square for d = {d}")));
    }
    let u_elem = u.as_element();
    let succ = QuadElement {
        d,
        x2: &u_elem.x2 + 2,
        y2: u_elem.y2.clone(),
    };
    let mu = succ
        .div_exact(&m)
        .filter(QuadElement::is_integral)
        .ok_or_else(|| Error::Integrity(format!("(u+1)/m is not integral for d = {d}")))?;
    let is_norm = mu.norm() == Some(n_k_big.clone());
    let times_unit_is_square = mu.mul(&mu) == Some(u_elem.scale(&n_k_big));
    Ok(MaarefparvarReport {
        d,
        n_k,
        proper: n_k != 1 && n_k != d as u128,
        divides_disc: (field.disc() as u128).is_multiple_of(n_k),
        is_norm,
        times_unit_is_square,
        mu,
    })
}

/// Whether `x` is odd or even in `x² − d y² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParityCase {
    XOdd,
    XEven,
}

/// `t1·a² − t2·b² = c` with `t1·t2 = d`, read off a norm `+1` unit
/// `x + y√d`: for odd `x`, `(x ± 1)/2 = t1·a², t2·b²` and `c = 1`;
/// for even `x`, `x ± 1 = t1·a², t2·b²` and `c = 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellDecomposition {
    pub t1: u64,
    pub t2: u64,
    #[serde(with = "decimal::biguint")]
    pub a: BigUint,
    #[serde(with = "decimal::biguint")]
    pub b: BigUint,
    pub c: u8,
    pub parity_case: ParityCase,
}

pub fn pell_decomposition(d: u64) -> Result<PellDecomposition> {
    let u = fundamental_unit(d)?;
    if u.norm == -1 {
        return Err(Error::NormMinusOne(d));
    }
    if u.denom == 2 {
        return Err(Error::HalfIntegerUnit(d));
    }
    let one = BigUint::one();
    let (plus, minus, c, parity_case) = if u.x.is_odd() {
        ((&u.x + &one) / 2u32, (&u.x - &one) / 2u32, 1u8, ParityCase::XOdd)
    } else {
        (&u.x + &one, &u.x - &one, 2u8, ParityCase::XEven)
    };
    let db = BigUint::from(d);
    let split = |v: &BigUint| -> Option<(u64, BigUint)> {
        if v.is_zero() {
            return None;
        }
        let t = v.gcd(&db);
        let sq = v / &t;
        let r = sq.sqrt();
        (&r * &r == sq).then(|| (t.to_u64().expect("divides d"), r))
    };
    let bad = || Error::Integrity(format!("x ± 1 does not split over d = {d}"));
    let (t1, a) = split(&plus).ok_or_else(bad)?;
    let (t2, b) = split(&minus).ok_or_else(bad)?;
    if t1.checked_mul(t2) != Some(d) {
        return Err(bad());
    }
    let lhs = BigInt::from(t1) * BigInt::from(a.clone()).pow(2u32)
        - BigInt::from(t2) * BigInt::from(b.clone()).pow(2u32);
    if lhs != BigInt::from(c) {
        return Err(bad());
    }
    let class = class_of_unit_successor(&u)?;
    let expected = match parity_case {
        ParityCase::XOdd => t1 as u128,
        ParityCase::XEven => 2 * t1 as u128,
    };
    if class.representative() != expected {
        return Err(Error::Integrity(format!(
            "class of N(u+1) is {} but the split gives {expected} for d = {d}",
            class.representative()
        )));
    }
    Ok(PellDecomposition {
        t1,
        t2,
        a,
        b,
        c,
        parity_case,
    })
}

/// Why `t1·a² − t2·b² = c` has no integer solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// `c = 1`, `t1 ≡ 3`, `t2 ≡ 1 (mod 4)` forces `a² + b² ≡ −1 (mod 4)`.
    Mod4,
    /// `(c·t1 / ℓ) = −1` for an odd `ℓ | t2`.
    ResidueModT2 { prime: u64 },
    /// `(−c·t2 / ℓ) = −1` for an odd `ℓ | t1`.
    ResidueModT1 { prime: u64 },
    /// No solution modulo 8 (checked when `2 | t1·t2·c`).
    Mod8,
}

/// First local obstruction to `t1·a² − t2·b² = c`, if any.
///
/// Sound but not complete: `None` does not mean the equation is solvable.
pub fn local_obstruction(t1: u64, t2: u64, c: u8) -> Result<Option<Obstruction>> {
    if t1 == 0 || t2 == 0 {
        return Err(Error::Zero);
    }
    if t1.gcd(&t2) != 1 {
        return Err(Error::NotCoprime(t1, t2));
    }
    if c != 1 && c != 2 {
        return Err(Error::Integrity(format!("right-hand side must be 1 or 2, got {c}")));
    }
    if c == 1 && t1 % 4 == 3 && t2 % 4 == 1 {
        return Ok(Some(Obstruction::Mod4));
    }
    let c = c as i128;
    for prime in primes_of(t2).into_iter().filter(|&p| p != 2) {
        if arith::jacobi(c * t1 as i128, prime as u128) == -1 {
            return Ok(Some(Obstruction::ResidueModT2 { prime }));
        }
    }
    for prime in primes_of(t1).into_iter().filter(|&p| p != 2) {
        if arith::jacobi(-c * t2 as i128, prime as u128) == -1 {
            return Ok(Some(Obstruction::ResidueModT1 { prime }));
        }
    }
    if (t1 as i128 * t2 as i128 * c) % 2 == 0 {
        let (t1, t2) = ((t1 % 8) as i128, (t2 % 8) as i128);
        let solvable = (0..8i128)
            .any(|a| (0..8i128).any(|b| (t1 * a * a - t2 * b * b - c).rem_euclid(8) == 0));
        if !solvable {
            return Ok(Some(Obstruction::Mod8));
        }
    }
    Ok(None)
}

/// Per-radicand data shared by the Pólya computations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadData {
    pub field: QuadField,
    pub unit: FundamentalUnit,
    pub unit_class: SquareClass,
    pub represents_pm2: bool,
}

impl QuadData {
    pub fn compute(d: u64) -> Result<Self> {
        let field = QuadField::new(d)?;
        let unit = fundamental_unit(d)?;
        let unit_class = class_of_unit_successor(&unit)?;
        let represents_pm2 = represents_pm2(d)?;
        Ok(QuadData {
            field,
            unit,
            unit_class,
            represents_pm2,
        })
    }
}

/// Thread-safe memo of [`QuadData`] keyed by radicand. Entries are computed
/// outside the lock, so two workers may race on the same radicand; both
/// produce the same value.
#[derive(Debug, Default)]
pub struct QuadCache {
    map: RwLock<HashMap<u64, Arc<QuadData>>>,
}

impl QuadCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, d: u64) -> Result<Arc<QuadData>> {
        if let Some(v) = self.map.read().expect("cache lock").get(&d) {
            return Ok(Arc::clone(v));
        }
        let v = Arc::new(QuadData::compute(d)?);
        let mut map = self.map.write().expect("cache lock");
        Ok(Arc::clone(map.entry(d).or_insert(v)))
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Smallest unit > 1 found by scanning doubled coordinates `Y`.
    fn brute_unit(d: u64, y_max: u64) -> Option<(u128, u128, u8, i8)> {
        let d = d as u128;
        for yy in 1..=(2 * y_max as u128) {
            for (sign, rhs) in [(-1i8, (d * yy * yy).checked_sub(4)), (1, Some(d * yy * yy + 4))] {
                let Some(rhs) = rhs else { continue };
                let xx = arith::isqrt_u128(rhs);
                if xx * xx != rhs {
                    continue;
                }
                let integral = if d % 4 == 1 {
                    xx % 2 == yy % 2
                } else {
                    xx.is_multiple_of(2) && yy % 2 == 0
                };
                if integral {
                    return Some(if xx.is_multiple_of(2) && yy % 2 == 0 {
                        (xx / 2, yy / 2, 1, sign)
                    } else {
                        (xx, yy, 2, sign)
                    });
                }
            }
        }
        None
    }

    fn unit_tuple(u: &FundamentalUnit) -> (u128, u128, u8, i8) {
        (u.x.to_u128().unwrap(), u.y.to_u128().unwrap(), u.denom, u.norm)
    }

    fn squarefree_upto(n: u64) -> impl Iterator<Item = u64> {
        (2..=n).filter(|&d| arith::is_squarefree(d as u128))
    }

    #[test]
    fn unit_examples() {
        assert_eq!(unit_tuple(&fundamental_unit(2).unwrap()), (1, 1, 1, -1));
        assert_eq!(unit_tuple(&fundamental_unit(5).unwrap()), (1, 1, 2, -1));
        assert_eq!(unit_tuple(&fundamental_unit(105).unwrap()), (41, 4, 1, 1));
        assert_eq!(brute_unit(2, 10), Some((1, 1, 1, -1)));
        assert_eq!(brute_unit(5, 10), Some((1, 1, 2, -1)));
        assert_eq!(brute_unit(105, 1000), Some((41, 4, 1, 1)));
        assert_eq!(fundamental_unit(4), Err(Error::NotSquarefree(4)));
        assert_eq!(fundamental_unit(1), Err(Error::RadicandTooSmall(1)));
    }

    #[test]
    fn units_match_brute_force_small() {
        for d in squarefree_upto(120) {
            let u = fundamental_unit(d).unwrap();
            let t = unit_tuple(&u);
            if t.1 <= 20_000 {
                assert_eq!(brute_unit(d, 20_000), Some(t), "d = {d}");
            }
        }
    }

    #[test]
    fn unit_invariants_hold() {
        for d in squarefree_upto(2000) {
            let u = fundamental_unit(d).unwrap();
            let e = u.as_element();
            assert_eq!(e.norm(), Some(BigInt::from(u.norm)), "d = {d}");
            assert!(e.is_integral());
            if u.denom == 2 {
                assert_eq!(d % 4, 1);
                assert_eq!(u.x.is_odd(), u.y.is_odd());
            }
            // N(u+1) = N(u) + Tr(u) + 1, computed two ways
            let succ = QuadElement {
                d,
                x2: &e.x2 + 2,
                y2: e.y2.clone(),
            };
            assert_eq!(succ.norm().unwrap(), u.norm_of_successor());
        }
    }

    #[test]
    fn successor_class_examples() {
        assert!(unit_plus_one_class(2).unwrap().is_trivial());
        assert_eq!(unit_plus_one_class(3).unwrap().representative(), 6);
        assert_eq!(unit_plus_one_class(105).unwrap().representative(), 21);
        // 2·42 = 84 = 2²·21
        assert_eq!(arith::squarefree_part(84), Ok(21));
        // denominator 2, norm +1: N(u+1) = x + 2
        let u = fundamental_unit(21).unwrap();
        assert_eq!((u.denom, u.norm), (2, 1));
        let expect = arith::squarefree_part(u.x.to_u128().unwrap() + 2).unwrap();
        assert_eq!(unit_plus_one_class(21).unwrap().representative(), expect);
    }

    #[test]
    fn maarefparvar_examples() {
        let r = maarefparvar_check(3).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.n_k, 6);
        assert_eq!(r.mu.coordinates(), (BigInt::from(3), BigInt::from(1), 1));
        let r = maarefparvar_check(34).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.n_k, 2);
        let r = maarefparvar_check(105).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.n_k, 21);
        assert_eq!(420 % 21, 0);
        assert_eq!(maarefparvar_check(2), Err(Error::NormMinusOne(2)));
    }

    #[test]
    fn maarefparvar_holds_up_to_500() {
        for d in squarefree_upto(500) {
            if fundamental_unit(d).unwrap().norm == 1 {
                let r = maarefparvar_check(d).unwrap();
                assert!(r.all_pass(), "d = {d}: {r:?}");
            }
        }
    }

    fn brute_pm2(d: u64, y_max: u128) -> bool {
        let d = d as u128;
        (0..=2 * y_max).any(|yy| {
            [(d * yy * yy).checked_sub(8), Some(d * yy * yy + 8)]
                .into_iter()
                .flatten()
                .any(|rhs| {
                    let xx = arith::isqrt_u128(rhs);
                    xx * xx == rhs
                        && if d % 4 == 1 {
                            xx % 2 == yy % 2
                        } else {
                            xx.is_multiple_of(2) && yy % 2 == 0
                        }
                })
        })
    }

    #[test]
    fn pm2_examples() {
        assert!(represents_pm2(2).unwrap());
        assert!(represents_pm2(3).unwrap());
        assert!(!represents_pm2(5).unwrap());
        assert!(represents_pm2(7).unwrap()); // 3² − 7 = 2
        assert!(!represents_pm2(10).unwrap());
        assert!(represents_pm2(17).unwrap()); // ((5 + √17)/2)·… has norm 2
    }

    #[test]
    fn pm2_agrees_with_bounded_search() {
        for d in squarefree_upto(600) {
            let cf = represents_pm2(d).unwrap();
            if let Some(w) = norm_pm2_witness(d).unwrap() {
                assert_eq!(w.norm().unwrap().abs(), BigInt::from(2));
            }
            // a found representation must be detected; absence is confirmed
            // only up to the search bound
            if brute_pm2(d, 3000) {
                assert!(cf, "d = {d}");
            }
            if !cf {
                assert!(!brute_pm2(d, 3000), "d = {d}");
            }
        }
    }

    #[test]
    fn pell_examples() {
        let p = pell_decomposition(105).unwrap();
        assert_eq!(
            (p.t1, p.t2, p.a.clone(), p.b.clone(), p.c, p.parity_case),
            (21, 5, BigUint::from(1u8), BigUint::from(2u8), 1, ParityCase::XOdd)
        );
        let p = pell_decomposition(3).unwrap();
        assert_eq!(
            (p.t1, p.t2, p.c, p.parity_case),
            (3, 1, 2, ParityCase::XEven)
        );
        // u = 35 + 6√34: 18 = 2·3², 17 = 17·1²
        let p = pell_decomposition(34).unwrap();
        assert_eq!(
            (p.t1, p.t2, p.a.clone(), p.b.clone(), p.c, p.parity_case),
            (2, 17, BigUint::from(3u8), BigUint::from(1u8), 1, ParityCase::XOdd)
        );
        assert_eq!(pell_decomposition(2), Err(Error::NormMinusOne(2)));
        assert_eq!(pell_decomposition(21), Err(Error::HalfIntegerUnit(21)));
    }

    fn brute_solvable(t1: u64, t2: u64, c: i128, bound: i128) -> bool {
        (0..=bound).any(|a| {
            let rhs = t1 as i128 * a * a - c;
            rhs >= 0 && rhs % t2 as i128 == 0 && {
                let b2 = (rhs / t2 as i128) as u128;
                let b = arith::isqrt_u128(b2);
                b * b == b2
            }
        })
    }

    #[test]
    fn obstruction_examples() {
        // 3a² ≡ 1 mod 5 has no solution
        assert_eq!(
            local_obstruction(3, 35, 1).unwrap(),
            Some(Obstruction::ResidueModT2 { prime: 5 })
        );
        // 7 ≡ 2 mod 5 is a non-residue
        assert_eq!(
            local_obstruction(7, 15, 1).unwrap(),
            Some(Obstruction::ResidueModT2 { prime: 5 })
        );
        assert_eq!(local_obstruction(21, 5, 1).unwrap(), None);
        assert!(brute_solvable(21, 5, 1, 10));
        assert_eq!(local_obstruction(7, 5, 1).unwrap(), Some(Obstruction::Mod4));
        assert_eq!(local_obstruction(6, 10, 1), Err(Error::NotCoprime(6, 10)));
        // a² − 7b² = 2 has 3² − 7 = 2
        assert_eq!(local_obstruction(1, 7, 2).unwrap(), None);
        // a² − b² = 2 is impossible mod 8 and there is no odd prime to test
        assert_eq!(local_obstruction(1, 1, 2).unwrap(), Some(Obstruction::Mod8));
        assert!(!brute_solvable(1, 1, 2, 200));
    }

    #[test]
    fn obstruction_is_sound_against_search() {
        let sf: Vec<u64> = (1..=60).filter(|&t| arith::is_squarefree(t as u128)).collect();
        for &t1 in &sf {
            for &t2 in &sf {
                if t1.gcd(&t2) != 1 {
                    continue;
                }
                for c in [1u8, 2] {
                    if brute_solvable(t1, t2, c as i128, 400) {
                        assert_eq!(local_obstruction(t1, t2, c).unwrap(), None, "{t1} {t2} {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn decompositions_are_never_obstructed() {
        for d in squarefree_upto(2000) {
            match pell_decomposition(d) {
                Ok(p) => assert_eq!(local_obstruction(p.t1, p.t2, p.c).unwrap(), None, "d = {d}"),
                Err(Error::NormMinusOne(_)) | Err(Error::HalfIntegerUnit(_)) => {}
                Err(e) => panic!("d = {d}: {e}"),
            }
        }
    }

    #[test]
    fn cache_returns_shared_values() {
        let cache = QuadCache::new();
        let a = cache.get(105).unwrap();
        let b = cache.get(105).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(cache.len(), 1);
        assert_eq!(a.unit_class.representative(), 21);
    }
}
