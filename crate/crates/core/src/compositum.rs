//! Discriminant arithmetic for Shanks' simplest cubics `f_n` and Lehmer's
//! quintics `g_n`, and a search for primes `p` where the two discriminants
//! are coprime and no prime below 15 divides them.
//!
//! ```text
//! f_n = X^3 + (n+3) X^2 + n X - 1                 disc = (n^2+3n+9)^2
//! g_n = X^5 + n^2 X^4 - a_n X^3 + b_n X^2 + c_n X + 1
//!                                                 disc = f1(n)^2 f2(n)^4
//! ```
//!
//! Only prime-factor counts of the discriminant factors are reported; no
//! Pólya group of a cubic, quintic or degree 15 field is computed here.

use std::fmt;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::decimal;
use crate::error::{Error, Result};

/// Dense integer polynomial, coefficients from the constant term up. The
/// leading coefficient is nonzero except for the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut p = Poly {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Poly::new([0, 1])
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Poly::new([c])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        Poly::new((0..n).map(|i| {
            self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)
        }))
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c))
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale<T: Into<BigInt>>(&self, k: T) -> Poly {
        let k = k.into();
        Poly::new(self.coeffs.iter().map(|c| c * &k))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i)),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Value at `x` reduced into `[0, m)`.
    pub fn eval_mod(&self, x: u64, m: u64) -> u64 {
        let m_big = BigInt::from(m);
        let x = BigInt::from(x);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| (acc * &x + c).mod_floor(&m_big))
            .to_u64()
            .expect("reduced below m")
    }
}

impl fmt::Display for Poly {
    /// Writes the polynomial in the variable `p`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("p")?,
                _ => write!(f, "p^{i}")?,
            }
        }
        Ok(())
    }
}

/// Determinant by fraction-free Gaussian elimination.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant `Res(a, b)` as the determinant of the Sylvester matrix.
pub fn resultant(a: &Poly, b: &Poly) -> Result<BigInt> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Err(Error::ZeroResultant);
    };
    let n = da + db;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for row in 0..db {
        for (i, c) in a.coeffs.iter().rev().enumerate() {
            m[row][row + i] = c.clone();
        }
    }
    for row in 0..da {
        for (i, c) in b.coeffs.iter().rev().enumerate() {
            m[db + row][row + i] = c.clone();
        }
    }
    Ok(bareiss_det(m))
}

/// Primes that can divide `a(x)` and `b(x)` at the same integer `x`: the
/// prime divisors of the resultant.
pub fn common_prime_certificate(a: &Poly, b: &Poly) -> Result<Vec<u64>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Zero);
    }
    let res = resultant(a, b)?;
    if res.is_zero() {
        return Err(Error::ZeroResultant);
    }
    let abs = res.abs().to_u128().ok_or(Error::Overflow)?;
    arith::factorize(abs)?
        .primes()
        .map(|p| u64::try_from(p).map_err(|_| Error::Overflow))
        .collect::<Result<Vec<_>>>()
}

/// Residues `x mod m` where both polynomials vanish.
pub fn common_roots_mod(a: &Poly, b: &Poly, m: u64) -> Vec<u64> {
    (0..m)
        .filter(|&x| a.eval_mod(x, m) == 0 && b.eval_mod(x, m) == 0)
        .collect()
}

/// `n^2 + 3n + 9`.
pub fn shanks_core() -> Poly {
    Poly::new([9, 3, 1])
}

/// `f_n(X) = X^3 + (n+3)X^2 + nX - 1` at a fixed `n`.
pub fn shanks_cubic(n: &BigInt) -> Poly {
    Poly::new([BigInt::from(-1), n.clone(), n + 3, BigInt::one()])
}

/// `n^3 + 5n^2 + 10n + 7`.
pub fn lehmer_f1() -> Poly {
    Poly::new([7, 10, 5, 1])
}

/// `n^4 + 5n^3 + 15n^2 + 25n + 25`.
pub fn lehmer_f2() -> Poly {
    Poly::new([25, 25, 15, 5, 1])
}

/// `g_n(X)` at a fixed `n`.
pub fn lehmer_quintic(n: &BigInt) -> Poly {
    let d = LehmerData::new(n.clone());
    Poly::new([
        BigInt::one(),
        d.c_n,
        d.b_n,
        -d.a_n,
        n * n,
        BigInt::one(),
    ])
}

/// Discriminant of a monic polynomial, `(-1)^(d(d-1)/2) Res(f, f')`.
pub fn monic_discriminant(f: &Poly) -> Result<BigInt> {
    let d = f.degree().ok_or(Error::Zero)?;
    if !f.leading().is_one() {
        return Err(Error::Inadmissible("polynomial is not monic".into()));
    }
    let r = resultant(f, &f.derivative())?;
    Ok(if (d * (d.saturating_sub(1)) / 2) % 2 == 1 {
        -r
    } else {
        r
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShankData {
    #[serde(with = "decimal::bigint")]
    pub n: BigInt,
    #[serde(with = "decimal::bigint")]
    pub core: BigInt,
    #[serde(with = "decimal::bigint")]
    pub disc: BigInt,
    /// `None` when `core` is too large to factor here
    pub squarefree_core: Option<bool>,
}

impl ShankData {
    pub fn new(n: BigInt) -> Self {
        let core = shanks_core().eval(&n);
        let disc = &core * &core;
        let squarefree_core = core.to_u128().filter(|&c| c > 0).map(arith::is_squarefree);
        ShankData {
            n,
            core,
            disc,
            squarefree_core,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LehmerData {
    #[serde(with = "decimal::bigint")]
    pub n: BigInt,
    #[serde(with = "decimal::bigint")]
    pub a_n: BigInt,
    #[serde(with = "decimal::bigint")]
    pub b_n: BigInt,
    #[serde(with = "decimal::bigint")]
    pub c_n: BigInt,
    #[serde(with = "decimal::bigint")]
    pub f1: BigInt,
    #[serde(with = "decimal::bigint")]
    pub f2: BigInt,
    #[serde(with = "decimal::bigint")]
    pub disc: BigInt,
}

impl LehmerData {
    pub fn new(n: BigInt) -> Self {
        let a_n = Poly::new([10, 10, 6, 2]).eval(&n);
        let b_n = Poly::new([5, 15, 11, 5, 1]).eval(&n);
        let c_n = Poly::new([10, 10, 4, 1]).eval(&n);
        let f1 = lehmer_f1().eval(&n);
        let f2 = lehmer_f2().eval(&n);
        let f2sq = &f2 * &f2;
        let disc = &f1 * &f1 * &f2sq * &f2sq;
        LehmerData {
            n,
            a_n,
            b_n,
            c_n,
            f1,
            f2,
            disc,
        }
    }
}

/// One line of the elimination showing that a common prime of
/// `p^2 + 3p + 9` and `p^3 + 5p^2 + 10p + 7` divides 181.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub expression: String,
    pub result: String,
    pub holds: bool,
}

/// Replays the four steps as identities in `ℤ[p]`.
pub fn gcd_chain_replay() -> Vec<ChainStep> {
    let p = Poly::x();
    let core = shanks_core();
    let f1 = lehmer_f1();
    let r1 = Poly::new([7, 1, 2]);
    let r2 = Poly::new([11, 5]);
    let r3 = Poly::new([45, 4]);
    let r4 = Poly::constant(181);
    let steps = [
        (
            format!("p({core}) - ({f1})"),
            p.mul(&core).sub(&f1),
            r1.neg(),
        ),
        (format!("2({core}) - ({r1})"), core.scale(2).sub(&r1), r2.clone()),
        (
            format!("5({core}) - p({r2})"),
            core.scale(5).sub(&p.mul(&r2)),
            r3.clone(),
        ),
        (format!("5({r3}) - 4({r2})"), r3.scale(5).sub(&r2.scale(4)), r4),
    ];
    steps
        .into_iter()
        .map(|(expression, computed, expected)| ChainStep {
            expression,
            result: computed.to_string(),
            holds: computed == expected,
        })
        .collect()
}

/// Result of [`zylinski_filter`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZylinskiCheck {
    pub passes: bool,
    pub offender: Option<u64>,
}

/// Whether no prime below `degree` divides any of `values`; otherwise the
/// smallest such prime.
pub fn zylinski_filter(values: &[BigInt], degree: u32) -> Result<ZylinskiCheck> {
    if degree < 2 {
        return Err(Error::Inadmissible(format!("degree {degree} is below 2")));
    }
    for ell in arith::primes_up_to(degree as u64 - 1) {
        let l = BigInt::from(ell);
        if values.iter().any(|v| (v % &l).is_zero()) {
            return Ok(ZylinskiCheck {
                passes: false,
                offender: Some(ell),
            });
        }
    }
    Ok(ZylinskiCheck {
        passes: true,
        offender: None,
    })
}

/// Degree of the compositum of a cubic and a quintic field.
pub const COMPOSITUM_DEGREE: u32 = 15;

/// Rho step budget for the prime-factor counts; counts are left empty when
/// it runs out.
const COUNT_BUDGET: u64 = 1 << 22;

/// Evidence attached to one prime `p` from the search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub p: u64,
    #[serde(with = "decimal::u128_str")]
    pub residue: u128,
    #[serde(with = "decimal::u128_str")]
    pub modulus: u128,
    #[serde(with = "decimal::bigint")]
    pub s_core: BigInt,
    #[serde(with = "decimal::bigint")]
    pub f1: BigInt,
    #[serde(with = "decimal::bigint")]
    pub f2: BigInt,
    /// `gcd(S_core(p), f1(p) f2(p))`
    #[serde(with = "decimal::bigint")]
    pub gcd: BigInt,
    pub zylinski: ZylinskiCheck,
    pub core_squarefree: Option<bool>,
    /// Proxies only: numbers of distinct primes dividing each factor.
    pub core_prime_count: Option<usize>,
    pub f1_prime_count: Option<usize>,
    pub f2_prime_count: Option<usize>,
}

impl Certificate {
    /// Builds the certificate for `p` against `congruence`, without
    /// judging it.
    pub fn compute(p: u64, congruence: arith::Congruence) -> Result<Self> {
        let pb = BigInt::from(p);
        let s_core = shanks_core().eval(&pb);
        let f1 = lehmer_f1().eval(&pb);
        let f2 = lehmer_f2().eval(&pb);
        let gcd = s_core.gcd(&(&f1 * &f2));
        let zylinski = zylinski_filter(&[s_core.clone(), f1.clone(), f2.clone()], COMPOSITUM_DEGREE)?;
        let count = |v: &BigInt| -> Result<Option<usize>> {
            match v.to_u128() {
                Some(v) => Ok(arith::factorize_bounded(v, COUNT_BUDGET)?.map(|f| f.factors.len())),
                None => Ok(None),
            }
        };
        Ok(Certificate {
            p,
            residue: congruence.residue,
            modulus: congruence.modulus,
            core_squarefree: s_core.to_u128().map(arith::is_squarefree),
            core_prime_count: count(&s_core)?,
            f1_prime_count: count(&f1)?,
            f2_prime_count: count(&f2)?,
            s_core,
            f1,
            f2,
            gcd,
            zylinski,
        })
    }

    pub fn congruence_holds(&self) -> bool {
        self.modulus != 0 && (self.p as u128) % self.modulus == self.residue
    }

    pub fn coprime(&self) -> bool {
        self.gcd.is_one()
    }

    /// Congruence, primality, coprimality and the Zylinski condition.
    pub fn is_valid(&self) -> bool {
        self.congruence_holds()
            && arith::is_prime(self.p as u128)
            && self.coprime()
            && self.zylinski.passes
    }
}

/// The congruences `p = 1 mod 181` and `p = 1 mod 541`.
pub const DEFAULT_CONGRUENCES: [(i128, u128); 2] = [(1, 181), (1, 541)];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub limit: u64,
    #[serde(with = "decimal::u128_str")]
    pub residue: u128,
    #[serde(with = "decimal::u128_str")]
    pub modulus: u128,
    /// terms of the progression up to `limit`
    pub scanned: u64,
    pub primes: u64,
    pub rejected_gcd: u64,
    pub rejected_zylinski: u64,
    /// `[ell, count]` for the smallest offending prime below 15
    pub zylinski_offenders: Vec<(u64, u64)>,
    pub hits: Vec<Certificate>,
    pub empty: bool,
    /// every hit re-checked sequentially after the parallel scan
    pub reverified: bool,
    pub elapsed_ms: u64,
}

/// Primes `p ≤ limit` in the class given by `congruences` whose cubic and
/// quintic discriminants are coprime and free of primes below 15.
pub fn candidate_search(limit: u64, congruences: &[(i128, u128)]) -> Result<SearchReport> {
    let start = Instant::now();
    let class = arith::crt(congruences)?;
    if class.modulus > u64::MAX as u128 {
        return Err(Error::Overflow);
    }
    let (m, r) = (class.modulus as u64, class.residue as u64);
    // p = r + k m with p >= 2
    let first_k = u64::from(r < 2);
    let last_k = if limit < r { None } else { Some((limit - r) / m) };
    let ks: Vec<u64> = match last_k {
        Some(last) if last >= first_k => (first_k..=last).collect(),
        _ => Vec::new(),
    };

    enum Outcome {
        Composite,
        Gcd,
        Zylinski(u64),
        Hit(Box<Certificate>),
    }
    let outcomes = ks
        .par_iter()
        .map(|&k| {
            let p = r + k * m;
            if !arith::is_prime(p as u128) {
                return Ok(Outcome::Composite);
            }
            let cert = Certificate::compute(p, class)?;
            Ok(if !cert.coprime() {
                Outcome::Gcd
            } else if let Some(ell) = cert.zylinski.offender {
                Outcome::Zylinski(ell)
            } else {
                Outcome::Hit(Box::new(cert))
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut primes = 0;
    let mut rejected_gcd = 0;
    let mut offenders = std::collections::BTreeMap::new();
    let mut hits = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Composite => {}
            Outcome::Gcd => {
                primes += 1;
                rejected_gcd += 1;
            }
            Outcome::Zylinski(ell) => {
                primes += 1;
                *offenders.entry(ell).or_insert(0u64) += 1;
            }
            Outcome::Hit(c) => {
                primes += 1;
                hits.push(*c);
            }
        }
    }
    let reverified = hits.iter().all(|c| {
        Certificate::compute(c.p, class).is_ok_and(|fresh| fresh == *c && fresh.is_valid())
    });
    if !reverified {
        return Err(Error::Integrity("a search hit failed re-verification".into()));
    }
    Ok(SearchReport {
        limit,
        residue: class.residue,
        modulus: class.modulus,
        scanned: ks.len() as u64,
        primes,
        rejected_gcd,
        rejected_zylinski: offenders.values().sum(),
        zylinski_offenders: offenders.into_iter().collect(),
        empty: hits.is_empty(),
        hits,
        reverified,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Discriminant `d_S^5 d_L^3 = S_core^10 f1^6 f2^12` of the compositum,
/// valid once the two discriminants are coprime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositumDisc {
    pub p: u64,
    #[serde(with = "decimal::biguint")]
    pub disc: BigUint,
    /// `(factor, exponent)` as `("S_core", 10)`, `("f1", 6)`, `("f2", 12)`
    pub exponents: Vec<(String, u32)>,
    pub digits: usize,
}

/// Fails with [`Error::MissingCertificate`] unless `p` is in the default
/// class mod 181·541 and `gcd(S_core(p), f1(p) f2(p)) = 1`.
pub fn compositum_disc(p: u64) -> Result<CompositumDisc> {
    let class = arith::crt(&DEFAULT_CONGRUENCES)?;
    let cert = Certificate::compute(p, class)?;
    if !(cert.congruence_holds() && cert.coprime()) {
        return Err(Error::MissingCertificate(p));
    }
    let to_u = |v: &BigInt| v.to_biguint().ok_or(Error::Integrity("negative factor".into()));
    let disc = to_u(&cert.s_core)?.pow(10) * to_u(&cert.f1)?.pow(6) * to_u(&cert.f2)?.pow(12);
    Ok(CompositumDisc {
        p,
        digits: disc.to_string().len(),
        disc,
        exponents: vec![("S_core".into(), 10), ("f1".into(), 6), ("f2".into(), 12)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn resultant_certificates() {
        assert_eq!(common_prime_certificate(&shanks_core(), &lehmer_f1()).unwrap(), vec![181]);
        assert_eq!(common_prime_certificate(&shanks_core(), &lehmer_f2()).unwrap(), vec![541]);
        assert!(common_prime_certificate(&Poly::x(), &Poly::new([1, 1])).unwrap().is_empty());
        let f = Poly::new([1, 1]);
        assert_eq!(
            common_prime_certificate(&f, &f.mul(&Poly::new([2, 1]))),
            Err(Error::ZeroResultant)
        );
    }

    #[test]
    fn resultant_matches_root_product() {
        // Res(x - a, g) = g(a)
        let g = Poly::new([-7, 3, 0, 2]);
        for a in -5..=5 {
            assert_eq!(resultant(&Poly::new([-a, 1]), &g).unwrap(), g.eval(&big(a)));
        }
        // Res((x-1)(x-2), (x-3)(x-5)) = (1-3)(1-5)(2-3)(2-5) = 24
        let a = Poly::new([2, -3, 1]);
        let b = Poly::new([15, -8, 1]);
        assert_eq!(resultant(&a, &b).unwrap(), big(24));
    }

    #[test]
    fn common_roots_exist() {
        let r181 = common_roots_mod(&shanks_core(), &lehmer_f1(), 181);
        let r541 = common_roots_mod(&shanks_core(), &lehmer_f2(), 541);
        assert!(!r181.is_empty() && !r541.is_empty());
        assert!(common_roots_mod(&shanks_core(), &lehmer_f1(), 541).is_empty());
    }

    #[test]
    fn chain_replays() {
        let steps = gcd_chain_replay();
        assert_eq!(steps.len(), 4);
        assert!(steps.iter().all(|s| s.holds), "{steps:#?}");
        assert_eq!(steps[0].result, "-2p^2 - p - 7");
        assert_eq!(steps[3].result, "181");
    }

    #[test]
    fn discriminant_formulas() {
        for n in -20..=20 {
            let n = big(n);
            let l = LehmerData::new(n.clone());
            assert_eq!(monic_discriminant(&lehmer_quintic(&n)).unwrap(), l.disc, "n = {n}");
            let s = ShankData::new(n.clone());
            assert_eq!(monic_discriminant(&shanks_cubic(&n)).unwrap(), s.disc, "n = {n}");
        }
    }

    #[test]
    fn zylinski_examples() {
        let primorial = 2 * 3 * 5 * 7 * 11 * 13;
        let ok = zylinski_filter(&[big(primorial + 1), big(2 * primorial + 1)], 15).unwrap();
        assert!(ok.passes);
        let bad = zylinski_filter(&[big(primorial + 1), big(49)], 15).unwrap();
        assert_eq!(bad.offender, Some(7));
        assert!(zylinski_filter(&[big(1)], 1).is_err());
    }

    #[test]
    fn disc_rejects_uncertified() {
        // a common root of the core and f1 mod 181 makes both divisible by 181
        let x = common_roots_mod(&shanks_core(), &lehmer_f1(), 181)[0];
        let p = arith::crt(&[(x as i128, 181), (1, 541)]).unwrap().residue as u64;
        assert_eq!(compositum_disc(p), Err(Error::MissingCertificate(p)));
        assert_eq!(compositum_disc(2), Err(Error::MissingCertificate(2)));
    }

    #[test]
    fn small_search() {
        let report = candidate_search(2_000_000, &DEFAULT_CONGRUENCES).unwrap();
        assert_eq!(report.modulus, 97921);
        assert!(report.reverified);
        assert_eq!(report.empty, report.hits.is_empty());
        for h in &report.hits {
            assert!(h.is_valid());
            let d = compositum_disc(h.p).unwrap();
            let expect = h.s_core.pow(10) * h.f1.pow(6) * h.f2.pow(12);
            assert_eq!(BigInt::from(d.disc), expect);
        }
    }
}
