//! Orders of `H¹(G, O_K*)` and of the Pólya group for real quadratic and
//! totally real bi-quadratic fields.
//!
//! The Pólya group is never built from ideals. For a Galois field the
//! sequence `0 → H¹(G, O_K*) → ⊕ ℤ/e_i → Po(K) → 0` is exact, so
//! `|Po(K)| = ∏ e_i / |H¹|`. For a bi-quadratic field the 2-torsion of `H¹`
//! is the span of `[Δ_i]` and `[a_i]` in ℚ*/(ℚ*)², and `H¹` is twice as
//! large exactly when 2 is totally ramified and every quadratic subfield
//! has an integer of norm `±2`.
//!
//! For a quadratic field `|H¹| = 2` if the fundamental unit has norm `−1`
//! and `4` otherwise (cohomology of the cyclic group of order 2 acting on
//! `±ε^ℤ`). That rule is standard background rather than part of the
//! bi-quadratic machinery above.

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::quadratic::{check_radicand, QuadCache, QuadData, QuadField};
use crate::squareclass::{span, SquareClass};

/// ℚ(√m, √n) with `m ≠ n` squarefree and at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiquadField {
    m: u64,
    n: u64,
    d3: u64,
}

impl BiquadField {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        check_radicand(m)?;
        check_radicand(n)?;
        if m == n {
            return Err(Error::EqualRadicands(m));
        }
        let d3 = arith::squarefree_part(m as u128 * n as u128)?;
        let d3 = u64::try_from(d3).map_err(|_| Error::Overflow)?;
        Ok(BiquadField { m, n, d3 })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Radicands `(d1, d2, d3) = (m, n, sqf(mn))` of the quadratic subfields.
    pub fn subfields(&self) -> (u64, u64, u64) {
        (self.m, self.n, self.d3)
    }

    fn subfield_list(&self) -> [u64; 3] {
        [self.m, self.n, self.d3]
    }
}

/// Free-function form of [`BiquadField::subfields`].
pub fn subfields(k: &BiquadField) -> (u64, u64, u64) {
    k.subfields()
}

/// A ramified rational prime with its ramification index. Serialized as
/// the pair `[p, e]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(u64, u32)", into = "(u64, u32)")]
pub struct RamifiedPrime {
    pub p: u64,
    pub e: u32,
}

impl From<(u64, u32)> for RamifiedPrime {
    fn from((p, e): (u64, u32)) -> Self {
        RamifiedPrime { p, e }
    }
}

impl From<RamifiedPrime> for (u64, u32) {
    fn from(r: RamifiedPrime) -> Self {
        (r.p, r.e)
    }
}

/// Ramified primes of `K/ℚ`, sorted. Odd primes have `e = 2`; 2 has `e = 4`
/// when it ramifies in all three subfields.
pub fn ramified_primes(k: &BiquadField) -> Vec<RamifiedPrime> {
    let subs = k.subfield_list();
    let mut odd: Vec<u64> = Vec::new();
    for d in [k.m, k.n] {
        for p in arith::factorize(d as u128).expect("nonzero").primes() {
            let p = p as u64;
            if p != 2 && !odd.contains(&p) {
                odd.push(p);
            }
        }
    }
    odd.sort_unstable();
    let two_count = subs.iter().filter(|&&d| d % 4 != 1).count();
    let mut out = Vec::with_capacity(odd.len() + 1);
    match two_count {
        0 => {}
        3 => out.push(RamifiedPrime { p: 2, e: 4 }),
        _ => out.push(RamifiedPrime { p: 2, e: 2 }),
    }
    out.extend(odd.into_iter().map(|p| RamifiedPrime { p, e: 2 }));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorSource {
    /// `[Δ_i]`, the squarefree part of the subfield discriminant
    Discriminant,
    /// `[a_i]`, from `N(u_i + 1)` (trivial when `N(u_i) = −1`)
    UnitSuccessor,
}

/// One of the six generators of the 2-torsion of `H¹`, with where it came
/// from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    pub radicand: u64,
    pub source: GeneratorSource,
    pub representative: u64,
    pub class: SquareClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_norm: Option<i8>,
}

/// `[Δ1], [Δ2], [Δ3], [a1], [a2], [a3]`.
pub fn h1_generators(k: &BiquadField) -> Result<Vec<Generator>> {
    h1_generators_with(k, &QuadCache::new())
}

pub fn h1_generators_with(k: &BiquadField, cache: &QuadCache) -> Result<Vec<Generator>> {
    let subs = k.subfield_list();
    let mut gens = Vec::with_capacity(6);
    for (i, &d) in subs.iter().enumerate() {
        let class = SquareClass::from_primes(
            arith::factorize(d as u128)?.primes().map(|p| p as u64),
        );
        gens.push(Generator {
            label: format!("Delta{}", i + 1),
            radicand: d,
            source: GeneratorSource::Discriminant,
            representative: d,
            class,
            unit_norm: None,
        });
    }
    for (i, &d) in subs.iter().enumerate() {
        let data = cache.get(d)?;
        gens.push(Generator {
            label: format!("a{}", i + 1),
            radicand: d,
            source: GeneratorSource::UnitSuccessor,
            representative: data.unit_class.representative() as u64,
            class: data.unit_class.clone(),
            unit_norm: Some(data.unit.norm),
        });
    }
    Ok(gens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Order {
    pub two_torsion_order: u64,
    pub doubled: bool,
    pub h1_order: u64,
}

fn h1_from_parts(
    gens: &[Generator],
    ramified: &[RamifiedPrime],
    subs: &[std::sync::Arc<QuadData>],
) -> H1Order {
    let group = span(gens.iter().map(|g| &g.class));
    let two_torsion_order = group.order() as u64;
    let two_total = ramified.iter().any(|r| r.p == 2 && r.e == 4);
    let doubled = two_total && subs.iter().all(|q| q.represents_pm2);
    H1Order {
        two_torsion_order,
        doubled,
        h1_order: two_torsion_order * if doubled { 2 } else { 1 },
    }
}

pub fn h1_order_biquad(k: &BiquadField) -> Result<H1Order> {
    let cache = QuadCache::new();
    let gens = h1_generators_with(k, &cache)?;
    let subs = k
        .subfield_list()
        .iter()
        .map(|&d| cache.get(d))
        .collect::<Result<Vec<_>>>()?;
    Ok(h1_from_parts(&gens, &ramified_primes(k), &subs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Quadratic,
    Biquadratic,
}

/// Everything computed about one field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyaReport {
    pub kind: FieldKind,
    /// `[d]` or `[m, n]`
    pub radicands: Vec<u64>,
    /// `[d]` or `[d1, d2, d3]`
    pub subfields: Vec<u64>,
    pub ramified: Vec<RamifiedPrime>,
    pub generators: Vec<Generator>,
    pub h1_two_torsion_order: u64,
    pub setzer_doubled: bool,
    pub h1_order: u64,
    pub edge_product: u64,
    pub polya_order: u64,
    pub is_polya: bool,
    /// `k` with `Po(K) ≅ (ℤ/2)^k`; only set when every `e_i = 2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elementary_rank: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_norm: Option<i8>,
}

impl PolyaReport {
    pub fn ramified_count(&self) -> usize {
        self.ramified.len()
    }

    pub fn two_index(&self) -> Option<u32> {
        self.ramified.iter().find(|r| r.p == 2).map(|r| r.e)
    }
}

fn order_from_sequence(ramified: &[RamifiedPrime], h1_order: u64) -> Result<(u64, u64, Option<u32>)> {
    let edge_product: u64 = ramified.iter().map(|r| r.e as u64).product();
    if h1_order == 0 || !edge_product.is_multiple_of(h1_order) {
        return Err(Error::Integrity(format!(
            "|H1| = {h1_order} does not divide the product of ramification indices {edge_product}"
        )));
    }
    let polya_order = edge_product / h1_order;
    let elementary_rank = ramified
        .iter()
        .all(|r| r.e == 2)
        .then(|| polya_order.trailing_zeros());
    Ok((edge_product, polya_order, elementary_rank))
}

pub fn polya_order_biquad(k: &BiquadField) -> Result<PolyaReport> {
    polya_order_biquad_with(k, &QuadCache::new())
}

pub fn polya_order_biquad_with(k: &BiquadField, cache: &QuadCache) -> Result<PolyaReport> {
    let ramified = ramified_primes(k);
    let gens = h1_generators_with(k, cache)?;
    let subs = k
        .subfield_list()
        .iter()
        .map(|&d| cache.get(d))
        .collect::<Result<Vec<_>>>()?;
    let h1 = h1_from_parts(&gens, &ramified, &subs);
    let (edge_product, polya_order, elementary_rank) = order_from_sequence(&ramified, h1.h1_order)?;
    Ok(PolyaReport {
        kind: FieldKind::Biquadratic,
        radicands: vec![k.m, k.n],
        subfields: k.subfield_list().to_vec(),
        ramified,
        generators: gens,
        h1_two_torsion_order: h1.two_torsion_order,
        setzer_doubled: h1.doubled,
        h1_order: h1.h1_order,
        edge_product,
        polya_order,
        is_polya: polya_order == 1,
        elementary_rank,
        unit_norm: None,
    })
}

pub fn polya_order_quad(d: u64) -> Result<PolyaReport> {
    polya_order_quad_with(d, &QuadCache::new())
}

pub fn polya_order_quad_with(d: u64, cache: &QuadCache) -> Result<PolyaReport> {
    let field = QuadField::new(d)?;
    let data = cache.get(d)?;
    let ramified: Vec<RamifiedPrime> = field
        .ramified_primes()
        .into_iter()
        .map(|p| RamifiedPrime { p, e: 2 })
        .collect();
    let h1_order = if data.unit.norm == -1 { 2 } else { 4 };
    let (edge_product, polya_order, elementary_rank) = order_from_sequence(&ramified, h1_order)?;
    Ok(PolyaReport {
        kind: FieldKind::Quadratic,
        radicands: vec![d],
        subfields: vec![d],
        ramified,
        generators: Vec::new(),
        h1_two_torsion_order: h1_order,
        setzer_doubled: false,
        h1_order,
        edge_product,
        polya_order,
        is_polya: polya_order == 1,
        elementary_rank,
        unit_norm: Some(data.unit.norm),
    })
}
