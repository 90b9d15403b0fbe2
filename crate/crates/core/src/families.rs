//! Families of bi-quadratic Pólya fields built from four primes.
//!
//! Each theorem case is a list of hypothesis strings in a small notation
//! that mirrors how the hypotheses are written by hand:
//!
//! ```text
//! p = q = r = 3 mod 4          congruence chain
//! (qr/p) = (pr/q) = -1         Legendre chain
//! (p/s) != (2/s) = -1          adjacent terms equal / unequal
//! -1 = -(q/s)                  negated terms
//! not((q/s) = (r/s) = 1)       negated chain
//! ```
//!
//! A chain holds when every adjacent pair satisfies its relation, so
//! `A = B = C = -1` pins all three symbols to `-1` and `X != Y = -1` forces
//! `X = +1`. All cases go through the same parser and evaluator.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::polya::{polya_order_biquad_with, BiquadField, PolyaReport};
use crate::quadratic::{fundamental_unit, successor_class, QuadCache};
use crate::squareclass::SquareClass;

/// Four distinct odd primes in fixed roles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u64; 4]", into = "[u64; 4]")]
pub struct PrimeQuadruple {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub s: u64,
    mod8: [u8; 4],
}

impl PrimeQuadruple {
    pub fn new(p: u64, q: u64, r: u64, s: u64) -> Result<Self> {
        let all = [p, q, r, s];
        for &x in &all {
            if x == 2 || !arith::is_prime(x as u128) {
                return Err(Error::NotOddPrime(x as u128));
            }
        }
        for i in 0..4 {
            for j in 0..i {
                if all[i] == all[j] {
                    return Err(Error::Inadmissible(format!("repeated prime {}", all[i])));
                }
            }
        }
        Ok(Self::from_primes_unchecked(all))
    }

    fn from_primes_unchecked([p, q, r, s]: [u64; 4]) -> Self {
        PrimeQuadruple {
            p,
            q,
            r,
            s,
            mod8: [p, q, r, s].map(|x| (x % 8) as u8),
        }
    }

    pub fn as_array(&self) -> [u64; 4] {
        [self.p, self.q, self.r, self.s]
    }

    /// Residues mod 8 of `(p, q, r, s)`.
    pub fn mod8(&self) -> [u8; 4] {
        self.mod8
    }

    /// Residues mod 4 of `(p, q, r, s)`.
    pub fn mod4(&self) -> [u8; 4] {
        self.mod8.map(|x| x % 4)
    }

    pub fn qrs(&self) -> u64 {
        self.q * self.r * self.s
    }
}

impl TryFrom<[u64; 4]> for PrimeQuadruple {
    type Error = Error;
    fn try_from([p, q, r, s]: [u64; 4]) -> Result<Self> {
        PrimeQuadruple::new(p, q, r, s)
    }
}

impl From<PrimeQuadruple> for [u64; 4] {
    fn from(t: PrimeQuadruple) -> Self {
        t.as_array()
    }
}

impl fmt::Display for PrimeQuadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.p, self.q, self.r, self.s)
    }
}

// ---------------------------------------------------------------------------
// hypothesis notation

#[derive(Debug, Clone, PartialEq, Eq)]
enum Factor {
    Letter(usize),
    Const(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Atom {
    Legendre { num: Vec<Factor>, den: usize },
    Int(i64),
    Product(Vec<Factor>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Term {
    neg: bool,
    atom: Atom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rel {
    Eq,
    Ne,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Chain {
    terms: Vec<Term>,
    rels: Vec<Rel>,
    modulus: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Conjunct {
    negated: bool,
    chain: Chain,
}

fn letter_index(c: char) -> Option<usize> {
    match c {
        'p' => Some(0),
        'q' => Some(1),
        'r' => Some(2),
        's' => Some(3),
        _ => None,
    }
}

fn parse_factors(src: &str, whole: &str) -> Result<Vec<Factor>> {
    let bad = || Error::Condition(whole.to_string());
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(c) = chars.next() {
        if let Some(i) = letter_index(c) {
            out.push(Factor::Letter(i));
        } else if let Some(d) = c.to_digit(10) {
            let mut v = d as u64;
            while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                v = v * 10 + d as u64;
                chars.next();
            }
            out.push(Factor::Const(v));
        } else {
            return Err(bad());
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn parse_term(src: &str, whole: &str, modular: bool) -> Result<Term> {
    let bad = || Error::Condition(whole.to_string());
    let (neg, body) = match src.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, src),
    };
    let atom = if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
        let (num, den) = inner.split_once('/').ok_or_else(bad)?;
        let mut den_chars = den.chars();
        let den = match (den_chars.next().and_then(letter_index), den_chars.next()) {
            (Some(i), None) => i,
            _ => return Err(bad()),
        };
        Atom::Legendre {
            num: parse_factors(num, whole)?,
            den,
        }
    } else if !body.is_empty() && body.chars().all(|c| c.is_ascii_digit()) {
        Atom::Int(body.parse().map_err(|_| bad())?)
    } else {
        Atom::Product(parse_factors(body, whole)?)
    };
    match (&atom, modular) {
        (Atom::Legendre { .. }, true) | (Atom::Product(_), false) => return Err(bad()),
        (Atom::Int(v), false) if *v != 1 => return Err(bad()),
        _ => {}
    }
    Ok(Term { neg, atom })
}

fn parse_chain(src: &str, whole: &str) -> Result<Chain> {
    let bad = || Error::Condition(whole.to_string());
    let (body, modulus) = match src.rsplit_once(" mod ") {
        Some((b, m)) => (b, Some(m.trim().parse::<u64>().map_err(|_| bad())?)),
        None => (src, None),
    };
    if modulus == Some(0) {
        return Err(bad());
    }
    let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pieces = Vec::new();
    let mut rels = Vec::new();
    let mut rest = compact.as_str();
    loop {
        match rest.find('=') {
            Some(i) => {
                let (piece, rel) = match rest[..i].strip_suffix('!') {
                    Some(stripped) => (stripped, Rel::Ne),
                    None => (&rest[..i], Rel::Eq),
                };
                pieces.push(piece);
                rels.push(rel);
                rest = &rest[i + 1..];
            }
            None => {
                pieces.push(rest);
                break;
            }
        }
    }
    if rels.is_empty() {
        return Err(bad());
    }
    let terms = pieces
        .into_iter()
        .map(|t| parse_term(t, whole, modulus.is_some()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Chain {
        terms,
        rels,
        modulus,
    })
}

fn parse_conjunct(src: &str) -> Result<Conjunct> {
    let trimmed = src.trim();
    match trimmed.strip_prefix("not(").and_then(|s| s.strip_suffix(')')) {
        Some(inner) => Ok(Conjunct {
            negated: true,
            chain: parse_chain(inner.trim(), src)?,
        }),
        None => Ok(Conjunct {
            negated: false,
            chain: parse_chain(trimmed, src)?,
        }),
    }
}

fn factor_value(f: &Factor, primes: &[u64; 4]) -> u64 {
    match *f {
        Factor::Letter(i) => primes[i],
        Factor::Const(c) => c,
    }
}

impl Term {
    fn value(&self, primes: &[u64; 4], modulus: Option<u64>) -> i64 {
        match modulus {
            None => {
                let v = match &self.atom {
                    Atom::Legendre { num, den } => {
                        let p = primes[*den] as u128;
                        num.iter()
                            .map(|f| arith::jacobi(factor_value(f, primes) as i128, p) as i64)
                            .product()
                    }
                    Atom::Int(v) => *v,
                    Atom::Product(_) => unreachable!("rejected by the parser"),
                };
                if self.neg {
                    -v
                } else {
                    v
                }
            }
            Some(m) => {
                let v = match &self.atom {
                    Atom::Int(v) => (*v as u64) % m,
                    Atom::Product(fs) => fs
                        .iter()
                        .fold(1 % m, |acc, f| ((acc as u128 * (factor_value(f, primes) % m) as u128) % m as u128) as u64),
                    Atom::Legendre { .. } => unreachable!("rejected by the parser"),
                };
                let v = if self.neg { (m - v) % m } else { v };
                v as i64
            }
        }
    }
}

impl Chain {
    fn holds(&self, primes: &[u64; 4]) -> bool {
        let values: Vec<i64> = self
            .terms
            .iter()
            .map(|t| t.value(primes, self.modulus))
            .collect();
        self.rels.iter().enumerate().all(|(i, rel)| match rel {
            Rel::Eq => values[i] == values[i + 1],
            Rel::Ne => values[i] != values[i + 1],
        })
    }
}

/// A compiled list of hypothesis strings; holds when every one holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypotheses {
    source: Vec<String>,
    conjuncts: Vec<Conjunct>,
}

impl Hypotheses {
    pub fn parse<S: AsRef<str>>(conditions: &[S]) -> Result<Self> {
        let conjuncts = conditions
            .iter()
            .map(|c| parse_conjunct(c.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Hypotheses {
            source: conditions.iter().map(|c| c.as_ref().to_string()).collect(),
            conjuncts,
        })
    }

    pub fn source(&self) -> &[String] {
        &self.source
    }

    pub fn holds(&self, t: &PrimeQuadruple) -> bool {
        let primes = t.as_array();
        self.conjuncts
            .iter()
            .all(|c| c.chain.holds(&primes) != c.negated)
    }
}

// ---------------------------------------------------------------------------
// theorem cases

/// Field attached to a quadruple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldShape {
    #[serde(rename = "Q(sqrt p, sqrt qrs)")]
    PQrs,
    #[serde(rename = "Q(sqrt 2p, sqrt qrs)")]
    TwoPQrs,
    #[serde(rename = "Q(sqrt 2p, sqrt 2qrs)")]
    TwoPTwoQrs,
}

impl FieldShape {
    pub fn radicands(self, t: &PrimeQuadruple) -> (u64, u64) {
        let qrs = t.qrs();
        match self {
            FieldShape::PQrs => (t.p, qrs),
            FieldShape::TwoPQrs => (2 * t.p, qrs),
            FieldShape::TwoPTwoQrs => (2 * t.p, 2 * qrs),
        }
    }

    pub fn field(self, t: &PrimeQuadruple) -> Result<BiquadField> {
        let (m, n) = self.radicands(t);
        BiquadField::new(m, n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theorem {
    #[serde(rename = "1.1")]
    T1,
    #[serde(rename = "1.2")]
    T2,
    #[serde(rename = "1.3")]
    T3,
    #[serde(rename = "1.4")]
    T4,
    #[serde(rename = "1.5")]
    T5,
    #[serde(rename = "1.6")]
    T6,
    #[serde(rename = "1.7")]
    T7,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::T1,
        Theorem::T2,
        Theorem::T3,
        Theorem::T4,
        Theorem::T5,
        Theorem::T6,
        Theorem::T7,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::T1 => "1.1",
            Theorem::T2 => "1.2",
            Theorem::T3 => "1.3",
            Theorem::T4 => "1.4",
            Theorem::T5 => "1.5",
            Theorem::T6 => "1.6",
            Theorem::T7 => "1.7",
        }
    }

    pub fn shape(self) -> FieldShape {
        match self {
            Theorem::T1 | Theorem::T2 | Theorem::T3 => FieldShape::PQrs,
            Theorem::T4 | Theorem::T5 => FieldShape::TwoPQrs,
            Theorem::T6 | Theorem::T7 => FieldShape::TwoPTwoQrs,
        }
    }
}

impl std::str::FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| Error::UnknownCase(s.to_string()))
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// How the `(2/p) != (2/q)` clause of the 1.5 C5 and C7 either/or
/// statements is attached.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reading {
    /// The clause belongs to the second branch only, as written.
    #[default]
    Literal,
    /// The clause is shared by both branches.
    Hoisted,
}

impl std::str::FromStr for Reading {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(Reading::Literal),
            "hoisted" => Ok(Reading::Hoisted),
            _ => Err(Error::UnknownCase(format!("reading {s}"))),
        }
    }
}

const T1_BASE: &[&str] = &[
    "p = q = r = 3 mod 4",
    "qrs = 1 mod 4",
    "not((q/s) = (r/s) = 1)",
    "(p/s) != (2/s) = -1",
];
const T2_BASE: &[&str] = &["p = q = 3 mod 4", "r = s = 1 mod 4"];
const T2_I: &[&str] = &["(2/r) = (2/s) = -1"];
const T2_II: &[&str] = &["(2/r) = -(2/s) = 1"];
const T3_BASE: &[&str] = &["p = q = 3 mod 4", "r = s = 3 mod 4"];
const T4_BASE: &[&str] = &[
    "p = q = r = 3 mod 4",
    "qrs = 1 mod 4",
    "not((q/s) = (r/s) = 1)",
];
const T4_I: &[&str] = &["(q/s) = (r/s) = -1"];
const T5_II: &[&str] = &["(q/s) != (r/s) = 1"];
const A4: &str = "(r/p) = (p/q) = (q/r) = -1";
const A5: &str = "(r/p) = (p/q) = (r/q) = -1";
const A6: &str = "(p/r) = (q/p) = (r/q) = -1";
const A7: &str = "(p/r) = (q/p) = (q/r) = -1";
const HOISTED: &str = "(2/p) != (2/q)";

struct CaseDef {
    theorem: Theorem,
    label: &'static str,
    parts: &'static [&'static [&'static str]],
}

macro_rules! case {
    ($t:ident, $label:expr, [$($part:expr),* $(,)?]) => {
        CaseDef { theorem: Theorem::$t, label: $label, parts: &[$($part),*] }
    };
}

static CASES: &[CaseDef] = &[
    case!(T1, "main", [T1_BASE, &["(qr/p) = (pr/q) = -1"]]),
    case!(T1, "redundant", [T1_BASE, &["(q/s) = (r/s) = -1", "(qr/p) = -1"]]),
    case!(T2, "C1", [T2_BASE, T2_I, &["(q/r) = (q/s) = (rs/p) = -1"]]),
    case!(T2, "C2", [T2_BASE, T2_I, &["(rs/q) = (r/p) = (s/p) = -1"]]),
    case!(T2, "C3", [T2_BASE, T2_II, &["(r/s) = (q/s) = (r/p) = -1 = -(r/q)"]]),
    case!(T2, "C4", [T2_BASE, T2_II, &["(r/q) = (r/s) = (r/p) = -1 = -(s/p)"]]),
    case!(T2, "C5", [T2_BASE, T2_II, &["(r/q) = (r/p) = (pq/s) = -1 = -(r/s)"]]),
    case!(T3, "i", [T3_BASE, &["(2/r) != (2/s)", "(q/r) = (q/s) = (p/q) = 1 = -(p/r) = -(p/s)"]]),
    case!(T3, "ii", [T3_BASE, &["(2/r) = (2/s) != (2/q)", "(q/r) = (r/s) = (s/q)", "(pr/s) = (ps/r) = -1"]]),
    case!(T4, "C1", [T4_BASE, T4_I, &["(2p/s) = (qr/p) = -(2p/q) = -1", "q != r mod 8"]]),
    case!(T4, "C2", [T4_BASE, T4_I, &["(s/p) = -(qr/p) = 1", "p = q = r mod 8", "s = 5 mod 8"]]),
    case!(T4, "C3", [T4_BASE, T4_I, &["(s/p) = (qr/p) = -1", "p != q = r mod 8", "s = 1 mod 8"]]),
    case!(T5, "C4.1", [T4_BASE, T5_II, &[A4, "(2/p) = (2/r) = (2/s) = -1", "(s/p) = 1"]]),
    case!(T5, "C4.2", [T4_BASE, T5_II, &[A4, "(2/p) = (2/q) = -(2/r) = (2/s) = 1", "(s/p) = -1"]]),
    case!(T5, "C5.1", [T4_BASE, T5_II, &[A5, "(2/p) = -(2/r) = -(2/s) = 1", "(s/p) = 1"]]),
    case!(T5, "C5.2", [T4_BASE, T5_II, &[A5, "(2/p) != (2/q)", "(2/r) = -1", "(2/s) = 1", "(s/p) = -1"]]),
    case!(T5, "C6.1", [T4_BASE, T5_II, &[A6, "(2/p) = (2/r) = -(2/s) = 1", "(s/p) = 1"]]),
    case!(T5, "C6.2", [T4_BASE, T5_II, &[A6, "(2/p) = (2/q) = -(2/r) = -(2/s) = -1", "(s/p) = -1"]]),
    case!(T5, "C7.1", [T4_BASE, T5_II, &[A7, "(2/p) = -(2/r) = (2/s) = -1", "(s/p) = 1"]]),
    case!(T5, "C7.2", [T4_BASE, T5_II, &[A7, "(2/p) != (2/q)", "(2/r) = (2/s) = 1", "(s/p) = -1"]]),
    case!(T6, "main", [&["p = q = 3 mod 4", "r = s = 1 mod 4", "(2/s) = (q/r) = (s/r) = (p/r) = -1 = -(q/s) = -(p/s)"]]),
    case!(T7, "main", [T3_BASE, &["(2/r) = (2/s) != (2/q)", "(q/r) = (r/s) = (s/q)", "(pr/s) = (ps/r) = -1"]]),
];

/// One sub-case of one theorem.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TheoremCase {
    pub theorem: Theorem,
    #[serde(rename = "case")]
    pub label: String,
    pub field: FieldShape,
    #[serde(default)]
    pub reading: Reading,
}

impl TheoremCase {
    /// Looks up `theorem`/`label`.
    pub fn find(theorem: Theorem, label: &str) -> Result<Self> {
        CASES
            .iter()
            .find(|c| c.theorem == theorem && c.label == label)
            .map(|c| TheoremCase {
                theorem,
                label: c.label.to_string(),
                field: theorem.shape(),
                reading: Reading::Literal,
            })
            .ok_or_else(|| Error::UnknownCase(format!("{theorem} {label}")))
    }

    /// Every case of `theorem`.
    pub fn of_theorem(theorem: Theorem) -> Vec<Self> {
        CASES
            .iter()
            .filter(|c| c.theorem == theorem)
            .map(|c| TheoremCase::find(theorem, c.label).expect("listed"))
            .collect()
    }

    /// Every case of every theorem, in order.
    pub fn all() -> Vec<Self> {
        Theorem::ALL.into_iter().flat_map(Self::of_theorem).collect()
    }

    /// Cases of `theorem` whose label starts with `prefix` (`C4` selects
    /// both branches `C4.1` and `C4.2`).
    pub fn select(theorem: Theorem, prefix: Option<&str>) -> Result<Vec<Self>> {
        let all = Self::of_theorem(theorem);
        let Some(prefix) = prefix else {
            return Ok(all);
        };
        let hits: Vec<_> = all
            .into_iter()
            .filter(|c| c.label == prefix || c.label.starts_with(&format!("{prefix}.")))
            .collect();
        if hits.is_empty() {
            return Err(Error::UnknownCase(format!("{theorem} {prefix}")));
        }
        Ok(hits)
    }

    pub fn with_reading(mut self, reading: Reading) -> Self {
        self.reading = reading;
        self
    }

    /// Whether the reading changes this case's hypotheses.
    pub fn reading_sensitive(&self) -> bool {
        self.theorem == Theorem::T5 && (self.label == "C5.1" || self.label == "C7.1")
    }

    pub fn conditions(&self) -> Result<Vec<&'static str>> {
        let def = CASES
            .iter()
            .find(|c| c.theorem == self.theorem && c.label == self.label)
            .ok_or_else(|| Error::UnknownCase(self.to_string()))?;
        let mut out: Vec<&'static str> = def.parts.iter().flat_map(|p| p.iter().copied()).collect();
        if self.reading == Reading::Hoisted && self.reading_sensitive() {
            out.push(HOISTED);
        }
        Ok(out)
    }

    pub fn hypotheses(&self) -> Result<Hypotheses> {
        Hypotheses::parse(&self.conditions()?)
    }
}

impl fmt::Display for TheoremCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.theorem, self.label)?;
        if self.reading == Reading::Hoisted && self.reading_sensitive() {
            f.write_str(" (hoisted)")?;
        }
        Ok(())
    }
}

pub fn theorem_hypotheses(case: &TheoremCase, t: &PrimeQuadruple) -> Result<bool> {
    Ok(case.hypotheses()?.holds(t))
}

fn odd_primes(bound: u64) -> Vec<u64> {
    arith::primes_up_to(bound).into_iter().filter(|&p| p != 2).collect()
}

/// Number of ordered quadruples of distinct odd primes up to `bound`.
fn quadruple_count(bound: u64) -> u64 {
    let n = odd_primes(bound).len() as u64;
    if n < 4 {
        0
    } else {
        n * (n - 1) * (n - 2) * (n - 3)
    }
}

fn enumerate_with(h: &Hypotheses, bound: u64) -> Vec<PrimeQuadruple> {
    let primes = odd_primes(bound);
    primes
        .par_iter()
        .map(|&p| {
            let mut found = Vec::new();
            for &q in &primes {
                if q == p {
                    continue;
                }
                for &r in &primes {
                    if r == p || r == q {
                        continue;
                    }
                    for &s in &primes {
                        if s == p || s == q || s == r {
                            continue;
                        }
                        let t = PrimeQuadruple::from_primes_unchecked([p, q, r, s]);
                        if h.holds(&t) {
                            found.push(t);
                        }
                    }
                }
            }
            found
        })
        .collect::<Vec<_>>()
        .concat()
}

/// Quadruples of distinct odd primes, each at most `bound`, satisfying the
/// case's hypotheses, in lexicographic order of `(p, q, r, s)`.
pub fn enumerate_witnesses(case: &TheoremCase, bound: u64) -> Result<Vec<PrimeQuadruple>> {
    Ok(enumerate_with(&case.hypotheses()?, bound))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub tuple: PrimeQuadruple,
    pub report: PolyaReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub case: TheoremCase,
    pub bound: u64,
    pub tuples_checked: u64,
    pub witnesses: Vec<PrimeQuadruple>,
    pub counterexamples: Vec<Counterexample>,
    pub verified: bool,
    pub elapsed_ms: u64,
}

/// Whether a report is what the theorem promises: trivial Pólya group and
/// exactly five ramified primes.
pub fn meets_claim(report: &PolyaReport) -> bool {
    report.polya_order == 1 && report.ramified.len() == 5
}

pub fn verify_theorem(case: &TheoremCase, bound: u64) -> Result<WitnessReport> {
    verify_theorem_with(case, bound, &QuadCache::new())
}

pub fn verify_theorem_with(case: &TheoremCase, bound: u64, cache: &QuadCache) -> Result<WitnessReport> {
    let start = Instant::now();
    let witnesses = enumerate_witnesses(case, bound)?;
    let reports = witnesses
        .par_iter()
        .map(|t| polya_order_biquad_with(&case.field.field(t)?, cache))
        .collect::<Result<Vec<_>>>()?;
    let counterexamples: Vec<Counterexample> = witnesses
        .iter()
        .zip(reports)
        .filter(|(_, r)| !meets_claim(r))
        .map(|(t, r)| Counterexample {
            tuple: *t,
            report: r,
        })
        .collect();
    Ok(WitnessReport {
        case: case.clone(),
        bound,
        tuples_checked: quadruple_count(bound),
        verified: counterexamples.is_empty(),
        witnesses,
        counterexamples,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

// ---------------------------------------------------------------------------
// the [a2] decision tree for Q(√qrs)

fn check_lemma51_triple(q: u64, r: u64, s: u64) -> Result<()> {
    for x in [q, r, s] {
        if x == 2 || !arith::is_prime(x as u128) {
            return Err(Error::NotOddPrime(x as u128));
        }
    }
    if q == r || q == s || r == s {
        return Err(Error::Inadmissible(format!("({q},{r},{s}) are not distinct")));
    }
    if q % 4 != 3 || r % 4 != 3 || s % 4 != 1 {
        return Err(Error::Inadmissible(format!(
            "({q},{r},{s}) needs q = r = 3 and s = 1 mod 4"
        )));
    }
    Ok(())
}

/// Legendre symbols `((q/r), (q/s), (r/s))` that key the tree.
pub fn lemma51_profile(q: u64, r: u64, s: u64) -> Result<[i8; 3]> {
    check_lemma51_triple(q, r, s)?;
    let l = |a: u64, b: u64| arith::jacobi(a as i128, b as u128);
    Ok([l(q, r), l(q, s), l(r, s)])
}

/// Candidate classes of `N(u + 1)` for the fundamental unit `u` of
/// ℚ(√qrs).
pub fn lemma51_leaf(q: u64, r: u64, s: u64) -> Result<Vec<SquareClass>> {
    let profile = lemma51_profile(q, r, s)?;
    let pick: &[&[u64]] = match profile {
        [1, 1, 1] => &[&[q], &[s], &[q, s]],
        [1, 1, -1] => &[&[q]],
        [1, -1, 1] => &[&[q, s]],
        [1, -1, -1] => &[&[q, r]],
        [-1, 1, 1] => &[&[r], &[s], &[r, s]],
        [-1, 1, -1] => &[&[r, s]],
        [-1, -1, 1] => &[&[r]],
        [-1, -1, -1] => &[&[q, r]],
        _ => unreachable!("symbols of distinct odd primes are ±1"),
    };
    Ok(pick
        .iter()
        .map(|ps| SquareClass::from_primes(ps.iter().copied()))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma51Record {
    pub q: u64,
    pub r: u64,
    pub s: u64,
    pub qrs_mod8: u8,
    /// 2 when the fundamental unit has half-integer coordinates
    pub denom: u8,
    pub profile: [i8; 3],
    pub leaf: Vec<u64>,
    pub class: u64,
    pub in_leaf: bool,
    /// For half-integer units, whether `N(u³ + 1)` has the same class as
    /// `N(u + 1)`; `u³` lies in ℤ[√qrs].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cube_agrees: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma51Counts {
    pub triples: usize,
    pub single_outcome: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma51Report {
    pub bound: u64,
    pub triples: usize,
    pub failures: usize,
    /// split by `qrs mod 8`, keys `"1"` and `"5"`
    pub by_qrs_mod8: BTreeMap<String, Lemma51Counts>,
    pub half_integer_units: usize,
    pub cube_mismatches: usize,
    /// how often each class occurs in each leaf, keyed like `"+-+"`
    pub outcomes: BTreeMap<String, BTreeMap<String, usize>>,
    pub failed: Vec<Lemma51Record>,
    pub verified: bool,
    pub elapsed_ms: u64,
}

fn leaf_key(profile: [i8; 3]) -> String {
    profile.iter().map(|&x| if x > 0 { '+' } else { '-' }).collect()
}

/// Names the class in terms of `q, r, s` (`"qs"`, `"1"`, ...).
fn class_name(class: &SquareClass, q: u64, r: u64, s: u64) -> String {
    let mut name = String::new();
    let mut rest = class.clone();
    for (letter, p) in [('q', q), ('r', r), ('s', s)] {
        if rest.contains_prime(p) {
            name.push(letter);
            rest = rest.mul(&SquareClass::from_primes([p]));
        }
    }
    if !rest.is_trivial() {
        name.push_str(&format!("*{}", rest.representative()));
    }
    if name.is_empty() {
        name.push('1');
    }
    name
}

/// Records one admissible triple against the tree.
pub fn lemma51_record(q: u64, r: u64, s: u64, cache: &QuadCache) -> Result<Lemma51Record> {
    let leaf = lemma51_leaf(q, r, s)?;
    let profile = lemma51_profile(q, r, s)?;
    let d = q * r * s;
    let data = cache.get(d)?;
    let class = data.unit_class.clone();
    let cube_agrees = if data.unit.denom == 2 {
        let u = data.unit.as_element();
        let cube = u
            .mul(&u)
            .and_then(|u2| u2.mul(&u))
            .ok_or_else(|| Error::Integrity(format!("cube of the unit of Q(sqrt {d})")))?;
        Some(successor_class(&cube)? == class)
    } else {
        None
    };
    Ok(Lemma51Record {
        q,
        r,
        s,
        qrs_mod8: (d % 8) as u8,
        denom: data.unit.denom,
        profile,
        leaf: leaf.iter().map(|c| c.representative() as u64).collect(),
        class: class.representative() as u64,
        in_leaf: leaf.contains(&class),
        cube_agrees,
    })
}

/// Runs the tree against the computed class for every admissible triple
/// with all primes at most `bound`. Both residues of `qrs` mod 8 are
/// included and reported separately.
pub fn lemma51_verify(bound: u64) -> Result<Lemma51Report> {
    lemma51_verify_with(bound, &QuadCache::new())
}

pub fn lemma51_verify_with(bound: u64, cache: &QuadCache) -> Result<Lemma51Report> {
    let start = Instant::now();
    let records = lemma51_records(bound, cache)?;
    let mut report = Lemma51Report::from_records(bound, &records)?;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// One record per admissible triple, ordered by `(q, r, s)`.
pub fn lemma51_records(bound: u64, cache: &QuadCache) -> Result<Vec<Lemma51Record>> {
    let primes = odd_primes(bound);
    let threes: Vec<u64> = primes.iter().copied().filter(|p| p % 4 == 3).collect();
    let ones: Vec<u64> = primes.iter().copied().filter(|p| p % 4 == 1).collect();
    let mut triples = Vec::new();
    for &q in &threes {
        for &r in &threes {
            if r == q {
                continue;
            }
            for &s in &ones {
                triples.push((q, r, s));
            }
        }
    }
    triples
        .par_iter()
        .map(|&(q, r, s)| lemma51_record(q, r, s, cache))
        .collect()
}

impl Lemma51Report {
    /// Aggregates records; `elapsed_ms` is left at 0.
    pub fn from_records(bound: u64, records: &[Lemma51Record]) -> Result<Self> {
        let mut by_qrs_mod8: BTreeMap<String, Lemma51Counts> = BTreeMap::new();
        by_qrs_mod8.insert("1".into(), Lemma51Counts::default());
        by_qrs_mod8.insert("5".into(), Lemma51Counts::default());
        let mut outcomes: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
        for rec in records {
            let counts = by_qrs_mod8.entry(rec.qrs_mod8.to_string()).or_default();
            counts.triples += 1;
            counts.single_outcome += usize::from(rec.leaf.len() == 1);
            counts.failures += usize::from(!rec.in_leaf);
            let class = SquareClass::of(rec.class as u128)?;
            *outcomes
                .entry(leaf_key(rec.profile))
                .or_default()
                .entry(class_name(&class, rec.q, rec.r, rec.s))
                .or_default() += 1;
        }
        let failed: Vec<Lemma51Record> = records.iter().filter(|r| !r.in_leaf).cloned().collect();
        let cube_mismatches = records.iter().filter(|r| r.cube_agrees == Some(false)).count();
        Ok(Lemma51Report {
            bound,
            triples: records.len(),
            failures: failed.len(),
            by_qrs_mod8,
            half_integer_units: records.iter().filter(|r| r.denom == 2).count(),
            cube_mismatches,
            outcomes,
            verified: failed.is_empty() && cube_mismatches == 0,
            failed,
            elapsed_ms: 0,
        })
    }
}

/// Fundamental unit denominators are only 2 when `qrs ≡ 5 mod 8`; checks a
/// single radicand.
pub fn half_integer_unit(d: u64) -> Result<bool> {
    Ok(fundamental_unit(d)?.denom == 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(p: u64, q: u64, r: u64, s: u64) -> PrimeQuadruple {
        PrimeQuadruple::new(p, q, r, s).unwrap()
    }

    fn case(t: Theorem, label: &str) -> TheoremCase {
        TheoremCase::find(t, label).unwrap()
    }

    fn holds(conds: &[&str], t: PrimeQuadruple) -> bool {
        Hypotheses::parse(conds).unwrap().holds(&t)
    }

    #[test]
    fn parser_semantics() {
        let t = quad(11, 3, 7, 5);
        assert!(holds(&["p = q = r = 3 mod 4"], t));
        assert!(holds(&["qrs = 1 mod 4"], t));
        assert!(holds(&["qrs = 1 mod 8"], t));
        assert!(!holds(&["qrs = 5 mod 8"], t));
        // 3 * 7 * 13 = 273 = 1 mod 8, 3 * 11 * 13 = 429 = 5 mod 8
        assert!(holds(&["qrs = -7 mod 8"], quad(11, 3, 7, 13)));
        assert!(holds(&["qrs = 5 mod 8"], quad(7, 3, 11, 13)));
        // (2/5) = -1, (11/5) = 1
        assert!(holds(&["(p/s) != (2/s) = -1"], t));
        assert!(holds(&["(2/s) = -1 = -(p/s)"], t));
        assert!(!holds(&["(p/s) = (2/s)"], t));
        // (3/5) = (7/5) = -1
        assert!(holds(&["not((q/s) = (r/s) = 1)"], t));
        assert!(holds(&["(q/s) = (r/s) = -1"], t));
        // (21/11) = -1 and (77/3) = (2/3) = -1
        assert!(holds(&["(qr/p) = (pr/q) = -1"], t));
        assert!(holds(&["(2p/s) = -1"], t));
        assert!(holds(&["q != r mod 8"], t));
        assert!(holds(&["p = q = r mod 8"], quad(3, 11, 19, 5)));
    }

    #[test]
    fn parser_rejects_garbage() {
        for bad in [
            "p = 3",
            "(p/s)",
            "(p/2) = 1",
            "(p/s) = 2",
            "(x/s) = 1",
            "(p/s) = 1 mod 8",
            "p = 3 mod 0",
            "pq = 1",
        ] {
            assert!(Hypotheses::parse(&[bad]).is_err(), "{bad}");
        }
    }

    #[test]
    fn every_case_compiles() {
        let all = TheoremCase::all();
        assert_eq!(all.len(), 22);
        for c in &all {
            c.hypotheses().unwrap();
            c.clone().with_reading(Reading::Hoisted).hypotheses().unwrap();
        }
        for t in Theorem::ALL {
            assert!(!TheoremCase::of_theorem(t).is_empty());
        }
    }

    #[test]
    fn case_selection() {
        let c4 = TheoremCase::select(Theorem::T5, Some("C4")).unwrap();
        let labels: Vec<_> = c4.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, ["C4.1", "C4.2"]);
        assert_eq!(TheoremCase::select(Theorem::T2, Some("C1")).unwrap().len(), 1);
        assert!(TheoremCase::select(Theorem::T2, Some("C9")).is_err());
        assert!("1.8".parse::<Theorem>().is_err());
        assert_eq!(case(Theorem::T4, "C1").field, FieldShape::TwoPQrs);
        assert_eq!(case(Theorem::T7, "main").field, FieldShape::TwoPTwoQrs);
    }

    #[test]
    fn worked_witness() {
        let c = case(Theorem::T1, "main");
        assert!(theorem_hypotheses(&c, &quad(11, 3, 7, 5)).unwrap());
        assert!(theorem_hypotheses(&case(Theorem::T1, "redundant"), &quad(11, 3, 7, 5)).unwrap());
        // (3/5) = -1 but p = 3 and qr = 77: (77/3) = (2/3) = -1 while (p/s) = (3/5) = -1
        assert!(!theorem_hypotheses(&c, &quad(3, 7, 11, 5)).unwrap());
        assert!(!theorem_hypotheses(&c, &quad(11, 3, 7, 13)).unwrap());
    }

    #[test]
    fn enumeration_examples() {
        let c = case(Theorem::T1, "main");
        assert!(enumerate_witnesses(&c, 11).unwrap().contains(&quad(11, 3, 7, 5)));
        assert!(enumerate_witnesses(&c, 7).unwrap().is_empty());
        for c in TheoremCase::all() {
            assert!(enumerate_witnesses(&c, 5).unwrap().is_empty());
        }
        let w = enumerate_witnesses(&c, 60).unwrap();
        let mut sorted = w.clone();
        sorted.sort();
        assert_eq!(w, sorted);
        let h = c.hypotheses().unwrap();
        assert!(w.iter().all(|t| h.holds(t)));
    }

    #[test]
    fn verify_small() {
        let r = verify_theorem(&case(Theorem::T1, "main"), 11).unwrap();
        // the roles of q and r are symmetric in 1.1
        assert_eq!(r.witnesses, vec![quad(11, 3, 7, 5), quad(11, 7, 3, 5)]);
        assert!(r.verified);
        assert_eq!(r.tuples_checked, 4 * 3 * 2);
    }

    #[test]
    fn lemma51_examples() {
        let leaf = lemma51_leaf(3, 7, 5).unwrap();
        assert_eq!(leaf, vec![SquareClass::of(21).unwrap()]);
        assert_eq!(lemma51_profile(3, 11, 5).unwrap(), [1, -1, 1]);
        assert_eq!(lemma51_leaf(3, 11, 5).unwrap(), vec![SquareClass::of(15).unwrap()]);
        assert!(lemma51_leaf(5, 7, 3).is_err());
        assert!(lemma51_leaf(3, 3, 5).is_err());
        let rec = lemma51_record(3, 7, 5, &QuadCache::new()).unwrap();
        assert_eq!((rec.class, rec.in_leaf), (21, true));
        let r = lemma51_verify(5).unwrap();
        assert_eq!(r.triples, 0);
        assert!(r.verified);
    }

    #[test]
    fn lemma51_leaves_are_proper_divisors() {
        let threes = [3u64, 7, 11, 19, 23, 31, 43];
        let ones = [5u64, 13, 17, 29, 37, 41];
        let mut seen = std::collections::HashSet::new();
        for &q in &threes {
            for &r in &threes {
                if q == r {
                    continue;
                }
                for &s in &ones {
                    let leaf = lemma51_leaf(q, r, s).unwrap();
                    seen.insert(lemma51_profile(q, r, s).unwrap());
                    for c in leaf {
                        let v = c.representative() as u64;
                        assert!(v != 1 && v != q * r * s && (q * r * s) % v == 0);
                    }
                }
            }
        }
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn lemma51_bound_50() {
        let r = lemma51_verify(50).unwrap();
        assert_eq!(r.failures, 0, "{:?}", r.failed);
        assert_eq!(r.cube_mismatches, 0);
        assert!(r.triples > 0 && r.half_integer_units > 0);
    }

    #[test]
    fn quadruple_roundtrip() {
        let t = quad(11, 3, 7, 5);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, "[11,3,7,5]");
        assert_eq!(serde_json::from_str::<PrimeQuadruple>(&s).unwrap(), t);
        assert!(serde_json::from_str::<PrimeQuadruple>("[11,3,7,7]").is_err());
        assert_eq!(t.mod4(), [3, 3, 3, 1]);
        let c = case(Theorem::T5, "C5.1").with_reading(Reading::Hoisted);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<TheoremCase>(&s).unwrap(), c);
    }
}
