//! Finite residuated chains of truth degrees and truth-stressing hedges.
//!
//! A chain with scale `n` holds the degrees `0/n < 1/n < ... < n/n`,
//! stored as indices `0..=n`. Tensor, residuum and hedge are precomputed
//! into lookup tables when the chain is built, so degree operations are
//! plain table reads and two degrees may be combined exactly when their
//! chains have identical tables.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::Error;

/// Largest supported scale (the chain then has 256 degrees).
pub const MAX_SCALE: u8 = 255;

/// The multiplicative part of the chain.
///
/// `OrdinalSum` carries the ascending list of idempotent degree indices,
/// which must start at 0 and end at the scale. Between two consecutive
/// idempotents the tensor behaves like a Lukasiewicz block; degrees from
/// different blocks combine by minimum. `Goedel` coincides with the sum
/// over all degrees, `Lukasiewicz` with the sum over `{0, n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TNormKind {
    Lukasiewicz,
    Goedel,
    OrdinalSum(Vec<u8>),
}

/// The truth stresser applied to antecedent subsethood degrees.
///
/// `Table` carries an explicit value for every degree index and must
/// satisfy the hedge axioms (checked by [`Chain::new`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HedgeKind {
    Identity,
    Globalization,
    Table(Vec<u8>),
}

#[derive(Debug)]
struct ChainData {
    scale: u8,
    tnorm: TNormKind,
    hedge: HedgeKind,
    /// (scale+1)^2 entries, row-major in the first operand.
    tensor_tbl: Vec<u8>,
    residuum_tbl: Vec<u8>,
    hedge_tbl: Vec<u8>,
}

/// A finite residuated chain with a hedge. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Chain(Arc<ChainData>);

/// One degree of one chain; use for boundary APIs, not inner loops.
#[derive(Clone, Debug)]
pub struct TruthDegree {
    chain: Chain,
    index: u8,
}

/// A single violated axiom instance, with the offending degree indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `a (x) b <= c` and `a <= b -> c` disagree.
    Adjointness { a: u8, b: u8, c: u8 },
    Commutativity { a: u8, b: u8 },
    Associativity { a: u8, b: u8, c: u8 },
    /// `a (x) 1 != a`.
    Unit { a: u8 },
    /// `1* != 1`.
    HedgeUnit,
    /// `a* > a`.
    HedgeSubdiagonal { a: u8 },
    /// `(a -> b)* > a* -> b*`.
    HedgeImplication { a: u8, b: u8 },
    /// `a* > a**`.
    HedgeIdempotence { a: u8 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Adjointness { a, b, c } => {
                write!(f, "adjointness fails at ({a}, {b}, {c})")
            }
            Violation::Commutativity { a, b } => write!(f, "commutativity fails at ({a}, {b})"),
            Violation::Associativity { a, b, c } => {
                write!(f, "associativity fails at ({a}, {b}, {c})")
            }
            Violation::Unit { a } => write!(f, "unit law fails at {a}"),
            Violation::HedgeUnit => write!(f, "hedge does not fix 1"),
            Violation::HedgeSubdiagonal { a } => write!(f, "a* <= a fails at index {a}"),
            Violation::HedgeImplication { a, b } => {
                write!(f, "(a -> b)* <= a* -> b* fails at ({a}, {b})")
            }
            Violation::HedgeIdempotence { a } => write!(f, "a* <= a** fails at index {a}"),
        }
    }
}

/// Result of re-checking every axiom instance of a chain.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "all axioms hold");
        }
        writeln!(f, "{} violated axiom instance(s):", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

fn tensor_value(scale: u8, idempotents: &[u8], a: u8, b: u8) -> u8 {
    // Degrees sharing a Lukasiewicz block combine inside it, all other
    // pairs combine by minimum. Pairs where one operand is a block
    // boundary give the same value either way.
    let _ = scale;
    for w in idempotents.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if lo <= a && a <= hi && lo <= b && b <= hi {
            let sum = a as i32 + b as i32 - hi as i32;
            return if sum > lo as i32 { sum as u8 } else { lo };
        }
    }
    a.min(b)
}

fn residuum_value(scale: u8, idempotents: &[u8], a: u8, b: u8) -> u8 {
    if a <= b {
        return scale;
    }
    for w in idempotents.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if lo <= b && a <= hi {
            return hi - a + b;
        }
    }
    b
}

fn idempotent_indices(scale: u8, tnorm: &TNormKind) -> Result<Vec<u8>, Error> {
    match tnorm {
        TNormKind::Lukasiewicz => Ok(alloc::vec![0, scale]),
        TNormKind::Goedel => Ok((0..=scale).collect()),
        TNormKind::OrdinalSum(list) => {
            if list.first() != Some(&0) || list.last() != Some(&scale) {
                return Err(Error::InvalidChainSpec(
                    "idempotents must start at 0 and end at the scale".to_string(),
                ));
            }
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidChainSpec(
                    "idempotents must be strictly ascending".to_string(),
                ));
            }
            Ok(list.clone())
        }
    }
}

fn hedge_table(scale: u8, hedge: &HedgeKind) -> Result<Vec<u8>, Error> {
    match hedge {
        HedgeKind::Identity => Ok((0..=scale).collect()),
        HedgeKind::Globalization => {
            let mut t = alloc::vec![0u8; scale as usize + 1];
            t[scale as usize] = scale;
            Ok(t)
        }
        HedgeKind::Table(t) => {
            if t.len() != scale as usize + 1 {
                return Err(Error::InvalidChainSpec(
                    "hedge table must list one value per degree".to_string(),
                ));
            }
            if let Some(&v) = t.iter().find(|&&v| v > scale) {
                return Err(Error::DegreeOutOfRange { index: v, scale });
            }
            Ok(t.clone())
        }
    }
}

impl Chain {
    /// Builds the chain `0 < 1/scale < ... < 1` and checks that a custom
    /// hedge table satisfies the hedge axioms.
    pub fn new(scale: u8, tnorm: TNormKind, hedge: HedgeKind) -> Result<Chain, Error> {
        let chain = Chain::new_unchecked(scale, tnorm, hedge)?;
        let hedge_violations: Vec<Violation> = chain
            .validate()
            .violations
            .into_iter()
            .filter(|v| {
                matches!(
                    v,
                    Violation::HedgeUnit
                        | Violation::HedgeSubdiagonal { .. }
                        | Violation::HedgeImplication { .. }
                        | Violation::HedgeIdempotence { .. }
                )
            })
            .collect();
        if !hedge_violations.is_empty() {
            return Err(Error::InvalidHedge(hedge_violations));
        }
        Ok(chain)
    }

    /// Builds the chain without checking the hedge axioms, so that
    /// [`Chain::validate`] can be exercised on broken hedges. Structural
    /// errors (scale 0, bad idempotent list, wrong table size) are still
    /// rejected.
    pub fn new_unchecked(scale: u8, tnorm: TNormKind, hedge: HedgeKind) -> Result<Chain, Error> {
        if scale == 0 {
            return Err(Error::InvalidChainSpec(
                "scale must be at least 1".to_string(),
            ));
        }
        let idem = idempotent_indices(scale, &tnorm)?;
        let hedge_tbl = hedge_table(scale, &hedge)?;
        let width = scale as usize + 1;
        let mut tensor_tbl = alloc::vec![0u8; width * width];
        let mut residuum_tbl = alloc::vec![0u8; width * width];
        for a in 0..=scale {
            for b in 0..=scale {
                tensor_tbl[a as usize * width + b as usize] = tensor_value(scale, &idem, a, b);
                residuum_tbl[a as usize * width + b as usize] = residuum_value(scale, &idem, a, b);
            }
        }
        Ok(Chain(Arc::new(ChainData {
            scale,
            tnorm,
            hedge,
            tensor_tbl,
            residuum_tbl,
            hedge_tbl,
        })))
    }

    /// The scale `n`; the chain has `n + 1` degrees.
    pub fn scale(&self) -> u8 {
        self.0.scale
    }

    pub fn degree_count(&self) -> usize {
        self.0.scale as usize + 1
    }

    pub fn tnorm_kind(&self) -> &TNormKind {
        &self.0.tnorm
    }

    pub fn hedge_kind(&self) -> &HedgeKind {
        &self.0.hedge
    }

    /// Index of truth 0.
    pub fn bot(&self) -> u8 {
        0
    }

    /// Index of truth 1.
    pub fn top(&self) -> u8 {
        self.0.scale
    }

    #[inline]
    pub fn tensor(&self, a: u8, b: u8) -> u8 {
        let w = self.0.scale as usize + 1;
        self.0.tensor_tbl[a as usize * w + b as usize]
    }

    #[inline]
    pub fn residuum(&self, a: u8, b: u8) -> u8 {
        let w = self.0.scale as usize + 1;
        self.0.residuum_tbl[a as usize * w + b as usize]
    }

    #[inline]
    pub fn hedge(&self, a: u8) -> u8 {
        self.0.hedge_tbl[a as usize]
    }

    /// Degree indices with `a (x) a = a`.
    pub fn idempotents(&self) -> Vec<u8> {
        (0..=self.0.scale)
            .filter(|&a| self.tensor(a, a) == a)
            .collect()
    }

    pub fn degree(&self, index: u8) -> Result<TruthDegree, Error> {
        if index > self.0.scale {
            return Err(Error::DegreeOutOfRange {
                index,
                scale: self.0.scale,
            });
        }
        Ok(TruthDegree {
            chain: self.clone(),
            index,
        })
    }

    /// Re-checks every axiom instance against the tables: adjointness
    /// for all triples, monoid laws, and the four hedge axioms.
    pub fn validate(&self) -> ValidationReport {
        let n = self.0.scale;
        let mut violations = Vec::new();
        for a in 0..=n {
            if self.tensor(a, n) != a {
                violations.push(Violation::Unit { a });
            }
            for b in 0..=n {
                if self.tensor(a, b) != self.tensor(b, a) {
                    violations.push(Violation::Commutativity { a, b });
                }
                for c in 0..=n {
                    if self.tensor(self.tensor(a, b), c) != self.tensor(a, self.tensor(b, c)) {
                        violations.push(Violation::Associativity { a, b, c });
                    }
                    if (self.tensor(a, b) <= c) != (a <= self.residuum(b, c)) {
                        violations.push(Violation::Adjointness { a, b, c });
                    }
                }
            }
        }
        if self.hedge(n) != n {
            violations.push(Violation::HedgeUnit);
        }
        for a in 0..=n {
            if self.hedge(a) > a {
                violations.push(Violation::HedgeSubdiagonal { a });
            }
            if self.hedge(a) > self.hedge(self.hedge(a)) {
                violations.push(Violation::HedgeIdempotence { a });
            }
            for b in 0..=n {
                let lhs = self.hedge(self.residuum(a, b));
                let rhs = self.residuum(self.hedge(a), self.hedge(b));
                if lhs > rhs {
                    violations.push(Violation::HedgeImplication { a, b });
                }
            }
        }
        ValidationReport { violations }
    }

    /// Parses `0`, `1`, a decimal like `0.5`, or a fraction like `2/3`
    /// into a degree index. The value must lie exactly on the chain.
    pub fn parse_degree(&self, text: &str) -> Result<u8, Error> {
        let text = text.trim();
        let not_on_chain = || Error::DegreeNotOnChain {
            text: text.to_string(),
            scale: self.0.scale,
        };
        let (num, den): (u128, u128) = if let Some((p, q)) = text.split_once('/') {
            let p: u128 = p.trim().parse().map_err(|_| not_on_chain())?;
            let q: u128 = q.trim().parse().map_err(|_| not_on_chain())?;
            if q == 0 {
                return Err(not_on_chain());
            }
            (p, q)
        } else if let Some((int, frac)) = text.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(not_on_chain());
            }
            let int: u128 = if int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| not_on_chain())?
            };
            let digits: u128 = frac.parse().map_err(|_| not_on_chain())?;
            let den = 10u128.pow(frac.len() as u32);
            (int * den + digits, den)
        } else {
            let int: u128 = text.parse().map_err(|_| not_on_chain())?;
            (int, 1)
        };
        // num/den == index/scale, i.e. index = num * scale / den, exactly.
        let scaled = num * self.0.scale as u128;
        if scaled % den != 0 {
            return Err(not_on_chain());
        }
        let index = scaled / den;
        if index > self.0.scale as u128 {
            return Err(not_on_chain());
        }
        Ok(index as u8)
    }

    /// Canonical text for a degree index: `0`, `1`, an exact decimal
    /// when the reduced denominator divides a power of ten, otherwise a
    /// reduced fraction.
    pub fn format_degree(&self, index: u8) -> String {
        format_degree_value(index, self.0.scale)
    }

    fn tables_equal(&self, other: &Chain) -> bool {
        self.0.scale == other.0.scale
            && self.0.tensor_tbl == other.0.tensor_tbl
            && self.0.hedge_tbl == other.0.hedge_tbl
    }
}

/// Canonical text for the degree `index/scale` (see [`Chain::format_degree`]).
pub fn format_degree_value(index: u8, scale: u8) -> String {
    if index == 0 {
        return "0".to_string();
    }
    if index == scale {
        return "1".to_string();
    }
    let g = gcd(index as u64, scale as u64);
    let (p, q) = (index as u64 / g, scale as u64 / g);
    // q | 10^k for some k exactly when q has no prime factors besides 2 and 5.
    let mut rest = q;
    let mut k = 0u32;
    while rest % 2 == 0 {
        rest /= 2;
        k += 1;
    }
    let mut fives = 0u32;
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    if rest != 1 {
        return alloc::format!("{p}/{q}");
    }
    k = k.max(fives);
    let digits = p * 10u64.pow(k) / q;
    let mut s = alloc::format!("{digits:0width$}", width = k as usize);
    while s.ends_with('0') {
        s.pop();
    }
    alloc::format!("0.{s}")
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Chains compare equal when they behave identically: same scale, same
/// tensor table (the residuum follows from it) and same hedge table. A
/// Goedel chain therefore equals the ordinal sum over all degrees.
impl PartialEq for Chain {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.tables_equal(other)
    }
}

impl Eq for Chain {}

impl TruthDegree {
    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    /// The degree as an exact fraction `(index, scale)`.
    pub fn as_fraction(&self) -> (u8, u8) {
        (self.index, self.chain.scale())
    }

    pub fn to_f64(&self) -> f64 {
        self.index as f64 / self.chain.scale() as f64
    }

    pub fn is_top(&self) -> bool {
        self.index == self.chain.top()
    }

    pub fn is_bot(&self) -> bool {
        self.index == 0
    }

    fn with(&self, index: u8) -> TruthDegree {
        TruthDegree {
            chain: self.chain.clone(),
            index,
        }
    }

    fn same_chain(&self, other: &TruthDegree) -> Result<(), Error> {
        if self.chain == other.chain {
            Ok(())
        } else {
            Err(Error::ChainMismatch)
        }
    }

    pub fn tensor(&self, other: &TruthDegree) -> Result<TruthDegree, Error> {
        self.same_chain(other)?;
        Ok(self.with(self.chain.tensor(self.index, other.index)))
    }

    pub fn residuum(&self, other: &TruthDegree) -> Result<TruthDegree, Error> {
        self.same_chain(other)?;
        Ok(self.with(self.chain.residuum(self.index, other.index)))
    }

    pub fn meet(&self, other: &TruthDegree) -> Result<TruthDegree, Error> {
        self.same_chain(other)?;
        Ok(self.with(self.index.min(other.index)))
    }

    pub fn join(&self, other: &TruthDegree) -> Result<TruthDegree, Error> {
        self.same_chain(other)?;
        Ok(self.with(self.index.max(other.index)))
    }

    pub fn hedge(&self) -> TruthDegree {
        self.with(self.chain.hedge(self.index))
    }
}

impl PartialEq for TruthDegree {
    fn eq(&self, other: &Self) -> bool {
        self.chain == other.chain && self.index == other.index
    }
}

impl Eq for TruthDegree {}

impl PartialOrd for TruthDegree {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        if self.chain == other.chain {
            Some(self.index.cmp(&other.index))
        } else {
            None
        }
    }
}

impl fmt::Display for TruthDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.chain.format_degree(self.index))
    }
}
