//! Graded sets over a fixed attribute universe.
//!
//! A set assigns every attribute a degree of the chain; degrees are
//! stored densely in universe order. The text form is `{p, 0.5/q}`:
//! omitted attributes have degree 0, a bare name means degree 1.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::algebra::{Chain, TruthDegree};
use crate::capacity::set_space_size;
use crate::{Caps, Error};

/// Ordered, duplicate-free attribute names shared by sets, implications
/// and contexts. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Universe(Arc<Vec<String>>);

impl Universe {
    pub fn new<I, S>(names: I) -> Result<Universe, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidUniverse("no attributes".to_string()));
        }
        for name in &names {
            if !is_valid_name(name) {
                return Err(Error::InvalidUniverse(alloc::format!(
                    "bad attribute name '{name}'"
                )));
            }
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::InvalidUniverse(alloc::format!(
                    "duplicate attribute '{name}'"
                )));
            }
        }
        Ok(Universe(Arc::new(names)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, position: usize) -> &str {
        &self.0[position]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Universe {}

fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A graded set of attributes: one degree index per universe position.
#[derive(Clone, Debug)]
pub struct FuzzySet {
    universe: Universe,
    chain: Chain,
    degrees: Vec<u8>,
}

impl FuzzySet {
    pub fn empty(universe: &Universe, chain: &Chain) -> FuzzySet {
        FuzzySet {
            universe: universe.clone(),
            chain: chain.clone(),
            degrees: alloc::vec![0; universe.len()],
        }
    }

    pub fn full(universe: &Universe, chain: &Chain) -> FuzzySet {
        FuzzySet {
            universe: universe.clone(),
            chain: chain.clone(),
            degrees: alloc::vec![chain.top(); universe.len()],
        }
    }

    /// Builds a set from one degree index per universe position.
    pub fn from_degrees(
        universe: &Universe,
        chain: &Chain,
        degrees: Vec<u8>,
    ) -> Result<FuzzySet, Error> {
        if degrees.len() != universe.len() {
            return Err(Error::ShapeMismatch(alloc::format!(
                "{} degrees for {} attributes",
                degrees.len(),
                universe.len()
            )));
        }
        if let Some(&d) = degrees.iter().find(|&&d| d > chain.scale()) {
            return Err(Error::DegreeOutOfRange {
                index: d,
                scale: chain.scale(),
            });
        }
        Ok(FuzzySet {
            universe: universe.clone(),
            chain: chain.clone(),
            degrees,
        })
    }

    /// Builds a set from `(name, degree index)` pairs; unnamed
    /// attributes get 0.
    pub fn from_pairs(
        universe: &Universe,
        chain: &Chain,
        pairs: &[(&str, u8)],
    ) -> Result<FuzzySet, Error> {
        let mut degrees = alloc::vec![0u8; universe.len()];
        for &(name, d) in pairs {
            let pos = universe
                .position(name)
                .ok_or_else(|| Error::UnknownAttribute(name.to_string()))?;
            if d > chain.scale() {
                return Err(Error::DegreeOutOfRange {
                    index: d,
                    scale: chain.scale(),
                });
            }
            degrees[pos] = d;
        }
        Ok(FuzzySet {
            universe: universe.clone(),
            chain: chain.clone(),
            degrees,
        })
    }

    /// Parses the `{p, 0.5/q}` grammar against a universe and chain.
    pub fn parse(universe: &Universe, chain: &Chain, text: &str) -> Result<FuzzySet, Error> {
        let text = text.trim();
        let inner = text
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(alloc::format!("set must be braced: '{text}'")))?;
        let mut degrees = alloc::vec![0u8; universe.len()];
        let mut seen = alloc::vec![false; universe.len()];
        for item in inner.split(',') {
            let item = item.trim();
            if item.is_empty() {
                if inner.trim().is_empty() {
                    break; // "{}" or "{ }"
                }
                return Err(Error::Parse("empty item in set".to_string()));
            }
            let (degree, name) = match item.rsplit_once('/') {
                Some((d, n)) => (chain.parse_degree(d)?, n.trim()),
                None => (chain.top(), item),
            };
            let pos = universe
                .position(name)
                .ok_or_else(|| Error::UnknownAttribute(name.to_string()))?;
            if seen[pos] {
                return Err(Error::Parse(alloc::format!(
                    "attribute '{name}' listed twice"
                )));
            }
            seen[pos] = true;
            degrees[pos] = degree;
        }
        Ok(FuzzySet {
            universe: universe.clone(),
            chain: chain.clone(),
            degrees,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    /// Degree indices in universe order.
    pub fn degrees(&self) -> &[u8] {
        &self.degrees
    }

    pub fn degree_at(&self, position: usize) -> u8 {
        self.degrees[position]
    }

    pub fn degree_of(&self, name: &str) -> Result<TruthDegree, Error> {
        let pos = self
            .universe
            .position(name)
            .ok_or_else(|| Error::UnknownAttribute(name.to_string()))?;
        self.chain.degree(self.degrees[pos])
    }

    pub fn is_empty_set(&self) -> bool {
        self.degrees.iter().all(|&d| d == 0)
    }

    pub(crate) fn compatible(&self, other: &FuzzySet) -> Result<(), Error> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch);
        }
        if self.chain != other.chain {
            return Err(Error::ChainMismatch);
        }
        Ok(())
    }

    pub(crate) fn with_degrees(&self, degrees: Vec<u8>) -> FuzzySet {
        debug_assert_eq!(degrees.len(), self.universe.len());
        FuzzySet {
            universe: self.universe.clone(),
            chain: self.chain.clone(),
            degrees,
        }
    }

    /// Graded subsethood `S(A, B)`: the infimum over attributes of
    /// `A(y) -> B(y)`. Returns 1 exactly when `A(y) <= B(y)` everywhere.
    pub fn subsethood(&self, other: &FuzzySet) -> Result<TruthDegree, Error> {
        self.compatible(other)?;
        let s = raw::subsethood(&self.chain, &self.degrees, &other.degrees);
        self.chain.degree(s)
    }

    /// Pointwise order check, equivalent to `subsethood == 1`.
    pub fn is_subset_of(&self, other: &FuzzySet) -> Result<bool, Error> {
        self.compatible(other)?;
        Ok(raw::is_subset(&self.degrees, &other.degrees))
    }

    pub fn union(&self, other: &FuzzySet) -> Result<FuzzySet, Error> {
        self.compatible(other)?;
        let degrees = self
            .degrees
            .iter()
            .zip(&other.degrees)
            .map(|(&a, &b)| a.max(b))
            .collect();
        Ok(self.with_degrees(degrees))
    }

    pub fn intersect(&self, other: &FuzzySet) -> Result<FuzzySet, Error> {
        self.compatible(other)?;
        let degrees = self
            .degrees
            .iter()
            .zip(&other.degrees)
            .map(|(&a, &b)| a.min(b))
            .collect();
        Ok(self.with_degrees(degrees))
    }

    /// Componentwise `a (x) B(y)`.
    pub fn scalar_tensor(&self, a: &TruthDegree) -> Result<FuzzySet, Error> {
        if *a.chain() != self.chain {
            return Err(Error::ChainMismatch);
        }
        let degrees = self
            .degrees
            .iter()
            .map(|&b| self.chain.tensor(a.index(), b))
            .collect();
        Ok(self.with_degrees(degrees))
    }

    /// Lexicographic comparison of the degree vectors, first attribute
    /// most significant. Only meaningful for sets over one universe.
    pub fn lex_cmp(&self, other: &FuzzySet) -> Ordering {
        debug_assert_eq!(self.universe, other.universe);
        self.degrees.cmp(&other.degrees)
    }
}

impl PartialEq for FuzzySet {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.chain == other.chain && self.degrees == other.degrees
    }
}

impl Eq for FuzzySet {}

impl fmt::Display for FuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (pos, &d) in self.degrees.iter().enumerate() {
            if d == 0 {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            if d == self.chain.top() {
                write!(f, "{}", self.universe.name(pos))?;
            } else {
                write!(f, "{}/{}", self.chain.format_degree(d), self.universe.name(pos))?;
            }
        }
        write!(f, "}}")
    }
}

/// Enumerates all graded sets over the universe in lexicographic order
/// of their degree vectors (first attribute most significant), after
/// checking the space size against `caps.max_sets`.
pub fn enumerate_sets(
    universe: &Universe,
    chain: &Chain,
    caps: &Caps,
) -> Result<SetEnumeration, Error> {
    let space = set_space_size(chain.scale(), universe.len());
    caps.check_sets(space, "set-space enumeration")?;
    Ok(SetEnumeration {
        universe: universe.clone(),
        chain: chain.clone(),
        next: Some(alloc::vec![0; universe.len()]),
    })
}

pub struct SetEnumeration {
    universe: Universe,
    chain: Chain,
    next: Option<Vec<u8>>,
}

impl Iterator for SetEnumeration {
    type Item = FuzzySet;

    fn next(&mut self) -> Option<FuzzySet> {
        let current = self.next.take()?;
        let item = FuzzySet {
            universe: self.universe.clone(),
            chain: self.chain.clone(),
            degrees: current.clone(),
        };
        let mut bumped = current;
        let top = self.chain.top();
        for pos in (0..bumped.len()).rev() {
            if bumped[pos] < top {
                bumped[pos] += 1;
                self.next = Some(bumped);
                return Some(item);
            }
            bumped[pos] = 0;
        }
        // wrapped around: this was the all-top set
        Some(item)
    }
}

/// Slice-level kernels shared by the closure loops; callers guarantee
/// equal lengths and a common chain.
pub(crate) mod raw {
    use crate::algebra::Chain;

    #[inline]
    pub fn subsethood(chain: &Chain, a: &[u8], b: &[u8]) -> u8 {
        let mut acc = chain.top();
        for (&x, &y) in a.iter().zip(b) {
            let r = chain.residuum(x, y);
            if r < acc {
                acc = r;
                if acc == 0 {
                    break;
                }
            }
        }
        acc
    }

    #[inline]
    pub fn is_subset(a: &[u8], b: &[u8]) -> bool {
        a.iter().zip(b).all(|(&x, &y)| x <= y)
    }

    /// `dst |= s (x) src`; reports whether anything grew.
    #[inline]
    pub fn scaled_union_into(chain: &Chain, dst: &mut [u8], s: u8, src: &[u8]) -> bool {
        let mut changed = false;
        for (d, &v) in dst.iter_mut().zip(src) {
            let t = chain.tensor(s, v);
            if t > *d {
                *d = t;
                changed = true;
            }
        }
        changed
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{HedgeKind, TNormKind};
    use alloc::vec;

    fn luk2() -> Chain {
        Chain::new(2, TNormKind::Lukasiewicz, HedgeKind::Identity).unwrap()
    }

    fn pq() -> Universe {
        Universe::new(["p", "q"]).unwrap()
    }

    #[test]
    fn subsethood_examples() {
        let c = luk2();
        let u = pq();
        let a = FuzzySet::from_pairs(&u, &c, &[("q", 1)]).unwrap();
        let b = FuzzySet::from_pairs(&u, &c, &[("p", 2)]).unwrap();
        assert_eq!(a.subsethood(&b).unwrap().index(), 1); // 0.5

        let a = FuzzySet::from_pairs(&u, &c, &[("p", 2), ("q", 1)]).unwrap();
        let b = FuzzySet::from_pairs(&u, &c, &[("p", 1), ("q", 2)]).unwrap();
        assert_eq!(a.subsethood(&b).unwrap().index(), 1);

        assert!(a.subsethood(&a).unwrap().is_top());
    }

    #[test]
    fn subsethood_full_iff_pointwise() {
        let c = luk2();
        let u = pq();
        let caps = Caps::default();
        let sets: Vec<FuzzySet> = enumerate_sets(&u, &c, &caps).unwrap().collect();
        assert_eq!(sets.len(), 9);
        for a in &sets {
            for b in &sets {
                let s = a.subsethood(b).unwrap();
                assert_eq!(s.is_top(), a.is_subset_of(b).unwrap());
            }
        }
    }

    #[test]
    fn subsethood_is_antitone_in_first_argument() {
        let c = Chain::new(4, TNormKind::Goedel, HedgeKind::Identity).unwrap();
        let u = Universe::new(["p", "q", "r"]).unwrap();
        let caps = Caps::default();
        let sets: Vec<FuzzySet> = enumerate_sets(&u, &c, &caps).unwrap().collect();
        for b1 in sets.iter().step_by(7) {
            for b2 in sets.iter().step_by(5) {
                if !b2.is_subset_of(b1).unwrap() {
                    continue;
                }
                for m in sets.iter().step_by(11) {
                    assert!(
                        b1.subsethood(m).unwrap().index() <= b2.subsethood(m).unwrap().index()
                    );
                }
            }
        }
    }

    #[test]
    fn union_intersect_are_lattice_ops() {
        let c = Chain::new(4, TNormKind::Lukasiewicz, HedgeKind::Identity).unwrap();
        let u = Universe::new(["p", "q", "r"]).unwrap();
        let caps = Caps::default();
        let sets: Vec<FuzzySet> = enumerate_sets(&u, &c, &caps).unwrap().collect();
        for a in sets.iter().step_by(13) {
            assert_eq!(&a.intersect(a).unwrap(), a);
            for b in sets.iter().step_by(17) {
                let j = a.union(b).unwrap();
                let m = a.intersect(b).unwrap();
                assert!(a.is_subset_of(&j).unwrap() && b.is_subset_of(&j).unwrap());
                assert!(m.is_subset_of(a).unwrap() && m.is_subset_of(b).unwrap());
                for x in sets.iter().step_by(19) {
                    if a.is_subset_of(x).unwrap() && b.is_subset_of(x).unwrap() {
                        assert!(j.is_subset_of(x).unwrap());
                    }
                    if x.is_subset_of(a).unwrap() && x.is_subset_of(b).unwrap() {
                        assert!(x.is_subset_of(&m).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn componentwise_examples() {
        let c = luk2();
        let u = Universe::new(["p", "q", "r"]).unwrap();
        let a = FuzzySet::parse(&u, &c, "{p}").unwrap();
        let b = FuzzySet::parse(&u, &c, "{0.5/q}").unwrap();
        assert_eq!(a.union(&b).unwrap().to_string(), "{p, 0.5/q}");

        let full = FuzzySet::parse(&u, &c, "{p, q, r}").unwrap();
        let half = c.degree(1).unwrap();
        assert_eq!(
            full.scalar_tensor(&half).unwrap().to_string(),
            "{0.5/p, 0.5/q, 0.5/r}"
        );
    }

    #[test]
    fn parse_and_format() {
        let c = luk2();
        let u = pq();
        let s = FuzzySet::parse(&u, &c, "{p, 0.5/q}").unwrap();
        assert_eq!(s.degrees(), &[2, 1]);
        assert_eq!(FuzzySet::parse(&u, &c, "{}").unwrap().degrees(), &[0, 0]);
        assert_eq!(FuzzySet::parse(&u, &c, "{ }").unwrap().degrees(), &[0, 0]);
        assert_eq!(
            FuzzySet::parse(&u, &c, "{1/p}").unwrap().to_string(),
            "{p}"
        );
        // order normalizes to universe order
        assert_eq!(
            FuzzySet::parse(&u, &c, "{ 0.5/q , p }").unwrap().to_string(),
            "{p, 0.5/q}"
        );
        // fraction degree with a slash of its own
        assert_eq!(
            FuzzySet::parse(&u, &c, "{1/2/q}").unwrap().degrees(),
            &[0, 1]
        );
        assert_eq!(FuzzySet::parse(&u, &c, "{0/q}").unwrap().degrees(), &[0, 0]);

        assert!(matches!(
            FuzzySet::parse(&u, &c, "{x}"),
            Err(Error::UnknownAttribute(_))
        ));
        assert!(matches!(
            FuzzySet::parse(&u, &c, "{0.3/p}"),
            Err(Error::DegreeNotOnChain { .. })
        ));
        assert!(matches!(
            FuzzySet::parse(&u, &c, "{p, 0.5/p}"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            FuzzySet::parse(&u, &c, "p, q"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn roundtrip_over_all_small_sets() {
        let c = Chain::new(3, TNormKind::Goedel, HedgeKind::Identity).unwrap();
        let u = Universe::new(["p", "q", "r"]).unwrap();
        for s in enumerate_sets(&u, &c, &Caps::default()).unwrap() {
            let back = FuzzySet::parse(&u, &c, &s.to_string()).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn mismatch_errors() {
        let c = luk2();
        let c3 = Chain::new(3, TNormKind::Lukasiewicz, HedgeKind::Identity).unwrap();
        let u = pq();
        let v = Universe::new(["p", "q", "r"]).unwrap();
        let a = FuzzySet::empty(&u, &c);
        assert_eq!(
            a.union(&FuzzySet::empty(&v, &c)),
            Err(Error::UniverseMismatch)
        );
        assert_eq!(
            a.subsethood(&FuzzySet::empty(&u, &c3)),
            Err(Error::ChainMismatch)
        );
    }

    #[test]
    fn universe_validation() {
        assert!(matches!(
            Universe::new(Vec::<String>::new()),
            Err(Error::InvalidUniverse(_))
        ));
        assert!(matches!(
            Universe::new(["p", "p"]),
            Err(Error::InvalidUniverse(_))
        ));
        assert!(matches!(
            Universe::new(["0p"]),
            Err(Error::InvalidUniverse(_))
        ));
        assert!(matches!(
            Universe::new(["a/b"]),
            Err(Error::InvalidUniverse(_))
        ));
        assert!(Universe::new(["p_1", "Q2"]).is_ok());
    }

    #[test]
    fn enumeration_order_and_capacity() {
        let c = Chain::new(1, TNormKind::Lukasiewicz, HedgeKind::Identity).unwrap();
        let u = pq();
        let all: Vec<Vec<u8>> = enumerate_sets(&u, &c, &Caps::default())
            .unwrap()
            .map(|s| s.degrees().to_vec())
            .collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);

        let tight = Caps::with_max_sets(3);
        assert!(matches!(
            enumerate_sets(&u, &c, &tight),
            Err(Error::Capacity { needed: 4, .. })
        ));
    }

    #[test]
    fn from_degrees_shape_checks() {
        let c = luk2();
        let u = pq();
        assert!(matches!(
            FuzzySet::from_degrees(&u, &c, vec![0]),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            FuzzySet::from_degrees(&u, &c, vec![0, 9]),
            Err(Error::DegreeOutOfRange { .. })
        ));
    }
}
