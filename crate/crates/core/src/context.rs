//! Object-attribute tables with graded incidence and the two arrow
//! operators between object sets and attribute sets.
//!
//! `down` collects the objects sharing all attributes of a set; `up`
//! collects the attributes shared by a set of objects, with the hedge
//! applied to the object degrees. Their composition `down` then `up`
//! closes attribute sets; its fixpoints are the intents of the table.

use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{Chain, TruthDegree};
use crate::fuzzyset::{enumerate_sets, FuzzySet, Universe};
use crate::implications::{Implication, Theory};
use crate::{Caps, Error};

/// A finite table of graded incidences between objects and attributes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalContext {
    objects: Universe,
    universe: Universe,
    chain: Chain,
    /// One set over the attribute universe per object; row x equals the
    /// attribute set of `{1/x}` and is reused by `truth_in_context`.
    rows: Vec<FuzzySet>,
}

/// The fill ratio of a table as an exact percentage.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Density {
    pub numerator: u64,
    pub denominator: u64,
}

impl Density {
    pub fn percent(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

impl FormalContext {
    /// Builds a context from object names and one degree row per object
    /// (degree indices in universe order).
    pub fn new<S: Into<String>>(
        object_names: Vec<S>,
        universe: &Universe,
        chain: &Chain,
        rows: Vec<Vec<u8>>,
    ) -> Result<FormalContext, Error> {
        let objects = Universe::new(object_names)?;
        if rows.len() != objects.len() {
            return Err(Error::ShapeMismatch(alloc::format!(
                "{} rows for {} objects",
                rows.len(),
                objects.len()
            )));
        }
        let rows = rows
            .into_iter()
            .map(|r| FuzzySet::from_degrees(universe, chain, r))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FormalContext {
            objects,
            universe: universe.clone(),
            chain: chain.clone(),
            rows,
        })
    }

    pub fn objects(&self) -> &Universe {
        &self.objects
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    /// The attribute row of one object, equal to `up` of `{1/x}`.
    pub fn row(&self, object_position: usize) -> &FuzzySet {
        &self.rows[object_position]
    }

    pub fn rows(&self) -> &[FuzzySet] {
        &self.rows
    }

    pub fn value(&self, object_position: usize, attribute_position: usize) -> u8 {
        self.rows[object_position].degree_at(attribute_position)
    }

    /// Attributes shared by the objects of A:
    /// `A^(y) = meet over x of A(x)* -> I(x,y)`.
    pub fn up(&self, a: &FuzzySet) -> Result<FuzzySet, Error> {
        if *a.universe() != self.objects {
            return Err(Error::UniverseMismatch);
        }
        if *a.chain() != self.chain {
            return Err(Error::ChainMismatch);
        }
        let mut out = alloc::vec![self.chain.top(); self.universe.len()];
        self.up_raw(a.degrees(), &mut out);
        FuzzySet::from_degrees(&self.universe, &self.chain, out)
    }

    /// Objects having all attributes of B:
    /// `B_(x) = meet over y of B(y) -> I(x,y)`, no hedge.
    pub fn down(&self, b: &FuzzySet) -> Result<FuzzySet, Error> {
        if *b.universe() != self.universe {
            return Err(Error::UniverseMismatch);
        }
        if *b.chain() != self.chain {
            return Err(Error::ChainMismatch);
        }
        let mut out = alloc::vec![self.chain.top(); self.objects.len()];
        self.down_raw(b.degrees(), &mut out);
        FuzzySet::from_degrees(&self.objects, &self.chain, out)
    }

    /// `down` then `up`: the closure of an attribute set in the table.
    pub fn intent_closure(&self, b: &FuzzySet) -> Result<FuzzySet, Error> {
        if *b.universe() != self.universe {
            return Err(Error::UniverseMismatch);
        }
        if *b.chain() != self.chain {
            return Err(Error::ChainMismatch);
        }
        let mut scratch = alloc::vec![0u8; self.objects.len()];
        let mut out = alloc::vec![0u8; self.universe.len()];
        self.intent_closure_raw(b.degrees(), &mut scratch, &mut out);
        FuzzySet::from_degrees(&self.universe, &self.chain, out)
    }

    pub(crate) fn down_raw(&self, b: &[u8], out: &mut [u8]) {
        for (x, row) in self.rows.iter().enumerate() {
            out[x] = crate::fuzzyset::raw::subsethood(&self.chain, b, row.degrees());
        }
    }

    pub(crate) fn up_raw(&self, a: &[u8], out: &mut [u8]) {
        let top = self.chain.top();
        for v in out.iter_mut() {
            *v = top;
        }
        for (x, row) in self.rows.iter().enumerate() {
            let ax = self.chain.hedge(a[x]);
            if ax == 0 {
                continue;
            }
            for (y, v) in out.iter_mut().enumerate() {
                let r = self.chain.residuum(ax, row.degree_at(y));
                if r < *v {
                    *v = r;
                }
            }
        }
    }

    /// `out = (b down) up`, with `scratch` holding the object degrees.
    pub(crate) fn intent_closure_raw(&self, b: &[u8], scratch: &mut [u8], out: &mut [u8]) {
        self.down_raw(b, scratch);
        self.up_raw(scratch, out);
    }

    /// Degree to which the implication holds in the table: the infimum
    /// of its truth over all object rows.
    pub fn truth_in_context(&self, imp: &Implication) -> Result<TruthDegree, Error> {
        if *imp.universe() != self.universe {
            return Err(Error::UniverseMismatch);
        }
        if *imp.chain() != self.chain {
            return Err(Error::ChainMismatch);
        }
        let mut acc = self.chain.top();
        for row in &self.rows {
            let d = crate::implications::raw::implication_truth(
                &self.chain,
                imp.antecedent().degrees(),
                imp.consequent().degrees(),
                row.degrees(),
            );
            if d < acc {
                acc = d;
                if acc == 0 {
                    break;
                }
            }
        }
        self.chain.degree(acc)
    }

    /// True iff the theory closure and the table closure agree on every
    /// graded attribute set, checked by full enumeration under `caps`.
    pub fn is_complete(&self, sigma: &Theory, caps: &Caps) -> Result<bool, Error> {
        if *sigma.universe() != self.universe {
            return Err(Error::UniverseMismatch);
        }
        if *sigma.chain() != self.chain {
            return Err(Error::ChainMismatch);
        }
        let mut scratch = alloc::vec![0u8; self.objects.len()];
        let mut intent = alloc::vec![0u8; self.universe.len()];
        for m in enumerate_sets(&self.universe, &self.chain, caps)? {
            self.intent_closure_raw(m.degrees(), &mut scratch, &mut intent);
            let closed = sigma.close(&m)?;
            if closed.degrees() != intent.as_slice() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `100 * sum of table values / (|X| * |Y|)` as an exact ratio.
    pub fn density(&self) -> Density {
        let sum: u64 = self
            .rows
            .iter()
            .flat_map(|r| r.degrees().iter())
            .map(|&d| d as u64)
            .sum();
        let numerator = 100 * sum;
        let denominator =
            self.chain.scale() as u64 * self.objects.len() as u64 * self.universe.len() as u64;
        let g = gcd(numerator, denominator);
        Density {
            numerator: numerator / g,
            denominator: denominator / g,
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
