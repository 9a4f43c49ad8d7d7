//! Graded attribute implications, their models and semantic entailment.
//!
//! An implication `A => B` holds in a set M to the degree
//! `S(A,M)* -> S(B,M)`; a theory entails `A => B` to the degree
//! `S(B, [A])` where `[A]` is the least model of the theory containing
//! A. Equivalence of theories is mutual full entailment of all members.

use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{Chain, TruthDegree};
use crate::fuzzyset::{FuzzySet, Universe};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Implication {
    antecedent: FuzzySet,
    consequent: FuzzySet,
}

impl Implication {
    pub fn new(antecedent: FuzzySet, consequent: FuzzySet) -> Result<Implication, Error> {
        antecedent.compatible(&consequent)?;
        Ok(Implication {
            antecedent,
            consequent,
        })
    }

    /// Parses `<set> => <set>`.
    pub fn parse(universe: &Universe, chain: &Chain, text: &str) -> Result<Implication, Error> {
        let (lhs, rhs) = text
            .split_once("=>")
            .ok_or_else(|| Error::Parse(alloc::format!("implication needs '=>': '{text}'")))?;
        Implication::new(
            FuzzySet::parse(universe, chain, lhs)?,
            FuzzySet::parse(universe, chain, rhs)?,
        )
    }

    pub fn antecedent(&self) -> &FuzzySet {
        &self.antecedent
    }

    pub fn consequent(&self) -> &FuzzySet {
        &self.consequent
    }

    pub fn universe(&self) -> &Universe {
        self.antecedent.universe()
    }

    pub fn chain(&self) -> &Chain {
        self.antecedent.chain()
    }

    /// Degree to which the implication holds in M: `S(A,M)* -> S(B,M)`.
    pub fn truth_in(&self, m: &FuzzySet) -> Result<TruthDegree, Error> {
        self.antecedent.compatible(m)?;
        let chain = self.chain();
        let d = raw::implication_truth(
            chain,
            self.antecedent.degrees(),
            self.consequent.degrees(),
            m.degrees(),
        );
        chain.degree(d)
    }
}

impl fmt::Display for Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} => {}", self.antecedent, self.consequent)
    }
}

/// An ordered, duplicate-free list of implications over one universe
/// and chain. Order never changes the semantics, only the scan order of
/// the deterministic algorithms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    universe: Universe,
    chain: Chain,
    implications: Vec<Implication>,
}

impl Theory {
    pub fn new(
        universe: &Universe,
        chain: &Chain,
        implications: Vec<Implication>,
    ) -> Result<Theory, Error> {
        let mut list: Vec<Implication> = Vec::with_capacity(implications.len());
        for imp in implications {
            if imp.universe() != universe {
                return Err(Error::UniverseMismatch);
            }
            if imp.chain() != chain {
                return Err(Error::ChainMismatch);
            }
            if !list.contains(&imp) {
                list.push(imp);
            }
        }
        Ok(Theory {
            universe: universe.clone(),
            chain: chain.clone(),
            implications: list,
        })
    }

    pub fn empty(universe: &Universe, chain: &Chain) -> Theory {
        Theory {
            universe: universe.clone(),
            chain: chain.clone(),
            implications: Vec::new(),
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn implications(&self) -> &[Implication] {
        &self.implications
    }

    pub fn len(&self) -> usize {
        self.implications.len()
    }

    pub fn is_empty(&self) -> bool {
        self.implications.is_empty()
    }

    /// The theory without the implication at `position`.
    pub fn without(&self, position: usize) -> Theory {
        let mut implications = self.implications.clone();
        implications.remove(position);
        Theory {
            universe: self.universe.clone(),
            chain: self.chain.clone(),
            implications,
        }
    }

    fn check_set(&self, m: &FuzzySet) -> Result<(), Error> {
        if *m.universe() != self.universe {
            return Err(Error::UniverseMismatch);
        }
        if *m.chain() != self.chain {
            return Err(Error::ChainMismatch);
        }
        Ok(())
    }

    /// The least model containing M, computed as the round-robin
    /// fixpoint of `N  |->  N u U_{A=>B} (S(A,N)* (x) B)`.
    pub fn close(&self, m: &FuzzySet) -> Result<FuzzySet, Error> {
        self.check_set(m)?;
        let mut degrees = m.degrees().to_vec();
        let rules: Vec<(&[u8], &[u8])> = self
            .implications
            .iter()
            .map(|i| (i.antecedent.degrees(), i.consequent.degrees()))
            .collect();
        raw::close_in_place(&self.chain, &mut degrees, &rules);
        Ok(m.with_degrees(degrees))
    }

    /// True iff every member holds in M to degree 1.
    pub fn is_model(&self, m: &FuzzySet) -> Result<bool, Error> {
        self.check_set(m)?;
        let top = self.chain.top();
        Ok(self.implications.iter().all(|imp| {
            raw::implication_truth(
                &self.chain,
                imp.antecedent.degrees(),
                imp.consequent.degrees(),
                m.degrees(),
            ) == top
        }))
    }

    /// Degree to which the theory entails `imp`: `S(B, [A])`.
    pub fn entail_degree(&self, imp: &Implication) -> Result<TruthDegree, Error> {
        self.check_set(&imp.antecedent)?;
        let closed = self.close(&imp.antecedent)?;
        imp.consequent.subsethood(&closed)
    }

    pub fn entails_fully(&self, imp: &Implication) -> Result<bool, Error> {
        Ok(self.entail_degree(imp)?.is_top())
    }

    /// Mutual full entailment of all members; coincides with equality
    /// of the model classes.
    pub fn equivalent(&self, other: &Theory) -> Result<bool, Error> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch);
        }
        if self.chain != other.chain {
            return Err(Error::ChainMismatch);
        }
        for imp in &self.implications {
            if !other.entails_fully(imp)? {
                return Ok(false);
            }
        }
        for imp in &other.implications {
            if !self.entails_fully(imp)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff the member is fully entailed by the other members.
    pub fn is_redundant(&self, imp: &Implication) -> Result<bool, Error> {
        let position = self
            .implications
            .iter()
            .position(|i| i == imp)
            .ok_or(Error::NotAMember)?;
        self.without(position).entails_fully(imp)
    }

    /// Scans members in list order, deleting each one fully entailed by
    /// the implications still present. The result is non-redundant and
    /// equivalent to the input; which members survive depends on the
    /// list order.
    pub fn remove_redundancy(&self) -> Theory {
        let mut current = self.clone();
        let mut position = 0;
        while position < current.implications.len() {
            let rest = current.without(position);
            if rest
                .entails_fully(&current.implications[position])
                .unwrap_or(false)
            {
                current = rest;
            } else {
                position += 1;
            }
        }
        current
    }

    /// True iff no member is fully entailed by the others.
    pub fn is_nonredundant(&self) -> bool {
        (0..self.implications.len()).all(|position| {
            !self
                .without(position)
                .entails_fully(&self.implications[position])
                .unwrap_or(false)
        })
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for imp in &self.implications {
            writeln!(f, "{imp}")?;
        }
        Ok(())
    }
}

pub(crate) mod raw {
    use crate::algebra::Chain;
    use crate::fuzzyset::raw::{scaled_union_into, subsethood};

    /// `S(A,M)* -> S(B,M)` on raw slices.
    #[inline]
    pub fn implication_truth(chain: &Chain, a: &[u8], b: &[u8], m: &[u8]) -> u8 {
        let sa = chain.hedge(subsethood(chain, a, m));
        let sb = subsethood(chain, b, m);
        chain.residuum(sa, sb)
    }

    /// Round-robin least-model fixpoint over `(antecedent, consequent)`
    /// rules, mutating `m`.
    pub fn close_in_place(chain: &Chain, m: &mut [u8], rules: &[(&[u8], &[u8])]) {
        loop {
            let mut changed = false;
            for &(a, b) in rules {
                let s = chain.hedge(subsethood(chain, a, m));
                if s == 0 {
                    continue;
                }
                changed |= scaled_union_into(chain, m, s, b);
            }
            if !changed {
                return;
            }
        }
    }
}
