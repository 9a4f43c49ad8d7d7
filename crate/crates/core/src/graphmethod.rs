//! Graph-based enumeration of all systems of pseudo-intents.
//!
//! The candidate vertices are the non-closed sets of the table. A
//! directed edge runs from P to Q when Q's implication `Q => Q-closure`
//! fails to hold fully in P, and a set of vertices is a system exactly
//! when the vertices outside it are precisely those with an edge into
//! it. Every system is also a maximal independent set of the
//! symmetrized graph, so the search enumerates those and filters by the
//! exact condition. Exhaustive by design: this is a small-scale
//! baseline for cross-validation and timing contrast, not a scalable
//! method.

use alloc::vec::Vec;

use crate::basebuild::PseudoIntentSystem;
use crate::context::FormalContext;
use crate::fuzzyset::{enumerate_sets, FuzzySet, Universe};
use crate::implications::raw;
use crate::{Caps, Error};
use crate::algebra::Chain;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits {
    blocks: Vec<u64>,
}

impl Bits {
    fn empty(len: usize) -> Bits {
        Bits {
            blocks: alloc::vec![0u64; (len + 63) / 64],
        }
    }

    fn full(len: usize) -> Bits {
        let mut bits = Bits::empty(len);
        for i in 0..len {
            bits.set(i);
        }
        bits
    }

    fn set(&mut self, i: usize) {
        self.blocks[i / 64] |= 1u64 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.blocks[i / 64] &= !(1u64 << (i % 64));
    }

    fn get(&self, i: usize) -> bool {
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    fn or_assign(&mut self, other: &Bits) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn and_count(&self, other: &Bits) -> u32 {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(block_at, &block)| {
            let mut rest = block;
            core::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(block_at * 64 + bit)
                }
            })
        })
    }
}

/// The candidate graph of a table: all non-closed sets, with an edge
/// from P to Q whenever Q's closure implication does not hold fully
/// in P.
#[derive(Clone, Debug)]
pub struct PseudoGraph {
    universe: Universe,
    chain: Chain,
    vertices: Vec<FuzzySet>,
    closures: Vec<FuzzySet>,
    /// in_edges[q] holds every p with a directed edge from p to q.
    in_edges: Vec<Bits>,
    /// Symmetrized adjacency, for independence.
    adjacent: Vec<Bits>,
}

/// Enumerates the non-closed sets and evaluates every ordered pair.
pub fn build_graph(ctx: &FormalContext, caps: &Caps) -> Result<PseudoGraph, Error> {
    let universe = ctx.universe();
    let chain = ctx.chain();
    let mut scratch = alloc::vec![0u8; ctx.objects().len()];
    let mut intent = alloc::vec![0u8; universe.len()];
    let mut vertices = Vec::new();
    let mut closures = Vec::new();
    for p in enumerate_sets(universe, chain, caps)? {
        ctx.intent_closure_raw(p.degrees(), &mut scratch, &mut intent);
        if p.degrees() != intent.as_slice() {
            closures.push(FuzzySet::from_degrees(universe, chain, intent.clone())?);
            vertices.push(p);
        }
    }
    let count = vertices.len();
    if count as u128 > caps.max_graph_vertices as u128 {
        return Err(Error::Capacity {
            what: "graph vertices",
            needed: count as u128,
            cap: caps.max_graph_vertices as u128,
        });
    }
    let top = chain.top();
    let mut in_edges = alloc::vec![Bits::empty(count); count];
    let mut adjacent = alloc::vec![Bits::empty(count); count];
    for q in 0..count {
        let premise = vertices[q].degrees();
        let conclusion = closures[q].degrees();
        for p in 0..count {
            if p == q {
                continue;
            }
            if raw::implication_truth(chain, premise, conclusion, vertices[p].degrees()) != top {
                in_edges[q].set(p);
                adjacent[p].set(q);
                adjacent[q].set(p);
            }
        }
    }
    Ok(PseudoGraph {
        universe: universe.clone(),
        chain: chain.clone(),
        vertices,
        closures,
        in_edges,
        adjacent,
    })
}

impl PseudoGraph {
    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    /// Vertices in lexicographic order of their degree vectors.
    pub fn vertices(&self) -> &[FuzzySet] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn closure_of(&self, vertex: usize) -> &FuzzySet {
        &self.closures[vertex]
    }

    pub fn position(&self, set: &FuzzySet) -> Option<usize> {
        self.vertices
            .binary_search_by(|v| v.lex_cmp(set))
            .ok()
    }

    /// Directed edge from `from` to `to`.
    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.in_edges[to].get(from)
    }

    /// All directed edges as (from, to) index pairs, ordered by target
    /// then source.
    pub fn directed_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for to in 0..self.vertex_count() {
            for from in self.in_edges[to].ones() {
                edges.push((from, to));
            }
        }
        edges
    }

    /// Union of the in-neighborhoods of the given vertices, in
    /// lexicographic order.
    pub fn pred(&self, members: &[FuzzySet]) -> Result<Vec<FuzzySet>, Error> {
        let mut mask = Bits::empty(self.vertex_count());
        for m in members {
            let at = self.position(m).ok_or(Error::ForeignVertex)?;
            mask.or_assign(&self.in_edges[at]);
        }
        Ok(mask.ones().map(|i| self.vertices[i].clone()).collect())
    }

    fn is_system(&self, chosen: &Bits) -> bool {
        let mut predecessors = Bits::empty(self.vertex_count());
        for q in chosen.ones() {
            predecessors.or_assign(&self.in_edges[q]);
        }
        let mut outside = Bits::full(self.vertex_count());
        for q in chosen.ones() {
            outside.clear(q);
        }
        predecessors == outside
    }

    /// All vertex sets 𝒫 with "outside of 𝒫 = Pred(𝒫)", found among
    /// the maximal independent sets of the symmetrized graph. Under
    /// globalization exactly one survives; under other hedges any
    /// number, including zero.
    pub fn enumerate_systems(&self, caps: &Caps) -> Result<Vec<PseudoIntentSystem>, Error> {
        let count = self.vertex_count();
        // Maximal independent sets are maximal cliques of the
        // complement relation.
        let mut non_adjacent = Vec::with_capacity(count);
        for v in 0..count {
            let mut row = Bits::full(count);
            for w in self.adjacent[v].ones() {
                row.clear(w);
            }
            row.clear(v);
            non_adjacent.push(row);
        }
        // Isolated vertices sit in every maximal independent set;
        // seeding them shrinks the search without changing the result.
        let mut seed = Bits::empty(count);
        let mut candidates = Bits::empty(count);
        for v in 0..count {
            if self.adjacent[v].is_empty() {
                seed.set(v);
            } else {
                candidates.set(v);
            }
        }
        let mut search = Search {
            non_adjacent: &non_adjacent,
            budget: caps.max_search_nodes,
            found: Vec::new(),
        };
        search.run(seed, candidates, Bits::empty(count))?;
        let mut systems = Vec::new();
        let mut picks: Vec<Vec<usize>> = search
            .found
            .into_iter()
            .filter(|chosen| self.is_system(chosen))
            .map(|chosen| chosen.ones().collect())
            .collect();
        picks.sort();
        picks.dedup();
        for pick in picks {
            let members: Vec<FuzzySet> =
                pick.iter().map(|&i| self.vertices[i].clone()).collect();
            let closures: Vec<FuzzySet> =
                pick.iter().map(|&i| self.closures[i].clone()).collect();
            systems.push(PseudoIntentSystem::assemble(
                &self.universe,
                &self.chain,
                members,
                closures,
            )?);
        }
        Ok(systems)
    }
}

struct Search<'a> {
    non_adjacent: &'a [Bits],
    budget: u64,
    found: Vec<Bits>,
}

impl Search<'_> {
    /// Bron-Kerbosch with pivoting over the complement relation:
    /// `chosen` grows towards a maximal independent set, `candidates`
    /// may still join it, `excluded` have been fully explored.
    fn run(&mut self, chosen: Bits, mut candidates: Bits, mut excluded: Bits) -> Result<(), Error> {
        if self.budget == 0 {
            return Err(Error::Capacity {
                what: "independent-set search nodes",
                needed: 1,
                cap: 0,
            });
        }
        self.budget -= 1;
        if candidates.is_empty() && excluded.is_empty() {
            self.found.push(chosen);
            return Ok(());
        }
        let pivot = candidates
            .ones()
            .chain(excluded.ones())
            .max_by_key(|&u| self.non_adjacent[u].and_count(&candidates))
            .expect("candidates or excluded is non-empty");
        let branches: Vec<usize> = candidates
            .ones()
            .filter(|&v| !self.non_adjacent[pivot].get(v))
            .collect();
        for v in branches {
            let mut grown = chosen.clone();
            grown.set(v);
            self.run(
                grown,
                candidates.and(&self.non_adjacent[v]),
                excluded.and(&self.non_adjacent[v]),
            )?;
            candidates.clear(v);
            excluded.set(v);
        }
        Ok(())
    }
}
