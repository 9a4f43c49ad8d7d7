//! Seeded random instances. Every instance derives its own generator
//! from (master seed, stream, index), so instances are reproducible
//! independently of evaluation order.

use fai_core::algebra::Chain;
use fai_core::basebuild::{is_saturated, saturate};
use fai_core::context::FormalContext;
use fai_core::fuzzyset::{FuzzySet, Universe};
use fai_core::implications::{Implication, Theory};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Generator for one instance of one experiment stream.
pub fn instance_rng(master: u64, stream: u64, index: u64) -> ChaCha8Rng {
    let mixed = splitmix(splitmix(master ^ splitmix(stream)) ^ index);
    ChaCha8Rng::seed_from_u64(mixed)
}

pub fn attribute_universe(count: usize) -> Universe {
    Universe::new((0..count).map(|i| format!("y{}", i + 1))).expect("valid generated names")
}

pub fn object_names(count: usize) -> Vec<String> {
    (0..count).map(|i| format!("x{}", i + 1)).collect()
}

/// Uniform degree on the chain.
fn uniform_degree(rng: &mut ChaCha8Rng, chain: &Chain) -> u8 {
    rng.gen_range(0..=chain.top())
}

pub fn random_set(rng: &mut ChaCha8Rng, universe: &Universe, chain: &Chain) -> FuzzySet {
    let degrees = (0..universe.len())
        .map(|_| uniform_degree(rng, chain))
        .collect();
    FuzzySet::from_degrees(universe, chain, degrees).expect("degrees drawn on the chain")
}

/// One theory cell: absent with probability 1/2, fully present with
/// probability 1/4, otherwise a uniform nonzero degree. The graded
/// analogue of drawing attribute subsets with a fair coin; all-uniform
/// cells would drown fine chains in low-degree interactions.
fn theory_cell(rng: &mut ChaCha8Rng, chain: &Chain) -> u8 {
    if rng.gen_bool(0.5) {
        0
    } else if rng.gen_bool(0.5) {
        chain.top()
    } else {
        rng.gen_range(1..=chain.top())
    }
}

fn theory_set(rng: &mut ChaCha8Rng, universe: &Universe, chain: &Chain) -> FuzzySet {
    let degrees = (0..universe.len())
        .map(|_| theory_cell(rng, chain))
        .collect();
    FuzzySet::from_degrees(universe, chain, degrees).expect("degrees drawn on the chain")
}

/// Implications whose sets draw each cell via [`theory_cell`];
/// consequents extend the antecedent by an independent draw.
pub fn random_theory(
    rng: &mut ChaCha8Rng,
    universe: &Universe,
    chain: &Chain,
    formulas: usize,
) -> Theory {
    let implications = (0..formulas)
        .map(|_| {
            let antecedent = theory_set(rng, universe, chain);
            let consequent = antecedent
                .union(&theory_set(rng, universe, chain))
                .expect("same universe and chain");
            Implication::new(antecedent, consequent).expect("same universe and chain")
        })
        .collect();
    Theory::new(universe, chain, implications).expect("same universe and chain")
}

/// Random theory brought to the joint fixpoint of saturation and
/// redundancy removal. May hold fewer formulas than requested.
pub fn random_saturated_nonredundant(
    rng: &mut ChaCha8Rng,
    universe: &Universe,
    chain: &Chain,
    formulas: usize,
) -> Theory {
    let mut current = random_theory(rng, universe, chain, formulas);
    loop {
        let next = saturate(&current).remove_redundancy();
        if next == current {
            break;
        }
        current = next;
    }
    debug_assert!(is_saturated(&current));
    debug_assert!(current.is_nonredundant());
    current
}

/// One table cell: a binomial draw with mean `scale * density / 100`,
/// so the expected table density is exactly the target.
fn binomial_cell(rng: &mut ChaCha8Rng, scale: u8, density_percent: u8) -> u8 {
    let p = f64::from(density_percent) / 100.0;
    (0..scale).filter(|_| rng.gen_bool(p)).count() as u8
}

/// Context whose cells are independent binomial draws around the
/// target density.
pub fn random_context(
    rng: &mut ChaCha8Rng,
    objects: usize,
    universe: &Universe,
    chain: &Chain,
    density_percent: u8,
) -> FormalContext {
    let rows = (0..objects)
        .map(|_| {
            (0..universe.len())
                .map(|_| binomial_cell(rng, chain.scale(), density_percent))
                .collect()
        })
        .collect();
    FormalContext::new(object_names(objects), universe, chain, rows)
        .expect("cells drawn on the chain")
}

/// Evenly spaced idempotent indices (inclusive of both ends) for an
/// ordinal sum with the requested number of idempotent elements.
pub fn spaced_idempotents(scale: u8, count: usize) -> Option<Vec<u8>> {
    if count < 2 || count > usize::from(scale) + 1 {
        return None;
    }
    let steps = (count - 1) as f64;
    Some(
        (0..count)
            .map(|i| (i as f64 * f64::from(scale) / steps).round() as u8)
            .collect(),
    )
}
