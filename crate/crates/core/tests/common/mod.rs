#![allow(dead_code)]

use fai_core::algebra::{Chain, HedgeKind, TNormKind};
use fai_core::basebuild::{is_saturated, saturate};
use fai_core::context::FormalContext;
use fai_core::fuzzyset::{FuzzySet, Universe};
use fai_core::implications::{Implication, Theory};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn attributes(count: usize) -> Universe {
    Universe::new((0..count).map(|i| format!("a{i}"))).unwrap()
}

pub fn chain(scale: u8, tnorm: TNormKind, hedge: HedgeKind) -> Chain {
    Chain::new(scale, tnorm, hedge).unwrap()
}

pub fn random_degrees(rng: &mut ChaCha8Rng, chain: &Chain, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..=chain.top())).collect()
}

pub fn random_set(rng: &mut ChaCha8Rng, universe: &Universe, chain: &Chain) -> FuzzySet {
    let degrees = random_degrees(rng, chain, universe.len());
    FuzzySet::from_degrees(universe, chain, degrees).unwrap()
}

pub fn random_theory(
    rng: &mut ChaCha8Rng,
    universe: &Universe,
    chain: &Chain,
    max_rules: usize,
) -> Theory {
    let count = rng.gen_range(0..=max_rules);
    let implications = (0..count)
        .map(|_| {
            let antecedent = random_set(rng, universe, chain);
            let consequent = antecedent
                .union(&random_set(rng, universe, chain))
                .unwrap();
            Implication::new(antecedent, consequent).unwrap()
        })
        .collect();
    Theory::new(universe, chain, implications).unwrap()
}

/// Random theory brought to the joint fixpoint of saturation and
/// redundancy removal, the precondition of the transform.
pub fn prepared_theory(
    rng: &mut ChaCha8Rng,
    universe: &Universe,
    chain: &Chain,
    max_rules: usize,
) -> Theory {
    let mut current = random_theory(rng, universe, chain, max_rules);
    for _ in 0..4 {
        let next = saturate(&current).remove_redundancy();
        if next == current {
            break;
        }
        current = next;
    }
    assert!(is_saturated(&current));
    assert!(current.is_nonredundant());
    current
}

pub fn random_context(
    rng: &mut ChaCha8Rng,
    object_count: usize,
    universe: &Universe,
    chain: &Chain,
) -> FormalContext {
    let objects: Vec<String> = (0..object_count).map(|i| format!("x{i}")).collect();
    let rows = (0..object_count)
        .map(|_| random_degrees(rng, chain, universe.len()))
        .collect();
    FormalContext::new(objects, universe, chain, rows).unwrap()
}
