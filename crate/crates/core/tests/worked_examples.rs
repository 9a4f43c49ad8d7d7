//! End-to-end walkthroughs on small hand-checked instances.

use fai_core::algebra::{Chain, HedgeKind, TNormKind};
use fai_core::basebuild::{
    find_order, is_saturated, punctured_closure, saturate, witness_check, witness_transform,
    OrderOutcome,
};
use fai_core::fuzzyset::{FuzzySet, Universe};
use fai_core::implications::{Implication, Theory};

fn theory(universe: &Universe, chain: &Chain, lines: &[&str]) -> Theory {
    let implications = lines
        .iter()
        .map(|l| Implication::parse(universe, chain, l).unwrap())
        .collect();
    Theory::new(universe, chain, implications).unwrap()
}

#[test]
fn crisp_saturation_merges_and_expands() {
    let b = Chain::new(1, TNormKind::Lukasiewicz, HedgeKind::Identity).unwrap();
    let u = Universe::new(["p", "q", "r"]).unwrap();

    // two rules sharing an antecedent collapse into one saturated rule
    let split = theory(&u, &b, &["{p} => {q}", "{p} => {r}"]);
    let merged = saturate(&split);
    assert_eq!(merged, theory(&u, &b, &["{p} => {p, q, r}"]));
    assert!(merged.equivalent(&split).unwrap());

    // a chain of rules saturates into closures, and one rule then
    // carries all the content
    let u2 = Universe::new(["p", "q"]).unwrap();
    let chained = theory(&u2, &b, &["{} => {p}", "{p} => {q}"]);
    assert!(!is_saturated(&chained));
    let saturated = saturate(&chained);
    assert_eq!(
        saturated,
        theory(&u2, &b, &["{} => {p, q}", "{p} => {p, q}"])
    );
    assert!(is_saturated(&saturated));
    let reduced = saturated.remove_redundancy();
    assert_eq!(reduced, theory(&u2, &b, &["{} => {p, q}"]));
    assert!(reduced.equivalent(&chained).unwrap());
}

#[test]
fn non_redundancy_without_a_witness() {
    // three-element chain: the theory is non-redundant, yet one of its
    // antecedents fails to model the rest, so no witness exists
    let c = Chain::new(2, TNormKind::Lukasiewicz, HedgeKind::Identity).unwrap();
    let u = Universe::new(["p", "q"]).unwrap();
    let sigma = theory(&u, &c, &["{p} => {p, q}", "{} => {0.5/q}"]);
    assert!(is_saturated(&sigma));

    // each member only follows to degree 0.5 from the other
    let first = &sigma.implications()[0];
    let second = &sigma.implications()[1];
    assert_eq!(
        sigma.without(0).entail_degree(first).unwrap().to_f64(),
        0.5
    );
    assert_eq!(
        sigma.without(1).entail_degree(second).unwrap().to_f64(),
        0.5
    );
    assert!(sigma.is_nonredundant());

    let report = witness_check(&sigma);
    assert!(!report.witnessed);
    assert_eq!(report.failures.len(), 1);
    assert_eq!(report.failures[0].member, *first);
    assert_eq!(report.failures[0].violated, *second);
}

#[test]
fn no_total_order_over_punctured_closures() {
    // the two punctured closures each outgrow what the other rule can
    // provide, so no placement order exists
    let c = Chain::new(2, TNormKind::Lukasiewicz, HedgeKind::Identity).unwrap();
    let u = Universe::new(["p", "q", "r"]).unwrap();
    let gamma = theory(&u, &c, &["{0.5/r} => {p, 0.5/q, 0.5/r}", "{} => {p}"]);
    assert!(is_saturated(&gamma));
    assert!(gamma.is_nonredundant());

    assert_eq!(
        punctured_closure(&gamma, 0).unwrap(),
        FuzzySet::parse(&u, &c, "{p, 0.5/r}").unwrap()
    );
    assert_eq!(
        punctured_closure(&gamma, 1).unwrap(),
        FuzzySet::parse(&u, &c, "{0.5/p}").unwrap()
    );
    assert_eq!(find_order(&gamma).unwrap(), OrderOutcome::NoOrder);
}

#[test]
fn transform_image_can_diverge_without_globalization() {
    let g = Chain::new(2, TNormKind::Goedel, HedgeKind::Identity).unwrap();
    let u = Universe::new(["p", "q", "r"]).unwrap();
    let gamma = theory(
        &u,
        &g,
        &["{0.5/p} => {0.5/p, 0.5/q, r}", "{p} => {p, q, r}"],
    );
    assert!(is_saturated(&gamma));
    assert!(gamma.is_nonredundant());

    let out = witness_transform(&gamma).unwrap();
    assert_eq!(
        out.theory,
        theory(
            &u,
            &g,
            &[
                "{0.5/p, 0.5/q, 0.5/r} => {0.5/p, 0.5/q, r}",
                "{p, 0.5/q, r} => {p, q, r}",
            ]
        )
    );
    assert!(!out.equivalent);

    // the image is nevertheless witnessed, it just describes a larger
    // model class; {0.5/p} separates the two theories
    let separating = FuzzySet::parse(&u, &g, "{0.5/p}").unwrap();
    assert!(out.theory.is_model(&separating).unwrap());
    assert!(!gamma.is_model(&separating).unwrap());
    assert!(witness_check(&out.theory).witnessed);
}
