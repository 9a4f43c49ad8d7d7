//! Saturation, witnessed non-redundancy, antecedent orderings, and the
//! construction of pseudo-intent bases from data tables.
//!
//! The central transform replaces every antecedent of a saturated
//! non-redundant theory by its closure under the remaining
//! implications. Under the globalization hedge the result is always an
//! equivalent theory whose non-redundancy is witnessed by its own
//! antecedents; under other hedges equivalence can fail, which is a
//! reported outcome rather than an error.

use alloc::vec::Vec;

use crate::algebra::Chain;
use crate::context::FormalContext;
use crate::fuzzyset::{enumerate_sets, raw, FuzzySet};
use crate::implications::{Implication, Theory};
use crate::{Caps, Error};

/// Outcome of checking whether every antecedent models the rest of the
/// theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub witnessed: bool,
    /// For each failing member: the member itself, plus one implication
    /// of the remaining theory that its antecedent violates.
    pub failures: Vec<WitnessFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFailure {
    pub member: Implication,
    pub violated: Implication,
}

/// Antecedents of a base `{P => P-closure : P in members}` of a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoIntentSystem {
    members: Vec<FuzzySet>,
    base: Theory,
}

impl PseudoIntentSystem {
    pub(crate) fn assemble(
        universe: &crate::fuzzyset::Universe,
        chain: &Chain,
        members: Vec<FuzzySet>,
        closures: Vec<FuzzySet>,
    ) -> Result<Self, Error> {
        let implications = members
            .iter()
            .cloned()
            .zip(closures)
            .map(|(antecedent, consequent)| Implication::new(antecedent, consequent))
            .collect::<Result<Vec<_>, _>>()?;
        let base = Theory::new(universe, chain, implications)?;
        Ok(PseudoIntentSystem { members, base })
    }

    pub fn members(&self) -> &[FuzzySet] {
        &self.members
    }

    pub fn base(&self) -> &Theory {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Result of the ordering search of [`find_order`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderOutcome {
    /// Antecedents listed so that each one's punctured closure equals
    /// its closure under the implications of earlier antecedents.
    Order(Vec<FuzzySet>),
    NoOrder,
}

/// Result of [`witness_transform`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformOutcome {
    pub theory: Theory,
    /// Whether the image is equivalent to the input. Always true under
    /// globalization; may be false for other hedges.
    pub equivalent: bool,
}

/// Result of [`base_from_context`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseOutcome {
    Base {
        system: PseudoIntentSystem,
        /// True when completeness of the base was re-verified by full
        /// enumeration; skipped when the set space exceeds the cap or
        /// verification was disabled.
        completeness_checked: bool,
    },
    /// The pipeline produced a transform image that is not equivalent
    /// to the complete set it started from (possible for hedges other
    /// than globalization).
    NotEquivalent { attempted: Theory },
}

impl BaseOutcome {
    pub fn system(&self) -> Option<&PseudoIntentSystem> {
        match self {
            BaseOutcome::Base { system, .. } => Some(system),
            BaseOutcome::NotEquivalent { .. } => None,
        }
    }
}

/// Replaces every consequent by the closure of its antecedent under the
/// whole theory; members sharing an antecedent collapse into one.
pub fn saturate(gamma: &Theory) -> Theory {
    let mut implications: Vec<Implication> = Vec::with_capacity(gamma.len());
    for imp in gamma.implications() {
        if implications
            .iter()
            .any(|done| done.antecedent() == imp.antecedent())
        {
            continue;
        }
        let closed = gamma
            .close(imp.antecedent())
            .expect("theory members share the theory's universe and chain");
        implications.push(
            Implication::new(imp.antecedent().clone(), closed)
                .expect("antecedent and closure share universe and chain"),
        );
    }
    Theory::new(gamma.universe(), gamma.chain(), implications)
        .expect("members inherit the theory's universe and chain")
}

/// True iff every consequent equals the closure of its antecedent.
pub fn is_saturated(sigma: &Theory) -> bool {
    sigma.implications().iter().all(|imp| {
        sigma
            .close(imp.antecedent())
            .map(|closed| closed == *imp.consequent())
            .unwrap_or(false)
    })
}

/// Checks that each antecedent is a model of the remaining theory.
pub fn witness_check(sigma: &Theory) -> WitnessReport {
    let mut failures = Vec::new();
    for position in 0..sigma.len() {
        let member = &sigma.implications()[position];
        let rest = sigma.without(position);
        for other in rest.implications() {
            let truth = other
                .truth_in(member.antecedent())
                .expect("members share universe and chain");
            if !truth.is_top() {
                failures.push(WitnessFailure {
                    member: member.clone(),
                    violated: other.clone(),
                });
                break;
            }
        }
    }
    WitnessReport {
        witnessed: failures.is_empty(),
        failures,
    }
}

fn check_saturated_nonredundant(gamma: &Theory) -> Result<(), Error> {
    if !is_saturated(gamma) {
        return Err(Error::NotSaturated);
    }
    if !gamma.is_nonredundant() {
        return Err(Error::Redundant);
    }
    Ok(())
}

/// Closure of the antecedent at `position` under all other members.
pub fn punctured_closure(gamma: &Theory, position: usize) -> Result<FuzzySet, Error> {
    if position >= gamma.len() {
        return Err(Error::NotAMember);
    }
    let antecedent = gamma.implications()[position].antecedent().clone();
    gamma.without(position).close(&antecedent)
}

/// Greedy search for a total order of the antecedents in which each
/// punctured closure is already reached by the implications of earlier
/// antecedents. Ties break towards the earliest unplaced member in list
/// order. Requires a saturated, non-redundant theory.
pub fn find_order(gamma: &Theory) -> Result<OrderOutcome, Error> {
    check_saturated_nonredundant(gamma)?;
    let punctured: Vec<FuzzySet> = (0..gamma.len())
        .map(|position| punctured_closure(gamma, position))
        .collect::<Result<_, _>>()?;
    let mut placed: Vec<usize> = Vec::with_capacity(gamma.len());
    let mut remaining: Vec<usize> = (0..gamma.len()).collect();
    while !remaining.is_empty() {
        let prefix = Theory::new(
            gamma.universe(),
            gamma.chain(),
            placed
                .iter()
                .map(|&i| gamma.implications()[i].clone())
                .collect(),
        )
        .expect("prefix members come from the theory");
        let mut chosen = None;
        for (slot, &candidate) in remaining.iter().enumerate() {
            let under_prefix =
                prefix.close(gamma.implications()[candidate].antecedent())?;
            if under_prefix == punctured[candidate] {
                chosen = Some(slot);
                break;
            }
        }
        match chosen {
            Some(slot) => placed.push(remaining.remove(slot)),
            None => return Ok(OrderOutcome::NoOrder),
        }
    }
    Ok(OrderOutcome::Order(
        placed
            .into_iter()
            .map(|i| gamma.implications()[i].antecedent().clone())
            .collect(),
    ))
}

/// Replaces each antecedent by its punctured closure, keeping the
/// consequent. Requires a saturated, non-redundant theory; reports
/// whether the image is equivalent to the input.
pub fn witness_transform(gamma: &Theory) -> Result<TransformOutcome, Error> {
    check_saturated_nonredundant(gamma)?;
    let mut implications = Vec::with_capacity(gamma.len());
    for position in 0..gamma.len() {
        let antecedent = punctured_closure(gamma, position)?;
        implications.push(Implication::new(
            antecedent,
            gamma.implications()[position].consequent().clone(),
        )?);
    }
    let theory = Theory::new(gamma.universe(), gamma.chain(), implications)?;
    let equivalent = theory.equivalent(gamma)?;
    Ok(TransformOutcome { theory, equivalent })
}

/// Whether the chain's hedge behaves as the globalization (everything
/// below 1 drops to 0). Checked on the table, so it also covers custom
/// tables and the Boolean chain, where the identity coincides with it.
pub fn hedge_is_globalization(chain: &Chain) -> bool {
    let n = chain.top();
    chain.hedge(n) == n && (0..n).all(|a| chain.hedge(a) == 0)
}

/// Options for [`base_from_context_with`].
#[derive(Clone, Copy, Debug)]
pub struct BaseOptions {
    pub caps: Caps,
    /// Re-verify completeness of the base by full enumeration when the
    /// set space fits the cap.
    pub verify_completeness: bool,
}

impl Default for BaseOptions {
    fn default() -> Self {
        BaseOptions {
            caps: Caps::default(),
            verify_completeness: true,
        }
    }
}

/// Computes the base of a table: the theory `{P => P-closure}` whose
/// antecedents form the system of pseudo-intents.
///
/// Under globalization the system is unique and is enumerated directly
/// (see [`base_from_context_with`] for the mechanism); under other
/// hedges the full set space is enumerated, reduced and transformed,
/// and the outcome reports whether the transform stayed equivalent.
pub fn base_from_context(ctx: &FormalContext, caps: &Caps) -> Result<BaseOutcome, Error> {
    base_from_context_with(
        ctx,
        &BaseOptions {
            caps: *caps,
            verify_completeness: true,
        },
    )
}

/// [`base_from_context`] with explicit options.
///
/// The globalization route enumerates, in lexicographic order, the
/// fixpoints of the operator that closes a set under the implications
/// `Q => Q-closure` of the pseudo-intents found so far (premise
/// strictly below the set). Every fixpoint is an intent or the next
/// pseudo-intent, so the walk visits intents plus pseudo-intents
/// instead of the whole set space. The generic route follows the
/// definition: enumerate all non-intents P, take `{P => P-closure}`,
/// remove redundancy, re-saturate to a joint fixpoint, and transform.
pub fn base_from_context_with(
    ctx: &FormalContext,
    options: &BaseOptions,
) -> Result<BaseOutcome, Error> {
    if hedge_is_globalization(ctx.chain()) {
        globalization_base(ctx, options)
    } else {
        universe_pipeline_base(ctx, options)
    }
}

fn finish_base(
    ctx: &FormalContext,
    members: Vec<FuzzySet>,
    base: Theory,
    options: &BaseOptions,
) -> Result<BaseOutcome, Error> {
    debug_assert!(members
        .iter()
        .zip(base.implications())
        .all(|(m, imp)| imp.antecedent() == m));
    let completeness_checked = if options.verify_completeness {
        match ctx.is_complete(&base, &options.caps) {
            Ok(ok) => {
                debug_assert!(ok, "constructed base must be complete");
                ok
            }
            Err(Error::Capacity { .. }) => false,
            Err(e) => return Err(e),
        }
    } else {
        false
    };
    Ok(BaseOutcome::Base {
        system: PseudoIntentSystem { members, base },
        completeness_checked,
    })
}

fn universe_pipeline_base(
    ctx: &FormalContext,
    options: &BaseOptions,
) -> Result<BaseOutcome, Error> {
    let universe = ctx.universe();
    let chain = ctx.chain();
    let mut scratch = alloc::vec![0u8; ctx.objects().len()];
    let mut intent = alloc::vec![0u8; universe.len()];
    let mut complete_set = Vec::new();
    for p in enumerate_sets(universe, chain, &options.caps)? {
        ctx.intent_closure_raw(p.degrees(), &mut scratch, &mut intent);
        if p.degrees() != intent.as_slice() {
            let closure = FuzzySet::from_degrees(universe, chain, intent.clone())?;
            complete_set.push(Implication::new(p, closure)?);
        }
    }
    let mut current = Theory::new(universe, chain, complete_set)?.remove_redundancy();
    loop {
        let next = saturate(&current).remove_redundancy();
        if next == current {
            break;
        }
        current = next;
    }
    let transformed = witness_transform(&current)?;
    if !transformed.equivalent {
        return Ok(BaseOutcome::NotEquivalent {
            attempted: transformed.theory,
        });
    }
    let mut implications = transformed.theory.implications().to_vec();
    implications.sort_by(|a, b| a.antecedent().lex_cmp(b.antecedent()));
    for imp in &implications {
        ctx.intent_closure_raw(imp.antecedent().degrees(), &mut scratch, &mut intent);
        debug_assert_ne!(imp.antecedent().degrees(), intent.as_slice());
        debug_assert_eq!(imp.consequent().degrees(), intent.as_slice());
    }
    let members = implications
        .iter()
        .map(|imp| imp.antecedent().clone())
        .collect();
    let base = Theory::new(universe, chain, implications)?;
    finish_base(ctx, members, base, options)
}

fn globalization_base(
    ctx: &FormalContext,
    options: &BaseOptions,
) -> Result<BaseOutcome, Error> {
    let universe = ctx.universe();
    let chain = ctx.chain();
    let width = universe.len();
    let top = chain.top();
    let mut rules: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
    let mut scratch = alloc::vec![0u8; ctx.objects().len()];
    let mut intent = alloc::vec![0u8; width];
    let mut current = alloc::vec![0u8; width];
    let mut visited: u64 = 0;
    loop {
        visited += 1;
        if visited > options.caps.max_sets {
            return Err(Error::Capacity {
                what: "pseudo-intent enumeration",
                needed: visited as u128,
                cap: options.caps.max_sets as u128,
            });
        }
        ctx.intent_closure_raw(&current, &mut scratch, &mut intent);
        if current != intent {
            rules.push((current.clone(), intent.clone()));
        }
        if current.iter().all(|&d| d == top) {
            break;
        }
        match next_fixpoint(&current, &rules, top) {
            Some(next) => current = next,
            None => break,
        }
    }
    let mut members = Vec::with_capacity(rules.len());
    let mut implications = Vec::with_capacity(rules.len());
    for (p, c) in rules {
        let antecedent = FuzzySet::from_degrees(universe, chain, p)?;
        let consequent = FuzzySet::from_degrees(universe, chain, c)?;
        members.push(antecedent.clone());
        implications.push(Implication::new(antecedent, consequent)?);
    }
    let base = Theory::new(universe, chain, implications)?;
    finish_base(ctx, members, base, options)
}

/// Least fixpoint of the strict-premise closure reachable from the
/// lexicographic successor classes of `a`, i.e. the next set (in
/// lexicographic order, first position most significant) that is closed
/// under every rule whose premise is strictly below it.
fn next_fixpoint(a: &[u8], rules: &[(Vec<u8>, Vec<u8>)], top: u8) -> Option<Vec<u8>> {
    let width = a.len();
    let mut candidate = alloc::vec![0u8; width];
    for j in (0..width).rev() {
        for bump in (a[j] + 1)..=top {
            candidate[..j].copy_from_slice(&a[..j]);
            candidate[j] = bump;
            candidate[j + 1..].fill(0);
            if strict_close_checked(&mut candidate, rules, a, j) {
                return Some(candidate);
            }
        }
    }
    None
}

/// Runs the strict-premise closure in place. Returns false (abandoning
/// the candidate) as soon as the closure raises a position `< j` above
/// `frontier` or raises position `j`, since the result could then not
/// belong to the successor class being probed.
fn strict_close_checked(
    x: &mut [u8],
    rules: &[(Vec<u8>, Vec<u8>)],
    frontier: &[u8],
    j: usize,
) -> bool {
    loop {
        let mut changed = false;
        for (premise, consequent) in rules {
            if !raw::is_subset(premise, x) || premise.as_slice() == &*x {
                continue;
            }
            for k in 0..x.len() {
                if consequent[k] > x[k] {
                    if k < j && consequent[k] > frontier[k] {
                        return false;
                    }
                    if k == j {
                        return false;
                    }
                    x[k] = consequent[k];
                    changed = true;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

/// Checks the defining property of a system of pseudo-intents: a
/// non-intent P belongs to the system exactly when every other member's
/// implication `Q => Q-closure` holds fully in P. Enumerates all
/// non-intents, so the set space must fit the cap.
pub fn verify_system(
    members: &[FuzzySet],
    ctx: &FormalContext,
    caps: &Caps,
) -> Result<bool, Error> {
    let universe = ctx.universe();
    let chain = ctx.chain();
    let mut scratch = alloc::vec![0u8; ctx.objects().len()];
    let mut intent = alloc::vec![0u8; universe.len()];
    let mut member_rules = Vec::with_capacity(members.len());
    for m in members {
        if *m.universe() != *universe {
            return Err(Error::UniverseMismatch);
        }
        if *m.chain() != *chain {
            return Err(Error::ChainMismatch);
        }
        ctx.intent_closure_raw(m.degrees(), &mut scratch, &mut intent);
        if m.degrees() == intent.as_slice() {
            return Ok(false); // an intent can never be a member
        }
        member_rules.push((m.degrees().to_vec(), intent.clone()));
    }
    for p in enumerate_sets(universe, chain, caps)? {
        ctx.intent_closure_raw(p.degrees(), &mut scratch, &mut intent);
        if p.degrees() == intent.as_slice() {
            continue; // not in the universe of candidates
        }
        let is_member = member_rules.iter().any(|(q, _)| q.as_slice() == p.degrees());
        let satisfies = member_rules.iter().all(|(q, q_closure)| {
            q.as_slice() == p.degrees()
                || crate::implications::raw::implication_truth(
                    chain,
                    q,
                    q_closure,
                    p.degrees(),
                ) == chain.top()
        });
        if is_member != satisfies {
            return Ok(false);
        }
    }
    Ok(true)
}
