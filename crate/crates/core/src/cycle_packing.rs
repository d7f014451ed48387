//! Greedy packing of token-disjoint periodic tags.
//!
//! A periodic string x^∞ walks a directed cycle of the token graph, so a set
//! of periods with pairwise disjoint token sets is a vertex-disjoint cycle
//! packing. Periods are tried shortest first and accepted greedily.

use serde::Serialize;

use crate::token_graph::Stability;
use crate::tokens::{weight, Base, DnaString, TokenId, TokenSet};
use crate::tree_search::{tree_search, Availability, Pairwise, Provenance, TagSet, TokenMode,
    SEARCH_ORDER};

pub const DEFAULT_MAX_PERIOD: usize = 15;

#[derive(Clone, Debug, Serialize)]
pub struct PeriodCycle {
    pub period: DnaString,
    /// Sorted, distinct.
    pub tokens: Vec<TokenId>,
    pub tag: DnaString,
}

/// Distinct tokens of the bi-infinite string `...xxx...`, sorted by id.
pub fn tokens_of_period(tokens: &TokenSet, period: &[Base]) -> Vec<TokenId> {
    assert!(!period.is_empty(), "empty period");
    let p = period.len();
    let reps = (tokens.c() as usize + 1).div_ceil(p) + 2;
    let s: Vec<Base> = period.iter().copied().cycle().take(reps * p).collect();
    let mut out: Vec<TokenId> = ((reps - 1) * p + 1..=reps * p)
        .filter_map(|end| tokens.token_at(&s, end))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// First `l` letters of x^∞, or its shortest prefix of weight at least `h`.
pub fn extract_tag(period: &[Base], stability: Stability) -> DnaString {
    let mut tag = Vec::new();
    let mut it = period.iter().copied().cycle();
    match stability {
        Stability::Length(l) => tag.extend(it.take(l as usize)),
        Stability::Weight(h) => {
            while weight(&tag) < h {
                tag.push(it.next().expect("cycle is endless"));
            }
        }
    }
    DnaString::new(tag)
}

/// Tries periods by length `1..=max_period`, each length in lexicographic
/// order over A < T < C < G, and accepts a period when none of its tokens is
/// used yet. `avail` is updated with every accepted period.
pub fn greedy_cycle_packing(
    tokens: &TokenSet,
    stability: Stability,
    max_period: usize,
    avail: &mut Availability,
) -> Vec<PeriodCycle> {
    let mut accepted = Vec::new();
    let max_p = match stability {
        Stability::Length(l) => max_period.min(l as usize),
        Stability::Weight(_) => max_period,
    };
    let mut prefix = Vec::with_capacity(max_p);
    for p in 1..=max_p {
        enumerate(tokens, stability, p, &mut prefix, avail, &mut accepted);
    }
    accepted
}

fn enumerate(
    tokens: &TokenSet,
    stability: Stability,
    p: usize,
    prefix: &mut Vec<Base>,
    avail: &mut Availability,
    accepted: &mut Vec<PeriodCycle>,
) {
    if prefix.len() == p {
        let toks = tokens_of_period(tokens, prefix);
        if toks.iter().all(|&t| avail.is_available(t)) {
            for &t in &toks {
                avail.mark(t);
            }
            if avail.pairwise == Pairwise::Cbar {
                for t in tokens_of_period(tokens, DnaString::from(&prefix[..]).reverse_complement().bases()) {
                    avail.mark(t);
                }
            }
            accepted.push(PeriodCycle {
                period: DnaString::from(&prefix[..]),
                tokens: toks,
                tag: extract_tag(prefix, stability),
            });
        }
        return;
    }
    for b in SEARCH_ORDER {
        prefix.push(b);
        // A token already inside the linear prefix is a token of the period.
        let live = tokens
            .token_at(prefix, prefix.len())
            .is_none_or(|t| avail.is_available(t));
        if live {
            enumerate(tokens, stability, p, prefix, avail, accepted);
        }
        prefix.pop();
    }
}

/// Cycle packing followed by the tree search on the leftover tokens.
pub fn combined_design(
    tokens: &TokenSet,
    stability: Stability,
    pairwise: Pairwise,
    max_period: usize,
) -> (TagSet, Vec<PeriodCycle>) {
    let mut avail = Availability::new(tokens, pairwise);
    let cycles = greedy_cycle_packing(tokens, stability, max_period, &mut avail);
    let rest = tree_search(tokens, stability, pairwise, TokenMode::Multiple, &mut avail);
    let mut set = TagSet::new(tokens.c(), stability, pairwise, TokenMode::Multiple);
    for cyc in &cycles {
        set.push(cyc.tag.clone(), Provenance::CyclePacking);
    }
    set.tags.extend(rest.tags);
    (set, cycles)
}
