//! Alphabetic backtracking tree search over tags.
//!
//! Letters are tried in the order A, T, C, G. The search walks the 4-ary tree
//! of partial tags depth-first, extends while the newly completed c-token is
//! available, and emits every complete tag it reaches. After an emission it
//! jumps back to the end of the tag's first token, which moves on to the next
//! subtree that could still hold a feasible tag.

use std::fmt;

use serde::Serialize;

use crate::token_graph::Stability;
use crate::tokens::{weight, Base, DnaString, TokenId, TokenSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Pairwise {
    /// A token may occur in at most one tag.
    C,
    /// A token may occur in at most one tag or antitag.
    Cbar,
}

impl fmt::Display for Pairwise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pairwise::C => "C",
            Pairwise::Cbar => "Cbar",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TokenMode {
    /// No token repeats within a tag.
    Unique,
    Multiple,
}

impl fmt::Display for TokenMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TokenMode::Unique => "unique",
            TokenMode::Multiple => "multiple",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Provenance {
    TreeSearch,
    CyclePacking,
    Ilp,
}

/// The order in which the tree search tries letters.
pub const SEARCH_ORDER: [Base; 4] = [Base::A, Base::T, Base::C, Base::G];

fn next_base(b: Base) -> Option<Base> {
    match b {
        Base::A => Some(Base::T),
        Base::T => Some(Base::C),
        Base::C => Some(Base::G),
        Base::G => None,
    }
}

/// Which tokens may still be placed in a new tag.
///
/// A token becomes unavailable once it occurs in a designed tag, and in
/// `Cbar` mode also once it occurs in a designed antitag.
#[derive(Clone, Debug)]
pub struct Availability {
    pub pairwise: Pairwise,
    used: Vec<bool>,
}

impl Availability {
    pub fn new(tokens: &TokenSet, pairwise: Pairwise) -> Self {
        Availability {
            pairwise,
            used: vec![false; tokens.len()],
        }
    }

    pub fn is_available(&self, id: TokenId) -> bool {
        !self.used[id.index()]
    }

    pub fn mark(&mut self, id: TokenId) {
        self.used[id.index()] = true;
    }

    /// Marks everything a new tag rules out for later tags.
    pub fn mark_tag(&mut self, tokens: &TokenSet, tag: &[Base]) {
        for (_, id) in tokens.token_ids_of(tag) {
            self.mark(id);
        }
        if self.pairwise == Pairwise::Cbar {
            for (_, id) in tokens.token_ids_of(DnaString::from(tag).reverse_complement().bases()) {
                self.mark(id);
            }
        }
    }

    pub fn num_used(&self) -> usize {
        self.used.iter().filter(|&&u| u).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tag {
    pub seq: DnaString,
    pub provenance: Provenance,
}

/// Designed tags with the model they were designed for.
#[derive(Clone, Debug, Serialize)]
pub struct TagSet {
    pub c: u32,
    pub stability: Stability,
    pub pairwise: Pairwise,
    pub token_mode: TokenMode,
    pub tags: Vec<Tag>,
}

impl TagSet {
    pub fn new(c: u32, stability: Stability, pairwise: Pairwise, token_mode: TokenMode) -> Self {
        TagSet {
            c,
            stability,
            pairwise,
            token_mode,
            tags: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn push(&mut self, seq: DnaString, provenance: Provenance) {
        self.tags.push(Tag { seq, provenance });
    }

    pub fn sequences(&self) -> impl Iterator<Item = &DnaString> {
        self.tags.iter().map(|t| &t.seq)
    }
}

/// Runs the tree search from `avail`, appending tags to a fresh set. `avail`
/// is left holding the final marking.
pub fn tree_search(
    tokens: &TokenSet,
    stability: Stability,
    pairwise: Pairwise,
    token_mode: TokenMode,
    avail: &mut Availability,
) -> TagSet {
    let mut out = TagSet::new(tokens.c(), stability, pairwise, token_mode);
    let c = tokens.c();
    let cap = match stability {
        Stability::Length(l) => l as usize,
        Stability::Weight(h) => h as usize + 1,
    };
    if c > stability.value() {
        return out;
    }
    let rc: Vec<Option<TokenId>> = tokens.iter().map(|(id, _)| tokens.rc_token(id)).collect();
    let done = |b: &[Base], pos: usize| match stability {
        Stability::Length(l) => pos == l as usize,
        Stability::Weight(h) => weight(&b[..pos]) >= h,
    };

    let mut b = vec![Base::A; cap];
    // Tokens of the current prefix, with their end positions.
    let mut prefix: Vec<(usize, TokenId)> = Vec::new();
    let mut pos = 1;

    // Move to the last non-G position at or before `pos`, advance its letter
    // and reset everything after it.
    let backtrack = |b: &mut Vec<Base>, prefix: &mut Vec<(usize, TokenId)>, pos: usize| {
        let p = (1..=pos).rev().find(|&i| b[i - 1] != Base::G)?;
        b[p - 1] = next_base(b[p - 1]).expect("non-G letter");
        for x in &mut b[p..] {
            *x = Base::A;
        }
        while prefix.last().is_some_and(|&(end, _)| end >= p) {
            prefix.pop();
        }
        Some(p)
    };

    loop {
        while weight(&b[..pos]) < c {
            pos += 1;
        }
        let t = tokens.token_at(&b, pos).expect("prefix weighs at least c");
        let mut ok = avail.is_available(t);
        if ok && token_mode == TokenMode::Unique {
            let clash = |x: TokenId| prefix.iter().any(|&(_, y)| y == x);
            ok = !clash(t);
            if ok && pairwise == Pairwise::Cbar {
                ok = !rc[t.index()].is_some_and(clash);
            }
        }
        let next = if ok {
            prefix.push((pos, t));
            if done(&b, pos) {
                let tag = &b[..pos];
                avail.mark_tag(tokens, tag);
                out.push(DnaString::from(tag), Provenance::TreeSearch);
                let first_end = prefix[0].0;
                backtrack(&mut b, &mut prefix, first_end)
            } else {
                Some(pos + 1)
            }
        } else {
            backtrack(&mut b, &mut prefix, pos)
        };
        match next {
            Some(p) => pos = p,
            None => break,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(set: &TagSet) -> Vec<String> {
        set.sequences().map(|s| s.to_string()).collect()
    }

    #[test]
    fn c2_l2_multiple() {
        let tokens = TokenSet::new(2).unwrap();
        let mut avail = Availability::new(&tokens, Pairwise::C);
        let tags = tree_search(
            &tokens,
            Stability::Length(2),
            Pairwise::C,
            TokenMode::Multiple,
            &mut avail,
        );
        assert_eq!(strings(&tags), ["AA", "AT", "AC", "AG", "TA", "TT"]);
    }

    #[test]
    fn c4_l20_counts() {
        let tokens = TokenSet::new(4).unwrap();
        let mut avail = Availability::new(&tokens, Pairwise::C);
        let tags = tree_search(
            &tokens,
            Stability::Length(20),
            Pairwise::C,
            TokenMode::Multiple,
            &mut avail,
        );
        assert_eq!(tags.len(), 14);
        assert_eq!(avail.num_used(), 59);
    }

    #[test]
    fn weight_mode_tags_end_on_threshold() {
        let tokens = TokenSet::new(3).unwrap();
        let mut avail = Availability::new(&tokens, Pairwise::C);
        let tags = tree_search(
            &tokens,
            Stability::Weight(9),
            Pairwise::C,
            TokenMode::Multiple,
            &mut avail,
        );
        assert!(!tags.is_empty());
        for t in tags.sequences() {
            let w = t.weight();
            assert!(w == 9 || w == 10);
            assert!(weight(&t.bases()[..t.len() - 1]) < 9);
        }
    }

    #[test]
    fn exhausted_availability_gives_nothing() {
        let tokens = TokenSet::new(2).unwrap();
        let mut avail = Availability::new(&tokens, Pairwise::C);
        for (id, _) in tokens.iter() {
            avail.mark(id);
        }
        let tags = tree_search(
            &tokens,
            Stability::Length(4),
            Pairwise::C,
            TokenMode::Unique,
            &mut avail,
        );
        assert!(tags.is_empty());
    }
}
