//! DNA alphabet, the 2-4 weight model and c-tokens.
//!
//! A c-token is a string of weight at least `c` whose proper suffixes all
//! weigh less than `c`. Exactly one c-token ends at every position of a string
//! once the prefix up to that position weighs `c` or more, which is what makes
//! tokens the unit of cross-hybridization bookkeeping everywhere else in the
//! crate.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{param, Error, Result};

/// Largest `c` accepted by [`TokenSet::new`].
pub const DEFAULT_MAX_C: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Base {
    A,
    C,
    G,
    T,
}

impl Base {
    /// Canonical order, used for token numbering.
    pub const ALL: [Base; 4] = [Base::A, Base::C, Base::G, Base::T];

    pub fn weight(self) -> u32 {
        match self {
            Base::A | Base::T => 1,
            Base::C | Base::G => 2,
        }
    }

    pub fn is_strong(self) -> bool {
        self.weight() == 2
    }

    pub fn complement(self) -> Base {
        match self {
            Base::A => Base::T,
            Base::T => Base::A,
            Base::C => Base::G,
            Base::G => Base::C,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn to_char(self) -> char {
        match self {
            Base::A => 'A',
            Base::C => 'C',
            Base::G => 'G',
            Base::T => 'T',
        }
    }

    pub fn from_char(ch: char) -> Option<Base> {
        match ch.to_ascii_uppercase() {
            'A' => Some(Base::A),
            'C' => Some(Base::C),
            'G' => Some(Base::G),
            'T' => Some(Base::T),
            _ => None,
        }
    }
}

/// Sum of base weights.
pub fn weight(bases: &[Base]) -> u32 {
    bases.iter().map(|b| b.weight()).sum()
}

/// An owned DNA sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DnaString(Vec<Base>);

impl DnaString {
    pub fn new(bases: Vec<Base>) -> Self {
        DnaString(bases)
    }

    pub fn bases(&self) -> &[Base] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        weight(&self.0)
    }

    pub fn reverse_complement(&self) -> DnaString {
        reverse_complement(&self.0)
    }

    pub fn last(&self) -> Option<Base> {
        self.0.last().copied()
    }

    pub fn into_bases(self) -> Vec<Base> {
        self.0
    }
}

impl From<Vec<Base>> for DnaString {
    fn from(v: Vec<Base>) -> Self {
        DnaString(v)
    }
}

impl From<&[Base]> for DnaString {
    fn from(v: &[Base]) -> Self {
        DnaString(v.to_vec())
    }
}

impl FromStr for DnaString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|ch| {
                Base::from_char(ch)
                    .ok_or_else(|| Error::InvalidInput(format!("invalid nucleotide {ch:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(DnaString)
    }
}

impl fmt::Display for DnaString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{}", b.to_char())?;
        }
        Ok(())
    }
}

impl Serialize for DnaString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Watson-Crick reverse complement.
pub fn reverse_complement(bases: &[Base]) -> DnaString {
    DnaString(bases.iter().rev().map(|b| b.complement()).collect())
}

/// True iff `s` weighs at least `c` and every proper suffix weighs less.
pub fn is_ctoken(s: &[Base], c: u32) -> bool {
    match s.split_first() {
        None => false,
        Some((first, rest)) => {
            let tail = weight(rest);
            tail < c && tail + first.weight() >= c
        }
    }
}

/// Length of the c-token ending at `s[end - 1]`, if the prefix is heavy enough.
fn token_len_ending_at(s: &[Base], end: usize, c: u32) -> Option<usize> {
    let mut w = 0;
    for i in (0..end).rev() {
        w += s[i].weight();
        if w >= c {
            return Some(end - i);
        }
    }
    None
}

/// The c-token ending at each position of `s`, as `(1-based end, token)`.
pub fn tokens_of_string(s: &[Base], c: u32) -> Vec<(usize, DnaString)> {
    (1..=s.len())
        .filter_map(|end| {
            token_len_ending_at(s, end, c).map(|len| (end, DnaString::from(&s[end - len..end])))
        })
        .collect()
}

/// The c-token that is a suffix of `token` followed by `base`.
pub fn next_token_text(token: &[Base], base: Base, c: u32) -> DnaString {
    let mut s = token.to_vec();
    s.push(base);
    let len = token_len_ending_at(&s, s.len(), c).unwrap_or(s.len());
    DnaString(s.split_off(s.len() - len))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TokenClass {
    /// Weight `c + 1`, ends weak. Never the first token of a tag.
    C0,
    /// Weight `c`, ends strong. May start a tag directly or after one weak base.
    C2,
    Other,
}

impl TokenClass {
    pub fn of(text: &[Base], c: u32) -> TokenClass {
        let w = weight(text);
        match text.last() {
            Some(b) if w == c + 1 && !b.is_strong() => TokenClass::C0,
            Some(b) if w == c && b.is_strong() => TokenClass::C2,
            _ => TokenClass::Other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TokenClass::C0 => "C0",
            TokenClass::C2 => "C2",
            TokenClass::Other => "other",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TokenId(pub u32);

impl TokenId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CToken {
    pub text: DnaString,
    pub weight: u32,
    pub class: TokenClass,
}

impl CToken {
    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    /// Weight of the last base.
    pub fn tail(&self) -> u32 {
        self.text.last().map_or(0, Base::weight)
    }
}

fn pack(bases: &[Base]) -> u64 {
    bases
        .iter()
        .fold(bases.len() as u64, |acc, b| (acc << 2) | b.index() as u64)
}

/// All c-tokens for one `c`, interned in canonical (A < C < G < T) order,
/// with the single-letter transition table.
#[derive(Clone, Debug)]
pub struct TokenSet {
    c: u32,
    tokens: Vec<CToken>,
    lookup: HashMap<u64, TokenId>,
    next: Vec<[TokenId; 4]>,
}

impl TokenSet {
    pub fn new(c: u32) -> Result<TokenSet> {
        TokenSet::with_max(c, DEFAULT_MAX_C)
    }

    pub fn with_max(c: u32, max_c: u32) -> Result<TokenSet> {
        if c == 0 || c > max_c {
            return param(format!("c must be in 1..={max_c}, got {c}"));
        }
        let mut texts = Vec::new();
        let mut suffix = Vec::new();
        grow_left(&mut suffix, 0, c, &mut texts);
        texts.sort();

        let tokens: Vec<CToken> = texts
            .into_iter()
            .map(|t| CToken {
                weight: weight(&t),
                class: TokenClass::of(&t, c),
                text: DnaString(t),
            })
            .collect();
        let lookup = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (pack(t.text.bases()), TokenId(i as u32)))
            .collect();
        let mut set = TokenSet {
            c,
            tokens,
            lookup,
            next: Vec::new(),
        };
        set.next = (0..set.tokens.len())
            .map(|i| {
                Base::ALL.map(|b| {
                    let text = next_token_text(set.tokens[i].text.bases(), b, c);
                    set.id(text.bases()).expect("suffix token is interned")
                })
            })
            .collect();
        Ok(set)
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn get(&self, id: TokenId) -> &CToken {
        &self.tokens[id.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (TokenId, &CToken)> {
        self.tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (TokenId(i as u32), t))
    }

    pub fn id(&self, text: &[Base]) -> Option<TokenId> {
        self.lookup.get(&pack(text)).copied()
    }

    pub fn next(&self, id: TokenId, base: Base) -> TokenId {
        self.next[id.index()][base.index()]
    }

    /// Token id ending at 1-based position `end` of `s`.
    pub fn token_at(&self, s: &[Base], end: usize) -> Option<TokenId> {
        token_len_ending_at(s, end, self.c).and_then(|len| self.id(&s[end - len..end]))
    }

    /// Token ids of `s` in left-to-right order as `(1-based end, id)`.
    pub fn token_ids_of(&self, s: &[Base]) -> Vec<(usize, TokenId)> {
        (1..=s.len())
            .filter_map(|end| self.token_at(s, end).map(|id| (end, id)))
            .collect()
    }

    /// The reverse complement of a token, when that string is itself a token.
    pub fn rc_token(&self, id: TokenId) -> Option<TokenId> {
        self.id(self.get(id).text.reverse_complement().bases())
    }
}

// Prepend bases until the weight reaches c; each stopping point is a token.
fn grow_left(suffix: &mut Vec<Base>, w: u32, c: u32, out: &mut Vec<Vec<Base>>) {
    for b in Base::ALL {
        suffix.push(b);
        let nw = w + b.weight();
        if nw >= c {
            out.push(suffix.iter().rev().copied().collect());
        } else {
            grow_left(suffix, nw, c, out);
        }
        suffix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dna(s: &str) -> DnaString {
        s.parse().unwrap()
    }

    #[test]
    fn weights() {
        assert_eq!(dna("ACG").weight(), 5);
        assert_eq!(dna("").weight(), 0);
        assert_eq!(dna("AAAA").weight(), 4);
    }

    #[test]
    fn reverse_complements() {
        assert_eq!(dna("ACG").reverse_complement(), dna("CGT"));
        assert_eq!(dna("AT").reverse_complement(), dna("AT"));
        assert_eq!(dna("GGGG").reverse_complement(), dna("CCCC"));
    }

    #[test]
    fn ctoken_recognition() {
        assert!(is_ctoken(dna("AAAT").bases(), 4));
        assert!(!is_ctoken(dna("AAAAT").bases(), 4));
        assert!(is_ctoken(dna("C").bases(), 2));
        assert!(!is_ctoken(&[], 1));
    }

    #[test]
    fn small_counts() {
        assert_eq!(TokenSet::new(1).unwrap().len(), 4);
        assert_eq!(TokenSet::new(2).unwrap().len(), 10);
        assert_eq!(TokenSet::new(3).unwrap().len(), 28);
    }

    #[test]
    fn c_out_of_range() {
        assert!(matches!(TokenSet::new(0), Err(Error::Parameter(_))));
        assert!(matches!(TokenSet::new(13), Err(Error::Parameter(_))));
        assert!(TokenSet::with_max(13, 13).is_ok());
    }

    #[test]
    fn next_token_examples() {
        assert_eq!(next_token_text(dna("AAAA").bases(), Base::T, 4), dna("AAAT"));
        assert_eq!(next_token_text(dna("AAAA").bases(), Base::C, 4), dna("AAC"));
        assert_eq!(next_token_text(dna("GG").bases(), Base::G, 4), dna("GG"));
        let set = TokenSet::new(4).unwrap();
        let gg = set.id(dna("GG").bases()).unwrap();
        assert_eq!(set.next(gg, Base::G), gg);
    }

    #[test]
    fn tokens_of_string_examples() {
        let got: Vec<_> = tokens_of_string(dna("AAATAAAT").bases(), 4)
            .into_iter()
            .map(|(p, t)| (p, t.to_string()))
            .collect();
        let want: Vec<_> = [(4, "AAAT"), (5, "AATA"), (6, "ATAA"), (7, "TAAA"), (8, "AAAT")]
            .iter()
            .map(|&(p, t)| (p, t.to_string()))
            .collect();
        assert_eq!(got, want);
        assert!(tokens_of_string(dna("AAA").bases(), 4).is_empty());
        let got: Vec<_> = tokens_of_string(dna("CA").bases(), 2)
            .into_iter()
            .map(|(p, t)| (p, t.to_string()))
            .collect();
        assert_eq!(got, vec![(1, "C".to_string()), (2, "CA".to_string())]);
    }

    #[test]
    fn classes() {
        assert_eq!(TokenClass::of(dna("CAAT").bases(), 4), TokenClass::C0);
        assert_eq!(TokenClass::of(dna("AAC").bases(), 4), TokenClass::C2);
        assert_eq!(TokenClass::of(dna("AAAA").bases(), 4), TokenClass::Other);
        assert_eq!(TokenClass::of(dna("C").bases(), 2), TokenClass::C2);
    }

    #[test]
    fn bad_nucleotide() {
        assert!("ACGX".parse::<DnaString>().is_err());
        assert_eq!("acgt".parse::<DnaString>().unwrap(), dna("ACGT"));
    }
}
